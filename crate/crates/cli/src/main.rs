use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use hexforge::commands::{self, CliError, CliResult, Settings};
use hexforge::verify::verify_fixtures;
use hexforge_core::construct::Sign;
use hexforge_core::json::FieldSpec;

#[derive(Parser)]
#[command(name = "hexforge", version, about = "Plane quartics with a rational Steiner hexad")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for Frobenius sampling and per-fibre line work.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Upper bound on the primes used for Frobenius sampling.
    #[arg(long, global = true, default_value_t = 1000)]
    primes: u64,
    /// Resampling attempts for plans before giving up.
    #[arg(long, global = true, default_value_t = 5)]
    max_resamples: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Fp")]
    Fp,
    #[value(name = "Fp_t")]
    FpT,
}

#[derive(Subcommand)]
enum Command {
    /// Builds the quartic models from a plan or a sextic.
    Construct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        sign: SignArg,
        /// With both signs, writes `<stem>-plus.json` and `<stem>-minus.json`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        field: Option<FieldArg>,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Certifies the invariant hexad of a model over Q.
    Bitangents {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compares Frobenius cycle types with a group.
    Frobenius {
        #[arg(long)]
        sextic: PathBuf,
        /// A plan or `{"generators": ...}`.
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weyl group and hexad counts.
    Groups {
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value = "json")]
        report: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The double cover `lambda w^2 = Q` of a model.
    Twist {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        compare: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks the bundled example quartics.
    VerifyFixtures {
        /// Label of a fixture to corrupt before checking.
        #[arg(long)]
        corrupt: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))?;
    commands::parse_json(&text)
}

fn emit(value: &Value, out: Option<&Path>) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    match out {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn signed_path(out: &Path, sign: &str) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("model");
    let ext = out.extension().and_then(|s| s.to_str()).unwrap_or("json");
    out.with_file_name(format!("{stem}-{sign}.{ext}"))
}

fn field_spec(field: Option<FieldArg>, p: Option<u64>) -> CliResult<Option<FieldSpec>> {
    let need_p = || p.ok_or_else(|| CliError::Malformed("--field Fp and Fp_t need --p".into()));
    Ok(match field {
        None => None,
        Some(FieldArg::Q) => Some(FieldSpec::Rationals),
        Some(FieldArg::Fp) => Some(FieldSpec::PrimeField(need_p()?)),
        Some(FieldArg::FpT) => Some(FieldSpec::RationalFunctions(need_p()?)),
    })
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let settings = Settings { seed: cli.seed, primes: cli.primes, max_resamples: cli.max_resamples };
    match cli.command {
        Command::Construct { input, sign, out, field, p } => {
            let spec = field_spec(field, p)?;
            let parsed = commands::parse_construct_input(&read_json(&input)?, spec)?;
            let signs = match sign {
                SignArg::Plus => vec![Sign::Plus],
                SignArg::Minus => vec![Sign::Minus],
                SignArg::Both => vec![Sign::Plus, Sign::Minus],
            };
            let models = commands::construct(&parsed, &signs, &settings)?;
            match (&out, models.len()) {
                (Some(path), 1) => emit(&models[0], Some(path))?,
                (Some(path), _) => {
                    for (m, s) in models.iter().zip(&signs) {
                        emit(m, Some(&signed_path(path, &s.to_string())))?;
                    }
                }
                (None, _) => emit(&Value::Array(models.clone()), None)?,
            }
            if models.iter().any(|m| m["smooth"] == Value::Bool(false)) {
                return Err(CliError::NotSmooth("constructed quartic is singular".into()));
            }
            Ok(())
        }
        Command::Bitangents { model, out } => emit(&commands::bitangents(&read_json(&model)?)?, out.as_deref()),
        Command::Frobenius { sextic, group, out } => {
            let group = group.as_deref().map(read_json).transpose()?;
            let report = commands::frobenius(&read_json(&sextic)?, group.as_ref(), &settings)?;
            emit(&report, out.as_deref())
        }
        Command::Groups { degree, report, out } => {
            if report != "json" {
                return Err(CliError::Malformed(format!("unsupported report format {report:?}")));
            }
            emit(&commands::groups(degree)?, out.as_deref())
        }
        Command::Twist { model, lambda, compare, out } => {
            let compare = compare.as_deref().map(commands::element_arg);
            let report =
                commands::twist_model(&read_json(&model)?, &commands::element_arg(&lambda), compare.as_ref())?;
            emit(&report, out.as_deref())
        }
        Command::VerifyFixtures { corrupt, out } => emit(&verify_fixtures(corrupt.as_deref())?, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hexforge: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
