//! Subcommand implementations. Each returns the JSON document to emit.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use hexforge_core::construct::{quartic, smoothness, twist, QuarticModel, SexticInput, Sign, SmoothnessTest};
use hexforge_core::field::{Rationals, SqrtField};
use hexforge_core::frobenius::{consistency, even_check, sample, GroupModel};
use hexforge_core::hexlines::{hexad_report, HexadReport};
use hexforge_core::json::{
    binary_to_json, linear_to_json, plan_from_json, plan_galois_from_json, plan_to_json, poly_to_json,
    sextic_from_json, sextic_to_json, ternary_from_json, ternary_to_json, AnyPoly, AnySextic, FieldSpec, JsonField,
};
use hexforge_core::kummer::{assemble_f, resample, KummerPlan};
use hexforge_core::Error;

/// A failure with its process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed or invalid input: exit 1.
    Malformed(String),
    /// The constant term is not a square: exit 2.
    NotA12Compatible(String),
    /// No smooth quartic within the resampling budget: exit 3.
    NotSmooth(String),
    /// A certificate or consistency check failed internally: exit 4.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 1,
            CliError::NotA12Compatible(_) => 2,
            CliError::NotSmooth(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Malformed(m) => write!(f, "malformed input: {m}"),
            CliError::NotA12Compatible(m) => write!(f, "not A12-compatible: {m}"),
            CliError::NotSmooth(m) => write!(f, "smoothness failure: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::Json(_) | Error::BadPrime(_) | Error::UnsupportedTower(_) => {
                CliError::Malformed(e.to_string())
            }
            Error::NotA12Compatible(_) => CliError::NotA12Compatible(e.to_string()),
            Error::NotSmooth | Error::ResampleNeeded(_) => CliError::NotSmooth(e.to_string()),
            Error::InternalError(_) => CliError::Internal(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}

/// Global options shared by subcommands.
#[derive(Clone, Debug)]
pub struct Settings {
    pub seed: Option<u64>,
    pub primes: u64,
    pub max_resamples: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { seed: None, primes: 1000, max_resamples: 5 }
    }
}

pub fn parse_json(text: &str) -> CliResult<Value> {
    serde_json::from_str(text).map_err(|e| malformed(format!("invalid JSON: {e}")))
}

pub fn parse_sign(s: &str) -> CliResult<Sign> {
    match s {
        "plus" | "+" => Ok(Sign::Plus),
        "minus" | "-" => Ok(Sign::Minus),
        other => Err(malformed(format!("unknown sign {other:?}"))),
    }
}

fn sign_json(sign: Sign) -> Value {
    json!(sign.to_string())
}

/// Either a plan to assemble or a sextic given directly.
#[derive(Clone, Debug)]
pub enum ConstructInput {
    Plan(KummerPlan),
    Sextic(AnySextic),
}

/// Reads a plan (`"orbits"`) or a sextic (`"F"`); `field` overrides the
/// sextic's field tag.
pub fn parse_construct_input(v: &Value, field: Option<FieldSpec>) -> CliResult<ConstructInput> {
    if v.get("orbits").is_some() {
        if field.is_some_and(|f| f != FieldSpec::Rationals) {
            return Err(malformed("plans are over Q"));
        }
        return Ok(ConstructInput::Plan(plan_from_json(v)?));
    }
    if v.get("F").is_none() {
        return Err(malformed("input needs \"orbits\" (a plan) or \"F\" (a sextic)"));
    }
    let mut v = v.clone();
    if let Some(spec) = field {
        v["F"]["field"] = spec.to_json();
    }
    Ok(ConstructInput::Sextic(sextic_from_json(&v)?))
}

pub fn model_to_json<F: JsonField + SmoothnessTest>(m: &QuarticModel<F>, smooth: bool) -> Value {
    let k = m.input.field();
    let matrix: Vec<Vec<Value>> =
        (0..3).map(|i| (0..3).map(|j| binary_to_json(m.bundle.matrix.entry(i, j))).collect()).collect();
    json!({
        "field": k.tag(),
        "sign": sign_json(m.sign),
        "F": poly_to_json(m.input.f(), "T"),
        "c": k.elem_to_json(m.input.c()),
        "signed_c": k.elem_to_json(&m.input.signed_c(m.sign)),
        "g": binary_to_json(&m.bundle.gh.g),
        "h": binary_to_json(&m.bundle.gh.h),
        "M": matrix,
        "Q0": ternary_to_json(&m.bundle.q0),
        "Q1": ternary_to_json(&m.bundle.q1),
        "Q2": ternary_to_json(&m.bundle.q2),
        "Q": ternary_to_json(&m.q),
        "smooth": smooth,
    })
}

fn models_for<F: JsonField + SmoothnessTest>(
    input: &SexticInput<F>,
    signs: &[Sign],
) -> CliResult<Vec<(QuarticModel<F>, bool)>> {
    signs
        .iter()
        .map(|&s| {
            let m = quartic(input, s)?;
            let smooth = smoothness(&m.q)?;
            Ok((m, smooth))
        })
        .collect()
}

fn sextic_models<F: JsonField + SmoothnessTest>(input: &SexticInput<F>, signs: &[Sign]) -> CliResult<Vec<Value>> {
    let models = models_for(input, signs)?;
    if let Some((m, _)) = models.iter().find(|(_, smooth)| !smooth) {
        return Err(CliError::NotSmooth(format!("the quartic for sign {} is singular", m.sign)));
    }
    Ok(models.iter().map(|(m, s)| model_to_json(m, *s)).collect())
}

/// Builds one model per sign. Plans are resampled (up to the budget) until
/// `F` is separable and every requested quartic is smooth.
pub fn construct(input: &ConstructInput, signs: &[Sign], settings: &Settings) -> CliResult<Vec<Value>> {
    match input {
        ConstructInput::Sextic(AnySextic::Q(s)) => sextic_models(s, signs),
        ConstructInput::Sextic(AnySextic::Fp(s)) => sextic_models(s, signs),
        ConstructInput::Sextic(AnySextic::FpT(s)) => sextic_models(s, signs),
        ConstructInput::Plan(plan) => {
            let seed = settings.seed.or(plan.seed).unwrap_or(0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut current = plan.clone();
            let mut last = String::new();
            for attempt in 0..=settings.max_resamples {
                if attempt > 0 {
                    current = resample(&current, &mut rng);
                }
                let sextic = match assemble_f(&current) {
                    Ok(s) => s,
                    Err(Error::ResampleNeeded(msg)) => {
                        last = msg;
                        continue;
                    }
                    Err(e) => return Err(e.into()),
                };
                let models = models_for(&sextic, signs)?;
                if models.iter().all(|(_, smooth)| *smooth) {
                    return Ok(models
                        .iter()
                        .map(|(m, s)| {
                            let mut v = model_to_json(m, *s);
                            v["plan"] = plan_to_json(&current);
                            v["resamples"] = json!(attempt);
                            v
                        })
                        .collect());
                }
                last = "a quartic is singular".into();
            }
            Err(CliError::NotSmooth(format!("{last} after {} resamples", settings.max_resamples)))
        }
    }
}

/// The sextic, root and sign a model was built from, over Q.
pub fn model_input(model: &Value) -> CliResult<(SexticInput<Rationals>, Sign)> {
    let f = match AnyPoly::from_json(model.get("F").ok_or_else(|| malformed("model needs \"F\""))?)? {
        AnyPoly::Q(f) => f,
        _ => return Err(malformed("bitangent towers are built over Q only")),
    };
    let c = Rationals.elem_from_json(model.get("c").ok_or_else(|| malformed("model needs \"c\""))?)?;
    let sign = parse_sign(model.get("sign").and_then(Value::as_str).unwrap_or("plus"))?;
    Ok((SexticInput::new(f, c)?, sign))
}

pub fn hexad_to_json(r: &HexadReport) -> Value {
    let fibres: Vec<Value> = r
        .fibres
        .iter()
        .map(|f| {
            let k = &f.fibre.field;
            json!({
                "m": poly_to_json(&f.fibre.factor, "x"),
                "d": k.elem_to_json(f.fibre.d()),
                "d_is_square": f.fibre.d_root.is_some(),
                "d_times_t0_is_square": f.fibre.d_matches_t0(),
                "tower": poly_to_json(f.fibre.tower.modulus(), "y"),
                "tower_degree": f.fibre.tower_degree(),
                "vertex": f.fibre.vertex.iter().map(|c| k.elem_to_json(c)).collect::<Vec<_>>(),
                "lines": f.fibre.lines.iter().map(linear_to_json).collect::<Vec<_>>(),
                "line_degrees": f.line_degrees,
                "isolated": f.isolated,
                "product_verified": f.fibre.verify_product(),
            })
        })
        .collect();
    json!({
        "field": Rationals.tag(),
        "sign": sign_json(r.sign),
        "Q": ternary_to_json(&r.quartic),
        "line_count": r.line_count(),
        "all_verified": r.all_verified(),
        "lines_distinct": r.lines_distinct(),
        "degrees_divide_bound": r.degrees_divide_bound(),
        "fibres": fibres,
    })
}

/// Splits the degenerate fibres of a model and certifies the twelve lines.
pub fn bitangents(model: &Value) -> CliResult<Value> {
    let (input, sign) = model_input(model)?;
    let report = hexad_report(&input, sign)?;
    if let Some(q) = model.get("Q") {
        if ternary_from_json(&Rationals, q)? != report.quartic {
            return Err(malformed("the model's quartic does not match its sextic"));
        }
    }
    if !(report.all_verified() && report.lines_distinct()) {
        return Err(CliError::Internal("line certificates failed to verify".into()));
    }
    Ok(hexad_to_json(&report))
}

fn sextic_for_frobenius(v: &Value, settings: &Settings) -> CliResult<SexticInput<Rationals>> {
    match parse_construct_input(v, None)? {
        ConstructInput::Sextic(AnySextic::Q(s)) => Ok(s),
        ConstructInput::Sextic(_) => Err(malformed("Frobenius sampling runs over Q")),
        ConstructInput::Plan(plan) => {
            let seed = settings.seed.or(plan.seed).unwrap_or(0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(hexforge_core::kummer::assemble_with_resampling(&plan, settings.max_resamples, &mut rng)?.input)
        }
    }
}

/// A plan (its intended group) or `{"generators": [[...], ...]}` on twelve points.
pub fn group_from_json(v: &Value) -> CliResult<GroupModel> {
    if v.get("orbits").is_some() {
        let plan = plan_from_json(v)?;
        let galois = plan_galois_from_json(v)?;
        return Ok(GroupModel::intended(&plan, &galois)?);
    }
    let gens: Vec<Vec<usize>> = serde_json::from_value(
        v.get("generators").cloned().ok_or_else(|| malformed("group needs \"orbits\" or \"generators\""))?,
    )
    .map_err(|e| malformed(format!("bad generators: {e}")))?;
    Ok(GroupModel::from_generators(gens)?)
}

/// Samples Frobenius cycle types and compares them with a group. Without
/// a group file, a plan input serves as its own group and a bare sextic is
/// compared with `S2 wr S6`.
pub fn frobenius(sextic: &Value, group: Option<&Value>, settings: &Settings) -> CliResult<Value> {
    let input = sextic_for_frobenius(sextic, settings)?;
    let model = match group {
        Some(g) => group_from_json(g)?,
        None if sextic.get("orbits").is_some() => group_from_json(sextic)?,
        None => GroupModel::wreath(),
    };
    let samples = sample(input.f(), settings.primes);
    let report = consistency(&samples, &model);
    let pair_refinement = samples.samples.iter().all(|s| s.pair_refinement_holds());
    Ok(json!({
        "sextic": sextic_to_json(&input),
        "primes_up_to": settings.primes,
        "good_primes": samples.samples.len(),
        "bad_primes": samples.bad_primes,
        "even": even_check(input.f())?,
        "group_order": model.order,
        "group_distinct_types": model.distinct_types(),
        "consistent": report.consistent,
        "verdict": format!("{} the group", report.verdict()),
        "violations": report.violations,
        "pair_violations": report.pair_violations,
        "pair_refinement_holds": pair_refinement,
        "observed_types": report.observed.iter().collect::<Vec<_>>(),
        "coverage": report.coverage,
    }))
}

fn twist_over<F: JsonField + SqrtField>(
    k: &F,
    model: &Value,
    lambda: &Value,
    compare: Option<&Value>,
) -> CliResult<Value> {
    let q = ternary_from_json(k, model.get("Q").ok_or_else(|| malformed("model needs \"Q\""))?)?;
    let dp = twist(&q, &k.elem_from_json(lambda)?)?;
    let mut out = json!({ "lambda": k.elem_to_json(&dp.lambda), "Q": ternary_to_json(&dp.q) });
    if let Some(c) = compare {
        let other = twist(&q, &k.elem_from_json(c)?)?;
        out["compare"] = json!({ "lambda": k.elem_to_json(&other.lambda), "equivalent": dp.equivalent(&other) });
    }
    Ok(out)
}

/// Records the double cover `lambda w^2 = Q`, optionally comparing with a
/// second `lambda`.
pub fn twist_model(model: &Value, lambda: &Value, compare: Option<&Value>) -> CliResult<Value> {
    let spec = FieldSpec::parse(model.get("field").ok_or_else(|| malformed("model needs \"field\""))?)?;
    match spec {
        FieldSpec::Rationals => twist_over(&Rationals, model, lambda, compare),
        FieldSpec::PrimeField(p) => twist_over(&hexforge_core::field::PrimeField::new(p)?, model, lambda, compare),
        FieldSpec::RationalFunctions(p) => twist_over(&crate::fixtures::function_field(p), model, lambda, compare),
    }
}

/// Reads a command-line field element: JSON if it parses, else a bare string.
pub fn element_arg(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|_| Value::String(s.to_string()))
}

pub fn groups(degree: u32) -> CliResult<Value> {
    if degree != 2 && degree != 3 {
        return Err(malformed("degree must be 2 or 3"));
    }
    serde_json::to_value(hexforge_groups::groups_report(degree)).map_err(|e| CliError::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1() -> Value {
        json!({ "F": { "field": "Q", "var": "T", "coeffs": ["25", "-150", "335", "-340", "152", "-24", "1"] } })
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(Error::Json("x".into())).exit_code(), 1);
        assert_eq!(CliError::from(Error::NotA12Compatible("x".into())).exit_code(), 2);
        assert_eq!(CliError::from(Error::NotSmooth).exit_code(), 3);
        assert!(parse_json("{ not json").is_err());
    }

    #[test]
    fn construct_both_signs() {
        let input = parse_construct_input(&ex1(), None).unwrap();
        let models = construct(&input, &[Sign::Plus, Sign::Minus], &Settings::default()).unwrap();
        assert_eq!(models.len(), 2);
        assert_eq!(models[0]["signed_c"], json!("5"));
        assert_eq!(models[1]["signed_c"], json!("-5"));
        assert!(models.iter().all(|m| m["smooth"] == json!(true)));
    }

    #[test]
    fn non_square_constant_term() {
        let v = json!({ "F": { "field": "Q", "coeffs": ["3", "0", "0", "0", "0", "0", "1"] } });
        assert_eq!(parse_construct_input(&v, None).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn double_root_is_not_smooth() {
        // (T - 1)^2 (T - 2)(T - 3)(T + 6)(T + 1): constant term 36.
        let v = json!({ "F": { "field": "Q", "coeffs": ["36", "-60", "-11", "60", "-26", "0", "1"] } });
        let input = parse_construct_input(&v, None).unwrap();
        assert_eq!(construct(&input, &[Sign::Plus], &Settings::default()).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn plan_resampling_reaches_smooth_models() {
        let v = json!({ "orbits": [{ "rational": ["1", "4", "9", "16", "25", "36"] }] });
        let input = parse_construct_input(&v, None).unwrap();
        let models = construct(&input, &[Sign::Plus], &Settings::default()).unwrap();
        assert_eq!(models[0]["smooth"], json!(true));
        assert!(models[0]["plan"].is_object());
    }

    #[test]
    fn twist_equivalence() {
        let input = parse_construct_input(&ex1(), None).unwrap();
        let model = &construct(&input, &[Sign::Plus], &Settings::default()).unwrap()[0];
        let r = twist_model(model, &element_arg("4"), Some(&element_arg("1"))).unwrap();
        assert_eq!(r["compare"]["equivalent"], json!(true));
        let r = twist_model(model, &element_arg("2"), Some(&element_arg("3"))).unwrap();
        assert_eq!(r["compare"]["equivalent"], json!(false));
        assert!(twist_model(model, &element_arg("0"), None).is_err());
    }
}
