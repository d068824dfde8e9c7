//! Smoothness of the bundled fixtures and a normalization diagnostic against
//! our own construction.

use serde_json::{json, Value};

use hexforge_core::construct::{quartic, smoothness, SexticInput, Sign, SmoothnessTest};
use hexforge_core::field::{Field, PrimeField, RatFunc, Rationals};
use hexforge_core::json::{ternary_to_json, FieldSpec, JsonField};
use hexforge_core::poly::{Monomial, TernaryForm};

use crate::commands::{CliError, CliResult};
use crate::fixtures::{
    function_field, parse_element, parse_quartic, parse_univariate_poly, FixtureEntry, FixtureField, FIXTURES,
};

/// Fields with a finite list of candidate coordinate scalings.
pub trait ScalingCandidates: FixtureField + JsonField + SmoothnessTest {
    fn scalings(&self) -> Vec<Self::Elem>;
}

impl ScalingCandidates for Rationals {
    fn scalings(&self) -> Vec<Self::Elem> {
        let mut out = Vec::new();
        for n in 1..=6i64 {
            for d in 1..=6i64 {
                if gcd(n, d) == 1 {
                    for s in [1, -1] {
                        out.push(self.div(&self.from_i64(s * n), &self.from_i64(d)).unwrap());
                    }
                }
            }
        }
        out
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl ScalingCandidates for RatFunc<PrimeField> {
    fn scalings(&self) -> Vec<Self::Elem> {
        let p = self.base().modulus() as i64;
        let mut out = Vec::new();
        let t = self.t();
        for c in 1..p {
            let mut power = self.from_i64(c);
            for k in 0..=3 {
                out.push(power.clone());
                if k > 0 {
                    out.push(self.inv(&power).unwrap());
                }
                power = self.mul(&power, &t);
            }
        }
        out
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// `q(a0 T_{p0}, a1 T_{p1}, a2 T_{p2})` with `a0 = 1`.
fn transform<F: Field>(q: &TernaryForm<F>, perm: [usize; 3], scale: [&F::Elem; 3]) -> TernaryForm<F> {
    let k = q.field();
    let terms = q.terms().iter().map(|(m, c)| {
        let mut image: Monomial = [0; 3];
        let mut coeff = c.clone();
        for i in 0..3 {
            image[perm[i]] += m[i];
            for _ in 0..m[i] {
                coeff = k.mul(&coeff, scale[i]);
            }
        }
        (image, coeff)
    });
    TernaryForm::from_terms(k.clone(), q.degree(), terms.collect::<Vec<_>>())
}

fn proportional<F: Field>(a: &TernaryForm<F>, b: &TernaryForm<F>) -> bool {
    let k = a.field();
    if a.terms().keys().ne(b.terms().keys()) {
        return false;
    }
    let Some((m, ca)) = a.terms().iter().next() else {
        return b.is_zero();
    };
    let r = k.div(&b.coeff(m), ca).unwrap();
    a.scale(&r) == *b
}

#[derive(Clone, Debug)]
pub struct Diagnostic {
    pub searched: usize,
    /// `(sign, permutation, scalings)` of each transform of our quartic that
    /// is proportional to the fixture.
    pub matches: Vec<Value>,
}

/// Searches signed coordinate permutations and diagonal rescalings of
/// `Q_{F, +-c}` for one proportional to the fixture quartic.
pub fn normalization_search<F: ScalingCandidates>(
    k: &F,
    fixture: &TernaryForm<F>,
    input: &SexticInput<F>,
) -> CliResult<Diagnostic> {
    let candidates = k.scalings();
    let one = k.one();
    let mut searched = 0;
    let mut matches = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let ours = quartic(input, sign)?.q;
        for perm in PERMUTATIONS {
            // Scalings do not change the support, so compare supports first.
            let support = transform(&ours, perm, [&one, &one, &one]);
            if support.terms().keys().ne(fixture.terms().keys()) {
                searched += candidates.len() * candidates.len();
                continue;
            }
            for a1 in &candidates {
                for a2 in &candidates {
                    searched += 1;
                    if proportional(&transform(&ours, perm, [&one, a1, a2]), fixture) {
                        matches.push(json!({
                            "sign": sign.to_string(),
                            "permutation": perm,
                            "scalings": [k.elem_to_json(&one), k.elem_to_json(a1), k.elem_to_json(a2)],
                        }));
                    }
                }
            }
        }
    }
    Ok(Diagnostic { searched, matches })
}

fn check_fixture<F: ScalingCandidates>(k: &F, fx: &FixtureEntry, corrupt: bool) -> CliResult<Value> {
    let bad = |e: String| CliError::Malformed(format!("fixture {}: {e}", fx.label));
    let mut q = parse_quartic(k, fx.quartic).map_err(bad)?;
    if corrupt {
        let m: Monomial = [0, 0, 4];
        q = q.add(&TernaryForm::from_terms(k.clone(), 4, [(m, k.one())]));
    }
    let f = parse_univariate_poly(k, fx.sextic).map_err(bad)?;
    let root = parse_element(k, fx.root).map_err(bad)?;
    let input = SexticInput::new(f, root)?;
    let smooth = smoothness(&q)?;
    let diag = normalization_search(k, &q, &input)?;
    let outcome = if diag.matches.is_empty() {
        json!("no match found in search space")
    } else {
        json!("matched")
    };
    // Function-field fixtures are expected to coincide with our construction.
    let structure_ok = match fx.field {
        FieldSpec::RationalFunctions(_) => json!(!diag.matches.is_empty()),
        _ => Value::Null,
    };
    Ok(json!({
        "label": fx.label,
        "field": fx.field.to_json(),
        "stated_sign": fx.stated_sign.map(|s| s.to_string()),
        "corrupted": corrupt,
        "quartic": ternary_to_json(&q),
        "smooth": smooth,
        "structure_ok": structure_ok,
        "normalization": {
            "outcome": outcome,
            "transforms_searched": diag.searched,
            "matches": diag.matches,
        },
    }))
}

/// Checks every fixture, corrupting the one labelled `corrupt` (its `T2^4`
/// coefficient is increased by one).
pub fn verify_fixtures(corrupt: Option<&str>) -> CliResult<Value> {
    if let Some(label) = corrupt {
        if !FIXTURES.iter().any(|f| f.label == label) {
            return Err(CliError::Malformed(format!("no fixture labelled {label:?}")));
        }
    }
    let mut reports = Vec::new();
    for fx in FIXTURES {
        let c = corrupt == Some(fx.label);
        let r = match fx.field {
            FieldSpec::Rationals => check_fixture(&Rationals, fx, c)?,
            FieldSpec::RationalFunctions(p) => check_fixture(&function_field(p), fx, c)?,
            FieldSpec::PrimeField(_) => return Err(CliError::Internal("no prime-field fixtures".into())),
        };
        reports.push(r);
    }
    let all_smooth = reports.iter().all(|r| r["smooth"] == json!(true));
    let failures: Vec<&Value> = reports
        .iter()
        .filter(|r| r["smooth"] != json!(true) || r["structure_ok"] == json!(false))
        .map(|r| &r["label"])
        .collect();
    Ok(json!({ "fixtures": reports, "all_smooth": all_smooth, "failures": failures }))
}
