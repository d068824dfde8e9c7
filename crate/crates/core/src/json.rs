//! JSON encodings of fields, elements, polynomials and inputs.
//!
//! Polynomials are `{"field": "Q" | {"Fp": p} | {"Fp_t": p}, "var": "T",
//! "coeffs": [...]}` with coefficients listed from degree zero upward.
//! Rationals are strings `"num/den"`, residues are integers, and elements
//! of `F_p(t)` are `{"num": [...], "den": [...]}` with integer coefficient
//! lists, also from degree zero upward.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::construct::SexticInput;
use crate::error::{Error, Result};
use crate::field::{parse_rational, AlgExt, Field, PrimeField, RatFunc, RatFuncElem, Rationals};
use crate::kummer::{KummerPlan, OrbitSpec};
use crate::poly::{BinaryForm, LinearForm, TernaryForm, UniPoly};

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

/// Which base field a JSON document lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
    RationalFunctions(u64),
}

impl FieldSpec {
    pub fn parse(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) if s == "Q" => Ok(FieldSpec::Rationals),
            Value::Object(o) if o.len() == 1 => {
                let (k, p) = o.iter().next().unwrap();
                let p = p.as_u64().ok_or_else(|| bad("field characteristic must be an integer"))?;
                PrimeField::new(p)?;
                match k.as_str() {
                    "Fp" => Ok(FieldSpec::PrimeField(p)),
                    "Fp_t" => Ok(FieldSpec::RationalFunctions(p)),
                    other => Err(bad(format!("unknown field kind {other}"))),
                }
            }
            _ => Err(bad(format!("unrecognized field {v}"))),
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            FieldSpec::Rationals => json!("Q"),
            FieldSpec::PrimeField(p) => json!({ "Fp": p }),
            FieldSpec::RationalFunctions(p) => json!({ "Fp_t": p }),
        }
    }
}

/// Fields whose elements have a JSON encoding.
pub trait JsonField: Field {
    fn tag(&self) -> Value;
    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;
}

impl JsonField for Rationals {
    fn tag(&self) -> Value {
        FieldSpec::Rationals.to_json()
    }

    fn elem_to_json(&self, a: &BigRational) -> Value {
        Value::String(self.format(a))
    }

    fn elem_from_json(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::String(s) => parse_rational(s).ok_or_else(|| bad(format!("bad rational {s:?}"))),
            Value::Number(n) => n
                .as_i64()
                .map(|n| self.from_i64(n))
                .ok_or_else(|| bad(format!("bad rational {n}"))),
            _ => Err(bad(format!("expected a rational, got {v}"))),
        }
    }
}

impl JsonField for PrimeField {
    fn tag(&self) -> Value {
        FieldSpec::PrimeField(self.modulus()).to_json()
    }

    fn elem_to_json(&self, a: &u64) -> Value {
        json!(a)
    }

    fn elem_from_json(&self, v: &Value) -> Result<u64> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|n| self.reduce(n))
                .ok_or_else(|| bad(format!("bad residue {n}"))),
            Value::String(s) => {
                let n: BigInt = s.trim().parse().map_err(|_| bad(format!("bad residue {s:?}")))?;
                Ok(self.from_bigint(&n))
            }
            _ => Err(bad(format!("expected a residue, got {v}"))),
        }
    }
}

impl JsonField for RatFunc<PrimeField> {
    fn tag(&self) -> Value {
        FieldSpec::RationalFunctions(self.base().modulus()).to_json()
    }

    fn elem_to_json(&self, a: &RatFuncElem<PrimeField>) -> Value {
        json!({ "num": a.num.coeffs(), "den": a.den.coeffs() })
    }

    fn elem_from_json(&self, v: &Value) -> Result<RatFuncElem<PrimeField>> {
        let k = *self.base();
        let list = |v: &Value| -> Result<UniPoly<PrimeField>> {
            let arr = v.as_array().ok_or_else(|| bad("expected a coefficient list"))?;
            let c = arr.iter().map(|x| k.elem_from_json(x)).collect::<Result<Vec<_>>>()?;
            Ok(UniPoly::new(k, c))
        };
        match v {
            Value::Object(o) => {
                let num = list(o.get("num").ok_or_else(|| bad("missing \"num\""))?)?;
                let den = match o.get("den") {
                    Some(d) => list(d)?,
                    None => UniPoly::one(k),
                };
                self.fraction(num, den).ok_or_else(|| bad("zero denominator"))
            }
            Value::Array(_) => Ok(self.from_poly(list(v)?)),
            Value::Number(_) | Value::String(_) => Ok(self.constant(k.elem_from_json(v)?)),
            _ => Err(bad(format!("expected a rational function, got {v}"))),
        }
    }
}

/// Elements of `K[x]/(m)` are coefficient lists in the generator.
impl<F: JsonField> JsonField for AlgExt<F> {
    fn tag(&self) -> Value {
        json!({ "ext": poly_to_json(self.modulus(), self.var()) })
    }

    fn elem_to_json(&self, a: &UniPoly<F>) -> Value {
        Value::Array(a.coeffs().iter().map(|c| self.base().elem_to_json(c)).collect())
    }

    fn elem_from_json(&self, v: &Value) -> Result<UniPoly<F>> {
        let arr = v.as_array().ok_or_else(|| bad("expected a coefficient list"))?;
        let c = arr.iter().map(|x| self.base().elem_from_json(x)).collect::<Result<Vec<_>>>()?;
        Ok(self.reduce(&UniPoly::new(self.base().clone(), c)))
    }
}

pub fn poly_to_json<F: JsonField>(p: &UniPoly<F>, var: &str) -> Value {
    let k = p.field();
    json!({
        "field": k.tag(),
        "var": var,
        "coeffs": p.coeffs().iter().map(|c| k.elem_to_json(c)).collect::<Vec<_>>(),
    })
}

/// Parses the coefficient list of a polynomial JSON object over a known
/// field; the `"field"` tag is not checked.
pub fn poly_from_json<F: JsonField>(k: &F, v: &Value) -> Result<UniPoly<F>> {
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("polynomial needs a \"coeffs\" list"))?;
    let c = coeffs.iter().map(|x| k.elem_from_json(x)).collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(k.clone(), c))
}

/// A polynomial over whichever base field its JSON names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyPoly {
    Q(UniPoly<Rationals>),
    Fp(UniPoly<PrimeField>),
    FpT(UniPoly<RatFunc<PrimeField>>),
}

impl AnyPoly {
    pub fn from_json(v: &Value) -> Result<Self> {
        let spec = FieldSpec::parse(v.get("field").ok_or_else(|| bad("polynomial needs a \"field\""))?)?;
        Ok(match spec {
            FieldSpec::Rationals => AnyPoly::Q(poly_from_json(&Rationals, v)?),
            FieldSpec::PrimeField(p) => AnyPoly::Fp(poly_from_json(&PrimeField::new(p)?, v)?),
            FieldSpec::RationalFunctions(p) => {
                AnyPoly::FpT(poly_from_json(&RatFunc::new(PrimeField::new(p)?, "t"), v)?)
            }
        })
    }

    pub fn to_json(&self, var: &str) -> Value {
        match self {
            AnyPoly::Q(p) => poly_to_json(p, var),
            AnyPoly::Fp(p) => poly_to_json(p, var),
            AnyPoly::FpT(p) => poly_to_json(p, var),
        }
    }
}

pub fn binary_to_json<F: JsonField>(b: &BinaryForm<F>) -> Value {
    let k = b.field();
    json!({
        "degree": b.degree(),
        "coeffs": b.coeffs().iter().map(|c| k.elem_to_json(c)).collect::<Vec<_>>(),
    })
}

pub fn ternary_to_json<F: JsonField>(q: &TernaryForm<F>) -> Value {
    let k = q.field();
    let terms: Vec<Value> = q
        .terms()
        .iter()
        .rev()
        .map(|(m, c)| json!({ "exp": m, "coeff": k.elem_to_json(c) }))
        .collect();
    json!({ "field": k.tag(), "degree": q.degree(), "terms": terms, "text": q.format() })
}

pub fn ternary_from_json<F: JsonField>(k: &F, v: &Value) -> Result<TernaryForm<F>> {
    let degree = v
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("form needs a \"degree\""))? as u32;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("form needs a \"terms\" list"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let e: [u32; 3] = serde_json::from_value(t.get("exp").cloned().unwrap_or(Value::Null))
            .map_err(|_| bad("term needs \"exp\": [a, b, c]"))?;
        if e.iter().sum::<u32>() != degree {
            return Err(bad(format!("monomial {e:?} does not have degree {degree}")));
        }
        let c = k.elem_from_json(t.get("coeff").ok_or_else(|| bad("term needs \"coeff\""))?)?;
        out.push((e, c));
    }
    Ok(TernaryForm::from_terms(k.clone(), degree, out))
}

pub fn linear_to_json<F: JsonField>(l: &LinearForm<F>) -> Value {
    let k = l.field();
    Value::Array(l.coeffs().iter().map(|c| k.elem_to_json(c)).collect())
}

pub fn sextic_to_json<F: JsonField>(input: &SexticInput<F>) -> Value {
    json!({ "F": poly_to_json(input.f(), "T"), "c": input.field().elem_to_json(input.c()) })
}

/// A sextic input over whichever base field its JSON names.
#[derive(Clone, Debug)]
pub enum AnySextic {
    Q(SexticInput<Rationals>),
    Fp(SexticInput<PrimeField>),
    FpT(SexticInput<RatFunc<PrimeField>>),
}

/// Parses `{"F": <poly>, "c": <elem>}`. Without `"c"` the default square
/// root of `F(0)` is used.
pub fn sextic_from_json(v: &Value) -> Result<AnySextic> {
    let f = AnyPoly::from_json(v.get("F").ok_or_else(|| bad("sextic needs \"F\""))?)?;
    let c = v.get("c");
    Ok(match f {
        AnyPoly::Q(f) => AnySextic::Q(match c {
            Some(c) => SexticInput::new(f, Rationals.elem_from_json(c)?)?,
            None => SexticInput::with_default_root(f)?,
        }),
        AnyPoly::Fp(f) => {
            let k = *f.field();
            AnySextic::Fp(match c {
                Some(c) => SexticInput::new(f, k.elem_from_json(c)?)?,
                None => SexticInput::with_default_root(f)?,
            })
        }
        AnyPoly::FpT(f) => {
            let k = f.field().clone();
            AnySextic::FpT(match c {
                Some(c) => SexticInput::new(f, k.elem_from_json(c)?)?,
                None => SexticInput::with_default_root(f)?,
            })
        }
    })
}

fn q_poly(v: Option<&Value>, name: &str) -> Result<UniPoly<Rationals>> {
    let v = v.ok_or_else(|| bad(format!("field orbit needs {name:?}")))?;
    match AnyPoly::from_json(v)? {
        AnyPoly::Q(p) => Ok(p),
        _ => Err(bad("Kummer plans are over Q")),
    }
}

/// Parses `{"orbits": [{"rational": [...]} | {"m", "a", "t"}], "seed": n}`.
pub fn plan_from_json(v: &Value) -> Result<KummerPlan> {
    let orbits = v
        .get("orbits")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("plan needs an \"orbits\" list"))?;
    let mut out = Vec::with_capacity(orbits.len());
    for o in orbits {
        if let Some(r) = o.get("rational") {
            let arr = r.as_array().ok_or_else(|| bad("\"rational\" must be a list"))?;
            let vals = arr.iter().map(|x| Rationals.elem_from_json(x)).collect::<Result<Vec<_>>>()?;
            out.push(OrbitSpec::Rational(vals));
        } else {
            let m = q_poly(o.get("m"), "m")?;
            let a = q_poly(o.get("a"), "a")?;
            let t = match o.get("t") {
                Some(_) => q_poly(o.get("t"), "t")?,
                None => UniPoly::one(Rationals),
            };
            out.push(OrbitSpec::Field { m, a, t });
        }
    }
    let seed = v.get("seed").and_then(Value::as_u64);
    KummerPlan::new(out, seed)
}

pub fn plan_to_json(plan: &KummerPlan) -> Value {
    let orbits: Vec<Value> = plan
        .orbits
        .iter()
        .map(|o| match o {
            OrbitSpec::Rational(v) => {
                json!({ "rational": v.iter().map(|a| Rationals.elem_to_json(a)).collect::<Vec<_>>() })
            }
            OrbitSpec::Field { m, a, t } => {
                json!({ "m": poly_to_json(m, "x"), "a": poly_to_json(a, "x"), "t": poly_to_json(t, "x") })
            }
        })
        .collect();
    let mut v = json!({ "orbits": orbits });
    if let Some(s) = plan.seed {
        v["seed"] = json!(s);
    }
    v
}

/// Optional `"galois"` generators attached to field orbits: permutations
/// of the roots of `m`, listed as images of `0..deg m`.
pub fn plan_galois_from_json(v: &Value) -> Result<Vec<Option<Vec<Vec<usize>>>>> {
    let orbits = v
        .get("orbits")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("plan needs an \"orbits\" list"))?;
    orbits
        .iter()
        .map(|o| match o.get("galois") {
            None => Ok(None),
            Some(g) => serde_json::from_value(g.clone())
                .map(Some)
                .map_err(|e| bad(format!("bad \"galois\" generators: {e}"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_poly_round_trip() {
        let p = UniPoly::new(
            Rationals,
            vec![BigRational::new(3.into(), 2.into()), Rationals.zero(), Rationals.from_i64(-7)],
        );
        let v = poly_to_json(&p, "T");
        assert_eq!(v["coeffs"][0], json!("3/2"));
        assert_eq!(AnyPoly::from_json(&v).unwrap(), AnyPoly::Q(p));
    }

    #[test]
    fn function_field_poly_round_trip() {
        let k = RatFunc::new(PrimeField::new(3).unwrap(), "t");
        let a = k.fraction(UniPoly::from_i64s(*k.base(), &[1, 2]), UniPoly::from_i64s(*k.base(), &[0, 1])).unwrap();
        let p = UniPoly::new(k.clone(), vec![a, k.one(), k.t()]);
        let v = poly_to_json(&p, "T");
        assert_eq!(v["field"], json!({ "Fp_t": 3 }));
        assert_eq!(AnyPoly::from_json(&v).unwrap(), AnyPoly::FpT(p));
    }

    #[test]
    fn field_tags_round_trip() {
        for s in [FieldSpec::Rationals, FieldSpec::PrimeField(7), FieldSpec::RationalFunctions(3)] {
            assert_eq!(FieldSpec::parse(&s.to_json()).unwrap(), s);
        }
        assert!(FieldSpec::parse(&json!({ "Fp": 2 })).is_err());
        assert!(FieldSpec::parse(&json!("R")).is_err());
    }

    #[test]
    fn ternary_round_trip() {
        let k = Rationals;
        let t = |i| TernaryForm::var(k, i);
        let q = t(0).pow(4).sub(&t(1).mul(&t(2)).square().scale(&k.from_i64(3)));
        let v = ternary_to_json(&q);
        assert_eq!(ternary_from_json(&k, &v).unwrap(), q);
    }

    #[test]
    fn plan_round_trip() {
        let v = json!({
            "orbits": [
                { "rational": ["2", "3"] },
                { "m": { "field": "Q", "var": "x", "coeffs": ["-2", "0", "0", "0", "1"] },
                  "a": { "field": "Q", "var": "x", "coeffs": ["0", "1"] },
                  "t": { "field": "Q", "var": "x", "coeffs": ["1"] },
                  "galois": [[1, 2, 3, 0]] }
            ],
            "seed": 4
        });
        let plan = plan_from_json(&v).unwrap();
        assert_eq!(plan.seed, Some(4));
        assert_eq!(plan_from_json(&plan_to_json(&plan)).unwrap(), plan);
        assert_eq!(plan_galois_from_json(&v).unwrap(), vec![None, Some(vec![vec![1, 2, 3, 0]])]);
    }

    #[test]
    fn sextic_with_and_without_root() {
        let v = json!({ "F": { "field": "Q", "var": "T", "coeffs": ["25", "0", "0", "0", "0", "0", "1"] } });
        let AnySextic::Q(s) = sextic_from_json(&v).unwrap() else { panic!() };
        assert_eq!(*s.c(), Rationals.from_i64(5));
        let mut w = v.clone();
        w["c"] = json!("-5");
        let AnySextic::Q(s) = sextic_from_json(&w).unwrap() else { panic!() };
        assert_eq!(*s.c(), Rationals.from_i64(-5));
        w["c"] = json!("4");
        assert!(sextic_from_json(&w).is_err());
    }
}
