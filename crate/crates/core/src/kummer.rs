//! Assembling the sextic `F` from Kummer data: rational roots, or the
//! characteristic polynomial of a twisted element of a number field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::construct::SexticInput;
use crate::error::{Error, Result};
use crate::factor::is_irreducible_over_q;
use crate::field::{AlgExt, Field, Rationals, SqrtField};
use crate::poly::UniPoly;

/// Data for one Galois orbit of roots of `F`.
#[derive(Clone, Debug, PartialEq)]
pub enum OrbitSpec {
    /// Rational roots `A_i`.
    Rational(Vec<BigRational>),
    /// The conjugates of `A = a * t^2` in `Q[x]/(m)`.
    Field {
        m: UniPoly<Rationals>,
        a: UniPoly<Rationals>,
        t: UniPoly<Rationals>,
    },
}

impl OrbitSpec {
    pub fn size(&self) -> usize {
        match self {
            OrbitSpec::Rational(v) => v.len(),
            OrbitSpec::Field { m, .. } => m.deg0(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            OrbitSpec::Rational(v) => {
                if v.is_empty() {
                    return Err(Error::InvalidInput("empty rational orbit".into()));
                }
                if v.iter().any(Zero::is_zero) {
                    return Err(Error::InvalidInput("rational orbit entries must be nonzero".into()));
                }
            }
            OrbitSpec::Field { m, a, t } => {
                let n = m.deg0();
                if n == 0 || !m.is_monic() {
                    return Err(Error::InvalidInput("m must be monic of positive degree".into()));
                }
                if a.is_zero() || t.is_zero() {
                    return Err(Error::InvalidInput("a and t must be nonzero".into()));
                }
                if a.deg0() >= n || t.deg0() >= n {
                    return Err(Error::InvalidInput("a and t must be reduced modulo m".into()));
                }
            }
        }
        Ok(())
    }
}

/// Orbits with sizes summing to six, plus an optional resampling seed.
#[derive(Clone, Debug, PartialEq)]
pub struct KummerPlan {
    pub orbits: Vec<OrbitSpec>,
    pub seed: Option<u64>,
}

impl KummerPlan {
    pub fn new(orbits: Vec<OrbitSpec>, seed: Option<u64>) -> Result<Self> {
        for o in &orbits {
            o.validate()?;
        }
        let total: usize = orbits.iter().map(OrbitSpec::size).sum();
        if total != 6 {
            return Err(Error::InvalidInput(format!("orbit sizes sum to {total}, expected 6")));
        }
        Ok(KummerPlan { orbits, seed })
    }

    pub fn rational(entries: &[i64]) -> Result<Self> {
        let v = entries.iter().map(|&n| BigRational::from_integer(BigInt::from(n))).collect();
        Self::new(vec![OrbitSpec::Rational(v)], None)
    }
}

/// `A * t^2` reduced modulo `m`; keeps the square class of `A`.
pub fn square_twist(
    m: &UniPoly<Rationals>,
    a: &UniPoly<Rationals>,
    t: &UniPoly<Rationals>,
) -> Result<UniPoly<Rationals>> {
    if !m.is_monic() || m.deg0() == 0 {
        return Err(Error::InvalidInput("m must be monic of positive degree".into()));
    }
    let tr = t.rem(m);
    if tr.is_zero() {
        return Err(Error::InvalidInput("twist t must be nonzero".into()));
    }
    let k = AlgExt::new(m.clone(), "x");
    Ok(k.mul(&k.reduce(a), &k.square(&tr)))
}

/// Characteristic polynomial of multiplication by `a` on `Q[x]/(m)`,
/// computed as `Res_x(m(x), T - a(x))` by interpolation in `T`.
pub fn mult_charpoly(m: &UniPoly<Rationals>, a: &UniPoly<Rationals>) -> Result<UniPoly<Rationals>> {
    if !m.is_monic() || m.deg0() == 0 {
        return Err(Error::InvalidInput("m must be monic of positive degree".into()));
    }
    if !is_irreducible_over_q(m) {
        return Err(Error::InvalidInput(format!("{} is reducible", m.format_with("x"))));
    }
    Ok(charpoly_unchecked(m, a))
}

/// As [`mult_charpoly`] without the irreducibility check.
pub(crate) fn charpoly_unchecked(m: &UniPoly<Rationals>, a: &UniPoly<Rationals>) -> UniPoly<Rationals> {
    AlgExt::new(m.clone(), "x").charpoly(a)
}

/// The norm of `a` from `Q[x]/(m)` to Q.
pub fn norm(m: &UniPoly<Rationals>, a: &UniPoly<Rationals>) -> BigRational {
    AlgExt::new(m.clone(), "x").norm(a)
}

fn orbit_polynomial(o: &OrbitSpec) -> Result<UniPoly<Rationals>> {
    let k = Rationals;
    match o {
        OrbitSpec::Rational(v) => Ok(v.iter().fold(UniPoly::one(k), |acc, a| {
            &acc * &UniPoly::new(k, vec![-a.clone(), BigRational::one()])
        })),
        OrbitSpec::Field { m, a, t } => mult_charpoly(m, &square_twist(m, a, t)?),
    }
}

/// `F = prod (T - A_i)` over all orbits, with the non-negative root `c` of
/// `F(0)`.
pub fn assemble_f(plan: &KummerPlan) -> Result<SexticInput<Rationals>> {
    let k = Rationals;
    let mut f = UniPoly::one(k);
    for o in &plan.orbits {
        f = &f * &orbit_polynomial(o)?;
    }
    let input_f = f.clone();
    if !input_f.is_squarefree() {
        return Err(Error::ResampleNeeded("F has a repeated root".into()));
    }
    let a0 = f.coeff(0);
    let c = k
        .sqrt(&a0)
        .ok_or_else(|| Error::NotA12Compatible(format!("F(0) = {} is not a square in Q", k.format(&a0))))?;
    SexticInput::new(f, c)
}

/// Redraws the twists of a plan.
///
/// Each rational entry is multiplied by `r^2` with `r` uniform in `1..=9`.
/// Each field twist `t` is replaced by a nonzero polynomial of degree below
/// `deg m` with coefficients uniform in `-3..=3`. Orbit sizes, `m` and `a`
/// are unchanged.
pub fn resample<R: Rng>(plan: &KummerPlan, rng: &mut R) -> KummerPlan {
    let orbits = plan
        .orbits
        .iter()
        .map(|o| match o {
            OrbitSpec::Rational(v) => OrbitSpec::Rational(
                v.iter()
                    .map(|a| {
                        let r = rng.gen_range(1i64..=9);
                        a * BigRational::from_integer(BigInt::from(r * r))
                    })
                    .collect(),
            ),
            OrbitSpec::Field { m, a, .. } => {
                let n = m.deg0();
                let t = loop {
                    let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-3i64..=3)).collect();
                    let t = UniPoly::from_i64s(Rationals, &c);
                    if !t.is_zero() {
                        break t;
                    }
                };
                OrbitSpec::Field { m: m.clone(), a: a.clone(), t }
            }
        })
        .collect();
    KummerPlan { orbits, seed: plan.seed }
}

/// Outcome of [`assemble_with_resampling`].
#[derive(Clone, Debug)]
pub struct Assembled {
    pub input: SexticInput<Rationals>,
    pub plan: KummerPlan,
    pub resamples: usize,
}

/// Calls [`assemble_f`], resampling on `ResampleNeeded` up to
/// `max_resamples` times. Other errors are returned immediately.
pub fn assemble_with_resampling<R: Rng>(
    plan: &KummerPlan,
    max_resamples: usize,
    rng: &mut R,
) -> Result<Assembled> {
    let mut current = plan.clone();
    let mut resamples = 0;
    loop {
        match assemble_f(&current) {
            Ok(input) => return Ok(Assembled { input, plan: current, resamples }),
            Err(Error::ResampleNeeded(msg)) => {
                if resamples >= max_resamples {
                    return Err(Error::ResampleNeeded(msg));
                }
                current = resample(&current, rng);
                resamples += 1;
            }
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(c: &[i64]) -> UniPoly<Rationals> {
        UniPoly::from_i64s(Rationals, c)
    }

    #[test]
    fn twist_examples() {
        let m = q(&[-2, 0, 1]);
        assert_eq!(square_twist(&m, &q(&[0, 1]), &q(&[1])).unwrap(), q(&[0, 1]));
        assert_eq!(square_twist(&m, &q(&[0, 1]), &q(&[0, 1])).unwrap(), q(&[0, 2]));
        assert!(square_twist(&m, &q(&[0, 1]), &q(&[])).is_err());
        // (x + 1) x^2 mod x^3 - x - 1 by long division: x^3 + x^2 = x^2 + x + 1.
        let m3 = q(&[-1, -1, 0, 1]);
        assert_eq!(square_twist(&m3, &q(&[1, 1]), &q(&[0, 1])).unwrap(), q(&[1, 1, 1]));
    }

    #[test]
    fn charpoly_examples() {
        let m = q(&[-2, 0, 1]);
        assert_eq!(mult_charpoly(&m, &q(&[0, 1])).unwrap(), q(&[-2, 0, 1]));
        // Companion matrix of x + 1: [[1, 2], [1, 1]], trace 2, det -1.
        assert_eq!(mult_charpoly(&m, &q(&[1, 1])).unwrap(), q(&[-1, -2, 1]));
        let m3 = q(&[-2, 0, 0, 1]);
        let chi = mult_charpoly(&m3, &q(&[0, 0, 1])).unwrap();
        assert_eq!(chi, q(&[-4, 0, 0, 1]));
        let k = AlgExt::new(m3.clone(), "x");
        let a = q(&[0, 0, 1]);
        let val = chi.coeffs().iter().rev().fold(k.zero(), |acc, c| {
            k.add(&k.mul(&acc, &a), &k.from_rational(c).unwrap())
        });
        assert!(val.is_zero());
        assert!(mult_charpoly(&q(&[-1, 0, 1]), &q(&[0, 1])).is_err());
    }

    #[test]
    fn assemble_rational_squares() {
        let plan = KummerPlan::rational(&[1, 4, 9, 16, 25, 36]).unwrap();
        let input = assemble_f(&plan).unwrap();
        assert_eq!(input.f().coeff(0), Rationals.from_i64(518400));
        assert_eq!(*input.c(), Rationals.from_i64(720));
    }

    #[test]
    fn assemble_rejects_non_square_constant_term() {
        let orbits = vec![
            OrbitSpec::Rational(vec![Rationals.from_i64(2), Rationals.from_i64(3)]),
            OrbitSpec::Field { m: q(&[-2, 0, 0, 0, 1]), a: q(&[0, 1]), t: q(&[1]) },
        ];
        let plan = KummerPlan::new(orbits, None).unwrap();
        // chi_x = x^4 - 2 has constant term -2, so F(0) = 2 * 3 * (-2).
        let chi = mult_charpoly(&q(&[-2, 0, 0, 0, 1]), &q(&[0, 1])).unwrap();
        assert_eq!(chi.coeff(0), Rationals.from_i64(-2));
        assert!(matches!(assemble_f(&plan), Err(Error::NotA12Compatible(_))));
    }

    #[test]
    fn repeated_root_needs_resampling() {
        let plan = KummerPlan::rational(&[1, 1, 2, 3, 4, 5]).unwrap();
        assert!(matches!(assemble_f(&plan), Err(Error::ResampleNeeded(_))));
    }

    #[test]
    fn sizes_must_sum_to_six() {
        assert!(KummerPlan::rational(&[1, 2, 3]).is_err());
        assert!(KummerPlan::rational(&[1, 2, 3, 4, 5, 0]).is_err());
    }

    #[test]
    fn resampling_preserves_shape() {
        let plan = KummerPlan::new(
            vec![
                OrbitSpec::Rational(vec![Rationals.from_i64(2), Rationals.from_i64(8)]),
                OrbitSpec::Field { m: q(&[-2, 0, 0, 0, 1]), a: q(&[0, 1]), t: q(&[1]) },
            ],
            Some(0),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            let r = resample(&plan, &mut rng);
            assert_eq!(
                r.orbits.iter().map(OrbitSpec::size).collect::<Vec<_>>(),
                plan.orbits.iter().map(OrbitSpec::size).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn norm_matches_charpoly_constant_term() {
        let m = q(&[-1, -1, 0, 1]);
        let a = q(&[2, 0, 1]);
        let chi = mult_charpoly(&m, &a).unwrap();
        // chi(0) = (-1)^3 N(a)
        assert_eq!(chi.coeff(0), -norm(&m, &a));
    }
}
