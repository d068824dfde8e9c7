use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hexforge_core::field::{AlgExt, Field, Rationals, SqrtField};
use hexforge_core::kummer::{assemble_f, mult_charpoly, norm, resample, square_twist, KummerPlan, OrbitSpec};
use hexforge_core::poly::{discriminant, UniPoly};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A random Eisenstein polynomial at 2, hence irreducible over Q.
fn eisenstein<R: Rng>(rng: &mut R, n: usize) -> UniPoly<Rationals> {
    let mut c: Vec<i64> = (0..n).map(|_| 2 * rng.gen_range(-3i64..=3)).collect();
    c[0] = 2 * (2 * rng.gen_range(0i64..3) + 1) * if rng.gen_bool(0.5) { 1 } else { -1 };
    c.push(1);
    UniPoly::from_i64s(Rationals, &c)
}

fn random_reduced<R: Rng>(rng: &mut R, n: usize) -> UniPoly<Rationals> {
    loop {
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-4i64..=4)).collect();
        let p = UniPoly::from_i64s(Rationals, &c);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A plan with one field orbit of degree `n` and `6 - n` rational entries,
/// the last of which makes the constant term a square.
fn random_plan<R: Rng>(rng: &mut R) -> KummerPlan {
    let n = rng.gen_range(2usize..=4);
    let m = eisenstein(rng, n);
    let a = random_reduced(rng, n);
    let t = random_reduced(rng, n);
    let twisted = square_twist(&m, &a, &t).unwrap();
    let mut entries: Vec<BigRational> = (0..5 - n).map(|_| rat(rng.gen_range(1i64..=30) * if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
    // F(0) is the product of the roots; choose the last root to square it.
    let prod: BigRational = entries.iter().fold(norm(&m, &twisted), |acc, e| acc * e);
    let s = rat(rng.gen_range(1i64..=5));
    entries.push(prod * &s * &s);
    KummerPlan::new(vec![OrbitSpec::Rational(entries), OrbitSpec::Field { m, a, t }], None).unwrap()
}

#[test]
fn discriminant_of_f_of_t_squared_is_a_square() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 50 {
        let plan = random_plan(&mut rng);
        let Ok(input) = assemble_f(&plan) else { continue };
        let f = input.f();
        assert!(f.is_monic() && f.degree() == Some(6) && f.is_squarefree());
        assert_eq!(Rationals.square(input.c()), f.coeff(0));
        let d = discriminant(&f.compose_square()).unwrap();
        assert!(Rationals.is_square(&d), "disc not a square for {}", f.format_with("T"));
        checked += 1;
    }
}

#[test]
fn charpoly_annihilates_its_element() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let n = rng.gen_range(1usize..=6);
        let m = eisenstein(&mut rng, n);
        let a = random_reduced(&mut rng, n);
        let chi = mult_charpoly(&m, &a).unwrap();
        assert_eq!(chi.degree(), Some(n));
        let k = AlgExt::new(m.clone(), "x");
        let mut acc = k.zero();
        for c in chi.coeffs().iter().rev() {
            acc = k.add(&k.mul(&acc, &a), &k.embed(c));
        }
        assert!(k.is_zero(&acc));
    }
}

#[test]
fn square_twist_keeps_the_square_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let n = rng.gen_range(1usize..=5);
        let m = eisenstein(&mut rng, n);
        let a = random_reduced(&mut rng, n);
        let t = random_reduced(&mut rng, n);
        let c0 = mult_charpoly(&m, &a).unwrap().coeff(0);
        let c1 = mult_charpoly(&m, &square_twist(&m, &a, &t).unwrap()).unwrap().coeff(0);
        let ratio = c1 / c0;
        let nt = norm(&m, &t);
        assert_eq!(ratio, &nt * &nt);
        assert!(Rationals.is_square(&ratio));
    }
}

#[test]
fn different_seeds_give_different_plans() {
    let plan = KummerPlan::new(
        vec![
            OrbitSpec::Rational(vec![rat(2), rat(3)]),
            OrbitSpec::Field {
                m: UniPoly::from_i64s(Rationals, &[-2, 0, 0, 0, 1]),
                a: UniPoly::from_i64s(Rationals, &[0, 1]),
                t: UniPoly::from_i64s(Rationals, &[1]),
            },
        ],
        None,
    )
    .unwrap();
    let differing = (0..100u64)
        .filter(|&i| {
            let a = resample(&plan, &mut ChaCha8Rng::seed_from_u64(2 * i));
            let b = resample(&plan, &mut ChaCha8Rng::seed_from_u64(2 * i + 1));
            a != b
        })
        .count();
    assert!(differing >= 95, "only {differing} of 100 pairs differ");
}
