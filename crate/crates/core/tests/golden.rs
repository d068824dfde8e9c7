use serde_json::json;

use hexforge_core::construct::{fiber_matrix, quartic, smoothness, solve_gh, SexticInput, Sign};
use hexforge_core::field::{Field, Rationals};
use hexforge_core::json::plan_to_json;
use hexforge_core::kummer::{assemble_f, resample, KummerPlan, OrbitSpec};
use hexforge_core::poly::UniPoly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(c: &[i64]) -> UniPoly<Rationals> {
    UniPoly::from_i64s(Rationals, c)
}

fn mixed_plan() -> KummerPlan {
    KummerPlan::new(
        vec![
            OrbitSpec::Rational(vec![Rationals.from_i64(2), Rationals.from_i64(3)]),
            OrbitSpec::Field { m: q(&[-2, 0, 0, 0, 1]), a: q(&[0, 1]), t: q(&[1]) },
        ],
        Some(0),
    )
    .unwrap()
}

#[test]
fn seed_zero_resample_is_locked() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let out = plan_to_json(&resample(&mixed_plan(), &mut rng));
    let expected = json!({
        "orbits": [
            { "rational": ["98", "75"] },
            {
                "m": { "field": "Q", "var": "x", "coeffs": ["-2", "0", "0", "0", "1"] },
                "a": { "field": "Q", "var": "x", "coeffs": ["0", "1"] },
                "t": { "field": "Q", "var": "x", "coeffs": ["-3", "3", "0", "2"] }
            }
        ],
        "seed": 0
    });
    assert_eq!(out, expected);
}

#[test]
fn resampled_plan_keeps_square_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let before = assemble_f(&mixed_plan());
    let after = assemble_f(&resample(&mixed_plan(), &mut rng));
    // 2 * 3 * N(x) = 6 * (-2) is not a square, before or after.
    assert!(before.is_err() && after.is_err());
}

#[test]
fn t6_plus_25_quartic_is_locked() {
    let input = SexticInput::new(q(&[25, 0, 0, 0, 0, 0, 1]), Rationals.from_i64(5)).unwrap();
    let model = quartic(&input, Sign::Plus).unwrap();
    assert!(smoothness(&model.q).unwrap());
    let m = fiber_matrix(&solve_gh(&input, Sign::Plus).unwrap());
    assert!((&m.det_dehomogenized() + input.f()).is_zero());
    assert_eq!(
        model.q.format(),
        "T0^4 + -4*T0^3*T1 + -81/2*T0^3*T2 + T0^2*T1*T2 + 1123/32*T0^2*T2^2 + 4*T0*T1^2*T2 \
         + -961/16*T0*T1*T2^2 + -52161/128*T0*T2^3 + -8*T1^3*T2 + -81/2*T1^2*T2^2 + 10*T1*T2^3 \
         + 309121/4096*T2^4"
    );
}
