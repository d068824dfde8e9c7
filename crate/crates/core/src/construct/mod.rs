//! The conic-bundle construction: from a monic sextic `F` with square
//! constant term `c^2` to the ternary forms `Q0, Q1, Q2` and the plane
//! quartic `Q1^2 - 4 Q0 Q2`.

mod smooth;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, SqrtField};
use crate::poly::{discriminant, BinaryForm, TernaryForm, UniPoly};

pub use smooth::{smoothness, SmoothnessTest};

/// Which square root of the constant term is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// A monic sextic `F` together with a chosen root `c` of its constant term.
#[derive(Clone, Debug, PartialEq)]
pub struct SexticInput<F: Field> {
    f: UniPoly<F>,
    c: F::Elem,
}

impl<F: Field> SexticInput<F> {
    /// Checks that `F` is monic of degree six and that `c^2 = F(0) != 0`.
    /// Separability is not required here; see [`SexticInput::is_separable`].
    pub fn new(f: UniPoly<F>, c: F::Elem) -> Result<Self> {
        let k = f.field().clone();
        if k.characteristic() == 2 {
            return Err(Error::InvalidInput("characteristic 2 is not supported".into()));
        }
        if f.degree() != Some(6) || !f.is_monic() {
            return Err(Error::InvalidInput("F must be monic of degree 6".into()));
        }
        let a0 = f.coeff(0);
        if k.is_zero(&a0) {
            return Err(Error::InvalidInput("F(0) must be nonzero".into()));
        }
        if k.square(&c) != a0 {
            return Err(Error::InvalidInput(format!(
                "c^2 = {} differs from F(0) = {}",
                k.format(&k.square(&c)),
                k.format(&a0)
            )));
        }
        Ok(SexticInput { f, c })
    }

    pub fn field(&self) -> &F {
        self.f.field()
    }

    pub fn f(&self) -> &UniPoly<F> {
        &self.f
    }

    pub fn c(&self) -> &F::Elem {
        &self.c
    }

    /// `+c` or `-c`.
    pub fn signed_c(&self, sign: Sign) -> F::Elem {
        match sign {
            Sign::Plus => self.c.clone(),
            Sign::Minus => self.field().neg(&self.c),
        }
    }

    pub fn is_separable(&self) -> bool {
        discriminant(&self.f).is_ok_and(|d| !self.field().is_zero(&d))
    }
}

impl<F: SqrtField> SexticInput<F> {
    /// Uses the field's preferred square root of `F(0)`.
    pub fn with_default_root(f: UniPoly<F>) -> Result<Self> {
        let k = f.field().clone();
        let a0 = f.coeff(0);
        let c = k
            .sqrt(&a0)
            .ok_or_else(|| Error::NotA12Compatible(format!("F(0) = {} is not a square", k.format(&a0))))?;
        Self::new(f, c)
    }
}

/// The two binary quadratics `g` and `h` of the fibre matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GhPair<F: Field> {
    pub g: BinaryForm<F>,
    pub h: BinaryForm<F>,
}

/// Solves for `g` and `h` so that `det M(1, T) = -F(T)`, with `g(1, 0) = +-c`.
pub fn solve_gh<F: Field>(input: &SexticInput<F>, sign: Sign) -> Result<GhPair<F>> {
    let k = input.field();
    let f = input.f();
    let half = k
        .inv(&k.from_i64(2))
        .ok_or_else(|| Error::InvalidInput("characteristic 2".into()))?;
    let a5 = f.coeff(5);
    let a4 = f.coeff(4);
    let g2 = k.neg(&k.mul(&k.add(&a5, &k.one()), &half));
    let g1 = k.mul(&k.sub(&k.square(&g2), &a4), &half);
    let g0 = input.signed_c(sign);
    let g = UniPoly::new(k.clone(), vec![g0, g1, g2]);
    let t3 = UniPoly::monomial(k.clone(), k.one(), 3);
    let t5 = UniPoly::monomial(k.clone(), k.one(), 5);
    let diff = &t3 - &g;
    let numer = &(f - &(&diff * &diff)) + &t5;
    let t = UniPoly::x(k.clone());
    let h = numer
        .exact_div(&t)
        .ok_or_else(|| Error::InternalError("F - (T^3 - g)^2 + T^5 not divisible by T".into()))?;
    if h.deg0() > 2 {
        return Err(Error::InternalError("h(1, T) has degree above 2".into()));
    }
    Ok(GhPair {
        g: BinaryForm::from_dehomogenized(&g, 2),
        h: BinaryForm::from_dehomogenized(&h, 2),
    })
}

/// Symmetric 3x3 matrix of binary quadratics in `(s, t)`, rows and columns
/// indexed by `T0, T1, T2`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberMatrix<F: Field> {
    entries: [[BinaryForm<F>; 3]; 3],
}

/// Builds the fibre matrix
/// `[[-st + t^2, st, g], [st, s^2, t^2], [g, t^2, h]]`.
pub fn fiber_matrix<F: Field>(gh: &GhPair<F>) -> FiberMatrix<F> {
    let k = gh.g.field().clone();
    let bf = |c: [i64; 3]| BinaryForm::new(k.clone(), c.iter().map(|&n| k.from_i64(n)).collect());
    let m11 = bf([0, -1, 1]);
    let m12 = bf([0, 1, 0]);
    let m22 = bf([1, 0, 0]);
    let m23 = bf([0, 0, 1]);
    let g = gh.g.clone();
    let h = gh.h.clone();
    FiberMatrix {
        entries: [
            [m11, m12.clone(), g.clone()],
            [m12, m22, m23.clone()],
            [g, m23, h],
        ],
    }
}

impl<F: Field> FiberMatrix<F> {
    pub fn entry(&self, i: usize, j: usize) -> &BinaryForm<F> {
        &self.entries[i][j]
    }

    pub fn field(&self) -> &F {
        self.entries[0][0].field()
    }

    /// Entries evaluated at a point `(s, t)`.
    pub fn eval(&self, s: &F::Elem, t: &F::Elem) -> [[F::Elem; 3]; 3] {
        [0, 1, 2].map(|i| [0, 1, 2].map(|j| self.entries[i][j].eval(s, t)))
    }

    /// Entries of `M(1, T)`.
    pub fn dehomogenized(&self) -> [[UniPoly<F>; 3]; 3] {
        [0, 1, 2].map(|i| [0, 1, 2].map(|j| self.entries[i][j].dehomogenize()))
    }

    /// `det M(1, T)`.
    pub fn det_dehomogenized(&self) -> UniPoly<F> {
        let m = self.dehomogenized();
        let minor = |a: usize, b: usize, c: usize, d: usize| {
            &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d])
        };
        let t0 = &m[0][0] * &minor(1, 2, 2, 1);
        let t1 = &m[0][1] * &minor(0, 2, 2, 0);
        let t2 = &m[0][2] * &minor(0, 1, 1, 0);
        &(&t0 - &t1) + &t2
    }

    /// The sextic binary form `det M(s, t)`.
    pub fn det_form(&self) -> BinaryForm<F> {
        let m = &self.entries;
        let minor = |a: usize, b: usize, c: usize, d: usize| {
            m[1][a].mul(&m[2][b]).sub(&m[1][c].mul(&m[2][d]))
        };
        let t0 = m[0][0].mul(&minor(1, 2, 2, 1));
        let t1 = m[0][1].mul(&minor(0, 2, 2, 0));
        let t2 = m[0][2].mul(&minor(0, 1, 1, 0));
        t0.sub(&t1).add(&t2)
    }
}

/// The three ternary quadratics with
/// `(T0 T1 T2) M(s, t) (T0 T1 T2)^t = s^2 Q0 + st Q1 + t^2 Q2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicBundleModel<F: Field> {
    pub gh: GhPair<F>,
    pub matrix: FiberMatrix<F>,
    pub q0: TernaryForm<F>,
    pub q1: TernaryForm<F>,
    pub q2: TernaryForm<F>,
}

impl<F: Field> ConicBundleModel<F> {
    pub fn from_gh(gh: GhPair<F>) -> Self {
        let matrix = fiber_matrix(&gh);
        let k = matrix.field().clone();
        let mut qs = [0, 1, 2].map(|_| TernaryForm::zero(k.clone(), 2));
        for i in 0..3 {
            for j in 0..3 {
                let mut mono = [0u32; 3];
                mono[i] += 1;
                mono[j] += 1;
                for (idx, q) in qs.iter_mut().enumerate() {
                    let c = matrix.entry(i, j).coeffs()[idx].clone();
                    *q = q.add(&TernaryForm::from_terms(k.clone(), 2, [(mono, c)]));
                }
            }
        }
        let [q0, q1, q2] = qs;
        ConicBundleModel { gh, matrix, q0, q1, q2 }
    }

    pub fn field(&self) -> &F {
        self.matrix.field()
    }

    /// The conic `s^2 Q0 + st Q1 + t^2 Q2` of the pencil.
    pub fn conic(&self, s: &F::Elem, t: &F::Elem) -> TernaryForm<F> {
        let k = self.field();
        self.q0
            .scale(&k.square(s))
            .add(&self.q1.scale(&k.mul(s, t)))
            .add(&self.q2.scale(&k.square(t)))
    }

    /// `Q1^2 - 4 Q0 Q2`.
    pub fn discriminant_quartic(&self) -> TernaryForm<F> {
        let k = self.field();
        self.q1.square().sub(&self.q0.mul(&self.q2).scale(&k.from_i64(4)))
    }
}

/// The plane quartic `Q = Q1^2 - 4 Q0 Q2` built from `(F, +-c)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticModel<F: Field> {
    pub input: SexticInput<F>,
    pub sign: Sign,
    pub bundle: ConicBundleModel<F>,
    pub q: TernaryForm<F>,
}

pub fn quartic<F: Field>(input: &SexticInput<F>, sign: Sign) -> Result<QuarticModel<F>> {
    let gh = solve_gh(input, sign)?;
    let bundle = ConicBundleModel::from_gh(gh);
    let q = bundle.discriminant_quartic();
    Ok(QuarticModel { input: input.clone(), sign, bundle, q })
}

/// The quartics for `+c` and `-c`.
pub fn both_twists<F: Field>(input: &SexticInput<F>) -> Result<(QuarticModel<F>, QuarticModel<F>)> {
    Ok((quartic(input, Sign::Plus)?, quartic(input, Sign::Minus)?))
}

/// Exact witness that `Q` restricted to a conic `D` of the pencil is a
/// square: `scale * Q - root^2 = cofactor * D`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactCertificate<F: Field> {
    pub conic: TernaryForm<F>,
    pub scale: F::Elem,
    pub root: TernaryForm<F>,
    pub cofactor: TernaryForm<F>,
}

impl<F: Field> ContactCertificate<F> {
    pub fn verify(&self, q: &TernaryForm<F>) -> bool {
        let k = self.conic.field();
        !k.is_zero(&self.scale)
            && q.scale(&self.scale).sub(&self.root.square()) == self.cofactor.mul(&self.conic)
    }
}

/// The contact conic `D = s^2 Q0 + st Q1 + t^2 Q2` and its certificate.
pub fn contact_conic<F: Field>(
    model: &ConicBundleModel<F>,
    s: &F::Elem,
    t: &F::Elem,
) -> Result<(TernaryForm<F>, ContactCertificate<F>)> {
    let k = model.field();
    if k.is_zero(s) && k.is_zero(t) {
        return Err(Error::InvalidInput("(s:t) = (0:0)".into()));
    }
    let conic = model.conic(s, t);
    let two = k.from_i64(2);
    let minus_four = k.from_i64(-4);
    // t^2 Q - (t Q1 + 2 s Q0)^2 = -4 Q0 D, and symmetrically with Q2.
    let cert = if !k.is_zero(t) {
        ContactCertificate {
            conic: conic.clone(),
            scale: k.square(t),
            root: model.q1.scale(t).add(&model.q0.scale(&k.mul(&two, s))),
            cofactor: model.q0.scale(&minus_four),
        }
    } else {
        ContactCertificate {
            conic: conic.clone(),
            scale: k.square(s),
            root: model.q1.scale(s).add(&model.q2.scale(&k.mul(&two, t))),
            cofactor: model.q2.scale(&minus_four),
        }
    };
    let q = model.discriminant_quartic();
    if !cert.verify(&q) {
        return Err(Error::InternalError("contact certificate failed".into()));
    }
    Ok((conic, cert))
}

/// The double cover `lambda w^2 = Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct DelPezzoModel<F: Field> {
    pub lambda: F::Elem,
    pub q: TernaryForm<F>,
}

pub fn twist<F: Field>(q: &TernaryForm<F>, lambda: &F::Elem) -> Result<DelPezzoModel<F>> {
    if q.field().is_zero(lambda) {
        return Err(Error::InvalidInput("lambda must be nonzero".into()));
    }
    if q.degree() != 4 {
        return Err(Error::InvalidInput("twist expects a quartic".into()));
    }
    Ok(DelPezzoModel { lambda: lambda.clone(), q: q.clone() })
}

impl<F: SqrtField> DelPezzoModel<F> {
    /// Same quartic and `lambda / lambda'` a square.
    pub fn equivalent(&self, other: &Self) -> bool {
        let k = self.q.field();
        self.q == other.q
            && k.div(&self.lambda, &other.lambda).is_some_and(|r| k.is_square(&r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_rational, PrimeField, RatFunc, Rationals};

    fn q(c: &[i64]) -> UniPoly<Rationals> {
        UniPoly::from_i64s(Rationals, c)
    }

    fn rat(s: &str) -> num_rational::BigRational {
        parse_rational(s).unwrap()
    }

    fn t6_plus_25() -> SexticInput<Rationals> {
        SexticInput::new(q(&[25, 0, 0, 0, 0, 0, 1]), rat("5")).unwrap()
    }

    #[test]
    fn gh_for_t6_plus_25() {
        let gh = solve_gh(&t6_plus_25(), Sign::Plus).unwrap();
        assert_eq!(gh.g.coeffs(), &[rat("5"), rat("1/8"), rat("-1/2")]);
        let m = fiber_matrix(&gh);
        let f = t6_plus_25().f().clone();
        assert!((&m.det_dehomogenized() + &f).is_zero());
    }

    #[test]
    fn gh_for_third_example_sextic() {
        let f = q(&[1, -5, 0, 9, -2, -3, 1]);
        let input = SexticInput::new(f.clone(), rat("1")).unwrap();
        let gh = solve_gh(&input, Sign::Plus).unwrap();
        assert_eq!(gh.g.coeffs(), &[rat("1"), rat("3/2"), rat("1")]);
        let m = fiber_matrix(&gh);
        assert!((&m.det_dehomogenized() + &f).is_zero());
    }

    #[test]
    fn wrong_root_rejected() {
        let err = SexticInput::new(q(&[1, 0, 0, 0, 0, 0, 1]), rat("2")).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn closed_forms_of_the_bundle() {
        let input = t6_plus_25();
        let model = quartic(&input, Sign::Plus).unwrap();
        let b = &model.bundle;
        let k = Rationals;
        let g = b.gh.g.coeffs();
        let h = b.gh.h.coeffs();
        let term = |m: [u32; 3], c: num_rational::BigRational| TernaryForm::from_terms(k, 2, [(m, c)]);
        let two = rat("2");
        let q0 = term([0, 2, 0], rat("1"))
            .add(&term([1, 0, 1], &two * &g[0]))
            .add(&term([0, 0, 2], h[0].clone()));
        let q1 = term([2, 0, 0], rat("-1"))
            .add(&term([1, 1, 0], two.clone()))
            .add(&term([1, 0, 1], &two * &g[1]))
            .add(&term([0, 0, 2], h[1].clone()));
        let q2 = term([2, 0, 0], rat("1"))
            .add(&term([0, 1, 1], two.clone()))
            .add(&term([1, 0, 1], &two * &g[2]))
            .add(&term([0, 0, 2], h[2].clone()));
        assert_eq!(b.q0, q0);
        assert_eq!(b.q1, q1);
        assert_eq!(b.q2, q2);
        assert_eq!(model.q.coeff(&[4, 0, 0]), rat("1"));
        assert_eq!(model.q.degree(), 4);
    }

    #[test]
    fn det_form_is_minus_homogenized_f() {
        let input = t6_plus_25();
        let gh = solve_gh(&input, Sign::Minus).unwrap();
        let m = fiber_matrix(&gh);
        let det = m.det_form();
        let f = BinaryForm::from_dehomogenized(input.f(), 6);
        assert!(det.add(&f).is_zero());
    }

    #[test]
    fn contact_certificates() {
        let model = quartic(&t6_plus_25(), Sign::Plus).unwrap();
        let k = Rationals;
        for (s, t) in [(0, 1), (1, 0), (1, 1), (3, -7)] {
            let (conic, cert) = contact_conic(&model.bundle, &k.from_i64(s), &k.from_i64(t)).unwrap();
            assert!(cert.verify(&model.q));
            // Oracle: Q times the scale is a square modulo the conic.
            let lhs = model.q.scale(&cert.scale).sub(&cert.root.square());
            let (_, rem) = lhs.div_rem(&conic);
            assert!(rem.is_zero());
        }
        assert!(contact_conic(&model.bundle, &k.zero(), &k.zero()).is_err());
    }

    #[test]
    fn both_signs_differ() {
        let (p, m) = both_twists(&t6_plus_25()).unwrap();
        assert_ne!(p.q, m.q);
    }

    #[test]
    fn works_over_function_field() {
        let k = RatFunc::new(PrimeField::new(3).unwrap(), "t");
        let t = k.t();
        // F = T^6 + t T^5 + 2 T^2 + (t^2 + 1)^2 with c = t^2 + 1.
        let c = k.add(&k.square(&t), &k.one());
        let f = UniPoly::new(
            k.clone(),
            vec![k.square(&c), k.zero(), k.from_i64(2), k.zero(), k.zero(), t.clone(), k.one()],
        );
        let input = SexticInput::new(f.clone(), c).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let gh = solve_gh(&input, sign).unwrap();
            assert!((&fiber_matrix(&gh).det_dehomogenized() + &f).is_zero());
        }
    }

    #[test]
    fn twist_equivalence() {
        let model = quartic(&t6_plus_25(), Sign::Plus).unwrap();
        let k = Rationals;
        let a = twist(&model.q, &k.from_i64(4)).unwrap();
        let b = twist(&model.q, &k.from_i64(1)).unwrap();
        let c = twist(&model.q, &k.from_i64(2)).unwrap();
        let d = twist(&model.q, &k.from_i64(3)).unwrap();
        assert!(a.equivalent(&b));
        assert!(!c.equivalent(&d));
        assert!(twist(&model.q, &k.zero()).is_err());
    }
}
