use crate::field::Field;

use super::UniPoly;

/// Homogeneous form in two variables `(u, v)`.
///
/// `coeffs[i]` is the coefficient of `u^(d-i) v^i`, so `b(1, T)` has
/// coefficient list `coeffs`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> BinaryForm<F> {
    /// `coeffs.len()` is the degree plus one.
    pub fn new(field: F, coeffs: Vec<F::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs degree + 1 coefficients");
        BinaryForm { field, coeffs }
    }

    pub fn zero(field: F, degree: usize) -> Self {
        let coeffs = vec![field.zero(); degree + 1];
        BinaryForm { field, coeffs }
    }

    /// Homogenization of `p(T)` to the given degree (`p(T) = b(1, T)`).
    pub fn from_dehomogenized(p: &UniPoly<F>, degree: usize) -> Self {
        assert!(p.deg0() <= degree, "polynomial degree exceeds form degree");
        let coeffs = (0..=degree).map(|i| p.coeff(i)).collect();
        BinaryForm { field: p.field().clone(), coeffs }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    /// `b(1, T)`.
    pub fn dehomogenize(&self) -> UniPoly<F> {
        UniPoly::new(self.field.clone(), self.coeffs.clone())
    }

    pub fn eval(&self, u: &F::Elem, v: &F::Elem) -> F::Elem {
        let k = &self.field;
        let d = self.degree() as u64;
        let mut acc = k.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let term = k.mul(c, &k.mul(&k.pow(u, d - i as u64), &k.pow(v, i as u64)));
            acc = k.add(&acc, &term);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        let k = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| k.add(a, b)).collect();
        BinaryForm { field: k.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        let k = &self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| k.sub(a, b)).collect();
        BinaryForm { field: k.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = &self.field;
        let mut coeffs = vec![k.zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = k.add(&coeffs[i + j], &k.mul(a, b));
            }
        }
        BinaryForm { field: k.clone(), coeffs }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let k = &self.field;
        BinaryForm { field: k.clone(), coeffs: self.coeffs.iter().map(|a| k.mul(a, c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BinaryForm::new(self.field.clone(), vec![self.field.one()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Writes `b = gamma * q^2` when `b` is a constant multiple of a square.
///
/// `gamma` is the first nonzero coefficient of `b` (lowest power of `v`) and
/// `q` is normalized so that its first nonzero coefficient is one. The zero
/// form returns `(0, 1)`. Every positive answer is re-expanded and checked.
pub fn binary_square_root<F: Field>(b: &BinaryForm<F>) -> Option<(BinaryForm<F>, F::Elem)> {
    let k = b.field();
    let d = b.degree();
    if d % 2 == 1 {
        return None;
    }
    let half = d / 2;
    let Some(lo) = b.coeffs.iter().position(|c| !k.is_zero(c)) else {
        return Some((BinaryForm::zero(k.clone(), half), k.one()));
    };
    let hi = b.coeffs.iter().rposition(|c| !k.is_zero(c)).unwrap();
    if lo % 2 == 1 || (d - hi) % 2 == 1 {
        return None;
    }
    let gamma = b.coeffs[lo].clone();
    let gi = k.inv(&gamma)?;
    let two_inv = k.inv(&k.from_i64(2))?;
    let core: Vec<F::Elem> = b.coeffs[lo..=hi].iter().map(|c| k.mul(c, &gi)).collect();
    let n = (hi - lo) / 2;
    // Power-series square root with constant term one.
    let mut r = vec![k.zero(); n + 1];
    r[0] = k.one();
    for i in 1..=n {
        let mut acc = core[i].clone();
        for j in 1..i {
            acc = k.sub(&acc, &k.mul(&r[j], &r[i - j]));
        }
        r[i] = k.mul(&acc, &two_inv);
    }
    let mut q = vec![k.zero(); half + 1];
    for (i, c) in r.into_iter().enumerate() {
        q[lo / 2 + i] = c;
    }
    let q = BinaryForm::new(k.clone(), q);
    if q.mul(&q).scale(&gamma) == *b {
        Some((q, gamma))
    } else {
        None
    }
}
