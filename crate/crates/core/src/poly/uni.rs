use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::field::{Field, SqrtField};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `X^i`.
///
/// The coefficient vector never ends in a zero, so the zero polynomial has
/// no coefficients at all.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64s(field: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&n| field.from_i64(n)).collect();
        Self::new(field, c)
    }

    pub fn zero(field: F) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Self::new(field, vec![one])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c * X^deg`.
    pub fn monomial(field: F, c: F::Elem, deg: usize) -> Self {
        let mut coeffs = vec![field.zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(field, coeffs)
    }

    pub fn x(field: F) -> Self {
        let one = field.one();
        Self::monomial(field, one, 1)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> F::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone());
        }
        let k = &self.field;
        Self::new(k.clone(), self.coeffs.iter().map(|a| k.mul(a, c)).collect())
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { field: self.field.clone(), coeffs }
    }

    /// `None` when the leading coefficient is not invertible.
    pub fn try_monic(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let inv = self.field.inv(&self.lc())?;
        Some(self.scale(&inv))
    }

    pub fn monic(&self) -> Self {
        self.try_monic().expect("leading coefficient must be invertible")
    }

    /// Division with remainder, or `None` if the divisor is zero or has a
    /// non-invertible leading coefficient.
    pub fn try_div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let k = &self.field;
        let dd = d.degree()?;
        let inv = k.inv(&d.lc())?;
        if self.coeffs.len() <= dd {
            return Some((Self::zero(k.clone()), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![k.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = k.mul(&r[i + dd], &inv);
            if k.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = k.sub(&r[i + j], &k.mul(&c, dc));
            }
            q[i] = c;
        }
        r.truncate(dd);
        Some((Self::new(k.clone(), q), Self::new(k.clone(), r)))
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        self.try_div_rem(d)
            .expect("division by zero or by a polynomial with non-unit leading coefficient")
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Quotient if `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.try_div_rem(d)?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g` and `g` the monic gcd.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        self.try_ext_gcd(other)
            .expect("extended gcd needs invertible leading coefficients")
    }

    pub fn try_ext_gcd(&self, other: &Self) -> Option<(Self, Self, Self)> {
        let k = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(k.clone()), Self::zero(k.clone()));
        let (mut t0, mut t1) = (Self::zero(k.clone()), Self::one(k.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.try_div_rem(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return Some((r0, s0, t0));
        }
        let inv = k.inv(&r0.lc())?;
        Some((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    pub fn derivative(&self) -> Self {
        let k = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &k.from_i64(i as i64)))
            .collect();
        Self::new(k.clone(), coeffs)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let k = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    /// `self(g(X))`.
    pub fn compose(&self, g: &Self) -> Self {
        let k = &self.field;
        let mut acc = Self::zero(k.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(k.clone(), c.clone());
        }
        acc
    }

    /// `self(X^2)`.
    pub fn compose_square(&self) -> Self {
        let k = &self.field;
        let mut coeffs = Vec::with_capacity(2 * self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                coeffs.push(k.zero());
            }
            coeffs.push(c.clone());
        }
        Self::new(k.clone(), coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.field.clone()).rem(m);
        if e.is_zero() {
            return acc;
        }
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(m);
            if e.bit(i) {
                acc = (&acc * &base).rem(m);
            }
        }
        acc
    }

    /// Coefficient-wise image in another field.
    pub fn map<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> UniPoly<G> {
        UniPoly::new(target.clone(), self.coeffs.iter().map(f).collect())
    }

    /// Fallible coefficient-wise image.
    pub fn try_map<G: Field>(
        &self,
        target: &G,
        f: impl Fn(&F::Elem) -> Option<G::Elem>,
    ) -> Option<UniPoly<G>> {
        let coeffs: Option<Vec<_>> = self.coeffs.iter().map(f).collect();
        Some(UniPoly::new(target.clone(), coeffs?))
    }

    /// Lagrange interpolation through `(xs[i], ys[i])` with distinct `xs`.
    pub fn interpolate(field: F, xs: &[F::Elem], ys: &[F::Elem]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let k = &field;
        let mut acc = Self::zero(k.clone());
        for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
            let mut basis = Self::one(k.clone());
            let mut denom = k.one();
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    basis = &basis * &Self::new(k.clone(), vec![k.neg(xj), k.one()]);
                    denom = k.mul(&denom, &k.sub(xi, xj));
                }
            }
            let c = k.div(yi, &denom).expect("interpolation nodes must be distinct");
            acc = &acc + &basis.scale(&c);
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).is_constant()
            }
        }
    }

    /// Renders with the given variable name, highest degree first.
    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let k = &self.field;
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let cs = k.format(c);
            let cs = if cs.contains(['+', ' ']) || cs[1..].contains('-') {
                format!("({cs})")
            } else {
                cs
            };
            parts.push(match i {
                0 => cs,
                _ => {
                    let mon = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if k.is_one(c) {
                        mon
                    } else {
                        format!("{cs}*{mon}")
                    }
                }
            });
        }
        parts.join(" + ")
    }
}

impl<F: SqrtField> UniPoly<F> {
    /// A square root `r` with `r^2 = self`, if one exists. The leading
    /// coefficient of `r` is the field's chosen root of `lc(self)`.
    pub fn sqrt(&self) -> Option<Self> {
        let k = &self.field;
        let Some(n) = self.degree() else {
            return Some(self.clone());
        };
        if n % 2 == 1 {
            return None;
        }
        let lc = self.lc();
        let root_lc = k.sqrt(&lc)?;
        let f = self.scale(&k.inv(&lc)?);
        let half = n / 2;
        let two_inv = k.inv(&k.from_i64(2))?;
        // Monic square root determined from the top half+1 coefficients.
        let mut r = vec![k.zero(); half + 1];
        r[half] = k.one();
        for i in 1..=half {
            let mut acc = f.coeff(n - i);
            for j in 1..i {
                acc = k.sub(&acc, &k.mul(&r[half - j], &r[half - (i - j)]));
            }
            r[half - i] = k.mul(&acc, &two_inv);
        }
        let r = Self::new(k.clone(), r);
        if &r * &r == f {
            Some(r.scale(&root_lc))
        } else {
            None
        }
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("T"))
    }
}

impl<F: Field> Add for &UniPoly<F> {
    type Output = UniPoly<F>;

    fn add(self, rhs: &UniPoly<F>) -> UniPoly<F> {
        let k = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => k.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        UniPoly::new(k.clone(), coeffs)
    }
}

impl<F: Field> Sub for &UniPoly<F> {
    type Output = UniPoly<F>;

    fn sub(self, rhs: &UniPoly<F>) -> UniPoly<F> {
        let k = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => k.sub(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => k.neg(b),
                (None, None) => unreachable!(),
            })
            .collect();
        UniPoly::new(k.clone(), coeffs)
    }
}

impl<F: Field> Neg for &UniPoly<F> {
    type Output = UniPoly<F>;

    fn neg(self) -> UniPoly<F> {
        let k = &self.field;
        UniPoly::new(k.clone(), self.coeffs.iter().map(|c| k.neg(c)).collect())
    }
}

impl<F: Field> Mul for &UniPoly<F> {
    type Output = UniPoly<F>;

    fn mul(self, rhs: &UniPoly<F>) -> UniPoly<F> {
        let k = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(k.clone());
        }
        let mut out = vec![k.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        UniPoly::new(k.clone(), out)
    }
}
