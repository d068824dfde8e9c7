use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::factor::factor_over_q;
use crate::poly::{resultant, UniPoly};

use super::{Field, RationalVectorSpace, Rationals, SqrtField};

/// Simple algebraic extension `base[x]/(m(x))` with `m` monic.
///
/// Elements are reduced representatives of degree below `deg m`. When `m` is
/// reducible this is only a ring; `inv` then reports zero divisors as
/// `None`, which callers may use to split the modulus.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgExt<F: Field> {
    inner: Arc<Inner<F>>,
}

#[derive(Debug, PartialEq)]
struct Inner<F: Field> {
    modulus: UniPoly<F>,
    var: String,
}

impl<F: Field> AlgExt<F> {
    /// `modulus` must be monic of degree at least one.
    pub fn new(modulus: UniPoly<F>, var: &str) -> Self {
        assert!(
            modulus.degree().is_some_and(|d| d >= 1) && modulus.is_monic(),
            "extension modulus must be monic of positive degree"
        );
        AlgExt { inner: Arc::new(Inner { modulus, var: var.to_string() }) }
    }

    pub fn base(&self) -> &F {
        self.inner.modulus.field()
    }

    pub fn modulus(&self) -> &UniPoly<F> {
        &self.inner.modulus
    }

    pub fn var(&self) -> &str {
        &self.inner.var
    }

    pub fn degree(&self) -> usize {
        self.inner.modulus.deg0()
    }

    pub fn reduce(&self, p: &UniPoly<F>) -> UniPoly<F> {
        if p.deg0() < self.degree() {
            p.clone()
        } else {
            p.rem(&self.inner.modulus)
        }
    }

    pub fn embed(&self, c: &F::Elem) -> UniPoly<F> {
        UniPoly::constant(self.base().clone(), c.clone())
    }

    pub fn generator(&self) -> UniPoly<F> {
        self.reduce(&UniPoly::x(self.base().clone()))
    }

    /// Whether the element lies in the base field.
    pub fn as_base(&self, a: &UniPoly<F>) -> Option<F::Elem> {
        a.is_constant().then(|| a.coeff(0))
    }
}

impl<F: Field> Field for AlgExt<F> {
    type Elem = UniPoly<F>;

    fn zero(&self) -> UniPoly<F> {
        UniPoly::zero(self.base().clone())
    }

    fn one(&self) -> UniPoly<F> {
        UniPoly::one(self.base().clone())
    }

    fn from_i64(&self, n: i64) -> UniPoly<F> {
        UniPoly::constant(self.base().clone(), self.base().from_i64(n))
    }

    fn is_zero(&self, a: &UniPoly<F>) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
        a + b
    }

    fn sub(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
        a - b
    }

    fn neg(&self, a: &UniPoly<F>) -> UniPoly<F> {
        -a
    }

    fn mul(&self, a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
        self.reduce(&(a * b))
    }

    fn inv(&self, a: &UniPoly<F>) -> Option<UniPoly<F>> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.try_ext_gcd(&self.inner.modulus)?;
        if g.degree() == Some(0) {
            Some(self.reduce(&s))
        } else {
            None
        }
    }

    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }

    fn format(&self, a: &UniPoly<F>) -> String {
        a.format_with(&self.inner.var)
    }

    fn from_rational(&self, q: &BigRational) -> Option<UniPoly<F>> {
        self.base().from_rational(q).map(|c| self.embed(&c))
    }
}

impl<F: RationalVectorSpace> RationalVectorSpace for AlgExt<F> {
    fn dimension(&self) -> usize {
        self.degree() * self.base().dimension()
    }

    fn to_coords(&self, a: &UniPoly<F>) -> Vec<BigRational> {
        let k = self.base();
        let mut out = Vec::with_capacity(self.dimension());
        for i in 0..self.degree() {
            out.extend(k.to_coords(&a.coeff(i)));
        }
        out
    }

    fn from_coords(&self, coords: &[BigRational]) -> UniPoly<F> {
        let k = self.base();
        let d = k.dimension();
        let coeffs = (0..self.degree())
            .map(|i| {
                let chunk = coords.get(i * d..(i + 1) * d);
                match chunk {
                    Some(c) => k.from_coords(c),
                    None => k.from_coords(&vec![BigRational::zero(); d]),
                }
            })
            .collect();
        UniPoly::new(k.clone(), coeffs)
    }
}

impl AlgExt<Rationals> {
    /// Characteristic polynomial of multiplication by `a`, as
    /// `Res_x(m(x), T - a(x))` interpolated at `deg m + 1` points.
    pub fn charpoly(&self, a: &UniPoly<Rationals>) -> UniPoly<Rationals> {
        let k = Rationals;
        let m = self.modulus();
        let a = self.reduce(a);
        let xs: Vec<BigRational> = (0..=self.degree() as i64).map(|i| k.from_i64(i)).collect();
        let ys: Vec<BigRational> = xs
            .iter()
            .map(|x| {
                let g = &UniPoly::constant(k, x.clone()) - &a;
                resultant(m, &g).expect("modulus is nonzero")
            })
            .collect();
        UniPoly::interpolate(k, &xs, &ys)
    }

    pub fn norm(&self, a: &UniPoly<Rationals>) -> BigRational {
        resultant(self.modulus(), &self.reduce(a)).expect("modulus is nonzero")
    }
}

/// Requires an irreducible modulus. Uses Trager's method: after a shift
/// `y -> y + s x` making the norm of `y^2 - a` squarefree, each rational
/// factor of the norm has gcd with the shifted polynomial equal to one
/// irreducible factor over the field.
impl SqrtField for AlgExt<Rationals> {
    fn sqrt(&self, a: &UniPoly<Rationals>) -> Option<UniPoly<Rationals>> {
        let q = Rationals;
        let a = self.reduce(a);
        if a.is_zero() {
            return Some(a);
        }
        if let Some(r) = self.as_base(&a).and_then(|c| q.sqrt(&c)) {
            return Some(self.embed(&r));
        }
        let n = self.degree();
        let x = self.generator();
        for shift in (0i64..).map(|i| if i % 2 == 1 { (i + 1) / 2 } else { -i / 2 }) {
            let sx = self.scale_int(&x, shift);
            // (y + s x)^2 - a
            let shifted = UniPoly::new(
                self.clone(),
                vec![self.sub(&self.square(&sx), &a), self.scale_int(&sx, 2), self.one()],
            );
            let ys: Vec<BigRational> = (0..=2 * n as i64).map(|i| q.from_i64(i)).collect();
            let vals: Vec<BigRational> = ys
                .iter()
                .map(|y0| {
                    let v = shifted.eval(&self.embed(y0));
                    resultant(self.modulus(), &v).expect("modulus is nonzero")
                })
                .collect();
            let norm = UniPoly::interpolate(q, &ys, &vals);
            if !norm.is_squarefree() {
                continue;
            }
            for (g, _) in factor_over_q(&norm) {
                let lifted =
                    UniPoly::new(self.clone(), g.coeffs().iter().map(|c| self.embed(c)).collect());
                let h = shifted.gcd(&lifted);
                if h.degree() == Some(1) {
                    let root = self.sub(&sx, &h.coeff(0));
                    debug_assert_eq!(self.square(&root), a);
                    return Some(root);
                }
            }
            return None;
        }
        unreachable!()
    }
}
