use std::sync::Arc;

use crate::poly::UniPoly;

use super::{Field, SqrtField};

/// The rational function field `base(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<F: Field> {
    base: F,
    var: Arc<str>,
}

/// A fraction `num/den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFuncElem<F: Field> {
    pub num: UniPoly<F>,
    pub den: UniPoly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(base: F, var: &str) -> Self {
        RatFunc { base, var: Arc::from(var) }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// The transcendental generator `t`.
    pub fn t(&self) -> RatFuncElem<F> {
        self.from_poly(UniPoly::x(self.base.clone()))
    }

    pub fn constant(&self, c: F::Elem) -> RatFuncElem<F> {
        self.from_poly(UniPoly::constant(self.base.clone(), c))
    }

    pub fn from_poly(&self, num: UniPoly<F>) -> RatFuncElem<F> {
        RatFuncElem { num, den: UniPoly::one(self.base.clone()) }
    }

    /// Reduced fraction; `None` for a zero denominator.
    pub fn fraction(&self, num: UniPoly<F>, den: UniPoly<F>) -> Option<RatFuncElem<F>> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(self.zero());
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        if !d.is_monic() {
            let inv = self.base.inv(&d.lc())?;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Some(RatFuncElem { num: n, den: d })
    }

    /// Evaluation at `t = x`; `None` if the denominator vanishes there.
    pub fn eval(&self, a: &RatFuncElem<F>, x: &F::Elem) -> Option<F::Elem> {
        self.base.div(&a.num.eval(x), &a.den.eval(x))
    }

    pub fn is_polynomial(&self, a: &RatFuncElem<F>) -> bool {
        a.den.is_constant()
    }
}

impl<F: Field> Field for RatFunc<F> {
    type Elem = RatFuncElem<F>;

    fn zero(&self) -> RatFuncElem<F> {
        self.from_poly(UniPoly::zero(self.base.clone()))
    }

    fn one(&self) -> RatFuncElem<F> {
        self.from_poly(UniPoly::one(self.base.clone()))
    }

    fn from_i64(&self, n: i64) -> RatFuncElem<F> {
        self.constant(self.base.from_i64(n))
    }

    fn is_zero(&self, a: &RatFuncElem<F>) -> bool {
        a.num.is_zero()
    }

    fn add(&self, a: &RatFuncElem<F>, b: &RatFuncElem<F>) -> RatFuncElem<F> {
        if a.den == b.den {
            return self.fraction(&a.num + &b.num, a.den.clone()).unwrap();
        }
        let num = &(&a.num * &b.den) + &(&b.num * &a.den);
        self.fraction(num, &a.den * &b.den).unwrap()
    }

    fn sub(&self, a: &RatFuncElem<F>, b: &RatFuncElem<F>) -> RatFuncElem<F> {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &RatFuncElem<F>) -> RatFuncElem<F> {
        RatFuncElem { num: -&a.num, den: a.den.clone() }
    }

    fn mul(&self, a: &RatFuncElem<F>, b: &RatFuncElem<F>) -> RatFuncElem<F> {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        self.fraction(&a.num * &b.num, &a.den * &b.den).unwrap()
    }

    fn inv(&self, a: &RatFuncElem<F>) -> Option<RatFuncElem<F>> {
        if a.num.is_zero() {
            return None;
        }
        self.fraction(a.den.clone(), a.num.clone())
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn format(&self, a: &RatFuncElem<F>) -> String {
        let n = a.num.format_with(&self.var);
        if a.den.is_constant() {
            n
        } else {
            format!("({n})/({})", a.den.format_with(&self.var))
        }
    }
}

impl<F: SqrtField> SqrtField for RatFunc<F> {
    /// Square root with numerator leading coefficient the base field's
    /// chosen root and monic denominator.
    fn sqrt(&self, a: &RatFuncElem<F>) -> Option<RatFuncElem<F>> {
        let n = a.num.sqrt()?;
        let d = a.den.sqrt()?.monic();
        Some(RatFuncElem { num: n, den: d })
    }
}
