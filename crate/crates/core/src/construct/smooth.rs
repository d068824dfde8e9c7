use crate::error::{Error, Result};
use crate::field::{AlgExt, Field, PrimeField, RatFunc, Rationals};
use crate::poly::{resultant_over_poly_ring, TernaryForm, UniPoly};

/// Fields over which the elimination-based smoothness test runs.
pub trait SmoothnessTest: Field {
    fn quartic_is_smooth(&self, q: &TernaryForm<Self>) -> bool;
}

/// Whether the quartic has no singular point over the algebraic closure.
pub fn smoothness<F: SmoothnessTest>(q: &TernaryForm<F>) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::InvalidInput("zero form".into()));
    }
    if q.field().characteristic() == 2 {
        return Err(Error::InvalidInput("characteristic 2".into()));
    }
    Ok(q.field().quartic_is_smooth(q))
}

/// Infinite fields with an enumeration of elements, used to find a point off
/// the partial derivatives.
trait Enumerable: Field {
    fn nth(&self, i: u64) -> Self::Elem;
}

impl Enumerable for Rationals {
    fn nth(&self, i: u64) -> Self::Elem {
        // 0, 1, -1, 2, -2, ...
        let n = i.div_ceil(2) as i64;
        self.from_i64(if i % 2 == 1 { n } else { -n })
    }
}

impl Enumerable for RatFunc<PrimeField> {
    fn nth(&self, i: u64) -> Self::Elem {
        let p = self.base().modulus();
        let mut digits = Vec::new();
        let mut v = i;
        while v > 0 {
            digits.push(v % p);
            v /= p;
        }
        self.from_poly(UniPoly::new(*self.base(), digits))
    }
}

impl SmoothnessTest for Rationals {
    fn quartic_is_smooth(&self, q: &TernaryForm<Self>) -> bool {
        partials_have_no_common_zero(q)
    }
}

impl SmoothnessTest for RatFunc<PrimeField> {
    fn quartic_is_smooth(&self, q: &TernaryForm<Self>) -> bool {
        partials_have_no_common_zero(q)
    }
}

impl SmoothnessTest for PrimeField {
    /// Runs over `F_p(t)`, which has the same algebraic closure up to the
    /// transcendental, so that generic coordinate changes are available.
    fn quartic_is_smooth(&self, q: &TernaryForm<Self>) -> bool {
        let big = RatFunc::new(*self, "t");
        let lifted = q.map(&big, |c| big.constant(*c));
        partials_have_no_common_zero(&lifted)
    }
}

fn partials_have_no_common_zero<F: Enumerable>(q: &TernaryForm<F>) -> bool {
    let k = q.field().clone();
    let partials: Vec<TernaryForm<F>> = (0..3).map(|i| q.partial(i)).collect();
    if partials.iter().any(|p| p.is_zero()) {
        // Fewer than three nonzero forms always share a projective zero.
        return false;
    }
    let Some(a) = find_nonvanishing_point(&partials) else {
        return false;
    };
    // T0 = T0' + a0 T2', T1 = T1' + a1 T2', T2 = T2'; each transformed
    // partial then has a nonzero T2'^3 coefficient.
    let t = |i| TernaryForm::var(k.clone(), i);
    let images = [
        t(0).add(&t(2).scale(&a[0])),
        t(1).add(&t(2).scale(&a[1])),
        t(2),
    ];
    let ps: Vec<TernaryForm<F>> = partials.iter().map(|p| p.substitute(&images)).collect();

    // The point (1:0:0).
    let e0 = [k.one(), k.zero(), k.zero()];
    if ps.iter().all(|p| k.is_zero(&p.eval(&e0))) {
        return false;
    }
    // Points (1:0:y) on the line T1' = 0.
    let on_line: Vec<UniPoly<F>> = ps
        .iter()
        .map(|p| {
            let rows = p.dehomogenize(0, 1, 2);
            UniPoly::new(k.clone(), rows.iter().map(|r| r.coeff(0)).collect())
        })
        .collect();
    let g_line = on_line[0].gcd(&on_line[1]).gcd(&on_line[2]);
    if !g_line.is_constant() {
        return false;
    }
    // The chart T1' = 1 with x = T0', y = T2'.
    let charts: Vec<Vec<UniPoly<F>>> = ps.iter().map(|p| p.dehomogenize(1, 0, 2)).collect();
    let r01 = resultant_over_poly_ring(&k, &charts[0], &charts[1]);
    let r02 = resultant_over_poly_ring(&k, &charts[0], &charts[2]);
    if r01.is_zero() || r02.is_zero() {
        return false;
    }
    let g = r01.gcd(&r02);
    if g.is_constant() {
        return true;
    }
    !has_common_root_above(&g, &charts)
}

fn find_nonvanishing_point<F: Enumerable>(forms: &[TernaryForm<F>]) -> Option<[F::Elem; 3]> {
    let k = forms[0].field();
    // A nonzero form of degree 9 cannot vanish on a 10 x 10 grid.
    for i in 0..10 {
        for j in 0..10 {
            let p = [k.nth(i), k.nth(j), k.one()];
            if forms.iter().all(|f| !k.is_zero(&f.eval(&p))) {
                return Some(p);
            }
        }
    }
    None
}

/// Whether the bivariate polynomials (coefficient lists in `y` over `K[x]`)
/// share a zero `(x0, y0)` with `g(x0) = 0`, by Euclid's algorithm in
/// `(K[x]/(g))[y]` with splitting of `g` at zero divisors.
fn has_common_root_above<F: Field>(g: &UniPoly<F>, polys: &[Vec<UniPoly<F>>]) -> bool {
    if g.is_constant() {
        return false;
    }
    let ring = AlgExt::new(g.monic(), "x");
    let reduced: Vec<UniPoly<AlgExt<F>>> = polys
        .iter()
        .map(|p| UniPoly::new(ring.clone(), p.iter().map(|c| ring.reduce(c)).collect()))
        .collect();
    match gcd_many(&reduced) {
        Ok(h) => h.is_zero() || !h.is_constant(),
        Err(c) => {
            let g1 = c.gcd(g);
            let mut g2 = g.exact_div(&g1).unwrap();
            loop {
                let common = g2.gcd(&g1);
                if common.is_constant() {
                    break;
                }
                g2 = g2.exact_div(&common).unwrap();
            }
            has_common_root_above(&g1, polys) || has_common_root_above(&g2, polys)
        }
    }
}

/// Monic gcd when every leading coefficient met is a unit; otherwise the
/// offending non-unit (as a polynomial in `x`).
fn gcd_many<F: Field>(
    polys: &[UniPoly<AlgExt<F>>],
) -> std::result::Result<UniPoly<AlgExt<F>>, UniPoly<F>> {
    let mut acc = polys[0].clone();
    for p in &polys[1..] {
        acc = gcd_pair(&acc, p)?;
    }
    Ok(acc)
}

fn gcd_pair<F: Field>(
    a: &UniPoly<AlgExt<F>>,
    b: &UniPoly<AlgExt<F>>,
) -> std::result::Result<UniPoly<AlgExt<F>>, UniPoly<F>> {
    let ring = a.field().clone();
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let Some((_, r)) = a.try_div_rem(&b) else {
            return Err(b.lc());
        };
        a = b;
        b = r;
    }
    if a.is_zero() {
        return Ok(a);
    }
    match ring.inv(&a.lc()) {
        Some(inv) => Ok(a.scale(&inv)),
        None => Err(a.lc()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize) -> TernaryForm<Rationals> {
        TernaryForm::var(Rationals, i)
    }

    #[test]
    fn fermat_is_smooth() {
        let f = t(0).pow(4).add(&t(1).pow(4)).add(&t(2).pow(4));
        assert!(smoothness(&f).unwrap());
    }

    #[test]
    fn double_conic_is_singular() {
        let c = t(0).square().add(&t(1).square()).add(&t(2).square());
        assert!(!smoothness(&c.square()).unwrap());
    }

    #[test]
    fn nodal_quartic_is_singular() {
        // T0^4 + T1^4 - T0^2 T2^2 + T1^2 T2^2 has a node at (0:0:1).
        let f = t(0)
            .pow(4)
            .add(&t(1).pow(4))
            .sub(&t(0).square().mul(&t(2).square()))
            .add(&t(1).square().mul(&t(2).square()));
        assert!(!smoothness(&f).unwrap());
    }

    #[test]
    fn singular_point_with_irrational_coordinates() {
        // Singular at (+-sqrt2 : 0 : 1).
        let k = Rationals;
        let base = t(0).square().sub(&t(2).square().scale(&k.from_i64(2)));
        let f = base.square().add(&t(1).pow(4)).add(&t(1).square().mul(&t(0).square()));
        assert!(!smoothness(&f).unwrap());
    }

    #[test]
    fn smooth_over_prime_field() {
        let k = PrimeField::new(5).unwrap();
        let v = |i| TernaryForm::var(k, i);
        let f = v(0).pow(4).add(&v(1).pow(4)).add(&v(2).pow(4));
        assert!(smoothness(&f).unwrap());
        let c = v(0).square().add(&v(1).square()).add(&v(2).square());
        assert!(!smoothness(&c.square()).unwrap());
    }

    #[test]
    fn zero_form_rejected() {
        assert!(smoothness(&TernaryForm::zero(Rationals, 4)).is_err());
    }
}
