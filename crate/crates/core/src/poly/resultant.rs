use crate::error::{Error, Result};
use crate::field::Field;

use super::UniPoly;

/// `Res(f, g) = lc(f)^deg(g) * prod g(a)` over the roots `a` of `f`, via the
/// subresultant polynomial remainder sequence.
pub fn resultant<F: Field>(f: &UniPoly<F>, g: &UniPoly<F>) -> Result<F::Elem> {
    let k = f.field();
    let Some(df) = f.degree() else {
        return Err(Error::InvalidInput("resultant of the zero polynomial".into()));
    };
    let Some(dg) = g.degree() else {
        return Ok(if df == 0 { k.one() } else { k.zero() });
    };
    if df == 0 {
        return Ok(k.pow(&f.lc(), dg as u64));
    }
    if dg == 0 {
        return Ok(k.pow(&g.lc(), df as u64));
    }
    let (mut a, mut b, mut s) = if df >= dg {
        (f.clone(), g.clone(), k.one())
    } else {
        let sign = if df % 2 == 1 && dg % 2 == 1 { k.from_i64(-1) } else { k.one() };
        (g.clone(), f.clone(), sign)
    };
    let mut gg = k.one();
    let mut h = k.one();
    loop {
        let da = a.deg0();
        let db = b.deg0();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = k.neg(&s);
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        let denom = k.mul(&gg, &k.pow(&h, delta as u64));
        b = r.scale(&k.inv(&denom).expect("nonzero subresultant scale"));
        gg = a.lc();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            let num = k.pow(&gg, delta as u64);
            k.div(&num, &k.pow(&h, (delta - 1) as u64)).unwrap()
        };
        match b.degree() {
            None => return Ok(k.zero()),
            Some(0) => {
                let da = a.deg0() as u64;
                let hh = if da == 0 {
                    k.one()
                } else {
                    let num = k.pow(&b.lc(), da);
                    k.div(&num, &k.pow(&h, da - 1)).unwrap()
                };
                return Ok(k.mul(&s, &hh));
            }
            Some(_) => {}
        }
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_rem<F: Field>(a: &UniPoly<F>, b: &UniPoly<F>) -> UniPoly<F> {
    let k = a.field();
    let e = (a.deg0() + 1 - b.deg0()) as u64;
    a.scale(&k.pow(&b.lc(), e)).rem(b)
}

/// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`, with `f'` taken at formal degree
/// `n - 1` so that the formula stays valid in positive characteristic.
pub fn discriminant<F: Field>(f: &UniPoly<F>) -> Result<F::Elem> {
    let k = f.field();
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::InvalidInput("discriminant of a constant".into())),
    };
    if n == 1 {
        return Ok(k.one());
    }
    let d = f.derivative();
    let Some(dd) = d.degree() else {
        return Ok(k.zero());
    };
    let mut r = resultant(f, &d)?;
    r = k.mul(&r, &k.pow(&f.lc(), (n - 1 - dd) as u64));
    if (n * (n - 1) / 2) % 2 == 1 {
        r = k.neg(&r);
    }
    Ok(k.div(&r, &f.lc()).unwrap())
}

/// Determinant of a square matrix over `K[x]` by fraction-free Bareiss
/// elimination.
pub fn det_poly_matrix<F: Field>(field: &F, mut m: Vec<Vec<UniPoly<F>>>) -> UniPoly<F> {
    let n = m.len();
    if n == 0 {
        return UniPoly::one(field.clone());
    }
    let mut negate = false;
    let mut prev = UniPoly::one(field.clone());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return UniPoly::zero(field.clone());
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = UniPoly::zero(field.clone());
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Sylvester resultant of two polynomials in `y` whose coefficients lie in
/// `K[x]`; `f[i]` is the coefficient of `y^i`.
pub fn resultant_over_poly_ring<F: Field>(
    field: &F,
    f: &[UniPoly<F>],
    g: &[UniPoly<F>],
) -> UniPoly<F> {
    let trim = |p: &[UniPoly<F>]| {
        let mut v = p.to_vec();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let f = trim(f);
    let g = trim(g);
    if f.is_empty() || g.is_empty() {
        return UniPoly::zero(field.clone());
    }
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return UniPoly::one(field.clone());
    }
    let zero = UniPoly::zero(field.clone());
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    det_poly_matrix(field, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(c: &[i64]) -> UniPoly<Rationals> {
        UniPoly::from_i64s(Rationals, c)
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// Sylvester determinant computed with constant polynomial entries.
    fn sylvester_oracle(f: &UniPoly<Rationals>, g: &UniPoly<Rationals>) -> BigRational {
        let lift = |p: &UniPoly<Rationals>| {
            p.coeffs().iter().map(|c| UniPoly::constant(Rationals, c.clone())).collect::<Vec<_>>()
        };
        let d = resultant_over_poly_ring(&Rationals, &lift(f), &lift(g));
        d.coeff(0)
    }

    #[test]
    fn linear_and_common_factor() {
        assert_eq!(resultant(&q(&[-2, 1]), &q(&[-3, 1])).unwrap(), int(-1));
        assert_eq!(resultant(&q(&[-2, 0, 1]), &q(&[-2, 0, 1])).unwrap(), int(0));
        assert_eq!(resultant(&q(&[-2, 0, 1]), &q(&[-3, 0, 1])).unwrap(), int(1));
    }

    #[test]
    fn zero_input_rejected() {
        assert!(resultant(&q(&[]), &q(&[1, 1])).is_err());
    }

    #[test]
    fn matches_sylvester_determinant() {
        let cases = [
            (q(&[1, 2, 3, 4]), q(&[-5, 0, 7])),
            (q(&[3, 0, 0, 0, 0, 2]), q(&[1, 1])),
            (q(&[2, -1, 0, 1]), q(&[0, 4, 1, 0, 3])),
        ];
        for (f, g) in cases {
            assert_eq!(resultant(&f, &g).unwrap(), sylvester_oracle(&f, &g));
        }
    }

    #[test]
    fn discriminant_small_cases() {
        // b^2 - 4c with b = 3, c = -7
        assert_eq!(discriminant(&q(&[-7, 3, 1])).unwrap(), int(37));
        assert_eq!(discriminant(&q(&[-1, 0, 1])).unwrap(), int(4));
        // T^3 - 2: -27 * 4
        assert_eq!(discriminant(&q(&[-2, 0, 0, 1])).unwrap(), int(-108));
        assert!(discriminant(&q(&[5])).is_err());
    }

    #[test]
    fn discriminant_in_small_characteristic() {
        let k = PrimeField::new(3).unwrap();
        // T^3 - T - 1 over F_3 has derivative of degree 0.
        let f = UniPoly::from_i64s(k, &[-1, -1, 0, 1]);
        // Over Z the discriminant is -4(-1)^3 - 27 = -23, which is 1 mod 3.
        assert_eq!(discriminant(&f).unwrap(), 1);
        let g = UniPoly::from_i64s(k, &[0, 0, 0, 1]);
        assert_eq!(discriminant(&g).unwrap(), 0);
    }
}
