use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::poly::UniPoly;

/// Image of a rational polynomial in `F_p[T]`; `None` when a coefficient
/// denominator is divisible by `p`.
pub fn reduce_mod_p(f: &UniPoly<Rationals>, k: PrimeField) -> Option<UniPoly<PrimeField>> {
    f.try_map(&k, |c: &BigRational| k.from_rational(c))
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(d, g)` where `g` is the product of all irreducible factors of degree `d`.
pub fn ddf(f: &UniPoly<PrimeField>) -> Vec<(usize, UniPoly<PrimeField>)> {
    let k = *f.field();
    let p = BigUint::from(k.modulus());
    let x = UniPoly::x(k);
    let mut rest = f.monic();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 0;
    while rest.deg0() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&p, &rest);
        let g = rest.gcd(&(&h - &x));
        if !g.is_constant() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((d, g));
        }
    }
    if !rest.is_constant() {
        out.push((rest.deg0(), rest));
    }
    out
}

/// Splits a product of distinct monic irreducibles of common degree `d`
/// (Cantor-Zassenhaus, odd characteristic).
pub fn edf(g: &UniPoly<PrimeField>, d: usize, rng: &mut ChaCha8Rng) -> Vec<UniPoly<PrimeField>> {
    let k = *g.field();
    let n = g.deg0();
    if n == d {
        return vec![g.monic()];
    }
    let p = BigUint::from(k.modulus());
    let e = (p.pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..k.modulus())).collect();
        let a = UniPoly::new(k, coeffs);
        if a.is_constant() {
            continue;
        }
        let b = &a.pow_mod(&e, g) - &UniPoly::one(k);
        let h = g.gcd(&b);
        if !h.is_constant() && h.deg0() < n {
            let other = g.exact_div(&h).expect("gcd divides");
            let mut out = edf(&h, d, rng);
            out.extend(edf(&other, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial over `F_p`, sorted.
pub fn factor_squarefree_mod_p(f: &UniPoly<PrimeField>, seed: u64) -> Vec<UniPoly<PrimeField>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (d, g) in ddf(f) {
        out.extend(edf(&g, d, &mut rng));
    }
    out.sort_by(|a, b| a.deg0().cmp(&b.deg0()).then_with(|| a.coeffs().cmp(b.coeffs())));
    out
}

/// Multiset of irreducible factor degrees of `f` modulo `p`, sorted
/// ascending. Errors with `BadPrime` if `p` divides the leading coefficient
/// or a denominator, or if `f` is not squarefree modulo `p`.
pub fn ddf_cycle_type(f: &UniPoly<Rationals>, p: u64) -> Result<Vec<usize>> {
    let k = PrimeField::new(p).map_err(|_| Error::BadPrime(p))?;
    let fp = reduce_mod_p(f, k).ok_or(Error::BadPrime(p))?;
    if fp.degree() != f.degree() || fp.is_zero() {
        return Err(Error::BadPrime(p));
    }
    if fp.deg0() == 0 {
        return Ok(Vec::new());
    }
    if !fp.is_squarefree() {
        return Err(Error::BadPrime(p));
    }
    let mut out = Vec::new();
    for (d, g) in ddf(&fp.monic()) {
        out.extend(std::iter::repeat(d).take(g.deg0() / d));
    }
    out.sort_unstable();
    Ok(out)
}

pub(crate) fn small_primes(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (3..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}
