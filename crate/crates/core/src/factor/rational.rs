use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{Field, PrimeField, Rationals};
use crate::poly::UniPoly;

use super::finite::{factor_squarefree_mod_p, small_primes};

type ZPoly = Vec<BigInt>;

/// Factorization over Q into monic irreducibles with multiplicities.
///
/// The product of `factor^multiplicity` times `lc(f)` is `f`. Factors are
/// sorted by degree and then coefficient list.
pub fn factor_over_q(f: &UniPoly<Rationals>) -> Vec<(UniPoly<Rationals>, usize)> {
    if f.is_constant() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic()) {
        for g in factor_squarefree(&part) {
            out.push((g, mult));
        }
    }
    out.sort_by(|(a, _), (b, _)| a.deg0().cmp(&b.deg0()).then_with(|| a.coeffs().cmp(b.coeffs())));
    out
}

/// Whether a rational polynomial of positive degree is irreducible.
pub fn is_irreducible_over_q(f: &UniPoly<Rationals>) -> bool {
    let fac = factor_over_q(f);
    fac.len() == 1 && fac[0].1 == 1
}

/// Yun's algorithm for a monic polynomial over a field of characteristic
/// zero: squarefree coprime parts paired with their multiplicity.
pub fn squarefree_decomposition(f: &UniPoly<Rationals>) -> Vec<(UniPoly<Rationals>, usize)> {
    let mut out = Vec::new();
    let d = f.derivative();
    let a0 = f.gcd(&d);
    let mut b = f.exact_div(&a0).unwrap();
    let c = d.exact_div(&a0).unwrap();
    let mut dd = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&dd);
        let nb = b.exact_div(&a).unwrap();
        let nc = dd.exact_div(&a).unwrap();
        dd = &nc - &nb.derivative();
        b = nb;
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn factor_squarefree(f: &UniPoly<Rationals>) -> Vec<UniPoly<Rationals>> {
    if f.deg0() <= 1 {
        return vec![f.monic()];
    }
    let p_int = primitive_integer(f);
    factor_primitive_squarefree(&p_int)
        .into_iter()
        .map(|g| z_to_q(&g).monic())
        .collect()
}

/// Zassenhaus: modular factorization, Hensel lifting, subset recombination.
fn factor_primitive_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    let lc = f[n].clone();
    let Some((p, modular)) = choose_prime(f) else {
        return vec![f.clone()];
    };
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let l1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * l1;
    let (lifted, modulus) = multifactor_lift(f, &modular, p, &bound);
    recombine(f, lifted, &modulus)
}

fn choose_prime(f: &ZPoly) -> Option<(u64, Vec<UniPoly<PrimeField>>)> {
    let lc = f.last().unwrap();
    let mut best: Option<(u64, Vec<UniPoly<PrimeField>>)> = None;
    let mut tried = 0;
    for p in small_primes(2000) {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let k = PrimeField::new(p).unwrap();
        let fp = z_to_fp(f, k);
        if !fp.is_squarefree() {
            continue;
        }
        let fac = factor_squarefree_mod_p(&fp.monic(), p);
        let better = best.as_ref().is_none_or(|(_, b)| fac.len() < b.len());
        if better {
            best = Some((p, fac));
        }
        tried += 1;
        if tried >= 6 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best
}

/// Lifts `f = lc * prod(h_i) mod p` to a modulus exceeding `bound`.
fn multifactor_lift(
    f: &ZPoly,
    modular: &[UniPoly<PrimeField>],
    p: u64,
    bound: &BigInt,
) -> (Vec<ZPoly>, BigInt) {
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while &modulus <= bound {
        modulus = &modulus * &modulus;
    }
    let k = PrimeField::new(p).unwrap();
    let mut current = f.clone();
    let mut lifted = Vec::with_capacity(modular.len());
    for i in 0..modular.len() - 1 {
        let h = &modular[i];
        let lc_mod = k.from_bigint(current.last().unwrap());
        let g = modular[i + 1..]
            .iter()
            .fold(UniPoly::constant(k, lc_mod), |acc, x| &acc * x);
        let (_, s, t) = g.ext_gcd(h);
        let mut gz = fp_to_z(&g);
        let mut hz = fp_to_z(h);
        let mut sz = fp_to_z(&s);
        let mut tz = fp_to_z(&t);
        let mut m = pb.clone();
        while m < modulus {
            let (g2, h2, s2, t2) = hensel_step(&current, &gz, &hz, &sz, &tz, &m);
            gz = g2;
            hz = h2;
            sz = s2;
            tz = t2;
            m = &m * &m;
        }
        lifted.push(sym_mod(&hz, &modulus));
        current = sym_mod(&gz, &modulus);
    }
    let lc_inv = mod_inverse(current.last().unwrap(), &modulus);
    lifted.push(sym_mod(&zscale(&current, &lc_inv), &modulus));
    (lifted, modulus)
}

/// One quadratic Hensel step: from `f = g h`, `s g + t h = 1` modulo `m` to
/// the same relations modulo `m^2`, with `h` monic.
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let mm = m * m;
    let e = nn_mod(&zsub(f, &zmul(g, h)), &mm);
    let (q, r) = divrem_monic(&zmul(s, &e), h, &mm);
    let g2 = nn_mod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &mm);
    let h2 = nn_mod(&zadd(h, &r), &mm);
    let b = nn_mod(&zsub(&zadd(&zmul(s, &g2), &zmul(t, &h2)), &[BigInt::one()]), &mm);
    let (c, d) = divrem_monic(&zmul(s, &b), &h2, &mm);
    let s2 = nn_mod(&zsub(s, &d), &mm);
    let t2 = nn_mod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g2)), &mm);
    (g2, h2, s2, t2)
}

fn recombine(f: &ZPoly, mut factors: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= factors.len() {
        for subset in combinations(factors.len(), size) {
            let lc = f.last().unwrap().clone();
            let cand = subset
                .iter()
                .fold(vec![lc], |acc, &i| sym_mod(&zmul(&acc, &factors[i]), modulus));
            let cand = primitive_part(&cand);
            if let Some(q) = exact_divide(&f, &cand) {
                f = q;
                out.push(cand);
                for &i in subset.iter().rev() {
                    factors.remove(i);
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    if f.len() > 1 {
        out.push(primitive_part(&f));
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn exact_divide(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    let q = z_to_q(f).exact_div(&z_to_q(g))?;
    q.coeffs()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

/// Scales a rational polynomial to a primitive integer polynomial with
/// positive leading coefficient.
fn primitive_integer(f: &UniPoly<Rationals>) -> ZPoly {
    let den = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let z: ZPoly = f.coeffs().iter().map(|c| (c * BigRational::from(den.clone())).to_integer()).collect();
    primitive_part(&z)
}

fn primitive_part(f: &ZPoly) -> ZPoly {
    let content = f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return f.clone();
    }
    let sign = if f.last().is_some_and(|c| c.is_negative()) { -content } else { content };
    f.iter().map(|c| c / &sign).collect()
}

fn z_to_q(f: &ZPoly) -> UniPoly<Rationals> {
    UniPoly::new(Rationals, f.iter().map(|c| BigRational::from(c.clone())).collect())
}

fn z_to_fp(f: &ZPoly, k: PrimeField) -> UniPoly<PrimeField> {
    UniPoly::new(k, f.iter().map(|c| k.from_bigint(c)).collect())
}

fn fp_to_z(f: &UniPoly<PrimeField>) -> ZPoly {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn zscale(a: &[BigInt], c: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x * c).collect())
}

/// Coefficients reduced into `[0, m)`.
fn nn_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x.mod_floor(m)).collect())
}

/// Coefficients reduced into `(-m/2, m/2]`.
fn sym_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    trim(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a monic polynomial with coefficients taken modulo `m`.
fn divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let mut r = nn_mod(a, m);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i + j] = (&r[i + j] - &c * bc).mod_floor(m);
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient must be a unit");
    e.x.mod_floor(m)
}
