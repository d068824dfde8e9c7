//! The twelve lines in the degenerate fibres of the conic bundle, and
//! certificates that they are bitangents of the quartic.

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::construct::{quartic, smoothness, ConicBundleModel, SexticInput, Sign};
use crate::error::{Error, Result};
use crate::factor::{factor_over_q, is_irreducible_over_q};
use crate::field::{AlgExt, Field, RationalVectorSpace, Rationals, SqrtField};
use crate::poly::{binary_square_root, BinaryForm, LinearForm, TernaryForm, UniPoly};

/// `Q[x]/(m)` for an irreducible factor `m` of the sextic.
pub type NumberField = AlgExt<Rationals>;
/// A quadratic (or trivial) extension `K[y]/(y^2 - d)` of a [`NumberField`].
pub type Tower = AlgExt<NumberField>;

/// `conic = scale * (first^2 - d * second^2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicSplitting<K: Field> {
    pub scale: K::Elem,
    pub d: K::Elem,
    pub first: LinearForm<K>,
    pub second: LinearForm<K>,
}

impl<K: Field> ConicSplitting<K> {
    pub fn expand(&self) -> TernaryForm<K> {
        let a = self.first.to_form().square();
        let b = self.second.to_form().square().scale(&self.d);
        a.sub(&b).scale(&self.scale)
    }
}

fn symmetric_matrix<K: Field>(conic: &TernaryForm<K>) -> [[K::Elem; 3]; 3] {
    let k = conic.field();
    let half = k.inv(&k.from_i64(2)).expect("characteristic is not 2");
    [0, 1, 2].map(|i| {
        [0, 1, 2].map(|j| {
            let mut m = [0u32; 3];
            m[i] += 1;
            m[j] += 1;
            let c = conic.coeff(&m);
            if i == j {
                c
            } else {
                k.mul(&c, &half)
            }
        })
    })
}

/// Writes a rank-2 ternary quadratic as a scaled difference of squares by
/// completing the square on a nonzero diagonal entry.
pub fn split_conic<K: Field>(conic: &TernaryForm<K>) -> Result<ConicSplitting<K>> {
    let k = conic.field().clone();
    let not_rank_two = || Error::InvalidInput("conic does not have rank 2".into());
    if conic.degree() != 2 {
        return Err(Error::InvalidInput("expected a quadratic form".into()));
    }
    let b = symmetric_matrix(conic);
    let Some(i) = (0..3).find(|&i| !k.is_zero(&b[i][i])) else {
        return Err(Error::InvalidInput("conic has zero diagonal".into()));
    };
    let pivot = b[i][i].clone();
    let pinv = k.inv(&pivot).unwrap();
    let mut first = [k.zero(), k.zero(), k.zero()];
    for j in 0..3 {
        first[j] = k.mul(&b[i][j], &pinv);
    }
    let first = LinearForm::new(k.clone(), first);
    let rest = conic.sub(&first.to_form().square().scale(&pivot));
    let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
    let (j, l) = (others[0], others[1]);
    let mono = |a: usize, b: usize| {
        let mut m = [0u32; 3];
        m[a] += 1;
        m[b] += 1;
        rest.coeff(&m)
    };
    let (alpha, beta, gamma) = (mono(j, j), mono(j, l), mono(l, l));
    let mut second = [k.zero(), k.zero(), k.zero()];
    let c = if !k.is_zero(&alpha) {
        let disc = k.sub(&k.square(&beta), &k.scale_int(&k.mul(&alpha, &gamma), 4));
        if !k.is_zero(&disc) {
            return Err(not_rank_two());
        }
        second[j] = k.one();
        second[l] = k.div(&beta, &k.scale_int(&alpha, 2)).unwrap();
        alpha
    } else if !k.is_zero(&gamma) {
        if !k.is_zero(&beta) {
            return Err(not_rank_two());
        }
        second[l] = k.one();
        gamma
    } else {
        return Err(not_rank_two());
    };
    let d = k.neg(&k.mul(&c, &pinv));
    Ok(ConicSplitting { scale: pivot, d, first, second: LinearForm::new(k, second) })
}

fn rank3<K: Field>(k: &K, m: &[[K::Elem; 3]; 3]) -> usize {
    let mut rows: Vec<Vec<K::Elem>> = m.iter().map(|r| r.to_vec()).collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(p) = (rank..rows.len()).find(|&r| !k.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = k.inv(&rows[rank][col]).expect("field element");
        for r in 0..rows.len() {
            if r != rank && !k.is_zero(&rows[r][col]) {
                let f = k.mul(&rows[r][col], &inv);
                for c in 0..3 {
                    let v = k.sub(&rows[r][c], &k.mul(&f, &rows[rank][c]));
                    rows[r][c] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn cross<K: Field>(k: &K, a: &[K::Elem; 3], b: &[K::Elem; 3]) -> [K::Elem; 3] {
    let c = |i: usize, j: usize| k.sub(&k.mul(&a[i], &b[j]), &k.mul(&a[j], &b[i]));
    [c(1, 2), c(2, 0), c(0, 1)]
}

fn embed_form(k: &NumberField, f: &TernaryForm<Rationals>) -> TernaryForm<NumberField> {
    f.map(k, |c| k.embed(c))
}

fn lift_form(l: &Tower, f: &TernaryForm<NumberField>) -> TernaryForm<Tower> {
    f.map(l, |c| l.embed(c))
}

fn lift_linear(l: &Tower, f: &LinearForm<NumberField>) -> LinearForm<Tower> {
    LinearForm::new(l.clone(), f.coeffs().clone().map(|c| l.embed(&c)))
}

/// The degenerate fibre over the roots of an irreducible factor `m` of the
/// sextic, split into two lines.
#[derive(Clone, Debug)]
pub struct SplitFibre {
    pub factor: UniPoly<Rationals>,
    pub field: NumberField,
    /// The fibre conic at `(1 : t0)`, where `t0` is the class of `x`.
    pub conic: TernaryForm<NumberField>,
    /// The singular point of the fibre conic.
    pub vertex: [UniPoly<Rationals>; 3],
    pub splitting: ConicSplitting<NumberField>,
    /// A square root of `d` in the number field, when one exists.
    pub d_root: Option<UniPoly<Rationals>>,
    pub tower: Tower,
    pub lines: [LinearForm<Tower>; 2],
}

impl SplitFibre {
    pub fn t0(&self) -> UniPoly<Rationals> {
        self.field.generator()
    }

    pub fn d(&self) -> &UniPoly<Rationals> {
        &self.splitting.d
    }

    /// Degree of the tower over Q.
    pub fn tower_degree(&self) -> usize {
        self.tower.dimension()
    }

    /// `lines[0] * lines[1] * scale == conic` in the tower.
    pub fn verify_product(&self) -> bool {
        let l = &self.tower;
        let prod = self.lines[0].to_form().mul(&self.lines[1].to_form());
        let scaled = prod.scale(&l.embed(&self.splitting.scale));
        scaled == lift_form(l, &self.conic) && !self.lines[0].is_proportional(&self.lines[1])
    }

    /// Whether `d * t0` is a square in the number field.
    pub fn d_matches_t0(&self) -> bool {
        let k = &self.field;
        k.is_square(&k.mul(self.d(), &self.t0()))
    }
}

/// Splits the fibre of the bundle over the roots of `m`.
pub fn split_fibre(model: &ConicBundleModel<Rationals>, m: &UniPoly<Rationals>) -> Result<SplitFibre> {
    if m.is_constant() || !m.is_monic() {
        return Err(Error::InvalidInput("factor must be monic of positive degree".into()));
    }
    let det = model.matrix.det_dehomogenized();
    if !det.rem(m).is_zero() {
        return Err(Error::InvalidInput(format!("{} does not divide F", m.format_with("T"))));
    }
    if !is_irreducible_over_q(m) {
        return Err(Error::InvalidInput(format!("{} is reducible", m.format_with("T"))));
    }
    let k = AlgExt::new(m.clone(), "x");
    let t0 = k.generator();
    let entries = [0, 1, 2].map(|i| {
        [0, 1, 2].map(|j| {
            let p = model.matrix.entry(i, j).dehomogenize();
            p.coeffs().iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, &t0), &k.embed(c)))
        })
    });
    let rank = rank3(&k, &entries);
    if rank != 2 {
        return Err(Error::InternalError(format!("fibre matrix has rank {rank}")));
    }
    let vertex = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(a, b)| cross(&k, &entries[a], &entries[b]))
        .find(|v| v.iter().any(|c| !c.is_zero()))
        .expect("rank two");
    let mut conic = TernaryForm::zero(k.clone(), 2);
    for i in 0..3 {
        for j in 0..3 {
            let mut mono = [0u32; 3];
            mono[i] += 1;
            mono[j] += 1;
            conic = conic.add(&TernaryForm::from_terms(k.clone(), 2, [(mono, entries[i][j].clone())]));
        }
    }
    let splitting = split_conic(&conic).map_err(|e| Error::InternalError(e.to_string()))?;
    let d_root = k.sqrt(&splitting.d);
    let modulus = match &d_root {
        Some(r) => UniPoly::new(k.clone(), vec![k.neg(r), k.one()]),
        None => UniPoly::new(k.clone(), vec![k.neg(&splitting.d), k.zero(), k.one()]),
    };
    let tower = AlgExt::new(modulus, "y");
    let y = tower.generator();
    let first = lift_linear(&tower, &splitting.first);
    let second = lift_linear(&tower, &splitting.second);
    let lines = [Sign::Plus, Sign::Minus].map(|s| {
        let sy = if s == Sign::Plus { y.clone() } else { tower.neg(&y) };
        let coeffs = [0, 1, 2].map(|i| tower.add(&first.coeffs()[i], &tower.mul(&sy, &second.coeffs()[i])));
        LinearForm::new(tower.clone(), coeffs).normalized()
    });
    Ok(SplitFibre { factor: m.clone(), field: k, conic, vertex, splitting, d_root, tower, lines })
}

/// `Q` restricted to the line through `points` equals `scale * root^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct BitangencyCertificate<K: Field> {
    pub line: LinearForm<K>,
    pub points: [[K::Elem; 3]; 2],
    pub root: BinaryForm<K>,
    pub scale: K::Elem,
}

impl<K: Field> BitangencyCertificate<K> {
    pub fn verify(&self, q: &TernaryForm<K>) -> bool {
        let k = self.line.field();
        let on_line = self.points.iter().all(|p| {
            let c = self.line.coeffs();
            let v = (0..3).fold(k.zero(), |acc, i| k.add(&acc, &k.mul(&c[i], &p[i])));
            k.is_zero(&v)
        });
        let independent = cross(k, &self.points[0], &self.points[1]).iter().any(|c| !k.is_zero(c));
        let restricted = q.restrict(&self.points[0], &self.points[1]);
        on_line && independent && restricted == self.root.pow(2).scale(&self.scale)
    }
}

/// A certificate when `line` is a bitangent of `q` (or a component of a
/// double line), `None` otherwise.
pub fn bitangency_certificate<K: Field>(
    q: &TernaryForm<K>,
    line: &LinearForm<K>,
) -> Option<BitangencyCertificate<K>> {
    if line.is_zero() {
        return None;
    }
    let (p0, p1) = line.points();
    let restricted = q.restrict(&p0, &p1);
    let (root, scale) = binary_square_root(&restricted)?;
    Some(BitangencyCertificate { line: line.clone(), points: [p0, p1], root, scale })
}

/// Degree over Q of the field generated by `elems`.
pub fn generated_degree<K: RationalVectorSpace>(k: &K, elems: &[K::Elem]) -> usize {
    let mut basis = Echelon::default();
    basis.insert(k.to_coords(&k.one()));
    let mut found = vec![k.one()];
    let mut next = 0;
    while next < found.len() {
        let b = found[next].clone();
        next += 1;
        for g in elems {
            let p = k.mul(&b, g);
            if basis.insert(k.to_coords(&p)) {
                found.push(p);
            }
        }
    }
    found.len()
}

#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<BigRational>) -> bool {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &f * b;
                }
            }
        }
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for a in v.iter_mut() {
            *a *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (a, b) in row.iter_mut().zip(&v) {
                    *a -= &f * b;
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// The two lines of one split fibre with their certificates.
#[derive(Clone, Debug)]
pub struct FibreLines {
    pub fibre: SplitFibre,
    pub certificates: [BitangencyCertificate<Tower>; 2],
    /// Degree over Q of the field generated by each normalized line.
    pub line_degrees: [usize; 2],
    /// Whether each line lies in no fibre conic other than its own.
    pub isolated: [bool; 2],
}

#[derive(Clone, Debug)]
pub struct HexadReport {
    pub quartic: TernaryForm<Rationals>,
    pub sign: Sign,
    pub fibres: Vec<FibreLines>,
}

impl HexadReport {
    /// Number of geometric lines, counting conjugates.
    pub fn line_count(&self) -> usize {
        self.fibres.iter().map(|f| 2 * f.fibre.factor.deg0()).sum()
    }

    pub fn all_verified(&self) -> bool {
        self.fibres.iter().all(|f| {
            let q = lift_form(&f.fibre.tower, &embed_form(&f.fibre.field, &self.quartic));
            f.fibre.verify_product() && f.certificates.iter().all(|c| c.verify(&q))
        })
    }

    /// The twelve lines are pairwise distinct: each generic line generates
    /// its whole tower (so its conjugates differ), the two lines of a fibre
    /// differ, and no line lies in a second fibre.
    pub fn lines_distinct(&self) -> bool {
        self.fibres.iter().all(|f| {
            let full = f.fibre.tower_degree();
            let conj_ok = f.line_degrees.iter().all(|&d| d == full);
            conj_ok && f.isolated.iter().all(|&b| b) && !f.fibre.lines[0].is_proportional(&f.fibre.lines[1])
        })
    }

    pub fn degrees_divide_bound(&self) -> bool {
        self.fibres.iter().all(|f| {
            let bound = 2 * f.fibre.factor.deg0();
            f.line_degrees.iter().all(|&d| bound % d == 0)
        })
    }
}

/// Whether the line lies in exactly one conic of the pencil
/// `s^2 Q0 + st Q1 + t^2 Q2` with `s != 0`.
fn lies_in_one_fibre(model: &ConicBundleModel<Rationals>, fibre: &SplitFibre, line: &LinearForm<Tower>) -> bool {
    let l = &fibre.tower;
    let (p0, p1) = line.points();
    let restricted: Vec<BinaryForm<Tower>> = [&model.q0, &model.q1, &model.q2]
        .iter()
        .map(|q| lift_form(l, &embed_form(&fibre.field, q)).restrict(&p0, &p1))
        .collect();
    let polys: Vec<UniPoly<Tower>> = (0..3)
        .map(|mono| UniPoly::new(l.clone(), restricted.iter().map(|r| r.coeffs()[mono].clone()).collect()))
        .collect();
    let g = polys[0].gcd(&polys[1]).gcd(&polys[2]);
    g.degree() == Some(1)
}

fn fibre_lines(
    model: &ConicBundleModel<Rationals>,
    q: &TernaryForm<Rationals>,
    m: &UniPoly<Rationals>,
) -> Result<FibreLines> {
    let fibre = split_fibre(model, m)?;
    let qt = lift_form(&fibre.tower, &embed_form(&fibre.field, q));
    let cert = |i: usize| {
        bitangency_certificate(&qt, &fibre.lines[i])
            .ok_or_else(|| Error::InternalError("fibre line is not a bitangent".into()))
    };
    let certificates = [cert(0)?, cert(1)?];
    let line_degrees = [0, 1].map(|i| {
        let c = fibre.lines[i].coeffs();
        generated_degree(&fibre.tower, c)
    });
    let isolated = [0, 1].map(|i| lies_in_one_fibre(model, &fibre, &fibre.lines[i]));
    Ok(FibreLines { fibre, certificates, line_degrees, isolated })
}

/// Constructs the quartic for `(F, sign * c)`, checks smoothness, and
/// splits every degenerate fibre.
pub fn hexad_report(input: &SexticInput<Rationals>, sign: Sign) -> Result<HexadReport> {
    let model = quartic(input, sign)?;
    if !smoothness(&model.q)? {
        return Err(Error::NotSmooth);
    }
    let factors = factor_over_q(input.f());
    let fibres = factors
        .par_iter()
        .map(|(m, _)| fibre_lines(&model.bundle, &model.q, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(HexadReport { quartic: model.q, sign, fibres })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize) -> TernaryForm<Rationals> {
        TernaryForm::var(Rationals, i)
    }

    #[test]
    fn difference_of_squares_conic() {
        let k = Rationals;
        let c = t(0).square().sub(&t(1).square().scale(&k.from_i64(2)));
        let s = split_conic(&c).unwrap();
        assert_eq!(s.d, k.from_i64(2));
        assert_eq!(s.expand(), c);
    }

    #[test]
    fn sum_of_squares_conic() {
        let k = Rationals;
        let c = t(0).square().add(&t(1).square());
        let s = split_conic(&c).unwrap();
        assert_eq!(s.d, k.from_i64(-1));
        assert_eq!(s.expand(), c);
    }

    #[test]
    fn rank_three_and_rank_one_rejected() {
        let smooth = t(0).square().add(&t(1).square()).add(&t(2).square());
        assert!(split_conic(&smooth).is_err());
        let double = t(0).add(&t(1)).square();
        assert!(split_conic(&double).is_err());
    }

    #[test]
    fn certificate_on_double_conic() {
        let c = t(0).square().add(&t(1).square()).add(&t(2).square());
        let q = c.square();
        let k = Rationals;
        let line = LinearForm::new(k, [k.zero(), k.zero(), k.one()]);
        let cert = bitangency_certificate(&q, &line).unwrap();
        assert!(cert.verify(&q));
        assert_eq!(cert.scale, k.one());
    }

    #[test]
    fn fermat_coordinate_line_is_not_bitangent() {
        let q = t(0).pow(4).add(&t(1).pow(4)).add(&t(2).pow(4));
        let k = Rationals;
        let line = LinearForm::new(k, [k.one(), k.zero(), k.zero()]);
        assert!(bitangency_certificate(&q, &line).is_none());
    }

    #[test]
    fn generated_degree_in_tower() {
        let k = AlgExt::new(UniPoly::from_i64s(Rationals, &[-2, 0, 1]), "x");
        let x = k.generator();
        let m = UniPoly::new(k.clone(), vec![k.from_i64(-3), k.zero(), k.one()]);
        let l = AlgExt::new(m, "y");
        let y = l.generator();
        assert_eq!(generated_degree(&l, &[l.one()]), 1);
        assert_eq!(generated_degree(&l, &[y.clone()]), 2);
        assert_eq!(generated_degree(&l, &[l.embed(&x)]), 2);
        assert_eq!(generated_degree(&l, &[l.add(&y, &l.embed(&x))]), 4);
        assert_eq!(generated_degree(&l, &[l.mul(&y, &l.embed(&x))]), 2);
    }

    #[test]
    fn non_factor_rejected() {
        let f = UniPoly::from_i64s(Rationals, &[25, 0, 0, 0, 0, 0, 1]);
        let input = SexticInput::new(f, Rationals.from_i64(5)).unwrap();
        let model = quartic(&input, Sign::Plus).unwrap();
        let m = UniPoly::from_i64s(Rationals, &[-2, 0, 1]);
        assert!(matches!(split_fibre(&model.bundle, &m), Err(Error::InvalidInput(_))));
    }
}
