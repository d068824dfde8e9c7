//! Picard lattices of blown-up planes and their exceptional classes.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::perm::Perm;

/// The class `d*l + sum m_i e_i` in `Z^{1,n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PicVector {
    pub d: i64,
    pub m: Vec<i64>,
}

impl PicVector {
    pub fn new(d: i64, m: Vec<i64>) -> Self {
        PicVector { d, m }
    }

    /// The hyperplane class `l`.
    pub fn line(rank: usize) -> Self {
        PicVector::new(1, vec![0; rank])
    }

    /// The exceptional class `e_i` (0-based).
    pub fn exceptional(rank: usize, i: usize) -> Self {
        let mut m = vec![0; rank];
        m[i] = 1;
        PicVector::new(0, m)
    }

    /// The canonical class `-3l + sum e_i`.
    pub fn canonical(rank: usize) -> Self {
        PicVector::new(-3, vec![1; rank])
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    pub fn dot(&self, other: &PicVector) -> i64 {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        self.d * other.d - self.m.iter().zip(&other.m).map(|(a, b)| a * b).sum::<i64>()
    }

    pub fn scale(&self, k: i64) -> PicVector {
        PicVector::new(k * self.d, self.m.iter().map(|x| k * x).collect())
    }

    /// Coordinates `(d, m_1, ..., m_n)`.
    pub fn coords(&self) -> Vec<i64> {
        std::iter::once(self.d).chain(self.m.iter().copied()).collect()
    }

    /// The reflection `x + (x.alpha) alpha` in a root `alpha` with `alpha^2 = -2`.
    pub fn reflect(&self, alpha: &PicVector) -> PicVector {
        self + &alpha.scale(self.dot(alpha))
    }

    pub fn is_exceptional(&self) -> bool {
        let k = PicVector::canonical(self.rank());
        self.dot(self) == -1 && self.dot(&k) == -1
    }
}

impl Add for &PicVector {
    type Output = PicVector;
    fn add(self, o: &PicVector) -> PicVector {
        PicVector::new(self.d + o.d, self.m.iter().zip(&o.m).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &PicVector {
    type Output = PicVector;
    fn sub(self, o: &PicVector) -> PicVector {
        self + &(-o)
    }
}

impl Neg for &PicVector {
    type Output = PicVector;
    fn neg(self) -> PicVector {
        self.scale(-1)
    }
}

impl fmt::Display for PicVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.d)?;
        for (i, x) in self.m.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { "" } else { "," }, x)?;
        }
        write!(f, ")")
    }
}

fn rank_for_degree(degree: u32) -> usize {
    assert!(degree == 2 || degree == 3, "degree must be 2 or 3");
    9 - degree as usize
}

/// All classes with `E^2 = -1` and `E.K = -1` on the blow-up of the plane in
/// `9 - degree` points, sorted.
pub fn exceptional_classes(degree: u32) -> Vec<PicVector> {
    let n = rank_for_degree(degree) as i64;
    // sum m_i = 1 - 3d and sum m_i^2 = d^2 + 1, so (1 - 3d)^2 <= n (d^2 + 1).
    let ds = (-10i64..=10).filter(|&d| (1 - 3 * d).pow(2) <= n * (d * d + 1));
    let mut out = Vec::new();
    for d in ds {
        let mut m = Vec::with_capacity(n as usize);
        search(d, n as usize, 1 - 3 * d, d * d + 1, &mut m, &mut out);
    }
    out.sort();
    out
}

fn search(d: i64, n: usize, sum: i64, squares: i64, m: &mut Vec<i64>, out: &mut Vec<PicVector>) {
    let left = n - m.len();
    if left == 0 {
        if sum == 0 && squares == 0 {
            out.push(PicVector::new(d, m.clone()));
        }
        return;
    }
    if sum * sum > left as i64 * squares {
        return;
    }
    let bound = (squares as f64).sqrt() as i64;
    for x in -bound..=bound {
        if x * x <= squares {
            m.push(x);
            search(d, n, sum - x, squares - x * x, m, out);
            m.pop();
        }
    }
}

/// The simple roots `e_i - e_{i+1}` and `l - e_1 - e_2 - e_3`.
pub fn simple_roots(rank: usize) -> Vec<PicVector> {
    let mut roots: Vec<PicVector> =
        (0..rank - 1).map(|i| &PicVector::exceptional(rank, i) - &PicVector::exceptional(rank, i + 1)).collect();
    let mut m = vec![0; rank];
    m[..3].fill(-1);
    roots.push(PicVector::new(1, m));
    roots
}

/// The permutation of `classes` induced by reflection in `alpha`.
pub fn reflection_perm(classes: &[PicVector], alpha: &PicVector) -> Perm {
    Perm::from_images(classes.iter().map(|c| index_of(classes, &c.reflect(alpha))).collect())
}

/// Position of `v` in a sorted class list.
pub fn index_of(classes: &[PicVector], v: &PicVector) -> usize {
    classes.binary_search(v).unwrap_or_else(|_| panic!("{v} is not in the class list"))
}

/// The Gram matrix of the intersection form.
pub fn gram(vs: &[PicVector]) -> Vec<Vec<i64>> {
    vs.iter().map(|a| vs.iter().map(|b| a.dot(b)).collect()).collect()
}
