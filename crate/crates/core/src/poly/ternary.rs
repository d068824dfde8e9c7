use std::collections::BTreeMap;

use crate::field::Field;

use super::{BinaryForm, UniPoly};

pub type Monomial = [u32; 3];

/// Homogeneous polynomial in `T0, T1, T2` stored as a sparse monomial map.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryForm<F: Field> {
    field: F,
    degree: u32,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> TernaryForm<F> {
    pub fn zero(field: F, degree: u32) -> Self {
        TernaryForm { field, degree, terms: BTreeMap::new() }
    }

    /// Builds a form from `(exponents, coefficient)` pairs; repeated
    /// monomials are summed.
    pub fn from_terms(
        field: F,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Self {
        let mut f = Self::zero(field, degree);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    /// The coordinate `T_i`.
    pub fn var(field: F, i: usize) -> Self {
        let mut m = [0; 3];
        m[i] = 1;
        let one = field.one();
        Self::from_terms(field, 1, [(m, one)])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::from_terms(field, 0, [([0, 0, 0], c)])
    }

    pub fn linear(field: F, coeffs: &[F::Elem; 3]) -> Self {
        let terms = (0..3).map(|i| {
            let mut m = [0; 3];
            m[i] = 1;
            (m, coeffs[i].clone())
        });
        Self::from_terms(field, 1, terms.collect::<Vec<_>>())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, F::Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn add_term(&mut self, m: Monomial, c: F::Elem) {
        assert_eq!(m.iter().sum::<u32>(), self.degree, "monomial of wrong degree");
        let k = &self.field;
        if k.is_zero(&c) {
            return;
        }
        let v = match self.terms.remove(&m) {
            Some(old) => k.add(&old, &c),
            None => c,
        };
        if !k.is_zero(&v) {
            self.terms.insert(m, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let k = &self.field;
        let terms = self.terms.iter().map(|(m, c)| (*m, k.neg(c))).collect();
        TernaryForm { field: k.clone(), degree: self.degree, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let k = &self.field;
        Self::from_terms(
            k.clone(),
            self.degree,
            self.terms.iter().map(|(m, a)| (*m, k.mul(a, c))).collect::<Vec<_>>(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = &self.field;
        let mut out = Self::zero(k.clone(), self.degree + other.degree);
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]];
                out.add_term(m, k.mul(a, b));
            }
        }
        out
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.field.clone(), self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `dQ/dT_i`.
    pub fn partial(&self, i: usize) -> Self {
        let k = &self.field;
        let mut out = Self::zero(k.clone(), self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[i] -= 1;
            out.add_term(m2, k.scale_int(c, m[i] as i64));
        }
        out
    }

    pub fn eval(&self, p: &[F::Elem; 3]) -> F::Elem {
        let k = &self.field;
        let mut acc = k.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                t = k.mul(&t, &k.pow(&p[i], m[i] as u64));
            }
            acc = k.add(&acc, &t);
        }
        acc
    }

    /// `Q(L0, L1, L2)` for forms `L_i` of a common degree.
    pub fn substitute(&self, images: &[TernaryForm<F>; 3]) -> Self {
        let k = &self.field;
        let deg = self.degree * images[0].degree;
        let mut out = Self::zero(k.clone(), deg);
        let mut cache: Vec<Vec<TernaryForm<F>>> = images
            .iter()
            .map(|l| vec![Self::constant(k.clone(), k.one()), l.clone()])
            .collect();
        for (m, c) in &self.terms {
            let mut t = Self::constant(k.clone(), c.clone());
            for i in 0..3 {
                let e = m[i] as usize;
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap().mul(&images[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][e]);
            }
            out = out.add(&t);
        }
        if out.is_zero() {
            out.degree = deg;
        }
        out
    }

    /// Restriction to the line through `p` and `q`: the binary form
    /// `(u, v) -> Q(u p + v q)`.
    pub fn restrict(&self, p: &[F::Elem; 3], q: &[F::Elem; 3]) -> BinaryForm<F> {
        let k = &self.field;
        let lin: Vec<BinaryForm<F>> =
            (0..3).map(|i| BinaryForm::new(k.clone(), vec![p[i].clone(), q[i].clone()])).collect();
        let mut out = BinaryForm::zero(k.clone(), self.degree as usize);
        for (m, c) in &self.terms {
            let mut t = BinaryForm::new(k.clone(), vec![c.clone()]);
            for i in 0..3 {
                t = t.mul(&lin[i].pow(m[i]));
            }
            out = out.add(&t);
        }
        out
    }

    /// Dehomogenization setting `T_fixed = 1`: coefficient list in the
    /// variable `T_y`, each coefficient a polynomial in `T_x`.
    pub fn dehomogenize(&self, fixed: usize, x: usize, y: usize) -> Vec<UniPoly<F>> {
        assert!(fixed != x && x != y && fixed != y && fixed < 3 && x < 3 && y < 3);
        let k = &self.field;
        let mut rows: Vec<Vec<F::Elem>> = vec![Vec::new(); self.degree as usize + 1];
        for (m, c) in &self.terms {
            let row = &mut rows[m[y] as usize];
            let xi = m[x] as usize;
            if row.len() <= xi {
                row.resize(xi + 1, k.zero());
            }
            row[xi] = k.add(&row[xi], c);
        }
        rows.into_iter().map(|r| UniPoly::new(k.clone(), r)).collect()
    }

    pub fn map<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> TernaryForm<G> {
        TernaryForm::from_terms(
            target.clone(),
            self.degree,
            self.terms.iter().map(|(m, c)| (*m, f(c))).collect::<Vec<_>>(),
        )
    }

    /// Division with remainder in lex order `T0 > T1 > T2`. The remainder has
    /// no monomial divisible by the leading monomial of `d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let k = &self.field;
        let (lm, lc) = d.terms.iter().next_back().expect("division by zero form");
        let lc_inv = k.inv(lc).expect("field element");
        let qdeg = self.degree.saturating_sub(d.degree);
        let mut q = Self::zero(k.clone(), qdeg);
        let mut r = Self::zero(k.clone(), self.degree);
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if (0..3).all(|i| m[i] >= lm[i]) {
                let qm = [m[0] - lm[0], m[1] - lm[1], m[2] - lm[2]];
                let qc = k.mul(&c, &lc_inv);
                let t = Self::from_terms(k.clone(), qdeg, [(qm, qc)]);
                p = p.sub(&t.mul(d));
                q = q.add(&t);
            } else {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
        (q, r)
    }

    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let k = &self.field;
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = (0..3)
                .filter(|&i| m[i] > 0)
                .map(|i| if m[i] == 1 { format!("T{i}") } else { format!("T{i}^{}", m[i]) })
                .collect();
            let cs = k.format(c);
            let cs = if cs.contains(['+', ' ']) || cs[1..].contains('-') {
                format!("({cs})")
            } else {
                cs
            };
            parts.push(if mono.is_empty() {
                cs
            } else if k.is_one(c) {
                mono.join("*")
            } else {
                format!("{cs}*{}", mono.join("*"))
            });
        }
        parts.join(" + ")
    }
}

/// A line `a0 T0 + a1 T1 + a2 T2 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<F: Field> {
    field: F,
    coeffs: [F::Elem; 3],
}

impl<F: Field> LinearForm<F> {
    pub fn new(field: F, coeffs: [F::Elem; 3]) -> Self {
        LinearForm { field, coeffs }
    }

    pub fn coeffs(&self) -> &[F::Elem; 3] {
        &self.coeffs
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    /// Scaled so that the first nonzero coefficient is one.
    pub fn normalized(&self) -> Self {
        let k = &self.field;
        match self.coeffs.iter().find(|c| !k.is_zero(c)) {
            None => self.clone(),
            Some(c) => {
                let inv = k.inv(c).expect("nonzero coefficient must be invertible");
                LinearForm {
                    field: k.clone(),
                    coeffs: [0, 1, 2].map(|i| k.mul(&self.coeffs[i], &inv)),
                }
            }
        }
    }

    pub fn is_proportional(&self, other: &Self) -> bool {
        let k = &self.field;
        (0..3).all(|i| {
            (0..3).all(|j| {
                k.mul(&self.coeffs[i], &other.coeffs[j]) == k.mul(&self.coeffs[j], &other.coeffs[i])
            })
        })
    }

    pub fn to_form(&self) -> TernaryForm<F> {
        TernaryForm::linear(self.field.clone(), &self.coeffs)
    }

    /// Two distinct points spanning the line.
    pub fn points(&self) -> ([F::Elem; 3], [F::Elem; 3]) {
        let k = &self.field;
        let [a0, a1, a2] = &self.coeffs;
        let (z, o) = (k.zero(), k.one());
        if !k.is_zero(a2) {
            let i = k.inv(a2).unwrap();
            (
                [o.clone(), z.clone(), k.neg(&k.mul(a0, &i))],
                [z, o, k.neg(&k.mul(a1, &i))],
            )
        } else if !k.is_zero(a1) {
            let i = k.inv(a1).unwrap();
            ([o.clone(), k.neg(&k.mul(a0, &i)), z.clone()], [z.clone(), z, o])
        } else {
            ([z.clone(), o.clone(), z.clone()], [z.clone(), z, o])
        }
    }

    pub fn format(&self) -> String {
        self.to_form().format()
    }
}
