//! Restricted root systems in exact rational Euclidean coordinates.
//!
//! Supported: A1..A7 (in R^{n+1}), B1..B7, C1..C7, D2..D7, BC1..BC7 (in R^n),
//! G2 (in R^3), F4 (in R^4), E6/E7/E8 (in R^8).  BC systems are first-class:
//! a root and its double may both be present.  Every constructed system is
//! validated: simple-root expansions are integral and one-signed, positive
//! counts match the classical tables, and the root set is stable under the
//! simple reflections (which generate the full Weyl group).

use crate::error::{Error, Result};
use crate::linalg::{self, dot, Vector};
use crate::Rat;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CartanFamily {
    A,
    B,
    C,
    D,
    BC,
    E,
    F,
    G,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CartanLabel {
    pub family: CartanFamily,
    pub rank: usize,
}

impl CartanLabel {
    pub fn new(family: CartanFamily, rank: usize) -> Self {
        CartanLabel { family, rank }
    }
}

impl fmt::Display for CartanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            CartanFamily::A => "A",
            CartanFamily::B => "B",
            CartanFamily::C => "C",
            CartanFamily::D => "D",
            CartanFamily::BC => "BC",
            CartanFamily::E => "E",
            CartanFamily::F => "F",
            CartanFamily::G => "G",
        };
        write!(f, "{}{}", fam, self.rank)
    }
}

impl FromStr for CartanLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (fam_str, rank_str) = s.split_at(s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len()));
        let family = match fam_str {
            "A" => CartanFamily::A,
            "B" => CartanFamily::B,
            "C" => CartanFamily::C,
            "D" => CartanFamily::D,
            "BC" => CartanFamily::BC,
            "E" => CartanFamily::E,
            "F" => CartanFamily::F,
            "G" => CartanFamily::G,
            _ => return Err(Error::UnsupportedLabel(s.to_string())),
        };
        let rank: usize = rank_str.parse().map_err(|_| Error::UnsupportedLabel(s.to_string()))?;
        let label = CartanLabel { family, rank };
        if !label.is_supported() {
            return Err(Error::UnsupportedLabel(s.to_string()));
        }
        Ok(label)
    }
}

impl CartanLabel {
    pub fn is_supported(&self) -> bool {
        match self.family {
            CartanFamily::A | CartanFamily::B | CartanFamily::C | CartanFamily::BC => {
                (1..=7).contains(&self.rank)
            }
            CartanFamily::D => (2..=7).contains(&self.rank),
            CartanFamily::E => (6..=8).contains(&self.rank),
            CartanFamily::F => self.rank == 4,
            CartanFamily::G => self.rank == 2,
        }
    }

    fn expected_positive_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            CartanFamily::A => n * (n + 1) / 2,
            CartanFamily::B | CartanFamily::C => n * n,
            CartanFamily::D => n * (n - 1),
            CartanFamily::BC => n * n + n,
            CartanFamily::G => 6,
            CartanFamily::F => 24,
            CartanFamily::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
        }
    }
}

/// A root, stored as its exact ambient coordinate vector.  The derived `Ord`
/// is lexicographic on coordinates; that order is the crate-wide canonical
/// order for roots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Root {
    coords: Vector,
}

impl Root {
    pub fn new(coords: Vector) -> Self {
        Root { coords }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn negate(&self) -> Root {
        Root::new(linalg::neg(&self.coords))
    }

    pub fn norm_sq(&self) -> Rat {
        dot(&self.coords, &self.coords)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// `2<v, beta> / <beta, beta>`, the Cartan pairing of a vector against a root.
pub fn pairing_raw(v: &[Rat], beta: &Root) -> Rat {
    let two = linalg::rat(2);
    two * dot(v, beta.coords()) / beta.norm_sq()
}

/// Reflection of `v` in the hyperplane orthogonal to `beta`.
pub fn reflect_raw(v: &[Rat], beta: &Root) -> Vector {
    let c = pairing_raw(v, beta);
    linalg::sub(v, &linalg::scale(beta.coords(), &c))
}

pub struct RestrictedRootSystem {
    label: CartanLabel,
    ambient_dim: usize,
    /// All roots, descending lexicographic.
    roots: Vec<Root>,
    /// Positive roots, descending lexicographic.
    positives: Vec<Root>,
    simples: Vec<Root>,
    /// Multiplicity per root, parallel to `roots`.
    mult: Vec<u32>,
    /// Expansion over simples per root, parallel to `roots`.
    expansions: Vec<Vector>,
    index: HashMap<Root, usize>,
    positive_flag: Vec<bool>,
    /// Inverse Gram matrix of the simples, for expanding arbitrary vectors.
    inv_gram: Vec<Vector>,
}

impl RestrictedRootSystem {
    /// Build the split system for `label`: every multiplicity is 1.
    pub fn generate(label: CartanLabel) -> Result<Self> {
        Self::with_multiplicities(label, |_| 1)
    }

    /// Build the system for `label` with multiplicities assigned per root.
    /// The assignment must be Weyl-invariant and strictly positive; both are
    /// checked.
    pub fn with_multiplicities(label: CartanLabel, mult_fn: impl Fn(&Root) -> u32) -> Result<Self> {
        if !label.is_supported() {
            return Err(Error::UnsupportedLabel(label.to_string()));
        }
        let (ambient_dim, root_vecs, simple_vecs) = raw_roots(label);
        let mut roots: Vec<Root> = root_vecs.into_iter().map(Root::new).collect();
        roots.sort();
        roots.reverse();
        roots.dedup();
        let simples: Vec<Root> = simple_vecs.into_iter().map(Root::new).collect();

        let index: HashMap<Root, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();

        // Gram matrix of the simples and its inverse.
        let rank = simples.len();
        assert_eq!(rank, label.rank);
        let gram: Vec<Vector> = simples
            .iter()
            .map(|a| simples.iter().map(|b| dot(a.coords(), b.coords())).collect())
            .collect();
        let inv_gram = invert(&gram).ok_or_else(|| {
            Error::domain("generate", format!("simple roots of {} are dependent", label))
        })?;

        let expand = |v: &[Rat]| -> Option<Vector> {
            let rhs: Vector = simples.iter().map(|s| dot(s.coords(), v)).collect();
            let coeffs: Vector = inv_gram.iter().map(|row| dot(row, &rhs)).collect();
            let mut recon = linalg::zeros(v.len());
            for (c, s) in coeffs.iter().zip(&simples) {
                recon = linalg::add(&recon, &linalg::scale(s.coords(), c));
            }
            if recon == v { Some(coeffs) } else { None }
        };

        let mut expansions = Vec::with_capacity(roots.len());
        let mut positive_flag = Vec::with_capacity(roots.len());
        for r in &roots {
            let coeffs = expand(r.coords()).ok_or_else(|| {
                Error::domain("generate", format!("root {} of {} outside simple span", r, label))
            })?;
            let mut pos = 0usize;
            let mut neg = 0usize;
            for c in &coeffs {
                if !c.is_integer() {
                    return Err(Error::domain(
                        "generate",
                        format!("root {} of {} has non-integral expansion", r, label),
                    ));
                }
                if c.is_positive() {
                    pos += 1;
                } else if c.is_negative() {
                    neg += 1;
                }
            }
            if pos > 0 && neg > 0 {
                return Err(Error::domain(
                    "generate",
                    format!("root {} of {} has mixed-sign expansion", r, label),
                ));
            }
            positive_flag.push(pos > 0);
            expansions.push(coeffs);
        }

        let positives: Vec<Root> = roots
            .iter()
            .zip(&positive_flag)
            .filter(|(_, &p)| p)
            .map(|(r, _)| r.clone())
            .collect();
        if positives.len() != label.expected_positive_count() {
            return Err(Error::domain(
                "generate",
                format!(
                    "{}: got {} positive roots, expected {}",
                    label,
                    positives.len(),
                    label.expected_positive_count()
                ),
            ));
        }
        if 2 * positives.len() != roots.len() {
            return Err(Error::domain("generate", format!("{}: root set not symmetric", label)));
        }

        let mult: Vec<u32> = roots.iter().map(&mult_fn).collect();
        if mult.iter().any(|&m| m == 0) {
            return Err(Error::domain("generate", "zero multiplicity".to_string()));
        }

        let system = RestrictedRootSystem {
            label,
            ambient_dim,
            roots,
            positives,
            simples,
            mult,
            expansions,
            index,
            positive_flag,
            inv_gram,
        };

        // Stability under the simple reflections generates stability under
        // the full Weyl group; multiplicities must ride along.
        for s in &system.simples {
            for (i, r) in system.roots.iter().enumerate() {
                let image = Root::new(reflect_raw(r.coords(), s));
                match system.index.get(&image) {
                    None => {
                        return Err(Error::domain(
                            "generate",
                            format!("{}: reflection of {} in {} leaves the root set", label, r, s),
                        ))
                    }
                    Some(&j) => {
                        if system.mult[i] != system.mult[j] {
                            return Err(Error::domain(
                                "generate",
                                format!(
                                    "{}: multiplicity not Weyl-invariant at {} -> {}",
                                    label, r, image
                                ),
                            ));
                        }
                    }
                }
            }
        }
        Ok(system)
    }

    pub fn label(&self) -> CartanLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positives(&self) -> &[Root] {
        &self.positives
    }

    pub fn simples(&self) -> &[Root] {
        &self.simples
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, v: &[Rat]) -> bool {
        self.index.contains_key(&Root::new(v.to_vec()))
    }

    pub fn is_positive(&self, v: &[Rat]) -> bool {
        self.index_of(&Root::new(v.to_vec())).map(|i| self.positive_flag[i]).unwrap_or(false)
    }

    pub fn mult_of(&self, r: &Root) -> Option<u32> {
        self.index_of(r).map(|i| self.mult[i])
    }

    /// Sum of multiplicities over the positive roots: the dimension of the
    /// nilradical.
    pub fn dim_n(&self) -> u64 {
        self.positives.iter().map(|r| self.mult_of(r).unwrap() as u64).sum()
    }

    pub fn is_split(&self) -> bool {
        self.mult.iter().all(|&m| m == 1)
    }

    /// True when no root has its double a root (everything except BC).
    pub fn is_reduced(&self) -> bool {
        self.roots.iter().all(|r| {
            let double = Root::new(linalg::scale(r.coords(), &linalg::rat(2)));
            !self.index.contains_key(&double)
        })
    }

    /// Positive roots gamma with 2*gamma not a root.
    pub fn nonmultipliable_positives(&self) -> Vec<Root> {
        self.positives
            .iter()
            .filter(|r| {
                let double = Root::new(linalg::scale(r.coords(), &linalg::rat(2)));
                !self.index.contains_key(&double)
            })
            .cloned()
            .collect()
    }

    pub fn pairing(&self, v: &[Rat], beta: &Root) -> Result<Rat> {
        if !self.is_root(beta.coords()) {
            return Err(Error::domain("pairing", format!("{} is not a root of {}", beta, self.label)));
        }
        Ok(pairing_raw(v, beta))
    }

    pub fn reflect(&self, v: &[Rat], beta: &Root) -> Result<Vector> {
        if !self.is_root(beta.coords()) {
            return Err(Error::domain("reflect", format!("{} is not a root of {}", beta, self.label)));
        }
        Ok(reflect_raw(v, beta))
    }

    /// Expansion of a root over the simples (integral, one-signed).
    pub fn expansion_of(&self, r: &Root) -> Option<&[Rat]> {
        self.index_of(r).map(|i| self.expansions[i].as_slice())
    }

    /// Expansion of an arbitrary vector over the simples, when it lies in
    /// their span.
    pub fn expand(&self, v: &[Rat]) -> Option<Vector> {
        let rhs: Vector = self.simples.iter().map(|s| dot(s.coords(), v)).collect();
        let coeffs: Vector = self.inv_gram.iter().map(|row| dot(row, &rhs)).collect();
        let mut recon = linalg::zeros(v.len());
        for (c, s) in coeffs.iter().zip(&self.simples) {
            recon = linalg::add(&recon, &linalg::scale(s.coords(), c));
        }
        if recon == v { Some(coeffs) } else { None }
    }

    pub fn height(&self, r: &Root) -> i64 {
        let exp = self.expansion_of(r).expect("height of a non-root");
        exp.iter().map(|c| c.to_integer().try_into().unwrap_or(0i64)).sum()
    }

    /// Partial order: `a >= b` iff `a - b` is a nonnegative combination of
    /// the simples.
    pub fn ge(&self, a: &Root, b: &Root) -> bool {
        let ea = self.expansion_of(a).expect("ge of a non-root");
        let eb = self.expansion_of(b).expect("ge of a non-root");
        ea.iter().zip(eb).all(|(x, y)| x >= y)
    }

    pub fn is_dominant(&self, v: &[Rat]) -> bool {
        self.simples.iter().all(|s| !pairing_raw(v, s).is_negative())
    }

    /// Weights `w_i` with `pairing(w_i, s_j) = delta_ij`, in ambient
    /// coordinates.
    pub fn fundamental_weights(&self) -> Vec<Vector> {
        let rank = self.rank();
        let m: Vec<Vector> = (0..rank)
            .map(|j| (0..rank).map(|k| pairing_raw(self.simples[k].coords(), &self.simples[j])).collect())
            .collect();
        (0..rank)
            .map(|i| {
                let mut rhs = linalg::zeros(rank);
                rhs[i] = Rat::one();
                let coeffs = linalg::solve(&m, &rhs).expect("Cartan matrix is invertible");
                let mut w = linalg::zeros(self.ambient_dim);
                for (c, s) in coeffs.iter().zip(&self.simples) {
                    w = linalg::add(&w, &linalg::scale(s.coords(), c));
                }
                w
            })
            .collect()
    }

    /// Exhaustive closure check: the reflection of any root in any root stays
    /// in the root set.  Quadratic; meant for test and verification drivers.
    pub fn validate_full_closure(&self) -> Result<()> {
        for beta in &self.roots {
            for alpha in &self.roots {
                let image = Root::new(reflect_raw(alpha.coords(), beta));
                if !self.index.contains_key(&image) {
                    return Err(Error::check(
                        "reflection-closure",
                        format!("s_{}({}) leaves {}", beta, alpha, self.label),
                    ));
                }
            }
        }
        Ok(())
    }
}

fn invert(m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = linalg::zeros(n);
        e[i] = Rat::one();
        cols.push(linalg::solve(m, &e)?);
    }
    // `cols[i]` solves m x = e_i, i.e. it is the i-th column of the inverse.
    Some((0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect())
}

fn basis_vec(dim: usize, i: usize, val: i64) -> Vector {
    let mut v = linalg::zeros(dim);
    v[i] = linalg::rat(val);
    v
}

/// Ambient dimension, full root list, and simple roots for each label.
fn raw_roots(label: CartanLabel) -> (usize, Vec<Vector>, Vec<Vector>) {
    let n = label.rank;
    match label.family {
        CartanFamily::A => {
            let dim = n + 1;
            let mut roots = Vec::new();
            for i in 0..dim {
                for j in 0..dim {
                    if i != j {
                        let mut v = linalg::zeros(dim);
                        v[i] = linalg::rat(1);
                        v[j] = linalg::rat(-1);
                        roots.push(v);
                    }
                }
            }
            let simples = (0..n)
                .map(|i| {
                    let mut v = linalg::zeros(dim);
                    v[i] = linalg::rat(1);
                    v[i + 1] = linalg::rat(-1);
                    v
                })
                .collect();
            (dim, roots, simples)
        }
        CartanFamily::B | CartanFamily::C | CartanFamily::D | CartanFamily::BC => {
            let dim = n;
            let mut roots = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let mut v = linalg::zeros(dim);
                        v[i] = linalg::rat(si);
                        v[j] = linalg::rat(sj);
                        roots.push(v);
                    }
                }
            }
            let shorts = matches!(label.family, CartanFamily::B | CartanFamily::BC);
            let longs = matches!(label.family, CartanFamily::C | CartanFamily::BC);
            for i in 0..n {
                if shorts {
                    roots.push(basis_vec(dim, i, 1));
                    roots.push(basis_vec(dim, i, -1));
                }
                if longs {
                    roots.push(basis_vec(dim, i, 2));
                    roots.push(basis_vec(dim, i, -2));
                }
            }
            let mut simples: Vec<Vector> = (0..n.saturating_sub(1))
                .map(|i| {
                    let mut v = linalg::zeros(dim);
                    v[i] = linalg::rat(1);
                    v[i + 1] = linalg::rat(-1);
                    v
                })
                .collect();
            match label.family {
                CartanFamily::B | CartanFamily::BC => simples.push(basis_vec(dim, n - 1, 1)),
                CartanFamily::C => simples.push(basis_vec(dim, n - 1, 2)),
                CartanFamily::D => {
                    let mut v = linalg::zeros(dim);
                    v[n - 2] = linalg::rat(1);
                    v[n - 1] = linalg::rat(1);
                    simples.push(v);
                }
                _ => unreachable!(),
            }
            (dim, roots, simples)
        }
        CartanFamily::G => {
            // Short roots e_i - e_j, long roots +-(2e_i - e_j - e_k).
            let mut roots = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        let mut v = linalg::zeros(3);
                        v[i] = linalg::rat(1);
                        v[j] = linalg::rat(-1);
                        roots.push(v);
                    }
                }
                let mut w = vec![linalg::rat(-1); 3];
                w[i] = linalg::rat(2);
                roots.push(linalg::neg(&w));
                roots.push(w);
            }
            let s1 = vec![linalg::rat(1), linalg::rat(-1), linalg::rat(0)];
            let s2 = vec![linalg::rat(-2), linalg::rat(1), linalg::rat(1)];
            (3, roots, vec![s1, s2])
        }
        CartanFamily::F => {
            let mut roots = Vec::new();
            for i in 0..4 {
                roots.push(basis_vec(4, i, 1));
                roots.push(basis_vec(4, i, -1));
                for j in (i + 1)..4 {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let mut v = linalg::zeros(4);
                        v[i] = linalg::rat(si);
                        v[j] = linalg::rat(sj);
                        roots.push(v);
                    }
                }
            }
            for mask in 0..16u32 {
                let v: Vector = (0..4)
                    .map(|i| if mask & (1 << i) != 0 { linalg::ratio(-1, 2) } else { linalg::ratio(1, 2) })
                    .collect();
                roots.push(v);
            }
            let half = linalg::ratio(1, 2);
            let simples = vec![
                vec![linalg::rat(0), linalg::rat(1), linalg::rat(-1), linalg::rat(0)],
                vec![linalg::rat(0), linalg::rat(0), linalg::rat(1), linalg::rat(-1)],
                basis_vec(4, 3, 1),
                vec![half.clone(), -half.clone(), -half.clone(), -half],
            ];
            (4, roots, simples)
        }
        CartanFamily::E => {
            // Everything realized inside the R^8 picture of the rank-8
            // system; the smaller ones are the subsets orthogonal to
            // e7 + e8 and additionally to e6 - e7.
            let mut all = Vec::new();
            for i in 0..8 {
                for j in (i + 1)..8 {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let mut v = linalg::zeros(8);
                        v[i] = linalg::rat(si);
                        v[j] = linalg::rat(sj);
                        all.push(v);
                    }
                }
            }
            for mask in 0..256u32 {
                if mask.count_ones() % 2 == 0 {
                    let v: Vector = (0..8)
                        .map(|i| {
                            if mask & (1 << i) != 0 {
                                linalg::ratio(-1, 2)
                            } else {
                                linalg::ratio(1, 2)
                            }
                        })
                        .collect();
                    all.push(v);
                }
            }
            let half = || linalg::ratio(1, 2);
            let mut a1 = vec![-half(); 8];
            a1[0] = half();
            a1[7] = half();
            let mut a2 = linalg::zeros(8);
            a2[0] = linalg::rat(1);
            a2[1] = linalg::rat(1);
            let mut simples = vec![a1, a2];
            for k in 0..6 {
                // e_{k+2} - e_{k+1}
                let mut v = linalg::zeros(8);
                v[k] = linalg::rat(-1);
                v[k + 1] = linalg::rat(1);
                simples.push(v);
            }
            simples.truncate(n);
            let mut constraints: Vec<Vector> = Vec::new();
            if n <= 7 {
                let mut c = linalg::zeros(8);
                c[6] = linalg::rat(1);
                c[7] = linalg::rat(1);
                constraints.push(c);
            }
            if n == 6 {
                let mut c = linalg::zeros(8);
                c[5] = linalg::rat(1);
                c[6] = linalg::rat(-1);
                constraints.push(c);
            }
            let roots = all
                .into_iter()
                .filter(|v| constraints.iter().all(|c| dot(v, c).is_zero()))
                .collect();
            (8, roots, simples)
        }
    }
}
