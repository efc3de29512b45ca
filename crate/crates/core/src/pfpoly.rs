//! Exact multivariate polynomials and the Pfaffian data of the layer
//! decomposition.
//!
//! For a split reduced system the antisymmetric form b(x, y) = lambda([x, y])
//! on the non-central part of the nilradical is block diagonal over the
//! layers, with the block of layer r linear in the single variable
//! lambda_r.  Its Pfaffian is the Plancherel density up to normalization;
//! multiplied by the quasi-center determinant it gives the symbol of the
//! operator that makes the abstract Plancherel inversion absolutely
//! convergent.  Everything here is exact rational arithmetic; determinants
//! are computed by fraction-free elimination so that the characterizing
//! identity Pf^2 = det can be checked literally.

use crate::cascade::CascadeDecomposition;
use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::nilalg::ChevalleyBasis;
use crate::rootsys::Root;
use crate::Rat;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Exponent vector, ordered by total degree then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    n_vars: usize,
    /// Nonzero terms only; iteration order is ascending, so the leading
    /// term is the last entry.
    terms: BTreeMap<Monomial, Rat>,
}

impl SparsePolynomial {
    pub fn zero(n_vars: usize) -> Self {
        SparsePolynomial { n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: Rat) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(Monomial(vec![0; n_vars]), c);
        p
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars);
        let mut exps = vec![0; n_vars];
        exps[i] = 1;
        let mut p = Self::zero(n_vars);
        p.add_term(Monomial(exps), Rat::one());
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.n_vars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), c * v);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = Self::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(exps), ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.n_vars);
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    v *= x;
                }
            }
            total += v;
        }
        total
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest exponent of variable i.
    pub fn var_degree(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Common degree of all terms, if there is one (zero counts as
    /// homogeneous of any degree and reports None).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Exact division; None when the divisor does not divide evenly.
    pub fn div_exact(&self, den: &Self) -> Option<Self> {
        assert_eq!(self.n_vars, den.n_vars);
        let (dm, dc) = den.leading()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.n_vars);
        while let Some((rm, rc)) = rem.leading() {
            let mut exps = Vec::with_capacity(self.n_vars);
            for (a, b) in rm.0.iter().zip(&dm.0) {
                exps.push(a.checked_sub(*b)?);
            }
            let qm = Monomial(exps);
            let qc = rc / dc;
            let mut t = Self::zero(self.n_vars);
            t.add_term(qm, qc);
            rem = rem.sub(&t.mul(den));
            quot = quot.add(&t);
        }
        Some(quot)
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        format!("\u{3bb}{}", j + 1)
                    } else {
                        format!("\u{3bb}{}^{}", j + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Pfaffian by expansion along the first remaining index, memoized on the
/// index subset.  Requires an antisymmetric matrix; odd sizes give zero.
pub fn pfaffian(m: &[Vec<SparsePolynomial>]) -> SparsePolynomial {
    let n = m.len();
    assert!(n <= 63, "Pfaffian expansion is limited to 63 indices");
    let n_vars = if n == 0 { 0 } else { m[0][0].n_vars() };
    for (i, row) in m.iter().enumerate() {
        assert_eq!(row.len(), n);
        for (j, e) in row.iter().enumerate() {
            assert_eq!(e, &m[j][i].neg(), "matrix is not antisymmetric at ({}, {})", i, j);
        }
    }
    if n % 2 == 1 {
        return SparsePolynomial::zero(n_vars);
    }
    let mut memo: HashMap<u64, SparsePolynomial> = HashMap::new();
    pf_subset(m, (1u64 << n) - 1, n_vars, &mut memo)
}

fn pf_subset(
    m: &[Vec<SparsePolynomial>],
    mask: u64,
    n_vars: usize,
    memo: &mut HashMap<u64, SparsePolynomial>,
) -> SparsePolynomial {
    if mask == 0 {
        return SparsePolynomial::constant(n_vars, Rat::one());
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let indices: Vec<usize> = (0..m.len()).filter(|i| mask & (1 << i) != 0).collect();
    let first = indices[0];
    let mut total = SparsePolynomial::zero(n_vars);
    for (k, &j) in indices.iter().enumerate().skip(1) {
        if m[first][j].is_zero() {
            continue;
        }
        let rest = mask & !(1 << first) & !(1 << j);
        let sub = pf_subset(m, rest, n_vars, memo);
        let term = m[first][j].mul(&sub);
        total = if k % 2 == 1 { total.add(&term) } else { total.sub(&term) };
    }
    memo.insert(mask, total.clone());
    total
}

/// Fraction-free determinant: every interior division is exact, which the
/// code checks rather than assumes.
pub fn determinant(matrix: &[Vec<SparsePolynomial>]) -> SparsePolynomial {
    let n = matrix.len();
    let n_vars = if n == 0 { 0 } else { matrix[0][0].n_vars() };
    if n == 0 {
        return SparsePolynomial::constant(0, Rat::one());
    }
    let mut m = matrix.to_vec();
    let mut sign = false;
    let mut prev = SparsePolynomial::constant(n_vars, Rat::one());
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return SparsePolynomial::zero(n_vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("fraction-free elimination divides evenly");
            }
        }
        prev = m[k][k].clone();
    }
    let out = m[n - 1][n - 1].clone();
    if sign {
        out.neg()
    } else {
        out
    }
}

/// The layer-r block of b(x, y) = lambda([x, y]) over the layer's roots in
/// their stored order: entry (i, j) is N(alpha_i, alpha_j) lambda_r when
/// alpha_i + alpha_j is the cascade root, zero otherwise.
pub fn layer_block(
    basis: &ChevalleyBasis,
    decomp: &CascadeDecomposition,
    r: usize,
) -> Vec<Vec<SparsePolynomial>> {
    let m = decomp.m();
    let layer = &decomp.layers[r];
    let beta = &decomp.betas[r];
    layer
        .iter()
        .map(|a| {
            layer
                .iter()
                .map(|b| {
                    let sum = linalg::add(a.coords(), b.coords());
                    if sum == beta.coords() {
                        SparsePolynomial::var(m, r).scale(&linalg::rat(basis.n(a, b)))
                    } else {
                        SparsePolynomial::zero(m)
                    }
                })
                .collect()
        })
        .collect()
}

pub struct SymbolData {
    /// Pfaffian of each layer block, in layer order.
    pub layer_pfaffians: Vec<SparsePolynomial>,
    /// Product of the layer Pfaffians: the Pfaffian polynomial of the full
    /// form (block diagonality is verified, not assumed).
    pub pf: SparsePolynomial,
    /// Quasi-center determinant: the product of the lambda_r.
    pub det: SparsePolynomial,
    /// Symbol of the inversion operator: pf * det.
    pub dp: SparsePolynomial,
}

/// Pfaffian, quasi-center determinant, and operator symbol for a split
/// reduced system.
pub fn symbol_data(basis: &ChevalleyBasis, decomp: &CascadeDecomposition) -> Result<SymbolData> {
    let system = basis.system();
    let m = decomp.m();

    // Cross-layer entries of the form must vanish: the bracket of two
    // non-central vectors from different layers avoids the quasi-center.
    for r in 0..m {
        for s in 0..m {
            if r == s {
                continue;
            }
            for a in &decomp.layers[r] {
                for b in &decomp.layers[s] {
                    let sum = linalg::add(a.coords(), b.coords());
                    if decomp.betas.iter().any(|t| t.coords() == &sum[..]) {
                        return Err(Error::check(
                            "pfaffian",
                            format!("{} + {} hits a cascade root across layers", a, b),
                        ));
                    }
                }
            }
        }
    }

    let layer_pfaffians: Vec<SparsePolynomial> = (0..m)
        .map(|r| {
            let block = layer_block(basis, decomp, r);
            // An empty layer contributes the empty Pfaffian, 1.
            if block.is_empty() {
                SparsePolynomial::constant(m, Rat::one())
            } else {
                pfaffian(&block)
            }
        })
        .collect();
    let mut pf = SparsePolynomial::constant(m, Rat::one());
    for p in &layer_pfaffians {
        pf = pf.mul(p);
    }

    // For small forms recompute the Pfaffian of the assembled matrix and
    // compare with the block product.
    let total: usize = decomp.layers.iter().map(|l| l.len()).sum();
    if total > 0 && total <= 16 {
        let order: Vec<&Root> = decomp.layers.iter().flatten().collect();
        let full: Vec<Vec<SparsePolynomial>> = order
            .iter()
            .map(|a| {
                order
                    .iter()
                    .map(|b| {
                        let sum = linalg::add(a.coords(), b.coords());
                        match decomp.betas.iter().position(|t| t.coords() == &sum[..]) {
                            Some(r) => {
                                SparsePolynomial::var(m, r).scale(&linalg::rat(basis.n(a, b)))
                            }
                            None => SparsePolynomial::zero(m),
                        }
                    })
                    .collect()
            })
            .collect();
        if pfaffian(&full) != pf {
            return Err(Error::check(
                "pfaffian",
                format!("block product differs from the direct Pfaffian for {}", system.label()),
            ));
        }
    }

    if let Some(r) = (0..m).find(|&r| decomp.dim_z[r] != 1) {
        return Err(Error::domain(
            "symbol_data",
            format!("center of layer {} has dimension {}", r + 1, decomp.dim_z[r]),
        ));
    }
    let mut det = SparsePolynomial::constant(m, Rat::one());
    for r in 0..m {
        det = det.mul(&SparsePolynomial::var(m, r));
    }
    let dp = pf.mul(&det);
    Ok(SymbolData { layer_pfaffians, pf, det, dp })
}

/// Structural facts about the symbol: the Pfaffian is nonzero and
/// homogeneous of degree sum(d_r) with d_r powers of each variable, the
/// symbol has degree (dim n + dim s)/2 and per-variable degrees equal to
/// the modular weights.
pub fn symbol_checks(decomp: &CascadeDecomposition, data: &SymbolData) -> Result<()> {
    if data.pf.is_zero() {
        return Err(Error::check("pfaffian", "Pfaffian polynomial vanishes".to_string()));
    }
    let sum_d: Rat = decomp.d.iter().sum();
    let expect = |claim: bool, msg: String| -> Result<()> {
        if claim {
            Ok(())
        } else {
            Err(Error::check("dp-symbol", msg))
        }
    };
    expect(
        data.pf.homogeneous_degree().map(|d| linalg::rat(d as i64)) == Some(sum_d.clone()),
        "Pfaffian degree differs from the layer dimension count".to_string(),
    )?;
    for (r, d) in decomp.d.iter().enumerate() {
        expect(
            linalg::rat(data.pf.var_degree(r) as i64) == *d,
            format!("Pfaffian degree in variable {} is not d_{}", r + 1, r + 1),
        )?;
    }
    let half_dim = linalg::ratio((decomp.dim_n + decomp.dim_s) as i64, 2);
    expect(
        data.dp.homogeneous_degree().map(|d| linalg::rat(d as i64)) == Some(half_dim),
        "symbol degree differs from half the dimension count".to_string(),
    )?;
    let weights = decomp.modular_exponents();
    for (r, w) in weights.iter().enumerate() {
        expect(
            linalg::rat(data.dp.var_degree(r) as i64) == *w,
            format!("symbol degree in variable {} is not the modular weight", r + 1),
        )?;
    }
    Ok(())
}

/// The modular weight functional: sum of exponent_r * beta_r(xi), with xi
/// described by the values beta_r(xi).
pub fn modular_weight_value(decomp: &CascadeDecomposition, beta_values: &[Rat]) -> Rat {
    decomp
        .modular_exponents()
        .iter()
        .zip(beta_values)
        .map(|(w, v)| w * v)
        .sum()
}

/// Random-trial semi-invariance: rescaling each variable multiplies the
/// polynomial by the product of the scales raised to its per-variable
/// degrees.  This is the exact shadow of the transformation law under the
/// diagonal group action.
pub fn semiinvariance_check(
    poly: &SparsePolynomial,
    weights: &[u32],
    seed: u64,
    trials: usize,
) -> Result<()> {
    let m = poly.n_vars();
    assert_eq!(weights.len(), m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rand_rat = |nonzero: bool| -> Rat {
        loop {
            let num = rng.gen_range(-9i64..=9);
            let den = rng.gen_range(1i64..=9);
            if !nonzero || num != 0 {
                return linalg::ratio(num, den);
            }
        }
    };
    for _ in 0..trials {
        let scales: Vec<Rat> = (0..m).map(|_| rand_rat(true)).collect();
        let point: Vec<Rat> = (0..m).map(|_| rand_rat(false)).collect();
        let scaled_point: Vec<Rat> =
            scales.iter().zip(&point).map(|(s, x)| s * x).collect();
        let mut factor = Rat::one();
        for (s, &w) in scales.iter().zip(weights) {
            for _ in 0..w {
                factor *= s;
            }
        }
        if poly.eval(&scaled_point) != factor * poly.eval(&point) {
            return Err(Error::check(
                "dp-symbol",
                "scaling covariance fails at a random point".to_string(),
            ));
        }
    }
    Ok(())
}

/// Pf(P M P^t) = sign(P) Pf(M) for a permutation P given as the image list.
pub fn permuted(m: &[Vec<SparsePolynomial>], perm: &[usize]) -> Vec<Vec<SparsePolynomial>> {
    let n = m.len();
    assert_eq!(perm.len(), n);
    (0..n).map(|i| (0..n).map(|j| m[perm[i]][perm[j]].clone()).collect()).collect()
}

pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut sign = 1i64;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Scaling-covariance of the Pfaffian itself: evaluating the matrix at a
/// scaled point multiplies the Pfaffian value accordingly.  `deg` is the
/// Pfaffian's homogeneous degree.
pub fn pf_scaling_check(
    pf: &SparsePolynomial,
    deg: u32,
    seed: u64,
    trials: usize,
) -> Result<()> {
    let m = pf.n_vars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let num = loop {
            let v = rng.gen_range(-9i64..=9);
            if v != 0 {
                break v;
            }
        };
        let c = linalg::ratio(num, rng.gen_range(1i64..=9));
        let point: Vec<Rat> =
            (0..m).map(|_| linalg::ratio(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=9))).collect();
        let scaled: Vector = point.iter().map(|x| &c * x).collect();
        let mut factor = Rat::one();
        for _ in 0..deg {
            factor *= &c;
        }
        if pf.eval(&scaled) != factor * pf.eval(&point) {
            return Err(Error::check("pfaffian", "homogeneity fails at a random point".to_string()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade;
    use crate::linalg::{rat, ratio};
    use crate::rootsys::RestrictedRootSystem;
    use proptest::prelude::*;

    fn sys(label: &str) -> RestrictedRootSystem {
        RestrictedRootSystem::generate(label.parse().unwrap()).unwrap()
    }

    fn poly_from(terms: &[(&[u32], i64)]) -> SparsePolynomial {
        let n = terms[0].0.len();
        let mut p = SparsePolynomial::zero(n);
        for (exps, c) in terms {
            p = p.add(&SparsePolynomial::constant(n, rat(*c)).mul(&monomial_poly(exps)));
        }
        p
    }

    fn monomial_poly(exps: &[u32]) -> SparsePolynomial {
        let mut p = SparsePolynomial::constant(exps.len(), rat(1));
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                p = p.mul(&SparsePolynomial::var(exps.len(), i));
            }
        }
        p
    }

    #[test]
    fn monomial_order_is_graded() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![0, 1]);
        let c = Monomial(vec![1, 1]);
        assert!(b < a);
        assert!(c < a);
        assert_eq!(a.degree(), c.degree());
    }

    #[test]
    fn display_reads_leading_term_first() {
        let p = poly_from(&[(&[2, 0], 1), (&[0, 1], -3)]);
        assert_eq!(p.to_string(), "\u{3bb}1^2 - 3*\u{3bb}2");
        let q = poly_from(&[(&[0, 0], 1)]).scale(&ratio(1, 2));
        assert_eq!(q.to_string(), "1/2");
        assert_eq!(SparsePolynomial::zero(2).to_string(), "0");
        let r = poly_from(&[(&[1, 1], -2)]);
        assert_eq!(r.to_string(), "-2*\u{3bb}1*\u{3bb}2");
    }

    #[test]
    fn arithmetic_and_eval() {
        let p = poly_from(&[(&[1, 0], 2), (&[0, 1], 1)]);
        let q = poly_from(&[(&[1, 0], 1), (&[0, 1], -1)]);
        let prod = p.mul(&q);
        let point = vec![ratio(1, 2), rat(3)];
        assert_eq!(prod.eval(&point), p.eval(&point) * q.eval(&point));
        assert!(p.sub(&p).is_zero());
        assert_eq!(prod.degree(), Some(2));
    }

    #[test]
    fn exact_division() {
        let p = poly_from(&[(&[1, 0], 1), (&[0, 1], 1)]);
        let q = poly_from(&[(&[1, 0], 1), (&[0, 1], -1)]);
        let prod = p.mul(&q);
        assert_eq!(prod.div_exact(&p).unwrap(), q);
        assert_eq!(prod.div_exact(&q).unwrap(), p);
        let r = poly_from(&[(&[1, 0], 1)]);
        assert!(prod.div_exact(&r).is_none());
    }

    fn antisym_from(entries: &[(usize, usize, i64)], n: usize) -> Vec<Vec<SparsePolynomial>> {
        let mut m = vec![vec![SparsePolynomial::zero(1); n]; n];
        for &(i, j, v) in entries {
            m[i][j] = SparsePolynomial::constant(1, rat(v));
            m[j][i] = SparsePolynomial::constant(1, rat(-v));
        }
        m
    }

    #[test]
    fn pfaffian_small_cases() {
        let m2 = antisym_from(&[(0, 1, 5)], 2);
        assert_eq!(pfaffian(&m2), SparsePolynomial::constant(1, rat(5)));
        // pf = af - be + cd
        let m4 = antisym_from(&[(0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 2, 4), (1, 3, 5), (2, 3, 6)], 4);
        assert_eq!(pfaffian(&m4), SparsePolynomial::constant(1, rat(1 * 6 - 2 * 5 + 3 * 4)));
        assert!(pfaffian(&antisym_from(&[(0, 1, 1)], 3)).is_zero());
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let m4 = antisym_from(&[(0, 1, 2), (0, 2, -1), (0, 3, 3), (1, 2, 7), (1, 3, -2), (2, 3, 1)], 4);
        let pf = pfaffian(&m4);
        assert_eq!(determinant(&m4), pf.mul(&pf));
        let m6 = antisym_from(
            &[(0, 1, 1), (0, 4, 2), (1, 2, -3), (1, 5, 1), (2, 3, 2), (3, 4, -1), (4, 5, 3), (0, 3, 1)],
            6,
        );
        let pf6 = pfaffian(&m6);
        assert_eq!(determinant(&m6), pf6.mul(&pf6));
    }

    #[test]
    fn determinant_with_polynomial_entries() {
        // det [[x, 1], [1, x]] = x^2 - 1
        let x = SparsePolynomial::var(1, 0);
        let one = SparsePolynomial::constant(1, rat(1));
        let m = vec![vec![x.clone(), one.clone()], vec![one.clone(), x.clone()]];
        let expected = x.mul(&x).sub(&one);
        assert_eq!(determinant(&m), expected);
    }

    fn data_for(label: &str) -> (SymbolData, CascadeDecomposition) {
        let s = sys(label);
        let dec = cascade::decompose(&s).unwrap();
        let basis = ChevalleyBasis::new(&s).unwrap();
        let data = symbol_data(&basis, &dec).unwrap();
        // keep decomp; basis borrows s so recompute outside
        (data, dec)
    }

    #[test]
    fn a3_symbol() {
        let s = sys("A3");
        let dec = cascade::decompose(&s).unwrap();
        let basis = ChevalleyBasis::new(&s).unwrap();
        let data = symbol_data(&basis, &dec).unwrap();
        let (m, c) = data.pf.leading().unwrap();
        assert_eq!(m.0, vec![2, 0]);
        assert_eq!(c.abs(), rat(1));
        assert_eq!(data.pf.terms().count(), 1);
        assert_eq!(data.det.to_string(), "\u{3bb}1*\u{3bb}2");
        assert_eq!(data.dp.homogeneous_degree(), Some(4));
        assert_eq!(data.dp.var_degree(0), 3);
        assert_eq!(data.dp.var_degree(1), 1);
        symbol_checks(&dec, &data).unwrap();
    }

    #[test]
    fn c2_symbol() {
        let s = sys("C2");
        let dec = cascade::decompose(&s).unwrap();
        let basis = ChevalleyBasis::new(&s).unwrap();
        let data = symbol_data(&basis, &dec).unwrap();
        let (m, c) = data.pf.leading().unwrap();
        assert_eq!(m.0, vec![1, 0]);
        assert_eq!(c.abs(), rat(2));
        assert_eq!(data.dp.homogeneous_degree(), Some(3));
        symbol_checks(&dec, &data).unwrap();
    }

    #[test]
    fn symbol_checks_across_split_catalog() {
        for label in ["A2", "A4", "A5", "B2", "B3", "B4", "C3", "C4", "D4", "G2"] {
            let s = sys(label);
            let dec = cascade::decompose(&s).unwrap();
            let basis = ChevalleyBasis::new(&s).unwrap();
            let data = symbol_data(&basis, &dec).unwrap();
            symbol_checks(&dec, &data).unwrap();
            let sq = data.pf.mul(&data.pf);
            let order: Vec<&Root> = dec.layers.iter().flatten().collect();
            let full: Vec<Vec<SparsePolynomial>> = order
                .iter()
                .map(|a| {
                    order
                        .iter()
                        .map(|b| {
                            let sum = linalg::add(a.coords(), b.coords());
                            match dec.betas.iter().position(|t| t.coords() == &sum[..]) {
                                Some(r) => SparsePolynomial::var(dec.m(), r)
                                    .scale(&linalg::rat(basis.n(a, b))),
                                None => SparsePolynomial::zero(dec.m()),
                            }
                        })
                        .collect()
                })
                .collect();
            assert_eq!(determinant(&full), sq, "{}", label);
        }
    }

    #[test]
    fn scaling_and_semiinvariance() {
        let (data, dec) = data_for("B3");
        let deg = data.pf.homogeneous_degree().unwrap();
        pf_scaling_check(&data.pf, deg, 7, 20).unwrap();
        let weights: Vec<u32> = dec
            .modular_exponents()
            .iter()
            .map(|w| u32::try_from(w.to_integer()).unwrap())
            .collect();
        semiinvariance_check(&data.dp, &weights, 11, 20).unwrap();
    }

    #[test]
    fn modular_weight_values() {
        let s = sys("A3");
        let dec = cascade::decompose(&s).unwrap();
        assert_eq!(modular_weight_value(&dec, &[rat(1), rat(0)]), rat(3));
        assert_eq!(modular_weight_value(&dec, &[rat(0), rat(1)]), rat(1));
    }

    proptest! {
        #[test]
        fn pfaffian_permutation_sign(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 6;
            let mut m = vec![vec![SparsePolynomial::zero(1); n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    let v = rat(rand::Rng::gen_range(&mut rng, -5i64..=5));
                    m[i][j] = SparsePolynomial::constant(1, v.clone());
                    m[j][i] = SparsePolynomial::constant(1, -v);
                }
            }
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rand::Rng::gen_range(&mut rng, 0..=i);
                perm.swap(i, j);
            }
            let lhs = pfaffian(&permuted(&m, &perm));
            let rhs = pfaffian(&m).scale(&rat(permutation_sign(&perm)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
