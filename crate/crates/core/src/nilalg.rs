//! Chevalley structure constants for split reduced systems, and the
//! bracket-level verification of the layer decomposition.
//!
//! Constants come from the extraspecial-pair recursion: positive roots are
//! processed by height; for each sum the special pair that is least in the
//! height-then-lexicographic order gets N = p + 1 (p the chain length);
//! every other constant is forced by the Jacobi identity applied to
//! quadruples of roots summing to zero.  Mixed-sign constants reduce to
//! positive pairs through the invariant-form identity
//! N(a,b)/(c,c) = N(b,c)/(a,a) = N(c,a)/(b,b) for a + b + c = 0.
//!
//! Nothing here is taken on faith: the crate's checks re-derive |N| = p + 1
//! for every pair of roots and run the Jacobi identity over the full basis,
//! so a sign or normalization slip in the recursion would be caught.

use crate::cascade::CascadeDecomposition;
use crate::error::{Error, Result};
use crate::linalg::{self, dot, Vector};
use crate::rootsys::{RestrictedRootSystem, Root};
use crate::Rat;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};

pub struct ChevalleyBasis<'a> {
    system: &'a RestrictedRootSystem,
    n_table: HashMap<(usize, usize), i64>,
}

/// Element written over the Chevalley basis: an ambient Cartan vector plus
/// root-vector coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElt {
    pub cartan: Vector,
    pub coeffs: BTreeMap<Root, Rat>,
}

impl LieElt {
    pub fn is_zero(&self) -> bool {
        self.cartan.iter().all(Zero::is_zero) && self.coeffs.values().all(Zero::is_zero)
    }

    fn add_root(&mut self, r: Root, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(r).or_insert_with(Zero::zero);
        *entry += c;
        if entry.is_zero() {
            let key = self.coeffs.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.coeffs.remove(&k);
            }
        }
    }
}

fn order_key(system: &RestrictedRootSystem, r: &Root) -> (i64, Root) {
    (system.height(r), r.clone())
}

impl<'a> ChevalleyBasis<'a> {
    pub fn new(system: &'a RestrictedRootSystem) -> Result<Self> {
        if !system.is_split() || !system.is_reduced() {
            return Err(Error::NotSplit(format!(
                "structure constants are defined here only for split reduced systems, not {}",
                system.label()
            )));
        }

        // Positive-pair constants, sums in increasing height.
        let mut pos_table: HashMap<(Root, Root), Rat> = HashMap::new();
        let mut sums: Vec<&Root> = system
            .positives()
            .iter()
            .filter(|r| system.height(r) > 1)
            .collect();
        sums.sort_by_key(|r| order_key(system, r));
        for xi in sums {
            let mut specials: Vec<(Root, Root)> = Vec::new();
            for alpha in system.positives() {
                let beta = linalg::sub(xi.coords(), alpha.coords());
                if !system.is_positive(&beta) {
                    continue;
                }
                let beta = Root::new(beta);
                if order_key(system, alpha) < order_key(system, &beta) {
                    specials.push((alpha.clone(), beta));
                }
            }
            specials.sort_by_key(|(a, _)| order_key(system, a));
            let (xa, xb) = specials.first().expect("positive non-simple root splits").clone();
            let extra = linalg::rat(1 + chain_down(system, &xa, &xb));
            pos_table.insert((xb.clone(), xa.clone()), -extra.clone());
            pos_table.insert((xa.clone(), xb.clone()), extra.clone());
            let norm_xi = dot(xi.coords(), xi.coords());
            for (alpha, beta) in specials.iter().skip(1) {
                // Jacobi identity on (x_{xa}, x_{-alpha}, x_{-beta}).
                let neg_alpha = alpha.negate();
                let neg_beta = beta.negate();
                let mut rhs = Rat::zero();
                let da = linalg::sub(xa.coords(), alpha.coords());
                if system.is_root(&da) {
                    let da = Root::new(da);
                    rhs += n_signed(system, &pos_table, &xa, &neg_alpha)
                        * n_signed(system, &pos_table, &da, &neg_beta);
                }
                let db = linalg::sub(xa.coords(), beta.coords());
                if system.is_root(&db) {
                    let db = Root::new(db);
                    rhs += n_signed(system, &pos_table, &neg_beta, &xa)
                        * n_signed(system, &pos_table, &db, &neg_alpha);
                }
                let n = &norm_xi / (dot(xb.coords(), xb.coords()) * &extra) * rhs;
                if n.is_zero() || !n.is_integer() {
                    return Err(Error::domain(
                        "chevalley",
                        format!("recursion produced N = {} for {} + {}", n, alpha, beta),
                    ));
                }
                pos_table.insert((beta.clone(), alpha.clone()), -n.clone());
                pos_table.insert((alpha.clone(), beta.clone()), n);
            }
        }

        // Extend to all sign combinations.
        let mut n_table = HashMap::new();
        for (i, u) in system.roots().iter().enumerate() {
            for (j, v) in system.roots().iter().enumerate() {
                let s = linalg::add(u.coords(), v.coords());
                if !system.is_root(&s) {
                    continue;
                }
                let n = n_signed(system, &pos_table, u, v);
                if n.is_zero() || !n.is_integer() {
                    return Err(Error::domain(
                        "chevalley",
                        format!("sign extension produced N = {} for {} + {}", n, u, v),
                    ));
                }
                let n: i64 = i64::try_from(n.to_integer()).expect("small structure constant");
                n_table.insert((i, j), n);
            }
        }
        Ok(ChevalleyBasis { system, n_table })
    }

    pub fn system(&self) -> &RestrictedRootSystem {
        self.system
    }

    /// N(u, v): the coefficient in [x_u, x_v] = N(u,v) x_{u+v}; zero when
    /// u + v is not a root.
    pub fn n(&self, u: &Root, v: &Root) -> i64 {
        let i = self.system.index_of(u).expect("root of the system");
        let j = self.system.index_of(v).expect("root of the system");
        self.n_table.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn zero_elt(&self) -> LieElt {
        LieElt { cartan: linalg::zeros(self.system.ambient_dim()), coeffs: BTreeMap::new() }
    }

    pub fn root_elt(&self, r: &Root) -> LieElt {
        let mut e = self.zero_elt();
        assert!(self.system.index_of(r).is_some(), "not a root of the system");
        e.add_root(r.clone(), linalg::rat(1));
        e
    }

    /// The coroot 2r/(r,r) as a Cartan element.
    pub fn coroot_elt(&self, r: &Root) -> LieElt {
        let scale = linalg::ratio(2, 1) / r.norm_sq();
        LieElt { cartan: linalg::scale(r.coords(), &scale), coeffs: BTreeMap::new() }
    }

    pub fn bracket(&self, x: &LieElt, y: &LieElt) -> LieElt {
        let mut out = self.zero_elt();
        for (g, c) in &y.coeffs {
            out.add_root(g.clone(), dot(g.coords(), &x.cartan) * c);
        }
        for (g, c) in &x.coeffs {
            out.add_root(g.clone(), -(dot(g.coords(), &y.cartan) * c));
        }
        for (g, a) in &x.coeffs {
            for (d, b) in &y.coeffs {
                let s = linalg::add(g.coords(), d.coords());
                if s.iter().all(Zero::is_zero) {
                    let scale = a * b * linalg::ratio(2, 1) / g.norm_sq();
                    out.cartan = linalg::add(&out.cartan, &linalg::scale(g.coords(), &scale));
                } else if self.system.is_root(&s) {
                    let n = linalg::rat(self.n(g, d));
                    out.add_root(Root::new(s), a * b * n);
                }
            }
        }
        out
    }

    fn basis_elements(&self) -> Vec<LieElt> {
        let mut out: Vec<LieElt> = self.system.roots().iter().map(|r| self.root_elt(r)).collect();
        for s in self.system.simples() {
            out.push(self.coroot_elt(s));
        }
        out
    }
}

/// Longest chain below: largest p with v - p u a root.
fn chain_down(system: &RestrictedRootSystem, u: &Root, v: &Root) -> i64 {
    let mut p = 0;
    let mut w = v.coords().to_vec();
    loop {
        w = linalg::sub(&w, u.coords());
        if system.is_root(&w) {
            p += 1;
        } else {
            return p;
        }
    }
}

fn is_pos(system: &RestrictedRootSystem, r: &Root) -> bool {
    system.is_positive(r.coords())
}

/// Reduce N(u, v) for roots of arbitrary sign to positive-pair lookups.
fn n_signed(
    system: &RestrictedRootSystem,
    pos_table: &HashMap<(Root, Root), Rat>,
    u: &Root,
    v: &Root,
) -> Rat {
    match (is_pos(system, u), is_pos(system, v)) {
        (true, true) => pos_table
            .get(&(u.clone(), v.clone()))
            .cloned()
            .unwrap_or_else(|| panic!("positive pair {} + {} not yet tabulated", u, v)),
        (false, false) => -n_signed(system, pos_table, &u.negate(), &v.negate()),
        (false, true) => -n_signed(system, pos_table, v, u),
        (true, false) => {
            let w = Root::new(linalg::add(u.coords(), v.coords()));
            if is_pos(system, &w) {
                // (u, v, -w) sums to zero: N(u,v) = (w,w)/(u,u) N(v,-w)
                // and N(v,-w) = -N(-v,w) with -v, w positive.
                let ratio = w.norm_sq() / u.norm_sq();
                -(ratio * n_signed(system, pos_table, &v.negate(), &w))
            } else {
                // N(u,v) = (w,w)/(v,v) N(-w,u) with -w, u positive.
                let ratio = w.norm_sq() / v.norm_sq();
                ratio * n_signed(system, pos_table, &w.negate(), u)
            }
        }
    }
}

/// |N(u,v)| = p + 1 with p the chain length, antisymmetry, and the negation
/// rule, over every pair of roots.
pub fn chevalley_property_check(basis: &ChevalleyBasis) -> Result<()> {
    let system = basis.system();
    for u in system.roots() {
        for v in system.roots() {
            let s = linalg::add(u.coords(), v.coords());
            let n = basis.n(u, v);
            if !system.is_root(&s) {
                if n != 0 {
                    return Err(Error::check(
                        "chevalley-property",
                        format!("nonzero N for non-root sum {} + {}", u, v),
                    ));
                }
                continue;
            }
            let expected = 1 + chain_down(system, u, v);
            if n.abs() != expected {
                return Err(Error::check(
                    "chevalley-property",
                    format!("|N({}, {})| = {} but the chain gives {}", u, v, n.abs(), expected),
                ));
            }
            if basis.n(v, u) != -n || basis.n(&u.negate(), &v.negate()) != -n {
                return Err(Error::check(
                    "chevalley-property",
                    format!("antisymmetry or negation fails at {}, {}", u, v),
                ));
            }
        }
    }
    Ok(())
}

fn jacobi_triple(basis: &ChevalleyBasis, x: &LieElt, y: &LieElt, z: &LieElt) -> bool {
    let mut total = basis.bracket(&basis.bracket(x, y), z);
    let t2 = basis.bracket(&basis.bracket(y, z), x);
    let t3 = basis.bracket(&basis.bracket(z, x), y);
    for t in [t2, t3] {
        total.cartan = linalg::add(&total.cartan, &t.cartan);
        for (r, c) in t.coeffs {
            total.add_root(r, c);
        }
    }
    total.is_zero()
}

/// Jacobi identity over every triple from the basis (root vectors plus
/// simple coroots).
pub fn jacobi_check_exhaustive(basis: &ChevalleyBasis) -> Result<()> {
    let elements = basis.basis_elements();
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate().skip(i) {
            for z in elements.iter().skip(j) {
                if !jacobi_triple(basis, x, y, z) {
                    return Err(Error::check(
                        "jacobi",
                        format!("Jacobi fails on a basis triple of {}", basis.system().label()),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Jacobi identity on `trials` random basis triples.
pub fn jacobi_check_sampled(basis: &ChevalleyBasis, seed: u64, trials: usize) -> Result<()> {
    let elements = basis.basis_elements();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let x = &elements[rng.gen_range(0..elements.len())];
        let y = &elements[rng.gen_range(0..elements.len())];
        let z = &elements[rng.gen_range(0..elements.len())];
        if !jacobi_triple(basis, x, y, z) {
            return Err(Error::check(
                "jacobi",
                format!("Jacobi fails on a sampled triple of {}", basis.system().label()),
            ));
        }
    }
    Ok(())
}

/// Bracket-level verification of the layer structure on a split reduced
/// system: the partial sums of the layers form an ideal filtration, brackets
/// of distinct layers land in the lower layer but avoid its center, brackets
/// within one layer close into the center, and the cascade root of each
/// layer is central in all higher layers.
pub fn verify_setup(system: &RestrictedRootSystem, decomp: &CascadeDecomposition) -> Result<()> {
    let basis = ChevalleyBasis::new(system)?;
    let members = |r: usize| -> Vec<Root> {
        let mut v = decomp.layers[r].clone();
        v.push(decomp.betas[r].clone());
        v
    };
    for r in 0..decomp.m() {
        for s in 0..=r {
            for u in members(r) {
                for v in members(s) {
                    let z = basis.bracket(&basis.root_elt(&u), &basis.root_elt(&v));
                    if v == decomp.betas[s] {
                        // a layer's center commutes with that layer and all
                        // higher ones (not with lower layers)
                        if !z.is_zero() {
                            return Err(Error::check(
                                "setup-brackets",
                                format!("[{} , {}] != 0 breaks centrality", u, v),
                            ));
                        }
                        continue;
                    }
                    if z.is_zero() {
                        continue;
                    }
                    let sum = Root::new(linalg::add(u.coords(), v.coords()));
                    if s < r {
                        if decomp.layer_of(&sum) != Some(s) || sum == decomp.betas[s] {
                            return Err(Error::check(
                                "setup-brackets",
                                format!("[{} , {}] leaves layer {} or hits its center", u, v, s + 1),
                            ));
                        }
                    } else if sum != decomp.betas[r] {
                        return Err(Error::check(
                            "setup-brackets",
                            format!("[{} , {}] is not central in layer {}", u, v, r + 1),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Trace of ad(xi) on each layer, xi given by its values on the simple
/// roots.  Validates the per-layer identity: trace = exponent * beta_r(xi).
pub fn ad_layer_traces(
    system: &RestrictedRootSystem,
    decomp: &CascadeDecomposition,
    xi: &[Rat],
) -> Result<Vec<Rat>> {
    if xi.len() != system.rank() {
        return Err(Error::domain("ad_layer_traces", "expected one value per simple root"));
    }
    let value = |r: &Root| -> Rat {
        dot(&system.expansion_of(r).expect("root of the system"), xi)
    };
    let exps = decomp.modular_exponents();
    let mut traces = Vec::with_capacity(decomp.m());
    for r in 0..decomp.m() {
        let mut t: Rat = decomp.layers[r]
            .iter()
            .map(|a| linalg::rat(system.mult_of(a).unwrap() as i64) * value(a))
            .sum();
        t += linalg::rat(system.mult_of(&decomp.betas[r]).unwrap() as i64)
            * value(&decomp.betas[r]);
        let expected = &exps[r] * value(&decomp.betas[r]);
        if t != expected {
            return Err(Error::check(
                "modular-weights",
                format!("layer {} trace {} differs from {}", r + 1, t, expected),
            ));
        }
        traces.push(t);
    }
    Ok(traces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade;
    use crate::linalg::rat;
    use crate::realform;
    use crate::rootsys::pairing_raw;

    fn root(coords: &[i64]) -> Root {
        Root::new(coords.iter().map(|&c| rat(c)).collect())
    }

    fn sys(label: &str) -> RestrictedRootSystem {
        RestrictedRootSystem::generate(label.parse().unwrap()).unwrap()
    }

    #[test]
    fn a2_constants() {
        let s = sys("A2");
        let b = ChevalleyBasis::new(&s).unwrap();
        let lo = root(&[0, 1, -1]);
        let hi = root(&[1, -1, 0]);
        assert_eq!(b.n(&lo, &hi), 1);
        assert_eq!(b.n(&hi, &lo), -1);
        assert_eq!(b.n(&lo.negate(), &hi.negate()), -1);
        assert_eq!(b.n(&hi, &hi), 0);
    }

    #[test]
    fn c2_long_chain_constant() {
        let s = sys("C2");
        let b = ChevalleyBasis::new(&s).unwrap();
        assert_eq!(b.n(&root(&[1, -1]), &root(&[1, 1])), 2);
        assert_eq!(b.n(&root(&[0, 2]), &root(&[1, -1])), 1);
    }

    #[test]
    fn g2_triple_chain_constant() {
        let s = sys("G2");
        let b = ChevalleyBasis::new(&s).unwrap();
        // chain of length 3 through the short simple root
        let s1 = root(&[1, -1, 0]);
        let mid = root(&[0, -1, 1]);
        assert_eq!(b.n(&s1, &mid).abs(), 3);
        chevalley_property_check(&b).unwrap();
    }

    #[test]
    fn cartan_acts_by_pairing() {
        let s = sys("A2");
        let b = ChevalleyBasis::new(&s).unwrap();
        let h = b.coroot_elt(&root(&[1, -1, 0]));
        let x = b.root_elt(&root(&[0, 1, -1]));
        let out = b.bracket(&h, &x);
        let expected_coeff = pairing_raw(root(&[0, 1, -1]).coords(), &root(&[1, -1, 0]));
        assert_eq!(expected_coeff, rat(-1));
        assert_eq!(out.coeffs[&root(&[0, 1, -1])], rat(-1));
        // opposite root vectors close onto the coroot
        let e = b.root_elt(&root(&[1, -1, 0]));
        let f = b.root_elt(&root(&[-1, 1, 0]));
        let hh = b.bracket(&e, &f);
        assert_eq!(hh.cartan, vec![rat(1), rat(-1), rat(0)]);
        assert!(hh.coeffs.is_empty());
    }

    #[test]
    fn chevalley_property_small_systems() {
        for label in ["A3", "B3", "C3", "D4", "G2"] {
            let s = sys(label);
            let b = ChevalleyBasis::new(&s).unwrap();
            chevalley_property_check(&b).unwrap();
        }
    }

    #[test]
    fn jacobi_exhaustive_small_systems() {
        for label in ["A2", "A3", "B3", "C3", "G2"] {
            let s = sys(label);
            let b = ChevalleyBasis::new(&s).unwrap();
            jacobi_check_exhaustive(&b).unwrap();
        }
    }

    #[test]
    fn non_split_rejected() {
        assert!(ChevalleyBasis::new(&sys("BC2")).is_err());
        let complex = realform::load_form("sl(3,C)").unwrap().realize().unwrap();
        assert!(ChevalleyBasis::new(&complex).is_err());
    }

    #[test]
    fn setup_brackets_hold() {
        for label in ["A3", "A5", "B4", "C3", "D4", "G2", "F4"] {
            let s = sys(label);
            let dec = cascade::decompose(&s).unwrap();
            verify_setup(&s, &dec).unwrap();
        }
    }

    #[test]
    fn ad_traces_a3() {
        let s = sys("A3");
        let dec = cascade::decompose(&s).unwrap();
        let traces = ad_layer_traces(&s, &dec, &[rat(1), rat(0), rat(0)]).unwrap();
        assert_eq!(traces, vec![rat(3), rat(0)]);
        let traces = ad_layer_traces(&s, &dec, &[rat(0), rat(1), rat(0)]).unwrap();
        assert_eq!(traces, vec![rat(3), rat(1)]);
    }

    #[test]
    fn ad_traces_bc_forms() {
        let sys = realform::load_form("su(3,2)").unwrap().realize().unwrap();
        let dec = cascade::decompose(&sys).unwrap();
        // beta_1 = 2 e1 = 2(s1 + s2), beta_2 = 2 e2 = 2 s2 over simples
        // s1 = e1 - e2, s2 = e2; evaluation (1, 0) gives beta values (2, 0).
        let traces = ad_layer_traces(&sys, &dec, &[rat(1), rat(0)]).unwrap();
        assert_eq!(traces, vec![rat(8), rat(0)]);
    }
}
