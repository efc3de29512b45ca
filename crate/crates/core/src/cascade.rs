//! The cascade of strongly orthogonal roots and the induced layer partition
//! of the positive roots.
//!
//! Step r+1 picks a maximal positive root orthogonal to the roots already
//! chosen, maximality taken in the partial order "difference is a nonnegative
//! combination of simples".  When several candidates are maximal the
//! lexicographically largest coordinate vector wins; that tie-break is this
//! crate's convention and is part of the stable output contract.

use crate::error::{Error, Result};
use crate::linalg::{self, dot, Vector};
use crate::rootsys::{pairing_raw, reflect_raw, RestrictedRootSystem, Root};
use crate::Rat;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

pub struct CascadeDecomposition {
    /// Cascade roots beta_1..beta_m in construction order.
    pub betas: Vec<Root>,
    /// Layer r without beta_r, descending lexicographic.
    pub layers: Vec<Vec<Root>>,
    /// d_r = (sum of multiplicities over layer r) / 2.  Half-integral values
    /// are representable; they arise only for multiplicity assignments that
    /// no real form produces.
    pub d: Vec<Rat>,
    /// dim z_r = mult(beta_r).
    pub dim_z: Vec<u64>,
    /// dim l_r = 2 d_r + dim z_r.
    pub dim_l: Vec<u64>,
    /// Multiplicity-weighted dimension of the full nilradical.
    pub dim_n: u64,
    /// Sum of the dim z_r: the dimension of the quasi-center.
    pub dim_s: u64,
    layer_of: HashMap<Root, usize>,
}

impl CascadeDecomposition {
    pub fn m(&self) -> usize {
        self.betas.len()
    }

    /// Layer index of a positive root (cascade roots belong to their own
    /// layer).
    pub fn layer_of(&self, r: &Root) -> Option<usize> {
        self.layer_of.get(r).copied()
    }

    /// (dim l_r + dim z_r) / 2, the weight of the modular function on layer r.
    pub fn modular_exponents(&self) -> Vec<Rat> {
        self.d
            .iter()
            .zip(&self.dim_z)
            .map(|(d, &z)| d + linalg::rat(z as i64))
            .collect()
    }

    /// True when every d_r (equivalently every modular exponent) is integral.
    pub fn integrality_ok(&self) -> bool {
        self.d.iter().all(|d| d.is_integer())
    }

    /// 2^{sum d_r} * prod d_r!, defined only when the d_r are integers.
    pub fn c_constant(&self) -> Result<BigUint> {
        if !self.integrality_ok() {
            return Err(Error::domain(
                "c_constant",
                "some d_r is not an integer, the combinatorial constant is undefined",
            ));
        }
        let ds: Vec<u64> = self.d.iter().map(|d| d.to_integer().try_into().unwrap()).collect();
        let total: u64 = ds.iter().sum();
        let mut c = BigUint::one() << total;
        for d in ds {
            for k in 2..=d {
                c *= BigUint::from(k);
            }
        }
        Ok(c)
    }

    /// Degree of the full Pfaffian polynomial: sum d_r.
    pub fn pf_degree(&self) -> Rat {
        self.d.iter().sum()
    }
}

/// Construct the cascade for `system`.
pub fn build_cascade(system: &RestrictedRootSystem) -> Vec<Root> {
    let mut betas: Vec<Root> = Vec::new();
    let mut candidates: Vec<Root> = system.positives().to_vec();
    while !candidates.is_empty() {
        let maximal: Vec<&Root> = candidates
            .iter()
            .filter(|a| !candidates.iter().any(|g| *g != **a && system.ge(g, a)))
            .collect();
        let beta = (*maximal.iter().max().expect("nonempty candidate set")).clone();
        candidates.retain(|a| dot(a.coords(), beta.coords()).is_zero());
        betas.push(beta);
    }
    betas
}

/// Partition the positive roots into layers over a given cascade and collect
/// the layer dimensions.  Validates mutual strong orthogonality of the
/// cascade and completeness of the partition.
pub fn build_layers(
    system: &RestrictedRootSystem,
    betas: &[Root],
) -> Result<CascadeDecomposition> {
    for (i, bi) in betas.iter().enumerate() {
        if !system.is_positive(bi.coords()) {
            return Err(Error::domain("build_layers", format!("{} is not a positive root", bi)));
        }
        for bj in betas.iter().skip(i + 1) {
            if !dot(bi.coords(), bj.coords()).is_zero() {
                return Err(Error::check(
                    "strong-orthogonality",
                    format!("{} and {} are not orthogonal", bi, bj),
                ));
            }
            let sum = linalg::add(bi.coords(), bj.coords());
            let diff = linalg::sub(bi.coords(), bj.coords());
            if system.is_root(&sum) || system.is_root(&diff) {
                return Err(Error::check(
                    "strong-orthogonality",
                    format!("{} +- {} is a root", bi, bj),
                ));
            }
        }
    }

    let mut layer_of: HashMap<Root, usize> = HashMap::new();
    for (r, b) in betas.iter().enumerate() {
        layer_of.insert(b.clone(), r);
    }
    let mut layers: Vec<Vec<Root>> = Vec::with_capacity(betas.len());
    for (r, b) in betas.iter().enumerate() {
        let mut layer = Vec::new();
        for alpha in system.positives() {
            if layer_of.contains_key(alpha) {
                continue;
            }
            let rem = linalg::sub(b.coords(), alpha.coords());
            if system.is_positive(&rem) {
                layer.push(alpha.clone());
            }
        }
        for a in &layer {
            layer_of.insert(a.clone(), r);
        }
        layers.push(layer);
    }

    let unassigned: Vec<&Root> =
        system.positives().iter().filter(|a| !layer_of.contains_key(a)).collect();
    if !unassigned.is_empty() {
        let list: Vec<String> = unassigned.iter().map(|r| r.to_string()).collect();
        return Err(Error::check(
            "layer-partition",
            format!("positive roots outside every layer: {}", list.join(", ")),
        ));
    }

    let mut d = Vec::new();
    let mut dim_z = Vec::new();
    let mut dim_l = Vec::new();
    for (r, b) in betas.iter().enumerate() {
        let weight: u64 = layers[r].iter().map(|a| system.mult_of(a).unwrap() as u64).sum();
        let z = system.mult_of(b).unwrap() as u64;
        d.push(linalg::ratio(weight as i64, 2));
        dim_z.push(z);
        dim_l.push(weight + z);
    }
    let dim_s: u64 = dim_z.iter().sum();
    let dim_n = system.dim_n();
    debug_assert_eq!(dim_n, dim_l.iter().sum::<u64>());

    Ok(CascadeDecomposition { betas: betas.to_vec(), layers, d, dim_z, dim_l, dim_n, dim_s, layer_of })
}

/// Cascade plus layers in one call.
pub fn decompose(system: &RestrictedRootSystem) -> Result<CascadeDecomposition> {
    build_layers(system, &build_cascade(system))
}

/// The layer involution alpha -> beta_r - alpha, realized as -s_{beta_r}.
pub fn sigma_r(decomp: &CascadeDecomposition, r: usize, alpha: &Root) -> Result<Root> {
    if decomp.layer_of(alpha) != Some(r) {
        return Err(Error::domain("sigma_r", format!("{} is not in layer {}", alpha, r + 1)));
    }
    let reflected = reflect_raw(alpha.coords(), &decomp.betas[r]);
    Ok(Root::new(linalg::neg(&reflected)))
}

/// Within each layer: sigma_r is an involution of the layer, alpha +
/// sigma_r(alpha) = beta_r, and any root sum of two layer members is beta_r.
pub fn check_pairing(system: &RestrictedRootSystem, decomp: &CascadeDecomposition) -> Result<()> {
    for (r, beta) in decomp.betas.iter().enumerate() {
        for alpha in &decomp.layers[r] {
            let image = sigma_r(decomp, r, alpha)?;
            if decomp.layer_of(&image) != Some(r) || image == *beta {
                return Err(Error::check(
                    "layer-pairing",
                    format!("sigma_{}({}) = {} leaves the layer", r + 1, alpha, image),
                ));
            }
            let back = sigma_r(decomp, r, &image)?;
            if back != *alpha {
                return Err(Error::check(
                    "layer-pairing",
                    format!("sigma_{} is not an involution at {}", r + 1, alpha),
                ));
            }
            let sum = linalg::add(alpha.coords(), image.coords());
            if sum != beta.coords() {
                return Err(Error::check(
                    "layer-pairing",
                    format!("{} + sigma({}) != beta_{}", alpha, alpha, r + 1),
                ));
            }
        }
        for a in &decomp.layers[r] {
            for b in &decomp.layers[r] {
                let sum = linalg::add(a.coords(), b.coords());
                if system.is_root(&sum) && sum != beta.coords() {
                    return Err(Error::check(
                        "layer-pairing",
                        format!("{} + {} is a root distinct from beta_{}", a, b, r + 1),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Layer r together with beta_r is exactly the set of roots (positive or
/// negative) orthogonal to the earlier cascade roots and pairing strictly
/// positively with beta_r.
pub fn check_layer_scan(system: &RestrictedRootSystem, decomp: &CascadeDecomposition) -> Result<()> {
    for (r, beta) in decomp.betas.iter().enumerate() {
        let mut expected: Vec<Root> = decomp.layers[r].clone();
        expected.push(beta.clone());
        expected.sort();
        let mut scanned: Vec<Root> = system
            .roots()
            .iter()
            .filter(|a| {
                decomp.betas[..r].iter().all(|b| dot(a.coords(), b.coords()).is_zero())
                    && dot(a.coords(), beta.coords()).is_positive()
            })
            .cloned()
            .collect();
        scanned.sort();
        if scanned != expected {
            return Err(Error::check(
                "layer-scan",
                format!(
                    "layer {} of {}: scan gives {} roots, layer has {}",
                    r + 1,
                    system.label(),
                    scanned.len(),
                    expected.len()
                ),
            ));
        }
    }
    Ok(())
}

/// Apply the product of the cascade reflections to a vector.  The cascade
/// roots are mutually orthogonal, so the order of the factors is immaterial.
pub fn w0_apply(betas: &[Root], v: &[Rat]) -> Vector {
    let mut out = v.to_vec();
    for b in betas {
        out = reflect_raw(&out, b);
    }
    out
}

/// The product of the cascade reflections maps every positive root to a
/// negative one, and the partial products already do so on the layers they
/// cover.
pub fn longest_element_check(
    system: &RestrictedRootSystem,
    decomp: &CascadeDecomposition,
) -> Result<()> {
    for alpha in system.positives() {
        let image = w0_apply(&decomp.betas, alpha.coords());
        let neg = linalg::neg(&image);
        if !system.is_positive(&neg) {
            return Err(Error::check(
                "longest-element",
                format!("w0({}) is not a negative root in {}", alpha, system.label()),
            ));
        }
    }
    for r in 0..decomp.m() {
        let partial = &decomp.betas[..=r];
        for s in 0..=r {
            let mut members: Vec<&Root> = decomp.layers[s].iter().collect();
            members.push(&decomp.betas[s]);
            for alpha in members {
                let image = w0_apply(partial, alpha.coords());
                let neg = linalg::neg(&image);
                if !system.is_positive(&neg) {
                    return Err(Error::check(
                        "longest-element",
                        format!(
                            "partial product through step {} fails on {} (layer {})",
                            r + 1,
                            alpha,
                            s + 1
                        ),
                    ));
                }
            }
        }
    }
    Ok(())
}

pub struct NuDecomposition {
    /// Integer coefficients pairing(nu, beta_r).
    pub coefficients: Vec<BigInt>,
    /// sum_r coefficient_r * beta_r, equal to nu - w0(nu).
    pub sum: Vector,
}

/// For a dominant integral weight nu, the vector nu - w0(nu) expanded over
/// the cascade.  Errors when nu is not dominant integral or (never observed)
/// when the expansion identity fails.
pub fn nu_plus_nu_star(
    system: &RestrictedRootSystem,
    decomp: &CascadeDecomposition,
    nu: &[Rat],
) -> Result<NuDecomposition> {
    for s in system.simples() {
        let p = pairing_raw(nu, s);
        if !p.is_integer() || p.is_negative() {
            return Err(Error::domain(
                "nu_plus_nu_star",
                format!("weight is not dominant integral: pairing with {} is {}", s, p),
            ));
        }
    }
    let mut coefficients = Vec::new();
    let mut sum = linalg::zeros(system.ambient_dim());
    for b in &decomp.betas {
        let k = pairing_raw(nu, b);
        if !k.is_integer() || k.is_negative() {
            return Err(Error::check(
                "cascade-expansion",
                format!("pairing with {} is {}, not a nonnegative integer", b, k),
            ));
        }
        sum = linalg::add(&sum, &linalg::scale(b.coords(), &k));
        coefficients.push(k.to_integer());
    }
    let expected = linalg::sub(nu, &w0_apply(&decomp.betas, nu));
    if sum != expected {
        return Err(Error::check(
            "cascade-expansion",
            "sum over cascade does not equal nu - w0(nu)".to_string(),
        ));
    }
    Ok(NuDecomposition { coefficients, sum })
}

/// Basis of the subspace of the simple-root span annihilated by every
/// cascade root.  Vectors are primitive-integer normalized, ordered by the
/// free column of the reduced system.
pub fn a_diamond(system: &RestrictedRootSystem, decomp: &CascadeDecomposition) -> Vec<Vector> {
    let rank = system.rank();
    let m: Vec<Vector> = decomp
        .betas
        .iter()
        .map(|b| system.simples().iter().map(|s| dot(b.coords(), s.coords())).collect())
        .collect();
    linalg::nullspace(&m, rank)
        .into_iter()
        .map(|coeffs| {
            let mut v = linalg::zeros(system.ambient_dim());
            for (c, s) in coeffs.iter().zip(system.simples()) {
                v = linalg::add(&v, &linalg::scale(s.coords(), c));
            }
            linalg::primitive(&v)
        })
        .collect()
}

/// Multiplicity-weighted sum of the positive roots equals the cascade
/// combination with the modular exponents as coefficients.
pub fn check_two_rho(system: &RestrictedRootSystem, decomp: &CascadeDecomposition) -> Result<()> {
    let mut lhs = linalg::zeros(system.ambient_dim());
    for a in system.positives() {
        let m = linalg::rat(system.mult_of(a).unwrap() as i64);
        lhs = linalg::add(&lhs, &linalg::scale(a.coords(), &m));
    }
    let mut rhs = linalg::zeros(system.ambient_dim());
    for (w, b) in decomp.modular_exponents().iter().zip(&decomp.betas) {
        rhs = linalg::add(&rhs, &linalg::scale(b.coords(), w));
    }
    if lhs != rhs {
        return Err(Error::check(
            "two-rho",
            format!("weighted positive-root sum disagrees with cascade combination in {}", system.label()),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};
    use crate::rootsys::CartanLabel;

    fn root(coords: &[i64]) -> Root {
        Root::new(coords.iter().map(|&c| rat(c)).collect())
    }

    fn sys(label: &str) -> RestrictedRootSystem {
        RestrictedRootSystem::generate(label.parse().unwrap()).unwrap()
    }

    #[test]
    fn a3_cascade_and_layers() {
        let s = sys("A3");
        let betas = build_cascade(&s);
        assert_eq!(betas, vec![root(&[1, 0, 0, -1]), root(&[0, 1, -1, 0])]);
        let dec = build_layers(&s, &betas).unwrap();
        assert_eq!(
            dec.layers[0],
            vec![root(&[1, 0, -1, 0]), root(&[1, -1, 0, 0]), root(&[0, 1, 0, -1]), root(&[0, 0, 1, -1])]
        );
        assert!(dec.layers[1].is_empty());
        assert_eq!(dec.d, vec![rat(2), rat(0)]);
        assert_eq!(dec.dim_l, vec![5, 1]);
        assert_eq!(dec.dim_z, vec![1, 1]);
        assert_eq!(dec.c_constant().unwrap(), 8u32.into());
        assert_eq!(dec.modular_exponents(), vec![rat(3), rat(1)]);
        assert_eq!(dec.dim_n, 6);
        assert_eq!(dec.dim_s, 2);
    }

    #[test]
    fn c2_cascade_and_layers() {
        let s = sys("C2");
        let dec = decompose(&s).unwrap();
        assert_eq!(dec.betas, vec![root(&[2, 0]), root(&[0, 2])]);
        assert_eq!(dec.layers[0], vec![root(&[1, 1]), root(&[1, -1])]);
        assert_eq!(dec.d, vec![rat(1), rat(0)]);
        assert_eq!(dec.c_constant().unwrap(), 2u32.into());
        assert_eq!(dec.modular_exponents(), vec![rat(2), rat(1)]);
    }

    #[test]
    fn b3_tie_break_is_lexicographic() {
        let s = sys("B3");
        let betas = build_cascade(&s);
        assert_eq!(betas, vec![root(&[1, 1, 0]), root(&[1, -1, 0]), root(&[0, 0, 1])]);
        let dec = build_layers(&s, &betas).unwrap();
        assert_eq!(dec.d, vec![rat(3), rat(0), rat(0)]);
        assert_eq!(dec.dim_l, vec![7, 1, 1]);
    }

    #[test]
    fn g2_cascade() {
        let s = sys("G2");
        let dec = decompose(&s).unwrap();
        assert_eq!(dec.betas, vec![root(&[-1, -1, 2]), root(&[1, -1, 0])]);
        assert_eq!(dec.d, vec![rat(2), rat(0)]);
        assert_eq!(dec.c_constant().unwrap(), 8u32.into());
    }

    #[test]
    fn d2_reducible_cascade() {
        let s = sys("D2");
        let dec = decompose(&s).unwrap();
        assert_eq!(dec.betas, vec![root(&[1, 1]), root(&[1, -1])]);
        assert!(dec.layers.iter().all(|l| l.is_empty()));
        assert_eq!(dec.c_constant().unwrap(), 1u32.into());
    }

    #[test]
    fn cascade_lengths() {
        let cases = [
            ("A1", 1),
            ("A2", 1),
            ("A3", 2),
            ("A7", 4),
            ("B2", 2),
            ("B7", 7),
            ("C7", 7),
            ("D4", 4),
            ("D5", 4),
            ("D6", 6),
            ("D7", 6),
            ("BC3", 3),
            ("G2", 2),
            ("F4", 4),
            ("E6", 4),
            ("E7", 7),
            ("E8", 8),
        ];
        for (label, m) in cases {
            assert_eq!(build_cascade(&sys(label)).len(), m, "{}", label);
        }
    }

    #[test]
    fn cascade_roots_are_nonmultipliable() {
        for label in ["A3", "B3", "BC2", "BC3", "C3", "G2"] {
            let s = sys(label);
            let nm = s.nonmultipliable_positives();
            for b in build_cascade(&s) {
                assert!(nm.contains(&b), "{} {}", label, b);
            }
        }
    }

    #[test]
    fn bc1_with_real_multiplicities() {
        let label: CartanLabel = "BC1".parse().unwrap();
        let s = RestrictedRootSystem::with_multiplicities(label, |r| {
            if r.norm_sq() == rat(1) { 2 } else { 1 }
        })
        .unwrap();
        let dec = decompose(&s).unwrap();
        assert_eq!(dec.betas, vec![root(&[2])]);
        assert_eq!(dec.layers[0], vec![root(&[1])]);
        assert_eq!(dec.d, vec![rat(1)]);
        assert_eq!(dec.dim_l, vec![3]);
        assert_eq!(dec.modular_exponents(), vec![rat(2)]);
        assert_eq!(dec.c_constant().unwrap(), 2u32.into());
        check_pairing(&s, &dec).unwrap();
        check_layer_scan(&s, &dec).unwrap();
    }

    #[test]
    fn split_bc2_violates_integrality() {
        // All multiplicities 1 puts three roots in the first layer; d_1 is
        // then half-integral and the combinatorial constant is undefined.
        let s = sys("BC2");
        let dec = decompose(&s).unwrap();
        assert_eq!(dec.d[0], ratio(3, 2));
        assert!(!dec.integrality_ok());
        assert!(dec.c_constant().is_err());
    }

    #[test]
    fn partition_and_identities_across_catalog() {
        for label in ["A1", "A5", "B4", "C3", "D4", "BC2", "G2", "F4", "E6"] {
            let s = sys(label);
            let dec = decompose(&s).unwrap();
            // Partition: every positive root in exactly one layer.
            let total: usize =
                dec.layers.iter().map(|l| l.len()).sum::<usize>() + dec.betas.len();
            assert_eq!(total, s.positives().len(), "{}", label);
            // sum d_r = (dim n - dim s) / 2.
            let sum_d: Rat = dec.d.iter().sum();
            assert_eq!(sum_d, ratio((dec.dim_n - dec.dim_s) as i64, 2), "{}", label);
            check_pairing(&s, &dec).unwrap();
            check_layer_scan(&s, &dec).unwrap();
            longest_element_check(&s, &dec).unwrap();
            check_two_rho(&s, &dec).unwrap();
        }
    }

    #[test]
    fn nu_plus_nu_star_worked_examples() {
        let a3 = sys("A3");
        let dec = decompose(&a3).unwrap();
        let w = a3.fundamental_weights();
        let out = nu_plus_nu_star(&a3, &dec, &w[0]).unwrap();
        assert_eq!(out.coefficients, vec![1.into(), 0.into()]);
        assert_eq!(out.sum, root(&[1, 0, 0, -1]).coords());
        // omega_1 + omega_3 = e1 - e4.
        let dual_sum = linalg::add(&w[0], &w[2]);
        assert_eq!(dual_sum, root(&[1, 0, 0, -1]).coords());

        let c2 = sys("C2");
        let dec2 = decompose(&c2).unwrap();
        let nu: Vector = vec![rat(1), rat(0)];
        let out2 = nu_plus_nu_star(&c2, &dec2, &nu).unwrap();
        assert_eq!(out2.coefficients, vec![1.into(), 0.into()]);
        assert_eq!(out2.sum, root(&[2, 0]).coords());
    }

    #[test]
    fn nu_rejects_non_dominant() {
        let a3 = sys("A3");
        let dec = decompose(&a3).unwrap();
        let nu: Vector = vec![rat(0), rat(1), rat(0), rat(-1)];
        // pairing with e1 - e2 is negative
        assert!(nu_plus_nu_star(&a3, &dec, &nu).is_err());
    }

    #[test]
    fn a_diamond_a3() {
        let s = sys("A3");
        let dec = decompose(&s).unwrap();
        let basis = a_diamond(&s, &dec);
        assert_eq!(basis, vec![vec![rat(1), rat(-1), rat(-1), rat(1)]]);
    }

    #[test]
    fn a_diamond_dims() {
        // rank minus cascade length when the cascade is linearly
        // independent, which it always is (mutually orthogonal).
        for (label, dim) in [("A3", 1), ("A5", 2), ("B3", 0), ("C4", 0), ("D5", 1), ("E6", 2)] {
            let s = sys(label);
            let dec = decompose(&s).unwrap();
            assert_eq!(a_diamond(&s, &dec).len(), dim, "{}", label);
        }
    }

    #[test]
    fn sigma_r_involution_examples() {
        let s = sys("A3");
        let dec = decompose(&s).unwrap();
        let img = sigma_r(&dec, 0, &root(&[1, -1, 0, 0])).unwrap();
        assert_eq!(img, root(&[0, 1, 0, -1]));
        assert!(sigma_r(&dec, 1, &root(&[1, -1, 0, 0])).is_err());
    }
}
