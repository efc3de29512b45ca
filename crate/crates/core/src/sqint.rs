//! Floating-point verification of the square-integrability constants on
//! the low-dimensional Heisenberg groups.
//!
//! The group H_d = exp(span(X_1..X_d, Y_1..Y_d, Z)) with [X_i, Y_i] = Z
//! carries, for each nonzero lambda, the irreducible representation
//!
//! ```text
//! (pi_lambda(exp(pX + qY + zZ)) phi)(t)
//!     = exp(i lambda (z + q.t + p.q/2)) phi(t + p)
//! ```
//!
//! on L2(R^d).  For d = 2 this is exactly the first-layer algebra of the
//! rank-3 special-linear cascade (layer dimension count 2, constant
//! 2^2 * 2! = 8, density lambda^2), which is what ties these numeric
//! checks back to the exact side of the crate.
//!
//! Conventions used throughout, fixed once so every constant below is
//! meaningful: the Fourier transform is
//! fhat(xi) = integral f(x) exp(-i xi x) dx, and the matrix coefficient
//! of a pair of states is c(p, q) = <pi_lambda(p, q, 0) u, v>.  The
//! verified identities, in these conventions:
//!
//! ```text
//! square integrability over H_d / Z:
//!     |lambda|^d * integral |c|^2 dp dq = (2 pi)^d ||u||^2 ||v||^2
//!     (formal degree (|lambda| / 2 pi)^d; |lambda|^d is the Pfaffian
//!      density in these coordinates)
//!
//! distribution character, from the kernel of pi_lambda(f):
//!     trace pi_lambda(f)
//!         = (2 pi)^-d |lambda|^-d integral fhat(mu, -lambda) dmu
//!     (mu over the span of the X*, Y* coordinates)
//!
//! Plancherel inversion for f smooth with small tails:
//!     f(identity) = (2 pi)^-(d+1) integral trace pi_lambda(f)
//!                   |lambda|^d dlambda
//! ```
//!
//! Everything is computed by direct quadrature (trapezoid rules on
//! intervals chosen so the discarded tails are below 1e-12, midpoint on
//! the lambda line so the puncture at zero is never sampled).  Grids are
//! refined by doubling until two consecutive refinements agree; a result
//! that keeps drifting is an error, never a silently accepted number.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;

/// Largest relative drift tolerated between consecutive grid refinements.
const CONV_TOL: f64 = 5.0e-8;

fn c_from_polar(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

// ---------------------------------------------------------------------------
// Hermite functions

/// Values h_0(t) .. h_{count-1}(t) of the L2-normalized Hermite functions,
/// by the stable three-term recurrence
/// h_n = sqrt(2/n) t h_{n-1} - sqrt((n-1)/n) h_{n-2}.
pub fn hermite_values(count: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let h0 = PI.powf(-0.25) * (-0.5 * t * t).exp();
    out.push(h0);
    if count == 1 {
        return out;
    }
    out.push((2.0f64).sqrt() * t * h0);
    for n in 2..count {
        let nf = n as f64;
        let next = (2.0 / nf).sqrt() * t * out[n - 1] - ((nf - 1.0) / nf).sqrt() * out[n - 2];
        out.push(next);
    }
    out
}

// ---------------------------------------------------------------------------
// Quadrature

/// Symmetric trapezoid grid on [-half, half] with n subintervals.
#[derive(Clone, Copy, Debug)]
struct Grid {
    half: f64,
    n: usize,
}

impl Grid {
    fn step(&self) -> f64 {
        2.0 * self.half / self.n as f64
    }

    fn point(&self, j: usize) -> f64 {
        -self.half + j as f64 * self.step()
    }

    fn weight(&self, j: usize) -> f64 {
        let h = self.step();
        if j == 0 || j == self.n {
            0.5 * h
        } else {
            h
        }
    }

    fn integrate_c(&self, mut f: impl FnMut(f64) -> Complex64) -> Complex64 {
        (0..=self.n).map(|j| f(self.point(j)) * self.weight(j)).sum()
    }

    fn integrate_r(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        (0..=self.n).map(|j| f(self.point(j)) * self.weight(j)).sum()
    }

    /// integral f(t) exp(-i xi t) dt on this grid.
    fn fourier(&self, xi: f64, mut f: impl FnMut(f64) -> f64) -> Complex64 {
        let rot = c_from_polar(-xi * self.step());
        let mut phase = c_from_polar(-xi * self.point(0));
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..=self.n {
            acc += phase * (f(self.point(j)) * self.weight(j));
            phase *= rot;
        }
        acc
    }
}

/// Midpoint grid on [-half, half]; never samples the center, which is what
/// the lambda line needs.
#[derive(Clone, Copy, Debug)]
struct MidGrid {
    half: f64,
    n: usize,
}

impl MidGrid {
    fn step(&self) -> f64 {
        2.0 * self.half / self.n as f64
    }

    fn point(&self, j: usize) -> f64 {
        -self.half + (j as f64 + 0.5) * self.step()
    }

    fn integrate_r(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        let h = self.step();
        (0..self.n).map(|j| f(self.point(j)) * h).sum()
    }
}

/// Subinterval count resolving oscillations of the given angular frequency
/// over an interval of the given full width, with margin.
fn points_for(full_width: f64, freq: f64, scale: usize) -> usize {
    let base = (full_width * freq.max(1.0) / PI * 1.4).ceil() as usize + 32;
    base * scale
}

fn refine_c(op: &'static str, mut eval: impl FnMut(usize) -> Complex64) -> Result<Complex64> {
    let mut prev = eval(1);
    for scale in [2usize, 4] {
        let cur = eval(scale);
        if (cur - prev).norm() <= CONV_TOL * cur.norm().max(1e-9) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NonConvergent(format!("{}: quadrature value keeps drifting", op)))
}

fn refine_r(op: &'static str, mut eval: impl FnMut(usize) -> f64) -> Result<f64> {
    let mut prev = eval(1);
    for scale in [2usize, 4] {
        let cur = eval(scale);
        if (cur - prev).abs() <= CONV_TOL * cur.abs().max(1e-9) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NonConvergent(format!("{}: quadrature value keeps drifting", op)))
}

fn require_nonzero(lambda: f64) -> Result<()> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::domain("sqint", "lambda must be nonzero and finite".to_string()));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// States on the line

/// One-dimensional vectors used as arguments of the matrix coefficients.
#[derive(Clone, Copy, Debug)]
pub enum TestFunction {
    /// The k-th Hermite function.
    Hermite(usize),
    /// exp(-t^2 / (2 sigma^2)), not normalized; norms cancel in every ratio.
    Gaussian { sigma: f64 },
}

impl TestFunction {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            TestFunction::Hermite(k) => hermite_values(k + 1, t)[k],
            TestFunction::Gaussian { sigma } => (-t * t / (2.0 * sigma * sigma)).exp(),
        }
    }

    /// Half-width beyond which the function is below roughly 1e-12.
    fn extent(&self) -> f64 {
        match *self {
            TestFunction::Hermite(k) => (2.0 * k as f64 + 1.0).sqrt() + 9.0,
            TestFunction::Gaussian { sigma } => 9.0 * sigma + 1.0,
        }
    }

    /// Half-width of the essential frequency support.
    fn freq_extent(&self) -> f64 {
        match *self {
            TestFunction::Hermite(k) => (2.0 * k as f64 + 1.0).sqrt() + 4.0,
            TestFunction::Gaussian { sigma } => 9.0 / sigma + 1.0,
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            TestFunction::Hermite(k) => format!("hermite({})", k),
            TestFunction::Gaussian { sigma } => format!("gaussian(sigma={})", sigma),
        }
    }
}

/// (pi_lambda(p, q, z) phi)(t) for a 1-dimensional state given as a closure.
pub fn schroedinger_apply(
    lambda: f64,
    p: f64,
    q: f64,
    z: f64,
    phi: impl Fn(f64) -> f64,
    t: f64,
) -> Complex64 {
    c_from_polar(lambda * (z + q * t + p * q / 2.0)) * phi(t + p)
}

// ---------------------------------------------------------------------------
// Square-integrability: the coefficient norm ratio

/// |lambda| * integral |<pi_lambda(p,q) u, v>|^2 dp dq / (||u||^2 ||v||^2)
/// for d = 1.  The square-integrability relations say this is 2 pi for
/// every nonzero lambda and every pair of states.
pub fn coefficient_ratio(lambda: f64, u: TestFunction, v: TestFunction) -> Result<f64> {
    require_nonzero(lambda)?;
    let eu = u.extent();
    let ev = v.extent();
    let fu = u.freq_extent();
    let fv = v.freq_extent();
    let t_half = ev + 0.5;
    let p_half = eu + ev + 1.0;
    let q_half = (fu + fv + 5.0) / lambda.abs();

    refine_r("coefficient_ratio", |scale| {
        let t_grid = Grid {
            half: t_half,
            n: points_for(2.0 * t_half, lambda.abs() * q_half + fu + fv, scale),
        };
        let p_grid = Grid { half: p_half, n: points_for(2.0 * p_half, fu + fv, scale) };
        let q_grid = Grid {
            half: q_half,
            n: points_for(2.0 * q_half, lambda.abs() * t_half + 2.0, scale),
        };
        let norm_u = Grid { half: eu, n: points_for(2.0 * eu, fu, scale) }
            .integrate_r(|t| u.eval(t) * u.eval(t));
        let norm_v = Grid { half: ev, n: points_for(2.0 * ev, fv, scale) }
            .integrate_r(|t| v.eval(t) * v.eval(t));

        let mut total = 0.0;
        let mut g = vec![0.0f64; t_grid.n + 1];
        for jp in 0..=p_grid.n {
            let p = p_grid.point(jp);
            for (jt, slot) in g.iter_mut().enumerate() {
                let t = t_grid.point(jt);
                *slot = u.eval(t + p) * v.eval(t) * t_grid.weight(jt);
            }
            // The p.q/2 phase has modulus one and drops out of |c|^2.
            let mut inner = 0.0;
            for jq in 0..=q_grid.n {
                let q = q_grid.point(jq);
                let rot = c_from_polar(lambda * q * t_grid.step());
                let mut phase = c_from_polar(lambda * q * t_grid.point(0));
                let mut c = Complex64::new(0.0, 0.0);
                for &gj in &g {
                    c += phase * gj;
                    phase *= rot;
                }
                inner += c.norm_sqr() * q_grid.weight(jq);
            }
            total += inner * p_grid.weight(jp);
        }
        lambda.abs() * total / (norm_u * norm_v)
    })
}

// ---------------------------------------------------------------------------
// Characters

/// Product Gaussian test function on H_d:
/// f = prod exp(-p_a^2 / 2 sp_a^2) exp(-q_a^2 / 2 sq_a^2) exp(-z^2 / 2 sz^2),
/// so f(identity) = 1 exactly.
#[derive(Clone, Debug)]
pub struct GroupGaussian {
    pub sigma_p: Vec<f64>,
    pub sigma_q: Vec<f64>,
    pub sigma_z: f64,
}

impl GroupGaussian {
    pub fn new(sigma_p: Vec<f64>, sigma_q: Vec<f64>, sigma_z: f64) -> Result<Self> {
        if sigma_p.len() != sigma_q.len() || sigma_p.is_empty() {
            return Err(Error::domain(
                "sqint",
                "need one sigma_p and one sigma_q per Heisenberg axis".to_string(),
            ));
        }
        if sigma_p.iter().chain(&sigma_q).chain([&sigma_z]).any(|s| !s.is_finite() || *s <= 0.0) {
            return Err(Error::domain("sqint", "widths must be positive".to_string()));
        }
        Ok(GroupGaussian { sigma_p, sigma_q, sigma_z })
    }

    pub fn standard(d: usize) -> Self {
        GroupGaussian {
            sigma_p: vec![1.0; d],
            sigma_q: vec![1.0; d],
            sigma_z: 1.0,
        }
    }

    pub fn d(&self) -> usize {
        self.sigma_p.len()
    }

    fn zhat(&self, lambda: f64, scale: usize) -> Complex64 {
        let sz = self.sigma_z;
        let half = 9.0 * sz + 1.0;
        let grid = Grid { half, n: points_for(2.0 * half, lambda.abs() + 1.0, scale) };
        // fhat_z(-lambda) = integral exp(-z^2/2sz^2) exp(i lambda z) dz
        grid.fourier(-lambda, |z| (-z * z / (2.0 * sz * sz)).exp())
    }
}

fn gauss(sigma: f64) -> impl Fn(f64) -> f64 {
    move |x| (-x * x / (2.0 * sigma * sigma)).exp()
}

/// One tensor factor of the truncated operator trace: the sum over the
/// first `states` diagonal Hermite coefficients of the (p, q)-integral
/// against the axis Gaussians.
fn axis_factor(lambda: f64, sp: f64, sq: f64, states: usize, scale: usize) -> Complex64 {
    let t_half = (2.0 * states as f64 + 1.0).sqrt() + 9.0;
    let p_half = (9.0 * sp + 1.0).min(2.0 * t_half + 2.0);
    let q_half = 9.0 * sq + 1.0;
    let kernel_freq = 2.0 * (2.0 * states as f64 + 1.0).sqrt();
    let t_grid = Grid {
        half: t_half,
        n: points_for(2.0 * t_half, lambda.abs() * q_half + kernel_freq, scale),
    };
    let p_grid = Grid {
        half: p_half,
        n: points_for(2.0 * p_half, kernel_freq + lambda.abs() * q_half / 2.0, scale),
    };
    let q_grid = Grid {
        half: q_half,
        n: points_for(2.0 * q_half, lambda.abs() * (t_half + p_half / 2.0) + 2.0, scale),
    };
    let phi = gauss(sp);
    let psi = gauss(sq);

    // Hermite table over the t grid, reused for every p.
    let table: Vec<Vec<f64>> =
        (0..=t_grid.n).map(|j| hermite_values(states, t_grid.point(j))).collect();

    let mut total = Complex64::new(0.0, 0.0);
    let mut kernel = vec![0.0f64; t_grid.n + 1];
    for jp in 0..=p_grid.n {
        let p = p_grid.point(jp);
        for (jt, slot) in kernel.iter_mut().enumerate() {
            let t = t_grid.point(jt);
            let shifted = hermite_values(states, t + p);
            *slot = table[jt]
                .iter()
                .zip(&shifted)
                .map(|(a, b)| a * b)
                .sum::<f64>()
                * t_grid.weight(jt);
        }
        let mut inner = Complex64::new(0.0, 0.0);
        for jq in 0..=q_grid.n {
            let q = q_grid.point(jq);
            let rot = c_from_polar(lambda * q * t_grid.step());
            let mut phase = c_from_polar(lambda * q * t_grid.point(0));
            let mut s = Complex64::new(0.0, 0.0);
            for &kj in &kernel {
                s += phase * kj;
                phase *= rot;
            }
            inner += s * c_from_polar(lambda * p * q / 2.0) * (psi(q) * q_grid.weight(jq));
        }
        total += inner * (phi(p) * p_grid.weight(jp));
    }
    total
}

/// trace pi_lambda(f) summed over the first `states_per_axis` Hermite
/// functions of each axis.
pub fn operator_trace(lambda: f64, f: &GroupGaussian, states_per_axis: usize) -> Result<Complex64> {
    require_nonzero(lambda)?;
    refine_c("operator_trace", |scale| {
        let mut value = f.zhat(lambda, scale);
        for (sp, sq) in f.sigma_p.iter().zip(&f.sigma_q) {
            value *= axis_factor(lambda, *sp, *sq, states_per_axis, scale);
        }
        value
    })
}

/// integral over the flat coadjoint orbit:
/// (2 pi)^-d |lambda|^-d integral fhat(mu, -lambda) dmu, with the mu
/// integral factored along the axes.
pub fn orbit_trace(lambda: f64, f: &GroupGaussian) -> Result<Complex64> {
    require_nonzero(lambda)?;
    refine_c("orbit_trace", |scale| orbit_trace_at(lambda, f, scale))
}

fn orbit_trace_at(lambda: f64, f: &GroupGaussian, scale: usize) -> Complex64 {
    let d = f.d();
    let mut value = f.zhat(lambda, scale) / (TWO_PI * lambda.abs()).powi(d as i32);
    for sigma in f.sigma_p.iter().chain(&f.sigma_q) {
        value *= axis_spectral_mass(*sigma, scale);
    }
    value
}

/// integral over xi of the 1-dimensional transform of exp(-x^2/2 sigma^2),
/// both integrals by quadrature.
fn axis_spectral_mass(sigma: f64, scale: usize) -> Complex64 {
    let x_half = 9.0 * sigma + 1.0;
    let xi_half = 9.0 / sigma + 1.0;
    let x_grid = Grid { half: x_half, n: points_for(2.0 * x_half, xi_half, scale) };
    let xi_grid = Grid { half: xi_half, n: points_for(2.0 * xi_half, x_half, scale) };
    let g = gauss(sigma);
    xi_grid.integrate_c(|xi| x_grid.fourier(xi, &g))
}

pub struct CharacterComparison {
    pub lambda: f64,
    pub operator_value: Complex64,
    pub orbit_value: Complex64,
    pub rel_err: f64,
}

/// Both character computations side by side.  The operator path truncates
/// the trace after `states_per_axis` Hermite functions per axis; the orbit
/// path integrates the Fourier transform over the flat orbit.
pub fn character_comparison(
    lambda: f64,
    f: &GroupGaussian,
    states_per_axis: usize,
) -> Result<CharacterComparison> {
    let op = operator_trace(lambda, f, states_per_axis)?;
    let orbit = orbit_trace(lambda, f)?;
    let rel_err = (op - orbit).norm() / orbit.norm().max(1e-12);
    Ok(CharacterComparison { lambda, operator_value: op, orbit_value: orbit, rel_err })
}

// ---------------------------------------------------------------------------
// Plancherel inversion

pub struct InversionResult {
    /// (2 pi)^-(d+1) integral trace |lambda|^d dlambda.
    pub integral: f64,
    /// f at the identity, which the integral must reproduce.
    pub reference: f64,
    pub rel_err: f64,
}

/// Evaluates the inversion formula for the given product Gaussian and
/// compares with its value at the identity.  The lambda line uses a
/// midpoint rule, so the puncture at lambda = 0 is never evaluated; the
/// |lambda|^-d in the trace and the |lambda|^d density meet at every
/// sample exactly as in the formula.
pub fn plancherel_inversion(f: &GroupGaussian) -> Result<InversionResult> {
    let d = f.d();
    let lam_half = 9.0 / f.sigma_z + 1.0;
    let integral = refine_r("plancherel_inversion", |scale| {
        let lam_grid = MidGrid { half: lam_half, n: points_for(2.0 * lam_half, f.sigma_z, scale) };
        let line = lam_grid.integrate_r(|lambda| {
            let trace = orbit_trace_at(lambda, f, scale);
            // The trace of a positive-definite product Gaussian is real;
            // the imaginary part is quadrature noise and is dropped.
            trace.re * lambda.abs().powi(d as i32)
        });
        line / TWO_PI.powi(d as i32 + 1)
    })?;
    let reference = 1.0;
    Ok(InversionResult { integral, reference, rel_err: (integral - reference).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_functions_match_closed_forms() {
        for &t in &[0.0, 0.4, -1.3, 2.2] {
            let h = hermite_values(3, t);
            let h0 = PI.powf(-0.25) * (-0.5 * t * t).exp();
            assert!((h[0] - h0).abs() < 1e-14);
            assert!((h[1] - (2.0f64).sqrt() * t * h0).abs() < 1e-14);
            let h2 = (2.0 * t * t - 1.0) / (2.0f64).sqrt() * h0;
            assert!((h[2] - h2).abs() < 1e-13);
        }
    }

    #[test]
    fn hermite_functions_are_orthonormal() {
        let grid = Grid { half: 14.0, n: 600 };
        for j in 0..5 {
            for k in 0..5 {
                let v = grid.integrate_r(|t| {
                    let h = hermite_values(5, t);
                    h[j] * h[k]
                });
                let expect = if j == k { 1.0 } else { 0.0 };
                assert!((v - expect).abs() < 1e-10, "({}, {}) -> {}", j, k, v);
            }
        }
    }

    #[test]
    fn fourier_of_gaussian_matches_closed_form() {
        let grid = Grid { half: 12.0, n: 700 };
        for &xi in &[0.0, 0.7, 2.0] {
            let v = grid.fourier(xi, |t| (-0.5 * t * t).exp());
            let expect = (TWO_PI).sqrt() * (-0.5 * xi * xi).exp();
            assert!((v.re - expect).abs() < 1e-10);
            assert!(v.im.abs() < 1e-10);
        }
    }

    #[test]
    fn representation_is_a_homomorphism() {
        let lambda = 0.9;
        let phi = |t: f64| (-0.5 * t * t).exp() * (1.0 + 0.3 * t);
        let (p1, q1, z1) = (0.7, -0.4, 0.2);
        let (p2, q2, z2) = (-0.3, 1.1, -0.5);
        // Group law: z picks up (p1 q2 - q1 p2) / 2.
        let (p, q) = (p1 + p2, q1 + q2);
        let z = z1 + z2 + 0.5 * (p1 * q2 - q1 * p2);
        for &t in &[-1.2, 0.0, 0.8, 2.3] {
            let inner = |s: f64| (schroedinger_apply(lambda, p2, q2, z2, phi, s)).re;
            let inner_im = |s: f64| (schroedinger_apply(lambda, p2, q2, z2, phi, s)).im;
            let composed = schroedinger_apply(lambda, p1, q1, z1, inner, t)
                + Complex64::new(0.0, 1.0) * schroedinger_apply(lambda, p1, q1, z1, inner_im, t);
            let direct = schroedinger_apply(lambda, p, q, z, phi, t);
            assert!((composed - direct).norm() < 1e-13);
        }
    }

    #[test]
    fn unitarity_on_a_state() {
        let lambda = 1.3;
        let phi = TestFunction::Hermite(2);
        let grid = Grid { half: 16.0, n: 800 };
        let before = grid.integrate_r(|t| phi.eval(t) * phi.eval(t));
        let after = grid.integrate_r(|t| {
            schroedinger_apply(lambda, 0.6, -0.9, 0.4, |s| phi.eval(s), t).norm_sqr()
        });
        assert!((before - after).abs() < 1e-10);
    }

    #[test]
    fn ground_state_ratio_is_two_pi() {
        let r = coefficient_ratio(1.0, TestFunction::Gaussian { sigma: 1.0 }, TestFunction::Gaussian { sigma: 1.0 })
            .unwrap();
        assert!((r - TWO_PI).abs() < 1e-6, "ratio {}", r);
    }

    #[test]
    fn mixed_state_ratio_is_two_pi() {
        let r = coefficient_ratio(0.7, TestFunction::Hermite(1), TestFunction::Hermite(2)).unwrap();
        assert!((r - TWO_PI).abs() < 1e-6, "ratio {}", r);
        let r2 = coefficient_ratio(-1.4, TestFunction::Hermite(3), TestFunction::Gaussian { sigma: 0.8 })
            .unwrap();
        assert!((r2 - TWO_PI).abs() < 1e-6, "ratio {}", r2);
    }

    #[test]
    fn character_paths_agree_d1() {
        let f = GroupGaussian::standard(1);
        let cmp = character_comparison(1.0, &f, 48).unwrap();
        assert!(cmp.rel_err < 1e-6, "rel err {}", cmp.rel_err);
        // Analytic cross-check of the orbit value:
        // (2 pi)^-1 |lambda|^-1 (2 pi phihat-mass) = 2 pi / |lambda| * zhat.
        let zhat = (TWO_PI).sqrt() * (-0.5f64).exp();
        let expect = TWO_PI / 1.0 * zhat;
        assert!((cmp.orbit_value.re - expect).abs() < 1e-7 * expect);
    }

    #[test]
    fn inversion_reproduces_identity_value_d1() {
        let res = plancherel_inversion(&GroupGaussian::standard(1)).unwrap();
        assert!(res.rel_err < 1e-6, "rel err {}", res.rel_err);
    }

    #[test]
    fn inversion_reproduces_identity_value_d2() {
        let f = GroupGaussian::new(vec![1.0, 0.9], vec![1.1, 1.0], 1.2).unwrap();
        let res = plancherel_inversion(&f).unwrap();
        assert!(res.rel_err < 1e-5, "rel err {}", res.rel_err);
    }

    #[test]
    fn zero_lambda_is_rejected() {
        assert!(coefficient_ratio(0.0, TestFunction::Hermite(0), TestFunction::Hermite(0)).is_err());
        assert!(operator_trace(0.0, &GroupGaussian::standard(1), 8).is_err());
        assert!(orbit_trace(0.0, &GroupGaussian::standard(1)).is_err());
    }

    #[test]
    fn refinement_failure_is_reported() {
        let mut calls = 0usize;
        let r = refine_r("test", |_| {
            calls += 1;
            calls as f64
        });
        assert!(matches!(r, Err(Error::NonConvergent(_))));
    }

    #[test]
    fn bad_widths_are_rejected() {
        assert!(GroupGaussian::new(vec![1.0], vec![1.0, 1.0], 1.0).is_err());
        assert!(GroupGaussian::new(vec![1.0], vec![-1.0], 1.0).is_err());
        assert!(GroupGaussian::new(vec![], vec![], 1.0).is_err());
    }
}
