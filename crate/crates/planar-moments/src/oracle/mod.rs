//! Independent floating-point verification path: one-point densities of the
//! complex and symplectic ensembles evaluated through polynomial recurrences
//! and absolute norms, integrated by composite Gauss–Legendre quadrature.
//!
//! Accumulation uses pairwise summation and fixed node orderings, so results
//! are bit-reproducible for a given grid.

pub mod special;

use crate::exact::Scalar;
use crate::symplectic::SkewData;
use crate::weights::WeightFamily;
use crate::Component;
use num_complex::Complex64;
use special::{bessel_k_scaled, gamma};
use std::f64::consts::PI;
use std::fmt;

/// Quadrature failure: the two grid refinements disagree.
#[derive(Debug, Clone)]
pub struct ConvergenceError {
    pub what: String,
    pub coarse: f64,
    pub fine: f64,
    pub tolerance: f64,
}

impl fmt::Display for ConvergenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "quadrature for {} did not converge: {} vs {} (tolerance {})",
            self.what, self.coarse, self.fine, self.tolerance
        )
    }
}
impl std::error::Error for ConvergenceError {}

/// Integration domain and node layout. Composite Gauss–Legendre panels;
/// refinement halves the panel size.
#[derive(Debug, Clone)]
pub enum Scheme {
    /// Tensor grid on the rectangle `[-x_half, x_half] x [-y_half, y_half]`
    /// enclosing the truncated ellipse of the Hermite weight.
    TensorRect { x_half: f64, y_half: f64 },
    /// Gegenbauer ellipse `x^2/x_half^2 + y^2/y_half^2 <= 1` via the angle
    /// substitution `x = x_half sin(theta)`, `y = y_half cos(theta) sin(phi)`,
    /// which removes the boundary singularity of the weight.
    EllipseTrig { x_half: f64, y_half: f64 },
    /// Polar grid centred at the origin, radius `r_max` (Laguerre).
    Polar { r_max: f64 },
}

#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    pub scheme: Scheme,
    /// Gauss–Legendre nodes per panel.
    pub points_per_panel: usize,
    /// Base panel size (length units, or radians for angular directions).
    pub panel: f64,
    /// Number of halvings of the panel size.
    pub refinement: u32,
}

impl QuadratureGrid {
    /// Default grid for a family at matrix size `n`, sized so the neglected
    /// weight mass is far below the oracle tolerances.
    pub fn for_family(family: &WeightFamily, n: usize) -> Self {
        match family {
            WeightFamily::Hermite { tau } => {
                let t = rat_f64(tau);
                let r2 = 2.0 * n as f64 + 40.0;
                QuadratureGrid {
                    scheme: Scheme::TensorRect {
                        x_half: ((1.0 + t) * r2).sqrt(),
                        y_half: ((1.0 - t) * r2).sqrt().max(1e-3),
                    },
                    points_per_panel: 16,
                    panel: 1.0,
                    refinement: 0,
                }
            }
            WeightFamily::Laguerre { tau, nu } => {
                let t = rat_f64(tau);
                let nu = nu.to_f64();
                let nf = n as f64;
                let bulk = t * (2.0 * nf + nu) + (1.0 + t * t) * (nf * (nf + nu)).sqrt();
                QuadratureGrid {
                    scheme: Scheme::Polar {
                        r_max: bulk + 20.0 * (1.0 + t) + 5.0,
                    },
                    points_per_panel: 16,
                    panel: 1.0,
                    refinement: 0,
                }
            }
            WeightFamily::Gegenbauer { tau, .. } => {
                let t = tau.to_f64();
                QuadratureGrid {
                    scheme: Scheme::EllipseTrig {
                        x_half: ((1.0 + t) / 2.0).sqrt(),
                        y_half: ((1.0 - t) / 2.0).sqrt(),
                    },
                    points_per_panel: 16,
                    panel: PI / 16.0,
                    refinement: 0,
                }
            }
        }
    }

    pub fn refined(&self) -> Self {
        let mut g = self.clone();
        g.refinement += 1;
        g
    }

    fn panel_size(&self) -> f64 {
        self.panel / (1u64 << self.refinement) as f64
    }

    /// Nodes per axis, for the grid-size invariant.
    pub fn nodes_per_axis(&self) -> usize {
        let len = match &self.scheme {
            Scheme::TensorRect { x_half, .. } => 2.0 * x_half,
            Scheme::EllipseTrig { .. } => PI,
            Scheme::Polar { r_max } => *r_max,
        };
        let panels = (len / self.panel_size()).ceil() as usize;
        panels.max(1) * self.points_per_panel
    }

    /// Visit every node with its area weight (the measure is `d^2 z / pi`).
    fn for_each_node(&self, f: &mut dyn FnMut(Complex64, f64)) {
        let pts = self.points_per_panel;
        match &self.scheme {
            Scheme::TensorRect { x_half, y_half } => {
                let xs = composite_gl(-x_half, *x_half, self.panel_size(), pts);
                let ys = composite_gl(-y_half, *y_half, self.panel_size(), pts);
                for &(x, wx) in &xs {
                    for &(y, wy) in &ys {
                        f(Complex64::new(x, y), wx * wy / PI);
                    }
                }
            }
            Scheme::EllipseTrig { x_half, y_half } => {
                let angles = composite_gl(-PI / 2.0, PI / 2.0, self.panel_size(), pts);
                for &(theta, wt) in &angles {
                    let (st, ct) = theta.sin_cos();
                    let x = x_half * st;
                    for &(phi, wp) in &angles {
                        let (sp, cp) = phi.sin_cos();
                        let y = y_half * ct * sp;
                        let jac = x_half * y_half * ct * ct * cp;
                        f(Complex64::new(x, y), wt * wp * jac / PI);
                    }
                }
            }
            Scheme::Polar { r_max } => {
                let rs = composite_gl(0.0, *r_max, self.panel_size(), pts);
                // angular panels: fixed count, doubled on refinement
                let theta_panel = PI / 8.0 / (1u64 << self.refinement) as f64;
                let thetas = composite_gl(0.0, 2.0 * PI, theta_panel, pts);
                for &(r, wr) in &rs {
                    for &(theta, wtheta) in &thetas {
                        let z = Complex64::from_polar(r, theta);
                        f(z, wr * wtheta * r / PI);
                    }
                }
            }
        }
    }
}

fn rat_f64(tau: &Scalar) -> f64 {
    tau.to_f64(None)
        .expect("oracle requires a rational non-Hermiticity parameter")
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_deriv(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        xs[i] = -z;
        xs[n - 1 - i] = z;
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    (xs, ws)
}

fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre rule over `[a, b]` in panels of at most `panel`.
fn composite_gl(a: f64, b: f64, panel: f64, pts: usize) -> Vec<(f64, f64)> {
    let len = b - a;
    let n_panels = ((len / panel).ceil() as usize).max(1);
    let (xs, ws) = gauss_legendre(pts);
    let h = len / n_panels as f64;
    let mut out = Vec::with_capacity(n_panels * pts);
    for p in 0..n_panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        for (x, w) in xs.iter().zip(&ws) {
            out.push((mid + 0.5 * h * x, 0.5 * h * w));
        }
    }
    out
}

/// Numerically stable summation: recursive pairwise reduction.
fn pairwise_sum(v: &mut [f64]) -> f64 {
    let mut len = v.len();
    while len > 1 {
        let half = len / 2;
        for i in 0..half {
            v[i] = v[2 * i] + v[2 * i + 1];
        }
        if len % 2 == 1 {
            v[half] = v[len - 1];
            len = half + 1;
        } else {
            len = half;
        }
    }
    v.first().copied().unwrap_or(0.0)
}

/// Monic planar polynomial `p_k(z)` by the forward three-term recurrence.
///
/// Values are carried as `mantissa * 2^exp` with periodic renormalisation,
/// so large degrees and arguments do not overflow.
pub fn eval_planar_poly(family: &WeightFamily, k: usize, z: Complex64) -> Complex64 {
    let (m, e) = eval_scaled(family, k, z);
    m * 2f64.powi(e)
}

fn eval_scaled(family: &WeightFamily, k: usize, z: Complex64) -> (Complex64, i32) {
    let coeffs = recurrence_f64(family, k + 1);
    let mut prev = Complex64::new(0.0, 0.0); // p_{-1}
    let mut cur = Complex64::new(1.0, 0.0); // p_0
    let mut exp = 0i32;
    for (b, c) in coeffs.iter().take(k) {
        let next = (z - b) * cur - c * prev;
        prev = cur;
        cur = next;
        let m = cur.norm_sqr().max(prev.norm_sqr());
        if m > 1e200 {
            cur *= 2f64.powi(-340);
            prev *= 2f64.powi(-340);
            exp += 340;
        }
    }
    (cur, exp)
}

/// `(b_j, c_j)` float recurrence coefficients for `j = 0..deg`.
fn recurrence_f64(family: &WeightFamily, deg: usize) -> Vec<(f64, f64)> {
    (0..deg)
        .map(|j| {
            let rc = family.recurrence(j);
            (
                rc.b.to_f64(None).expect("rational parameters required"),
                rc.c.to_f64(None).expect("rational parameters required"),
            )
        })
        .collect()
}

/// One-point density evaluator for a family at size `n`, with the absolute
/// norms (and skew norms for the symplectic component) precomputed.
pub struct DensityEval {
    family: WeightFamily,
    n: usize,
    component: Component,
    rec: Vec<(f64, f64)>,
    /// 1/h_k for the complex kernel.
    inv_h: Vec<f64>,
    /// mu[k][j] combination coefficients of the even skew polynomials.
    mu: Vec<Vec<f64>>,
    /// 1/r_k skew norms.
    inv_r: Vec<f64>,
    tau: f64,
    nu: f64,
    geg_a: f64,
}

impl DensityEval {
    pub fn new(family: WeightFamily, n: usize, component: Component) -> Self {
        let deg = match component {
            Component::Complex => n,
            Component::Symplectic => 2 * n + 1,
        };
        let h = absolute_norms(&family, deg + 1);
        let inv_h = h.iter().map(|v| 1.0 / v).collect();
        let tau = rat_f64(&family.tau());
        let nu = match &family {
            WeightFamily::Laguerre { nu, .. } => nu.to_f64(),
            _ => 0.0,
        };
        let geg_a = match &family {
            WeightFamily::Gegenbauer { a, .. } => a.to_f64(),
            _ => 0.0,
        };
        let (mu, inv_r) = if component == Component::Symplectic {
            let skew = SkewData::new(family.clone());
            let mu = (0..n)
                .map(|k| {
                    (0..=k)
                        .map(|j| skew.mu(k, j).to_f64(None).unwrap())
                        .collect()
                })
                .collect();
            // r_k = 2 h_{2k} (h_{2k+1}/h_{2k} - c_{2k+1}): the exact ratio
            // avoids the float cancellation between the two norm terms.
            let inv_r = (0..n)
                .map(|k| {
                    let ratio = family.norm_ratio(2 * k + 1, 2 * k) - family.recurrence(2 * k + 1).c;
                    let r = 2.0 * h[2 * k] * ratio.to_f64(None).unwrap();
                    1.0 / r
                })
                .collect();
            (mu, inv_r)
        } else {
            (Vec::new(), Vec::new())
        };
        let rec = recurrence_f64(&family, deg + 1);
        DensityEval {
            family,
            n,
            component,
            rec,
            inv_h,
            mu,
            inv_r,
            tau,
            nu,
            geg_a,
        }
    }

    /// All `p_0(z) ..= p_deg(z)`.
    fn poly_row(&self, z: Complex64, deg: usize) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(deg + 1);
        let mut prev = Complex64::new(0.0, 0.0);
        let mut cur = Complex64::new(1.0, 0.0);
        out.push(cur);
        for j in 0..deg {
            let (b, c) = self.rec[j];
            let next = (z - b) * cur - c * prev;
            prev = cur;
            cur = next;
            out.push(cur);
        }
        out
    }

    /// Weight function of the family at `z`.
    pub fn weight(&self, z: Complex64) -> f64 {
        match &self.family {
            WeightFamily::Hermite { .. } => {
                let t = self.tau;
                let e = -(z.norm_sqr() - t * (z.re * z.re - z.im * z.im)) / (1.0 - t * t);
                e.exp()
            }
            WeightFamily::Laguerre { .. } => {
                let t = self.tau;
                let r = z.norm();
                if r == 0.0 {
                    return 0.0;
                }
                let x = 2.0 * r / (1.0 - t * t);
                // |z|^nu K_nu(x) exp(2 tau Re z/(1-t^2)), grouped so the
                // exponentials cannot overflow: exp((2 tau Re z - 2|z|)/(1-t^2))
                let log_extra = (2.0 * t * z.re - 2.0 * r) / (1.0 - t * t);
                r.powf(self.nu) * bessel_k_scaled(self.nu, x) * log_extra.exp()
            }
            WeightFamily::Gegenbauer { .. } => {
                let t = self.tau;
                let s = 1.0 - 2.0 * z.re * z.re / (1.0 + t) - 2.0 * z.im * z.im / (1.0 - t);
                if s <= 0.0 {
                    0.0
                } else {
                    s.powf(self.geg_a)
                }
            }
        }
    }

    /// The one-point density at `z` (real and nonnegative up to rounding).
    pub fn density(&self, z: Complex64) -> f64 {
        self.weight(z) * self.kernel_part(z)
    }

    /// Density divided by the weight: the kernel diagonal.
    fn kernel_part(&self, z: Complex64) -> f64 {
        match self.component {
            Component::Complex => {
                let polys = self.poly_row(z, self.n.saturating_sub(1));
                let mut acc = 0.0;
                for k in 0..self.n {
                    acc += polys[k].norm_sqr() * self.inv_h[k];
                }
                acc
            }
            Component::Symplectic => {
                let polys = self.poly_row(z, 2 * self.n + 1);
                let mut acc = 0.0;
                for k in 0..self.n {
                    let q_odd = polys[2 * k + 1];
                    let mut q_even = Complex64::new(0.0, 0.0);
                    for (j, m) in self.mu[k].iter().enumerate() {
                        q_even += m * polys[2 * j];
                    }
                    acc += (q_odd * q_even.conj()).im * self.inv_r[k];
                }
                4.0 * z.im * acc
            }
        }
    }
}

/// Absolute squared norms `h_0 ..= h_deg` as floats (these carry the
/// square-root prefactors that cancel in all exact computations).
fn absolute_norms(family: &WeightFamily, count: usize) -> Vec<f64> {
    match family {
        WeightFamily::Hermite { tau } => {
            let t = rat_f64(tau);
            let pref = (1.0 - t * t).sqrt();
            let mut h = Vec::with_capacity(count);
            let mut fact = 1.0;
            for k in 0..count {
                if k > 0 {
                    fact *= k as f64;
                }
                h.push(fact * pref);
            }
            h
        }
        WeightFamily::Laguerre { tau, nu } => {
            let t = rat_f64(tau);
            let nu = nu.to_f64();
            let pref = (1.0 - t * t) / 2.0;
            let mut h = Vec::with_capacity(count);
            let mut fact = 1.0;
            for k in 0..count {
                if k > 0 {
                    fact *= k as f64;
                }
                h.push(pref * fact * gamma(k as f64 + nu + 1.0));
            }
            h
        }
        WeightFamily::Gegenbauer { tau, a } => {
            let t = tau.to_f64();
            let af = a.to_f64();
            // the closed-form norm carries a spurious constant 2(1+a)
            // relative to the d^2z/pi inner product (checked against direct
            // high-precision integration); only this float path cares,
            // since constants cancel in every exact ratio
            let pref = (1.0 - t * t).sqrt() / (2.0 * (1.0 + af));
            // reversed polynomials G_k(tau) keep tau = 0 regular
            let mut g = vec![1.0, 2.0 * (1.0 + af)];
            for k in 1..count {
                let kf = k as f64;
                let next = (2.0 * (kf + 1.0 + af) * g[k] - (kf + 1.0 + 2.0 * af) * t * t * g[k - 1])
                    / (kf + 1.0);
                g.push(next);
            }
            let mut h = Vec::with_capacity(count);
            let mut fact_over_poch = 1.0; // k!/(1+a)_k
            for k in 0..count {
                if k > 0 {
                    fact_over_poch *= k as f64 / (k as f64 + af);
                }
                h.push(
                    pref * (1.0 + af) / (k as f64 + 1.0 + af)
                        * fact_over_poch
                        * fact_over_poch
                        * 0.25_f64.powi(k as i32)
                        * g[k],
                );
            }
            h
        }
    }
}

/// Integrate `z^{p1} conj(z)^{p2}` against the one-point density for each
/// requested pair, with a refinement-based convergence check.
pub fn quadrature_moments(
    family: &WeightFamily,
    n: usize,
    component: Component,
    pairs: &[(u32, u32)],
    grid: &QuadratureGrid,
    convergence_tol: f64,
) -> Result<Vec<f64>, ConvergenceError> {
    let coarse = quadrature_moments_raw(family, n, component, pairs, grid);
    let fine = quadrature_moments_raw(family, n, component, pairs, &grid.refined());
    for (&(p1, p2), (a, b)) in pairs.iter().zip(coarse.iter().zip(&fine)) {
        if (a - b).abs() > convergence_tol * a.abs().max(1.0) {
            return Err(ConvergenceError {
                what: format!("moment ({p1},{p2}) of {family} at N={n}"),
                coarse: *a,
                fine: *b,
                tolerance: convergence_tol,
            });
        }
    }
    Ok(fine)
}

/// Batch evaluation on one grid, without the refinement comparison. Useful
/// when the caller checks the result against exact values anyway.
pub fn quadrature_moments_single(
    family: &WeightFamily,
    n: usize,
    component: Component,
    pairs: &[(u32, u32)],
    grid: &QuadratureGrid,
) -> Vec<f64> {
    quadrature_moments_raw(family, n, component, pairs, grid)
}

/// Single moment wrapper around the batch entry point.
pub fn quadrature_moment(
    family: &WeightFamily,
    p1: u32,
    p2: u32,
    n: usize,
    component: Component,
    grid: &QuadratureGrid,
    convergence_tol: f64,
) -> Result<f64, ConvergenceError> {
    Ok(quadrature_moments(family, n, component, &[(p1, p2)], grid, convergence_tol)?[0])
}

fn quadrature_moments_raw(
    family: &WeightFamily,
    n: usize,
    component: Component,
    pairs: &[(u32, u32)],
    grid: &QuadratureGrid,
) -> Vec<f64> {
    let eval = DensityEval::new(family.clone(), n, component);
    let p_max = pairs.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0) as usize;
    let mut re_parts: Vec<Vec<f64>> = vec![Vec::new(); pairs.len()];
    let mut im_parts: Vec<Vec<f64>> = vec![Vec::new(); pairs.len()];
    let mut zpow = vec![Complex64::new(1.0, 0.0); p_max + 1];
    grid.for_each_node(&mut |z, w| {
        let d = eval.density(z);
        if d == 0.0 {
            return;
        }
        for i in 1..=p_max {
            zpow[i] = zpow[i - 1] * z;
        }
        let wd = w * d;
        for (i, &(p1, p2)) in pairs.iter().enumerate() {
            let v = zpow[p1 as usize] * zpow[p2 as usize].conj() * wd;
            re_parts[i].push(v.re);
            im_parts[i].push(v.im);
        }
    });
    pairs
        .iter()
        .enumerate()
        .map(|(i, &(p1, p2))| {
            let re = pairwise_sum(&mut re_parts[i]);
            let im = pairwise_sum(&mut im_parts[i]);
            assert!(
                im.abs() <= 1e-9 * re.abs().max(1.0),
                "moment ({p1},{p2}): spurious imaginary part {im} (re = {re})"
            );
            re
        })
        .collect()
}

/// Numeric inner product of two planar polynomials under the family weight.
pub fn quadrature_orthogonality(
    family: &WeightFamily,
    j: usize,
    k: usize,
    grid: &QuadratureGrid,
) -> f64 {
    let eval = DensityEval::new(family.clone(), j.max(k) + 1, Component::Complex);
    let mut re_parts = Vec::new();
    grid.for_each_node(&mut |z, w| {
        let weight = eval.weight(z);
        if weight == 0.0 {
            return;
        }
        let polys = eval.poly_row(z, j.max(k));
        re_parts.push((polys[j] * polys[k].conj()).re * weight * w);
    });
    pairwise_sum(&mut re_parts)
}

/// Moment of the limiting measure of the non-Hermitian Wishart ensemble:
/// numeric integral over the shifted ellipse of
/// `z^{p1} conj(z)^{p2} / ((1-tau^2) sqrt(4|z|^2 + (1-tau^2)^2 alpha^2))`.
pub fn mp_law_moment(p1: u32, p2: u32, tau: f64, alpha: f64, refinement: u32) -> f64 {
    // ellipse centre and semi-axes
    let cx = tau * (2.0 + alpha);
    let ax = (1.0 + tau * tau) * (1.0 + alpha).sqrt();
    let ay = (1.0 - tau * tau) * (1.0 + alpha).sqrt();
    assert!(
        cx * cx / (ax * ax) < 1.0,
        "origin must lie inside the support ellipse"
    );
    // polar coordinates about the origin tame the 1/|z| behaviour at alpha=0
    let pts = 16;
    let theta_nodes = composite_gl(0.0, 2.0 * PI, PI / 8.0 / (1 << refinement) as f64, pts);
    let r_panel = 0.25 / (1 << refinement) as f64;
    let c2 = (1.0 - tau * tau) * (1.0 - tau * tau) * alpha * alpha;
    let mut parts = Vec::new();
    for &(theta, wt) in &theta_nodes {
        let (s, c) = theta.sin_cos();
        // r_max(theta): positive root of the ellipse quadratic
        let qa = c * c / (ax * ax) + s * s / (ay * ay);
        let qb = -2.0 * cx * c / (ax * ax);
        let qc = cx * cx / (ax * ax) - 1.0;
        let r_max = (-qb + (qb * qb - 4.0 * qa * qc).sqrt()) / (2.0 * qa);
        for &(r, wr) in &composite_gl(0.0, r_max, r_panel, pts) {
            let z = Complex64::from_polar(r, theta);
            let den = (4.0 * r * r + c2).sqrt();
            let v = z.powu(p1) * z.conj().powu(p2) * (r / den);
            parts.push(v.re * wt * wr);
        }
    }
    pairwise_sum(&mut parts) / ((1.0 - tau * tau) * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acoeff::ATables;
    use crate::exact::Rational;

    fn hermite(num: i64, den: i64) -> WeightFamily {
        WeightFamily::hermite(Scalar::Rat(Rational::new(num, den))).unwrap()
    }

    #[test]
    fn gauss_legendre_exactness() {
        // n-point rule integrates degree 2n-1 exactly
        let (xs, ws) = gauss_legendre(16);
        let integral: f64 = xs.iter().zip(&ws).map(|(x, w)| w * x.powi(30)).sum();
        assert!((integral - 2.0 / 31.0).abs() < 1e-14);
        let odd: f64 = xs.iter().zip(&ws).map(|(x, w)| w * x.powi(7)).sum();
        assert!(odd.abs() < 1e-15);
    }

    #[test]
    fn planar_poly_values() {
        // Hermite: p_2(z) = z^2 - tau
        let fam = hermite(1, 2);
        let z = Complex64::new(0.0, 0.0);
        let v = eval_planar_poly(&fam, 2, z);
        assert!((v.re + 0.5).abs() < 1e-14 && v.im.abs() < 1e-15);
        // any family: p_0 = 1
        let g = WeightFamily::gegenbauer(Rational::new(1, 2), Rational::one()).unwrap();
        let v0 = eval_planar_poly(&g, 0, Complex64::new(0.3, 0.4));
        assert!((v0 - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        // Laguerre: p_1(z) = z - tau(1+nu)
        let lf = WeightFamily::laguerre(Scalar::Rat(Rational::new(1, 2)), Rational::one()).unwrap();
        let z = Complex64::new(0.7, -0.2);
        let v1 = eval_planar_poly(&lf, 1, z);
        assert!((v1 - (z - 1.0)).norm() < 1e-14);
        // large degree and argument stay finite through rescaling
        let big = eval_planar_poly(&fam, 400, Complex64::new(30.0, 10.0));
        assert!(big.is_finite() || big.norm() == f64::INFINITY);
    }

    #[test]
    fn density_normalization_complex() {
        for (fam, tol) in [
            (hermite(0, 1), 1e-8),
            (hermite(1, 2), 1e-8),
            (
                WeightFamily::laguerre(Scalar::Rat(Rational::new(1, 2)), Rational::one()).unwrap(),
                1e-5,
            ),
            (
                WeightFamily::gegenbauer(Rational::new(1, 2), Rational::one()).unwrap(),
                1e-8,
            ),
        ] {
            let n = 3;
            let grid = QuadratureGrid::for_family(&fam, n);
            let m = quadrature_moments(&fam, n, Component::Complex, &[(0, 0)], &grid, 1e-8)
                .unwrap();
            assert!(
                (m[0] - n as f64).abs() < tol * n as f64,
                "{fam}: normalization {} vs {n}",
                m[0]
            );
        }
    }

    #[test]
    fn density_normalization_symplectic() {
        for (fam, tol) in [
            (hermite(1, 2), 1e-7),
            (
                WeightFamily::gegenbauer(Rational::new(1, 3), Rational::one()).unwrap(),
                1e-7,
            ),
        ] {
            let n = 2;
            let grid = QuadratureGrid::for_family(&fam, 2 * n);
            let m = quadrature_moments(&fam, n, Component::Symplectic, &[(0, 0)], &grid, 1e-7)
                .unwrap();
            assert!(
                (m[0] - n as f64).abs() < tol * n as f64,
                "{fam}: normalization {} vs {n}",
                m[0]
            );
        }
    }

    #[test]
    fn circular_law_plateau() {
        // tau = 0, large N: the unscaled density is the partial exponential
        // sum, approximately 1 well inside |z|^2 < N
        let eval = DensityEval::new(hermite(0, 1), 50, Component::Complex);
        for z in [Complex64::new(2.0, 1.0), Complex64::new(-3.0, 2.0)] {
            let d = eval.density(z);
            assert!((d - 1.0).abs() < 1e-6, "density at {z}: {d}");
        }
        // far outside the droplet it decays to zero
        assert!(eval.density(Complex64::new(12.0, 0.0)) < 1e-6);
    }

    #[test]
    fn symplectic_density_vanishes_on_real_line() {
        let fam = hermite(1, 2);
        let eval = DensityEval::new(fam, 3, Component::Symplectic);
        for x in [-2.0, -0.5, 0.0, 1.0, 3.0] {
            assert_eq!(eval.density(Complex64::new(x, 0.0)), 0.0);
        }
        // and is nonnegative on a sample grid
        for i in -6..=6 {
            for j in -6..=6 {
                let z = Complex64::new(i as f64 * 0.7, j as f64 * 0.7);
                assert!(eval.density(z) >= -1e-12, "density negative at {z}");
            }
        }
    }

    #[test]
    fn hermite_moment_matches_exact() {
        let fam = hermite(1, 2);
        let t = ATables::new(fam.clone());
        let exact = crate::complex::moment(&t, 1, 1, 3).to_f64(None).unwrap();
        let grid = QuadratureGrid::for_family(&fam, 3);
        let got =
            quadrature_moment(&fam, 1, 1, 3, Component::Complex, &grid, 1e-9).unwrap();
        assert!((got - exact).abs() < 1e-8 * exact.abs(), "{got} vs {exact}");
        assert!((got - 6.75).abs() < 1e-8);
    }

    #[test]
    fn ginse_moment_matches_exact() {
        let fam = hermite(0, 1);
        let grid = QuadratureGrid::for_family(&fam, 2);
        let got =
            quadrature_moment(&fam, 1, 1, 1, Component::Symplectic, &grid, 1e-8).unwrap();
        assert!((got - 2.0).abs() < 1e-7, "{got}");
    }

    #[test]
    fn orthogonality_diagonal_and_off() {
        let fam = hermite(1, 2);
        let grid = QuadratureGrid::for_family(&fam, 4);
        // h_2 = 2 sqrt(1 - 1/4) = sqrt(3)
        let h2 = quadrature_orthogonality(&fam, 2, 2, &grid);
        assert!((h2 - 3.0_f64.sqrt()).abs() < 1e-8);
        let off = quadrature_orthogonality(&fam, 2, 3, &grid);
        assert!(off.abs() < 1e-9 * 6.0_f64.sqrt());
    }

    #[test]
    fn orthogonality_matrix_is_diagonal() {
        let fam = hermite(1, 2);
        let grid = QuadratureGrid::for_family(&fam, 9);
        let h: Vec<f64> = (0..=8)
            .map(|k| {
                let mut f = 0.75_f64.sqrt();
                for i in 1..=k {
                    f *= i as f64;
                }
                f
            })
            .collect();
        for j in 0..=8usize {
            for k in 0..=j {
                let v = quadrature_orthogonality(&fam, j, k, &grid);
                if j == k {
                    assert!((v - h[k]).abs() < 1e-8 * h[k], "h_{k}: {v} vs {}", h[k]);
                } else {
                    assert!(
                        v.abs() < 1e-8 * (h[j] * h[k]).sqrt(),
                        "off-diagonal ({j},{k}): {v}"
                    );
                }
            }
        }
    }

    #[test]
    fn laguerre_orthogonality() {
        // h_0 = (1-tau^2)/2 Gamma(2) = 3/8 at tau = 1/2, nu = 1
        let fam = WeightFamily::laguerre(Scalar::Rat(Rational::new(1, 2)), Rational::one()).unwrap();
        let grid = QuadratureGrid::for_family(&fam, 2);
        let h0 = quadrature_orthogonality(&fam, 0, 0, &grid);
        assert!((h0 - 0.375).abs() < 1e-6 * 0.375, "{h0}");
    }

    #[test]
    fn mp_law_values() {
        // zeroth moment: probability measure
        for (tau, alpha) in [(0.0, 0.0), (0.5, 0.0), (0.5, 1.0), (0.25, 0.5)] {
            let m = mp_law_moment(0, 0, tau, alpha, 1);
            assert!((m - 1.0).abs() < 1e-6, "tau={tau} alpha={alpha}: {m}");
        }
        // (1,0) at tau=1/2, alpha=1 -> gamma tau = 1
        let m10 = mp_law_moment(1, 0, 0.5, 1.0, 1);
        assert!((m10 - 1.0).abs() < 1e-5, "{m10}");
        // (1,1) at tau=1/2, alpha=0 -> c1(2,2)(1/2) = 0.6875
        let m11 = mp_law_moment(1, 1, 0.5, 0.0, 1);
        assert!((m11 - 0.6875).abs() < 1e-5, "{m11}");
    }

    #[test]
    fn convergence_failure_is_reported() {
        // a deliberately hopeless grid: one 4-point panel across the domain
        let fam = hermite(1, 2);
        let grid = QuadratureGrid {
            scheme: Scheme::TensorRect {
                x_half: 7.0,
                y_half: 6.0,
            },
            points_per_panel: 4,
            panel: 14.0,
            refinement: 0,
        };
        let err = quadrature_moments(&fam, 3, Component::Complex, &[(1, 1)], &grid, 1e-9)
            .unwrap_err();
        assert!(err.to_string().contains("did not converge"), "{err}");
    }

    #[test]
    fn grid_invariants() {
        let fam = hermite(1, 2);
        let grid = QuadratureGrid::for_family(&fam, 3);
        assert!(grid.nodes_per_axis() >= 32);
        assert!(grid.refined().nodes_per_axis() >= 2 * grid.nodes_per_axis() - 16);
    }
}
