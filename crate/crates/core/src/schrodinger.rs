//! Eigenvalue counting for `H = -d²/dx² - V` on an interval or the line.
//!
//! `#(λ, V)` is the number of eigenvalues of `H` below `-λ`. It is computed by
//! Prüfer shooting (Sturm oscillation), bracketed by the WKB-type bounds
//! [`prufer_estimate_bounds`], and cross-checked against the Birman–Schwinger
//! matrix `T(λ) = (H₀+λ)^{-1/2} V (H₀+λ)^{-1/2}` on a periodic grid.

use std::f64::consts::PI;
use std::io::Write;

use faer::{Mat, Side};
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::grid::Grid1D;
use crate::quad::integrate;
use crate::symbols::SymbolField;

/// Eigenvalues of `T(λ)` this close to 1 make the count boundary-sensitive.
pub const BOUNDARY_TOL: f64 = 1e-6;

/// Additive error of the decoupling principle.
pub const DECOUPLING_BAR: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Domain {
    /// Dirichlet conditions at both ends.
    Interval(f64, f64),
    /// The whole line, truncated to `(-radius, radius)` for counting.
    WholeLine { radius: f64 },
}

#[derive(Clone, Debug)]
pub struct SchrodingerProblem {
    pub potential: SymbolField,
    pub lambda: f64,
    pub domain: Domain,
}

impl SchrodingerProblem {
    /// `potential` is read along `ξ = 0`.
    pub fn new(potential: SymbolField, lambda: f64, domain: Domain) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(invalid(format!("lambda must be positive, got {lambda}")));
        }
        match domain {
            Domain::Interval(a, b) if !(a < b && a.is_finite() && b.is_finite()) => {
                return Err(invalid(format!("interval ({a}, {b}) is empty")));
            }
            Domain::WholeLine { radius } if !(radius > 0.0 && radius.is_finite()) => {
                return Err(invalid(format!("truncation radius must be positive, got {radius}")));
            }
            _ => {}
        }
        if !potential.is_real() {
            return Err(invalid("potential must be real-valued"));
        }
        Ok(SchrodingerProblem { potential, lambda, domain })
    }

    pub fn interval(&self) -> (f64, f64) {
        match self.domain {
            Domain::Interval(a, b) => (a, b),
            Domain::WholeLine { radius } => (-radius, radius),
        }
    }

    pub fn v(&self, x: f64) -> f64 {
        self.potential.eval_re(x, 0.0)
    }

    /// `(V, V', V'')` at `x`, from the closed form when available.
    fn v_jet(&self, x: f64) -> (f64, f64, f64) {
        if let Some(j) = self.potential.jet(x, 0.0, 2, 0) {
            return (j.value(), j.derivative(1, 0), j.derivative(2, 0));
        }
        let h = 1e-4 * (1.0 + x.abs());
        let (vm, v0, vp) = (self.v(x - h), self.v(x), self.v(x + h));
        (v0, (vp - vm) / (2.0 * h), (vp - 2.0 * v0 + vm) / (h * h))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OdeMethod {
    /// Exact propagation for the potential frozen at each step midpoint.
    Exact,
    /// Classical RK4 on the Prüfer angle with a fixed step.
    Rk4,
}

#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    pub method: OdeMethod,
    /// Steps are `step_scale` times the local length scale of `V` (exact
    /// method only).
    pub step_scale: f64,
    pub max_refinements: usize,
    /// Refuse RK4 runs needing more steps than this.
    pub max_steps: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { method: OdeMethod::Exact, step_scale: 0.01, max_refinements: 3, max_steps: 50_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PruferCount {
    pub count: usize,
    /// Steps used by the finer of the two agreeing runs.
    pub steps: usize,
    pub refinements: usize,
}

/// Prüfer angle `θ = mπ + α`, `α ∈ [0, π)`, with `u = ρ sin θ`, `u' = ρ cos θ`.
#[derive(Clone, Copy, Debug)]
struct Angle {
    turns: usize,
    alpha: f64,
}

impl Angle {
    fn normalize(mut self) -> Self {
        if self.alpha >= PI {
            let extra = (self.alpha / PI).floor();
            self.turns += extra as usize;
            self.alpha -= extra * PI;
        }
        self
    }

    /// Zeros of `u` in the open interval, given `θ` at the right end.
    fn zeros(self) -> usize {
        if self.alpha == 0.0 {
            self.turns.saturating_sub(1)
        } else {
            self.turns
        }
    }
}

/// Advance across a step of length `h` on which `u'' = -q u`.
fn exact_step(a: Angle, q: f64, h: f64) -> Angle {
    let (su, cu) = a.alpha.sin_cos();
    if q > 0.0 {
        let k = q.sqrt();
        let beta = (k * su).atan2(cu) + k * h;
        let turns = (beta / PI).floor();
        let b = beta - turns * PI;
        let (sb, cb) = b.sin_cos();
        Angle { turns: a.turns + turns as usize, alpha: sb.atan2(k * cb) }.normalize()
    } else {
        let (u, du) = if q < 0.0 {
            let kappa = (-q).sqrt();
            let e = (-2.0 * kappa * h).exp();
            let (c, s) = ((1.0 + e) / 2.0, (1.0 - e) / 2.0);
            (c * su + s / kappa * cu, kappa * s * su + c * cu)
        } else {
            (su + h * cu, cu)
        };
        if u < 0.0 || (u == 0.0 && du < 0.0) {
            Angle { turns: a.turns + 1, alpha: (-u).atan2(-du) }.normalize()
        } else {
            Angle { turns: a.turns, alpha: u.atan2(du) }.normalize()
        }
    }
}

/// Mesh whose steps follow the local length scale of `V`.
fn adaptive_mesh(prob: &SchrodingerProblem, eta: f64) -> Vec<f64> {
    let (a, b) = prob.interval();
    let width = b - a;
    let floor = 1e-9 * width;
    let mut mesh = vec![a];
    let mut x = a;
    while x < b {
        let (v, dv, ddv) = prob.v_jet(x);
        let scale = v.abs() + prob.lambda;
        let l1 = if dv != 0.0 { scale / dv.abs() } else { f64::INFINITY };
        let l2 = if ddv != 0.0 { (scale / ddv.abs()).sqrt() } else { f64::INFINITY };
        let h = (eta * l1.min(l2).min(width)).max(floor);
        x = (x + h).min(b);
        mesh.push(x);
    }
    mesh
}

fn count_exact(prob: &SchrodingerProblem, eta: f64) -> (usize, usize) {
    let mesh = adaptive_mesh(prob, eta);
    let mut a = Angle { turns: 0, alpha: 0.0 };
    for w in mesh.windows(2) {
        let q = prob.v(0.5 * (w[0] + w[1])) - prob.lambda;
        a = exact_step(a, q, w[1] - w[0]);
    }
    (a.zeros(), mesh.len() - 1)
}

fn count_rk4(prob: &SchrodingerProblem, steps: usize) -> usize {
    let (a, b) = prob.interval();
    let h = (b - a) / steps as f64;
    let rhs = |x: f64, th: f64| {
        let (s, c) = th.sin_cos();
        c * c + (prob.v(x) - prob.lambda) * s * s
    };
    let mut th = 0.0;
    for i in 0..steps {
        let x = a + i as f64 * h;
        let k1 = rhs(x, th);
        let k2 = rhs(x + h / 2.0, th + h / 2.0 * k1);
        let k3 = rhs(x + h / 2.0, th + h / 2.0 * k2);
        let k4 = rhs(x + h, th + h * k3);
        th += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    let r = th / PI;
    if r <= 0.0 {
        0
    } else {
        r.ceil() as usize - 1
    }
}

fn max_potential(prob: &SchrodingerProblem) -> f64 {
    let (a, b) = prob.interval();
    (0..=4096).map(|i| prob.v(a + (b - a) * i as f64 / 4096.0)).fold(0.0, f64::max)
}

/// Dirichlet eigenvalues below `-λ` on the problem's interval, accepted once
/// two successive resolutions agree.
pub fn prufer_count_with(prob: &SchrodingerProblem, opts: &CountOptions) -> Result<PruferCount> {
    if !(opts.step_scale > 0.0) {
        return Err(invalid("step_scale must be positive"));
    }
    let run = |level: usize| -> Result<(usize, usize)> {
        match opts.method {
            OdeMethod::Exact => Ok(count_exact(prob, opts.step_scale / (1 << level) as f64)),
            OdeMethod::Rk4 => {
                let (a, b) = prob.interval();
                let h = 0.01f64.min(0.1 / (1.0 + max_potential(prob)).sqrt()) / (1 << level) as f64;
                let steps = ((b - a) / h).ceil() as usize;
                if steps > opts.max_steps {
                    return Err(invalid(format!("RK4 would need {steps} steps")));
                }
                Ok((count_rk4(prob, steps), steps))
            }
        }
    };
    let mut counts = vec![run(0)?.0];
    for level in 1..=opts.max_refinements + 1 {
        let (c, steps) = run(level)?;
        counts.push(c);
        if c == counts[counts.len() - 2] {
            return Ok(PruferCount { count: c, steps, refinements: level - 1 });
        }
    }
    Err(Error::CountUnstable { refinements: opts.max_refinements, counts })
}

pub fn prufer_count(prob: &SchrodingerProblem) -> Result<usize> {
    prufer_count_with(prob, &CountOptions::default()).map(|c| c.count)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecoupledCount {
    /// Dirichlet count on `(-R, R)`.
    pub count: usize,
    pub error_bar: usize,
}

/// Whole-line count from the middle interval of the decoupling `|x| < R`.
/// Requires `V < λ` outside, so that the outer counts vanish.
pub fn decoupled_count(prob: &SchrodingerProblem, radius: f64) -> Result<DecoupledCount> {
    if !matches!(prob.domain, Domain::WholeLine { .. }) {
        return Err(invalid("decoupled_count needs a whole-line problem"));
    }
    check_outer(prob, radius)?;
    let middle = SchrodingerProblem { domain: Domain::WholeLine { radius }, ..prob.clone() };
    Ok(DecoupledCount { count: prufer_count(&middle)?, error_bar: DECOUPLING_BAR })
}

/// Samples `|x| ∈ [R, 10⁶R]` geometrically.
fn check_outer(prob: &SchrodingerProblem, radius: f64) -> Result<()> {
    if !(radius > 0.0) {
        return Err(invalid("radius must be positive"));
    }
    let n = 4000;
    for i in 0..=n {
        let r = radius * 10f64.powf(6.0 * i as f64 / n as f64);
        for x in [r, -r] {
            let v = prob.v(x);
            if v >= prob.lambda {
                return Err(Error::Precondition { x, reason: format!("V(x) = {v} is not below lambda = {}", prob.lambda) });
            }
        }
    }
    Ok(())
}

/// Decoupling radius `2√(g/λ)` used for scaled potentials `g V₀` with `V₀ ≤ 1`.
pub fn default_radius(g: f64, lambda: f64) -> f64 {
    2.0 * (g / lambda).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PruferBounds {
    /// `(1/π) ∫_{-R}^{R} √V`.
    pub main: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Two-sided estimate for the Dirichlet count on `(-R, R)`:
/// `(1/π)∫√V ∓ [(1/4π)∫|V'|/(V+|λ|) + 6R√(|λ|+1)/π + 1]`.
pub fn prufer_estimate_bounds(potential: &SymbolField, lambda: f64, radius: f64) -> Result<PruferBounds> {
    let prob = SchrodingerProblem::new(potential.clone(), lambda, Domain::WholeLine { radius })?;
    let negative = std::cell::Cell::new(None);
    let sqrt_v = |x: f64| {
        let v = prob.v(x);
        if v < 0.0 && negative.get().is_none() {
            negative.set(Some(x));
        }
        v.max(0.0).sqrt()
    };
    let grad = |x: f64| {
        let (v, dv, _) = prob.v_jet(x);
        dv.abs() / (v.max(0.0) + lambda.abs())
    };
    let halves = |f: &dyn Fn(f64) -> f64| -> Result<f64> {
        Ok(integrate(f, -radius, 0.0, 1e-8, 1e-14)? + integrate(f, 0.0, radius, 1e-8, 1e-14)?)
    };
    let main = halves(&sqrt_v)? / PI;
    if let Some(x) = negative.get() {
        return Err(Error::Precondition { x, reason: "potential is negative".into() });
    }
    let err = halves(&grad)? / (4.0 * PI) + 6.0 * radius * (lambda.abs() + 1.0).sqrt() / PI + 1.0;
    Ok(PruferBounds { main, lower: main - err, upper: main + err })
}

/// `(√g/π) log g`.
pub fn coulomb_main_term(g: f64) -> f64 {
    g.sqrt() / PI * g.ln()
}

/// One point of a coupling-constant scan of `g V₀`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub g: f64,
    pub lambda: f64,
    pub count: usize,
    pub main_term: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Whole-line counts for `g V₀` on the decoupling radius [`default_radius`].
/// `main_term` is [`coulomb_main_term`]; the bounds are those of
/// [`prufer_estimate_bounds`] on the same radius.
pub fn coupling_scan(v0: &SymbolField, gs: &[f64], lambda: f64) -> Result<Vec<ScanRow>> {
    gs.iter()
        .map(|&g| {
            let radius = default_radius(g, lambda);
            let v = v0.clone().scaled(g);
            let prob = SchrodingerProblem::new(v.clone(), lambda, Domain::WholeLine { radius })?;
            let count = decoupled_count(&prob, radius)?.count;
            let b = prufer_estimate_bounds(&v, lambda, radius)?;
            Ok(ScanRow { g, lambda, count, main_term: coulomb_main_term(g), lower: b.lower, upper: b.upper })
        })
        .collect()
}

pub fn write_scan_csv<W: Write>(rows: &[ScanRow], mut w: W) -> Result<()> {
    writeln!(w, "g,lambda,count,main_term,lower,upper")?;
    for r in rows {
        writeln!(w, "{:.16e},{:.16e},{},{:.16e},{:.16e},{:.16e}", r.g, r.lambda, r.count, r.main_term, r.lower, r.upper)?;
    }
    Ok(())
}

/// First column of the circulant `Φ* diag(μ(ξ_m)) Φ` on `grid`, with
/// `ξ_m = πm/L`, `m = -n/2, …, n/2 - 1`.
pub fn circulant_column(grid: &Grid1D, mu: impl Fn(f64) -> f64) -> Vec<f64> {
    let n = grid.len();
    let l = grid.half_width();
    // FFT bin m corresponds to frequency index m for m < n/2 and m - n above
    let mut buf: Vec<Complex64> = (0..n)
        .map(|m| {
            let idx = if m < n / 2 { m as f64 } else { m as f64 - n as f64 };
            Complex64::new(mu(PI * idx / l), 0.0)
        })
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    buf.iter().map(|z| z.re / n as f64).collect()
}

/// Discretized `T(λ)`.
#[derive(Clone, Debug)]
pub struct BsProblem {
    pub grid: Grid1D,
    pub lambda: f64,
    pub sqrt_v: Vec<f64>,
    /// Circulant column of `(H₀+λ)^{-1}`.
    pub column: Vec<f64>,
}

impl BsProblem {
    pub fn n(&self) -> usize {
        self.grid.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let n = self.n();
        self.sqrt_v[i] * self.column[(i + n - j) % n] * self.sqrt_v[j]
    }

    pub fn matrix(&self) -> Mat<f64> {
        Mat::from_fn(self.n(), self.n(), |i, j| self.entry(i, j))
    }

    pub fn trace(&self) -> f64 {
        self.sqrt_v.iter().map(|s| s * s * self.column[0]).sum()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut e = self.matrix().selfadjoint_eigenvalues(Side::Lower);
        e.sort_by(|a, b| b.total_cmp(a));
        e
    }
}

/// `T = D_{√V} Φ* diag((ξ_m²+λ)^{-1}) Φ D_{√V}` on the periodic grid.
pub fn build_bs_matrix(potential: &SymbolField, lambda: f64, grid: &Grid1D) -> Result<BsProblem> {
    if !(lambda > 0.0) {
        return Err(invalid(format!("lambda must be positive, got {lambda}")));
    }
    let mut sqrt_v = Vec::with_capacity(grid.len());
    for x in grid.nodes() {
        let v = potential.eval_re(x, 0.0);
        if v < 0.0 || !v.is_finite() {
            return Err(Error::Precondition { x, reason: format!("potential sample {v} is negative or not finite") });
        }
        sqrt_v.push(v.sqrt());
    }
    let column = circulant_column(grid, |xi| 1.0 / (xi * xi + lambda));
    Ok(BsProblem { grid: grid.clone(), lambda, sqrt_v, column })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BsCount {
    /// Eigenvalues of `T(λ)` strictly above 1.
    pub count: usize,
    /// Eigenvalues within [`BOUNDARY_TOL`] of 1.
    pub boundary_sensitive: Vec<f64>,
}

impl BsCount {
    pub fn is_boundary_sensitive(&self) -> bool {
        !self.boundary_sensitive.is_empty()
    }
}

pub fn bs_count(bs: &BsProblem) -> BsCount {
    count_with_flags(&bs.eigenvalues(), 1.0)
}

fn count_with_flags(desc: &[f64], threshold: f64) -> BsCount {
    BsCount {
        count: desc.partition_point(|&e| e > threshold),
        boundary_sensitive: desc.iter().copied().filter(|e| (e - threshold).abs() <= BOUNDARY_TOL * threshold).collect(),
    }
}

/// `n(s; op^l(p))` for the product symbol `p(x, ξ) = a(x) b(ξ)`, discretized
/// as `D_a Φ* diag(b(ξ_m)) Φ` on the periodic grid.
pub fn product_kn_count(a: impl Fn(f64) -> f64, b: impl Fn(f64) -> f64, grid: &Grid1D, s: f64) -> BsCount {
    let col = circulant_column(grid, b);
    let n = grid.len();
    let ax: Vec<f64> = grid.nodes().into_iter().map(a).collect();
    let m = Mat::from_fn(n, n, |i, j| ax[i] * col[(i + n - j) % n]);
    let mut sv = m.singular_values();
    sv.sort_by(|x, y| y.total_cmp(x));
    count_with_flags(&sv, s)
}

/// `p₀ = 1/(4π⟨x⟩⟨ξ⟩)` paired with `V = 1/(16π²(1+x²))`:
/// `n(s; op^l(p₀)) = #(1; s^{-2} V)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BridgeRow {
    pub s: f64,
    pub ode_count: usize,
    pub matrix_count: usize,
    pub boundary_sensitive: bool,
}

pub fn bridge_potential(s: f64) -> Result<SymbolField> {
    Ok(SymbolField::power_decay(2.0, 0.0)?.scaled(1.0 / (16.0 * PI * PI * s * s)))
}

pub fn bridge(s: f64, grid: &Grid1D) -> Result<BridgeRow> {
    if !(s > 0.0) {
        return Err(invalid("s must be positive"));
    }
    let v = bridge_potential(s)?;
    let g = 1.0 / (16.0 * PI * PI * s * s);
    let radius = default_radius(g, 1.0).max(1.0);
    let prob = SchrodingerProblem::new(v, 1.0, Domain::WholeLine { radius })?;
    let ode = decoupled_count(&prob, radius)?;
    let jb = |t: f64| 1.0 / (1.0 + t * t).sqrt();
    let m = product_kn_count(|x| jb(x) / (4.0 * PI), jb, grid, s);
    Ok(BridgeRow { s, ode_count: ode.count, matrix_count: m.count, boundary_sensitive: m.is_boundary_sensitive() })
}

pub fn write_bridge_csv<W: Write>(rows: &[BridgeRow], mut w: W) -> Result<()> {
    writeln!(w, "s,ode_count,matrix_count")?;
    for r in rows {
        writeln!(w, "{:.16e},{},{}", r.s, r.ode_count, r.matrix_count)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn box_problem(g: f64, lambda: f64) -> SchrodingerProblem {
        SchrodingerProblem::new(SymbolField::constant(g).unwrap(), lambda, Domain::Interval(0.0, PI)).unwrap()
    }

    #[test]
    fn zero_potential_has_no_bound_states() {
        let p = SchrodingerProblem::new(SymbolField::zero(), 1.0, Domain::WholeLine { radius: 10.0 }).unwrap();
        assert_eq!(prufer_count(&p).unwrap(), 0);
        assert_eq!(decoupled_count(&p, 10.0).unwrap(), DecoupledCount { count: 0, error_bar: 2 });
    }

    #[test]
    fn box_potential_exact() {
        assert_eq!(prufer_count(&box_problem(100.25, 1.0)).unwrap(), 9);
    }

    #[test]
    fn rk4_agrees_on_small_box() {
        let opts = CountOptions { method: OdeMethod::Rk4, ..Default::default() };
        assert_eq!(prufer_count_with(&box_problem(100.25, 1.0), &opts).unwrap().count, 9);
    }

    #[test]
    fn exact_step_constant_rotation() {
        // q = 1: θ advances by exactly h
        let a = exact_step(Angle { turns: 0, alpha: 0.0 }, 1.0, 2.5 * PI);
        assert_eq!(a.turns, 2);
        assert!((a.alpha - 0.5 * PI).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SchrodingerProblem::new(SymbolField::zero(), 0.0, Domain::WholeLine { radius: 1.0 }).is_err());
        assert!(SchrodingerProblem::new(SymbolField::zero(), 1.0, Domain::Interval(1.0, 1.0)).is_err());
        let g = Grid1D::new(4.0, 16).unwrap();
        assert!(build_bs_matrix(&SymbolField::constant(-1.0).unwrap(), 1.0, &g).is_err());
    }

    #[test]
    fn outer_precondition_names_the_point() {
        let p = SchrodingerProblem::new(SymbolField::power_decay(2.0, 0.0).unwrap().scaled(100.0), 1.0, Domain::WholeLine { radius: 20.0 }).unwrap();
        match decoupled_count(&p, 5.0) {
            Err(Error::Precondition { x, .. }) => assert!(x.abs() >= 5.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn circulant_of_constant_multiplier_is_identity() {
        let g = Grid1D::new(3.0, 32).unwrap();
        let c = circulant_column(&g, |_| 2.0);
        assert!((c[0] - 2.0).abs() < 1e-14);
        assert!(c[1..].iter().all(|v| v.abs() < 1e-14));
    }
}
