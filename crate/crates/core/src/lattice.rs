//! Lattice sequences over the cubes `(-1, 1)² + k`, the counting functionals
//! `M_{p,σ}` / `M°_{p,σ}` built on them, and the phase-volume functionals
//! `N_{p,σ}` / `N°_{p,σ}` of a positive envelope.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::jet::Jet;
use crate::quad::gauss_legendre;
use crate::spectra::ls_slope;
use crate::symbols::{smooth_step, Axis, DerivativeMode, SymbolField};

/// Gauss–Legendre points per axis per unit cell.
pub const CELL_POINTS: usize = 16;
pub const DEFAULT_BOX_RADIUS: i64 = 64;
pub const DEFAULT_PHASE_BOX: f64 = 1e3;
pub const LEVELS_PER_DECADE: usize = 40;
pub const DECADES: usize = 4;
/// Relative change between refinements accepted by [`phase_volume`].
pub const VOLUME_RTOL: f64 = 5e-3;

/// One-dimensional window `w(t) = S(t + 1) - S(t)`, where `S` is the smooth
/// step. It is supported in `(-1, 1)` and `Σ_k w(t - k) = 1` telescopes
/// exactly.
pub fn window(t: f64) -> f64 {
    smooth_step(t + 1.0) - smooth_step(t)
}

/// `ζ_k(τ) = w(x - k₁) w(ξ - k₂)`.
pub fn partition_weight(k: (i64, i64), tau: (f64, f64)) -> f64 {
    window(tau.0 - k.0 as f64) * window(tau.1 - k.1 as f64)
}

/// `n(q) = ⌊1/q⌋ + 1`.
pub fn n_order(q: f64) -> Result<usize> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(invalid(format!("q must lie in (0, 1], got {q}")));
    }
    Ok((1.0 / q).floor() as usize + 1)
}

/// Default `q = p/2`, clipped to `(0, 1]`.
pub fn default_q(p: f64) -> f64 {
    (p / 2.0).min(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeqKind {
    /// `L²` norm of `F_n = Σ_{k,s ≤ n} |∂_x^k ∂_ξ^s a|` over each cube.
    V,
    /// `L²` norm of `∂_x ∂_ξ a` over each cube.
    W,
}

/// Values indexed by `k ∈ ℤ²` with `|k|_∞ ≤ box_radius`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSeq {
    pub box_radius: i64,
    pub kind: SeqKind,
    pub n_order: usize,
    values: Vec<f64>,
}

impl LatticeSeq {
    pub fn from_fn(box_radius: i64, kind: SeqKind, n_order: usize, f: impl Fn(i64, i64) -> f64) -> Result<Self> {
        let side = (2 * box_radius + 1) as usize;
        let mut values = Vec::with_capacity(side * side);
        for k1 in -box_radius..=box_radius {
            for k2 in -box_radius..=box_radius {
                let v = f(k1, k2);
                if !(v.is_finite() && v >= 0.0) {
                    return Err(invalid(format!("lattice value at ({k1}, {k2}) is {v}")));
                }
                values.push(v);
            }
        }
        Ok(LatticeSeq { box_radius, kind, n_order, values })
    }

    fn side(&self) -> usize {
        (2 * self.box_radius + 1) as usize
    }

    pub fn get(&self, k1: i64, k2: i64) -> f64 {
        let b = self.box_radius;
        if k1.abs() > b || k2.abs() > b {
            return 0.0;
        }
        self.values[(k1 + b) as usize * self.side() + (k2 + b) as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), f64)> + '_ {
        let b = self.box_radius;
        let side = self.side();
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (((i / side) as i64 - b, (i % side) as i64 - b), v))
    }

    /// Largest value on the outer ring `|k|_∞ = box_radius`.
    pub fn boundary_max(&self) -> f64 {
        let b = self.box_radius;
        self.iter()
            .filter(|((k1, k2), _)| k1.abs() == b || k2.abs() == b)
            .map(|(_, v)| v)
            .fold(0.0, f64::max)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// `#{k : v_k > e}`.
    pub fn count_above(&self, e: f64) -> usize {
        self.values.iter().filter(|&&v| v > e).count()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "k1,k2,value")?;
        for ((k1, k2), v) in self.iter() {
            writeln!(w, "{k1},{k2},{v:.16e}")?;
        }
        Ok(())
    }
}

/// Per-axis Gauss–Legendre nodes and weights on the unit cells
/// `[i, i + 1]`, `i = -B - 1 ..= B`.
struct CellRule {
    first: i64,
    cells: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl CellRule {
    fn new(box_radius: i64) -> Self {
        let (x, w) = gauss_legendre(CELL_POINTS);
        let first = -box_radius - 1;
        let cells = (2 * box_radius + 2) as usize;
        let mut nodes = Vec::with_capacity(cells * CELL_POINTS);
        let mut weights = Vec::with_capacity(cells * CELL_POINTS);
        for c in 0..cells {
            let left = (first + c as i64) as f64;
            for q in 0..CELL_POINTS {
                nodes.push(left + 0.5 * (x[q] + 1.0));
                weights.push(0.5 * w[q]);
            }
        }
        CellRule { first, cells, nodes, weights }
    }

    /// Index of the unit cell `[i, i + 1]`.
    fn cell(&self, i: i64) -> usize {
        (i - self.first) as usize
    }
}

fn check_derivatives(sym: &SymbolField, order: usize) -> Result<()> {
    if !sym.is_smooth() {
        return Err(Error::NonSmooth(format!("lattice sequences need a smooth symbol, got {sym}")));
    }
    if !sym.is_real() {
        return Err(Error::NonSmooth(format!("closed-form derivatives need a real symbol, got {sym}")));
    }
    if let DerivativeMode::FiniteDifference { .. } = sym.derivative_mode {
        if 2 * order > 4 {
            return Err(Error::NonSmooth(format!(
                "finite differences support total order 4, lattice sequence needs {}",
                2 * order
            )));
        }
    }
    Ok(())
}

/// The integrand of a lattice sequence at one point, given a full jet of
/// orders `(n, n)` (or `(1, 1)` for `w`).
fn integrand(kind: SeqKind, n: usize, jet: &Jet) -> f64 {
    match kind {
        SeqKind::V => {
            let mut f = 0.0;
            for k in 0..=n {
                for s in 0..=n {
                    f += jet.derivative(k, s).abs();
                }
            }
            f
        }
        SeqKind::W => jet.derivative(1, 1).abs(),
    }
}

fn fd_integrand(sym: &SymbolField, kind: SeqKind, n: usize, x: f64, xi: f64) -> Result<f64> {
    let d = |k: usize, s: usize| -> Result<f64> {
        let v = sym.eval_derivative(k, s, x, xi)?;
        if !v.reliable {
            return Err(Error::NonSmooth(format!("finite-difference stencil crosses a discontinuity at ({x}, {xi})")));
        }
        Ok(v.value.norm())
    };
    match kind {
        SeqKind::V => {
            let mut f = 0.0;
            for k in 0..=n {
                for s in 0..=n {
                    f += d(k, s)?;
                }
            }
            Ok(f)
        }
        SeqKind::W => d(1, 1),
    }
}

/// `∫_cell F²` for every unit cell; row index `x` cell, column `ξ` cell.
fn cell_integrals(sym: &SymbolField, kind: SeqKind, n: usize, rule: &CellRule) -> Result<Vec<f64>> {
    let cells = rule.cells;
    let closed = sym.derivative_mode == DerivativeMode::ClosedForm;
    let order = match kind {
        SeqKind::V => n,
        SeqKind::W => 1,
    };
    if closed && sym.is_separable() {
        // F = A(x) B(ξ) for product symbols, so each cell integral factorises
        let axis_integrals = |axis: Axis| -> Vec<f64> {
            (0..cells)
                .map(|c| {
                    let mut acc = 0.0;
                    for q in 0..CELL_POINTS {
                        let i = c * CELL_POINTS + q;
                        let j = sym.factor_jet(axis, rule.nodes[i], order).expect("separable");
                        let a: f64 = match kind {
                            SeqKind::V => (0..=order).map(|k| axis_derivative(&j, axis, k).abs()).sum(),
                            SeqKind::W => axis_derivative(&j, axis, 1).abs(),
                        };
                        acc += rule.weights[i] * a * a;
                    }
                    acc
                })
                .collect()
        };
        let ix = axis_integrals(Axis::X);
        let ixi = axis_integrals(Axis::Xi);
        let mut out = vec![0.0; cells * cells];
        for a in 0..cells {
            for b in 0..cells {
                out[a * cells + b] = ix[a] * ixi[b];
            }
        }
        return Ok(out);
    }

    let mut out = vec![0.0; cells * cells];
    out.par_iter_mut()
        .enumerate()
        .map(|(idx, slot)| -> Result<()> {
            let (a, b) = (idx / cells, idx % cells);
            let mut acc = 0.0;
            for qa in 0..CELL_POINTS {
                let ia = a * CELL_POINTS + qa;
                for qb in 0..CELL_POINTS {
                    let ib = b * CELL_POINTS + qb;
                    let (x, xi) = (rule.nodes[ia], rule.nodes[ib]);
                    let f = if closed {
                        let jet = sym.jet(x, xi, order, order).ok_or_else(|| Error::NonSmooth(format!("no jet for {sym}")))?;
                        integrand(kind, order, &jet)
                    } else {
                        fd_integrand(sym, kind, order, x, xi)?
                    };
                    acc += rule.weights[ia] * rule.weights[ib] * f * f;
                }
            }
            *slot = acc;
            Ok(())
        })
        .collect::<Result<Vec<()>>>()?;
    Ok(out)
}

fn axis_derivative(j: &Jet, axis: Axis, k: usize) -> f64 {
    match axis {
        Axis::X => j.derivative(k, 0),
        Axis::Xi => j.derivative(0, k),
    }
}

fn lattice_from_cells(cells: &[f64], rule: &CellRule, box_radius: i64, kind: SeqKind, n: usize) -> Result<LatticeSeq> {
    let side = rule.cells;
    LatticeSeq::from_fn(box_radius, kind, n, |k1, k2| {
        let mut s = 0.0;
        for i in [k1 - 1, k1] {
            for j in [k2 - 1, k2] {
                s += cells[rule.cell(i) * side + rule.cell(j)];
            }
        }
        s.max(0.0).sqrt()
    })
}

/// `v_k = ‖F_n(·; a)‖_{L²((-1,1)² + k)}` with `n = n(q)`.
pub fn v_sequence(sym: &SymbolField, q: f64, box_radius: i64) -> Result<LatticeSeq> {
    let n = n_order(q)?;
    sequence(sym, SeqKind::V, n, box_radius)
}

/// `w_k = ‖∂_x ∂_ξ a‖_{L²((-1,1)² + k)}`.
pub fn w_sequence(sym: &SymbolField, box_radius: i64) -> Result<LatticeSeq> {
    sequence(sym, SeqKind::W, 1, box_radius)
}

fn sequence(sym: &SymbolField, kind: SeqKind, n: usize, box_radius: i64) -> Result<LatticeSeq> {
    if box_radius < 1 {
        return Err(invalid(format!("box radius must be at least 1, got {box_radius}")));
    }
    check_derivatives(sym, if kind == SeqKind::V { n } else { 1 })?;
    let rule = CellRule::new(box_radius);
    let cells = cell_integrals(sym, kind, n, &rule)?;
    lattice_from_cells(&cells, &rule, box_radius, kind, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Maximum over all scanned levels (`M`, `N`).
    Sup,
    /// Maximum over the last decade of levels (`M°`, `N°`).
    LimsupScan,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub p: f64,
    pub sigma: f64,
    pub levels: Vec<f64>,
    pub values: Vec<f64>,
    /// Least-squares slope of `values / mean(values)` against `log10(1/E)`
    /// over the last decade of levels.
    pub drift_slope: f64,
    /// Set when the superlevel sets may extend beyond the computed region,
    /// so the values are lower bounds only.
    pub truncated: bool,
    #[serde(skip)]
    pub value: f64,
}

impl ScanReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain numeric struct")
    }
}

/// `per_decade` logarithmically spaced levels per decade, strictly
/// decreasing from `top` over `decades` decades (the first level is `top`).
pub fn log_levels(top: f64, decades: usize, per_decade: usize) -> Vec<f64> {
    (0..=decades * per_decade)
        .map(|j| top * 10f64.powf(-(j as f64) / per_decade as f64))
        .collect()
}

fn check_levels(levels: &[f64]) -> Result<()> {
    if levels.is_empty() {
        return Err(invalid("empty level grid"));
    }
    if levels.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
        return Err(invalid("levels must be positive and finite"));
    }
    if levels.windows(2).any(|w| w[1] >= w[0]) {
        return Err(invalid("levels must be strictly decreasing"));
    }
    Ok(())
}

/// `E log^{-σ}(1/E + 2) · count^{1/p}`.
pub fn scan_term(e: f64, count: f64, p: f64, sigma: f64) -> f64 {
    e * (1.0 / e + 2.0).ln().powf(-sigma) * count.powf(1.0 / p)
}

fn finish_scan(p: f64, sigma: f64, levels: Vec<f64>, values: Vec<f64>, truncated: bool, mode: ScanMode) -> ScanReport {
    let tail = levels.len().min(LEVELS_PER_DECADE + 1);
    let start = levels.len() - tail;
    let (tl, tv) = (&levels[start..], &values[start..]);
    let mean = tv.iter().sum::<f64>() / tv.len() as f64;
    let drift_slope = if mean > 0.0 && tail > 1 {
        let xs: Vec<f64> = tl.iter().map(|e| (1.0 / e).log10()).collect();
        let ys: Vec<f64> = tv.iter().map(|v| v / mean).collect();
        ls_slope(&xs, &ys)
    } else {
        0.0
    };
    let value = match mode {
        ScanMode::Sup => values.iter().copied().fold(0.0, f64::max),
        ScanMode::LimsupScan => tv.iter().copied().fold(0.0, f64::max),
    };
    ScanReport { p, sigma, levels, values, drift_slope, truncated, value }
}

/// Default levels for lattice scans: 40 per decade, ending just above the
/// largest boundary value (so the scan is not truncated) and reaching up
/// 4 decades or to `max v`, whichever is lower.
pub fn default_m_levels(seq: &LatticeSeq) -> Vec<f64> {
    let top = seq.max();
    if top <= 0.0 {
        return log_levels(1.0, DECADES, LEVELS_PER_DECADE);
    }
    let floor = 2.0 * seq.boundary_max();
    let bottom = if floor > 0.0 { floor.min(top) } else { top * 10f64.powi(-(DECADES as i32)) };
    let decades = (top / bottom).log10().min(DECADES as f64);
    let count = (decades * LEVELS_PER_DECADE as f64).floor() as usize;
    (0..=count)
        .map(|j| bottom * 10f64.powf((count - j) as f64 / LEVELS_PER_DECADE as f64))
        .collect()
}

/// Scan of `E log^{-σ}(1/E + 2) #{k : v_k > E}^{1/p}` over the given levels
/// (default: [`default_m_levels`]).
pub fn m_functional(seq: &LatticeSeq, p: f64, sigma: f64, mode: ScanMode, levels: Option<&[f64]>) -> Result<ScanReport> {
    check_p_sigma(p, sigma)?;
    let levels: Vec<f64> = match levels {
        Some(l) => l.to_vec(),
        None => default_m_levels(seq),
    };
    check_levels(&levels)?;
    let mut sorted: Vec<f64> = seq.values().to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let values = levels
        .iter()
        .map(|&e| scan_term(e, sorted.partition_point(|&v| v > e) as f64, p, sigma))
        .collect();
    let truncated = seq.boundary_max() > *levels.last().expect("non-empty");
    Ok(finish_scan(p, sigma, levels, values, truncated, mode))
}

fn check_p_sigma(p: f64, sigma: f64) -> Result<()> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(invalid(format!("p must be positive, got {p}")));
    }
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(invalid(format!("sigma must be non-negative, got {sigma}")));
    }
    Ok(())
}

/// Midpoint counting grid on `[-box, box]²`, stretched by `x = sinh(u)` so
/// that cells grow proportionally to the distance from the origin.
struct StretchedGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl StretchedGrid {
    fn new(half: f64, n: usize) -> Self {
        let umax = half.asinh();
        let du = 2.0 * umax / n as f64;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for j in 0..n {
            let u = -umax + (j as f64 + 0.5) * du;
            nodes.push(u.sinh());
            weights.push(u.cosh() * du);
        }
        StretchedGrid { nodes, weights }
    }
}

const START_NODES: usize = 128;
const MAX_NODES: usize = 8192;

/// Weighted samples of `ρ` on the stretched grid, sorted by decreasing `ρ`,
/// with cumulative area.
struct VolumeTable {
    rho_desc: Vec<f64>,
    cum_area: Vec<f64>,
    boundary_max: f64,
}

impl VolumeTable {
    fn new(rho: &SymbolField, half: f64, n: usize) -> Self {
        let g = StretchedGrid::new(half, n);
        let mut samples: Vec<(f64, f64)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|a| {
                let g = &g;
                (0..n).map(move |b| (rho.eval_re(g.nodes[a], g.nodes[b]), g.weights[a] * g.weights[b]))
            })
            .collect();
        let mut boundary_max: f64 = 0.0;
        for i in 0..n {
            for &(a, b) in &[(0, i), (n - 1, i), (i, 0), (i, n - 1)] {
                boundary_max = boundary_max.max(samples[a * n + b].0);
            }
        }
        samples.sort_by(|x, y| y.0.total_cmp(&x.0));
        let mut cum = 0.0;
        let mut cum_area = Vec::with_capacity(samples.len());
        for s in &samples {
            cum += s.1;
            cum_area.push(cum);
        }
        VolumeTable { rho_desc: samples.into_iter().map(|s| s.0).collect(), cum_area, boundary_max }
    }

    fn volume(&self, e: f64) -> f64 {
        let k = self.rho_desc.partition_point(|&v| v > e);
        if k == 0 {
            0.0
        } else {
            self.cum_area[k - 1]
        }
    }
}

/// `|{τ ∈ ℝ² : ρ(τ) > E}|` for each level, by midpoint counting on a
/// stretched grid over `[-box, box]²`, doubled until successive results
/// agree to 0.5%.
pub fn phase_volumes(rho: &SymbolField, levels: &[f64], box_half_width: f64) -> Result<Vec<f64>> {
    if !(box_half_width > 0.0 && box_half_width.is_finite()) {
        return Err(invalid(format!("phase box must be positive, got {box_half_width}")));
    }
    let mut n = START_NODES;
    let mut prev: Option<Vec<f64>> = None;
    while n <= MAX_NODES {
        let table = VolumeTable::new(rho, box_half_width, n);
        if levels.iter().any(|&e| table.boundary_max > e) {
            return Err(Error::BoxTooSmall { suggested: 4.0 * box_half_width });
        }
        let vols: Vec<f64> = levels.iter().map(|&e| table.volume(e)).collect();
        if let Some(p) = &prev {
            let converged = p.iter().zip(&vols).all(|(a, b)| (a - b).abs() <= VOLUME_RTOL * a.abs().max(b.abs()));
            if converged {
                return Ok(vols);
            }
        }
        prev = Some(vols);
        n *= 2;
    }
    Err(Error::Quadrature(format!("phase volume not converged at {MAX_NODES}² nodes")))
}

pub fn phase_volume(rho: &SymbolField, e: f64, box_half_width: f64) -> Result<f64> {
    if !(e > 0.0) {
        return Err(invalid(format!("level must be positive, got {e}")));
    }
    Ok(phase_volumes(rho, &[e], box_half_width)?[0])
}

/// A positive envelope `ρ` with the parameters of its phase-volume
/// functional.
#[derive(Clone, Debug)]
pub struct PhaseProfile {
    pub rho: SymbolField,
    pub p: f64,
    pub sigma: f64,
    pub levels: Vec<f64>,
    pub box_half_width: f64,
}

impl PhaseProfile {
    /// Default levels: 40 per decade over 4 decades below `ρ(0, 0)`.
    pub fn new(rho: SymbolField, p: f64, sigma: f64) -> Result<Self> {
        check_p_sigma(p, sigma)?;
        let top = rho.eval_re(0.0, 0.0);
        if !(top > 0.0) {
            return Err(invalid("envelope must be positive at the origin"));
        }
        Ok(PhaseProfile {
            rho,
            p,
            sigma,
            levels: log_levels(top, DECADES, LEVELS_PER_DECADE),
            box_half_width: DEFAULT_PHASE_BOX,
        })
    }

    pub fn with_levels(mut self, levels: Vec<f64>) -> Result<Self> {
        check_levels(&levels)?;
        self.levels = levels;
        Ok(self)
    }

    pub fn with_box(mut self, half: f64) -> Self {
        self.box_half_width = half;
        self
    }
}

/// Scan of `E log^{-σ}(1/E + 2) |{ρ > E}|^{1/p}` over the profile levels.
pub fn n_functional(pp: &PhaseProfile, mode: ScanMode) -> Result<ScanReport> {
    check_levels(&pp.levels)?;
    let vols = phase_volumes(&pp.rho, &pp.levels, pp.box_half_width)?;
    let values = pp.levels.iter().zip(&vols).map(|(&e, &v)| scan_term(e, v, pp.p, pp.sigma)).collect();
    Ok(finish_scan(pp.p, pp.sigma, pp.levels.clone(), values, false, mode))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_values() {
        assert_eq!(window(0.0), 1.0);
        assert!((window(0.5) - 0.5).abs() < 1e-15);
        assert_eq!(window(1.0), 0.0);
        assert_eq!(window(-1.2), 0.0);
    }

    #[test]
    fn partition_examples() {
        let s: f64 = [(0, 0), (1, 0), (0, 1), (1, 1)].iter().map(|&k| partition_weight(k, (0.5, 0.5))).sum();
        assert!((s - 1.0).abs() < 1e-12);
        assert_eq!(partition_weight((0, 0), (1.5, 0.0)), 0.0);
        assert_eq!(partition_weight((0, 0), (0.0, 0.0)), window(0.0).powi(2));
    }

    #[test]
    fn n_of_q() {
        assert_eq!(n_order(1.0).unwrap(), 2);
        assert_eq!(n_order(0.5).unwrap(), 3);
        assert_eq!(n_order(0.3).unwrap(), 4);
        assert!(n_order(0.0).is_err());
    }

    #[test]
    fn zero_symbol_gives_zero_sequences() {
        let v = v_sequence(&SymbolField::zero(), 0.5, 4).unwrap();
        assert!(v.values().iter().all(|&x| x == 0.0));
        let r = m_functional(&v, 1.0, 0.0, ScanMode::Sup, None).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn single_point_sequence() {
        let seq = LatticeSeq::from_fn(3, SeqKind::V, 2, |k1, k2| if k1 == 0 && k2 == 0 { 1.0 } else { 0.0 }).unwrap();
        let levels = [0.999, 0.5, 0.1];
        let r = m_functional(&seq, 1.0, 0.0, ScanMode::Sup, Some(&levels)).unwrap();
        assert_eq!(r.value, 0.999);
        assert!(!r.truncated);
    }

    #[test]
    fn indicator_symbols_rejected() {
        let s = SymbolField::disk_indicator(1.0).unwrap();
        assert!(matches!(v_sequence(&s, 0.5, 2), Err(Error::NonSmooth(_))));
    }

    #[test]
    fn superlevel_beyond_box_rejected() {
        let rho = SymbolField::radial_power(2.0).unwrap();
        assert!(matches!(phase_volume(&rho, 1e-4, 10.0), Err(Error::BoxTooSmall { .. })));
    }

    #[test]
    fn level_above_sup_has_zero_volume() {
        let rho = SymbolField::radial_power(2.0).unwrap();
        assert_eq!(phase_volume(&rho, 1.5, 10.0).unwrap(), 0.0);
    }

    #[test]
    fn csv_header() {
        let seq = LatticeSeq::from_fn(1, SeqKind::W, 1, |_, _| 0.25).unwrap();
        let mut buf = Vec::new();
        seq.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("k1,k2,value\n-1,-1,"));
        assert_eq!(text.lines().count(), 10);
    }
}
