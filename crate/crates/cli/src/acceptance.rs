//! Acceptance suite: one numbered check per published claim, each reporting
//! the measured value next to its target and tolerance.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use wspectra::lattice::{log_levels, n_functional, partition_weight, PhaseProfile, ScanMode};
use wspectra::quad::integrate;
use wspectra::quantize::{build_kn, build_t, build_weyl, build_weyl_of_dual, hs_norm_matrix, OperatorMatrix};
use wspectra::schrodinger::{
    bridge_potential, bs_count, build_bs_matrix, coupling_scan, decoupled_count, default_radius, Domain, SchrodingerProblem, DECOUPLING_BAR,
};
use wspectra::spectra::{check_kyfan, eig_hermitian, singular_values, tail_functional_with, decay_fit_seq, TailParams};
use wspectra::symbols::{sample, DualOptions};
use wspectra::{Grid1D, Grid2D, Result, SymbolField};

use crate::config::Level;

/// `1/(2π²)`.
pub const SECTOR_CONSTANT: f64 = 1.0 / (2.0 * PI * PI);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub tier: &'static str,
    pub pass: bool,
    pub measured: String,
    pub target: String,
    pub tolerance: String,
    pub warnings: Vec<String>,
}

impl Outcome {
    pub fn line(&self) -> String {
        let mut s = format!(
            "[{}] {:>2} {:<24} measured: {} | target: {} | tolerance: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.measured,
            self.target,
            self.tolerance
        );
        if !self.warnings.is_empty() {
            let _ = write!(s, " | warnings: {}", self.warnings.join("; "));
        }
        s
    }
}

struct Check {
    pass: bool,
    measured: String,
    target: String,
    tolerance: String,
    warnings: Vec<String>,
}

impl Check {
    fn new(pass: bool, measured: String, target: impl Into<String>, tolerance: impl Into<String>) -> Self {
        Check { pass, measured, target: target.into(), tolerance: tolerance.into(), warnings: Vec::new() }
    }

    fn warn(mut self, w: impl IntoIterator<Item = String>) -> Self {
        self.warnings.extend(w);
        self
    }
}

type Criterion = fn(u64) -> Result<Check>;

const CRITERIA: [(u32, &str, Level, Criterion); 13] = [
    (1, "mehler-oracle", Level::Fast, mehler),
    (2, "hs-identity", Level::Fast, hs_identity),
    (3, "duality", Level::Fast, duality),
    (4, "coulomb-count", Level::Fast, coulomb_count),
    (5, "birman-schwinger", Level::Fast, birman_schwinger),
    (6, "sector-constant-ode", Level::Fast, sector_constant_ode),
    (7, "sector-drift", Level::Full, sector_drift),
    (8, "angle-independence", Level::Full, angle_independence),
    (9, "disk-decay", Level::Full, disk_decay),
    (10, "polygon-and-off-corner", Level::Full, polygon_and_off_corner),
    (11, "weyl-minus-kn-ratio", Level::Fast, weyl_minus_kn),
    (12, "ky-fan", Level::Fast, ky_fan),
    (13, "lattice-volume", Level::Fast, lattice_volume),
];

/// Criterion ids that run at `level` (`full` includes every fast check).
pub fn selected(level: Level) -> Vec<u32> {
    CRITERIA.iter().filter(|c| level == Level::Full || c.2 == Level::Fast).map(|c| c.0).collect()
}

/// Runs one criterion; numerical errors become failing entries.
pub fn run_criterion(id: u32, seed: u64) -> Option<Outcome> {
    let &(id, name, tier, f) = CRITERIA.iter().find(|c| c.0 == id)?;
    let tier = if tier == Level::Fast { "fast" } else { "full" };
    Some(match f(seed) {
        Ok(c) => Outcome { id, name, tier, pass: c.pass, measured: c.measured, target: c.target, tolerance: c.tolerance, warnings: c.warnings },
        Err(e) => Outcome {
            id,
            name,
            tier,
            pass: false,
            measured: format!("error: {e}"),
            target: "-".into(),
            tolerance: "-".into(),
            warnings: Vec::new(),
        },
    })
}

pub fn run_suite(level: Level, seed: u64, mut progress: impl FnMut(&Outcome)) -> Vec<Outcome> {
    selected(level)
        .into_iter()
        .filter_map(|id| {
            let o = run_criterion(id, seed)?;
            progress(&o);
            Some(o)
        })
        .collect()
}

pub fn report(level: Level, seed: u64, outcomes: &[Outcome]) -> String {
    let mut s = format!("wspectra acceptance suite, level {level}, seed {seed}\n");
    for o in outcomes {
        let _ = writeln!(s, "{}", o.line());
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let _ = writeln!(s, "{passed}/{} criteria passed", outcomes.len());
    s
}

fn grid(l: f64, n: usize) -> Result<Grid1D> {
    Grid1D::new(l, n)
}

fn mehler_value(r: f64, k: usize) -> f64 {
    (1.0 / (1.0 + r)) * ((1.0 - r) / (1.0 + r)).powi(k as i32)
}

fn mehler(_: u64) -> Result<Check> {
    let mut worst: f64 = 0.0;
    let mut oracle_defect: f64 = 0.0;
    let mut warnings = Vec::new();
    let mut above = 0;
    for (r, l, n, lxi) in [(1.0, 8.0, 256, 8.0), (1.0 / 3.0, 10.0, 192, 12.0)] {
        // oracle: Σλ_k = (2π)^{-1}∬a and Σλ_k² = (2π)^{-1}∬a², integrals by quadrature
        let line = |c: f64| integrate(|x| (-c * r * x * x).exp(), -40.0, 40.0, 1e-13, 0.0);
        let (int_a, int_a2) = (line(1.0)?.powi(2) / (2.0 * PI), line(2.0)?.powi(2) / (2.0 * PI));
        let trace: f64 = (0..4000).map(|k| mehler_value(r, k)).sum();
        let hs: f64 = (0..4000).map(|k| mehler_value(r, k).powi(2)).sum();
        oracle_defect = oracle_defect.max((trace - int_a).abs()).max((hs - int_a2).abs());

        let op = build_weyl(&SymbolField::gaussian(r)?, &grid(l, n)?, &grid(lxi, n)?)?;
        warnings.extend(op.warnings.iter().cloned());
        let sd = eig_hermitian(&op)?;
        for k in 0..=5 {
            let got = sd.pos_eigs.get(k).copied().unwrap_or(0.0);
            worst = worst.max((got - mehler_value(r, k)).abs());
        }
        worst = worst.max(sd.neg_eigs.first().copied().unwrap_or(0.0));
        if r == 1.0 {
            above = sd.pos_eigs.iter().chain(&sd.neg_eigs).filter(|&&v| v > 1e-3).count();
        }
    }
    let pass = worst <= 1e-3 && above == 1 && oracle_defect <= 1e-10;
    Ok(Check::new(
        pass,
        format!("max |λ_k − oracle| = {worst:.3e} (k ≤ 5, r ∈ {{1, 1/3}}); {above} eigenvalue(s) > 1e-3 at r=1; oracle trace/HS defect {oracle_defect:.1e}"),
        "(1/(1+r))((1−r)/(1+r))^k; one eigenvalue above 1e-3 at r=1",
        "1e-3 absolute",
    )
    .warn(warnings))
}

fn hs_identity(_: u64) -> Result<Check> {
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    let mut warnings = Vec::new();
    let bump_radial = |r: f64| {
        integrate(|rho| {
            let u = rho / r;
            if u >= 1.0 { 0.0 } else { (2.0 - 2.0 / (1.0 - u * u)).exp() * rho }
        }, 0.0, r, 1e-12, 0.0)
    };
    let cases: [(&str, SymbolField, f64, Grid1D, Grid1D); 2] = [
        {
            let r = 1.0;
            let line = integrate(|x| (-2.0 * r * x * x).exp(), -40.0, 40.0, 1e-13, 0.0)?;
            ("gaussian(1)", SymbolField::gaussian(r)?, line * line / (2.0 * PI), grid(8.0, 128)?, grid(8.0, 128)?)
        },
        {
            let (r, angle) = (6.0, PI / 2.0);
            ("sector_bump(pi/2, 6)", SymbolField::sector_bump(angle, r)?, angle * bump_radial(r)? / (2.0 * PI), grid(48.0, 2048)?, grid(6.5, 512)?)
        },
    ];
    for (name, sym, exact, g, gx) in &cases {
        let mut rel: f64 = 0.0;
        for t in [0.0, 0.25, 0.5, 1.0] {
            let op = build_t(sym, g, gx, t)?;
            warnings.extend(op.warnings.iter().map(|w| format!("{name} t={t}: {w}")));
            rel = rel.max((hs_norm_matrix(&op).powi(2) - exact).abs() / exact);
        }
        parts.push(format!("{name} {:.3}%", 100.0 * rel));
        worst = worst.max(rel);
    }
    Ok(Check::new(
        worst <= 0.01,
        format!("max relative HS defect over t ∈ {{0, 1/4, 1/2, 1}}: {}", parts.join(", ")),
        "‖op^(t)(a)‖²_HS = (2π)^{-1}∬|a|²",
        "1% relative",
    )
    .warn(warnings))
}

fn top_rel_diff(a: &OperatorMatrix, b: &OperatorMatrix, k: usize) -> f64 {
    let (sa, sb) = (singular_values(a), singular_values(b));
    (0..k).map(|i| (sa.svals[i] - sb.svals[i]).abs() / sa.svals[i]).fold(0.0, f64::max)
}

fn duality(_: u64) -> Result<Check> {
    let mut warnings = Vec::new();
    let r = 1.0 / 3.0;
    let (g, gx) = (grid(10.0, 256)?, grid(12.0, 256)?);
    let a = build_weyl(&SymbolField::gaussian(r)?, &g, &gx)?;
    let d = build_weyl(&SymbolField::gaussian(1.0 / r)?.scaled(1.0 / r), &g, &gx)?;
    let analytic = top_rel_diff(&a, &d, 20);

    let sym = SymbolField::bump(6.0, (0.5, -0.3))?;
    let s = sample(&sym, &Grid2D::square(7.0, 192)?);
    let (g, gx) = (grid(7.0, 160)?, grid(7.0, 192)?);
    let a = build_weyl(&sym, &g, &gx)?;
    let d = build_weyl_of_dual(&s, &g, &gx, DualOptions::default())?;
    warnings.extend(d.warnings.iter().cloned());
    let numerical = top_rel_diff(&a, &d, 20);
    Ok(Check::new(
        analytic <= 0.01 && numerical <= 0.01,
        format!("max relative gap of top-20 singular values: gaussian(1/3) {analytic:.2e}, bump(6) numerical dual {numerical:.2e}"),
        "s_k(op^w(a)) = s_k(op^w(a*))",
        "1% relative",
    )
    .warn(warnings))
}

fn coulomb(g: f64) -> Result<SymbolField> {
    Ok(SymbolField::power_decay(2.0, 0.0)?.scaled(g))
}

fn coulomb_count(_: u64) -> Result<Check> {
    let rows = coupling_scan(&SymbolField::power_decay(2.0, 0.0)?, &[1e2, 1e4, 1e6], 1.0)?;
    let ratios: Vec<f64> = rows.iter().map(|r| (r.count as f64 - r.main_term).abs() / r.g.sqrt()).collect();
    let bounded = ratios.iter().all(|&q| q <= 3.0);
    let non_growing = ratios.windows(2).all(|w| w[1] <= w[0]);
    let shown: Vec<String> = rows.iter().zip(&ratios).map(|(r, q)| format!("g={:e}: count {}, ratio {q:.4}", r.g, r.count)).collect();
    Ok(Check::new(
        bounded && non_growing,
        format!("{}; bounded {bounded}, non-growing {non_growing}", shown.join(", ")),
        "|count − (√g/π) log g|/√g ≤ 3, non-growing in g",
        "slack 3",
    ))
}

fn birman_schwinger(_: u64) -> Result<Check> {
    let grid = grid(200.0, 4096)?;
    let mut pass = true;
    let mut shown = Vec::new();
    let mut warnings = Vec::new();
    for g in [10.0, 50.0, 100.0] {
        let r = default_radius(g, 1.0);
        let prob = SchrodingerProblem::new(coulomb(g)?, 1.0, Domain::WholeLine { radius: r })?;
        let ode = decoupled_count(&prob, r)?.count;
        let bs = bs_count(&build_bs_matrix(&coulomb(g)?, 1.0, &grid)?);
        if bs.is_boundary_sensitive() {
            warnings.push(format!("g={g}: eigenvalues near 1: {:?}", bs.boundary_sensitive));
        }
        pass &= !bs.is_boundary_sensitive() && bs.count.abs_diff(ode) <= DECOUPLING_BAR;
        shown.push(format!("g={g}: bs {} ode {}", bs.count, ode));
    }
    Ok(Check::new(pass, shown.join(", "), "bs_count = ODE count, no boundary-sensitive eigenvalues", format!("±{DECOUPLING_BAR}")).warn(warnings))
}

fn sector_constant_ode(_: u64) -> Result<Check> {
    let mut pass = true;
    let mut shown = Vec::new();
    for s in [1e-3, 1e-4, 1e-5] {
        let g = 1.0 / (16.0 * PI * PI * s * s);
        let r = default_radius(g, 1.0);
        let prob = SchrodingerProblem::new(bridge_potential(s)?, 1.0, Domain::WholeLine { radius: r })?;
        let n = decoupled_count(&prob, r)?.count as f64;
        let log = (1.0 / s).ln();
        let est = n * s / log;
        pass &= (est - SECTOR_CONSTANT).abs() <= 1.5 / log;
        shown.push(format!("s={s:e}: n={n}, n·s/log(1/s)={est:.5} (bar {:.4})", 1.5 / log));
    }
    Ok(Check::new(pass, shown.join(", "), format!("1/(2π²) = {SECTOR_CONSTANT:.6}"), "1.5/log(1/s)"))
}

/// `s_k · f(k)` over the window together with the drift of that series
/// against `ln k`.
struct Windowed {
    series: Vec<f64>,
    drift: f64,
    warnings: Vec<String>,
}

impl Windowed {
    fn mean(&self) -> f64 {
        self.series.iter().sum::<f64>() / self.series.len() as f64
    }

    fn min(&self) -> f64 {
        self.series.iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn max(&self) -> f64 {
        self.series.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

fn weyl_svals(sym: &SymbolField, l: f64, n: usize, lxi: f64, nxi: usize) -> Result<(Vec<f64>, Vec<String>)> {
    let op = build_weyl(sym, &grid(l, n)?, &grid(lxi, nxi)?)?;
    let sd = eig_hermitian(&op)?;
    Ok((sd.svals, op.warnings))
}

fn windowed(svals: &[f64], warnings: Vec<String>, window: (usize, usize), f: impl Fn(f64) -> f64) -> Result<Windowed> {
    let t = tail_functional_with(svals, &TailParams::new(1.0, 0.0)?, window, f)?;
    Ok(Windowed { series: t.series, drift: t.drift_slope, warnings })
}

fn k_over_log(k: f64) -> f64 {
    k / k.ln()
}

const SECTOR_GRID: (f64, usize, f64, usize) = (200.0, 2048, 1.0, 1024);

fn sector_series(angle: f64) -> Result<Windowed> {
    let (l, n, lxi, nxi) = SECTOR_GRID;
    let (sv, w) = weyl_svals(&SymbolField::sector_bump(angle, 1.0)?, l, n, lxi, nxi)?;
    windowed(&sv, w, (50, 300), k_over_log)
}

fn sector_drift(_: u64) -> Result<Check> {
    let w = sector_series(PI / 2.0)?;
    let (lo, hi) = (0.5 * SECTOR_CONSTANT, 2.0 * SECTOR_CONSTANT);
    let in_band = w.min() >= lo && w.max() <= hi;
    // drift must point from the start of the window toward the target,
    // unless the window already sits within 10% of it
    let toward = (SECTOR_CONSTANT - w.series[0]) * w.drift >= 0.0;
    let close = (w.mean() - SECTOR_CONSTANT).abs() <= 0.1 * SECTOR_CONSTANT;
    Ok(Check::new(
        in_band && (toward || close),
        format!(
            "s_k·k/log k ∈ [{:.5}, {:.5}], mean {:.5}, drift {:+.5} per unit ln k",
            w.min(),
            w.max(),
            w.mean(),
            w.drift
        ),
        format!("[0.5, 2]×{SECTOR_CONSTANT:.5}; drift toward target"),
        "band factor 2; or window mean within 10%",
    )
    .warn(w.warnings))
}

fn angle_independence(_: u64) -> Result<Check> {
    let half = sector_series(PI / 2.0)?;
    let third = sector_series(PI / 3.0)?;
    let ratio = third.mean() / half.mean();
    let measured = format!("window means θ=π/3 {:.5}, θ=π/2 {:.5}, ratio {ratio:.4}", third.mean(), half.mean());
    let mut warnings = half.warnings;
    warnings.extend(third.warnings);
    Ok(Check::new(
        (1.0 / 1.5..=1.5).contains(&ratio),
        measured,
        "ratio 1",
        "factor 1.5",
    )
    .warn(warnings))
}

fn disk_decay(_: u64) -> Result<Check> {
    let (sv, w) = weyl_svals(&SymbolField::disk_indicator(2.0)?, 100.0, 1024, 2.0, 512)?;
    let e = decay_fit_seq(&sv, (20, 200))?;
    Ok(Check::new((-0.85..=-0.70).contains(&e), format!("decay exponent {e:.4} over k ∈ [20, 200]"), "−3/4", "[−0.85, −0.70]").warn(w))
}

/// Relative drift above which a series counts as growing.
const UPWARD_DRIFT_TOL: f64 = 0.05;

fn polygon_and_off_corner(_: u64) -> Result<Check> {
    let square = vec![(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)];
    let (sv, mut warnings) = weyl_svals(&SymbolField::polygon_bump(square, 1.0)?, 100.0, 1024, 1.0, 512)?;
    let poly = windowed(&sv, Vec::new(), (50, 300), k_over_log)?;
    // bump vanishing at the corner, cut by the sector edge ξ = 0
    let (sv, w) = weyl_svals(&SymbolField::sector_bump_centered(PI / 2.0, 1.0, (1.5, 0.0))?, 100.0, 1024, 1.25, 640)?;
    warnings.extend(w);
    let off = windowed(&sv, Vec::new(), (50, 300), |k| k)?;
    let (rp, ro) = (poly.drift / poly.mean(), off.drift / off.mean());
    Ok(Check::new(
        rp <= UPWARD_DRIFT_TOL && ro <= UPWARD_DRIFT_TOL,
        format!(
            "square: s_k·k/log k ∈ [{:.4}, {:.4}], relative drift {rp:+.4}; off-corner: s_k·k ∈ [{:.4}, {:.4}], relative drift {ro:+.4}",
            poly.min(),
            poly.max(),
            off.min(),
            off.max()
        ),
        "bounded, no upward drift",
        format!("relative drift ≤ {UPWARD_DRIFT_TOL}"),
    )
    .warn(warnings))
}

fn weyl_minus_kn(_: u64) -> Result<Check> {
    // a wide Gaussian envelope keeps the ξ-cutoff of the box from adding
    // its own jump to the symbol
    let sym = SymbolField::b0_closed(1.0)?.times(SymbolField::gaussian(1.0 / 200.0)?);
    let (g, gx) = (grid(40.0, 1024)?, grid(40.0, 2048)?);
    let w = build_weyl(&sym, &g, &gx)?;
    let l = build_kn(&sym, &g, &gx)?;
    let sw = singular_values(&w).svals;
    let sd = singular_values(&w.sub(&l)?).svals;
    let ratio = |k: usize| sd[k - 1] / sw[k - 1];
    let (r10, r100) = (ratio(10), ratio(100));
    let factor = r10 / r100;
    let mut warnings = w.warnings.clone();
    warnings.extend(l.warnings.iter().cloned());
    warnings.dedup();
    Ok(Check::new(
        factor >= 3.0,
        format!("ratio k=10 {r10:.4e}, k=100 {r100:.4e}, decrease ×{factor:.2}"),
        "s_k(op^w − op^l)/s_k(op^w) decreasing",
        "≥ 3× from k=10 to k=100",
    )
    .warn(warnings))
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> Result<OperatorMatrix> {
    let mut e = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..=i {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), if i == j { 0.0 } else { rng.gen_range(-1.0..1.0) });
            e[i * n + j] = z;
            e[j * n + i] = z.conj();
        }
    }
    OperatorMatrix::from_entries(Grid1D::new(1.0, n)?, 0.5, "random", e)
}

fn ky_fan(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tp = TailParams::new(1.0, 1.0)?;
    let (mut violations, mut checks) = (0, 0);
    let mut first = None;
    for _ in 0..100 {
        let scale = 10f64.powf(rng.gen_range(-2.0..2.0));
        let a = random_hermitian(&mut rng, 16)?;
        let b = random_hermitian(&mut rng, 16)?;
        let b = b.lincomb(scale, &b, 0.0)?;
        let r = check_kyfan(&a, &b, &tp)?;
        checks += r.checks;
        if !r.passed {
            violations += 1;
            first = first.or(r.first_counterexample);
        }
    }
    Ok(Check::new(
        violations == 0,
        format!("{violations} violating pairs of 100 ({checks} inequalities checked){}", first.map(|f| format!("; first: {f}")).unwrap_or_default()),
        "Ky Fan (index and counting forms, signed) and 𝔖_{1,1} triangle inequality",
        "zero violations",
    ))
}

fn lattice_volume(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pou: f64 = 0.0;
    for _ in 0..10_000 {
        let tau: (f64, f64) = (rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
        let (c1, c2) = (tau.0.floor() as i64, tau.1.floor() as i64);
        let mut s = 0.0;
        for k1 in c1 - 2..=c1 + 2 {
            for k2 in c2 - 2..=c2 + 2 {
                s += partition_weight((k1, k2), tau);
            }
        }
        pou = pou.max((s - 1.0).abs());
    }

    let mut shown = Vec::new();
    let mut bounded = true;
    // ⟨τ⟩^{-γ}: p = 2/γ, σ = 0
    for gamma in [2.0, 3.0] {
        let pp = PhaseProfile::new(SymbolField::radial_power(gamma)?, 2.0 / gamma, 0.0)?;
        let r = n_functional(&pp, ScanMode::LimsupScan)?;
        bounded &= r.value.is_finite() && r.drift_slope.abs() <= 0.1;
        shown.push(format!("radial γ={gamma}: N°={:.4e} drift {:+.3}", r.value, r.drift_slope));
    }
    // ⟨x⟩^{-α}⟨ξ⟩^{-α}: p = 1/α, σ = 1/p
    for alpha in [1.0, 2.0] {
        let pp = PhaseProfile::new(SymbolField::power_decay(alpha, alpha)?, 1.0 / alpha, alpha)?
            .with_levels(log_levels(0.5, 3, 40))?
            .with_box(1e5);
        let r = n_functional(&pp, ScanMode::LimsupScan)?;
        bounded &= r.value.is_finite() && r.drift_slope.abs() <= 0.1;
        shown.push(format!("product α={alpha}: N°={:.4e} drift {:+.3}", r.value, r.drift_slope));
    }
    Ok(Check::new(
        bounded && pou <= 1e-12,
        format!("{}; partition of unity max defect {pou:.1e}", shown.join(", ")),
        "finite N-scans; Σ_k w_k = 1",
        "|drift| ≤ 0.1 over the last decade; 1e-12",
    ))
}
