//! Eigenvalues, singular values, counting functions and windowed estimates of
//! the tail functionals
//!
//! `G_{p,σ}(A) = limsup_k s_k f_σ(k)^{1/p}`, `g_{p,σ}(A) = liminf_k s_k f_σ(k)^{1/p}`
//!
//! with `f_σ(t) = t / log^σ(t + e^{σ+1})`.

use std::io::Write;

use faer::{Mat, Side};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::linalg::mat_from_row_major;
use crate::quantize::{relative_hermitian_defect, OperatorMatrix};

/// Magnitude below which spectral values are treated as discretization noise.
pub const NOISE_FLOOR: f64 = 1e-10;

/// Largest relative Hermitian defect accepted by [`eig_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    /// Positive eigenvalues, non-increasing.
    pub pos_eigs: Vec<f64>,
    /// Magnitudes of negative eigenvalues, non-increasing.
    pub neg_eigs: Vec<f64>,
    /// Singular values, non-increasing.
    pub svals: Vec<f64>,
    pub source_tag: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    All,
    Plus,
    Minus,
}

impl SpectralData {
    /// Build from an arbitrary list of eigenvalues of a Hermitian matrix.
    pub fn from_eigenvalues(eigs: &[f64], source_tag: impl Into<String>) -> Self {
        let mut pos: Vec<f64> = eigs.iter().copied().filter(|&v| v > 0.0).collect();
        let mut neg: Vec<f64> = eigs.iter().filter(|&&v| v < 0.0).map(|v| -v).collect();
        let mut svals: Vec<f64> = eigs.iter().map(|v| v.abs()).collect();
        sort_desc(&mut pos);
        sort_desc(&mut neg);
        sort_desc(&mut svals);
        SpectralData { pos_eigs: pos, neg_eigs: neg, svals, source_tag: source_tag.into() }
    }

    /// Build from singular values only.
    pub fn from_singular_values(mut svals: Vec<f64>, source_tag: impl Into<String>) -> Self {
        svals.iter_mut().for_each(|v| *v = v.abs());
        sort_desc(&mut svals);
        SpectralData { pos_eigs: Vec::new(), neg_eigs: Vec::new(), svals, source_tag: source_tag.into() }
    }

    pub fn sequence(&self, which: Which) -> &[f64] {
        match which {
            Which::All => &self.svals,
            Which::Plus => &self.pos_eigs,
            Which::Minus => &self.neg_eigs,
        }
    }

    /// Scale every entry by `mu > 0`.
    pub fn scaled(&self, mu: f64) -> Self {
        let s = |v: &[f64]| v.iter().map(|x| x * mu).collect();
        SpectralData {
            pos_eigs: s(&self.pos_eigs),
            neg_eigs: s(&self.neg_eigs),
            svals: s(&self.svals),
            source_tag: format!("{mu}·({})", self.source_tag),
        }
    }

    /// CSV `k,lambda_plus,lambda_minus,s`, `k` from 1, short columns padded
    /// with empty cells.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "k,lambda_plus,lambda_minus,s")?;
        let rows = self.pos_eigs.len().max(self.neg_eigs.len()).max(self.svals.len());
        let cell = |v: &[f64], i: usize| v.get(i).map(|x| format!("{x:.16e}")).unwrap_or_default();
        for i in 0..rows {
            writeln!(
                w,
                "{},{},{},{}",
                i + 1,
                cell(&self.pos_eigs, i),
                cell(&self.neg_eigs, i),
                cell(&self.svals, i)
            )?;
        }
        Ok(())
    }
}

fn sort_desc(v: &mut [f64]) {
    v.sort_by(|a, b| b.total_cmp(a));
}

fn real_part_matrix(a: &OperatorMatrix) -> Option<Mat<f64>> {
    let n = a.n();
    a.entries()
        .iter()
        .all(|z| z.im == 0.0)
        .then(|| Mat::from_fn(n, n, |i, j| a.get(i, j).re))
}

/// Full spectrum of a Hermitian matrix, split by sign.
pub fn eig_hermitian(a: &OperatorMatrix) -> Result<SpectralData> {
    let n = a.n();
    let defect = relative_hermitian_defect(n, a.entries());
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian { defect });
    }
    let eigs = match real_part_matrix(a) {
        Some(m) => m.selfadjoint_eigenvalues(Side::Lower),
        None => mat_from_row_major(n, n, a.entries()).selfadjoint_eigenvalues(Side::Lower),
    };
    Ok(SpectralData::from_eigenvalues(&eigs, a.symbol_tag.clone()))
}

/// Singular values of any square matrix.
pub fn singular_values(a: &OperatorMatrix) -> SpectralData {
    let n = a.n();
    let sv = match real_part_matrix(a) {
        Some(m) => m.singular_values(),
        None => mat_from_row_major(n, n, a.entries()).singular_values(),
    };
    SpectralData::from_singular_values(sv, a.symbol_tag.clone())
}

/// Number of entries strictly greater than `s` in the chosen sequence.
pub fn counting(sd: &SpectralData, s: f64, which: Which) -> usize {
    count_above(sd.sequence(which), s)
}

fn count_above(desc: &[f64], s: f64) -> usize {
    desc.partition_point(|&v| v > s)
}

pub fn f_sigma(t: f64, sigma: f64) -> f64 {
    if sigma == 0.0 {
        return t;
    }
    t / (t + (sigma + 1.0).exp()).ln().powf(sigma)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailParams {
    pub p: f64,
    pub sigma: f64,
    /// Values at or below this magnitude are rejected inside a window.
    #[serde(skip)]
    pub noise_floor: f64,
}

impl TailParams {
    pub fn new(p: f64, sigma: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 2.0) {
            return Err(invalid(format!("p must lie in (0, 2], got {p}")));
        }
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(invalid(format!("sigma must be non-negative, got {sigma}")));
        }
        Ok(TailParams { p, sigma, noise_floor: NOISE_FLOOR })
    }

    pub fn with_noise_floor(mut self, floor: f64) -> Self {
        self.noise_floor = floor;
        self
    }

    pub fn f(&self, t: f64) -> f64 {
        f_sigma(t, self.sigma)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailEstimate {
    pub p: f64,
    pub sigma: f64,
    pub k_min: usize,
    pub k_max: usize,
    pub sup: f64,
    pub inf: f64,
    pub drift_slope: f64,
    pub series: Vec<f64>,
}

impl TailEstimate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain numeric struct")
    }
}

fn check_window(seq: &[f64], window: (usize, usize), floor: f64) -> Result<()> {
    let (k_min, k_max) = window;
    if k_min < 2 || k_min > k_max {
        return Err(invalid(format!("window ({k_min}, {k_max}) needs 2 <= k_min <= k_max")));
    }
    if k_max > seq.len() {
        return Err(invalid(format!("window ends at k = {k_max} but only {} values exist", seq.len())));
    }
    if let Some(off) = seq[k_min - 1..k_max].iter().position(|&v| v <= floor) {
        return Err(Error::NoiseFloor { k: k_min + off, floor });
    }
    Ok(())
}

/// Least-squares slope of `ys` against `xs`.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Windowed estimate of `G_{p,σ}` and `g_{p,σ}` over `k ∈ [k_min, k_max]`
/// (1-based), together with the drift of the series against `log k`.
pub fn tail_functional(sd: &SpectralData, tp: &TailParams, window: (usize, usize), which: Which) -> Result<TailEstimate> {
    tail_functional_with(sd.sequence(which), tp, window, |k| tp.f(k))
}

/// As [`tail_functional`] on a raw non-increasing sequence, with an arbitrary
/// weight `f` in place of `f_σ`.
pub fn tail_functional_with(seq: &[f64], tp: &TailParams, window: (usize, usize), f: impl Fn(f64) -> f64) -> Result<TailEstimate> {
    check_window(seq, window, tp.noise_floor)?;
    let (k_min, k_max) = window;
    let ks: Vec<f64> = (k_min..=k_max).map(|k| k as f64).collect();
    let series: Vec<f64> = ks.iter().map(|&k| seq[k as usize - 1] * f(k).powf(1.0 / tp.p)).collect();
    let sup = series.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let inf = series.iter().copied().fold(f64::INFINITY, f64::min);
    let logk: Vec<f64> = ks.iter().map(|k| k.ln()).collect();
    let drift_slope = ls_slope(&logk, &series);
    Ok(TailEstimate { p: tp.p, sigma: tp.sigma, k_min, k_max, sup, inf, drift_slope, series })
}

/// Exponent `e` of the least-squares fit `s_k ≈ C k^e` over the window.
pub fn decay_fit(sd: &SpectralData, window: (usize, usize)) -> Result<f64> {
    decay_fit_seq(&sd.svals, window)
}

pub fn decay_fit_seq(seq: &[f64], window: (usize, usize)) -> Result<f64> {
    check_window(seq, window, NOISE_FLOOR)?;
    let (k_min, k_max) = window;
    let xs: Vec<f64> = (k_min..=k_max).map(|k| (k as f64).ln()).collect();
    let ys: Vec<f64> = (k_min..=k_max).map(|k| seq[k - 1].ln()).collect();
    Ok(ls_slope(&xs, &ys))
}

/// `sup_k s_k f_σ(k)^{1/p}` over the whole (finite) sequence.
pub fn weidl_norm(seq: &[f64], tp: &TailParams) -> f64 {
    seq.iter()
        .enumerate()
        .map(|(i, s)| s * tp.f((i + 1) as f64).powf(1.0 / tp.p))
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KyFanReport {
    pub checks: usize,
    pub passed: bool,
    pub first_counterexample: Option<String>,
}

impl KyFanReport {
    fn new() -> Self {
        KyFanReport { checks: 0, passed: true, first_counterexample: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.passed {
            self.passed = false;
            self.first_counterexample = Some(what());
        }
    }
}

/// Index cap for the exhaustive `(k, m)` sweep.
pub const KYFAN_CAP: usize = 64;

/// Check the Ky Fan inequalities for `A`, `B` and `A + B`:
///
/// - `s_{k+m-1}(A+B) ≤ s_k(A) + s_m(B)` for all `k, m ≤ 64`,
/// - `n(s₁+s₂; A+B) ≤ n(s₁; A) + n(s₂; B)` on a grid of levels,
/// - the same for `λ^{(±)}` when both matrices are Hermitian,
/// - the triangle inequality for `sup_k s_k f_σ(k)^{1/p}` with exponent
///   `p/(p+1)`.
pub fn check_kyfan(a: &OperatorMatrix, b: &OperatorMatrix, tp: &TailParams) -> Result<KyFanReport> {
    if a.n() != b.n() {
        return Err(invalid("Ky Fan check needs matrices of equal size"));
    }
    let sum = a.lincomb(1.0, b, 1.0)?;
    let (sa, sb, sab) = (singular_values(a), singular_values(b), singular_values(&sum));
    let scale = sa.svals.first().copied().unwrap_or(0.0) + sb.svals.first().copied().unwrap_or(0.0);
    let slack = 1e-12 * scale.max(f64::MIN_POSITIVE);
    let mut report = KyFanReport::new();

    index_form(&mut report, "s", &sa.svals, &sb.svals, &sab.svals, slack);
    counting_form(&mut report, "n", &sa.svals, &sb.svals, &sab.svals, slack);

    let hermitian = a.is_hermitian(HERMITIAN_TOL) && b.is_hermitian(HERMITIAN_TOL);
    if hermitian {
        let (ea, eb, eab) = (eig_hermitian(a)?, eig_hermitian(b)?, eig_hermitian(&sum)?);
        index_form(&mut report, "lambda+", &ea.pos_eigs, &eb.pos_eigs, &eab.pos_eigs, slack);
        index_form(&mut report, "lambda-", &ea.neg_eigs, &eb.neg_eigs, &eab.neg_eigs, slack);
        counting_form(&mut report, "n+", &ea.pos_eigs, &eb.pos_eigs, &eab.pos_eigs, slack);
        counting_form(&mut report, "n-", &ea.neg_eigs, &eb.neg_eigs, &eab.neg_eigs, slack);
    }

    let q = tp.p / (tp.p + 1.0);
    let (na, nb, nab) = (weidl_norm(&sa.svals, tp), weidl_norm(&sb.svals, tp), weidl_norm(&sab.svals, tp));
    report.check(nab.powf(q) <= na.powf(q) + nb.powf(q) + slack, || {
        format!("triangle: |A+B|^q = {:.6e} > {:.6e} + {:.6e}", nab.powf(q), na.powf(q), nb.powf(q))
    });
    Ok(report)
}

fn at(v: &[f64], k: usize) -> f64 {
    v.get(k - 1).copied().unwrap_or(0.0)
}

fn index_form(r: &mut KyFanReport, name: &str, a: &[f64], b: &[f64], ab: &[f64], slack: f64) {
    let n = ab.len().max(a.len()).max(b.len()).min(KYFAN_CAP);
    for k in 1..=n {
        for m in 1..=n + 1 - k {
            let lhs = at(ab, k + m - 1);
            let rhs = at(a, k) + at(b, m);
            r.check(lhs <= rhs + slack, || format!("{name}_{}(A+B) = {lhs:.6e} > {name}_{k}(A) + {name}_{m}(B) = {rhs:.6e}", k + m - 1));
        }
    }
}

fn counting_form(r: &mut KyFanReport, name: &str, a: &[f64], b: &[f64], ab: &[f64], slack: f64) {
    let top = at(a, 1).max(at(b, 1));
    if top <= 0.0 {
        return;
    }
    let levels: Vec<f64> = (0..16).map(|i| top * 10f64.powf(-(i as f64) * 0.75)).collect();
    for &s1 in &levels {
        for &s2 in &levels {
            let lhs = count_above(ab, s1 + s2 + slack);
            let rhs = count_above(a, s1) + count_above(b, s2);
            r.check(lhs <= rhs, || format!("{name}({:.3e}; A+B) = {lhs} > {name}({s1:.3e}; A) + {name}({s2:.3e}; B) = {rhs}", s1 + s2));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;
    use num_complex::Complex64;

    fn diag(v: &[f64]) -> OperatorMatrix {
        let n = v.len();
        let mut e = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, x) in v.iter().enumerate() {
            e[i * n + i] = Complex64::new(*x, 0.0);
        }
        OperatorMatrix::from_entries(Grid1D::new(1.0, n).unwrap(), 0.5, "diag", e).unwrap()
    }

    #[test]
    fn diagonal_split_by_sign() {
        let sd = eig_hermitian(&diag(&[3.0, -1.0, 2.0, 0.0])).unwrap();
        assert_eq!(sd.pos_eigs, vec![3.0, 2.0]);
        assert_eq!(sd.neg_eigs, vec![1.0]);
        assert_eq!(sd.svals, vec![3.0, 2.0, 1.0, 0.0]);
        assert_eq!(counting(&sd, 1.5, Which::All), 2);
        assert_eq!(counting(&sd, 10.0, Which::All), 0);
        assert_eq!(counting(&sd, 0.5, Which::All), counting(&sd, 0.5, Which::Plus) + counting(&sd, 0.5, Which::Minus));
    }

    #[test]
    fn zero_matrix_has_no_signed_eigenvalues() {
        let sd = eig_hermitian(&diag(&[0.0; 4])).unwrap();
        assert!(sd.pos_eigs.is_empty() && sd.neg_eigs.is_empty());
        assert_eq!(counting(&sd, 1e-300, Which::All), 0);
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut e = vec![Complex64::new(0.0, 0.0); 4];
        e[1] = Complex64::new(1.0, 0.0);
        let a = OperatorMatrix::from_entries(Grid1D::new(1.0, 2).unwrap(), 0.0, "upper", e).unwrap();
        assert!(matches!(eig_hermitian(&a), Err(Error::NotHermitian { .. })));
        let sv = singular_values(&a);
        assert!((sv.svals[0] - 1.0).abs() < 1e-15 && sv.svals[1].abs() < 1e-15);
    }

    #[test]
    fn f_sigma_basics() {
        assert_eq!(f_sigma(7.5, 0.0), 7.5);
        assert_eq!(f_sigma(0.0, 1.0), 0.0);
        assert!(f_sigma(3.0, 1.0) + f_sigma(5.0, 1.0) >= f_sigma(8.0, 1.0));
    }

    #[test]
    fn exact_tail_sequences() {
        let s: Vec<f64> = (1..=200).map(|k| 1.0 / k as f64).collect();
        let sd = SpectralData::from_singular_values(s, "1/k");
        let t = tail_functional(&sd, &TailParams::new(1.0, 0.0).unwrap(), (10, 100), Which::All).unwrap();
        assert!((t.sup - 1.0).abs() < 1e-14 && (t.inf - 1.0).abs() < 1e-14);
        assert!(t.drift_slope.abs() < 1e-12);
    }

    #[test]
    fn noise_floor_names_first_bad_k() {
        let mut s: Vec<f64> = (1..=50).map(|k| 1.0 / k as f64).collect();
        s[39] = 1e-12;
        s[40..].iter_mut().for_each(|v| *v = 0.0);
        let sd = SpectralData::from_singular_values(s, "floored");
        let err = tail_functional(&sd, &TailParams::new(1.0, 0.0).unwrap(), (10, 45), Which::All).unwrap_err();
        assert!(matches!(err, Error::NoiseFloor { k: 40, .. }));
    }

    #[test]
    fn decay_fit_power_law() {
        let s: Vec<f64> = (1..=100).map(|k| 5.0 / (k as f64).powi(2)).collect();
        let sd = SpectralData::from_singular_values(s, "5/k^2");
        assert!((decay_fit(&sd, (2, 100)).unwrap() + 2.0).abs() < 1e-6);
    }

    #[test]
    fn csv_pads_short_columns() {
        let sd = SpectralData::from_eigenvalues(&[2.0, -1.0, 0.5], "t");
        let mut buf = Vec::new();
        sd.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "k,lambda_plus,lambda_minus,s");
        assert_eq!(lines.len(), 4);
        assert!(lines[2].split(',').nth(2).unwrap().is_empty());
    }

    #[test]
    fn tail_estimate_json_fields() {
        let s: Vec<f64> = (1..=20).map(|k| 1.0 / k as f64).collect();
        let sd = SpectralData::from_singular_values(s, "1/k");
        let t = tail_functional(&sd, &TailParams::new(1.0, 0.0).unwrap(), (2, 20), Which::All).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        for key in ["p", "sigma", "k_min", "k_max", "sup", "inf", "drift_slope", "series"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }

    #[test]
    fn kyfan_zero_b_is_tight() {
        let a = diag(&[3.0, -1.0, 2.0, 0.5]);
        let b = diag(&[0.0; 4]);
        let r = check_kyfan(&a, &b, &TailParams::new(1.0, 1.0).unwrap()).unwrap();
        assert!(r.passed, "{:?}", r.first_counterexample);
    }
}
