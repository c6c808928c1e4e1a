use std::f64::consts::PI;

use faer::Mat;
use num_complex::Complex64;

use crate::grid::Grid2D;
use crate::linalg::{mat_to_row_major, to_c64};

use super::SampledSymbol;

#[derive(Clone, Copy, Debug)]
pub struct DualOptions {
    /// Largest tolerated ratio of boundary magnitude to peak magnitude of
    /// the input before the result is flagged as truncated.
    pub truncation_tol: f64,
}

impl Default for DualOptions {
    fn default() -> Self {
        DualOptions { truncation_tol: 1e-6 }
    }
}

/// Dual symbol `a*(x, ξ) = 2 (𝓕a)(2ξ, -2x)` in one dimension, i.e.
///
/// `a*(X, Ξ) = (1/π) ∬ exp(2i(X ξ - Ξ x)) a(x, ξ) dx dξ`,
///
/// evaluated at the nodes of `out_grid` by two successive midpoint-rule
/// Fourier sums (no FFT, so input and output grids are independent).
/// A truncated input is reported by appending `truncated` to the
/// provenance.
pub fn dual_symbol(s: &SampledSymbol, out_grid: &Grid2D, opts: DualOptions) -> SampledSymbol {
    let values = dual_values_at(s, &out_grid.x.nodes(), &out_grid.xi.nodes());
    let mut provenance = format!("dual[{}]", s.provenance);
    if is_truncated(s, opts) {
        provenance.push_str("; truncated");
    }
    SampledSymbol::new(*out_grid, values, provenance).expect("finite transform of finite samples")
}

/// The dual symbol on the tensor product `big_x × big_xi`, row-major with
/// `X` as the slow index.
pub fn dual_values_at(s: &SampledSymbol, big_x: &[f64], big_xi: &[f64]) -> Vec<Complex64> {
    let (nx, nxi) = (s.grid.x.len(), s.grid.xi.len());
    let xs = s.grid.x.nodes();
    let xis = s.grid.xi.nodes();

    let a = Mat::from_fn(nx, nxi, |j, k| to_c64(s.at(j, k)));
    let ek = Mat::from_fn(nxi, big_x.len(), |k, p| to_c64(Complex64::cis(2.0 * big_x[p] * xis[k])));
    let ej = Mat::from_fn(nx, big_xi.len(), |j, q| to_c64(Complex64::cis(-2.0 * big_xi[q] * xs[j])));

    // G[j][p] = Σ_k a[j][k] e^{2i X_p ξ_k};  out[p][q] = Σ_j G[j][p] e^{-2i Ξ_q x_j}
    let g = &a * &ek;
    let out = g.transpose() * &ej;
    let weight = s.grid.cell_area() / PI;
    mat_to_row_major(&out).into_iter().map(|v| v * weight).collect()
}

/// Whether the samples are still above `truncation_tol × peak` on the
/// boundary of their grid.
pub fn is_truncated(s: &SampledSymbol, opts: DualOptions) -> bool {
    let peak = s.max_abs();
    peak > 0.0 && s.boundary_max_abs() > opts.truncation_tol * peak
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{sample, SymbolField};

    #[test]
    fn zero_maps_to_zero() {
        let g = Grid2D::square(4.0, 16).unwrap();
        let d = dual_symbol(&sample(&SymbolField::zero(), &g), &g, DualOptions::default());
        assert!(d.values().iter().all(|v| v.norm() == 0.0));
        assert!(!d.provenance.contains("truncated"));
    }

    #[test]
    fn truncation_is_flagged() {
        let g = Grid2D::square(2.0, 32).unwrap();
        let d = dual_symbol(&sample(&SymbolField::gaussian(0.1).unwrap(), &g), &g, DualOptions::default());
        assert!(d.provenance.contains("truncated"));
    }
}
