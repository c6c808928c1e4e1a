//! Dense Nyström matrices of `t`-quantized symbols.
//!
//! For a position grid `x_j` with spacing `h` and a frequency grid `ξ_k` with
//! spacing `h_ξ`, the matrix of `op^(t)(a)` is
//!
//! `K_ij = h · (1/2π) Σ_k e^{i(x_i - x_j)ξ_k} a((1-t)x_i + t x_j, ξ_k) h_ξ`,
//!
//! so matrix eigenvalues approximate operator eigenvalues directly and the
//! Frobenius norm approximates the Hilbert–Schmidt norm.

use std::f64::consts::PI;
use std::io::{Read, Write};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::grid::Grid1D;
use crate::linalg::{mat_from_row_major, mat_to_row_major};
use crate::symbols::{dual_values_at, is_truncated, DualOptions, SampledSymbol, SymbolField};

const MAGIC: &[u8; 4] = b"WSPQ";
const FORMAT_VERSION: u32 = 1;

/// Relative magnitude on the outer frequency nodes above which a build is
/// flagged as truncated in `ξ`.
pub const XI_TRUNCATION_TOL: f64 = 1e-6;

/// Dense `n × n` complex matrix tagged with its grid, quantization parameter
/// and symbol description.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    entries: Vec<Complex64>,
    pub grid: Grid1D,
    pub t_param: f64,
    pub symbol_tag: String,
    /// Relative Hermitian defect measured before symmetrization (`None` if
    /// no symmetrization was applied).
    pub hermitian_defect: Option<f64>,
    pub warnings: Vec<String>,
}

impl OperatorMatrix {
    pub fn from_entries(grid: Grid1D, t_param: f64, symbol_tag: impl Into<String>, entries: Vec<Complex64>) -> Result<Self> {
        let n = grid.len();
        if entries.len() != n * n {
            return Err(invalid(format!("matrix needs {} entries, got {}", n * n, entries.len())));
        }
        Ok(OperatorMatrix {
            entries,
            grid,
            t_param,
            symbol_tag: symbol_tag.into(),
            hermitian_defect: None,
            warnings: Vec::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.grid.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n() + j]
    }

    /// `max |K_ij - conj(K_ji)| / max |K_ij|` (0 for the zero matrix).
    pub fn relative_hermitian_defect(&self) -> f64 {
        relative_hermitian_defect(self.n(), &self.entries)
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        self.relative_hermitian_defect() <= rel_tol
    }

    /// Replace the matrix by `(K + K*)/2`.
    pub fn symmetrize(&mut self) {
        let n = self.n();
        for i in 0..n {
            for j in 0..i {
                let a = self.entries[i * n + j];
                let b = self.entries[j * n + i];
                let avg = 0.5 * (a + b.conj());
                self.entries[i * n + j] = avg;
                self.entries[j * n + i] = avg.conj();
            }
            let d = self.entries[i * n + i];
            self.entries[i * n + i] = Complex64::new(d.re, 0.0);
        }
    }

    pub fn matmul(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.n() != other.n() {
            return Err(invalid("matrix sizes differ"));
        }
        let n = self.n();
        let a = mat_from_row_major(n, n, &self.entries);
        let b = mat_from_row_major(n, n, &other.entries);
        let prod = &a * &b;
        OperatorMatrix::from_entries(
            self.grid,
            self.t_param,
            format!("({})·({})", self.symbol_tag, other.symbol_tag),
            mat_to_row_major(&prod),
        )
    }

    pub fn sub(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.lincomb(1.0, other, -1.0)
    }

    pub fn lincomb(&self, alpha: f64, other: &OperatorMatrix, beta: f64) -> Result<OperatorMatrix> {
        if self.n() != other.n() {
            return Err(invalid("matrix sizes differ"));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a * alpha + b * beta).collect();
        OperatorMatrix::from_entries(
            self.grid,
            self.t_param,
            format!("{alpha}·({}) + {beta}·({})", self.symbol_tag, other.symbol_tag),
            entries,
        )
    }

    /// Binary layout: `WSPQ`, version (u32), `n` (u64), `t` (f64), `L` (f64),
    /// then `n²` entries as interleaved `(re, im)` f64 pairs, row-major; all
    /// little-endian.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        w.write_all(&(self.n() as u64).to_le_bytes())?;
        w.write_all(&self.t_param.to_le_bytes())?;
        w.write_all(&self.grid.half_width().to_le_bytes())?;
        for z in &self.entries {
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let mut b4 = [0u8; 4];
        let mut b8 = [0u8; 8];
        r.read_exact(&mut b4)?;
        if &b4 != MAGIC {
            return Err(Error::Format("bad magic, expected WSPQ".into()));
        }
        r.read_exact(&mut b4)?;
        let version = u32::from_le_bytes(b4);
        if version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported format version {version}")));
        }
        r.read_exact(&mut b8)?;
        let n = usize::try_from(u64::from_le_bytes(b8)).map_err(|_| Error::Format("n overflows".into()))?;
        r.read_exact(&mut b8)?;
        let t = f64::from_le_bytes(b8);
        r.read_exact(&mut b8)?;
        let l = f64::from_le_bytes(b8);
        let grid = Grid1D::new(l, n)?;
        let mut entries = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            r.read_exact(&mut b8)?;
            let re = f64::from_le_bytes(b8);
            r.read_exact(&mut b8)?;
            entries.push(Complex64::new(re, f64::from_le_bytes(b8)));
        }
        OperatorMatrix::from_entries(grid, t, "binary", entries)
    }

    /// CSV `i,j,re,im`; only for `n ≤ 256`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        if self.n() > 256 {
            return Err(invalid(format!("CSV export is limited to n <= 256, got {}", self.n())));
        }
        writeln!(w, "i,j,re,im")?;
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                let z = self.get(i, j);
                writeln!(w, "{i},{j},{:.16e},{:.16e}", z.re, z.im)?;
            }
        }
        Ok(())
    }
}

pub(crate) fn relative_hermitian_defect(n: usize, entries: &[Complex64]) -> f64 {
    let mut defect: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            scale = scale.max(entries[i * n + j].norm());
            if j <= i {
                defect = defect.max((entries[i * n + j] - entries[j * n + i].conj()).norm());
            }
        }
    }
    if scale == 0.0 {
        0.0
    } else {
        defect / scale
    }
}

/// Phase table `e^{i d h ξ_k}` for `d = -(n-1)..=(n-1)`, row `d + n - 1`.
fn phase_table(grid: &Grid1D, xis: &[f64]) -> Vec<Complex64> {
    let n = grid.len() as i64;
    let h = grid.spacing();
    let nxi = xis.len();
    let mut table = vec![Complex64::new(0.0, 0.0); (2 * n as usize - 1) * nxi];
    table.par_chunks_mut(nxi).enumerate().for_each(|(row, chunk)| {
        let d = row as i64 - (n - 1);
        let dx = d as f64 * h;
        for (k, z) in chunk.iter_mut().enumerate() {
            *z = Complex64::cis(dx * xis[k]);
        }
    });
    table
}

/// The ξ-quadrature makes the kernel periodic in `x - y` with period
/// `2π/Δξ`; images closer than `2L` to the box are flagged.
fn xi_aliasing_warning(grid: &Grid1D, xi_grid: &Grid1D) -> Option<String> {
    let period = 2.0 * std::f64::consts::PI / xi_grid.spacing();
    let reach = 4.0 * grid.half_width();
    (period < reach).then(|| format!("xi-aliasing: kernel period {period:.3e} < {reach:.3e}"))
}

fn xi_truncation_warning(samples: &[Complex64], rows: usize, nxi: usize) -> Option<String> {
    let peak = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return None;
    }
    let edge = (0..rows)
        .flat_map(|m| [samples[m * nxi], samples[m * nxi + nxi - 1]])
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    (edge > XI_TRUNCATION_TOL * peak)
        .then(|| format!("xi-truncation: edge/peak = {:.3e}", edge / peak))
}

enum Samples {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

impl Samples {
    fn build(sym: &SymbolField, points: &[f64], xis: &[f64]) -> (Samples, Vec<Complex64>) {
        let nxi = xis.len();
        let mut vals = vec![Complex64::new(0.0, 0.0); points.len() * nxi];
        vals.par_chunks_mut(nxi).enumerate().for_each(|(m, chunk)| {
            for (k, z) in chunk.iter_mut().enumerate() {
                *z = sym.eval(points[m], xis[k]);
            }
        });
        let samples = if vals.iter().all(|z| z.im == 0.0) {
            Samples::Real(vals.iter().map(|z| z.re).collect())
        } else {
            Samples::Complex(vals.clone())
        };
        (samples, vals)
    }
}

#[inline]
fn dot_real(phase: &[Complex64], a: &[f64]) -> Complex64 {
    let (mut re, mut im) = (0.0, 0.0);
    for (z, &v) in phase.iter().zip(a) {
        re += z.re * v;
        im += z.im * v;
    }
    Complex64::new(re, im)
}

#[inline]
fn dot_complex(phase: &[Complex64], a: &[Complex64]) -> Complex64 {
    phase.iter().zip(a).fold(Complex64::new(0.0, 0.0), |acc, (z, v)| acc + z * v)
}

/// Weyl quantization `op^w(a) = op^(1/2)(a)`. The symbol is sampled exactly
/// at the midpoints `(x_i + x_j)/2`. Real symbols give a Hermitian matrix;
/// its pre-symmetrization defect is recorded and the matrix symmetrized.
pub fn build_weyl(sym: &SymbolField, grid: &Grid1D, xi_grid: &Grid1D) -> Result<OperatorMatrix> {
    let xis = xi_grid.nodes();
    let (samples, raw) = Samples::build(sym, &weyl_midpoints(grid), &xis);
    weyl_from_samples(samples, &raw, grid, xi_grid, sym.to_string())
}

/// The `2n - 1` distinct midpoints `(x_i + x_j)/2`, indexed by `i + j`.
pub fn weyl_midpoints(grid: &Grid1D) -> Vec<f64> {
    (0..2 * grid.len() - 1).map(|m| grid.midpoint(m)).collect()
}

/// Weyl matrix from symbol values tabulated on `weyl_midpoints(grid) ×
/// xi_grid` (row-major, midpoint as the slow index).
pub fn build_weyl_tabulated(values: &[Complex64], grid: &Grid1D, xi_grid: &Grid1D, tag: impl Into<String>) -> Result<OperatorMatrix> {
    let rows = 2 * grid.len() - 1;
    if values.len() != rows * xi_grid.len() {
        return Err(invalid(format!("table needs {} values, got {}", rows * xi_grid.len(), values.len())));
    }
    let samples = if values.iter().all(|z| z.im == 0.0) {
        Samples::Real(values.iter().map(|z| z.re).collect())
    } else {
        Samples::Complex(values.to_vec())
    };
    weyl_from_samples(samples, values, grid, xi_grid, tag.into())
}

/// `op^w(a*)` with the dual symbol evaluated directly at the Weyl sample
/// points (no interpolation).
pub fn build_weyl_of_dual(s: &SampledSymbol, grid: &Grid1D, xi_grid: &Grid1D, opts: DualOptions) -> Result<OperatorMatrix> {
    let values = dual_values_at(s, &weyl_midpoints(grid), &xi_grid.nodes());
    let mut op = build_weyl_tabulated(&values, grid, xi_grid, format!("dual[{}]", s.provenance))?;
    if is_truncated(s, opts) {
        op.warnings.push("dual input truncated".into());
    }
    Ok(op)
}

fn weyl_from_samples(samples: Samples, raw: &[Complex64], grid: &Grid1D, xi_grid: &Grid1D, tag: String) -> Result<OperatorMatrix> {
    let n = grid.len();
    let xis = xi_grid.nodes();
    let nxi = xis.len();
    let phases = phase_table(grid, &xis);
    let c = grid.spacing() * xi_grid.spacing() / (2.0 * PI);

    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    entries.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        for (j, z) in row.iter_mut().enumerate() {
            let d = i + n - 1 - j;
            let phase = &phases[d * nxi..(d + 1) * nxi];
            let m = i + j;
            *z = c * match &samples {
                Samples::Real(a) => dot_real(phase, &a[m * nxi..(m + 1) * nxi]),
                Samples::Complex(a) => dot_complex(phase, &a[m * nxi..(m + 1) * nxi]),
            };
        }
    });

    let mut op = OperatorMatrix::from_entries(*grid, 0.5, tag, entries)?;
    op.warnings.extend(xi_truncation_warning(raw, 2 * n - 1, nxi));
    op.warnings.extend(xi_aliasing_warning(grid, xi_grid));
    if matches!(samples, Samples::Real(_)) {
        op.hermitian_defect = Some(op.relative_hermitian_defect());
        op.symmetrize();
    }
    Ok(op)
}

/// Kohn–Nirenberg quantization `op^l(a) = op^(0)(a)`; no symmetrization.
pub fn build_kn(sym: &SymbolField, grid: &Grid1D, xi_grid: &Grid1D) -> Result<OperatorMatrix> {
    let n = grid.len();
    let xis = xi_grid.nodes();
    let nxi = xis.len();
    let xs = grid.nodes();
    let (samples, raw) = Samples::build(sym, &xs, &xis);
    let phases = phase_table(grid, &xis);
    let c = grid.spacing() * xi_grid.spacing() / (2.0 * PI);

    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    entries.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        for (j, z) in row.iter_mut().enumerate() {
            let d = i + n - 1 - j;
            let phase = &phases[d * nxi..(d + 1) * nxi];
            *z = c * match &samples {
                Samples::Real(a) => dot_real(phase, &a[i * nxi..(i + 1) * nxi]),
                Samples::Complex(a) => dot_complex(phase, &a[i * nxi..(i + 1) * nxi]),
            };
        }
    });
    let mut op = OperatorMatrix::from_entries(*grid, 0.0, sym.to_string(), entries)?;
    op.warnings.extend(xi_truncation_warning(&raw, n, nxi));
    op.warnings.extend(xi_aliasing_warning(grid, xi_grid));
    Ok(op)
}

/// General `t`-quantization by direct quadrature, `O(n² n_ξ)` symbol
/// evaluations; meant for moderate `n`.
pub fn build_t(sym: &SymbolField, grid: &Grid1D, xi_grid: &Grid1D, t: f64) -> Result<OperatorMatrix> {
    if !(0.0..=1.0).contains(&t) {
        return Err(invalid(format!("t must lie in [0, 1], got {t}")));
    }
    let n = grid.len();
    let xis = xi_grid.nodes();
    let nxi = xis.len();
    let xs = grid.nodes();
    let phases = phase_table(grid, &xis);
    let c = grid.spacing() * xi_grid.spacing() / (2.0 * PI);

    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    if let Some((p, q)) = rational(t, 64) {
        // (1-t)x_i + t x_j = x_0 + h ((q-p) i + p j)/q
        let points: Vec<f64> = (0..q * (n - 1) + 1).map(|m| xs[0] + grid.spacing() * m as f64 / q as f64).collect();
        let (samples, _) = Samples::build(sym, &points, &xis);
        entries.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            for (j, z) in row.iter_mut().enumerate() {
                let d = i + n - 1 - j;
                let phase = &phases[d * nxi..(d + 1) * nxi];
                let m = (q - p) * i + p * j;
                *z = c * match &samples {
                    Samples::Real(a) => dot_real(phase, &a[m * nxi..(m + 1) * nxi]),
                    Samples::Complex(a) => dot_complex(phase, &a[m * nxi..(m + 1) * nxi]),
                };
            }
        });
    } else {
        entries.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            for (j, z) in row.iter_mut().enumerate() {
                let d = i + n - 1 - j;
                let phase = &phases[d * nxi..(d + 1) * nxi];
                let pos = (1.0 - t) * xs[i] + t * xs[j];
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, p) in phase.iter().enumerate() {
                    acc += p * sym.eval(pos, xis[k]);
                }
                *z = c * acc;
            }
        });
    }
    let mut op = OperatorMatrix::from_entries(*grid, t, sym.to_string(), entries)?;
    let edge: Vec<Complex64> = xs
        .iter()
        .flat_map(|&x| xis.iter().map(move |&xi| (x, xi)))
        .map(|(x, xi)| sym.eval(x, xi))
        .collect();
    op.warnings.extend(xi_truncation_warning(&edge, n, nxi));
    op.warnings.extend(xi_aliasing_warning(grid, xi_grid));
    Ok(op)
}

/// `t = p/q` with `q ≤ max_q`, if such a representation is exact to round-off.
fn rational(t: f64, max_q: usize) -> Option<(usize, usize)> {
    (1..=max_q).find_map(|q| {
        let p = (t * q as f64).round();
        ((t * q as f64 - p).abs() < 1e-12).then_some((p as usize, q))
    })
}

/// Reflection `(Uf)(x) = f(-x)` as a permutation matrix on the grid.
pub fn reflection(grid: &Grid1D) -> OperatorMatrix {
    let n = grid.len();
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        entries[j * n + grid.mirror(j)] = Complex64::new(1.0, 0.0);
    }
    OperatorMatrix::from_entries(*grid, 0.5, "reflection", entries).expect("square by construction")
}

/// Discrete Hilbert–Schmidt (Frobenius) norm.
pub fn hs_norm_matrix(a: &OperatorMatrix) -> f64 {
    a.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grids(l: f64, n: usize, lxi: f64, nxi: usize) -> (Grid1D, Grid1D) {
        (Grid1D::new(l, n).unwrap(), Grid1D::new(lxi, nxi).unwrap())
    }

    #[test]
    fn zero_symbol_gives_zero_matrix() {
        let (g, gx) = grids(4.0, 16, 4.0, 32);
        for op in [
            build_weyl(&SymbolField::zero(), &g, &gx).unwrap(),
            build_kn(&SymbolField::zero(), &g, &gx).unwrap(),
        ] {
            assert!(op.entries().iter().all(|z| z.norm() == 0.0));
            assert_eq!(hs_norm_matrix(&op), 0.0);
        }
    }

    #[test]
    fn t_half_and_t_zero_match_dedicated_builders() {
        let (g, gx) = grids(4.0, 24, 5.0, 40);
        let sym = SymbolField::bump(2.5, (0.4, -0.3)).unwrap();
        let w = build_weyl(&sym, &g, &gx).unwrap();
        let wt = build_t(&sym, &g, &gx, 0.5).unwrap();
        let l = build_kn(&sym, &g, &gx).unwrap();
        let lt = build_t(&sym, &g, &gx, 0.0).unwrap();
        let scale = hs_norm_matrix(&w);
        assert!(hs_norm_matrix(&w.sub(&wt).unwrap()) < 1e-12 * scale);
        assert!(hs_norm_matrix(&l.sub(&lt).unwrap()) < 1e-14 * scale);
    }

    #[test]
    fn tabulated_and_direct_t_paths_agree() {
        let (g, gx) = grids(4.0, 24, 5.0, 40);
        let sym = SymbolField::bump(2.5, (0.4, -0.3)).unwrap();
        let tab = build_t(&sym, &g, &gx, 0.25).unwrap();
        let direct = build_t(&sym, &g, &gx, 0.25 + 1e-10).unwrap();
        assert!(hs_norm_matrix(&tab.sub(&direct).unwrap()) < 1e-8 * hs_norm_matrix(&tab));
    }

    #[test]
    fn reflection_is_an_involution() {
        let g = Grid1D::new(3.0, 10).unwrap();
        let u = reflection(&g);
        let u2 = u.matmul(&u).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert_eq!(u2.get(i, j), Complex64::new(e, 0.0));
            }
        }
        // even vector is invariant
        let v: Vec<f64> = (0..10).map(|j: usize| j.min(9 - j) as f64).collect();
        for i in 0..10 {
            let uv: f64 = (0..10).map(|j| u.get(i, j).re * v[j]).sum();
            assert_eq!(uv, v[i]);
        }
    }

    #[test]
    fn weyl_of_real_symbol_is_hermitian() {
        let (g, gx) = grids(6.0, 64, 6.0, 96);
        let sym = SymbolField::sector_bump(std::f64::consts::FRAC_PI_2, 2.0).unwrap();
        let op = build_weyl(&sym, &g, &gx).unwrap();
        assert!(op.hermitian_defect.unwrap() <= 1e-10);
        assert!(op.is_hermitian(1e-14));
    }

    #[test]
    fn binary_round_trip() {
        let (g, gx) = grids(3.0, 8, 3.0, 16);
        let op = build_kn(&SymbolField::gaussian(1.0).unwrap(), &g, &gx).unwrap();
        let mut buf = Vec::new();
        op.write_binary(&mut buf).unwrap();
        assert_eq!(&buf[..4], b"WSPQ");
        assert_eq!(buf.len(), 8 + 24 + 64 * 16);
        let back = OperatorMatrix::read_binary(&buf[..]).unwrap();
        assert_eq!(back.entries(), op.entries());
        assert_eq!(back.t_param, 0.0);
        assert_eq!(back.grid, g);
    }

    #[test]
    fn csv_export_limited_to_small_n() {
        let g = Grid1D::new(3.0, 258).unwrap();
        let op = reflection(&g);
        assert!(op.write_csv(Vec::new()).is_err());
    }

    #[test]
    fn t_out_of_range_rejected() {
        let (g, gx) = grids(3.0, 8, 3.0, 16);
        assert!(build_t(&SymbolField::zero(), &g, &gx, 1.5).is_err());
    }
}
