use std::io::{BufRead, Write};

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::grid::Grid2D;

use super::SymbolField;

/// Symbol values on a [`Grid2D`], row-major with `x` as the slow index.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledSymbol {
    pub grid: Grid2D,
    values: Vec<Complex64>,
    pub provenance: String,
}

impl SampledSymbol {
    pub fn new(grid: Grid2D, values: Vec<Complex64>, provenance: impl Into<String>) -> Result<Self> {
        let expected = grid.x.len() * grid.xi.len();
        if values.len() != expected {
            return Err(invalid(format!("sampled symbol has {} values, grid needs {expected}", values.len())));
        }
        if let Some(pos) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(invalid(format!("non-finite sample at flat index {pos}")));
        }
        Ok(SampledSymbol { grid, values, provenance: provenance.into() })
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    #[inline]
    pub fn at(&self, j: usize, k: usize) -> Complex64 {
        self.values[j * self.grid.xi.len() + k]
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    /// `∬ |a|²` by the midpoint rule.
    pub fn l2_norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.cell_area()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest magnitude on the outermost ring of nodes.
    pub fn boundary_max_abs(&self) -> f64 {
        let (nx, nxi) = (self.grid.x.len(), self.grid.xi.len());
        let mut m: f64 = 0.0;
        for j in 0..nx {
            for k in 0..nxi {
                if j == 0 || k == 0 || j == nx - 1 || k == nxi - 1 {
                    m = m.max(self.at(j, k).norm());
                }
            }
        }
        m
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64, provenance: impl Into<String>) -> Self {
        SampledSymbol {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
            provenance: provenance.into(),
        }
    }

    /// `α·self + β·other` on a common grid.
    pub fn combine(&self, alpha: Complex64, other: &SampledSymbol, beta: Complex64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(invalid("cannot combine sampled symbols on different grids"));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| alpha * a + beta * b).collect();
        Ok(SampledSymbol { grid: self.grid, values, provenance: format!("linear combination") })
    }

    /// Bilinear interpolation; nodes beyond the grid are treated as zero.
    pub fn interpolate(&self, x: f64, xi: f64) -> Complex64 {
        let (gx, gxi) = (self.grid.x, self.grid.xi);
        let u = (x + gx.half_width()) / gx.spacing() - 0.5;
        let v = (xi + gxi.half_width()) / gxi.spacing() - 0.5;
        if !(u > -1.0 && v > -1.0 && u < gx.len() as f64 && v < gxi.len() as f64) {
            return Complex64::new(0.0, 0.0);
        }
        let j0 = u.floor();
        let k0 = v.floor();
        let (fu, fv) = (u - j0, v - k0);
        let fetch = |j: f64, k: f64| {
            if j < 0.0 || k < 0.0 || j >= gx.len() as f64 || k >= gxi.len() as f64 {
                Complex64::new(0.0, 0.0)
            } else {
                self.at(j as usize, k as usize)
            }
        };
        fetch(j0, k0) * ((1.0 - fu) * (1.0 - fv))
            + fetch(j0 + 1.0, k0) * (fu * (1.0 - fv))
            + fetch(j0, k0 + 1.0) * ((1.0 - fu) * fv)
            + fetch(j0 + 1.0, k0 + 1.0) * (fu * fv)
    }

    /// CSV with header `x,xi,re,im`, row-major grid order, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "x,xi,re,im")?;
        for j in 0..self.grid.x.len() {
            let x = self.grid.x.node(j);
            for k in 0..self.grid.xi.len() {
                let v = self.at(j, k);
                writeln!(w, "{:.16e},{:.16e},{:.16e},{:.16e}", x, self.grid.xi.node(k), v.re, v.im)?;
            }
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R, provenance: impl Into<String>) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines.next().ok_or_else(|| Error::Format("empty CSV".into()))??;
        if header.trim() != "x,xi,re,im" {
            return Err(Error::Format(format!("unexpected header {header:?}")));
        }
        let mut xs: Vec<f64> = Vec::new();
        let mut xis: Vec<f64> = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<f64> = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Format(format!("line {}: {e}", lineno + 2)))?;
            if f.len() != 4 {
                return Err(Error::Format(format!("line {}: expected 4 fields", lineno + 2)));
            }
            if xs.last() != Some(&f[0]) {
                xs.push(f[0]);
            }
            if xs.len() == 1 {
                xis.push(f[1]);
            }
            values.push(Complex64::new(f[2], f[3]));
        }
        let (nx, nxi) = (xs.len(), xis.len());
        if nx < 2 || nxi < 2 || values.len() != nx * nxi {
            return Err(Error::Format("CSV does not describe a full rectangular grid".into()));
        }
        let half = |v: &[f64]| (v[v.len() - 1] - v[0]) * v.len() as f64 / (2.0 * (v.len() - 1) as f64);
        let grid = Grid2D::new(half(&xs), nx, half(&xis), nxi)?;
        SampledSymbol::new(grid, values, provenance)
    }
}

/// Sample `sym` at every grid node: `values[j][k] = a(x_j, ξ_k)`.
pub fn sample(sym: &SymbolField, grid: &Grid2D) -> SampledSymbol {
    let xs = grid.x.nodes();
    let xis = grid.xi.nodes();
    let mut values = Vec::with_capacity(xs.len() * xis.len());
    for &x in &xs {
        for &xi in &xis {
            values.push(sym.eval(x, xi));
        }
    }
    SampledSymbol { grid: *grid, values, provenance: sym.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zero_symbol_samples_to_zero() {
        let g = Grid2D::square(4.0, 16).unwrap();
        let s = sample(&SymbolField::zero(), &g);
        assert!(s.values().iter().all(|v| *v == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn gaussian_peaks_near_origin() {
        let g = Grid2D::square(8.0, 64).unwrap();
        let s = sample(&SymbolField::gaussian(1.0).unwrap(), &g);
        let (mut best, mut arg) = (0.0, (0, 0));
        for j in 0..64 {
            for k in 0..64 {
                if s.at(j, k).re > best {
                    best = s.at(j, k).re;
                    arg = (j, k);
                }
            }
        }
        // nodes nearest the origin are indices 31 and 32 on each axis
        assert!(arg.0 == 31 || arg.0 == 32);
        assert!(arg.1 == 31 || arg.1 == 32);
    }

    #[test]
    fn quarter_disk_area_fraction() {
        let (l, n, r) = (2.0, 128, 1.5);
        let g = Grid2D::square(l, n).unwrap();
        let s = sample(&SymbolField::sector_bump(PI / 2.0, r).unwrap(), &g);
        let nonzero = s.values().iter().filter(|v| v.norm() > 0.0).count();
        let frac = nonzero as f64 / (n * n) as f64;
        // quarter disk of radius R inside [-L, L]^2
        let expected = 0.25 * PI * r * r / (4.0 * l * l);
        assert!((frac - expected).abs() < 2.0 / n as f64, "{frac} vs {expected}");
    }

    #[test]
    fn interpolation_reproduces_nodes() {
        let g = Grid2D::new(3.0, 12, 2.0, 10).unwrap();
        let s = sample(&SymbolField::gaussian(0.5).unwrap(), &g);
        for j in 0..12 {
            for k in 0..10 {
                let v = s.interpolate(g.x.node(j), g.xi.node(k));
                assert!((v - s.at(j, k)).norm() < 1e-14);
            }
        }
        assert_eq!(s.interpolate(10.0, 0.0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn csv_round_trip() {
        let g = Grid2D::new(3.0, 8, 2.0, 10).unwrap();
        let s = sample(&SymbolField::bump(2.0, (0.3, 0.1)).unwrap(), &g);
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let back = SampledSymbol::read_csv(&buf[..], s.provenance.clone()).unwrap();
        assert_eq!(back.values(), s.values());
        assert!((back.grid.x.half_width() - 3.0).abs() < 1e-12);
        assert!((back.grid.xi.half_width() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_nan() {
        let g = Grid2D::square(1.0, 8).unwrap();
        let mut v = vec![Complex64::new(0.0, 0.0); 64];
        v[3] = Complex64::new(f64::NAN, 0.0);
        assert!(SampledSymbol::new(g, v, "bad").is_err());
    }
}
