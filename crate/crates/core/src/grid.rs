//! Cell-centered uniform grids on the line and on the phase plane.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Uniform cell-centered grid on `[-L, L]` with `n` nodes
/// `x_j = -L + (j + 1/2) h`, `h = 2L/n`. No node sits at `0` or at `±L`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    half_width: f64,
    n: usize,
}

impl Grid1D {
    pub fn new(half_width: f64, n: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(invalid(format!("grid half-width must be positive, got {half_width}")));
        }
        if n == 0 || n % 2 != 0 {
            return Err(invalid(format!("grid size must be a positive even integer, got {n}")));
        }
        Ok(Grid1D { half_width, n })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    #[inline]
    pub fn node(&self, j: usize) -> f64 {
        -self.half_width + (j as f64 + 0.5) * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }

    /// Index of the node `-x_j` (the grid is symmetric under reflection).
    #[inline]
    pub fn mirror(&self, j: usize) -> usize {
        self.n - 1 - j
    }

    /// Midpoint `(x_i + x_j)/2` indexed by `m = i + j`; these lie on the
    /// half-spacing lattice `-L + (m + 1) h/2`.
    #[inline]
    pub fn midpoint(&self, m: usize) -> f64 {
        -self.half_width + (m as f64 + 1.0) * 0.5 * self.spacing()
    }
}

/// Cell-centered grid on the rectangle `[-Lx, Lx] × [-Lξ, Lξ]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid2D {
    pub x: Grid1D,
    pub xi: Grid1D,
}

impl Grid2D {
    pub const MIN_NODES: usize = 8;

    pub fn new(half_width_x: f64, n_x: usize, half_width_xi: f64, n_xi: usize) -> Result<Self> {
        if n_x < Self::MIN_NODES || n_xi < Self::MIN_NODES {
            return Err(invalid(format!(
                "phase-plane grids need at least {} nodes per axis, got {n_x} x {n_xi}",
                Self::MIN_NODES
            )));
        }
        Ok(Grid2D { x: Grid1D::new(half_width_x, n_x)?, xi: Grid1D::new(half_width_xi, n_xi)? })
    }

    pub fn square(half_width: f64, n: usize) -> Result<Self> {
        Self::new(half_width, n, half_width, n)
    }

    pub fn cell_area(&self) -> f64 {
        self.x.spacing() * self.xi.spacing()
    }
}
