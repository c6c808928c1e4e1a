//! Numerics for pseudodifferential operators on the line.
//!
//! - [`symbols`]: phase-plane symbols, their derivatives and dual symbols
//! - [`quantize`]: dense Nyström matrices of `op^(t)(a)` and the reflection
//! - [`spectra`]: eigenvalues, singular values, counting functions and
//!   windowed tail functionals
//! - [`lattice`]: lattice sequences and phase-volume functionals bounding
//!   singular values
//! - [`schrodinger`]: eigenvalue counting for `-u'' - Vu` by Prüfer shooting
//!   and via the Birman–Schwinger matrix

pub mod error;
pub mod grid;
pub mod jet;
pub mod lattice;
pub mod quad;
pub mod quantize;
pub mod spectra;
pub mod schrodinger;
pub mod symbols;

mod linalg;

pub use error::{Error, Result};
pub use grid::{Grid1D, Grid2D};
pub use symbols::{Axis, DerivativeMode, Family, SampledSymbol, SymbolField};

/// Size the global worker pool (`None` leaves the default) and keep the
/// dense factorizations sequential, so results do not depend on the worker
/// count.
pub fn init_threads(threads: Option<usize>) -> Result<()> {
    faer::set_global_parallelism(faer::Parallelism::None);
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    }
    Ok(())
}
