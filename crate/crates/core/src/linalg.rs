//! Conversions between the crate's row-major complex storage and `faer`.

use faer::complex_native::c64;
use faer::Mat;
use num_complex::Complex64;

#[inline]
pub(crate) fn to_c64(z: Complex64) -> c64 {
    c64::new(z.re, z.im)
}

#[inline]
pub(crate) fn from_c64(z: c64) -> Complex64 {
    Complex64::new(z.re, z.im)
}

pub(crate) fn mat_from_row_major(rows: usize, cols: usize, data: &[Complex64]) -> Mat<c64> {
    Mat::from_fn(rows, cols, |i, j| to_c64(data[i * cols + j]))
}

pub(crate) fn mat_to_row_major(m: &Mat<c64>) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.push(from_c64(m.read(i, j)));
        }
    }
    out
}
