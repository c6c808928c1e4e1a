//! Phase-plane symbols `a(x, ξ)`.
//!
//! A [`SymbolField`] is a tree of built-in families (Gaussians, compactly
//! supported bumps, indicators of sectors/polygons/disks, power-decay
//! envelopes, the closed-form leading term `b₀` of the quarter-plane dual
//! symbol, grid-sampled data) combined by scaling, shifting, sums and
//! products. Smooth families differentiate exactly through [`Jet`]
//! arithmetic; finite differences are available as a cross-check.

mod dual;
mod sampled;

pub use dual::{dual_symbol, dual_values_at, is_truncated, DualOptions};
pub use sampled::{sample, SampledSymbol};

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::jet::Jet;

/// How [`SymbolField::eval_derivative`] computes derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DerivativeMode {
    /// Exact propagation through Taylor jets.
    ClosedForm,
    /// Five-point central stencils with base step `step · (1 + |x|)`.
    FiniteDifference { step: f64 },
}

impl Default for DerivativeMode {
    fn default() -> Self {
        DerivativeMode::ClosedForm
    }
}

pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Built-in symbol families and their compositions.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Constant(f64),
    /// `exp(-r (x² + ξ²))`
    Gaussian { r: f64 },
    /// `exp(1 - 1/(1 - ρ²))` for `ρ² = |τ - c|²/R² < 1`, zero otherwise.
    Bump { radius: f64, center: (f64, f64) },
    /// Indicator of the open sector `0 < arg(x + iξ) < angle`.
    Sector { angle: f64 },
    /// Indicator of a simple polygon (even-odd rule; need not be convex).
    Polygon { vertices: Vec<(f64, f64)> },
    /// Indicator of the open disk `x² + ξ² < R²`.
    Disk { radius: f64 },
    /// `φ₀₀/(4π) · ζ(x)/x · ζ(ξ)/ξ`, with `ζ` switching on between
    /// `zeta_inner` and `zeta_outer`.
    B0Closed { phi00: f64, zeta_inner: f64, zeta_outer: f64 },
    /// `⟨x⟩^{-α} ⟨ξ⟩^{-β}`
    PowerDecay { alpha: f64, beta: f64 },
    /// `⟨τ⟩^{-γ} = (1 + x² + ξ²)^{-γ/2}`
    RadialPower { gamma: f64 },
    /// Bilinear interpolation of sampled values, zero outside the grid.
    Sampled(Box<SampledSymbol>),
    Scale(f64, Box<Family>),
    /// `a(x - dx, ξ - dξ)`
    Shift { dx: f64, dxi: f64, inner: Box<Family> },
    Product(Box<Family>, Box<Family>),
    Sum(Box<Family>, Box<Family>),
}

/// An evaluatable phase-plane symbol together with its derivative policy.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolField {
    pub family: Family,
    pub derivative_mode: DerivativeMode,
}

/// Result of a derivative request. `reliable` is false when a finite
/// difference stencil straddles an indicator discontinuity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivativeValue {
    pub value: Complex64,
    pub reliable: bool,
}

impl SymbolField {
    pub fn new(family: Family) -> Result<Self> {
        validate(&family)?;
        Ok(SymbolField { family, derivative_mode: DerivativeMode::ClosedForm })
    }

    pub fn with_mode(mut self, mode: DerivativeMode) -> Result<Self> {
        if let DerivativeMode::FiniteDifference { step } = mode {
            if !(step > 0.0 && step < 1.0) {
                return Err(invalid(format!("finite-difference step must lie in (0, 1), got {step}")));
            }
        }
        self.derivative_mode = mode;
        Ok(self)
    }

    pub fn zero() -> Self {
        SymbolField { family: Family::Constant(0.0), derivative_mode: DerivativeMode::ClosedForm }
    }

    pub fn constant(c: f64) -> Result<Self> {
        Self::new(Family::Constant(c))
    }

    pub fn gaussian(r: f64) -> Result<Self> {
        Self::new(Family::Gaussian { r })
    }

    pub fn bump(radius: f64, center: (f64, f64)) -> Result<Self> {
        Self::new(Family::Bump { radius, center })
    }

    /// `1_{Ω_θ} · φ` with `φ` the unit-height bump of radius `R` centred at
    /// the origin, so `φ(0,0) = 1`.
    pub fn sector_bump(angle: f64, radius: f64) -> Result<Self> {
        Self::sector_bump_centered(angle, radius, (0.0, 0.0))
    }

    pub fn sector_bump_centered(angle: f64, radius: f64, center: (f64, f64)) -> Result<Self> {
        Self::new(Family::Product(
            Box::new(Family::Sector { angle }),
            Box::new(Family::Bump { radius, center }),
        ))
    }

    pub fn polygon_bump(vertices: Vec<(f64, f64)>, radius: f64) -> Result<Self> {
        Self::new(Family::Product(
            Box::new(Family::Polygon { vertices }),
            Box::new(Family::Bump { radius, center: (0.0, 0.0) }),
        ))
    }

    pub fn disk_indicator(radius: f64) -> Result<Self> {
        Self::new(Family::Disk { radius })
    }

    pub fn b0_closed(phi00: f64) -> Result<Self> {
        Self::new(Family::B0Closed { phi00, zeta_inner: 1.0, zeta_outer: 2.0 })
    }

    pub fn power_decay(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(Family::PowerDecay { alpha, beta })
    }

    pub fn radial_power(gamma: f64) -> Result<Self> {
        Self::new(Family::RadialPower { gamma })
    }

    pub fn sampled(s: SampledSymbol) -> Self {
        SymbolField { family: Family::Sampled(Box::new(s)), derivative_mode: DerivativeMode::ClosedForm }
    }

    pub fn scaled(self, c: f64) -> Self {
        SymbolField { family: Family::Scale(c, Box::new(self.family)), ..self }
    }

    pub fn shifted(self, dx: f64, dxi: f64) -> Self {
        SymbolField { family: Family::Shift { dx, dxi, inner: Box::new(self.family) }, ..self }
    }

    pub fn times(self, other: SymbolField) -> Self {
        SymbolField { family: Family::Product(Box::new(self.family), Box::new(other.family)), ..self }
    }

    pub fn plus(self, other: SymbolField) -> Self {
        SymbolField { family: Family::Sum(Box::new(self.family), Box::new(other.family)), ..self }
    }

    /// Whether every family in the tree takes real values.
    pub fn is_real(&self) -> bool {
        is_real(&self.family)
    }

    /// Whether the symbol is C^∞ (no indicators and no sampled data).
    pub fn is_smooth(&self) -> bool {
        is_smooth(&self.family)
    }

    pub fn eval(&self, x: f64, xi: f64) -> Complex64 {
        eval(&self.family, x, xi)
    }

    /// Real part of [`eval`](Self::eval); exact for real-valued symbols.
    pub fn eval_re(&self, x: f64, xi: f64) -> f64 {
        eval(&self.family, x, xi).re
    }

    /// Jet of orders `(mx, mxi)` at `(x, ξ)`. Indicators contribute their
    /// value only (derivatives taken away from the boundary). Returns `None`
    /// for complex-valued families.
    pub fn jet(&self, x: f64, xi: f64, mx: usize, mxi: usize) -> Option<Jet> {
        jet(&self.family, x, xi, mx, mxi)
    }

    /// For symbols of product form `f(x)·g(ξ)`, the univariate jet of `f`
    /// (axis [`Axis::X`], orders `(order, 0)`) or of `g` (axis [`Axis::Xi`],
    /// orders `(0, order)`) at `t`. `None` if the symbol is not recognised
    /// as separable.
    pub fn factor_jet(&self, axis: Axis, t: f64, order: usize) -> Option<Jet> {
        factor_jet(&self.family, axis, t, order)
    }

    pub fn is_separable(&self) -> bool {
        self.factor_jet(Axis::X, 0.0, 0).is_some() && self.factor_jet(Axis::Xi, 0.0, 0).is_some()
    }

    /// `∂_x^m ∂_ξ^n a(x, ξ)`.
    pub fn eval_derivative(&self, m: usize, n: usize, x: f64, xi: f64) -> Result<DerivativeValue> {
        match self.derivative_mode {
            DerivativeMode::ClosedForm => match self.jet(x, xi, m, n) {
                Some(j) => Ok(DerivativeValue { value: Complex64::new(j.derivative(m, n), 0.0), reliable: true }),
                None => self.finite_difference(m, n, x, xi, DEFAULT_FD_STEP),
            },
            DerivativeMode::FiniteDifference { step } => self.finite_difference(m, n, x, xi, step),
        }
    }

    /// Tensor-product five-point central stencils. The per-axis step is
    /// `step · (1 + |x|)`, enlarged by 10× for third and 20× for fourth
    /// derivatives so that round-off stays below truncation.
    pub fn finite_difference(&self, m: usize, n: usize, x: f64, xi: f64, step: f64) -> Result<DerivativeValue> {
        if m + n > 4 {
            return Err(invalid(format!("finite differences support m + n <= 4, got m={m}, n={n}")));
        }
        let hx = fd_step(step, x, m);
        let hxi = fd_step(step, xi, n);
        let wx = stencil(m);
        let wxi = stencil(n);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut first_ind: Option<bool> = None;
        let mut reliable = true;
        for (a, &cx) in wx.iter().enumerate() {
            for (b, &cxi) in wxi.iter().enumerate() {
                let px = x + (a as f64 - 2.0) * hx;
                let pxi = xi + (b as f64 - 2.0) * hxi;
                let ind = indicator_mask(&self.family, px, pxi);
                match first_ind {
                    None => first_ind = Some(ind),
                    Some(f) if f != ind => reliable = false,
                    _ => {}
                }
                if cx != 0.0 && cxi != 0.0 {
                    acc += eval(&self.family, px, pxi) * (cx * cxi);
                }
            }
        }
        let value = acc / (hx.powi(m as i32) * hxi.powi(n as i32));
        Ok(DerivativeValue { value, reliable })
    }
}

fn fd_step(step: f64, at: f64, order: usize) -> f64 {
    let boost = match order {
        3 => 10.0,
        4 => 20.0,
        _ => 1.0,
    };
    step * boost * (1.0 + at.abs())
}

/// Weights on offsets `-2..=2` (to be divided by `h^order`).
fn stencil(order: usize) -> [f64; 5] {
    match order {
        0 => [0.0, 0.0, 1.0, 0.0, 0.0],
        1 => [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0],
        2 => [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0],
        3 => [-0.5, 1.0, 0.0, -1.0, 0.5],
        4 => [1.0, -4.0, 6.0, -4.0, 1.0],
        _ => unreachable!("stencil order checked by caller"),
    }
}

/// Smooth step `S(u) = g(u)/(g(u) + g(1-u))`, `g(u) = exp(-1/u)` for `u > 0`.
pub fn smooth_step(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / u).exp();
        let b = (-1.0 / (1.0 - u)).exp();
        a / (a + b)
    }
}

fn smooth_step_jet(u: &Jet) -> Jet {
    let u0 = u.value();
    let (mx, mxi) = u.orders();
    if u0 <= 0.0 {
        return Jet::zero(mx, mxi);
    }
    if u0 >= 1.0 {
        return Jet::constant(1.0, mx, mxi);
    }
    let a = u.exp_neg_recip();
    let b = (-u.clone()).add_const(1.0).exp_neg_recip();
    &a * &(&a + &b).recip()
}

/// Cutoff `ζ(t)`: `0` for `|t| < 1`, `1` for `|t| ≥ 2`, smooth and monotone
/// in `|t|` in between.
pub fn zeta_cutoff(t: f64) -> f64 {
    zeta_general(t, 1.0, 2.0)
}

pub fn zeta_general(t: f64, inner: f64, outer: f64) -> f64 {
    smooth_step((t.abs() - inner) / (outer - inner))
}

fn zeta_jet(t: &Jet, inner: f64, outer: f64) -> Jet {
    let abs = if t.value() < 0.0 { -t.clone() } else { t.clone() };
    smooth_step_jet(&abs.add_const(-inner).scale(1.0 / (outer - inner)))
}

fn validate(f: &Family) -> Result<()> {
    let positive = |name: &str, v: f64| {
        if v.is_finite() && v > 0.0 {
            Ok(())
        } else {
            Err(invalid(format!("{name} must be positive and finite, got {v}")))
        }
    };
    match f {
        Family::Constant(c) => {
            if !c.is_finite() {
                return Err(invalid("constant symbol must be finite"));
            }
        }
        Family::Gaussian { r } => positive("gaussian r", *r)?,
        Family::Bump { radius, center } => {
            positive("bump radius", *radius)?;
            if !(center.0.is_finite() && center.1.is_finite()) {
                return Err(invalid("bump center must be finite"));
            }
        }
        Family::Sector { angle } => {
            if !(*angle > 0.0 && *angle < 2.0 * PI) {
                return Err(invalid(format!("sector angle must lie in (0, 2π), got {angle}")));
            }
        }
        Family::Polygon { vertices } => {
            if vertices.len() < 3 {
                return Err(invalid("polygon needs at least three vertices"));
            }
            if vertices.iter().any(|v| !(v.0.is_finite() && v.1.is_finite())) {
                return Err(invalid("polygon vertices must be finite"));
            }
        }
        Family::Disk { radius } => positive("disk radius", *radius)?,
        Family::B0Closed { phi00, zeta_inner, zeta_outer } => {
            if !phi00.is_finite() {
                return Err(invalid("b0 phi00 must be finite"));
            }
            positive("zeta inner radius", *zeta_inner)?;
            if !(zeta_outer > zeta_inner && zeta_outer.is_finite()) {
                return Err(invalid("zeta outer radius must exceed the inner radius"));
            }
        }
        Family::PowerDecay { alpha, beta } => {
            if !(*alpha >= 0.0 && *beta >= 0.0 && alpha.is_finite() && beta.is_finite()) {
                return Err(invalid("power_decay exponents must be finite and non-negative"));
            }
        }
        Family::RadialPower { gamma } => positive("radial_power gamma", *gamma)?,
        Family::Sampled(_) => {}
        Family::Scale(c, inner) => {
            if !c.is_finite() {
                return Err(invalid("scale factor must be finite"));
            }
            validate(inner)?;
        }
        Family::Shift { dx, dxi, inner } => {
            if !(dx.is_finite() && dxi.is_finite()) {
                return Err(invalid("shift must be finite"));
            }
            validate(inner)?;
        }
        Family::Product(a, b) | Family::Sum(a, b) => {
            validate(a)?;
            validate(b)?;
        }
    }
    Ok(())
}

fn is_real(f: &Family) -> bool {
    match f {
        Family::Sampled(s) => s.is_real(),
        Family::Scale(_, inner) | Family::Shift { inner, .. } => is_real(inner),
        Family::Product(a, b) | Family::Sum(a, b) => is_real(a) && is_real(b),
        _ => true,
    }
}

fn is_smooth(f: &Family) -> bool {
    match f {
        Family::Sector { .. } | Family::Polygon { .. } | Family::Disk { .. } | Family::Sampled(_) => false,
        Family::Scale(_, inner) | Family::Shift { inner, .. } => is_smooth(inner),
        Family::Product(a, b) | Family::Sum(a, b) => is_smooth(a) && is_smooth(b),
        _ => true,
    }
}

fn in_sector(angle: f64, x: f64, xi: f64) -> bool {
    if x == 0.0 && xi == 0.0 {
        return false;
    }
    let mut arg = xi.atan2(x);
    if arg < 0.0 {
        arg += 2.0 * PI;
    }
    arg > 0.0 && arg < angle
}

fn in_polygon(vertices: &[(f64, f64)], x: f64, xi: f64) -> bool {
    let mut inside = false;
    let n = vertices.len();
    let mut j = n - 1;
    for i in 0..n {
        let (xa, ya) = vertices[i];
        let (xb, yb) = vertices[j];
        if (ya > xi) != (yb > xi) && x < (xb - xa) * (xi - ya) / (yb - ya) + xa {
            inside = !inside;
        }
        j = i;
    }
    inside
}

#[inline]
fn bump_value(radius: f64, center: (f64, f64), x: f64, xi: f64) -> f64 {
    let dx = (x - center.0) / radius;
    let dxi = (xi - center.1) / radius;
    let rho2 = dx * dx + dxi * dxi;
    if rho2 < 1.0 {
        (1.0 - 1.0 / (1.0 - rho2)).exp()
    } else {
        0.0
    }
}

/// Product of all indicators in the tree at a point (used to detect
/// stencils that straddle a discontinuity).
fn indicator_mask(f: &Family, x: f64, xi: f64) -> bool {
    match f {
        Family::Sector { angle } => in_sector(*angle, x, xi),
        Family::Polygon { vertices } => in_polygon(vertices, x, xi),
        Family::Disk { radius } => x * x + xi * xi < radius * radius,
        Family::Scale(_, inner) => indicator_mask(inner, x, xi),
        Family::Shift { dx, dxi, inner } => indicator_mask(inner, x - dx, xi - dxi),
        Family::Product(a, b) | Family::Sum(a, b) => indicator_mask(a, x, xi) && indicator_mask(b, x, xi),
        _ => true,
    }
}

fn eval(f: &Family, x: f64, xi: f64) -> Complex64 {
    let re = |v: f64| Complex64::new(v, 0.0);
    match f {
        Family::Constant(c) => re(*c),
        Family::Gaussian { r } => re((-r * (x * x + xi * xi)).exp()),
        Family::Bump { radius, center } => re(bump_value(*radius, *center, x, xi)),
        Family::Sector { angle } => re(if in_sector(*angle, x, xi) { 1.0 } else { 0.0 }),
        Family::Polygon { vertices } => re(if in_polygon(vertices, x, xi) { 1.0 } else { 0.0 }),
        Family::Disk { radius } => re(if x * x + xi * xi < radius * radius { 1.0 } else { 0.0 }),
        Family::B0Closed { phi00, zeta_inner, zeta_outer } => {
            let zx = zeta_general(x, *zeta_inner, *zeta_outer);
            let zxi = zeta_general(xi, *zeta_inner, *zeta_outer);
            if zx == 0.0 || zxi == 0.0 {
                re(0.0)
            } else {
                re(phi00 / (4.0 * PI) * zx / x * zxi / xi)
            }
        }
        Family::PowerDecay { alpha, beta } => {
            re((1.0 + x * x).powf(-0.5 * alpha) * (1.0 + xi * xi).powf(-0.5 * beta))
        }
        Family::RadialPower { gamma } => re((1.0 + x * x + xi * xi).powf(-0.5 * gamma)),
        Family::Sampled(s) => s.interpolate(x, xi),
        Family::Scale(c, inner) => eval(inner, x, xi) * *c,
        Family::Shift { dx, dxi, inner } => eval(inner, x - dx, xi - dxi),
        Family::Product(a, b) => {
            let va = eval(a, x, xi);
            if va == Complex64::new(0.0, 0.0) {
                return va;
            }
            va * eval(b, x, xi)
        }
        Family::Sum(a, b) => eval(a, x, xi) + eval(b, x, xi),
    }
}

fn jet(f: &Family, x: f64, xi: f64, mx: usize, mxi: usize) -> Option<Jet> {
    let c = |v: f64| Jet::constant(v, mx, mxi);
    let jx = || Jet::var_x(x, mx, mxi);
    let jxi = || Jet::var_xi(xi, mx, mxi);
    Some(match f {
        Family::Constant(v) => c(*v),
        Family::Gaussian { r } => {
            let (a, b) = (jx(), jxi());
            (&(&a * &a) + &(&b * &b)).scale(-r).exp()
        }
        Family::Bump { radius, center } => {
            if bump_value(*radius, *center, x, xi) == 0.0 {
                return Some(Jet::zero(mx, mxi));
            }
            let a = jx().add_const(-center.0).scale(1.0 / radius);
            let b = jxi().add_const(-center.1).scale(1.0 / radius);
            let rho2 = &(&a * &a) + &(&b * &b);
            // 1 - 1/(1 - ρ²)
            (-(-rho2).add_const(1.0).recip()).add_const(1.0).exp()
        }
        Family::Sector { .. } | Family::Polygon { .. } | Family::Disk { .. } => {
            c(if indicator_mask(f, x, xi) { 1.0 } else { 0.0 })
        }
        Family::B0Closed { phi00, zeta_inner, zeta_outer } => {
            let zx = zeta_jet(&jx(), *zeta_inner, *zeta_outer);
            let zxi = zeta_jet(&jxi(), *zeta_inner, *zeta_outer);
            if zx.is_zero() || zxi.is_zero() {
                return Some(Jet::zero(mx, mxi));
            }
            let fx = &zx * &jx().recip();
            let fxi = &zxi * &jxi().recip();
            (&fx * &fxi).scale(phi00 / (4.0 * PI))
        }
        Family::PowerDecay { alpha, beta } => {
            let (a, b) = (jx(), jxi());
            let px = (&a * &a).add_const(1.0).powf(-0.5 * alpha);
            let pxi = (&b * &b).add_const(1.0).powf(-0.5 * beta);
            &px * &pxi
        }
        Family::RadialPower { gamma } => {
            let (a, b) = (jx(), jxi());
            (&(&a * &a) + &(&b * &b)).add_const(1.0).powf(-0.5 * gamma)
        }
        Family::Sampled(_) => return None,
        Family::Scale(s, inner) => jet(inner, x, xi, mx, mxi)?.scale(*s),
        Family::Shift { dx, dxi, inner } => jet(inner, x - dx, xi - dxi, mx, mxi)?,
        Family::Product(a, b) => {
            let ja = jet(a, x, xi, mx, mxi)?;
            if ja.is_zero() {
                return Some(ja);
            }
            &ja * &jet(b, x, xi, mx, mxi)?
        }
        Family::Sum(a, b) => &jet(a, x, xi, mx, mxi)? + &jet(b, x, xi, mx, mxi)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Xi,
}

fn factor_jet(f: &Family, axis: Axis, t: f64, order: usize) -> Option<Jet> {
    let (mx, mxi) = match axis {
        Axis::X => (order, 0),
        Axis::Xi => (0, order),
    };
    let var = || match axis {
        Axis::X => Jet::var_x(t, mx, mxi),
        Axis::Xi => Jet::var_xi(t, mx, mxi),
    };
    let pick = |on_x: f64, on_xi: f64| if axis == Axis::X { on_x } else { on_xi };
    Some(match f {
        Family::Constant(v) => Jet::constant(pick(*v, 1.0), mx, mxi),
        Family::Gaussian { r } => {
            let u = var();
            (&u * &u).scale(-r).exp()
        }
        Family::PowerDecay { alpha, beta } => {
            let u = var();
            (&u * &u).add_const(1.0).powf(-0.5 * pick(*alpha, *beta))
        }
        Family::B0Closed { phi00, zeta_inner, zeta_outer } => {
            let z = zeta_jet(&var(), *zeta_inner, *zeta_outer);
            if z.is_zero() {
                return Some(z);
            }
            (&z * &var().recip()).scale(pick(phi00 / (4.0 * PI), 1.0))
        }
        Family::Scale(c, inner) => factor_jet(inner, axis, t, order)?.scale(pick(*c, 1.0)),
        Family::Shift { dx, dxi, inner } => factor_jet(inner, axis, t - pick(*dx, *dxi), order)?,
        Family::Product(a, b) => &factor_jet(a, axis, t, order)? * &factor_jet(b, axis, t, order)?,
        _ => return None,
    })
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Constant(c) => write!(f, "constant({c})"),
            Family::Gaussian { r } => write!(f, "gaussian(r={r})"),
            Family::Bump { radius, center } => write!(f, "bump(R={radius}, center=({}, {}))", center.0, center.1),
            Family::Sector { angle } => write!(f, "sector(angle={angle})"),
            Family::Polygon { vertices } => {
                write!(f, "polygon(")?;
                for (i, v) in vertices.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{} {}", v.0, v.1)?;
                }
                write!(f, ")")
            }
            Family::Disk { radius } => write!(f, "disk(R={radius})"),
            Family::B0Closed { phi00, zeta_inner, zeta_outer } => {
                write!(f, "b0(phi00={phi00}, zeta=[{zeta_inner}, {zeta_outer}])")
            }
            Family::PowerDecay { alpha, beta } => write!(f, "power_decay(alpha={alpha}, beta={beta})"),
            Family::RadialPower { gamma } => write!(f, "radial_power(gamma={gamma})"),
            Family::Sampled(s) => write!(f, "sampled[{}]", s.provenance),
            Family::Scale(c, inner) => write!(f, "{c}*{inner}"),
            Family::Shift { dx, dxi, inner } => write!(f, "shift({dx}, {dxi})[{inner}]"),
            Family::Product(a, b) => write!(f, "({a})*({b})"),
            Family::Sum(a, b) => write!(f, "({a})+({b})"),
        }
    }
}

impl fmt::Display for SymbolField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.family.fmt(f)
    }
}
