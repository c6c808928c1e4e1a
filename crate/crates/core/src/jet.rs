//! Truncated bivariate Taylor polynomials ("jets").
//!
//! A [`Jet`] of order `(mx, mxi)` carries the normalized partial derivatives
//! `∂_x^m ∂_ξ^n f / (m! n!)` for `m ≤ mx`, `n ≤ mxi` at one point. Arithmetic on
//! jets propagates these coefficients exactly, so any symbol assembled from the
//! operations below gets its mixed derivatives of every order without
//! finite differences.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    mx: usize,
    mxi: usize,
    c: Vec<f64>,
}

impl Jet {
    pub fn constant(value: f64, mx: usize, mxi: usize) -> Self {
        let mut c = vec![0.0; (mx + 1) * (mxi + 1)];
        c[0] = value;
        Jet { mx, mxi, c }
    }

    pub fn zero(mx: usize, mxi: usize) -> Self {
        Self::constant(0.0, mx, mxi)
    }

    /// The coordinate function `x` expanded at `x0`.
    pub fn var_x(x0: f64, mx: usize, mxi: usize) -> Self {
        let mut j = Self::constant(x0, mx, mxi);
        if mx >= 1 {
            j.c[mxi + 1] = 1.0;
        }
        j
    }

    /// The coordinate function `ξ` expanded at `ξ0`.
    pub fn var_xi(xi0: f64, mx: usize, mxi: usize) -> Self {
        let mut j = Self::constant(xi0, mx, mxi);
        if mxi >= 1 {
            j.c[1] = 1.0;
        }
        j
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.mx, self.mxi)
    }

    #[inline]
    fn idx(&self, m: usize, n: usize) -> usize {
        m * (self.mxi + 1) + n
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Normalized coefficient `∂_x^m ∂_ξ^n f / (m! n!)`.
    pub fn coeff(&self, m: usize, n: usize) -> f64 {
        self.c[self.idx(m, n)]
    }

    /// The actual partial derivative `∂_x^m ∂_ξ^n f`.
    pub fn derivative(&self, m: usize, n: usize) -> f64 {
        self.coeff(m, n) * factorial(m) * factorial(n)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0.0)
    }

    pub fn scale(mut self, s: f64) -> Self {
        self.c.iter_mut().for_each(|v| *v *= s);
        self
    }

    pub fn add_const(mut self, s: f64) -> Self {
        self.c[0] += s;
        self
    }

    pub fn recip(&self) -> Self {
        let u0 = self.value();
        self.compose(|k| {
            // d^k/du^k u^{-1} = (-1)^k k! u^{-1-k}
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * factorial(k) * u0.powi(-(k as i32) - 1)
        })
    }

    pub fn exp(&self) -> Self {
        let e = self.value().exp();
        self.compose(|_| e)
    }

    pub fn ln(&self) -> Self {
        let u0 = self.value();
        self.compose(|k| {
            if k == 0 {
                u0.ln()
            } else {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * factorial(k - 1) * u0.powi(-(k as i32))
            }
        })
    }

    /// `u^p` for real `p`; requires a positive base unless `p` is a
    /// non-negative integer.
    pub fn powf(&self, p: f64) -> Self {
        let u0 = self.value();
        self.compose(|k| {
            let mut coef = 1.0;
            for i in 0..k {
                coef *= p - i as f64;
            }
            if coef == 0.0 {
                0.0
            } else {
                coef * u0.powf(p - k as f64)
            }
        })
    }

    pub fn sqrt(&self) -> Self {
        self.powf(0.5)
    }

    /// `exp(-1/u)` for `u > 0`, extended by zero; flat at `u = 0`.
    pub fn exp_neg_recip(&self) -> Self {
        if self.value() <= 0.0 {
            return Self::zero(self.mx, self.mxi);
        }
        (-self.recip()).exp()
    }

    /// Apply a univariate function given its derivatives at the base value:
    /// `f(u) = Σ_k f^{(k)}(u0)/k! (u - u0)^k`, truncated to the jet order.
    pub fn compose<F: Fn(usize) -> f64>(&self, derivs: F) -> Self {
        let total = self.mx + self.mxi;
        let mut delta = self.clone();
        delta.c[0] = 0.0;
        let mut out = Self::constant(derivs(0), self.mx, self.mxi);
        let mut power = Self::constant(1.0, self.mx, self.mxi);
        for k in 1..=total {
            power = &power * &delta;
            if power.is_zero() {
                break;
            }
            let f = derivs(k) / factorial(k);
            if f != 0.0 {
                for (o, p) in out.c.iter_mut().zip(power.c.iter()) {
                    *o += f * p;
                }
            }
        }
        out
    }
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

impl<'a> Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, rhs: &'a Jet) -> Jet {
        debug_assert_eq!(self.orders(), rhs.orders());
        let (mx, mxi) = (self.mx, self.mxi);
        let mut out = Jet::zero(mx, mxi);
        for m1 in 0..=mx {
            for n1 in 0..=mxi {
                let a = self.c[self.idx(m1, n1)];
                if a == 0.0 {
                    continue;
                }
                for m2 in 0..=(mx - m1) {
                    for n2 in 0..=(mxi - n1) {
                        let i = out.idx(m1 + m2, n1 + n2);
                        out.c[i] += a * rhs.c[rhs.idx(m2, n2)];
                    }
                }
            }
        }
        out
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        &self * &rhs
    }
}

impl<'a> Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, rhs: &'a Jet) -> Jet {
        let mut out = self.clone();
        out.c.iter_mut().zip(&rhs.c).for_each(|(o, r)| *o += r);
        out
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn sub(self, rhs: &'a Jet) -> Jet {
        let mut out = self.clone();
        out.c.iter_mut().zip(&rhs.c).for_each(|(o, r)| *o -= r);
        out
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        &self - &rhs
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}
