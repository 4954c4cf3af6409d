//! Möbius maps `w ↦ (a w + b) / (c w + d)`.
//!
//! Coefficients are kept in a canonical form: unit Frobenius norm
//! (`|a|² + |b|² + |c|² + |d|² = 1`) with the first nonzero coefficient
//! real and positive. Two maps are equal iff their canonical coefficients
//! agree.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO_COEFF: f64 = 1e-15;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mobius {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl Mobius {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let scale = (a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr()).sqrt();
        if !scale.is_finite() || scale == 0.0 {
            return Err(Error::DegenerateMoebius);
        }
        let det = a * d - b * c;
        if det.norm() <= 1e-14 * scale * scale {
            return Err(Error::DegenerateMoebius);
        }
        let first = [a, b, c, d]
            .into_iter()
            .find(|z| z.norm() > ZERO_COEFF * scale)
            .expect("nonzero scale has a nonzero coefficient");
        let phase = first.conj() / first.norm();
        let k = phase / scale;
        Ok(Mobius {
            a: a * k,
            b: b * k,
            c: c * k,
            d: d * k,
        })
    }

    pub fn identity() -> Self {
        Self::from_real(1.0, 0.0, 0.0, 1.0)
    }

    /// `w ↦ κ w`.
    pub fn scaling(kappa: Complex64) -> Result<Self> {
        Self::new(kappa, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
    }

    /// The rotation-of-the-sphere family `w ↦ (a w − c̄)/(c w + ā)`.
    pub fn special(a: Complex64, c: Complex64) -> Result<Self> {
        Self::new(a, -c.conj(), c, a.conj())
    }

    fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
            Complex64::new(d, 0.0),
        )
        .expect("nondegenerate literal")
    }

    /// Canonical coefficients `(a, b, c, d)`.
    pub fn coefficients(&self) -> (Complex64, Complex64, Complex64, Complex64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Finite pole `−d/c`, if `c ≠ 0`.
    pub fn pole(&self) -> Option<Complex64> {
        if self.c.norm() > ZERO_COEFF {
            Some(-self.d / self.c)
        } else {
            None
        }
    }

    pub fn is_identity(&self) -> bool {
        let id = Self::identity();
        (self.a - id.a).norm() < 1e-14
            && (self.b - id.b).norm() < 1e-14
            && (self.c - id.c).norm() < 1e-14
            && (self.d - id.d).norm() < 1e-14
    }

    /// `a w + b` and `c w + d`; callers check the denominator.
    pub fn numerator_denominator(&self, w: Complex64) -> (Complex64, Complex64) {
        (self.a * w + self.b, self.c * w + self.d)
    }

    pub fn apply(&self, w: Complex64) -> Option<Complex64> {
        let (num, den) = self.numerator_denominator(w);
        if den.norm() == 0.0 {
            None
        } else {
            Some(num / den)
        }
    }

    /// `(ad − bc)/(c w + d)²`.
    pub fn derivative_at(&self, w: Complex64) -> Option<Complex64> {
        let den = self.c * w + self.d;
        if den.norm() == 0.0 {
            None
        } else {
            Some(self.det() / (den * den))
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Mobius) -> Mobius {
        let (a1, b1, c1, d1) = self.coefficients();
        let (a2, b2, c2, d2) = inner.coefficients();
        Mobius::new(
            a1 * a2 + b1 * c2,
            a1 * b2 + b1 * d2,
            c1 * a2 + d1 * c2,
            c1 * b2 + d1 * d2,
        )
        .expect("composition of nondegenerate maps is nondegenerate")
    }

    pub fn inverse(&self) -> Mobius {
        Mobius::new(self.d, -self.b, -self.c, self.a).expect("inverse of nondegenerate map")
    }

    /// Coefficients rescaled so that `ad − bc = 1` (one of the two square-root branches).
    pub fn unimodular(&self) -> (Complex64, Complex64, Complex64, Complex64) {
        let s = self.det().sqrt();
        (self.a / s, self.b / s, self.c / s, self.d / s)
    }
}

impl std::fmt::Display for Mobius {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "mobius({},{},{},{})",
            super::parse::format_complex(self.a),
            super::parse::format_complex(self.b),
            super::parse::format_complex(self.c),
            super::parse::format_complex(self.d)
        )
    }
}
