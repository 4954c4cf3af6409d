//! Expression trees over the holomorphic building blocks, evaluated either
//! pointwise or as second-order jets.

use num_complex::Complex64;

use super::mobius::Mobius;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Complex64),
    Identity,
    Pow(Box<Expr>, i32),
    Recip(Box<Expr>),
    Exp(Box<Expr>),
    /// Principal logarithm.
    Log(Box<Expr>),
    Scale(Complex64, Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Quotient(Box<Expr>, Box<Expr>),
    /// `outer ∘ inner`.
    Compose(Box<Expr>, Box<Expr>),
    Mobius(Mobius),
}

/// Value, first and second complex derivative at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub value: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl Jet {
    pub fn constant(value: Complex64) -> Self {
        Jet { value, d1: ZERO, d2: ZERO }
    }

    pub fn variable(w: Complex64) -> Self {
        Jet { value: w, d1: ONE, d2: ZERO }
    }

    fn scale(self, k: Complex64) -> Self {
        Jet { value: k * self.value, d1: k * self.d1, d2: k * self.d2 }
    }

    fn add(self, o: Jet) -> Self {
        Jet { value: self.value + o.value, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }

    fn mul(self, o: Jet) -> Self {
        Jet {
            value: self.value * o.value,
            d1: self.d1 * o.value + self.value * o.d1,
            d2: self.d2 * o.value + 2.0 * self.d1 * o.d1 + self.value * o.d2,
        }
    }

    fn recip(self) -> Self {
        let r = 1.0 / self.value;
        let r2 = r * r;
        Jet {
            value: r,
            d1: -self.d1 * r2,
            d2: 2.0 * self.d1 * self.d1 * r2 * r - self.d2 * r2,
        }
    }

    fn powi(self, n: i32) -> Self {
        match n {
            0 => return Jet::constant(ONE),
            1 => return self,
            _ => {}
        }
        let nf = n as f64;
        let pm2 = self.value.powi(n - 2);
        let pm1 = pm2 * self.value;
        Jet {
            value: pm1 * self.value,
            d1: nf * pm1 * self.d1,
            d2: nf * (nf - 1.0) * pm2 * self.d1 * self.d1 + nf * pm1 * self.d2,
        }
    }

    fn exp(self) -> Self {
        let e = self.value.exp();
        Jet { value: e, d1: self.d1 * e, d2: (self.d2 + self.d1 * self.d1) * e }
    }

    fn ln(self) -> Self {
        let q = self.d1 / self.value;
        Jet { value: self.value.ln(), d1: q, d2: self.d2 / self.value - q * q }
    }

    /// Log-derivative `f′/f`.
    pub fn log_derivative(&self) -> Complex64 {
        self.d1 / self.value
    }
}

/// Evaluation context shared by the tree walk.
pub(crate) struct EvalCtx {
    pub exclusion_radius: f64,
    pub at: Complex64,
}

impl EvalCtx {
    fn guard_nonzero(&self, z: Complex64) -> Result<()> {
        if z.norm() < self.exclusion_radius || !z.norm().is_finite() {
            Err(Error::SingularPoint(self.at))
        } else {
            Ok(())
        }
    }
}

impl Expr {
    pub(crate) fn jet(&self, input: Jet, ctx: &EvalCtx) -> Result<Jet> {
        let out = match self {
            Expr::Const(c) => Jet::constant(*c),
            Expr::Identity => input,
            Expr::Pow(e, n) => {
                let j = e.jet(input, ctx)?;
                if *n < 0 {
                    ctx.guard_nonzero(j.value)?;
                }
                j.powi(*n)
            }
            Expr::Recip(e) => {
                let j = e.jet(input, ctx)?;
                ctx.guard_nonzero(j.value)?;
                j.recip()
            }
            Expr::Exp(e) => e.jet(input, ctx)?.exp(),
            Expr::Log(e) => {
                let j = e.jet(input, ctx)?;
                ctx.guard_nonzero(j.value)?;
                j.ln()
            }
            Expr::Scale(k, e) => e.jet(input, ctx)?.scale(*k),
            Expr::Sum(a, b) => a.jet(input, ctx)?.add(b.jet(input, ctx)?),
            Expr::Product(a, b) => a.jet(input, ctx)?.mul(b.jet(input, ctx)?),
            Expr::Quotient(a, b) => {
                let den = b.jet(input, ctx)?;
                ctx.guard_nonzero(den.value)?;
                a.jet(input, ctx)?.mul(den.recip())
            }
            Expr::Compose(outer, inner) => {
                let j = inner.jet(input, ctx)?;
                outer.jet(j, ctx)?
            }
            Expr::Mobius(m) => {
                let (a, b, c, d) = m.coefficients();
                let num = input.scale(a).add(Jet::constant(b));
                let den = input.scale(c).add(Jet::constant(d));
                ctx.guard_nonzero(den.value)?;
                num.mul(den.recip())
            }
        };
        if out.value.re.is_finite() && out.value.im.is_finite() {
            Ok(out)
        } else {
            Err(Error::SingularPoint(ctx.at))
        }
    }

    pub(crate) fn value(&self, w: Complex64, ctx: &EvalCtx) -> Result<Complex64> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Identity => w,
            Expr::Pow(e, n) => {
                let z = e.value(w, ctx)?;
                if *n < 0 {
                    ctx.guard_nonzero(z)?;
                }
                z.powi(*n)
            }
            Expr::Recip(e) => {
                let z = e.value(w, ctx)?;
                ctx.guard_nonzero(z)?;
                1.0 / z
            }
            Expr::Exp(e) => e.value(w, ctx)?.exp(),
            Expr::Log(e) => {
                let z = e.value(w, ctx)?;
                ctx.guard_nonzero(z)?;
                z.ln()
            }
            Expr::Scale(k, e) => k * e.value(w, ctx)?,
            Expr::Sum(a, b) => a.value(w, ctx)? + b.value(w, ctx)?,
            Expr::Product(a, b) => a.value(w, ctx)? * b.value(w, ctx)?,
            Expr::Quotient(a, b) => {
                let den = b.value(w, ctx)?;
                ctx.guard_nonzero(den)?;
                a.value(w, ctx)? / den
            }
            Expr::Compose(outer, inner) => outer.value(inner.value(w, ctx)?, ctx)?,
            Expr::Mobius(m) => {
                let (num, den) = m.numerator_denominator(w);
                ctx.guard_nonzero(den)?;
                num / den
            }
        };
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::SingularPoint(ctx.at))
        }
    }

    /// Symbolic complex derivative.
    pub fn derivative(&self) -> Expr {
        match self {
            Expr::Const(_) => Expr::Const(ZERO),
            Expr::Identity => Expr::Const(ONE),
            Expr::Pow(e, n) => match n {
                0 => Expr::Const(ZERO),
                1 => e.derivative(),
                _ => mul(
                    scale(Complex64::new(*n as f64, 0.0), powi(e.as_ref().clone(), n - 1)),
                    e.derivative(),
                ),
            },
            Expr::Recip(e) => mul(scale(-ONE, powi(e.as_ref().clone(), -2)), e.derivative()),
            Expr::Exp(e) => mul(self.clone(), e.derivative()),
            Expr::Log(e) => quotient(e.derivative(), e.as_ref().clone()),
            Expr::Scale(k, e) => scale(*k, e.derivative()),
            Expr::Sum(a, b) => sum(a.derivative(), b.derivative()),
            Expr::Product(a, b) => sum(
                mul(a.derivative(), b.as_ref().clone()),
                mul(a.as_ref().clone(), b.derivative()),
            ),
            Expr::Quotient(a, b) => quotient(
                sum(
                    mul(a.derivative(), b.as_ref().clone()),
                    scale(-ONE, mul(a.as_ref().clone(), b.derivative())),
                ),
                powi(b.as_ref().clone(), 2),
            ),
            Expr::Compose(outer, inner) => mul(
                compose(outer.derivative(), inner.as_ref().clone()),
                inner.derivative(),
            ),
            Expr::Mobius(m) => {
                let (_, _, c, d) = m.coefficients();
                let affine = sum(scale(c, Expr::Identity), Expr::Const(d));
                scale(m.det(), powi(affine, -2))
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if *c == ZERO)
    }
}

pub(crate) fn scale(k: Complex64, e: Expr) -> Expr {
    if k == ONE {
        return e;
    }
    match e {
        Expr::Const(c) => Expr::Const(k * c),
        Expr::Scale(k2, inner) => scale(k * k2, *inner),
        e if k == ZERO => {
            let _ = e;
            Expr::Const(ZERO)
        }
        e => Expr::Scale(k, Box::new(e)),
    }
}

pub(crate) fn sum(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (a, b) if a.is_zero() => b,
        (a, b) if b.is_zero() => a,
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x + y),
        (a, b) => Expr::Sum(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (a, b) if a.is_zero() || b.is_zero() => Expr::Const(ZERO),
        (Expr::Const(x), b) => scale(x, b),
        (a, Expr::Const(y)) => scale(y, a),
        (a, b) => Expr::Product(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn quotient(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (a, _) if a.is_zero() => Expr::Const(ZERO),
        (a, Expr::Const(y)) if y != ZERO => scale(1.0 / y, a),
        (Expr::Const(x), b) => scale(x, Expr::Recip(Box::new(b))),
        (a, b) => Expr::Quotient(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn powi(e: Expr, n: i32) -> Expr {
    match (e, n) {
        (_, 0) => Expr::Const(ONE),
        (e, 1) => e,
        (Expr::Const(c), n) => Expr::Const(c.powi(n)),
        (Expr::Pow(inner, m), n) => powi(*inner, m * n),
        (e, n) => Expr::Pow(Box::new(e), n),
    }
}

pub(crate) fn compose(outer: Expr, inner: Expr) -> Expr {
    match (outer, inner) {
        (Expr::Const(c), _) => Expr::Const(c),
        (Expr::Identity, inner) => inner,
        (outer, Expr::Identity) => outer,
        (outer, inner) => Expr::Compose(Box::new(outer), Box::new(inner)),
    }
}
