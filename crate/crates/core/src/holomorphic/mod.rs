//! Holomorphic functions on planar domains.
//!
//! A [`HolomorphicFn`] is an immutable expression tree with exact symbolic
//! derivatives. Point evaluation reports [`Error::SingularPoint`] within the
//! exclusion radius of a pole and [`Error::DomainViolation`] outside the
//! attached domain, if any.

pub mod domain;
pub mod expr;
pub mod mobius;
pub mod parse;

use std::f64::consts::FRAC_PI_4;
use std::sync::Arc;

use num_complex::Complex64;

pub use domain::{halton, DomainKind, DomainSpec, ExcludedPoint, Path, Segment, DEFAULT_EXCLUSION_RADIUS};
pub use expr::{Expr, Jet};
pub use mobius::Mobius;
pub use parse::{format_complex, parse_complex, parse_expr};

use crate::error::{Error, Result};
use expr::EvalCtx;

/// Points in the parameter plane: `w = u + i v`.
pub type ComplexPoint = Complex64;

/// Central-difference tolerance for derivative and holomorphy checks.
pub const FD_TOL: f64 = 1e-6;

/// Relative finite-difference step used with [`FD_TOL`].
pub const FD_STEP: f64 = 1e-5;

#[derive(Clone, Debug)]
pub struct HolomorphicFn {
    expr: Arc<Expr>,
    domain: Option<DomainSpec>,
    exclusion_radius: f64,
}

impl PartialEq for HolomorphicFn {
    fn eq(&self, other: &Self) -> bool {
        self.expr == other.expr
    }
}

impl HolomorphicFn {
    pub fn from_expr(expr: Expr) -> Self {
        HolomorphicFn {
            expr: Arc::new(expr),
            domain: None,
            exclusion_radius: DEFAULT_EXCLUSION_RADIUS,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Self::from_expr(parse::parse_expr(text)?))
    }

    pub fn identity() -> Self {
        Self::from_expr(Expr::Identity)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_expr(Expr::Const(c))
    }

    pub fn real(x: f64) -> Self {
        Self::constant(Complex64::new(x, 0.0))
    }

    pub fn mobius(m: Mobius) -> Self {
        Self::from_expr(Expr::Mobius(m))
    }

    pub fn recip(&self) -> Self {
        self.wrap(Expr::Recip(Box::new(self.expr().clone())))
    }

    pub fn powi(&self, n: i32) -> Self {
        self.wrap(expr::powi(self.expr().clone(), n))
    }

    pub fn exp(&self) -> Self {
        self.wrap(Expr::Exp(Box::new(self.expr().clone())))
    }

    pub fn ln(&self) -> Self {
        self.wrap(Expr::Log(Box::new(self.expr().clone())))
    }

    pub fn scale(&self, k: Complex64) -> Self {
        self.wrap(expr::scale(k, self.expr().clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.wrap(expr::sum(self.expr().clone(), other.expr().clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.wrap(expr::mul(self.expr().clone(), other.expr().clone()))
    }

    pub fn div(&self, other: &Self) -> Self {
        self.wrap(expr::quotient(self.expr().clone(), other.expr().clone()))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut out = self.wrap(expr::compose(self.expr().clone(), inner.expr().clone()));
        out.domain = inner.domain.clone();
        out
    }

    fn wrap(&self, e: Expr) -> Self {
        HolomorphicFn {
            expr: Arc::new(e),
            domain: self.domain.clone(),
            exclusion_radius: self.exclusion_radius,
        }
    }

    pub fn with_domain(mut self, domain: DomainSpec) -> Self {
        self.domain = Some(domain);
        self
    }

    pub fn with_exclusion_radius(mut self, radius: f64) -> Self {
        self.exclusion_radius = radius;
        self
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn domain(&self) -> Option<&DomainSpec> {
        self.domain.as_ref()
    }

    pub fn exclusion_radius(&self) -> f64 {
        self.exclusion_radius
    }

    /// The map as a Möbius transformation, when the tree is literally one.
    pub fn as_mobius(&self) -> Option<Mobius> {
        match self.expr() {
            Expr::Mobius(m) => Some(*m),
            Expr::Identity => Some(Mobius::identity()),
            Expr::Scale(k, inner) if matches!(inner.as_ref(), Expr::Identity) => Mobius::scaling(*k).ok(),
            _ => None,
        }
    }

    fn precheck(&self, w: Complex64) -> Result<()> {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(Error::NonFinite(w));
        }
        match &self.domain {
            Some(d) => d.check(w),
            None => Ok(()),
        }
    }

    fn ctx(&self, w: Complex64) -> EvalCtx {
        EvalCtx { exclusion_radius: self.exclusion_radius, at: w }
    }

    pub fn eval(&self, w: ComplexPoint) -> Result<ComplexPoint> {
        self.precheck(w)?;
        self.expr.value(w, &self.ctx(w))
    }

    /// Value together with exact first and second derivatives.
    pub fn eval_jet(&self, w: ComplexPoint) -> Result<Jet> {
        self.precheck(w)?;
        self.expr.jet(Jet::variable(w), &self.ctx(w))
    }

    /// Evaluation without the domain check (used on stencils and paths that
    /// are validated separately).
    pub(crate) fn eval_unchecked(&self, w: ComplexPoint) -> Result<ComplexPoint> {
        self.expr.value(w, &self.ctx(w))
    }

    pub(crate) fn jet_unchecked(&self, w: ComplexPoint) -> Result<Jet> {
        self.expr.jet(Jet::variable(w), &self.ctx(w))
    }

    pub fn derivative(&self) -> Self {
        self.wrap(self.expr.derivative())
    }
}

impl std::fmt::Display for HolomorphicFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.expr)
    }
}

impl std::str::FromStr for HolomorphicFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// `F = exp(Φ + iχ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogDecomposition {
    pub phi: f64,
    pub chi: f64,
}

impl LogDecomposition {
    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(self.phi.exp(), self.chi)
    }
}

/// Decomposes `f(w)` continuing `arg f` from its principal value at
/// `branch_anchor` along the default path of `f`'s domain (the whole plane
/// when none is attached).
pub fn log_decompose(f: &HolomorphicFn, w: ComplexPoint, branch_anchor: ComplexPoint) -> Result<LogDecomposition> {
    let path = match f.domain() {
        Some(d) => d.default_path(branch_anchor, w)?,
        None => DomainSpec::plane().default_path(branch_anchor, w)?,
    };
    log_decompose_along(f, &path)
}

/// Decomposes `f` at the end of `path`, continuing the argument from the
/// principal value at the path's start.
pub fn log_decompose_along(f: &HolomorphicFn, path: &Path) -> Result<LogDecomposition> {
    let start = path.start();
    let mut prev = nonzero(f, start)?;
    let mut chi = prev.arg();
    for seg in &path.segments {
        chi += continue_arg(f, seg, 0.0, 1.0, &mut prev, 0)?;
    }
    Ok(LogDecomposition { phi: prev.norm().ln(), chi })
}

fn nonzero(f: &HolomorphicFn, w: Complex64) -> Result<Complex64> {
    let v = f.eval_unchecked(w)?;
    if v.norm() < f.exclusion_radius() {
        Err(Error::ZeroCrossing(w))
    } else {
        Ok(v)
    }
}

/// Accumulated change of `arg f` over `seg` from `t0` to `t1`; subdivides
/// until each step changes the argument by less than π/4.
fn continue_arg(
    f: &HolomorphicFn,
    seg: &Segment,
    t0: f64,
    t1: f64,
    prev: &mut Complex64,
    depth: u32,
) -> Result<f64> {
    const STEPS: usize = 8;
    let mut total = 0.0;
    for k in 1..=STEPS {
        let ta = t0 + (t1 - t0) * (k - 1) as f64 / STEPS as f64;
        let tb = t0 + (t1 - t0) * k as f64 / STEPS as f64;
        let z = seg.point(tb);
        let v = nonzero(f, z)?;
        let step = (v / *prev).arg();
        if step.abs() >= FRAC_PI_4 {
            if depth >= 30 {
                return Err(Error::ZeroCrossing(z));
            }
            total += continue_arg(f, seg, ta, tb, prev, depth + 1)?;
        } else {
            total += step;
            *prev = v;
        }
    }
    Ok(total)
}

/// `max(|h_{u,u} − h_{v,v}|, |h_{u,v} + h_{v,u}|)` by central differences.
pub fn cauchy_riemann_residual(f: &HolomorphicFn, w: ComplexPoint, step: f64) -> Result<f64> {
    if !(step > 0.0) {
        return Err(Error::InvalidParams(format!("step {step}")));
    }
    let i = Complex64::new(0.0, 1.0);
    let stencil = [w + step, w - step, w + i * step, w - i * step];
    if let Some(d) = f.domain() {
        for z in stencil {
            if !d.contains(z) {
                return Err(Error::DomainViolation(z));
            }
        }
    }
    let [up, um, vp, vm] = stencil.map(|z| f.eval_unchecked(z));
    let du = (up? - um?) / (2.0 * step);
    let dv = (vp? - vm?) / (2.0 * step);
    Ok((du.re - dv.im).abs().max((dv.re + du.im).abs()))
}

/// Central-difference complex derivative with step `FD_STEP·max(1, |w|)`.
pub fn central_difference(f: &HolomorphicFn, w: ComplexPoint) -> Result<Complex64> {
    let h = FD_STEP * w.norm().max(1.0);
    Ok((f.eval_unchecked(w + h)? - f.eval_unchecked(w - h)?) / (2.0 * h))
}
