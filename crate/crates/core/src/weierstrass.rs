//! Minimal surfaces from Weierstrass data `F`.
//!
//! With `w = u + iv` and `F = e^{Φ + iχ}` the surface is
//! `r = Re ∫ (½(1 − w²)F, ½ i(1 + w²)F, wF) dw`, determined up to the
//! translation fixed by the basepoint. The tangent frame, normal and
//! curvature below are the closed forms of that representation; positions
//! come from adaptive quadrature along a deterministic path.

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::holomorphic::{log_decompose_along, ComplexPoint, DomainSpec, HolomorphicFn, Path};
use crate::quadrature::{integrate, QUAD_TOL};

pub type Vec3 = Vector3<f64>;

/// A minimal surface `𝒮` given by `F` on a domain.
#[derive(Clone, Debug)]
pub struct WeierstrassSurface {
    f: HolomorphicFn,
    domain: DomainSpec,
    basepoint: ComplexPoint,
    translation: Vec3,
}

/// Orthonormal frame and Weierstrass data at a parameter point, without
/// the (path-integrated) position.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentFrame {
    pub w: ComplexPoint,
    pub e_u: Vec3,
    pub e_v: Vec3,
    pub nu: Vec3,
    /// `|r_,u| = |r_,v|`.
    pub metric_factor: f64,
    pub phi: f64,
    /// Principal value of `arg F(w)`; only its class mod 2π enters the frame.
    pub chi: f64,
    /// `F′/F` at `w`.
    pub dlog_f: Complex64,
}

/// Position, frame and Weierstrass data at a parameter point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceFrame {
    pub w: ComplexPoint,
    pub r: Vec3,
    pub e_u: Vec3,
    pub e_v: Vec3,
    pub nu: Vec3,
    pub metric_factor: f64,
    pub phi: f64,
    /// `arg F(w)` continued from the basepoint along the default path.
    pub chi: f64,
}

/// Curvature tensor restricted to the tangent plane, in the `(e_u, e_v)` basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvatureState {
    pub shape_operator: Matrix2<f64>,
    pub mean: f64,
    pub gauss: f64,
}

impl TangentFrame {
    /// The frame at `w` from `F(w)` and `F′(w)/F(w)`.
    pub fn from_data(w: ComplexPoint, f: Complex64, dlog_f: Complex64) -> Self {
        let s = 1.0 + w.norm_sqr();
        let phase = f / f.norm();
        let i = Complex64::new(0.0, 1.0);
        // (½(1 − w²), ½ i(1 + w²), w) / (1 + |w|²), rotated by e^{iχ}.
        let q = [
            phase * 0.5 * (1.0 - w * w) / s,
            phase * 0.5 * i * (1.0 + w * w) / s,
            phase * w / s,
        ];
        let e_u = Vec3::new(2.0 * q[0].re, 2.0 * q[1].re, 2.0 * q[2].re);
        let e_v = Vec3::new(-2.0 * q[0].im, -2.0 * q[1].im, -2.0 * q[2].im);
        let nu = Vec3::new(2.0 * w.re, 2.0 * w.im, w.norm_sqr() - 1.0) / s;
        let phi = f.norm().ln();
        TangentFrame {
            w,
            e_u,
            e_v,
            nu,
            metric_factor: 0.5 * phi.exp() * s,
            phi,
            chi: f.arg(),
            dlog_f,
        }
    }

    pub fn chi_u(&self) -> f64 {
        self.dlog_f.im
    }

    pub fn chi_v(&self) -> f64 {
        self.dlog_f.re
    }

    pub fn phi_u(&self) -> f64 {
        self.dlog_f.re
    }

    pub fn phi_v(&self) -> f64 {
        -self.dlog_f.im
    }

    /// `4e^{−Φ}/(1 + |w|²)²`, the principal curvature magnitude.
    pub fn curvature_scale(&self) -> f64 {
        let s = 1.0 + self.w.norm_sqr();
        4.0 * (-self.phi).exp() / (s * s)
    }

    pub fn curvature(&self) -> CurvatureState {
        let k = self.curvature_scale();
        let (sin, cos) = self.chi.sin_cos();
        let shape_operator = Matrix2::new(k * cos, -k * sin, -k * sin, -k * cos);
        CurvatureState {
            shape_operator,
            mean: 0.5 * shape_operator.trace(),
            gauss: shape_operator.determinant(),
        }
    }

    /// Closed-form Gaussian curvature `−16e^{−2Φ}/(1 + |w|²)⁴`.
    pub fn gauss(&self) -> f64 {
        let s = 1.0 + self.w.norm_sqr();
        -16.0 * (-2.0 * self.phi).exp() / s.powi(4)
    }

    /// `∇_s ν` as an ambient 3×3 tensor.
    pub fn curvature_tensor(&self) -> Matrix3<f64> {
        let k = self.curvature_scale();
        let (sin, cos) = self.chi.sin_cos();
        let (eu, ev) = (self.e_u, self.e_v);
        k * (cos * (eu * eu.transpose() - ev * ev.transpose()) - sin * (eu * ev.transpose() + ev * eu.transpose()))
    }

    /// `ν_,u` and `ν_,v`.
    pub fn normal_derivatives(&self) -> (Vec3, Vec3) {
        let s = 1.0 + self.w.norm_sqr();
        let (sin, cos) = self.chi.sin_cos();
        let nu_u = 2.0 / s * (cos * self.e_u - sin * self.e_v);
        let nu_v = 2.0 / s * (-sin * self.e_u - cos * self.e_v);
        (nu_u, nu_v)
    }

    /// `r_,u` and `r_,v`.
    pub fn tangents(&self) -> (Vec3, Vec3) {
        (self.metric_factor * self.e_u, self.metric_factor * self.e_v)
    }

    /// Surface gradient of a vector field from its parameter derivatives:
    /// `f_,u ⊗ e_u/|r_,u| + f_,v ⊗ e_v/|r_,v|`.
    pub fn surface_gradient(&self, f_u: Vec3, f_v: Vec3) -> Matrix3<f64> {
        (f_u * self.e_u.transpose() + f_v * self.e_v.transpose()) / self.metric_factor
    }
}

/// The integrand `(½(1 − w²)F, ½ i(1 + w²)F, wF)` at a point with `F(w) = f`.
pub fn weierstrass_integrand(w: Complex64, f: Complex64) -> [Complex64; 3] {
    let i = Complex64::new(0.0, 1.0);
    [0.5 * (1.0 - w * w) * f, 0.5 * i * (1.0 + w * w) * f, w * f]
}

/// `Re ∫_path Ψ(w) dw` segment by segment.
pub fn integrate_path<G>(integrand: G, path: &Path) -> Result<Vec3>
where
    G: Fn(Complex64) -> Result<[Complex64; 3]>,
{
    let mut total = Vec3::zeros();
    for seg in &path.segments {
        if seg.is_degenerate() {
            continue;
        }
        let part = integrate(
            |t| {
                let dz = seg.tangent(t);
                let psi = integrand(seg.point(t))?;
                Ok([psi[0] * dz, psi[1] * dz, psi[2] * dz])
            },
            0.0,
            1.0,
            QUAD_TOL,
        )?;
        total += Vec3::new(part[0].re, part[1].re, part[2].re);
    }
    Ok(total)
}

impl WeierstrassSurface {
    /// Surface with the domain's default anchor as basepoint.
    pub fn new(f: HolomorphicFn, domain: DomainSpec) -> Result<Self> {
        let basepoint = domain.default_anchor();
        Self::with_basepoint(f, domain, basepoint)
    }

    pub fn with_basepoint(f: HolomorphicFn, domain: DomainSpec, basepoint: ComplexPoint) -> Result<Self> {
        let s = WeierstrassSurface { f, domain, basepoint, translation: Vec3::zeros() };
        s.data_at(basepoint)?;
        Ok(s)
    }

    pub fn translated(mut self, t: Vec3) -> Self {
        self.translation = t;
        self
    }

    /// Enneper's surface, `F = 1`.
    pub fn enneper(domain: DomainSpec) -> Result<Self> {
        Self::new(HolomorphicFn::real(1.0), domain)
    }

    /// Bour's surface of index `m`, `F = w^{m−2}` (Enneper is `m = 2`).
    pub fn bour(m: i32, domain: DomainSpec) -> Result<Self> {
        Self::new(HolomorphicFn::identity().powi(m - 2), domain)
    }

    pub fn f(&self) -> &HolomorphicFn {
        &self.f
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn basepoint(&self) -> ComplexPoint {
        self.basepoint
    }

    pub fn translation(&self) -> Vec3 {
        self.translation
    }

    /// `F(w)` and `F′(w)/F(w)`, with the domain and zero checks.
    pub fn data_at(&self, w: ComplexPoint) -> Result<(Complex64, Complex64)> {
        self.domain.check(w)?;
        self.data_unchecked(w)
    }

    pub(crate) fn data_unchecked(&self, w: ComplexPoint) -> Result<(Complex64, Complex64)> {
        let jet = self.f.jet_unchecked(w)?;
        if jet.value.norm() < self.f.exclusion_radius() {
            return Err(Error::ZeroCrossing(w));
        }
        Ok((jet.value, jet.log_derivative()))
    }

    pub fn tangent_frame_at(&self, w: ComplexPoint) -> Result<TangentFrame> {
        let (f, dlog) = self.data_at(w)?;
        Ok(TangentFrame::from_data(w, f, dlog))
    }

    /// Frame with position and continued `χ`.
    pub fn frame_at(&self, w: ComplexPoint) -> Result<SurfaceFrame> {
        let t = self.tangent_frame_at(w)?;
        let path = self.domain.default_path(self.basepoint, w)?;
        let chi = log_decompose_along(&self.f, &path)?.chi;
        let r = self.translation + integrate_path(|z| self.integrand_unchecked(z), &path)?;
        Ok(SurfaceFrame {
            w,
            r,
            e_u: t.e_u,
            e_v: t.e_v,
            nu: t.nu,
            metric_factor: t.metric_factor,
            phi: t.phi,
            chi,
        })
    }

    pub fn curvature_at(&self, w: ComplexPoint) -> Result<CurvatureState> {
        Ok(self.tangent_frame_at(w)?.curvature())
    }

    pub(crate) fn integrand_unchecked(&self, w: Complex64) -> Result<[Complex64; 3]> {
        Ok(weierstrass_integrand(w, self.f.eval_unchecked(w)?))
    }

    /// Position at `w`, integrated along the default path from the basepoint.
    pub fn position_at(&self, w: ComplexPoint) -> Result<Vec3> {
        let path = self.domain.default_path(self.basepoint, w)?;
        self.position_along(&path)
    }

    /// Position at the end of `path`, which must start at the basepoint and
    /// be admissible for the domain.
    pub fn position_along(&self, path: &Path) -> Result<Vec3> {
        if (path.start() - self.basepoint).norm() > 1e-12 {
            return Err(Error::InvalidParams("path must start at the basepoint".into()));
        }
        if !self.domain.admits(path) {
            return Err(Error::PathBlocked { from: path.start(), to: path.end() });
        }
        Ok(self.translation + self.displacement_along(path)?)
    }

    /// `Re ∫ Ψ dw` along any path (no translation, no admissibility check).
    pub fn displacement_along(&self, path: &Path) -> Result<Vec3> {
        integrate_path(|z| self.integrand_unchecked(z), path)
    }
}
