//! Spin and curvature connectors of the moving frames.
//!
//! For an orthonormal frame `(e_u, e_v, ν)` the connectors `(c, d_u, d_v)`
//! are the tangent fields with
//!
//! ```text
//! ∇_s e_u =  e_v ⊗ c + ν ⊗ d_u
//! ∇_s e_v = −e_u ⊗ c + ν ⊗ d_v
//! ∇_s ν   = −e_u ⊗ d_u − e_v ⊗ d_v
//! ```
//!
//! Closed forms are given for the source frame, the native frame of the
//! target and the target frame along the source coordinates. Finite
//! differences of the frames serve as an oracle.

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::Serialize;

use crate::deformation::{DeformationPair, DeformationState};
use crate::error::Result;
use crate::holomorphic::ComplexPoint;
use crate::weierstrass::{TangentFrame, Vec3, WeierstrassSurface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameTag {
    Source,
    StarredUv,
    StarredNative,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConnectorSet {
    pub c: Vec3,
    pub d_u: Vec3,
    pub d_v: Vec3,
    pub frame_tag: FrameTag,
}

/// `(e_u, e_v, ν)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrthonormalFrame {
    pub e_u: Vec3,
    pub e_v: Vec3,
    pub nu: Vec3,
}

impl From<&TangentFrame> for OrthonormalFrame {
    fn from(f: &TangentFrame) -> Self {
        OrthonormalFrame { e_u: f.e_u, e_v: f.e_v, nu: f.nu }
    }
}

impl OrthonormalFrame {
    /// `(e*_u, e*_v, ν*)` of a deformation state.
    pub fn starred(s: &DeformationState) -> Self {
        OrthonormalFrame { e_u: s.star_frame_uv.0, e_v: s.star_frame_uv.1, nu: s.nu_star }
    }
}

/// `∇_s e_u`, `∇_s e_v`, `∇_s ν`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameGradients {
    pub e_u: Matrix3<f64>,
    pub e_v: Matrix3<f64>,
    pub nu: Matrix3<f64>,
}

impl ConnectorSet {
    /// `|d_u|² + |d_v|² = |∇_s ν|²`.
    pub fn curvature_norm_sqr(&self) -> f64 {
        self.d_u.norm_squared() + self.d_v.norm_squared()
    }

    /// `max(|c·ν|, |d_u·ν|, |d_v·ν|)`.
    pub fn normal_leak(&self, nu: &Vec3) -> f64 {
        self.c.dot(nu).abs().max(self.d_u.dot(nu).abs()).max(self.d_v.dot(nu).abs())
    }

    /// `|d_u·e_v − d_v·e_u|`, zero for a symmetric curvature tensor.
    pub fn symmetry_defect(&self, frame: &OrthonormalFrame) -> f64 {
        (self.d_u.dot(&frame.e_v) - self.d_v.dot(&frame.e_u)).abs()
    }

    pub fn max_abs_diff(&self, other: &ConnectorSet) -> f64 {
        (self.c - other.c).amax().max((self.d_u - other.d_u).amax()).max((self.d_v - other.d_v).amax())
    }
}

/// Connectors of the native frame of a Weierstrass surface.
pub fn frame_connectors(f: &TangentFrame, frame_tag: FrameTag) -> ConnectorSet {
    let s = 1.0 + f.w.norm_sqr();
    let k = f.curvature_scale();
    let (sin, cos) = f.chi.sin_cos();
    let (u, v) = (f.w.re, f.w.im);
    ConnectorSet {
        c: ((f.chi_u() - 2.0 * v / s) * f.e_u + (f.chi_v() + 2.0 * u / s) * f.e_v) / f.metric_factor,
        d_u: k * (-cos * f.e_u + sin * f.e_v),
        d_v: k * (sin * f.e_u + cos * f.e_v),
        frame_tag,
    }
}

pub fn source_connectors(s: &WeierstrassSurface, w: ComplexPoint) -> Result<ConnectorSet> {
    Ok(frame_connectors(&s.tangent_frame_at(w)?, FrameTag::Source))
}

/// Derivatives along `(u, v)` of the target data seen from the source.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StarredDerivatives {
    pub chi_u: f64,
    pub chi_v: f64,
    /// `(ln((1 + |h|²)|h′|))_,u` and `_,v`.
    pub g_u: f64,
    pub g_v: f64,
    /// `(ln |h′|)_,u` and `_,v`.
    pub log_hp_u: f64,
    pub log_hp_v: f64,
}

impl StarredDerivatives {
    pub fn of(s: &DeformationState) -> Self {
        let (h, hp, hpp) = (s.h.value, s.h.d1, s.h.d2);
        let l = s.target_frame.dlog_f * hp;
        let hbar_hp = h.conj() * hp;
        let sh = 1.0 + h.norm_sqr();
        let q = hpp / hp;
        StarredDerivatives {
            chi_u: l.im,
            chi_v: l.re,
            g_u: 2.0 * hbar_hp.re / sh + q.re,
            g_v: -2.0 * hbar_hp.im / sh - q.im,
            log_hp_u: q.re,
            log_hp_v: -q.im,
        }
    }
}

/// Connectors of `(e*_u, e*_v, ν*)` from a deformation state.
pub fn starred_from_state(s: &DeformationState) -> ConnectorSet {
    let m = s.star_metric_factor();
    let dv = StarredDerivatives::of(s);
    let (eu, ev) = s.star_frame_uv;
    let (p, q) = (s.h.d1.re, s.h.d1.im);
    let (sin, cos) = s.target_frame.chi.sin_cos();
    let k = s.target_frame.phi.exp() / (m * m);
    let (a, b) = (q * q - p * p, 2.0 * p * q);
    ConnectorSet {
        c: ((dv.chi_u - dv.g_v) * eu + (dv.chi_v + dv.g_u) * ev) / m,
        d_u: k * ((a * cos + b * sin) * eu + (b * cos - a * sin) * ev),
        d_v: k * ((b * cos - a * sin) * eu + (-a * cos - b * sin) * ev),
        frame_tag: FrameTag::StarredUv,
    }
}

pub fn starred_connectors(d: &DeformationPair, w: ComplexPoint) -> Result<ConnectorSet> {
    Ok(starred_from_state(&d.state_at(w)?))
}

/// Connectors of the native frame `(e*_{u*}, e*_{v*}, ν*)` at `h(w)`.
pub fn starred_native_connectors(d: &DeformationPair, w: ComplexPoint) -> Result<ConnectorSet> {
    Ok(frame_connectors(&d.state_at(w)?.target_frame, FrameTag::StarredNative))
}

/// `c* − c*_*`: the surface gradient on `𝒮*` of `arg h′`,
/// `(−(ln|h′|)_,v e*_u + (ln|h′|)_,u e*_v)/|r*_,u|`.
pub fn spin_correction(s: &DeformationState) -> Vec3 {
    let dv = StarredDerivatives::of(s);
    let (eu, ev) = s.star_frame_uv;
    (-dv.log_hp_v * eu + dv.log_hp_u * ev) / s.star_metric_factor()
}

/// Frame gradients assembled from the connector equations.
pub fn reconstruct_frame_gradients(cs: &ConnectorSet, frame: &OrthonormalFrame) -> FrameGradients {
    let o = |a: &Vec3, b: &Vec3| a * b.transpose();
    FrameGradients {
        e_u: o(&frame.e_v, &cs.c) + o(&frame.nu, &cs.d_u),
        e_v: -o(&frame.e_u, &cs.c) + o(&frame.nu, &cs.d_v),
        nu: -o(&frame.e_u, &cs.d_u) - o(&frame.e_v, &cs.d_v),
    }
}

/// Reads the connectors back off frame gradients:
/// `c = (∇e_u)ᵀe_v`, `d_u = (∇e_u)ᵀν`, `d_v = (∇e_v)ᵀν`.
pub fn connectors_from_gradients(g: &FrameGradients, frame: &OrthonormalFrame, frame_tag: FrameTag) -> ConnectorSet {
    ConnectorSet {
        c: g.e_u.transpose() * frame.e_v,
        d_u: g.e_u.transpose() * frame.nu,
        d_v: g.e_v.transpose() * frame.nu,
        frame_tag,
    }
}

fn fd_gradients<F>(w: ComplexPoint, step: f64, frame_at: F, e_u: Vec3, e_v: Vec3, metric: f64) -> Result<FrameGradients>
where
    F: Fn(ComplexPoint) -> Result<OrthonormalFrame>,
{
    let i = Complex64::new(0.0, 1.0);
    let (up, um) = (frame_at(w + step)?, frame_at(w - step)?);
    let (vp, vm) = (frame_at(w + i * step)?, frame_at(w - i * step)?);
    let grad = |fu: Vec3, fv: Vec3| (fu * e_u.transpose() + fv * e_v.transpose()) / metric;
    let d = |a: Vec3, b: Vec3| (a - b) / (2.0 * step);
    Ok(FrameGradients {
        e_u: grad(d(up.e_u, um.e_u), d(vp.e_u, vm.e_u)),
        e_v: grad(d(up.e_v, um.e_v), d(vp.e_v, vm.e_v)),
        nu: grad(d(up.nu, um.nu), d(vp.nu, vm.nu)),
    })
}

/// Central-difference gradients of the source frame.
pub fn fd_source_gradients(s: &WeierstrassSurface, w: ComplexPoint, step: f64) -> Result<FrameGradients> {
    let f = s.tangent_frame_at(w)?;
    fd_gradients(w, step, |z| Ok(OrthonormalFrame::from(&s.tangent_frame_at(z)?)), f.e_u, f.e_v, f.metric_factor)
}

/// Central-difference gradients, on `𝒮*`, of the starred frame along `(u, v)`.
pub fn fd_starred_gradients(d: &DeformationPair, w: ComplexPoint, step: f64) -> Result<FrameGradients> {
    let s = d.state_at(w)?;
    let (eu, ev) = s.star_frame_uv;
    fd_gradients(w, step, |z| Ok(OrthonormalFrame::starred(&d.state_at(z)?)), eu, ev, s.star_metric_factor())
}
