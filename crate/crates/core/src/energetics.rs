//! Stretching, drilling and bending energy densities.
//!
//! Three independent routes are provided: the closed forms valid between
//! minimal surfaces, the connector route `W_d = 4|V c* − R c|²`,
//! `W_b = 4(|V ∇*ν*|² − |∇ν|²)²`, and a finite-difference oracle that
//! builds `ℋ = Rᵀ∇_s R` from the rotation field and contracts it literally.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::connectors::{frame_connectors, starred_from_state, FrameTag, StarredDerivatives};
use crate::deformation::{projector, DeformationPair, DeformationState};
use crate::error::{Error, Result};
use crate::holomorphic::ComplexPoint;

/// Probes with `|w|` below this are flagged as near-singular.
pub const NEAR_SINGULAR_RADIUS: f64 = 1e-3;

/// Relative step of the third-rank oracle.
pub const ORACLE_STEP: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Moduli {
    pub mu_s: f64,
    pub mu_d: f64,
    pub mu_b: f64,
}

impl Moduli {
    pub fn new(mu_s: f64, mu_d: f64, mu_b: f64) -> Result<Self> {
        if [mu_s, mu_d, mu_b].iter().any(|m| !(m.is_finite() && *m >= 0.0)) {
            return Err(Error::InvalidParams(format!("moduli ({mu_s}, {mu_d}, {mu_b}) must be nonnegative")));
        }
        Ok(Moduli { mu_s, mu_d, mu_b })
    }

    pub fn unit() -> Self {
        Moduli { mu_s: 1.0, mu_d: 1.0, mu_b: 1.0 }
    }

    /// `½μ_s W_s + ½μ_d W_d + ¼μ_b W_b`.
    pub fn weigh(&self, w_s: f64, w_d: f64, w_b: f64) -> f64 {
        0.5 * self.mu_s * w_s + 0.5 * self.mu_d * w_d + 0.25 * self.mu_b * w_b
    }
}

impl Default for Moduli {
    fn default() -> Self {
        Self::unit()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    ClosedForm,
    Connector,
    ThirdRankOracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnergyDensities {
    pub w_s: f64,
    pub w_d: f64,
    pub w_b: f64,
    pub w_total: f64,
    pub route: Route,
    /// `|w| < 1e-3`: densities such as `16/((1+|w|²)²|w|²)` diverge here.
    pub near_singular: bool,
}

impl EnergyDensities {
    fn assemble(w: ComplexPoint, w_s: f64, w_d: f64, w_b: f64, moduli: &Moduli, route: Route) -> Self {
        EnergyDensities {
            w_s,
            w_d,
            w_b,
            w_total: moduli.weigh(w_s, w_d, w_b),
            route,
            near_singular: w.norm() < NEAR_SINGULAR_RADIUS,
        }
    }
}

/// `2(λ − 1)²` with `λ` the stretch ratio.
pub fn stretching_from_state(s: &DeformationState) -> f64 {
    2.0 * (s.stretch_ratio - 1.0).powi(2)
}

/// `|U − P(ν)|²` and `|V − P(ν*)|²` (Frobenius).
pub fn stretching_from_tensors(s: &DeformationState) -> (f64, f64) {
    (
        (s.u - projector(&s.frame.nu)).norm_squared(),
        (s.v - projector(&s.nu_star)).norm_squared(),
    )
}

/// The two drilling defects `α_,u − G_,v` and `α_,v + G_,u` with
/// `α = χ* − χ` and `G = ln((1 + |h|²)|h′|/(1 + |w|²))`.
pub fn drilling_defects(s: &DeformationState) -> (f64, f64) {
    let sd = StarredDerivatives::of(s);
    let w = s.w;
    let sw = 1.0 + w.norm_sqr();
    let (alpha_u, alpha_v) = (sd.chi_u - s.frame.chi_u(), sd.chi_v - s.frame.chi_v());
    let (g_u, g_v) = (sd.g_u - 2.0 * w.re / sw, sd.g_v - 2.0 * w.im / sw);
    (alpha_u - g_v, alpha_v + g_u)
}

pub fn drilling_closed_form(s: &DeformationState) -> f64 {
    let (a, b) = drilling_defects(s);
    let sw = 1.0 + s.w.norm_sqr();
    -s.frame.gauss() * sw * sw * (a * a + b * b)
}

/// `4|V c* − R c|²`.
pub fn drilling_connector(s: &DeformationState) -> f64 {
    let c = frame_connectors(&s.frame, FrameTag::Source).c;
    let c_star = starred_from_state(s).c;
    4.0 * (s.stretch_ratio * c_star - s.rotation * c).norm_squared()
}

/// `|h′|(1 + |w|²)/(1 + |h|²) − 1`, zero exactly for bending-neutral maps.
pub fn bending_defect(s: &DeformationState) -> f64 {
    s.h.d1.norm() * (1.0 + s.w.norm_sqr()) / (1.0 + s.w_star.norm_sqr()) - 1.0
}

pub fn bending_closed_form(s: &DeformationState) -> f64 {
    let k = s.frame.gauss();
    let t = s.h.d1.norm() * (1.0 + s.w.norm_sqr()) / (1.0 + s.w_star.norm_sqr());
    16.0 * k * k * (t * t - 1.0).powi(2)
}

/// `4(λ²(|d*_u|² + |d*_v|²) − (|d_u|² + |d_v|²))²`.
pub fn bending_connector(s: &DeformationState) -> f64 {
    let d = frame_connectors(&s.frame, FrameTag::Source).curvature_norm_sqr();
    let d_star = starred_from_state(s).curvature_norm_sqr();
    4.0 * (s.stretch_ratio.powi(2) * d_star - d).powi(2)
}

/// `16(λ²K* − K)²`.
pub fn bending_curvature_route(s: &DeformationState) -> f64 {
    16.0 * (s.stretch_ratio.powi(2) * s.target_frame.gauss() - s.frame.gauss()).powi(2)
}

pub fn stretching_density(d: &DeformationPair, w: ComplexPoint) -> Result<f64> {
    Ok(stretching_from_state(&d.state_at(w)?))
}

pub fn drilling_density(d: &DeformationPair, w: ComplexPoint, route: Route) -> Result<f64> {
    match route {
        Route::ClosedForm => Ok(drilling_closed_form(&d.state_at(w)?)),
        Route::Connector => Ok(drilling_connector(&d.state_at(w)?)),
        Route::ThirdRankOracle => Ok(third_rank_oracle(d, w, default_oracle_step(w))?.w_d),
    }
}

pub fn bending_density(d: &DeformationPair, w: ComplexPoint, route: Route) -> Result<f64> {
    match route {
        Route::ClosedForm => Ok(bending_closed_form(&d.state_at(w)?)),
        Route::Connector => Ok(bending_connector(&d.state_at(w)?)),
        Route::ThirdRankOracle => Ok(third_rank_oracle(d, w, default_oracle_step(w))?.w_b),
    }
}

/// All three densities by the closed-form route, with the weighted total.
pub fn total_density(d: &DeformationPair, w: ComplexPoint, moduli: &Moduli) -> Result<EnergyDensities> {
    densities(d, w, moduli, Route::ClosedForm)
}

pub fn densities(d: &DeformationPair, w: ComplexPoint, moduli: &Moduli, route: Route) -> Result<EnergyDensities> {
    if route == Route::ThirdRankOracle {
        let o = third_rank_oracle(d, w, default_oracle_step(w))?;
        return Ok(EnergyDensities::assemble(w, o.w_s, o.w_d, o.w_b, moduli, route));
    }
    let s = d.state_at(w)?;
    Ok(densities_from_state(&s, moduli, route))
}

/// Closed-form or connector densities of an already computed state.
pub fn densities_from_state(s: &DeformationState, moduli: &Moduli, route: Route) -> EnergyDensities {
    let w_s = stretching_from_state(s);
    let (w_d, w_b) = match route {
        Route::Connector => (drilling_connector(s), bending_connector(s)),
        _ => (drilling_closed_form(s), bending_closed_form(s)),
    };
    EnergyDensities::assemble(s.w, w_s, w_d, w_b, moduli, if route == Route::Connector { route } else { Route::ClosedForm })
}

pub fn default_oracle_step(w: ComplexPoint) -> f64 {
    ORACLE_STEP * w.norm().max(1.0)
}

/// `W(ν)_ij = ε_imj ν_m`.
pub fn skew(nu: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -nu.z, nu.y, nu.z, 0.0, -nu.x, -nu.y, nu.x, 0.0)
}

/// The third-rank tensor `ℋ = Rᵀ ∇_s R`, stored as the two slices
/// `A_u = Rᵀ R_,u/|r_,u|` and `A_v = Rᵀ R_,v/|r_,v|` so that
/// `H_ijk = (A_u)_ij (e_u)_k + (A_v)_ij (e_v)_k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationGradient {
    pub a_u: Matrix3<f64>,
    pub a_v: Matrix3<f64>,
    pub e_u: Vector3<f64>,
    pub e_v: Vector3<f64>,
}

impl RotationGradient {
    /// Component `H_ijk`.
    pub fn component(&self, i: usize, j: usize, k: usize) -> f64 {
        self.a_u[(i, j)] * self.e_u[k] + self.a_v[(i, j)] * self.e_v[k]
    }

    /// `A ∘ ℋ = A_ij H_ijk e_k`.
    pub fn contract_left(&self, a: &Matrix3<f64>) -> Vector3<f64> {
        Vector3::from_fn(|k, _| {
            let mut acc = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    acc += a[(i, j)] * self.component(i, j, k);
                }
            }
            acc
        })
    }

    /// `ℋ ∘ A = H_ijk A_jk e_i`.
    pub fn contract_right(&self, a: &Matrix3<f64>) -> Vector3<f64> {
        Vector3::from_fn(|i, _| {
            let mut acc = 0.0;
            for j in 0..3 {
                for k in 0..3 {
                    acc += self.component(i, j, k) * a[(j, k)];
                }
            }
            acc
        })
    }

    /// `|ℋ|² = H_ijk H_ijk`.
    pub fn norm_squared(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    acc += self.component(i, j, k).powi(2);
                }
            }
        }
        acc
    }
}

/// `ℋ` at `w` from central differences of the rotation field.
pub fn rotation_gradient(d: &DeformationPair, w: ComplexPoint, step: f64) -> Result<(DeformationState, RotationGradient)> {
    if !(step > 0.0) {
        return Err(Error::InvalidParams(format!("oracle step {step}")));
    }
    let s = d.state_at(w)?;
    let i = Complex64::new(0.0, 1.0);
    let r_at = |z: ComplexPoint| d.state_at(z).map(|st| st.rotation);
    let r_u = (r_at(w + step)? - r_at(w - step)?) / (2.0 * step);
    let r_v = (r_at(w + i * step)? - r_at(w - i * step)?) / (2.0 * step);
    let m = s.frame.metric_factor;
    let rt = s.rotation.transpose();
    let g = RotationGradient { a_u: rt * r_u / m, a_v: rt * r_v / m, e_u: s.frame.e_u, e_v: s.frame.e_v };
    Ok((s, g))
}

/// `W_d = |W(ν) ∘ ℋ|²` and `W_b = (|ℋ|² − ½W_d − 4ν·(ℋ ∘ ∇_s ν))²`, with
/// `ℋ` from central differences of `R` (step `step`).
pub fn third_rank_oracle(d: &DeformationPair, w: ComplexPoint, step: f64) -> Result<EnergyDensities> {
    let (s, g) = rotation_gradient(d, w, step)?;
    let nu = s.frame.nu;
    let w_d = g.contract_left(&skew(&nu)).norm_squared();
    let grad_nu = s.frame.curvature_tensor();
    let w_b = (g.norm_squared() - 0.5 * w_d - 4.0 * nu.dot(&g.contract_right(&grad_nu))).powi(2);
    Ok(EnergyDensities::assemble(w, stretching_from_state(&s), w_d, w_b, &Moduli::unit(), Route::ThirdRankOracle))
}

/// Five-point Laplacian of `α = χ* − χ`, unwrapped locally around `w`.
pub fn alpha_laplacian(d: &DeformationPair, w: ComplexPoint, step: f64) -> Result<f64> {
    let ratio = |z: ComplexPoint| -> Result<Complex64> {
        let s = d.state_at(z)?;
        let f = Complex64::from_polar(1.0, s.target_frame.chi - s.frame.chi);
        Ok(f)
    };
    let centre = ratio(w)?;
    let i = Complex64::new(0.0, 1.0);
    let mut sum = 0.0;
    for z in [w + step, w - step, w + i * step, w - i * step] {
        sum += (ratio(z)? / centre).arg();
    }
    Ok(sum / (step * step))
}
