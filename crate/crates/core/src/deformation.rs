//! Conformal deformations `y: 𝒮 → 𝒮*` induced by `w* = h(w)`.
//!
//! Both surfaces are parametrized by the source coordinate `w`; the
//! starred frame along `(u, v)` is the native frame of `𝒮*` at `w*` rotated
//! by `arg h′`. The deformation gradient, its rotation and both stretch
//! tensors are assembled dyadically from the two frames.

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::holomorphic::{log_decompose_along, ComplexPoint, HolomorphicFn, Jet, LogDecomposition};
use crate::weierstrass::{integrate_path, weierstrass_integrand, TangentFrame, Vec3, WeierstrassSurface};

/// Side of the containment lattice checked at construction.
pub const CONTAINMENT_LATTICE: usize = 64;

/// Smallest admissible `|h′|` on the containment lattice.
pub const MIN_CONFORMAL_FACTOR: f64 = 1e-12;

/// `(𝒮, 𝒮*, h)`.
#[derive(Clone, Debug)]
pub struct DeformationPair {
    source: WeierstrassSurface,
    target: WeierstrassSurface,
    h: HolomorphicFn,
    /// `F*(h(w)) / F(w)`, whose argument is `α = χ* − χ`.
    phase_ratio: HolomorphicFn,
    /// `F*(h(w))`, the target data pulled back to the source parameter.
    pulled_back: HolomorphicFn,
}

/// Kinematics of the deformation at a source point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeformationState {
    pub w: ComplexPoint,
    pub w_star: ComplexPoint,
    /// Source frame at `w`.
    pub frame: TangentFrame,
    /// Native frame of `𝒮*` at `w*` (`e*_{u*}`, `e*_{v*}`, `ν*`, `Φ*`, `χ*`).
    pub target_frame: TangentFrame,
    /// `(e*_u, e*_v)`, the starred frame along the source coordinates.
    pub star_frame_uv: (Vec3, Vec3),
    /// `(e*_{u*}, e*_{v*})`.
    pub star_frame_native: (Vec3, Vec3),
    pub nu_star: Vec3,
    /// `h(w)`, `h′(w)`, `h″(w)`.
    pub h: Jet,
    pub grad_y: Matrix3<f64>,
    pub rotation: Matrix3<f64>,
    pub u: Matrix3<f64>,
    pub v: Matrix3<f64>,
    /// `|r*_,u| / |r_,u|`.
    pub stretch_ratio: f64,
}

impl DeformationState {
    /// `p + iq = h′`.
    pub fn h_prime(&self) -> Complex64 {
        self.h.d1
    }

    /// `|r*_,u| = |r*_{,u*}|·|h′|`.
    pub fn star_metric_factor(&self) -> f64 {
        self.target_frame.metric_factor * self.h.d1.norm()
    }
}

fn outer(a: &Vec3, b: &Vec3) -> Matrix3<f64> {
    a * b.transpose()
}

/// `I − n ⊗ n`.
pub fn projector(n: &Vec3) -> Matrix3<f64> {
    Matrix3::identity() - outer(n, n)
}

/// Rotation factor of the polar decomposition of `∇y + ν* ⊗ ν`, by SVD.
/// Independent of the dyadic assembly and used only as an oracle.
pub fn polar_rotation(grad_y: &Matrix3<f64>, nu: &Vec3, nu_star: &Vec3) -> Matrix3<f64> {
    let m = grad_y + outer(nu_star, nu);
    let svd = m.svd(true, true);
    let (u, vt) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
    let mut r = u * vt;
    if r.determinant() < 0.0 {
        // Flip the weakest singular direction.
        let k = svd.singular_values.imin();
        let mut u2 = u;
        u2.column_mut(k).neg_mut();
        r = u2 * vt;
    }
    r
}

impl DeformationPair {
    /// Builds the pair and checks `h(Ω) ⊂ Ω*` and `|h′| ≥ 1e-12` on a
    /// 64×64 lattice. The target is re-anchored at `h(basepoint)` so both
    /// surfaces share one branch anchor.
    pub fn new(source: WeierstrassSurface, target: WeierstrassSurface, h: HolomorphicFn) -> Result<Self> {
        Self::with_lattice(source, target, h, CONTAINMENT_LATTICE)
    }

    pub fn with_lattice(
        source: WeierstrassSurface,
        target: WeierstrassSurface,
        h: HolomorphicFn,
        lattice: usize,
    ) -> Result<Self> {
        for w in source.domain().lattice_points(lattice) {
            let j = h.jet_unchecked(w)?;
            target.domain().check(j.value).map_err(|_| Error::DomainViolation(w))?;
            if j.d1.norm() < MIN_CONFORMAL_FACTOR {
                return Err(Error::InvalidParams(format!("|h'| vanishes near w = {w}")));
            }
        }
        let anchor = source.basepoint();
        let anchor_star = h.eval_unchecked(anchor)?;
        let target = WeierstrassSurface::with_basepoint(target.f().clone(), target.domain().clone(), anchor_star)?
            .translated(target.translation());
        let pulled_back = target.f().compose(&h);
        let phase_ratio = pulled_back.div(source.f());
        Ok(DeformationPair { source, target, h, phase_ratio, pulled_back })
    }

    pub fn source(&self) -> &WeierstrassSurface {
        &self.source
    }

    pub fn target(&self) -> &WeierstrassSurface {
        &self.target
    }

    pub fn h(&self) -> &HolomorphicFn {
        &self.h
    }

    /// Shared branch anchor (the source basepoint).
    pub fn anchor(&self) -> ComplexPoint {
        self.source.basepoint()
    }

    pub fn pushforward(&self, w: ComplexPoint) -> Result<ComplexPoint> {
        self.source.domain().check(w)?;
        let w_star = self.h.eval_unchecked(w)?;
        self.target.domain().check(w_star).map_err(|_| Error::DomainViolation(w_star))?;
        Ok(w_star)
    }

    pub fn state_at(&self, w: ComplexPoint) -> Result<DeformationState> {
        self.source.domain().check(w)?;
        let frame = self.source.tangent_frame_at(w)?;
        let hj = self.h.jet_unchecked(w)?;
        let w_star = hj.value;
        self.target.domain().check(w_star).map_err(|_| Error::DomainViolation(w_star))?;
        let (f_star, dlog_star) = self.target.data_unchecked(w_star)?;
        let target_frame = TangentFrame::from_data(w_star, f_star, dlog_star);
        Ok(assemble(frame, target_frame, hj))
    }

    /// `K*(h(w)) / K(w) = e^{−2(Φ*−Φ)} (1+|w|²)⁴ / (1+|h|²)⁴`.
    pub fn curvature_ratio(&self, w: ComplexPoint) -> Result<f64> {
        let s = self.state_at(w)?;
        let ratio_w = (1.0 + w.norm_sqr()) / (1.0 + s.w_star.norm_sqr());
        Ok((-2.0 * (s.target_frame.phi - s.frame.phi)).exp() * ratio_w.powi(4))
    }

    /// `n` quasi-random source points kept `margin` away from the boundary
    /// and every puncture.
    pub fn probe_points(&self, n: usize, margin: f64) -> Vec<ComplexPoint> {
        self.source.domain().quasi_random_points(n, margin)
    }

    /// `α = χ* − χ` (and `Φ* − Φ`) continued from the anchor along the
    /// source's default path.
    pub fn alpha_at(&self, w: ComplexPoint) -> Result<LogDecomposition> {
        let path = self.source.domain().default_path(self.anchor(), w)?;
        log_decompose_along(&self.phase_ratio, &path)
    }

    /// `χ*` at `h(w)`, continued as `arg F*(h(·))` along the source path.
    pub fn chi_star_at(&self, w: ComplexPoint) -> Result<f64> {
        let path = self.source.domain().default_path(self.anchor(), w)?;
        Ok(log_decompose_along(&self.pulled_back, &path)?.chi)
    }

    /// Deformed position `y(w)`: the target translation plus
    /// `Re ∫ Ψ*(h(z)) h′(z) dz` along the source path from the anchor.
    pub fn deformed_position_at(&self, w: ComplexPoint) -> Result<Vec3> {
        let path = self.source.domain().default_path(self.anchor(), w)?;
        Ok(self.target.translation() + self.deformed_displacement_along(&path)?)
    }

    pub fn deformed_displacement_along(&self, path: &crate::holomorphic::Path) -> Result<Vec3> {
        integrate_path(|z| self.pulled_back_integrand(z), path)
    }

    fn pulled_back_integrand(&self, z: Complex64) -> Result<[Complex64; 3]> {
        let hj = self.h.jet_unchecked(z)?;
        let psi = weierstrass_integrand(hj.value, self.target.f().eval_unchecked(hj.value)?);
        Ok(psi.map(|c| c * hj.d1))
    }
}

fn assemble(frame: TangentFrame, target_frame: TangentFrame, hj: Jet) -> DeformationState {
    let (p, q) = (hj.d1.re, hj.d1.im);
    let m = hj.d1.norm();
    let (eus, evs) = (target_frame.e_u, target_frame.e_v);
    let e_u_star = (p * eus + q * evs) / m;
    let e_v_star = (-q * eus + p * evs) / m;
    let nu_star = target_frame.nu;
    let ratio = (target_frame.phi - frame.phi).exp() * m * (1.0 + hj.value.norm_sqr()) / (1.0 + frame.w.norm_sqr());
    let tangential = outer(&e_u_star, &frame.e_u) + outer(&e_v_star, &frame.e_v);
    DeformationState {
        w: frame.w,
        w_star: hj.value,
        frame,
        target_frame,
        star_frame_uv: (e_u_star, e_v_star),
        star_frame_native: (eus, evs),
        nu_star,
        h: hj,
        grad_y: ratio * tangential,
        rotation: tangential + outer(&nu_star, &frame.nu),
        u: ratio * projector(&frame.nu),
        v: ratio * projector(&nu_star),
        stretch_ratio: ratio,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holomorphic::{DomainSpec, Mobius};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bour(m: i32) -> WeierstrassSurface {
        WeierstrassSurface::bour(m, DomainSpec::standard_annulus()).unwrap()
    }

    fn enneper_to_bour3() -> DeformationPair {
        DeformationPair::new(bour(2), bour(3), HolomorphicFn::identity()).unwrap()
    }

    fn goursat2() -> DeformationPair {
        let e = 1.0f64.exp();
        let target = WeierstrassSurface::new(
            HolomorphicFn::parse("recip(scale(2,id))").unwrap(),
            DomainSpec::annulus(2.0 / e, 2.0 * e).unwrap(),
        )
        .unwrap();
        DeformationPair::new(bour(1), target, HolomorphicFn::parse("scale(2,id)").unwrap()).unwrap()
    }

    #[test]
    fn pushforward_examples() {
        let id = DeformationPair::new(bour(1), bour(1), HolomorphicFn::identity()).unwrap();
        assert_eq!(id.pushforward(c(1.0, 1.0)).unwrap(), c(1.0, 1.0));
        assert_eq!(goursat2().pushforward(c(1.0, 0.0)).unwrap(), c(2.0, 0.0));

        let m = Mobius::special(c(0.0, 1.0), c(-1.0, 0.0)).unwrap();
        let h = HolomorphicFn::mobius(m);
        let src = WeierstrassSurface::bour(1, DomainSpec::rectangle((-0.9, -0.3), (0.3, 0.9)).unwrap()).unwrap();
        let tgt = WeierstrassSurface::new(HolomorphicFn::real(1.0), DomainSpec::plane()).unwrap();
        let pair = DeformationPair::new(src, tgt, h.clone()).unwrap();
        let w = c(-0.5, 0.5);
        assert_eq!(pair.pushforward(w).unwrap(), h.eval(w).unwrap());
        assert!((h.eval(c(0.0, 0.0)).unwrap() - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn containment_is_checked() {
        let small = WeierstrassSurface::bour(1, DomainSpec::annulus(0.5, 2.0).unwrap()).unwrap();
        let r = DeformationPair::new(bour(1), small, HolomorphicFn::identity());
        assert!(matches!(r, Err(Error::DomainViolation(_))));
    }

    #[test]
    fn stretch_ratio_examples() {
        let id = DeformationPair::new(bour(1), bour(1), HolomorphicFn::identity()).unwrap();
        let s = id.state_at(c(0.6, 1.1)).unwrap();
        assert!((s.stretch_ratio - 1.0).abs() < 1e-15);
        assert!((s.u - projector(&s.frame.nu)).amax() < 1e-15);
        assert!((s.rotation - Matrix3::identity()).amax() < 1e-15);

        let s = enneper_to_bour3().state_at(c(0.0, 2.0)).unwrap();
        assert!((s.stretch_ratio - 2.0).abs() < 1e-14);

        let s = goursat2().state_at(c(1.0, 0.0)).unwrap();
        assert!((s.stretch_ratio - 1.25).abs() < 1e-14);
    }

    #[test]
    fn curvature_ratio_matches_both_surfaces() {
        let id = DeformationPair::new(bour(1), bour(1), HolomorphicFn::identity()).unwrap();
        assert!((id.curvature_ratio(c(0.4, 0.9)).unwrap() - 1.0).abs() < 1e-14);
        let e2b = enneper_to_bour3();
        assert!((e2b.curvature_ratio(Complex64::from_polar(1.0, 0.7)).unwrap() - 1.0).abs() < 1e-14);
        let g = goursat2();
        let w = c(1.0, 0.0);
        let k = g.source().curvature_at(w).unwrap().gauss;
        let k_star = g.target().curvature_at(c(2.0, 0.0)).unwrap().gauss;
        assert!((g.curvature_ratio(w).unwrap() - k_star / k).abs() < 1e-12);
    }

    #[test]
    fn polar_decomposition_invariants() {
        for pair in [enneper_to_bour3(), goursat2()] {
            for w in pair.probe_points(20, 0.01) {
                let s = pair.state_at(w).unwrap();
                let r = s.rotation;
                assert!((r.transpose() * r - Matrix3::identity()).amax() < 1e-12);
                assert!((r.determinant() - 1.0).abs() < 1e-12);
                assert!((s.grad_y - r * s.u).amax() < 1e-12 * s.stretch_ratio.max(1.0));
                assert!((s.grad_y - s.v * r).amax() < 1e-12 * s.stretch_ratio.max(1.0));
                assert!((s.grad_y * s.frame.nu).amax() < 1e-12);
                let (eu, ev) = s.star_frame_uv;
                assert!((eu.cross(&ev) - s.nu_star).amax() < 1e-12);
                let oracle = polar_rotation(&s.grad_y, &s.frame.nu, &s.nu_star);
                assert!((oracle - r).amax() < 1e-10);
            }
        }
    }

    #[test]
    fn frame_change_inverts() {
        let s = goursat2().state_at(c(0.3, -1.2)).unwrap();
        let (p, q) = (s.h.d1.re, s.h.d1.im);
        let m = s.h.d1.norm();
        let (eu, ev) = s.star_frame_uv;
        let back_u = (p * eu - q * ev) / m;
        let back_v = (q * eu + p * ev) / m;
        assert!((back_u - s.star_frame_native.0).amax() < 1e-14);
        assert!((back_v - s.star_frame_native.1).amax() < 1e-14);
    }

    #[test]
    fn chain_rule_maps_tangents() {
        let pair = goursat2();
        for w in [c(1.2, 0.3), c(-0.6, 0.8), c(0.1, -2.0)] {
            let s = pair.state_at(w).unwrap();
            let h = 1e-5 * w.norm().max(1.0);
            let i = c(0.0, 1.0);
            let y_u = (pair.deformed_position_at(w + h).unwrap() - pair.deformed_position_at(w - h).unwrap()) / (2.0 * h);
            let y_v = (pair.deformed_position_at(w + i * h).unwrap() - pair.deformed_position_at(w - i * h).unwrap())
                / (2.0 * h);
            let (r_u, r_v) = s.frame.tangents();
            let scale = s.star_metric_factor();
            assert!((y_u - s.grad_y * r_u).amax() < 1e-6 * scale.max(1.0));
            assert!((y_v - s.grad_y * r_v).amax() < 1e-6 * scale.max(1.0));
            assert!(((y_u.norm() - scale) / scale).abs() < 1e-6);
        }
    }

    #[test]
    fn alpha_is_continued() {
        // F* = w over F = 1: α = arg w.
        let pair = enneper_to_bour3();
        let w = c(-1.0, -1e-4);
        let a = pair.alpha_at(w).unwrap();
        assert!((a.chi - (std::f64::consts::TAU + w.arg())).abs() < 1e-12);
    }
}
