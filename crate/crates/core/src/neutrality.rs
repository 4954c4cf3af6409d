//! Neutral modes.
//!
//! A deformation is bending-neutral when `|h′| = (1 + |h|²)/(1 + |w|²)`,
//! drilling-neutral when additionally `α = χ* − χ` and
//! `G = ln((1 + |h|²)|h′|/(1 + |w|²))` are harmonic conjugates up to sign,
//! and an isometry when also the stretch ratio is one. The constructors
//! assemble `F*` from `F*(h(w)) = g(w) F(w)/h′(w)²` for a Möbius map `h`
//! and a holomorphic multiplier `g = λe^{iβ}`.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::deformation::DeformationPair;
use crate::energetics::drilling_defects;
use crate::error::{Error, Result};
use crate::holomorphic::{
    cauchy_riemann_residual, ComplexPoint, DomainKind, DomainSpec, HolomorphicFn, Mobius, FD_STEP, FD_TOL,
};
use crate::weierstrass::WeierstrassSurface;

/// Tolerance for residuals of exact constructions.
pub const TOL_EXACT: f64 = 1e-9;

/// Tolerance for checks that go through finite differences.
pub const TOL_FD: f64 = 1e-6;

/// Radius of the puncture placed around the pole of `h` in the source domain.
pub const POLE_EXCLUSION_RADIUS: f64 = 0.05;

/// Number of quasi-random probes used by the constructors' checks.
pub const CHECK_PROBES: usize = 64;

/// Distance kept between probes and boundaries or punctures.
pub const PROBE_MARGIN: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Isometry,
    DrillingNeutral,
    BendingNeutral,
    Generic,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Isometry => "isometry",
            Classification::DrillingNeutral => "drilling_neutral",
            Classification::BendingNeutral => "bending_neutral",
            Classification::Generic => "generic",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NeutralityReport {
    pub bending_residual: f64,
    pub drilling_residual: f64,
    pub stretching_residual: f64,
    pub classification: Classification,
    pub tol: f64,
    pub probes: usize,
}

/// `sup ||h′(w)| − (1 + |h(w)|²)/(1 + |w|²)|` over the probes.
pub fn bending_neutral_residual(h: &HolomorphicFn, probes: &[ComplexPoint]) -> Result<f64> {
    let mut sup: f64 = 0.0;
    for &w in probes {
        let j = h.eval_jet(w)?;
        let r = (j.d1.norm() - (1.0 + j.value.norm_sqr()) / (1.0 + w.norm_sqr())).abs();
        sup = sup.max(r);
    }
    Ok(sup)
}

/// `sup |(α_,u − G_,v, α_,v + G_,u)|` over the probes.
pub fn drilling_neutral_residual(d: &DeformationPair, probes: &[ComplexPoint]) -> Result<f64> {
    let mut sup: f64 = 0.0;
    for &w in probes {
        let (a, b) = drilling_defects(&d.state_at(w)?);
        sup = sup.max(a.hypot(b));
    }
    Ok(sup)
}

/// `sup |λ − 1|` over the probes, with `λ` the stretch ratio.
pub fn stretching_residual(d: &DeformationPair, probes: &[ComplexPoint]) -> Result<f64> {
    let mut sup: f64 = 0.0;
    for &w in probes {
        sup = sup.max((d.state_at(w)?.stretch_ratio - 1.0).abs());
    }
    Ok(sup)
}

/// Residuals and the resulting class. A pair whose residuals break the
/// hierarchy (stretching ⇒ drilling ⇒ bending, with a factor 10 slack on
/// the implied conditions) is reported as [`Error::HierarchyViolation`].
pub fn classify(d: &DeformationPair, probes: &[ComplexPoint], tol: f64) -> Result<NeutralityReport> {
    let bending = bending_neutral_residual(d.h(), probes)?;
    let drilling = drilling_neutral_residual(d, probes)?;
    let stretching = stretching_residual(d, probes)?;
    let report = |classification| NeutralityReport {
        bending_residual: bending,
        drilling_residual: drilling,
        stretching_residual: stretching,
        classification,
        tol,
        probes: probes.len(),
    };
    let (s_ok, d_ok, b_ok) = (stretching <= tol, drilling <= tol, bending <= tol);
    if s_ok && !(drilling <= 10.0 * tol && bending <= 10.0 * tol) {
        return Err(Error::HierarchyViolation(format!(
            "stretching-neutral (residual {stretching:e}) but drilling {drilling:e}, bending {bending:e}"
        )));
    }
    if d_ok && bending > 10.0 * tol {
        return Err(Error::HierarchyViolation(format!(
            "drilling-neutral (residual {drilling:e}) but bending {bending:e}"
        )));
    }
    let class = if s_ok {
        Classification::Isometry
    } else if d_ok {
        Classification::DrillingNeutral
    } else if b_ok {
        Classification::BendingNeutral
    } else {
        Classification::Generic
    };
    Ok(report(class))
}

/// Parameters of the neutral families, as read from configuration.
#[derive(Clone, Debug)]
pub struct NeutralFamilyParams {
    /// Constant `λ > 0`.
    pub lambda: f64,
    /// Constant `β` (or `α₀`).
    pub alpha0: f64,
    /// Holomorphic generator `g` with `λ = |g|`, `β = arg g`; overrides the constants.
    pub generator: Option<HolomorphicFn>,
    pub kappa: Option<f64>,
    pub moebius: Option<Mobius>,
}

impl Default for NeutralFamilyParams {
    fn default() -> Self {
        NeutralFamilyParams { lambda: 1.0, alpha0: 0.0, generator: None, kappa: None, moebius: None }
    }
}

impl NeutralFamilyParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidParams(format!("lambda = {} must be positive", self.lambda)));
        }
        if !self.alpha0.is_finite() {
            return Err(Error::InvalidParams("alpha0 must be finite".into()));
        }
        if let Some(k) = self.kappa {
            if !(k.is_finite() && k != 0.0) {
                return Err(Error::InvalidParams(format!("kappa = {k} must be nonzero")));
            }
        }
        Ok(())
    }

    /// `g`, or the constant `λe^{iα₀}`.
    pub fn multiplier(&self) -> HolomorphicFn {
        match &self.generator {
            Some(g) => g.clone(),
            None => HolomorphicFn::constant(Complex64::from_polar(self.lambda, self.alpha0)),
        }
    }
}

/// Simplest expression for a Möbius map.
pub fn mobius_fn(m: &Mobius) -> HolomorphicFn {
    let (a, b, c, d) = m.coefficients();
    if m.is_identity() {
        HolomorphicFn::identity()
    } else if b.norm() == 0.0 && c.norm() == 0.0 {
        HolomorphicFn::identity().scale(a / d)
    } else {
        HolomorphicFn::mobius(*m)
    }
}

fn require_mobius(h: &HolomorphicFn) -> Result<Mobius> {
    h.as_mobius()
        .ok_or_else(|| Error::InvalidParams(format!("h = {h} must be a Möbius map (identity, scaling or mobius(a,b,c,d))")))
}

/// Source with the pole of `h` punctured out.
fn punctured_source(source: &WeierstrassSurface, m: &Mobius) -> Result<WeierstrassSurface> {
    let mut domain = source.domain().clone();
    if let Some(p) = m.pole() {
        if domain.in_shape(p) || domain.excluded_near(p).is_some() {
            domain = domain.with_excluded(p, POLE_EXCLUSION_RADIUS)?;
        }
    }
    if domain == *source.domain() {
        return Ok(source.clone());
    }
    let basepoint = domain.first_clear_anchor(source.basepoint());
    Ok(WeierstrassSurface::with_basepoint(source.f().clone(), domain, basepoint)?.translated(source.translation()))
}

/// `h(Ω)` when it is again one of the standard shapes, otherwise the plane.
fn image_domain(source: &DomainSpec, m: &Mobius) -> Result<DomainSpec> {
    if m.is_identity() {
        return Ok(source.clone());
    }
    let (a, b, c, d) = m.coefficients();
    if b.norm() != 0.0 || c.norm() != 0.0 {
        return Ok(DomainSpec::plane());
    }
    let kappa = a / d;
    let k = kappa.norm();
    let mut image = match source.kind {
        DomainKind::Annulus { r_min, r_max } => DomainSpec::annulus(k * r_min, k * r_max)?,
        DomainKind::Disk { radius } => DomainSpec::disk(k * radius)?,
        _ => return Ok(DomainSpec::plane()),
    };
    for p in &source.excluded {
        image = image.with_excluded(kappa * p.center(), k * p.radius)?;
    }
    Ok(image)
}

/// The pair with `F*(z) = g(m(z)) F(m(z)) m′(z)²`, `m = h⁻¹`.
fn assemble_pair(source: &WeierstrassSurface, m: &Mobius, g: &HolomorphicFn) -> Result<DeformationPair> {
    let source = punctured_source(source, m)?;
    let h = mobius_fn(m);
    let inv = mobius_fn(&m.inverse());
    let f_star = g.mul(source.f()).compose(&inv).mul(&inv.derivative().powi(2));
    let domain = image_domain(source.domain(), m)?;
    let anchor_star = h.eval(source.basepoint())?;
    let target = WeierstrassSurface::with_basepoint(f_star, domain, anchor_star)?;
    DeformationPair::new(source, target, h)
}

fn check_probes(source: &WeierstrassSurface, m: &Mobius) -> Result<Vec<ComplexPoint>> {
    Ok(punctured_source(source, m)?.domain().quasi_random_points(CHECK_PROBES, PROBE_MARGIN))
}

fn require_bending_neutral(source: &WeierstrassSurface, h: &HolomorphicFn, m: &Mobius) -> Result<()> {
    let probes = check_probes(source, m)?;
    let r = bending_neutral_residual(h, &probes)?;
    if r > TOL_EXACT {
        return Err(Error::NotNeutral(r));
    }
    Ok(())
}

/// Bonnet transformation `F* = e^{iα₀}F` (with `h` the identity).
pub fn make_bonnet(source: &WeierstrassSurface, alpha0: f64) -> Result<DeformationPair> {
    make_drilling_neutral(source, &HolomorphicFn::identity(), 1.0, alpha0)
}

/// `F*(h(w)) = e^{iα₀}F(w)/h′(w)²` for a bending-neutral `h`.
pub fn make_bonnet_with(source: &WeierstrassSurface, h: &HolomorphicFn, alpha0: f64) -> Result<DeformationPair> {
    make_drilling_neutral(source, h, 1.0, alpha0)
}

/// `F*(h(w)) = λe^{iα₀}F(w)/h′(w)²` with constant `λ > 0`.
pub fn make_drilling_neutral(
    source: &WeierstrassSurface,
    h_neutral: &HolomorphicFn,
    lambda: f64,
    alpha0: f64,
) -> Result<DeformationPair> {
    let params = NeutralFamilyParams { lambda, alpha0, ..Default::default() };
    params.validate()?;
    let m = require_mobius(h_neutral)?;
    require_bending_neutral(source, h_neutral, &m)?;
    assemble_pair(source, &m, &params.multiplier())
}

/// `F*(h(w)) = λe^{iβ}F(w)/h′(w)²` with `λe^{iβ} = g(w)` holomorphic.
///
/// Checks that `β = arg g` is harmonic (five-point Laplacian ≤ 1e-4) and
/// that the assembled `F*` passes the Cauchy–Riemann test on `h(Ω)`.
pub fn make_bending_neutral(
    source: &WeierstrassSurface,
    h_neutral: &HolomorphicFn,
    generator: &HolomorphicFn,
) -> Result<DeformationPair> {
    let m = require_mobius(h_neutral)?;
    require_bending_neutral(source, h_neutral, &m)?;
    let probes = check_probes(source, &m)?;
    for &w in &probes {
        let lap = beta_laplacian(generator, w, 1e-3 * w.norm().max(1.0))?;
        if lap.abs() > 1e-4 {
            return Err(Error::InvalidParams(format!("beta = arg g is not harmonic at {w} (laplacian {lap:e})")));
        }
    }
    let pair = assemble_pair(source, &m, generator)?;
    let f_star = pair.target().f().clone();
    let mut worst: f64 = 0.0;
    for &w in &probes {
        let z = pair.pushforward(w)?;
        let scale = f_star.derivative().eval(z)?.norm().max(1.0);
        worst = worst.max(cauchy_riemann_residual(&f_star, z, FD_STEP * z.norm().max(1.0))? / scale);
    }
    if worst > FD_TOL {
        return Err(Error::NotHolomorphic(worst));
    }
    Ok(pair)
}

/// Bending-neutral family from constant `λ` and `β`.
pub fn make_bending_neutral_constant(
    source: &WeierstrassSurface,
    h_neutral: &HolomorphicFn,
    lambda: f64,
    beta: f64,
) -> Result<DeformationPair> {
    let params = NeutralFamilyParams { lambda, alpha0: beta, ..Default::default() };
    params.validate()?;
    make_bending_neutral(source, h_neutral, &params.multiplier())
}

fn beta_laplacian(g: &HolomorphicFn, w: ComplexPoint, step: f64) -> Result<f64> {
    let centre = g.eval(w)?;
    if centre.norm() < g.exclusion_radius() {
        return Err(Error::ZeroCrossing(w));
    }
    let i = Complex64::new(0.0, 1.0);
    let mut sum = 0.0;
    for z in [w + step, w - step, w + i * step, w - i * step] {
        sum += (g.eval(z)? / centre).arg();
    }
    Ok(sum / (step * step))
}

/// Goursat transformation data: a Möbius map or the scaling `κw`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GoursatMap {
    Mobius(Mobius),
    Kappa(f64),
}

/// `F*(h(w)) = F(w)/h′(w)²`.
pub fn make_goursat(source: &WeierstrassSurface, map: GoursatMap) -> Result<DeformationPair> {
    let m = match map {
        GoursatMap::Mobius(m) => m,
        GoursatMap::Kappa(k) => {
            if !(k.is_finite() && k != 0.0) {
                return Err(Error::InvalidParams(format!("kappa = {k} must be nonzero")));
            }
            Mobius::scaling(Complex64::new(k, 0.0))?
        }
    };
    assemble_pair(source, &m, &HolomorphicFn::real(1.0))
}

/// Result of [`area_preserving_moebius_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AreaCheck {
    pub area_preserving: bool,
    /// Coefficients scaled to `ad − bc = 1`.
    pub unimodular: (Complex64, Complex64, Complex64, Complex64),
}

/// Whether `(a, b, c, d)`, scaled to `ad − bc = 1`, has `d = ā` and
/// `b = −c̄` (to 1e-12 relative to the coefficient size).
pub fn area_preserving_moebius_check(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<AreaCheck> {
    let m = Mobius::new(a, b, c, d)?;
    let (a, b, c, d) = m.unimodular();
    let size = (a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr()).sqrt().max(1.0);
    let ok = (d - a.conj()).norm() <= 1e-12 * size && (b + c.conj()).norm() <= 1e-12 * size;
    Ok(AreaCheck { area_preserving: ok, unimodular: (a, b, c, d) })
}

/// Ratio of stereographic arc elements `(2|h′||dw|/(1 + |h|²)) / (2|dw|/(1 + |w|²))`.
pub fn spherical_arc_ratio(h: &HolomorphicFn, w: ComplexPoint, dw: Complex64) -> Result<f64> {
    if dw.norm() == 0.0 || !dw.norm().is_finite() {
        return Err(Error::InvalidParams("dw must be nonzero and finite".into()));
    }
    let j = h.eval_jet(w)?;
    Ok(j.d1.norm() * (1.0 + w.norm_sqr()) / (1.0 + j.value.norm_sqr()))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, FRAC_PI_6};

    use super::*;
    use crate::energetics::{total_density, Moduli};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bour(m: i32) -> WeierstrassSurface {
        WeierstrassSurface::bour(m, DomainSpec::standard_annulus()).unwrap()
    }

    fn special(a: Complex64, c: Complex64) -> HolomorphicFn {
        HolomorphicFn::mobius(Mobius::special(a, c).unwrap())
    }

    fn probes(d: &DeformationPair) -> Vec<ComplexPoint> {
        d.probe_points(64, PROBE_MARGIN)
    }

    #[test]
    fn bending_residual_examples() {
        let pts = DomainSpec::standard_annulus().quasi_random_points(50, 0.0);
        assert_eq!(bending_neutral_residual(&HolomorphicFn::identity(), &pts).unwrap(), 0.0);
        let s = special(c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0));
        let safe: Vec<_> = pts.into_iter().filter(|w| (w - 1.0).norm() > 0.05).collect();
        assert!(bending_neutral_residual(&s, &safe).unwrap() <= 1e-12);
        let two = HolomorphicFn::parse("scale(2,id)").unwrap();
        assert!((bending_neutral_residual(&two, &[c(1.0, 0.0)]).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn drilling_residual_examples() {
        let bonnet = make_bonnet(&bour(1), 0.7).unwrap();
        assert!(drilling_neutral_residual(&bonnet, &probes(&bonnet)).unwrap() <= 1e-10);
        let e2b = make_bending_neutral(&bour(2), &HolomorphicFn::identity(), &HolomorphicFn::identity()).unwrap();
        let ring = [Complex64::from_polar(1.0, 0.3), Complex64::from_polar(1.0, 2.0)];
        assert!((drilling_neutral_residual(&e2b, &ring).unwrap() - 1.0).abs() < 1e-12);
        let id = make_goursat(&bour(1), GoursatMap::Kappa(1.0)).unwrap();
        assert_eq!(drilling_neutral_residual(&id, &probes(&id)).unwrap(), 0.0);
    }

    #[test]
    fn classify_examples() {
        let soft = make_bonnet_with(&bour(1), &special(c(0.0, 1.0), c(-1.0, 0.0)), FRAC_PI_4).unwrap();
        assert_eq!(classify(&soft, &probes(&soft), TOL_EXACT).unwrap().classification, Classification::Isometry);
        let dil = make_drilling_neutral(&bour(1), &HolomorphicFn::identity(), 2.0, 0.0).unwrap();
        assert_eq!(
            classify(&dil, &probes(&dil), TOL_EXACT).unwrap().classification,
            Classification::DrillingNeutral
        );
        let e2b = make_bending_neutral(&bour(2), &HolomorphicFn::identity(), &HolomorphicFn::identity()).unwrap();
        assert_eq!(
            classify(&e2b, &probes(&e2b), TOL_EXACT).unwrap().classification,
            Classification::BendingNeutral
        );
        let g = make_goursat(&bour(1), GoursatMap::Kappa(2.0)).unwrap();
        assert_eq!(classify(&g, &probes(&g), TOL_EXACT).unwrap().classification, Classification::Generic);
    }

    #[test]
    fn bonnet_examples() {
        let same = make_bonnet(&bour(1), 0.0).unwrap();
        for w in probes(&same) {
            assert_eq!(same.target().f().eval(w).unwrap(), same.source().f().eval(w).unwrap());
        }
        for pair in [
            make_bonnet(&bour(1), FRAC_PI_2).unwrap(),
            make_bonnet_with(&bour(1), &special(c(1.0, 0.0), c(-1.0, 0.0)), FRAC_PI_6).unwrap(),
        ] {
            assert_eq!(classify(&pair, &probes(&pair), TOL_EXACT).unwrap().classification, Classification::Isometry);
        }
    }

    #[test]
    fn drilling_neutral_examples() {
        let one = make_drilling_neutral(&bour(1), &HolomorphicFn::identity(), 1.0, 0.3).unwrap();
        assert_eq!(classify(&one, &probes(&one), TOL_EXACT).unwrap().classification, Classification::Isometry);
        let dil = make_drilling_neutral(&bour(2), &HolomorphicFn::identity(), 2.0, 0.0).unwrap();
        for w in probes(&dil) {
            let e = total_density(&dil, w, &Moduli::unit()).unwrap();
            assert!((e.w_s - 2.0).abs() < 1e-13 && e.w_d <= 1e-20 && e.w_b <= 1e-20);
        }
        let h = special(c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0));
        let three = make_drilling_neutral(&bour(1), &h, 3.0, 0.0).unwrap();
        assert_eq!(
            classify(&three, &probes(&three), TOL_EXACT).unwrap().classification,
            Classification::DrillingNeutral
        );
        let not = make_drilling_neutral(&bour(1), &HolomorphicFn::parse("scale(2,id)").unwrap(), 1.0, 0.0);
        assert!(matches!(not, Err(Error::NotNeutral(_))));
        assert!(make_drilling_neutral(&bour(1), &HolomorphicFn::identity(), -1.0, 0.0).is_err());
    }

    #[test]
    fn bending_neutral_examples() {
        let e2b = make_bending_neutral(&bour(2), &HolomorphicFn::identity(), &HolomorphicFn::identity()).unwrap();
        for w in probes(&e2b) {
            assert!((e2b.target().f().eval(w).unwrap() - w).norm() < 1e-15);
        }
        let constant = make_bending_neutral_constant(&bour(1), &HolomorphicFn::identity(), 1.0, 0.4).unwrap();
        assert_eq!(
            classify(&constant, &probes(&constant), TOL_EXACT).unwrap().classification,
            Classification::Isometry
        );
        let sq = make_bending_neutral(&bour(2), &HolomorphicFn::identity(), &HolomorphicFn::parse("pow(id,2)").unwrap())
            .unwrap();
        for w in probes(&sq) {
            assert!((sq.target().f().eval(w).unwrap() - w * w).norm() < 1e-14);
            assert!(total_density(&sq, w, &Moduli::unit()).unwrap().w_b <= 1e-10);
        }
    }

    #[test]
    fn bending_neutral_drilling_density_is_beta_gradient() {
        // g = w²: β = 2 arg w, |∇β|² = 4/|w|² in the parameter plane.
        let sq = make_bending_neutral(&bour(2), &HolomorphicFn::identity(), &HolomorphicFn::parse("pow(id,2)").unwrap())
            .unwrap();
        for w in probes(&sq) {
            let s = sq.state_at(w).unwrap();
            let expected = -s.frame.gauss() * (1.0 + w.norm_sqr()).powi(2) * 4.0 / w.norm_sqr();
            let got = total_density(&sq, w, &Moduli::unit()).unwrap().w_d;
            assert!((got - expected).abs() <= 1e-12 * expected);
        }
    }

    #[test]
    fn goursat_examples() {
        let id = make_goursat(&bour(1), GoursatMap::Kappa(1.0)).unwrap();
        for w in probes(&id) {
            assert_eq!(total_density(&id, w, &Moduli::unit()).unwrap().w_total, 0.0);
        }
        let g = make_goursat(&bour(1), GoursatMap::Kappa(2.0)).unwrap();
        let e = total_density(&g, c(0.0, 1.0), &Moduli::unit()).unwrap();
        assert!((e.w_s - 0.125).abs() < 1e-14);
        assert!((e.w_d - 36.0 / 25.0).abs() < 1e-12);
        assert!((e.w_b - 1296.0 / 625.0).abs() < 1e-12);
        let rot = make_goursat(&bour(1), GoursatMap::Mobius(Mobius::special(c(0.0, 1.0), c(-1.0, 0.0)).unwrap())).unwrap();
        assert_eq!(classify(&rot, &probes(&rot), TOL_EXACT).unwrap().classification, Classification::Isometry);
        assert!(make_goursat(&bour(1), GoursatMap::Kappa(0.0)).is_err());
    }

    #[test]
    fn area_check_examples() {
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        assert!(area_preserving_moebius_check(one, zero, zero, one).unwrap().area_preserving);
        assert!(area_preserving_moebius_check(c(0.0, 1.0), one, -one, c(0.0, -1.0)).unwrap().area_preserving);
        let dil = area_preserving_moebius_check(c(2.0, 0.0), zero, zero, c(0.5, 0.0)).unwrap();
        assert!(!dil.area_preserving);
        let (a, b, cc, d) = dil.unimodular;
        assert!((a * d - b * cc - 1.0).norm() < 1e-15);
        let h = HolomorphicFn::parse("mobius(2,0,0,0.5)").unwrap();
        assert!(bending_neutral_residual(&h, &[c(1.0, 0.0)]).unwrap() > 0.0);
        assert!(matches!(
            area_preserving_moebius_check(one, one, one, one),
            Err(Error::DegenerateMoebius)
        ));
    }

    #[test]
    fn arc_ratio_examples() {
        let dw = c(1e-6, 0.0);
        assert_eq!(spherical_arc_ratio(&HolomorphicFn::identity(), c(0.3, 0.2), dw).unwrap(), 1.0);
        let s = special(c(0.0, 1.0), c(-1.0, 0.0));
        assert!((spherical_arc_ratio(&s, c(0.5, 0.5), dw).unwrap() - 1.0).abs() < 1e-12);
        let two = HolomorphicFn::parse("scale(2,id)").unwrap();
        assert!((spherical_arc_ratio(&two, c(1.0, 0.0), dw).unwrap() - 0.8).abs() < 1e-15);
        assert!(spherical_arc_ratio(&two, c(1.0, 0.0), c(0.0, 0.0)).is_err());
    }
}
