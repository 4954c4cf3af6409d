//! Registered deformation pairs with known classification.
//!
//! Used by the `verify` subcommand and the hierarchy checks.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

use num_complex::Complex64;

use crate::deformation::DeformationPair;
use crate::error::Result;
use crate::holomorphic::{DomainSpec, HolomorphicFn, Mobius};
use crate::neutrality::{
    make_bending_neutral, make_bonnet, make_bonnet_with, make_drilling_neutral, make_goursat, Classification,
    GoursatMap,
};
use crate::weierstrass::WeierstrassSurface;

pub struct CorpusEntry {
    pub name: &'static str,
    pub expected: Classification,
    build: fn() -> Result<DeformationPair>,
}

impl CorpusEntry {
    pub fn build(&self) -> Result<DeformationPair> {
        (self.build)()
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn bour(m: i32) -> Result<WeierstrassSurface> {
    WeierstrassSurface::bour(m, DomainSpec::standard_annulus())
}

fn enneper() -> Result<WeierstrassSurface> {
    WeierstrassSurface::enneper(DomainSpec::standard_annulus())
}

/// Special Möbius map `(aw − c̄)/(cw + ā)`.
pub fn special_mobius(a: Complex64, c: Complex64) -> Result<HolomorphicFn> {
    Ok(HolomorphicFn::mobius(Mobius::special(a, c)?))
}

/// Soft-elasticity pair: Bonnet rotation by `α₀` composed with the special
/// Möbius map `(a, c)` on `F = 1/w`.
pub fn soft_elasticity(a: Complex64, c: Complex64, alpha0: f64) -> Result<DeformationPair> {
    make_bonnet_with(&bour(1)?, &special_mobius(a, c)?, alpha0)
}

/// `F* = λF`, `h = id`, on `F = 1` over the standard annulus.
pub fn dilation(lambda: f64) -> Result<DeformationPair> {
    make_drilling_neutral(&enneper()?, &HolomorphicFn::identity(), lambda, 0.0)
}

/// Enneper (`F = 1`) to Bour `m = 3` (`F* = w`) with `h = id`.
pub fn enneper_to_bour3() -> Result<DeformationPair> {
    make_bending_neutral(&enneper()?, &HolomorphicFn::identity(), &HolomorphicFn::identity())
}

/// Goursat `h = κw` on Bour `m = 1`.
pub fn goursat_kappa(kappa: f64) -> Result<DeformationPair> {
    make_goursat(&bour(1)?, GoursatMap::Kappa(kappa))
}

/// Closed-form `(W_s, W_d, W_b)` for the dilation `F* = λF`, `h = id`.
pub fn expected_dilation(lambda: f64) -> [f64; 3] {
    [2.0 * (lambda - 1.0).powi(2), 0.0, 0.0]
}

/// Closed-form `(W_s, W_d, W_b)` for Enneper to Bour `m = 3`:
/// `W_s = 2(|w| − 1)²`, `W_d = 16/((1 + |w|²)²|w|²)`, `W_b = 0`.
pub fn expected_enneper_bour3(w: Complex64) -> [f64; 3] {
    let r = w.norm();
    [2.0 * (r - 1.0).powi(2), 16.0 / ((1.0 + r * r).powi(2) * r * r), 0.0]
}

/// `K = −16|w|²/(1 + |w|²)⁴` on Bour `m = 1`.
pub fn bour1_gauss(w: Complex64) -> f64 {
    let r2 = w.norm_sqr();
    -16.0 * r2 / (1.0 + r2).powi(4)
}

/// Closed-form `(W_s, W_d, W_b)` for the Goursat map `h = κw` on Bour `m = 1`.
/// The densities depend on `|κ|` only.
pub fn expected_goursat_kappa(kappa: f64, w: Complex64) -> [f64; 3] {
    let k = kappa.abs();
    let r2 = w.norm_sqr();
    let gauss = bour1_gauss(w);
    let q = 1.0 + k * k * r2;
    [
        2.0 * (1.0 - 1.0 / k).powi(2) * ((1.0 - k * r2) / (1.0 + r2)).powi(2),
        -4.0 * gauss * (1.0 - k * k).powi(2) * r2 / (q * q),
        16.0 * gauss * gauss * (1.0 - k * k).powi(2) * (1.0 - k * k * r2 * r2).powi(2) / q.powi(4),
    ]
}

pub fn corpus() -> Vec<CorpusEntry> {
    use Classification::*;
    vec![
        CorpusEntry { name: "bonnet-pi/2-bour1", expected: Isometry, build: || make_bonnet(&bour(1)?, FRAC_PI_2) },
        CorpusEntry {
            name: "soft-elasticity-i,-1,pi/4",
            expected: Isometry,
            build: || soft_elasticity(c(0.0, 1.0), c(-1.0, 0.0), FRAC_PI_4),
        },
        CorpusEntry {
            name: "soft-elasticity-1,-1,pi/6",
            expected: Isometry,
            build: || soft_elasticity(c(1.0, 0.0), c(-1.0, 0.0), FRAC_PI_6),
        },
        CorpusEntry { name: "bonnet-pi/3-enneper", expected: Isometry, build: || make_bonnet(&enneper()?, FRAC_PI_3) },
        CorpusEntry {
            name: "dilation-2-bour1",
            expected: DrillingNeutral,
            build: || make_drilling_neutral(&bour(1)?, &HolomorphicFn::identity(), 2.0, 0.0),
        },
        CorpusEntry { name: "dilation-2-enneper", expected: DrillingNeutral, build: || dilation(2.0) },
        CorpusEntry {
            name: "drilling-neutral-3-special",
            expected: DrillingNeutral,
            build: || {
                let h = special_mobius(c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0))?;
                make_drilling_neutral(&bour(1)?, &h, 3.0, 0.0)
            },
        },
        CorpusEntry { name: "enneper-bour3", expected: BendingNeutral, build: enneper_to_bour3 },
        CorpusEntry {
            name: "bending-neutral-w^2-enneper",
            expected: BendingNeutral,
            build: || make_bending_neutral(&enneper()?, &HolomorphicFn::identity(), &HolomorphicFn::parse("pow(id,2)")?),
        },
        CorpusEntry {
            name: "bending-neutral-exp-bour1",
            expected: BendingNeutral,
            build: || make_bending_neutral(&bour(1)?, &HolomorphicFn::identity(), &HolomorphicFn::parse("exp(id)")?),
        },
        CorpusEntry { name: "goursat-kappa-2", expected: Generic, build: || goursat_kappa(2.0) },
        CorpusEntry { name: "goursat-kappa--3/2", expected: Generic, build: || goursat_kappa(-1.5) },
        CorpusEntry {
            name: "goursat-mobius",
            expected: Generic,
            build: || {
                let m = Mobius::new(c(1.0, 0.0), c(0.2, 0.0), c(0.0, 0.1), c(1.5, 0.0))?;
                make_goursat(&bour(1)?, GoursatMap::Mobius(m))
            },
        },
        CorpusEntry {
            name: "goursat-kappa-2/3-bour3",
            expected: Generic,
            build: || make_goursat(&bour(3)?, GoursatMap::Kappa(2.0 / 3.0)),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neutrality::{classify, PROBE_MARGIN, TOL_EXACT};

    #[test]
    fn closed_form_spot_values() {
        let one = Complex64::new(0.0, 1.0);
        assert_eq!(expected_enneper_bour3(one), [0.0, 4.0, 0.0]);
        let [s, d, b] = expected_goursat_kappa(2.0, one);
        assert!((s - 0.125).abs() < 1e-15 && (d - 1.44).abs() < 1e-15 && (b - 1296.0 / 625.0).abs() < 1e-14);
        assert_eq!(expected_goursat_kappa(-2.0, one), expected_goursat_kappa(2.0, one));
        assert_eq!(expected_dilation(2.0), [2.0, 0.0, 0.0]);
    }

    #[test]
    fn corpus_classifies_as_registered() {
        let entries = corpus();
        assert!(entries.len() >= 12);
        for class in [
            Classification::Isometry,
            Classification::DrillingNeutral,
            Classification::BendingNeutral,
            Classification::Generic,
        ] {
            assert!(entries.iter().any(|e| e.expected == class));
        }
        for e in &entries {
            let pair = e.build().unwrap();
            let report = classify(&pair, &pair.probe_points(64, PROBE_MARGIN), TOL_EXACT).unwrap();
            assert_eq!(report.classification, e.expected, "{}: {report:?}", e.name);
        }
    }
}
