//! Planar parameter domains and the paths used to integrate and continue over them.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_EXCLUSION_RADIUS: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainKind {
    /// `r_min ≤ |w| ≤ r_max`, centred at the origin.
    Annulus { r_min: f64, r_max: f64 },
    /// `|w| ≤ radius`, centred at the origin.
    Disk { radius: f64 },
    Rectangle { u: (f64, f64), v: (f64, f64) },
    /// The whole plane.
    Plane,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExcludedPoint {
    pub center: (f64, f64),
    pub radius: f64,
}

impl ExcludedPoint {
    pub fn center(&self) -> Complex64 {
        Complex64::new(self.center.0, self.center.1)
    }
}

/// A closed planar domain with punctures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub kind: DomainKind,
    pub excluded: Vec<ExcludedPoint>,
}

impl DomainSpec {
    pub fn annulus(r_min: f64, r_max: f64) -> Result<Self> {
        if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
            return Err(Error::InvalidParams(format!("annulus radii ({r_min}, {r_max})")));
        }
        Ok(Self::from_kind(DomainKind::Annulus { r_min, r_max }))
    }

    /// The annulus `1/e ≤ |w| ≤ e` used throughout the worked examples.
    pub fn standard_annulus() -> Self {
        Self::annulus((-1.0f64).exp(), 1.0f64.exp()).expect("valid radii")
    }

    pub fn disk(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParams(format!("disk radius {radius}")));
        }
        Ok(Self::from_kind(DomainKind::Disk { radius }))
    }

    pub fn rectangle(u: (f64, f64), v: (f64, f64)) -> Result<Self> {
        if !(u.0 < u.1 && v.0 < v.1) || ![u.0, u.1, v.0, v.1].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidParams(format!("rectangle {u:?} x {v:?}")));
        }
        Ok(Self::from_kind(DomainKind::Rectangle { u, v }))
    }

    pub fn plane() -> Self {
        Self::from_kind(DomainKind::Plane)
    }

    fn from_kind(kind: DomainKind) -> Self {
        DomainSpec { kind, excluded: Vec::new() }
    }

    pub fn with_excluded(mut self, center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidParams(format!("exclusion radius {radius}")));
        }
        self.excluded.push(ExcludedPoint { center: (center.re, center.im), radius });
        Ok(self)
    }

    /// Membership in the underlying shape, ignoring punctures.
    pub fn in_shape(&self, w: Complex64) -> bool {
        const SLACK: f64 = 1e-12;
        match self.kind {
            DomainKind::Annulus { r_min, r_max } => {
                let r = w.norm();
                r >= r_min * (1.0 - SLACK) && r <= r_max * (1.0 + SLACK)
            }
            DomainKind::Disk { radius } => w.norm() <= radius * (1.0 + SLACK),
            DomainKind::Rectangle { u, v } => {
                w.re >= u.0 - SLACK && w.re <= u.1 + SLACK && w.im >= v.0 - SLACK && w.im <= v.1 + SLACK
            }
            DomainKind::Plane => true,
        }
    }

    pub fn excluded_near(&self, w: Complex64) -> Option<&ExcludedPoint> {
        self.excluded.iter().find(|p| (w - p.center()).norm() < p.radius)
    }

    pub fn contains(&self, w: Complex64) -> bool {
        self.in_shape(w) && self.excluded_near(w).is_none()
    }

    /// Classifies a point: `Ok` when admissible, otherwise the matching error.
    pub fn check(&self, w: Complex64) -> Result<()> {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(Error::NonFinite(w));
        }
        if !self.in_shape(w) {
            return Err(Error::DomainViolation(w));
        }
        if self.excluded_near(w).is_some() {
            return Err(Error::SingularPoint(w));
        }
        Ok(())
    }

    /// Deterministic default path from `anchor` to `w`.
    ///
    /// Annuli use a radial segment followed by an arc whose angle runs over
    /// `[arg anchor, arg anchor + 2π)`; every other shape uses an axis-parallel
    /// staircase (u first, then v first as fallback).
    pub fn default_path(&self, anchor: Complex64, w: Complex64) -> Result<Path> {
        self.check(anchor)?;
        self.check(w)?;
        let candidates = match self.kind {
            DomainKind::Annulus { .. } => {
                let theta_a = anchor.arg();
                let mut dtheta = (w.arg() - theta_a).rem_euclid(TAU);
                if dtheta >= TAU - 1e-15 {
                    dtheta = 0.0;
                }
                vec![Path::radial_angular(anchor, w.norm(), theta_a + dtheta)]
            }
            _ => vec![Path::staircase(anchor, w), Path::staircase_v_first(anchor, w)],
        };
        candidates
            .into_iter()
            .find(|p| self.admits(p))
            .ok_or(Error::PathBlocked { from: anchor, to: w })
    }

    /// Whether every segment stays in the shape and clear of every puncture.
    pub fn admits(&self, path: &Path) -> bool {
        path.segments.iter().all(|s| {
            let ends_inside = self.in_shape(s.point(0.0)) && self.in_shape(s.point(1.0));
            let mid_inside = match self.kind {
                // Radial lines and arcs stay inside the annulus; the disk and
                // rectangle are convex.
                DomainKind::Annulus { .. } => match s {
                    Segment::Line { from, to } => (from.arg() - to.arg()).abs() < 1e-12 || from.norm() * to.norm() == 0.0,
                    Segment::Arc { .. } => true,
                },
                _ => true,
            };
            ends_inside && mid_inside && self.excluded.iter().all(|p| s.distance_to(p.center()) >= p.radius)
        })
    }

    /// `n` quasi-random points (Halton bases 2 and 3) inside the domain,
    /// keeping at least `margin` from every puncture and from the outer
    /// boundary.
    pub fn quasi_random_points(&self, n: usize, margin: f64) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(n);
        let mut index = 1usize;
        while out.len() < n && index < 1000 * (n + 10) {
            let (s, t) = (halton(index, 2), halton(index, 3));
            index += 1;
            let w = match self.kind {
                DomainKind::Annulus { r_min, r_max } => {
                    let (lo, hi) = ((r_min + margin).ln(), (r_max - margin).ln());
                    Complex64::from_polar((lo + s * (hi - lo)).exp(), TAU * t)
                }
                DomainKind::Disk { radius } => {
                    let r = (radius - margin).max(0.0) * s.sqrt();
                    Complex64::from_polar(r, TAU * t)
                }
                DomainKind::Rectangle { u, v } => Complex64::new(
                    u.0 + margin + s * (u.1 - u.0 - 2.0 * margin),
                    v.0 + margin + t * (v.1 - v.0 - 2.0 * margin),
                ),
                DomainKind::Plane => Complex64::from_polar(3.0 * s.sqrt(), TAU * t),
            };
            let clear = self.excluded.iter().all(|p| (w - p.center()).norm() >= p.radius + margin);
            if clear && self.in_shape(w) {
                out.push(w);
            }
        }
        out
    }

    /// An `n × n` lattice over the domain (log-polar on annuli), keeping only
    /// admissible points.
    pub fn lattice_points(&self, n: usize) -> Vec<Complex64> {
        let n = n.max(2);
        let t = |k: usize| k as f64 / (n - 1) as f64;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let w = match self.kind {
                    DomainKind::Annulus { r_min, r_max } => {
                        let rho = (r_min.ln() + t(i) * (r_max / r_min).ln()).exp();
                        Complex64::from_polar(rho, TAU * j as f64 / n as f64)
                    }
                    DomainKind::Disk { radius } => {
                        Complex64::new(radius * (2.0 * t(i) - 1.0), radius * (2.0 * t(j) - 1.0))
                    }
                    DomainKind::Rectangle { u, v } => {
                        Complex64::new(u.0 + t(i) * (u.1 - u.0), v.0 + t(j) * (v.1 - v.0))
                    }
                    DomainKind::Plane => Complex64::new(6.0 * t(i) - 3.0, 6.0 * t(j) - 3.0),
                };
                if self.contains(w) {
                    out.push(w);
                }
            }
        }
        out
    }

    /// A natural anchor for path integration and branch continuation.
    pub fn default_anchor(&self) -> Complex64 {
        let base = match self.kind {
            DomainKind::Annulus { r_min, r_max } => Complex64::new((r_min * r_max).sqrt(), 0.0),
            DomainKind::Disk { .. } | DomainKind::Plane => Complex64::new(0.0, 0.0),
            DomainKind::Rectangle { u, v } => Complex64::new(0.5 * (u.0 + u.1), 0.5 * (v.0 + v.1)),
        };
        self.first_clear_anchor(base)
    }

    /// `base`, or the first point on a small spiral around it that is clear of every puncture.
    pub fn first_clear_anchor(&self, base: Complex64) -> Complex64 {
        if self.contains(base) && self.excluded.iter().all(|p| (base - p.center()).norm() > p.radius + 0.05) {
            return base;
        }
        for k in 1..64 {
            let angle = 0.3 * k as f64;
            let candidate = match self.kind {
                DomainKind::Annulus { .. } => base * Complex64::from_polar(1.0, angle),
                _ => base + Complex64::from_polar(0.05 * k as f64, angle),
            };
            if self.contains(candidate) && self.excluded.iter().all(|p| (candidate - p.center()).norm() > p.radius + 0.05) {
                return candidate;
            }
        }
        base
    }
}

/// Radical-inverse Halton sequence.
pub fn halton(mut index: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

/// A straight segment or an origin-centred arc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Segment {
    Line { from: Complex64, to: Complex64 },
    Arc { radius: f64, theta_from: f64, theta_to: f64 },
}

impl Segment {
    /// Point at parameter `t ∈ [0, 1]`.
    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * t,
            Segment::Arc { radius, theta_from, theta_to } => {
                Complex64::from_polar(radius, theta_from + t * (theta_to - theta_from))
            }
        }
    }

    /// `dz/dt` at parameter `t`.
    pub fn tangent(&self, t: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => to - from,
            Segment::Arc { theta_from, theta_to, .. } => {
                Complex64::new(0.0, theta_to - theta_from) * self.point(t)
            }
        }
    }

    pub fn is_degenerate(&self) -> bool {
        match *self {
            Segment::Line { from, to } => (to - from).norm() == 0.0,
            Segment::Arc { radius, theta_from, theta_to } => radius == 0.0 || theta_from == theta_to,
        }
    }

    pub fn distance_to(&self, p: Complex64) -> f64 {
        match *self {
            Segment::Line { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                if len2 == 0.0 {
                    return (p - from).norm();
                }
                let t = (((p - from) * d.conj()).re / len2).clamp(0.0, 1.0);
                (p - (from + d * t)).norm()
            }
            Segment::Arc { radius, theta_from, theta_to } => {
                let (lo, hi) = if theta_from <= theta_to { (theta_from, theta_to) } else { (theta_to, theta_from) };
                let mut best = (p - self.point(0.0)).norm().min((p - self.point(1.0)).norm());
                if p.norm() > 0.0 {
                    let base = p.arg();
                    // Any representative of arg p inside [lo, hi]?
                    let k = ((lo - base) / TAU).ceil();
                    if base + k * TAU <= hi {
                        best = best.min((p.norm() - radius).abs());
                    }
                } else {
                    best = best.min(radius);
                }
                best
            }
        }
    }
}

/// Piecewise path made of [`Segment`]s.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    pub segments: Vec<Segment>,
}

impl Path {
    pub fn line(from: Complex64, to: Complex64) -> Self {
        Path { segments: vec![Segment::Line { from, to }] }.pruned()
    }

    /// Horizontal then vertical.
    pub fn staircase(from: Complex64, to: Complex64) -> Self {
        let corner = Complex64::new(to.re, from.im);
        Path {
            segments: vec![Segment::Line { from, to: corner }, Segment::Line { from: corner, to }],
        }
        .pruned()
    }

    /// Vertical then horizontal.
    pub fn staircase_v_first(from: Complex64, to: Complex64) -> Self {
        let corner = Complex64::new(from.re, to.im);
        Path {
            segments: vec![Segment::Line { from, to: corner }, Segment::Line { from: corner, to }],
        }
        .pruned()
    }

    /// Radial segment from `anchor` to radius `rho`, then an arc to the
    /// unwrapped angle `theta` (which may leave `[0, 2π)`).
    pub fn radial_angular(anchor: Complex64, rho: f64, theta: f64) -> Self {
        let theta_a = anchor.arg();
        let corner = Complex64::from_polar(rho, theta_a);
        Path {
            segments: vec![
                Segment::Line { from: anchor, to: corner },
                Segment::Arc { radius: rho, theta_from: theta_a, theta_to: theta },
            ],
        }
        .pruned()
    }

    /// The unit-speed arc on `|w| = radius` from `theta_from` to `theta_to`.
    pub fn arc(radius: f64, theta_from: f64, theta_to: f64) -> Self {
        Path { segments: vec![Segment::Arc { radius, theta_from, theta_to }] }.pruned()
    }

    fn pruned(mut self) -> Self {
        if self.segments.len() > 1 {
            let first = self.segments[0];
            self.segments.retain(|s| !s.is_degenerate());
            if self.segments.is_empty() {
                self.segments.push(first);
            }
        }
        self
    }

    pub fn start(&self) -> Complex64 {
        self.segments.first().map(|s| s.point(0.0)).unwrap_or_default()
    }

    pub fn end(&self) -> Complex64 {
        self.segments.last().map(|s| s.point(1.0)).unwrap_or_default()
    }

    pub fn concat(mut self, other: Path) -> Self {
        self.segments.extend(other.segments);
        self.pruned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn membership() {
        let d = DomainSpec::standard_annulus().with_excluded(Complex64::new(1.0, 0.0), 1e-3).unwrap();
        assert!(d.contains(Complex64::new(0.0, 2.0)));
        assert!(!d.contains(Complex64::new(0.1, 0.0)));
        assert!(!d.contains(Complex64::new(1.0, 1e-4)));
        assert!(matches!(d.check(Complex64::new(5.0, 0.0)), Err(Error::DomainViolation(_))));
        assert!(matches!(d.check(Complex64::new(1.0, 0.0)), Err(Error::SingularPoint(_))));
        assert!(DomainSpec::annulus(0.0, 1.0).is_err());
    }

    #[test]
    fn annulus_path_goes_counterclockwise_from_anchor() {
        let d = DomainSpec::standard_annulus();
        let p = d.default_path(Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0)).unwrap();
        match p.segments.last().unwrap() {
            Segment::Arc { theta_from, theta_to, .. } => {
                assert_eq!(*theta_from, 0.0);
                assert!((theta_to - 1.5 * PI).abs() < 1e-12);
            }
            _ => panic!("expected arc"),
        }
        assert!((p.end() - Complex64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn blocked_path_reported() {
        let d = DomainSpec::plane().with_excluded(Complex64::new(0.5, 0.0), 0.1).unwrap();
        let d = d.with_excluded(Complex64::new(0.0, 0.5), 0.1).unwrap();
        assert!(matches!(
            d.default_path(Complex64::new(0.0, 0.0), Complex64::new(1.0, 1.0)),
            Err(Error::PathBlocked { .. })
        ));
    }

    #[test]
    fn arc_distance() {
        let s = Segment::Arc { radius: 1.0, theta_from: 0.0, theta_to: PI };
        assert!((s.distance_to(Complex64::new(0.0, 2.0)) - 1.0).abs() < 1e-12);
        assert!((s.distance_to(Complex64::new(0.0, -1.0)) - 2f64.sqrt()).abs() < 1e-12);
        let s = Segment::Arc { radius: 1.0, theta_from: 3.0, theta_to: 7.0 };
        assert!(s.distance_to(Complex64::new(1.0, 0.0)) < 1e-12);
    }

    #[test]
    fn halton_points_stay_inside() {
        let d = DomainSpec::standard_annulus();
        let pts = d.quasi_random_points(200, 0.01);
        assert_eq!(pts.len(), 200);
        assert!(pts.iter().all(|w| d.contains(*w)));
    }
}
