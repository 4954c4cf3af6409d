//! Job configuration.
//!
//! Plain `key = value` lines; `#` starts a comment, blank lines are
//! ignored, later assignments win. Command-line flags are applied on top.
//!
//! ```text
//! source        = recip(id)             # F, expression grammar
//! target        = exp(id)               # F*, for family = explicit
//! h             = id                    # conformal map (Möbius maps only for neutral families)
//! mobius        = 1,0,-1,1              # shorthand for h = mobius(a,b,c,d)
//! family        = explicit | bonnet | drilling | bending | goursat
//! domain        = standard | annulus R1 R2 | disk R | rectangle U0 U1 V0 V1 | plane
//! target_domain = plane                 # explicit pairs only
//! alpha0 = 0.0   lambda = 1.0   kappa = 2   g = pow(id,2)
//! grid          = 32x64
//! side          = target | source       # which surface meshes show
//! format        = ply | obj
//! out           = out
//! mu_s = 1   mu_d = 1   mu_b = 1
//! tol = 1e-9   tol_route = 1e-8   tol_oracle = 1e-4   tol_fd = 1e-6
//! probes        = 256
//! ```

use std::collections::BTreeMap;
use std::path::{Path as FsPath, PathBuf};

use num_complex::Complex64;

use crate::deformation::DeformationPair;
use crate::energetics::Moduli;
use crate::error::{Error, Result};
use crate::holomorphic::{cauchy_riemann_residual, parse_complex, DomainSpec, HolomorphicFn, Mobius, FD_STEP, FD_TOL};
use crate::meshgen::{ExportFormat, GridSpec, Side};
use crate::neutrality::{
    make_bending_neutral, make_bending_neutral_constant, make_bonnet_with, make_drilling_neutral, make_goursat,
    GoursatMap,
};
use crate::weierstrass::WeierstrassSurface;

pub const KEYS: [&str; 23] = [
    "source", "target", "h", "mobius", "family", "domain", "target_domain", "alpha0", "lambda", "kappa", "g", "grid",
    "side", "format", "out", "mu_s", "mu_d", "mu_b", "tol", "tol_route", "tol_oracle", "tol_fd", "probes",
];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct JobConfig {
    values: BTreeMap<String, String>,
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = JobConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected `key = value`", n + 1)))?;
            cfg.set(k.trim(), v.trim()).map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &FsPath) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if !KEYS.contains(&key) {
            return Err(Error::InvalidParams(format!("unknown config key `{key}`")));
        }
        self.values.insert(key.to_string(), value.to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn is_set(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => {
                let x: f64 = v.parse().map_err(|_| Error::InvalidParams(format!("{key} = `{v}` is not a number")))?;
                if !x.is_finite() {
                    return Err(Error::InvalidParams(format!("{key} must be finite")));
                }
                Ok(x)
            }
        }
    }

    pub fn f64_opt(&self, key: &str) -> Result<Option<f64>> {
        if self.is_set(key) {
            self.f64_or(key, 0.0).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn tol(&self) -> Result<f64> {
        self.positive("tol", 1e-9)
    }

    pub fn positive(&self, key: &str, default: f64) -> Result<f64> {
        let x = self.f64_or(key, default)?;
        if x <= 0.0 {
            return Err(Error::InvalidParams(format!("{key} must be positive")));
        }
        Ok(x)
    }

    pub fn probes(&self) -> Result<usize> {
        let v = self.get("probes").unwrap_or("256");
        match v.parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Error::InvalidParams(format!("probes = `{v}` must be a positive integer"))),
        }
    }

    pub fn grid(&self) -> Result<GridSpec> {
        self.get("grid").unwrap_or("32x64").parse()
    }

    pub fn format(&self) -> Result<ExportFormat> {
        self.get("format").unwrap_or("ply").parse()
    }

    pub fn out_dir(&self) -> PathBuf {
        PathBuf::from(self.get("out").unwrap_or("out"))
    }

    pub fn side(&self) -> Result<Side> {
        match self.get("side").unwrap_or("target") {
            "target" => Ok(Side::Target),
            "source" => Ok(Side::Source),
            other => Err(Error::InvalidParams(format!("side = `{other}` (expected source or target)"))),
        }
    }

    pub fn moduli(&self) -> Result<Moduli> {
        Moduli::new(self.f64_or("mu_s", 1.0)?, self.f64_or("mu_d", 1.0)?, self.f64_or("mu_b", 1.0)?)
    }

    pub fn domain(&self) -> Result<DomainSpec> {
        parse_domain(self.get("domain").unwrap_or("standard"))
    }

    pub fn mobius(&self) -> Result<Option<Mobius>> {
        self.get("mobius").map(parse_mobius).transpose()
    }

    /// `h`: the `mobius` key when present, else the `h` expression (default identity).
    pub fn h(&self) -> Result<HolomorphicFn> {
        if let Some(m) = self.mobius()? {
            return Ok(HolomorphicFn::mobius(m));
        }
        HolomorphicFn::parse(self.get("h").unwrap_or("id"))
    }

    /// The source surface, with `F` checked for holomorphy on the domain.
    pub fn source_surface(&self) -> Result<WeierstrassSurface> {
        let domain = self.domain()?;
        let f = HolomorphicFn::parse(self.get("source").unwrap_or("recip(id)"))?;
        check_holomorphic(&f, &domain)?;
        WeierstrassSurface::new(f, domain)
    }

    pub fn pair(&self) -> Result<DeformationPair> {
        let source = self.source_surface()?;
        let h = self.h()?;
        let alpha0 = self.f64_or("alpha0", 0.0)?;
        let lambda = self.f64_or("lambda", 1.0)?;
        let family = match self.get("family") {
            Some(f) => f,
            None if self.is_set("target") => "explicit",
            None => return Err(Error::InvalidParams("a pair needs `target` or `family`".into())),
        };
        match family {
            "bonnet" => make_bonnet_with(&source, &h, alpha0),
            "drilling" => make_drilling_neutral(&source, &h, lambda, alpha0),
            "bending" => match self.get("g") {
                Some(g) => make_bending_neutral(&source, &h, &HolomorphicFn::parse(g)?),
                None => make_bending_neutral_constant(&source, &h, lambda, alpha0),
            },
            "goursat" => {
                let map = match (self.f64_opt("kappa")?, h.as_mobius()) {
                    (Some(k), _) => GoursatMap::Kappa(k),
                    (None, Some(m)) => GoursatMap::Mobius(m),
                    (None, None) => return Err(Error::InvalidParams("goursat needs `kappa` or a Möbius `h`".into())),
                };
                make_goursat(&source, map)
            }
            "explicit" => {
                let text = self.get("target").ok_or_else(|| Error::InvalidParams("family explicit needs `target`".into()))?;
                let f_star = HolomorphicFn::parse(text)?;
                let domain = parse_domain(self.get("target_domain").unwrap_or("plane"))?;
                check_holomorphic(&f_star, &domain)?;
                let target = WeierstrassSurface::new(f_star, domain)?;
                DeformationPair::new(source, target, h)
            }
            other => Err(Error::InvalidParams(format!("unknown family `{other}`"))),
        }
    }
}

/// `standard | annulus R1 R2 | disk R | rectangle U0 U1 V0 V1 | plane`.
pub fn parse_domain(text: &str) -> Result<DomainSpec> {
    let t: Vec<&str> = text.split_whitespace().collect();
    let nums = |xs: &[&str]| -> Result<Vec<f64>> {
        xs.iter()
            .map(|x| x.parse::<f64>().map_err(|_| Error::InvalidParams(format!("bad number `{x}` in domain"))))
            .collect()
    };
    match t.as_slice() {
        ["standard"] => Ok(DomainSpec::standard_annulus()),
        ["plane"] => Ok(DomainSpec::plane()),
        ["annulus", rest @ ..] if rest.len() == 2 => {
            let v = nums(rest)?;
            DomainSpec::annulus(v[0], v[1])
        }
        ["disk", rest @ ..] if rest.len() == 1 => DomainSpec::disk(nums(rest)?[0]),
        ["rectangle", rest @ ..] if rest.len() == 4 => {
            let v = nums(rest)?;
            DomainSpec::rectangle((v[0], v[1]), (v[2], v[3]))
        }
        _ => Err(Error::InvalidParams(format!("unrecognised domain `{text}`"))),
    }
}

/// `a,b,c,d` as complex literals.
pub fn parse_mobius(text: &str) -> Result<Mobius> {
    let parts: Vec<Complex64> = text.split(',').map(parse_complex).collect::<Result<_>>()?;
    match parts.as_slice() {
        [a, b, c, d] => Mobius::new(*a, *b, *c, *d),
        _ => Err(Error::InvalidParams(format!("mobius `{text}` needs four coefficients a,b,c,d"))),
    }
}

/// Cauchy–Riemann residual on quasi-random domain points, relative to
/// `max(1, |f′|)`. Points where `f` cannot be evaluated are skipped.
pub fn check_holomorphic(f: &HolomorphicFn, domain: &DomainSpec) -> Result<()> {
    for w in domain.quasi_random_points(32, 0.01) {
        let step = FD_STEP * w.norm().max(1.0);
        let (Ok(r), Ok(d)) = (cauchy_riemann_residual(f, w, step), f.derivative().eval(w)) else {
            continue;
        };
        let r = r / d.norm().max(1.0);
        if r > FD_TOL {
            return Err(Error::NotHolomorphic(r));
        }
    }
    Ok(())
}
