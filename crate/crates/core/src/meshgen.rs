//! Sampling, tessellation and mesh export.
//!
//! Annuli are sampled on a `(log ρ, θ)` grid: `log ρ` inclusive of both
//! radii, `θ` half-open over a full turn (inclusive otherwise, so ranges
//! beyond `2π` show further sheets of multivalued surfaces). Disks and
//! rectangles use a square `(u, v)` grid, clipped to the disk.
//!
//! Positions are integrated incrementally along each ring (or row) from a
//! first vertex reached by the domain's default path, which fixes a
//! continuous branch for multivalued surfaces. A vertex whose incremental
//! path is blocked by a puncture falls back to a path from the anchor.
//! Vertices where evaluation fails are excluded; faces are quads over four
//! present vertices, with no faces across the `θ` seam.
//!
//! Floats are written with at most 9 significant digits, so output files
//! are byte-identical for identical inputs.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::deformation::DeformationPair;
use crate::energetics::{densities_from_state, Moduli, Route};
use crate::error::{Error, Result};
use crate::holomorphic::{ComplexPoint, DomainKind, DomainSpec, Path};
use crate::weierstrass::{Vec3, WeierstrassSurface};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vertex {
    pub w: ComplexPoint,
    pub position: Vec3,
    pub normal: Vec3,
    pub gauss: f64,
    pub w_s: f64,
    pub w_d: f64,
    pub w_b: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampledSurface {
    pub vertices: Vec<Vertex>,
    /// Quads of vertex indices, counter-clockwise in the parameter plane.
    pub faces: Vec<[usize; 4]>,
    /// `(n_radial, n_angular)` or `(n_u, n_v)`.
    pub grid_shape: (usize, usize),
    /// Row-major map from grid node to vertex index; `None` when excluded.
    pub grid_index: Vec<Option<usize>>,
}

impl SampledSurface {
    pub fn vertex_at(&self, i: usize, j: usize) -> Option<&Vertex> {
        let (n1, n2) = self.grid_shape;
        if i >= n1 || j >= n2 {
            return None;
        }
        self.grid_index[i * n2 + j].map(|k| &self.vertices[k])
    }

    pub fn excluded_count(&self) -> usize {
        self.grid_index.iter().filter(|k| k.is_none()).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub n1: usize,
    pub n2: usize,
    /// Angular range for annuli.
    pub theta_range: (f64, f64),
}

impl GridSpec {
    pub fn new(n1: usize, n2: usize) -> Result<Self> {
        if n1 < 2 || n2 < 2 {
            return Err(Error::InvalidParams(format!("grid {n1}x{n2}: both dimensions must be at least 2")));
        }
        Ok(GridSpec { n1, n2, theta_range: (0.0, TAU) })
    }

    pub fn with_theta_range(mut self, from: f64, to: f64) -> Result<Self> {
        if !(from.is_finite() && to.is_finite() && to > from) {
            return Err(Error::InvalidParams(format!("theta range [{from}, {to}] is empty")));
        }
        self.theta_range = (from, to);
        Ok(self)
    }

    fn full_turn(&self) -> bool {
        (self.theta_range.1 - self.theta_range.0 - TAU).abs() < 1e-12
    }

    fn theta(&self, j: usize) -> f64 {
        let (a, b) = self.theta_range;
        let denom = if self.full_turn() { self.n2 } else { self.n2 - 1 };
        a + (b - a) * j as f64 / denom as f64
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    /// `NxM`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("grid `{s}` must look like 32x64"));
        let (a, b) = s.trim().split_once(['x', 'X']).ok_or_else(bad)?;
        GridSpec::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
    }
}

/// Which surface of a pair supplies positions, normals and `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Source,
    Target,
}

/// Grid node in the parameter plane, with the angle unwrapped on annuli.
#[derive(Clone, Copy, Debug)]
struct Node {
    w: ComplexPoint,
    rho: f64,
    theta: f64,
}

fn nodes(domain: &DomainSpec, grid: &GridSpec) -> Result<Vec<Vec<Node>>> {
    let t = |k: usize, n: usize| k as f64 / (n - 1) as f64;
    let rows = match domain.kind {
        DomainKind::Annulus { r_min, r_max } => (0..grid.n1)
            .map(|i| {
                let rho = (r_min.ln() + t(i, grid.n1) * (r_max / r_min).ln()).exp();
                (0..grid.n2)
                    .map(|j| {
                        let theta = grid.theta(j);
                        Node { w: Complex64::from_polar(rho, theta), rho, theta }
                    })
                    .collect()
            })
            .collect(),
        DomainKind::Disk { .. } | DomainKind::Rectangle { .. } => {
            let ((u0, u1), (v0, v1)) = match domain.kind {
                DomainKind::Disk { radius } => ((-radius, radius), (-radius, radius)),
                DomainKind::Rectangle { u, v } => (u, v),
                _ => unreachable!(),
            };
            (0..grid.n1)
                .map(|i| {
                    (0..grid.n2)
                        .map(|j| {
                            let w = Complex64::new(u0 + t(i, grid.n1) * (u1 - u0), v0 + t(j, grid.n2) * (v1 - v0));
                            Node { w, rho: w.norm(), theta: w.arg() }
                        })
                        .collect()
                })
                .collect()
        }
        DomainKind::Plane => {
            return Err(Error::InvalidParams("the plane has no finite sampling window; use a disk or rectangle".into()))
        }
    };
    Ok(rows)
}

/// Paths from the anchor (or from the previous vertex) to a node.
fn candidate_paths(domain: &DomainSpec, anchor: ComplexPoint, prev: Option<&Node>, node: &Node) -> Vec<Path> {
    let annulus = matches!(domain.kind, DomainKind::Annulus { .. });
    let mut out = Vec::new();
    if let Some(p) = prev {
        out.push(if annulus { Path::arc(node.rho, p.theta, node.theta) } else { Path::line(p.w, node.w) });
    }
    if annulus {
        let ta = anchor.arg();
        let base = ta + (node.theta - ta).rem_euclid(TAU);
        for theta in [node.theta, base, base - TAU] {
            out.push(Path::radial_angular(anchor, node.rho, theta));
        }
    } else {
        out.push(Path::staircase(anchor, node.w));
        out.push(Path::staircase_v_first(anchor, node.w));
    }
    out
}

struct Fields {
    normal: Vec3,
    gauss: f64,
    w_s: f64,
    w_d: f64,
    w_b: f64,
}

fn sample_with<P, F>(
    domain: &DomainSpec,
    path_domain: &DomainSpec,
    anchor: ComplexPoint,
    origin: Vec3,
    grid: &GridSpec,
    displacement: P,
    fields: F,
) -> Result<SampledSurface>
where
    P: Fn(&Path) -> Result<Vec3> + Sync,
    F: Fn(ComplexPoint) -> Result<Fields> + Sync,
{
    let rows = nodes(domain, grid)?;
    let sampled: Vec<Vec<Option<Vertex>>> = rows
        .par_iter()
        .map(|row| {
            let mut prev: Option<(Node, Vec3)> = None;
            row.iter()
                .map(|node| {
                    if !domain.contains(node.w) || !path_domain.contains(node.w) {
                        return None;
                    }
                    let f = fields(node.w).ok()?;
                    let position = candidate_paths(path_domain, anchor, prev.as_ref().map(|p| &p.0), node)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, path)| path_domain.admits(path))
                        .find_map(|(k, path)| {
                            let base = match prev { Some(p) if k == 0 => p.1, _ => origin };
                            displacement(&path).ok().map(|d| base + d)
                        })?;
                    if !position.iter().all(|x| x.is_finite()) {
                        return None;
                    }
                    prev = Some((*node, position));
                    Some(Vertex { w: node.w, position, normal: f.normal, gauss: f.gauss, w_s: f.w_s, w_d: f.w_d, w_b: f.w_b })
                })
                .collect()
        })
        .collect();

    let (n1, n2) = (grid.n1, grid.n2);
    let mut vertices = Vec::new();
    let mut grid_index = Vec::with_capacity(n1 * n2);
    for v in sampled.into_iter().flatten() {
        grid_index.push(v.map(|v| {
            vertices.push(v);
            vertices.len() - 1
        }));
    }
    let mut faces = Vec::new();
    for i in 0..n1 - 1 {
        for j in 0..n2 - 1 {
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)].map(|(a, b)| grid_index[a * n2 + b]);
            if let [Some(a), Some(b), Some(c), Some(d)] = corners {
                faces.push([a, b, c, d]);
            }
        }
    }
    Ok(SampledSurface { vertices, faces, grid_shape: (n1, n2), grid_index })
}

/// Samples a surface over `domain`; energy fields are zero.
pub fn sample_surface(s: &WeierstrassSurface, domain: &DomainSpec, grid: &GridSpec) -> Result<SampledSurface> {
    sample_with(
        domain,
        s.domain(),
        s.basepoint(),
        s.translation(),
        grid,
        |p| s.displacement_along(p),
        |w| {
            let f = s.tangent_frame_at(w)?;
            Ok(Fields { normal: f.nu, gauss: f.gauss(), w_s: 0.0, w_d: 0.0, w_b: 0.0 })
        },
    )
}

/// Samples a pair over `domain` (in the source plane) with closed-form
/// energy densities; geometry comes from `side`.
pub fn sample_pair(
    d: &DeformationPair,
    domain: &DomainSpec,
    grid: &GridSpec,
    moduli: &Moduli,
    side: Side,
) -> Result<SampledSurface> {
    let source = d.source();
    let origin = match side {
        Side::Source => source.translation(),
        Side::Target => d.target().translation(),
    };
    sample_with(
        domain,
        source.domain(),
        d.anchor(),
        origin,
        grid,
        |p| match side {
            Side::Source => source.displacement_along(p),
            Side::Target => d.deformed_displacement_along(p),
        },
        |w| {
            let s = d.state_at(w)?;
            let e = densities_from_state(&s, moduli, Route::ClosedForm);
            let (normal, gauss) = match side {
                Side::Source => (s.frame.nu, s.frame.gauss()),
                Side::Target => (s.nu_star, s.target_frame.gauss()),
            };
            Ok(Fields { normal, gauss, w_s: e.w_s, w_d: e.w_d, w_b: e.w_b })
        },
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Obj,
    Ply,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "obj" => Ok(ExportFormat::Obj),
            "ply" => Ok(ExportFormat::Ply),
            other => Err(Error::InvalidParams(format!("unknown format `{other}` (expected obj or ply)"))),
        }
    }
}

impl ExportFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            ExportFormat::Obj => "obj",
            ExportFormat::Ply => "ply",
        }
    }
}

/// At most 9 significant digits, shortest representation of the rounded value.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let y: f64 = format!("{x:.8e}").parse().expect("formatted float parses");
    if (1e-4..1e15).contains(&y.abs()) {
        format!("{y}")
    } else {
        format!("{y:e}")
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|&x| format_float(x)).collect::<Vec<_>>().join(" ")
}

pub fn obj_string(s: &SampledSurface) -> String {
    let mut out = String::new();
    for v in &s.vertices {
        let _ = writeln!(out, "v {}", join(v.position.as_slice()));
    }
    for v in &s.vertices {
        let _ = writeln!(out, "vn {}", join(v.normal.as_slice()));
    }
    for f in &s.faces {
        let idx: Vec<String> = f.iter().map(|k| format!("{0}//{0}", k + 1)).collect();
        let _ = writeln!(out, "f {}", idx.join(" "));
    }
    out
}

/// Sidecar `index,K,Ws,Wd,Wb`; `index` is the 0-based vertex order of the OBJ file.
pub fn fields_csv_string(s: &SampledSurface) -> String {
    let mut out = String::from("index,K,Ws,Wd,Wb\n");
    for (k, v) in s.vertices.iter().enumerate() {
        let vals: Vec<String> = [v.gauss, v.w_s, v.w_d, v.w_b].iter().map(|&x| format_float(x)).collect();
        let _ = writeln!(out, "{k},{}", vals.join(","));
    }
    out
}

pub const PLY_PROPERTIES: [&str; 10] = ["x", "y", "z", "nx", "ny", "nz", "K", "Ws", "Wd", "Wb"];

pub fn ply_string(s: &SampledSurface) -> String {
    let mut out = String::from("ply\nformat ascii 1.0\n");
    let _ = writeln!(out, "element vertex {}", s.vertices.len());
    for p in PLY_PROPERTIES {
        let _ = writeln!(out, "property double {p}");
    }
    let _ = writeln!(out, "element face {}", s.faces.len());
    out.push_str("property list uchar int vertex_indices\nend_header\n");
    for v in &s.vertices {
        let row = [
            v.position.x, v.position.y, v.position.z, v.normal.x, v.normal.y, v.normal.z, v.gauss, v.w_s, v.w_d, v.w_b,
        ];
        let _ = writeln!(out, "{}", join(&row));
    }
    for f in &s.faces {
        let _ = writeln!(out, "4 {} {} {} {}", f[0], f[1], f[2], f[3]);
    }
    out
}

/// Writes `path` (and, for OBJ, the `.csv` sidecar next to it); returns the files written.
pub fn export(s: &SampledSurface, format: ExportFormat, path: &FsPath) -> Result<Vec<PathBuf>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    match format {
        ExportFormat::Obj => {
            let csv = path.with_extension("csv");
            fs::write(path, obj_string(s))?;
            fs::write(&csv, fields_csv_string(s))?;
            Ok(vec![path.to_path_buf(), csv])
        }
        ExportFormat::Ply => {
            fs::write(path, ply_string(s))?;
            Ok(vec![path.to_path_buf()])
        }
    }
}

fn parse_floats(line: &str, n: usize) -> Result<Vec<f64>> {
    let vals: Vec<f64> = line
        .split_whitespace()
        .map(|t| t.parse::<f64>().map_err(|_| Error::Parse(format!("bad number `{t}`"))))
        .collect::<Result<_>>()?;
    if vals.len() != n {
        return Err(Error::Parse(format!("expected {n} values in `{line}`")));
    }
    Ok(vals)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ObjMesh {
    pub positions: Vec<Vec3>,
    pub normals: Vec<Vec3>,
    /// 0-based vertex indices.
    pub faces: Vec<Vec<usize>>,
}

pub fn parse_obj(text: &str) -> Result<ObjMesh> {
    let mut mesh = ObjMesh::default();
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("vn ") {
            let v = parse_floats(rest, 3)?;
            mesh.normals.push(Vec3::new(v[0], v[1], v[2]));
        } else if let Some(rest) = line.strip_prefix("v ") {
            let v = parse_floats(rest, 3)?;
            mesh.positions.push(Vec3::new(v[0], v[1], v[2]));
        } else if let Some(rest) = line.strip_prefix("f ") {
            let face = rest
                .split_whitespace()
                .map(|t| {
                    let k: usize = t.split('/').next().unwrap_or("").parse().map_err(|_| Error::Parse(format!("bad face index `{t}`")))?;
                    k.checked_sub(1).ok_or_else(|| Error::Parse("face index 0".into()))
                })
                .collect::<Result<_>>()?;
            mesh.faces.push(face);
        }
    }
    Ok(mesh)
}

/// Rows of the sidecar CSV: `(index, [K, Ws, Wd, Wb])`.
pub fn parse_fields_csv(text: &str) -> Result<Vec<(usize, [f64; 4])>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some("index,K,Ws,Wd,Wb") {
        return Err(Error::Parse("missing `index,K,Ws,Wd,Wb` header".into()));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let cols: Vec<&str> = l.split(',').collect();
            if cols.len() != 5 {
                return Err(Error::Parse(format!("expected 5 columns in `{l}`")));
            }
            let index = cols[0].parse().map_err(|_| Error::Parse(format!("bad index `{}`", cols[0])))?;
            let v = parse_floats(&cols[1..].join(" "), 4)?;
            Ok((index, [v[0], v[1], v[2], v[3]]))
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PlyMesh {
    pub properties: Vec<String>,
    pub vertices: Vec<Vec<f64>>,
    pub faces: Vec<Vec<usize>>,
}

impl PlyMesh {
    /// Column of a vertex property.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.properties.iter().position(|p| p == name)?;
        Some(self.vertices.iter().map(|v| v[k]).collect())
    }
}

/// Reads the ASCII PLY files written by [`export`].
pub fn parse_ply(text: &str) -> Result<PlyMesh> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some("ply") {
        return Err(Error::Parse("not a PLY file".into()));
    }
    let mut mesh = PlyMesh::default();
    let (mut n_vertices, mut n_faces) = (0usize, 0usize);
    let mut in_vertex = false;
    for line in lines.by_ref() {
        let t: Vec<&str> = line.split_whitespace().collect();
        match t.as_slice() {
            ["end_header"] => break,
            ["format", fmt, ..] if *fmt != "ascii" => return Err(Error::Parse(format!("unsupported PLY format {fmt}"))),
            ["element", "vertex", n] => {
                n_vertices = n.parse().map_err(|_| Error::Parse("bad vertex count".into()))?;
                in_vertex = true;
            }
            ["element", "face", n] => {
                n_faces = n.parse().map_err(|_| Error::Parse("bad face count".into()))?;
                in_vertex = false;
            }
            ["property", "list", ..] => {}
            ["property", _, name] if in_vertex => mesh.properties.push(name.to_string()),
            _ => {}
        }
    }
    for _ in 0..n_vertices {
        let line = lines.next().ok_or_else(|| Error::Parse("truncated vertex list".into()))?;
        mesh.vertices.push(parse_floats(line, mesh.properties.len())?);
    }
    for _ in 0..n_faces {
        let line = lines.next().ok_or_else(|| Error::Parse("truncated face list".into()))?;
        let mut t = line.split_whitespace().map(|x| x.parse::<usize>());
        let n = t.next().and_then(|x| x.ok()).ok_or_else(|| Error::Parse("bad face".into()))?;
        let face: Vec<usize> = t.collect::<std::result::Result<_, _>>().map_err(|_| Error::Parse("bad face".into()))?;
        if face.len() != n {
            return Err(Error::Parse(format!("face lists {} of {n} indices", face.len())));
        }
        mesh.faces.push(face);
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{goursat_kappa, soft_elasticity};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn annulus_counts() {
        let s = WeierstrassSurface::bour(1, DomainSpec::standard_annulus()).unwrap();
        let m = sample_surface(&s, s.domain(), &GridSpec::new(3, 4).unwrap()).unwrap();
        assert_eq!(m.vertices.len(), 12);
        assert_eq!(m.faces.len(), 2 * 3);
        let obj = obj_string(&m);
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 12);
        assert_eq!(obj.lines().filter(|l| l.starts_with("vn ")).count(), 12);
    }

    #[test]
    fn enneper_disk_origin() {
        let s = WeierstrassSurface::enneper(DomainSpec::disk(1.0).unwrap()).unwrap();
        let m = sample_surface(&s, s.domain(), &GridSpec::new(5, 5).unwrap()).unwrap();
        assert_eq!(m.vertices.len(), 13);
        let o = m.vertex_at(2, 2).unwrap();
        assert_eq!(o.w, c(0.0, 0.0));
        assert!(o.position.norm() < 1e-15);
        assert!((o.normal - Vec3::new(0.0, 0.0, -1.0)).norm() < 1e-15);
        for f in &m.faces {
            assert!(f.iter().all(|&k| k < m.vertices.len()));
        }
    }

    #[test]
    fn incremental_positions_match_direct_integration() {
        let s = WeierstrassSurface::enneper(DomainSpec::standard_annulus()).unwrap();
        let m = sample_surface(&s, s.domain(), &GridSpec::new(5, 12).unwrap()).unwrap();
        for v in &m.vertices {
            assert!((v.position - s.position_at(v.w).unwrap()).norm() < 1e-8);
            assert!((v.normal.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bour1_rings_pick_up_the_period_past_the_seam() {
        // F = 1/w: one turn adds Re(2πi Res Ψ) = (0, −π, 0).
        let s = WeierstrassSurface::bour(1, DomainSpec::standard_annulus()).unwrap();
        let grid = GridSpec::new(3, 65).unwrap().with_theta_range(0.0, 2.0 * TAU).unwrap();
        let m = sample_surface(&s, s.domain(), &grid).unwrap();
        let period = Vec3::new(0.0, -std::f64::consts::PI, 0.0);
        for i in 0..3 {
            for j in 0..33 {
                let (a, b) = (m.vertex_at(i, j).unwrap(), m.vertex_at(i, j + 32).unwrap());
                assert!((b.position - a.position - period).norm() < 1e-8, "{i} {j}");
            }
        }
    }

    #[test]
    fn goursat_ring_drilling_density() {
        let pair = goursat_kappa(2.0).unwrap();
        let m = sample_pair(&pair, pair.source().domain(), &GridSpec::new(5, 16).unwrap(), &Moduli::unit(), Side::Source)
            .unwrap();
        for j in 0..16 {
            let v = m.vertex_at(2, j).unwrap();
            assert!((v.w.norm() - 1.0).abs() < 1e-15);
            assert!((v.w_d - 36.0 / 25.0).abs() < 1e-9);
        }
    }

    #[test]
    fn punctures_are_excluded_from_faces() {
        let pair = soft_elasticity(c(1.0, 0.0), c(-1.0, 0.0), 0.0).unwrap();
        let m = sample_pair(&pair, pair.source().domain(), &GridSpec::new(5, 16).unwrap(), &Moduli::unit(), Side::Target)
            .unwrap();
        assert!(m.vertex_at(2, 0).is_none());
        assert_eq!(m.excluded_count(), 1);
        assert_eq!(m.vertices.len(), 79);
        assert_eq!(m.faces.len(), 4 * 15 - 2);
        for v in &m.vertices {
            assert!((v.normal.norm() - 1.0).abs() < 1e-8);
            assert!(v.w_s.abs() < 1e-10 && v.w_d < 1e-10 && v.w_b < 1e-10);
        }
    }

    #[test]
    fn target_side_matches_deformed_positions() {
        let pair = goursat_kappa(2.0).unwrap();
        let m = sample_pair(&pair, pair.source().domain(), &GridSpec::new(4, 8).unwrap(), &Moduli::unit(), Side::Target)
            .unwrap();
        for v in &m.vertices {
            assert!((v.position - pair.deformed_position_at(v.w).unwrap()).norm() < 1e-8 * v.position.norm().max(1.0));
        }
    }

    #[test]
    fn float_format() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(0.1 + 0.2), "0.3");
        assert_eq!(format_float(1.0 / 3.0), "0.333333333");
        assert_eq!(format_float(1296.0 / 625.0), "2.0736");
        assert_eq!(format_float(1e-20), "1e-20");
        assert_eq!(format_float(-2.5e-7), "-2.5e-7");
    }

    #[test]
    fn ply_round_trip_and_determinism() {
        let pair = goursat_kappa(2.0).unwrap();
        let m = sample_pair(&pair, pair.source().domain(), &GridSpec::new(6, 10).unwrap(), &Moduli::unit(), Side::Source)
            .unwrap();
        let text = ply_string(&m);
        assert!(text.contains(
            "property double x\nproperty double y\nproperty double z\nproperty double nx\nproperty double ny\nproperty double nz\nproperty double K\nproperty double Ws\nproperty double Wd\nproperty double Wb\n"
        ));
        let back = parse_ply(&text).unwrap();
        assert_eq!(back.properties, PLY_PROPERTIES);
        let k = back.column("K").unwrap();
        for (v, k) in m.vertices.iter().zip(&k) {
            assert!((v.gauss - k).abs() <= 1e-6 * v.gauss.abs());
        }
        assert_eq!(back.faces.len(), m.faces.len());
        assert_eq!(ply_string(&m), text);

        let again = sample_pair(&pair, pair.source().domain(), &GridSpec::new(6, 10).unwrap(), &Moduli::unit(), Side::Source)
            .unwrap();
        assert_eq!(ply_string(&again), text);
    }

    #[test]
    fn obj_round_trip() {
        let s = WeierstrassSurface::bour(3, DomainSpec::standard_annulus()).unwrap();
        let m = sample_surface(&s, s.domain(), &GridSpec::new(4, 6).unwrap()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let written = export(&m, ExportFormat::Obj, &dir.path().join("bour3.obj")).unwrap();
        assert_eq!(written.len(), 2);
        let obj = parse_obj(&fs::read_to_string(&written[0]).unwrap()).unwrap();
        assert_eq!(obj.positions.len(), m.vertices.len());
        for (v, p) in m.vertices.iter().zip(&obj.positions) {
            assert!((v.position - p).norm() <= 1e-6 * v.position.norm().max(1.0));
        }
        let fields = parse_fields_csv(&fs::read_to_string(&written[1]).unwrap()).unwrap();
        assert_eq!(fields.len(), m.vertices.len());
        assert!(fields.iter().enumerate().all(|(k, (i, _))| k == *i));
        assert_eq!(obj.faces.len(), m.faces.len());
    }

    #[test]
    fn grid_parsing() {
        let g: GridSpec = "32x64".parse().unwrap();
        assert_eq!((g.n1, g.n2), (32, 64));
        assert!("1x4".parse::<GridSpec>().is_err());
        assert!("32".parse::<GridSpec>().is_err());
        let plane = WeierstrassSurface::enneper(DomainSpec::plane()).unwrap();
        assert!(sample_surface(&plane, plane.domain(), &g).is_err());
    }
}
