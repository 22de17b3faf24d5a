//! Tensor-grid sampling of surface families into triangle meshes with
//! per-vertex scalar fields, and deterministic OBJ / PLY / CSV export.
//!
//! Vertices follow grid order (radial index outer, angular index inner).
//! Each grid quad splits along its `(i, j) -> (i+1, j+1)` diagonal, so the
//! triangulation is a pure function of the grid shape. A theta-wrapped grid
//! shares its seam vertices: there is no duplicate closing column, and the
//! last column of faces connects back to column 0.
//!
//! Degenerate parameter points (singular metric) keep their geometry but
//! get NaN field values and a per-vertex flag; the CSV export then carries
//! a `degenerate` sidecar column.

use crate::diffgeo;
use crate::error::{GeomError, Result};
use crate::surfaces::SurfaceSpec;
use crate::vec3::Vec3;
use std::io::{self, Write};

/// Scalar fields a grid sample can carry.
pub const FIELD_NAMES: [&str; 9] = ["E", "F", "G", "detI", "L", "M", "N", "H", "K"];

/// Tensor grid over the parameter rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub nr: usize,
    pub ntheta: usize,
    pub r_range: (f64, f64),
    pub theta_range: (f64, f64),
    /// When set, the theta range is treated as one full period: the grid
    /// places `ntheta` distinct columns over it and the faces wrap around.
    pub wrap: bool,
}

impl GridSpec {
    pub fn vertex_count(&self) -> usize {
        self.nr * self.ntheta
    }

    pub fn face_count(&self) -> usize {
        if self.wrap {
            2 * (self.nr - 1) * self.ntheta
        } else {
            2 * (self.nr - 1) * (self.ntheta - 1)
        }
    }

    fn validate(&self) -> Result<()> {
        if self.nr < 2 || self.ntheta < 2 {
            return Err(GeomError::Domain(format!(
                "grid needs nr >= 2 and ntheta >= 2, got {}x{}",
                self.nr, self.ntheta
            )));
        }
        let (r0, r1) = self.r_range;
        if !(r0.is_finite() && r0 > 0.0 && r1.is_finite() && r1 > r0) {
            return Err(GeomError::Domain(format!(
                "r range ({r0}, {r1}) must satisfy 0 < r0 < r1"
            )));
        }
        if !(self.theta_range.1.is_finite() && self.theta_range.1 > self.theta_range.0) {
            return Err(GeomError::Domain(
                "theta range must be increasing".to_string(),
            ));
        }
        Ok(())
    }

    pub fn r_at(&self, i: usize) -> f64 {
        let (r0, r1) = self.r_range;
        r0 + (r1 - r0) * i as f64 / (self.nr - 1) as f64
    }

    pub fn theta_at(&self, j: usize) -> f64 {
        let (t0, t1) = self.theta_range;
        if self.wrap {
            t0 + (t1 - t0) * j as f64 / self.ntheta as f64
        } else {
            t0 + (t1 - t0) * j as f64 / (self.ntheta - 1) as f64
        }
    }
}

/// Sampled mesh: positions, optional unit normals, named per-vertex scalar
/// fields, triangle faces and the generating grid.
#[derive(Debug, Clone)]
pub struct MeshBuffer {
    pub vertices: Vec<Vec3>,
    /// Present when requested; degenerate vertices hold a zero placeholder.
    pub normals: Option<Vec<Vec3>>,
    /// `(name, values)` in request order; degenerate vertices hold NaN.
    pub fields: Vec<(String, Vec<f64>)>,
    pub faces: Vec<[usize; 3]>,
    pub grid: GridSpec,
    /// Parameter values per vertex, in grid order.
    pub params: Vec<(f64, f64)>,
    /// Per-vertex degeneracy flag.
    pub degenerate: Vec<bool>,
}

impl MeshBuffer {
    /// An empty mesh (no vertices, no faces); exports as a valid empty file.
    pub fn empty() -> Self {
        MeshBuffer {
            vertices: Vec::new(),
            normals: None,
            fields: Vec::new(),
            faces: Vec::new(),
            grid: GridSpec {
                nr: 0,
                ntheta: 0,
                r_range: (0.0, 0.0),
                theta_range: (0.0, 0.0),
                wrap: false,
            },
            params: Vec::new(),
            degenerate: Vec::new(),
        }
    }
}

fn field_index(name: &str) -> Result<usize> {
    FIELD_NAMES.iter().position(|&f| f == name).ok_or_else(|| {
        GeomError::Domain(format!(
            "unknown field '{name}', expected one of {FIELD_NAMES:?}"
        ))
    })
}

/// Samples the surface over the grid. Requested scalar fields are computed
/// through the analytic jet; cells where the metric degenerates keep their
/// geometry, receive NaN fields (and a zero normal placeholder) and are
/// flagged.
pub fn sample_grid(
    spec: &SurfaceSpec,
    grid: GridSpec,
    with_fields: &[&str],
    with_normals: bool,
) -> Result<MeshBuffer> {
    grid.validate()?;
    for name in with_fields {
        field_index(name)?;
    }
    let nv = grid.vertex_count();
    let mut vertices = Vec::with_capacity(nv);
    let mut params = Vec::with_capacity(nv);
    let mut degenerate = vec![false; nv];
    let mut normals = if with_normals {
        Some(Vec::with_capacity(nv))
    } else {
        None
    };
    let mut fields: Vec<(String, Vec<f64>)> = with_fields
        .iter()
        .map(|&n| (n.to_string(), Vec::with_capacity(nv)))
        .collect();

    let needs_jet = with_normals || !with_fields.is_empty();
    for i in 0..grid.nr {
        let r = grid.r_at(i);
        for j in 0..grid.ntheta {
            let theta = grid.theta_at(j);
            let idx = i * grid.ntheta + j;
            params.push((r, theta));
            if !needs_jet {
                vertices.push(spec.eval(r, theta)?);
                continue;
            }
            let jet = spec.jet(r, theta)?;
            vertices.push(jet.p);
            let (e, f, g) = diffgeo::first_form_from_jet(&jet);
            let det = e * g - f * f;
            let second = diffgeo::gauss_map(&jet).ok().map(|n| {
                (
                    n,
                    n.dot(jet.p_rr),
                    n.dot(jet.p_r_theta),
                    n.dot(jet.p_theta_theta),
                )
            });
            if second.is_none() {
                degenerate[idx] = true;
            }
            if let Some(ns) = normals.as_mut() {
                ns.push(second.map(|(n, _, _, _)| n).unwrap_or(Vec3::ZERO));
            }
            for (name, values) in fields.iter_mut() {
                let v = match (name.as_str(), &second) {
                    ("E", _) => e,
                    ("F", _) => f,
                    ("G", _) => g,
                    ("detI", _) => det,
                    (_, None) => f64::NAN,
                    ("L", Some((_, l, _, _))) => *l,
                    ("M", Some((_, _, m, _))) => *m,
                    ("N", Some((_, _, _, n))) => *n,
                    ("H", Some((_, l, m, n))) => (e * n - 2.0 * f * m + g * l) / (2.0 * det),
                    ("K", Some((_, l, m, n))) => (l * n - m * m) / det,
                    _ => unreachable!("validated field name"),
                };
                values.push(v);
            }
        }
    }

    let mut faces = Vec::with_capacity(grid.face_count());
    let jmax = if grid.wrap {
        grid.ntheta
    } else {
        grid.ntheta - 1
    };
    for i in 0..grid.nr - 1 {
        for j in 0..jmax {
            let jn = (j + 1) % grid.ntheta;
            let v00 = i * grid.ntheta + j;
            let v10 = (i + 1) * grid.ntheta + j;
            let v11 = (i + 1) * grid.ntheta + jn;
            let v01 = i * grid.ntheta + jn;
            faces.push([v00, v10, v11]);
            faces.push([v00, v11, v01]);
        }
    }

    Ok(MeshBuffer {
        vertices,
        normals,
        fields,
        faces,
        grid,
        params,
        degenerate,
    })
}

/// 17 significant digits: round-trips any f64 exactly.
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_csv(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v}")
    }
}

/// Wavefront OBJ subset: `v` lines, optional `vn` lines, 1-based `f` lines.
pub fn write_obj<W: Write>(mesh: &MeshBuffer, mut w: W) -> io::Result<()> {
    for v in &mesh.vertices {
        writeln!(w, "v {} {} {}", fmt17(v.x), fmt17(v.y), fmt17(v.z))?;
    }
    if let Some(normals) = &mesh.normals {
        for n in normals {
            writeln!(w, "vn {} {} {}", fmt17(n.x), fmt17(n.y), fmt17(n.z))?;
        }
        for f in &mesh.faces {
            writeln!(
                w,
                "f {}//{} {}//{} {}//{}",
                f[0] + 1,
                f[0] + 1,
                f[1] + 1,
                f[1] + 1,
                f[2] + 1,
                f[2] + 1
            )?;
        }
    } else {
        for f in &mesh.faces {
            writeln!(w, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
        }
    }
    Ok(())
}

/// Per-vertex CSV: `r,theta,x,y,z` then the field columns in mesh order.
/// When any vertex is flagged degenerate a trailing `degenerate` column is
/// appended.
pub fn write_fields_csv<W: Write>(mesh: &MeshBuffer, mut w: W) -> io::Result<()> {
    let any_degenerate = mesh.degenerate.iter().any(|&d| d);
    let mut header = String::from("r,theta,x,y,z");
    for (name, _) in &mesh.fields {
        header.push(',');
        header.push_str(name);
    }
    if any_degenerate {
        header.push_str(",degenerate");
    }
    writeln!(w, "{header}")?;
    for (idx, v) in mesh.vertices.iter().enumerate() {
        let (r, theta) = mesh.params[idx];
        let mut line = format!(
            "{},{},{},{},{}",
            fmt_csv(r),
            fmt_csv(theta),
            fmt_csv(v.x),
            fmt_csv(v.y),
            fmt_csv(v.z)
        );
        for (_, values) in &mesh.fields {
            line.push(',');
            line.push_str(&fmt_csv(values[idx]));
        }
        if any_degenerate {
            line.push(',');
            line.push_str(if mesh.degenerate[idx] { "1" } else { "0" });
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Binary little-endian PLY: positions (doubles), optional normals, faces.
pub fn write_ply<W: Write>(mesh: &MeshBuffer, mut w: W) -> io::Result<()> {
    let has_normals = mesh.normals.is_some();
    write!(w, "ply\nformat binary_little_endian 1.0\n")?;
    writeln!(w, "element vertex {}", mesh.vertices.len())?;
    write!(
        w,
        "property double x\nproperty double y\nproperty double z\n"
    )?;
    if has_normals {
        write!(
            w,
            "property double nx\nproperty double ny\nproperty double nz\n"
        )?;
    }
    writeln!(w, "element face {}", mesh.faces.len())?;
    write!(w, "property list uchar uint32 vertex_indices\nend_header\n")?;
    for (idx, v) in mesh.vertices.iter().enumerate() {
        for c in [v.x, v.y, v.z] {
            w.write_all(&c.to_le_bytes())?;
        }
        if let Some(normals) = &mesh.normals {
            let n = normals[idx];
            for c in [n.x, n.y, n.z] {
                w.write_all(&c.to_le_bytes())?;
            }
        }
    }
    for f in &mesh.faces {
        w.write_all(&[3u8])?;
        for &i in f {
            w.write_all(&(i as u32).to_le_bytes())?;
        }
    }
    Ok(())
}

/// Stock mesh configurations mirroring the CLI presets.
pub mod presets {
    use super::GridSpec;
    use crate::error::Result;
    use crate::surfaces::SurfaceSpec;
    use std::f64::consts::PI;

    pub fn figure_grid(nr: usize, ntheta: usize) -> GridSpec {
        GridSpec {
            nr,
            ntheta,
            r_range: (0.2, 1.5),
            theta_range: (0.0, 2.0 * PI),
            wrap: true,
        }
    }

    /// Pitched value-3 surface with the three-lobed height (pitch defaults
    /// to 1; the published figure does not state its pitch).
    pub fn pitched_value3_surface() -> Result<SurfaceSpec> {
        SurfaceSpec::bour_minimal_pitched(3.0, 1.0)
    }

    /// The value-3 Bour minimal surface (pitch 0).
    pub fn bour_minimal_value3() -> Result<SurfaceSpec> {
        SurfaceSpec::bour_minimal(3.0)
    }
}
