use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::surface::BodySurface;
use crate::Vec3;

use super::fmt_sig;

/// A triangle mesh with 0-based face indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<Vec3>,
    pub faces: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeshSummary {
    pub vertices: usize,
    pub faces: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("OBJ line {line}: {message}")]
pub struct ObjError {
    pub line: usize,
    pub message: String,
}

/// Triangulates a sampled body.
///
/// The two pole columns `i = 0` and `i = Nφ/2` collapse to one vertex each,
/// the φ-seam is closed by wrapping `i`, and the strip after the last θ row
/// closes onto row 0 traversed as `i ↦ Nφ − i`. Quads next to a pole become
/// single triangles. This gives `2 + Nθ(Nφ − 2)` vertices and `Nθ(2Nφ − 4)`
/// faces. Faces on the `φ > π` half are reversed because the parametrization
/// flips orientation there.
pub fn mesh(body: &BodySurface) -> Mesh {
    let (np, nt) = (body.nphi, body.ntheta);
    let half = np / 2;
    let mut vertices = Vec::with_capacity(2 + nt * (np - 2));
    vertices.push(body.point(0, 0));
    vertices.push(body.point(half, 0));
    let mut index = vec![usize::MAX; np * nt];
    for j in 0..nt {
        for i in 0..np {
            if i == 0 || i == half {
                continue;
            }
            index[j * np + i] = vertices.len();
            vertices.push(body.point(i, j));
        }
    }
    let vid = |i: usize, j: usize| -> usize {
        let (i, j) = if j == nt { ((np - i) % np, 0) } else { (i % np, j) };
        if i == 0 {
            0
        } else if i == half {
            1
        } else {
            index[j * np + i]
        }
    };
    let mut faces = Vec::with_capacity(nt * (2 * np - 4));
    for j in 0..nt {
        for i in 0..np {
            let (a, b, c, d) = (vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1));
            let mut tris: Vec<[usize; 3]> = if a == d {
                vec![[a, b, c]]
            } else if b == c {
                vec![[a, b, d]]
            } else {
                vec![[a, b, c], [a, c, d]]
            };
            if i >= half {
                for t in &mut tris {
                    t.swap(1, 2);
                }
            }
            faces.extend(tris);
        }
    }
    Mesh { vertices, faces }
}

impl Mesh {
    pub fn summary(&self) -> MeshSummary {
        MeshSummary {
            vertices: self.vertices.len(),
            faces: self.faces.len(),
        }
    }

    pub fn edge_count(&self) -> usize {
        let mut edges: Vec<(usize, usize)> = self
            .faces
            .iter()
            .flat_map(|f| [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])])
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    /// Every directed edge appears exactly once and its reverse exactly once.
    pub fn is_watertight(&self) -> bool {
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for f in &self.faces {
            for e in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                *directed.entry(e).or_default() += 1;
            }
        }
        directed
            .iter()
            .all(|(&(a, b), &n)| n == 1 && directed.get(&(b, a)) == Some(&1))
    }

    pub fn degenerate_faces(&self) -> usize {
        self.faces
            .iter()
            .filter(|f| f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
            .count()
    }

    /// Signed enclosed volume; positive for outward-facing triangles.
    pub fn signed_volume(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| {
                let (a, b, c) = (self.vertices[f[0]], self.vertices[f[1]], self.vertices[f[2]]);
                a.dot(&b.cross(&c)) / 6.0
            })
            .sum()
    }

    /// Wavefront OBJ text with `v` and `f` records only.
    pub fn to_obj(&self) -> String {
        let mut s = String::with_capacity(self.vertices.len() * 40 + self.faces.len() * 24);
        for v in &self.vertices {
            let _ = writeln!(s, "v {} {} {}", fmt_sig(v.x), fmt_sig(v.y), fmt_sig(v.z));
        }
        for f in &self.faces {
            let _ = writeln!(s, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
        }
        s
    }
}

pub fn export_obj(body: &BodySurface, path: &Path) -> std::io::Result<MeshSummary> {
    let m = mesh(body);
    std::fs::write(path, m.to_obj())?;
    Ok(m.summary())
}

fn parse_index(tok: &str, count: usize, line: usize) -> Result<usize, ObjError> {
    let head = tok.split('/').next().unwrap_or("");
    let raw: i64 = head.parse().map_err(|_| ObjError {
        line,
        message: format!("bad face index {tok:?}"),
    })?;
    let idx = if raw > 0 {
        raw - 1
    } else if raw < 0 {
        count as i64 + raw
    } else {
        -1
    };
    if idx < 0 || idx >= count as i64 {
        return Err(ObjError {
            line,
            message: format!("face index {raw} out of range (have {count} vertices)"),
        });
    }
    Ok(idx as usize)
}

/// Reads `v` and `f` records; other records are ignored. Polygons with more
/// than three corners are fan-triangulated.
pub fn parse_obj(text: &str) -> Result<Mesh, ObjError> {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = body.split_whitespace();
        match toks.next() {
            Some("v") => {
                let coords: Vec<f64> = toks
                    .map(|t| t.parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| ObjError {
                        line,
                        message: format!("bad coordinate: {e}"),
                    })?;
                if coords.len() < 3 || coords.len() > 4 || coords.iter().any(|c| !c.is_finite()) {
                    return Err(ObjError {
                        line,
                        message: "vertex needs three finite coordinates".to_string(),
                    });
                }
                vertices.push(Vec3::new(coords[0], coords[1], coords[2]));
            }
            Some("f") => {
                let idx: Vec<usize> = toks
                    .map(|t| parse_index(t, vertices.len(), line))
                    .collect::<Result<_, _>>()?;
                if idx.len() < 3 {
                    return Err(ObjError {
                        line,
                        message: "face needs at least three vertices".to_string(),
                    });
                }
                for k in 1..idx.len() - 1 {
                    faces.push([idx[0], idx[k], idx[k + 1]]);
                }
            }
            _ => {}
        }
    }
    Ok(Mesh { vertices, faces })
}
