//! Binary STL surface of revolution and a watertightness checker.

use std::collections::HashMap;

use crate::scalar::{from_usize, to_f64, Scalar};

use super::profile::{GeometryError, HullProfile};

const HEADER_LEN: usize = 80;
const TRIANGLE_LEN: usize = 50;
const HEADER_TEXT: &str = "hull-bo axisymmetric hull, x axis, meters";

type Vertex = [f32; 3];

/// Meshes the profile as a closed surface of revolution about the x axis.
///
/// `n_axial` is the number of axial intervals: rings sit at the interior
/// stations `k / n_axial`, the nose and tail tips are single points joined to
/// the first and last ring by triangle fans. Triangles that collapse (zero
/// radius rings) are dropped.
pub fn export_stl<T: Scalar>(
    p: &HullProfile<T>,
    n_axial: usize,
    n_circ: usize,
) -> Result<Vec<u8>, GeometryError> {
    if n_axial < 2 {
        return Err(GeometryError::TooFewSamples {
            what: "axial intervals",
            min: 2,
            got: n_axial,
        });
    }
    if n_circ < 3 {
        return Err(GeometryError::TooFewSamples {
            what: "circumferential segments",
            min: 3,
            got: n_circ,
        });
    }

    let length = to_f64(p.hull_length());
    let rings: Vec<Vec<Vertex>> = (1..n_axial)
        .map(|k| {
            let x = p.hull_length() * from_usize::<T>(k) / from_usize::<T>(n_axial);
            let r = to_f64(p.radius_and_slope(x).0);
            let x = to_f64(x);
            (0..n_circ)
                .map(|j| {
                    let theta = std::f64::consts::TAU * j as f64 / n_circ as f64;
                    vertex(x, r * theta.cos(), r * theta.sin())
                })
                .collect()
        })
        .collect();
    let nose = vertex(0.0, 0.0, 0.0);
    let tail = vertex(length, 0.0, 0.0);

    let mut tris: Vec<[Vertex; 3]> = Vec::with_capacity(2 * n_circ * n_axial);
    let first = &rings[0];
    for j in 0..n_circ {
        tris.push([nose, first[(j + 1) % n_circ], first[j]]);
    }
    for band in rings.windows(2) {
        let (a, b) = (&band[0], &band[1]);
        for j in 0..n_circ {
            let jn = (j + 1) % n_circ;
            tris.push([a[j], a[jn], b[j]]);
            tris.push([a[jn], b[jn], b[j]]);
        }
    }
    let last = rings.last().expect("at least one ring");
    for j in 0..n_circ {
        tris.push([tail, last[j], last[(j + 1) % n_circ]]);
    }
    tris.retain(|t| t[0] != t[1] && t[1] != t[2] && t[0] != t[2]);

    Ok(write_binary_stl(&tris))
}

fn vertex(x: f64, y: f64, z: f64) -> Vertex {
    // +0.0 folds negative zero so coincident points compare equal
    [x as f32 + 0.0, y as f32 + 0.0, z as f32 + 0.0]
}

fn facet_normal(t: &[Vertex; 3]) -> [f32; 3] {
    let d = |a: Vertex, b: Vertex| {
        [
            b[0] as f64 - a[0] as f64,
            b[1] as f64 - a[1] as f64,
            b[2] as f64 - a[2] as f64,
        ]
    };
    let u = d(t[0], t[1]);
    let v = d(t[0], t[2]);
    let n = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if len > 0.0 {
        n.map(|c| (c / len) as f32)
    } else {
        [0.0; 3]
    }
}

fn write_binary_stl(tris: &[[Vertex; 3]]) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 4 + TRIANGLE_LEN * tris.len());
    let mut header = [b' '; HEADER_LEN];
    header[..HEADER_TEXT.len()].copy_from_slice(HEADER_TEXT.as_bytes());
    out.extend_from_slice(&header);
    out.extend_from_slice(&(tris.len() as u32).to_le_bytes());
    for t in tris {
        for c in facet_normal(t) {
            out.extend_from_slice(&c.to_le_bytes());
        }
        for v in t {
            for c in v {
                out.extend_from_slice(&c.to_le_bytes());
            }
        }
        out.extend_from_slice(&0u16.to_le_bytes());
    }
    out
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum StlError {
    #[error("truncated STL: {0} bytes")]
    Truncated(usize),
    #[error("triangle count field says {declared}, file holds {actual}")]
    CountMismatch { declared: u32, actual: usize },
    #[error("{0} degenerate triangles")]
    Degenerate(usize),
    #[error("{0} edges not shared by exactly two oppositely oriented triangles")]
    OpenEdges(usize),
}

/// Decoded binary STL: header and per-triangle `(normal, vertices)`.
#[derive(Clone, Debug)]
pub struct StlMesh {
    pub header: [u8; HEADER_LEN],
    pub triangles: Vec<([f32; 3], [Vertex; 3])>,
}

pub fn parse_binary_stl(bytes: &[u8]) -> Result<StlMesh, StlError> {
    if bytes.len() < HEADER_LEN + 4 {
        return Err(StlError::Truncated(bytes.len()));
    }
    let mut header = [0u8; HEADER_LEN];
    header.copy_from_slice(&bytes[..HEADER_LEN]);
    let declared = u32::from_le_bytes(bytes[HEADER_LEN..HEADER_LEN + 4].try_into().unwrap());
    let body = &bytes[HEADER_LEN + 4..];
    if !body.len().is_multiple_of(TRIANGLE_LEN) {
        return Err(StlError::Truncated(bytes.len()));
    }
    let actual = body.len() / TRIANGLE_LEN;
    if actual != declared as usize {
        return Err(StlError::CountMismatch { declared, actual });
    }
    let f = |c: &[u8], i: usize| f32::from_le_bytes(c[4 * i..4 * i + 4].try_into().unwrap());
    let triangles = body
        .chunks_exact(TRIANGLE_LEN)
        .map(|c| {
            let normal = [f(c, 0), f(c, 1), f(c, 2)];
            let v = |k: usize| [f(c, 3 + 3 * k), f(c, 4 + 3 * k), f(c, 5 + 3 * k)];
            (normal, [v(0), v(1), v(2)])
        })
        .collect();
    Ok(StlMesh { header, triangles })
}

/// Counts reported by a successful watertightness check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeshStats {
    pub triangles: usize,
    pub vertices: usize,
    pub edges: usize,
}

/// Checks that, after welding identical vertices, every directed edge occurs
/// exactly once and its reverse exactly once (closed, consistently oriented).
pub fn check_watertight(bytes: &[u8]) -> Result<MeshStats, StlError> {
    let mesh = parse_binary_stl(bytes)?;
    let mut ids: HashMap<[u32; 3], usize> = HashMap::new();
    let mut id_of = |v: Vertex| {
        let key = v.map(|c| (c + 0.0).to_bits());
        let next = ids.len();
        *ids.entry(key).or_insert(next)
    };
    let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
    let mut degenerate = 0;
    for (_, t) in &mesh.triangles {
        let [a, b, c] = t.map(&mut id_of);
        if a == b || b == c || a == c {
            degenerate += 1;
            continue;
        }
        for e in [(a, b), (b, c), (c, a)] {
            *directed.entry(e).or_default() += 1;
        }
    }
    if degenerate > 0 {
        return Err(StlError::Degenerate(degenerate));
    }
    let open = directed
        .iter()
        .filter(|(&(a, b), &n)| n != 1 || directed.get(&(b, a)) != Some(&1))
        .count();
    if open > 0 {
        return Err(StlError::OpenEdges(open));
    }
    Ok(MeshStats {
        triangles: mesh.triangles.len(),
        vertices: ids.len(),
        edges: directed.len() / 2,
    })
}
