//! Spherical point configurations and separation-side diagnostics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom;

/// An ordered list of `N >= 2` unit vectors on `S^dim ⊂ R^{dim+1}`.
///
/// Constructors renormalize points whose norm is within 1e-6 of 1 and reject
/// anything farther off the sphere, so serialized configurations survive
/// decimal rounding but genuinely bad input fails loudly. After
/// construction every point has norm within 1e-12 of 1 and all points are
/// pairwise distinct (chordal distance > 1e-9).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Configuration {
    dim: usize,
    points: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct ConfigurationWire {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let wire = ConfigurationWire::deserialize(deserializer)?;
        Configuration::new(wire.dim, wire.points).map_err(serde::de::Error::custom)
    }
}

impl Configuration {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if dim < 1 {
            return Err(Error::InvalidParam("dim must be >= 1".into()));
        }
        if points.len() < 2 {
            return Err(Error::TooFewPoints(points.len()));
        }
        let mut normed = Vec::with_capacity(points.len());
        for (index, p) in points.into_iter().enumerate() {
            if p.len() != dim + 1 {
                return Err(Error::BadPointLength {
                    index,
                    got: p.len(),
                    expected: dim + 1,
                    dim,
                });
            }
            let n = geom::norm(&p);
            if (n - 1.0).abs() > 1e-6 {
                return Err(Error::NotOnSphere { index, norm: n });
            }
            // skip the division when already inside the invariant, so
            // construct -> serialize -> construct is bit-stable
            if (n - 1.0).abs() > 1e-12 {
                normed.push(geom::scale(&p, 1.0 / n));
            } else {
                normed.push(p);
            }
        }
        for i in 0..normed.len() {
            for j in i + 1..normed.len() {
                if geom::dist(&normed[i], &normed[j]) <= 1e-9 {
                    return Err(Error::CoincidentPoints { i, j });
                }
            }
        }
        Ok(Self { dim, points: normed })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Ambient dimension `dim + 1`.
    pub fn ambient(&self) -> usize {
        self.dim + 1
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configuration serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidParam(format!("configuration JSON: {e}")))
    }

    /// SHA-256 of the canonical JSON form, as lowercase hex.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(self.to_json().as_bytes());
        let out = h.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Pairs of points realizing the minimum distance `delta`, up to a relative
/// tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct ContactGraph {
    pub delta: f64,
    /// Index pairs `(i, j)` with `i < j` and `| |x_i - x_j| - delta | <= tolerance * delta`.
    pub edges: Vec<(usize, usize)>,
    pub tolerance: f64,
}

impl ContactGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degree of every vertex.
    pub fn degrees(&self, n: usize) -> Vec<usize> {
        let mut deg = vec![0usize; n];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }
}

/// Separation distance: the minimum pairwise chordal distance. Exact O(N²)
/// scan, deterministic.
pub fn separation(config: &Configuration) -> f64 {
    let pts = config.points();
    let mut best = f64::INFINITY;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = geom::dist(&pts[i], &pts[j]);
            if d < best {
                best = d;
            }
        }
    }
    best
}

pub fn contact_graph(config: &Configuration, rel_tol: f64) -> Result<ContactGraph> {
    if !(0.0..=0.01).contains(&rel_tol) {
        return Err(Error::TolOutOfRange(rel_tol));
    }
    let delta = separation(config);
    let pts = config.points();
    let mut edges = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = geom::dist(&pts[i], &pts[j]);
            if (d - delta).abs() <= rel_tol * delta {
                edges.push((i, j));
            }
        }
    }
    Ok(ContactGraph {
        delta,
        edges,
        tolerance: rel_tol,
    })
}

/// All N(N-1)/2 pairwise chordal distances, sorted ascending. An
/// isometry-invariant signature of the configuration.
pub fn distance_multiset(config: &Configuration) -> Vec<f64> {
    let pts = config.points();
    let mut out = Vec::with_capacity(pts.len() * (pts.len() - 1) / 2);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            out.push(geom::dist(&pts[i], &pts[j]));
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Necessary-condition isometry matcher: true iff the sorted distance
/// multisets agree entrywise within `tol`. Equal multisets do not prove
/// congruence; unequal ones disprove it.
pub fn is_isometric_signature(a: &Configuration, b: &Configuration, tol: f64) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(a.len(), b.len()));
    }
    let da = distance_multiset(a);
    let db = distance_multiset(b);
    Ok(da
        .iter()
        .zip(&db)
        .all(|(x, y)| (x - y).abs() <= tol))
}
