//! Mesh norm (covering radius) and mesh-separation ratio.
//!
//! Two interchangeable estimators sit behind [`MeshEstimator`]: an exact
//! method for S² built on the convex hull (Voronoi vertices of a spanning
//! spherical point set are the hull facets' circumcap centers), and a
//! sample-and-polish method for any dimension. [`diagnose`] picks the exact
//! route whenever it applies and falls back to sampling otherwise.

pub mod hull;
pub mod polish;
pub mod sampling;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{contact_graph, separation, Configuration};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MeshMethod {
    #[serde(rename = "exact-hull")]
    ExactHull,
    #[serde(rename = "sampled-polished")]
    SampledPolished,
}

/// Covering-radius result with its witness direction.
///
/// For the sampled method `eta` is a lower bound on the true mesh norm; the
/// true value lies in `[eta, eta + certified_gap]`. The exact method has
/// `certified_gap = 0`.
#[derive(Debug, Clone, Serialize)]
pub struct MeshResult {
    pub eta: f64,
    pub witness: Vec<f64>,
    pub method: MeshMethod,
    pub certified_gap: f64,
}

/// One-stop diagnostics: separation, covering radius, their ratio, and the
/// contact-edge count.
#[derive(Debug, Clone, Serialize)]
pub struct DiagnosticsReport {
    pub delta: f64,
    pub eta: f64,
    pub gamma: f64,
    pub contact_edges: usize,
    pub method: MeshMethod,
    pub config_digest: String,
}

/// A covering-radius strategy, selectable by name at runtime.
pub trait MeshEstimator: Sync {
    fn name(&self) -> &'static str;
    fn estimate(&self, config: &Configuration) -> Result<MeshResult>;
}

/// Exact S² method via hull circumcaps.
pub struct ExactHullS2;

impl MeshEstimator for ExactHullS2 {
    fn name(&self) -> &'static str {
        "exact-hull"
    }

    fn estimate(&self, config: &Configuration) -> Result<MeshResult> {
        mesh_norm_exact_s2(config)
    }
}

/// Sample-and-polish method for any dimension.
pub struct SampledPolish {
    pub n_seeds: usize,
    pub n_polish: usize,
    pub rng_seed: u64,
}

impl Default for SampledPolish {
    fn default() -> Self {
        Self {
            n_seeds: 100_000,
            n_polish: 32,
            rng_seed: 0,
        }
    }
}

impl MeshEstimator for SampledPolish {
    fn name(&self) -> &'static str {
        "sampled-polished"
    }

    fn estimate(&self, config: &Configuration) -> Result<MeshResult> {
        mesh_norm_sampled(config, self.n_seeds, self.n_polish, self.rng_seed)
    }
}

/// Look up an estimator by registry name: `exact-hull` or `sampled`.
pub fn estimator_by_name(name: &str) -> Result<Box<dyn MeshEstimator>> {
    match name {
        "exact-hull" => Ok(Box::new(ExactHullS2)),
        "sampled" | "sampled-polished" => Ok(Box::new(SampledPolish::default())),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Exact covering radius on S².
///
/// Builds the 3D hull; every facet with unit outward normal `n` and support
/// height `h = n·a` has circumcap center `n` at chordal distance
/// `sqrt(2 - 2h)` from its vertices, and all other points are farther
/// (empty-cap property). The mesh norm is the largest such distance.
/// Requires the origin inside the hull (boundary allowed to 1e-9, which
/// admits configurations with an equatorial facet through the origin).
pub fn mesh_norm_exact_s2(config: &Configuration) -> Result<MeshResult> {
    if config.dim() != 2 {
        return Err(Error::DimensionMismatch(config.dim(), 2));
    }
    if config.len() < 4 {
        return Err(Error::DegenerateHull(format!(
            "{} points, need >= 4",
            config.len()
        )));
    }
    let points = config.points();
    let facets = hull::convex_hull_3d(points)?;
    let mut h_min = f64::INFINITY;
    let mut witness = [0.0; 3];
    for f in &facets {
        let n = hull::facet_normal(points, f);
        // average the three supports; they agree to rounding
        let h = f
            .iter()
            .map(|&v| n[0] * points[v][0] + n[1] * points[v][1] + n[2] * points[v][2])
            .sum::<f64>()
            / 3.0;
        if h < h_min {
            h_min = h;
            witness = n;
        }
    }
    if h_min < -1e-9 {
        return Err(Error::OriginNotInterior { margin: h_min });
    }
    let eta = (2.0 - 2.0 * h_min).max(0.0).sqrt();
    let w = witness.to_vec();
    let attained = polish::min_dist(points, &w);
    debug_assert!((attained - eta).abs() < 1e-9, "cap distance mismatch");
    Ok(MeshResult {
        eta: attained,
        witness: w,
        method: MeshMethod::ExactHull,
        certified_gap: 0.0,
    })
}

/// Sampled covering radius for any dimension.
///
/// Evaluates the min-distance function on a deterministic seed set
/// (Fibonacci lattice on S², seeded Gaussian stream for dim >= 3), polishes
/// the best `n_polish` candidates by soft-min ascent, and returns the best
/// value with a tie-break on the lowest seed index so the result does not
/// depend on evaluation order.
pub fn mesh_norm_sampled(
    config: &Configuration,
    n_seeds: usize,
    n_polish: usize,
    rng_seed: u64,
) -> Result<MeshResult> {
    if n_seeds < 1000 {
        return Err(Error::InvalidParam(format!(
            "n_seeds = {n_seeds}, need >= 1000"
        )));
    }
    let points = config.points();
    let seeds = sampling::seed_points(config.dim(), n_seeds, rng_seed);
    let scored: Vec<f64> = seeds
        .par_iter()
        .map(|y| polish::min_dist(points, y))
        .collect();
    let mut order: Vec<usize> = (0..seeds.len()).collect();
    order.sort_by(|&a, &b| scored[b].total_cmp(&scored[a]).then(a.cmp(&b)));
    order.truncate(n_polish.max(1));

    let polished: Vec<(usize, Vec<f64>, f64)> = order
        .par_iter()
        .map(|&i| {
            let (w, f) = polish::polish(points, &seeds[i], 200);
            (i, w, f)
        })
        .collect();
    let best = polished
        .iter()
        .max_by(|a, b| a.2.total_cmp(&b.2).then(b.0.cmp(&a.0)))
        .expect("at least one candidate");
    Ok(MeshResult {
        eta: best.2,
        witness: best.1.clone(),
        method: MeshMethod::SampledPolished,
        certified_gap: sampling::covering_gap(config.dim(), n_seeds),
    })
}

/// Full diagnostics with the default method choice: exact hull on S² when
/// the configuration spans the sphere, sampled (1e5 seeds, 32 polish,
/// seed 0) otherwise.
pub fn diagnose(config: &Configuration) -> Result<DiagnosticsReport> {
    let mesh = if config.dim() == 2 && config.len() >= 4 {
        match mesh_norm_exact_s2(config) {
            Ok(m) => m,
            Err(Error::OriginNotInterior { .. }) | Err(Error::DegenerateHull(_)) => {
                SampledPolish::default().estimate(config)?
            }
            Err(e) => return Err(e),
        }
    } else {
        SampledPolish::default().estimate(config)?
    };
    diagnose_with_mesh(config, mesh)
}

/// Diagnostics with an explicitly chosen covering-radius method.
pub fn diagnose_with(config: &Configuration, estimator: &dyn MeshEstimator) -> Result<DiagnosticsReport> {
    let mesh = estimator.estimate(config)?;
    diagnose_with_mesh(config, mesh)
}

fn diagnose_with_mesh(config: &Configuration, mesh: MeshResult) -> Result<DiagnosticsReport> {
    let delta = separation(config);
    let contacts = contact_graph(config, 1e-9)?;
    Ok(DiagnosticsReport {
        delta,
        eta: mesh.eta,
        gamma: mesh.eta / delta,
        contact_edges: contacts.edge_count(),
        method: mesh.method,
        config_digest: config.digest(),
    })
}

/// Asymptotic lower bounds on the mesh ratio of best-packing configurations
/// on S², for reporting: `hexagonal` is the packing/covering-constant bound
/// `(1/2)(Θ₂/Δ₂)^{1/2} = 1/√3`, `pentagonal` the improved
/// `1/(2 cos π/5) = 2/(1+√5)`.
pub fn gamma_lower_bound_s2(kind: &str) -> Result<f64> {
    match kind {
        "hexagonal" => {
            let delta2 = std::f64::consts::PI / 12.0f64.sqrt();
            let theta2 = 2.0 * std::f64::consts::PI / 27.0f64.sqrt();
            Ok(0.5 * (theta2 / delta2).sqrt())
        }
        "pentagonal" => Ok(1.0 / (2.0 * (std::f64::consts::PI / 5.0).cos())),
        other => Err(Error::UnknownName(other.to_string())),
    }
}
