//! Multi-start Riemannian minimization of the Riesz s-energy over N points
//! on S^n, the 1D square-pyramid height optimization, the BP/SBP energy
//! crossing, parameter sweeps, and continuation in `s` toward best-packing
//! limits.
//!
//! The descent works on `F = log2 E_s` rather than `E_s` itself: the log
//! keeps every quantity in f64 range for `s` up to 2000 (raw energies span
//! hundreds of orders of magnitude) and equalizes scale across `s`, while
//! having the same minimizers. Steps are limited-memory quasi-Newton with
//! backtracking line search and renormalization (retraction) after each
//! tangent step; memory pairs are transported by projection.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog;
use crate::config::{separation, Configuration};
use crate::covering;
use crate::error::{Error, Result};
use crate::geom;
use crate::riesz::{self, EnergyParams};
use crate::rng;

/// Initial iterate policy for [`minimize`].
#[derive(Debug, Clone)]
pub enum Init {
    /// Every restart starts from uniform points on the sphere.
    Random,
    /// Restart 0 starts exactly at the given configuration; the remaining
    /// restarts are random.
    Given(Configuration),
    /// Every restart starts at the given configuration plus a deterministic
    /// tangent perturbation of size ~1e-5, enough to fall off a saddle that
    /// just went unstable while tracking a branch in `s`.
    Continuation(Configuration),
}

#[derive(Debug, Clone)]
pub struct MinimizeSpec {
    pub dim: usize,
    pub n: usize,
    pub s: f64,
    pub restarts: usize,
    pub rng_seed: u64,
    pub max_iters: usize,
    /// Scale-aware tolerance factor: convergence requires the sup-norm of
    /// the energy gradient to drop below `grad_tol * max(1, E_s)`.
    pub grad_tol: f64,
    pub init: Init,
}

impl MinimizeSpec {
    pub fn new(dim: usize, n: usize, s: f64) -> Self {
        Self {
            dim,
            n,
            s,
            restarts: 64,
            rng_seed: 0,
            max_iters: 2000,
            grad_tol: 1e-10,
            init: Init::Random,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimizeResult {
    pub config: Configuration,
    pub energy: f64,
    pub log2_energy: f64,
    pub grad_sup_norm: f64,
    pub restart_index: usize,
    pub iterations: usize,
    pub converged: bool,
}

struct RestartOutcome {
    points: Vec<Vec<f64>>,
    log2_energy: f64,
    log2_grad_sup: f64,
    iterations: usize,
    converged: bool,
}

/// log2 of the s-energy; +inf when two points collide.
fn log2_energy_raw(points: &[Vec<f64>], s: f64) -> f64 {
    let mut exps = Vec::with_capacity(points.len() * (points.len() - 1) / 2);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let r = geom::dist(&points[i], &points[j]);
            if r == 0.0 {
                return f64::INFINITY;
            }
            exps.push(-s * r.log2());
        }
    }
    1.0 + riesz::log2_sum_exp2(&exps)
}

/// Tangent gradient of `F = log2 E`, flattened, plus the log2 sup norm of
/// the raw energy gradient and the current log2 energy.
fn log_gradient(points: &[Vec<f64>], s: f64) -> Option<(Vec<f64>, f64, f64)> {
    let f = log2_energy_raw(points, s);
    if !f.is_finite() {
        return None;
    }
    let (g, shift) = riesz::scaled_gradient_points(points, s).ok()?;
    let sup = riesz::gradient_sup_norm(&g);
    let log2_grad_sup = shift + sup.log2();
    // grad F = grad E / (E ln 2); the exponent difference is bounded by
    // ~|2 log2 r_min| so this stays representable
    let factor = (shift - f).exp2() / std::f64::consts::LN_2;
    if !factor.is_finite() {
        return None;
    }
    let m = points[0].len();
    let mut flat = vec![0.0; points.len() * m];
    for (i, gi) in g.iter().enumerate() {
        for (k, v) in gi.iter().enumerate() {
            flat[i * m + k] = v * factor;
        }
    }
    Some((flat, log2_grad_sup, f))
}

fn flat_dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Project every per-point block of `v` onto the tangent space at the
/// corresponding current point.
fn transport(v: &mut [f64], points: &[Vec<f64>]) {
    let m = points[0].len();
    for (i, x) in points.iter().enumerate() {
        let block = &mut v[i * m..(i + 1) * m];
        let c = geom::dot(block, x);
        for (b, xi) in block.iter_mut().zip(x) {
            *b -= c * xi;
        }
    }
}

fn converged_test(log2_grad_sup: f64, log2_energy: f64, grad_tol: f64) -> bool {
    log2_grad_sup <= grad_tol.log2() + log2_energy.max(0.0)
}

fn descend(
    mut points: Vec<Vec<f64>>,
    s: f64,
    max_iters: usize,
    grad_tol: f64,
) -> Option<RestartOutcome> {
    let m = points[0].len();
    let (mut grad, mut lgs, mut f) = log_gradient(&points, s)?;
    let mut mem: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();
    let mem_max = 10;
    let mut iterations = 0;
    let mut converged = converged_test(lgs, f, grad_tol);

    while iterations < max_iters && !converged {
        // two-loop recursion for the quasi-Newton direction
        let mut q = grad.clone();
        let mut alphas = Vec::with_capacity(mem.len());
        for (sv, yv, rho) in mem.iter().rev() {
            let a = rho * flat_dot(sv, &q);
            for (qi, yi) in q.iter_mut().zip(yv) {
                *qi -= a * yi;
            }
            alphas.push(a);
        }
        if let Some((sv, yv, _)) = mem.back() {
            let gamma = flat_dot(sv, yv) / flat_dot(yv, yv);
            for qi in q.iter_mut() {
                *qi *= gamma;
            }
        }
        for ((sv, yv, rho), a) in mem.iter().zip(alphas.iter().rev()) {
            let b = rho * flat_dot(yv, &q);
            for (qi, si) in q.iter_mut().zip(sv) {
                *qi += (a - b) * si;
            }
        }
        let mut dir: Vec<f64> = q.iter().map(|x| -x).collect();
        let mut slope = flat_dot(&dir, &grad);
        if !(slope < 0.0) {
            dir = grad.iter().map(|x| -x).collect();
            slope = flat_dot(&dir, &grad);
            mem.clear();
        }

        // cap the first trial step so points move at most ~0.3
        let dmax = dir
            .chunks(m)
            .map(|b| geom::norm(b))
            .fold(0.0f64, f64::max);
        let mut alpha = if mem.is_empty() {
            (0.3 / dmax.max(1e-300)).min(1.0)
        } else {
            1.0
        };

        let mut accepted = None;
        for _ in 0..60 {
            let mut trial = points.clone();
            for (i, p) in trial.iter_mut().enumerate() {
                for (k, x) in p.iter_mut().enumerate() {
                    *x += alpha * dir[i * m + k];
                }
                geom::normalize_mut(p);
            }
            let f_trial = log2_energy_raw(&trial, s);
            if f_trial.is_finite() && f_trial <= f + 1e-4 * alpha * slope {
                accepted = Some((trial, f_trial));
                break;
            }
            alpha *= 0.5;
            if alpha < 1e-20 {
                break;
            }
        }
        let Some((new_points, f_new)) = accepted else {
            break; // line search exhausted at f64 resolution
        };
        debug_assert!(f_new <= f, "energy must not increase on accepted steps");

        let step: Vec<f64> = dir.iter().map(|d| alpha * d).collect();
        let (grad_new, lgs_new, _) = match log_gradient(&new_points, s) {
            Some(t) => t,
            None => break,
        };
        // vector transport by projection onto the new tangent spaces
        let mut sv = step;
        transport(&mut sv, &new_points);
        let mut g_old = grad;
        transport(&mut g_old, &new_points);
        let yv: Vec<f64> = grad_new.iter().zip(&g_old).map(|(a, b)| a - b).collect();
        let sy = flat_dot(&sv, &yv);
        let scale = flat_dot(&sv, &sv).sqrt() * flat_dot(&yv, &yv).sqrt();
        if sy > 1e-10 * scale {
            if mem.len() == mem_max {
                mem.pop_front();
            }
            mem.push_back((sv, yv, 1.0 / sy));
        }
        for (svp, yvp, _) in mem.iter_mut() {
            transport(svp, &new_points);
            transport(yvp, &new_points);
        }

        points = new_points;
        grad = grad_new;
        lgs = lgs_new;
        f = f_new;
        iterations += 1;
        converged = converged_test(lgs, f, grad_tol);
    }

    Some(RestartOutcome {
        points,
        log2_energy: f,
        log2_grad_sup: lgs,
        iterations,
        converged,
    })
}

fn initial_points(spec: &MinimizeSpec, restart: usize) -> Vec<Vec<f64>> {
    match &spec.init {
        Init::Given(c) if restart == 0 => c.points().to_vec(),
        Init::Continuation(c) => {
            let mut r = rng::stream(spec.rng_seed, restart as u64);
            c.points()
                .iter()
                .map(|p| {
                    let noise: Vec<f64> = (0..p.len()).map(|_| rng::gaussian(&mut r)).collect();
                    let tangent = geom::project_tangent(&noise, p);
                    let mut q = p.clone();
                    geom::axpy(&mut q, 1e-5, &tangent);
                    geom::normalize(&q)
                })
                .collect()
        }
        _ => {
            let mut r = rng::stream(spec.rng_seed, restart as u64);
            loop {
                let pts: Vec<Vec<f64>> =
                    (0..spec.n).map(|_| rng::unit_vector(&mut r, spec.dim)).collect();
                let mut ok = true;
                'outer: for i in 0..pts.len() {
                    for j in i + 1..pts.len() {
                        if geom::dist(&pts[i], &pts[j]) < 1e-3 {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
                if ok {
                    return pts;
                }
            }
        }
    }
}

/// Best-of-restarts minimization. Restarts run in parallel, each from its
/// own derived seed; the winner is the lowest energy with ties broken by
/// the lowest restart index, so the result is identical for any thread
/// count. Restarts that hit a non-finite energy (collided points) are
/// discarded.
pub fn minimize(spec: &MinimizeSpec) -> Result<MinimizeResult> {
    EnergyParams::new(spec.s)?;
    if spec.n < 2 {
        return Err(Error::TooFewPoints(spec.n));
    }
    if spec.dim < 1 {
        return Err(Error::InvalidParam("dim must be >= 1".into()));
    }
    if spec.restarts < 1 {
        return Err(Error::InvalidParam("restarts must be >= 1".into()));
    }
    if !(spec.grad_tol > 0.0) {
        return Err(Error::InvalidParam("grad_tol must be > 0".into()));
    }
    if let Init::Given(c) | Init::Continuation(c) = &spec.init {
        if c.dim() != spec.dim {
            return Err(Error::DimensionMismatch(c.dim(), spec.dim));
        }
        if c.len() != spec.n {
            return Err(Error::SizeMismatch(c.len(), spec.n));
        }
    }

    let outcomes: Vec<Option<RestartOutcome>> = (0..spec.restarts)
        .into_par_iter()
        .map(|r| descend(initial_points(spec, r), spec.s, spec.max_iters, spec.grad_tol))
        .collect();

    let mut best: Option<(usize, &RestartOutcome)> = None;
    for (i, out) in outcomes.iter().enumerate() {
        if let Some(o) = out {
            let better = match best {
                None => true,
                Some((_, b)) => o.log2_energy < b.log2_energy,
            };
            if better {
                best = Some((i, o));
            }
        }
    }
    let (restart_index, out) =
        best.ok_or(Error::AllRestartsFailed(spec.restarts))?;
    let config = Configuration::new(spec.dim, out.points.clone())?;
    Ok(MinimizeResult {
        config,
        energy: out.log2_energy.exp2(),
        log2_energy: out.log2_energy,
        grad_sup_norm: out.log2_grad_sup.exp2(),
        restart_index,
        iterations: out.iterations,
        converged: out.converged,
    })
}

/// Energy-optimal height of the square pyramid family for exponent `s`.
///
/// `dE/dt` has the sign of `t (4·2^{-s/2} + 8)(1-t)^{-(s/2+1)} - 4`, which
/// is strictly increasing on (0, 1), so the minimizer is the unique sign
/// change; bisection pins it to |t - t*| <= 1e-12. Returns `(t*, E_s(Q_t*))`.
pub fn sbp_height_opt(s: f64) -> Result<(f64, f64)> {
    EnergyParams::new(s)?;
    let c = (4.0 * (-s / 2.0).exp2() + 8.0).ln();
    let psi = |t: f64| t.ln() + c - (s / 2.0 + 1.0) * (1.0 - t).ln() - 4.0f64.ln();
    let mut lo = 1e-12;
    let mut hi = 1.0 - 1e-15;
    if psi(lo) >= 0.0 || psi(hi) <= 0.0 {
        return Err(Error::NoSignChange(lo, hi));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if psi(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    let t_star = 0.5 * (lo + hi);
    Ok((t_star, riesz::energy_qt_closed(t_star, s)?))
}

/// The exponent where the bipyramid and the optimal square pyramid exchange
/// optimality: the root of `log E_s(BP) - log E_s(SBP*(s))` on [10, 20],
/// bisected to 1e-6.
pub fn crossing_s_star() -> Result<f64> {
    let g = |s: f64| -> Result<f64> {
        let (t, _) = sbp_height_opt(s)?;
        Ok(riesz::energy_bp_closed_log2(s)? - riesz::energy_qt_closed_log2(t, s)?)
    };
    let (mut lo, mut hi) = (10.0, 20.0);
    if !(g(lo)? < 0.0 && g(hi)? > 0.0) {
        return Err(Error::NoSignChange(lo, hi));
    }
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if g(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// One row of an s-sweep: the data behind the energy-ratio and stability
/// plots, plus an optional multi-start energy estimate.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub s: f64,
    pub e_bp_log2: f64,
    pub e_sbp_log2: f64,
    pub t_star: f64,
    pub ratio: f64,
    pub min_eig_bp: f64,
    pub min_eig_sbp: f64,
    pub e_min_log2: Option<f64>,
    pub scaled_energy: Option<f64>,
}

/// Sweep `s` from `s_min` to `s_max` in steps of `step` (dim 2, N = 5).
/// With `restarts > 0` each row also carries a multi-start numeric minimum
/// and the scaled energy `2^{s/2} E`.
pub fn sweep(
    s_min: f64,
    s_max: f64,
    step: f64,
    restarts: usize,
    rng_seed: u64,
) -> Result<Vec<SweepRow>> {
    if !(s_min > 0.0 && s_max > s_min && step > 0.0) {
        return Err(Error::InvalidParam(
            "need 0 < s_min < s_max and step > 0".into(),
        ));
    }
    let bp = catalog::bp();
    let mut rows = Vec::new();
    let mut s = s_min;
    while s <= s_max + 1e-12 {
        let e_bp = riesz::energy_bp_closed_log2(s)?;
        let (t_star, _) = sbp_height_opt(s)?;
        let e_sbp = riesz::energy_qt_closed_log2(t_star, s)?;
        let params = EnergyParams::new(s)?;
        let min_eig_bp = riesz::hessian_spectrum(&bp, &params)?.min_constrained_eig;
        let sbp = catalog::q_t(t_star)?;
        let min_eig_sbp = riesz::hessian_spectrum(&sbp, &params)?.min_constrained_eig;
        let e_min_log2 = if restarts > 0 {
            let mut spec = MinimizeSpec::new(2, 5, s);
            spec.restarts = restarts;
            spec.rng_seed = rng_seed;
            Some(minimize(&spec)?.log2_energy)
        } else {
            None
        };
        rows.push(SweepRow {
            s,
            e_bp_log2: e_bp,
            e_sbp_log2: e_sbp,
            t_star,
            ratio: (e_bp - e_sbp).exp2(),
            min_eig_bp,
            min_eig_sbp,
            e_min_log2,
            scaled_energy: e_min_log2.map(|e| (s / 2.0 + e).exp2()),
        });
        s += step;
    }
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct StageInfo {
    pub s: f64,
    pub log2_energy: f64,
    pub delta: f64,
    pub eta_found: f64,
    pub certified_gap: f64,
    /// `N^{2/s} δ`: covering is bounded by this for energy minimizers
    pub mesh_bound: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContinuationResult {
    pub config: Configuration,
    /// `E^{-1/s}` at the last stage; converges to the best-packing distance
    pub delta_estimate: f64,
    pub stages: Vec<StageInfo>,
}

#[derive(Debug, Clone)]
pub struct ContinuationBudget {
    pub restarts: usize,
    pub rng_seed: u64,
    pub max_iters: usize,
    pub mesh_seeds: usize,
    pub mesh_polish: usize,
}

impl Default for ContinuationBudget {
    fn default() -> Self {
        Self {
            restarts: 64,
            rng_seed: 0,
            max_iters: 2000,
            mesh_seeds: 10_000,
            mesh_polish: 8,
        }
    }
}

/// Multiplicative schedule `s0, s0*factor, ...` capped at `s_max`
/// (inclusive).
pub fn geometric_schedule(s0: f64, s_max: f64, factor: f64) -> Vec<f64> {
    let mut v = Vec::new();
    let mut s = s0;
    while s < s_max {
        v.push(s);
        s *= factor;
    }
    v.push(s_max);
    v
}

/// Continuation toward the best-packing limit: multi-start at the first
/// exponent, then re-minimize at each subsequent `s` from the previous
/// result. At every stage the sampled covering radius is checked against
/// the minimizer bound `η <= N^{2/s} δ` (plus the sampling gap).
pub fn packing_via_large_s(
    dim: usize,
    n: usize,
    schedule: &[f64],
    budget: &ContinuationBudget,
) -> Result<ContinuationResult> {
    if schedule.is_empty() {
        return Err(Error::InvalidParam("empty schedule".into()));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParam("schedule must be increasing".into()));
    }
    EnergyParams::new(*schedule.last().unwrap())?;
    EnergyParams::new(schedule[0])?;

    let mut current: Option<Configuration> = None;
    let mut stages = Vec::with_capacity(schedule.len());
    let mut last = (schedule[0], 0.0);
    for (k, &s) in schedule.iter().enumerate() {
        let spec = MinimizeSpec {
            dim,
            n,
            s,
            restarts: if k == 0 { budget.restarts } else { 1 },
            rng_seed: rng::mix(budget.rng_seed, k as u64),
            max_iters: budget.max_iters,
            grad_tol: 1e-10,
            init: match &current {
                None => Init::Random,
                Some(c) => Init::Continuation(c.clone()),
            },
        };
        let res = minimize(&spec)?;
        let delta = separation(&res.config);
        let mesh =
            covering::mesh_norm_sampled(&res.config, budget.mesh_seeds, budget.mesh_polish, 0)?;
        let mesh_bound = (n as f64).powf(2.0 / s) * delta;
        if mesh.eta > mesh_bound + mesh.certified_gap {
            return Err(Error::Construction(format!(
                "covering bound violated at s = {s}: eta {} > {mesh_bound} + {}",
                mesh.eta, mesh.certified_gap
            )));
        }
        stages.push(StageInfo {
            s,
            log2_energy: res.log2_energy,
            delta,
            eta_found: mesh.eta,
            certified_gap: mesh.certified_gap,
            mesh_bound,
            converged: res.converged,
        });
        last = (s, res.log2_energy);
        current = Some(res.config);
    }
    Ok(ContinuationResult {
        config: current.unwrap(),
        delta_estimate: (-last.1 / last.0).exp2(),
        stages,
    })
}

/// Uniform random configuration with a minimum-separation guard; used by
/// tests that need well-conditioned random inputs.
pub fn random_separated_config(
    rng: &mut rand_chacha::ChaCha8Rng,
    dim: usize,
    n: usize,
    min_sep: f64,
) -> Configuration {
    loop {
        let pts: Vec<Vec<f64>> = (0..n).map(|_| rng::unit_vector(rng, dim)).collect();
        let cfg = match Configuration::new(dim, pts) {
            Ok(c) => c,
            Err(_) => continue,
        };
        if separation(&cfg) >= min_sep {
            return cfg;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::distance_multiset;

    #[test]
    fn two_points_go_antipodal() {
        let mut spec = MinimizeSpec::new(2, 2, 3.0);
        spec.restarts = 8;
        let res = minimize(&spec).unwrap();
        assert!(res.converged);
        assert!((separation(&res.config) - 2.0).abs() < 1e-7);
        assert!((res.energy - 2.0 * (-3.0f64).exp2()).abs() < 1e-9);
    }

    #[test]
    fn four_points_form_tetrahedron() {
        let mut spec = MinimizeSpec::new(2, 4, 2.0);
        spec.restarts = 16;
        let res = minimize(&spec).unwrap();
        assert!((separation(&res.config) - (8.0f64 / 3.0).sqrt()).abs() < 1e-6);
    }

    #[test]
    fn five_points_at_s16_form_sbp() {
        let mut spec = MinimizeSpec::new(2, 5, 16.0);
        spec.restarts = 64;
        let res = minimize(&spec).unwrap();
        let got = distance_multiset(&res.config);
        let want = distance_multiset(&catalog::sbp_opt(16.0).unwrap());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-5, "{g} vs {w}");
        }
    }

    #[test]
    fn minimize_is_deterministic() {
        let mut spec = MinimizeSpec::new(2, 5, 7.0);
        spec.restarts = 6;
        spec.rng_seed = 99;
        let a = serde_json::to_string(&minimize(&spec).unwrap()).unwrap();
        let b = serde_json::to_string(&minimize(&spec).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn minimize_validates_spec() {
        assert!(minimize(&MinimizeSpec::new(2, 1, 2.0)).is_err());
        assert!(minimize(&MinimizeSpec::new(2, 5, -1.0)).is_err());
        let mut spec = MinimizeSpec::new(2, 5, 2.0);
        spec.restarts = 0;
        assert!(minimize(&spec).is_err());
        let mut spec = MinimizeSpec::new(3, 5, 2.0);
        spec.init = Init::Given(catalog::bp());
        assert!(minimize(&spec).is_err());
    }

    #[test]
    fn sbp_height_first_order_condition() {
        for &s in &[2.0, 16.0, 50.0] {
            let (t, e) = sbp_height_opt(s).unwrap();
            // analytic derivative of the closed form
            let u = 1.0 - t * t;
            let de = 4.0 * s * t * (-s).exp2() * u.powf(-s / 2.0 - 1.0)
                + 8.0 * s * t * (-s / 2.0).exp2() * u.powf(-s / 2.0 - 1.0)
                - 4.0 * s * (-s / 2.0).exp2() * (1.0 + t).powf(-s / 2.0 - 1.0);
            assert!(de.abs() <= 1e-9 * e * s.max(1.0), "s={s}: dE/dt = {de}");
        }
    }

    #[test]
    fn sbp_height_shrinks_with_s() {
        let t100 = sbp_height_opt(100.0).unwrap().0;
        let t400 = sbp_height_opt(400.0).unwrap().0;
        assert!(t400 < t100 && t100 < 0.1, "t100={t100} t400={t400}");
    }

    #[test]
    fn sbp_height_matches_direct_minimization() {
        let (_, e_closed) = sbp_height_opt(16.0).unwrap();
        let mut spec = MinimizeSpec::new(2, 5, 16.0);
        spec.restarts = 64;
        let res = minimize(&spec).unwrap();
        assert!(
            (res.energy - e_closed).abs() <= 1e-9 * e_closed,
            "{} vs {e_closed}",
            res.energy
        );
    }

    #[test]
    fn crossing_location() {
        let s_star = crossing_s_star().unwrap();
        assert!((s_star - 15.04808).abs() < 1e-3, "s* = {s_star}");
        // bracket signs and monotonicity of the gap on [10, 20]
        let g = |s: f64| {
            let (t, _) = sbp_height_opt(s).unwrap();
            riesz::energy_bp_closed_log2(s).unwrap()
                - riesz::energy_qt_closed_log2(t, s).unwrap()
        };
        assert!(g(10.0) < 0.0 && g(20.0) > 0.0);
        let mut prev = f64::NEG_INFINITY;
        for k in 0..=100 {
            let v = g(10.0 + k as f64 * 0.1);
            assert!(v > prev, "not monotone at k={k}");
            prev = v;
        }
    }

    #[test]
    fn sweep_rows_cross_at_s_star() {
        let rows = sweep(14.5, 15.5, 0.25, 0, 0).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.first().unwrap().ratio < 1.0);
        assert!(rows.last().unwrap().ratio > 1.0);
        for r in &rows {
            assert!((r.ratio - (r.e_bp_log2 - r.e_sbp_log2).exp2()).abs() < 1e-12);
            assert!(r.t_star > 0.0 && r.t_star < 1.0);
            assert!(r.e_min_log2.is_none());
        }
    }

    #[test]
    fn continuation_reaches_tetrahedral_packing() {
        let schedule = geometric_schedule(4.0, 500.0, 1.25);
        let mut budget = ContinuationBudget::default();
        budget.restarts = 16;
        let res = packing_via_large_s(2, 4, &schedule, &budget).unwrap();
        let want = (8.0f64 / 3.0).sqrt();
        assert!(
            (res.delta_estimate - want).abs() < 2e-2,
            "delta estimate {}",
            res.delta_estimate
        );
        assert!((separation(&res.config) - want).abs() < 1e-3);
        // energy^{-1/s} approaches the packing distance from below
        assert!(res.delta_estimate <= want + 1e-9);
    }

    #[test]
    fn continuation_schedule_validation() {
        let budget = ContinuationBudget::default();
        assert!(packing_via_large_s(2, 4, &[], &budget).is_err());
        assert!(packing_via_large_s(2, 4, &[4.0, 3.0], &budget).is_err());
        assert!(packing_via_large_s(2, 4, &[4.0, 3000.0], &budget).is_err());
    }

    #[test]
    fn geometric_schedule_shape() {
        let sch = geometric_schedule(4.0, 1000.0, 1.25);
        assert_eq!(sch[0], 4.0);
        assert_eq!(*sch.last().unwrap(), 1000.0);
        assert!(sch.windows(2).all(|w| w[0] < w[1]));
    }
}
