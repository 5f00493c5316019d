//! Riesz s-energy on the sphere: values, analytic gradient and Hessian in
//! tangent charts, gauge-aware stability analysis, and the closed-form
//! energies of the bipyramid and square-pyramid families.
//!
//! The energy follows the ordered-pair convention
//! `E_s = Σ_{i≠j} |x_i - x_j|^{-s}`, i.e. every unordered pair is counted
//! twice. Large exponents are handled in the log2 domain with max-shifted
//! exponent sums, so sweeps up to `s = 2000` neither overflow nor underflow.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::geom;

/// Riesz exponent. Valid range `0 < s <= 2000`; beyond that, `2^{-s}` terms
/// leave the f64 exponent range even in intermediate products.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyParams {
    pub s: f64,
}

impl EnergyParams {
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 0.0) {
            return Err(Error::InvalidParam(format!("s = {s} must be > 0")));
        }
        if s > 2000.0 {
            return Err(Error::InvalidParam(format!("s = {s} exceeds 2000")));
        }
        Ok(Self { s })
    }
}

/// Energy in both linear and log2 form. The linear value may be subnormal
/// or infinite at extreme `s`; the log2 value is always finite for a valid
/// configuration.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EnergyValue {
    pub energy: f64,
    pub log2_energy: f64,
}

/// Full second-order report at a configuration.
#[derive(Debug, Clone, Serialize)]
pub struct EnergyReport {
    pub energy: f64,
    pub log2_energy: f64,
    /// max over points of the tangent-gradient vector norm
    pub gradient_sup_norm: f64,
    /// all nN eigenvalues of the tangent-chart Hessian, ascending
    pub hessian_spectrum: Vec<f64>,
    /// rank of the rigid-rotation generator subspace
    pub gauge_dim: usize,
    /// near-zero eigenvalues whose eigenvectors align with that subspace
    pub gauge_zero_modes: usize,
    /// smallest eigenvalue of the Hessian restricted to the orthogonal
    /// complement of the rotation subspace
    pub min_constrained_eig: f64,
}

/// log2(Σ 2^{t}) with the usual max shift.
pub(crate) fn log2_sum_exp2(terms: &[f64]) -> f64 {
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + terms.iter().map(|t| (t - m).exp2()).sum::<f64>().log2()
}

fn check_pairs(points: &[Vec<f64>]) -> Result<()> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if geom::dist(&points[i], &points[j]) == 0.0 {
                return Err(Error::CoincidentPoints { i, j });
            }
        }
    }
    Ok(())
}

pub(crate) fn energy_points(points: &[Vec<f64>], s: f64) -> Result<EnergyValue> {
    check_pairs(points)?;
    let mut exps = Vec::with_capacity(points.len() * (points.len() - 1) / 2);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let r = geom::dist(&points[i], &points[j]);
            exps.push(-s * r.log2());
        }
    }
    let log2_energy = 1.0 + log2_sum_exp2(&exps);
    let energy = if s <= 200.0 {
        2.0 * exps.iter().map(|e| e.exp2()).sum::<f64>()
    } else {
        log2_energy.exp2()
    };
    Ok(EnergyValue { energy, log2_energy })
}

/// Riesz s-energy of a configuration (ordered-pair convention).
pub fn energy(config: &Configuration, params: &EnergyParams) -> Result<EnergyValue> {
    energy_points(config.points(), params.s)
}

/// Closed-form bipyramid energy: `2·2^{-s} + 12·2^{-s/2} + 6·3^{-s/2}`
/// (one antipodal pair, six pole-equator pairs at √2, three equatorial
/// pairs at √3, ordered-pair counts).
pub fn energy_bp_closed(s: f64) -> Result<f64> {
    EnergyParams::new(s)?;
    Ok(2.0 * (-s).exp2() + 12.0 * (-s / 2.0).exp2() + 6.0 * (-(s / 2.0) * 3.0f64.log2()).exp2())
}

pub fn energy_bp_closed_log2(s: f64) -> Result<f64> {
    EnergyParams::new(s)?;
    Ok(log2_sum_exp2(&[
        1.0 - s,
        12.0f64.log2() - s / 2.0,
        6.0f64.log2() - (s / 2.0) * 3.0f64.log2(),
    ]))
}

/// Closed-form energy of the height-`t` square pyramid:
/// `4·2^{-s}(1-t²)^{-s/2} + 8·2^{-s/2}(1-t²)^{-s/2} + 8·2^{-s/2}(1+t)^{-s/2}`.
pub fn energy_qt_closed(t: f64, s: f64) -> Result<f64> {
    EnergyParams::new(s)?;
    check_t(t)?;
    let u = 1.0 - t * t;
    Ok(4.0 * (-s).exp2() * u.powf(-s / 2.0)
        + 8.0 * (-s / 2.0).exp2() * u.powf(-s / 2.0)
        + 8.0 * (-s / 2.0).exp2() * (1.0 + t).powf(-s / 2.0))
}

pub fn energy_qt_closed_log2(t: f64, s: f64) -> Result<f64> {
    EnergyParams::new(s)?;
    check_t(t)?;
    let lu = (1.0 - t * t).log2();
    Ok(log2_sum_exp2(&[
        2.0 - s - (s / 2.0) * lu,
        3.0 - s / 2.0 - (s / 2.0) * lu,
        3.0 - s / 2.0 - (s / 2.0) * (1.0 + t).log2(),
    ]))
}

fn check_t(t: f64) -> Result<()> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::InvalidParam(format!("t = {t} outside [0, 1)")));
    }
    Ok(())
}

/// Tangent gradient scaled by `2^{-shift}` to stay inside the f64 range:
/// the true per-point gradients are `2^{shift} * g_i`. The shift is shared
/// across points, so directions are exact.
pub(crate) fn scaled_gradient_points(
    points: &[Vec<f64>],
    s: f64,
) -> Result<(Vec<Vec<f64>>, f64)> {
    check_pairs(points)?;
    let n = points.len();
    let m = points[0].len();
    // largest pair exponent of r^{-(s+2)}
    let mut shift = f64::NEG_INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            let r = geom::dist(&points[i], &points[j]);
            shift = shift.max(-(s + 2.0) * r.log2());
        }
    }
    let mut grad = vec![vec![0.0; m]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = geom::sub(&points[i], &points[j]);
            let r = geom::norm(&d);
            let w = (-(s + 2.0) * r.log2() - shift).exp2();
            let c = -2.0 * s * w;
            geom::axpy(&mut grad[i], c, &d);
            geom::axpy(&mut grad[j], -c, &d);
        }
    }
    for (g, x) in grad.iter_mut().zip(points) {
        let t = geom::project_tangent(g, x);
        g.copy_from_slice(&t);
    }
    Ok((grad, shift))
}

/// Riemannian gradient of the s-energy: one tangent vector per point
/// (`⟨g_i, x_i⟩ = 0`). Plain f64 values; at extreme `s` prefer
/// [`scaled_gradient_points`]-based callers.
pub fn gradient(config: &Configuration, params: &EnergyParams) -> Result<Vec<Vec<f64>>> {
    let (mut g, shift) = scaled_gradient_points(config.points(), params.s)?;
    let f = shift.exp2();
    for gi in g.iter_mut() {
        for x in gi.iter_mut() {
            *x *= f;
        }
    }
    Ok(g)
}

pub fn gradient_sup_norm(grad: &[Vec<f64>]) -> f64 {
    grad.iter().map(|g| geom::norm(g)).fold(0.0, f64::max)
}

/// Tangent-chart Hessian of the s-energy: the Euclidean Hessian compressed
/// into orthonormal tangent charts with the curvature correction
/// `-⟨x_i, ∇_i E⟩ I` on each diagonal block.
pub(crate) fn hessian_matrix(points: &[Vec<f64>], s: f64) -> Result<DMatrix<f64>> {
    check_pairs(points)?;
    let n = points.len();
    let m = points[0].len();
    let nd = m - 1;
    let charts: Vec<Vec<Vec<f64>>> = points.iter().map(|p| geom::tangent_basis(p)).collect();

    let mut h = DMatrix::<f64>::zeros(n * nd, n * nd);
    // ambient Euclidean gradient, for the curvature term
    let mut egrad = vec![vec![0.0; m]; n];

    for i in 0..n {
        for j in i + 1..n {
            let d = geom::sub(&points[i], &points[j]);
            let r = geom::norm(&d);
            let w2 = r.powf(-(s + 2.0));
            let w4 = r.powf(-(s + 4.0));
            let c1 = 2.0 * s * w2;
            let c2 = 2.0 * s * (s + 2.0) * w4;

            geom::axpy(&mut egrad[i], -c1, &d);
            geom::axpy(&mut egrad[j], c1, &d);

            let pi: Vec<f64> = charts[i].iter().map(|u| geom::dot(u, &d)).collect();
            let pj: Vec<f64> = charts[j].iter().map(|u| geom::dot(u, &d)).collect();

            for a in 0..nd {
                for b in 0..nd {
                    let uij = geom::dot(&charts[i][a], &charts[j][b]);
                    // off-diagonal block of the ambient Hessian
                    let cross = c1 * uij - c2 * pi[a] * pj[b];
                    h[(i * nd + a, j * nd + b)] += cross;
                    h[(j * nd + b, i * nd + a)] += cross;
                    // contributions to both diagonal blocks
                    if a < nd && b < nd {
                        let dii = if a == b { -c1 } else { 0.0 } + c2 * pi[a] * pi[b];
                        let djj = if a == b { -c1 } else { 0.0 } + c2 * pj[a] * pj[b];
                        h[(i * nd + a, i * nd + b)] += dii;
                        h[(j * nd + a, j * nd + b)] += djj;
                    }
                }
            }
        }
    }
    for i in 0..n {
        let curv = geom::dot(&points[i], &egrad[i]);
        for a in 0..nd {
            h[(i * nd + a, i * nd + a)] -= curv;
        }
    }
    Ok(h)
}

/// Chart-coordinate columns spanning the rigid-rotation vector fields
/// `x_k -> Ω x_k`, one column per skew generator of R^{m}.
fn rotation_columns(points: &[Vec<f64>]) -> Vec<DVector<f64>> {
    let n = points.len();
    let m = points[0].len();
    let nd = m - 1;
    let charts: Vec<Vec<Vec<f64>>> = points.iter().map(|p| geom::tangent_basis(p)).collect();
    let mut cols = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let mut col = DVector::<f64>::zeros(n * nd);
            for (i, x) in points.iter().enumerate() {
                let mut field = vec![0.0; m];
                field[a] = x[b];
                field[b] = -x[a];
                for (k, u) in charts[i].iter().enumerate() {
                    col[i * nd + k] = geom::dot(u, &field);
                }
            }
            cols.push(col);
        }
    }
    cols
}

/// Orthonormalize `cols`, dropping columns whose residual falls below
/// `tol` times the largest input norm. Returns the surviving basis.
fn gram_schmidt(cols: &[DVector<f64>], tol: f64) -> Vec<DVector<f64>> {
    let max_norm = cols.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for c in cols {
        let mut v = c.clone();
        for _ in 0..2 {
            for q in &basis {
                let proj = q.dot(&v);
                v -= q * proj;
            }
        }
        if v.norm() > tol * max_norm.max(1.0) {
            let n = v.norm();
            basis.push(v / n);
        }
    }
    basis
}

/// Full stability report: spectrum of the tangent Hessian, rotation-gauge
/// rank, and the smallest eigenvalue after deflating the rotation subspace.
pub fn hessian_spectrum(config: &Configuration, params: &EnergyParams) -> Result<EnergyReport> {
    let points = config.points();
    let n = points.len();
    let nd = config.dim();
    let s = params.s;

    let value = energy_points(points, s)?;
    let (sg, shift) = scaled_gradient_points(points, s)?;
    let grad_sup = gradient_sup_norm(&sg) * shift.exp2();

    let h = hessian_matrix(points, s)?;
    let eig = h
        .clone()
        .try_symmetric_eigen(1e-13, 10_000)
        .ok_or_else(|| Error::Eigen("symmetric eigen did not converge".into()))?;
    let mut spectrum: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let order = {
        let mut idx: Vec<usize> = (0..spectrum.len()).collect();
        idx.sort_by(|&a, &b| spectrum[a].total_cmp(&spectrum[b]));
        idx
    };
    spectrum.sort_by(f64::total_cmp);

    let gauge_basis = gram_schmidt(&rotation_columns(points), 1e-10);
    let gauge_dim = gauge_basis.len();

    // near-zero eigenvalues whose eigenvectors lie along the gauge subspace
    let spec_radius = spectrum
        .iter()
        .map(|l| l.abs())
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut gauge_zero_modes = 0;
    for &k in &order {
        let lambda = eig.eigenvalues[k];
        if lambda.abs() > 1e-8 * spec_radius {
            continue;
        }
        let v = eig.eigenvectors.column(k);
        let mut proj = 0.0;
        for q in &gauge_basis {
            let c = q.dot(&v.clone_owned());
            proj += c * c;
        }
        let angle = (1.0 - proj.min(1.0)).max(0.0).sqrt().asin();
        if angle < 1e-4 {
            gauge_zero_modes += 1;
        }
    }

    // complement basis: extend the gauge basis by standard directions
    let dim_total = n * nd;
    let mut full = gauge_basis.clone();
    let mut complement: Vec<DVector<f64>> = Vec::new();
    for k in 0..dim_total {
        if full.len() == dim_total {
            break;
        }
        let mut v = DVector::<f64>::zeros(dim_total);
        v[k] = 1.0;
        for _ in 0..2 {
            for q in &full {
                let proj = q.dot(&v);
                v -= q * proj;
            }
        }
        if v.norm() > 1e-8 {
            let nv = v.norm();
            let q = v / nv;
            full.push(q.clone());
            complement.push(q);
        }
    }
    if full.len() != dim_total {
        return Err(Error::Eigen("failed to complete complement basis".into()));
    }

    let min_constrained_eig = if complement.is_empty() {
        f64::NAN
    } else {
        let b = DMatrix::<f64>::from_columns(&complement);
        let reduced = b.transpose() * &h * &b;
        let sym = (&reduced + reduced.transpose()) * 0.5;
        let eig2 = sym
            .try_symmetric_eigen(1e-13, 10_000)
            .ok_or_else(|| Error::Eigen("reduced eigen did not converge".into()))?;
        eig2.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    };

    Ok(EnergyReport {
        energy: value.energy,
        log2_energy: value.log2_energy,
        gradient_sup_norm: grad_sup,
        hessian_spectrum: spectrum,
        gauge_dim,
        gauge_zero_modes,
        min_constrained_eig,
    })
}

/// Lemma value `f(x) = M (1 - A x)^{-s} + (1 + B x)^{-s}`.
pub fn lemma_m_value(m: f64, a: f64, b: f64, s: f64, x: f64) -> Result<f64> {
    if !(m > 0.0 && a > 0.0 && b > 0.0) {
        return Err(Error::InvalidParam("M, A, B must be positive".into()));
    }
    if !(s > 0.0) {
        return Err(Error::InvalidParam("s must be positive".into()));
    }
    if !(0.0..1.0 / a).contains(&x) {
        return Err(Error::InvalidParam(format!("x = {x} outside [0, 1/A)")));
    }
    Ok(m * (1.0 - a * x).powf(-s) + (1.0 + b * x).powf(-s))
}

/// The lemma's uniform lower bound `M + min(1, A M / B)`.
pub fn lemma_m_bound(m: f64, a: f64, b: f64) -> Result<f64> {
    if !(m > 0.0 && a > 0.0 && b > 0.0) {
        return Err(Error::InvalidParam("M, A, B must be positive".into()));
    }
    Ok(m + (a * m / b).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn params(s: f64) -> EnergyParams {
        EnergyParams::new(s).unwrap()
    }

    #[test]
    fn energy_examples() {
        // BP at s=2: 2/4 + 12/2 + 6/3
        let e = energy(&catalog::bp(), &params(2.0)).unwrap();
        assert!((e.energy - 8.5).abs() < 1e-13);
        // SBP(inf) at s=2: 4/4 + 16/2
        let e = energy(&catalog::sbp_inf(), &params(2.0)).unwrap();
        assert!((e.energy - 9.0).abs() < 1e-13);
        // antipodal pair: 2 * 2^{-s}
        for &s in &[0.5, 1.0, 7.0, 150.0] {
            let e = energy(&catalog::antipodal(), &params(s)).unwrap();
            assert!((e.energy - 2.0 * (-s).exp2()).abs() < 1e-13 * e.energy);
        }
    }

    #[test]
    fn energy_matches_its_log2_form() {
        for &s in &[0.5, 2.0, 16.0, 150.0] {
            for cfg in [catalog::bp(), catalog::sbp_inf(), catalog::tetrahedron()] {
                let e = energy(&cfg, &params(s)).unwrap();
                assert!(
                    (e.energy - e.log2_energy.exp2()).abs() <= 1e-12 * e.energy,
                    "s={s}"
                );
            }
        }
    }

    #[test]
    fn bp_closed_form_examples() {
        assert!((energy_bp_closed(2.0).unwrap() - 8.5).abs() < 1e-14);
        let want = 2.0 / 16.0 + 12.0 / 4.0 + 6.0 / 9.0;
        assert!((energy_bp_closed(4.0).unwrap() - want).abs() < 1e-14);
        // dominant sqrt(2) pairs: 2^{s/2} E -> 12
        let scaled = (200.0 + energy_bp_closed_log2(400.0).unwrap()).exp2();
        assert!((scaled - 12.0).abs() < 1e-6, "{scaled}");
    }

    #[test]
    fn qt_closed_form_examples() {
        // t=0 is SBP(inf) up to isometry
        assert!((energy_qt_closed(0.0, 2.0).unwrap() - 9.0).abs() < 1e-13);
        // t=0.5, s=2 computed by hand: 28/3
        assert!((energy_qt_closed(0.5, 2.0).unwrap() - 28.0 / 3.0).abs() < 1e-13);
        // t = s^{-2/3}: 2^{s/2} E decreasing toward 8
        let scaled: Vec<f64> = [100.0f64, 200.0, 400.0]
            .iter()
            .map(|&s| {
                let t = s.powf(-2.0 / 3.0);
                (s / 2.0 + energy_qt_closed_log2(t, s).unwrap()).exp2()
            })
            .collect();
        assert!(scaled[0] > scaled[1] && scaled[1] > scaled[2]);
        assert!(scaled[2] > 8.0);
        assert!(q_t_err());
    }

    fn q_t_err() -> bool {
        energy_qt_closed(1.0, 2.0).is_err() && energy_qt_closed(-0.2, 2.0).is_err()
    }

    #[test]
    fn closed_forms_match_brute_force() {
        for &s in &[0.5, 1.0, 2.0, 5.0, 15.0, 50.0, 150.0] {
            let bp = energy(&catalog::bp(), &params(s)).unwrap().energy;
            let closed = energy_bp_closed(s).unwrap();
            assert!((bp - closed).abs() <= 1e-13 * closed.max(bp), "s={s}");
            for &t in &[0.0, 0.1, 0.5, 0.9] {
                let qt = energy(&catalog::q_t(t).unwrap(), &params(s)).unwrap().energy;
                let closed = energy_qt_closed(t, s).unwrap();
                assert!(
                    (qt - closed).abs() <= 1e-12 * closed.max(qt),
                    "s={s} t={t}: {qt} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn scaling_law_via_closed_forms() {
        // shrinking the pyramid by lambda multiplies E_s by lambda^{-s};
        // realized by comparing the explicit term structure
        let (s, t) = (7.0f64, 0.3f64);
        let lambda: f64 = 0.85;
        let u = 1.0 - t * t;
        let scaled = 4.0 * (2.0 * lambda * u.sqrt()).powf(-s)
            + 8.0 * (lambda * (2.0 * u).sqrt()).powf(-s)
            + 8.0 * (lambda * (2.0 * (1.0 + t)).sqrt()).powf(-s);
        let want = lambda.powf(-s) * energy_qt_closed(t, s).unwrap();
        assert!((scaled - want).abs() < 1e-12 * want);
    }

    #[test]
    fn gradient_is_tangent() {
        let cfg = catalog::q_t(0.4).unwrap();
        let g = gradient(&cfg, &params(3.0)).unwrap();
        for (gi, x) in g.iter().zip(cfg.points()) {
            assert!(geom::dot(gi, x).abs() < 1e-12 * geom::norm(gi).max(1.0));
        }
    }

    #[test]
    fn symmetric_configs_are_critical() {
        for &s in &[1.0, 2.0, 8.0] {
            let g = gradient(&catalog::tetrahedron(), &params(s)).unwrap();
            assert!(gradient_sup_norm(&g) < 1e-12, "s={s}");
        }
        // BP is critical at every s by its dihedral symmetry
        let g = gradient(&catalog::bp(), &params(16.0)).unwrap();
        assert!(gradient_sup_norm(&g) < 1e-12);
    }

    #[test]
    fn sbp_inf_is_not_critical_at_finite_s() {
        let g = gradient(&catalog::sbp_inf(), &params(16.0)).unwrap();
        assert!(gradient_sup_norm(&g) > 1e-3);
    }

    fn fd_gradient(cfg: &Configuration, s: f64, h: f64) -> Vec<Vec<f64>> {
        let pts = cfg.points().to_vec();
        let mut out = Vec::with_capacity(pts.len());
        for i in 0..pts.len() {
            let basis = geom::tangent_basis(&pts[i]);
            let mut gi = vec![0.0; pts[0].len()];
            for u in &basis {
                let mut plus = pts.clone();
                let mut moved = plus[i].clone();
                geom::axpy(&mut moved, h, u);
                geom::normalize_mut(&mut moved);
                plus[i] = moved;
                let mut minus = pts.clone();
                let mut moved = minus[i].clone();
                geom::axpy(&mut moved, -h, u);
                geom::normalize_mut(&mut moved);
                minus[i] = moved;
                let ep = energy_points(&plus, s).unwrap().energy;
                let em = energy_points(&minus, s).unwrap().energy;
                geom::axpy(&mut gi, (ep - em) / (2.0 * h), u);
            }
            out.push(gi);
        }
        out
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = crate::rng::stream(11, 0);
        for trial in 0..4 {
            let cfg = crate::optimize::random_separated_config(&mut rng, 2, 5, 0.5);
            for &s in &[1.0, 3.0, 8.0, 20.0] {
                let g = gradient(&cfg, &params(s)).unwrap();
                let fd = fd_gradient(&cfg, s, 1e-5);
                let scale = gradient_sup_norm(&g).max(1.0);
                for (gi, fi) in g.iter().zip(&fd) {
                    for (a, b) in gi.iter().zip(fi) {
                        assert!(
                            (a - b).abs() <= 1e-6 * scale,
                            "trial {trial} s={s}: {a} vs {b}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn hessian_matches_fd_of_gradient() {
        let cfg = catalog::q_t(0.35).unwrap();
        let s = 4.0;
        let h = hessian_matrix(cfg.points(), s).unwrap();
        // finite-difference the analytic gradient in chart coordinates
        let pts = cfg.points().to_vec();
        let nd = cfg.dim();
        let step = 1e-6;
        for i in 0..pts.len() {
            let basis = geom::tangent_basis(&pts[i]);
            for (a, u) in basis.iter().enumerate() {
                let shifted = |sign: f64| {
                    let mut q = pts.clone();
                    let mut moved = q[i].clone();
                    geom::axpy(&mut moved, sign * step, u);
                    geom::normalize_mut(&mut moved);
                    q[i] = moved;
                    q
                };
                let gp = scaled_gradient_points(&shifted(1.0), s).unwrap();
                let gm = scaled_gradient_points(&shifted(-1.0), s).unwrap();
                for j in 0..pts.len() {
                    // evaluate both gradients in the *base* charts
                    let bj = geom::tangent_basis(&pts[j]);
                    for (b, v) in bj.iter().enumerate() {
                        let fp = geom::dot(&gp.0[j], v) * gp.1.exp2();
                        let fm = geom::dot(&gm.0[j], v) * gm.1.exp2();
                        let fd = (fp - fm) / (2.0 * step);
                        let hv = h[(j * nd + b, i * nd + a)];
                        assert!(
                            (fd - hv).abs() < 2e-4 * (1.0 + hv.abs()),
                            "H[{j},{b};{i},{a}] {hv} vs fd {fd}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn hessian_is_symmetric_with_real_spectrum() {
        let cfg = catalog::bp();
        let h = hessian_matrix(cfg.points(), 6.0).unwrap();
        for i in 0..h.nrows() {
            for j in 0..h.ncols() {
                assert!((h[(i, j)] - h[(j, i)]).abs() < 1e-12);
            }
        }
        let rep = hessian_spectrum(&cfg, &params(6.0)).unwrap();
        assert_eq!(rep.hessian_spectrum.len(), 10);
        assert!(rep.hessian_spectrum.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn bp_stability_flips_near_threshold() {
        let bp = catalog::bp();
        let low = hessian_spectrum(&bp, &params(20.0)).unwrap();
        let high = hessian_spectrum(&bp, &params(22.0)).unwrap();
        assert!(low.min_constrained_eig > 0.0, "{}", low.min_constrained_eig);
        assert!(high.min_constrained_eig < 0.0, "{}", high.min_constrained_eig);
    }

    #[test]
    fn sbp_stability_flips_near_threshold() {
        let unstable = hessian_spectrum(&catalog::sbp_opt(13.0).unwrap(), &params(13.0)).unwrap();
        let stable = hessian_spectrum(&catalog::sbp_opt(14.0).unwrap(), &params(14.0)).unwrap();
        assert!(unstable.min_constrained_eig < 0.0);
        assert!(stable.min_constrained_eig > 0.0);
    }

    #[test]
    fn tetrahedron_gauge_modes() {
        let rep = hessian_spectrum(&catalog::tetrahedron(), &params(2.0)).unwrap();
        assert!(rep.gradient_sup_norm < 1e-12);
        assert_eq!(rep.gauge_dim, 3);
        assert_eq!(rep.gauge_zero_modes, 3);
        let spec_radius = rep
            .hessian_spectrum
            .iter()
            .fold(0.0f64, |m, l| m.max(l.abs()));
        let near_zero = rep
            .hessian_spectrum
            .iter()
            .filter(|l| l.abs() <= 1e-8 * spec_radius)
            .count();
        assert_eq!(near_zero, 3);
        assert!(rep.min_constrained_eig > 0.0);
    }

    #[test]
    fn antipodal_rotation_subspace_is_rank_two() {
        let rep = hessian_spectrum(&catalog::antipodal(), &params(2.0)).unwrap();
        assert_eq!(rep.gauge_dim, 2);
    }

    #[test]
    fn spectrum_is_rotation_invariant() {
        let cfg = catalog::q_t(0.2).unwrap();
        let rot = vec![
            vec![0.6, -0.8, 0.0],
            vec![0.8, 0.6, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        let rotated = Configuration::new(2, geom::apply_matrix(cfg.points(), &rot)).unwrap();
        let a = hessian_spectrum(&cfg, &params(9.0)).unwrap();
        let b = hessian_spectrum(&rotated, &params(9.0)).unwrap();
        assert!((a.energy - b.energy).abs() < 1e-9 * a.energy);
        assert!(
            (a.min_constrained_eig - b.min_constrained_eig).abs()
                < 1e-9 * a.min_constrained_eig.abs().max(1.0)
        );
        for (x, y) in a.hessian_spectrum.iter().zip(&b.hessian_spectrum) {
            assert!((x - y).abs() < 1e-9 * x.abs().max(1.0));
        }
    }

    #[test]
    fn lemma_examples() {
        // equality at x0 = 0 when B <= AM
        let f = lemma_m_value(1.0, 1.0, 1.0, 4.0, 0.0).unwrap();
        assert_eq!(f, 2.0);
        assert_eq!(lemma_m_bound(1.0, 1.0, 1.0).unwrap(), 2.0);
        // M=1, A=1, B=4: bound is 1 + 1/4
        let bound = lemma_m_bound(1.0, 1.0, 4.0).unwrap();
        assert_eq!(bound, 1.25);
        for k in 0..100 {
            let x = k as f64 / 100.0 * (1.0 - 1e-6);
            let f = lemma_m_value(1.0, 1.0, 4.0, 3.0, x).unwrap();
            assert!(f >= bound - 1e-12, "x={x} f={f}");
        }
        // pole as x -> 1/A
        let f = lemma_m_value(1.0, 2.0, 1.0, 5.0, 0.5 - 1e-14).unwrap();
        assert!(f > 1e10);
        assert!(lemma_m_value(1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(lemma_m_value(-1.0, 1.0, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn params_guard_range() {
        assert!(EnergyParams::new(0.0).is_err());
        assert!(EnergyParams::new(-3.0).is_err());
        assert!(EnergyParams::new(2000.5).is_err());
        assert!(EnergyParams::new(1999.0).is_ok());
    }
}
