//! Local maximization of the min-distance-to-configuration function on the
//! sphere, via soft-min gradient ascent with a decreasing temperature
//! ladder. Deterministic; steps are only accepted when the true (unsmoothed)
//! objective improves.

use crate::geom;

pub fn min_dist(points: &[Vec<f64>], y: &[f64]) -> f64 {
    points
        .iter()
        .map(|p| geom::dist(p, y))
        .fold(f64::INFINITY, f64::min)
}

/// Soft-min ascent direction at `y`: the projected gradient of
/// `-1/beta ln Σ exp(-beta d_i)`, which blends the gradients of the
/// near-active distances.
fn soft_direction(points: &[Vec<f64>], y: &[f64], beta: f64) -> Vec<f64> {
    let dists: Vec<f64> = points.iter().map(|p| geom::dist(p, y)).collect();
    let dmin = dists.iter().copied().fold(f64::INFINITY, f64::min);
    let mut dir = vec![0.0; y.len()];
    let mut wsum = 0.0;
    for (p, &d) in points.iter().zip(&dists) {
        let w = (-beta * (d - dmin)).exp();
        wsum += w;
        if d > 0.0 {
            let c = w / d;
            for (o, (yi, pi)) in dir.iter_mut().zip(y.iter().zip(p)) {
                *o += c * (yi - pi);
            }
        }
    }
    for o in dir.iter_mut() {
        *o /= wsum;
    }
    geom::project_tangent(&dir, y)
}

/// Polish a candidate witness. Returns the improved point and its min
/// distance. Terminates a stage when the step size falls below 1e-12 or the
/// improvement below 1e-14.
pub fn polish(points: &[Vec<f64>], start: &[f64], max_iters_per_stage: usize) -> (Vec<f64>, f64) {
    let mut y = geom::normalize(start);
    let mut f = min_dist(points, &y);
    if f == 0.0 {
        return (y, f);
    }
    let ladder = [
        0.5, 0.2, 0.08, 0.03, 0.01, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5, 3e-6,
    ];
    for &tau_rel in &ladder {
        let beta = 1.0 / (tau_rel * f.max(1e-9));
        let mut step = tau_rel * f;
        for _ in 0..max_iters_per_stage {
            let g = soft_direction(points, &y, beta);
            let gn = geom::norm(&g);
            if gn < 1e-15 {
                break;
            }
            let mut accepted = false;
            while step >= 1e-12 {
                let mut trial = y.clone();
                geom::axpy(&mut trial, step / gn, &g);
                geom::normalize_mut(&mut trial);
                let ft = min_dist(points, &trial);
                if ft > f + 1e-14 {
                    let gain = ft - f;
                    y = trial;
                    f = ft;
                    accepted = true;
                    step *= 1.5;
                    if gain < 1e-14 {
                        break;
                    }
                } else {
                    step *= 0.5;
                }
            }
            if !accepted {
                break;
            }
        }
    }
    (y, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn polish_finds_square_cap_center() {
        // base square of SBP(inf): exact witness -e2 at distance sqrt(2)
        let cfg = catalog::sbp_inf();
        let start = geom::normalize(&[0.05, -0.9, 0.1]);
        let (w, f) = polish(cfg.points(), &start, 100);
        assert!((f - std::f64::consts::SQRT_2).abs() < 1e-9, "f = {f}");
        assert!((w[1] + 1.0).abs() < 1e-4, "witness {w:?}");
    }

    #[test]
    fn polish_never_decreases() {
        let cfg = catalog::icosahedron();
        let start = geom::normalize(&[0.3, 0.2, 0.93]);
        let f0 = min_dist(cfg.points(), &start);
        let (_, f) = polish(cfg.points(), &start, 100);
        assert!(f >= f0);
    }
}
