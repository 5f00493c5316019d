//! Best-packing configurations on the standard 1/3 Cantor set, in exact
//! rational arithmetic.
//!
//! The depth-d model covers the set by `2^d` closed intervals of length
//! `3^{-d}`; the `2^k + 1` leading depth-k endpoints (ending at 2/3) form a
//! best packing with separation exactly `3^{-k}` (pigeonhole) and covering
//! radius exactly 1/3, witnessed at the right endpoint 1. Their mesh ratio
//! `3^{k-1}` is unbounded in k — the counterpoint to the sphere results,
//! where it stays below 1 for the right packings.
//!
//! Everything is integer arithmetic over the common denominator `3^d`
//! (i128), so the claims are checked as identities, not within tolerance.

use num::rational::Ratio;

use crate::error::{Error, Result};

pub type Rat = Ratio<i128>;

/// Depth-limited model of the Cantor set: the `2^depth` surviving intervals
/// and their sorted endpoints.
#[derive(Debug, Clone)]
pub struct CantorModel {
    pub depth: u32,
    /// ternary address strings over {0, 2}, one per interval, ascending
    pub intervals: Vec<String>,
    /// the 2^{depth+1} endpoints, ascending
    pub endpoints: Vec<Rat>,
}

/// A best-packing configuration of `2^k + 1` points with its exact
/// diagnostics.
#[derive(Debug, Clone)]
pub struct CantorPacking {
    pub k: u32,
    pub points: Vec<Rat>,
    pub delta: Rat,
    pub eta: Rat,
    pub gamma: Rat,
}

fn check_depth(depth: u32) -> Result<()> {
    if !(1..=30).contains(&depth) {
        return Err(Error::InvalidParam(format!(
            "depth = {depth} outside 1..=30"
        )));
    }
    Ok(())
}

fn pow3(d: u32) -> i128 {
    3i128.pow(d)
}

/// Left endpoint numerator (over 3^depth) of the interval with binary
/// address `index`: each address bit becomes a ternary digit 0 or 2.
fn left_numerator(index: u64, depth: u32) -> i128 {
    let mut num = 0i128;
    for bit in 0..depth {
        let digit = (index >> (depth - 1 - bit)) & 1;
        num = num * 3 + 2 * digit as i128;
    }
    num
}

pub fn cantor_model(depth: u32) -> Result<CantorModel> {
    check_depth(depth)?;
    let count = 1u64 << depth;
    let den = pow3(depth);
    let mut intervals = Vec::with_capacity(count as usize);
    let mut endpoints = Vec::with_capacity(2 * count as usize);
    for index in 0..count {
        let address: String = (0..depth)
            .map(|bit| {
                if (index >> (depth - 1 - bit)) & 1 == 1 {
                    '2'
                } else {
                    '0'
                }
            })
            .collect();
        intervals.push(address);
        let left = left_numerator(index, depth);
        endpoints.push(Rat::new(left, den));
        endpoints.push(Rat::new(left + 1, den));
    }
    Ok(CantorModel {
        depth,
        intervals,
        endpoints,
    })
}

/// The packing `{x_1^k, ..., x_{2^k+1}^k = 2/3}`: all depth-k endpoints in
/// [0, 1/3] plus the point 2/3. `eval_depth` controls the refinement at
/// which the covering radius is evaluated; the maximum is attained at the
/// endpoint 1 at every depth, so the value stabilizes immediately.
pub fn cantor_packing(k: u32, eval_depth: u32) -> Result<CantorPacking> {
    check_depth(k)?;
    check_depth(eval_depth)?;
    if eval_depth < k + 2 {
        return Err(Error::InvalidParam(format!(
            "eval_depth = {eval_depth} must be >= k + 2 = {}",
            k + 2
        )));
    }

    let n_points = (1u64 << k) + 1;
    let den_k = pow3(k);
    // the first 2^k endpoints at depth k are exactly those in [0, 1/3]
    let mut points = Vec::with_capacity(n_points as usize);
    for index in 0..(1u64 << (k - 1)) {
        let left = left_numerator(index, k);
        points.push(Rat::new(left, den_k));
        points.push(Rat::new(left + 1, den_k));
    }
    points.push(Rat::new(2, 3));
    debug_assert_eq!(points.len(), n_points as usize);
    debug_assert!(points.windows(2).all(|w| w[0] < w[1]));

    let delta = points
        .windows(2)
        .map(|w| w[1] - w[0])
        .min()
        .expect("at least two points");

    // exact max-min over all depth-eval_depth endpoints, streamed as
    // integers over the common denominator 3^eval_depth
    let den_e = pow3(eval_depth);
    let scale = pow3(eval_depth - k);
    let scaled_points: Vec<i128> = points.iter().map(|p| p.numer() * (den_e / p.denom())).collect();
    debug_assert!(scale > 0);
    let mut eta_num = 0i128;
    for index in 0..(1u64 << eval_depth) {
        let left = left_numerator(index, eval_depth);
        for y in [left, left + 1] {
            // nearest packing point by binary search over the sorted list
            let pos = scaled_points.partition_point(|&p| p <= y);
            let mut best = i128::MAX;
            if pos < scaled_points.len() {
                best = best.min(scaled_points[pos] - y);
            }
            if pos > 0 {
                best = best.min(y - scaled_points[pos - 1]);
            }
            eta_num = eta_num.max(best);
        }
    }
    let eta = Rat::new(eta_num, den_e);
    let gamma = eta / delta;
    Ok(CantorPacking {
        k,
        points,
        delta,
        eta,
        gamma,
    })
}

/// Pigeonhole upper bound `3^{-k}` on the separation of any `2^k + 1`
/// points in the Cantor set: some depth-k interval holds two of them.
pub fn cantor_pigeonhole_bound(k: u32) -> Result<Rat> {
    check_depth(k)?;
    Ok(Rat::new(1, pow3(k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i128, d: i128) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn model_depth_one_and_two() {
        let m = cantor_model(1).unwrap();
        assert_eq!(m.intervals, vec!["0", "2"]);
        assert_eq!(
            m.endpoints,
            vec![rat(0, 1), rat(1, 3), rat(2, 3), rat(1, 1)]
        );

        let m = cantor_model(2).unwrap();
        assert_eq!(m.endpoints.len(), 8);
        assert!(m.endpoints.contains(&rat(1, 9)));
        assert!(m.endpoints.contains(&rat(2, 9)));
        assert_eq!(m.intervals, vec!["00", "02", "20", "22"]);
    }

    #[test]
    fn model_endpoint_count() {
        for depth in 1..=10 {
            let m = cantor_model(depth).unwrap();
            assert_eq!(m.endpoints.len(), 1 << (depth + 1));
            assert!(m.endpoints.windows(2).all(|w| w[0] < w[1]));
            // adjacent same-interval endpoints differ by exactly 3^{-depth}
            for pair in m.endpoints.chunks(2) {
                assert_eq!(pair[1] - pair[0], rat(1, pow3(depth)));
            }
        }
        assert!(cantor_model(0).is_err());
        assert!(cantor_model(31).is_err());
    }

    #[test]
    fn packing_k2_exact_values() {
        let p = cantor_packing(2, 6).unwrap();
        assert_eq!(
            p.points,
            vec![rat(0, 1), rat(1, 9), rat(2, 9), rat(1, 3), rat(2, 3)]
        );
        assert_eq!(p.delta, rat(1, 9));
        assert_eq!(p.eta, rat(1, 3));
        assert_eq!(p.gamma, rat(3, 1));
    }

    #[test]
    fn packing_gamma_growth() {
        assert_eq!(cantor_packing(1, 4).unwrap().gamma, rat(1, 1));
        assert_eq!(cantor_packing(5, 8).unwrap().gamma, rat(81, 1));
        let mut prev = rat(0, 1);
        for k in 1..=8 {
            let g = cantor_packing(k, k + 3).unwrap().gamma;
            assert_eq!(g, Rat::from_integer(pow3(k - 1)));
            assert!(g > prev);
            prev = g;
        }
    }

    #[test]
    fn packing_is_exactly_stable_in_eval_depth() {
        for k in 1..=6 {
            let reference = cantor_packing(k, k + 2).unwrap();
            for extra in 3..=6 {
                let p = cantor_packing(k, k + extra).unwrap();
                assert_eq!(p.eta, reference.eta);
                assert_eq!(p.eta, rat(1, 3));
                assert_eq!(p.delta, rat(1, pow3(k)));
            }
        }
    }

    #[test]
    fn pigeonhole_bound_examples() {
        assert_eq!(cantor_pigeonhole_bound(1).unwrap(), rat(1, 3));
        assert_eq!(cantor_pigeonhole_bound(3).unwrap(), rat(1, 27));
        for k in 1..=12 {
            let p = cantor_packing(k, k + 2).unwrap();
            assert_eq!(p.delta, cantor_pigeonhole_bound(k).unwrap());
        }
    }

    #[test]
    fn packing_validates_eval_depth() {
        assert!(cantor_packing(3, 4).is_err());
        assert!(cantor_packing(0, 4).is_err());
    }
}
