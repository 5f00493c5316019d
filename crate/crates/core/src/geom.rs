//! Small dense-vector helpers for points in R^{n+1}.
//!
//! Points are plain `&[f64]` slices; everything here is allocation-light and
//! dimension-agnostic. Heavier linear algebra (eigen decompositions, QR)
//! lives where it is used and goes through nalgebra.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn scale(a: &[f64], c: f64) -> Vec<f64> {
    a.iter().map(|x| x * c).collect()
}

pub fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

pub fn normalize(a: &[f64]) -> Vec<f64> {
    let n = norm(a);
    a.iter().map(|x| x / n).collect()
}

pub fn normalize_mut(a: &mut [f64]) {
    let n = norm(a);
    for x in a.iter_mut() {
        *x /= n;
    }
}

/// Remove the component of `v` along the unit vector `x`.
pub fn project_tangent(v: &[f64], x: &[f64]) -> Vec<f64> {
    let c = dot(v, x);
    v.iter().zip(x).map(|(vi, xi)| vi - c * xi).collect()
}

/// Orthonormal basis of the tangent space of S^n at the unit vector `x`,
/// returned as `n` vectors of length `n+1`.
///
/// Built from the Householder reflection mapping `e_k -> ±x` (k chosen as
/// the largest-magnitude coordinate of `x` for stability); the remaining
/// columns of the reflector are the basis. Deterministic in `x`.
pub fn tangent_basis(x: &[f64]) -> Vec<Vec<f64>> {
    let m = x.len();
    let k = x
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(i, _)| i)
        .unwrap();
    let sign = if x[k] >= 0.0 { 1.0 } else { -1.0 };
    // v = x + sign*e_k keeps |v|^2 = 2(1 + |x_k|) away from zero; the
    // reflector H = I - 2 vv^T/|v|^2 sends x to -sign*e_k, so its other
    // columns span the tangent space at x.
    let mut v = x.to_vec();
    v[k] += sign;
    let vv = dot(&v, &v);
    let mut basis = Vec::with_capacity(m - 1);
    for j in 0..m {
        if j == k {
            continue;
        }
        let mut col = vec![0.0; m];
        col[j] = 1.0;
        let c = 2.0 * v[j] / vv;
        for i in 0..m {
            col[i] -= c * v[i];
        }
        basis.push(col);
    }
    basis
}

/// Apply an (n+1)x(n+1) matrix given in row-major order to every point.
pub fn apply_matrix(points: &[Vec<f64>], mat: &[Vec<f64>]) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|p| mat.iter().map(|row| dot(row, p)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tangent_basis_is_orthonormal_and_tangent() {
        let xs = [
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
            vec![-0.6, 0.8, 0.0],
            normalize(&[0.3, -0.4, 0.5, 0.7]),
        ];
        for x in xs {
            let b = tangent_basis(&x);
            assert_eq!(b.len(), x.len() - 1);
            for (i, u) in b.iter().enumerate() {
                assert!(dot(u, &x).abs() < 1e-14);
                assert!((norm(u) - 1.0).abs() < 1e-14);
                for v in &b[i + 1..] {
                    assert!(dot(u, v).abs() < 1e-14);
                }
            }
        }
    }
}
