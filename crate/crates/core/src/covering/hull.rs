//! Incremental 3D convex hull with exact-sign orientation predicates.
//!
//! Visibility decisions go through a static floating-point filter; when the
//! determinant is too close to zero to trust, the sign is recomputed in
//! exact rational arithmetic (f64 coordinates convert exactly). Catalog
//! configurations have many cocircular quadruples, so the exact path is
//! exercised routinely, not just in adversarial input.

use num::{BigRational, FromPrimitive, Signed, Zero};

use crate::error::{Error, Result};

/// Sign of det[b-a, c-a, d-a]: +1 when `d` lies on the outward side of the
/// oriented plane through `a, b, c`, -1 below, 0 on the plane.
pub fn orient3d(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> i32 {
    let adx = a[0] - d[0];
    let ady = a[1] - d[1];
    let adz = a[2] - d[2];
    let bdx = b[0] - d[0];
    let bdy = b[1] - d[1];
    let bdz = b[2] - d[2];
    let cdx = c[0] - d[0];
    let cdy = c[1] - d[1];
    let cdz = c[2] - d[2];

    let det = adx * (bdy * cdz - bdz * cdy) - ady * (bdx * cdz - bdz * cdx)
        + adz * (bdx * cdy - bdy * cdx);
    let perm = adx.abs() * (bdy.abs() * cdz.abs() + bdz.abs() * cdy.abs())
        + ady.abs() * (bdx.abs() * cdz.abs() + bdz.abs() * cdx.abs())
        + adz.abs() * (bdx.abs() * cdy.abs() + bdy.abs() * cdx.abs());
    // conservative static filter; f64 evaluation is trusted well above the
    // worst-case rounding of the 3x3 determinant
    if det.abs() > 1e-12 * perm {
        return if det > 0.0 { 1 } else { -1 };
    }
    orient3d_exact(a, b, c, d)
}

fn orient3d_exact(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> i32 {
    let r = |x: f64| BigRational::from_f64(x).expect("finite coordinate");
    let sub = |p: &[f64], q: &[f64]| {
        [
            r(p[0]) - r(q[0]),
            r(p[1]) - r(q[1]),
            r(p[2]) - r(q[2]),
        ]
    };
    let u = sub(a, d);
    let v = sub(b, d);
    let w = sub(c, d);
    let det = &u[0] * (&v[1] * &w[2] - &v[2] * &w[1]) - &u[1] * (&v[0] * &w[2] - &v[2] * &w[0])
        + &u[2] * (&v[0] * &w[1] - &v[1] * &w[0]);
    if det.is_zero() {
        0
    } else if det.is_positive() {
        1
    } else {
        -1
    }
}

/// Triangular facets of the convex hull, outward-oriented, as vertex index
/// triples. Requires at least 4 affinely independent points.
pub fn convex_hull_3d(points: &[Vec<f64>]) -> Result<Vec<[usize; 3]>> {
    let n = points.len();
    if n < 4 {
        return Err(Error::DegenerateHull(format!("{n} points, need >= 4")));
    }

    // initial simplex: spread in one axis, then farthest from the line,
    // then a point off the plane (exact-verified)
    let i0 = 0;
    let i1 = (0..n)
        .max_by(|&i, &j| {
            dist2(&points[i], &points[i0]).total_cmp(&dist2(&points[j], &points[i0]))
        })
        .unwrap();
    if dist2(&points[i1], &points[i0]) == 0.0 {
        return Err(Error::DegenerateHull("all points coincide".into()));
    }
    let i2 = (0..n)
        .max_by(|&i, &j| {
            line_dist2(&points[i0], &points[i1], &points[i])
                .total_cmp(&line_dist2(&points[i0], &points[i1], &points[j]))
        })
        .unwrap();
    if line_dist2(&points[i0], &points[i1], &points[i2]) == 0.0 {
        return Err(Error::DegenerateHull("points are collinear".into()));
    }
    let mut i3 = usize::MAX;
    let mut best = 0.0;
    for i in 0..n {
        if i == i0 || i == i1 || i == i2 {
            continue;
        }
        let v = plane_det(&points[i0], &points[i1], &points[i2], &points[i]).abs();
        if v > best {
            best = v;
            i3 = i;
        }
    }
    if i3 == usize::MAX
        || orient3d(&points[i0], &points[i1], &points[i2], &points[i3]) == 0
    {
        return Err(Error::DegenerateHull("points are coplanar".into()));
    }

    // orient the starting tetrahedron so every facet sees i-th opposite
    // vertex below it
    let (a, b) = if orient3d(&points[i0], &points[i1], &points[i2], &points[i3]) > 0 {
        (i1, i0)
    } else {
        (i0, i1)
    };
    let mut facets: Vec<[usize; 3]> = vec![[a, b, i2], [a, i3, b], [a, i2, i3], [b, i3, i2]];

    for p in 0..n {
        if p == i0 || p == i1 || p == i2 || p == i3 {
            continue;
        }
        insert_point(points, &mut facets, p);
    }
    Ok(facets)
}

fn insert_point(points: &[Vec<f64>], facets: &mut Vec<[usize; 3]>, p: usize) {
    let visible: Vec<bool> = facets
        .iter()
        .map(|f| orient3d(&points[f[0]], &points[f[1]], &points[f[2]], &points[p]) > 0)
        .collect();
    if visible.iter().all(|v| !v) {
        return; // inside or on the hull
    }
    // horizon: directed edges of visible facets whose twin is invisible
    let mut edge_owner = std::collections::HashMap::new();
    for (fi, f) in facets.iter().enumerate() {
        for k in 0..3 {
            edge_owner.insert((f[k], f[(k + 1) % 3]), fi);
        }
    }
    let mut horizon = Vec::new();
    for (fi, f) in facets.iter().enumerate() {
        if !visible[fi] {
            continue;
        }
        for k in 0..3 {
            let e = (f[k], f[(k + 1) % 3]);
            match edge_owner.get(&(e.1, e.0)) {
                Some(&twin) if visible[twin] => {}
                _ => horizon.push(e),
            }
        }
    }
    let mut next: Vec<[usize; 3]> = facets
        .iter()
        .zip(&visible)
        .filter(|(_, &v)| !v)
        .map(|(f, _)| *f)
        .collect();
    for (u, v) in horizon {
        next.push([u, v, p]);
    }
    *facets = next;
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn line_dist2(a: &[f64], b: &[f64], p: &[f64]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let ap = [p[0] - a[0], p[1] - a[1], p[2] - a[2]];
    let cr = [
        ab[1] * ap[2] - ab[2] * ap[1],
        ab[2] * ap[0] - ab[0] * ap[2],
        ab[0] * ap[1] - ab[1] * ap[0],
    ];
    let n2: f64 = ab.iter().map(|x| x * x).sum();
    if n2 == 0.0 {
        return 0.0;
    }
    cr.iter().map(|x| x * x).sum::<f64>() / n2
}

fn plane_det(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> f64 {
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let w = [d[0] - a[0], d[1] - a[1], d[2] - a[2]];
    u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
}

/// Unit outward normal of a facet.
pub fn facet_normal(points: &[Vec<f64>], f: &[usize; 3]) -> [f64; 3] {
    let (a, b, c) = (&points[f[0]], &points[f[1]], &points[f[2]]);
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let mut n = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    for x in n.iter_mut() {
        *x /= len;
    }
    n
}
