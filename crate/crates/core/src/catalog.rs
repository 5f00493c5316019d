//! Exact constructions of the named extremal configurations.
//!
//! Every constructor produces analytically specified coordinates; the only
//! rounding is the final f64 conversion. `by_name` exposes the whole family
//! as a registry keyed by the CLI-facing names.

use crate::config::{contact_graph, Configuration};
use crate::error::{Error, Result};

/// Golden ratio.
const PHI: f64 = 1.618033988749894848;

/// A catalog configuration together with its registry name and a short
/// provenance note.
#[derive(Debug, Clone)]
pub struct NamedConfig {
    pub name: String,
    pub config: Configuration,
    pub notes: String,
}

fn cfg(dim: usize, points: Vec<Vec<f64>>) -> Configuration {
    Configuration::new(dim, points).expect("catalog construction is valid")
}

/// Bipyramid: two antipodal poles and three equally spaced equatorial points.
pub fn bp() -> Configuration {
    let mut pts = vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, -1.0]];
    for k in 0..3 {
        let a = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
        pts.push(vec![a.cos(), a.sin(), 0.0]);
    }
    cfg(2, pts)
}

/// Square pyramid of height parameter `t`: four base vertices at latitude
/// `-t` and the apex at `e_2`. `t = 0` puts the base on a great circle.
pub fn q_t(t: f64) -> Result<Configuration> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::InvalidParam(format!("t = {t} outside [0, 1)")));
    }
    let a = (1.0 - t * t).sqrt();
    Ok(cfg(
        2,
        vec![
            vec![a, -t, 0.0],
            vec![-a, -t, 0.0],
            vec![0.0, -t, a],
            vec![0.0, -t, -a],
            vec![0.0, 1.0, 0.0],
        ],
    ))
}

/// The limit square-base pyramid: `{e1, -e1, e2, e3, -e3}`.
pub fn sbp_inf() -> Configuration {
    cfg(
        2,
        vec![
            vec![1.0, 0.0, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, -1.0],
        ],
    )
}

/// Square pyramid with the energy-optimal height for exponent `s`.
pub fn sbp_opt(s: f64) -> Result<Configuration> {
    let (t_star, _) = crate::optimize::sbp_height_opt(s)?;
    q_t(t_star)
}

/// The twelve vertices `(0, ±1, ±φ)` and cyclic shifts, normalized.
pub fn icosahedron() -> Configuration {
    let r = (1.0 + PHI * PHI).sqrt();
    let mut pts = Vec::with_capacity(12);
    for &s1 in &[1.0, -1.0] {
        for &s2 in &[1.0, -1.0] {
            pts.push(vec![0.0, s1 / r, s2 * PHI / r]);
            pts.push(vec![s1 / r, s2 * PHI / r, 0.0]);
            pts.push(vec![s2 * PHI / r, 0.0, s1 / r]);
        }
    }
    cfg(2, pts)
}

/// Icosahedron with its first vertex removed: the unique 11-point
/// best packing, with covering radius equal to its separation.
pub fn icosahedron_minus_vertex() -> Configuration {
    let ico = icosahedron();
    let pts = ico.points()[1..].to_vec();
    cfg(2, pts)
}

/// The 120 vertices of the 600-cell on S³: 8 permutations of (±1,0,0,0),
/// 16 sign patterns of (±1/2,±1/2,±1/2,±1/2), and 96 even permutations of
/// (±φ/2, ±1/2, ±1/(2φ), 0).
pub fn cell600() -> Configuration {
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(120);
    for axis in 0..4 {
        for &s in &[1.0, -1.0] {
            let mut p = vec![0.0; 4];
            p[axis] = s;
            pts.push(p);
        }
    }
    for code in 0..16u32 {
        let p: Vec<f64> = (0..4)
            .map(|b| if code >> b & 1 == 1 { -0.5 } else { 0.5 })
            .collect();
        pts.push(p);
    }
    // even permutations of 4 indices
    let perms = [
        [0, 1, 2, 3],
        [0, 2, 3, 1],
        [0, 3, 1, 2],
        [1, 0, 3, 2],
        [1, 2, 0, 3],
        [1, 3, 2, 0],
        [2, 0, 1, 3],
        [2, 1, 3, 0],
        [2, 3, 0, 1],
        [3, 0, 2, 1],
        [3, 1, 0, 2],
        [3, 2, 1, 0],
    ];
    let base = [PHI / 2.0, 0.5, 1.0 / (2.0 * PHI), 0.0];
    for perm in &perms {
        for code in 0..8u32 {
            let signed = [
                if code & 1 == 1 { -base[0] } else { base[0] },
                if code >> 1 & 1 == 1 { -base[1] } else { base[1] },
                if code >> 2 & 1 == 1 { -base[2] } else { base[2] },
                0.0,
            ];
            let p: Vec<f64> = perm.iter().map(|&i| signed[i]).collect();
            pts.push(p);
        }
    }
    debug_assert_eq!(pts.len(), 120);
    cfg(3, pts)
}

/// The 600-cell minus a contact edge `{x1, x2}` and the exactly five common
/// contact neighbors of both, leaving 113 points.
///
/// The edge is chosen as the lexicographically smallest contact pair over
/// the coordinate-sorted vertex list, which makes the construction
/// deterministic; vertex transitivity makes any choice equivalent.
pub fn cell600_minus7() -> Result<Configuration> {
    let cell = cell600();
    let mut pts = cell.points().to_vec();
    pts.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let sorted = Configuration::new(3, pts)?;
    let graph = contact_graph(&sorted, 1e-9)?;
    let &(x1, x2) = graph
        .edges
        .iter()
        .min()
        .ok_or_else(|| Error::Construction("600-cell has no contact edges".into()))?;
    let neighbors = |v: usize| -> std::collections::BTreeSet<usize> {
        graph
            .edges
            .iter()
            .filter_map(|&(i, j)| {
                if i == v {
                    Some(j)
                } else if j == v {
                    Some(i)
                } else {
                    None
                }
            })
            .collect()
    };
    let common: Vec<usize> = neighbors(x1).intersection(&neighbors(x2)).copied().collect();
    if common.len() != 5 {
        return Err(Error::Construction(format!(
            "expected 5 common contact neighbors, found {}",
            common.len()
        )));
    }
    let mut drop: std::collections::BTreeSet<usize> = common.into_iter().collect();
    drop.insert(x1);
    drop.insert(x2);
    let remaining: Vec<Vec<f64>> = sorted
        .points()
        .iter()
        .enumerate()
        .filter(|(i, _)| !drop.contains(i))
        .map(|(_, p)| p.clone())
        .collect();
    Configuration::new(3, remaining)
}

/// Regular tetrahedron inscribed in S².
pub fn tetrahedron() -> Configuration {
    let c = 1.0 / 3.0f64.sqrt();
    cfg(
        2,
        vec![
            vec![c, c, c],
            vec![c, -c, -c],
            vec![-c, c, -c],
            vec![-c, -c, c],
        ],
    )
}

/// Equatorial square `{±e1, ±e2}` on S².
pub fn square() -> Configuration {
    cfg(
        2,
        vec![
            vec![1.0, 0.0, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, -1.0, 0.0],
        ],
    )
}

/// Antipodal pair `{e3, -e3}` on S².
pub fn antipodal() -> Configuration {
    cfg(2, vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, -1.0]])
}

/// Registry names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "bp",
    "sbp-inf",
    "sbp-opt",
    "qt",
    "icosahedron",
    "icosahedron-minus-vertex",
    "cell600",
    "cell600-minus7",
    "tetrahedron",
    "square",
    "antipodal",
];

/// Build a catalog configuration by registry name. `sbp-opt` requires `s`,
/// `qt` requires `t`; both reject the parameter they do not use.
pub fn by_name(name: &str, s: Option<f64>, t: Option<f64>) -> Result<NamedConfig> {
    let needs_s = name == "sbp-opt";
    let needs_t = name == "qt";
    if !needs_s && s.is_some() {
        return Err(Error::InvalidParam(format!("{name} takes no --s")));
    }
    if !needs_t && t.is_some() {
        return Err(Error::InvalidParam(format!("{name} takes no --t")));
    }
    let (config, notes) = match name {
        "bp" => (bp(), "bipyramid: 2 poles + equilateral equatorial triangle".to_string()),
        "sbp-inf" => (
            sbp_inf(),
            "limit square-base pyramid {e1,-e1,e2,e3,-e3}".to_string(),
        ),
        "sbp-opt" => {
            let s = s.ok_or_else(|| Error::InvalidParam("sbp-opt requires --s".into()))?;
            (
                sbp_opt(s)?,
                format!("square-base pyramid with energy-optimal height for s = {s}"),
            )
        }
        "qt" => {
            let t = t.ok_or_else(|| Error::InvalidParam("qt requires --t".into()))?;
            (q_t(t)?, format!("square pyramid of height t = {t}"))
        }
        "icosahedron" => (icosahedron(), "regular icosahedron".to_string()),
        "icosahedron-minus-vertex" => (
            icosahedron_minus_vertex(),
            "regular icosahedron minus one vertex (11-point best packing)".to_string(),
        ),
        "cell600" => (cell600(), "600-cell: 120-point best packing on S3".to_string()),
        "cell600-minus7" => (
            cell600_minus7()?,
            "600-cell minus a contact edge and its 5 common neighbors".to_string(),
        ),
        "tetrahedron" => (tetrahedron(), "regular tetrahedron".to_string()),
        "square" => (square(), "equatorial square {±e1, ±e2}".to_string()),
        "antipodal" => (antipodal(), "antipodal pair {e3, -e3}".to_string()),
        other => return Err(Error::UnknownName(other.to_string())),
    };
    Ok(NamedConfig {
        name: name.to_string(),
        config,
        notes,
    })
}
