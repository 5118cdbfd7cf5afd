use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::geometry::{det3, interiors_disjoint, locate, on_segment, orient, Location};
use super::{action_generators, junior_points, rotate, JuniorPoint, LatticeGamma, Triangulation};

/// Emptiness and unimodularity of one triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleCheck {
    pub empty: bool,
    pub unimodular: bool,
    pub det: i128,
}

/// `empty`: no junior point other than the vertices lies in the closed
/// triangle. `unimodular`: `|det(w₁, w₂, w₃)| = r³ / #H`.
pub fn emptiness_and_unimodularity(
    gamma: &LatticeGamma,
    points: &[JuniorPoint],
    tri: &[JuniorPoint; 3],
) -> TriangleCheck {
    let empty = points
        .iter()
        .all(|p| matches!(locate(tri, p), Location::Outside | Location::Vertex(_)));
    let det = det3(&tri[0], &tri[1], &tri[2]);
    let r3 = (gamma.r as i128).pow(3);
    let h = gamma.hsize() as i128;
    let unimodular = r3 % h == 0 && det.abs() == r3 / h;
    TriangleCheck {
        empty,
        unimodular,
        det,
    }
}

/// Outcome of every global check on a triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangulationCheck {
    pub passed: bool,
    pub triangle_count: usize,
    pub expected_count: usize,
    pub area_sum: i64,
    pub area_expected: i64,
    pub overlapping_pairs: usize,
    pub non_empty: Vec<usize>,
    pub non_unimodular: Vec<usize>,
    pub empty_but_not_unimodular: usize,
    pub fixed_triangles: usize,
    pub equivariant: bool,
    pub sector_boundaries_agree: bool,
    pub failures: Vec<String>,
}

fn key(t: &[usize; 3]) -> [usize; 3] {
    let mut k = *t;
    k.sort_unstable();
    k
}

/// Tiling, emptiness, unimodularity, vertex cover, equivariance and (for
/// the sector construction) boundary agreement.
pub fn validate_triangulation(tri: &Triangulation, gamma: &LatticeGamma) -> TriangulationCheck {
    let mut failures = Vec::new();
    let points = junior_points(gamma);
    if points != tri.points {
        failures.push("point set differs from the junior points of the lattice".into());
    }
    let n = tri.len();
    let verts: Vec<[JuniorPoint; 3]> = (0..n).map(|t| tri.vertices(t)).collect();

    let area_expected = (gamma.r as i64).pow(2);
    let areas: Vec<i64> = verts.iter().map(|v| orient(&v[0], &v[1], &v[2])).collect();
    let area_sum: i64 = areas.iter().map(|a| a.abs()).sum();
    if area_sum != area_expected {
        failures.push(format!("doubled area {area_sum} != {area_expected}"));
    }
    if areas.contains(&0) {
        failures.push("degenerate triangle".into());
    }

    let overlapping_pairs: usize = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .filter(|&j| {
                    areas[i] != 0 && areas[j] != 0 && !interiors_disjoint(&verts[i], &verts[j])
                })
                .count()
        })
        .sum();
    if overlapping_pairs > 0 {
        failures.push(format!("{overlapping_pairs} overlapping triangle pairs"));
    }

    let checks: Vec<TriangleCheck> = verts
        .par_iter()
        .map(|v| emptiness_and_unimodularity(gamma, &points, v))
        .collect();
    let non_empty: Vec<usize> = (0..n).filter(|&i| !checks[i].empty).collect();
    let non_unimodular: Vec<usize> = (0..n).filter(|&i| !checks[i].unimodular).collect();
    let empty_but_not_unimodular = checks.iter().filter(|c| c.empty && !c.unimodular).count();
    if !non_empty.is_empty() {
        failures.push(format!("{} non-empty triangles", non_empty.len()));
    }
    if !non_unimodular.is_empty() {
        failures.push(format!("{} non-unimodular triangles", non_unimodular.len()));
    }

    let used: BTreeSet<usize> = tri.triangles.iter().flatten().copied().collect();
    if used.len() != tri.points.len() {
        failures.push(format!(
            "{} of {} junior points are vertices",
            used.len(),
            tri.points.len()
        ));
    }

    let expected_count = gamma.hsize();
    if n != expected_count {
        failures.push(format!("{n} triangles, expected #H = {expected_count}"));
    }

    let keys: HashSet<[usize; 3]> = tri.triangles.iter().map(key).collect();
    let mut equivariant = keys.len() == n;
    for g in action_generators(tri.kind) {
        for t in &tri.triangles {
            let image = t.map(|i| tri.index_of(&g(&tri.points[i])));
            match image {
                [Some(a), Some(b), Some(c)] if keys.contains(&key(&[a, b, c])) => {}
                _ => equivariant = false,
            }
        }
    }
    if !equivariant {
        failures.push("group action does not permute the triangles".into());
    }
    let fixed_triangles = tri
        .triangles
        .iter()
        .filter(|t| {
            action_generators(tri.kind).iter().all(|g| {
                let image = t.map(|i| tri.index_of(&g(&tri.points[i])).unwrap_or(usize::MAX));
                key(&image) == key(t)
            })
        })
        .count();
    if fixed_triangles != 1 {
        failures.push(format!("{fixed_triangles} fixed triangles, expected 1"));
    }

    let sector_boundaries_agree = sector_boundaries(tri);
    if !sector_boundaries_agree {
        failures.push("sector boundary subdivisions disagree".into());
    }

    TriangulationCheck {
        passed: failures.is_empty(),
        triangle_count: n,
        expected_count,
        area_sum,
        area_expected,
        overlapping_pairs,
        non_empty,
        non_unimodular,
        empty_but_not_unimodular,
        fixed_triangles,
        equivariant,
        sector_boundaries_agree,
        failures,
    }
}

/// On each spoke from the central triangle to a simplex vertex, the
/// triangulation's vertices are exactly the junior points of the segment.
fn sector_boundaries(tri: &Triangulation) -> bool {
    let Some(a) = tri.center else {
        return true;
    };
    let r = tri.r;
    let mut spoke = (a, [0, 0, r]);
    for _ in 0..3 {
        let (u, v) = spoke;
        let on: BTreeSet<JuniorPoint> = tri
            .points
            .iter()
            .filter(|p| on_segment(&u, &v, p))
            .copied()
            .collect();
        // consecutive points along the spoke must be joined by edges
        let mut along: Vec<JuniorPoint> = on.into_iter().collect();
        along
            .sort_by_key(|p| (p[0] as i64 - u[0] as i64).abs() + (p[1] as i64 - u[1] as i64).abs());
        let edges: HashSet<(usize, usize)> = tri
            .triangles
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
            .flat_map(|(x, y)| [(x, y), (y, x)])
            .collect();
        let ok = along
            .windows(2)
            .all(|w| match (tri.index_of(&w[0]), tri.index_of(&w[1])) {
                (Some(x), Some(y)) => edges.contains(&(x, y)),
                _ => false,
            });
        if !ok {
            return false;
        }
        spoke = (rotate(&u), rotate(&v));
    }
    true
}

#[cfg(test)]
mod tests {
    use super::super::triangulate_s3;
    use super::*;

    #[test]
    fn unimodularity_values() {
        let g1 = LatticeGamma::full(1);
        let c = emptiness_and_unimodularity(
            &g1,
            &junior_points(&g1),
            &[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        );
        assert!(c.empty && c.unimodular);
        let g5 = LatticeGamma::full(5);
        let c = emptiness_and_unimodularity(
            &g5,
            &junior_points(&g5),
            &[[5, 0, 0], [4, 1, 0], [4, 0, 1]],
        );
        assert_eq!(c.det.abs(), 5);
        assert!(c.empty && c.unimodular);
        let c = emptiness_and_unimodularity(
            &g5,
            &junior_points(&g5),
            &[[5, 0, 0], [0, 5, 0], [0, 0, 5]],
        );
        assert!(!c.empty && !c.unimodular);
    }

    #[test]
    fn grid_passes_all_checks() {
        for r in [1, 2, 4, 5] {
            let t = triangulate_s3(r).unwrap();
            let rep = validate_triangulation(&t, &LatticeGamma::full(r));
            assert!(rep.passed, "r = {r}: {:?}", rep.failures);
        }
    }

    #[test]
    fn broken_triangulation_is_caught() {
        let mut t = triangulate_s3(2).unwrap();
        t.triangles.pop();
        let rep = validate_triangulation(&t, &LatticeGamma::full(2));
        assert!(!rep.passed);
        assert_ne!(rep.area_sum, rep.area_expected);
    }
}
