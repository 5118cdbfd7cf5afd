use std::collections::HashMap;

use super::check::validate_triangulation;
use super::geometry::{locate, orient, Location};
use super::{
    centroid_distance_key, junior_points, rotate, JuniorPoint, LatticeGamma, Triangulation,
};
use crate::error::{Error, Result};
use crate::groups::GroupKind;

/// Builds the triangulation appropriate for `kind`.
pub fn triangulate(kind: GroupKind, gamma: &LatticeGamma) -> Result<Triangulation> {
    match kind {
        GroupKind::C3 => triangulate_c3(gamma),
        GroupKind::S3 => {
            if gamma.hsize() as u64 != gamma.r * gamma.r {
                return Err(Error::ConstructionFailure(format!(
                    "grid subdivision needs the full lattice, got #H = {}",
                    gamma.hsize()
                )));
            }
            triangulate_s3(gamma.r)
        }
    }
}

/// Rotates `[a, b, c]` so that the smallest index comes first, keeping the
/// cyclic order, after making it counterclockwise.
fn normalize(points: &[JuniorPoint], t: [usize; 3]) -> [usize; 3] {
    let mut t = t;
    if orient(&points[t[0]], &points[t[1]], &points[t[2]]) < 0 {
        t.swap(1, 2);
    }
    let k = (0..3).min_by_key(|&i| t[i]).unwrap();
    [t[k], t[(k + 1) % 3], t[(k + 2) % 3]]
}

fn finish(
    kind: GroupKind,
    r: u64,
    hsize: usize,
    points: Vec<JuniorPoint>,
    triangles: Vec<[usize; 3]>,
    center: Option<JuniorPoint>,
    candidate_rank: usize,
) -> Triangulation {
    let mut triangles: Vec<_> = triangles
        .into_iter()
        .map(|t| normalize(&points, t))
        .collect();
    triangles.sort_unstable();
    Triangulation {
        kind,
        r,
        hsize,
        points,
        triangles,
        center,
        candidate_rank,
    }
}

/// Grid subdivision by the lines `x, y, z ∈ (1/r)Z`: `r(r+1)/2` upward and
/// `r(r-1)/2` downward cells.
pub fn triangulate_s3(r: u64) -> Result<Triangulation> {
    if r == 0 || r.is_multiple_of(3) {
        return Err(Error::TameViolation(r));
    }
    let gamma = LatticeGamma::full(r);
    let points = junior_points(&gamma);
    let idx: HashMap<JuniorPoint, usize> =
        points.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let mut tris = Vec::with_capacity((r * r) as usize);
    for x in 0..r {
        for y in 0..r - x {
            let z = r - 1 - x - y;
            tris.push([[x + 1, y, z], [x, y + 1, z], [x, y, z + 1]].map(|w| idx[&w]));
        }
    }
    for x in 0..r.saturating_sub(1) {
        for y in 0..r - 1 - x {
            let z = r - 2 - x - y;
            tris.push([[x, y + 1, z + 1], [x + 1, y, z + 1], [x + 1, y + 1, z]].map(|w| idx[&w]));
        }
    }
    Ok(finish(
        GroupKind::S3,
        r,
        gamma.hsize(),
        points,
        tris,
        None,
        0,
    ))
}

/// `S`-stable triangulation built from a central triangle `{a, a·S, a·S²}`
/// and three rotated copies of a triangulated sector.
///
/// Candidate central orbits are tried in order of distance to the centroid
/// (then lexicographically); the first whose result passes every global
/// check is returned.
pub fn triangulate_c3(gamma: &LatticeGamma) -> Result<Triangulation> {
    let r = gamma.r;
    let points = junior_points(gamma);
    let hsize = gamma.hsize();
    let is_vertex = |w: &JuniorPoint| w.iter().filter(|&&x| x == r).count() == 1;
    let mut candidates: Vec<JuniorPoint> = points
        .iter()
        .filter(|w| !is_vertex(w))
        .filter(|w| {
            let (w1, w2) = (rotate(w), rotate(&rotate(w)));
            **w <= w1 && **w <= w2
        })
        .copied()
        .collect();
    candidates.sort_by_key(|w| (centroid_distance_key(w, r), *w));

    if candidates.is_empty() {
        // only the three vertices: the simplex itself
        let tri = finish(GroupKind::C3, r, hsize, points, vec![[0, 1, 2]], None, 0);
        return check_c3(tri, gamma);
    }

    let mut last_failure = String::new();
    for (rank, a) in candidates.iter().enumerate() {
        match sector_construction(r, hsize, &points, *a, rank).and_then(|t| check_c3(t, gamma)) {
            Ok(t) => return Ok(t),
            Err(e) => last_failure = format!("candidate {a:?}: {e}"),
        }
    }
    Err(Error::ConstructionFailure(format!(
        "no candidate central triangle produced a valid triangulation ({last_failure})"
    )))
}

fn check_c3(tri: Triangulation, gamma: &LatticeGamma) -> Result<Triangulation> {
    let report = validate_triangulation(&tri, gamma);
    if report.passed {
        Ok(tri)
    } else {
        Err(Error::ConstructionFailure(report.failures.join("; ")))
    }
}

fn sector_construction(
    r: u64,
    hsize: usize,
    points: &[JuniorPoint],
    a: JuniorPoint,
    rank: usize,
) -> Result<Triangulation> {
    let idx: HashMap<JuniorPoint, usize> =
        points.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let a1 = rotate(&a);
    let a2 = rotate(&a1);
    let ex = [r, 0, 0];
    let ez = [0, 0, r];

    // split the quadrilateral (a, a1, ex, ez) along a diagonal whose two
    // halves are consistently oriented, dropping flat halves
    let splits = [[[a, a1, ex], [a, ex, ez]], [[a, a1, ez], [a1, ex, ez]]];
    let mut sector: Option<Vec<[JuniorPoint; 3]>> = None;
    for halves in splits {
        let o: Vec<i64> = halves.iter().map(|t| orient(&t[0], &t[1], &t[2])).collect();
        let nonflat: Vec<_> = halves
            .iter()
            .zip(&o)
            .filter(|(_, &x)| x != 0)
            .map(|(t, _)| *t)
            .collect();
        let signs: Vec<i64> = o.iter().filter(|&&x| x != 0).map(|x| x.signum()).collect();
        if !nonflat.is_empty() && signs.windows(2).all(|w| w[0] == w[1]) {
            sector = Some(nonflat);
            break;
        }
    }
    let sector = sector.ok_or_else(|| {
        Error::ConstructionFailure(format!("sector for center {a:?} is degenerate"))
    })?;
    let mut tris: Vec<[usize; 3]> = sector.iter().map(|t| t.map(|w| idx[&w])).collect();

    let to_insert: Vec<usize> = (0..points.len())
        .filter(|&i| {
            let mut inside = false;
            for t in &sector {
                match locate(t, &points[i]) {
                    Location::Vertex(_) => return false,
                    Location::Outside => {}
                    _ => inside = true,
                }
            }
            inside
        })
        .collect();
    for p in to_insert {
        insert_point(points, &mut tris, p)?;
    }

    let rot_idx: Vec<usize> = points.iter().map(|w| idx[&rotate(w)]).collect();
    let mut all = vec![[idx[&a], idx[&a1], idx[&a2]]];
    for t in &tris {
        let t1 = t.map(|i| rot_idx[i]);
        let t2 = t1.map(|i| rot_idx[i]);
        all.extend([*t, t1, t2]);
    }
    Ok(finish(
        GroupKind::C3,
        r,
        hsize,
        points.to_vec(),
        all,
        Some(a),
        rank,
    ))
}

/// Splits every triangle whose closure contains `p` (as a non-vertex).
fn insert_point(points: &[JuniorPoint], tris: &mut Vec<[usize; 3]>, p: usize) -> Result<()> {
    let mut out = Vec::with_capacity(tris.len() + 2);
    let mut hit = false;
    for t in tris.iter() {
        let v = t.map(|i| points[i]);
        match locate(&v, &points[p]) {
            Location::Interior => {
                hit = true;
                out.extend([[t[0], t[1], p], [t[1], t[2], p], [t[2], t[0], p]]);
            }
            Location::Edge(k) => {
                hit = true;
                let (u, w, opp) = (t[(k + 1) % 3], t[(k + 2) % 3], t[k]);
                out.extend([[opp, u, p], [opp, p, w]]);
            }
            Location::Vertex(_) | Location::Outside => out.push(*t),
        }
    }
    if !hit {
        return Err(Error::ConstructionFailure(format!(
            "point {:?} is not covered by the sector",
            points[p]
        )));
    }
    *tris = out;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_h, GroupSpec};

    fn c3_gamma(r: u64, gens: Vec<[u64; 3]>) -> LatticeGamma {
        LatticeGamma::from_h(&build_h(&GroupSpec::new(GroupKind::C3, r, gens)).unwrap())
    }

    #[test]
    fn c3_small_cases() {
        let t = triangulate_c3(&c3_gamma(1, vec![])).unwrap();
        assert_eq!(t.len(), 1);
        let t = triangulate_c3(&c3_gamma(7, vec![[1, 2, 4]])).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t.center, Some([1, 2, 4]));
        assert_eq!(t.candidate_rank, 0);
        let t = triangulate_c3(&c3_gamma(13, vec![[1, 3, 9]])).unwrap();
        assert_eq!(t.len(), 13);
    }

    #[test]
    fn c3_degenerate_sector() {
        // the center orbit's rotation lies on the boundary of the simplex
        let t = triangulate_c3(&c3_gamma(2, vec![[1, 1, 0], [0, 1, 1]])).unwrap();
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn s3_grid_sizes() {
        for (r, n) in [(1, 1), (2, 4), (5, 25), (13, 169)] {
            assert_eq!(triangulate_s3(r).unwrap().len(), n);
        }
        assert!(triangulate_s3(6).is_err());
    }

    #[test]
    fn triangles_are_normalized() {
        let t = triangulate_s3(4).unwrap();
        for (k, tri) in t.triangles.iter().enumerate() {
            assert!(tri[0] < tri[1] && tri[0] < tri[2]);
            let v = t.vertices(k);
            assert!(orient(&v[0], &v[1], &v[2]) > 0);
        }
    }
}
