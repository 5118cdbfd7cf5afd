//! Lattice points of the junior simplex, equivariant unimodular
//! triangulations, and the Euler characteristic of the resulting toric
//! crepant resolution.
//!
//! Points are stored as integer numerators `w` with `w₁ + w₂ + w₃ = r`;
//! the geometric point is `w / r`.

mod check;
mod export;
pub mod geometry;
mod orbits;
mod triangulate;

pub use check::{
    emptiness_and_unimodularity, validate_triangulation, TriangleCheck, TriangulationCheck,
};
pub use export::{export_fan, fan_document, FanDocument, FanFormat, FanOrbit};
pub use orbits::{
    count_polynomial, euler_characteristic, face_counts, orbit_classify, FaceCounts, Orbit,
    OrbitClassification, Stabilizer,
};
pub use triangulate::{triangulate, triangulate_c3, triangulate_s3};

use std::collections::BTreeSet;

use serde::Serialize;

use crate::groups::{DiagonalSubgroup, GroupKind};

pub type JuniorPoint = [u64; 3];

/// The overlattice `Γ = Z³ + Σ (1/r)·h`, stored through the residues of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeGamma {
    pub r: u64,
    pub residues: BTreeSet<[u64; 3]>,
}

impl LatticeGamma {
    pub fn from_h(h: &DiagonalSubgroup) -> Self {
        Self {
            r: h.r(),
            residues: h.elements().iter().copied().collect(),
        }
    }

    /// The lattice of the full diagonal group of exponent `r`.
    pub fn full(r: u64) -> Self {
        let residues = (0..r)
            .flat_map(|a| (0..r).map(move |b| [a, b, (2 * r - a - b) % r]))
            .collect();
        Self { r, residues }
    }

    pub fn hsize(&self) -> usize {
        self.residues.len()
    }

    /// `w / r ∈ Γ` iff `w mod r` is a residue.
    pub fn contains(&self, w: &[u64; 3]) -> bool {
        self.residues.contains(&w.map(|x| x % self.r))
    }
}

/// All `w ≥ 0` with `Σw = r` and `w / r ∈ Γ`, lexicographically sorted.
pub fn junior_points(gamma: &LatticeGamma) -> Vec<JuniorPoint> {
    let r = gamma.r;
    let mut out = Vec::new();
    for x in 0..=r {
        for y in 0..=r - x {
            let w = [x, y, r - x - y];
            if gamma.contains(&w) {
                out.push(w);
            }
        }
    }
    out
}

/// `3·Σw² - r²`, which is `r²` times three times the squared distance of
/// `w / r` to the centroid.
pub fn centroid_distance_key(w: &JuniorPoint, r: u64) -> i128 {
    3 * w.iter().map(|&x| (x as i128).pow(2)).sum::<i128>() - (r as i128).pow(2)
}

/// Junior point closest to the centroid, lexicographic minimum on ties.
pub fn select_center_point(points: &[JuniorPoint], r: u64) -> Option<JuniorPoint> {
    points
        .iter()
        .min_by_key(|w| (centroid_distance_key(w, r), **w))
        .copied()
}

/// The action of `S` on numerators.
pub fn rotate(w: &JuniorPoint) -> JuniorPoint {
    [w[2], w[0], w[1]]
}

/// The action of `T` on numerators.
pub fn transpose(w: &JuniorPoint) -> JuniorPoint {
    [w[2], w[1], w[0]]
}

/// Point maps generating the `G′` action for a kind.
pub fn action_generators(kind: GroupKind) -> Vec<fn(&JuniorPoint) -> JuniorPoint> {
    match kind {
        GroupKind::C3 => vec![rotate],
        GroupKind::S3 => vec![rotate, transpose],
    }
}

/// A triangulation of the junior simplex by junior points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangulation {
    pub kind: GroupKind,
    pub r: u64,
    pub hsize: usize,
    pub points: Vec<JuniorPoint>,
    /// Counterclockwise index triples, smallest index first, sorted.
    pub triangles: Vec<[usize; 3]>,
    /// Vertex of the central triangle used by the sector construction.
    pub center: Option<JuniorPoint>,
    /// 0 when the closest orbit to the centroid was used; otherwise the
    /// rank of the candidate orbit that produced a valid result.
    pub candidate_rank: usize,
}

impl Triangulation {
    pub fn vertices(&self, t: usize) -> [JuniorPoint; 3] {
        self.triangles[t].map(|i| self.points[i])
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn index_of(&self, w: &JuniorPoint) -> Option<usize> {
        self.points.binary_search(w).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_h, GroupSpec};

    fn gamma(kind: GroupKind, r: u64, gens: Vec<[u64; 3]>) -> LatticeGamma {
        LatticeGamma::from_h(&build_h(&GroupSpec::new(kind, r, gens)).unwrap())
    }

    #[test]
    fn junior_point_sets() {
        let g1 = gamma(GroupKind::C3, 1, vec![]);
        assert_eq!(junior_points(&g1), vec![[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
        let g7 = gamma(GroupKind::C3, 7, vec![[1, 2, 4]]);
        let expected: BTreeSet<_> = [
            [7, 0, 0],
            [0, 7, 0],
            [0, 0, 7],
            [1, 2, 4],
            [2, 4, 1],
            [4, 1, 2],
        ]
        .into();
        assert_eq!(
            junior_points(&g7).into_iter().collect::<BTreeSet<_>>(),
            expected
        );
        assert_eq!(junior_points(&LatticeGamma::full(5)).len(), 21);
        assert_eq!(
            LatticeGamma::full(5),
            gamma(GroupKind::S3, 5, vec![[1, 4, 0], [0, 1, 4]])
        );
    }

    #[test]
    fn center_points() {
        let p1 = junior_points(&gamma(GroupKind::C3, 1, vec![]));
        assert_eq!(select_center_point(&p1, 1), Some([0, 0, 1]));
        let p7 = junior_points(&gamma(GroupKind::C3, 7, vec![[1, 2, 4]]));
        assert_eq!(select_center_point(&p7, 7), Some([1, 2, 4]));
        // (−4/21, −1/21, 5/21) has squared length 42/441 = 2/21
        assert_eq!(centroid_distance_key(&[1, 2, 4], 7), 14);
        let p5 = junior_points(&LatticeGamma::full(5));
        assert_eq!(select_center_point(&p5, 5), Some([1, 2, 2]));
    }
}
