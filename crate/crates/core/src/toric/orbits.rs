use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{action_generators, Triangulation};
use crate::error::{Error, Result};
use crate::groups::GroupKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stabilizer {
    /// Trivial stabilizer.
    Free,
    /// Fixed by the whole of `G′`.
    Tau,
    /// Stabilizer of order 2 generated by a transposition.
    Transposition,
}

impl Stabilizer {
    pub fn as_str(self) -> &'static str {
        match self {
            Stabilizer::Free => "free",
            Stabilizer::Tau => "tau",
            Stabilizer::Transposition => "transposition",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub triangles: Vec<usize>,
    pub stabilizer: Stabilizer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitClassification {
    pub kind: GroupKind,
    pub orbits: Vec<Orbit>,
}

impl OrbitClassification {
    pub fn count(&self, s: Stabilizer) -> usize {
        self.orbits.iter().filter(|o| o.stabilizer == s).count()
    }

    pub fn stabilizer_of(&self, triangle: usize) -> Option<Stabilizer> {
        self.orbits
            .iter()
            .find(|o| o.triangles.contains(&triangle))
            .map(|o| o.stabilizer)
    }
}

fn key(t: &[usize; 3]) -> [usize; 3] {
    let mut k = *t;
    k.sort_unstable();
    k
}

/// Orbits of `G′` on the triangles, tagged by stabilizer.
pub fn orbit_classify(tri: &Triangulation) -> Result<OrbitClassification> {
    let by_key: HashMap<[usize; 3], usize> = tri
        .triangles
        .iter()
        .enumerate()
        .map(|(i, t)| (key(t), i))
        .collect();
    let gens = action_generators(tri.kind);
    let image = |t: usize, g: &fn(&[u64; 3]) -> [u64; 3]| -> Result<usize> {
        let mapped = tri.triangles[t].map(|i| tri.index_of(&g(&tri.points[i])));
        let ids = match mapped {
            [Some(a), Some(b), Some(c)] => [a, b, c],
            _ => {
                return Err(Error::EquivarianceViolation(format!(
                    "triangle {t} maps outside the point set"
                )))
            }
        };
        by_key.get(&key(&ids)).copied().ok_or_else(|| {
            Error::EquivarianceViolation(format!("image of triangle {t} is not a triangle"))
        })
    };

    let mut seen = vec![false; tri.len()];
    let mut orbits = Vec::new();
    for start in 0..tri.len() {
        if seen[start] {
            continue;
        }
        let mut members = BTreeSet::from([start]);
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(t) = stack.pop() {
            for g in &gens {
                let u = image(t, g)?;
                if members.insert(u) {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        let size = members.len();
        let stabilizer = match (tri.kind, size) {
            (_, 1) => Stabilizer::Tau,
            (GroupKind::C3, 3) | (GroupKind::S3, 6) => Stabilizer::Free,
            (GroupKind::S3, 3) => Stabilizer::Transposition,
            _ => {
                return Err(Error::EquivarianceViolation(format!(
                    "orbit of size {size} for kind {}",
                    tri.kind
                )))
            }
        };
        orbits.push(Orbit {
            triangles: members.into_iter().collect(),
            stabilizer,
        });
    }
    Ok(OrbitClassification {
        kind: tri.kind,
        orbits,
    })
}

/// χ of the crepant resolution from the stratification by torus orbits.
///
/// Only 3-dimensional cones contribute. A free orbit of `G′` on them
/// contributes 1. A transposition-fixed one contributes 2. The central cone
/// contributes 3 for `Z/3` and 6 for `S₃`; these are the Euler numbers of
/// the resolved local models and are fixed inputs, not recomputed here.
pub fn euler_characteristic(cls: &OrbitClassification) -> i64 {
    let free = cls.count(Stabilizer::Free) as i64;
    match cls.kind {
        GroupKind::C3 => free + 3,
        GroupKind::S3 => free + 2 * cls.count(Stabilizer::Transposition) as i64 + 6,
    }
}

/// Cone counts of the fan over the triangulation, by dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCounts {
    pub rays: usize,
    pub edges: usize,
    pub triangles: usize,
}

impl FaceCounts {
    /// `V - E + F` of the triangulated disc.
    pub fn euler_relation(&self) -> i64 {
        self.rays as i64 - self.edges as i64 + self.triangles as i64
    }
}

pub fn face_counts(tri: &Triangulation) -> FaceCounts {
    let rays: BTreeSet<usize> = tri.triangles.iter().flatten().copied().collect();
    let edges: BTreeSet<(usize, usize)> = tri
        .triangles
        .iter()
        .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    FaceCounts {
        rays: rays.len(),
        edges: edges.len(),
        triangles: tri.len(),
    }
}

/// `Σ_σ (q-1)^(3 - dim σ)` over all cones including the origin.
pub fn count_polynomial(tri: &Triangulation, q: u64) -> u128 {
    let f = face_counts(tri);
    let t = q.saturating_sub(1) as u128;
    t.pow(3) + f.rays as u128 * t.pow(2) + f.edges as u128 * t + f.triangles as u128
}
