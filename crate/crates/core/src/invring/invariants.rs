//! Invariants of the cyclic permutation action on `k[x₁, x₂, x₃]` over
//! GF(3): generators, the relation among them, and Hilbert series checks.

use std::collections::HashMap;

use serde::Serialize;

use super::linalg::{kernel, rank};
use super::mpoly::{MPoly, PolyRing};
use crate::error::{Error, Result};

/// A ring endomorphism given by the images of the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearAction {
    pub images: Vec<MPoly>,
}

impl LinearAction {
    pub fn new(images: Vec<MPoly>) -> Self {
        Self { images }
    }

    pub fn apply(&self, p: &MPoly) -> MPoly {
        p.substitute(&self.images)
    }

    /// Smallest `k ≤ bound` with `σᵏ = id` on the variables.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let ring = self.images.first()?.ring().clone();
        let vars: Vec<MPoly> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        let mut cur = vars.clone();
        for k in 1..=bound {
            cur = cur.iter().map(|p| self.apply(p)).collect();
            if cur == vars {
                return Some(k);
            }
        }
        None
    }
}

pub fn x_ring() -> PolyRing {
    PolyRing::new(&["x1", "x2", "x3"])
}

pub fn y_ring() -> PolyRing {
    PolyRing::new(&["y1", "y2", "y3", "y4"])
}

/// Weights of `y₁..y₄` matching the degrees of the generators.
pub const Y_WEIGHTS: [u32; 4] = [1, 2, 3, 3];

/// `x₁ → x₂ → x₃ → x₁`.
pub fn s_action() -> LinearAction {
    let r = x_ring();
    LinearAction::new(vec![r.v("x2"), r.v("x3"), r.v("x1")])
}

/// `x₁ → -x₃, x₂ → -x₂, x₃ → -x₁`.
pub fn t_action() -> LinearAction {
    let r = x_ring();
    LinearAction::new(vec![-r.v("x3"), -r.v("x2"), -r.v("x1")])
}

/// `Y₁ = x₁+x₂+x₃`, `Y₂ = x₁x₂+x₂x₃+x₃x₁`, `Y₃ = x₁x₂x₃`,
/// `Y₄ = x₁²x₂+x₂²x₃+x₃²x₁`.
pub fn build_generators() -> [MPoly; 4] {
    let r = x_ring();
    let p = |s: &str| r.parse(s).expect("generator literal");
    [
        p("x1 + x2 + x3"),
        p("x1*x2 + x2*x3 + x3*x1"),
        p("x1*x2*x3"),
        p("x1^2*x2 + x2^2*x3 + x3^2*x1"),
    ]
}

/// Coordinates of a homogeneous polynomial in the monomial basis.
fn coords(p: &MPoly, index: &HashMap<Vec<u32>, usize>, n: usize) -> Vec<u8> {
    let mut v = vec![0u8; n];
    for (e, c) in p.terms() {
        v[index[e]] = c;
    }
    v
}

/// `dim ker(σ - id)` on degree-`d` forms, by exact rank over GF(3).
pub fn invariant_dimension(action: &LinearAction, d: u32) -> usize {
    let ring = action.images[0].ring().clone();
    let basis = ring.monomials_of_degree(d);
    let index: HashMap<Vec<u32>, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let cols: Vec<Vec<u8>> = basis
        .iter()
        .map(|e| {
            let m = ring.monomial(e.clone(), 1);
            coords(&(&action.apply(&m) - &m), &index, basis.len())
        })
        .collect();
    basis.len() - rank(&cols)
}

/// Number of cyclic classes of exponent triples of total degree `d`.
pub fn orbit_monomial_count(d: u32) -> usize {
    let mut n = 0;
    for a in 0..=d / 3 {
        for b in a..=(d - a) / 2 {
            let c = d - a - b;
            // six permutations form two cyclic classes; fewer form one
            n += if a != b && b != c { 2 } else { 1 };
        }
    }
    n
}

/// Power series of `Π(1 - λ^a) / Π(1 - λ^b)` up to `maxd`.
pub fn rational_series(numer: &[u32], denom: &[u32], maxd: usize) -> Vec<i64> {
    let mut s = vec![0i64; maxd + 1];
    s[0] = 1;
    for &b in denom {
        let b = b as usize;
        for d in b..=maxd {
            s[d] += s[d - b];
        }
    }
    for &a in numer {
        let a = a as usize;
        for d in (a..=maxd).rev() {
            s[d] -= s[d - a];
        }
    }
    s
}

/// Expansion of the invariant ring's Hilbert series
/// `(1-λ⁶) / ((1-λ)(1-λ²)(1-λ³)²)`.
pub fn invariant_series(maxd: usize) -> Vec<i64> {
    rational_series(&[6], &[1, 2, 3, 3], maxd)
}

/// Expansion of `λ⁶ / ((1-λ)(1-λ²)(1-λ³)²)`, the series of the relation
/// ideal.
pub fn relation_ideal_series(maxd: usize) -> Vec<i64> {
    let base = rational_series(&[], &[1, 2, 3, 3], maxd);
    (0..=maxd)
        .map(|d| if d >= 6 { base[d - 6] } else { 0 })
        .collect()
}

/// Kernel of `k[y]_d → k[x]_d`, `yᵢ ↦ Yᵢ`, in weighted degree `d`.
pub fn relation_kernel(d: u32) -> (Vec<Vec<u32>>, Vec<Vec<u8>>) {
    let yr = y_ring();
    let xr = x_ring();
    let gens = build_generators();
    let ymons = yr.weighted_monomials(&Y_WEIGHTS, d);
    let xbasis = xr.monomials_of_degree(d);
    let index: HashMap<Vec<u32>, usize> = xbasis
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let cols: Vec<Vec<u8>> = ymons
        .iter()
        .map(|e| {
            coords(
                &yr.monomial(e.clone(), 1).substitute(&gens),
                &index,
                xbasis.len(),
            )
        })
        .collect();
    let ker = kernel(&cols);
    (ymons, ker)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    pub max_degree: u32,
    pub kernel_method: Vec<usize>,
    pub orbit_count: Vec<usize>,
    pub series: Vec<i64>,
    /// Dimensions of the relation ideal in low weighted degrees.
    pub relation_ideal_dims: Vec<usize>,
    pub relation_ideal_series: Vec<i64>,
    pub passed: bool,
}

/// Kernel rank, orbit counting and the rational function agree for every
/// `d ≤ max_degree`; the relation ideal follows `λ⁶/(…)` up to
/// `min(max_degree, 12)`.
pub fn hilbert_series_check(max_degree: u32) -> HilbertReport {
    let s = s_action();
    let kernel_method: Vec<usize> = (0..=max_degree)
        .map(|d| invariant_dimension(&s, d))
        .collect();
    let orbit_count: Vec<usize> = (0..=max_degree).map(orbit_monomial_count).collect();
    let series = invariant_series(max_degree as usize);
    let ideal_max = max_degree.min(12);
    let relation_ideal_dims: Vec<usize> = (0..=ideal_max)
        .map(|d| relation_kernel(d).1.len())
        .collect();
    let ideal_series = relation_ideal_series(ideal_max as usize);
    let passed = kernel_method
        .iter()
        .zip(&orbit_count)
        .zip(&series)
        .all(|((&a, &b), &c)| a == b && a as i64 == c)
        && relation_ideal_dims
            .iter()
            .zip(&ideal_series)
            .all(|(&a, &b)| a as i64 == b);
    HilbertReport {
        max_degree,
        kernel_method,
        orbit_count,
        series,
        relation_ideal_dims,
        relation_ideal_series: ideal_series,
        passed,
    }
}

/// `y₄² + y₂³ + y₁³y₃ - y₁y₂y₄`.
pub fn relation_proof_variant() -> MPoly {
    y_ring()
        .parse("y4^2 + y2^3 + y1^3*y3 - y1*y2*y4")
        .expect("literal")
}

/// `y₄² + y₂³ + y₁²y₃ - y₁y₂y₄`, not weighted-homogeneous.
pub fn relation_statement_variant() -> MPoly {
    y_ring()
        .parse("y4^2 + y2^3 + y1^2*y3 - y1*y2*y4")
        .expect("literal")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    /// Kernel dimension for weighted degrees `0..=6`.
    pub kernel_dims: Vec<usize>,
    pub relation: String,
    pub matches_y1_cubed_variant: bool,
    pub matches_y1_squared_variant: bool,
    /// Image of the `y₁²y₃` variant under `yᵢ ↦ Yᵢ`.
    pub y1_squared_variant_image: String,
    pub erratum: String,
}

/// Finds the relation by linear algebra in weighted degree 6, normalized
/// so that the `y₄²` coefficient is 1.
pub fn discover_relation() -> Result<(MPoly, RelationReport)> {
    let kernel_dims: Vec<usize> = (0..=6).map(|d| relation_kernel(d).1.len()).collect();
    let (mons, ker) = relation_kernel(6);
    if ker.len() != 1 {
        return Err(Error::RelationAmbiguity(ker.len()));
    }
    if kernel_dims[..6].iter().any(|&k| k != 0) {
        return Err(Error::RelationAmbiguity(kernel_dims[..6].iter().sum()));
    }
    let yr = y_ring();
    let mut rel = yr.zero();
    for (e, &c) in mons.iter().zip(&ker[0]) {
        rel = &rel + &yr.monomial(e.clone(), c as i64);
    }
    let lead = rel.coeff(&[0, 0, 0, 2]);
    if lead == 2 {
        rel = -rel;
    }
    let gens = build_generators();
    let sq_image = relation_statement_variant().substitute(&gens);
    let matches_y1_cubed_variant = rel == relation_proof_variant();
    let matches_y1_squared_variant = rel == relation_statement_variant();
    let erratum = if matches_y1_cubed_variant && !matches_y1_squared_variant {
        "the relation has the term y1^3*y3; the form with y1^2*y3 is not weighted-homogeneous and does not vanish on the generators".to_string()
    } else {
        String::new()
    };
    let report = RelationReport {
        kernel_dims,
        relation: rel.to_string(),
        matches_y1_cubed_variant,
        matches_y1_squared_variant,
        y1_squared_variant_image: sq_image.to_string(),
        erratum,
    };
    Ok((rel, report))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionCheck {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

/// `[Y₁, Y₂, Y₃, Y₄]·T = [-Y₁, Y₂, -Y₃, Y₄ - Y₁Y₂]`.
pub fn verify_t_action_on_y() -> Vec<ActionCheck> {
    let [y1, y2, y3, y4] = build_generators();
    let t = t_action();
    let expected = [-&y1, y2.clone(), -&y3, &y4 - &(&y1 * &y2)];
    let labels = ["-Y1", "Y2", "-Y3", "Y4 - Y1*Y2"];
    [&y1, &y2, &y3, &y4]
        .iter()
        .zip(expected.iter().zip(labels))
        .enumerate()
        .map(|(i, (y, (e, label)))| {
            let computed = t.apply(y);
            ActionCheck {
                name: format!("Y{}*T", i + 1),
                expected: label.to_string(),
                computed: computed.to_string(),
                passed: &computed == e,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_invariant() {
        let s = s_action();
        for g in build_generators() {
            assert_eq!(s.apply(&g), g);
        }
        assert_eq!(s.order(10), Some(3));
        assert_eq!(t_action().order(10), Some(2));
    }

    #[test]
    fn vandermonde_identity() {
        let r = x_ring();
        let v = r.parse("(x2 - x1)*(x3 - x2)*(x1 - x3)").unwrap();
        let [y1, y2, _, y4] = build_generators();
        // the sign is forced: v and Y1*Y2 + Y4 differ by -1
        assert_eq!(v, -(&(&y1 * &y2) + &y4));
        assert_ne!(v, &(&y1 * &y2) + &y4);
    }

    #[test]
    fn dimensions() {
        let s = s_action();
        assert_eq!(invariant_dimension(&s, 0), 1);
        assert_eq!(invariant_dimension(&s, 3), 4);
        assert_eq!(invariant_dimension(&s, 6), 10);
        assert_eq!(orbit_monomial_count(4), 5);
        assert_eq!(invariant_series(6), vec![1, 1, 2, 4, 5, 7, 10]);
        assert_eq!(relation_ideal_series(7)[6], 1);
    }

    #[test]
    fn relation_candidates() {
        let gens = build_generators();
        assert!(relation_proof_variant().substitute(&gens).is_zero());
        assert!(!relation_statement_variant().substitute(&gens).is_zero());
        let (rel, rep) = discover_relation().unwrap();
        assert_eq!(rel, relation_proof_variant());
        assert_eq!(rep.kernel_dims, vec![0, 0, 0, 0, 0, 0, 1]);
        assert!(!rep.erratum.is_empty());
    }

    #[test]
    fn t_action_on_generators() {
        assert!(verify_t_action_on_y().iter().all(|c| c.passed));
    }
}
