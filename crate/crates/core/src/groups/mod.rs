//! Normal-form groups `G = H ⋊ G′` inside SL₃ with `H` diagonal and tame,
//! `G′ = ⟨S⟩ ≅ Z/3` or `G′ = ⟨S, T⟩ ≅ S₃`.
//!
//! `H` is described by exponent triples: `(a, b, c)` stands for
//! `diag(ζ_r^a, ζ_r^b, ζ_r^c)`, so `H` is a subgroup of `(Z/r)³` inside the
//! plane `a + b + c ≡ 0`.

mod conjugacy;
mod element;

pub use conjugacy::{
    class_structure, conjugacy_classes_bruteforce, conjugacy_count_formula, ClassStructure,
    ConjugacyClasses,
};
pub use element::{
    mat_det, mat_identity, mat_mul, mat_rank, mat_sub, Matrix3, MonomialElement, Perm,
};

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf3m::FieldCtx;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    C3,
    S3,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::C3 => "c3",
            GroupKind::S3 => "s3",
        })
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c3" => Ok(GroupKind::C3),
            "s3" => Ok(GroupKind::S3),
            other => Err(Error::InvalidSpec(format!("unknown kind `{other}`"))),
        }
    }
}

pub type Triple = [u64; 3];

/// Input contract for a normal-form group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub kind: GroupKind,
    /// Largest order of an element of `H`.
    pub r: u64,
    /// Generators of `H` as exponent triples.
    pub hgens: Vec<Triple>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl GroupSpec {
    pub fn new(kind: GroupKind, r: u64, hgens: Vec<Triple>) -> Self {
        Self { kind, r, hgens }
    }

    /// `H = ⟨(1, a, r-1-a)⟩`, reduced mod `r`.
    pub fn c3_cyclic(r: u64, a: u64) -> Self {
        let gen = [1 % r, a % r, (r + r - 1 - a % r) % r];
        Self::new(GroupKind::C3, r, vec![gen])
    }

    /// The full diagonal group of exponent `r`, the only admissible `H` for
    /// the S₃ kind.
    pub fn s3_full(r: u64) -> Self {
        let hgens = if r <= 1 {
            Vec::new()
        } else {
            vec![[1, r - 1, 0], [0, 1, r - 1]]
        };
        Self::new(GroupKind::S3, r, hgens)
    }

    /// Root order used for the monomial representation: `r` for C₃,
    /// `lcm(2, r)` for S₃ so that `-1` is a power of `ζ_s`.
    pub fn root_order(&self) -> u64 {
        match self.kind {
            GroupKind::C3 => self.r,
            GroupKind::S3 => {
                if self.r.is_multiple_of(2) {
                    self.r
                } else {
                    2 * self.r
                }
            }
        }
    }

    /// Order of `G′`.
    pub fn quotient_order(&self) -> u64 {
        match self.kind {
            GroupKind::C3 => 3,
            GroupKind::S3 => 6,
        }
    }

    /// Generators rendered as `a,b,c;a,b,c`.
    pub fn gens_string(&self) -> String {
        self.hgens
            .iter()
            .map(|g| format!("{},{},{}", g[0], g[1], g[2]))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Tameness and determinant checks on the raw input.
    pub fn check(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::InvalidSpec("r must be positive".into()));
        }
        if self.r.is_multiple_of(3) {
            return Err(Error::TameViolation(self.r));
        }
        for g in &self.hgens {
            if g.iter().any(|&x| x >= self.r) {
                return Err(Error::InvalidSpec(format!(
                    "generator {g:?} has an exponent outside [0, {})",
                    self.r
                )));
            }
            if g.iter().sum::<u64>() % self.r != 0 {
                return Err(Error::DeterminantViolation { gen: *g, r: self.r });
            }
        }
        Ok(())
    }
}

/// The diagonal subgroup `H`, as a sorted set of exponent triples mod `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalSubgroup {
    r: u64,
    elements: Vec<Triple>,
}

impl DiagonalSubgroup {
    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Triple] {
        &self.elements
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.elements.binary_search(t).is_ok()
    }

    /// Additive order of an exponent triple in `(Z/r)³`.
    pub fn element_order(&self, t: &Triple) -> u64 {
        t.iter()
            .map(|&x| self.r / gcd(x, self.r))
            .fold(1, |acc, o| acc / gcd(acc, o) * o)
    }
}

fn add_triples(a: &Triple, b: &Triple, r: u64) -> Triple {
    [0, 1, 2].map(|i| (a[i] + b[i]) % r)
}

/// Cyclic shift of coordinates, the conjugation action of `S` on `H`.
pub fn shift(t: &Triple) -> Triple {
    [t[2], t[0], t[1]]
}

/// Coordinate reversal, the conjugation action of `T` on `H`.
pub fn reversal(t: &Triple) -> Triple {
    [t[2], t[1], t[0]]
}

/// Closure of the generators inside `(Z/r)³ ∩ {a+b+c ≡ 0}`.
pub fn build_h(spec: &GroupSpec) -> Result<DiagonalSubgroup> {
    spec.check()?;
    let r = spec.r;
    let mut set = BTreeSet::from([[0u64; 3]]);
    let mut frontier = vec![[0u64; 3]];
    while let Some(x) = frontier.pop() {
        for g in &spec.hgens {
            let y = add_triples(&x, g, r);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    Ok(DiagonalSubgroup {
        r,
        elements: set.into_iter().collect(),
    })
}

/// Why a spec fails the normal-form contract.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum NormalFormIssue {
    /// Some `h ∈ H` has its cyclic shift outside `H`.
    NotSNormalized { element: Triple },
    /// Some `h ∈ H` has its coordinate reversal outside `H`.
    NotTNormalized { element: Triple },
    /// S₃ kind with `#H ≠ r²`.
    NotFull { hsize: usize, expected: u64 },
    /// No element of `H` has order exactly `r`.
    MaxOrderMismatch { max_order: u64, r: u64 },
    /// A scalar other than the identity lies in `H`.
    NontrivialScalar { element: Triple },
}

impl fmt::Display for NormalFormIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotSNormalized { element } => {
                write!(f, "not-S-normalized: shift of {element:?} is not in H")
            }
            Self::NotTNormalized { element } => {
                write!(f, "not-T-normalized: reversal of {element:?} is not in H")
            }
            Self::NotFull { hsize, expected } => {
                write!(
                    f,
                    "not-full: #H = {hsize}, the S3 kind needs r^2 = {expected}"
                )
            }
            Self::MaxOrderMismatch { max_order, r } => {
                write!(
                    f,
                    "max-order-mismatch: largest element order {max_order} != r = {r}"
                )
            }
            Self::NontrivialScalar { element } => {
                write!(f, "nontrivial-scalar: {element:?} is a scalar in H")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub hsize: usize,
    pub issues: Vec<NormalFormIssue>,
}

impl ValidationReport {
    pub fn reasons(&self) -> Vec<String> {
        self.issues.iter().map(ToString::to_string).collect()
    }
}

/// Checks that `H` is normalized by `S` (and `T`), that the S₃ kind has
/// the full `H ≅ (Z/r)²`, that `r` is attained and that the only scalar
/// in `H` is the identity.
pub fn validate_normal_form(spec: &GroupSpec, h: &DiagonalSubgroup) -> ValidationReport {
    let mut issues = Vec::new();
    if let Some(e) = h.elements().iter().find(|e| !h.contains(&shift(e))) {
        issues.push(NormalFormIssue::NotSNormalized { element: *e });
    }
    if spec.kind == GroupKind::S3 {
        if let Some(e) = h.elements().iter().find(|e| !h.contains(&reversal(e))) {
            issues.push(NormalFormIssue::NotTNormalized { element: *e });
        }
        let expected = spec.r * spec.r;
        if h.order() as u64 != expected {
            issues.push(NormalFormIssue::NotFull {
                hsize: h.order(),
                expected,
            });
        }
    }
    let max_order = h
        .elements()
        .iter()
        .map(|e| h.element_order(e))
        .max()
        .unwrap_or(1);
    if max_order != spec.r {
        issues.push(NormalFormIssue::MaxOrderMismatch {
            max_order,
            r: spec.r,
        });
    }
    if let Some(e) = h
        .elements()
        .iter()
        .find(|e| e[0] == e[1] && e[1] == e[2] && e[0] != 0)
    {
        issues.push(NormalFormIssue::NontrivialScalar { element: *e });
    }
    ValidationReport {
        passed: issues.is_empty(),
        hsize: h.order(),
        issues,
    }
}

/// Builds `H`, validates it, and returns it or the reasons it is invalid.
pub fn validated_h(spec: &GroupSpec) -> Result<DiagonalSubgroup> {
    let h = build_h(spec)?;
    let report = validate_normal_form(spec, &h);
    if report.passed {
        Ok(h)
    } else {
        Err(Error::NormalForm(report.reasons()))
    }
}

/// All elements of `G` as monomial matrices.
#[derive(Clone, Debug)]
pub struct GroupTable {
    kind: GroupKind,
    s: u64,
    hsize: usize,
    elements: Vec<MonomialElement>,
    index: HashMap<MonomialElement, usize>,
}

impl GroupTable {
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn root_order(&self) -> u64 {
        self.s
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn hsize(&self) -> usize {
        self.hsize
    }

    pub fn elements(&self) -> &[MonomialElement] {
        &self.elements
    }

    pub fn index_of(&self, g: &MonomialElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Closure under products and inverses, checked exhaustively.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| {
            self.index.contains_key(&a.inverse())
                && self
                    .elements
                    .iter()
                    .all(|b| self.index.contains_key(&a.mul_unchecked(b)))
        })
    }
}

/// Lists `h·Sⁱ` (C₃) or `h·Sⁱ·Tʲ` (S₃). Requires a validated `H`.
pub fn enumerate_group(spec: &GroupSpec, h: &DiagonalSubgroup) -> Result<GroupTable> {
    let s = spec.root_order();
    let scale = s / spec.r;
    let sg = MonomialElement::s_gen(s);
    let t_powers = match spec.kind {
        GroupKind::C3 => vec![MonomialElement::identity(s)],
        GroupKind::S3 => vec![MonomialElement::identity(s), MonomialElement::t_gen(s)?],
    };
    let mut elements = Vec::with_capacity(h.order() * 3 * t_powers.len());
    for e in h.elements() {
        let d = MonomialElement::diagonal(e.map(|x| x * scale), s);
        let mut ds = d;
        for _ in 0..3 {
            for t in &t_powers {
                elements.push(ds.mul_unchecked(t));
            }
            ds = ds.mul_unchecked(&sg);
        }
    }
    let index: HashMap<_, _> = elements.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    if index.len() != elements.len() {
        return Err(Error::RepresentationError(
            "duplicate elements while enumerating G".into(),
        ));
    }
    Ok(GroupTable {
        kind: spec.kind,
        s,
        hsize: h.order(),
        elements,
        index,
    })
}

/// Result of comparing symbolic products with matrix products.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepresentationReport {
    pub samples: usize,
    pub mismatches: usize,
}

/// Product of two table elements together with the matrix-consistency
/// check `M(a·b) = M(a)·M(b)` over `ctx`.
pub fn multiply_and_matrix_consistency(
    a: &MonomialElement,
    b: &MonomialElement,
    ctx: &FieldCtx,
) -> Result<(MonomialElement, bool)> {
    let ab = a.mul(b)?;
    let lhs = ab.to_matrix(ctx)?;
    let rhs = mat_mul(ctx, &a.to_matrix(ctx)?, &b.to_matrix(ctx)?);
    Ok((ab, lhs == rhs))
}

/// Checks the homomorphism property on `samples` seeded random pairs.
pub fn check_representation(
    table: &GroupTable,
    ctx: &FieldCtx,
    samples: usize,
    seed: u64,
) -> Result<RepresentationReport> {
    let mats = table
        .elements()
        .iter()
        .map(|g| g.to_matrix(ctx))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = table.order();
    let mut mismatches = 0;
    for _ in 0..samples {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        let ab = table.elements[i].mul(&table.elements[j])?;
        let k = table
            .index_of(&ab)
            .ok_or_else(|| Error::RepresentationError(format!("{ab} is not in the table")))?;
        if mats[k] != mat_mul(ctx, &mats[i], &mats[j]) {
            mismatches += 1;
        }
    }
    Ok(RepresentationReport {
        samples,
        mismatches,
    })
}

/// Outcome of the pseudo-reflection scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallnessReport {
    pub small: bool,
    /// Indices of elements with `rank(g - I) = 1`.
    pub pseudo_reflections: Vec<usize>,
    /// Indices of elements whose determinant is not 1.
    pub determinant_failures: Vec<usize>,
}

/// `g` is a pseudo-reflection iff `rank(M(g) - I) = 1`; `G` is small iff
/// there are none. Also records any element with `det ≠ 1`.
pub fn pseudo_reflection_and_smallness(
    table: &GroupTable,
    ctx: &FieldCtx,
) -> Result<SmallnessReport> {
    let id = mat_identity(ctx);
    let one = ctx.one();
    let mut pseudo_reflections = Vec::new();
    let mut determinant_failures = Vec::new();
    for (i, g) in table.elements().iter().enumerate() {
        let m = g.to_matrix(ctx)?;
        if mat_rank(ctx, &mat_sub(ctx, &m, &id)) == 1 {
            pseudo_reflections.push(i);
        }
        if mat_det(ctx, &m) != one {
            determinant_failures.push(i);
        }
    }
    Ok(SmallnessReport {
        small: pseudo_reflections.is_empty(),
        pseudo_reflections,
        determinant_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `{k·g mod r}`, the closure oracle for a single generator.
    fn multiples(g: Triple, r: u64) -> BTreeSet<Triple> {
        (0..r).map(|k| g.map(|x| x * k % r)).collect()
    }

    #[test]
    fn h_sizes() {
        let h = build_h(&GroupSpec::new(GroupKind::C3, 7, vec![[1, 2, 4]])).unwrap();
        assert_eq!(h.order(), 7);
        assert_eq!(
            h.elements().iter().copied().collect::<BTreeSet<_>>(),
            multiples([1, 2, 4], 7)
        );
        let klein = GroupSpec::new(GroupKind::S3, 2, vec![[1, 1, 0], [0, 1, 1]]);
        assert_eq!(build_h(&klein).unwrap().order(), 4);
        assert_eq!(
            build_h(&GroupSpec::new(GroupKind::C3, 1, vec![]))
                .unwrap()
                .order(),
            1
        );
    }

    #[test]
    fn input_errors() {
        let bad_det = GroupSpec::new(GroupKind::C3, 7, vec![[1, 2, 3]]);
        assert!(matches!(
            build_h(&bad_det),
            Err(Error::DeterminantViolation { .. })
        ));
        let wild = GroupSpec::new(GroupKind::C3, 3, vec![[1, 1, 1]]);
        assert_eq!(build_h(&wild), Err(Error::TameViolation(3)));
    }

    #[test]
    fn normal_form_validation() {
        let ok = GroupSpec::new(GroupKind::C3, 7, vec![[1, 2, 4]]);
        let h = build_h(&ok).unwrap();
        // shift (4,1,2) = 4·(1,2,4)
        assert!(h.contains(&[4, 1, 2]));
        assert!(validate_normal_form(&ok, &h).passed);

        let not_s = GroupSpec::new(GroupKind::C3, 7, vec![[1, 6, 0]]);
        let rep = validate_normal_form(&not_s, &build_h(&not_s).unwrap());
        assert!(!rep.passed);
        assert!(matches!(
            rep.issues[0],
            NormalFormIssue::NotSNormalized { .. }
        ));
        assert!(rep.reasons()[0].starts_with("not-S-normalized"));

        let thin = GroupSpec::new(GroupKind::S3, 5, vec![[1, 2, 2]]);
        let rep = validate_normal_form(&thin, &build_h(&thin).unwrap());
        assert!(rep.issues.contains(&NormalFormIssue::NotFull {
            hsize: 5,
            expected: 25
        }));

        for r in [1, 2, 4, 5, 7] {
            let full = GroupSpec::s3_full(r);
            assert!(validated_h(&full).is_ok(), "r = {r}");
        }
    }

    #[test]
    fn max_order_mismatch_detected() {
        // ⟨(2,4,1)⟩ mod 7 is fine, but declaring r = 14 with an order-7 H is not
        let spec = GroupSpec::new(GroupKind::C3, 14, vec![[2, 4, 8]]);
        let rep = validate_normal_form(&spec, &build_h(&spec).unwrap());
        assert!(rep.issues.contains(&NormalFormIssue::MaxOrderMismatch {
            max_order: 7,
            r: 14
        }));
    }

    #[test]
    fn group_orders() {
        let cases = [
            (GroupSpec::new(GroupKind::C3, 1, vec![]), 3),
            (GroupSpec::new(GroupKind::C3, 7, vec![[1, 2, 4]]), 21),
            (GroupSpec::s3_full(2), 24),
        ];
        for (spec, n) in cases {
            let h = validated_h(&spec).unwrap();
            let t = enumerate_group(&spec, &h).unwrap();
            assert_eq!(t.order(), n);
            assert_eq!(t.order(), h.order() * spec.quotient_order() as usize);
            assert!(t.is_closed());
        }
    }

    #[test]
    fn no_pseudo_reflections_and_unit_determinants() {
        for spec in [
            GroupSpec::new(GroupKind::C3, 1, vec![]),
            GroupSpec::new(GroupKind::C3, 7, vec![[1, 2, 4]]),
            GroupSpec::s3_full(1),
            GroupSpec::s3_full(4),
            GroupSpec::s3_full(5),
        ] {
            let h = validated_h(&spec).unwrap();
            let t = enumerate_group(&spec, &h).unwrap();
            let ctx = FieldCtx::build_field_for_order(spec.root_order()).unwrap();
            let rep = pseudo_reflection_and_smallness(&t, &ctx).unwrap();
            assert!(rep.small, "{spec:?}");
            assert!(rep.determinant_failures.is_empty());
        }
    }

    #[test]
    fn pseudo_reflection_is_detected() {
        // a transposition matrix is a reflection (outside SL₃, built by hand)
        let ctx = FieldCtx::build_field_for_order(2).unwrap();
        let refl = MonomialElement::new(Perm([1, 0, 2]), [0, 0, 0], 2);
        let id = mat_identity(&ctx);
        let m = refl.to_matrix(&ctx).unwrap();
        assert_eq!(mat_rank(&ctx, &mat_sub(&ctx, &m, &id)), 1);
    }

    #[test]
    fn matrix_consistency_on_samples() {
        let spec = GroupSpec::s3_full(5);
        let h = validated_h(&spec).unwrap();
        let t = enumerate_group(&spec, &h).unwrap();
        let ctx = FieldCtx::build_field_for_order(spec.root_order()).unwrap();
        let rep = check_representation(&t, &ctx, 2000, 1).unwrap();
        assert_eq!(rep.mismatches, 0);
        let (prod, ok) =
            multiply_and_matrix_consistency(&t.elements()[3], &t.elements()[17], &ctx).unwrap();
        assert!(ok);
        assert!(t.index_of(&prod).is_some());
    }
}
