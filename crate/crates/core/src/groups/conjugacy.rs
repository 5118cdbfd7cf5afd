use rayon::prelude::*;
use serde::Serialize;

use super::{GroupKind, GroupSpec, GroupTable, MonomialElement, Perm};
use crate::error::{Error, Result};

/// Partition of a group table into conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClasses {
    /// Class id of each table element.
    pub class_of: Vec<usize>,
    /// Table indices of the elements in each class; the first is the
    /// representative.
    pub classes: Vec<Vec<usize>>,
}

impl ConjugacyClasses {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Orbits of `x ↦ g x g⁻¹`, scanning every `g` for each new representative.
pub fn conjugacy_classes_bruteforce(table: &GroupTable) -> ConjugacyClasses {
    let n = table.order();
    let elems = table.elements();
    let inverses: Vec<MonomialElement> = elems.par_iter().map(|g| g.inverse()).collect();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut orbit: Vec<usize> = elems
            .par_iter()
            .zip(inverses.par_iter())
            .map(|(g, gi)| {
                let y = g.mul_unchecked(&elems[x]).mul_unchecked(gi);
                table
                    .index_of(&y)
                    .expect("table is closed under conjugation")
            })
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit.retain(|&i| i != x);
        orbit.insert(0, x);
        for &i in &orbit {
            class_of[i] = id;
        }
        classes.push(orbit);
    }
    ConjugacyClasses { class_of, classes }
}

/// Closed-form class count: `(#H - 1)/3 + 3` for C₃ and
/// `(r-1)(r-2)/6 + 2r + 1` for S₃.
pub fn conjugacy_count_formula(spec: &GroupSpec, hsize: usize) -> Result<u64> {
    match spec.kind {
        GroupKind::C3 => {
            let n = hsize as u64;
            if n == 0 || !(n - 1).is_multiple_of(3) {
                return Err(Error::FormulaPreconditionViolation(format!(
                    "#H - 1 = {} is not divisible by 3",
                    n.saturating_sub(1)
                )));
            }
            Ok((n - 1) / 3 + 3)
        }
        GroupKind::S3 => {
            let r = spec.r;
            if r == 0 {
                return Err(Error::FormulaPreconditionViolation("r = 0".into()));
            }
            let p = (r - 1) * r.saturating_sub(2);
            if !p.is_multiple_of(6) {
                return Err(Error::FormulaPreconditionViolation(format!(
                    "(r-1)(r-2) = {p} is not divisible by 6"
                )));
            }
            Ok(p / 6 + 2 * r + 1)
        }
    }
}

/// Shape checks on the class partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassStructure {
    pub passed: bool,
    pub failures: Vec<String>,
    /// Sizes of classes contained in `H`, sorted.
    pub h_class_sizes: Vec<usize>,
    /// Number of classes meeting the odd coset (S₃ only).
    pub odd_coset_classes: usize,
}

/// For C₃: non-identity elements of `H` sit in classes of size 3 and
/// `HS`, `HS²` are single classes. For S₃: classes inside `H` have sizes
/// in `{1, 3, 6}` with `(r-1)(r-2)/6` of size 6, and the odd coset splits
/// into exactly `r` classes.
pub fn class_structure(
    spec: &GroupSpec,
    table: &GroupTable,
    classes: &ConjugacyClasses,
) -> ClassStructure {
    let elems = table.elements();
    let mut failures = Vec::new();
    let mut h_class_sizes: Vec<usize> = classes
        .classes
        .iter()
        .filter(|c| elems[c[0]].is_diagonal())
        .map(Vec::len)
        .collect();
    h_class_sizes.sort_unstable();

    let classes_with = |pred: &dyn Fn(&MonomialElement) -> bool| {
        let mut ids: Vec<usize> = (0..elems.len())
            .filter(|&i| pred(&elems[i]))
            .map(|i| classes.class_of[i])
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    };

    let mut odd_coset_classes = 0;
    match spec.kind {
        GroupKind::C3 => {
            if let Some(bad) = classes
                .classes
                .iter()
                .find(|c| elems[c[0]].is_diagonal() && !elems[c[0]].is_identity() && c.len() != 3)
            {
                failures.push(format!(
                    "class of {} inside H has size {}, expected 3",
                    elems[bad[0]],
                    bad.len()
                ));
            }
            let s2 = Perm::CYCLE.compose(Perm::CYCLE);
            for (perm, label) in [(Perm::CYCLE, "HS"), (s2, "HS^2")] {
                let k = classes_with(&|g| g.perm == perm);
                if k != 1 {
                    failures.push(format!("{label} splits into {k} classes, expected 1"));
                }
            }
        }
        GroupKind::S3 => {
            if let Some(&bad) = h_class_sizes.iter().find(|&&n| ![1, 3, 6].contains(&n)) {
                failures.push(format!("class inside H of size {bad}"));
            }
            let r = spec.r as usize;
            let expected6 = (r - 1) * r.saturating_sub(2) / 6;
            let got6 = h_class_sizes.iter().filter(|&&n| n == 6).count();
            if got6 != expected6 {
                failures.push(format!(
                    "{got6} classes of size 6 inside H, expected {expected6}"
                ));
            }
            odd_coset_classes = classes_with(&|g| g.perm.sign() == -1);
            if odd_coset_classes != r {
                failures.push(format!(
                    "odd coset splits into {odd_coset_classes} classes, expected {r}"
                ));
            }
        }
    }
    ClassStructure {
        passed: failures.is_empty(),
        failures,
        h_class_sizes,
        odd_coset_classes,
    }
}
