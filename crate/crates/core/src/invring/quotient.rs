//! Presentations of the quotients of the resolution charts by the induced
//! order-2 action.

use std::collections::HashMap;

use serde::Serialize;

use super::charts::singular_locus_exhaustive;
use super::invariants::{rational_series, y_ring};
use super::linalg::rank;
use super::mpoly::{MPoly, PolyRing};
use crate::error::{Error, Result};

/// One chart together with its involution and claimed quotient.
#[derive(Clone, Debug)]
pub struct QuotientChart {
    pub name: &'static str,
    pub ring: PolyRing,
    /// `(v, r)`: the chart ideal is generated by `v² - r`.
    pub rule: Option<(usize, MPoly)>,
    pub action: Vec<MPoly>,
    pub weights: Vec<u32>,
    /// Images of the `y`-coordinates, used to check compatibility with the
    /// action on the quotient hypersurface.
    pub y_images: Vec<MPoly>,
    pub zring: PolyRing,
    pub z_images: Vec<MPoly>,
    pub relations: Vec<MPoly>,
    pub claimed_singular: Vec<MPoly>,
}

impl QuotientChart {
    fn reduce(&self, p: &MPoly) -> MPoly {
        match &self.rule {
            Some((v, r)) => p.reduce_square(*v, r),
            None => p.clone(),
        }
    }

    fn act(&self, p: &MPoly) -> MPoly {
        self.reduce(&p.substitute(&self.action))
    }

    fn weight(&self, e: &[u32]) -> u32 {
        e.iter().zip(&self.weights).map(|(a, w)| a * w).sum()
    }

    fn z_weights(&self) -> Vec<u32> {
        self.z_images
            .iter()
            .map(|p| p.terms().map(|(e, _)| self.weight(e)).max().unwrap_or(0))
            .collect()
    }

    /// Normal-form monomials of weight at most `d`.
    fn basis(&self, d: u32) -> Vec<Vec<u32>> {
        (0..=d)
            .flat_map(|k| self.ring.weighted_monomials(&self.weights, k))
            .filter(|e| self.rule.as_ref().is_none_or(|(v, _)| e[*v] <= 1))
            .collect()
    }
}

fn coords(p: &MPoly, index: &HashMap<Vec<u32>, usize>, n: usize) -> Option<Vec<u8>> {
    let mut v = vec![0u8; n];
    for (e, c) in p.terms() {
        v[*index.get(e)?] = c;
    }
    Some(v)
}

#[allow(clippy::too_many_arguments)]
fn chart(
    name: &'static str,
    vars: [&str; 4],
    rule: Option<&str>,
    action: [&str; 4],
    y_images: [&str; 4],
    z_images: &[&str],
    znames: &[&str],
    relations: &[&str],
    claimed: &[&str],
) -> QuotientChart {
    let ring = PolyRing::new(&vars);
    let p = |s: &str| ring.parse(s).expect("chart literal");
    let rule = rule.map(|r| (3, p(r)));
    let zring = PolyRing::new(znames);
    let pz = |s: &str| zring.parse(s).expect("presentation literal");
    let mut weights = vec![1; 4];
    if rule.is_some() {
        weights[3] = 2;
    }
    QuotientChart {
        name,
        rule,
        action: action.iter().map(|s| p(s)).collect(),
        weights,
        y_images: y_images.iter().map(|s| p(s)).collect(),
        z_images: z_images.iter().map(|s| p(s)).collect(),
        relations: relations.iter().map(|s| pz(s)).collect(),
        claimed_singular: claimed.iter().map(|s| pz(s)).collect(),
        zring,
        ring,
    }
}

/// The three charts covering the resolution of the quotient hypersurface.
/// `T₁` is affine 3-space; the extra variable `w` is unused and keeps all
/// charts four-dimensional.
pub fn quotient_charts() -> Vec<QuotientChart> {
    vec![
        chart(
            "T1",
            ["y1", "tu", "t13", "w"],
            None,
            ["-y1", "-tu", "t13 - tu", "w"],
            ["y1", "tu*y1", "t13*(tu - t13)*y1 - tu^3", "t13*y1^2"],
            &["y1^2", "y1*tu", "tu^2", "t13 + tu"],
            &["z11", "z12", "z13", "z14"],
            &["z12^2 - z11*z13"],
            &["z11", "z12", "z13"],
        )
        .without_last_var(),
        chart(
            "T2",
            ["y3", "tu", "t21", "t23"],
            Some("tu*t21*t23 - t21"),
            ["-y3", "-tu", "t21", "t23 - t21*tu"],
            [
                "t21*(tu^3 + y3)",
                "tu*t21*(tu^3 + y3)",
                "y3",
                "t21*t23*(tu^3 + y3)^2",
            ],
            &["y3^2", "y3*tu", "tu^2", "t21", "t23 + t21*tu"],
            &["z21", "z22", "z23", "z24", "z25"],
            &["z22^2 - z21*z23", "z25^2 - z23*z24^2 + z24"],
            &["z21", "z22", "z23", "z25^2 + z24"],
        ),
        chart(
            "U2",
            ["y3", "ut", "u21", "u23"],
            Some("ut*u21*u23 - u21"),
            ["-y3", "-ut", "u21", "u23 - u21*ut"],
            [
                "ut*u21*(1 + ut^3*y3)",
                "u21*(1 + ut^3*y3)",
                "y3",
                "u21*u23*(1 + ut^3*y3)^2",
            ],
            &["y3^2", "y3*ut", "ut^2", "u21", "u23 + u21*ut"],
            &["z31", "z32", "z33", "z34", "z35"],
            &["z32^2 - z31*z33", "z35^2 - z33*z34^2 + z34"],
            &["z31", "z32", "z33", "z35^2 + z34"],
        ),
    ]
}

impl QuotientChart {
    fn without_last_var(self) -> Self {
        let names: Vec<String> = self.ring.names()[..3].to_vec();
        let ring = PolyRing::new(&names);
        let shrink = |p: &MPoly| p.embed(&ring).expect("last variable unused");
        QuotientChart {
            action: self.action[..3].iter().map(shrink).collect(),
            weights: self.weights[..3].to_vec(),
            y_images: self.y_images.iter().map(shrink).collect(),
            z_images: self.z_images.iter().map(shrink).collect(),
            rule: None,
            ring,
            ..self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub chart: String,
    pub involution: bool,
    pub ideal_preserved: bool,
    pub compatible_with_y_action: bool,
    pub generators_invariant: Vec<bool>,
    pub relations_vanish: Vec<bool>,
    /// `dim ker(σ - id)` on the weight-`≤ D` part of the chart ring.
    pub invariant_dims: Vec<usize>,
    /// Rank of the images of `z`-monomials of weight `≤ D`.
    pub presentation_ranks: Vec<usize>,
    /// Hilbert function of the presentation from its leading forms.
    pub presentation_hilbert: Vec<i64>,
    pub singular_points: u64,
    pub singular_match: bool,
    pub passed: bool,
}

/// Generator invariance, relation vanishing, invariant dimensions up to
/// `max_degree`, and singular loci of the presentations over GF(`q`).
pub fn verify_quotient_presentations(max_degree: u32, q: usize) -> Result<Vec<PresentationReport>> {
    quotient_charts()
        .iter()
        .map(|c| verify_chart(c, max_degree, q))
        .collect()
}

/// Like [`verify_quotient_presentations`], but any failed check is an error.
pub fn require_quotient_presentations(
    max_degree: u32,
    q: usize,
) -> Result<Vec<PresentationReport>> {
    let reps = verify_quotient_presentations(max_degree, q)?;
    let failed: Vec<&str> = reps
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.chart.as_str())
        .collect();
    if failed.is_empty() {
        Ok(reps)
    } else {
        Err(Error::PresentationMismatch(failed.join(", ")))
    }
}

fn verify_chart(c: &QuotientChart, max_degree: u32, q: usize) -> Result<PresentationReport> {
    let vars: Vec<MPoly> = (0..c.ring.nvars()).map(|i| c.ring.var(i)).collect();
    let twice: Vec<MPoly> = vars.iter().map(|v| c.act(&c.act(v))).collect();
    let involution = twice == vars;
    let ideal_preserved = match &c.rule {
        Some((v, r)) => {
            let gen = &c.ring.var(*v).pow(2) - r;
            c.act(&gen).is_zero()
        }
        None => true,
    };

    // σ(φ(y)) = φ(y·T) with y·T = [-y1, y2, -y3, y4 - y1*y2]
    let yr = y_ring();
    let y_t = [
        yr.parse("-y1").expect("literal"),
        yr.v("y2"),
        yr.parse("-y3").expect("literal"),
        yr.parse("y4 - y1*y2").expect("literal"),
    ];
    let compatible_with_y_action = y_t.iter().enumerate().all(|(i, yt)| {
        let lhs = c.act(&c.y_images[i]);
        let rhs = c.reduce(&yt.substitute(&c.y_images));
        lhs == rhs
    });

    let generators_invariant: Vec<bool> =
        c.z_images.iter().map(|z| c.act(z) == c.reduce(z)).collect();
    let relations_vanish: Vec<bool> = c
        .relations
        .iter()
        .map(|rel| c.reduce(&rel.substitute(&c.z_images)).is_zero())
        .collect();

    let zw = c.z_weights();
    let rel_weights: Vec<u32> = c
        .relations
        .iter()
        .map(|r| {
            r.terms()
                .map(|(e, _)| e.iter().zip(&zw).map(|(a, w)| a * w).sum::<u32>())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let series = rational_series(&rel_weights, &zw, max_degree as usize);
    let presentation_hilbert: Vec<i64> = series
        .iter()
        .scan(0i64, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect();

    let mut invariant_dims = Vec::new();
    let mut presentation_ranks = Vec::new();
    for d in 0..=max_degree {
        let basis = c.basis(d);
        let index: HashMap<Vec<u32>, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let n = basis.len();
        let mut cols = Vec::with_capacity(n);
        for e in &basis {
            let m = c.ring.monomial(e.clone(), 1);
            let img = &c.act(&m) - &m;
            cols.push(coords(&img, &index, n).ok_or_else(|| {
                Error::PresentationMismatch(format!("{}: action leaves the filtration", c.name))
            })?);
        }
        invariant_dims.push(n - rank(&cols));

        let zmons: Vec<Vec<u32>> = (0..=d)
            .flat_map(|k| c.zring.weighted_monomials(&zw, k))
            .collect();
        let mut zcols = Vec::with_capacity(zmons.len());
        for e in zmons {
            let img = c.reduce(&c.zring.monomial(e, 1).substitute(&c.z_images));
            zcols.push(coords(&img, &index, n).ok_or_else(|| {
                Error::PresentationMismatch(format!(
                    "{}: generator image leaves the filtration",
                    c.name
                ))
            })?);
        }
        presentation_ranks.push(rank(&zcols));
    }

    let scan = singular_locus_exhaustive(c.name, &c.relations, &c.claimed_singular, q)?;

    let dims_match = invariant_dims
        .iter()
        .zip(&presentation_ranks)
        .zip(&presentation_hilbert)
        .all(|((&a, &b), &h)| a == b && a as i64 == h);
    let passed = involution
        && ideal_preserved
        && compatible_with_y_action
        && generators_invariant.iter().all(|&b| b)
        && relations_vanish.iter().all(|&b| b)
        && dims_match
        && scan.passed;
    Ok(PresentationReport {
        chart: c.name.to_string(),
        involution,
        ideal_preserved,
        compatible_with_y_action,
        generators_invariant,
        relations_vanish,
        invariant_dims,
        presentation_ranks,
        presentation_hilbert,
        singular_points: scan.singular,
        singular_match: scan.passed,
        passed,
    })
}
