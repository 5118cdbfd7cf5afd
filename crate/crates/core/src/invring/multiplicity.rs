//! Multiplicity of a hypersurface along a smooth center and the resulting
//! discrepancy `codim - m - 1` of the blow-up.

use serde::Serialize;

use super::mpoly::{MPoly, PolyRing};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityReport {
    pub multiplicity: u32,
    pub codim: u32,
    pub discrepancy: i64,
    /// The equation in coordinates adapted to the center.
    pub adapted: String,
}

/// One center generator written as `a·v + b` with `v` its pivot variable.
struct Adapted {
    pivot: usize,
    a: MPoly,
    b: MPoly,
}

fn adapt(g: &MPoly, used: &[usize]) -> Option<Adapted> {
    let ring = g.ring();
    (0..ring.nvars())
        .filter(|v| !used.contains(v))
        .find_map(|v| {
            if g.degree_in(v) != 1 {
                return None;
            }
            let cs = g.coefficients_in(v);
            let (b, a) = (cs[0].clone(), cs[1].clone());
            let unit_slope = a.is_constant() && !a.is_zero();
            let monomial_slope = a.nterms() == 1 && b.is_constant() && !b.is_zero();
            (unit_slope || monomial_slope).then_some(Adapted { pivot: v, a, b })
        })
}

/// Rewrites `f` in coordinates where each center generator is a variable
/// and returns the least total degree in those variables.
///
/// Each generator must be `c·v + p` with `c` a nonzero constant, or `a·v + b`
/// with `a` a monomial and `b` a nonzero constant (so `a` is a unit along
/// the center), and no generator may involve another generator's pivot.
pub fn multiplicity_and_discrepancy(
    f: &MPoly,
    center: &[MPoly],
    codim: u32,
) -> Result<MultiplicityReport> {
    let ring = f.ring().clone();
    let mut adapted = Vec::new();
    let mut used = Vec::new();
    for g in center {
        let ad = adapt(g, &used)
            .ok_or_else(|| Error::UnsupportedCenter(format!("`{g}` is not coordinate-adapted")))?;
        used.push(ad.pivot);
        adapted.push(ad);
    }
    for ad in &adapted {
        for &p in &used {
            if ad.a.degree_in(p) > 0 || ad.b.degree_in(p) > 0 {
                return Err(Error::UnsupportedCenter(format!(
                    "generator with pivot `{}` involves pivot `{}`",
                    ring.names()[ad.pivot],
                    ring.names()[p]
                )));
            }
        }
    }

    let mut names: Vec<String> = ring.names().to_vec();
    for ad in &adapted {
        names.push(format!("{}'", ring.names()[ad.pivot]));
    }
    let ext = PolyRing::new(&names);
    let mut cur = f.embed(&ext)?;
    for (k, ad) in adapted.iter().enumerate() {
        let w = ext.var(ring.nvars() + k);
        let a = ad.a.embed(&ext)?;
        let b = ad.b.embed(&ext)?;
        let cs = cur.coefficients_in(ad.pivot);
        let top = cs.len() as u32 - 1;
        let shifted = &w - &b;
        let mut next = ext.zero();
        for (j, c) in cs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = j as u32;
            next = &next + &(&(c * &shifted.pow(j)) * &a.pow(top - j));
        }
        cur = next;
    }
    let center_vars: Vec<usize> = (ring.nvars()..ext.nvars()).collect();
    let m = cur
        .min_degree_in(&center_vars)
        .ok_or_else(|| Error::UnsupportedCenter("equation is zero".into()))?;
    Ok(MultiplicityReport {
        multiplicity: m,
        codim,
        discrepancy: codim as i64 - m as i64 - 1,
        adapted: cur.to_string(),
    })
}
