//! Blow-up charts of the quotient by the cyclic action, their pullback
//! identities, and exhaustive singular-locus scans over small fields.

use rayon::prelude::*;
use serde::Serialize;

use super::invariants::y_ring;
use super::mpoly::{MPoly, PolyRing};
use crate::error::{Error, Result};
use crate::gf3m::FieldTables;

/// First blow-up chart `T` in `(y1, y3, tu, tv)`.
pub fn t_chart() -> MPoly {
    PolyRing::new(&["y1", "y3", "tu", "tv"])
        .parse("tv^2 + tu^3*y1 + y1*y3 - tu*tv*y1")
        .expect("literal")
}

/// First blow-up chart `U` in `(y2, y3, ut, uv)`.
pub fn u_chart() -> MPoly {
    PolyRing::new(&["y2", "y3", "ut", "uv"])
        .parse("uv^2 + y2 + ut^3*y2*y3 - ut*uv*y2")
        .expect("literal")
}

/// `T₂` in `(y3, tu, t21, t23)`.
pub fn t2_chart() -> MPoly {
    PolyRing::new(&["y3", "tu", "t21", "t23"])
        .parse("t23^2 + t21 - tu*t21*t23")
        .expect("literal")
}

/// `U₂` in `(y3, ut, u21, u23)`.
pub fn u2_chart() -> MPoly {
    PolyRing::new(&["y3", "ut", "u21", "u23"])
        .parse("u23^2 + u21 - ut*u21*u23")
        .expect("literal")
}

/// `T₁` as the hypersurface `V(t13² + t12 - tu·t13)` in `(y1, tu, t12, t13)`.
pub fn t1_chart() -> MPoly {
    PolyRing::new(&["y1", "tu", "t12", "t13"])
        .parse("t13^2 + t12 - tu*t13")
        .expect("literal")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub claim: String,
    /// `lhs - rhs`, or the reduced expression for the exclusion check.
    pub residual: String,
    pub passed: bool,
}

fn identity(name: &str, claim: &str, lhs: &MPoly, rhs: &MPoly) -> IdentityCheck {
    let residual = lhs - rhs;
    IdentityCheck {
        name: name.into(),
        claim: claim.into(),
        passed: residual.is_zero(),
        residual: residual.to_string(),
    }
}

/// Pullback, parametrization and exclusion identities for both blow-ups.
pub fn verify_blowup_charts(relation: &MPoly) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let f = relation;

    let tr = PolyRing::new(&["y1", "y3", "tu", "tv"]);
    let g = t_chart();
    let (y1, y3, tu, tv) = (tr.v("y1"), tr.v("y3"), tr.v("tu"), tr.v("tv"));
    let pulled = f.substitute(&[y1.clone(), &tu * &y1, y3.clone(), &tv * &y1]);
    out.push(identity(
        "pullback-T",
        "f(y1, tu*y1, y3, tv*y1) = y1^2 * g_T",
        &pulled,
        &(&y1.pow(2) * &g),
    ));

    let ur = PolyRing::new(&["y2", "y3", "ut", "uv"]);
    let h = u_chart();
    let (y2, uy3, ut, uv) = (ur.v("y2"), ur.v("y3"), ur.v("ut"), ur.v("uv"));
    let pulled = f.substitute(&[&ut * &y2, y2.clone(), uy3.clone(), &uv * &y2]);
    out.push(identity(
        "pullback-U",
        "f(ut*y2, y2, y3, uv*y2) = y2^2 * h_U",
        &pulled,
        &(&y2.pow(2) * &h),
    ));

    let r1 = PolyRing::new(&["y1", "tu", "t13"]);
    let (a, b, c) = (r1.v("y1"), r1.v("tu"), r1.v("t13"));
    let y3_param = &(&(&c * &(&b - &c)) * &a) - &b.pow(3);
    let param = f.substitute(&[a.clone(), &b * &a, y3_param, &c * &a.pow(2)]);
    out.push(identity(
        "parametrization-T1",
        "f(y1, tu*y1, t13*(tu - t13)*y1 - tu^3, t13*y1^2) = 0",
        &param,
        &r1.zero(),
    ));

    let r = PolyRing::new(&["y1", "tu", "t12", "t13"]);
    let (a, b, t12, t13) = (r.v("y1"), r.v("tu"), r.v("t12"), r.v("t13"));
    let img = g.substitute(&[a.clone(), &(&t12 * &a) - &b.pow(3), b.clone(), &t13 * &a]);
    let t1 = t1_chart();
    out.push(identity(
        "pullback-T1",
        "g_T(y1, t12*y1 - tu^3, tu, t13*y1) = y1^2 * (t13^2 + t12 - tu*t13)",
        &img,
        &(&a.pow(2) * &t1),
    ));

    let r = PolyRing::new(&["y3", "tu", "t21", "t23"]);
    let (y3, tu, t21, t23) = (r.v("y3"), r.v("tu"), r.v("t21"), r.v("t23"));
    let w = &tu.pow(3) + &y3;
    let img = g.substitute(&[&t21 * &w, y3.clone(), tu.clone(), &t23 * &w]);
    out.push(identity(
        "pullback-T2",
        "g_T(t21*w, y3, tu, t23*w) = w^2 * (t23^2 + t21 - tu*t21*t23), w = tu^3 + y3",
        &img,
        &(&w.pow(2) * &t2_chart()),
    ));

    let r = PolyRing::new(&["y2", "y3", "ut", "u12", "u13"]);
    let (y2, y3, ut, u12, u13) = (r.v("y2"), r.v("y3"), r.v("ut"), r.v("u12"), r.v("u13"));
    let e1 = &(&r.one() + &(&ut.pow(3) * &y3)) - &(&u12 * &y2);
    let e2 = r.parse("u13^2 + u12 - ut*u13").expect("literal");
    let img = h.substitute(&[y2.clone(), y3.clone(), ut.clone(), &u13 * &y2]);
    out.push(identity(
        "pullback-U1",
        "h_U(y2, y3, ut, u13*y2) = y2*(1 + ut^3*y3 - u12*y2) + y2^2*(u13^2 + u12 - ut*u13)",
        &img,
        &(&(&y2 * &e1) + &(&y2.pow(2) * &e2)),
    ));
    let variant = r.parse("u13^2 + u12 - ut*u13^2").expect("literal");
    let residual = &img - &(&(&y2 * &e1) + &(&y2.pow(2) * &variant));
    out.push(IdentityCheck {
        name: "pullback-U1-cubic-variant".into(),
        claim: "the form u13^2 + u12 - ut*u13^2 does not satisfy the pullback identity".into(),
        passed: !residual.is_zero(),
        residual: residual.to_string(),
    });

    let zero_ut: Vec<MPoly> = (0..r.nvars())
        .map(|i| {
            let n = &r.names()[i];
            if n == "ut" || n == "u12" {
                r.zero()
            } else {
                r.var(i)
            }
        })
        .collect();
    let reduced = e1.substitute(&zero_ut);
    out.push(IdentityCheck {
        name: "exclusion-U1".into(),
        claim: "1 + ut^3*y3 - u12*y2 restricted to ut = u12 = 0 is a nonzero constant".into(),
        passed: reduced.is_constant() && !reduced.is_zero(),
        residual: reduced.to_string(),
    });

    let r = PolyRing::new(&["y3", "ut", "u21", "u23"]);
    let (y3, ut, u21, u23) = (r.v("y3"), r.v("ut"), r.v("u21"), r.v("u23"));
    let w = &r.one() + &(&ut.pow(3) * &y3);
    let img = h.substitute(&[&u21 * &w, y3.clone(), ut.clone(), &u23 * &w]);
    out.push(identity(
        "pullback-U2",
        "h_U(u21*w, y3, ut, u23*w) = w^2 * (u23^2 + u21 - ut*u21*u23), w = 1 + ut^3*y3",
        &img,
        &(&w.pow(2) * &u2_chart()),
    ));
    out
}

/// Singular points of a complete intersection found by scanning all
/// points of affine space over GF(q).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularScan {
    pub name: String,
    pub field_size: usize,
    pub points_scanned: u64,
    pub on_variety: u64,
    pub singular: u64,
    /// Points where the claimed locus equations vanish.
    pub claimed: u64,
    /// Number of points in exactly one of the two sets.
    pub mismatched: u64,
    pub passed: bool,
}

/// Scans `A^n(GF(q))` for points of `V(eqs)` where the Jacobian has rank
/// below `#eqs`, and compares with `V(claimed)`. This is a property check
/// over a finite field, not a statement over the algebraic closure.
pub fn singular_locus_exhaustive(
    name: &str,
    eqs: &[MPoly],
    claimed: &[MPoly],
    q: usize,
) -> Result<SingularScan> {
    let tables = FieldTables::for_size(q)?;
    let ring = eqs
        .first()
        .map(|e| e.ring().clone())
        .ok_or_else(|| Error::InvalidSpec("no equations".into()))?;
    let n = ring.nvars();
    let total = (q as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= 27u64.pow(5))
        .ok_or_else(|| Error::InvalidSpec(format!("scan of GF({q})^{n} is too large")))?;
    let ceqs: Vec<_> = eqs.iter().map(MPoly::compile).collect();
    let cjac: Vec<Vec<_>> = eqs
        .iter()
        .map(|e| e.jacobian().iter().map(MPoly::compile).collect())
        .collect();
    let cclaim: Vec<_> = claimed
        .iter()
        .map(|c| c.embed(&ring).map(|p| p.compile()))
        .collect::<Result<_>>()?;
    let codim = eqs.len();

    let (on_variety, singular, claimed_n, mismatched) = (0..total)
        .into_par_iter()
        .fold(
            || (0u64, 0u64, 0u64, 0u64, vec![0u16; n]),
            |(mut on, mut sing, mut cl, mut mis, mut pt), idx| {
                let mut k = idx;
                for x in pt.iter_mut() {
                    *x = (k % q as u64) as u16;
                    k /= q as u64;
                }
                let is_on = ceqs.iter().all(|e| e.eval(&tables, &pt) == 0);
                let mut is_sing = false;
                if is_on {
                    on += 1;
                    let mut rows: Vec<Vec<u16>> = cjac
                        .iter()
                        .map(|row| row.iter().map(|d| d.eval(&tables, &pt)).collect())
                        .collect();
                    is_sing = tables.rank(&mut rows) < codim;
                    if is_sing {
                        sing += 1;
                    }
                }
                let is_claimed = cclaim.iter().all(|e| e.eval(&tables, &pt) == 0);
                if is_claimed {
                    cl += 1;
                }
                if is_sing != is_claimed {
                    mis += 1;
                }
                (on, sing, cl, mis, pt)
            },
        )
        .map(|(a, b, c, d, _)| (a, b, c, d))
        .reduce(
            || (0, 0, 0, 0),
            |x, y| (x.0 + y.0, x.1 + y.1, x.2 + y.2, x.3 + y.3),
        );
    Ok(SingularScan {
        name: name.into(),
        field_size: q,
        points_scanned: total,
        on_variety,
        singular,
        claimed: claimed_n,
        mismatched,
        passed: mismatched == 0,
    })
}

/// Claimed singular locus of the quotient hypersurface, `V(y1, y2, y4)`.
pub fn y_singular_locus() -> Vec<MPoly> {
    let r = y_ring();
    vec![r.v("y1"), r.v("y2"), r.v("y4")]
}

/// Runs the chart smoothness scans and the quotient's singular-locus scan
/// over each requested field.
pub fn chart_scans(relation: &MPoly, fields: &[usize]) -> Result<Vec<SingularScan>> {
    let mut out = Vec::new();
    for &q in fields {
        for (name, eq) in [("T1", t1_chart()), ("T2", t2_chart()), ("U2", u2_chart())] {
            let none = eq.ring().one();
            out.push(singular_locus_exhaustive(name, &[eq], &[none], q)?);
        }
        out.push(singular_locus_exhaustive(
            "Y",
            std::slice::from_ref(relation),
            &y_singular_locus(),
            q,
        )?);
    }
    Ok(out)
}

/// Singular loci of the first blow-up charts, checked over GF(q).
pub fn first_chart_scans(q: usize) -> Result<Vec<SingularScan>> {
    let tr = t_chart().ring().clone();
    let t_claim = vec![
        tr.v("y1"),
        tr.parse("tu^3 + y3").expect("literal"),
        tr.v("tv"),
    ];
    let ur = u_chart().ring().clone();
    let u_claim = vec![
        ur.v("y2"),
        ur.parse("1 + ut^3*y3").expect("literal"),
        ur.v("uv"),
    ];
    Ok(vec![
        singular_locus_exhaustive("T", &[t_chart()], &t_claim, q)?,
        singular_locus_exhaustive("U", &[u_chart()], &u_claim, q)?,
    ])
}

/// Scan of chart `T` against the locus `V(y1, tu^3 + y3, tu)`, which
/// differs from the true locus in its last generator.
pub fn t_locus_variant_scan(q: usize) -> Result<SingularScan> {
    let tr = t_chart().ring().clone();
    let variant = vec![
        tr.v("y1"),
        tr.parse("tu^3 + y3").expect("literal"),
        tr.v("tu"),
    ];
    singular_locus_exhaustive("T-variant", &[t_chart()], &variant, q)
}
