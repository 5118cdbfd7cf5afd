//! End-to-end runs: one group case, a sweep of cases, the invariant-ring
//! checks, and fan export.

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::gf3m::FieldCtx;
use crate::groups::{
    check_representation, class_structure, conjugacy_classes_bruteforce, conjugacy_count_formula,
    enumerate_group, mat_identity, mat_mul, pseudo_reflection_and_smallness, validated_h,
    GroupKind, GroupSpec, MonomialElement,
};
use crate::invring::{run_invring, InvringReport};
use crate::report::{CaseSummary, Check, VerificationReport};
use crate::toric::{
    euler_characteristic, export_fan, face_counts, orbit_classify, triangulate,
    validate_triangulation, FanFormat, LatticeGamma, Stabilizer,
};

/// Seed for the sampled representation check; fixed so reports are
/// reproducible.
pub const SAMPLE_SEED: u64 = 0x5eed;

/// Full pipeline for one group. Input errors are returned as `Err`; every
/// other failure is recorded as a failed check.
pub fn verify_case(spec: &GroupSpec, samples: usize) -> Result<VerificationReport> {
    spec.check()?;
    let h = validated_h(spec)?;
    let mut checks = vec![Check::new(
        "normal-form",
        "H is normalized by the permutation part and attains order r",
        true,
        json!({ "hsize": h.order() }),
    )];
    match run_case(spec, &h, samples, &mut checks) {
        Ok(summary) => Ok(VerificationReport::new(
            "verify",
            checks,
            Some(summary),
            Vec::new(),
        )),
        Err(e) if e.is_input_error() => Err(e),
        Err(e) => {
            checks.push(Check::new(
                "pipeline",
                "every stage completes",
                false,
                json!(e.to_string()),
            ));
            Ok(VerificationReport::new("verify", checks, None, Vec::new()))
        }
    }
}

fn run_case(
    spec: &GroupSpec,
    h: &crate::groups::DiagonalSubgroup,
    samples: usize,
    checks: &mut Vec<Check>,
) -> Result<CaseSummary> {
    let r = spec.r;
    let hsize = h.order();
    let ctx = FieldCtx::build_field_for_order(spec.root_order())?;
    let table = enumerate_group(spec, h)?;
    let expected_order = hsize * spec.quotient_order() as usize;
    checks.push(Check::new(
        "group-order",
        "#G = #H * #G'",
        table.order() == expected_order && table.is_closed(),
        json!({ "order": table.order(), "expected": expected_order, "field_degree": ctx.degree() }),
    ));

    checks.push(generator_relations(spec, &ctx)?);
    let rep = check_representation(&table, &ctx, samples, SAMPLE_SEED)?;
    checks.push(Check::new(
        "representation",
        "symbolic products agree with matrix products",
        rep.mismatches == 0,
        json!({ "samples": rep.samples, "mismatches": rep.mismatches }),
    ));
    let small = pseudo_reflection_and_smallness(&table, &ctx)?;
    checks.push(Check::new(
        "small-and-special",
        "no pseudo-reflections and every determinant is 1",
        small.small && small.determinant_failures.is_empty(),
        json!({ "pseudo_reflections": small.pseudo_reflections.len(), "determinant_failures": small.determinant_failures.len() }),
    ));

    let classes = conjugacy_classes_bruteforce(&table);
    let conj = classes.count();
    let formula = conjugacy_count_formula(spec, hsize)?;
    checks.push(Check::new(
        "conjugacy-count",
        match spec.kind {
            GroupKind::C3 => "#Conj(G) = (#H - 1)/3 + 3",
            GroupKind::S3 => "#Conj(G) = (r-1)(r-2)/6 + 2r + 1",
        },
        conj as u64 == formula,
        json!({ "bruteforce": conj, "formula": formula }),
    ));
    let cs = class_structure(spec, &table, &classes);
    checks.push(Check::new(
        "class-structure",
        "class sizes inside H and class count on the cosets",
        cs.passed,
        json!({ "failures": cs.failures, "odd_coset_classes": cs.odd_coset_classes }),
    ));

    let gamma = LatticeGamma::from_h(h);
    let tri = triangulate(spec.kind, &gamma)?;
    let tc = validate_triangulation(&tri, &gamma);
    checks.push(Check::new(
        "triangulation",
        "G'-stable unimodular triangulation of the junior simplex with #H triangles",
        tc.passed && tri.len() == hsize,
        json!({
            "triangles": tri.len(),
            "points": tri.points.len(),
            "overlapping_pairs": tc.overlapping_pairs,
            "non_empty": tc.non_empty.len(),
            "non_unimodular": tc.non_unimodular.len(),
            "fixed_triangles": tc.fixed_triangles,
            "candidate_rank": tri.candidate_rank,
            "failures": tc.failures,
        }),
    ));
    let faces = face_counts(&tri);
    checks.push(Check::new(
        "face-counts",
        "V - E + F = 1 on the triangulated simplex",
        faces.euler_relation() == 1,
        json!(faces),
    ));

    let cls = orbit_classify(&tri)?;
    let free = cls.count(Stabilizer::Free);
    let trans = cls.count(Stabilizer::Transposition);
    let tau = cls.count(Stabilizer::Tau);
    let (census_ok, anchor) = match spec.kind {
        GroupKind::C3 => (
            tau == 1 && trans == 0 && 3 * free + 1 == hsize,
            "one fixed triangle and (#H - 1)/3 free orbits",
        ),
        GroupKind::S3 => {
            let r = r as i64;
            (
                tau == 1 && trans as i64 == r - 1 && free as i64 == (r - 1) * (r - 2) / 6,
                "6(r-1)(r-2)/6 + 3(r-1) + 1 = r^2 triangles by orbit type",
            )
        }
    };
    checks.push(Check::new(
        "orbit-census",
        anchor,
        census_ok,
        json!({ "free": free, "transposition": trans, "tau": tau }),
    ));

    let chi = euler_characteristic(&cls);
    let offset = match spec.kind {
        GroupKind::C3 => 0,
        GroupKind::S3 => 3,
    };
    let expected_chi = conj as i64 + offset;
    let chi_formula = match spec.kind {
        GroupKind::C3 => (hsize as i64 - 1) / 3 + 3,
        GroupKind::S3 => {
            let r = r as i64;
            (r - 1) * (r - 2) / 6 + 2 * (r - 1) + 6
        }
    };
    checks.push(Check::new(
        "euler-characteristic",
        match spec.kind {
            GroupKind::C3 => "chi = (#H - 1)/3 + 3 = #Conj(G)",
            GroupKind::S3 => "chi = (r-1)(r-2)/6 + 2(r-1) + 6 = #Conj(G) + 3",
        },
        chi == expected_chi && chi == chi_formula,
        json!({ "chi": chi, "closed_form": chi_formula, "expected": expected_chi }),
    ));

    Ok(CaseSummary {
        kind: spec.kind,
        r,
        hgens: spec.gens_string(),
        hsize,
        conj_bruteforce: conj,
        conj_formula: formula,
        triangles: tri.len(),
        chi,
        expected_chi,
        equality: chi == expected_chi,
    })
}

/// `S³ = 1`, and for the S₃ kind also `T² = 1` and `S⁻¹TS = ST`, both
/// symbolically and on matrices.
fn generator_relations(spec: &GroupSpec, ctx: &FieldCtx) -> Result<Check> {
    let s = spec.root_order();
    let sg = MonomialElement::s_gen(s);
    let id = MonomialElement::identity(s);
    let sm = sg.to_matrix(ctx)?;
    let im = mat_identity(ctx);
    let s3_mat = mat_mul(ctx, &mat_mul(ctx, &sm, &sm), &sm);
    let mut passed = sg.pow(3) == id && s3_mat == im;
    if spec.kind == GroupKind::S3 {
        let t = MonomialElement::t_gen(s)?;
        let tm = t.to_matrix(ctx)?;
        let sinv = sg.inverse();
        let lhs = sinv.mul(&t)?.mul(&sg)?;
        let rhs = sg.mul(&t)?;
        let lhs_m = mat_mul(ctx, &mat_mul(ctx, &sinv.to_matrix(ctx)?, &tm), &sm);
        let rhs_m = mat_mul(ctx, &sm, &tm);
        passed &= t.mul(&t)? == id && mat_mul(ctx, &tm, &tm) == im && lhs == rhs && lhs_m == rhs_m;
    }
    Ok(Check::new(
        "generator-relations",
        match spec.kind {
            GroupKind::C3 => "S^3 = I",
            GroupKind::S3 => "S^3 = T^2 = I and S^-1 T S = S T",
        },
        passed,
        json!(null),
    ))
}

/// Cases covered by a sweep: for S₃ every `r ≤ max_r` prime to 3, for C₃
/// every `⟨(1, a, r-1-a)⟩` with `a ∈ [0, r)` that passes validation.
pub fn sweep_cases(kind: GroupKind, max_r: u64) -> Vec<GroupSpec> {
    let rs = (1..=max_r).filter(|r| r % 3 != 0);
    match kind {
        GroupKind::S3 => rs.map(GroupSpec::s3_full).collect(),
        GroupKind::C3 => rs
            .flat_map(|r| (0..r).map(move |a| GroupSpec::c3_cyclic(r, a)))
            .filter(|s| s.check().is_ok() && validated_h(s).is_ok())
            .collect(),
    }
}

/// Runs every case in parallel; results come back in case order.
pub fn run_sweep(kind: GroupKind, max_r: u64, samples: usize) -> Vec<Result<VerificationReport>> {
    sweep_cases(kind, max_r)
        .par_iter()
        .map(|s| verify_case(s, samples))
        .collect()
}

fn scan_check(s: &crate::invring::SingularScan, anchor: String) -> Check {
    Check::new(
        format!("scan-{}-gf{}", s.name, s.field_size),
        anchor,
        s.passed,
        json!(s),
    )
}

/// Flattens the invariant-ring run into report checks.
pub fn invring_report(rep: &InvringReport) -> VerificationReport {
    let mut checks = Vec::new();
    checks.push(Check::new(
        "relation",
        "the degree-6 kernel is spanned by y4^2 + y2^3 + y1^3*y3 - y1*y2*y4",
        rep.relation.matches_y1_cubed_variant,
        json!(rep.relation),
    ));
    checks.push(Check::new(
        "hilbert-series",
        "(1-l^6)/((1-l)(1-l^2)(1-l^3)^2) by kernel rank and by orbit counting",
        rep.hilbert.passed,
        json!(rep.hilbert),
    ));
    for a in &rep.t_action {
        checks.push(Check::new(
            format!("action-{}", a.name),
            format!("{} = {}", a.name, a.expected),
            a.passed,
            json!(a.computed),
        ));
    }
    for c in &rep.identities {
        checks.push(Check::new(
            c.name.clone(),
            c.claim.clone(),
            c.passed,
            json!({ "residual": c.residual }),
        ));
    }
    for m in &rep.multiplicities {
        checks.push(Check::new(
            format!("crepancy-{}", &m.center[..1]),
            format!("multiplicity 2 along {}, codim 3, discrepancy 0", m.center),
            m.report.multiplicity == 2 && m.report.discrepancy == 0,
            json!(m.report),
        ));
    }
    for s in &rep.first_chart_scans {
        checks.push(scan_check(
            s,
            format!(
                "singular locus of chart {} matches its claimed center",
                s.name
            ),
        ));
    }
    checks.push(Check::new(
        "scan-T-locus-variant",
        "the locus V(y1, tu^3 + y3, tu) disagrees with the scan",
        !rep.t_locus_variant.passed,
        json!(rep.t_locus_variant),
    ));
    for s in &rep.chart_scans {
        let anchor = if s.name == "Y" {
            "Sing(Y) = V(y1, y2, y4)".to_string()
        } else {
            format!("chart {} is smooth", s.name)
        };
        checks.push(scan_check(s, anchor));
    }
    for p in &rep.presentations {
        checks.push(Check::new(
            format!("presentation-{}", p.chart),
            format!(
                "{} modulo the involution has the claimed z-presentation",
                p.chart
            ),
            p.passed,
            json!(p),
        ));
    }
    VerificationReport::new("invring", checks, None, rep.notes.clone())
}

pub fn verify_invring(max_degree: u32, fields: &[usize]) -> Result<VerificationReport> {
    if max_degree < 6 {
        return Err(Error::InvalidSpec(format!(
            "max degree {max_degree} is below 6"
        )));
    }
    for &q in fields {
        let mut k = q;
        while k > 1 && k % 3 == 0 {
            k /= 3;
        }
        if q < 3 || k != 1 {
            return Err(Error::InvalidSpec(format!(
                "field size {q} is not a power of 3"
            )));
        }
    }
    Ok(invring_report(&run_invring(max_degree, fields)?))
}

/// Builds and serializes the fan of a validated group.
pub fn fan(spec: &GroupSpec, format: FanFormat) -> Result<String> {
    spec.check()?;
    let h = validated_h(spec)?;
    let gamma = LatticeGamma::from_h(&h);
    let tri = triangulate(spec.kind, &gamma)?;
    let cls = orbit_classify(&tri)?;
    export_fan(&tri, &cls, format)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_examples() {
        let rep = verify_case(&GroupSpec::c3_cyclic(7, 2), 200).unwrap();
        assert!(rep.passed, "{:?}", rep.failed_checks());
        let s = rep.summary.unwrap();
        assert_eq!(
            (s.hsize, s.conj_bruteforce, s.chi, s.equality),
            (7, 5, 5, true)
        );

        let rep = verify_case(&GroupSpec::s3_full(5), 200).unwrap();
        assert!(rep.passed, "{:?}", rep.failed_checks());
        let s = rep.summary.unwrap();
        assert_eq!((s.conj_bruteforce, s.chi), (13, 16));

        let bad = GroupSpec::new(GroupKind::C3, 3, vec![[1, 1, 1]]);
        assert_eq!(verify_case(&bad, 10), Err(Error::TameViolation(3)));
    }

    #[test]
    fn sweep_case_lists() {
        let rs: Vec<u64> = sweep_cases(GroupKind::S3, 8).iter().map(|s| s.r).collect();
        assert_eq!(rs, vec![1, 2, 4, 5, 7, 8]);
        let c3 = sweep_cases(GroupKind::C3, 13);
        assert!(c3.iter().any(|s| s.r == 7 && s.hgens == vec![[1, 2, 4]]));
        assert!(c3.iter().all(|s| s.r % 3 != 0));
    }

    #[test]
    fn invring_input_checks() {
        assert!(verify_invring(5, &[9]).unwrap_err().is_input_error());
        assert!(verify_invring(6, &[6]).unwrap_err().is_input_error());
    }
}
