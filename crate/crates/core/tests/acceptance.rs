//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use wildmckay::gf3m::FieldCtx;
use wildmckay::groups::{
    check_representation, conjugacy_classes_bruteforce, enumerate_group, mat_identity, mat_mul,
    validated_h, GroupKind, GroupSpec, MonomialElement,
};
use wildmckay::invring::{
    chart_scans, discover_relation, hilbert_series_check, multiplicity_and_discrepancy,
    relation_proof_variant, verify_blowup_charts, verify_quotient_presentations, PolyRing,
};
use wildmckay::pipeline::verify_case;
use wildmckay::toric::{
    emptiness_and_unimodularity, orbit_classify, triangulate, validate_triangulation, LatticeGamma,
    Stabilizer,
};

const RS: [u64; 9] = [1, 2, 4, 5, 7, 8, 10, 11, 13];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c3_cases() -> Vec<GroupSpec> {
    RS.iter()
        .flat_map(|&r| (0..r).map(move |a| GroupSpec::c3_cyclic(r, a)))
        .filter(|s| validated_h(s).is_ok())
        .collect()
}

fn s3_cases() -> Vec<GroupSpec> {
    RS.iter().map(|&r| GroupSpec::s3_full(r)).collect()
}

fn within(start: Instant, limit: u64) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < Duration::from_secs(limit), || {
        format!("took {t:?}, limit {limit}s")
    })?;
    Ok(t)
}

fn c3_theorem() -> Outcome {
    let start = Instant::now();
    let cases = c3_cases();
    for s in &cases {
        let rep = verify_case(s, 200).map_err(|e| e.to_string())?;
        let sum = rep.summary.as_ref().ok_or("no summary")?;
        ensure(rep.passed && sum.chi == sum.conj_bruteforce as i64, || {
            format!(
                "r={} H=<{}>: chi {} conj {} failed {:?}",
                s.r,
                s.gens_string(),
                sum.chi,
                sum.conj_bruteforce,
                rep.failed_checks()
            )
        })?;
        ensure(sum.chi == (sum.hsize as i64 - 1) / 3 + 3, || {
            format!("r={}: closed form", s.r)
        })?;
    }
    let t = within(start, 60)?;
    Ok(format!(
        "{} cases, chi = #Conj in each, {t:.2?}",
        cases.len()
    ))
}

fn s3_theorem() -> Outcome {
    let start = Instant::now();
    for s in s3_cases() {
        let r = s.r as i64;
        let h = validated_h(&s).map_err(|e| e.to_string())?;
        let table = enumerate_group(&s, &h).map_err(|e| e.to_string())?;
        let conj = conjugacy_classes_bruteforce(&table).count() as i64;
        ensure(conj == (r - 1) * (r - 2) / 6 + 2 * r + 1, || {
            format!("r={r}: #Conj {conj}")
        })?;
        let rep = verify_case(&s, 200).map_err(|e| e.to_string())?;
        let sum = rep.summary.as_ref().ok_or("no summary")?;
        let chi = (r - 1) * (r - 2) / 6 + 2 * (r - 1) + 6;
        ensure(rep.passed && sum.chi == chi && sum.chi == conj + 3, || {
            format!("r={r}: chi {} expected {chi}, conj {conj}", sum.chi)
        })?;
    }
    let t = within(start, 120)?;
    Ok(format!("r in {RS:?}, chi = #Conj + 3, {t:.2?}"))
}

fn triangulation_suite() -> Outcome {
    let mut n = 0;
    for s in c3_cases().into_iter().chain(s3_cases()) {
        let h = validated_h(&s).map_err(|e| e.to_string())?;
        let gamma = LatticeGamma::from_h(&h);
        let tri = triangulate(s.kind, &gamma).map_err(|e| e.to_string())?;
        let label = format!("{} r={} #H={}", s.kind, s.r, h.order());
        ensure(tri.len() == h.order(), || {
            format!("{label}: {} triangles", tri.len())
        })?;
        for t in 0..tri.len() {
            let c = emptiness_and_unimodularity(&gamma, &tri.points, &tri.vertices(t));
            ensure(c.empty && c.unimodular, || {
                format!("{label}: triangle {t} det {}", c.det)
            })?;
        }
        let check = validate_triangulation(&tri, &gamma);
        ensure(check.passed && check.equivariant, || {
            format!("{label}: {:?}", check.failures)
        })?;
        let cls = orbit_classify(&tri).map_err(|e| e.to_string())?;
        match s.kind {
            GroupKind::C3 => ensure(check.fixed_triangles == 1, || {
                format!("{label}: {} fixed", check.fixed_triangles)
            })?,
            GroupKind::S3 => {
                let r = s.r as i64;
                let [free, trans, tau] =
                    [Stabilizer::Free, Stabilizer::Transposition, Stabilizer::Tau]
                        .map(|k| cls.count(k) as i64);
                let census = 6 * free + 3 * trans + tau;
                ensure(
                    free == (r - 1) * (r - 2) / 6 && trans == r - 1 && tau == 1 && census == r * r,
                    || format!("{label}: census {census}"),
                )?;
            }
        }
        n += 1;
    }
    Ok(format!(
        "{n} triangulations, all empty, unimodular and equivariant"
    ))
}

fn hilbert() -> Outcome {
    let start = Instant::now();
    let rep = hilbert_series_check(30);
    ensure(rep.passed, || {
        "kernel rank, orbit count and series disagree".into()
    })?;
    ensure(rep.series[..7] == [1, 1, 2, 4, 5, 7, 10], || {
        format!("{:?}", &rep.series[..7])
    })?;
    let t = within(start, 10)?;
    Ok(format!(
        "d <= 30 agree, first values {:?}, {t:.2?}",
        &rep.series[..7]
    ))
}

fn relation() -> Outcome {
    let (rel, rep) = discover_relation().map_err(|e| e.to_string())?;
    ensure(rep.kernel_dims == [0, 0, 0, 0, 0, 0, 1], || {
        format!("kernel dims {:?}", rep.kernel_dims)
    })?;
    ensure(
        rep.matches_y1_cubed_variant && !rep.matches_y1_squared_variant,
        || rep.relation.clone(),
    )?;
    ensure(
        !rep.erratum.is_empty() && rep.erratum.contains("y1^2*y3"),
        || "erratum not flagged".into(),
    )?;
    Ok(format!("relation {rel}, y1^2*y3 variant flagged"))
}

fn charts() -> Outcome {
    let start = Instant::now();
    let f = relation_proof_variant();
    for c in verify_blowup_charts(&f) {
        ensure(c.passed, || format!("{}: residual {}", c.name, c.residual))?;
        if c.name == "exclusion-U1" {
            ensure(c.residual == "1", || {
                format!("exclusion residual {}", c.residual)
            })?;
        }
    }
    let scans = chart_scans(&f, &[3, 9, 27]).map_err(|e| e.to_string())?;
    for s in &scans {
        ensure(s.passed, || {
            format!(
                "{} over GF({}) mismatched {}",
                s.name, s.field_size, s.mismatched
            )
        })?;
        if s.name != "Y" {
            ensure(s.singular == 0, || {
                format!("{} has {} singular points", s.name, s.singular)
            })?;
        }
    }
    let y27 = scans
        .iter()
        .find(|s| s.name == "Y" && s.field_size == 27)
        .ok_or("no GF(27) scan of Y")?;
    ensure(y27.singular == 27 && y27.claimed == 27, || {
        format!("Sing(Y) has {} points", y27.singular)
    })?;
    let t = within(start, 300)?;
    Ok(format!(
        "identities hold, T1/T2/U2 smooth over GF(3,9,27), Sing(Y) = 27 points, {t:.2?}"
    ))
}

fn crepancy() -> Outcome {
    let f = relation_proof_variant();
    let yr = f.ring().clone();
    let tr = PolyRing::new(&["y1", "y3", "tu", "tv"]);
    let g = tr
        .parse("tv^2 + tu^3*y1 + y1*y3 - tu*tv*y1")
        .map_err(|e| e.to_string())?;
    let ur = PolyRing::new(&["y2", "y3", "ut", "uv"]);
    let h = ur
        .parse("uv^2 + y2 + ut^3*y2*y3 - ut*uv*y2")
        .map_err(|e| e.to_string())?;
    let p = |r: &PolyRing, s: &str| r.parse(s).map_err(|e| e.to_string());
    let cases = [
        (f.clone(), vec![yr.v("y1"), yr.v("y2"), yr.v("y4")]),
        (g, vec![tr.v("y1"), p(&tr, "tu^3 + y3")?, tr.v("tv")]),
        (h, vec![ur.v("y2"), p(&ur, "1 + ut^3*y3")?, ur.v("uv")]),
    ];
    for (eq, center) in &cases {
        let rep = multiplicity_and_discrepancy(eq, center, 3).map_err(|e| e.to_string())?;
        ensure(rep.multiplicity == 2 && rep.discrepancy == 0, || {
            format!("{eq}: {rep:?}")
        })?;
    }
    Ok("m = 2, codim 3, discrepancy 0 for Y, T and U".into())
}

fn representation() -> Outcome {
    for s in [GroupSpec::s3_full(13), GroupSpec::c3_cyclic(13, 3)] {
        let h = validated_h(&s).map_err(|e| e.to_string())?;
        let table = enumerate_group(&s, &h).map_err(|e| e.to_string())?;
        let ctx = FieldCtx::build_field_for_order(s.root_order()).map_err(|e| e.to_string())?;
        let rep = check_representation(&table, &ctx, 10_000, 7).map_err(|e| e.to_string())?;
        ensure(rep.samples == 10_000 && rep.mismatches == 0, || {
            format!("{} mismatches", rep.mismatches)
        })?;
    }
    let ctx = FieldCtx::build_field_for_order(26).map_err(|e| e.to_string())?;
    let m = |g: &MonomialElement| g.to_matrix(&ctx).map_err(|e| e.to_string());
    let sg = MonomialElement::s_gen(26);
    let t = MonomialElement::t_gen(26).map_err(|e| e.to_string())?;
    let (sm, tm, si) = (m(&sg)?, m(&t)?, m(&sg.inverse())?);
    let id = mat_identity(&ctx);
    ensure(mat_mul(&ctx, &mat_mul(&ctx, &sm, &sm), &sm) == id, || {
        "S^3 != I".into()
    })?;
    ensure(mat_mul(&ctx, &tm, &tm) == id, || "T^2 != I".into())?;
    ensure(
        mat_mul(&ctx, &mat_mul(&ctx, &si, &tm), &sm) == mat_mul(&ctx, &sm, &tm),
        || "S^-1 T S != S T".into(),
    )?;
    Ok("2 x 10^4 sampled products match, S^3 = T^2 = I, S^-1 T S = S T".into())
}

fn presentations() -> Outcome {
    let reps = verify_quotient_presentations(10, 9).map_err(|e| e.to_string())?;
    ensure(reps.len() == 3, || format!("{} charts", reps.len()))?;
    for p in &reps {
        ensure(
            p.passed && p.singular_match && p.singular_points == 9,
            || format!("{}: {p:?}", p.chart),
        )?;
    }
    Ok("T1, T2, U2 presentations verified to degree 10, singular loci match over GF(9)".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 C3 theorem", c3_theorem),
        ("2 S3 theorem", s3_theorem),
        ("3 triangulation suite", triangulation_suite),
        ("4 Hilbert series", hilbert),
        ("5 relation discovery", relation),
        ("6 chart certification", charts),
        ("7 crepancy", crepancy),
        ("8 representation", representation),
        ("9 quotient presentations", presentations),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match std::panic::catch_unwind(run) {
            Ok(Ok(msg)) => println!("PASS  {name}: {msg}"),
            Ok(Err(msg)) => {
                failed += 1;
                println!("FAIL  {name}: {msg}");
            }
            Err(_) => {
                failed += 1;
                println!("FAIL  {name}: panicked");
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
