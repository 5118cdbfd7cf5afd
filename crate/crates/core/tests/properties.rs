use proptest::prelude::*;

use wildmckay::gf3m::FieldCtx;
use wildmckay::groups::{
    build_h, check_representation, class_structure, conjugacy_classes_bruteforce,
    conjugacy_count_formula, enumerate_group, pseudo_reflection_and_smallness, validated_h,
    GroupKind, GroupSpec,
};
use wildmckay::invring::invariants::{s_action, x_ring};
use wildmckay::invring::{MPoly, PolyRing};
use wildmckay::toric::{
    count_polynomial, emptiness_and_unimodularity, face_counts, triangulate,
    validate_triangulation, LatticeGamma,
};

// Polynomials over GF(3) as little-endian coefficient vectors, kept apart
// from the library's own polynomial type.
fn trim(mut p: Vec<u8>) -> Vec<u8> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn rem(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut a = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lead_inv = b[b.len() - 1]; // 1 and 2 are self-inverse
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let c = a[a.len() - 1] * lead_inv % 3;
        for (i, &bi) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + 3 * 3 - c * bi) % 3;
        }
        a = trim(a);
    }
    a
}

fn monic_polys(d: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..3usize.pow(d as u32)).map(move |mut k| {
        let mut p = Vec::with_capacity(d + 1);
        for _ in 0..d {
            p.push((k % 3) as u8);
            k /= 3;
        }
        p.push(1);
        p
    })
}

/// No monic factor of degree `1..=m/2` by trial division.
fn irreducible_by_trial_division(f: &[u8]) -> bool {
    let m = f.len() - 1;
    (1..=m / 2).all(|d| monic_polys(d).all(|g| !rem(f, &g).is_empty()))
}

fn primes_dividing(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn valid_specs(max_r: u64, full: bool) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for r in (1..=max_r).filter(|r| r % 3 != 0) {
        for a in 0..r {
            let s = GroupSpec::c3_cyclic(r, a);
            if validated_h(&s).is_ok() {
                out.push(s);
            }
        }
        if full {
            out.push(GroupSpec::s3_full(r));
            let c3_full = GroupSpec::new(GroupKind::C3, r, GroupSpec::s3_full(r).hgens);
            if validated_h(&c3_full).is_ok() {
                out.push(c3_full);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn modulus_is_irreducible(m in 2usize..=8) {
        let ctx = FieldCtx::of_degree(m).unwrap();
        let f = ctx.modulus().coeffs().to_vec();
        prop_assert_eq!(f.len(), m + 1);
        let no_roots = (0..3u32).all(|x| f.iter().rev().fold(0u32, |acc, &c| (acc * x + c as u32) % 3) != 0);
        prop_assert!(no_roots);
        prop_assert!(irreducible_by_trial_division(&f));
    }

    #[test]
    fn frobenius_is_additive(m in 1usize..=10, a in any::<u128>(), b in any::<u128>()) {
        let ctx = FieldCtx::of_degree(m).unwrap();
        let x = ctx.element_from_index(a % ctx.size());
        let y = ctx.element_from_index(b % ctx.size());
        let lhs = ctx.pow(&ctx.add(&x, &y), 3);
        let rhs = ctx.add(&ctx.pow(&x, 3), &ctx.pow(&y, 3));
        prop_assert_eq!(lhs, rhs);
        let prod = ctx.mul(&x, &ctx.add(&x, &y));
        prop_assert_eq!(prod, ctx.add(&ctx.mul(&x, &x), &ctx.mul(&x, &y)));
        if !x.is_zero() {
            prop_assert_eq!(ctx.mul(&x, &ctx.inv(&x).unwrap()), ctx.one());
        }
    }

    #[test]
    fn roots_of_unity_have_exact_order(n in 1u64..2000) {
        prop_assume!(n % 3 != 0);
        // orders needing a field beyond the supported degree are rejected up front
        let ctx = match FieldCtx::build_field_for_order(n) {
            Ok(ctx) => ctx,
            Err(e) => {
                prop_assert!(matches!(e, wildmckay::Error::FieldTooLarge(_)));
                return Ok(());
            }
        };
        let z = ctx.root_of_unity(n).unwrap();
        prop_assert_eq!(ctx.pow(&z, n as u128), ctx.one());
        for p in primes_dividing(n) {
            prop_assert_ne!(ctx.pow(&z, (n / p) as u128), ctx.one());
        }
    }

    #[test]
    fn matrices_are_a_homomorphism(spec in proptest::sample::select(valid_specs(40, true)), seed in any::<u64>()) {
        let h = validated_h(&spec).unwrap();
        let table = enumerate_group(&spec, &h).unwrap();
        let ctx = FieldCtx::build_field_for_order(spec.root_order()).unwrap();
        let rep = check_representation(&table, &ctx, 500, seed).unwrap();
        prop_assert_eq!(rep.mismatches, 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn class_count_and_structure(spec in proptest::sample::select(valid_specs(20, true))) {
        let h = validated_h(&spec).unwrap();
        let table = enumerate_group(&spec, &h).unwrap();
        let classes = conjugacy_classes_bruteforce(&table);
        prop_assert_eq!(classes.count() as u64, conjugacy_count_formula(&spec, h.order()).unwrap());
        let cs = class_structure(&spec, &table, &classes);
        prop_assert!(cs.passed, "{:?}", cs.failures);
        let ctx = FieldCtx::build_field_for_order(spec.root_order()).unwrap();
        let small = pseudo_reflection_and_smallness(&table, &ctx).unwrap();
        prop_assert!(small.small);
        prop_assert!(small.determinant_failures.is_empty());
    }

    #[test]
    fn triangulations_are_valid(spec in proptest::sample::select(valid_specs(60, true))) {
        let h = build_h(&spec).unwrap();
        let gamma = LatticeGamma::from_h(&h);
        let tri = triangulate(spec.kind, &gamma).unwrap();
        prop_assert_eq!(tri.len(), h.order());
        let check = validate_triangulation(&tri, &gamma);
        prop_assert!(check.passed, "{:?}", check.failures);
        prop_assert_eq!(check.empty_but_not_unimodular, 0);
        if spec.kind == GroupKind::C3 {
            prop_assert_eq!(check.fixed_triangles, 1);
            // r = 1 has no interior center; the simplex itself is the triangle
            if let Some(c) = tri.center {
                let t0 = [c, [c[2], c[0], c[1]], [c[1], c[2], c[0]]];
                prop_assert!(emptiness_and_unimodularity(&gamma, &tri.points, &t0).empty);
            }
        }
        let f = face_counts(&tri);
        prop_assert_eq!(f.euler_relation(), 1);
        // at q = 2 every cone contributes 1
        prop_assert_eq!(count_polynomial(&tri, 2), 1 + (f.rays + f.edges + f.triangles) as u128);
    }
}

fn poly(ring: &PolyRing, terms: &[(u32, u32, u32, u8)]) -> MPoly {
    terms.iter().fold(ring.zero(), |acc, &(a, b, c, k)| {
        &acc + &ring.monomial(vec![a, b, c], k as i64)
    })
}

fn terms() -> impl Strategy<Value = Vec<(u32, u32, u32, u8)>> {
    proptest::collection::vec((0u32..4, 0u32..4, 0u32..4, 1u8..3), 0..6)
}

proptest! {
    #[test]
    fn substitution_is_a_ring_map(p in terms(), q in terms(), i0 in terms(), i1 in terms(), i2 in terms()) {
        let r = x_ring();
        let (p, q) = (poly(&r, &p), poly(&r, &q));
        let images = [poly(&r, &i0), poly(&r, &i1), poly(&r, &i2)];
        prop_assert_eq!((&p + &q).substitute(&images), &p.substitute(&images) + &q.substitute(&images));
        prop_assert_eq!((&p * &q).substitute(&images), &p.substitute(&images) * &q.substitute(&images));
    }

    #[test]
    fn cyclic_shift_has_order_three(p in terms()) {
        let r = x_ring();
        let p = poly(&r, &p);
        let s = s_action();
        prop_assert_eq!(s.apply(&s.apply(&s.apply(&p))), p);
    }

    #[test]
    fn displayed_polynomials_parse_back(p in terms()) {
        let r = x_ring();
        let p = poly(&r, &p);
        prop_assert_eq!(r.parse(&p.to_string()).unwrap(), p);
    }
}
