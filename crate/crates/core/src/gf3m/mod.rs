//! Exact arithmetic in GF(3) and GF(3^m).
//!
//! A [`FieldCtx`] is built for a root-of-unity order `s` coprime to 3. The
//! extension degree is the multiplicative order of 3 modulo `s`, the modulus
//! is the first monic irreducible polynomial of that degree (lower
//! coefficients counted in base 3, constant term fastest), and the
//! primitive element is the first field element, in the same base-3
//! enumeration, whose multiplicative order is `q - 1`. Everything downstream
//! is therefore reproducible bit for bit.

mod factor;
mod poly;
mod tables;

pub use factor::{distinct_prime_factors, is_prime};
pub use poly::GF3Poly;
pub use tables::FieldTables;

use crate::error::{Error, Result};
use poly::{add3, mul3, sub3};

/// Largest extension degree accepted; `3^80` still fits in a `u128`.
pub const MAX_DEGREE: usize = 80;

/// Element of GF(3^m): residue modulo the context modulus, `m` coefficients
/// lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(Vec<u8>);

impl FieldElement {
    pub fn coeffs(&self) -> &[u8] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Base-3 index of the element (constant term least significant).
    pub fn index(&self) -> u128 {
        self.0
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * 3 + c as u128)
    }
}

/// Binary and unary operations exposed through [`FieldCtx::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow(u128),
}

/// The field GF(3^m) together with the root-of-unity order it hosts.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    m: usize,
    modulus: GF3Poly,
    q: u128,
    s: u64,
    primitive: FieldElement,
    order_primes: Vec<u128>,
}

/// Multiplicative order of 3 modulo `s` (1 for `s` = 1 or 2).
pub fn order_of_three_mod(s: u64) -> Result<usize> {
    if s == 0 || s.is_multiple_of(3) {
        return Err(Error::TameViolation(s));
    }
    let mut x = 3 % s;
    let mut k = 1usize;
    while x != 1 % s {
        x = x * 3 % s;
        k += 1;
    }
    Ok(k)
}

impl FieldCtx {
    /// Smallest field GF(3^m) containing a primitive `s`-th root of unity.
    pub fn build_field_for_order(s: u64) -> Result<Self> {
        let m = order_of_three_mod(s)?;
        Self::with_degree_and_order(m, s)
    }

    /// GF(3^m) hosting the full multiplicative group (`s = 3^m - 1`).
    pub fn of_degree(m: usize) -> Result<Self> {
        if m == 0 || m > 39 {
            return Err(Error::FieldTooLarge(m));
        }
        let s = 3u64.pow(m as u32) - 1;
        Self::with_degree_and_order(m, s)
    }

    fn with_degree_and_order(m: usize, s: u64) -> Result<Self> {
        if m > MAX_DEGREE {
            return Err(Error::FieldTooLarge(m));
        }
        let modulus = GF3Poly::first_irreducible(m);
        let q = 3u128.pow(m as u32);
        let order_primes = distinct_prime_factors(q - 1);
        let mut ctx = Self {
            m,
            modulus,
            q,
            s,
            primitive: FieldElement(vec![0; m]),
            order_primes,
        };
        ctx.primitive = (1..q)
            .map(|i| ctx.element_from_index(i))
            .find(|g| ctx.has_full_order(g))
            .expect("the multiplicative group of a finite field is cyclic");
        Ok(ctx)
    }

    fn has_full_order(&self, g: &FieldElement) -> bool {
        let one = self.one();
        self.order_primes
            .iter()
            .all(|&p| self.pow(g, (self.q - 1) / p) != one)
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &GF3Poly {
        &self.modulus
    }

    pub fn size(&self) -> u128 {
        self.q
    }

    pub fn hosted_order(&self) -> u64 {
        self.s
    }

    pub fn primitive_element(&self) -> &FieldElement {
        &self.primitive
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![0; self.m])
    }

    pub fn one(&self) -> FieldElement {
        self.lift_gf3(1)
    }

    /// Embeds an integer through GF(3).
    pub fn from_int(&self, c: i64) -> FieldElement {
        self.lift_gf3(c.rem_euclid(3) as u8)
    }

    fn lift_gf3(&self, c: u8) -> FieldElement {
        let mut v = vec![0; self.m];
        v[0] = c;
        FieldElement(v)
    }

    /// Element whose coefficients are the base-3 digits of `index`.
    pub fn element_from_index(&self, mut index: u128) -> FieldElement {
        let mut v = vec![0u8; self.m];
        for c in v.iter_mut() {
            *c = (index % 3) as u8;
            index /= 3;
        }
        FieldElement(v)
    }

    /// Reduces an arbitrary GF(3) polynomial into the field.
    pub fn from_poly(&self, p: &GF3Poly) -> FieldElement {
        let r = p.rem(&self.modulus);
        let mut v = vec![0u8; self.m];
        for (i, &c) in r.coeffs().iter().enumerate() {
            v[i] = c;
        }
        FieldElement(v)
    }

    fn to_poly(&self, a: &FieldElement) -> GF3Poly {
        GF3Poly::from_coeffs(a.0.iter().map(|&c| c as i64))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(&x, &y)| add3(x, y)).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(&x, &y)| sub3(x, y)).collect())
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().map(|&x| sub3(0, x)).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let m = self.m;
        let mut prod = vec![0u8; 2 * m - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = add3(prod[i + j], mul3(x, y));
            }
        }
        // reduce with the monic modulus: x^m = -(lower terms)
        let lower = &self.modulus.coeffs()[..m];
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &l) in lower.iter().enumerate() {
                prod[k - m + j] = sub3(prod[k - m + j], mul3(c, l));
            }
        }
        prod.truncate(m);
        FieldElement(prod)
    }

    pub fn pow(&self, a: &FieldElement, mut e: u128) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Inverse via the extended Euclidean algorithm over GF(3)[x].
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.modulus.clone(), self.to_poly(a));
        let (mut s0, mut s1) = (GF3Poly::zero(), GF3Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant c; a * s0 = c
        let c = r0.coeff(0);
        Ok(self.from_poly(&s0.scale(c)))
    }

    /// Uniform entry point for the four field operations. `b` is ignored by
    /// `Inv` and `Pow`.
    pub fn apply(&self, op: FieldOp, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Inv => self.inv(a)?,
            FieldOp::Pow(k) => self.pow(a, k),
        })
    }

    /// Deterministic primitive `n`-th root of unity `g^((q-1)/n)`.
    pub fn root_of_unity(&self, n: u64) -> Result<FieldElement> {
        if n == 0 || !self.s.is_multiple_of(n) {
            return Err(Error::OrderUnavailable {
                order: n,
                hosted: self.s,
            });
        }
        Ok(self.pow(&self.primitive, (self.q - 1) / n as u128))
    }

    /// Multiplicative order of a nonzero element, by checking `a^(n/p)` for
    /// the primes `p` dividing `q - 1`.
    pub fn multiplicative_order(&self, a: &FieldElement) -> Result<u128> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let one = self.one();
        let mut n = self.q - 1;
        for &p in &self.order_primes {
            while n.is_multiple_of(p) && self.pow(a, n / p) == one {
                n /= p;
            }
        }
        Ok(n)
    }

    /// Iterator over all field elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| self.element_from_index(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> FieldElement {
        FieldElement(
            (0..ctx.degree())
                .map(|_| rng.random_range(0..3u8))
                .collect(),
        )
    }

    /// Order of 3 mod s by listing powers, the hand oracle.
    fn order_by_listing(s: u64) -> usize {
        let mut seen = vec![];
        let mut x = 1u64;
        loop {
            x = x * 3 % s;
            seen.push(x);
            if x == 1 % s {
                return seen.len();
            }
        }
    }

    #[test]
    fn degrees_for_small_orders() {
        for (s, m, q) in [(1u64, 1usize, 3u128), (5, 4, 81), (7, 6, 729)] {
            let ctx = FieldCtx::build_field_for_order(s).unwrap();
            assert_eq!(ctx.degree(), m);
            assert_eq!(ctx.size(), q);
            assert_eq!(order_by_listing(s), m);
        }
    }

    #[test]
    fn tame_violation() {
        assert_eq!(
            FieldCtx::build_field_for_order(6).unwrap_err(),
            Error::TameViolation(6)
        );
    }

    #[test]
    fn roots_of_unity() {
        let c1 = FieldCtx::build_field_for_order(1).unwrap();
        assert_eq!(c1.root_of_unity(1).unwrap(), c1.one());
        let c2 = FieldCtx::build_field_for_order(2).unwrap();
        assert_eq!(c2.root_of_unity(2).unwrap(), c2.from_int(-1));
        let c7 = FieldCtx::build_field_for_order(7).unwrap();
        let z = c7.root_of_unity(7).unwrap();
        assert_eq!(z, c7.pow(c7.primitive_element(), 104));
        let mut acc = c7.one();
        for k in 1..=7 {
            acc = c7.mul(&acc, &z);
            assert_eq!(acc == c7.one(), k == 7, "zeta^{k}");
        }
        assert!(matches!(
            c7.root_of_unity(3),
            Err(Error::OrderUnavailable {
                order: 3,
                hosted: 7
            })
        ));
    }

    #[test]
    fn root_orders_exact() {
        for s in [2u64, 4, 5, 8, 10, 13, 14, 20, 22, 26] {
            let ctx = FieldCtx::build_field_for_order(s).unwrap();
            for n in (1..=s).filter(|n| s % n == 0) {
                let z = ctx.root_of_unity(n).unwrap();
                assert_eq!(ctx.multiplicative_order(&z).unwrap(), n as u128);
                for p in distinct_prime_factors(n as u128) {
                    assert_ne!(ctx.pow(&z, n as u128 / p), ctx.one());
                }
            }
        }
    }

    #[test]
    fn field_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in [5u64, 7, 13] {
            let ctx = FieldCtx::build_field_for_order(s).unwrap();
            for _ in 0..100 {
                let x = random_element(&ctx, &mut rng);
                let y = random_element(&ctx, &mut rng);
                assert_eq!(ctx.mul(&ctx.one(), &x), x);
                if !x.is_zero() {
                    let xi = ctx.apply(FieldOp::Inv, &x, &x).unwrap();
                    assert_eq!(ctx.mul(&x, &xi), ctx.one());
                }
                let lhs = ctx.pow(&ctx.add(&x, &y), 3);
                let rhs = ctx.add(&ctx.pow(&x, 3), &ctx.pow(&y, 3));
                assert_eq!(lhs, rhs);
            }
            assert_eq!(ctx.inv(&ctx.zero()), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn modulus_passes_independent_irreducibility_test() {
        for s in [2u64, 4, 5, 7, 8, 10, 11, 13, 26] {
            let ctx = FieldCtx::build_field_for_order(s).unwrap();
            let f = ctx.modulus();
            let m = ctx.degree();
            assert!(f.is_monic());
            assert!((0..3).all(|x| f.eval(x) != 0) || m == 1);
            for i in 1..m {
                let xi = GF3Poly::x().pow_mod(3u128.pow(i as u32), f);
                assert_eq!(xi.sub(&GF3Poly::x()).gcd(f).degree(), Some(0));
            }
        }
    }

    #[test]
    fn larger_degrees_build() {
        // r = 53 under lcm(2, r) needs degree 52
        let ctx = FieldCtx::build_field_for_order(106).unwrap();
        assert_eq!(ctx.degree(), 52);
        let z = ctx.root_of_unity(106).unwrap();
        assert_eq!(ctx.multiplicative_order(&z).unwrap(), 106);
    }
}
