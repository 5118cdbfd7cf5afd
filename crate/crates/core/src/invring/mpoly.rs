//! Sparse multivariate polynomials over GF(3).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf3m::FieldTables;

/// Ordered variable names shared by all polynomials of one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    names: Arc<[String]>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Self {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> MPoly {
        MPoly {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: i64) -> MPoly {
        let mut p = self.zero();
        let c = c.rem_euclid(3) as u8;
        if c != 0 {
            p.terms.insert(vec![0; self.nvars()], c);
        }
        p
    }

    pub fn one(&self) -> MPoly {
        self.constant(1)
    }

    pub fn var(&self, i: usize) -> MPoly {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.monomial(e, 1)
    }

    /// Variable by name; panics on unknown names, which are programming errors.
    pub fn v(&self, name: &str) -> MPoly {
        let i = self
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable `{name}`"));
        self.var(i)
    }

    pub fn monomial(&self, exps: Vec<u32>, c: i64) -> MPoly {
        assert_eq!(exps.len(), self.nvars());
        let mut p = self.zero();
        let c = c.rem_euclid(3) as u8;
        if c != 0 {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Parses an expression in this ring's variables.
    pub fn parse(&self, s: &str) -> Result<MPoly> {
        super::parse::parse(self, s)
    }

    /// All exponent vectors of total degree `d`, colex order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Vec<u32>> {
        self.weighted_monomials(&vec![1; self.nvars()], d)
    }

    /// Exponent vectors with `Σ wᵢ eᵢ = d`, colex order.
    pub fn weighted_monomials(&self, weights: &[u32], d: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars()];
        fn rec(i: usize, left: u32, w: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == 0 {
                if left.is_multiple_of(w[0]) {
                    cur[0] = left / w[0];
                    out.push(cur.clone());
                }
                return;
            }
            for e in 0..=left / w[i] {
                cur[i] = e;
                rec(i - 1, left - e * w[i], w, cur, out);
            }
            cur[i] = 0;
        }
        if self.nvars() > 0 {
            rec(self.nvars() - 1, d, weights, &mut cur, &mut out);
        } else if d == 0 {
            out.push(Vec::new());
        }
        out
    }
}

/// Polynomial with coefficients in `{1, 2}` keyed by exponent vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    ring: PolyRing,
    terms: BTreeMap<Vec<u32>, u8>,
}

impl MPoly {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, u8)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> u8 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Largest exponent of variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Smallest total degree in the listed variables over all terms.
    pub fn min_degree_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| vars.iter().map(|&i| e[i]).sum())
            .min()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> u8 {
        self.coeff(&vec![0; self.ring.nvars()])
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring.names, &other.ring.names) || self.ring == other.ring,
            "polynomials from different rings"
        );
    }

    fn add_term(&mut self, e: Vec<u32>, c: u8) {
        let c = c % 3;
        if c == 0 {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % 3;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = c.rem_euclid(3) as u8;
        let mut out = self.ring.zero();
        if c != 0 {
            out.terms = self
                .terms
                .iter()
                .map(|(e, &x)| (e.clone(), x * c % 3))
                .collect();
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ring morphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut cache: Vec<Vec<MPoly>> = images
            .iter()
            .map(|p| vec![target.one(), p.clone()])
            .collect();
        let mut out = target.zero();
        for (e, &c) in &self.terms {
            let mut term = target.constant(c as i64);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                term = &term * &cache[i][k as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Substitutes a single variable, keeping the others.
    pub fn substitute_var(&self, i: usize, image: &MPoly) -> MPoly {
        let images: Vec<MPoly> = (0..self.ring.nvars())
            .map(|j| {
                if j == i {
                    image.clone()
                } else {
                    self.ring.var(j)
                }
            })
            .collect();
        self.substitute(&images)
    }

    /// Partial derivative; `3c = 0` drops terms with exponent divisible by 3.
    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = self.ring.zero();
        for (e, &c) in &self.terms {
            let k = e[i];
            if k % 3 == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, (c as u32 * (k % 3)) as u8 % 3);
        }
        out
    }

    pub fn jacobian(&self) -> Vec<MPoly> {
        (0..self.ring.nvars()).map(|i| self.derivative(i)).collect()
    }

    /// Coefficients of powers of variable `i`: `self = Σ cⱼ xᵢʲ`.
    pub fn coefficients_in(&self, i: usize) -> Vec<MPoly> {
        let mut out = vec![self.ring.zero(); self.degree_in(i) as usize + 1];
        for (e, &c) in &self.terms {
            let mut e2 = e.clone();
            let j = e2[i] as usize;
            e2[i] = 0;
            out[j].add_term(e2, c);
        }
        out
    }

    /// Reduces modulo `v² - replacement`, where `replacement` has
    /// `v`-degree at most 1.
    pub fn reduce_square(&self, v: usize, replacement: &MPoly) -> MPoly {
        assert!(replacement.degree_in(v) <= 1);
        let mut cur = self.clone();
        while cur.degree_in(v) >= 2 {
            let mut next = self.ring.zero();
            for (e, &c) in &cur.terms {
                if e[v] >= 2 {
                    let mut e2 = e.clone();
                    e2[v] -= 2;
                    let m = self.ring.monomial(e2, c as i64);
                    next = &next + &(&m * replacement);
                } else {
                    next.add_term(e.clone(), c);
                }
            }
            cur = next;
        }
        cur
    }

    /// Re-expresses the polynomial in another ring whose variable list
    /// contains every variable used here.
    pub fn embed(&self, target: &PolyRing) -> Result<MPoly> {
        let map: Vec<Option<usize>> = self
            .ring
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let mut out = target.zero();
        for (e, &c) in &self.terms {
            let mut e2 = vec![0; target.nvars()];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let j = map[i].ok_or_else(|| {
                        Error::Parse(format!(
                            "variable `{}` missing in target ring",
                            self.ring.names()[i]
                        ))
                    })?;
                    e2[j] = k;
                }
            }
            out.add_term(e2, c);
        }
        Ok(out)
    }

    /// Evaluator over a small field; see [`CompiledPoly`].
    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| {
                    let factors = e
                        .iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .map(|(i, &k)| (i, k))
                        .collect();
                    (c as u16, factors)
                })
                .collect(),
        }
    }
}

/// Flattened polynomial for repeated evaluation at points given as field
/// indices.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(u16, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    pub fn eval(&self, f: &FieldTables, point: &[u16]) -> u16 {
        let mut acc = 0u16;
        for (c, factors) in &self.terms {
            let mut t = *c;
            for &(i, k) in factors {
                for _ in 0..k {
                    t = f.mul(t, point[i]);
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }
}

impl Add for &MPoly {
    type Output = MPoly;

    fn add(self, rhs: &MPoly) -> MPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;

    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;

    fn neg(self) -> MPoly {
        self.scale(2)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;

    fn mul(self, rhs: &MPoly) -> MPoly {
        self.check_ring(rhs);
        let mut out = self.ring.zero();
        for (a, &x) in &self.terms {
            for (b, &y) in &rhs.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, x * y % 3);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;

    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // graded order, highest first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, &c)) in terms.iter().enumerate() {
            let sign = if c == 2 { "-" } else { "+" };
            if k == 0 {
                if c == 2 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    let n = &self.ring.names()[i];
                    if x == 1 {
                        n.clone()
                    } else {
                        format!("{n}^{x}")
                    }
                })
                .collect();
            if factors.is_empty() {
                f.write_str("1")?;
            } else {
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PolyRing {
        PolyRing::new(&["x", "y", "z"])
    }

    #[test]
    fn arithmetic_mod_three() {
        let r = ring();
        let (x, y) = (r.v("x"), r.v("y"));
        let s = &x + &y;
        // (x + y)^3 = x^3 + y^3 in characteristic 3
        assert_eq!(s.pow(3), &x.pow(3) + &y.pow(3));
        assert!((&s - &s).is_zero());
        assert_eq!(x.scale(3), r.zero());
        assert_eq!((&x * &r.constant(2)).to_string(), "-x");
    }

    #[test]
    fn derivatives_in_characteristic_three() {
        let r = ring();
        let y = r.v("y");
        assert!(y.pow(3).derivative(1).is_zero());
        let f = &y.pow(2) * &r.v("z");
        assert_eq!(f.derivative(1), (&y * &r.v("z")).scale(2));
    }

    #[test]
    fn substitution_and_reduction() {
        let r = ring();
        let (x, y, z) = (r.v("x"), r.v("y"), r.v("z"));
        let f = &x * &y + z.clone();
        let g = f.substitute(&[y.clone(), z.clone(), x.clone()]);
        assert_eq!(g, &y * &z + x.clone());
        // x^3 mod (x^2 - y) = x*y
        let red = x.pow(3).reduce_square(0, &y);
        assert_eq!(red, &x * &y);
        assert_eq!(x.pow(2).coefficients_in(0).len(), 3);
    }

    #[test]
    fn display_and_monomials() {
        let r = ring();
        let p = r.parse("x^2*y - z + 1").unwrap();
        assert_eq!(p.to_string(), "x^2*y - z + 1");
        assert_eq!(r.monomials_of_degree(3).len(), 10);
        let w = PolyRing::new(&["a", "b", "c", "d"]).weighted_monomials(&[1, 2, 3, 3], 6);
        assert_eq!(w.len(), 11);
    }

    #[test]
    fn compiled_evaluation() {
        let r = ring();
        let f = r.parse("x^2 + y*z - 1").unwrap();
        let t = FieldTables::for_size(3).unwrap();
        let c = f.compile();
        // 2^2 + 1*2 - 1 = 5 = 2
        assert_eq!(c.eval(&t, &[2, 1, 2]), 2);
    }
}
