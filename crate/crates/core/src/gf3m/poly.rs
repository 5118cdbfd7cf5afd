//! Dense univariate polynomials over GF(3).

use std::fmt;

/// Polynomial over GF(3), coefficients lowest degree first. The zero
/// polynomial has no coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GF3Poly {
    coeffs: Vec<u8>,
}

#[inline]
pub(crate) fn add3(a: u8, b: u8) -> u8 {
    (a + b) % 3
}

#[inline]
pub(crate) fn sub3(a: u8, b: u8) -> u8 {
    (a + 3 - b) % 3
}

#[inline]
pub(crate) fn mul3(a: u8, b: u8) -> u8 {
    (a * b) % 3
}

impl GF3Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self { coeffs: vec![0, 1] }
    }

    /// Builds a polynomial from arbitrary integer coefficients, reducing mod 3.
    pub fn from_coeffs<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c.rem_euclid(3) as u8).collect();
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u8 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u8) -> u8 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add3(mul3(acc, x), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Self {
            coeffs: (0..n)
                .map(|i| add3(self.coeff(i), other.coeff(i)))
                .collect(),
        };
        out.normalize();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Self {
            coeffs: (0..n)
                .map(|i| sub3(self.coeff(i), other.coeff(i)))
                .collect(),
        };
        out.normalize();
        out
    }

    pub fn scale(&self, c: u8) -> Self {
        let mut out = Self {
            coeffs: self.coeffs.iter().map(|&a| mul3(a, c % 3)).collect(),
        };
        out.normalize();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0u8; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = add3(coeffs[i + j], mul3(a, b));
            }
        }
        let mut out = Self { coeffs };
        out.normalize();
        out
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        // leading coefficient is 1 or 2, both self-inverse mod 3
        let inv_lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![0u8; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mul3(rem[i], inv_lead);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = sub3(rem[i - dd + j], mul3(c, b));
            }
        }
        let mut q = Self { coeffs: quot };
        let mut r = Self { coeffs: rem };
        q.normalize();
        r.normalize();
        (q, r)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        let lead = a.leading();
        a.scale(lead)
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u128, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one().rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Rabin's irreducibility test: `f | x^(3^m) - x` and
    /// `gcd(x^(3^(m/p)) - x, f) = 1` for every prime `p | m`.
    pub fn is_irreducible(&self) -> bool {
        let m = match self.degree() {
            None | Some(0) => return false,
            Some(m) => m,
        };
        if m == 1 {
            return true;
        }
        let x = Self::x();
        let frob = |k: usize| {
            // x^(3^k) mod f via k cubings
            let mut t = x.rem(self);
            for _ in 0..k {
                t = t.pow_mod(3, self);
            }
            t
        };
        if !frob(m).sub(&x).rem(self).is_zero() {
            return false;
        }
        prime_factors_usize(m)
            .into_iter()
            .all(|p| frob(m / p).sub(&x).gcd(self).degree() == Some(0))
    }

    /// Monic polynomial of degree `m` whose lower coefficients are the base-3
    /// digits of `index`, least significant digit = constant term.
    pub fn monic_from_index(m: usize, mut index: u128) -> Self {
        let mut coeffs = Vec::with_capacity(m + 1);
        for _ in 0..m {
            coeffs.push((index % 3) as u8);
            index /= 3;
        }
        coeffs.push(1);
        Self { coeffs }
    }

    /// First monic irreducible of degree `m`, enumerating the lower
    /// coefficients as a base-3 counter with the constant term varying fastest.
    pub fn first_irreducible(m: usize) -> Self {
        assert!(m >= 1);
        (0u128..)
            .map(|i| Self::monic_from_index(m, i))
            .find(|p| p.is_irreducible())
            .expect("irreducible polynomials exist in every degree")
    }
}

fn prime_factors_usize(mut n: usize) -> Vec<usize> {
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

impl fmt::Debug for GF3Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF3Poly({self})")
    }
}

impl fmt::Display for GF3Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            match (c, mono.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{mono}")?,
                (_, false) => write!(f, "{c}{mono}")?,
            }
        }
        Ok(())
    }
}
