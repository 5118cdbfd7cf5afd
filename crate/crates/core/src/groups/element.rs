//! Monomial matrices `D(e)·P(π)` with root-of-unity diagonal entries.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf3m::{FieldCtx, FieldElement};

/// Permutation of `{0, 1, 2}`; `self.0[j]` is the image of `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Perm(pub [u8; 3]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2]);
    /// The 3-cycle `0 -> 1 -> 2 -> 0`, the permutation of the standard `S`.
    pub const CYCLE: Perm = Perm([1, 2, 0]);
    /// The transposition `0 <-> 2`, the permutation underlying `T`.
    pub const REVERSAL: Perm = Perm([2, 1, 0]);

    #[inline]
    pub fn apply(self, j: usize) -> usize {
        self.0[j] as usize
    }

    /// `self ∘ other`.
    pub fn compose(self, other: Perm) -> Perm {
        Perm([0, 1, 2].map(|j| self.0[other.0[j] as usize]))
    }

    pub fn inverse(self) -> Perm {
        let mut inv = [0u8; 3];
        for j in 0..3 {
            inv[self.0[j] as usize] = j as u8;
        }
        Perm(inv)
    }

    pub fn sign(self) -> i8 {
        let p = self.0;
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `(π·f)_i = f_{π⁻¹(i)}`: moves entry `j` to position `π(j)`.
    pub fn act(self, f: [u64; 3]) -> [u64; 3] {
        let mut out = [0; 3];
        for j in 0..3 {
            out[self.apply(j)] = f[j];
        }
        out
    }
}

/// Group element `D(exps)·P(perm)` where `D` is diagonal with entries
/// `ζ_s^{exps_i}` and `P(π) e_j = e_{π(j)}`.
///
/// Multiplication follows `D(e)P(π)·D(f)P(ρ) = D(e + π·f)P(π∘ρ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonomialElement {
    pub perm: Perm,
    pub exps: [u64; 3],
    pub s: u64,
}

/// 3×3 matrix over GF(3^m), row-major.
pub type Matrix3 = [[FieldElement; 3]; 3];

impl MonomialElement {
    pub fn new(perm: Perm, exps: [u64; 3], s: u64) -> Self {
        Self {
            perm,
            exps: exps.map(|e| e % s),
            s,
        }
    }

    pub fn identity(s: u64) -> Self {
        Self::new(Perm::IDENTITY, [0; 3], s)
    }

    pub fn diagonal(exps: [u64; 3], s: u64) -> Self {
        Self::new(Perm::IDENTITY, exps, s)
    }

    /// `S`: the permutation matrix with `S e_1 = e_2, S e_2 = e_3, S e_3 = e_1`.
    pub fn s_gen(s: u64) -> Self {
        Self::new(Perm::CYCLE, [0; 3], s)
    }

    /// `T = -P(1 3)`, the antidiagonal `-1` matrix. Needs `s` even.
    pub fn t_gen(s: u64) -> Result<Self> {
        if !s.is_multiple_of(2) {
            return Err(Error::RepresentationError(format!(
                "-1 is not a power of a primitive {s}-th root of unity"
            )));
        }
        Ok(Self::new(Perm::REVERSAL, [s / 2; 3], s))
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm == Perm::IDENTITY
    }

    pub fn is_identity(&self) -> bool {
        self.is_diagonal() && self.exps == [0; 3]
    }

    /// Product; fails when the two elements use different root orders.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.s != other.s {
            return Err(Error::RepresentationError(format!(
                "cannot multiply elements over ζ_{} and ζ_{}",
                self.s, other.s
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let moved = self.perm.act(other.exps);
        let s = self.s;
        Self {
            perm: self.perm.compose(other.perm),
            exps: [0, 1, 2].map(|i| (self.exps[i] + moved[i]) % s),
            s,
        }
    }

    pub fn inverse(&self) -> Self {
        let pinv = self.perm.inverse();
        let s = self.s;
        let neg = self.exps.map(|e| (s - e) % s);
        Self {
            perm: pinv,
            exps: pinv.act(neg),
            s,
        }
    }

    pub fn pow(&self, k: u64) -> Self {
        (0..k).fold(Self::identity(self.s), |acc, _| acc.mul_unchecked(self))
    }

    pub fn order(&self) -> u64 {
        let mut acc = *self;
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.mul_unchecked(self);
            k += 1;
        }
        k
    }

    /// The matrix image over `ctx`; `ctx` must host `ζ_s`.
    pub fn to_matrix(&self, ctx: &FieldCtx) -> Result<Matrix3> {
        let zeta = ctx.root_of_unity(self.s).map_err(|_| {
            Error::RepresentationError(format!(
                "field built for order {} does not host ζ_{}",
                ctx.hosted_order(),
                self.s
            ))
        })?;
        let mut m: Matrix3 = std::array::from_fn(|_| std::array::from_fn(|_| ctx.zero()));
        for j in 0..3 {
            let i = self.perm.apply(j);
            m[i][j] = ctx.pow(&zeta, self.exps[i] as u128);
        }
        Ok(m)
    }
}

impl fmt::Display for MonomialElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.perm.0;
        write!(
            f,
            "D({},{},{})P({}{}{})/ζ_{}",
            self.exps[0],
            self.exps[1],
            self.exps[2],
            p[0] + 1,
            p[1] + 1,
            p[2] + 1,
            self.s
        )
    }
}

pub fn mat_identity(ctx: &FieldCtx) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { ctx.one() } else { ctx.zero() }))
}

pub fn mat_mul(ctx: &FieldCtx, a: &Matrix3, b: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(ctx.zero(), |acc, k| {
                ctx.add(&acc, &ctx.mul(&a[i][k], &b[k][j]))
            })
        })
    })
}

pub fn mat_sub(ctx: &FieldCtx, a: &Matrix3, b: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| ctx.sub(&a[i][j], &b[i][j])))
}

pub fn mat_det(ctx: &FieldCtx, a: &Matrix3) -> FieldElement {
    let m = |x: &FieldElement, y: &FieldElement| ctx.mul(x, y);
    let minor = |r1: usize, c1: usize, r2: usize, c2: usize| {
        ctx.sub(&m(&a[r1][c1], &a[r2][c2]), &m(&a[r1][c2], &a[r2][c1]))
    };
    let t0 = m(&a[0][0], &minor(1, 1, 2, 2));
    let t1 = m(&a[0][1], &minor(1, 0, 2, 2));
    let t2 = m(&a[0][2], &minor(1, 0, 2, 1));
    ctx.add(&ctx.sub(&t0, &t1), &t2)
}

/// Rank by Gaussian elimination over the field.
pub fn mat_rank(ctx: &FieldCtx, a: &Matrix3) -> usize {
    let mut rows: Vec<Vec<FieldElement>> = a.iter().map(|r| r.to_vec()).collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(p) = (rank..3).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = ctx.inv(&rows[rank][col]).expect("nonzero pivot");
        for i in 0..3 {
            if i != rank && !rows[i][col].is_zero() {
                let f = ctx.mul(&rows[i][col], &inv);
                for c in 0..3 {
                    let t = ctx.mul(&f, &rows[rank][c]);
                    rows[i][c] = ctx.sub(&rows[i][c], &t);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_relations() {
        let s = 2;
        let sg = MonomialElement::s_gen(s);
        let t = MonomialElement::t_gen(s).unwrap();
        let id = MonomialElement::identity(s);
        assert_eq!(sg.pow(3), id);
        assert_eq!(t.mul(&t).unwrap(), id);
        let lhs = sg.inverse().mul(&t).unwrap().mul(&sg).unwrap();
        assert_eq!(lhs, sg.mul(&t).unwrap());
        assert!(MonomialElement::t_gen(7).is_err());
    }

    #[test]
    fn generator_matrices_have_expected_entries() {
        let ctx = FieldCtx::build_field_for_order(2).unwrap();
        let one = ctx.one();
        let zero = ctx.zero();
        let minus = ctx.from_int(-1);
        let sm = MonomialElement::s_gen(2).to_matrix(&ctx).unwrap();
        let expected_s = [
            [zero.clone(), zero.clone(), one.clone()],
            [one.clone(), zero.clone(), zero.clone()],
            [zero.clone(), one.clone(), zero.clone()],
        ];
        assert_eq!(sm, expected_s);
        let tm = MonomialElement::t_gen(2).unwrap().to_matrix(&ctx).unwrap();
        let expected_t = [
            [zero.clone(), zero.clone(), minus.clone()],
            [zero.clone(), minus.clone(), zero.clone()],
            [minus, zero.clone(), zero],
        ];
        assert_eq!(tm, expected_t);
    }

    #[test]
    fn mismatched_orders() {
        let a = MonomialElement::identity(4);
        let b = MonomialElement::identity(5);
        assert!(matches!(a.mul(&b), Err(Error::RepresentationError(_))));
        let ctx = FieldCtx::build_field_for_order(5).unwrap();
        assert!(a.to_matrix(&ctx).is_err());
    }

    #[test]
    fn inverse_is_two_sided() {
        let g = MonomialElement::new(Perm::CYCLE, [1, 3, 2], 7);
        let id = MonomialElement::identity(7);
        assert_eq!(g.mul(&g.inverse()).unwrap(), id);
        assert_eq!(g.inverse().mul(&g).unwrap(), id);
    }

    #[test]
    fn ranks_of_generators_minus_identity() {
        let ctx = FieldCtx::build_field_for_order(2).unwrap();
        let id = mat_identity(&ctx);
        for g in [
            MonomialElement::s_gen(2),
            MonomialElement::t_gen(2).unwrap(),
        ] {
            let m = g.to_matrix(&ctx).unwrap();
            assert_eq!(mat_rank(&ctx, &mat_sub(&ctx, &m, &id)), 2);
            assert_eq!(mat_det(&ctx, &m), ctx.one());
        }
        assert_eq!(mat_rank(&ctx, &mat_sub(&ctx, &id, &id)), 0);
    }
}
