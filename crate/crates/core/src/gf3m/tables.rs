use super::FieldCtx;
use crate::error::{Error, Result};

/// Full addition and multiplication tables for a small field, elements
/// addressed by their base-3 index. Used by the exhaustive point scans.
#[derive(Clone, Debug)]
pub struct FieldTables {
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

impl FieldTables {
    pub const MAX_SIZE: usize = 729;

    /// Tables for GF(`q`), `q` a power of 3 not exceeding [`Self::MAX_SIZE`].
    pub fn for_size(q: usize) -> Result<Self> {
        let mut m = 0usize;
        let mut t = 1usize;
        while t < q {
            t *= 3;
            m += 1;
        }
        if t != q || m == 0 || q > Self::MAX_SIZE {
            return Err(Error::InvalidSpec(format!(
                "field size {q} is not a power of 3 in [3, {}]",
                Self::MAX_SIZE
            )));
        }
        Ok(Self::from_ctx(&FieldCtx::of_degree(m)?))
    }

    pub fn from_ctx(ctx: &FieldCtx) -> Self {
        let q = ctx.size() as usize;
        assert!(q <= Self::MAX_SIZE);
        let elems: Vec<_> = ctx.elements().collect();
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                add[i * q + j] = ctx.add(a, b).index() as u16;
                mul[i * q + j] = ctx.mul(a, b).index() as u16;
            }
        }
        let neg = elems.iter().map(|a| ctx.neg(a).index() as u16).collect();
        Self { q, add, mul, neg }
    }

    pub fn size(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: u16, e: u32) -> u16 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// Inverse by table scan.
    pub fn inv(&self, a: u16) -> Option<u16> {
        (1..self.q as u16).find(|&b| self.mul(a, b) == 1)
    }

    /// Rank of a small row-major matrix over this field.
    pub fn rank(&self, rows: &mut [Vec<u16>]) -> usize {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = self.inv(rows[rank][col]).expect("nonzero pivot");
            for c in 0..ncols {
                rows[rank][c] = self.mul(rows[rank][c], inv);
            }
            for i in 0..rows.len() {
                if i != rank && rows[i][col] != 0 {
                    let f = rows[i][col];
                    for c in 0..ncols {
                        let t = self.mul(f, rows[rank][c]);
                        rows[i][c] = self.sub(rows[i][c], t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_match_context() {
        for q in [3usize, 9, 27] {
            let t = FieldTables::for_size(q).unwrap();
            for a in 0..q as u16 {
                assert_eq!(t.add(a, 0), a);
                assert_eq!(t.mul(a, 1), a);
                assert_eq!(t.add(a, t.neg(a)), 0);
                if a != 0 {
                    assert_eq!(t.mul(a, t.inv(a).unwrap()), 1);
                }
                // Frobenius fixes exactly GF(3)
                assert_eq!(t.pow(a, 3) == a, a < 3);
            }
        }
        assert!(FieldTables::for_size(10).is_err());
    }
}
