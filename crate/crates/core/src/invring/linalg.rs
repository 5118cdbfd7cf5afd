//! Dense linear algebra over GF(3).

#[inline]
fn inv3(a: u8) -> u8 {
    // 1 and 2 are their own inverses
    a
}

/// Row-reduces in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<u8>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let s = inv3(rows[rank][col]);
        if s != 1 {
            for x in rows[rank].iter_mut() {
                *x = *x * s % 3;
            }
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col] == 0 {
                continue;
            }
            let f = 3 - row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = (*x + f * y) % 3;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<u8>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{c : Σ cⱼ·columns[j] = 0}`.
pub fn kernel(columns: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let k = columns.len();
    if k == 0 {
        return Vec::new();
    }
    let n = columns[0].len();
    let mut rows: Vec<Vec<u8>> = (0..n)
        .map(|i| columns.iter().map(|c| c[i] % 3).collect())
        .collect();
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..k).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u8; k];
            v[f] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = (3 - rows[r][f]) % 3;
            }
            v
        })
        .collect()
}
