//! Exact rank by fraction-free elimination.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use super::lie::{clasped_subspace, project, IrrepCache};
use super::InvariantFunctional;
use crate::clasp::ClaspSequence;
use crate::error::{Error, Result};

/// Rank of sparse integer rows over the rationals, by Bareiss elimination.
pub fn rank_of_rows<K: Ord + Clone, T: Copy + Into<BigInt>>(rows: &[BTreeMap<K, T>]) -> usize {
    let cols: BTreeSet<&K> = rows.iter().flat_map(|r| r.keys()).collect();
    let col_of: BTreeMap<&K, usize> = cols.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); cols.len()];
            for (k, &c) in r {
                row[col_of[k]] = c.into();
            }
            row
        })
        .collect();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols.len() {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            for j in c + 1..cols.len() {
                let v = (&m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank of web functionals of one common type.
pub fn rank_of(fs: &[InvariantFunctional]) -> Result<usize> {
    if let Some(f) = fs.first() {
        if fs.iter().any(|g| g.ty != f.ty) {
            return Err(Error::ClaspMismatch("functionals of different types".into()));
        }
    }
    let rows: Vec<_> = fs.iter().map(|f| f.coeffs.clone()).collect();
    Ok(rank_of_rows(&rows))
}

/// Rank of the clasped projections `π_C(F)`.
pub fn clasped_rank(fs: &[InvariantFunctional], c: &ClaspSequence, cache: &mut IrrepCache) -> Result<usize> {
    let Some(f) = fs.first() else { return Ok(0) };
    let s = clasped_subspace(c, f.r, cache)?;
    let rows = fs.iter().map(|f| project(f, &s)).collect::<Result<Vec<_>>>()?;
    Ok(rank_of_rows(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let row = |v: &[i64]| -> BTreeMap<usize, i64> { v.iter().copied().enumerate().filter(|x| x.1 != 0).collect() };
        assert_eq!(rank_of_rows(&[row(&[1, 2]), row(&[2, 4])]), 1);
        assert_eq!(rank_of_rows(&[row(&[1, 2, 3]), row(&[4, 5, 6]), row(&[7, 8, 9])]), 2);
        assert_eq!(rank_of_rows(&[row(&[0, 0, 1]), row(&[0, 1, 0]), row(&[3, 0, 0])]), 3);
        assert_eq!(rank_of_rows::<usize, i64>(&[]), 0);
    }
}
