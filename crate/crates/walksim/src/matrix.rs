//! Sparse integer matrices backing commuting-matrix computation.
//!
//! Counts are unsigned 64-bit with checked arithmetic: an overflow is an
//! error naming the offending entry, never a silent wrap or saturation.

use crate::error::{Error, Result};

/// CSR matrix of u64 walk counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<u64>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            row_ptr: vec![0; rows + 1],
            col_idx: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: vec![1; n],
        }
    }

    /// Builds from (row, col, value) triplets; duplicate coordinates are
    /// summed, zero values dropped.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(usize, usize, u64)>) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, u64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            debug_assert!(r < rows && c < cols);
            if v == 0 {
                continue;
            }
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => {
                    last.2 = last.2.checked_add(v).expect("triplet merge overflow");
                }
                _ => merged.push((r, c, v)),
            }
        }
        let mut row_ptr = vec![0usize; rows + 1];
        for &(r, _, _) in &merged {
            row_ptr[r + 1] += 1;
        }
        for r in 0..rows {
            row_ptr[r + 1] += row_ptr[r];
        }
        SparseMatrix {
            rows,
            cols,
            row_ptr,
            col_idx: merged.iter().map(|t| t.1).collect(),
            values: merged.iter().map(|t| t.2).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        let lo = self.row_ptr[r];
        let hi = self.row_ptr[r + 1];
        match self.col_idx[lo..hi].binary_search(&c) {
            Ok(i) => self.values[lo + i],
            Err(_) => 0,
        }
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        let lo = self.row_ptr[r];
        let hi = self.row_ptr[r + 1];
        self.col_idx[lo..hi]
            .iter()
            .copied()
            .zip(self.values[lo..hi].iter().copied())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (0..self.rows).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let triplets = self.entries().map(|(r, c, v)| (c, r, v)).collect();
        SparseMatrix::from_triplets(self.cols, self.rows, triplets)
    }

    pub fn diagonal(&self) -> Vec<u64> {
        let n = self.rows.min(self.cols);
        (0..n).map(|i| self.get(i, i)).collect()
    }

    /// Returns a copy with the diagonal zeroed (the `M − M^d` correction).
    pub fn without_diagonal(&self) -> SparseMatrix {
        let triplets = self
            .entries()
            .filter(|&(r, c, _)| r != c)
            .collect();
        SparseMatrix::from_triplets(self.rows, self.cols, triplets)
    }

    /// Collapses every nonzero count to 1.
    pub fn booleanized(&self) -> SparseMatrix {
        let triplets = self.entries().map(|(r, c, _)| (r, c, 1)).collect();
        SparseMatrix::from_triplets(self.rows, self.cols, triplets)
    }

    /// Checked sparse product; `ctx` names the meta-walk in overflow errors.
    pub fn multiply(&self, other: &SparseMatrix, ctx: &str) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut triplets = Vec::new();
        let mut acc: Vec<u128> = vec![0; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        for r in 0..self.rows {
            for (k, a) in self.row(r) {
                if a == 0 {
                    continue;
                }
                for (c, b) in other.row(k) {
                    let prod = a as u128 * b as u128;
                    if acc[c] == 0 && prod != 0 {
                        touched.push(c);
                    }
                    acc[c] += prod;
                }
            }
            for &c in &touched {
                let v = acc[c];
                acc[c] = 0;
                if v > u64::MAX as u128 {
                    return Err(Error::CountOverflow {
                        metawalk: ctx.to_string(),
                        row: r,
                        col: c,
                    });
                }
                if v > 0 {
                    triplets.push((r, c, v as u64));
                }
            }
            touched.clear();
        }
        Ok(SparseMatrix::from_triplets(self.rows, other.cols, triplets))
    }

    /// Left vector-matrix product of one row indicator: returns row `r` of
    /// `self * other` without forming the full product.
    pub fn row_times(&self, r: usize, other: &SparseMatrix, ctx: &str) -> Result<Vec<u64>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut acc = vec![0u128; other.cols];
        for (k, a) in self.row(r) {
            for (c, b) in other.row(k) {
                acc[c] += a as u128 * b as u128;
            }
        }
        acc.into_iter()
            .enumerate()
            .map(|(c, v)| {
                if v > u64::MAX as u128 {
                    Err(Error::CountOverflow {
                        metawalk: ctx.to_string(),
                        row: r,
                        col: c,
                    })
                } else {
                    Ok(v as u64)
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_dense() {
        let a = SparseMatrix::from_triplets(2, 3, vec![(0, 0, 1), (0, 2, 2), (1, 1, 3)]);
        let b = SparseMatrix::from_triplets(3, 2, vec![(0, 1, 4), (1, 0, 5), (2, 1, 6)]);
        let c = a.multiply(&b, "t").unwrap();
        assert_eq!(c.get(0, 1), 4 + 12);
        assert_eq!(c.get(1, 0), 15);
        assert_eq!(c.get(0, 0), 0);
        assert_eq!(c.nnz(), 2);
    }

    #[test]
    fn duplicate_triplets_sum() {
        let a = SparseMatrix::from_triplets(1, 1, vec![(0, 0, 1), (0, 0, 2)]);
        assert_eq!(a.get(0, 0), 3);
    }

    #[test]
    fn overflow_is_reported() {
        let a = SparseMatrix::from_triplets(1, 1, vec![(0, 0, u64::MAX)]);
        let b = SparseMatrix::from_triplets(1, 1, vec![(0, 0, 2)]);
        match a.multiply(&b, "mw") {
            Err(Error::CountOverflow { row: 0, col: 0, .. }) => {}
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn transpose_round_trip() {
        let a = SparseMatrix::from_triplets(2, 3, vec![(0, 2, 7), (1, 0, 1)]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().get(2, 0), 7);
    }

    #[test]
    fn row_times_equals_full_product_row() {
        let a = SparseMatrix::from_triplets(2, 2, vec![(0, 0, 2), (0, 1, 1), (1, 1, 5)]);
        let b = SparseMatrix::from_triplets(2, 2, vec![(0, 1, 3), (1, 0, 4), (1, 1, 1)]);
        let full = a.multiply(&b, "t").unwrap();
        let row0 = a.row_times(0, &b, "t").unwrap();
        assert_eq!(row0, vec![full.get(0, 0), full.get(0, 1)]);
    }
}
