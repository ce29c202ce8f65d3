//! Row-sparse exact matrices.

use num_bigint::BigInt;

use crate::ring::{Coefficient, Ring};

/// Sorted `(index, value)` pairs with no explicit zeros.
pub type SparseVec<R> = Vec<(usize, R)>;

pub(crate) fn sv_get<R: Coefficient>(v: &SparseVec<R>, index: usize) -> Option<&R> {
    v.binary_search_by_key(&index, |e| e.0).ok().map(|p| &v[p].1)
}

/// `y + c * x`.
pub(crate) fn sv_axpy<R: Coefficient>(y: &SparseVec<R>, c: &R, x: &SparseVec<R>) -> SparseVec<R> {
    if c.is_zero() || x.is_empty() {
        return y.clone();
    }
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j >= x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i >= y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            let v = c.mul(&x[j].1);
            if !v.is_zero() {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let v = y[i].1.add(&c.mul(&x[j].1));
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `a * x + b * y`, used for 2x2 unimodular combinations.
pub(crate) fn sv_lincomb<R: Coefficient>(
    a: &R,
    x: &SparseVec<R>,
    b: &R,
    y: &SparseVec<R>,
) -> SparseVec<R> {
    let ax: SparseVec<R> = if a.is_zero() {
        Vec::new()
    } else {
        x.iter().map(|(i, v)| (*i, a.mul(v))).filter(|e| !e.1.is_zero()).collect()
    };
    sv_axpy(&ax, b, y)
}

pub(crate) fn sv_scale<R: Coefficient>(x: &SparseVec<R>, c: &R) -> SparseVec<R> {
    x.iter().map(|(i, v)| (*i, c.mul(v))).filter(|e| !e.1.is_zero()).collect()
}

pub(crate) fn sv_dot_dense<R: Coefficient>(x: &SparseVec<R>, dense: &[R]) -> R {
    let mut acc = R::zero();
    for (i, v) in x {
        if !dense[*i].is_zero() {
            acc = acc.add(&v.mul(&dense[*i]));
        }
    }
    acc
}

pub(crate) fn sv_from_dense<R: Coefficient>(dense: &[R]) -> SparseVec<R> {
    dense.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
}

pub(crate) fn sv_to_dense<R: Coefficient>(x: &SparseVec<R>, len: usize) -> Vec<R> {
    let mut out = vec![R::zero(); len];
    for (i, v) in x {
        out[*i] = v.clone();
    }
    out
}

/// An exact matrix stored as sorted sparse rows.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<R>>,
}

/// Matrix over the integers. Entries are arbitrary precision; `Z2` data is
/// stored as `0`/`1`.
pub type IntegerMatrix = SparseMatrix<BigInt>;

impl<R: Coefficient> SparseMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, data: (0..n).map(|i| vec![(i, R::one())]).collect() }
    }

    /// Builds from rows that are already sorted and zero-free.
    pub(crate) fn from_sparse_rows(rows: usize, cols: usize, data: Vec<SparseVec<R>>) -> Self {
        debug_assert_eq!(data.len(), rows);
        debug_assert!(data.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)
            && r.iter().all(|e| e.0 < cols && !e.1.is_zero())));
        Self { rows, cols, data }
    }

    /// Builds from `(row, col, value)` triplets; repeated positions add up.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, R)>) -> Self {
        let mut buckets: Vec<Vec<(usize, R)>> = vec![Vec::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) outside {rows}x{cols}");
            buckets[r].push((c, v));
        }
        let data = buckets
            .into_iter()
            .map(|mut b| {
                b.sort_by_key(|e| e.0);
                let mut out: SparseVec<R> = Vec::with_capacity(b.len());
                for (c, v) in b {
                    match out.last_mut() {
                        Some(last) if last.0 == c => last.1 = last.1.add(&v),
                        _ => out.push((c, v)),
                    }
                }
                out.retain(|e| !e.1.is_zero());
                out
            })
            .collect();
        Self { rows, cols, data }
    }

    pub fn from_dense(dense: &[Vec<R>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        assert!(dense.iter().all(|r| r.len() == cols), "ragged dense matrix");
        Self { rows, cols, data: dense.iter().map(|r| sv_from_dense(r)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, i: usize) -> &SparseVec<R> {
        &self.data[i]
    }

    pub(crate) fn into_rows(self) -> Vec<SparseVec<R>> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> R {
        sv_get(&self.data[i], j).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn to_dense(&self) -> Vec<Vec<R>> {
        self.data.iter().map(|r| sv_to_dense(r, self.cols)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut buckets: Vec<SparseVec<R>> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                buckets[*j].push((i, v.clone()));
            }
        }
        Self { rows: self.cols, cols: self.rows, data: buckets }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: SparseVec<R> = Vec::new();
                for (k, v) in row {
                    acc = sv_axpy(&acc, v, &other.data[*k]);
                }
                acc
            })
            .collect();
        Self { rows: self.rows, cols: other.cols, data }
    }

    pub fn mul_vec(&self, x: &[R]) -> Vec<R> {
        assert_eq!(self.cols, x.len(), "dimension mismatch in matrix-vector product");
        self.data.iter().map(|row| sv_dot_dense(row, x)).collect()
    }

    /// Column `j` as a dense vector.
    pub fn column(&self, j: usize) -> Vec<R> {
        self.data.iter().map(|r| sv_get(r, j).cloned().unwrap_or_else(R::zero)).collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(j, v)| (j + self.cols, v.clone())));
                r
            })
            .collect();
        Self { rows: self.rows, cols: self.cols + other.cols, data }
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> SparseMatrix<S> {
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, f(v))).filter(|e| !e.1.is_zero()).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl IntegerMatrix {
    /// Reduces entries into the given ring.
    pub fn reduce(&self, ring: Ring) -> IntegerMatrix {
        match ring {
            Ring::Integers => self.clone(),
            Ring::Mod2 => self.map(|v| ring.reduce(v.clone())),
        }
    }

    pub fn from_i64(dense: &[Vec<i64>]) -> Self {
        let big: Vec<Vec<BigInt>> =
            dense.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        Self::from_dense(&big)
    }

    pub(crate) fn to_coeff<R: Coefficient>(&self) -> SparseMatrix<R> {
        self.map(R::from_bigint)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(d: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_i64(d)
    }

    #[test]
    fn product_and_transpose() {
        let a = m(&[vec![1, 2, 0], vec![0, -1, 3]]);
        let b = m(&[vec![1, 0], vec![0, 1], vec![2, 2]]);
        assert_eq!(a.mul(&b), m(&[vec![1, 2], vec![6, 5]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().get(2, 1), BigInt::from(3));
    }

    #[test]
    fn axpy_cancels_to_empty() {
        let x: SparseVec<BigInt> = vec![(1, BigInt::from(2)), (4, BigInt::from(-1))];
        let y = sv_axpy(&x, &BigInt::from(-1), &x);
        assert!(y.is_empty());
    }

    #[test]
    fn triplets_accumulate() {
        let t = IntegerMatrix::from_triplets(
            2,
            2,
            vec![(0, 1, BigInt::from(1)), (0, 1, BigInt::from(-1)), (1, 0, BigInt::from(5))],
        );
        assert_eq!(t.nnz(), 1);
        assert_eq!(t.get(1, 0), BigInt::from(5));
    }

    #[test]
    fn mod2_reduction() {
        let a = m(&[vec![-1, 2, 3]]);
        assert_eq!(a.reduce(Ring::Mod2), m(&[vec![1, 0, 1]]));
    }
}
