//! Smith normal form by unimodular elimination.
//!
//! The engine works on sparse rows. Pivots are chosen with the smallest
//! Euclidean size, ties broken by the lowest `(row, col)`. Row and column
//! swaps are never performed on the working matrix; the pivot positions are
//! recorded and the permutation is folded into the transforms at the end.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::matrix::{sv_axpy, sv_get, sv_lincomb, sv_scale, IntegerMatrix, SparseMatrix, SparseVec};
use crate::ring::Coefficient;

/// Which transforms to accumulate alongside the elimination.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub left: bool,
    pub left_inv: bool,
    pub right: bool,
    pub right_inv: bool,
}

impl Track {
    pub const NONE: Track = Track { left: false, left_inv: false, right: false, right_inv: false };
    pub const LEFT_RIGHT: Track = Track { left: true, left_inv: false, right: true, right_inv: false };
}

/// Result of the elimination: `U * M * V = D` with `D[t][t] = diagonal[t]`.
///
/// `left` holds the rows of `U`, `left_inv` the columns of `U^-1`, `right` the
/// columns of `V` and `right_inv` the rows of `V^-1`, all in final order.
#[derive(Clone, Debug)]
pub(crate) struct Reduction<R> {
    pub diagonal: Vec<R>,
    pub left: Option<Vec<SparseVec<R>>>,
    pub left_inv: Option<Vec<SparseVec<R>>>,
    pub right: Option<Vec<SparseVec<R>>>,
    pub right_inv: Option<Vec<SparseVec<R>>>,
}

impl<R> Reduction<R> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

fn unit_vectors<R: Coefficient>(n: usize) -> Vec<SparseVec<R>> {
    (0..n).map(|i| vec![(i, R::one())]).collect()
}

struct Eliminator<R> {
    m: Vec<SparseVec<R>>,
    u: Option<Vec<SparseVec<R>>>,
    u_inv: Option<Vec<SparseVec<R>>>,
    v: Option<Vec<SparseVec<R>>>,
    v_inv: Option<Vec<SparseVec<R>>>,
}

impl<R: Coefficient> Eliminator<R> {
    /// `row_i += c * row_r`, i.e. `M <- E M` with `E = I + c e_i e_r^T`.
    fn row_axpy(&mut self, i: usize, r: usize, c: &R, touch_matrix: bool) {
        if touch_matrix {
            let new = sv_axpy(&self.m[i], c, &self.m[r]);
            self.m[i] = new;
        }
        if let Some(u) = &mut self.u {
            let new = sv_axpy(&u[i], c, &u[r]);
            u[i] = new;
        }
        if let Some(ui) = &mut self.u_inv {
            let new = sv_axpy(&ui[r], &c.neg(), &ui[i]);
            ui[r] = new;
        }
    }

    /// Tracks `col_j += c * col_p` on `V` and `V^-1`; the working matrix is
    /// updated by the caller.
    fn col_axpy_track(&mut self, j: usize, p: usize, c: &R) {
        if let Some(v) = &mut self.v {
            let new = sv_axpy(&v[j], c, &v[p]);
            v[j] = new;
        }
        if let Some(vi) = &mut self.v_inv {
            let new = sv_axpy(&vi[p], &c.neg(), &vi[j]);
            vi[p] = new;
        }
    }

    fn negate_row(&mut self, i: usize) {
        let minus = R::one().neg();
        if let Some(u) = &mut self.u {
            u[i] = sv_scale(&u[i], &minus);
        }
        if let Some(ui) = &mut self.u_inv {
            ui[i] = sv_scale(&ui[i], &minus);
        }
    }

    /// Column combination `(col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)`
    /// with `ad - bc = 1`, tracked on `V` and `V^-1` only.
    fn col_comb_track(&mut self, i: usize, j: usize, [a, b, c, d]: [&R; 4]) {
        if let Some(v) = &mut self.v {
            let ni = sv_lincomb(a, &v[i], b, &v[j]);
            let nj = sv_lincomb(c, &v[i], d, &v[j]);
            v[i] = ni;
            v[j] = nj;
        }
        if let Some(vi) = &mut self.v_inv {
            let ni = sv_lincomb(d, &vi[i], &c.neg(), &vi[j]);
            let nj = sv_lincomb(&b.neg(), &vi[i], a, &vi[j]);
            vi[i] = ni;
            vi[j] = nj;
        }
    }

    /// Smallest entry in row-major order; stops early on a unit.
    fn find_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &R)> = None;
        for (i, row) in self.m.iter().enumerate() {
            for (j, v) in row {
                if v.is_unit() {
                    return Some((i, *j));
                }
                if best.is_none_or(|(_, _, b)| v.size_cmp(b).is_lt()) {
                    best = Some((i, *j, v));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) -> Vec<(usize, usize, R)> {
        let nrows = self.m.len();
        let mut pivots = Vec::new();
        while let Some((mut pr, mut pc)) = self.find_pivot() {
            loop {
                // clear the pivot column with row operations
                let piv = sv_get(&self.m[pr], pc).cloned().expect("pivot present");
                let mut smaller: Option<(usize, R)> = None;
                for i in 0..nrows {
                    if i == pr || self.m[i].is_empty() {
                        continue;
                    }
                    let Some(a) = sv_get(&self.m[i], pc).cloned() else { continue };
                    let q = a.quotient(&piv);
                    if !q.is_zero() {
                        self.row_axpy(i, pr, &q.neg(), true);
                    }
                    if let Some(rem) = sv_get(&self.m[i], pc) {
                        if smaller.as_ref().is_none_or(|(_, s)| rem.size_cmp(s).is_lt()) {
                            smaller = Some((i, rem.clone()));
                        }
                    }
                }
                if let Some((i, _)) = smaller {
                    pr = i;
                    continue;
                }
                // the pivot column now holds only the pivot, so column
                // operations touch the pivot row alone
                let entries: Vec<(usize, R)> =
                    self.m[pr].iter().filter(|(j, _)| *j != pc).cloned().collect();
                let mut row = self.m[pr].clone();
                for (j, a) in &entries {
                    let q = a.quotient(&piv);
                    if q.is_zero() {
                        continue;
                    }
                    let c = q.neg();
                    row = sv_axpy(&row, &c.mul(&piv), &vec![(*j, R::one())]);
                    self.col_axpy_track(*j, pc, &c);
                }
                self.m[pr] = row;
                let mut next: Option<(usize, &R)> = None;
                for (j, v) in &self.m[pr] {
                    if *j != pc && next.is_none_or(|(_, b)| v.size_cmp(b).is_lt()) {
                        next = Some((*j, v));
                    }
                }
                match next {
                    Some((j, _)) => pc = j,
                    None => break,
                }
            }
            let piv = sv_get(&self.m[pr], pc).cloned().expect("pivot present");
            self.m[pr].clear();
            pivots.push((pr, pc, piv));
        }
        pivots
    }

    /// Makes the diagonal non-negative and enforces `d_t | d_s` for `t < s`.
    fn normalize(&mut self, pivots: &mut [(usize, usize, R)]) {
        for (r, _, d) in pivots.iter_mut() {
            if d.needs_sign_flip() {
                self.negate_row(*r);
                *d = d.neg();
            }
        }
        for t in 0..pivots.len() {
            for s in t + 1..pivots.len() {
                let (rt, ct, dt) = pivots[t].clone();
                let (rs, cs, ds) = pivots[s].clone();
                if dt.divides(&ds) {
                    continue;
                }
                // [[dt, 0], [0, ds]] -> [[g, 0], [0, lcm]]
                let (g, x, y) = R::ext_gcd(&dt, &ds);
                self.row_axpy(rt, rs, &R::one(), false);
                let dsg = ds.exact_div(&g);
                let dtg = dt.exact_div(&g);
                self.col_comb_track(ct, cs, [&x, &y, &dsg.neg(), &dtg]);
                let k = y.mul(&dsg);
                self.row_axpy(rs, rt, &k.neg(), false);
                pivots[t].2 = g;
                pivots[s].2 = dtg.mul(&ds);
            }
        }
    }
}

/// Runs the elimination, accumulating the requested transforms.
pub(crate) fn reduce<R: Coefficient>(m: &SparseMatrix<R>, track: Track) -> Reduction<R> {
    let (nr, nc) = (m.rows(), m.cols());
    let mut e = Eliminator {
        m: m.clone().into_rows(),
        u: track.left.then(|| unit_vectors(nr)),
        u_inv: track.left_inv.then(|| unit_vectors(nr)),
        v: track.right.then(|| unit_vectors(nc)),
        v_inv: track.right_inv.then(|| unit_vectors(nc)),
    };
    let mut pivots = e.run();
    e.normalize(&mut pivots);

    let order = |n: usize, used: Vec<usize>| -> Vec<usize> {
        let mut seen = vec![false; n];
        for &i in &used {
            seen[i] = true;
        }
        used.into_iter().chain((0..n).filter(|i| !seen[*i])).collect()
    };
    let row_order = order(nr, pivots.iter().map(|p| p.0).collect());
    let col_order = order(nc, pivots.iter().map(|p| p.1).collect());
    let permute = |vecs: Option<Vec<SparseVec<R>>>, ord: &[usize]| {
        vecs.map(|mut vs| ord.iter().map(|&i| std::mem::take(&mut vs[i])).collect::<Vec<_>>())
    };
    Reduction {
        diagonal: pivots.into_iter().map(|p| p.2).collect(),
        left: permute(e.u, &row_order),
        left_inv: permute(e.u_inv, &row_order),
        right: permute(e.v, &col_order),
        right_inv: permute(e.v_inv, &col_order),
    }
}

/// Certificate `U * M * V = D` with `U`, `V` unimodular and the diagonal of
/// `D` a non-negative divisibility chain followed by zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SnfCertificate {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SnfCertificate {
    /// Non-zero diagonal entries of `D`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Checks every property of the certificate against `m` exactly,
    /// including `|det U| = |det V| = 1`.
    pub fn verify(&self, m: &IntegerMatrix) -> bool {
        if self.u.mul(m).mul(&self.v) != self.d {
            return false;
        }
        let n = self.d.rows().min(self.d.cols());
        for i in 0..self.d.rows() {
            for (j, _) in self.d.row(i) {
                if *j != i {
                    return false;
                }
            }
        }
        let diag: Vec<BigInt> = (0..n).map(|i| self.d.get(i, i)).collect();
        if diag.iter().any(|x| x.is_negative()) {
            return false;
        }
        let r = diag.iter().take_while(|x| !x.is_zero()).count();
        if diag[r..].iter().any(|x| !x.is_zero()) {
            return false;
        }
        if diag[..r].windows(2).any(|w| !w[0].divides(&w[1])) {
            return false;
        }
        determinant(&self.u).magnitude() == &1u32.into() && determinant(&self.v).magnitude() == &1u32.into()
    }
}

/// Smith normal form with both transforms.
pub fn smith_normal_form(m: &IntegerMatrix) -> SnfCertificate {
    let red = reduce(m, Track::LEFT_RIGHT);
    let d = IntegerMatrix::from_triplets(
        m.rows(),
        m.cols(),
        red.diagonal.iter().enumerate().map(|(i, x)| (i, i, x.clone())),
    );
    let u = IntegerMatrix::from_sparse_rows(m.rows(), m.rows(), red.left.expect("tracked"));
    let v_cols = red.right.expect("tracked");
    let v = IntegerMatrix::from_sparse_rows(m.cols(), m.cols(), v_cols).transpose();
    SnfCertificate { d, u, v }
}

/// Rank over the coefficient ring's fraction field.
pub(crate) fn rank<R: Coefficient>(m: &SparseMatrix<R>) -> usize {
    reduce(m, Track::NONE).rank()
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntegerMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.to_dense();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
