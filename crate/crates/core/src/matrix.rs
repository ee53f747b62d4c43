//! Exact sparse matrices over cyclotomic fields and the linear algebra on top
//! of them: echelon forms, rank, kernels, linear solves and inverses.
//!
//! Storage is row-sparse: each row is a list of `(column, value)` pairs sorted
//! by column with no explicit zeros.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::CycScalar;

/// Sparse vector, sorted by index, without zeros.
pub type SVec = Vec<(usize, CycScalar)>;

/// `a + f * b` for sparse vectors.
pub fn svec_axpy(a: &SVec, f: &CycScalar, b: &SVec) -> SVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(f * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn svec_scale(a: &SVec, f: &CycScalar) -> SVec {
    if f.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(k, v)| (*k, f * v)).collect()
}

pub fn svec_from_dense(v: &[CycScalar]) -> SVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect()
}

pub fn svec_to_dense(v: &SVec, len: usize) -> Vec<CycScalar> {
    let mut out = vec![CycScalar::zero(); len];
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}

/// Sparse vector from unsorted entries, summing duplicates.
pub fn svec_collect(mut entries: Vec<(usize, CycScalar)>) -> SVec {
    entries.sort_by_key(|e| e.0);
    let mut out: SVec = Vec::with_capacity(entries.len());
    for (k, v) in entries {
        match out.last_mut() {
            Some((lk, lv)) if *lk == k => *lv = &*lv + &v,
            _ => out.push((k, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SVec>,
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            let cells: Vec<String> = svec_to_dense(r, self.cols).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CycMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, CycScalar::one())]).collect();
        CycMatrix { rows: n, cols: n, data }
    }

    pub fn scalar(n: usize, s: &CycScalar) -> Self {
        if s.is_zero() {
            return Self::zeros(n, n);
        }
        let data = (0..n).map(|i| vec![(i, s.clone())]).collect();
        CycMatrix { rows: n, cols: n, data }
    }

    pub fn from_dense(rows: Vec<Vec<CycScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        CycMatrix { rows: r, cols: c, data: rows.iter().map(|x| svec_from_dense(x)).collect() }
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        Self::from_dense(rows.iter().map(|r| r.iter().map(|&v| CycScalar::from_int(v)).collect()).collect())
    }

    pub fn from_rows(cols: usize, data: Vec<SVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.iter().all(|(c, _)| *c < cols)));
        CycMatrix { rows: data.len(), cols, data }
    }

    /// Builds a matrix from (row, col, value) triples; duplicates are summed.
    pub fn from_entries(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, CycScalar)>) -> Self {
        let mut buckets: Vec<Vec<(usize, CycScalar)>> = vec![Vec::new(); rows];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "entry ({i},{j}) out of range {rows}x{cols}");
            if !v.is_zero() {
                buckets[i].push((j, v));
            }
        }
        CycMatrix { rows, cols, data: buckets.into_iter().map(svec_collect).collect() }
    }

    /// Matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SVec]) -> Self {
        let entries = columns.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v.clone())));
        Self::from_entries(rows, columns.len(), entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SVec {
        &self.data[i]
    }

    pub fn row_data(&self) -> &[SVec] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<SVec> {
        self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> CycScalar {
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(p) => self.data[i][p].1.clone(),
            Err(_) => CycScalar::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycScalar) {
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(p) => {
                if v.is_zero() {
                    row.remove(p);
                } else {
                    row[p].1 = v;
                }
            }
            Err(p) => {
                if !v.is_zero() {
                    row.insert(p, (j, v));
                }
            }
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<CycScalar>> {
        self.data.iter().map(|r| svec_to_dense(r, self.cols)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.data.iter().enumerate().all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }

    pub fn transpose(&self) -> CycMatrix {
        let mut data: Vec<SVec> = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                data[*j].push((i, v.clone()));
            }
        }
        CycMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut acc: SVec = Vec::new();
                for (k, v) in r {
                    acc = svec_axpy(&acc, v, &other.data[*k]);
                }
                acc
            })
            .collect();
        CycMatrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn add(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum dimension mismatch");
        let one = CycScalar::one();
        let data = self.data.iter().zip(&other.data).map(|(a, b)| svec_axpy(a, &one, b)).collect();
        CycMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference dimension mismatch");
        let m1 = CycScalar::from_int(-1);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| svec_axpy(a, &m1, b)).collect();
        CycMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &CycScalar) -> CycMatrix {
        CycMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| svec_scale(r, s)).collect() }
    }

    pub fn neg(&self) -> CycMatrix {
        self.scale(&CycScalar::from_int(-1))
    }

    /// Flip `V_p (x) V_q -> V_q (x) V_p`.
    pub fn flip(p: usize, q: usize) -> CycMatrix {
        CycMatrix::from_entries(p * q, p * q, (0..p).flat_map(|i| (0..q).map(move |j| (j * p + i, i * q + j, CycScalar::one()))))
    }

    /// Kronecker product; row index `i*other.rows + k`, column `j*other.cols + l`.
    pub fn kron(&self, other: &CycMatrix) -> CycMatrix {
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for ra in &self.data {
            for rb in &other.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (j, a) in ra {
                    for (l, b) in rb {
                        row.push((j * other.cols + l, a * b));
                    }
                }
                data.push(row);
            }
        }
        CycMatrix { rows: self.rows * other.rows, cols: self.cols * other.cols, data }
    }

    pub fn mul_svec(&self, v: &SVec) -> SVec {
        // (A v)_i = sum_j A_ij v_j
        let mut out = Vec::new();
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = CycScalar::zero();
            let (mut a, mut b) = (0, 0);
            while a < r.len() && b < v.len() {
                if r[a].0 < v[b].0 {
                    a += 1;
                } else if v[b].0 < r[a].0 {
                    b += 1;
                } else {
                    acc = &acc + &(&r[a].1 * &v[b].1);
                    a += 1;
                    b += 1;
                }
            }
            if !acc.is_zero() {
                out.push((i, acc));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CycScalar]) -> Vec<CycScalar> {
        svec_to_dense(&self.mul_svec(&svec_from_dense(v)), self.rows)
    }

    pub fn column(&self, j: usize) -> SVec {
        let mut out = Vec::new();
        for (i, r) in self.data.iter().enumerate() {
            if let Ok(p) = r.binary_search_by_key(&j, |e| e.0) {
                out.push((i, r[p].1.clone()));
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> CycMatrix {
        CycMatrix { rows: idx.len(), cols: self.cols, data: idx.iter().map(|&i| self.data[i].clone()).collect() }
    }

    /// Keeps the listed columns, renumbered in the given order.
    pub fn select_cols(&self, idx: &[usize]) -> CycMatrix {
        let mut map = vec![usize::MAX; self.cols];
        for (new, &old) in idx.iter().enumerate() {
            map[old] = new;
        }
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut row: SVec = r.iter().filter(|(c, _)| map[*c] != usize::MAX).map(|(c, v)| (map[*c], v.clone())).collect();
                row.sort_by_key(|e| e.0);
                row
            })
            .collect();
        CycMatrix { rows: self.rows, cols: idx.len(), data }
    }

    pub fn vstack(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        CycMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(c, v)| (c + self.cols, v.clone())));
                r
            })
            .collect();
        CycMatrix { rows: self.rows, cols: self.cols + other.cols, data }
    }

    /// Reduced row echelon form. Returns the nonzero rows and the pivot
    /// columns (ascending); row `k` of the result has its leading 1 in
    /// column `pivots[k]`. Pivot choice is the first nonzero column; rows are
    /// consumed in input order.
    pub fn rref(&self) -> (CycMatrix, Vec<usize>) {
        let mut pivot_rows: std::collections::BTreeMap<usize, SVec> = Default::default();
        for r in &self.data {
            let mut row = r.clone();
            while let Some((c, v)) = row.first().cloned() {
                match pivot_rows.get(&c) {
                    Some(p) => row = svec_axpy(&row, &(-v), p),
                    None => {
                        let inv = v.inv().expect("nonzero leading entry");
                        let mut row = svec_scale(&row, &inv);
                        row[0].1 = CycScalar::one();
                        pivot_rows.insert(c, row);
                        break;
                    }
                }
            }
        }
        let pivots: Vec<usize> = pivot_rows.keys().copied().collect();
        let mut rows: Vec<SVec> = pivot_rows.into_values().collect();
        // back substitution, from the last pivot upwards
        for k in (0..rows.len()).rev() {
            let pc = pivots[k];
            let pr = rows[k].clone();
            for row in rows.iter_mut().take(k) {
                if let Ok(p) = row.binary_search_by_key(&pc, |e| e.0) {
                    let f = -row[p].1.clone();
                    *row = svec_axpy(row, &f, &pr);
                }
            }
        }
        (CycMatrix { rows: rows.len(), cols: self.cols, data: rows }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per row of the
    /// result, indexed by the free columns in ascending order.
    pub fn kernel(&self) -> CycMatrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v: Vec<(usize, CycScalar)> = vec![(f, CycScalar::one())];
            for (k, row) in r.data.iter().enumerate() {
                if let Ok(p) = row.binary_search_by_key(&f, |e| e.0) {
                    v.push((pivots[k], -row[p].1.clone()));
                }
            }
            out.push(svec_collect(v));
        }
        CycMatrix { rows: out.len(), cols: self.cols, data: out }
    }

    /// Solves `A X = B`; free variables are set to zero.
    pub fn solve_matrix(&self, b: &CycMatrix) -> Result<CycMatrix> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!("solve: {} rows vs {}", self.rows, b.rows)));
        }
        let n = self.cols;
        let (r, pivots) = self.hstack(b).rref();
        let mut x = CycMatrix::zeros(n, b.cols);
        for (k, &pc) in pivots.iter().enumerate() {
            if pc >= n {
                return Err(Error::NoSolution);
            }
            x.data[pc] = r.data[k].iter().filter(|(c, _)| *c >= n).map(|(c, v)| (c - n, v.clone())).collect();
        }
        Ok(x)
    }

    pub fn solve(&self, b: &[CycScalar]) -> Result<Vec<CycScalar>> {
        let bm = CycMatrix::from_columns(self.rows, &[svec_from_dense(b)]);
        let x = self.solve_matrix(&bm)?;
        Ok((0..self.cols).map(|i| x.get(i, 0)).collect())
    }

    pub fn inverse(&self) -> Result<CycMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("inverse of {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(CycMatrix::zeros(0, 0));
        }
        let (r, pivots) = self.hstack(&CycMatrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::SingularMatrix);
        }
        let data = r.data.into_iter().take(n).map(|row| row.into_iter().filter(|(c, _)| *c >= n).map(|(c, v)| (c - n, v)).collect()).collect();
        Ok(CycMatrix { rows: n, cols: n, data })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// A subspace of a coordinate space, kept as a basis in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    basis: CycMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[SVec]) -> Self {
        let m = CycMatrix::from_rows(ambient, vectors.to_vec());
        let (basis, pivots) = m.rref();
        Subspace { basis, pivots }
    }

    pub fn from_matrix_rows(m: &CycMatrix) -> Self {
        let (basis, pivots) = m.rref();
        Subspace { basis, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::span(ambient, &[])
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_matrix_rows(&CycMatrix::identity(ambient))
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &CycMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Remainder of `v` after clearing the pivot coordinates.
    pub fn reduce(&self, v: &SVec) -> SVec {
        let mut r = v.clone();
        for (k, &pc) in self.pivots.iter().enumerate() {
            if let Ok(p) = r.binary_search_by_key(&pc, |e| e.0) {
                let f = -r[p].1.clone();
                r = svec_axpy(&r, &f, self.basis.row(k));
            }
        }
        r
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &SVec) -> Option<SVec> {
        if !self.contains(v) {
            return None;
        }
        let mut out = Vec::new();
        for (k, &pc) in self.pivots.iter().enumerate() {
            if let Ok(p) = v.binary_search_by_key(&pc, |e| e.0) {
                out.push((k, v[p].1.clone()));
            }
        }
        Some(out)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.row_data().iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_matrix_rows(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x A = y B  <=>  [x, -y] [A; B] = 0
        let stacked = self.basis.vstack(&other.basis.neg());
        let k = stacked.transpose().kernel();
        let a = self.dim();
        let vecs: Vec<SVec> = k
            .row_data()
            .iter()
            .map(|kv| {
                let coeffs: SVec = kv.iter().filter(|(i, _)| *i < a).cloned().collect();
                let m = CycMatrix::from_rows(a, vec![coeffs]);
                m.mul(&self.basis).row(0).clone()
            })
            .collect();
        Subspace::span(self.ambient(), &vecs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> CycMatrix {
        CycMatrix::from_ints(rows)
    }

    #[test]
    fn rref_and_rank() {
        let a = m(&[vec![0, 2, 4], vec![1, 1, 1], vec![1, 2, 3]]);
        let (r, piv) = a.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r, m(&[vec![1, 0, -1], vec![0, 1, 2]]));
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k, m(&[vec![1, -2, 1]]));
        assert!(a.mul(&k.transpose()).is_zero());
    }

    #[test]
    fn solve_and_invert() {
        let a = m(&[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let x = a.solve(&[CycScalar::from_int(3), CycScalar::from_int(2)]).unwrap();
        assert_eq!(x, vec![CycScalar::from_int(1), CycScalar::from_int(1)]);
        let s = m(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.inverse(), Err(Error::SingularMatrix));
        assert_eq!(s.solve(&[CycScalar::from_int(1), CycScalar::from_int(0)]), Err(Error::NoSolution));
    }

    #[test]
    fn cyclotomic_inverse() {
        let z = CycScalar::root_of_unity(3, 1);
        let a = CycMatrix::from_dense(vec![vec![z.clone(), CycScalar::one()], vec![CycScalar::one(), z.clone()]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
    }

    #[test]
    fn kron_and_transpose() {
        let a = m(&[vec![1, 2], vec![3, 4]]);
        let i = CycMatrix::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.get(2, 0), CycScalar::from_int(3));
        assert_eq!(k.get(3, 1), CycScalar::from_int(3));
        assert_eq!(k.get(1, 3), CycScalar::from_int(2));
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn subspace_ops() {
        let one = CycScalar::one();
        let e = |i: usize| vec![(i, one.clone())];
        let u = Subspace::span(3, &[e(0), e(1)]);
        let v = Subspace::span(3, &[e(1), e(2)]);
        assert_eq!(u.intersection(&v), Subspace::span(3, &[e(1)]));
        assert_eq!(u.sum(&v).dim(), 3);
        assert!(!u.contains(&e(2)));
    }
}
