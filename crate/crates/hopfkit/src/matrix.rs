//! Dense exact matrices and tensor-index bookkeeping.
//!
//! All linear maps in the crate are matrices acting on column vectors, with
//! tensor spaces flattened row-major (leftmost tensor factor most
//! significant). Pivoting is deterministic (leftmost nonzero column, topmost
//! row) so that every derived basis is reproducible.

use crate::field::{Field, Scalar};
use crate::Error;

/// Row-major flattening for `V_1 (x) ... (x) V_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorIndex {
    factors: Vec<usize>,
}

impl TensorIndex {
    pub fn new(factors: Vec<usize>) -> Self {
        TensorIndex { factors }
    }

    pub fn total(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn flatten(&self, multi: &[usize]) -> usize {
        assert_eq!(multi.len(), self.factors.len());
        let mut idx = 0;
        for (i, &m) in multi.iter().enumerate() {
            debug_assert!(m < self.factors[i]);
            idx = idx * self.factors[i] + m;
        }
        idx
    }

    pub fn unflatten(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            out[i] = idx % self.factors[i];
            idx /= self.factors[i];
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
        }
        Matrix {
            rows: nrows,
            cols: ncols,
            field,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Columns are the images of the standard basis vectors.
    pub fn from_cols(field: Field, dim: usize, cols: Vec<Vec<Scalar>>) -> Self {
        let ncols = cols.len();
        let mut m = Matrix::zeros(field, dim, ncols);
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), dim);
            for (r, v) in col.iter().enumerate() {
                *m.at_mut(r, c) = v.clone();
            }
        }
        m
    }

    /// Integer convenience constructor, row-major.
    pub fn from_i64(field: Field, rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix::from_fn(field, rows, cols, |r, c| field.from_i64(data[r * cols + c]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.entries[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn set_column(&mut self, c: usize, col: &[Scalar]) {
        assert_eq!(col.len(), self.rows);
        for (r, v) in col.iter().enumerate() {
            *self.at_mut(r, c) = v.clone();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.at(r, c) + rhs.at(r, c)
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.at(r, c) - rhs.at(r, c)
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| -self.at(r, c))
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c).clone();
                    *out.at_mut(r, c) = &cur + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![self.field.zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.at(r, c);
                if a.is_zero() || v[c].is_zero() {
                    continue;
                }
                out[r] = &out[r] + &(a * &v[c]);
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    let tmp = m.at(pr, c).clone();
                    *m.at_mut(pr, c) = m.at(row, c).clone();
                    *m.at_mut(row, c) = tmp;
                }
            }
            let inv = m.at(row, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.at(row, c).clone();
                *m.at_mut(row, c) = &v * &inv;
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    if m.at(row, c).is_zero() {
                        continue;
                    }
                    let v = m.at(r, c).clone();
                    *m.at_mut(r, c) = &v - &(&factor * m.at(row, c));
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, canonicalized to reduced column echelon
    /// form; empty iff the matrix is injective.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut vectors = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            pivot_of_col[p] = Some(i);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.at(i, free);
            }
            vectors.push(v);
        }
        if vectors.is_empty() {
            return vectors;
        }
        // canonical form: row-reduce the kernel vectors
        let (reduced, _) = Matrix::from_rows(self.field, vectors).rref();
        (0..reduced.rows()).map(|i| reduced.row(i)).collect()
    }

    /// Solve `self * x = b`; `None` when inconsistent. With free variables
    /// the solution with zero free part is returned.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = b[r].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.at(i, self.cols).clone();
        }
        Some(x)
    }

    /// Express each column of `b` in terms of the columns of `self`.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let mut out = Matrix::zeros(self.field, self.cols, b.cols);
        for c in 0..b.cols {
            let x = self.solve(&b.column(c))?;
            out.set_column(c, &x);
        }
        Some(out)
    }

    pub fn inverse(&self) -> Result<Matrix, Error> {
        if self.rows != self.cols {
            return Err(Error::Singular);
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = self.field.one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(self.field, n, n, |r, c| {
            red.at(r, n + c).clone()
        }))
    }
}

/// Kronecker product `f (x) g` under the row-major flattening, so that
/// `(f (x) g)(u (x) v) = f(u) (x) g(v)` on basis tensors.
pub fn tensor_of_maps(f: &Matrix, g: &Matrix) -> Result<Matrix, Error> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch(f.field(), g.field()));
    }
    let rows = f.rows() * g.rows();
    let cols = f.cols() * g.cols();
    let mut out = Matrix::zeros(f.field(), rows, cols);
    for r1 in 0..f.rows() {
        for c1 in 0..f.cols() {
            let a = f.at(r1, c1);
            if a.is_zero() {
                continue;
            }
            for r2 in 0..g.rows() {
                for c2 in 0..g.cols() {
                    let b = g.at(r2, c2);
                    if b.is_zero() {
                        continue;
                    }
                    *out.at_mut(r1 * g.rows() + r2, c1 * g.cols() + c2) = a * b;
                }
            }
        }
    }
    Ok(out)
}

/// n-fold Kronecker product; the empty product is the 1x1 identity.
pub fn tensor_chain(field: Field, maps: &[&Matrix]) -> Result<Matrix, Error> {
    let mut acc = Matrix::identity(field, 1);
    for m in maps {
        acc = tensor_of_maps(&acc, m)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn tensor_index_round_trip() {
        let t = TensorIndex::new(vec![2, 3, 4]);
        assert_eq!(t.total(), 24);
        for i in 0..24 {
            assert_eq!(t.flatten(&t.unflatten(i)), i);
        }
        // leftmost factor is most significant
        assert_eq!(t.flatten(&[1, 0, 0]), 12);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        // identity 3x3: injective, empty kernel
        assert!(Matrix::identity(q(), 3).kernel_basis().is_empty());
        // zero 2x2: kernel is the standard basis
        let z = Matrix::zeros(q(), 2, 2);
        let k = z.kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![q().one(), q().zero()]);
        assert_eq!(k[1], vec![q().zero(), q().one()]);
    }

    // Over F_7 the 1x2 matrix [3 1] has kernel spanned by (1, -3) = (1, 4):
    // solve 3a + b = 0 mod 7 by hand with a = 1.
    #[test]
    fn kernel_mod_7() {
        let f7 = Field::prime(7).unwrap();
        let m = Matrix::from_i64(f7, 1, 2, &[3, 1]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![f7.from_i64(1), f7.from_i64(4)]]);
        assert!(m.mul_vec(&k[0]).iter().all(|v| v.is_zero()));
    }

    #[test]
    fn kernel_vectors_annihilate_and_count() {
        let m = Matrix::from_i64(q(), 3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 1, 0]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), m.cols() - m.rank());
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        // linear independence: stack as rows, rank equals count
        let km = Matrix::from_rows(q(), k.clone());
        assert_eq!(km.rank(), k.len());
    }

    #[test]
    fn tensor_of_maps_examples() {
        // id_2 (x) id_3 = id_6
        let t = tensor_of_maps(&Matrix::identity(q(), 2), &Matrix::identity(q(), 3)).unwrap();
        assert_eq!(t, Matrix::identity(q(), 6));

        // f = swap on k^2, g = id_2: permutation swapping the two 2-blocks,
        // checked against direct enumeration of basis tensors e_i (x) e_j
        let f = Matrix::from_i64(q(), 2, 2, &[0, 1, 1, 0]);
        let g = Matrix::identity(q(), 2);
        let fg = tensor_of_maps(&f, &g).unwrap();
        let idx = TensorIndex::new(vec![2, 2]);
        for i in 0..2 {
            for j in 0..2 {
                let col = fg.column(idx.flatten(&[i, j]));
                let expect = idx.flatten(&[1 - i, j]);
                for (r, v) in col.iter().enumerate() {
                    assert_eq!(!v.is_zero(), r == expect);
                }
            }
        }
    }

    #[test]
    fn tensor_rank_is_multiplicative() {
        let f = Matrix::from_i64(q(), 3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]);
        let g = Matrix::from_i64(q(), 2, 3, &[1, 1, 0, 0, 1, 1]);
        let fg = tensor_of_maps(&f, &g).unwrap();
        assert_eq!(fg.rank(), f.rank() * g.rank());
    }

    #[test]
    fn tensor_associativity_under_flattening() {
        let f = Matrix::from_i64(q(), 2, 2, &[1, 2, 0, 1]);
        let g = Matrix::from_i64(q(), 3, 2, &[1, 0, 2, 1, 0, 3]);
        let h = Matrix::from_i64(q(), 2, 2, &[0, 1, 1, 1]);
        let left = tensor_of_maps(&tensor_of_maps(&f, &g).unwrap(), &h).unwrap();
        let right = tensor_of_maps(&f, &tensor_of_maps(&g, &h).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn solve_and_inverse() {
        let m = Matrix::from_i64(q(), 2, 2, &[1, 2, 3, 5]);
        let b = vec![q().from_i64(1), q().from_i64(2)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q(), 2));
        // singular matrix has no inverse but a kernel
        let s = Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4]);
        assert!(s.inverse().is_err());
        assert_eq!(s.kernel_basis().len(), 1);
        // inconsistent system
        assert!(s.solve(&[q().from_i64(1), q().from_i64(0)]).is_none());
    }

    #[test]
    fn zero_dimensional_edge_cases() {
        let m = Matrix::zeros(q(), 0, 3);
        assert_eq!(m.kernel_basis().len(), 3);
        let m2 = Matrix::zeros(q(), 3, 0);
        assert!(m2.kernel_basis().is_empty());
        assert_eq!(m2.rank(), 0);
        let id0 = Matrix::identity(q(), 0);
        assert_eq!(id0.mul(&id0), id0);
        assert_eq!(tensor_of_maps(&id0, &m).unwrap().rows(), 0);
    }
}
