//! Dense matrices over GF(2^k) and the exact linear algebra the forms need:
//! echelon forms, rank, kernels, inverses and linear solves.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// Column vector.
pub type Vector = Vec<FieldElem>;

#[derive(Clone)]
pub struct Matrix {
    field: &'static FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zeros(field: &'static FieldCtx, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &'static FieldCtx, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from rows of integer encodings.
    pub fn from_rows(field: &'static FieldCtx, rows: &[Vec<u32>]) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {c}", row.len())));
            }
            for (j, &b) in row.iter().enumerate() {
                m[(i, j)] = field.elem(b)?;
            }
        }
        Ok(m)
    }

    /// Square matrix from rows; an empty list gives the 0x0 matrix.
    pub fn square_from_rows(field: &'static FieldCtx, rows: &[Vec<u32>]) -> Result<Matrix> {
        let m = Matrix::from_rows(field, rows)?;
        if m.rows != m.cols && !(m.rows == 0) {
            return Err(Error::Dimension(format!("{}x{} matrix is not square", m.rows, m.cols)));
        }
        Ok(m)
    }

    pub fn from_columns(field: &'static FieldCtx, rows: usize, columns: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn field(&self) -> &'static FieldCtx {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)].bits()).collect()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, &x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self[(i, j)] * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// `uᵀ · self · v`.
    pub fn bilinear(&self, u: &[FieldElem], v: &[FieldElem]) -> FieldElem {
        let sv = self.mul_vec(v);
        dot(u, &sv, self.field)
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut k = Matrix::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        k[(i * other.rows + p, j * other.cols + q)] = a * other[(p, q)];
                    }
                }
            }
        }
        k
    }

    pub fn block_diag(field: &'static FieldCtx, blocks: &[&Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Rows and columns picked by index, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn diagonal(&self) -> Vector {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] *= inv;
            }
            for i in 0..m.rows {
                if i != r {
                    let f = m[(i, c)];
                    if !f.is_zero() {
                        for j in c..m.cols {
                            let v = m[(r, j)];
                            m[(i, j)] += f * v;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of the null space, one column per free variable, in
    /// increasing order of the free column index.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (idx, &f) in free.iter().enumerate() {
            k[(f, idx)] = self.field.one();
            for (row, &p) in pivots.iter().enumerate() {
                k[(p, idx)] = r[(row, f)];
            }
        }
        k
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("{}x{} matrix has no inverse", self.rows, self.cols)));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.select(&rows, &cols))
    }

    /// Some `X` with `self · X = rhs`, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve: row mismatch");
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = r[(row, self.cols + j)];
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, rhs: &[FieldElem]) -> Option<Vector> {
        let b = Matrix::from_columns(self.field, self.rows, &[rhs.to_vec()]);
        self.solve(&b).map(|x| x.column(0))
    }

    /// `Pᵀ · self · P`.
    pub fn congruence(&self, p: &Matrix) -> Matrix {
        &(&p.transpose() * self) * p
    }
}

/// Standard dot product.
pub fn dot(u: &[FieldElem], v: &[FieldElem], field: &'static FieldCtx) -> FieldElem {
    assert_eq!(u.len(), v.len(), "dot: length mismatch");
    u.iter().zip(v).fold(field.zero(), |acc, (&a, &b)| acc + a * b)
}

pub fn unit_vector(field: &'static FieldCtx, n: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn axpy(a: FieldElem, x: &[FieldElem], y: &[FieldElem]) -> Vector {
    x.iter().zip(y).map(|(&xi, &yi)| a * xi + yi).collect()
}

pub fn scale(a: FieldElem, x: &[FieldElem]) -> Vector {
    x.iter().map(|&xi| a * xi).collect()
}

pub fn vadd(x: &[FieldElem], y: &[FieldElem]) -> Vector {
    x.iter().zip(y).map(|(&a, &b)| a + b).collect()
}

/// Incrementally built echelon basis for greedy independence tests.
pub struct EchelonBasis {
    field: &'static FieldCtx,
    rows: Vec<(usize, Vector)>,
}

impl EchelonBasis {
    pub fn new(field: &'static FieldCtx) -> Self {
        EchelonBasis { field, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, v: &[FieldElem]) -> Vector {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let f = v[*p];
            if !f.is_zero() {
                v = axpy(f, row, &v);
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` if it is independent of the current span; reports whether it did.
    pub fn insert(&mut self, v: &[FieldElem]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        let r = scale(inv, &r);
        for (_, row) in self.rows.iter_mut() {
            let f = row[p];
            if !f.is_zero() {
                *row = axpy(f, &r, row);
            }
        }
        self.rows.push((p, r));
        let _ = self.field;
        true
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElem;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElem {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElem {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut m = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs[(l, j)];
                    if !b.is_zero() {
                        m[(i, j)] += a * b;
                    }
                }
            }
        }
        m
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimension mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use proptest::prelude::*;

    fn gf8() -> &'static FieldCtx {
        make_field(3).unwrap()
    }

    fn arb_matrix(r: usize, c: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(0u32..8, r * c).prop_map(move |v| {
            let rows: Vec<Vec<u32>> = v.chunks(c.max(1)).map(|x| x.to_vec()).take(r).collect();
            if c == 0 {
                Matrix::zeros(gf8(), r, 0)
            } else {
                Matrix::from_rows(gf8(), &rows).unwrap()
            }
        })
    }

    #[test]
    fn inverse_of_gf4_matrix() {
        let f = make_field(2).unwrap();
        let m = Matrix::from_rows(f, &[vec![2, 1], vec![1, 0]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(f, 2));
        let s = Matrix::from_rows(f, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Matrix::from_rows(gf8(), &[vec![1, 2], vec![3]]).is_err());
        assert!(Matrix::from_rows(gf8(), &[vec![9]]).is_err());
    }

    #[test]
    fn echelon_basis_tracks_span() {
        let f = gf8();
        let mut b = EchelonBasis::new(f);
        let e = |i| unit_vector(f, 3, i);
        assert!(b.insert(&e(0)));
        assert!(b.insert(&vadd(&e(0), &e(1))));
        assert!(!b.insert(&e(1)));
        assert!(b.contains(&e(1)));
        assert!(!b.contains(&e(2)));
        assert_eq!(b.len(), 2);
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(4, 6)) {
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.cols(), 6);
            prop_assert!((&m * &k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn solve_finds_preimage(m in arb_matrix(5, 4), x in arb_matrix(4, 2)) {
            let b = &m * &x;
            let y = m.solve(&b).expect("consistent by construction");
            prop_assert_eq!(&m * &y, b);
        }

        #[test]
        fn inverse_roundtrip(m in arb_matrix(5, 5)) {
            match m.inverse() {
                Ok(inv) => {
                    prop_assert_eq!(&m * &inv, Matrix::identity(gf8(), 5));
                    prop_assert_eq!(&inv * &m, Matrix::identity(gf8(), 5));
                }
                Err(_) => prop_assert!(m.rank() < 5),
            }
        }

        #[test]
        fn kron_mixed_product(a in arb_matrix(2, 3), b in arb_matrix(3, 2), c in arb_matrix(3, 2), d in arb_matrix(2, 3)) {
            // (A⊗B)(C⊗D) = AC⊗BD
            let lhs = &a.kron(&b) * &c.kron(&d);
            let rhs = (&a * &c).kron(&(&b * &d));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
