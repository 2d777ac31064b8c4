//! Dense exact linear algebra over [`BaseField`].
//!
//! Vectors are plain `Vec<Fe>`; matrices act on column vectors. Everything
//! here is reduced to Gaussian elimination.

use std::fmt;

use crate::field::{BaseField, Fe};

pub type Vector = Vec<Fe>;

pub fn zero_vec(n: usize) -> Vector {
    vec![0; n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn vec_add(a: &[Fe], b: &[Fe]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

pub fn vec_add_assign(a: &mut [Fe], b: &[Fe]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

pub fn vec_scale(f: &BaseField, c: Fe, a: &[Fe]) -> Vector {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

pub fn is_zero(a: &[Fe]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Linear combination `sum coeffs[i] * vectors[i]`.
pub fn combine(f: &BaseField, coeffs: &[Fe], vectors: &[Vector], len: usize) -> Vector {
    let mut out = zero_vec(len);
    for (c, v) in coeffs.iter().zip(vectors) {
        if *c != 0 {
            for (o, x) in out.iter_mut().zip(v) {
                *o ^= f.mul(*c, *x);
            }
        }
    }
    out
}

/// Every vector of `GF(q)^n`, in lexicographic order of coordinates.
pub fn all_vectors(f: &BaseField, n: usize) -> Vec<Vector> {
    let q = f.order() as usize;
    let total = q.checked_pow(n as u32).expect("enumeration too large");
    (0..total)
        .map(|mut idx| {
            let mut v = vec![0; n];
            for slot in v.iter_mut().rev() {
                *slot = (idx % q) as Fe;
                idx /= q;
            }
            v
        })
        .collect()
}

/// Every element of the span of `basis` (rows of length `len`).
pub fn span_elements(f: &BaseField, basis: &[Vector], len: usize) -> Vec<Vector> {
    all_vectors(f, basis.len())
        .into_iter()
        .map(|c| combine(f, &c, basis, len))
        .collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: BaseField,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: BaseField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: BaseField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: BaseField, cols: usize, rows: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row");
            m.data[r * cols..(r + 1) * cols].copy_from_slice(row);
        }
        m
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: BaseField, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged column");
            for (r, &x) in col.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }

    pub fn field(&self) -> &BaseField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vector {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.data)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: vec_add(&self.data, &other.data),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "incompatible shapes for product");
        let f = &self.field;
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        out.data[i * other.cols + j] ^= f.mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: Fe) -> Self {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = self.field.mul(c, *x);
        }
        out
    }

    pub fn apply(&self, v: &[Fe]) -> Vector {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = 0;
                for (c, &x) in v.iter().enumerate() {
                    if x != 0 {
                        acc ^= f.mul(self.get(r, c), x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product, matching the lexicographic basis `e_i (x) e_j -> i * n + j`.
    pub fn kron(&self, other: &Matrix) -> Self {
        let f = &self.field;
        let mut out = Self::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Self {
        let mut out = Self::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in 0..self.cols {
                let v = f.mul(inv, self.get(r, j));
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let factor = self.get(i, c);
                if i != r && factor != 0 {
                    for j in 0..self.cols {
                        let v = self.get(i, j) ^ f.mul(factor, self.get(r, j));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of `{ v : M v = 0 }`.
    pub fn kernel(&self) -> Vec<Vector> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = zero_vec(self.cols);
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    // char 2: -x = x
                    v[pc] = m.get(r, fc);
                }
                v
            })
            .collect()
    }

    /// Some `x` with `M x = b`, if one exists.
    pub fn solve(&self, b: &[Fe]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        Some(inv)
    }

    pub fn pow(&self, mut e: u32) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Column space, as a [`Subspace`].
    pub fn image(&self) -> Subspace {
        Subspace::span(self.field, self.rows, &self.columns())
    }
}

/// A subspace of `GF(q)^ambient`, kept as a reduced row echelon basis so that
/// equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: BaseField, ambient: usize) -> Self {
        let basis: Vec<Vector> = (0..ambient).map(|i| unit_vec(ambient, i)).collect();
        Self::span(field, ambient, &basis)
    }

    pub fn span(field: BaseField, ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let mut m = Matrix::from_rows(field, ambient, vectors);
        let pivots = m.rref_in_place();
        let basis = (0..pivots.len()).map(|r| m.row(r)).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the echelon basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, f: &BaseField, v: &[Fe]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = out[p];
            if c != 0 {
                for (o, x) in out.iter_mut().zip(row) {
                    *o ^= f.mul(c, *x);
                }
            }
        }
        out
    }

    pub fn contains(&self, f: &BaseField, v: &[Fe]) -> bool {
        is_zero(&self.reduce(f, v))
    }

    pub fn contains_subspace(&self, f: &BaseField, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(f, v))
    }

    pub fn sum(&self, f: &BaseField, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(*f, self.ambient, &all)
    }

    pub fn intersect(&self, f: &BaseField, other: &Subspace) -> Subspace {
        // x = sum a_i u_i = sum b_j w_j  <=>  [U | W] (a, b) = 0
        let k = self.dim();
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().cloned());
        if cols.is_empty() {
            return Subspace::zero(self.ambient);
        }
        let m = Matrix::from_columns(*f, self.ambient, &cols);
        let vectors: Vec<Vector> = m
            .kernel()
            .into_iter()
            .map(|sol| combine(f, &sol[..k], &self.basis, self.ambient))
            .collect();
        Subspace::span(*f, self.ambient, &vectors)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, f: &BaseField, v: &[Fe]) -> Option<Vector> {
        if !self.contains(f, v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    /// Standard basis indices spanning a complement (the non-pivot positions).
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    pub fn elements(&self, f: &BaseField) -> Vec<Vector> {
        span_elements(f, &self.basis, self.ambient)
    }

    /// Matrix of the projection onto `ambient / self`, in the coordinates of
    /// [`Self::complement_indices`]. Its kernel is exactly `self`.
    pub fn quotient_map(&self, f: &BaseField) -> Matrix {
        let keep = self.complement_indices();
        let cols: Vec<Vector> = (0..self.ambient)
            .map(|j| {
                let r = self.reduce(f, &unit_vec(self.ambient, j));
                keep.iter().map(|&i| r[i]).collect()
            })
            .collect();
        Matrix::from_columns(*f, keep.len(), &cols)
    }

    /// `{v : m v in target}`.
    pub fn preimage(f: &BaseField, m: &Matrix, target: &Subspace) -> Subspace {
        Subspace::span(*f, m.cols(), &target.quotient_map(f).mul(m).kernel())
    }
}
