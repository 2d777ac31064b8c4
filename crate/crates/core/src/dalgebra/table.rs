use std::fmt;

use crate::error::{Error, Result};
use crate::field::{BaseField, Fe};
use crate::linalg::{combine, is_zero, unit_vec, vec_add, vec_scale, zero_vec, Matrix, Subspace, Vector};

/// A finite-dimensional algebra in Ver4+, given by structure constants and
/// the matrix of `D` in a fixed basis.
#[derive(Clone, PartialEq, Eq)]
pub struct TableAlgebra {
    field: BaseField,
    names: Vec<String>,
    unit: Vector,
    /// `mult[i * n + j] = e_i e_j`
    mult: Vec<Vector>,
    d: Matrix,
}

impl fmt::Debug for TableAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TableAlgebra(dim {}, basis {:?})", self.dim(), self.names)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Associativity,
    Unit,
    DSquareZero,
    Leibniz,
    Supercommutativity,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::Associativity,
        Axiom::Unit,
        Axiom::DSquareZero,
        Axiom::Leibniz,
        Axiom::Supercommutativity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::DSquareZero => "D^2=0",
            Axiom::Leibniz => "leibniz",
            Axiom::Supercommutativity => "ab+ba=(Da)(Db)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub passed: bool,
    /// Basis indices exhibiting the first failure.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn get(&self, axiom: Axiom) -> &AxiomResult {
        self.results.iter().find(|r| r.axiom == axiom).expect("every axiom is reported")
    }
}

impl TableAlgebra {
    pub fn new(field: BaseField, names: Vec<String>, unit: Vector, mult: Vec<Vector>, d: Matrix) -> Result<Self> {
        let n = names.len();
        if unit.len() != n || mult.len() != n * n || mult.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch("structure constants do not match basis".into()));
        }
        if d.rows() != n || d.cols() != n {
            return Err(Error::DimensionMismatch("D has the wrong shape".into()));
        }
        Ok(TableAlgebra { field, names, unit, mult, d })
    }

    /// Build from a product rule on basis indices.
    pub fn from_fn(
        field: BaseField,
        names: Vec<String>,
        unit: Vector,
        d: Matrix,
        product: impl Fn(usize, usize) -> Vector,
    ) -> Result<Self> {
        let n = names.len();
        let mult = (0..n * n).map(|k| product(k / n, k % n)).collect();
        Self::new(field, names, unit, mult, d)
    }

    /// The zero algebra (`1 = 0`).
    pub fn zero_algebra(field: BaseField) -> Self {
        TableAlgebra { field, names: Vec::new(), unit: Vec::new(), mult: Vec::new(), d: Matrix::zeros(field, 0, 0) }
    }

    /// The base field `k` itself, i.e. the unit object `1` as an algebra.
    pub fn ground(field: BaseField) -> Self {
        TableAlgebra {
            field,
            names: vec!["1".into()],
            unit: vec![1],
            mult: vec![vec![1]],
            d: Matrix::zeros(field, 1, 1),
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim() {
            return Err(Error::DimensionMismatch("wrong number of basis names".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn field(&self) -> &BaseField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn d_matrix(&self) -> &Matrix {
        &self.d
    }

    pub fn one(&self) -> Vector {
        self.unit.clone()
    }

    pub fn zero(&self) -> Vector {
        zero_vec(self.dim())
    }

    pub fn basis(&self, i: usize) -> Vector {
        unit_vec(self.dim(), i)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.mult[i * self.dim() + j]
    }

    pub fn add(&self, a: &[Fe], b: &[Fe]) -> Vector {
        vec_add(a, b)
    }

    pub fn scale(&self, c: Fe, a: &[Fe]) -> Vector {
        vec_scale(&self.field, c, a)
    }

    pub fn mul(&self, a: &[Fe], b: &[Fe]) -> Vector {
        let n = self.dim();
        let f = &self.field;
        let mut out = zero_vec(n);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = f.mul(ai, bj);
                for (o, &x) in out.iter_mut().zip(&self.mult[i * n + j]) {
                    if x != 0 {
                        *o ^= f.mul(c, x);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[Fe], e: u32) -> Vector {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// `D(a)`.
    pub fn apply_d(&self, a: &[Fe]) -> Vector {
        self.d.apply(a)
    }

    /// Matrix of `b -> a b`.
    pub fn left_mul(&self, a: &[Fe]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of `b -> b a`.
    pub fn right_mul(&self, a: &[Fe]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(&self.basis(j), a)).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// `A^0 = ker D`.
    pub fn degree_zero(&self) -> Subspace {
        Subspace::span(self.field, self.dim(), &self.d.kernel())
    }

    pub fn in_degree_zero(&self, a: &[Fe]) -> bool {
        is_zero(&self.apply_d(a))
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.dim() == 0
    }

    /// Two-sided inverse by linear algebra, if it exists.
    pub fn inverse(&self, a: &[Fe]) -> Option<Vector> {
        if self.dim() == 0 {
            return Some(Vec::new());
        }
        let u = self.right_mul(a).solve(&self.unit)?;
        (self.mul(a, &u) == self.unit).then_some(u)
    }

    /// Every element of the algebra (finite field, small dimension only).
    pub fn elements(&self) -> Vec<Vector> {
        crate::linalg::all_vectors(&self.field, self.dim())
    }

    pub fn format(&self, a: &[Fe]) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| if c == 1 { self.names[i].clone() } else { format!("{c}*{}", self.names[i]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Check the five defining identities on all basis pairs and triples.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.dim();
        let e = |i| self.basis(i);
        let mut results = Vec::new();

        let mut witness = None;
        'outer: for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j).clone();
                for k in 0..n {
                    if self.mul(&ij, &e(k)) != self.mul(&e(i), self.basis_product(j, k)) {
                        witness = Some(vec![i, j, k]);
                        break 'outer;
                    }
                }
            }
        }
        results.push(AxiomResult { axiom: Axiom::Associativity, passed: witness.is_none(), witness });

        let witness = (0..n)
            .find(|&i| self.mul(&self.unit, &e(i)) != e(i) || self.mul(&e(i), &self.unit) != e(i))
            .map(|i| vec![i]);
        results.push(AxiomResult { axiom: Axiom::Unit, passed: witness.is_none(), witness });

        let witness = (0..n).find(|&i| !is_zero(&self.apply_d(&self.apply_d(&e(i))))).map(|i| vec![i]);
        results.push(AxiomResult { axiom: Axiom::DSquareZero, passed: witness.is_none(), witness });

        let mut witness = None;
        'leib: for i in 0..n {
            for j in 0..n {
                let lhs = self.apply_d(self.basis_product(i, j));
                let rhs = vec_add(
                    &self.mul(&self.apply_d(&e(i)), &e(j)),
                    &self.mul(&e(i), &self.apply_d(&e(j))),
                );
                if lhs != rhs {
                    witness = Some(vec![i, j]);
                    break 'leib;
                }
            }
        }
        results.push(AxiomResult { axiom: Axiom::Leibniz, passed: witness.is_none(), witness });

        let mut witness = None;
        'sc: for i in 0..n {
            for j in 0..n {
                let lhs = vec_add(self.basis_product(i, j), self.basis_product(j, i));
                let rhs = self.mul(&self.apply_d(&e(i)), &self.apply_d(&e(j)));
                if lhs != rhs {
                    witness = Some(vec![i, j]);
                    break 'sc;
                }
            }
        }
        results.push(AxiomResult { axiom: Axiom::Supercommutativity, passed: witness.is_none(), witness });

        AxiomReport { results }
    }

    /// `A x B` with componentwise operations.
    pub fn product(&self, other: &TableAlgebra) -> Result<TableAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let (n, m) = (self.dim(), other.dim());
        let mut names: Vec<String> = self.names.iter().map(|s| format!("({s},0)")).collect();
        names.extend(other.names.iter().map(|s| format!("(0,{s})")));
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().copied());
        let d = self.d.direct_sum(&other.d);
        TableAlgebra::from_fn(self.field, names, unit, d, |i, j| {
            let mut v = zero_vec(n + m);
            if i < n && j < n {
                v[..n].copy_from_slice(self.basis_product(i, j));
            } else if i >= n && j >= n {
                v[n..].copy_from_slice(other.basis_product(i - n, j - n));
            }
            v
        })
    }

    /// Quotient by a subspace (assumed to be a D-stable two-sided ideal), with
    /// the projection matrix.
    pub fn quotient(&self, ideal: &Subspace) -> (TableAlgebra, Matrix) {
        let f = self.field;
        let keep = ideal.complement_indices();
        let project = |v: &[Fe]| -> Vector {
            let r = ideal.reduce(&f, v);
            keep.iter().map(|&i| r[i]).collect()
        };
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let unit = project(&self.unit);
        let d_cols: Vec<Vector> = keep.iter().map(|&i| project(&self.d.column(i))).collect();
        let d = Matrix::from_columns(f, keep.len(), &d_cols);
        let q = TableAlgebra::from_fn(f, names, unit, d, |i, j| project(self.basis_product(keep[i], keep[j])))
            .expect("quotient shapes are consistent");
        let proj_cols: Vec<Vector> = (0..self.dim()).map(|i| project(&self.basis(i))).collect();
        (q, Matrix::from_columns(f, keep.len(), &proj_cols))
    }

    /// Algebra structure on a subspace closed under products and `D`, with unit
    /// `unit` (which need not be the unit of `self`). Returns the algebra and
    /// the matrix of the inclusion.
    pub fn restrict(&self, sub: &Subspace, unit: &[Fe]) -> Result<(TableAlgebra, Matrix)> {
        let f = self.field;
        let coords = |v: &[Fe]| -> Result<Vector> {
            sub.coordinates(&f, v).ok_or_else(|| Error::InvalidInput("subspace is not closed".into()))
        };
        let basis = sub.basis().to_vec();
        let names: Vec<String> = basis.iter().map(|b| self.format(b)).collect();
        let unit_c = coords(unit)?;
        let mut d_cols = Vec::with_capacity(basis.len());
        for b in &basis {
            d_cols.push(coords(&self.apply_d(b))?);
        }
        let d = Matrix::from_columns(f, basis.len(), &d_cols);
        let k = basis.len();
        let mut mult = Vec::with_capacity(k * k);
        for a in &basis {
            for b in &basis {
                mult.push(coords(&self.mul(a, b))?);
            }
        }
        let alg = TableAlgebra::new(f, names, unit_c, mult, d)?;
        let incl = Matrix::from_columns(f, self.dim(), &basis);
        Ok((alg, incl))
    }

    /// `A^0` as an algebra, with its inclusion into `A`.
    pub fn degree_zero_algebra(&self) -> (TableAlgebra, Matrix) {
        self.restrict(&self.degree_zero(), &self.unit).expect("ker D is a subalgebra")
    }

    /// The corner `A e` for a central idempotent `e` killed by `D`, with the
    /// projection `a -> a e` expressed in the corner's basis.
    pub fn corner(&self, e: &[Fe]) -> Result<(TableAlgebra, Matrix)> {
        let f = self.field;
        let image = self.left_mul(e).image();
        let (alg, _) = self.restrict(&image, e)?;
        let cols: Vec<Vector> = (0..self.dim())
            .map(|i| image.coordinates(&f, &self.mul(&self.basis(i), e)).expect("a e lies in A e"))
            .collect();
        Ok((alg, Matrix::from_columns(f, image.dim(), &cols)))
    }

    /// Linear combination helper for callers holding coordinate vectors.
    pub fn combine(&self, coeffs: &[Fe], vectors: &[Vector]) -> Vector {
        combine(&self.field, coeffs, vectors, self.dim())
    }
}
