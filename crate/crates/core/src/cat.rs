//! Objects and morphisms of Ver4+: finite-dimensional `k[D]/D^2`-modules in
//! characteristic two, with the twisted braiding
//! `v (x) w -> w (x) v + Dw (x) Dv`.
//!
//! The two-dimensional indecomposable `P` uses the basis `{v1, v2}` with
//! `D v1 = v2`; `v2` spans the socle.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{BaseField, Fe};
use crate::linalg::{is_zero, unit_vec, Matrix, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ver4Object {
    d: Matrix,
}

impl Ver4Object {
    /// Object with the given action of `D`; fails unless `D^2 = 0`.
    pub fn new(d: Matrix) -> Result<Self> {
        if d.rows() != d.cols() {
            return Err(Error::DimensionMismatch("D must be square".into()));
        }
        if !d.mul(&d).is_zero() {
            return Err(Error::InvalidInput("D does not square to zero".into()));
        }
        Ok(Ver4Object { d })
    }

    pub fn unit(field: BaseField) -> Self {
        Ver4Object { d: Matrix::zeros(field, 1, 1) }
    }

    pub fn zero(field: BaseField) -> Self {
        Ver4Object { d: Matrix::zeros(field, 0, 0) }
    }

    pub fn projective(field: BaseField) -> Self {
        let mut d = Matrix::zeros(field, 2, 2);
        d.set(1, 0, 1);
        Ver4Object { d }
    }

    /// `1^{ones} (+) P^{ps}` in the standard basis.
    pub fn from_counts(field: BaseField, ones: usize, ps: usize) -> Self {
        let mut obj = Self::zero(field);
        for _ in 0..ones {
            obj = obj.direct_sum(&Self::unit(field)).unwrap();
        }
        for _ in 0..ps {
            obj = obj.direct_sum(&Self::projective(field)).unwrap();
        }
        obj
    }

    pub fn field(&self) -> &BaseField {
        self.d.field()
    }

    pub fn dim(&self) -> usize {
        self.d.rows()
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    fn same_field(&self, other: &Ver4Object) -> Result<()> {
        if self.field() != other.field() {
            Err(Error::FieldMismatch)
        } else {
            Ok(())
        }
    }

    pub fn direct_sum(&self, other: &Ver4Object) -> Result<Self> {
        self.same_field(other)?;
        Ok(Ver4Object { d: self.d.direct_sum(&other.d) })
    }

    /// `D` is primitive, so it acts on `X (x) Y` by `D (x) 1 + 1 (x) D`.
    pub fn tensor(&self, other: &Ver4Object) -> Result<Self> {
        self.same_field(other)?;
        let f = *self.field();
        let d = self
            .d
            .kron(&Matrix::identity(f, other.dim()))
            .add(&Matrix::identity(f, self.dim()).kron(&other.d));
        Ok(Ver4Object { d })
    }

    pub fn tensor_power(&self, n: usize) -> Self {
        let mut out = Self::unit(*self.field());
        for _ in 0..n {
            out = out.tensor(self).unwrap();
        }
        out
    }

    /// The dual; `D` acts by the transpose.
    pub fn dual(&self) -> Self {
        Ver4Object { d: self.d.transpose() }
    }

    /// Basis of `H^0(X) = ker D`.
    pub fn h0(&self) -> Subspace {
        Subspace::span(*self.field(), self.dim(), &self.d.kernel())
    }

    /// Multiplicities `(#1, #P)` of the two indecomposables.
    pub fn decompose(&self) -> (usize, usize) {
        let r = self.d.rank();
        let ones = self
            .dim()
            .checked_sub(2 * r)
            .expect("rank of a square-zero operator is at most half the dimension");
        (ones, r)
    }

    pub fn is_isomorphic(&self, other: &Ver4Object) -> bool {
        self.field() == other.field() && self.decompose() == other.decompose()
    }

    /// Quotient by a `D`-stable subspace, with its projection.
    pub fn quotient(&self, sub: &Subspace) -> Result<(Ver4Object, Ver4Morphism)> {
        let f = *self.field();
        for v in sub.basis() {
            if !sub.contains(&f, &self.d.apply(v)) {
                return Err(Error::InvalidInput("subspace is not D-stable".into()));
            }
        }
        let keep = sub.complement_indices();
        let project = |v: &[Fe]| -> Vector {
            let r = sub.reduce(&f, v);
            keep.iter().map(|&i| r[i]).collect()
        };
        let proj_cols: Vec<Vector> = (0..self.dim()).map(|i| project(&unit_vec(self.dim(), i))).collect();
        let proj = Matrix::from_columns(f, keep.len(), &proj_cols);
        let d_cols: Vec<Vector> = keep.iter().map(|&i| project(&self.d.column(i))).collect();
        let q = Ver4Object { d: Matrix::from_columns(f, keep.len(), &d_cols) };
        let morph = Ver4Morphism::new(self.clone(), q.clone(), proj)?;
        Ok((q, morph))
    }

    /// Random object of dimension `dim`: a random decomposition conjugated by a
    /// random change of basis.
    pub fn random<R: Rng>(field: BaseField, dim: usize, rng: &mut R) -> Self {
        let ps = rng.gen_range(0..=dim / 2);
        let base = Self::from_counts(field, dim - 2 * ps, ps);
        let g = random_invertible(field, dim, rng);
        let ginv = g.inverse().unwrap();
        Ver4Object { d: g.mul(&base.d).mul(&ginv) }
    }
}

pub(crate) fn random_invertible<R: Rng>(field: BaseField, n: usize, rng: &mut R) -> Matrix {
    loop {
        let mut m = Matrix::zeros(field, n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, rng.gen_range(0..field.order()));
            }
        }
        if m.rank() == n {
            return m;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ver4Morphism {
    source: Ver4Object,
    target: Ver4Object,
    matrix: Matrix,
}

impl Ver4Morphism {
    /// Fails unless `matrix` commutes with `D`.
    pub fn new(source: Ver4Object, target: Ver4Object, matrix: Matrix) -> Result<Self> {
        source.same_field(&target)?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "expected {}x{} matrix",
                target.dim(),
                source.dim()
            )));
        }
        if matrix.mul(&source.d) != target.d.mul(&matrix) {
            return Err(Error::InvalidInput("linear map does not commute with D".into()));
        }
        Ok(Ver4Morphism { source, target, matrix })
    }

    pub fn identity(x: &Ver4Object) -> Self {
        Ver4Morphism {
            source: x.clone(),
            target: x.clone(),
            matrix: Matrix::identity(*x.field(), x.dim()),
        }
    }

    pub fn source(&self) -> &Ver4Object {
        &self.source
    }

    pub fn target(&self) -> &Ver4Object {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Ver4Morphism) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch("composable morphisms required".into()));
        }
        Ok(Ver4Morphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        })
    }

    pub fn tensor(&self, other: &Ver4Morphism) -> Result<Self> {
        Ok(Ver4Morphism {
            source: self.source.tensor(&other.source)?,
            target: self.target.tensor(&other.target)?,
            matrix: self.matrix.kron(&other.matrix),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Basis of `Hom(X, Y)`: matrices `M` with `M D_X = D_Y M`.
pub fn hom_space(x: &Ver4Object, y: &Ver4Object) -> Result<Vec<Matrix>> {
    x.same_field(y)?;
    let f = *x.field();
    let (n, m) = (x.dim(), y.dim());
    // unknown M[r][c] at index r * n + c; one equation per entry of M D_X + D_Y M
    let mut eqs = Matrix::zeros(f, m * n, m * n);
    for r in 0..m {
        for c in 0..n {
            let row = r * n + c;
            for k in 0..n {
                let v = x.d.get(k, c);
                if v != 0 {
                    eqs.set(row, r * n + k, eqs.get(row, r * n + k) ^ v);
                }
            }
            for k in 0..m {
                let v = y.d.get(r, k);
                if v != 0 {
                    eqs.set(row, k * n + c, eqs.get(row, k * n + c) ^ v);
                }
            }
        }
    }
    Ok(eqs
        .kernel()
        .into_iter()
        .map(|v| {
            let rows: Vec<Vector> = v.chunks(n.max(1)).map(|c| c.to_vec()).collect();
            if n == 0 {
                Matrix::zeros(f, m, 0)
            } else {
                Matrix::from_rows(f, n, &rows)
            }
        })
        .collect())
}

pub fn random_morphism<R: Rng>(x: &Ver4Object, y: &Ver4Object, rng: &mut R) -> Result<Ver4Morphism> {
    let f = *x.field();
    let basis = hom_space(x, y)?;
    let mut m = Matrix::zeros(f, y.dim(), x.dim());
    for b in &basis {
        let c = rng.gen_range(0..f.order());
        for r in 0..y.dim() {
            for col in 0..x.dim() {
                m.set(r, col, m.get(r, col) ^ f.mul(c, b.get(r, col)));
            }
        }
    }
    Ver4Morphism::new(x.clone(), y.clone(), m)
}

/// `X (x) Y -> Y (x) X`, `v (x) w -> w (x) v + Dw (x) Dv`.
pub fn braiding(x: &Ver4Object, y: &Ver4Object) -> Result<Ver4Morphism> {
    let source = x.tensor(y)?;
    let target = y.tensor(x)?;
    let f = *x.field();
    let (n, m) = (x.dim(), y.dim());
    let mut swap = Matrix::zeros(f, n * m, n * m);
    for i in 0..n {
        for j in 0..m {
            swap.set(j * n + i, i * m + j, 1);
        }
    }
    let twist = y.d.kron(&x.d).mul(&swap);
    Ver4Morphism::new(source, target, swap.add(&twist))
}

/// `X^v (x) X -> 1`.
pub fn evaluation(x: &Ver4Object) -> Ver4Morphism {
    let f = *x.field();
    let n = x.dim();
    let mut m = Matrix::zeros(f, 1, n * n);
    for i in 0..n {
        m.set(0, i * n + i, 1);
    }
    Ver4Morphism::new(x.dual().tensor(x).unwrap(), Ver4Object::unit(f), m)
        .expect("evaluation commutes with D")
}

/// `1 -> X (x) X^v`.
pub fn coevaluation(x: &Ver4Object) -> Ver4Morphism {
    let f = *x.field();
    let n = x.dim();
    let mut m = Matrix::zeros(f, n * n, 1);
    for i in 0..n {
        m.set(i * n + i, 0, 1);
    }
    Ver4Morphism::new(Ver4Object::unit(f), x.tensor(&x.dual()).unwrap(), m)
        .expect("coevaluation commutes with D")
}

/// `Sym^n X`: the quotient of `X^{(x)n}` by the images of `id - c_i`, where
/// `c_i` braids the factors `i` and `i+1`.
pub fn sym_power(x: &Ver4Object, n: usize) -> Result<(Ver4Object, Ver4Morphism)> {
    let f = *x.field();
    let power = x.tensor_power(n);
    let total = power.dim();
    let mut relations: Vec<Vector> = Vec::new();
    if n >= 2 {
        let c = braiding(x, x)?;
        for i in 0..n - 1 {
            let left = Matrix::identity(f, x.dim().pow(i as u32));
            let right = Matrix::identity(f, x.dim().pow((n - i - 2) as u32));
            let ci = left.kron(c.matrix()).kron(&right);
            let rel = ci.add(&Matrix::identity(f, total));
            relations.extend(rel.columns());
        }
    }
    let sub = Subspace::span(f, total, &relations);
    power.quotient(&sub)
}

/// `alpha^{(x)n}` as a vector of `X^{(x)n}`.
fn tensor_power_vector(v: &[Fe], n: usize, f: &BaseField) -> Vector {
    let mut out = vec![1];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * v.len());
        for &a in &out {
            for &b in v {
                next.push(f.mul(a, b));
            }
        }
        out = next;
    }
    out
}

/// Least `n <= n_max` for which `alpha^n : 1 -> Sym^n X` vanishes.
pub fn check_mn2(alpha: &Ver4Morphism, n_max: usize) -> Result<Option<usize>> {
    let x = alpha.target();
    let f = *x.field();
    if alpha.source().dim() != 1 || alpha.is_zero() {
        return Err(Error::InvalidInput("alpha must be a monomorphism 1 -> X".into()));
    }
    let v = alpha.matrix().column(0);
    for n in 1..=n_max {
        let (_, proj) = sym_power(x, n)?;
        let image = proj.matrix().apply(&tensor_power_vector(&v, n, &f));
        if is_zero(&image) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Least `0 < n <= n_max` for which `Sym^n X -> 1` admits a section.
pub fn check_gr(eps: &Ver4Morphism, n_max: usize) -> Result<Option<usize>> {
    let x = eps.source();
    let f = *x.field();
    if eps.target().dim() != 1 || eps.is_zero() {
        return Err(Error::InvalidInput("eps must be a nonzero morphism X -> 1".into()));
    }
    let row = eps.matrix().row(0);
    for n in 1..=n_max {
        let (sym, proj) = sym_power(x, n)?;
        let eps_n = tensor_power_vector(&row, n, &f);
        // eps^{(x)n} kills the relations, so it is determined on a section of proj
        let section: Vec<Vector> = (0..sym.dim())
            .map(|k| {
                proj.matrix()
                    .solve(&unit_vec(sym.dim(), k))
                    .expect("projection is surjective")
            })
            .collect();
        let induced: Vector = section
            .iter()
            .map(|s| s.iter().zip(&eps_n).fold(0, |acc, (a, b)| acc ^ f.mul(*a, *b)))
            .collect();
        let split = sym.h0().basis().iter().any(|h| {
            h.iter().zip(&induced).fold(0, |acc, (a, b)| acc ^ f.mul(*a, *b)) != 0
        });
        if split {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf2() -> BaseField {
        BaseField::gf2()
    }

    #[test]
    fn unit_tensor_unit() {
        let one = Ver4Object::unit(gf2());
        let t = one.tensor(&one).unwrap();
        assert_eq!(t, one);
        let p = Ver4Object::projective(gf2());
        assert_eq!(p.tensor(&one).unwrap(), p);
    }

    #[test]
    fn p_tensor_p_has_rank_two() {
        let p = Ver4Object::projective(gf2());
        let pp = p.tensor(&p).unwrap();
        assert_eq!(pp.dim(), 4);
        assert_eq!(pp.d().rank(), 2);
        // basis order v1v1, v1v2, v2v1, v2v2
        assert_eq!(pp.d().column(0), vec![0, 1, 1, 0]);
        assert_eq!(pp.d().column(1), vec![0, 0, 0, 1]);
        assert_eq!(pp.d().column(2), vec![0, 0, 0, 1]);
        assert_eq!(pp.decompose(), (0, 2));
    }

    #[test]
    fn braiding_on_p_tensor_p() {
        let p = Ver4Object::projective(gf2());
        let c = braiding(&p, &p).unwrap();
        // v1 (x) v1 -> v1 (x) v1 + v2 (x) v2
        assert_eq!(c.matrix().column(0), vec![1, 0, 0, 1]);
        let one = Ver4Object::unit(gf2());
        assert_eq!(braiding(&one, &one).unwrap().matrix(), &Matrix::identity(gf2(), 1));
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = Ver4Object::unit(gf2());
        let b = Ver4Object::unit(BaseField::gf4());
        assert_eq!(a.tensor(&b), Err(Error::FieldMismatch));
        assert!(braiding(&a, &b).is_err());
    }

    #[test]
    fn h0_and_decompose() {
        let f = gf2();
        assert_eq!(Ver4Object::unit(f).h0().dim(), 1);
        let p = Ver4Object::projective(f);
        assert_eq!(p.h0(), Subspace::span(f, 2, &[vec![0, 1]]));
        assert_eq!(p.direct_sum(&p).unwrap().h0().dim(), 2);
        assert_eq!(p.decompose(), (0, 1));
        assert_eq!(Ver4Object::from_counts(f, 1, 1).decompose(), (1, 1));
    }

    #[test]
    fn duals() {
        let f = gf2();
        assert_eq!(Ver4Object::unit(f).dual(), Ver4Object::unit(f));
        assert!(Ver4Object::projective(f).dual().is_isomorphic(&Ver4Object::projective(f)));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in 0..=6 {
            let x = Ver4Object::random(f, dim, &mut rng);
            assert_eq!(x.dual().dual(), x);
            let ev = evaluation(&x);
            let coev = coevaluation(&x);
            // (id (x) ev) o (coev (x) id) = id on X
            let id = Ver4Morphism::identity(&x);
            let snake = id.tensor(&ev).unwrap().matrix().mul(coev.tensor(&id).unwrap().matrix());
            assert_eq!(snake, Matrix::identity(f, dim));
        }
    }

    #[test]
    fn symmetric_powers_of_p() {
        let f = gf2();
        let p = Ver4Object::projective(f);
        assert_eq!(sym_power(&p, 2).unwrap().0.dim(), 2);
        assert_eq!(sym_power(&p, 3).unwrap().0.dim(), 2);
        let one = Ver4Object::unit(f);
        for n in 0..4 {
            assert_eq!(sym_power(&one, n).unwrap().0.dim(), 1);
        }
    }

    #[test]
    fn mn2_examples() {
        let f = gf2();
        let p = Ver4Object::projective(f);
        let one = Ver4Object::unit(f);
        let socle = Matrix::from_columns(f, 2, &[vec![0, 1]]);
        let alpha = Ver4Morphism::new(one.clone(), p.clone(), socle).unwrap();
        assert_eq!(check_mn2(&alpha, 5).unwrap(), Some(2));

        let x = Ver4Object::from_counts(f, 1, 1);
        let split = Ver4Morphism::new(one.clone(), x.clone(), Matrix::from_columns(f, 3, &[vec![1, 0, 0]])).unwrap();
        assert_eq!(check_mn2(&split, 5).unwrap(), None);

        // socle of P inside P (+) 1
        let y = p.direct_sum(&one).unwrap();
        let a = Ver4Morphism::new(one, y, Matrix::from_columns(f, 3, &[vec![0, 1, 0]])).unwrap();
        assert_eq!(check_mn2(&a, 5).unwrap(), Some(2));
    }

    #[test]
    fn gr_examples() {
        let f = gf2();
        let p = Ver4Object::projective(f);
        let one = Ver4Object::unit(f);
        let eps = Ver4Morphism::new(p.clone(), one.clone(), Matrix::from_rows(f, 2, &[vec![1, 0]])).unwrap();
        assert_eq!(check_gr(&eps, 4).unwrap(), Some(2));
        assert_eq!(check_gr(&Ver4Morphism::identity(&one), 4).unwrap(), Some(1));
        let y = p.direct_sum(&one).unwrap();
        let e = Ver4Morphism::new(y, one, Matrix::from_rows(f, 3, &[vec![0, 0, 1]])).unwrap();
        assert_eq!(check_gr(&e, 4).unwrap(), Some(1));
    }

    #[test]
    fn rejects_non_square_zero() {
        let d = Matrix::identity(gf2(), 2);
        assert!(Ver4Object::new(d).is_err());
    }
}
