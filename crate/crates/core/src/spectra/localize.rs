use crate::dalgebra::{TableAlgebra, TableMorphism};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};

use super::ideals::nil_elements;
use super::points::{primitive_idempotents, PrimePoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationResult {
    pub algebra: TableAlgebra,
    /// The structure map `A -> A_f`, `a -> a e`.
    pub morphism: TableMorphism,
    /// `A_f` as the subspace `A e` of `A`.
    pub inclusion: Matrix,
    pub idempotent: Vector,
}

/// The corner `A e` for a `D`-invariant idempotent `e` of `A^0`.
fn corner(a: &TableAlgebra, e: &[crate::Fe]) -> Result<LocalizationResult> {
    let f = *a.field();
    let image = a.left_mul(e).image();
    let (algebra, inclusion) = a.restrict(&image, e)?;
    let cols: Vec<Vector> = (0..a.dim())
        .map(|i| image.coordinates(&f, &a.mul(&a.basis(i), e)).expect("a e lies in A e"))
        .collect();
    let proj = Matrix::from_columns(f, image.dim(), &cols);
    let morphism = TableMorphism::new(a.clone(), algebra.clone(), proj)?;
    Ok(LocalizationResult { algebra, morphism, inclusion, idempotent: e.to_vec() })
}

/// `A_f` for `f` in `A^0`.
///
/// `f` is central, so multiplication by `f` splits `A` as stable image plus
/// stable kernel (Fitting); the component of `1` in the stable image is an
/// idempotent `e`, and `A_f = A e`.
pub fn localize(a: &TableAlgebra, f: &[crate::Fe]) -> Result<LocalizationResult> {
    if !a.in_degree_zero(f) {
        return Err(Error::NotDegreeZero);
    }
    let field = *a.field();
    let n = a.dim();
    let stable = a.left_mul(f).pow(n as u32);
    let image = stable.image();
    let kernel = Subspace::span(field, n, &stable.kernel());
    let mut cols = image.basis().to_vec();
    cols.extend(kernel.basis().iter().cloned());
    let coeffs = Matrix::from_columns(field, n, &cols)
        .solve(&a.one())
        .expect("Fitting decomposition spans A");
    let e = a.combine(&coeffs[..image.dim()], image.basis());
    corner(a, &e)
}

/// `A_p = A ⊗_{A^0} A^0_{p^0}`, the local component at `p`.
pub fn localize_at_prime(a: &TableAlgebra, p: &PrimePoint) -> Result<LocalizationResult> {
    corner(a, &p.idempotent)
}

/// Two-sided inverse of `a`, if any.
///
/// `a` is a unit iff `b a + c Da = 1` is solvable; then
/// `b a b + (Da)(Db)(Dc)` is a left inverse.
pub fn is_unit(alg: &TableAlgebra, a: &[crate::Fe]) -> Option<Vector> {
    let f = *alg.field();
    let n = alg.dim();
    let da = alg.apply_d(a);
    let mut cols = alg.right_mul(a).columns();
    cols.extend(alg.right_mul(&da).columns());
    let sol = Matrix::from_columns(f, n, &cols).solve(&alg.one())?;
    let (b, c) = (&sol[..n], &sol[n..]);
    let bab = alg.mul(&alg.mul(b, a), b);
    let tail = alg.mul(&alg.mul(&da, &alg.apply_d(b)), &alg.apply_d(c));
    let inv = alg.add(&bab, &tail);
    debug_assert_eq!(alg.mul(&inv, a), alg.one());
    (alg.mul(a, &inv) == alg.one()).then_some(inv)
}

/// The maximal ideal, if `A` is local.
///
/// `A` is local exactly when `A^0` has a single primitive idempotent; the
/// non-units are then the nilpotent elements. The same ideal is maximal for
/// the underlying ordinary algebra, and `m ∩ A^0` for `A^0`.
pub fn is_local(a: &TableAlgebra) -> Result<Option<Subspace>> {
    if primitive_idempotents(a).len() != 1 {
        return Ok(None);
    }
    nil_elements(a).map(Some)
}
