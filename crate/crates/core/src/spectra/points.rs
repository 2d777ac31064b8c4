use std::collections::BTreeSet;

use crate::dalgebra::{ideal_closure, TableAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{is_zero, Matrix, Subspace, Vector};

use super::ideals::{all_ideals, h0_part, nil_elements, DIdeal};

/// A point of `Spec A`, represented through the matching prime of `A^0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePoint {
    /// Primitive idempotent of `A^0` cutting out the local component.
    pub idempotent: Vector,
    /// The prime of `A^0`, as a subspace of `A` lying in `ker D`.
    pub prime0: Subspace,
    /// The induced prime of `A`: elements whose image in `A e` is nilpotent.
    pub prime: Subspace,
    /// Degree of the residue field over the base field.
    pub residue_degree: usize,
}

/// Primitive idempotents of the commutative algebra `A^0`, in a canonical order.
///
/// `x -> x^q` is linear on `A^0`; its fixed space is spanned by the primitive
/// idempotents and acts by scalars on each local factor, so splitting `1` by
/// `1 - (s - c)^(q-1)` over a basis `s` of the fixed space and `c` in `GF(q)`
/// separates all factors.
pub fn primitive_idempotents(a: &TableAlgebra) -> Vec<Vector> {
    if a.is_zero_algebra() {
        return Vec::new();
    }
    let f = *a.field();
    let q = f.order();
    let zero = a.degree_zero();
    let n = a.dim();
    let cols: Vec<Vector> = zero.basis().iter().map(|z| a.add(&a.pow(z, q), z)).collect();
    let fixed: Vec<Vector> = Matrix::from_columns(f, n, &cols)
        .kernel()
        .into_iter()
        .map(|c| a.combine(&c, zero.basis()))
        .collect();
    let mut idems = vec![a.one()];
    for s in &fixed {
        let mut next = Vec::new();
        for e in &idems {
            for c in f.elements() {
                let shifted = a.add(s, &a.scale(c, &a.one()));
                let part = a.mul(e, &a.add(&a.one(), &a.pow(&shifted, q - 1)));
                if !is_zero(&part) {
                    next.push(part);
                }
            }
        }
        idems = next;
    }
    idems.sort();
    idems
}

pub fn spec(a: &TableAlgebra) -> Result<Vec<PrimePoint>> {
    let f = *a.field();
    let nil = nil_elements(a)?;
    let zero = a.degree_zero();
    let mut points = Vec::new();
    for e in primitive_idempotents(a) {
        let prime = Subspace::preimage(&f, &a.left_mul(&e), &nil);
        let prime0 = prime.intersect(&f, &zero);
        let component0 = a.left_mul(&e).mul(&Matrix::from_columns(f, a.dim(), zero.basis())).image();
        let residue_degree = component0.dim() - component0.intersect(&f, &nil).dim();
        points.push(PrimePoint { idempotent: e, prime0, prime, residue_degree });
    }
    Ok(points)
}

/// `V(I)`: indices of the points whose prime contains `I`.
pub fn vanishing_set(a: &TableAlgebra, points: &[PrimePoint], ideal: &Subspace) -> BTreeSet<usize> {
    let f = a.field();
    points.iter().enumerate().filter(|(_, p)| p.prime.contains_subspace(f, ideal)).map(|(i, _)| i).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub ideals_checked: usize,
    /// Ideals with `V(I) != V(A I^0)`.
    pub failures: Vec<Subspace>,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check `V(I) = V(A I^0)` over `sample`, or over every ideal when no sample
/// is given and `dim A <= max_dim`.
pub fn check_hypothesis(a: &TableAlgebra, sample: Option<Vec<DIdeal>>, max_dim: usize) -> Result<HypothesisReport> {
    let ideals = match sample {
        Some(s) => s,
        None if a.dim() <= max_dim => all_ideals(a),
        None => {
            return Err(Error::OutOfRange(format!("ideal enumeration capped at dimension {max_dim}")));
        }
    };
    let points = spec(a)?;
    let mut failures = Vec::new();
    for i in &ideals {
        let extended = ideal_closure(a, h0_part(i).basis());
        if vanishing_set(a, &points, &i.space) != vanishing_set(a, &points, &extended) {
            failures.push(i.space.clone());
        }
    }
    Ok(HypothesisReport { ideals_checked: ideals.len(), failures })
}
