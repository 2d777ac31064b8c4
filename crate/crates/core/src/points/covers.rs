use crate::dalgebra::TableAlgebra;
use crate::error::Result;
use crate::linalg::{Matrix, Subspace, Vector};
use crate::spectra::{ideal_generated, is_unit, localize, spec, vanishing_set, DIdeal};

use super::homs::{algebra_generators, generates_unit_ideal, hom_morphisms};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    /// `sum I_i = A`.
    pub sum_is_unit: bool,
    /// The vanishing sets have empty intersection.
    pub no_common_point: bool,
    /// Every morphism to a residue field is defined on some `Φ^{I_i}`.
    pub simple_criterion: bool,
}

impl CoverReport {
    pub fn is_cover(&self) -> bool {
        self.sum_is_unit
    }

    pub fn criteria_agree(&self) -> bool {
        self.sum_is_unit == self.no_common_point && self.sum_is_unit == self.simple_criterion
    }
}

pub fn cover_check(a: &TableAlgebra, ideals: &[DIdeal]) -> Result<CoverReport> {
    let f = *a.field();
    let sum = ideals.iter().fold(Subspace::zero(a.dim()), |acc, i| acc.sum(&f, &i.space));
    let sum_is_unit = ideal_generated(a, sum.basis()).is_unit_ideal();

    let points = spec(a)?;
    let no_common_point = (0..points.len()).all(|p| ideals.iter().any(|i| !vanishing_set(a, &points, &i.space).contains(&p)));

    let gens = algebra_generators(a);
    let mut simple_criterion = true;
    for p in &points {
        let (residue, _) = a.quotient(&p.prime);
        for phi in hom_morphisms(a, &gens, &residue)? {
            let covered = ideals.iter().any(|i| {
                let images: Vec<Vector> = i.space.basis().iter().map(|v| phi.apply(v)).collect();
                generates_unit_ideal(&residue, &images)
            });
            simple_criterion &= covered;
        }
    }
    Ok(CoverReport { sum_is_unit, no_common_point, simple_criterion })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub degree_zero: bool,
    /// `g_i` with `sum g_i f_i = 1`.
    pub partition: Option<Vec<Vector>>,
    /// Each `A -> A_{f_i}` is a morphism inverting `f_i`.
    pub localizations: Vec<bool>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.degree_zero && self.partition.is_some() && self.localizations.iter().all(|&ok| ok)
    }
}

pub fn partition_cover_check(a: &TableAlgebra, fs: &[Vector]) -> PartitionReport {
    let field = *a.field();
    let n = a.dim();
    let degree_zero = fs.iter().all(|f| a.in_degree_zero(f));
    let cols: Vec<Vector> = fs.iter().flat_map(|f| (0..n).map(move |j| a.mul(&a.basis(j), f))).collect();
    let partition = Matrix::from_columns(field, n, &cols)
        .solve(&a.one())
        .map(|coef| coef.chunks(n).map(|c| c.to_vec()).collect::<Vec<Vector>>());
    let localizations = fs
        .iter()
        .map(|f| match localize(a, f) {
            Ok(l) => {
                let image = l.morphism.apply(f);
                l.morphism.check().passed() && (l.algebra.is_zero_algebra() || is_unit(&l.algebra, &image).is_some())
            }
            Err(_) => false,
        })
        .collect();
    PartitionReport { degree_zero, partition, localizations }
}
