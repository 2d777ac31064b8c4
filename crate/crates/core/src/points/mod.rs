//! Functors of points on finite test algebras: representable functors and
//! their open subfunctors, covers, and the projective line `P_P`.

mod covers;
mod homs;
mod proj;

pub use covers::{cover_check, partition_cover_check, CoverReport, PartitionReport};
pub use homs::{algebra_generators, hom_algebras, hom_morphisms, phi_open, t_points, Source};
pub use proj::{
    classify_rank_one, compare_phit_projp, proj_point, proj_points_bruteforce, proj_points_enumerated,
    rank_one_structure, ComparisonReport, NormalizedClass, CLASSIFY_MAX_DIM, ENUMERATE_MAX_DIM,
};

use crate::dalgebra::TableAlgebra;
use crate::linalg::Vector;

/// The value of a functor on a test algebra, as sorted canonical representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    pub functor: String,
    pub target: TableAlgebra,
    pub points: Vec<Vec<Vector>>,
}

impl PointSet {
    pub fn new(functor: &str, target: &TableAlgebra, mut points: Vec<Vec<Vector>>) -> Self {
        points.sort();
        points.dedup();
        PointSet { functor: functor.to_string(), target: target.clone(), points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[Vector]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }
}
