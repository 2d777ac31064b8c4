//! Commutative algebras in Ver4+: multiplication tables, PBW presentations,
//! morphisms and the standard constructions.

mod constructions;
mod morphism;
mod pbw;
mod table;

pub use constructions::{catalog, dual_numbers, make_o_g, make_t, twisted_cover};
pub use morphism::{
    check_morphism, AlgebraMorphism, GeneratedMorphism, MorphismCheck, MorphismReport, PresentedMorphism,
    TableMorphism,
};
pub use pbw::{Letter, Monomial, PbwAlgebra, PbwElem, Quotient, MAX_CERTIFY_DEGREE};
pub use table::{Axiom, AxiomReport, AxiomResult, TableAlgebra};

use crate::linalg::{Subspace, Vector};

/// The smallest `D`-stable two-sided ideal containing `gens`.
pub fn ideal_closure(a: &TableAlgebra, gens: &[Vector]) -> Subspace {
    let f = *a.field();
    let n = a.dim();
    let mut seeds: Vec<Vector> = gens.to_vec();
    seeds.extend(gens.iter().map(|g| a.apply_d(g)));
    let mut ideal = Subspace::span(f, n, &seeds);
    loop {
        let mut more: Vec<Vector> = ideal.basis().to_vec();
        for v in ideal.basis() {
            more.push(a.apply_d(v));
            for i in 0..n {
                let e = a.basis(i);
                more.push(a.mul(&e, v));
                more.push(a.mul(v, &e));
            }
        }
        let next = Subspace::span(f, n, &more);
        if next.dim() == ideal.dim() {
            return ideal;
        }
        ideal = next;
    }
}
