use crate::dalgebra::{GeneratedMorphism, PbwAlgebra, PresentedMorphism, TableAlgebra, TableMorphism};
use crate::error::{Error, Result};
use crate::linalg::{Subspace, Vector};

use super::PointSet;

/// The source of a representable functor.
#[derive(Clone, Debug)]
pub enum Source {
    /// A finite algebra with a chosen set of algebra generators.
    Table { algebra: TableAlgebra, generators: Vec<Vector> },
    Presented(PbwAlgebra),
}

impl Source {
    /// A finite algebra with the generators picked by [`algebra_generators`].
    pub fn table(algebra: &TableAlgebra) -> Self {
        Source::Table { algebra: algebra.clone(), generators: algebra_generators(algebra) }
    }
}

/// Greedy generating set: basis vectors not yet in the `D`-stable subalgebra
/// generated by the earlier choices.
pub fn algebra_generators(a: &TableAlgebra) -> Vec<Vector> {
    let f = *a.field();
    let mut gens: Vec<Vector> = Vec::new();
    let mut sub = subalgebra(a, &gens);
    for i in 0..a.dim() {
        let b = a.basis(i);
        if !sub.contains(&f, &b) {
            gens.push(b);
            sub = subalgebra(a, &gens);
        }
    }
    gens
}

fn subalgebra(a: &TableAlgebra, gens: &[Vector]) -> Subspace {
    let f = *a.field();
    let mut letters: Vec<Vector> = gens.to_vec();
    letters.extend(gens.iter().map(|g| a.apply_d(g)));
    let mut sub = Subspace::zero(a.dim());
    let mut frontier = vec![a.one()];
    while let Some(w) = frontier.pop() {
        if sub.contains(&f, &w) {
            continue;
        }
        sub = sub.sum(&f, &Subspace::span(f, a.dim(), std::slice::from_ref(&w)));
        frontier.extend(letters.iter().map(|g| a.mul(g, &w)));
    }
    sub
}

/// Every morphism from a finite source to `b`, as a linear map.
pub fn hom_morphisms(a: &TableAlgebra, generators: &[Vector], b: &TableAlgebra) -> Result<Vec<TableMorphism>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if !subalgebra(a, generators).contains_subspace(a.field(), &Subspace::full(*a.field(), a.dim())) {
        return Err(Error::InvalidInput("generators do not generate the source".into()));
    }
    let mut out = Vec::new();
    for images in tuples(&b.elements(), generators.len()) {
        let g = GeneratedMorphism::new(a.clone(), b.clone(), generators.to_vec(), images);
        if let Ok(m) = g.to_table_morphism() {
            if m.check().passed() {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// `Φ_A(B)`: morphisms `A -> B`, each recorded by its generator images.
pub fn hom_algebras(a: &Source, b: &TableAlgebra) -> Result<PointSet> {
    let points = match a {
        Source::Table { algebra, generators } => hom_morphisms(algebra, generators, b)?
            .into_iter()
            .map(|m| generators.iter().map(|g| m.apply(g)).collect())
            .collect(),
        Source::Presented(p) => {
            if p.field() != b.field() {
                return Err(Error::FieldMismatch);
            }
            let invariants = b.degree_zero().elements(b.field());
            let mut points = Vec::new();
            for xs in tuples(&b.elements(), p.m()) {
                for zs in tuples(&invariants, p.n()) {
                    let phi = PresentedMorphism::new(p.clone(), b.clone(), xs.clone(), zs.clone());
                    if phi.check().passed() {
                        points.push(xs.iter().chain(&zs).cloned().collect());
                    }
                }
            }
            points
        }
    };
    Ok(PointSet::new("hom", b, points))
}

/// `Φ_T(B) = {a : Da = a^2}`.
pub fn t_points(b: &TableAlgebra) -> PointSet {
    let points = b
        .elements()
        .into_iter()
        .filter(|a| b.apply_d(a) == b.mul(a, a))
        .map(|a| vec![a])
        .collect();
    PointSet::new("T", b, points)
}

/// `Φ_A^I(B)`: morphisms `phi` with `B phi(I) = B`.
pub fn phi_open(a: &TableAlgebra, generators: &[Vector], ideal: &Subspace, b: &TableAlgebra) -> Result<PointSet> {
    let points = hom_morphisms(a, generators, b)?
        .into_iter()
        .filter(|m| {
            let images: Vec<Vector> = ideal.basis().iter().map(|v| m.apply(v)).collect();
            generates_unit_ideal(b, &images)
        })
        .map(|m| generators.iter().map(|g| m.apply(g)).collect())
        .collect();
    Ok(PointSet::new("open", b, points))
}

pub(crate) fn generates_unit_ideal(b: &TableAlgebra, elems: &[Vector]) -> bool {
    crate::spectra::ideal_generated(b, elems).is_unit_ideal()
}

fn tuples(elems: &[Vector], r: usize) -> Vec<Vec<Vector>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|t: Vec<Vector>| {
                elems.iter().map(move |e| {
                    let mut t = t.clone();
                    t.push(e.clone());
                    t
                })
            })
            .collect();
    }
    out
}
