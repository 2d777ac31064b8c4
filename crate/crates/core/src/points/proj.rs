use std::collections::{BTreeMap, BTreeSet};

use crate::cat::Ver4Object;
use crate::dalgebra::TableAlgebra;
use crate::dmodules::{is_invertible, DModule};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::spectra::is_local;

use super::homs::t_points;
use super::PointSet;

/// Largest test algebra handled by the rank-one classification.
pub const CLASSIFY_MAX_DIM: usize = 8;
/// Largest test algebra handled by enumerating all quotients of `B (x) P`.
pub const ENUMERATE_MAX_DIM: usize = 4;

/// The regular module with `D` twisted to `D(b̄) = (Db + b c)‾`, if that is a module.
pub fn rank_one_structure(b: &TableAlgebra, c: &[crate::Fe]) -> Option<DModule> {
    let d = b.d_matrix().add(&b.right_mul(c));
    let action = (0..b.dim()).map(|i| b.left_mul(&b.basis(i))).collect();
    let m = DModule::new(b.clone(), d, action).ok()?;
    m.check_axioms().all_pass().then_some(m)
}

/// `B (x) P -> L`: `b (x) v1 -> b x`, `b (x) v2 -> b D_L(x)`.
fn surjection(line: &DModule, x: &[crate::Fe]) -> Matrix {
    let b = line.algebra();
    let dx = line.apply_d(x);
    let cols: Vec<Vector> = (0..b.dim())
        .flat_map(|i| {
            let e = b.basis(i);
            [b.mul(&e, x), b.mul(&e, &dx)]
        })
        .collect();
    Matrix::from_columns(*b.field(), b.dim(), &cols)
}

/// The point of `P_P(B)` given by the twisted line `c` and the image `x` of
/// `1 (x) v1`, recorded canonically by the kernel of the surjection.
/// `None` when the map is not onto.
pub fn proj_point(b: &TableAlgebra, c: &[crate::Fe], x: &[crate::Fe]) -> Result<Option<Vec<Vector>>> {
    let line = rank_one_structure(b, c).ok_or_else(|| Error::InvalidInput("not a D-structure".into()))?;
    Ok(kernel_if_onto(&line, x))
}

fn kernel_if_onto(line: &DModule, x: &[crate::Fe]) -> Option<Vec<Vector>> {
    let f = *line.algebra().field();
    let s = surjection(line, x);
    (s.rank() == line.dim()).then(|| Subspace::span(f, s.cols(), &s.kernel()).basis().to_vec())
}

/// Every class from a free rank-one line, with the first `(c, x)` found for it.
pub fn classify_rank_one(b: &TableAlgebra) -> Result<BTreeMap<Vec<Vector>, (Vector, Vector)>> {
    if b.dim() > CLASSIFY_MAX_DIM {
        return Err(Error::OutOfRange(format!("dimension {} > {CLASSIFY_MAX_DIM}", b.dim())));
    }
    let elems = b.elements();
    let mut classes = BTreeMap::new();
    for c in &elems {
        let Some(line) = rank_one_structure(b, c) else { continue };
        for x in &elems {
            if let Some(k) = kernel_if_onto(&line, x) {
                classes.entry(k).or_insert_with(|| (c.clone(), x.clone()));
            }
        }
    }
    Ok(classes)
}

/// `P_P(B)` as kernels of surjections `B (x) P -> L` with `L` invertible, found
/// by listing every submodule of `B (x) P`.
pub fn proj_points_enumerated(b: &TableAlgebra) -> Result<PointSet> {
    if b.dim() > ENUMERATE_MAX_DIM {
        return Err(Error::OutOfRange(format!("dimension {} > {ENUMERATE_MAX_DIM}", b.dim())));
    }
    let free = DModule::free_on(b, &Ver4Object::projective(*b.field()));
    let mut points = Vec::new();
    for k in submodules(&free) {
        let (q, _) = free.quotient(&k)?;
        if is_invertible(&q)?.is_some() {
            points.push(k.basis().to_vec());
        }
    }
    Ok(PointSet::new("P_P", b, points))
}

fn submodules(m: &DModule) -> Vec<Subspace> {
    let f = *m.algebra().field();
    let mut seen: BTreeSet<Vec<Vector>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue = vec![Subspace::zero(m.dim())];
    seen.insert(Vec::new());
    while let Some(s) = queue.pop() {
        let reps = Subspace::span(f, m.dim(), &complement_basis(&s, m.dim())).elements(&f);
        for v in reps {
            let mut gens = s.basis().to_vec();
            gens.push(v);
            let t = m.generated(&gens);
            if seen.insert(t.basis().to_vec()) {
                queue.push(t.clone());
            }
        }
        out.push(s);
    }
    out
}

fn complement_basis(s: &Subspace, n: usize) -> Vec<Vector> {
    s.complement_indices().into_iter().map(|i| crate::linalg::unit_vec(n, i)).collect()
}

/// `P_P(B)` by brute force: the rank-one classification for local `B`,
/// otherwise the full enumeration of quotients of `B (x) P`.
pub fn proj_points_bruteforce(b: &TableAlgebra) -> Result<PointSet> {
    if b.dim() <= CLASSIFY_MAX_DIM && is_local(b)?.is_some() {
        let points = classify_rank_one(b)?.into_keys().collect();
        return Ok(PointSet::new("P_P", b, points));
    }
    if b.dim() <= ENUMERATE_MAX_DIM {
        return proj_points_enumerated(b);
    }
    Err(Error::OutOfRange(format!("non-local algebra of dimension {} > {ENUMERATE_MAX_DIM}", b.dim())))
}

/// A class of `P_P(B)` rewritten with `x = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedClass {
    pub class: Vec<Vector>,
    /// `(c, x)` presenting the class, when it comes from a free line.
    pub witness: Option<(Vector, Vector)>,
    /// `c + x^-1 Dx (1 + Dc)`, when `x` is a unit.
    pub normalized: Option<Vector>,
    /// The normalized element presents the same class.
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    /// `a` with its class `[B (x) P -> L^a]`.
    pub bijection: Vec<(Vector, Vec<Vector>)>,
    pub classes: usize,
    pub injective: bool,
    pub surjective: bool,
    pub normalized: Vec<NormalizedClass>,
}

impl ComparisonReport {
    pub fn holds(&self) -> bool {
        self.injective && self.surjective && self.normalized.iter().all(|n| n.agrees)
    }
}

/// Compares `Φ_T(B)` with the brute-force `P_P(B)` along `a -> [L^a, x = 1]`.
pub fn compare_phit_projp(b: &TableAlgebra) -> Result<ComparisonReport> {
    let classes = proj_points_bruteforce(b)?;
    let witnesses = classify_rank_one(b)?;
    let mut bijection = Vec::new();
    for p in t_points(b).points {
        let a = p.into_iter().next().expect("one element per point");
        let class = proj_point(b, &a, &b.one())?.expect("x = 1 is onto");
        bijection.push((a, class));
    }
    let images: BTreeSet<&Vec<Vector>> = bijection.iter().map(|(_, k)| k).collect();
    let injective = images.len() == bijection.len();
    let surjective = classes.points.iter().all(|k| images.contains(k)) && images.iter().all(|k| classes.contains(k));

    let normalized = classes
        .points
        .iter()
        .map(|class| {
            let witness = witnesses.get(class).cloned();
            let normalized = witness.as_ref().and_then(|(c, x)| {
                let inv = b.inverse(x)?;
                let tail = b.add(&b.one(), &b.apply_d(c));
                Some(b.add(c, &b.mul(&b.mul(&inv, &b.apply_d(x)), &tail)))
            });
            let agrees = match &normalized {
                Some(a) => matches!(proj_point(b, a, &b.one()), Ok(Some(k)) if &k == class),
                None => false,
            };
            NormalizedClass { class: class.clone(), witness, normalized, agrees }
        })
        .collect();
    Ok(ComparisonReport { bijection, classes: classes.len(), injective, surjective, normalized })
}
