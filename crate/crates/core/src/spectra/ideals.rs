use std::collections::BTreeSet;

use crate::dalgebra::{ideal_closure, TableAlgebra, TableMorphism};
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, Matrix, Subspace, Vector};

/// A `D`-stable two-sided ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DIdeal {
    pub ambient: TableAlgebra,
    pub space: Subspace,
}

impl DIdeal {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, a: &[crate::Fe]) -> bool {
        self.space.contains(self.ambient.field(), a)
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.space.dim() == self.ambient.dim()
    }
}

pub fn ideal_generated(a: &TableAlgebra, gens: &[Vector]) -> DIdeal {
    DIdeal { ambient: a.clone(), space: ideal_closure(a, gens) }
}

/// Whether `space` is a `D`-stable two-sided ideal.
pub fn is_ideal(a: &TableAlgebra, space: &Subspace) -> bool {
    let f = a.field();
    space.basis().iter().all(|v| {
        space.contains(f, &a.apply_d(v))
            && (0..a.dim()).all(|i| {
                let e = a.basis(i);
                space.contains(f, &a.mul(&e, v)) && space.contains(f, &a.mul(v, &e))
            })
    })
}

/// `I^0 = I ∩ ker D`, an ideal of the commutative algebra `A^0` (as a subspace of `A`).
pub fn h0_part(ideal: &DIdeal) -> Subspace {
    let a = &ideal.ambient;
    ideal.space.intersect(a.field(), &a.degree_zero())
}

/// The nilpotent elements.
///
/// In any D-algebra `(a+b)^4 = a^4 + b^4`, so `a -> a^(4^k)` is additive and
/// semilinear; its kernel for `4^k > dim A` is the nil set, computed from the
/// images of the basis and pulled back through the inverse Frobenius.
pub fn nil_elements(a: &TableAlgebra) -> Result<Subspace> {
    let f = *a.field();
    let n = a.dim();
    let mut k = 0u32;
    while 4u64.pow(k) <= n as u64 {
        k += 1;
    }
    let power = |v: &[crate::Fe]| {
        let mut x = v.to_vec();
        for _ in 0..2 * k {
            x = a.mul(&x, &x);
        }
        x
    };
    let cols: Vec<Vector> = (0..n).map(|i| power(&a.basis(i))).collect();
    let m = Matrix::from_columns(f, n, &cols);
    let unroot = |v: Vector| -> Vector {
        v.into_iter()
            .map(|mut c| {
                for _ in 0..2 * k {
                    c = f.sqrt(c);
                }
                c
            })
            .collect()
    };
    let kernel: Vec<Vector> = m.kernel().into_iter().map(unroot).collect();
    let nil = Subspace::span(f, n, &kernel);
    if !is_ideal(a, &nil) {
        return Err(Error::Inconclusive("nilpotent elements do not form a D-stable ideal".into()));
    }
    Ok(nil)
}

/// Every `D`-stable two-sided ideal, by adjoining one generator at a time.
/// Exponential; intended for algebras of dimension at most about 6 over GF(2).
pub fn all_ideals(a: &TableAlgebra) -> Vec<DIdeal> {
    let f = *a.field();
    let elements = all_vectors(&f, a.dim());
    let mut seen: BTreeSet<Subspace> = BTreeSet::new();
    let zero = Subspace::zero(a.dim());
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(i) = frontier.pop() {
        for v in &elements {
            if i.contains(&f, v) {
                continue;
            }
            let mut gens = i.basis().to_vec();
            gens.push(v.clone());
            let j = ideal_closure(a, &gens);
            if seen.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    seen.into_iter().map(|space| DIdeal { ambient: a.clone(), space }).collect()
}

/// `A_0 = A / (ideal generated by the image of D)`, the largest quotient with `D = 0`.
pub fn classical_quotient(a: &TableAlgebra) -> (TableAlgebra, TableMorphism) {
    let image: Vec<Vector> = a.d_matrix().columns();
    let ideal = ideal_closure(a, &image);
    let (q, proj) = a.quotient(&ideal);
    let m = TableMorphism::new(a.clone(), q.clone(), proj).expect("projection has the right shape");
    (q, m)
}
