use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dalgebra::TableAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

/// How group elements of a test algebra compose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupLaw {
    /// Single elements under multiplication.
    Multiplicative,
    /// Single elements under addition.
    Additive,
    /// Pairs `(a, b)` standing for `1 (x) v1 -> a (x) v1 + b (x) v2` on `B (x) P`,
    /// composed as endomorphisms: `g h` applies `h` first.
    Transformations,
}

/// A finite group of points `G(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPointSet {
    pub tag: String,
    pub target: TableAlgebra,
    pub law: GroupLaw,
    pub elements: Vec<Vec<Vector>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupReport {
    pub closure: bool,
    pub associativity: bool,
    pub identity: bool,
    pub inverses: bool,
    /// Whether the checks ran over all tuples rather than a sample.
    pub exhaustive: bool,
}

impl GroupReport {
    pub fn passed(&self) -> bool {
        self.closure && self.associativity && self.identity && self.inverses
    }
}

/// Groups up to this order are checked on all triples; larger ones are sampled.
pub const EXHAUSTIVE_TRIPLES: usize = 256;
const SAMPLES: usize = 20_000;

/// The endomorphism of `B (x) P` sending `1 (x) v1` to `a (x) v1 + b (x) v2`,
/// in the basis `e_i (x) v_j` at `2 i + j`.
pub fn transformation_matrix(alg: &TableAlgebra, a: &[crate::Fe], b: &[crate::Fe]) -> Matrix {
    let (da, db) = (alg.apply_d(a), alg.apply_d(b));
    let v2 = alg.add(a, &db);
    let mut cols = Vec::with_capacity(2 * alg.dim());
    for i in 0..alg.dim() {
        let e = alg.basis(i);
        cols.push(interleave(&alg.mul(&e, a), &alg.mul(&e, b)));
        cols.push(interleave(&alg.mul(&e, &da), &alg.mul(&e, &v2)));
    }
    Matrix::from_columns(*alg.field(), 2 * alg.dim(), &cols)
}

fn interleave(p: &[crate::Fe], q: &[crate::Fe]) -> Vector {
    p.iter().zip(q).flat_map(|(&x, &y)| [x, y]).collect()
}

/// Reads `(a, b)` back from the image of `1 (x) v1`.
fn read_pair(alg: &TableAlgebra, m: &Matrix) -> Vec<Vector> {
    let one: Vector = interleave(&alg.one(), &alg.zero());
    let img = m.apply(&one);
    vec![img.iter().step_by(2).copied().collect(), img.iter().skip(1).step_by(2).copied().collect()]
}

impl GroupPointSet {
    pub fn new(tag: &str, target: &TableAlgebra, law: GroupLaw, mut elements: Vec<Vec<Vector>>) -> Self {
        elements.sort();
        elements.dedup();
        GroupPointSet { tag: tag.to_string(), target: target.clone(), law, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &[Vector]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(g)).is_ok()
    }

    pub fn identity(&self) -> Vec<Vector> {
        let b = &self.target;
        match self.law {
            GroupLaw::Multiplicative => vec![b.one()],
            GroupLaw::Additive => vec![b.zero()],
            GroupLaw::Transformations => vec![b.one(), b.zero()],
        }
    }

    pub fn op(&self, g: &[Vector], h: &[Vector]) -> Vec<Vector> {
        let b = &self.target;
        match self.law {
            GroupLaw::Multiplicative => vec![b.mul(&g[0], &h[0])],
            GroupLaw::Additive => vec![b.add(&g[0], &h[0])],
            GroupLaw::Transformations => {
                let m = transformation_matrix(b, &g[0], &g[1]).mul(&transformation_matrix(b, &h[0], &h[1]));
                read_pair(b, &m)
            }
        }
    }

    pub fn inverse(&self, g: &[Vector]) -> Option<Vec<Vector>> {
        let b = &self.target;
        match self.law {
            GroupLaw::Multiplicative => b.inverse(&g[0]).map(|x| vec![x]),
            // characteristic two: every element is its own negative
            GroupLaw::Additive => Some(g.to_vec()),
            GroupLaw::Transformations => {
                let inv = transformation_matrix(b, &g[0], &g[1]).inverse()?;
                Some(read_pair(b, &inv))
            }
        }
    }

    pub fn conjugate(&self, g: &[Vector], h: &[Vector]) -> Result<Vec<Vector>> {
        let gi = self.inverse(g).ok_or(Error::NotAUnit)?;
        Ok(self.op(&self.op(g, h), &gi))
    }

    fn index(&self, g: &[Vector]) -> Option<usize> {
        self.elements.binary_search_by(|e| e.as_slice().cmp(g)).ok()
    }

    /// Finite group axioms; exhaustive on a multiplication table for small
    /// groups, otherwise on seeded samples.
    pub fn check(&self, seed: u64) -> GroupReport {
        let n = self.len();
        if n == 0 {
            return GroupReport::default();
        }
        let el = &self.elements;
        let e = self.identity();
        let identity = self.contains(&e) && el.iter().all(|g| self.op(&e, g) == *g && self.op(g, &e) == *g);
        let inverses = el.iter().all(|g| match self.inverse(g) {
            Some(gi) => self.contains(&gi) && self.op(g, &gi) == e && self.op(&gi, g) == e,
            None => false,
        });
        if n <= EXHAUSTIVE_TRIPLES {
            let table: Vec<Vec<Option<usize>>> =
                (0..n).map(|i| (0..n).map(|j| self.index(&self.op(&el[i], &el[j]))).collect()).collect();
            let closure = table.iter().flatten().all(Option::is_some);
            let associativity = closure
                && (0..n).all(|i| {
                    (0..n).all(|j| (0..n).all(|k| table[table[i][j].unwrap()][k] == table[i][table[j][k].unwrap()]))
                });
            return GroupReport { closure, associativity, identity, inverses, exhaustive: true };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let closure = (0..SAMPLES).all(|_| {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            self.contains(&self.op(&el[i], &el[j]))
        });
        let associativity = (0..SAMPLES / 10).all(|_| {
            let (g, h, k) = (&el[rng.gen_range(0..n)], &el[rng.gen_range(0..n)], &el[rng.gen_range(0..n)]);
            self.op(&self.op(g, h), k) == self.op(g, &self.op(h, k))
        });
        GroupReport { closure, associativity, identity, inverses, exhaustive: false }
    }

    /// Right cosets `H g` of a subgroup, as sorted blocks.
    pub fn cosets_of(&self, sub: &GroupPointSet) -> Vec<BTreeSet<Vec<Vector>>> {
        let mut seen: BTreeSet<Vec<Vector>> = BTreeSet::new();
        let mut out = Vec::new();
        for g in &self.elements {
            if seen.contains(g) {
                continue;
            }
            let coset: BTreeSet<Vec<Vector>> = sub.elements.iter().map(|h| self.op(h, g)).collect();
            seen.extend(coset.iter().cloned());
            out.push(coset);
        }
        out
    }
}
