use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dalgebra::{dual_numbers, make_t, twisted_cover, GeneratedMorphism, TableAlgebra, TableMorphism};
use crate::error::{Error, Result};
use crate::linalg::{is_zero, Matrix, Vector};
use crate::spectra::nil_elements;

use super::finite::{transformation_matrix, GroupLaw, GroupPointSet};

/// Unit groups up to this order get the `dlog` law checked on all pairs.
pub const SES_EXHAUSTIVE: usize = 512;
const SES_SAMPLES: usize = 20_000;

/// Largest test algebra for which `GL_P` and `H` are enumerated.
pub const GLP_MAX_DIM: usize = 8;

/// `G(B) = (ΩB)^x`.
pub fn g_points(b: &TableAlgebra) -> GroupPointSet {
    let units = b.elements().into_iter().filter(|a| b.inverse(a).is_some()).map(|a| vec![a]).collect();
    GroupPointSet::new("G", b, GroupLaw::Multiplicative, units)
}

/// `N(B) = (B^0)^x`.
pub fn n_points(b: &TableAlgebra) -> GroupPointSet {
    let f = *b.field();
    let units = b
        .degree_zero()
        .elements(&f)
        .into_iter()
        .filter(|a| b.inverse(a).is_some())
        .map(|a| vec![a])
        .collect();
    GroupPointSet::new("N", b, GroupLaw::Multiplicative, units)
}

/// `a^-1 Da`.
pub fn dlog(b: &TableAlgebra, a: &[crate::Fe]) -> Result<Vector> {
    let inv = b.inverse(a).ok_or(Error::NotAUnit)?;
    Ok(b.mul(&inv, &b.apply_d(a)))
}

/// `{c : Dc = 0, c^2 = 0}` under addition.
pub fn alpha2_points(b: &TableAlgebra) -> GroupPointSet {
    let f = *b.field();
    let elems = b
        .degree_zero()
        .elements(&f)
        .into_iter()
        .filter(|c| is_zero(&b.mul(c, c)))
        .map(|c| vec![c])
        .collect();
    GroupPointSet::new("alpha2", b, GroupLaw::Additive, elems)
}

fn check_glp_range(b: &TableAlgebra) -> Result<()> {
    if b.dim() > GLP_MAX_DIM {
        return Err(Error::OutOfRange(format!("dimension {} > {GLP_MAX_DIM}", b.dim())));
    }
    Ok(())
}

/// `GL_P(B)`: pairs `(a, b)` whose endomorphism of `B (x) P` is invertible.
pub fn glp_points(b: &TableAlgebra) -> Result<GroupPointSet> {
    check_glp_range(b)?;
    let elems = b.elements();
    let mut out = Vec::new();
    for a in &elems {
        for c in &elems {
            if transformation_matrix(b, a, c).inverse().is_some() {
                out.push(vec![a.clone(), c.clone()]);
            }
        }
    }
    Ok(GroupPointSet::new("GL_P", b, GroupLaw::Transformations, out))
}

/// Whether the transformation keeps `B (x) v2` inside itself.
pub fn in_transporter(b: &TableAlgebra, g: &[Vector]) -> bool {
    let m = transformation_matrix(b, &g[0], &g[1]);
    (0..b.dim()).all(|i| (0..b.dim()).all(|r| m.get(2 * r, 2 * i + 1) == 0))
}

/// `H(B)`: the transporter of `B (x) v2 ⊂ B (x) P` inside `GL_P(B)`.
pub fn h_points(b: &TableAlgebra) -> Result<GroupPointSet> {
    let gl = glp_points(b)?;
    let elems = gl.elements.into_iter().filter(|g| in_transporter(b, g)).collect();
    Ok(GroupPointSet::new("H", b, GroupLaw::Transformations, elems))
}

/// A rank-two cover `B' = B[u]/(u^2 + 1)`, `Du = u c`, on which `c` becomes a `dlog`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverWitness {
    pub target: Vector,
    pub cover: Option<TableAlgebra>,
    pub axioms: bool,
    pub free_rank_two: bool,
    pub lifts: bool,
}

impl CoverWitness {
    pub fn passed(&self) -> bool {
        self.axioms && self.free_rank_two && self.lifts
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesReport {
    pub homomorphism: bool,
    pub kernel_is_n: bool,
    pub image: Vec<Vector>,
    pub image_is_subgroup: bool,
    pub induced_injective: bool,
    /// One witness per element of `α2(B)` outside the image.
    pub witnesses: Vec<CoverWitness>,
}

impl SesReport {
    pub fn holds(&self) -> bool {
        self.homomorphism
            && self.kernel_is_n
            && self.image_is_subgroup
            && self.induced_injective
            && self.witnesses.iter().all(CoverWitness::passed)
    }
}

pub fn cover_witness(b: &TableAlgebra, c: &[crate::Fe]) -> CoverWitness {
    let fail = |cover| CoverWitness { target: c.to_vec(), cover, axioms: false, free_rank_two: false, lifts: false };
    let Ok(cover) = twisted_cover(b, c) else { return fail(None) };
    let axioms = cover.check_axioms().all_pass();
    let n = b.dim();
    let f = *b.field();
    let embed = |p: &[crate::Fe]| -> Vector { p.iter().copied().chain(std::iter::repeat(0).take(n)).collect() };
    let u: Vector = b.zero().into_iter().chain(b.one()).collect();
    let inclusion = TableMorphism::new(b.clone(), cover.clone(), {
        let cols: Vec<Vector> = (0..n).map(|i| embed(&b.basis(i))).collect();
        Matrix::from_columns(f, 2 * n, &cols)
    });
    let inclusion_ok = inclusion.map(|m| m.check().passed()).unwrap_or(false);
    // B (+) B -> B', (p, q) -> p + q u
    let cols: Vec<Vector> = (0..n)
        .map(|i| embed(&b.basis(i)))
        .chain((0..n).map(|i| cover.mul(&embed(&b.basis(i)), &u)))
        .collect();
    let free_rank_two = inclusion_ok && Matrix::from_columns(f, 2 * n, &cols).rank() == 2 * n;
    let lifts = matches!(dlog(&cover, &u), Ok(d) if d == embed(c));
    CoverWitness { target: c.to_vec(), cover: Some(cover), axioms, free_rank_two, lifts }
}

/// Exact on unit groups up to [`SES_EXHAUSTIVE`] elements; larger groups check
/// the homomorphism law on seeded random pairs.
pub fn ses_check(b: &TableAlgebra, seed: u64) -> Result<SesReport> {
    let g = g_points(b);
    let n = n_points(b);
    let alpha = alpha2_points(b);
    let logs: Vec<Vector> = g.elements.iter().map(|a| dlog(b, &a[0])).collect::<Result<_>>()?;
    let in_alpha = logs.iter().all(|l| alpha.contains(std::slice::from_ref(l)));
    let pairs: Vec<(usize, usize)> = if g.len() <= SES_EXHAUSTIVE {
        (0..g.len()).flat_map(|i| (0..g.len()).map(move |j| (i, j))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SES_SAMPLES).map(|_| (rng.gen_range(0..g.len()), rng.gen_range(0..g.len()))).collect()
    };
    let homomorphism = in_alpha
        && pairs.iter().all(|&(i, j)| {
            let prod = b.mul(&g.elements[i][0], &g.elements[j][0]);
            dlog(b, &prod).ok() == Some(b.add(&logs[i], &logs[j]))
        });
    let kernel: BTreeSet<Vec<Vector>> =
        g.elements.iter().zip(&logs).filter(|(_, l)| is_zero(l)).map(|(a, _)| a.clone()).collect();
    let kernel_is_n = kernel == n.elements.iter().cloned().collect();
    let image: BTreeSet<Vector> = logs.iter().cloned().collect();
    let image_is_subgroup = image.iter().all(|p| image.iter().all(|q| image.contains(&b.add(p, q))));
    let mut fibres: BTreeMap<&Vector, Vec<&Vector>> = BTreeMap::new();
    for (a, l) in g.elements.iter().zip(&logs) {
        fibres.entry(l).or_default().push(&a[0]);
    }
    let induced_injective = fibres.values().all(|fibre| {
        let inv = b.inverse(fibre[0]).expect("units");
        fibre.iter().all(|a| n.contains(&[b.mul(&inv, a)]))
    });
    let witnesses = alpha
        .elements
        .iter()
        .filter(|c| !image.contains(&c[0]))
        .map(|c| cover_witness(b, &c[0]))
        .collect();
    Ok(SesReport {
        homomorphism,
        kernel_is_n,
        image: image.into_iter().collect(),
        image_is_subgroup,
        induced_injective,
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub cosets: usize,
    pub unit_classes: usize,
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
    /// `dlog` is constant on each class and lands in `α2(B)`.
    pub lands_in_alpha2: bool,
    /// `T -> k[s]/s^2`, `t -> s` is a morphism.
    pub immersion: bool,
}

impl QuotientReport {
    pub fn holds(&self) -> bool {
        self.well_defined && self.injective && self.surjective && self.lands_in_alpha2 && self.immersion
    }
}

/// `H(B) \ GL_P(B) -> G(B) / N(B)`, `H (a, b) -> a N`.
pub fn quotient_bijection_check(b: &TableAlgebra) -> Result<QuotientReport> {
    let gl = glp_points(b)?;
    let h = h_points(b)?;
    let g = g_points(b);
    let n = n_points(b);
    let class_of = |a: &Vector| -> BTreeSet<Vector> { n.elements.iter().map(|m| b.mul(a, &m[0])).collect() };
    let unit_classes: BTreeSet<BTreeSet<Vector>> = g.elements.iter().map(|a| class_of(&a[0])).collect();

    let cosets = gl.cosets_of(&h);
    let mut well_defined = true;
    let mut images = Vec::new();
    for coset in &cosets {
        let classes: BTreeSet<BTreeSet<Vector>> = coset.iter().map(|p| class_of(&p[0])).collect();
        well_defined &= classes.len() == 1;
        images.extend(classes.into_iter().next());
    }
    let distinct: BTreeSet<&BTreeSet<Vector>> = images.iter().collect();
    let injective = distinct.len() == images.len();
    let surjective = unit_classes.iter().all(|c| distinct.contains(c));

    let alpha = alpha2_points(b);
    let lands_in_alpha2 = unit_classes.iter().all(|class| {
        let logs: BTreeSet<Vector> = class.iter().filter_map(|a| dlog(b, a).ok()).collect();
        logs.len() == 1 && alpha.contains(&[logs.into_iter().next().expect("one value")])
    });

    let f = *b.field();
    let immersion = GeneratedMorphism::new(make_t(f), dual_numbers(f), vec![vec![0, 1, 0, 0]], vec![vec![0, 1]])
        .check()
        .passed();
    Ok(QuotientReport {
        cosets: cosets.len(),
        unit_classes: unit_classes.len(),
        well_defined,
        injective,
        surjective,
        lands_in_alpha2,
        immersion,
    })
}

/// A conjugate `g h g^-1` of an element of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonNormality {
    pub algebra: TableAlgebra,
    pub g: Vec<Vector>,
    pub h: Vec<Vector>,
    pub conjugate: Vec<Vector>,
    /// `(Dw)(Da)` for `g = (a, 0)`, `h = (1, w)`.
    pub obstruction: Vector,
    pub h_in_transporter: bool,
    pub conjugate_in_transporter: bool,
}

impl NonNormality {
    pub fn is_witness(&self) -> bool {
        self.h_in_transporter && !self.conjugate_in_transporter
    }
}

/// Conjugates `h = (1, w)` by `g = (a, 0)`.
pub fn conjugation_test(b: &TableAlgebra, a: &[crate::Fe], w: &[crate::Fe]) -> Result<NonNormality> {
    let law = GroupPointSet::new("GL_P", b, GroupLaw::Transformations, Vec::new());
    let g = vec![a.to_vec(), b.zero()];
    let h = vec![b.one(), w.to_vec()];
    let conjugate = law.conjugate(&g, &h)?;
    Ok(NonNormality {
        algebra: b.clone(),
        obstruction: b.mul(&b.apply_d(w), &b.apply_d(a)),
        h_in_transporter: in_transporter(b, &h),
        conjugate_in_transporter: in_transporter(b, &conjugate),
        g,
        h,
        conjugate,
    })
}

/// In `Sym(P (+) P)` truncated above degree two, `g = (1 + x1, 0)` conjugates
/// `h = (1, x2)` out of `H`.
pub fn non_normality_witness() -> Result<NonNormality> {
    let p = crate::dalgebra::PbwAlgebra::sym(crate::BaseField::gf2(), 2, 0, Some(2));
    let (b, basis) = p.to_table()?;
    let x1 = p.coordinates(&basis, &p.x(0))?;
    let x2 = p.coordinates(&basis, &p.x(1))?;
    conjugation_test(&b, &b.add(&b.one(), &x1), &x2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRedReport {
    /// `D = 0` and no nonzero nilpotents.
    pub reduced_ordinary: bool,
    /// `(a, b) -> (a, a^-1 b)` is a bijection `H(B) -> B^x x B`.
    pub bijective: bool,
    /// ... and turns composition into `(a, c)(a', c') = (a a', c + c')`.
    pub homomorphism: bool,
}

impl HRedReport {
    pub fn holds(&self) -> bool {
        self.reduced_ordinary && self.bijective && self.homomorphism
    }
}

pub fn h_red_check(b: &TableAlgebra) -> Result<HRedReport> {
    let reduced_ordinary = b.d_matrix().is_zero() && nil_elements(b)?.dim() == 0;
    let h = h_points(b)?;
    let to_pair = |g: &Vec<Vector>| -> Option<(Vector, Vector)> {
        let inv = b.inverse(&g[0])?;
        Some((g[0].clone(), b.mul(&inv, &g[1])))
    };
    let image: BTreeSet<(Vector, Vector)> = h.elements.iter().filter_map(to_pair).collect();
    let units = g_points(b);
    let bijective = image.len() == h.len() && image.len() == units.len() * b.elements().len();
    let homomorphism = h.elements.iter().all(|x| {
        h.elements.iter().all(|y| match (to_pair(x), to_pair(y), to_pair(&h.op(x, y))) {
            (Some((a, c)), Some((a2, c2)), Some(prod)) => prod == (b.mul(&a, &a2), b.add(&c, &c2)),
            _ => false,
        })
    });
    Ok(HRedReport { reduced_ordinary, bijective, homomorphism })
}
