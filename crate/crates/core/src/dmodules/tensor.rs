use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{combine, unit_vec, Matrix, Subspace, Vector};
use crate::Fe;

use super::module::DModule;

fn kron_vec(f: &crate::BaseField, a: &[Fe], b: &[Fe]) -> Vector {
    a.iter().flat_map(|&x| b.iter().map(move |&y| f.mul(x, y))).collect()
}

/// `M (x)_A N` with the maps relating it to `M (x) N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorProduct {
    pub module: DModule,
    /// `M (x) N -> M (x)_A N`; `m (x) n` sits at index `i * dim N + j`.
    pub projection: Matrix,
    /// A linear section of the projection.
    pub lift: Matrix,
}

/// Coequalizer of `(m a) (x) n` and `m (x) (a n)`, the right action on `M`
/// coming from the braiding. `A` acts through the left factor.
pub fn tensor_over(m: &DModule, n: &DModule) -> Result<TensorProduct> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let a = m.algebra();
    let f = *a.field();
    let (dm, dn) = (m.dim(), n.dim());
    let (im, in_) = (Matrix::identity(f, dm), Matrix::identity(f, dn));
    let d = m.d().kron(&in_).add(&im.kron(n.d()));
    let action = (0..a.dim()).map(|i| m.action_matrix(&a.basis(i)).kron(&in_)).collect();
    let big = DModule::new(a.clone(), d, action)?;

    let mut rels = Vec::new();
    for p in 0..dm {
        let mp = unit_vec(dm, p);
        for i in 0..a.dim() {
            let e = a.basis(i);
            let ma = m.right_act(&mp, &e);
            for r in 0..dn {
                let nr = unit_vec(dn, r);
                let lhs = kron_vec(&f, &ma, &nr);
                let rhs = kron_vec(&f, &mp, &n.act(&e, &nr));
                rels.push(crate::linalg::vec_add(&lhs, &rhs));
            }
        }
    }
    let sub = Subspace::span(f, dm * dn, &rels);
    let (module, projection) = big.quotient(&sub)?;
    let keep = sub.complement_indices();
    let lift = Matrix::from_columns(f, dm * dn, &keep.iter().map(|&i| unit_vec(dm * dn, i)).collect::<Vec<_>>());
    Ok(TensorProduct { module, projection, lift })
}

/// `M^∨ = Hom_A(M, A)` inside `Hom_k(M, A)`, with `φ` stored as the
/// concatenation of the columns `φ(m_j)`. `(Dφ)(m) = D(φ(m)) + φ(Dm)` and
/// `(aφ)(m) = a φ(m)`; `A`-linearity reads `φ(a m) = a φ(m) + (Da)(Dφ)(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dual {
    pub module: DModule,
    /// Columns are the basis of `M^∨` as vectors in `Hom_k(M, A)`.
    pub inclusion: Matrix,
}

pub fn dual(m: &DModule) -> Result<Dual> {
    let a = m.algebra();
    let f = *a.field();
    let (na, dm) = (a.dim(), m.dim());
    let homk = {
        let d = Matrix::identity(f, dm).kron(a.d_matrix()).add(&m.d().transpose().kron(&Matrix::identity(f, na)));
        let action = (0..na).map(|i| Matrix::identity(f, dm).kron(&a.left_mul(&a.basis(i)))).collect();
        DModule::new(a.clone(), d, action)?
    };
    let eval = |phi: &[Fe], v: &[Fe]| -> Vector {
        let cols: Vec<Vector> = (0..dm).map(|j| phi[j * na..(j + 1) * na].to_vec()).collect();
        combine(&f, v, &cols, na)
    };
    // constraint map Hom_k(M, A) -> (A^{na})^{na * dm}
    let mut constraint_cols = Vec::with_capacity(na * dm);
    for k in 0..na * dm {
        let phi = unit_vec(na * dm, k);
        let dphi = homk.d().apply(&phi);
        let mut out = Vec::with_capacity(na * na * dm);
        for i in 0..na {
            let e = a.basis(i);
            let de = a.apply_d(&e);
            for j in 0..dm {
                let mj = unit_vec(dm, j);
                let lhs = eval(&phi, &m.act(&e, &mj));
                let rhs = a.add(&a.mul(&e, &eval(&phi, &mj)), &a.mul(&de, &eval(&dphi, &mj)));
                out.extend(a.add(&lhs, &rhs));
            }
        }
        constraint_cols.push(out);
    }
    let rows = na * na * dm;
    let kernel = Matrix::from_columns(f, rows, &constraint_cols).kernel();
    let sub = Subspace::span(f, na * dm, &kernel);
    let (module, inclusion) = homk.restrict(&sub)?;
    Ok(Dual { module, inclusion })
}

/// An invertible module with the evaluation isomorphism `M^∨ (x)_A M -> A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvertibleModule {
    pub module: DModule,
    pub dual: Dual,
    pub evaluation: Matrix,
}

/// Evaluation `M^∨ (x)_A M -> A`, `φ (x) m -> φ(m)`, as a matrix on the tensor product.
pub fn evaluation(m: &DModule, dual: &Dual, tensor: &TensorProduct) -> Matrix {
    let a = m.algebra();
    let f = *a.field();
    let (na, dm) = (a.dim(), m.dim());
    let dd = dual.module.dim();
    let mut cols = Vec::with_capacity(dd * dm);
    for s in 0..dd {
        let phi = dual.inclusion.column(s);
        for j in 0..dm {
            cols.push(phi[j * na..(j + 1) * na].to_vec());
        }
    }
    Matrix::from_columns(f, na, &cols).mul(&tensor.lift)
}

/// Whether `φ (x) m -> φ(m)` on `M^∨ (x) M` factors through `M^∨ (x)_A M`.
fn evaluation_is_balanced(m: &DModule, dual: &Dual, tensor: &TensorProduct, ev: &Matrix) -> bool {
    let na = m.algebra().dim();
    let dm = m.dim();
    let f = *m.algebra().field();
    let cols: Vec<Vector> = (0..dual.module.dim())
        .flat_map(|s| {
            let phi = dual.inclusion.column(s);
            (0..dm).map(move |j| phi[j * na..(j + 1) * na].to_vec())
        })
        .collect();
    Matrix::from_columns(f, na, &cols) == ev.mul(&tensor.projection)
}

pub fn is_invertible(m: &DModule) -> Result<Option<InvertibleModule>> {
    let d = dual(m)?;
    let t = tensor_over(&d.module, m)?;
    let ev = evaluation(m, &d, &t);
    let regular = DModule::regular(m.algebra());
    let ok = evaluation_is_balanced(m, &d, &t, &ev)
        && t.module.dim() == regular.dim()
        && t.module.is_morphism_to(&regular, &ev)
        && ev.rank() == regular.dim();
    Ok(ok.then(|| InvertibleModule { module: m.clone(), dual: d, evaluation: ev }))
}

/// Basis of the space of `D`-equivariant `A`-linear maps `M -> N`.
pub fn module_homs(m: &DModule, n: &DModule) -> Result<Vec<Matrix>> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let a = m.algebra();
    let f = *a.field();
    let (dm, dn) = (m.dim(), n.dim());
    let mut cols = Vec::with_capacity(dm * dn);
    let as_matrix = |k: usize| {
        let mut x = Matrix::zeros(f, dn, dm);
        x.set(k / dm, k % dm, 1);
        x
    };
    for k in 0..dm * dn {
        let x = as_matrix(k);
        let mut out = Vec::new();
        let mut push = |l: Matrix, r: Matrix| {
            let diff = l.add(&r);
            for c in 0..diff.cols() {
                out.extend(diff.column(c));
            }
        };
        push(x.mul(m.d()), n.d().mul(&x));
        for i in 0..a.dim() {
            let e = a.basis(i);
            push(x.mul(&m.action_matrix(&e)), n.action_matrix(&e).mul(&x));
        }
        cols.push(out);
    }
    let rows = dn * dm * (a.dim() + 1);
    Ok(Matrix::from_columns(f, rows, &cols)
        .kernel()
        .into_iter()
        .map(|v| {
            let mut x = Matrix::zeros(f, dn, dm);
            for (k, c) in v.into_iter().enumerate() {
                x.set(k / dm, k % dm, c);
            }
            x
        })
        .collect())
}

/// Elements of the hom space enumerated exhaustively up to this many.
pub const ISO_SEARCH_LIMIT: u64 = 1 << 16;

/// An isomorphism `M -> N`, searched over the hom space: by random sampling
/// first, then exhaustively when it has at most [`ISO_SEARCH_LIMIT`] elements
/// (otherwise a miss is reported as inconclusive).
pub fn find_isomorphism(m: &DModule, n: &DModule) -> Result<Option<Matrix>> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim() != n.dim() || m.object()?.decompose() != n.object()?.decompose() {
        return Ok(None);
    }
    let f = *m.algebra().field();
    let basis = module_homs(m, n)?;
    let q = f.order() as u64;
    let combine_mats = |coeffs: &[Fe]| {
        let mut acc = Matrix::zeros(f, n.dim(), m.dim());
        for (c, b) in coeffs.iter().zip(&basis) {
            if *c != 0 {
                acc = acc.add(&b.scale(*c));
            }
        }
        acc
    };
    let full = m.dim();
    // random combinations find an isomorphism quickly when one exists; the
    // exhaustive pass is what proves absence
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..256 {
        let coeffs: Vec<Fe> = (0..basis.len()).map(|_| rng.gen_range(0..q as Fe)).collect();
        let x = combine_mats(&coeffs);
        if x.rank() == full {
            return Ok(Some(x));
        }
    }
    match q.checked_pow(basis.len() as u32) {
        Some(t) if t <= ISO_SEARCH_LIMIT => {
            for coeffs in crate::linalg::all_vectors(&f, basis.len()) {
                let x = combine_mats(&coeffs);
                if x.rank() == full {
                    return Ok(Some(x));
                }
            }
            Ok(None)
        }
        _ => {
            for _ in 0..ISO_SEARCH_LIMIT {
                let coeffs: Vec<Fe> = (0..basis.len()).map(|_| rng.gen_range(0..q as Fe)).collect();
                let x = combine_mats(&coeffs);
                if x.rank() == full {
                    return Ok(Some(x));
                }
            }
            Err(Error::Inconclusive("no isomorphism found by sampling".into()))
        }
    }
}
