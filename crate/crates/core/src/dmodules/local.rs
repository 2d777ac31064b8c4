use crate::dalgebra::{ideal_closure, TableAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::spectra::{localize, LocalizationResult};
use crate::Fe;

use super::module::DModule;

/// `M_f` over `A_f`, realised as `e M` for the idempotent `e` of `A_f = A e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedModule {
    pub module: DModule,
    pub localization: LocalizationResult,
    /// `M -> M_f`, `m -> e m`.
    pub projection: Matrix,
    /// `M_f` as the subspace `e M`.
    pub inclusion: Matrix,
}

pub fn localize_module(m: &DModule, f: &[Fe]) -> Result<LocalizedModule> {
    let a = m.algebra();
    let field = *a.field();
    let loc = localize(a, f)?;
    let e_act = m.action_matrix(&loc.idempotent);
    let image = e_act.image();
    let inclusion = Matrix::from_columns(field, m.dim(), image.basis());
    let coords = |v: &[Fe]| -> Vector { image.coordinates(&field, v).expect("e M is stable") };
    let restrict = |x: &Matrix| -> Matrix {
        let cols: Vec<Vector> = image.basis().iter().map(|b| coords(&x.apply(b))).collect();
        Matrix::from_columns(field, image.dim(), &cols)
    };
    let d = restrict(m.d());
    // A_f's basis vectors are columns of its inclusion into A.
    let action = (0..loc.algebra.dim()).map(|i| restrict(&m.action_matrix(&loc.inclusion.column(i)))).collect();
    let module = DModule::new(loc.algebra.clone(), d, action)?;
    let proj_cols: Vec<Vector> = (0..m.dim()).map(|j| coords(&e_act.column(j))).collect();
    let projection = Matrix::from_columns(field, image.dim(), &proj_cols);
    Ok(LocalizedModule { module, localization: loc, projection, inclusion })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualizerReport {
    /// `M -> prod M_{f_i}` is injective.
    pub injective: bool,
    /// Its image is the equalizer of the two maps to `prod M_{f_i f_j}`.
    pub exact: bool,
    pub equalizer_dim: usize,
}

impl EqualizerReport {
    pub fn holds(&self) -> bool {
        self.injective && self.exact
    }
}

/// Check `M -> prod_i M_{f_i} ⇉ prod_{i,j} M_{f_i f_j}` is an equalizer.
pub fn sheaf_equalizer_check(a: &TableAlgebra, cover: &[Vector], m: &DModule) -> Result<EqualizerReport> {
    if m.algebra() != a {
        return Err(Error::AlgebraMismatch);
    }
    if cover.iter().any(|f| !a.in_degree_zero(f)) {
        return Err(Error::NotDegreeZero);
    }
    if ideal_closure(a, cover).dim() != a.dim() {
        return Err(Error::NotACover);
    }
    let field = *a.field();
    let charts: Vec<LocalizedModule> = cover.iter().map(|f| localize_module(m, f)).collect::<Result<_>>()?;
    let sizes: Vec<usize> = charts.iter().map(|c| c.module.dim()).collect();
    let total: usize = sizes.iter().sum();
    let offsets: Vec<usize> = sizes.iter().scan(0, |acc, &s| Some(std::mem::replace(acc, *acc + s))).collect();

    // M -> prod M_{f_i}
    let to_charts = {
        let mut rows = Matrix::zeros(field, total, m.dim());
        for (c, &off) in charts.iter().zip(&offsets) {
            for r in 0..c.projection.rows() {
                for k in 0..m.dim() {
                    rows.set(off + r, k, c.projection.get(r, k));
                }
            }
        }
        rows
    };

    // difference of the two restrictions, into prod_{i<j} M_{f_i f_j} ⊂ prod M
    let pairs: Vec<(usize, usize)> =
        (0..cover.len()).flat_map(|i| (i + 1..cover.len()).map(move |j| (i, j))).collect();
    let mut diff = Matrix::zeros(field, pairs.len() * m.dim(), total);
    for (p, &(i, j)) in pairs.iter().enumerate() {
        let fg = localize_module(m, &a.mul(&cover[i], &cover[j]))?;
        let e = m.action_matrix(&fg.localization.idempotent);
        // restrictions of both charts to the overlap, as vectors in M; in
        // characteristic 2 their difference is their sum
        for chart in [i, j] {
            let c = &charts[chart];
            let res = e.mul(&c.inclusion);
            for r in 0..m.dim() {
                for k in 0..c.module.dim() {
                    let cur = diff.get(p * m.dim() + r, offsets[chart] + k);
                    diff.set(p * m.dim() + r, offsets[chart] + k, cur ^ res.get(r, k));
                }
            }
        }
    }
    let equalizer = Subspace::span(field, total, &diff.kernel());
    let image = to_charts.image();
    Ok(EqualizerReport {
        injective: to_charts.rank() == m.dim(),
        exact: image == equalizer,
        equalizer_dim: equalizer.dim(),
    })
}
