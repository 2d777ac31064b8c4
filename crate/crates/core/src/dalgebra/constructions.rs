use crate::error::{Error, Result};
use crate::field::BaseField;
use crate::linalg::{is_zero, unit_vec, Matrix, Vector};

use super::pbw::PbwAlgebra;
use super::table::TableAlgebra;

/// `k[t]/t^4` with `D t = t^2`: basis `1, t, t^2, t^3`.
pub fn make_t(field: BaseField) -> TableAlgebra {
    let names = ["1", "t", "t^2", "t^3"].map(String::from).to_vec();
    let mut d = Matrix::zeros(field, 4, 4);
    d.set(2, 1, 1);
    TableAlgebra::from_fn(field, names, unit_vec(4, 0), d, |i, j| {
        if i + j < 4 {
            unit_vec(4, i + j)
        } else {
            vec![0; 4]
        }
    })
    .expect("shapes are fixed")
}

/// `k[s]/s^2` with `D = 0`.
pub fn dual_numbers(field: BaseField) -> TableAlgebra {
    let names = vec!["1".to_string(), "s".to_string()];
    TableAlgebra::from_fn(field, names, unit_vec(2, 0), Matrix::zeros(field, 2, 2), |i, j| {
        if i + j < 2 {
            unit_vec(2, i + j)
        } else {
            vec![0; 2]
        }
    })
    .expect("shapes are fixed")
}

/// Laurent algebra `k[x, x^-1, y]/(y^2)` with `D x = y`, exponents of `x`
/// restricted to `[lo, hi]`.
pub fn make_o_g(field: BaseField, lo: i64, hi: i64) -> PbwAlgebra {
    PbwAlgebra::sym(field, 1, 0, None)
        .invert_x(0)
        .expect("one pair, unbounded")
        .with_window(lo, hi)
}

/// `B[u]/(u^2 + 1)` with `D u = u c`, for `c` with `D c = 0`.
///
/// Basis `b_i, b_i u`. Moving `u` past `b` twists it: `u b = (b + c Db) u`.
pub fn twisted_cover(base: &TableAlgebra, c: &[crate::Fe]) -> Result<TableAlgebra> {
    if !is_zero(&base.apply_d(c)) {
        return Err(Error::InvalidInput("twisting element must be D-invariant".into()));
    }
    let f = *base.field();
    let n = base.dim();
    let twist = |b: &[crate::Fe]| base.add(b, &base.mul(c, &base.apply_d(b)));
    let split = |v: &[crate::Fe]| (v[..n].to_vec(), v[n..].to_vec());
    let join = |a: Vector, b: Vector| -> Vector { a.into_iter().chain(b).collect() };
    let mul = |x: &[crate::Fe], y: &[crate::Fe]| -> Vector {
        let ((a, b), (a2, b2)) = (split(x), split(y));
        let even = base.add(&base.mul(&a, &a2), &base.mul(&b, &twist(&b2)));
        let odd = base.add(&base.mul(&a, &b2), &base.mul(&b, &twist(&a2)));
        join(even, odd)
    };
    let mut d_cols = Vec::with_capacity(2 * n);
    for i in 0..n {
        d_cols.push(join(base.apply_d(&base.basis(i)), vec![0; n]));
    }
    for i in 0..n {
        let b = base.basis(i);
        d_cols.push(join(vec![0; n], base.add(&base.apply_d(&b), &base.mul(&b, c))));
    }
    let d = Matrix::from_columns(f, 2 * n, &d_cols);
    let names: Vec<String> = base
        .names()
        .iter()
        .cloned()
        .chain(base.names().iter().map(|s| if s == "1" { "u".into() } else { format!("{s} u") }))
        .collect();
    let unit = join(base.one(), vec![0; n]);
    TableAlgebra::from_fn(f, names, unit, d, |i, j| mul(&unit_vec(2 * n, i), &unit_vec(2 * n, j)))
}

/// The default catalog of finite algebras over `GF(2)`.
pub fn catalog() -> Vec<(String, TableAlgebra)> {
    let f = BaseField::gf2();
    let t = make_t(f);
    let k = TableAlgebra::ground(f);
    let table = |m, n, b| PbwAlgebra::sym(f, m, n, Some(b)).to_table().expect("finite truncation").0;
    let t_sq = vec![0, 0, 1, 0];
    vec![
        ("1".into(), k.clone()),
        ("k[s]/s^2".into(), dual_numbers(f)),
        ("T".into(), t.clone()),
        ("T x k".into(), t.product(&k).expect("same field")),
        ("k x k".into(), k.product(&k).expect("same field")),
        ("SymP<=3".into(), table(1, 0, 3)),
        ("Sym(P+P)<=2".into(), table(2, 0, 2)),
        ("T[u]/(u^2+1)".into(), twisted_cover(&t, &t_sq).expect("t^2 is D-invariant")),
    ]
}
