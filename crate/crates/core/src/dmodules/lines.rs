use crate::cat::Ver4Object;
use crate::dalgebra::{make_t, TableAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::Fe;

use super::module::DModule;
use super::tensor::{is_invertible, InvertibleModule};

/// `L_u^a`: the regular module with `D` twisted to `D(x̄) = (x a + Dx)‾`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedLine {
    pub line: InvertibleModule,
    /// `B (x) P -> L`: `b (x) v1 -> b̄`, `b (x) v2 -> (b a)‾`.
    pub surjection: Matrix,
    pub free: DModule,
}

/// `D_L^2(x) = x (a^2 + Da)`, so `Da = a^2` is exactly the condition for a module.
pub fn make_lua(b: &TableAlgebra, a: &[Fe]) -> Result<TwistedLine> {
    let f = *b.field();
    if b.apply_d(a) != b.mul(a, a) {
        return Err(Error::InvalidInput("twisting element must satisfy Da = a^2".into()));
    }
    let d = b.d_matrix().add(&b.right_mul(a));
    let action = (0..b.dim()).map(|i| b.left_mul(&b.basis(i))).collect();
    let module = DModule::new(b.clone(), d, action)?;
    let line = is_invertible(&module)?.ok_or_else(|| Error::InvalidInput("twisted line is not invertible".into()))?;
    let free = DModule::free_on(b, &Ver4Object::projective(f));
    let cols: Vec<Vector> = (0..b.dim())
        .flat_map(|i| {
            let e = b.basis(i);
            [e.clone(), b.mul(&e, a)]
        })
        .collect();
    let surjection = Matrix::from_columns(f, b.dim(), &cols);
    Ok(TwistedLine { line, surjection, free })
}

/// `L_u` over `T = k[t]/t^4`: `D(1̄) = t`, `D(t̄²) = t̄³`.
pub fn make_lu(field: crate::BaseField) -> TwistedLine {
    let t = make_t(field);
    make_lua(&t, &[0, 1, 0, 0]).expect("Dt = t^2")
}
