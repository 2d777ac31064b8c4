use crate::cat::Ver4Object;
use crate::dalgebra::TableAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::Fe;

/// A left module over a table algebra, internal to Ver4+: a vector space
/// with `D` and an action that is a morphism `A (x) M -> M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DModule {
    algebra: TableAlgebra,
    d: Matrix,
    /// `action[i]` is left multiplication by the `i`-th basis element.
    action: Vec<Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleAxiom {
    DSquareZero,
    Unit,
    Associativity,
    Leibniz,
}

impl ModuleAxiom {
    pub fn name(&self) -> &'static str {
        match self {
            ModuleAxiom::DSquareZero => "D^2=0",
            ModuleAxiom::Unit => "unit",
            ModuleAxiom::Associativity => "associativity",
            ModuleAxiom::Leibniz => "leibniz",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleReport {
    /// Each axiom with an optional failing witness `(algebra index, module index)`.
    pub results: Vec<(ModuleAxiom, Option<(usize, usize)>)>,
}

impl ModuleReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|(_, w)| w.is_none())
    }

    pub fn witness(&self, axiom: ModuleAxiom) -> Option<(usize, usize)> {
        self.results.iter().find(|(a, _)| *a == axiom).and_then(|(_, w)| *w)
    }
}

fn first_difference(a: &Matrix, b: &Matrix) -> Option<usize> {
    (0..a.cols()).find(|&c| a.column(c) != b.column(c))
}

impl DModule {
    pub fn new(algebra: TableAlgebra, d: Matrix, action: Vec<Matrix>) -> Result<Self> {
        let m = d.rows();
        if d.cols() != m || action.len() != algebra.dim() || action.iter().any(|a| a.rows() != m || a.cols() != m) {
            return Err(Error::DimensionMismatch("module structure maps".into()));
        }
        Ok(DModule { algebra, d, action })
    }

    /// `A` acting on itself.
    pub fn regular(a: &TableAlgebra) -> Self {
        let action = (0..a.dim()).map(|i| a.left_mul(&a.basis(i))).collect();
        DModule { algebra: a.clone(), d: a.d_matrix().clone(), action }
    }

    /// The free module `A (x) X` on an object `X`, basis `e_i (x) x_j` at `i * dim X + j`.
    pub fn free_on(a: &TableAlgebra, x: &Ver4Object) -> Self {
        let f = *a.field();
        let idx = Matrix::identity(f, x.dim());
        let ida = Matrix::identity(f, a.dim());
        let d = a.d_matrix().kron(&idx).add(&ida.kron(x.d()));
        let action = (0..a.dim()).map(|i| a.left_mul(&a.basis(i)).kron(&idx)).collect();
        DModule { algebra: a.clone(), d, action }
    }

    pub fn zero(a: &TableAlgebra) -> Self {
        let f = *a.field();
        DModule { algebra: a.clone(), d: Matrix::zeros(f, 0, 0), action: vec![Matrix::zeros(f, 0, 0); a.dim()] }
    }

    pub fn algebra(&self) -> &TableAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.d.rows()
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn object(&self) -> Result<Ver4Object> {
        Ver4Object::new(self.d.clone())
    }

    pub fn action_matrix(&self, a: &[Fe]) -> Matrix {
        let f = *self.algebra.field();
        let mut out = Matrix::zeros(f, self.dim(), self.dim());
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.action[i].scale(c));
            }
        }
        out
    }

    pub fn act(&self, a: &[Fe], m: &[Fe]) -> Vector {
        self.action_matrix(a).apply(m)
    }

    pub fn apply_d(&self, m: &[Fe]) -> Vector {
        self.d.apply(m)
    }

    /// Right action through the braiding: `m a = a m + (Da)(Dm)`.
    pub fn right_act(&self, m: &[Fe], a: &[Fe]) -> Vector {
        let am = self.act(a, m);
        let cross = self.act(&self.algebra.apply_d(a), &self.apply_d(m));
        crate::linalg::vec_add(&am, &cross)
    }

    pub fn check_axioms(&self) -> ModuleReport {
        let a = &self.algebra;
        let f = *a.field();
        let n = a.dim();
        let d2 = self.d.mul(&self.d);
        let d_sq = first_difference(&d2, &Matrix::zeros(f, self.dim(), self.dim())).map(|c| (0, c));
        let unit = first_difference(&self.action_matrix(&a.one()), &Matrix::identity(f, self.dim())).map(|c| (0, c));
        let mut assoc = None;
        'outer: for i in 0..n {
            for j in 0..n {
                let lhs = self.action_matrix(a.basis_product(i, j));
                let rhs = self.action[i].mul(&self.action[j]);
                if let Some(c) = first_difference(&lhs, &rhs) {
                    assoc = Some((i * n + j, c));
                    break 'outer;
                }
            }
        }
        let leibniz = (0..n).find_map(|i| {
            let lhs = self.d.mul(&self.action[i]);
            let rhs = self.action_matrix(&a.apply_d(&a.basis(i))).add(&self.action[i].mul(&self.d));
            first_difference(&lhs, &rhs).map(|c| (i, c))
        });
        ModuleReport {
            results: vec![
                (ModuleAxiom::DSquareZero, d_sq),
                (ModuleAxiom::Unit, unit),
                (ModuleAxiom::Associativity, assoc),
                (ModuleAxiom::Leibniz, leibniz),
            ],
        }
    }

    pub fn direct_sum(&self, other: &DModule) -> Result<DModule> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect();
        DModule::new(self.algebra.clone(), self.d.direct_sum(&other.d), action)
    }

    /// `M x N` over the product algebra `A x B` (basis of `A` first).
    pub fn product(&self, other: &DModule) -> Result<DModule> {
        let algebra = self.algebra.product(&other.algebra)?;
        let f = *algebra.field();
        let zm = Matrix::zeros(f, self.dim(), self.dim());
        let zn = Matrix::zeros(f, other.dim(), other.dim());
        let action = self
            .action
            .iter()
            .map(|a| a.direct_sum(&zn))
            .chain(other.action.iter().map(|b| zm.direct_sum(b)))
            .collect();
        DModule::new(algebra, self.d.direct_sum(&other.d), action)
    }

    /// Smallest submodule containing `gens`.
    pub fn generated(&self, gens: &[Vector]) -> Subspace {
        let f = *self.algebra.field();
        let mut sub = Subspace::zero(self.dim());
        let mut frontier: Vec<Vector> = gens.to_vec();
        while let Some(v) = frontier.pop() {
            if sub.contains(&f, &v) {
                continue;
            }
            sub = sub.sum(&f, &Subspace::span(f, self.dim(), std::slice::from_ref(&v)));
            frontier.push(self.d.apply(&v));
            frontier.extend(self.action.iter().map(|a| a.apply(&v)));
        }
        sub
    }

    /// Whether `sub` is stable under `D` and the action.
    pub fn is_submodule(&self, sub: &Subspace) -> bool {
        let f = *self.algebra.field();
        sub.basis().iter().all(|v| {
            sub.contains(&f, &self.d.apply(v)) && self.action.iter().all(|a| sub.contains(&f, &a.apply(v)))
        })
    }

    /// The submodule `sub` as a module, with its inclusion.
    pub fn restrict(&self, sub: &Subspace) -> Result<(DModule, Matrix)> {
        if !self.is_submodule(sub) {
            return Err(Error::InvalidInput("subspace is not a submodule".into()));
        }
        let f = *self.algebra.field();
        let incl = Matrix::from_columns(f, self.dim(), sub.basis());
        let coords = |m: &Matrix| -> Matrix {
            let cols: Vec<Vector> = sub
                .basis()
                .iter()
                .map(|b| sub.coordinates(&f, &m.apply(b)).expect("stable subspace"))
                .collect();
            Matrix::from_columns(f, sub.dim(), &cols)
        };
        let d = coords(&self.d);
        let action = self.action.iter().map(coords).collect();
        Ok((DModule::new(self.algebra.clone(), d, action)?, incl))
    }

    /// `M / sub` for a submodule, with the projection.
    pub fn quotient(&self, sub: &Subspace) -> Result<(DModule, Matrix)> {
        if !self.is_submodule(sub) {
            return Err(Error::InvalidInput("subspace is not a submodule".into()));
        }
        let f = *self.algebra.field();
        let proj = sub.quotient_map(&f);
        let keep = sub.complement_indices();
        let lift = Matrix::from_columns(
            f,
            self.dim(),
            &keep.iter().map(|&i| crate::linalg::unit_vec(self.dim(), i)).collect::<Vec<_>>(),
        );
        let induced = |m: &Matrix| proj.mul(m).mul(&lift);
        let d = induced(&self.d);
        let action = self.action.iter().map(induced).collect();
        Ok((DModule::new(self.algebra.clone(), d, action)?, proj))
    }

    /// Whether `matrix` is an `A`-linear map commuting with `D`, from `self` to `target`.
    pub fn is_morphism_to(&self, target: &DModule, matrix: &Matrix) -> bool {
        matrix.rows() == target.dim()
            && matrix.cols() == self.dim()
            && self.algebra == target.algebra
            && matrix.mul(&self.d) == target.d.mul(matrix)
            && self.action.iter().zip(&target.action).all(|(a, b)| matrix.mul(a) == b.mul(matrix))
    }
}
