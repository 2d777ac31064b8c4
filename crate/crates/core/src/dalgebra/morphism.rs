use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{is_zero, Matrix, Subspace, Vector};

use super::pbw::{Monomial, PbwAlgebra, PbwElem};
use super::table::TableAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub checks: Vec<MorphismCheck>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&MorphismCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, witness: Option<String>) {
        self.checks.push(MorphismCheck { name, passed: witness.is_none(), witness });
    }
}

impl fmt::Display for MorphismReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{}: {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
            if let Some(w) = &c.witness {
                write!(f, " ({w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A linear map between table algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableMorphism {
    pub source: TableAlgebra,
    pub target: TableAlgebra,
    pub matrix: Matrix,
}

impl TableMorphism {
    pub fn new(source: TableAlgebra, target: TableAlgebra, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch("morphism matrix shape".into()));
        }
        Ok(TableMorphism { source, target, matrix })
    }

    pub fn identity(a: &TableAlgebra) -> Self {
        TableMorphism { source: a.clone(), target: a.clone(), matrix: Matrix::identity(*a.field(), a.dim()) }
    }

    pub fn apply(&self, a: &[crate::Fe]) -> Vector {
        self.matrix.apply(a)
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &TableMorphism) -> Result<TableMorphism> {
        if first.target != self.source {
            return Err(Error::AlgebraMismatch);
        }
        Ok(TableMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        })
    }

    pub fn check(&self) -> MorphismReport {
        let (s, t) = (&self.source, &self.target);
        let mut report = MorphismReport { checks: Vec::new() };
        let unit_ok = self.apply(&s.one()) == t.one();
        report.push("unit", (!unit_ok).then(|| format!("1 -> {}", t.format(&self.apply(&s.one())))));

        let images: Vec<Vector> = (0..s.dim()).map(|i| self.matrix.column(i)).collect();
        let mut mult = None;
        'outer: for i in 0..s.dim() {
            for j in 0..s.dim() {
                let lhs = self.apply(s.basis_product(i, j));
                if lhs != t.mul(&images[i], &images[j]) {
                    mult = Some(format!("({}, {})", s.names()[i], s.names()[j]));
                    break 'outer;
                }
            }
        }
        report.push("multiplicative", mult);

        let deq = (0..s.dim())
            .find(|&i| self.apply(&s.apply_d(&s.basis(i))) != t.apply_d(&images[i]))
            .map(|i| s.names()[i].clone());
        report.push("D-equivariant", deq);
        report
    }
}

/// A morphism out of a PBW-presented algebra, given by images of the
/// generators `x_i` and `z_j` (the `y_i` go to `D` of the `x_i` images).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedMorphism {
    pub source: PbwAlgebra,
    pub target: TableAlgebra,
    pub x_images: Vec<Vector>,
    pub z_images: Vec<Vector>,
}

impl PresentedMorphism {
    pub fn new(source: PbwAlgebra, target: TableAlgebra, x_images: Vec<Vector>, z_images: Vec<Vector>) -> Self {
        PresentedMorphism { source, target, x_images, z_images }
    }

    fn power(&self, base: &[crate::Fe], e: i64) -> Result<Vector> {
        let t = &self.target;
        let b = if e < 0 { t.inverse(base).ok_or(Error::NotAUnit)? } else { base.to_vec() };
        Ok(t.pow(&b, e.unsigned_abs() as u32))
    }

    pub fn eval_monomial(&self, mono: &Monomial) -> Result<Vector> {
        let t = &self.target;
        let mut acc = t.one();
        for (i, &e) in mono.x.iter().enumerate() {
            if e != 0 {
                acc = t.mul(&acc, &self.power(&self.x_images[i], e)?);
            }
        }
        for i in 0..self.x_images.len() {
            if mono.y >> i & 1 == 1 {
                acc = t.mul(&acc, &t.apply_d(&self.x_images[i]));
            }
        }
        for (j, &e) in mono.z.iter().enumerate() {
            if e != 0 {
                acc = t.mul(&acc, &self.power(&self.z_images[j], e)?);
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, a: &PbwElem) -> Result<Vector> {
        let t = &self.target;
        let mut out = t.zero();
        for (mono, c) in a.terms() {
            out = t.add(&out, &t.scale(c, &self.eval_monomial(mono)?));
        }
        Ok(out)
    }

    pub fn check(&self) -> MorphismReport {
        let (s, t) = (&self.source, &self.target);
        let mut report = MorphismReport { checks: Vec::new() };
        let shape_ok = self.x_images.len() == s.m()
            && self.z_images.len() == s.n()
            && self.x_images.iter().chain(&self.z_images).all(|v| v.len() == t.dim());
        report.push("shape", (!shape_ok).then(|| "wrong number or size of generator images".to_string()));
        if !shape_ok {
            return report;
        }
        report.push("unit", None);

        let deq = (0..s.n()).find(|&j| !is_zero(&t.apply_d(&self.z_images[j]))).map(|j| s.z_names()[j].clone());
        report.push("D-equivariant", deq);

        let inv = (0..s.m())
            .filter(|&i| s.inverted_x()[i])
            .map(|i| (&self.x_images[i], &s.x_names()[i]))
            .chain((0..s.n()).filter(|&j| s.inverted_z()[j]).map(|j| (&self.z_images[j], &s.z_names()[j])))
            .find(|(img, _)| t.inverse(img).is_none())
            .map(|(_, name)| format!("{name} is not sent to a unit"));
        report.push("inverses", inv);

        let mut comm = None;
        for i in 0..s.m() {
            for j in i + 1..s.m() {
                let (a, b) = (&self.x_images[i], &self.x_images[j]);
                let lhs = t.add(&t.mul(b, a), &t.mul(a, b));
                if lhs != t.mul(&t.apply_d(a), &t.apply_d(b)) {
                    comm = Some(format!("{} {}", s.x_names()[j], s.x_names()[i]));
                }
            }
        }
        report.push("multiplicative", comm);

        let rel = s.relations().iter().find_map(|r| match self.eval(r) {
            Ok(v) if is_zero(&v) => None,
            Ok(v) => Some(format!("{} -> {}", s.format(r), t.format(&v))),
            Err(e) => Some(format!("{}: {e}", s.format(r))),
        });
        report.push("relations", rel);

        if let Some(b) = s.degree_bound() {
            let free = PbwAlgebra::sym(*s.field(), s.m(), s.n(), None);
            let top = free
                .monomials_up_to(b as i64 + 1)
                .into_iter()
                .filter(|m| m.degree() == b as i64 + 1)
                .find(|m| self.eval_monomial(m).map(|v| !is_zero(&v)).unwrap_or(true))
                .map(|m| format!("{} is not sent to 0", free.format_monomial(&m)));
            report.push("truncation", top);
        }
        report
    }
}

/// A morphism out of a table algebra determined by images of generators.
/// The generated graph is built by closing under products and `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedMorphism {
    pub source: TableAlgebra,
    pub target: TableAlgebra,
    pub generators: Vec<Vector>,
    pub images: Vec<Vector>,
}

impl GeneratedMorphism {
    pub fn new(source: TableAlgebra, target: TableAlgebra, generators: Vec<Vector>, images: Vec<Vector>) -> Self {
        GeneratedMorphism { source, target, generators, images }
    }

    /// Span of `(w(g), w(phi g))` over all words `w` in the generators and their
    /// `D`-images.
    fn graph(&self) -> Subspace {
        let (s, t) = (&self.source, &self.target);
        let (ns, nt) = (s.dim(), t.dim());
        let f = *s.field();
        let join = |a: &[crate::Fe], b: &[crate::Fe]| -> Vector { a.iter().chain(b).copied().collect() };
        let mut gens: Vec<(Vector, Vector)> = Vec::new();
        for (g, h) in self.generators.iter().zip(&self.images) {
            gens.push((g.clone(), h.clone()));
            gens.push((s.apply_d(g), t.apply_d(h)));
        }
        let mut graph = Subspace::span(f, ns + nt, &[join(&s.one(), &t.one())]);
        let mut frontier = vec![(s.one(), t.one())];
        while let Some((a, b)) = frontier.pop() {
            for (g, h) in &gens {
                let pair = (s.mul(g, &a), t.mul(h, &b));
                let v = join(&pair.0, &pair.1);
                if !graph.contains(&f, &v) {
                    graph = graph.sum(&f, &Subspace::span(f, ns + nt, &[v]));
                    frontier.push(pair);
                }
            }
        }
        graph
    }

    /// The induced linear map, if the generators generate and all relations
    /// among them are respected.
    pub fn to_table_morphism(&self) -> Result<TableMorphism> {
        self.build().map_err(|(_, msg)| Error::InvalidInput(msg))
    }

    fn build(&self) -> std::result::Result<TableMorphism, (&'static str, String)> {
        let (s, t) = (&self.source, &self.target);
        let (ns, nt) = (s.dim(), t.dim());
        let f = *s.field();
        let graph = self.graph();
        if graph.dim() < ns {
            return Err(("generation", "generators do not generate the source".into()));
        }
        if graph.dim() > ns {
            let w = graph.basis().iter().find(|v| is_zero(&v[..ns])).expect("graph meets the target axis");
            return Err(("relations", format!("0 -> {}", t.format(&w[ns..]))));
        }
        // Graph basis is in rref with pivots in the first ns coordinates.
        let mut cols = vec![vec![0; nt]; ns];
        for (v, &p) in graph.basis().iter().zip(graph.pivots()) {
            cols[p] = v[ns..].to_vec();
        }
        TableMorphism::new(s.clone(), t.clone(), Matrix::from_columns(f, nt, &cols)).map_err(|e| ("shape", e.to_string()))
    }

    pub fn check(&self) -> MorphismReport {
        match self.build() {
            Ok(m) => {
                let mut r = m.check();
                r.checks.insert(0, MorphismCheck { name: "relations", passed: true, witness: None });
                r
            }
            Err((name, msg)) => MorphismReport { checks: vec![MorphismCheck { name, passed: false, witness: Some(msg) }] },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraMorphism {
    Linear(TableMorphism),
    Presented(PresentedMorphism),
    Generated(GeneratedMorphism),
}

pub fn check_morphism(phi: &AlgebraMorphism) -> MorphismReport {
    match phi {
        AlgebraMorphism::Linear(m) => m.check(),
        AlgebraMorphism::Presented(m) => m.check(),
        AlgebraMorphism::Generated(m) => m.check(),
    }
}
