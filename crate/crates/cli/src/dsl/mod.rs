//! Presentation files: algebras given by generators, `D`-images, relations
//! and an optional degree bound.
//!
//! A generator whose `D`-image is the literal `0` (and which has no partner)
//! becomes an invariant central generator. Every other generator `x` is paired
//! with a partner `y = D x` (named `Dx` unless declared); a `D`-image other
//! than the partner itself adds the relation `y = EXPR`.

mod syntax;

use std::collections::{BTreeMap, BTreeSet};

use ver4_core::dalgebra::{PbwAlgebra, PbwElem, PresentedMorphism, Quotient, TableAlgebra};
use ver4_core::linalg::Vector;
use ver4_core::BaseField;

pub use syntax::{parse_expr, Expr, FieldSpec, GenDecl, Pos, Presentation};
use syntax::{Positions, RESERVED};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("error at line {line}, column {column}: {message}")]
    Semantic { line: usize, column: usize, message: String },
    #[error("{0}")]
    Algebra(String),
}

fn semantic(pos: Pos, message: impl Into<String>) -> DslError {
    DslError::Semantic { line: pos.line, column: pos.column, message: message.into() }
}

impl From<ver4_core::Error> for DslError {
    fn from(e: ver4_core::Error) -> Self {
        DslError::Algebra(e.to_string())
    }
}

/// Parse and validate a presentation file.
pub fn parse_presentation(text: &str) -> Result<Presentation, DslError> {
    let (p, positions) = syntax::parse_file(text)?;
    p.validate(&positions)?;
    Ok(p)
}

/// How a declared name enters the PBW algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    X(usize),
    Y(usize),
    Z(usize),
}

/// The algebra a presentation describes.
#[derive(Clone, Debug)]
pub enum Built {
    Finite { table: TableAlgebra, surjection: PresentedMorphism },
    /// No finite basis was certified (always the case with inverses).
    Presented(PbwAlgebra),
}

impl Presentation {
    pub fn base_field(&self) -> Result<BaseField, DslError> {
        let FieldSpec { degree, modulus } = self.field;
        let m = match (degree, modulus) {
            (_, Some(m)) => m,
            (1, None) => 0b11,
            (2, None) => 0b111,
            (d, None) => return Err(DslError::Algebra(format!("field 2^{d} needs an explicit `mod`"))),
        };
        Ok(BaseField::extension(degree, m)?)
    }

    fn is_invariant(&self, g: &GenDecl) -> bool {
        g.partner.is_none() && self.d_image(&g.name).is_some_and(Expr::is_zero_literal)
    }

    fn d_image(&self, name: &str) -> Option<&Expr> {
        self.d_images.iter().find(|(g, _)| g == name).map(|(_, e)| e)
    }

    fn partner_name(g: &GenDecl) -> String {
        g.partner.clone().unwrap_or_else(|| format!("D{}", g.name))
    }

    fn slots(&self) -> BTreeMap<String, Slot> {
        let mut out = BTreeMap::new();
        let (mut m, mut n) = (0, 0);
        for g in &self.gens {
            if self.is_invariant(g) {
                out.insert(g.name.clone(), Slot::Z(n));
                n += 1;
            } else {
                out.insert(g.name.clone(), Slot::X(m));
                out.insert(Self::partner_name(g), Slot::Y(m));
                m += 1;
            }
        }
        out
    }

    fn validate(&self, pos: &Positions) -> Result<(), DslError> {
        self.base_field().map_err(|e| semantic(pos.field, e.to_string()))?;
        let mut names = BTreeSet::new();
        for (g, &p) in self.gens.iter().zip(&pos.gens) {
            for name in std::iter::once(g.name.clone()).chain(g.partner.clone()) {
                if RESERVED.contains(&name.as_str()) {
                    return Err(semantic(p, format!("`{name}` is a reserved word")));
                }
                if !names.insert(name.clone()) {
                    return Err(semantic(p, format!("`{name}` is declared twice")));
                }
            }
        }
        // default partner names must not clash with declared names
        for (g, &p) in self.gens.iter().zip(&pos.gens) {
            if g.partner.is_none() && !self.is_invariant(g) && names.contains(&Self::partner_name(g)) {
                return Err(semantic(p, format!("`{}` clashes with the default partner name", Self::partner_name(g))));
            }
        }
        let mut seen = BTreeSet::new();
        for ((g, _), &p) in self.d_images.iter().zip(&pos.d_images) {
            if !self.gens.iter().any(|d| d.name == *g) {
                return Err(semantic(p, format!("undeclared generator `{g}`")));
            }
            if !seen.insert(g.clone()) {
                return Err(semantic(p, format!("`{g}` has two D-images")));
            }
        }
        for (g, &p) in self.gens.iter().zip(&pos.gens) {
            if !seen.contains(&g.name) {
                return Err(semantic(p, format!("generator `{}` has no D-image", g.name)));
            }
        }
        let slots = self.slots();
        for (name, p) in &pos.uses {
            if !slots.contains_key(name) {
                return Err(semantic(*p, format!("undeclared generator `{name}`")));
            }
        }
        for (base, p) in &pos.inverse_uses {
            let ok = match base {
                Expr::Var(v) => self.gens.iter().any(|g| g.name == *v && g.inverted),
                _ => false,
            };
            if !ok {
                return Err(semantic(*p, "negative powers need an inverted generator"));
            }
        }
        // D^2 = 0: the D-image of each D-image must vanish modulo the relations
        let (pbw, rels) = self.pbw()?;
        for ((g, e), &p) in self.d_images.iter().zip(&pos.d_images) {
            if matches!(slots[g.as_str()], Slot::Z(_)) {
                continue;
            }
            let dd = pbw.apply_d(&self.eval(&pbw, e)?)?;
            let vanishes = if pbw.has_inverses() { dd.is_zero() } else { pbw.in_ideal(&rels, &dd)? };
            if !vanishes {
                return Err(semantic(p, format!("D^2 {g} = {} is not zero", pbw.format(&dd))));
            }
        }
        Ok(())
    }

    /// The free algebra on the generators together with the relations
    /// (declared ones and those fixing the partners).
    pub fn pbw(&self) -> Result<(PbwAlgebra, Vec<PbwElem>), DslError> {
        let field = self.base_field()?;
        let (mut xs, mut ys, mut zs) = (Vec::new(), Vec::new(), Vec::new());
        for g in &self.gens {
            if self.is_invariant(g) {
                zs.push(g.name.clone());
            } else {
                xs.push(g.name.clone());
                ys.push(Self::partner_name(g));
            }
        }
        let mut pbw = PbwAlgebra::sym(field, xs.len(), zs.len(), self.bound).with_names(xs, ys, zs)?;
        let slots = self.slots();
        for g in self.gens.iter().filter(|g| g.inverted) {
            pbw = match slots[g.name.as_str()] {
                Slot::X(i) => pbw.invert_x(i)?,
                Slot::Z(j) => pbw.invert_z(j)?,
                Slot::Y(_) => unreachable!("generators are never partners"),
            };
        }
        let mut rels = Vec::new();
        for g in &self.gens {
            if let Slot::X(i) = slots[g.name.as_str()] {
                let e = self.d_image(&g.name).expect("validated");
                if *e != Expr::Var(Self::partner_name(g)) {
                    rels.push(pbw.y(i).add(&self.eval(&pbw, e)?));
                }
            }
        }
        for r in &self.relations {
            rels.push(self.eval(&pbw, r)?);
        }
        Ok((pbw, rels))
    }

    /// Evaluate an expression in the free algebra.
    pub fn eval(&self, pbw: &PbwAlgebra, e: &Expr) -> Result<PbwElem, DslError> {
        let slots = self.slots();
        self.eval_with(pbw, &slots, e)
    }

    fn eval_with(&self, pbw: &PbwAlgebra, slots: &BTreeMap<String, Slot>, e: &Expr) -> Result<PbwElem, DslError> {
        let var = |v: &str| -> Result<Slot, DslError> {
            slots.get(v).copied().ok_or_else(|| DslError::Algebra(format!("undeclared generator `{v}`")))
        };
        Ok(match e {
            Expr::Lit(c) => {
                if *c >= pbw.field().order() {
                    return Err(DslError::Algebra(format!("literal {c} is not an element of the base field")));
                }
                pbw.scalar(*c)
            }
            Expr::Var(v) => match var(v)? {
                Slot::X(i) => pbw.x(i),
                Slot::Y(i) => pbw.y(i),
                Slot::Z(j) => pbw.z(j),
            },
            Expr::Pow(b, k) if *k < 0 => match &**b {
                Expr::Var(v) => match var(v)? {
                    Slot::X(i) => pbw.x_pow(i, *k),
                    Slot::Z(j) => pbw.z_pow(j, *k),
                    Slot::Y(_) => return Err(DslError::Algebra(format!("`{v}` is not invertible"))),
                },
                _ => return Err(DslError::Algebra("negative powers need an inverted generator".into())),
            },
            Expr::Pow(b, k) => {
                let base = self.eval_with(pbw, slots, b)?;
                pbw.pow(&base, *k as u32)?
            }
            Expr::Mul(fs) => {
                let mut acc = pbw.one();
                for f in fs {
                    acc = pbw.mul(&acc, &self.eval_with(pbw, slots, f)?)?;
                }
                acc
            }
            Expr::Add(ts) => {
                let mut acc = PbwElem::zero();
                for t in ts {
                    acc = acc.add(&self.eval_with(pbw, slots, t)?);
                }
                acc
            }
        })
    }

    /// The algebra: a finite table when one can be certified.
    pub fn build(&self) -> Result<Built, DslError> {
        let (pbw, rels) = self.pbw()?;
        Ok(match pbw.quotient(&rels)? {
            Quotient::Finite { table, surjection } => Built::Finite { table, surjection },
            Quotient::Presented(p) => Built::Presented(p),
        })
    }

    /// The table algebra, or an error when finiteness is not certified.
    pub fn table(&self) -> Result<TableAlgebra, DslError> {
        match self.build()? {
            Built::Finite { table, .. } => Ok(table),
            Built::Presented(p) => Err(DslError::Algebra(format!("no finite basis certified for {p}"))),
        }
    }
}

impl Built {
    /// Coordinates of an element written in the presentation's names.
    pub fn element(&self, p: &Presentation, text: &str) -> Result<Vector, DslError> {
        let Built::Finite { surjection, .. } = self else {
            return Err(DslError::Algebra("elements need a finite algebra".into()));
        };
        let e = parse_expr(text)?;
        let (pbw, _) = p.pbw()?;
        Ok(surjection.eval(&p.eval(&pbw, &e)?)?)
    }
}
