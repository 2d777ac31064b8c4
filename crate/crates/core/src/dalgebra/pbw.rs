//! PBW-presented algebras: quotients of `Sym(P^m (+) 1^n)`.
//!
//! Generators come in pairs `(x_i, y_i)` with `D x_i = y_i`, plus central
//! `D`-invariant generators `z_j`. In `Sym(P^m (+) 1^n)` the `y_i` and `z_j`
//! are central, `y_i^2 = 0`, and for `i < j` the only non-commuting pair
//! obeys `x_j x_i = x_i x_j + y_i y_j`. Normal-form monomials are
//! `x^a y^eps z^c` with the `x` word sorted.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{BaseField, Fe};
use crate::linalg::{Subspace, Vector};

use super::morphism::PresentedMorphism;
use super::table::TableAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: Vec<i64>,
    /// Bit `i` set iff `y_i` occurs.
    pub y: u64,
    pub z: Vec<i64>,
}

impl Monomial {
    pub fn one(m: usize, n: usize) -> Self {
        Monomial { x: vec![0; m], y: 0, z: vec![0; n] }
    }

    pub fn degree(&self) -> i64 {
        self.x.iter().sum::<i64>() + self.y.count_ones() as i64 + self.z.iter().sum::<i64>()
    }

    fn y_bits(&self, m: usize) -> Vec<bool> {
        (0..m).map(|i| self.y >> i & 1 == 1).collect()
    }
}

impl Ord for Monomial {
    /// Degree first; within a degree, a higher power of an earlier variable in
    /// `x_1, x_2, ..., y_1, ..., z_1, ...` sorts first (so `x^2 < x y < y^2`).
    fn cmp(&self, other: &Self) -> Ordering {
        let m = self.x.len();
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.x.cmp(&self.x))
            .then_with(|| other.y_bits(m).cmp(&self.y_bits(m)))
            .then_with(|| other.z.cmp(&self.z))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A linear combination of normal-form monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PbwElem {
    terms: BTreeMap<Monomial, Fe>,
}

impl PbwElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, 1)
    }

    pub fn term(m: Monomial, c: Fe) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        PbwElem { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Fe)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn add_term(&mut self, m: Monomial, c: Fe) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() ^= c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &PbwElem) -> PbwElem {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, f: &BaseField, c: Fe) -> PbwElem {
        let mut out = PbwElem::zero();
        for (m, v) in self.terms() {
            out.add_term(m.clone(), f.mul(c, v));
        }
        out
    }

    /// Highest degree of a term, or `-1` for zero.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(-1)
    }

    pub fn leading(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }
}

/// A letter of an input word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    X(usize),
    Y(usize),
    Z(usize),
    XInv(usize),
    ZInv(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwAlgebra {
    field: BaseField,
    x_names: Vec<String>,
    y_names: Vec<String>,
    z_names: Vec<String>,
    inverted_x: Vec<bool>,
    inverted_z: Vec<bool>,
    relations: Vec<PbwElem>,
    degree_bound: Option<u32>,
    window: Option<(i64, i64)>,
}

/// Result of [`PbwAlgebra::quotient`].
#[derive(Clone, Debug)]
pub enum Quotient {
    Finite { table: TableAlgebra, surjection: PresentedMorphism },
    /// Finiteness could not be certified; the presentation with the enlarged
    /// relation set.
    Presented(PbwAlgebra),
}

impl Quotient {
    pub fn into_table(self) -> Result<TableAlgebra> {
        match self {
            Quotient::Finite { table, .. } => Ok(table),
            Quotient::Presented(_) => Err(Error::Inconclusive("no finite basis certified".into())),
        }
    }
}

/// Largest degree tried when certifying that a quotient is finite.
pub const MAX_CERTIFY_DEGREE: i64 = 10;

impl PbwAlgebra {
    /// `Sym(P^m (+) 1^n)`, truncated above `degree_bound` when given.
    pub fn sym(field: BaseField, m: usize, n: usize, degree_bound: Option<u32>) -> Self {
        let (x_names, y_names) = if m == 1 {
            (vec!["x".to_string()], vec!["y".to_string()])
        } else {
            ((1..=m).map(|i| format!("x{i}")).collect(), (1..=m).map(|i| format!("y{i}")).collect())
        };
        let z_names = if n == 1 { vec!["z".to_string()] } else { (1..=n).map(|j| format!("z{j}")).collect() };
        PbwAlgebra {
            field,
            x_names,
            y_names,
            z_names,
            inverted_x: vec![false; m],
            inverted_z: vec![false; n],
            relations: Vec::new(),
            degree_bound,
            window: None,
        }
    }

    pub fn with_names(mut self, x: Vec<String>, y: Vec<String>, z: Vec<String>) -> Result<Self> {
        if x.len() != self.m() || y.len() != self.m() || z.len() != self.n() {
            return Err(Error::DimensionMismatch("wrong number of generator names".into()));
        }
        self.x_names = x;
        self.y_names = y;
        self.z_names = z;
        Ok(self)
    }

    /// Adjoin `x_i^{-1}`. Only supported when there is a single pair, where the
    /// `x`-part is commutative.
    pub fn invert_x(mut self, i: usize) -> Result<Self> {
        if self.m() != 1 {
            return Err(Error::Unsupported("inverted x generators need exactly one pair".into()));
        }
        if self.degree_bound.is_some() {
            return Err(Error::Unsupported("inverted generators with a degree bound".into()));
        }
        self.inverted_x[i] = true;
        Ok(self)
    }

    pub fn invert_z(mut self, j: usize) -> Result<Self> {
        if self.degree_bound.is_some() {
            return Err(Error::Unsupported("inverted generators with a degree bound".into()));
        }
        self.inverted_z[j] = true;
        Ok(self)
    }

    /// Restrict exponents of inverted generators to `[lo, hi]`.
    pub fn with_window(mut self, lo: i64, hi: i64) -> Self {
        self.window = Some((lo, hi));
        self
    }

    /// Add relations, closing the set under `D`.
    pub fn with_relations(mut self, rels: &[PbwElem]) -> Result<Self> {
        for r in rels {
            self.relations.push(r.clone());
            let dr = self.apply_d(r)?;
            if !dr.is_zero() {
                self.relations.push(dr);
            }
        }
        Ok(self)
    }

    pub fn field(&self) -> &BaseField {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.x_names.len()
    }

    pub fn n(&self) -> usize {
        self.z_names.len()
    }

    pub fn x_names(&self) -> &[String] {
        &self.x_names
    }

    pub fn y_names(&self) -> &[String] {
        &self.y_names
    }

    pub fn z_names(&self) -> &[String] {
        &self.z_names
    }

    pub fn inverted_x(&self) -> &[bool] {
        &self.inverted_x
    }

    pub fn inverted_z(&self) -> &[bool] {
        &self.inverted_z
    }

    pub fn relations(&self) -> &[PbwElem] {
        &self.relations
    }

    pub fn degree_bound(&self) -> Option<u32> {
        self.degree_bound
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        self.window
    }

    pub fn has_inverses(&self) -> bool {
        self.inverted_x.iter().chain(&self.inverted_z).any(|&b| b)
    }

    pub fn one(&self) -> PbwElem {
        PbwElem::monomial(Monomial::one(self.m(), self.n()))
    }

    pub fn x(&self, i: usize) -> PbwElem {
        self.x_pow(i, 1)
    }

    pub fn x_pow(&self, i: usize, e: i64) -> PbwElem {
        let mut mono = Monomial::one(self.m(), self.n());
        mono.x[i] = e;
        PbwElem::monomial(mono)
    }

    pub fn y(&self, i: usize) -> PbwElem {
        let mut mono = Monomial::one(self.m(), self.n());
        mono.y = 1 << i;
        PbwElem::monomial(mono)
    }

    pub fn z(&self, j: usize) -> PbwElem {
        self.z_pow(j, 1)
    }

    pub fn z_pow(&self, j: usize, e: i64) -> PbwElem {
        let mut mono = Monomial::one(self.m(), self.n());
        mono.z[j] = e;
        PbwElem::monomial(mono)
    }

    pub fn scalar(&self, c: Fe) -> PbwElem {
        PbwElem::term(Monomial::one(self.m(), self.n()), c)
    }

    fn check_window(&self, e: i64) -> Result<()> {
        if let Some((lo, hi)) = self.window {
            if e < lo || e > hi {
                return Err(Error::WindowOverflow { exponent: e, lo, hi });
            }
        }
        Ok(())
    }

    fn within_bound(&self, mono: &Monomial) -> bool {
        self.degree_bound.is_none_or(|b| mono.degree() <= b as i64)
    }

    /// Rewrite a raw `x`-word times a central part into normal form.
    /// `pick` chooses which descent to rewrite next.
    fn rewrite(
        &self,
        word: Vec<usize>,
        y: u64,
        z: Vec<i64>,
        coeff: Fe,
        pick: &mut dyn FnMut(usize) -> usize,
        out: &mut PbwElem,
    ) {
        let m = self.m();
        let mut stack = vec![(word, y)];
        while let Some((w, mask)) = stack.pop() {
            let descents: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&p| w[p] > w[p + 1]).collect();
            if descents.is_empty() {
                let mut x = vec![0i64; m];
                for &g in &w {
                    x[g] += 1;
                }
                let mono = Monomial { x, y: mask, z: z.clone() };
                if self.within_bound(&mono) {
                    out.add_term(mono, coeff);
                }
                continue;
            }
            let p = descents[pick(descents.len())];
            let (j, i) = (w[p], w[p + 1]);
            // x_j x_i = x_i x_j + y_i y_j
            let mut swapped = w.clone();
            swapped.swap(p, p + 1);
            stack.push((swapped, mask));
            let bits = (1u64 << i) | (1u64 << j);
            if mask & bits == 0 {
                let mut shorter = w[..p].to_vec();
                shorter.extend_from_slice(&w[p + 2..]);
                stack.push((shorter, mask | bits));
            }
        }
    }

    fn word_degree(word: &[Letter]) -> i64 {
        word.len() as i64
    }

    /// Normal form of a word in the generators, rewriting the leftmost descent first.
    pub fn normal_form(&self, word: &[Letter]) -> Result<PbwElem> {
        self.normal_form_with(word, &mut |_| 0)
    }

    /// Normal form with a caller-chosen rewriting order: `pick(k)` selects one
    /// of the `k` current descents.
    pub fn normal_form_with(&self, word: &[Letter], pick: &mut dyn FnMut(usize) -> usize) -> Result<PbwElem> {
        if let Some(b) = self.degree_bound {
            let deg = Self::word_degree(word);
            if deg > b as i64 {
                return Err(Error::DegreeOverflow { degree: deg as u32, bound: b });
            }
        }
        let (m, n) = (self.m(), self.n());
        let mut xword = Vec::new();
        let mut xexp = vec![0i64; m];
        let mut mask = 0u64;
        let mut z = vec![0i64; n];
        for &l in word {
            match l {
                Letter::X(i) if i < m => {
                    xword.push(i);
                    xexp[i] += 1;
                }
                Letter::XInv(i) if i < m => {
                    if !self.inverted_x[i] {
                        return Err(Error::InvalidInput(format!("{} is not inverted", self.x_names[i])));
                    }
                    xexp[i] -= 1;
                }
                Letter::Y(i) if i < m => {
                    if mask >> i & 1 == 1 {
                        return Ok(PbwElem::zero());
                    }
                    mask |= 1 << i;
                }
                Letter::Z(j) if j < n => z[j] += 1,
                Letter::ZInv(j) if j < n => {
                    if !self.inverted_z[j] {
                        return Err(Error::InvalidInput(format!("{} is not inverted", self.z_names[j])));
                    }
                    z[j] -= 1;
                }
                other => return Err(Error::InvalidInput(format!("unknown generator {other:?}"))),
            }
        }
        for (j, &e) in z.iter().enumerate() {
            if self.inverted_z[j] {
                self.check_window(e)?;
            }
        }
        let mut out = PbwElem::zero();
        if m <= 1 {
            if m == 1 && self.inverted_x[0] {
                self.check_window(xexp[0])?;
            }
            let mono = Monomial { x: xexp, y: mask, z };
            if self.within_bound(&mono) {
                out.add_term(mono, 1);
            }
        } else {
            self.rewrite(xword, mask, z, 1, pick, &mut out);
        }
        Ok(out)
    }

    fn expand_word(mono: &Monomial) -> Vec<usize> {
        mono.x
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e.max(0) as usize))
            .collect()
    }

    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Result<PbwElem> {
        if a.y & b.y != 0 {
            return Ok(PbwElem::zero());
        }
        let mask = a.y | b.y;
        let z: Vec<i64> = a.z.iter().zip(&b.z).map(|(p, q)| p + q).collect();
        for (j, &e) in z.iter().enumerate() {
            if self.inverted_z[j] {
                self.check_window(e)?;
            }
        }
        let mut out = PbwElem::zero();
        if self.m() <= 1 {
            let x: Vec<i64> = a.x.iter().zip(&b.x).map(|(p, q)| p + q).collect();
            if self.m() == 1 && self.inverted_x[0] {
                self.check_window(x[0])?;
            }
            let mono = Monomial { x, y: mask, z };
            if self.within_bound(&mono) {
                out.add_term(mono, 1);
            }
        } else {
            let mut word = Self::expand_word(a);
            word.extend(Self::expand_word(b));
            self.rewrite(word, mask, z, 1, &mut |_| 0, &mut out);
        }
        Ok(out)
    }

    pub fn mul(&self, a: &PbwElem, b: &PbwElem) -> Result<PbwElem> {
        let f = self.field;
        let mut out = PbwElem::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let c = f.mul(ca, cb);
                for (mono, v) in self.mul_monomials(ma, mb)?.terms() {
                    out.add_term(mono.clone(), f.mul(c, v));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, a: &PbwElem, e: u32) -> Result<PbwElem> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// `D` on a normal-form monomial: `D(x_i) = y_i`, `D(y) = D(z) = 0`, extended
    /// by the Leibniz rule (so `D(x^e) = e x^{e-1} y` for a single pair).
    pub fn apply_d_monomial(&self, mono: &Monomial) -> Result<PbwElem> {
        let mut out = PbwElem::zero();
        for (i, &e) in mono.x.iter().enumerate() {
            if e.rem_euclid(2) == 0 || mono.y >> i & 1 == 1 {
                continue;
            }
            let mut t = mono.clone();
            t.x[i] -= 1;
            t.y |= 1 << i;
            if self.inverted_x[i] {
                self.check_window(t.x[i])?;
            }
            if self.within_bound(&t) {
                out.add_term(t, 1);
            }
        }
        Ok(out)
    }

    pub fn apply_d(&self, a: &PbwElem) -> Result<PbwElem> {
        let mut out = PbwElem::zero();
        for (mono, c) in a.terms() {
            for (t, v) in self.apply_d_monomial(mono)?.terms() {
                out.add_term(t.clone(), self.field.mul(c, v));
            }
        }
        Ok(out)
    }

    /// All normal-form monomials of degree at most `bound` (no inverses).
    pub fn monomials_up_to(&self, bound: i64) -> Vec<Monomial> {
        let (m, n) = (self.m(), self.n());
        let mut out = Vec::new();
        for ymask in 0u64..(1 << m) {
            let ydeg = ymask.count_ones() as i64;
            if ydeg > bound {
                continue;
            }
            let mut exps = vec![0i64; m + n];
            loop {
                let total: i64 = exps.iter().sum::<i64>() + ydeg;
                if total <= bound {
                    out.push(Monomial { x: exps[..m].to_vec(), y: ymask, z: exps[m..].to_vec() });
                }
                // odometer over exponent vectors with sum <= bound - ydeg
                let mut k = 0;
                loop {
                    if k == m + n {
                        break;
                    }
                    exps[k] += 1;
                    if exps.iter().sum::<i64>() + ydeg <= bound {
                        break;
                    }
                    exps[k] = 0;
                    k += 1;
                }
                if k == m + n {
                    break;
                }
            }
        }
        out.sort();
        out
    }

    pub fn format_monomial(&self, mono: &Monomial) -> String {
        let mut parts = Vec::new();
        let pw = |name: &str, e: i64| if e == 1 { name.to_string() } else { format!("{name}^{e}") };
        for (i, &e) in mono.x.iter().enumerate() {
            if e != 0 {
                parts.push(pw(&self.x_names[i], e));
            }
        }
        for i in 0..self.m() {
            if mono.y >> i & 1 == 1 {
                parts.push(self.y_names[i].clone());
            }
        }
        for (j, &e) in mono.z.iter().enumerate() {
            if e != 0 {
                parts.push(pw(&self.z_names[j], e));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    pub fn format(&self, a: &PbwElem) -> String {
        if a.is_zero() {
            return "0".into();
        }
        a.terms()
            .map(|(m, c)| {
                let s = self.format_monomial(m);
                if c == 1 {
                    s
                } else if s == "1" {
                    c.to_string()
                } else {
                    format!("{c} {s}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// The finite truncation as a table algebra, with its monomial basis.
    pub fn to_table(&self) -> Result<(TableAlgebra, Vec<Monomial>)> {
        let bound = self
            .degree_bound
            .ok_or_else(|| Error::Unsupported("table of an untruncated algebra".into()))?;
        if self.has_inverses() {
            return Err(Error::Unsupported("table of an algebra with inverses".into()));
        }
        let basis = self.monomials_up_to(bound as i64);
        let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let n = basis.len();
        let to_vec = |e: &PbwElem| -> Vector {
            let mut v = vec![0; n];
            for (mono, c) in e.terms() {
                v[index[mono]] ^= c;
            }
            v
        };
        let names = basis.iter().map(|m| self.format_monomial(m)).collect();
        let mut unit = vec![0; n];
        unit[0] = 1;
        let mut d_cols = Vec::with_capacity(n);
        for mono in &basis {
            d_cols.push(to_vec(&self.apply_d_monomial(mono)?));
        }
        let d = crate::linalg::Matrix::from_columns(self.field, n, &d_cols);
        let mut mult = Vec::with_capacity(n * n);
        for a in &basis {
            for b in &basis {
                mult.push(to_vec(&self.mul_monomials(a, b)?));
            }
        }
        let table = TableAlgebra::new(self.field, names, unit, mult, d)?;
        Ok((table, basis))
    }

    /// Coordinates of `e` in the monomial basis returned by [`Self::to_table`].
    pub fn coordinates(&self, basis: &[Monomial], e: &PbwElem) -> Result<Vector> {
        let mut v = vec![0; basis.len()];
        for (mono, c) in e.terms() {
            let idx = basis
                .iter()
                .position(|b| b == mono)
                .ok_or_else(|| Error::InvalidInput("monomial outside the basis".into()))?;
            v[idx] ^= c;
        }
        Ok(v)
    }

    fn truncated(&self, bound: u32) -> PbwAlgebra {
        let mut t = self.clone();
        t.degree_bound = Some(bound);
        t.relations = Vec::new();
        t
    }

    fn drop_above(e: &PbwElem, bound: i64) -> PbwElem {
        let mut out = PbwElem::zero();
        for (m, c) in e.terms() {
            if m.degree() <= bound {
                out.add_term(m.clone(), c);
            }
        }
        out
    }

    /// Quotient by the ideal generated by `gens` together with the existing
    /// relations. The generating set is closed under `D` first.
    ///
    /// For untruncated algebras a finite basis is certified first through
    /// normal forms (see `filtered_quotient`), and failing that by showing
    /// that every monomial of some degree `N` lies in the ideal (using only
    /// genuine ideal elements `u * s`); then everything of degree `>= N` does too.
    pub fn quotient(&self, gens: &[PbwElem]) -> Result<Quotient> {
        let mut closed: Vec<PbwElem> = self.relations.clone();
        for g in gens {
            closed.push(g.clone());
            let dg = self.apply_d(g)?;
            if !dg.is_zero() {
                closed.push(dg);
            }
        }
        closed.retain(|e| !e.is_zero());

        if self.has_inverses() {
            let mut p = self.clone();
            p.relations = closed;
            return Ok(Quotient::Presented(p));
        }
        if let Some(b) = self.degree_bound {
            return self.finite_quotient(b as i64, &closed).map(|(table, surjection)| Quotient::Finite { table, surjection });
        }

        for reach in 2..=MAX_CERTIFY_DEGREE {
            if let Some((table, surjection)) = self.filtered_quotient(reach, &closed)? {
                return Ok(Quotient::Finite { table, surjection });
            }
        }
        let max_s = closed.iter().map(PbwElem::degree).max().unwrap_or(0).max(0);
        for cut in 0..=MAX_CERTIFY_DEGREE {
            let reach = cut + max_s;
            let basis = self.monomials_up_to(reach);
            let mut span = Vec::new();
            for s in &closed {
                for u in &basis {
                    if u.degree() + s.degree() > reach {
                        continue;
                    }
                    let us = self.mul(&PbwElem::monomial(u.clone()), s)?;
                    span.push(self.coordinates(&basis, &us)?);
                }
            }
            let ideal = Subspace::span(self.field, basis.len(), &span);
            let top_in_ideal = basis
                .iter()
                .enumerate()
                .filter(|(_, m)| m.degree() == cut)
                .all(|(i, _)| ideal.contains(&self.field, &crate::linalg::unit_vec(basis.len(), i)));
            if top_in_ideal {
                let (table, surjection) = self.finite_quotient(cut - 1, &closed)?;
                return Ok(Quotient::Finite { table, surjection });
            }
        }
        let mut p = self.clone();
        p.relations = closed;
        Ok(Quotient::Presented(p))
    }

    /// Certification for relations that are not homogeneous (such as
    /// `e^2 + e`). The ideal is approximated inside monomials of degree
    /// `<= reach` by closing the relations under multiplication by generators;
    /// normal forms are taken on the low-degree monomials left over. The
    /// candidate is accepted when those monomials stay below half of `reach`
    /// and the resulting table is a D-algebra: it then receives a surjection
    /// from the quotient and has at most its dimension.
    fn filtered_quotient(&self, reach: i64, closed: &[PbwElem]) -> Result<Option<(TableAlgebra, PresentedMorphism)>> {
        let f = self.field;
        let (m, n) = (self.m(), self.n());
        let (basis, ideal) = self.ideal_span(reach, closed)?;
        let to_vec = |e: &PbwElem| Self::vector_in(&f, &basis, e);
        let mut keep = ideal.complement_indices();
        keep.sort_by(|&i, &j| basis[i].cmp(&basis[j]));
        let top = keep.iter().map(|&i| basis[i].degree()).max().unwrap_or(-1);
        if 2 * top > reach || top >= reach {
            return Ok(None);
        }
        let project = |e: &PbwElem| -> Vector {
            let r = ideal.reduce(&f, &to_vec(e));
            keep.iter().map(|&i| r[i]).collect()
        };
        let names = keep.iter().map(|&i| self.format_monomial(&basis[i])).collect();
        let unit = project(&self.one());
        let mut d_cols = Vec::with_capacity(keep.len());
        for &i in &keep {
            d_cols.push(project(&self.apply_d_monomial(&basis[i])?));
        }
        let d = crate::linalg::Matrix::from_columns(f, keep.len(), &d_cols);
        let mut mult = Vec::with_capacity(keep.len() * keep.len());
        for &i in &keep {
            for &j in &keep {
                mult.push(project(&self.mul_monomials(&basis[i], &basis[j])?));
            }
        }
        let table = TableAlgebra::new(f, names, unit, mult, d)?;
        if !table.check_axioms().all_pass() {
            return Ok(None);
        }
        let x_images = (0..m).map(|i| project(&self.x(i))).collect();
        let z_images = (0..n).map(|j| project(&self.z(j))).collect();
        let mut source = self.clone();
        source.relations = closed.to_vec();
        Ok(Some((table.clone(), PresentedMorphism::new(source, table, x_images, z_images))))
    }

    /// Monomials of degree `<= reach`, high weight first (so pivots land on
    /// high-degree monomials and the survivors are low-degree ones, `x`
    /// preferred over its partner `y`), and the span of the ideal generated by
    /// `gens` inside them, closed under multiplication by generators.
    fn ideal_span(&self, reach: i64, gens: &[PbwElem]) -> Result<(Vec<Monomial>, Subspace)> {
        let f = self.field;
        let (m, n) = (self.m(), self.n());
        let weight = |mono: &Monomial| mono.degree() + mono.y.count_ones() as i64;
        let mut basis = self.monomials_up_to(reach);
        basis.sort_by(|a, b| {
            weight(b).cmp(&weight(a)).then_with(|| b.y.count_ones().cmp(&a.y.count_ones())).then_with(|| a.cmp(b))
        });
        let dim = basis.len();
        let to_elem = |v: &[Fe]| -> PbwElem {
            let mut e = PbwElem::zero();
            for (i, &c) in v.iter().enumerate() {
                if c != 0 {
                    e.add_term(basis[i].clone(), c);
                }
            }
            e
        };
        let letters: Vec<PbwElem> = (0..m).flat_map(|i| [self.x(i), self.y(i)]).chain((0..n).map(|j| self.z(j))).collect();
        let seeds: Vec<Vector> =
            gens.iter().filter(|s| s.degree() <= reach).map(|s| Self::vector_in(&f, &basis, s)).collect();
        let mut ideal = Subspace::span(f, dim, &seeds);
        loop {
            let mut more = ideal.basis().to_vec();
            for v in ideal.basis() {
                let e = to_elem(v);
                if e.degree() + 1 > reach {
                    continue;
                }
                for g in &letters {
                    more.push(Self::vector_in(&f, &basis, &self.mul(g, &e)?));
                    more.push(Self::vector_in(&f, &basis, &self.mul(&e, g)?));
                }
            }
            let next = Subspace::span(f, dim, &more);
            if next.dim() == ideal.dim() {
                return Ok((basis, ideal));
            }
            ideal = next;
        }
    }

    /// Coordinates in `basis`, dropping monomials outside it.
    fn vector_in(f: &BaseField, basis: &[Monomial], e: &PbwElem) -> Vector {
        let mut v = vec![0; basis.len()];
        for (mono, c) in e.terms() {
            if let Some(i) = basis.iter().position(|b| b == mono) {
                v[i] = f.add(v[i], c);
            }
        }
        v
    }

    /// Whether `e` lies in the two-sided ideal generated by `gens` (without
    /// closing under `D`). Membership is searched for among products of degree
    /// at most [`MAX_CERTIFY_DEGREE`]; `false` means no such expression exists.
    pub fn in_ideal(&self, gens: &[PbwElem], e: &PbwElem) -> Result<bool> {
        if e.is_zero() {
            return Ok(true);
        }
        if self.has_inverses() {
            return Err(Error::Unsupported("ideal membership with inverses".into()));
        }
        let top = self.degree_bound.map_or(MAX_CERTIFY_DEGREE, |b| (b as i64).min(MAX_CERTIFY_DEGREE));
        for reach in e.degree().max(1)..=top.max(e.degree()) {
            let (basis, ideal) = self.ideal_span(reach, gens)?;
            if ideal.contains(&self.field, &Self::vector_in(&self.field, &basis, e)) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Quotient of the truncation at `bound` (the zero algebra when `bound < 0`).
    fn finite_quotient(&self, bound: i64, closed: &[PbwElem]) -> Result<(TableAlgebra, PresentedMorphism)> {
        let (m, n) = (self.m(), self.n());
        if bound < 0 {
            let table = TableAlgebra::zero_algebra(self.field);
            let surjection = PresentedMorphism::new(self.clone(), table.clone(), vec![vec![]; m], vec![vec![]; n]);
            return Ok((table, surjection));
        }
        let trunc = self.truncated(bound as u32);
        let (table, basis) = trunc.to_table()?;
        let images: Vec<Vector> = closed
            .iter()
            .map(|s| trunc.coordinates(&basis, &Self::drop_above(s, bound)))
            .collect::<Result<_>>()?;
        let ideal = super::ideal_closure(&table, &images);
        let (q, proj) = table.quotient(&ideal);
        let img = |e: PbwElem| -> Result<Vector> {
            Ok(proj.apply(&trunc.coordinates(&basis, &Self::drop_above(&e, bound))?))
        };
        let x_images = (0..m).map(|i| img(self.x(i))).collect::<Result<Vec<_>>>()?;
        let z_images = (0..n).map(|j| img(self.z(j))).collect::<Result<Vec<_>>>()?;
        let mut source = self.clone();
        source.relations = closed.to_vec();
        Ok((q.clone(), PresentedMorphism::new(source, q, x_images, z_images)))
    }
}

impl fmt::Display for PbwAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sym(P^{} + 1^{})", self.m(), self.n())?;
        if let Some(b) = self.degree_bound {
            write!(f, " truncated at degree {b}")?;
        }
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| self.format(r)).collect();
            write!(f, " / ({})", rels.join(", "))?;
        }
        Ok(())
    }
}
