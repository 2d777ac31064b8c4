use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dalgebra::{make_o_g, PbwAlgebra, PbwElem};
use crate::error::{Error, Result};
use crate::{BaseField, Fe};

/// `x_0^{e_0} .. x_{r-1}^{e_{r-1}} y^S`, with `S` a bitmask.
type Key = (Vec<i64>, u32);

/// An element of the `r`-fold tensor power of `O(G) = k[x, x^-1, y]/(y^2)`.
///
/// Factors `i < j` commute up to the central square-zero term `y_i y_j`:
/// `x_j^a x_i^b = x_i^b x_j^a + a b y_i y_j x_i^(b-1) x_j^(a-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElem {
    pub r: usize,
    terms: BTreeMap<Key, Fe>,
}

impl TensorElem {
    pub fn zero(r: usize) -> Self {
        TensorElem { r, terms: BTreeMap::new() }
    }

    fn monomial(r: usize, key: Key, c: Fe) -> Self {
        let mut e = Self::zero(r);
        e.add_term(key, c);
        e
    }

    pub fn one(r: usize) -> Self {
        Self::monomial(r, (vec![0; r], 0), 1)
    }

    pub fn x_pow(r: usize, i: usize, e: i64) -> Self {
        let mut x = vec![0; r];
        x[i] = e;
        Self::monomial(r, (x, 0), 1)
    }

    pub fn y(r: usize, i: usize) -> Self {
        Self::monomial(r, (vec![0; r], 1 << i), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, Fe)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    fn add_term(&mut self, key: Key, c: Fe) {
        if c == 0 {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn add(&self, other: &TensorElem) -> TensorElem {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn from_pbw(p: &PbwElem) -> TensorElem {
        let mut out = Self::zero(1);
        for (m, c) in p.terms() {
            out.add_term((vec![m.x[0]], m.y as u32), c);
        }
        out
    }

    /// Places a factor of a smaller power at the given tensor positions.
    fn embed(&self, r: usize, positions: &[usize]) -> TensorElem {
        let mut out = Self::zero(r);
        for ((x, s), c) in self.terms() {
            let mut nx = vec![0; r];
            let mut ns = 0;
            for (k, &p) in positions.iter().enumerate() {
                nx[p] = x[k];
                ns |= (s >> k & 1) << p;
            }
            out.add_term((nx, ns), c);
        }
        out
    }
}

/// Arithmetic in tensor powers of `O(G)` with exponents confined to a window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaurentTensors {
    pub field: BaseField,
    pub lo: i64,
    pub hi: i64,
}

impl LaurentTensors {
    fn check(&self, x: &[i64]) -> Result<()> {
        match x.iter().find(|&&e| e < self.lo || e > self.hi) {
            Some(&exponent) => Err(Error::WindowOverflow { exponent, lo: self.lo, hi: self.hi }),
            None => Ok(()),
        }
    }

    /// `(x^c y^U) x_i^b`, normal ordered.
    fn times_x_pow(&self, r: usize, (c, u): &Key, i: usize, b: i64, out: &mut TensorElem) -> Result<()> {
        let mut main = c.clone();
        main[i] += b;
        self.check(&main)?;
        out.add_term((main, *u), 1);
        for j in i + 1..r {
            let pair = 1 << i | 1 << j;
            if (c[j] * b) & 1 == 1 && u & pair == 0 {
                let mut corr = c.clone();
                corr[i] += b - 1;
                corr[j] -= 1;
                self.check(&corr)?;
                out.add_term((corr, u | pair), 1);
            }
        }
        Ok(())
    }

    pub fn mul(&self, a: &TensorElem, b: &TensorElem) -> Result<TensorElem> {
        let r = a.r;
        let f = self.field;
        let mut out = TensorElem::zero(r);
        for ((bx, bs), bc) in b.terms() {
            for ((ax, as_), ac) in a.terms() {
                if as_ & bs != 0 {
                    continue;
                }
                let mut acc = TensorElem::monomial(r, (ax.clone(), as_ | bs), f.mul(ac, bc));
                for (i, &e) in bx.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let mut next = TensorElem::zero(r);
                    for (key, c) in acc.terms() {
                        let mut part = TensorElem::zero(r);
                        self.times_x_pow(r, key, i, e, &mut part)?;
                        for (k2, c2) in part.terms() {
                            next.add_term(k2.clone(), f.mul(c, c2));
                        }
                    }
                    acc = next;
                }
                out = out.add(&acc);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, a: &TensorElem, e: u32) -> Result<TensorElem> {
        let mut out = TensorElem::one(a.r);
        for _ in 0..e {
            out = self.mul(&out, a)?;
        }
        Ok(out)
    }

    /// `D x_i^e = e x_i^(e-1) y_i`, extended as a derivation; the `y_i` are central.
    pub fn apply_d(&self, a: &TensorElem) -> Result<TensorElem> {
        let mut out = TensorElem::zero(a.r);
        for ((x, s), c) in a.terms() {
            for i in 0..a.r {
                if x[i] & 1 == 1 && s >> i & 1 == 0 {
                    let mut nx = x.clone();
                    nx[i] -= 1;
                    self.check(&nx)?;
                    out.add_term((nx, s | 1 << i), c);
                }
            }
        }
        Ok(out)
    }

    /// Extends images of `x`, `x^-1` and `y` multiplicatively to `O(G)`.
    fn extend(&self, a: &TensorElem, r: usize, x: &TensorElem, x_inv: &TensorElem, y: &TensorElem) -> Result<TensorElem> {
        let f = self.field;
        let mut out = TensorElem::zero(r);
        for ((e, s), c) in a.terms() {
            let base = if e[0] >= 0 { x } else { x_inv };
            let mut img = self.pow(base, e[0].unsigned_abs() as u32)?;
            if s & 1 == 1 {
                img = self.mul(&img, y)?;
            }
            for (k, c2) in img.terms() {
                out.add_term(k.clone(), f.mul(c, c2));
            }
        }
        Ok(out)
    }

    /// Applies `phi` to the tensor factor at `slot`, leaving the others in place.
    fn on_factor(
        &self,
        a: &TensorElem,
        slot: usize,
        width: usize,
        phi: &dyn Fn(&TensorElem) -> Result<TensorElem>,
    ) -> Result<TensorElem> {
        let r = a.r + width - 1;
        let f = self.field;
        let mut out = TensorElem::zero(r);
        for ((x, s), c) in a.terms() {
            let mut acc = TensorElem::one(r);
            for k in 0..a.r {
                let factor = TensorElem::monomial(1, (vec![x[k]], s >> k & 1), 1);
                let shift = if k < slot { k } else if k == slot { slot } else { k + width - 1 };
                let placed = if k == slot {
                    let positions: Vec<usize> = (slot..slot + width).collect();
                    phi(&factor)?.embed(r, &positions)
                } else {
                    factor.embed(r, &[shift])
                };
                acc = self.mul(&acc, &placed)?;
            }
            for (k, c2) in acc.terms() {
                out.add_term(k.clone(), f.mul(c, c2));
            }
        }
        Ok(out)
    }
}

/// `O(G)` with its comultiplication, counit and antipode on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData {
    pub algebra: PbwAlgebra,
    pub arith: LaurentTensors,
    /// `Δx = x (x) x`.
    pub delta_x: TensorElem,
    /// `Δy = y (x) x + x (x) y`.
    pub delta_y: TensorElem,
    /// `ε(x) = 1`, `ε(y) = 0`.
    pub counit: (Fe, Fe),
    /// `S(x) = x^-1`.
    pub antipode_x: TensorElem,
    /// `S(y) = x^-2 y`.
    pub antipode_y: TensorElem,
}

pub fn o_g_hopf(field: BaseField, lo: i64, hi: i64) -> Result<HopfData> {
    let arith = LaurentTensors { field, lo, hi };
    let (x1, x2) = (TensorElem::x_pow(2, 0, 1), TensorElem::x_pow(2, 1, 1));
    let (y1, y2) = (TensorElem::y(2, 0), TensorElem::y(2, 1));
    Ok(HopfData {
        algebra: make_o_g(field, lo, hi),
        arith,
        delta_x: arith.mul(&x1, &x2)?,
        delta_y: arith.mul(&y1, &x2)?.add(&arith.mul(&x1, &y2)?),
        counit: (1, 0),
        antipode_x: TensorElem::x_pow(1, 0, -1),
        antipode_y: arith.mul(&TensorElem::x_pow(1, 0, -2), &TensorElem::y(1, 0))?,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HopfReport {
    pub coassociativity: bool,
    pub counit: bool,
    pub antipode: bool,
    pub d_equivariant: bool,
    /// `s = x^-1 y` satisfies `Δs = s (x) 1 + 1 (x) s`.
    pub primitive_s: bool,
    pub elements_checked: usize,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.coassociativity && self.counit && self.antipode && self.d_equivariant && self.primitive_s
    }
}

impl HopfData {
    pub fn comultiply(&self, a: &TensorElem) -> Result<TensorElem> {
        let ar = &self.arith;
        let x_inv = ar.mul(&TensorElem::x_pow(2, 1, -1), &TensorElem::x_pow(2, 0, -1))?;
        ar.extend(a, 2, &self.delta_x, &x_inv, &self.delta_y)
    }

    pub fn apply_counit(&self, a: &TensorElem) -> Fe {
        let f = self.arith.field;
        let (ex, _) = self.counit;
        a.terms().filter(|((_, s), _)| *s == 0).fold(0, |acc, ((x, _), c)| {
            let base = if x[0] < 0 { f.inv(ex).unwrap_or(0) } else { ex };
            f.add(acc, f.mul(c, f.pow(base, x[0].unsigned_abs())))
        })
    }

    pub fn apply_antipode(&self, a: &TensorElem) -> Result<TensorElem> {
        self.arith.extend(a, 1, &self.antipode_x, &TensorElem::x_pow(1, 0, 1), &self.antipode_y)
    }

    /// `m: O (x) O -> O`; `O(G)` itself is commutative.
    fn multiply(&self, a: &TensorElem) -> Result<TensorElem> {
        let ar = &self.arith;
        let mut out = TensorElem::zero(1);
        for ((x, s), c) in a.terms() {
            let left = TensorElem::monomial(1, (vec![x[0]], s & 1), c);
            let right = TensorElem::monomial(1, (vec![x[1]], s >> 1 & 1), 1);
            out = out.add(&ar.mul(&left, &right)?);
        }
        Ok(out)
    }

    fn scalar(&self, c: Fe) -> TensorElem {
        TensorElem::monomial(1, (vec![0], 0), c)
    }

    fn check_element(&self, a: &TensorElem) -> Result<(bool, bool, bool, bool)> {
        let ar = &self.arith;
        let delta = self.comultiply(a)?;
        let left = ar.on_factor(&delta, 0, 2, &|t| self.comultiply(t))?;
        let right = ar.on_factor(&delta, 1, 2, &|t| self.comultiply(t))?;
        let coassoc = left == right;

        let counit_fn = |t: &TensorElem| -> Result<TensorElem> { Ok(self.scalar(self.apply_counit(t))) };
        let strip = |t: &TensorElem, keep: usize| -> TensorElem {
            let mut out = TensorElem::zero(1);
            for ((x, s), c) in t.terms() {
                out.add_term((vec![x[keep]], s >> keep & 1), c);
            }
            out
        };
        let eps_left = strip(&ar.on_factor(&delta, 0, 1, &counit_fn)?, 1);
        let eps_right = strip(&ar.on_factor(&delta, 1, 1, &counit_fn)?, 0);
        let counit = eps_left == *a && eps_right == *a;

        let unit = self.scalar(self.apply_counit(a));
        let s_left = self.multiply(&ar.on_factor(&delta, 0, 1, &|t| self.apply_antipode(t))?)?;
        let s_right = self.multiply(&ar.on_factor(&delta, 1, 1, &|t| self.apply_antipode(t))?)?;
        let antipode = s_left == unit && s_right == unit;

        let d_eq = self.comultiply(&ar.apply_d(a)?)? == ar.apply_d(&delta)?;
        Ok((coassoc, counit, antipode, d_eq))
    }

    fn random_element(&self, rng: &mut ChaCha8Rng) -> TensorElem {
        let f = self.arith.field;
        let mut out = TensorElem::zero(1);
        for _ in 0..rng.gen_range(1..=3) {
            let key = (vec![rng.gen_range(-2..=2)], rng.gen_range(0..2));
            out.add_term(key, rng.gen_range(1..f.order()));
        }
        out
    }
}

/// Hopf identities on the generators and on `sample` seeded random elements.
pub fn hopf_check(h: &HopfData, sample: usize, seed: u64) -> Result<HopfReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut elems = vec![TensorElem::x_pow(1, 0, 1), TensorElem::x_pow(1, 0, -1), TensorElem::y(1, 0)];
    elems.extend((0..sample).map(|_| h.random_element(&mut rng)));
    let mut report = HopfReport {
        coassociativity: true,
        counit: true,
        antipode: true,
        d_equivariant: true,
        primitive_s: false,
        elements_checked: elems.len(),
    };
    for a in &elems {
        let (c, e, s, d) = h.check_element(a)?;
        report.coassociativity &= c;
        report.counit &= e;
        report.antipode &= s;
        report.d_equivariant &= d;
    }
    let ar = &h.arith;
    let s = ar.mul(&TensorElem::x_pow(1, 0, -1), &TensorElem::y(1, 0))?;
    let s1 = ar.mul(&TensorElem::x_pow(2, 0, -1), &TensorElem::y(2, 0))?;
    let s2 = ar.mul(&TensorElem::x_pow(2, 1, -1), &TensorElem::y(2, 1))?;
    report.primitive_s = h.comultiply(&s)? == s1.add(&s2);
    Ok(report)
}
