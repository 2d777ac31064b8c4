//! Finite fields of characteristic two.
//!
//! Elements of `GF(2^e)` are stored as bit patterns of polynomials over
//! `GF(2)` reduced modulo a fixed irreducible polynomial. Addition is XOR.

use crate::error::{Error, Result};

/// Field element, as the bit pattern of its representative polynomial.
pub type Fe = u32;

/// `GF(2^degree)` presented as `GF(2)[w]/(modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaseField {
    degree: u32,
    /// Bit pattern of the modulus including its leading term. `0b11` for `GF(2)`.
    modulus: u32,
}

impl Default for BaseField {
    fn default() -> Self {
        Self::gf2()
    }
}

impl BaseField {
    pub const CHARACTERISTIC: u32 = 2;

    pub fn gf2() -> Self {
        BaseField { degree: 1, modulus: 0b11 }
    }

    /// `GF(4) = GF(2)[w]/(w^2 + w + 1)`.
    pub fn gf4() -> Self {
        BaseField { degree: 2, modulus: 0b111 }
    }

    /// Extension of degree `degree` given by the irreducible `modulus`.
    pub fn extension(degree: u32, modulus: u32) -> Result<Self> {
        if degree == 0 || degree > 16 {
            return Err(Error::InvalidField(format!("unsupported degree {degree}")));
        }
        if degree == 1 && (modulus == 0 || modulus == 0b11) {
            return Ok(Self::gf2());
        }
        if bit_len(modulus) != degree + 1 {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:#b} does not have degree {degree}"
            )));
        }
        if !is_irreducible(modulus) {
            return Err(Error::InvalidField(format!("modulus {modulus:#b} is reducible")));
        }
        Ok(BaseField { degree, modulus })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        1 << self.degree
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if self.degree == 1 {
            return a & b;
        }
        let mut prod = clmul(a, b);
        let top = self.degree;
        for bit in (top..2 * top).rev() {
            if prod & (1 << bit) != 0 {
                prod ^= self.modulus << (bit - top);
            }
        }
        prod
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, (self.order() - 2) as u64))
        }
    }

    /// Inverse of the Frobenius `a -> a^2`.
    pub fn sqrt(&self, a: Fe) -> Fe {
        self.pow(a, 1u64 << (self.degree - 1))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.order()
    }
}

fn bit_len(x: u32) -> u32 {
    32 - x.leading_zeros()
}

fn clmul(a: u32, b: u32) -> u32 {
    let mut r = 0;
    let mut b = b;
    let mut i = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a << i;
        }
        b >>= 1;
        i += 1;
    }
    r
}

fn poly_mod(mut a: u32, m: u32) -> u32 {
    let dm = bit_len(m);
    while bit_len(a) >= dm {
        a ^= m << (bit_len(a) - dm);
    }
    a
}

/// Trial division by every polynomial of degree at most half.
fn is_irreducible(m: u32) -> bool {
    let d = bit_len(m) - 1;
    if d == 0 {
        return false;
    }
    (2u32..(1 << (d / 2 + 1))).all(|p| bit_len(p) - 1 > d / 2 || poly_mod(m, p) != 0)
}
