//! Exact linear algebra over GF(2) in small dimension.
//!
//! A vector of (Z2)^n is a bitmask: bit `k` is the coefficient of the basis
//! vector `e_{k+1}`. Nonzero vectors double as facet colors; for n = 3 the
//! seven colors are the integers 1..=7, and that integer order is the
//! canonical color order used for every deterministic listing in this crate.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;
use std::fmt;
use std::ops::BitXor;

/// Largest dimension representable in the bitmask encoding.
pub const MAX_DIM: u8 = 8;

/// An element of (Z2)^n, n <= 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    bits: u8,
    dim: u8,
}

impl Gf2Vector {
    /// First standard basis vector of (Z2)^3.
    pub const E1: Gf2Vector = Gf2Vector { bits: 0b001, dim: 3 };
    /// Second standard basis vector of (Z2)^3.
    pub const E2: Gf2Vector = Gf2Vector { bits: 0b010, dim: 3 };
    /// Third standard basis vector of (Z2)^3.
    pub const E3: Gf2Vector = Gf2Vector { bits: 0b100, dim: 3 };

    pub fn new(bits: u8, dim: u8) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "dimension must be between 1 and {MAX_DIM}, got {dim}"
            )));
        }
        if dim < 8 && bits >= 1 << dim {
            return Err(Error::VectorOutOfRange { bits, dim });
        }
        Ok(Gf2Vector { bits, dim })
    }

    /// The color with index `index` in the canonical order 1..=7 (dimension 3).
    pub fn color(index: u8) -> Result<Self> {
        if index == 0 {
            return Err(Error::ZeroColor);
        }
        Self::new(index, 3)
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// The canonical color index; equals the bitmask by construction.
    pub fn color_index(&self) -> u8 {
        self.bits
    }
}

impl BitXor for Gf2Vector {
    type Output = Gf2Vector;

    /// Vector addition in (Z2)^n. Panics if the dimensions differ.
    fn bitxor(self, rhs: Gf2Vector) -> Gf2Vector {
        assert_eq!(self.dim, rhs.dim, "cannot add vectors of different dimension");
        Gf2Vector {
            bits: self.bits ^ rhs.bits,
            dim: self.dim,
        }
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return write!(f, "0");
        }
        let mut first = true;
        for k in 0..self.dim {
            if self.bits >> k & 1 == 1 {
                if !first {
                    write!(f, "+")?;
                }
                write!(f, "e{}", k + 1)?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Rank of a list of bitmask vectors, by in-place Gaussian elimination.
pub(crate) fn mask_rank(masks: &mut [u8]) -> usize {
    let mut rank = 0;
    for col in 0..MAX_DIM as usize {
        let bit = 1u8 << col;
        let Some(pivot) = (rank..masks.len()).find(|&i| masks[i] & bit != 0) else {
            continue;
        };
        masks.swap(rank, pivot);
        for i in 0..masks.len() {
            if i != rank && masks[i] & bit != 0 {
                masks[i] ^= masks[rank];
            }
        }
        rank += 1;
    }
    rank
}

/// Fast independence test for three nonzero vectors of (Z2)^3.
///
/// Valid only for nonzero inputs: a dependency among nonzero vectors is
/// either a repeated vector or a three-term relation `a + b + c = 0`.
#[inline]
pub(crate) fn triple_independent(a: u8, b: u8, c: u8) -> bool {
    a != b && a != c && b != c && a ^ b ^ c != 0
}

/// Whether the given vectors are linearly independent in (Z2)^n.
///
/// Lists longer than `n` are dependent by rank. Mixing dimensions is an
/// error. The test copies the input and eliminates in place; the arithmetic
/// is exact.
pub fn is_independent(vectors: &[Gf2Vector], n: u8) -> Result<bool> {
    let mut masks = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.dim(),
            });
        }
        masks.push(v.bits());
    }
    Ok(mask_rank(&mut masks) == vectors.len())
}

/// Order of the general linear group GL(n, Z2): the product of
/// `2^n - 2^(k-1)` over k = 1..=n. Returns 1 for n = 0 (empty product).
pub fn gl_order(n: u32) -> BigUint {
    let mut order = BigUint::one();
    let two_n = BigUint::from(2u32).pow(n);
    for k in 1..=n {
        order *= &two_n - BigUint::from(2u32).pow(k - 1);
    }
    order
}
