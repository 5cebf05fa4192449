//! Projective Pauli operators.
//!
//! A Pauli operator on `w` qubits is stored as a pair of GF(2) vectors
//! `(x, z)`. Phases are not represented, so `X·Z` and `Y` compare equal and
//! multiplication is a plain XOR of the two parts.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitVec;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
}

impl PauliOperator {
    pub fn identity(width: usize) -> Self {
        PauliOperator {
            x: BitVec::zeros(width),
            z: BitVec::zeros(width),
        }
    }

    pub fn from_parts(x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(PauliOperator { x, z })
    }

    /// `X` on `qubit`, identity elsewhere.
    pub fn single_x(width: usize, qubit: usize) -> Self {
        let mut p = Self::identity(width);
        p.x.set(qubit, true);
        p
    }

    pub fn single_z(width: usize, qubit: usize) -> Self {
        let mut p = Self::identity(width);
        p.z.set(qubit, true);
        p
    }

    /// Rebuilds an operator from its symplectic vector `x ++ z`.
    pub fn from_symplectic(v: &BitVec) -> Self {
        assert!(
            v.len().is_multiple_of(2),
            "symplectic vector must have even length"
        );
        let w = v.len() / 2;
        PauliOperator {
            x: v.slice(0, w),
            z: v.slice(w, w),
        }
    }

    /// The symplectic vector `x ++ z` of length `2 * width`.
    pub fn to_symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Number of qubits carrying a non-identity factor.
    pub fn weight(&self) -> usize {
        (0..self.width())
            .filter(|&q| self.x.get(q) || self.z.get(q))
            .count()
    }

    pub fn char_at(&self, qubit: usize) -> char {
        match (self.x.get(qubit), self.z.get(qubit)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }

    /// 1 iff the operators anticommute.
    pub fn symplectic_product(&self, other: &PauliOperator) -> Result<bool> {
        self.check_width(other)?;
        Ok(self.anticommutes(other))
    }

    /// Unchecked form of [`symplectic_product`](Self::symplectic_product);
    /// widths must agree.
    #[inline]
    pub fn anticommutes(&self, other: &PauliOperator) -> bool {
        debug_assert_eq!(self.width(), other.width());
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    /// Projective product.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        self.check_width(other)?;
        Ok(PauliOperator {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        })
    }

    pub fn mul_assign(&mut self, other: &PauliOperator) {
        debug_assert_eq!(self.width(), other.width());
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Tensor product with `self` on the leading qubits.
    pub fn tensor(&self, other: &PauliOperator) -> PauliOperator {
        PauliOperator {
            x: self.x.concat(&other.x),
            z: self.z.concat(&other.z),
        }
    }

    pub fn concat_all<'a, I: IntoIterator<Item = &'a PauliOperator>>(parts: I) -> PauliOperator {
        parts
            .into_iter()
            .fold(PauliOperator::identity(0), |acc, p| acc.tensor(p))
    }

    /// Restriction to qubits `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> PauliOperator {
        PauliOperator {
            x: self.x.slice(start, len),
            z: self.z.slice(start, len),
        }
    }

    fn check_width(&self, other: &PauliOperator) -> Result<()> {
        if self.width() != other.width() {
            return Err(Error::DimensionMismatch {
                expected: self.width(),
                found: other.width(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.width() {
            write!(f, "{}", self.char_at(q))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut p = PauliOperator::identity(chars.len());
        for (q, c) in chars.into_iter().enumerate() {
            match c {
                'I' => {}
                'X' => p.x.set(q, true),
                'Z' => p.z.set(q, true),
                'Y' => {
                    p.x.set(q, true);
                    p.z.set(q, true);
                }
                other => return Err(Error::InvalidPauliChar(other)),
            }
        }
        Ok(p)
    }
}

impl serde::Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Symplectic product of two vectors in `x ++ z` layout.
#[inline]
pub fn symplectic_dot(a: &BitVec, b: &BitVec) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let w = a.len() / 2;
    let mut acc = false;
    for i in a.ones() {
        let partner = if i < w { i + w } else { i - w };
        acc ^= b.get(partner);
    }
    acc
}

/// Swaps the `x` and `z` halves, so that `symplectic_dot(a, b) == a.dot(&swap_halves(b))`.
pub fn swap_halves(v: &BitVec) -> BitVec {
    let w = v.len() / 2;
    v.slice(w, w).concat(&v.slice(0, w))
}
