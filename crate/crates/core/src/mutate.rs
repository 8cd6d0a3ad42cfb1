//! Error models: single-digit substitution, adjacent transposition and
//! single-bit flips. Every mutation returns a fresh value; whether it
//! actually changed anything is a separate question for [`is_effective`].

use std::fmt;

use crate::digits::{Digit, DigitString};
use crate::error::{Error, Result};
use crate::postnet::BitString;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MutationKind {
    Substitute { position: usize, digit: Digit },
    /// Swaps `position` and `position + 1`.
    Transpose { position: usize },
    FlipBit { position: usize },
}

/// One injected error, checked against the length it will be applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mutation {
    kind: MutationKind,
    len: usize,
}

impl Mutation {
    pub fn new(kind: MutationKind, len: usize) -> Result<Self> {
        let (index, limit) = match kind {
            MutationKind::Substitute { position, .. } | MutationKind::FlipBit { position } => (position, len),
            MutationKind::Transpose { position } => (position, len.saturating_sub(1)),
        };
        if index >= limit {
            return Err(Error::IndexOutOfRange { index, len });
        }
        Ok(Mutation { kind, len })
    }

    pub fn kind(&self) -> MutationKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn apply_digits(&self, ds: &[Digit]) -> Result<DigitString> {
        if ds.len() != self.len {
            return Err(Error::WrongLength { expected: self.len, got: ds.len() });
        }
        match self.kind {
            MutationKind::Substitute { position, digit } => change_nth_digit(ds, position, digit),
            MutationKind::Transpose { position } => transpose_nth(ds, position),
            MutationKind::FlipBit { .. } => Err(Error::WrongLength { expected: self.len, got: 0 }),
        }
    }

    pub fn apply_bits(&self, bits: &BitString) -> Result<BitString> {
        match self.kind {
            MutationKind::FlipBit { position } if bits.len() == self.len => flip_bit(bits, position),
            _ => Err(Error::WrongLength { expected: self.len, got: bits.len() }),
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            MutationKind::Substitute { position, digit } => write!(f, "substitute {digit} at {position}"),
            MutationKind::Transpose { position } => write!(f, "transpose {position} and {}", position + 1),
            MutationKind::FlipBit { position } => write!(f, "flip bit {position}"),
        }
    }
}

/// Copy of `items` with position `n` replaced.
pub fn substitute_at<T: Clone>(items: &[T], n: usize, value: T) -> Result<Vec<T>> {
    if n >= items.len() {
        return Err(Error::IndexOutOfRange { index: n, len: items.len() });
    }
    let mut out = items.to_vec();
    out[n] = value;
    Ok(out)
}

/// Copy of `items` with positions `n` and `n + 1` swapped.
pub fn swap_adjacent<T: Clone>(items: &[T], n: usize) -> Result<Vec<T>> {
    if n + 1 >= items.len() {
        return Err(Error::IndexOutOfRange { index: n, len: items.len() });
    }
    let mut out = items.to_vec();
    out.swap(n, n + 1);
    Ok(out)
}

pub fn change_nth_digit(ds: &[Digit], n: usize, d: Digit) -> Result<DigitString> {
    substitute_at(ds, n, d).map(DigitString::from)
}

pub fn transpose_nth(ds: &[Digit], n: usize) -> Result<DigitString> {
    swap_adjacent(ds, n).map(DigitString::from)
}

pub fn is_effective<T: PartialEq + ?Sized>(original: &T, mutated: &T) -> bool {
    original != mutated
}

pub fn flip_bit(bits: &BitString, i: usize) -> Result<BitString> {
    if i >= bits.len() {
        return Err(Error::IndexOutOfRange { index: i, len: bits.len() });
    }
    let mut out = bits.clone();
    out.as_mut_vec()[i] ^= 1;
    Ok(out)
}
