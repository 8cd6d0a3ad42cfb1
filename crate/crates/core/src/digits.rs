//! Decimal digit sequences: the carrier type for tickets, routing numbers,
//! card numbers and ISBN bodies.

use std::fmt;
use std::num::NonZeroUsize;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single base-10 digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Digit(u8);

impl Digit {
    pub const ZERO: Digit = Digit(0);

    pub fn new(value: u8) -> Result<Self> {
        if value <= 9 {
            Ok(Digit(value))
        } else {
            Err(Error::DigitOutOfRange(value))
        }
    }

    /// Reduces any integer to a digit by taking it mod 10.
    pub fn from_mod10(value: u64) -> Self {
        Digit((value % 10) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn to_char(self) -> char {
        char::from(b'0' + self.0)
    }

    pub fn all() -> impl Iterator<Item = Digit> + Clone {
        (0..=9).map(Digit)
    }
}

impl TryFrom<u8> for Digit {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        Digit::new(value)
    }
}

impl From<Digit> for u8 {
    fn from(d: Digit) -> u8 {
        d.0
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An ordered sequence of digits. Leading zeros are significant.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DigitString(Vec<Digit>);

impl DigitString {
    pub fn new(digits: Vec<Digit>) -> Self {
        DigitString(digits)
    }

    pub fn zeros(len: usize) -> Self {
        DigitString(vec![Digit::ZERO; len])
    }

    /// Builds a digit string from raw values, rejecting anything above 9.
    pub fn from_values(values: &[u8]) -> Result<Self> {
        values.iter().map(|&v| Digit::new(v)).collect::<Result<Vec<_>>>().map(DigitString)
    }

    pub fn values(&self) -> Vec<u8> {
        self.0.iter().map(|d| d.0).collect()
    }

    pub fn as_slice(&self) -> &[Digit] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Digit> {
        self.0
    }

    pub fn push(&mut self, d: Digit) {
        self.0.push(d);
    }

    /// Returns a copy with `d` appended.
    pub fn appended(&self, d: Digit) -> Self {
        let mut out = self.clone();
        out.0.push(d);
        out
    }

    pub fn digit_sum(&self) -> u32 {
        self.0.iter().map(|d| u32::from(d.0)).sum()
    }

    /// Fails with `WrongLength` unless the string has exactly `expected` digits.
    pub fn expect_len(&self, expected: usize) -> Result<()> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(Error::WrongLength { expected, got: self.len() })
        }
    }
}

impl Deref for DigitString {
    type Target = [Digit];

    fn deref(&self) -> &[Digit] {
        &self.0
    }
}

impl From<Vec<Digit>> for DigitString {
    fn from(v: Vec<Digit>) -> Self {
        DigitString(v)
    }
}

impl FromIterator<Digit> for DigitString {
    fn from_iter<I: IntoIterator<Item = Digit>>(iter: I) -> Self {
        DigitString(iter.into_iter().collect())
    }
}

impl std::str::FromStr for DigitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_digit_string(s)
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_digit_string(self, None))
    }
}

/// A nine-digit ISBN-10 body plus its check value in `0..=10`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsbnBody {
    digits: DigitString,
    check: u8,
}

impl IsbnBody {
    pub const BODY_LEN: usize = 9;

    pub fn new(digits: DigitString, check: u8) -> Result<Self> {
        digits.expect_len(Self::BODY_LEN)?;
        if check > 10 {
            return Err(Error::IsbnCheckOutOfRange(check));
        }
        Ok(IsbnBody { digits, check })
    }

    pub fn digits(&self) -> &DigitString {
        &self.digits
    }

    pub fn check(&self) -> u8 {
        self.check
    }

    /// All ten values in order, the check value last.
    pub fn values(&self) -> [u8; 10] {
        let mut out = [0u8; 10];
        for (slot, d) in out.iter_mut().zip(self.digits.iter()) {
            *slot = d.value();
        }
        out[9] = self.check;
        out
    }

    /// Rebuilds a body from ten values; only the last may be 10.
    pub fn from_values(values: [u8; 10]) -> Result<Self> {
        let digits = DigitString::from_values(&values[..9])?;
        IsbnBody::new(digits, values[9])
    }
}

impl fmt::Display for IsbnBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digits)?;
        if self.check == 10 {
            f.write_str("X")
        } else {
            write!(f, "{}", self.check)
        }
    }
}

fn is_separator(c: char) -> bool {
    matches!(c, ' ' | '-' | '|')
}

/// Parses decimal text, skipping spaces, hyphens and `|` group marks.
///
/// Error positions are character offsets into the original text.
pub fn parse_digit_string(text: &str) -> Result<DigitString> {
    let mut digits = Vec::with_capacity(text.len());
    for (position, c) in text.chars().enumerate() {
        if is_separator(c) {
            continue;
        }
        match c.to_digit(10) {
            Some(v) => digits.push(Digit(v as u8)),
            None => return Err(Error::NonDigitCharacter { position, found: c }),
        }
    }
    if digits.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(DigitString(digits))
}

/// Parses an ISBN-10, accepting `X`/`x` as a final check value of 10.
pub fn parse_isbn(text: &str) -> Result<IsbnBody> {
    let mut values = Vec::with_capacity(10);
    let chars: Vec<(usize, char)> =
        text.chars().enumerate().filter(|&(_, c)| !is_separator(c)).collect();
    if chars.is_empty() {
        return Err(Error::EmptyInput);
    }
    let last = chars.len() - 1;
    for (i, &(position, c)) in chars.iter().enumerate() {
        match c {
            '0'..='9' => values.push(c as u8 - b'0'),
            'X' | 'x' if i == last => values.push(10),
            _ => return Err(Error::NonDigitCharacter { position, found: c }),
        }
    }
    let values: [u8; 10] = values
        .try_into()
        .map_err(|v: Vec<u8>| Error::WrongLength { expected: 10, got: v.len() })?;
    IsbnBody::from_values(values)
}

/// Reads the digits as one base-10 number.
pub fn digits_to_number(ds: &[Digit]) -> Result<u128> {
    ds.iter().try_fold(0u128, |acc, d| {
        acc.checked_mul(10)
            .and_then(|a| a.checked_add(u128::from(d.0)))
            .ok_or(Error::NumberTooLarge { len: ds.len() })
    })
}

/// Renders digits as text, inserting `|` after every `group` digits.
pub fn format_digit_string(ds: &[Digit], group: Option<NonZeroUsize>) -> String {
    let mut out = String::with_capacity(ds.len() * 2);
    for (i, d) in ds.iter().enumerate() {
        if let Some(g) = group {
            if i > 0 && i % g.get() == 0 {
                out.push('|');
            }
        }
        out.push(d.to_char());
    }
    out
}
