//! The four check-digit schemes: airline tickets (mod 7 of the body read as a
//! number), ABA routing numbers (weights 7,3,9 mod 10), Luhn card numbers and
//! ISBN-10 (weights 10..1 mod 11).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::digits::{digits_to_number, parse_digit_string, parse_isbn, Digit, DigitString, IsbnBody};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeId {
    Airline,
    Routing,
    Luhn,
    Isbn10,
}

/// How each position of a scheme is weighted before reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    /// The body is read as a base-10 number; the last digit is its remainder.
    PowersOfTen,
    /// Weights repeat this cycle starting at position 0.
    Cycle(&'static [u32]),
    /// Every second digit from the right is doubled and digit-folded.
    LuhnDoubling,
    /// Weights count down from the total length to 1.
    Descending,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeSpec {
    pub id: SchemeId,
    pub total_length: usize,
    pub modulus: u32,
    pub weights: Weighting,
}

pub const ROUTING_WEIGHTS: [u32; 3] = [7, 3, 9];

impl SchemeId {
    pub const ALL: [SchemeId; 4] = [SchemeId::Airline, SchemeId::Routing, SchemeId::Luhn, SchemeId::Isbn10];

    pub fn spec(self) -> SchemeSpec {
        let (total_length, modulus, weights) = match self {
            SchemeId::Airline => (15, 7, Weighting::PowersOfTen),
            SchemeId::Routing => (9, 10, Weighting::Cycle(&ROUTING_WEIGHTS)),
            SchemeId::Luhn => (16, 10, Weighting::LuhnDoubling),
            SchemeId::Isbn10 => (10, 11, Weighting::Descending),
        };
        SchemeSpec { id: self, total_length, modulus, weights }
    }

    pub fn total_length(self) -> usize {
        self.spec().total_length
    }

    pub fn body_length(self) -> usize {
        self.total_length() - 1
    }

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::Airline => "airline",
            SchemeId::Routing => "routing",
            SchemeId::Luhn => "luhn",
            SchemeId::Isbn10 => "isbn10",
        }
    }

    /// Checks raw values, where an ISBN check slot may hold 10.
    ///
    /// Malformed input (wrong length, out-of-range values) is simply not valid.
    pub fn accepts(self, values: &[u8]) -> bool {
        if values.len() != self.total_length() {
            return false;
        }
        if self == SchemeId::Isbn10 {
            let Ok(arr) = <[u8; 10]>::try_from(values) else { return false };
            return IsbnBody::from_values(arr).map(|b| validate_isbn10(&b)).unwrap_or(false);
        }
        match DigitString::from_values(values) {
            Ok(ds) => self.validate_digits(&ds).unwrap_or(false),
            Err(_) => false,
        }
    }

    /// Validates a full-length digit string. ISBNs ending in X need [`validate_isbn10`].
    pub fn validate_digits(self, ds: &[Digit]) -> Result<bool> {
        match self {
            SchemeId::Airline => validate_airline(ds),
            SchemeId::Routing => validate_routing(ds),
            SchemeId::Luhn => validate_luhn(ds),
            SchemeId::Isbn10 => {
                expect_len(ds, 10)?;
                let body = IsbnBody::new(DigitString::from(ds[..9].to_vec()), ds[9].value())?;
                Ok(validate_isbn10(&body))
            }
        }
    }

    /// Parses text in the scheme's input form and validates it.
    pub fn verify_text(self, text: &str) -> Result<bool> {
        match self {
            SchemeId::Isbn10 => parse_isbn(text).map(|b| validate_isbn10(&b)),
            _ => self.validate_digits(&parse_digit_string(text)?),
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "airline" => Ok(SchemeId::Airline),
            "routing" => Ok(SchemeId::Routing),
            "luhn" => Ok(SchemeId::Luhn),
            "isbn10" | "isbn" => Ok(SchemeId::Isbn10),
            _ => Err(Error::UnknownScheme(s.to_string())),
        }
    }
}

/// A check-digit completion: plain digits, or an ISBN whose check may be X.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Completed {
    Digits(DigitString),
    Isbn(IsbnBody),
}

impl Completed {
    pub fn values(&self) -> Vec<u8> {
        match self {
            Completed::Digits(ds) => ds.values(),
            Completed::Isbn(b) => b.values().to_vec(),
        }
    }
}

impl fmt::Display for Completed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Completed::Digits(ds) => ds.fmt(f),
            Completed::Isbn(b) => b.fmt(f),
        }
    }
}

fn expect_len(ds: &[Digit], expected: usize) -> Result<()> {
    if ds.len() == expected {
        Ok(())
    } else {
        Err(Error::WrongLength { expected, got: ds.len() })
    }
}

pub fn airline_check_digit(body: &[Digit]) -> Result<Digit> {
    expect_len(body, 14)?;
    let n = digits_to_number(body)?;
    Ok(Digit::from_mod10((n % 7) as u64))
}

pub fn validate_airline(ticket: &[Digit]) -> Result<bool> {
    expect_len(ticket, 15)?;
    Ok(airline_check_digit(&ticket[..14])? == ticket[14])
}

pub fn routing_weighted_sum(route: &[Digit]) -> Result<u32> {
    expect_len(route, 9)?;
    Ok(route
        .iter()
        .zip(ROUTING_WEIGHTS.iter().cycle())
        .map(|(d, w)| u32::from(d.value()) * w)
        .sum())
}

pub fn validate_routing(route: &[Digit]) -> Result<bool> {
    Ok(routing_weighted_sum(route)? % 10 == 0)
}

/// Luhn sum: doubling every second digit counted from the rightmost one
/// (which itself is not doubled), folding doubled values above 9.
pub fn luhn_sum(card: &[Digit]) -> Result<u32> {
    if card.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(card
        .iter()
        .rev()
        .enumerate()
        .map(|(i, d)| {
            let v = u32::from(d.value());
            if i % 2 == 1 {
                let doubled = 2 * v;
                if doubled > 9 { doubled - 9 } else { doubled }
            } else {
                v
            }
        })
        .sum())
}

pub fn validate_luhn(card: &[Digit]) -> Result<bool> {
    expect_len(card, 16)?;
    Ok(luhn_sum(card)? % 10 == 0)
}

pub fn isbn_weighted_sum(isbn: &IsbnBody) -> u32 {
    isbn.values().iter().enumerate().map(|(i, &v)| (10 - i as u32) * u32::from(v)).sum()
}

pub fn validate_isbn10(isbn: &IsbnBody) -> bool {
    isbn_weighted_sum(isbn).is_multiple_of(11)
}

/// Appends the unique check value that makes `body` validate.
pub fn complete_check_digit(id: SchemeId, body: &[Digit]) -> Result<Completed> {
    expect_len(body, id.body_length())?;
    let body = DigitString::from(body.to_vec());
    match id {
        SchemeId::Airline => {
            let check = airline_check_digit(&body)?;
            Ok(Completed::Digits(body.appended(check)))
        }
        SchemeId::Routing | SchemeId::Luhn => {
            // weight of the last slot is a unit mod 10 in both schemes, so exactly one digit fits
            let completed = Digit::all()
                .map(|d| body.appended(d))
                .find(|c| id.validate_digits(c).unwrap_or(false))
                .expect("check equation has a digit solution");
            Ok(Completed::Digits(completed))
        }
        SchemeId::Isbn10 => {
            let partial = IsbnBody::new(body, 0)?;
            let check = (11 - isbn_weighted_sum(&partial) % 11) % 11;
            Ok(Completed::Isbn(IsbnBody::new(partial.digits().clone(), check as u8)?))
        }
    }
}
