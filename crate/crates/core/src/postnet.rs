//! POSTNET-style digit code.
//!
//! Every digit becomes a five-bit codeword with exactly three 1s, and a check
//! digit brings the digit total to a multiple of 10. A single flipped bit
//! always breaks the weight of exactly one block, which locates the damaged
//! digit; the checksum then determines its value.

use std::fmt;
use std::ops::Deref;

use crate::digits::{Digit, DigitString};
use crate::error::{Error, Result};

pub const CODEWORD_LEN: usize = 5;
pub const CODEWORD_WEIGHT: usize = 3;

/// Codewords indexed by digit: the complement of the two-of-five postal table.
const CODEBOOK: [[u8; CODEWORD_LEN]; 10] = [
    [0, 0, 1, 1, 1],
    [1, 1, 1, 0, 0],
    [1, 1, 0, 1, 0],
    [1, 1, 0, 0, 1],
    [1, 0, 1, 1, 0],
    [1, 0, 1, 0, 1],
    [1, 0, 0, 1, 1],
    [0, 1, 1, 1, 0],
    [0, 1, 1, 0, 1],
    [0, 1, 0, 1, 1],
];

/// A sequence of bits, each stored as 0 or 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString(Vec<u8>);

impl BitString {
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if let Some(position) = bits.iter().position(|&b| b > 1) {
            return Err(Error::NonBitCharacter { position, found: char::from(b'0' + bits[position].min(9)) });
        }
        Ok(BitString(bits.to_vec()))
    }

    pub fn zeros(len: usize) -> Self {
        BitString(vec![0; len])
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub(crate) fn as_mut_vec(&mut self) -> &mut Vec<u8> {
        &mut self.0
    }

    /// Parses '0'/'1' text; spaces and '|' are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(text.len());
        for (position, c) in text.chars().enumerate() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                ' ' | '|' => {}
                _ => return Err(Error::NonBitCharacter { position, found: c }),
            }
        }
        Ok(BitString(bits))
    }
}

impl Deref for BitString {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Five bits. Only the ten weight-3 words are valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Codeword([u8; CODEWORD_LEN]);

impl Codeword {
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let arr: [u8; CODEWORD_LEN] =
            bits.try_into().map_err(|_| Error::WrongLength { expected: CODEWORD_LEN, got: bits.len() })?;
        BitString::from_bits(&arr)?;
        Ok(Codeword(arr))
    }

    pub fn bits(&self) -> [u8; CODEWORD_LEN] {
        self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn is_valid(&self) -> bool {
        self.weight() == CODEWORD_WEIGHT
    }

    pub fn distance(&self, other: &Codeword) -> usize {
        self.0.iter().zip(other.0.iter()).filter(|(a, b)| a != b).count()
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

pub fn encode_digit(d: Digit) -> Codeword {
    Codeword(CODEBOOK[usize::from(d.value())])
}

/// Looks the codeword up in the codebook. Any weight other than 3 is invalid.
pub fn decode_codeword(cw: &Codeword) -> Result<Digit> {
    CODEBOOK
        .iter()
        .position(|w| *w == cw.0)
        .map(|i| Digit::from_mod10(i as u64))
        .ok_or(Error::InvalidCodeword { block: 0 })
}

/// The digit that brings the running total to a multiple of 10.
pub fn message_check_digit(ds: &[Digit]) -> Digit {
    let sum: u64 = ds.iter().map(|d| u64::from(d.value())).sum();
    Digit::from_mod10((10 - sum % 10) % 10)
}

pub fn encode_message(ds: &[Digit]) -> Result<BitString> {
    if ds.is_empty() {
        return Err(Error::EmptyInput);
    }
    let check = message_check_digit(ds);
    let bits = ds
        .iter()
        .chain(std::iter::once(&check))
        .flat_map(|&d| encode_digit(d).0)
        .collect();
    Ok(BitString(bits))
}

fn blocks(bits: &[u8]) -> Result<Vec<Codeword>> {
    if !bits.len().is_multiple_of(CODEWORD_LEN) || bits.len() < 2 * CODEWORD_LEN {
        return Err(Error::BadLength(bits.len()));
    }
    bits.chunks(CODEWORD_LEN).map(Codeword::from_bits).collect()
}

/// Strict decoding: every block must be a codeword and the checksum must hold.
pub fn decode_message(bits: &[u8]) -> Result<DigitString> {
    let mut digits = blocks(bits)?
        .iter()
        .enumerate()
        .map(|(block, cw)| decode_codeword(cw).map_err(|_| Error::InvalidCodeword { block }))
        .collect::<Result<Vec<_>>>()?;
    let total: u32 = digits.iter().map(|d| u32::from(d.value())).sum();
    if !total.is_multiple_of(10) {
        return Err(Error::ChecksumMismatch { total });
    }
    digits.pop();
    Ok(DigitString::new(digits))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorrectionStatus {
    Clean,
    CorrectedDigit { position: usize, from: Codeword, to: Digit },
    Uncorrectable(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionReport {
    pub status: CorrectionStatus,
    /// Message digits without the check digit, when recovery succeeded.
    pub recovered: Option<DigitString>,
}

impl CorrectionReport {
    fn uncorrectable(reason: impl Into<String>) -> Self {
        CorrectionReport { status: CorrectionStatus::Uncorrectable(reason.into()), recovered: None }
    }
}

/// Locates at most one damaged block and repairs it from the checksum.
///
/// Only length problems are errors; every kind of corruption is reported in
/// the returned status.
pub fn detect_and_correct(bits: &[u8]) -> Result<CorrectionReport> {
    let words = blocks(bits)?;
    let decoded: Vec<Option<Digit>> = words.iter().map(|cw| decode_codeword(cw).ok()).collect();
    let invalid: Vec<usize> = decoded.iter().enumerate().filter(|(_, d)| d.is_none()).map(|(i, _)| i).collect();
    let strip_check = |mut digits: Vec<Digit>| {
        digits.pop();
        Some(DigitString::new(digits))
    };

    match invalid.as_slice() {
        [] => {
            let digits: Vec<Digit> = decoded.into_iter().flatten().collect();
            let total: u32 = digits.iter().map(|d| u32::from(d.value())).sum();
            if total.is_multiple_of(10) {
                Ok(CorrectionReport { status: CorrectionStatus::Clean, recovered: strip_check(digits) })
            } else {
                Ok(CorrectionReport::uncorrectable(format!(
                    "all blocks are codewords but the digit total {total} is not a multiple of 10"
                )))
            }
        }
        &[position] => {
            let others: u64 = decoded.iter().flatten().map(|d| u64::from(d.value())).sum();
            let repaired = Digit::from_mod10((10 - others % 10) % 10);
            let received = words[position];
            if encode_digit(repaired).distance(&received) > 1 {
                return Ok(CorrectionReport::uncorrectable(format!(
                    "block {position} ({received}) is not one bit away from the codeword for {repaired}"
                )));
            }
            let digits: Vec<Digit> = decoded.into_iter().map(|d| d.unwrap_or(repaired)).collect();
            Ok(CorrectionReport {
                status: CorrectionStatus::CorrectedDigit { position, from: received, to: repaired },
                recovered: strip_check(digits),
            })
        }
        many => Ok(CorrectionReport::uncorrectable(format!("{} blocks are not codewords", many.len()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutate::flip_bit;
    use proptest::prelude::*;

    fn ds(v: &[u8]) -> DigitString {
        DigitString::from_values(v).unwrap()
    }

    fn d(v: u8) -> Digit {
        Digit::new(v).unwrap()
    }

    #[test]
    fn codebook_is_complemented_two_of_five() {
        // two-of-five postal table, digits 0..=9
        let postal = ["11000", "00011", "00101", "00110", "01001", "01010", "01100", "10001", "10010", "10100"];
        for (digit, word) in postal.iter().enumerate() {
            let complement: Vec<u8> = word.bytes().map(|b| if b == b'0' { 1 } else { 0 }).collect();
            assert_eq!(encode_digit(d(digit as u8)).bits().to_vec(), complement);
        }
        assert_eq!(encode_digit(d(0)).bits(), [0, 0, 1, 1, 1]);
        assert_eq!(encode_digit(d(1)).bits(), [1, 1, 1, 0, 0]);
    }

    #[test]
    fn codebook_covers_every_weight_three_word() {
        let mut weight3: Vec<[u8; 5]> = (0u8..32)
            .filter(|w| w.count_ones() == 3)
            .map(|w| std::array::from_fn(|i| (w >> (4 - i)) & 1))
            .collect();
        let mut book: Vec<[u8; 5]> = Digit::all().map(|x| encode_digit(x).bits()).collect();
        weight3.sort();
        book.sort();
        assert_eq!(weight3, book);
    }

    #[test]
    fn codeword_decoding() {
        assert_eq!(decode_codeword(&encode_digit(d(7))).unwrap(), d(7));
        assert!(decode_codeword(&Codeword::from_bits(&[1, 1, 1, 1, 1]).unwrap()).is_err());
        let flipped = flip_bit(&BitString::from_bits(&encode_digit(d(3)).bits()).unwrap(), 0).unwrap();
        assert!(decode_codeword(&Codeword::from_bits(&flipped).unwrap()).is_err());
    }

    #[test]
    fn message_encoding() {
        let zero = encode_message(&ds(&[0])).unwrap();
        assert_eq!(zero.len(), 10);
        assert_eq!(zero.to_string(), "0011100111");
        let m = encode_message(&ds(&[1, 2, 3, 4])).unwrap();
        assert_eq!(m.len(), 25);
        assert_eq!(&m[20..], &encode_digit(d(0)).bits());
        assert_eq!(encode_message(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn message_decoding_errors() {
        let m = encode_message(&ds(&[1, 2, 3, 4])).unwrap();
        assert_eq!(decode_message(&m).unwrap(), ds(&[1, 2, 3, 4]));
        let nine = encode_message(&ds(&[9])).unwrap();
        let bad = flip_bit(&nine, 7).unwrap();
        assert_eq!(decode_message(&bad), Err(Error::InvalidCodeword { block: 1 }));
        assert_eq!(decode_message(&[0; 7]), Err(Error::BadLength(7)));
        assert_eq!(decode_message(&[0; 5]), Err(Error::BadLength(5)));
        // valid codewords, wrong checksum: digits 1 then 1
        let mut wrong = encode_digit(d(1)).bits().to_vec();
        wrong.extend(encode_digit(d(1)).bits());
        assert_eq!(decode_message(&wrong), Err(Error::ChecksumMismatch { total: 2 }));
    }

    #[test]
    fn correction_examples() {
        let m = encode_message(&ds(&[1, 2, 3, 4])).unwrap();
        let clean = detect_and_correct(&m).unwrap();
        assert_eq!(clean.status, CorrectionStatus::Clean);
        assert_eq!(clean.recovered, Some(ds(&[1, 2, 3, 4])));

        let hit = flip_bit(&m, 2).unwrap();
        let report = detect_and_correct(&hit).unwrap();
        assert_eq!(
            report.status,
            CorrectionStatus::CorrectedDigit { position: 0, from: Codeword([1, 1, 0, 0, 0]), to: d(1) }
        );
        assert_eq!(report.recovered, Some(ds(&[1, 2, 3, 4])));

        let twice = flip_bit(&hit, 12).unwrap();
        assert!(matches!(detect_and_correct(&twice).unwrap().status, CorrectionStatus::Uncorrectable(_)));
        assert_eq!(detect_and_correct(&[1; 12]), Err(Error::BadLength(12)));
    }

    #[test]
    fn two_flips_in_one_block_are_not_miscorrected_silently() {
        // 0 -> 00111; flipping bits 0 and 2 gives 10011, the codeword for 6
        let m = encode_message(&ds(&[0])).unwrap();
        let twice = flip_bit(&flip_bit(&m, 0).unwrap(), 2).unwrap();
        let report = detect_and_correct(&twice).unwrap();
        assert!(matches!(report.status, CorrectionStatus::Uncorrectable(_)));
    }

    #[test]
    fn check_block_damage_is_repaired() {
        let m = encode_message(&ds(&[5, 5])).unwrap();
        let hit = flip_bit(&m, 13).unwrap();
        let report = detect_and_correct(&hit).unwrap();
        assert!(matches!(report.status, CorrectionStatus::CorrectedDigit { position: 2, .. }));
        assert_eq!(report.recovered, Some(ds(&[5, 5])));
    }

    proptest! {
        #[test]
        fn encode_decode_are_inverses(v in prop::collection::vec(0u8..10, 1..30)) {
            let msg = ds(&v);
            prop_assert_eq!(decode_message(&encode_message(&msg).unwrap()).unwrap(), msg);
        }

        #[test]
        fn every_single_flip_is_corrected(v in prop::collection::vec(0u8..10, 1..12), pick in any::<prop::sample::Index>()) {
            let msg = ds(&v);
            let bits = encode_message(&msg).unwrap();
            let i = pick.index(bits.len());
            let hit = flip_bit(&bits, i).unwrap();
            prop_assert!(decode_message(&hit).is_err());
            let report = detect_and_correct(&hit).unwrap();
            let position = i / CODEWORD_LEN;
            let is_expected_block = matches!(report.status, CorrectionStatus::CorrectedDigit { position: p, .. } if p == position);
            prop_assert!(is_expected_block);
            prop_assert_eq!(report.recovered, Some(msg));
        }
    }
}
