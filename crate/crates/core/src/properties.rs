//! Catalog of single-error detection conjectures for each scheme, plus the
//! POSTNET round-trip and correction properties.
//!
//! Every mutation property has the same shape: the base instance is valid, the
//! mutation actually changes it, and the conclusion is that the mutant no
//! longer validates. Entries expected to fail carry a family predicate that
//! every counterexample must satisfy.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digits::{Digit, DigitString};
use crate::engine::{Env, ListLength, Property, TypeDef, Value};
use crate::error::{Error, Result};
use crate::mutate::{flip_bit, substitute_at, swap_adjacent};
use crate::postnet::{decode_message, detect_and_correct, encode_message};
use crate::schemes::{complete_check_digit, Completed, SchemeId};

type PredResult = std::result::Result<bool, String>;

/// Longest message drawn for the POSTNET properties.
pub const MAX_MESSAGE_LEN: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// No counterexample exists.
    ExpectTrue,
    /// No counterexample exists, but random runs never satisfy the hypothesis.
    ExpectVacuous,
    /// Counterexamples exist and all belong to the described family.
    ExpectCounterexample(&'static str),
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::ExpectTrue => f.write_str("holds"),
            Expectation::ExpectVacuous => f.write_str("holds vacuously under random generation"),
            Expectation::ExpectCounterexample(family) => write!(f, "fails: {family}"),
        }
    }
}

/// Where exhaustive runs draw the instance variable from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceSource {
    Scheme(SchemeId),
    Messages,
}

pub type FamilyPredicate = Arc<dyn Fn(&Env) -> PredResult + Send + Sync>;

#[derive(Clone)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub slug: &'static str,
    pub property: Property,
    pub expected: Expectation,
    pub note: &'static str,
    pub instance_var: &'static str,
    pub instance_source: InstanceSource,
    pub family: Option<FamilyPredicate>,
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("id", &self.id)
            .field("slug", &self.slug)
            .field("expected", &self.expected)
            .finish_non_exhaustive()
    }
}

impl CatalogEntry {
    /// The property with its instance variable ranging over `sample_size`
    /// sampled instances; positions and payloads keep their full domains.
    pub fn exhaustive_property(&self, sample_size: usize, seed: u64) -> Result<Property> {
        let instances = match self.instance_source {
            InstanceSource::Scheme(id) => {
                valid_instance_sampler(id, seed, sample_size).iter().map(instance_value).collect()
            }
            InstanceSource::Messages => message_sampler(seed, sample_size, MAX_MESSAGE_LEN)
                .into_iter()
                .map(Value::Digits)
                .collect(),
        };
        self.property.with_binding(self.instance_var, TypeDef::Elements(instances))
    }

    /// Whether a counterexample belongs to the expected family.
    pub fn in_family(&self, env: &Env) -> PredResult {
        match &self.family {
            Some(f) => f(env),
            None => Ok(false),
        }
    }
}

/// Engine representation of a scheme instance. ISBNs become `(digits check)`.
pub fn instance_value(c: &Completed) -> Value {
    match c {
        Completed::Digits(ds) => Value::Digits(ds.clone()),
        Completed::Isbn(b) => Value::Tuple(vec![Value::Digits(b.digits().clone()), Value::Nat(u64::from(b.check()))]),
    }
}

/// `count` valid instances, each a uniformly random body with its check digit.
pub fn valid_instance_sampler(id: SchemeId, seed: u64, count: usize) -> Vec<Completed> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let body: DigitString =
                (0..id.body_length()).map(|_| Digit::from_mod10(rng.gen_range(0..10))).collect();
            complete_check_digit(id, &body).expect("body has the scheme's body length")
        })
        .collect()
}

/// Non-empty random digit messages with lengths uniform in `1..=max_len`.
pub fn message_sampler(seed: u64, count: usize, max_len: usize) -> Vec<DigitString> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.max(1));
            (0..len).map(|_| Digit::from_mod10(rng.gen_range(0..10))).collect()
        })
        .collect()
}

/// Raw values of a scheme instance; ISBN tuples flatten to ten values.
fn raw(env: &Env, var: &str) -> std::result::Result<Vec<u8>, String> {
    match env.get(var)? {
        Value::Digits(ds) => Ok(ds.values()),
        Value::Tuple(items) => match items.as_slice() {
            [Value::Digits(ds), Value::Nat(check)] => {
                let mut v = ds.values();
                v.push(u8::try_from(*check).map_err(|e| e.to_string())?);
                Ok(v)
            }
            _ => Err(format!("{var} is not an ISBN tuple")),
        },
        other => Err(format!("{var} is not a scheme instance: {}", other.render())),
    }
}

fn index(env: &Env, var: &str) -> std::result::Result<usize, String> {
    usize::try_from(env.nat(var)?).map_err(|e| e.to_string())
}

fn substituted(values: &[u8], n: usize, payload: u8) -> Option<Vec<u8>> {
    substitute_at(values, n, payload).ok()
}

fn transposed(values: &[u8], n: usize) -> Option<Vec<u8>> {
    swap_adjacent(values, n).ok()
}

fn payload(env: &Env) -> std::result::Result<u8, String> {
    match env.get("d")? {
        Value::Digit(d) => Ok(d.value()),
        Value::Nat(n) => u8::try_from(*n).map_err(|e| e.to_string()),
        other => Err(format!("d is not a payload: {}", other.render())),
    }
}

fn substitution_property(name: &str, id: SchemeId, var: &'static str, instance: TypeDef, payloads: TypeDef) -> Property {
    let len = id.total_length() as u64;
    let hyp = move |e: &Env| -> PredResult {
        let v = raw(e, var)?;
        if !id.accepts(&v) {
            return Ok(false);
        }
        let (n, d) = (index(e, "n")?, payload(e)?);
        // only the ISBN check slot may hold 10
        if d > 9 && n + 1 != v.len() {
            return Ok(false);
        }
        Ok(substituted(&v, n, d).is_some_and(|m| m != v))
    };
    let concl = move |e: &Env| -> PredResult {
        let v = raw(e, var)?;
        let m = substituted(&v, index(e, "n")?, payload(e)?).ok_or("index out of range")?;
        Ok(!id.accepts(&m))
    };
    let bindings = vec![(var, instance), ("n", TypeDef::NatRange(0, len - 1)), ("d", payloads)];
    Property::new(name, bindings, hyp, concl).expect("distinct variables")
}

fn transposition_property(name: &str, id: SchemeId, var: &'static str, instance: TypeDef) -> Property {
    let len = id.total_length() as u64;
    let hyp = move |e: &Env| -> PredResult {
        let v = raw(e, var)?;
        if !id.accepts(&v) {
            return Ok(false);
        }
        Ok(transposed(&v, index(e, "n")?).is_some_and(|m| m != v))
    };
    let concl = move |e: &Env| -> PredResult {
        let v = raw(e, var)?;
        let m = transposed(&v, index(e, "n")?).ok_or("index out of range")?;
        Ok(!id.accepts(&m))
    };
    let bindings = vec![(var, instance), ("n", TypeDef::NatRange(0, len - 2))];
    Property::new(name, bindings, hyp, concl).expect("distinct variables")
}

fn adjacent_pair(e: &Env, var: &str) -> std::result::Result<(u8, u8), String> {
    let v = raw(e, var)?;
    let n = index(e, "n")?;
    match (v.get(n), v.get(n + 1)) {
        (Some(&a), Some(&b)) => Ok((a, b)),
        _ => Err("index out of range".into()),
    }
}

fn fixed(n: usize) -> TypeDef {
    TypeDef::DigitList(ListLength::Fixed(n))
}

fn isbn_type() -> TypeDef {
    TypeDef::Product(vec![fixed(9), TypeDef::NatRange(0, 10)])
}

fn postnet_roundtrip() -> Property {
    Property::new(
        "C9",
        vec![("ds", TypeDef::DigitList(ListLength::Bounded(MAX_MESSAGE_LEN)))],
        |e: &Env| Ok(!e.digits("ds")?.is_empty()),
        |e: &Env| {
            let ds = e.digits("ds")?;
            let bits = encode_message(ds).map_err(|err| err.to_string())?;
            Ok(decode_message(&bits).as_ref() == Ok(ds))
        },
    )
    .expect("distinct variables")
}

fn postnet_correction() -> Property {
    let max_bits = 5 * (MAX_MESSAGE_LEN as u64 + 1);
    Property::new(
        "C10",
        vec![
            ("ds", TypeDef::DigitList(ListLength::Bounded(MAX_MESSAGE_LEN))),
            ("i", TypeDef::NatRange(0, max_bits - 1)),
        ],
        |e: &Env| {
            let len = e.digits("ds")?.len();
            Ok(len > 0 && index(e, "i")? < 5 * (len + 1))
        },
        |e: &Env| {
            let ds = e.digits("ds")?;
            let bits = encode_message(ds).map_err(|err| err.to_string())?;
            let hit = flip_bit(&bits, index(e, "i")?).map_err(|err| err.to_string())?;
            let report = detect_and_correct(&hit).map_err(|err| err.to_string())?;
            Ok(report.recovered.as_ref() == Some(ds))
        },
    )
    .expect("distinct variables")
}

pub fn catalog() -> Vec<CatalogEntry> {
    let airline_family: FamilyPredicate = Arc::new(|e: &Env| {
        let v = raw(e, "ticket")?;
        let (n, d) = (index(e, "n")?, payload(e)?);
        Ok(n < 14 && v.get(n).is_some_and(|&old| old.abs_diff(d) == 7))
    });
    let routing_family: FamilyPredicate = Arc::new(|e: &Env| {
        let (a, b) = adjacent_pair(e, "route")?;
        Ok(a.abs_diff(b) == 5)
    });
    let luhn_family: FamilyPredicate = Arc::new(|e: &Env| {
        let (a, b) = adjacent_pair(e, "card")?;
        Ok(a.min(b) == 0 && a.max(b) == 9)
    });

    let entry = |id, slug, property: Property, expected, note, var, source, family| CatalogEntry {
        id,
        slug,
        property: property.with_name(id),
        expected,
        note,
        instance_var: var,
        instance_source: source,
        family,
    };
    let scheme = InstanceSource::Scheme;

    vec![
        entry(
            "C1",
            "airline-substitution",
            substitution_property("C1", SchemeId::Airline, "ticket", fixed(15), TypeDef::Digit),
            Expectation::ExpectCounterexample("substituted pair congruent mod 7, position < 14"),
            "a digit replaced by another digit equivalent mod 7 goes undetected",
            "ticket",
            scheme(SchemeId::Airline),
            Some(airline_family.clone()),
        ),
        entry(
            "C2",
            "airline-substitution-vacuous",
            substitution_property(
                "C2",
                SchemeId::Airline,
                "ticket",
                TypeDef::DigitList(ListLength::Bounded(20)),
                TypeDef::Digit,
            ),
            Expectation::ExpectVacuous,
            "random digit lists of any length are almost never valid tickets",
            "ticket",
            scheme(SchemeId::Airline),
            Some(airline_family),
        ),
        entry(
            "C3",
            "routing-substitution",
            substitution_property("C3", SchemeId::Routing, "route", fixed(9), TypeDef::Digit),
            Expectation::ExpectTrue,
            "weights 7, 3, 9 are all units mod 10",
            "route",
            scheme(SchemeId::Routing),
            None,
        ),
        entry(
            "C4",
            "routing-transposition",
            transposition_property("C4", SchemeId::Routing, "route", fixed(9)),
            Expectation::ExpectCounterexample("adjacent digits differing by 5"),
            "swapping digits whose difference is a multiple of 5 goes undetected",
            "route",
            scheme(SchemeId::Routing),
            Some(routing_family),
        ),
        entry(
            "C5",
            "luhn-substitution",
            substitution_property("C5", SchemeId::Luhn, "card", fixed(16), TypeDef::Digit),
            Expectation::ExpectTrue,
            "doubling with digit folding is a permutation of 0..9",
            "card",
            scheme(SchemeId::Luhn),
            None,
        ),
        entry(
            "C6",
            "luhn-transposition",
            transposition_property("C6", SchemeId::Luhn, "card", fixed(16)),
            Expectation::ExpectCounterexample("adjacent 0 and 9"),
            "only swapping an adjacent 0 and 9 goes undetected",
            "card",
            scheme(SchemeId::Luhn),
            Some(luhn_family),
        ),
        entry(
            "C7",
            "isbn-substitution",
            substitution_property("C7", SchemeId::Isbn10, "isbn", isbn_type(), TypeDef::NatRange(0, 10)),
            Expectation::ExpectTrue,
            "11 is prime, so every nonzero weighted change is visible",
            "isbn",
            scheme(SchemeId::Isbn10),
            None,
        ),
        entry(
            "C8",
            "isbn-transposition",
            transposition_property("C8", SchemeId::Isbn10, "isbn", isbn_type()),
            Expectation::ExpectTrue,
            "adjacent weights differ by 1, a unit mod 11",
            "isbn",
            scheme(SchemeId::Isbn10),
            None,
        ),
        entry(
            "C9",
            "postnet-roundtrip",
            postnet_roundtrip(),
            Expectation::ExpectTrue,
            "decode undoes encode",
            "ds",
            InstanceSource::Messages,
            None,
        ),
        entry(
            "C10",
            "postnet-correction",
            postnet_correction(),
            Expectation::ExpectTrue,
            "any single flipped bit is located and repaired",
            "ds",
            InstanceSource::Messages,
            None,
        ),
    ]
}

/// Looks an entry up by id (`C4`) or slug (`routing-transposition`).
pub fn find(name: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.id.eq_ignore_ascii_case(name) || e.slug.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownProperty(name.to_string()))
}
