//! Typed randomized testing with hypothesis filtering.
//!
//! A [`Property`] binds variables to [`TypeDef`]s and pairs a hypothesis with a
//! conclusion. Random runs draw every binding from a per-trial RNG derived from
//! `(seed, trial index)`, so the outcome does not depend on how trials are
//! spread over worker threads. Exhaustive runs walk the whole product domain
//! in lexicographic order.
//!
//! Environments whose hypothesis fails are counted as tested and discarded.
//! The rest are either witnesses (conclusion holds) or counterexamples.

use std::collections::HashSet;
use std::fmt::{self, Debug, Write as _};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::digits::{Digit, DigitString};
use crate::error::{Error, Result};
use crate::postnet::BitString;

pub const DEFAULT_TRIALS: u64 = 1000;
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;
pub const WITNESS_SAMPLE_LIMIT: usize = 3;
/// Counterexamples printed in the cgen-style text report.
pub const TEXT_COUNTEREXAMPLE_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Value {
    Nat(u64),
    Digit(Digit),
    Digits(DigitString),
    Bits(#[serde(with = "bits_serde")] BitString),
    Tuple(Vec<Value>),
}

mod bits_serde {
    use super::*;

    pub fn serialize<S: Serializer>(b: &BitString, s: S) -> std::result::Result<S::Ok, S::Error> {
        b.as_slice().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BitString, D::Error> {
        let raw = Vec::<u8>::deserialize(d)?;
        BitString::from_bits(&raw).map_err(serde::de::Error::custom)
    }
}

impl Value {
    fn render_into(&self, out: &mut String, quoted: bool) {
        let quote = if quoted { "'" } else { "" };
        match self {
            Value::Nat(n) => write!(out, "{n}").unwrap(),
            Value::Digit(d) => write!(out, "{d}").unwrap(),
            Value::Digits(ds) => render_list(out, quote, ds.iter()),
            Value::Bits(bits) => render_list(out, quote, bits.iter()),
            Value::Tuple(items) => {
                out.push_str(quote);
                out.push('(');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    item.render_into(out, false);
                }
                out.push(')');
            }
        }
    }

    /// Lisp-style rendering: lists are quoted, e.g. `'(4 2 0)`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, true);
        out
    }
}

fn render_list<T: fmt::Display>(out: &mut String, quote: &str, items: impl Iterator<Item = T>) {
    out.push_str(quote);
    out.push('(');
    for (i, item) in items.enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{item}").unwrap();
    }
    out.push(')');
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ListLength {
    Fixed(usize),
    /// Any length from 0 to the bound.
    Bounded(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeDef {
    NatRange(u64, u64),
    Digit,
    DigitList(ListLength),
    BitList(usize),
    Product(Vec<TypeDef>),
    /// One of an explicit finite list of values.
    Elements(Vec<Value>),
}

fn pow_u128(base: u128, exp: usize) -> u128 {
    u32::try_from(exp).ok().and_then(|e| base.checked_pow(e)).unwrap_or(u128::MAX)
}

impl TypeDef {
    pub fn nat_range(lo: u64, hi: u64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidType(format!("empty range {lo}..={hi}")));
        }
        Ok(TypeDef::NatRange(lo, hi))
    }

    /// Number of values in the domain, saturating at `u128::MAX`.
    pub fn domain_size(&self) -> u128 {
        match self {
            TypeDef::NatRange(lo, hi) if lo <= hi => u128::from(hi - lo) + 1,
            TypeDef::NatRange(..) => 0,
            TypeDef::Digit => 10,
            TypeDef::DigitList(ListLength::Fixed(n)) => pow_u128(10, *n),
            TypeDef::DigitList(ListLength::Bounded(max)) => {
                (0..=*max).map(|k| pow_u128(10, k)).fold(0u128, |acc, x| acc.saturating_add(x))
            }
            TypeDef::BitList(n) => pow_u128(2, *n),
            TypeDef::Product(fields) => product_size(fields.iter().map(TypeDef::domain_size)),
            TypeDef::Elements(values) => values.len() as u128,
        }
    }

    /// Draws one value.
    ///
    /// Components are uniform. Bounded list lengths are geometric: each
    /// further element is added with probability 1/2 until the bound, so short
    /// lists dominate and any one long length is rare.
    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Value {
        match self {
            TypeDef::NatRange(lo, hi) => Value::Nat(rng.gen_range(*lo..=*hi)),
            TypeDef::Digit => Value::Digit(random_digit(rng)),
            TypeDef::DigitList(ListLength::Fixed(n)) => Value::Digits(random_digits(rng, *n)),
            TypeDef::DigitList(ListLength::Bounded(max)) => {
                let mut len = 0;
                while len < *max && rng.gen_bool(0.5) {
                    len += 1;
                }
                Value::Digits(random_digits(rng, len))
            }
            TypeDef::BitList(n) => {
                let bits: Vec<u8> = (0..*n).map(|_| rng.gen_range(0..=1)).collect();
                Value::Bits(BitString::from_bits(&bits).expect("bits are 0 or 1"))
            }
            TypeDef::Product(fields) => Value::Tuple(fields.iter().map(|f| f.generate(rng)).collect()),
            TypeDef::Elements(values) => values[rng.gen_range(0..values.len())].clone(),
        }
    }

    /// The value at `index` in lexicographic enumeration order.
    ///
    /// Bounded lists are ordered shortest first, then lexicographically.
    /// Products vary their last field fastest. `index` must be below
    /// [`domain_size`](Self::domain_size).
    pub fn nth(&self, index: u128) -> Value {
        match self {
            TypeDef::NatRange(lo, _) => Value::Nat(lo + index as u64),
            TypeDef::Digit => Value::Digit(Digit::from_mod10(index as u64)),
            TypeDef::DigitList(ListLength::Fixed(n)) => Value::Digits(digits_of(index, *n)),
            TypeDef::DigitList(ListLength::Bounded(max)) => {
                let mut rest = index;
                for len in 0..=*max {
                    let block = pow_u128(10, len);
                    if rest < block {
                        return Value::Digits(digits_of(rest, len));
                    }
                    rest -= block;
                }
                unreachable!("index {index} beyond bounded list domain")
            }
            TypeDef::BitList(n) => {
                let bits: Vec<u8> = (0..*n).rev().map(|shift| ((index >> shift) & 1) as u8).collect();
                Value::Bits(BitString::from_bits(&bits).expect("bits are 0 or 1"))
            }
            TypeDef::Product(fields) => {
                let sizes: Vec<u128> = fields.iter().map(TypeDef::domain_size).collect();
                Value::Tuple(
                    mixed_radix(index, &sizes).into_iter().zip(fields).map(|(i, f)| f.nth(i)).collect(),
                )
            }
            TypeDef::Elements(values) => values[index as usize].clone(),
        }
    }
}

fn product_size(sizes: impl Iterator<Item = u128>) -> u128 {
    sizes.fold(1u128, |acc, s| acc.saturating_mul(s))
}

/// Splits `index` into per-position indices, last position fastest.
fn mixed_radix(mut index: u128, sizes: &[u128]) -> Vec<u128> {
    let mut out = vec![0; sizes.len()];
    for (slot, &size) in out.iter_mut().zip(sizes).rev() {
        if size > 0 {
            *slot = index % size;
            index /= size;
        }
    }
    out
}

fn digits_of(mut index: u128, len: usize) -> DigitString {
    let mut v = vec![Digit::ZERO; len];
    for slot in v.iter_mut().rev() {
        *slot = Digit::from_mod10((index % 10) as u64);
        index /= 10;
    }
    DigitString::new(v)
}

fn random_digit<R: Rng + ?Sized>(rng: &mut R) -> Digit {
    Digit::from_mod10(rng.gen_range(0..10u64))
}

fn random_digits<R: Rng + ?Sized>(rng: &mut R, len: usize) -> DigitString {
    (0..len).map(|_| random_digit(rng)).collect()
}

/// Every value of a finite type, in lexicographic order.
pub fn enumerate(t: &TypeDef, cap: u128) -> Result<Vec<Value>> {
    let size = t.domain_size();
    if size > cap {
        return Err(Error::DomainTooLarge { size, cap });
    }
    Ok((0..size).map(|i| t.nth(i)).collect())
}

/// Values bound to a property's variables, in binding order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Env(Vec<(String, Value)>);

impl Env {
    pub fn new(entries: Vec<(String, Value)>) -> Self {
        Env(entries)
    }

    pub fn entries(&self) -> &[(String, Value)] {
        &self.0
    }

    pub fn get(&self, name: &str) -> std::result::Result<&Value, String> {
        self.0
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v)
            .ok_or_else(|| format!("unbound variable {name}"))
    }

    pub fn nat(&self, name: &str) -> std::result::Result<u64, String> {
        match self.get(name)? {
            Value::Nat(n) => Ok(*n),
            Value::Digit(d) => Ok(u64::from(d.value())),
            other => Err(format!("{name} is not a natural: {}", other.render())),
        }
    }

    pub fn digit(&self, name: &str) -> std::result::Result<Digit, String> {
        match self.get(name)? {
            Value::Digit(d) => Ok(*d),
            other => Err(format!("{name} is not a digit: {}", other.render())),
        }
    }

    pub fn digits(&self, name: &str) -> std::result::Result<&DigitString, String> {
        match self.get(name)? {
            Value::Digits(ds) => Ok(ds),
            other => Err(format!("{name} is not a digit list: {}", other.render())),
        }
    }

    pub fn bits(&self, name: &str) -> std::result::Result<&BitString, String> {
        match self.get(name)? {
            Value::Bits(b) => Ok(b),
            other => Err(format!("{name} is not a bit list: {}", other.render())),
        }
    }

    /// Renders as `((D 7) (N 11) (TICKET '(4 2 0)))`, variables sorted by name.
    pub fn render(&self) -> String {
        let mut entries: Vec<(String, &Value)> =
            self.0.iter().map(|(k, v)| (k.to_ascii_uppercase(), v)).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = String::from("(");
        for (i, (name, value)) in entries.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "({name} ").unwrap();
            value.render_into(&mut out, true);
            out.push(')');
        }
        out.push(')');
        out
    }
}

impl fmt::Display for Env {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Env {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Env {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct EnvVisitor;

        impl<'de> Visitor<'de> for EnvVisitor {
            type Value = Env;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map of variable names to values")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<Env, A::Error> {
                let mut entries = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, Value>()? {
                    entries.push((k, v));
                }
                Ok(Env(entries))
            }
        }

        d.deserialize_map(EnvVisitor)
    }
}

/// A host-level predicate over an environment. `Err` signals a failure to
/// evaluate, not falsity.
pub type Predicate = Arc<dyn Fn(&Env) -> std::result::Result<bool, String> + Send + Sync>;

#[derive(Clone)]
pub struct Property {
    name: String,
    bindings: Vec<(String, TypeDef)>,
    hypothesis: Predicate,
    conclusion: Predicate,
}

impl Debug for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Property").field("name", &self.name).field("bindings", &self.bindings).finish()
    }
}

impl Property {
    pub fn new<H, C>(name: impl Into<String>, bindings: Vec<(&str, TypeDef)>, hypothesis: H, conclusion: C) -> Result<Self>
    where
        H: Fn(&Env) -> std::result::Result<bool, String> + Send + Sync + 'static,
        C: Fn(&Env) -> std::result::Result<bool, String> + Send + Sync + 'static,
    {
        let bindings: Vec<(String, TypeDef)> = bindings.into_iter().map(|(k, t)| (k.to_string(), t)).collect();
        let mut seen = HashSet::new();
        for (k, _) in &bindings {
            if !seen.insert(k.as_str()) {
                return Err(Error::InvalidType(format!("variable {k} bound twice")));
            }
        }
        Ok(Property { name: name.into(), bindings, hypothesis: Arc::new(hypothesis), conclusion: Arc::new(conclusion) })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bindings(&self) -> &[(String, TypeDef)] {
        &self.bindings
    }

    /// Same predicates with one variable's type replaced.
    pub fn with_binding(&self, var: &str, t: TypeDef) -> Result<Self> {
        let mut out = self.clone();
        let slot = out
            .bindings
            .iter_mut()
            .find(|(k, _)| k == var)
            .ok_or_else(|| Error::InvalidType(format!("no variable {var} in {}", self.name)))?;
        slot.1 = t;
        Ok(out)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn hypothesis(&self, env: &Env) -> std::result::Result<bool, String> {
        (self.hypothesis)(env)
    }

    pub fn conclusion(&self, env: &Env) -> std::result::Result<bool, String> {
        (self.conclusion)(env)
    }

    fn domain_size(&self) -> u128 {
        product_size(self.bindings.iter().map(|(_, t)| t.domain_size()))
    }

    fn generate_env(&self, seed: u64, trial: u64) -> Env {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        Env(self.bindings.iter().map(|(k, t)| (k.clone(), t.generate(&mut rng))).collect())
    }

    fn nth_env(&self, index: u128, sizes: &[u128]) -> Env {
        Env(mixed_radix(index, sizes)
            .into_iter()
            .zip(&self.bindings)
            .map(|(i, (k, t))| (k.clone(), t.nth(i)))
            .collect())
    }

    fn classify(&self, env: &Env) -> Result<Outcome> {
        let fail = |message: String| Error::PredicateFailure { env: env.render(), message };
        if !self.hypothesis(env).map_err(fail)? {
            return Ok(Outcome::Filtered);
        }
        Ok(if self.conclusion(env).map_err(fail)? { Outcome::Witness } else { Outcome::Counterexample })
    }
}

enum Outcome {
    Filtered,
    Witness,
    Counterexample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Random { seed: u64, trials: u64 },
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSummary {
    pub property: String,
    pub tested: u64,
    pub satisfied: u64,
    /// Distinct environments among the satisfied ones.
    pub satisfied_unique: u64,
    /// In trial order (random) or enumeration order (exhaustive).
    pub counterexamples: Vec<Env>,
    pub witnesses_count: u64,
    pub witnesses_sample: Vec<Env>,
    pub mode: Mode,
    pub vacuous: bool,
}

/// Output layout for [`format_summary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummaryStyle {
    CgenText,
    Json,
}

#[derive(Serialize, Deserialize)]
struct SummaryJson {
    property: String,
    mode: String,
    seed: Option<u64>,
    trials: Option<u64>,
    tested: u64,
    satisfied: u64,
    satisfied_unique: u64,
    counterexamples: Vec<Env>,
    witnesses: u64,
    witnesses_sample: Vec<Env>,
    vacuous: bool,
}

impl TestSummary {
    pub fn found_counterexample(&self) -> bool {
        !self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> String {
        let (mode, seed, trials) = match self.mode {
            Mode::Random { seed, trials } => ("random", Some(seed), Some(trials)),
            Mode::Exhaustive => ("exhaustive", None, None),
        };
        let json = SummaryJson {
            property: self.property.clone(),
            mode: mode.to_string(),
            seed,
            trials,
            tested: self.tested,
            satisfied: self.satisfied,
            satisfied_unique: self.satisfied_unique,
            counterexamples: self.counterexamples.clone(),
            witnesses: self.witnesses_count,
            witnesses_sample: self.witnesses_sample.clone(),
            vacuous: self.vacuous,
        };
        serde_json::to_string_pretty(&json).expect("summary serializes")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        let j: SummaryJson = serde_json::from_str(text)?;
        let mode = match (j.mode.as_str(), j.seed, j.trials) {
            ("random", Some(seed), Some(trials)) => Mode::Random { seed, trials },
            ("exhaustive", None, None) => Mode::Exhaustive,
            _ => return Err(serde::de::Error::custom(format!("inconsistent mode {:?}", j.mode))),
        };
        Ok(TestSummary {
            property: j.property,
            tested: j.tested,
            satisfied: j.satisfied,
            satisfied_unique: j.satisfied_unique,
            counterexamples: j.counterexamples,
            witnesses_count: j.witnesses,
            witnesses_sample: j.witnesses_sample,
            mode,
            vacuous: j.vacuous,
        })
    }

    pub fn to_cgen_text(&self) -> String {
        let mut out = String::new();
        out.push_str("**Summary of Cgen/testing**\n");
        writeln!(
            out,
            "We tested {} examples across 1 subgoals, of which {} ({} unique) satisfied the hypotheses, and found {} counterexamples and {} witnesses.",
            self.tested,
            self.satisfied,
            self.satisfied_unique,
            self.counterexamples.len(),
            self.witnesses_count
        )
        .unwrap();
        if !self.counterexamples.is_empty() {
            out.push_str("\nWe falsified the conjecture. Here are counterexamples:\n");
            for env in self.counterexamples.iter().take(TEXT_COUNTEREXAMPLE_LIMIT) {
                writeln!(out, " -- {}", env.render()).unwrap();
            }
            let hidden = self.counterexamples.len().saturating_sub(TEXT_COUNTEREXAMPLE_LIMIT);
            if hidden > 0 {
                writeln!(out, " -- ... and {hidden} more").unwrap();
            }
        }
        if !self.witnesses_sample.is_empty() {
            out.push_str("\nCases in which the conjecture is true include:\n");
            for env in &self.witnesses_sample {
                writeln!(out, " -- {}", env.render()).unwrap();
            }
        }
        out.push('\n');
        out.push_str(if self.found_counterexample() {
            "Test? found a counterexample.\n"
        } else {
            "Test? succeeded. No counterexamples were found.\n"
        });
        out
    }
}

pub fn format_summary(s: &TestSummary, style: SummaryStyle) -> String {
    match style {
        SummaryStyle::CgenText => s.to_cgen_text(),
        SummaryStyle::Json => s.to_json(),
    }
}

/// Counts from a contiguous run of trials or environments.
#[derive(Default)]
struct Tally {
    tested: u64,
    satisfied: u64,
    unique: HashSet<Env>,
    counterexamples: Vec<Env>,
    witnesses_count: u64,
    witnesses_sample: Vec<Env>,
}

impl Tally {
    fn record(&mut self, env: Env, outcome: Outcome) {
        self.tested += 1;
        match outcome {
            Outcome::Filtered => {}
            Outcome::Witness => {
                self.satisfied += 1;
                self.witnesses_count += 1;
                if self.witnesses_sample.len() < WITNESS_SAMPLE_LIMIT {
                    self.witnesses_sample.push(env.clone());
                }
                self.unique.insert(env);
            }
            Outcome::Counterexample => {
                self.satisfied += 1;
                self.unique.insert(env.clone());
                self.counterexamples.push(env);
            }
        }
    }

    fn absorb(&mut self, later: Tally) {
        self.tested += later.tested;
        self.satisfied += later.satisfied;
        self.unique.extend(later.unique);
        self.counterexamples.extend(later.counterexamples);
        self.witnesses_count += later.witnesses_count;
        let room = WITNESS_SAMPLE_LIMIT - self.witnesses_sample.len();
        self.witnesses_sample.extend(later.witnesses_sample.into_iter().take(room));
    }

    fn into_summary(self, property: &str, mode: Mode) -> TestSummary {
        TestSummary {
            property: property.to_string(),
            tested: self.tested,
            satisfied: self.satisfied,
            satisfied_unique: self.unique.len() as u64,
            counterexamples: self.counterexamples,
            witnesses_count: self.witnesses_count,
            witnesses_sample: self.witnesses_sample,
            mode,
            vacuous: self.satisfied == 0,
        }
    }
}

/// Runs properties with a configurable worker count and enumeration cap.
#[derive(Debug, Clone, Copy)]
pub struct Runner {
    workers: usize,
    cap: u128,
}

impl Default for Runner {
    fn default() -> Self {
        let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
        Runner { workers, cap: DEFAULT_ENUMERATION_CAP }
    }
}

impl Runner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single_threaded() -> Self {
        Runner { workers: 1, ..Self::default() }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    /// Splits `0..total` into contiguous chunks, tallies each on its own
    /// thread and merges the tallies in index order.
    fn tally<F>(&self, total: u128, env_at: F, p: &Property) -> Result<Tally>
    where
        F: Fn(u128) -> Env + Sync,
    {
        let workers = (self.workers as u128).clamp(1, total.max(1));
        let chunk = total.div_ceil(workers);
        let run_chunk = |start: u128| -> Result<Tally> {
            let mut tally = Tally::default();
            for i in start..(start + chunk).min(total) {
                let env = env_at(i);
                let outcome = p.classify(&env)?;
                tally.record(env, outcome);
            }
            Ok(tally)
        };
        let parts: Vec<Result<Tally>> = if workers == 1 {
            vec![run_chunk(0)]
        } else {
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..workers)
                    .map(|w| {
                        let run_chunk = &run_chunk;
                        scope.spawn(move || run_chunk(w * chunk))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
            })
        };
        let mut merged = Tally::default();
        for part in parts {
            merged.absorb(part?);
        }
        Ok(merged)
    }

    pub fn run_property(&self, p: &Property, trials: u64, seed: u64) -> Result<TestSummary> {
        if trials == 0 {
            return Err(Error::InvalidType("at least one trial is required".into()));
        }
        let tally = self.tally(u128::from(trials), |i| p.generate_env(seed, i as u64), p)?;
        Ok(tally.into_summary(&p.name, Mode::Random { seed, trials }))
    }

    pub fn run_exhaustive(&self, p: &Property) -> Result<TestSummary> {
        let size = p.domain_size();
        if size > self.cap {
            return Err(Error::DomainTooLarge { size, cap: self.cap });
        }
        let sizes: Vec<u128> = p.bindings.iter().map(|(_, t)| t.domain_size()).collect();
        let tally = self.tally(size, |i| p.nth_env(i, &sizes), p)?;
        Ok(tally.into_summary(&p.name, Mode::Exhaustive))
    }
}

pub fn generate<R: Rng + ?Sized>(t: &TypeDef, rng: &mut R) -> Value {
    t.generate(rng)
}

pub fn run_property(p: &Property, trials: u64, seed: u64) -> Result<TestSummary> {
    Runner::default().run_property(p, trials, seed)
}

pub fn run_exhaustive(p: &Property) -> Result<TestSummary> {
    Runner::default().run_exhaustive(p)
}

/// Outcome of a single unit assertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitResult {
    pub passed: bool,
    pub actual: String,
    pub expected: String,
}

impl fmt::Display for UnitResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "check-expect passed: {}", self.actual)
        } else {
            write!(f, "check-expect failed: got {}, expected {}", self.actual, self.expected)
        }
    }
}

pub fn check_expect<T: PartialEq + Debug>(actual: T, expected: T) -> UnitResult {
    UnitResult { passed: actual == expected, actual: format!("{actual:?}"), expected: format!("{expected:?}") }
}
