//! Acceptance criteria, one reported line each. Every criterion is checked
//! against an oracle written here, independent of the library's own
//! validation and enumeration paths.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use checkdigit::digits::{Digit, DigitString};
use checkdigit::engine::{enumerate, Env, ListLength, Mode, Property, Runner, TestSummary, TypeDef, Value};
use checkdigit::postnet::{decode_message, detect_and_correct, encode_message};
use checkdigit::properties::{find, instance_value, message_sampler, valid_instance_sampler};
use checkdigit::schemes::{Completed, SchemeId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLE: usize = 1000;

type Outcome = Result<String, String>;

/// Every summary produced, with the `tested` count it must report.
#[derive(Default)]
struct Ledger {
    runs: Vec<(String, TestSummary, u64)>,
}

impl Ledger {
    fn record(&mut self, label: &str, s: &TestSummary, expected_tested: u64) {
        self.runs.push((label.to_string(), s.clone(), expected_tested));
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

// Oracles: plain arithmetic on raw values.

fn airline_ok(v: &[u8]) -> bool {
    v.len() == 15 && v[..14].iter().fold(0u32, |r, &d| (r * 10 + u32::from(d)) % 7) == u32::from(v[14])
}

fn routing_ok(v: &[u8]) -> bool {
    let w = [7u32, 3, 9, 7, 3, 9, 7, 3, 9];
    v.len() == 9 && v.iter().zip(w).map(|(&d, w)| u32::from(d) * w).sum::<u32>() % 10 == 0
}

fn luhn_ok(v: &[u8]) -> bool {
    // doubled-and-folded table for digits 0..9
    const DOUBLED: [u32; 10] = [0, 2, 4, 6, 8, 1, 3, 5, 7, 9];
    let total: u32 = v
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &d)| if i % 2 == 1 { DOUBLED[d as usize] } else { u32::from(d) })
        .sum();
    v.len() == 16 && total.is_multiple_of(10)
}

fn isbn_ok(v: &[u8]) -> bool {
    v.len() == 10
        && v[..9].iter().all(|&d| d <= 9)
        && v[9] <= 10
        && v.iter().enumerate().map(|(i, &d)| (10 - i as u32) * u32::from(d)).sum::<u32>() % 11 == 0
}

fn raw_of(v: &Value) -> Vec<u8> {
    match v {
        Value::Digits(ds) => ds.values(),
        Value::Tuple(items) => match items.as_slice() {
            [Value::Digits(ds), Value::Nat(c)] => {
                let mut out = ds.values();
                out.push(*c as u8);
                out
            }
            _ => panic!("unexpected tuple"),
        },
        other => panic!("unexpected instance {other:?}"),
    }
}

fn env_key(env: &Env, instance: &str) -> (Vec<u8>, u64, u64) {
    let n = env.nat("n").unwrap();
    let d = if env.get("d").is_ok() { env.nat("d").unwrap() } else { u64::MAX };
    (raw_of(env.get(instance).unwrap()), n, d)
}

fn counterexample_keys(s: &TestSummary, instance: &str) -> BTreeSet<(Vec<u8>, u64, u64)> {
    s.counterexamples.iter().map(|e| env_key(e, instance)).collect()
}

/// Undetected effective substitutions, by brute force.
fn oracle_substitutions(
    instances: &[Vec<u8>],
    payloads: std::ops::RangeInclusive<u8>,
    valid: fn(&[u8]) -> bool,
) -> BTreeSet<(Vec<u8>, u64, u64)> {
    let mut out = BTreeSet::new();
    for v in instances {
        for n in 0..v.len() {
            for d in payloads.clone() {
                if d > 9 && n + 1 != v.len() {
                    continue;
                }
                if v[n] == d {
                    continue;
                }
                let mut m = v.clone();
                m[n] = d;
                if valid(&m) {
                    out.insert((v.clone(), n as u64, u64::from(d)));
                }
            }
        }
    }
    out
}

fn oracle_transpositions(instances: &[Vec<u8>], valid: fn(&[u8]) -> bool) -> BTreeSet<(Vec<u8>, u64, u64)> {
    let mut out = BTreeSet::new();
    for v in instances {
        for n in 0..v.len() - 1 {
            if v[n] == v[n + 1] {
                continue;
            }
            let mut m = v.clone();
            m.swap(n, n + 1);
            if valid(&m) {
                out.insert((v.clone(), n as u64, u64::MAX));
            }
        }
    }
    out
}

fn sampled(id: SchemeId, seed: u64) -> (Vec<Value>, Vec<Vec<u8>>) {
    let instances = valid_instance_sampler(id, seed, SAMPLE);
    let values: Vec<Value> = instances.iter().map(instance_value).collect();
    let raws = instances.iter().map(Completed::values).collect();
    (values, raws)
}

fn exhaustive_over(name: &str, var: &str, instances: Vec<Value>) -> (Property, u64) {
    let p = find(name).unwrap().property.with_binding(var, TypeDef::Elements(instances)).unwrap();
    let size = p.bindings().iter().map(|(_, t)| t.domain_size()).product::<u128>() as u64;
    (p, size)
}

fn criterion_1(ledger: &mut Ledger) -> Outcome {
    let start = Instant::now();
    let (values, raws) = sampled(SchemeId::Airline, 101);
    let (p, size) = exhaustive_over("C1", "ticket", values);
    let s = Runner::new().run_exhaustive(&p).map_err(|e| e.to_string())?;
    ledger.record("C1 exhaustive", &s, size);

    let found = counterexample_keys(&s, "ticket");
    let oracle = oracle_substitutions(&raws, 0..=9, airline_ok);
    ensure(found == oracle, || format!("engine found {} undetected, oracle {}", found.len(), oracle.len()))?;
    let family = found.iter().all(|(v, n, d)| *n < 14 && v[*n as usize].abs_diff(*d as u8) == 7);
    ensure(family, || "an undetected substitution is outside the mod-7 family".into())?;
    let expected_family: usize = raws
        .iter()
        .map(|v| (0..14).map(|n| (0..=9u8).filter(|&d| v[n].abs_diff(d) == 7).count()).sum::<usize>())
        .sum();
    ensure(found.len() == expected_family, || format!("{} undetected vs {} family members", found.len(), expected_family))?;

    let c1 = find("C1").unwrap();
    let known = Env::new(vec![
        ("ticket".into(), Value::Digits(DigitString::from_values(&[4, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap())),
        ("n".into(), Value::Nat(11)),
        ("d".into(), Value::Digit(Digit::new(7).unwrap())),
    ]);
    let confirmed = c1.property.hypothesis(&known)? && !c1.property.conclusion(&known)?;
    ensure(confirmed, || "ticket 420000000000000, n=11, d=7 is not a counterexample".into())?;
    let took = within(start, Duration::from_secs(5))?;
    Ok(format!("{} undetected = |d'-d| = 7 at n < 14; known counterexample confirmed ({took:.2?})", found.len()))
}

fn criterion_2(ledger: &mut Ledger) -> Outcome {
    let c2 = find("C2").unwrap();
    let mut worst = 0;
    for seed in 0..5u64 {
        let start = Instant::now();
        let s = Runner::new().run_property(&c2.property, 3000, seed).map_err(|e| e.to_string())?;
        ledger.record("C2 random", &s, 3000);
        within(start, Duration::from_secs(1))?;
        ensure(s.satisfied <= 1, || format!("seed {seed}: {} satisfied", s.satisfied))?;
        ensure(s.vacuous == (s.satisfied == 0), || "vacuous flag disagrees with satisfied".into())?;
        worst = worst.max(s.satisfied);
    }
    let s = Runner::new().run_property(&c2.property, 3000, 0).map_err(|e| e.to_string())?;
    ensure(s.vacuous, || "seed 0 run is not vacuous".into())?;
    ensure(s.to_cgen_text().contains("of which 0 (0 unique) satisfied the hypotheses"), || "text lacks vacuity line".into())?;
    Ok(format!("3000 trials x 5 seeds, max satisfied {worst}, vacuous"))
}

fn criterion_3(ledger: &mut Ledger) -> Outcome {
    let start = Instant::now();
    let (values, raws) = sampled(SchemeId::Routing, 303);
    let (p, size) = exhaustive_over("C3", "route", values);
    let s = Runner::new().run_exhaustive(&p).map_err(|e| e.to_string())?;
    ledger.record("C3 exhaustive", &s, size);
    ensure(s.counterexamples.is_empty(), || format!("{} undetected substitutions", s.counterexamples.len()))?;
    ensure(oracle_substitutions(&raws, 0..=9, routing_ok).is_empty(), || "oracle disagrees".into())?;
    ensure(s.satisfied == (SAMPLE * 9 * 9) as u64, || format!("{} effective substitutions", s.satisfied))?;
    let took = within(start, Duration::from_secs(2))?;
    Ok(format!("{} effective substitutions, all detected ({took:.2?})", s.satisfied))
}

fn criterion_4(ledger: &mut Ledger) -> Outcome {
    let start = Instant::now();
    let (mut values, mut raws) = sampled(SchemeId::Routing, 404);
    for known in [[3, 8, 8, 0, 0, 7, 0, 0, 0], [6, 1, 4, 7, 0, 0, 0, 0, 0], [4, 9, 4, 7, 0, 0, 0, 0, 0]] {
        values.push(Value::Digits(DigitString::from_values(&known).unwrap()));
        raws.push(known.to_vec());
    }
    let (p, size) = exhaustive_over("C4", "route", values);
    let s = Runner::new().run_exhaustive(&p).map_err(|e| e.to_string())?;
    ledger.record("C4 exhaustive", &s, size);
    let found = counterexample_keys(&s, "route");
    ensure(found == oracle_transpositions(&raws, routing_ok), || "engine and oracle disagree".into())?;
    let family: BTreeSet<_> = raws
        .iter()
        .flat_map(|v| (0..8).filter(|&n| v[n].abs_diff(v[n + 1]) == 5).map(move |n| (v.clone(), n as u64, u64::MAX)))
        .collect();
    ensure(found == family, || format!("{} undetected vs {} adjacent pairs differing by 5", found.len(), family.len()))?;
    ensure(found.contains(&(vec![3, 8, 8, 0, 0, 7, 0, 0, 0], 0, u64::MAX)), || "route 388007000 at n=0 missing".into())?;
    let took = within(start, Duration::from_secs(2))?;
    Ok(format!("{} undetected = adjacent digits differing by 5; route 388007000 reproduced ({took:.2?})", found.len()))
}

fn criterion_5(ledger: &mut Ledger) -> Outcome {
    let start = Instant::now();
    let (values, raws) = sampled(SchemeId::Luhn, 505);
    let (sub, sub_size) = exhaustive_over("C5", "card", values.clone());
    let s5 = Runner::new().run_exhaustive(&sub).map_err(|e| e.to_string())?;
    ledger.record("C5 exhaustive", &s5, sub_size);
    ensure(s5.counterexamples.is_empty(), || format!("{} undetected substitutions", s5.counterexamples.len()))?;
    ensure(oracle_substitutions(&raws, 0..=9, luhn_ok).is_empty(), || "oracle disagrees on C5".into())?;

    let (tr, tr_size) = exhaustive_over("C6", "card", values);
    let s6 = Runner::new().run_exhaustive(&tr).map_err(|e| e.to_string())?;
    ledger.record("C6 exhaustive", &s6, tr_size);
    let found = counterexample_keys(&s6, "card");
    ensure(found == oracle_transpositions(&raws, luhn_ok), || "engine and oracle disagree on C6".into())?;
    let family: BTreeSet<_> = raws
        .iter()
        .flat_map(|v| {
            (0..15)
                .filter(|&n| v[n].min(v[n + 1]) == 0 && v[n].max(v[n + 1]) == 9)
                .map(move |n| (v.clone(), n as u64, u64::MAX))
        })
        .collect();
    ensure(!family.is_empty(), || "sample contains no adjacent 0/9 pair".into())?;
    ensure(found == family, || format!("{} undetected vs {} adjacent 0/9 pairs", found.len(), family.len()))?;
    let took = within(start, Duration::from_secs(5))?;
    Ok(format!("substitutions all detected; {} undetected transpositions, all adjacent 0/9 ({took:.2?})", found.len()))
}

fn criterion_6(ledger: &mut Ledger) -> Outcome {
    let start = Instant::now();
    let (values, raws) = sampled(SchemeId::Isbn10, 606);
    ensure(raws.iter().any(|v| v[9] == 10), || "sample has no X check".into())?;
    let mut total = 0;
    for name in ["C7", "C8"] {
        let (p, size) = exhaustive_over(name, "isbn", values.clone());
        let s = Runner::new().run_exhaustive(&p).map_err(|e| e.to_string())?;
        ledger.record(name, &s, size);
        ensure(s.counterexamples.is_empty(), || format!("{name}: {} counterexamples", s.counterexamples.len()))?;
        ensure(s.satisfied > 0, || format!("{name}: vacuous"))?;
        total += s.satisfied;
    }
    ensure(oracle_substitutions(&raws, 0..=10, isbn_ok).is_empty(), || "oracle finds undetected substitution".into())?;
    ensure(oracle_transpositions(&raws, isbn_ok).is_empty(), || "oracle finds undetected transposition".into())?;
    let took = within(start, Duration::from_secs(5))?;
    Ok(format!("{total} effective mutations, zero counterexamples ({took:.2?})"))
}

fn criterion_7(ledger: &mut Ledger) -> Outcome {
    let start = Instant::now();
    let short: Vec<DigitString> = enumerate(&TypeDef::DigitList(ListLength::Bounded(3)), 10_000)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter_map(|v| match v {
            Value::Digits(ds) if !ds.is_empty() => Some(ds),
            _ => None,
        })
        .collect();
    ensure(short.len() == 1110, || format!("{} short strings", short.len()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let long: Vec<DigitString> = (0..10_000)
        .map(|_| {
            let len = rng.gen_range(4..=12);
            DigitString::from_values(&(0..len).map(|_| rng.gen_range(0..10u8)).collect::<Vec<_>>()).unwrap()
        })
        .collect();
    let mut flips = 0u64;
    for ds in short.iter().chain(&long) {
        let bits = encode_message(ds).map_err(|e| e.to_string())?;
        ensure(decode_message(&bits).as_ref() == Ok(ds), || format!("round trip failed for {ds}"))?;
        for i in 0..bits.len() {
            let mut hit = bits.as_slice().to_vec();
            hit[i] ^= 1;
            ensure(decode_message(&hit).is_err(), || format!("{ds}: flip {i} decoded silently"))?;
            let report = detect_and_correct(&hit).map_err(|e| e.to_string())?;
            ensure(report.recovered.as_ref() == Some(ds), || format!("{ds}: flip {i} not recovered"))?;
            flips += 1;
        }
    }

    // the catalog properties agree on a sample
    for name in ["C9", "C10"] {
        let entry = find(name).unwrap();
        let p = entry
            .property
            .with_binding("ds", TypeDef::Elements(message_sampler(77, 200, 12).into_iter().map(Value::Digits).collect()))
            .unwrap();
        let size = p.bindings().iter().map(|(_, t)| t.domain_size()).product::<u128>() as u64;
        let s = Runner::new().run_exhaustive(&p).map_err(|e| e.to_string())?;
        ledger.record(name, &s, size);
        ensure(s.counterexamples.is_empty() && s.satisfied > 0, || format!("{name} failed"))?;
    }
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("{} messages round-trip; {flips} single flips all corrected ({took:.2?})", short.len() + long.len()))
}

/// Nested loops over a three-variable property's domains, in the same order
/// the engine enumerates (last variable fastest).
fn nested_loop_oracle(p: &Property) -> Vec<Env> {
    let domains: Vec<(String, Vec<Value>)> = p
        .bindings()
        .iter()
        .map(|(k, t)| (k.clone(), (0..t.domain_size()).map(|i| t.nth(i)).collect()))
        .collect();
    let mut out = Vec::new();
    let (a, b, c) = (&domains[0], &domains[1], &domains[2]);
    for x in &a.1 {
        for y in &b.1 {
            for z in &c.1 {
                let env = Env::new(vec![(a.0.clone(), x.clone()), (b.0.clone(), y.clone()), (c.0.clone(), z.clone())]);
                if p.hypothesis(&env).unwrap() && !p.conclusion(&env).unwrap() {
                    out.push(env);
                }
            }
        }
    }
    out
}

fn criterion_8(ledger: &mut Ledger) -> Outcome {
    let tickets: Vec<Value> = valid_instance_sampler(SchemeId::Airline, 808, 60).iter().map(instance_value).collect();
    let (c1, c1_size) = exhaustive_over("C1", "ticket", tickets);
    let synthetic = Property::new(
        "sum-not-ten",
        vec![("x", TypeDef::Digit), ("y", TypeDef::NatRange(0, 19)), ("z", TypeDef::BitList(3))],
        |e: &Env| Ok(e.nat("x")? % 2 == 0),
        |e: &Env| Ok(e.nat("x")? + e.nat("y")? + e.bits("z")?.weight() as u64 != 10),
    )
    .unwrap();
    let mut checked = 0;
    for (p, size) in [(c1, c1_size), (synthetic.clone(), 1600)] {
        ensure(size <= 10_000, || format!("domain {size} too large"))?;
        for workers in [1, 4] {
            let s = Runner::new().workers(workers).run_exhaustive(&p).map_err(|e| e.to_string())?;
            ledger.record("engine exhaustive", &s, size);
            let oracle = nested_loop_oracle(&p);
            ensure(s.counterexamples == oracle, || format!("{}: engine {} vs oracle {}", p.name(), s.counterexamples.len(), oracle.len()))?;
            ensure(!oracle.is_empty(), || format!("{}: oracle found nothing to compare", p.name()))?;
            for cx in &s.counterexamples {
                ensure(p.hypothesis(cx)? && !p.conclusion(cx)?, || format!("unsound counterexample {cx}"))?;
            }
            checked += oracle.len();
        }
    }

    let c4 = find("C4").unwrap().property;
    let baseline = Runner::new().workers(1).run_property(&c4, 4000, 42).map_err(|e| e.to_string())?;
    ledger.record("C4 random", &baseline, 4000);
    let text = baseline.to_cgen_text();
    for _ in 0..5 {
        let again = Runner::new().workers(1).run_property(&c4, 4000, 42).map_err(|e| e.to_string())?;
        ledger.record("C4 random", &again, 4000);
        ensure(again.to_cgen_text() == text, || "repeated run differs".into())?;
    }
    for workers in [2, 3, 8] {
        let par = Runner::new().workers(workers).run_property(&c4, 4000, 42).map_err(|e| e.to_string())?;
        ledger.record("C4 random", &par, 4000);
        ensure(par.to_cgen_text() == text, || format!("{workers} workers differ from 1"))?;
        ensure(par.to_json() == baseline.to_json(), || format!("{workers} workers: json differs"))?;
    }
    let s = Runner::new().workers(5).run_property(&synthetic, 999, 9).map_err(|e| e.to_string())?;
    ledger.record("synthetic random", &s, 999);
    Ok(format!("{checked} counterexamples match nested loops; byte-identical output over 5 repeats and 1/2/3/8 workers"))
}

fn criterion_9(ledger: &Ledger) -> Outcome {
    for (label, s, expected_tested) in &ledger.runs {
        ensure(s.satisfied == s.counterexamples.len() as u64 + s.witnesses_count, || format!("{label}: satisfied mismatch"))?;
        ensure(s.tested == *expected_tested, || format!("{label}: tested {} != {expected_tested}", s.tested))?;
        ensure(s.tested >= s.satisfied, || format!("{label}: tested < satisfied"))?;
        ensure(s.vacuous == (s.satisfied == 0), || format!("{label}: vacuous flag"))?;
        if let Mode::Random { trials, .. } = s.mode {
            ensure(s.tested == trials, || format!("{label}: tested != trials"))?;
        }
        let unique: HashSet<&Env> = s.counterexamples.iter().collect();
        ensure(s.satisfied_unique >= unique.len() as u64, || format!("{label}: unique count"))?;
    }
    Ok(format!("accounting holds on {} runs", ledger.runs.len()))
}

fn main() -> ExitCode {
    let mut ledger = Ledger::default();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "airline substitution (C1)", criterion_1(&mut ledger)),
        (2, "airline vacuity (C2)", criterion_2(&mut ledger)),
        (3, "routing substitution (C3)", criterion_3(&mut ledger)),
        (4, "routing transposition (C4)", criterion_4(&mut ledger)),
        (5, "luhn (C5, C6)", criterion_5(&mut ledger)),
        (6, "isbn-10 (C7, C8)", criterion_6(&mut ledger)),
        (7, "postnet (C9, C10)", criterion_7(&mut ledger)),
        (8, "engine soundness and determinism", criterion_8(&mut ledger)),
    ];
    let accounting = criterion_9(&ledger);
    let mut failed = 0;
    for (n, name, outcome) in results.iter().chain(std::iter::once(&(9, "summary accounting", accounting))) {
        match outcome {
            Ok(detail) => println!("PASS criterion {n}: {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {n}: {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
