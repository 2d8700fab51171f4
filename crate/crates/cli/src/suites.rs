//! Verification suites run by `bstable verify`. Each suite reads a grid of
//! JSON case objects (or builds its default grid) and reports one record
//! per case.

use bstable::gfq::power_sum_direct;
use bstable::limitchar::{pattern_round_trip, GaloisTwist, SymbolicCharacter, TwistedFactor};
use bstable::padic::{self, check_digit_lemma, lucas_binom};
use bstable::rank1lab::{
    build_costandard, build_induced, idempotent_split, socle_and_head,
    verify_irreducibility_chain, Gate, LabRecord, Verdict,
};
use bstable::{Error, Result};
use clap::ValueEnum;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    DigitLemma,
    Lucas,
    PowerSums,
    Sl2Relations,
    Sl2SocleHead,
    Sl2Chain,
    HeckeSplit,
    PatternRoundtrip,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Self::DigitLemma => "digit-lemma",
            Self::Lucas => "lucas",
            Self::PowerSums => "power-sums",
            Self::Sl2Relations => "sl2-relations",
            Self::Sl2SocleHead => "sl2-socle-head",
            Self::Sl2Chain => "sl2-chain",
            Self::HeckeSplit => "hecke-split",
            Self::PatternRoundtrip => "pattern-roundtrip",
        }
    }

    fn lemma(self) -> &'static str {
        match self {
            Self::DigitLemma => "digit-sum-growth",
            Self::Lucas => "lucas-binomial",
            Self::PowerSums => "finite-field-power-sums",
            Self::Sl2Relations => "sl2-defining-relations",
            Self::Sl2SocleHead => "simple-socle-and-head",
            Self::Sl2Chain => "generation-vs-costandard-image",
            Self::HeckeSplit => "hecke-idempotent-split",
            Self::PatternRoundtrip => "twisted-digit-pattern-roundtrip",
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CaseRecord {
    pub key: String,
    #[serde(flatten)]
    pub record: LabRecord,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: &'static str,
    pub passed: bool,
    pub cases: Vec<CaseRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DigitCase {
    p: u64,
    r: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LucasCase {
    p: u64,
    #[serde(default = "default_lucas_max")]
    max: u64,
}

fn default_lucas_max() -> u64 {
    512
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PowerSumCase {
    q: u64,
    k_max: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationCase {
    p: u64,
    a: usize,
    #[serde(default = "default_n_max")]
    n_max: usize,
}

fn default_n_max() -> usize {
    8
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SocleCase {
    p: u64,
    a: usize,
    lambda: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainCase {
    p: u64,
    lambda: i64,
    r: usize,
    t: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HeckeCase {
    p: u64,
    a: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PatternCase {
    p: u64,
    factors: Vec<TwistedFactor>,
    #[serde(default = "default_pattern_level")]
    level: usize,
}

fn default_pattern_level() -> usize {
    4
}

/// The grid used when none is given, limited to `p` if set.
pub fn default_grid(suite: Suite, p: Option<u64>) -> Vec<Value> {
    let primes = |all: &[u64]| -> Vec<u64> { all.iter().copied().filter(|&q| p.is_none_or(|p| p == q)).collect() };
    let sl2_levels = [(2u64, 1usize), (3, 1), (2, 2)];
    match suite {
        Suite::DigitLemma => primes(&[2, 3]).into_iter().map(|p| json!({"p": p, "r": 2})).collect(),
        Suite::Lucas => primes(&[2, 3, 5]).into_iter().map(|p| json!({"p": p})).collect(),
        Suite::PowerSums => [2u64, 3, 4, 5, 8, 9]
            .into_iter()
            .filter(|&q| p.is_none_or(|p| padic::prime_power(q).is_some_and(|(r, _)| r == p)))
            .map(|q| json!({"q": q}))
            .collect(),
        Suite::Sl2Relations | Suite::HeckeSplit => sl2_levels
            .into_iter()
            .filter(|(q, _)| p.is_none_or(|p| p == *q))
            .map(|(p, a)| json!({"p": p, "a": a}))
            .collect(),
        Suite::Sl2SocleHead => [(2u64, 2usize), (3, 1)]
            .into_iter()
            .filter(|(q, _)| p.is_none_or(|p| p == *q))
            .flat_map(|(p, a)| [1i64, 2, -1].map(|lambda| json!({"p": p, "a": a, "lambda": lambda})))
            .collect(),
        Suite::Sl2Chain => primes(&[2, 3])
            .into_iter()
            .flat_map(|p| (-2i64..=2).map(move |lambda| json!({"p": p, "lambda": lambda, "r": 1, "t": 2})))
            .collect(),
        Suite::PatternRoundtrip => primes(&[2, 3]).into_iter().flat_map(pattern_grid).collect(),
    }
}

/// Single factors and pairs with distinct integer twists, at twist level 3.
fn pattern_grid(p: u64) -> Vec<Value> {
    let twist = |g: u64| GaloisTwist::from_integer(g, 3).expect("level 3 is valid");
    let mut out = Vec::new();
    for theta in 1..p {
        for g in 0..6 {
            out.push(json!({"p": p, "factors": [TwistedFactor { theta, twist: twist(g) }]}));
        }
    }
    for g in 0..6u64 {
        for h in g + 1..6 {
            let factors = [
                TwistedFactor { theta: 1, twist: twist(g) },
                TwistedFactor { theta: p - 1, twist: twist(h) },
            ];
            out.push(json!({"p": p, "factors": factors}));
        }
    }
    out
}

fn parse_case<T: DeserializeOwned>(case: &Value) -> Result<T, CliError> {
    serde_json::from_value(case.clone()).map_err(|e| CliError::Usage(format!("invalid case {case}: {e}")))
}

fn record(suite: Suite, parameters: &Value, verdict: Verdict, witnesses: Value) -> LabRecord {
    LabRecord {
        lemma: suite.lemma().to_owned(),
        parameters: parameters.clone(),
        verdict,
        witnesses,
    }
}

/// Runs all cases in parallel; records come back sorted by their canonical
/// parameter string.
pub fn run(suite: Suite, grid: &[Value], p: Option<u64>, gate: &Gate) -> Result<SuiteReport, CliError> {
    let cases: Vec<&Value> = grid
        .iter()
        .filter(|c| p.is_none_or(|p| c.get("p").and_then(Value::as_u64).is_none_or(|q| q == p)))
        .collect();
    // Validate every case before running any.
    for c in &cases {
        validate(suite, c)?;
    }
    let results: Vec<Result<CaseRecord, CliError>> = cases
        .par_iter()
        .map(|c| {
            let record = run_case(suite, c, gate)?;
            Ok(CaseRecord {
                key: c.to_string(),
                record,
            })
        })
        .collect();
    let mut records = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    records.sort_by(|a, b| a.key.cmp(&b.key));
    let passed = records.iter().all(|r| r.record.verdict != Verdict::Fail);
    Ok(SuiteReport {
        schema: "v1",
        suite: suite.name(),
        passed,
        cases: records,
    })
}

fn validate(suite: Suite, case: &Value) -> Result<(), CliError> {
    match suite {
        Suite::DigitLemma => parse_case::<DigitCase>(case).map(drop),
        Suite::Lucas => parse_case::<LucasCase>(case).map(drop),
        Suite::PowerSums => parse_case::<PowerSumCase>(case).map(drop),
        Suite::Sl2Relations => parse_case::<RelationCase>(case).map(drop),
        Suite::Sl2SocleHead => parse_case::<SocleCase>(case).map(drop),
        Suite::Sl2Chain => parse_case::<ChainCase>(case).map(drop),
        Suite::HeckeSplit => parse_case::<HeckeCase>(case).map(drop),
        Suite::PatternRoundtrip => parse_case::<PatternCase>(case).map(drop),
    }
}

fn run_case(suite: Suite, case: &Value, gate: &Gate) -> Result<LabRecord, CliError> {
    let (verdict, witnesses) = match suite {
        Suite::DigitLemma => digit_lemma(parse_case(case)?)?,
        Suite::Lucas => lucas(parse_case(case)?)?,
        Suite::PowerSums => power_sums(parse_case(case)?)?,
        Suite::Sl2Relations => sl2_relations(parse_case(case)?, gate)?,
        Suite::Sl2SocleHead => sl2_socle_head(parse_case(case)?, gate)?,
        Suite::Sl2Chain => sl2_chain(parse_case(case)?)?,
        Suite::HeckeSplit => hecke(parse_case(case)?, gate)?,
        Suite::PatternRoundtrip => pattern(parse_case(case)?)?,
    };
    Ok(record(suite, case, verdict, witnesses))
}

type Outcome = Result<(Verdict, Value)>;

fn digit_lemma(c: DigitCase) -> Outcome {
    let q = c
        .p
        .checked_pow(c.r as u32)
        .ok_or_else(|| Error::Capability(format!("{}^{} overflows", c.p, c.r)))?;
    let top = q.checked_pow(3).ok_or_else(|| Error::Capability(format!("{q}^3 overflows")))?;
    let mut checked = 0u64;
    let mut failures = Vec::new();
    for m in 0..q {
        let mut m_prime = m;
        while m_prime <= top {
            let v = check_digit_lemma(m, m_prime, c.p, c.r)?;
            checked += 1;
            if !v.holds() && failures.len() < 8 {
                failures.push(v);
            }
            m_prime += q - 1;
        }
    }
    Ok((Verdict::from_bool(failures.is_empty()), json!({"pairs_checked": checked, "failures": failures})))
}

/// Oracle: rows of Pascal's triangle reduced mod `p`.
fn lucas(c: LucasCase) -> Outcome {
    if c.max > 4096 {
        return Err(Error::Capability(format!("max = {} exceeds 4096", c.max)));
    }
    let mut row = vec![1u64];
    let mut mismatches = Vec::new();
    for m in 0..=c.max {
        for (n, &expected) in row.iter().enumerate() {
            let got = lucas_binom(m, n as u64, c.p)?;
            if got != expected && mismatches.len() < 8 {
                mismatches.push(json!({"m": m, "n": n, "lucas": got, "pascal": expected}));
            }
        }
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = (row[i - 1] + row[i]) % c.p;
        }
        row = next;
    }
    Ok((Verdict::from_bool(mismatches.is_empty()), json!({"mismatches": mismatches})))
}

fn power_sums(c: PowerSumCase) -> Outcome {
    let k_max = c.k_max.unwrap_or(3 * (c.q.max(2) - 1));
    let mut mismatches = Vec::new();
    for k in 0..=k_max {
        for include_zero in [true, false] {
            let closed = padic::power_sum(c.q, k, include_zero)?;
            let direct = power_sum_direct(c.q, k, include_zero)?;
            if closed != direct {
                mismatches.push(json!({"k": k, "include_zero": include_zero, "closed": closed, "direct": direct}));
            }
        }
    }
    Ok((Verdict::from_bool(mismatches.is_empty()), json!({"mismatches": mismatches})))
}

fn rational_at(lambda: i64, p: u64, level: usize) -> Result<bstable::limitchar::TruncatedCharacter> {
    bstable::limitchar::truncate(&SymbolicCharacter::rational(lambda), p, level)
}

fn sl2_relations(c: RelationCase, gate: &Gate) -> Outcome {
    let mut failures = Vec::new();
    let mut modules = 0;
    for lambda in -2i64..=2 {
        let m = build_induced(c.p, c.a, &rational_at(lambda, c.p, c.a)?, c.a)?;
        let rel = m.relation_report();
        modules += 1;
        if !rel.holds() {
            failures.push(json!({"module": "induced", "lambda": lambda, "failures": rel.failures}));
        }
    }
    for n in 0..=c.n_max {
        let cm = build_costandard(n, c.p, c.a, c.a)?;
        let rel = cm.relation_report();
        modules += 1;
        if !rel.holds() {
            failures.push(json!({"module": "costandard", "n": n, "failures": rel.failures}));
        }
        let l = cm.check_l_submodule(gate)?;
        if !l.submodule {
            failures.push(json!({"module": "simple", "n": n, "failures": ["not a submodule"]}));
        }
    }
    Ok((Verdict::from_bool(failures.is_empty()), json!({"modules": modules, "failures": failures})))
}

fn sl2_socle_head(c: SocleCase, gate: &Gate) -> Outcome {
    let theta = rational_at(c.lambda, c.p, c.a)?;
    let m = build_induced(c.p, c.a, &theta, c.a)?;
    match socle_and_head(&m, gate) {
        Ok(r) => Ok((Verdict::from_bool(r.holds()), serde_json::to_value(&r).expect("serializable"))),
        Err(Error::Precondition(reason)) => Ok((Verdict::Skipped, json!({"exponent": m.exponent(), "reason": reason}))),
        Err(e) => Err(e),
    }
}

fn sl2_chain(c: ChainCase) -> Outcome {
    let theta = rational_at(c.lambda, c.p, c.t)?;
    let v = verify_irreducibility_chain(&theta, c.r, c.t)?;
    Ok((Verdict::from_bool(v.agrees()), serde_json::to_value(&v).expect("serializable")))
}

fn hecke(c: HeckeCase, gate: &Gate) -> Outcome {
    let m = build_induced(c.p, c.a, &rational_at(0, c.p, c.a)?, c.a)?;
    let split = idempotent_split(&m, gate)?;
    Ok((Verdict::from_bool(split.holds()), serde_json::to_value(&split).expect("serializable")))
}

fn pattern(c: PatternCase) -> Outcome {
    let sc = SymbolicCharacter::twisted(c.factors);
    let rt = pattern_round_trip(&sc, c.p, c.level)?;
    Ok((Verdict::from_bool(rt.holds()), serde_json::to_value(&rt).expect("serializable")))
}
