//! Acceptance criteria 1–10. Each criterion prints one PASS/FAIL line with
//! its runtime; the lines go straight to stderr so they show up even when
//! the test harness captures output.

use std::io::Write;
use std::time::{Duration, Instant};

use bstable::classify::{report, TorusCharacter};
use bstable::gfq::power_sum_direct;
use bstable::limitchar::{pattern_round_trip, GaloisTwist, SymbolicCharacter, TwistedFactor};
use bstable::padic::{check_digit_lemma, lucas_binom, power_sum};
use bstable::rank1lab::{
    build_costandard, build_induced, idempotent_split, socle_and_head, verify_irreducibility_chain,
    Gate, Sl2Action,
};
use bstable::rootdata::{weyl_group, RootDatum};
use bstable::Error;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
    /// The criterion is unattainable as literally stated; `ok = false` is
    /// expected and `detail` must match this text.
    known_defect: Option<&'static str>,
}

impl Outcome {
    fn check(ok: bool, detail: impl Into<String>) -> Self {
        Self {
            ok,
            detail: detail.into(),
            known_defect: None,
        }
    }
}

fn rational(lambda: i64, p: u64, level: usize) -> bstable::limitchar::TruncatedCharacter {
    bstable::limitchar::truncate(&SymbolicCharacter::rational(lambda), p, level).unwrap()
}

fn lucas_oracle() -> Outcome {
    const MAX: usize = 512;
    let mut row = vec![BigUint::from(1u32)];
    let mut bad = Vec::new();
    for m in 0..=MAX {
        for p in [2u64, 3, 5] {
            for n in 0..=MAX {
                let exact = if n <= m { &row[n] % p } else { BigUint::from(0u32) };
                let got = lucas_binom(m as u64, n as u64, p).unwrap();
                if exact != BigUint::from(got) {
                    bad.push((m, n, p));
                }
            }
        }
        let mut next = vec![BigUint::from(1u32); m + 2];
        for i in 1..=m {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    Outcome::check(bad.is_empty(), format!("{} pairs × 3 primes, mismatches {:?}", (MAX + 1) * (MAX + 1), &bad[..bad.len().min(4)]))
}

fn power_sums() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for q in [2u64, 3, 4, 5, 8, 9] {
        for k in 0..=3 * (q - 1) {
            for zero in [true, false] {
                count += 1;
                if power_sum(q, k, zero).unwrap() != power_sum_direct(q, k, zero).unwrap() {
                    bad.push((q, k, zero));
                }
            }
        }
    }
    Outcome::check(bad.is_empty(), format!("{count} sums, mismatches {bad:?}"))
}

fn digits(mut n: u64, p: u64) -> Vec<u64> {
    let mut d = Vec::new();
    while n > 0 {
        d.push(n % p);
        n /= p;
    }
    d
}

/// All congruent pairs, with the three clauses evaluated directly from the
/// digits; pairs of the form `m + k(q-1)` are also run through the library.
fn digit_lemma() -> Outcome {
    let r = 2usize;
    let mut failures = Vec::new();
    let mut pairs = 0;
    for p in [2u64, 3] {
        let q = p.pow(r as u32);
        for m in 0..q {
            let md = digits(m, p);
            let f_m: u64 = md.iter().sum();
            let nz_m = md.iter().filter(|&&x| x != 0).count();
            let m_digits: Vec<u64> = (0..r).map(|i| md.get(i).copied().unwrap_or(0)).collect();
            for mp in (0..=q * q * q).filter(|mp| mp % (q - 1) == m % (q - 1)) {
                pairs += 1;
                let d = digits(mp, p);
                let f: u64 = d.iter().sum();
                let nz = d.iter().filter(|&&x| x != 0).count();
                let mut classes = vec![0u64; r];
                for (j, x) in d.iter().enumerate() {
                    classes[j % r] += x;
                }
                let holds = f >= f_m && (f == f_m) == (classes == m_digits) && (f != f_m || nz >= nz_m);
                if mp >= m {
                    let lib = check_digit_lemma(m, mp, p, r).unwrap();
                    assert_eq!(lib.holds(), holds, "library and digit oracle disagree at p={p} m={m} m'={mp}");
                }
                if !holds {
                    failures.push((p, m, mp));
                }
            }
        }
    }
    let expected = vec![(2, 3, 0), (3, 8, 0)];
    if failures == expected {
        return Outcome {
            ok: false,
            detail: format!(
                "{pairs} pairs; clauses fail exactly at m = q-1, m' = 0 {failures:?}; every pair with m' ≥ m passes"
            ),
            known_defect: Some("m = q-1, m' = 0"),
        };
    }
    Outcome::check(failures.is_empty(), format!("{pairs} pairs, failures {failures:?}"))
}

fn random_twisted(rng: &mut ChaCha8Rng) -> (u64, SymbolicCharacter) {
    let p = if rng.gen_bool(0.5) { 2 } else { 3 };
    let count = rng.gen_range(1..=3);
    let mut used = Vec::new();
    while used.len() < count {
        let g = rng.gen_range(0..6u64);
        if !used.contains(&g) {
            used.push(g);
        }
    }
    let factors = used
        .into_iter()
        .map(|g| TwistedFactor {
            theta: rng.gen_range(1..p),
            twist: GaloisTwist::from_integer(g, 3).unwrap(),
        })
        .collect();
    (p, SymbolicCharacter::twisted(factors))
}

fn pattern_round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut bad = Vec::new();
    for _ in 0..200 {
        let (p, sc) = random_twisted(&mut rng);
        if !pattern_round_trip(&sc, p, 4).unwrap().holds() {
            bad.push((p, sc));
        }
    }
    Outcome::check(bad.is_empty(), format!("200 characters, failures {bad:?}"))
}

const SL2_LEVELS: [(u64, usize); 3] = [(2, 1), (3, 1), (2, 2)];

fn relation_suite() -> Outcome {
    let mut modules = 0;
    let mut checks = 0;
    let mut bad = Vec::new();
    for (p, a) in SL2_LEVELS {
        for lambda in -2..=2 {
            let m = build_induced(p, a, &rational(lambda, p, a), a).unwrap();
            let rel = m.relation_report();
            // ε(x)·1_θ = 1_θ and h(u)·1_θ = θ(u)·1_θ.
            let f = m.coefficient_field();
            let fq = m.group_field();
            let top = m.highest();
            let fixes_top = fq.elements().all(|x| m.eps(x).apply(f, &top) == top)
                && fq.elements().filter(|&u| u != 0).all(|u| {
                    let mut v = vec![0; m.dim()];
                    v[0] = m.theta_value(u);
                    m.torus(u).apply(f, &top) == v
                });
            modules += 1;
            checks += rel.checked;
            if !rel.holds() || !fixes_top || m.dim() != fq.order() as usize + 1 {
                bad.push(format!("induced p={p} a={a} λ={lambda}"));
            }
        }
        for n in 0..=8 {
            let rel = build_costandard(n, p, a, a).unwrap().relation_report();
            modules += 1;
            checks += rel.checked;
            if !rel.holds() {
                bad.push(format!("costandard p={p} a={a} n={n}"));
            }
        }
    }
    Outcome::check(bad.is_empty(), format!("{modules} modules, {checks} identities, failures {bad:?}"))
}

fn trivial_split() -> Outcome {
    let gate = Gate::default();
    let mut dims = Vec::new();
    let mut ok = true;
    for (p, a) in SL2_LEVELS {
        let m = build_induced(p, a, &rational(0, p, a), a).unwrap();
        let s = idempotent_split(&m, &gate).unwrap();
        ok &= s.holds()
            && s.e_summand.mode == bstable::rank1lab::Mode::Exhaustive
            && s.o_summand.mode == bstable::rank1lab::Mode::Exhaustive;
        dims.push((p, a, s.dim_e, s.dim_o));
    }
    Outcome::check(ok, format!("(p, a, dim Y(I), dim Y(∅)) = {dims:?}"))
}

fn socle_head() -> Outcome {
    let gate = Gate::default();
    let mut ok = true;
    let mut seen = Vec::new();
    let mut skipped = Vec::new();
    for (p, a) in [(2u64, 2usize), (3, 1)] {
        for lambda in [1i64, 2, -1] {
            let m = build_induced(p, a, &rational(lambda, p, a), a).unwrap();
            match socle_and_head(&m, &gate) {
                Ok(r) => {
                    ok &= r.holds();
                    seen.push((p, a, lambda, r.head_dim, r.expected_head_dim));
                }
                Err(Error::Precondition(_)) => skipped.push((p, a, lambda)),
                Err(e) => panic!("{e}"),
            }
        }
    }
    Outcome::check(
        ok,
        format!("(p, a, λ, head, digit product) = {seen:?}; trivial on the torus, skipped: {skipped:?}"),
    )
}

fn bridge() -> Outcome {
    let mut bad = Vec::new();
    let mut cases = 0;
    for p in [2u64, 3] {
        for lambda in -2..=2 {
            let theta = rational(lambda, p, 2);
            cases += 1;
            let v = verify_irreducibility_chain(&theta, 1, 2).unwrap();
            if !v.agrees() {
                bad.push(v);
            }
        }
    }
    Outcome::check(bad.is_empty(), format!("{cases} cases, disagreements {bad:?}"))
}

fn dichotomy() -> Outcome {
    let a1 = RootDatum::of_type("A1").unwrap();
    let mut bad = Vec::new();
    for p in [2u64, 3] {
        for lambda in -16..=16 {
            let theta = TorusCharacter::new(&a1, vec![SymbolicCharacter::rational(lambda)]).unwrap();
            if report(&theta, p).unwrap().finite_dimensional != (lambda >= 0) {
                bad.push((p, lambda));
            }
        }
    }
    Outcome::check(bad.is_empty(), format!("66 characters, mismatches {bad:?}"))
}

fn weyl_suite() -> Outcome {
    let mut bad = Vec::new();
    for (name, degrees) in [("A1", vec![2usize]), ("A2", vec![2, 3]), ("B2", vec![2, 4]), ("A3", vec![2, 3, 4])] {
        let w = weyl_group(&RootDatum::of_type(name).unwrap()).unwrap();
        if (0..w.order()).any(|x| w.length(x) != w.inversion_set(x).len()) {
            bad.push(format!("{name}: length"));
        }
        let mut poly = vec![1u64];
        for d in degrees {
            let mut next = vec![0u64; poly.len() + d - 1];
            for (i, c) in poly.iter().enumerate() {
                for j in 0..d {
                    next[i + j] += c;
                }
            }
            poly = next;
        }
        if w.poincare_polynomial() != poly {
            bad.push(format!("{name}: Poincaré polynomial"));
        }
        let rank = w.system().rank();
        for mask in 0..1u32 << rank {
            let j: Vec<usize> = (0..rank).filter(|i| mask >> i & 1 == 1).collect();
            if w.min_coset_reps(&j).len() * w.parabolic_subgroup(&j).len() != w.order() {
                bad.push(format!("{name}: cosets for {j:?}"));
            }
        }
    }
    Outcome::check(bad.is_empty(), format!("A1, A2, B2, A3; failures {bad:?}"))
}

#[test]
fn acceptance_criteria() {
    type Criterion = (u32, &'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        (1, "Lucas binomials against big integers", 5, lucas_oracle),
        (2, "power sums, closed form against field sums", 1, power_sums),
        (3, "digit-sum growth under congruence", 10, digit_lemma),
        (4, "twisted digit pattern round trip", 5, pattern_round_trips),
        (5, "SL2 relation suite", 10, relation_suite),
        (6, "Hecke split for the trivial character", 30, trivial_split),
        (7, "simple socle and head", 120, socle_head),
        (8, "generation against costandard image", 120, bridge),
        (9, "A1 classification dichotomy", 1, dichotomy),
        (10, "Weyl group suite", 1, weyl_suite),
    ];
    let mut stderr = std::io::stderr();
    let mut unexpected = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let ok = outcome.ok && in_time;
        let status = if ok { "PASS" } else { "FAIL" };
        writeln!(
            stderr,
            "criterion {id:>2} {status} ({name}; {:.3}s of {limit}s): {}",
            elapsed.as_secs_f64(),
            outcome.detail
        )
        .unwrap();
        let expected_failure = outcome
            .known_defect
            .is_some_and(|d| outcome.detail.contains(d) && in_time);
        if !ok && !expected_failure {
            unexpected.push(id);
        }
    }
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
}
