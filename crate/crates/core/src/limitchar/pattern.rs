use serde::Serialize;

use super::character::{
    f_sequence, is_compatible, nonzero_counts, SymbolicCharacter, TruncatedCharacter,
    TwistedFactor,
};
use super::twist::GaloisTwist;
use crate::error::{bail, Result};
use crate::gfq::factorial;
use crate::padic;

/// Digit pattern read off a truncated character once digit sums and nonzero
/// digit counts have stopped changing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct X0Pattern {
    pub p: u64,
    /// Highest level inspected.
    pub level: usize,
    /// First level from which `f` and `M` are constant up to `level`.
    pub stable_from: usize,
    /// Factors sorted by twist; twists are truncated at `level`.
    pub factors: Vec<TwistedFactor>,
}

impl X0Pattern {
    pub fn to_symbolic(&self) -> SymbolicCharacter {
        if self.factors.is_empty() {
            SymbolicCharacter::Trivial
        } else {
            SymbolicCharacter::twisted(self.factors.clone())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PatternOutcome {
    Pattern(X0Pattern),
    NoStablePattern {
        level: usize,
        /// Last level at which `f` or `M` still changed, if any.
        broke_at: Option<usize>,
        f: Vec<u64>,
        nonzero_counts: Vec<usize>,
        reason: String,
    },
}

impl PatternOutcome {
    pub fn pattern(&self) -> Option<&X0Pattern> {
        match self {
            Self::Pattern(p) => Some(p),
            Self::NoStablePattern { .. } => None,
        }
    }
}

/// Result of truncating a twisted digit sum and reading the pattern back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub expected: Vec<TwistedFactor>,
    /// Recovered factors with twists cut back to the source twist level.
    pub recovered: Option<Vec<TwistedFactor>>,
}

impl RoundTrip {
    pub fn holds(&self) -> bool {
        self.recovered.as_ref() == Some(&self.expected)
    }
}

/// Truncates `sc` at `level` and compares [`extract_pattern`] with its
/// factors.
pub fn pattern_round_trip(sc: &SymbolicCharacter, p: u64, level: usize) -> Result<RoundTrip> {
    let SymbolicCharacter::Twisted { factors } = sc else {
        bail!(Argument, "round trip needs a twisted digit sum");
    };
    sc.validate(p)?;
    let source_level = factors.first().map_or(1, |f| f.twist.level());
    let mut expected = factors.clone();
    expected.sort();
    let tc = super::character::truncate(sc, p, level)?;
    let recovered = extract_pattern(&tc)?.pattern().map(|pat| {
        let mut got: Vec<TwistedFactor> = pat
            .factors
            .iter()
            .map(|f| TwistedFactor {
                theta: f.theta,
                twist: f.twist.at_level(source_level),
            })
            .collect();
        got.sort();
        got
    });
    Ok(RoundTrip { expected, recovered })
}

/// Reads `m_n = Σ θ_i p^{g_{i,n}}` off a compatible truncation.
///
/// The pattern is accepted only if `f` and `M` agree on at least the last two
/// levels, and each nonzero digit at level `n+1` sits over a digit of the same
/// value at level `n` in the position reduced mod `n!`. The result says
/// nothing about levels beyond the truncation.
pub fn extract_pattern(tc: &TruncatedCharacter) -> Result<PatternOutcome> {
    let compat = is_compatible(tc);
    if let Some((i, j)) = compat.failing_pair {
        bail!(Argument, "residues at levels {i} and {j} are incompatible");
    }
    let n_top = tc.level();
    let f = f_sequence(tc);
    let counts = nonzero_counts(tc);
    let no_pattern = |broke_at, reason: &str| PatternOutcome::NoStablePattern {
        level: n_top,
        broke_at,
        f: f.clone(),
        nonzero_counts: counts.clone(),
        reason: reason.to_owned(),
    };
    if n_top < 2 {
        return Ok(no_pattern(None, "stabilization needs at least two levels"));
    }
    let mut stable_from = n_top;
    while stable_from > 1
        && f[stable_from - 2] == f[n_top - 1]
        && counts[stable_from - 2] == counts[n_top - 1]
    {
        stable_from -= 1;
    }
    if stable_from == n_top {
        return Ok(no_pattern(
            Some(n_top),
            "digit sum or nonzero digit count changes at the last level",
        ));
    }

    let p = tc.p();
    let top_digits = padic::digits_unchecked(tc.residue(n_top), p);
    for n in stable_from..n_top {
        let lower = padic::digits_unchecked(tc.residue(n), p);
        let upper = padic::digits_unchecked(tc.residue(n + 1), p);
        let period = factorial(n);
        let mut hit = vec![false; period];
        for (g, &d) in upper.iter().enumerate().filter(|(_, &d)| d != 0) {
            let below = lower.get(g % period).copied().unwrap_or(0);
            if below != d || hit[g % period] {
                return Ok(no_pattern(
                    Some(n + 1),
                    "digit positions do not refine between consecutive levels",
                ));
            }
            hit[g % period] = true;
        }
    }
    let mut factors = top_digits
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(g, &d)| {
            Ok(TwistedFactor {
                theta: d,
                twist: GaloisTwist::from_integer(g as u64, n_top)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    factors.sort();
    Ok(PatternOutcome::Pattern(X0Pattern {
        p,
        level: n_top,
        stable_from,
        factors,
    }))
}
