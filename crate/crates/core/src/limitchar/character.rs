use serde::{Deserialize, Serialize};

use super::twist::GaloisTwist;
use crate::error::{bail, Result};
use crate::gfq::factorial;
use crate::padic::{self, check_prime};

/// Highest level at which residues are computed. Level 4 means residues
/// modulo `p^{24} - 1`, which still fits in 64 bits for `p ≤ 5`.
pub const MAX_CHARACTER_LEVEL: usize = 4;

/// `p^{n!} - 1`, the order of `F_{p^{n!}}^*`.
pub fn level_modulus(p: u64, n: usize) -> Result<u64> {
    if n == 0 {
        bail!(Argument, "levels start at 1");
    }
    if n > MAX_CHARACTER_LEVEL {
        bail!(Capability, "level {n} exceeds the character cap {MAX_CHARACTER_LEVEL}");
    }
    let e = factorial(n) as u32;
    match p.checked_pow(e) {
        Some(q) => Ok(q - 1),
        None => bail!(Capability, "{p}^{e} does not fit in 64 bits"),
    }
}

/// A character of `F̄_p^*` truncated at level `N`: residues `m_n` modulo
/// `p^{n!} - 1`, so that `t ↦ t^{m_n}` on `F_{p^{n!}}^*`.
///
/// The constructor only checks the ranges; use [`is_compatible`] for the
/// congruences between levels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTruncated")]
pub struct TruncatedCharacter {
    p: u64,
    residues: Vec<u64>,
}

#[derive(Deserialize)]
struct RawTruncated {
    p: u64,
    residues: Vec<u64>,
}

impl TryFrom<RawTruncated> for TruncatedCharacter {
    type Error = crate::Error;

    fn try_from(raw: RawTruncated) -> Result<Self> {
        Self::new(raw.p, raw.residues)
    }
}

impl TruncatedCharacter {
    pub fn new(p: u64, residues: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        for (i, &m) in residues.iter().enumerate() {
            let modulus = level_modulus(p, i + 1)?;
            if m >= modulus {
                bail!(Argument, "residue m_{} = {m} is not below {modulus}", i + 1);
            }
        }
        Ok(Self { p, residues })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> usize {
        self.residues.len()
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    /// `m_n` for `1 ≤ n ≤ level`.
    pub fn residue(&self, n: usize) -> u64 {
        self.residues[n - 1]
    }

    /// The first `n` levels.
    pub fn restrict(&self, n: usize) -> Result<Self> {
        if n > self.level() {
            bail!(Argument, "cannot restrict level {} to {n}", self.level());
        }
        Ok(Self {
            p: self.p,
            residues: self.residues[..n].to_vec(),
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.residues.iter().all(|&m| m == 0)
    }
}

/// One summand `θ_i · p^{g_i}` of a twisted digit sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwistedFactor {
    pub theta: u64,
    pub twist: GaloisTwist,
}

/// Characters with a closed form, for which membership in `𝒳₀` is decidable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SymbolicCharacter {
    Trivial,
    /// `t ↦ t^λ`.
    Rational { lambda: i64 },
    /// `t ↦ Π_i ω_i(t)^{θ_i}`, i.e. `m_n = Σ θ_i p^{g_{i,n}}`.
    Twisted { factors: Vec<TwistedFactor> },
}

impl SymbolicCharacter {
    pub fn rational(lambda: i64) -> Self {
        Self::Rational { lambda }
    }

    pub fn twisted(factors: Vec<TwistedFactor>) -> Self {
        Self::Twisted { factors }
    }

    /// True for every representation of the trivial character.
    pub fn is_trivial(&self) -> bool {
        match self {
            Self::Trivial => true,
            Self::Rational { lambda } => *lambda == 0,
            Self::Twisted { factors } => factors.is_empty(),
        }
    }

    /// Checks `θ_i ∈ [1, p-1]`, equal twist levels and pairwise distinct
    /// twists at that level.
    pub fn validate(&self, p: u64) -> Result<()> {
        check_prime(p)?;
        let Self::Twisted { factors } = self else {
            return Ok(());
        };
        for f in factors {
            if f.theta == 0 || f.theta >= p {
                bail!(Argument, "digit θ = {} outside [1, {}]", f.theta, p - 1);
            }
        }
        if let Some(first) = factors.first() {
            let level = first.twist.level();
            if factors.iter().any(|f| f.twist.level() != level) {
                bail!(Argument, "all twists of a digit sum must share one level");
            }
        }
        let mut twists: Vec<_> = factors.iter().map(|f| &f.twist).collect();
        twists.sort();
        if twists.windows(2).any(|w| w[0] == w[1]) {
            bail!(Argument, "twists of a digit sum must be pairwise distinct");
        }
        Ok(())
    }
}

pub fn truncate(sc: &SymbolicCharacter, p: u64, level: usize) -> Result<TruncatedCharacter> {
    sc.validate(p)?;
    let mut residues = Vec::with_capacity(level);
    for n in 1..=level {
        let q1 = level_modulus(p, n)?;
        let m = match sc {
            SymbolicCharacter::Trivial => 0,
            SymbolicCharacter::Rational { lambda } => (*lambda as i128).rem_euclid(q1 as i128) as u64,
            SymbolicCharacter::Twisted { factors } => factors.iter().fold(0u64, |acc, f| {
                let term = f.theta as u128 * padic::pow_mod(p, f.twist.at(n), q1) as u128;
                ((acc as u128 + term) % q1 as u128) as u64
            }),
        };
        residues.push(m);
    }
    TruncatedCharacter::new(p, residues)
}

/// Result of checking `m_i ≡ m_j (mod p^{i!} - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Compatibility {
    pub compatible: bool,
    /// First failing pair `(i, j)` with `i < j`, in lexicographic order.
    pub failing_pair: Option<(usize, usize)>,
}

pub fn is_compatible(tc: &TruncatedCharacter) -> Compatibility {
    let n = tc.level();
    for i in 1..=n {
        let q1 = level_modulus(tc.p, i).expect("levels were validated at construction");
        for j in i + 1..=n {
            if tc.residue(j) % q1 != tc.residue(i) {
                return Compatibility {
                    compatible: false,
                    failing_pair: Some((i, j)),
                };
            }
        }
    }
    Compatibility {
        compatible: true,
        failing_pair: None,
    }
}

/// Digit sums `f(m_1), …, f(m_N)`.
pub fn f_sequence(tc: &TruncatedCharacter) -> Vec<u64> {
    tc.residues
        .iter()
        .map(|&m| padic::digits_unchecked(m, tc.p).iter().sum())
        .collect()
}

/// Nonzero digit counts `M_{m_1}, …, M_{m_N}`.
pub fn nonzero_counts(tc: &TruncatedCharacter) -> Vec<usize> {
    tc.residues
        .iter()
        .map(|&m| padic::digits_unchecked(m, tc.p).iter().filter(|&&d| d != 0).count())
        .collect()
}

/// Exact membership of a closed-form character in `𝒳₀` (bounded digit sums)
/// or `𝒳₁` (unbounded).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class")]
pub enum ExactClass {
    X0 { factors: Vec<TwistedFactor> },
    X1,
}

impl ExactClass {
    pub fn is_x0(&self) -> bool {
        matches!(self, Self::X0 { .. })
    }
}

/// Level at which integer twists `0..=max_shift` are pairwise distinct, and
/// at least the tower cap 3.
fn integer_twist_level(max_shift: u64) -> usize {
    let mut level = 3;
    while (factorial(level) as u64) <= max_shift {
        level += 1;
    }
    level
}

/// `λ ≥ 0` gives its base-`p` digits with integer twists, `λ < 0` is in
/// `𝒳₁`, and twisted digit sums are returned as given.
pub fn classify_exact(sc: &SymbolicCharacter, p: u64) -> Result<ExactClass> {
    sc.validate(p)?;
    Ok(match sc {
        SymbolicCharacter::Trivial => ExactClass::X0 { factors: vec![] },
        SymbolicCharacter::Rational { lambda } if *lambda < 0 => ExactClass::X1,
        SymbolicCharacter::Rational { lambda } => {
            let digits = padic::digits_unchecked(*lambda as u64, p);
            let level = integer_twist_level(digits.len().saturating_sub(1) as u64);
            let factors = digits
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != 0)
                .map(|(j, &d)| {
                    Ok(TwistedFactor {
                        theta: d,
                        twist: GaloisTwist::from_integer(j as u64, level)?,
                    })
                })
                .collect::<Result<_>>()?;
            ExactClass::X0 { factors }
        }
        SymbolicCharacter::Twisted { factors } => ExactClass::X0 {
            factors: factors.clone(),
        },
    })
}

/// `(s, k)` with `binom(m_s, k(p^{r!} - 1)) ≢ 0 (mod p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LucasWitness {
    pub s: usize,
    pub k: u64,
}

/// Searches `s ∈ (r, N]` in increasing order and, for each, the least
/// `k ≥ 1` with a nonzero Lucas binomial. `None` means no witness up to
/// level `N`.
pub fn lucas_criterion(tc: &TruncatedCharacter, r: usize) -> Result<Option<LucasWitness>> {
    if r == 0 || r >= tc.level() {
        bail!(Argument, "need 1 ≤ r < N = {}, got r = {r}", tc.level());
    }
    let d = level_modulus(tc.p, r)?;
    for s in r + 1..=tc.level() {
        if let Some(k) = least_lucas_multiple(tc.residue(s), d, tc.p) {
            return Ok(Some(LucasWitness { s, k }));
        }
    }
    Ok(None)
}

/// Least `k ≥ 1` with `binom(m, kd) ≢ 0 (mod p)`. The values `n` with a
/// nonzero binomial are those digit-wise below `m`; they are walked in
/// increasing order unless plain iteration over `k` is shorter.
fn least_lucas_multiple(m: u64, d: u64, p: u64) -> Option<u64> {
    if d == 0 || m < d {
        return None;
    }
    let digits = padic::digits_unchecked(m, p);
    let dominated: f64 = digits.iter().map(|&x| (x + 1) as f64).product();
    if ((m / d) as f64) <= dominated {
        return (1..=m / d).find(|&k| padic::lucas_unchecked(m, k * d, p) != 0);
    }
    // Odometer over digit vectors bounded by `digits`, least significant first.
    let mut cur = vec![0u64; digits.len()];
    loop {
        let mut i = 0;
        while i < cur.len() && cur[i] == digits[i] {
            cur[i] = 0;
            i += 1;
        }
        if i == cur.len() {
            return None;
        }
        cur[i] += 1;
        let n = cur.iter().rev().fold(0u64, |acc, &c| acc * p + c);
        if n % d == 0 {
            return Some(n / d);
        }
    }
}
