//! Base-`p` digit combinatorics.
//!
//! Digit expansions, digit sums `f(n)`, nonzero digit counts `M_n`, Lucas'
//! theorem, power sums over finite fields and the digit-class comparison used
//! to show that digit sums never decrease along a compatible residue tower.

use serde::Serialize;

use crate::error::{bail, Result};

/// Trial-division primality test. Inputs are small primes supplied by the
/// caller; no primality proving is attempted beyond this.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        bail!(Argument, "{p} is not prime");
    }
    Ok(())
}

/// Splits `q = p^e` into `(p, e)`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Base-`p` expansion of a non-negative integer, least-significant digit
/// first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DigitExpansion {
    p: u64,
    digits: Vec<u64>,
}

impl DigitExpansion {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Digit at position `j`, zero past the end.
    pub fn digit(&self, j: usize) -> u64 {
        self.digits.get(j).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// `Σ digits[j]·p^j`.
    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d)
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().sum()
    }

    pub fn nonzero_count(&self) -> usize {
        self.digits.iter().filter(|&&d| d != 0).count()
    }
}

pub(crate) fn digits_unchecked(mut n: u64, p: u64) -> Vec<u64> {
    let mut digits = Vec::new();
    while n > 0 {
        digits.push(n % p);
        n /= p;
    }
    digits
}

pub fn expand(n: u64, p: u64) -> Result<DigitExpansion> {
    check_prime(p)?;
    Ok(DigitExpansion {
        p,
        digits: digits_unchecked(n, p),
    })
}

/// `f(n)`: the sum of the base-`p` digits of `n`.
pub fn digit_sum(n: u64, p: u64) -> Result<u64> {
    Ok(expand(n, p)?.digit_sum())
}

/// `M_n`: the number of nonzero base-`p` digits of `n`.
pub fn nonzero_digit_count(n: u64, p: u64) -> Result<usize> {
    Ok(expand(n, p)?.nonzero_count())
}

/// `binom(a, b) mod p` for digits `a, b < p`.
fn small_binom(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let (mut num, mut den) = (1u128, 1u128);
    let pm = p as u128;
    for i in 0..b {
        num = num * ((a - i) as u128) % pm;
        den = den * ((i + 1) as u128) % pm;
    }
    (num * inverse_mod(den as u64, p) as u128 % pm) as u64
}

/// Inverse of a unit modulo a prime, by Fermat.
pub(crate) fn inverse_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = base as u128 % m128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// `binom(m, n) mod p` via Lucas' theorem: the product of digit-wise
/// binomials. Zero exactly when some digit of `n` exceeds the matching digit
/// of `m`.
pub fn lucas_binom(m: u64, n: u64, p: u64) -> Result<u64> {
    check_prime(p)?;
    Ok(lucas_unchecked(m, n, p))
}

pub(crate) fn lucas_unchecked(mut m: u64, mut n: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 {
        let (a, b) = (m % p, n % p);
        if b > a {
            return 0;
        }
        acc = acc * small_binom(a, b, p) % p;
        m /= p;
        n /= p;
    }
    acc
}

/// Closed form of `Σ t^k` over `F_q` (with `include_zero`) or over `F_q^*`,
/// as a residue mod `p`. The sum is `-1` when `(q-1) | k` (and `k ≠ 0` if zero
/// is included) and `0` otherwise; `0^0` is taken to be `1`.
///
/// Direct summation in the field lives in [`crate::gfq::power_sum_direct`].
pub fn power_sum(q: u64, k: u64, include_zero: bool) -> Result<u64> {
    let Some((p, _)) = prime_power(q) else {
        bail!(Argument, "{q} is not a prime power");
    };
    let divides = k % (q - 1) == 0;
    let minus_one = if include_zero {
        divides && k != 0
    } else {
        divides
    };
    Ok(if minus_one { p - 1 } else { 0 })
}

/// Digit-class sums `r'_i = Σ_{j ≡ i (mod r)} m_j` for `i = 0..r`.
pub fn digit_class_sums(m: u64, p: u64, r: usize) -> Result<Vec<u64>> {
    check_prime(p)?;
    if r == 0 {
        bail!(Argument, "digit classes need a positive modulus");
    }
    let mut sums = vec![0u64; r];
    for (j, d) in digits_unchecked(m, p).into_iter().enumerate() {
        sums[j % r] += d;
    }
    Ok(sums)
}

/// Outcome of comparing `m ∈ [0, q-1]` with `m' = m + k(q-1)`, `q = p^r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DigitLemmaVerdict {
    pub m: u64,
    pub m_prime: u64,
    pub p: u64,
    pub r: usize,
    pub f_m: u64,
    pub f_m_prime: u64,
    /// Digits `m_0..m_{r-1}` of `m`.
    pub m_digits: Vec<u64>,
    /// `r'_0..r'_{r-1}` of `m'`.
    pub class_sums: Vec<u64>,
    /// `f(m') ≥ f(m)`.
    pub sum_grows: bool,
    /// `f(m') = f(m)` exactly when `r'_i = m_i` for all `i`.
    pub equality_iff_classes_match: bool,
    /// `f(m') = f(m)` implies `M_{m'} ≥ M_m`.
    pub nonzero_count_grows: bool,
}

impl DigitLemmaVerdict {
    pub fn holds(&self) -> bool {
        self.sum_grows && self.equality_iff_classes_match && self.nonzero_count_grows
    }
}

/// Checks the three digit-sum clauses for `m ≤ q-1` and `m' ≡ m (mod q-1)`,
/// `q = p^r`, `r > 1`. `m'` must be of the form `m + k(q-1)` with `k ≥ 0`;
/// the pair `m = q-1, m' = 0` is congruent but lies below `m` and is rejected.
pub fn check_digit_lemma(m: u64, m_prime: u64, p: u64, r: usize) -> Result<DigitLemmaVerdict> {
    check_prime(p)?;
    if r < 2 {
        bail!(Argument, "digit lemma needs r > 1, got {r}");
    }
    let Some(q) = u32::try_from(r).ok().and_then(|e| p.checked_pow(e)) else {
        bail!(Capability, "{p}^{r} overflows");
    };
    if m > q - 1 {
        bail!(Argument, "m = {m} exceeds q - 1 = {}", q - 1);
    }
    if m_prime < m || (m_prime - m) % (q - 1) != 0 {
        bail!(
            Argument,
            "m' = {m_prime} is not of the form m + k(q-1) with m = {m}, q = {q}"
        );
    }
    let m_exp = expand(m, p)?;
    let mp_exp = expand(m_prime, p)?;
    let m_digits: Vec<u64> = (0..r).map(|i| m_exp.digit(i)).collect();
    let class_sums = digit_class_sums(m_prime, p, r)?;
    let (f_m, f_m_prime) = (m_exp.digit_sum(), mp_exp.digit_sum());
    let equal = f_m == f_m_prime;
    Ok(DigitLemmaVerdict {
        m,
        m_prime,
        p,
        r,
        f_m,
        f_m_prime,
        sum_grows: f_m_prime >= f_m,
        equality_iff_classes_match: equal == (class_sums == m_digits),
        nonzero_count_grows: !equal || mp_exp.nonzero_count() >= m_exp.nonzero_count(),
        m_digits,
        class_sums,
    })
}
