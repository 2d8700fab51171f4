use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::gfq::factorial;

/// Truncation `(g_1, …, g_N)` of an element of the absolute Galois group of
/// `F_p`, with `0 ≤ g_n < n!` and `g_{n+1} ≡ g_n (mod n!)`. It acts at level
/// `n` as the Frobenius power `x ↦ x^{p^{g_n}}`.
///
/// Beyond its last level a twist is extended by its integer lift, i.e.
/// `g_n = g_N` for `n > N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct GaloisTwist(Vec<u64>);

impl GaloisTwist {
    pub fn new(residues: Vec<u64>) -> Result<Self> {
        if residues.is_empty() {
            bail!(Argument, "a twist needs at least one level");
        }
        for (i, &g) in residues.iter().enumerate() {
            let n = i + 1;
            if g >= factorial(n) as u64 {
                bail!(Argument, "twist residue g_{n} = {g} is not below {n}!");
            }
            if n > 1 && g % factorial(n - 1) as u64 != residues[i - 1] {
                bail!(
                    Argument,
                    "twist residues g_{} = {} and g_{n} = {g} disagree mod {}!",
                    n - 1,
                    residues[i - 1],
                    n - 1
                );
            }
        }
        Ok(Self(residues))
    }

    /// The twist by the integer Frobenius power `g`, truncated at `level`.
    pub fn from_integer(g: u64, level: usize) -> Result<Self> {
        if level == 0 {
            bail!(Argument, "a twist needs at least one level");
        }
        Self::new((1..=level).map(|n| g % factorial(n) as u64).collect())
    }

    pub fn identity(level: usize) -> Result<Self> {
        Self::from_integer(0, level)
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn residues(&self) -> &[u64] {
        &self.0
    }

    /// `g_n`, using the integer lift past the last stored level.
    pub fn at(&self, n: usize) -> u64 {
        assert!(n >= 1, "twist levels start at 1");
        let top = *self.0.last().expect("twists are nonempty");
        match self.0.get(n - 1) {
            Some(&g) => g,
            None => top,
        }
    }

    /// Restriction to levels `1..=level`, extending by the integer lift when
    /// `level` exceeds the stored length.
    pub fn at_level(&self, level: usize) -> Self {
        Self((1..=level).map(|n| self.at(n)).collect())
    }
}

impl TryFrom<Vec<u64>> for GaloisTwist {
    type Error = crate::Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<GaloisTwist> for Vec<u64> {
    fn from(t: GaloisTwist) -> Self {
        t.0
    }
}
