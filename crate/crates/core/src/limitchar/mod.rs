//! Characters of `F̄_p^*` as compatible residue towers.
//!
//! A character is identified with residues `m_n mod p^{n!} - 1`. Closed forms
//! ([`SymbolicCharacter`]) are classified exactly into `𝒳₀` (bounded digit
//! sums) and `𝒳₁`; truncations ([`TruncatedCharacter`]) only support the
//! at-level pattern reader [`extract_pattern`], which never claims anything
//! about the limit.

mod character;
mod pattern;
mod twist;

pub use character::{
    classify_exact, f_sequence, is_compatible, level_modulus, lucas_criterion, nonzero_counts,
    truncate, Compatibility, ExactClass, LucasWitness, SymbolicCharacter, TruncatedCharacter,
    TwistedFactor, MAX_CHARACTER_LEVEL,
};
pub use pattern::{extract_pattern, pattern_round_trip, PatternOutcome, RoundTrip, X0Pattern};
pub use twist::GaloisTwist;
