//! Root systems from Cartan matrices and their Weyl groups: lengths,
//! inversion sets, parabolic subgroups and minimal coset representatives.

mod datum;
mod system;
mod weyl;

pub use datum::RootDatum;
pub use system::RootSystem;
pub use weyl::{weyl_group, WeylElement, WeylGroup, MAX_WEYL_ORDER};

/// `Π_i (1 + t + … + t^{d_i - 1})` for the given degrees.
pub fn degree_product_polynomial(degrees: &[usize]) -> Vec<u64> {
    degrees.iter().fold(vec![1u64], |acc, &d| {
        let mut out = vec![0u64; acc.len() + d - 1];
        for (i, &a) in acc.iter().enumerate() {
            for slot in &mut out[i..i + d] {
                *slot += a;
            }
        }
        out
    })
}
