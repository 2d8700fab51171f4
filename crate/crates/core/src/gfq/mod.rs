//! Finite fields `F_{p^d}` and the factorial tower `F_p ⊂ F_{p^2} ⊂ F_{p^6}`.

mod field;
pub(crate) mod poly;
mod tower;

pub use field::{GaloisField, MAX_FIELD_ORDER};
pub(crate) use tower::factorial;
pub use tower::{make_tower, FieldElement, FieldTower, MAX_TOWER_LEVEL};

use crate::error::{bail, Result};

/// `Σ t^k` over `F_q` (or `F_q^*`) by summing in the field, as a residue mod
/// `p`. Serves as the independent check of [`crate::padic::power_sum`].
pub fn power_sum_direct(q: u64, k: u64, include_zero: bool) -> Result<u64> {
    let Some((p, d)) = crate::padic::prime_power(q) else {
        bail!(Argument, "{q} is not a prime power");
    };
    let field = GaloisField::new(p, d as usize)?;
    let start = if include_zero { 0 } else { 1 };
    let total = (start..field.order()).fold(0u32, |acc, t| field.add(acc, field.pow_u(t, k)));
    // The sum is Galois-invariant, hence lies in the prime field.
    if total >= field.characteristic() {
        bail!(Consistency, "power sum {total} left the prime field");
    }
    Ok(total as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_generator_relations() {
        let t = make_tower(2, 2).unwrap();
        assert_eq!(t.modulus(2).unwrap(), vec![1, 1, 1]);
        let g = t.multiplicative_generator(2).unwrap();
        let one = t.one(2).unwrap();
        assert_eq!(t.mul(&g, &g).unwrap(), t.add(&g, &one).unwrap());
        assert_eq!(t.pow(&g, 3).unwrap(), one);
        assert_eq!(t.enumerate(2).unwrap().len(), 4);
        let zero = t.zero(2).unwrap();
        assert_eq!(t.add(&g, &zero).unwrap(), g);
    }

    #[test]
    fn frobenius_swaps_conjugates_in_f4() {
        let t = make_tower(2, 2).unwrap();
        let g = t.multiplicative_generator(2).unwrap();
        let g1 = t.add(&g, &t.one(1).unwrap()).unwrap();
        assert_eq!(t.frobenius(&g, 1).unwrap(), g1);
        assert_eq!(t.frobenius(&g1, 1).unwrap(), g);
        assert_eq!(t.frobenius(&g, 0).unwrap(), g);
        assert_eq!(t.frobenius(&g, 2).unwrap(), g);
    }

    #[test]
    fn embedded_generator_keeps_its_order() {
        let t = make_tower(2, 3).unwrap();
        let g = t.multiplicative_generator(2).unwrap();
        let e = t.embed(&g, 3).unwrap();
        assert_eq!(e.level(), 3);
        assert_eq!(t.multiplicative_order(&e).unwrap(), 3);
        assert_eq!(t.embed(&t.one(1).unwrap(), 3).unwrap(), t.one(3).unwrap());
        let top = t.multiplicative_generator(3).unwrap();
        assert_eq!(t.multiplicative_order(&top).unwrap(), 63);
    }

    #[test]
    fn f9_generator_has_order_eight() {
        let t = make_tower(3, 2).unwrap();
        let g = t.multiplicative_generator(2).unwrap();
        assert_eq!(t.multiplicative_order(&g).unwrap(), 8);
        let f = t.field(2).unwrap();
        assert_eq!(f.pow_u(g.value(), 4), f.from_int(-1));
    }

    #[test]
    fn level_one_tower_is_prime_field() {
        let t = make_tower(5, 1).unwrap();
        assert_eq!(t.max_level(), 1);
        let x = t.element(1, 3).unwrap();
        assert_eq!(t.embed(&x, 1).unwrap(), x);
        assert_eq!(t.enumerate(1).unwrap().len(), 5);
        let e = make_tower(2, 1).unwrap().enumerate(1).unwrap();
        assert_eq!(e.iter().map(|x| x.value()).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn tower_errors() {
        use crate::Error;
        assert!(matches!(make_tower(2, 4), Err(Error::Capability(_))));
        assert!(matches!(make_tower(4, 2), Err(Error::Argument(_))));
        let t = make_tower(2, 2).unwrap();
        let u = make_tower(2, 2).unwrap();
        let x = t.one(1).unwrap();
        let y = u.one(1).unwrap();
        assert!(matches!(t.add(&x, &y), Err(Error::Argument(_))));
        assert!(matches!(t.inv(&t.zero(2).unwrap()), Err(Error::Domain(_))));
        let g = t.multiplicative_generator(2).unwrap();
        assert!(matches!(t.embed(&g, 1), Err(Error::Argument(_))));
    }

    #[test]
    fn mixed_levels_are_lifted() {
        let t = make_tower(3, 2).unwrap();
        let a = t.element(1, 2).unwrap();
        let g = t.multiplicative_generator(2).unwrap();
        let s = t.mul(&a, &g).unwrap();
        assert_eq!(s.level(), 2);
        assert_eq!(s, t.neg(&g).unwrap());
        assert_eq!(t.mul(&g, &t.inv(&g).unwrap()).unwrap(), t.one(2).unwrap());
    }

    #[test]
    fn table_and_polynomial_multiplication_agree() {
        for (p, d) in [(2, 2), (3, 2), (2, 3), (5, 2), (2, 6)] {
            let f = GaloisField::new(p, d).unwrap();
            for a in f.elements() {
                for b in f.elements().step_by(7) {
                    assert_eq!(f.mul(a, b), f.mul_by_polynomials(a, b));
                }
            }
        }
    }

    #[test]
    fn frobenius_is_a_ring_automorphism() {
        for (p, d) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let f = GaloisField::new(p, d).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let fr = |x| f.frobenius(x, 1);
                    assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
                    assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
                }
            }
        }
        let f = GaloisField::new(2, 6).unwrap();
        for a in f.elements().step_by(5) {
            for b in f.elements().step_by(3) {
                let fr = |x| f.frobenius(x, 1);
                assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
                assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
            }
            assert_eq!(f.frobenius(a, 6), a);
        }
    }

    #[test]
    fn embeddings_commute_with_frobenius() {
        for p in [2, 3] {
            let t = make_tower(p, 3).unwrap();
            for from in 1..=2 {
                for x in t.enumerate(from).unwrap() {
                    for to in from..=3 {
                        for k in 0..3 {
                            let a = t.embed(&t.frobenius(&x, k).unwrap(), to).unwrap();
                            let b = t.frobenius(&t.embed(&x, to).unwrap(), k).unwrap();
                            assert_eq!(a, b);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn embeddings_are_ring_homomorphisms() {
        let t = make_tower(3, 3).unwrap();
        let xs = t.enumerate(2).unwrap();
        for x in &xs {
            for y in &xs {
                let sum = t.embed(&t.add(x, y).unwrap(), 3).unwrap();
                let prod = t.embed(&t.mul(x, y).unwrap(), 3).unwrap();
                let (ex, ey) = (t.embed(x, 3).unwrap(), t.embed(y, 3).unwrap());
                assert_eq!(sum, t.add(&ex, &ey).unwrap());
                assert_eq!(prod, t.mul(&ex, &ey).unwrap());
            }
        }
    }

    #[test]
    fn power_sums_match_closed_form() {
        for q in [2u64, 3, 4, 5, 8, 9] {
            for k in 0..=3 * (q - 1) {
                for z in [false, true] {
                    assert_eq!(
                        power_sum_direct(q, k, z).unwrap(),
                        crate::padic::power_sum(q, k, z).unwrap(),
                        "q={q} k={k} include_zero={z}"
                    );
                }
            }
        }
    }
}
