//! Finite-level experiments for `SL₂`: the induced modules `kG_a·1_θ` over
//! `F_{p^{a!}}`, costandard modules `∇(n)`, Hecke operators, and
//! brute-force socle/head computations by spinning.
//!
//! Everything is exact. Irreducibility is decided by enumerating vectors up
//! to a gate; above it only the opt-in randomized mode is available.

mod costandard;
mod group;
mod hecke;
mod induced;
pub mod linalg;
mod module;
mod verify;

use serde::Serialize;
use serde_json::Value;

pub use costandard::{build_costandard, CostandardModule, LSubmoduleReport};
pub use group::{RelationReport, Sl2Action, EXHAUSTIVE_RELATION_ORDER};
pub use hecke::{hecke_operators, idempotent_split, HeckeOperators, HeckeSplit};
pub use induced::{build_induced, InducedModule, MAX_INDUCED_DIM};
pub use linalg::{Matrix, Subspace, Vector};
pub use module::{Action, Gate, IrreducibilityVerdict, Mode, Representation, DEFAULT_GATE};
pub use verify::{
    digit_product, head_dimension, pi_image, socle_and_head, span_equality_search,
    unique_minimal_submodule, unipotent_fixed_points, verify_irreducibility_chain, ChainVerdict,
    PiImage, SocleHead, SpanSearch,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The hypotheses of the check do not hold at these parameters.
    Skipped,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }
}

/// One verification, as reported on the command line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabRecord {
    /// Name of the checked statement, e.g. `"socle-head"`.
    pub lemma: String,
    pub parameters: Value,
    pub verdict: Verdict,
    pub witnesses: Value,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limitchar::{truncate, SymbolicCharacter, TruncatedCharacter};
    use crate::Error;

    fn rational(lambda: i64, p: u64, level: usize) -> TruncatedCharacter {
        truncate(&SymbolicCharacter::rational(lambda), p, level).unwrap()
    }

    fn trivial(p: u64, level: usize) -> TruncatedCharacter {
        rational(0, p, level)
    }

    #[test]
    fn induced_dimensions_and_caps() {
        assert_eq!(build_induced(2, 1, &trivial(2, 1), 1).unwrap().dim(), 3);
        assert_eq!(build_induced(3, 1, &trivial(3, 1), 1).unwrap().dim(), 4);
        for lambda in [-1, 0, 1, 2] {
            assert_eq!(build_induced(2, 2, &rational(lambda, 2, 2), 2).unwrap().dim(), 5);
        }
        assert_eq!(build_induced(2, 3, &rational(1, 2, 3), 3).unwrap().dim(), 65);
        assert!(matches!(build_induced(3, 3, &rational(1, 3, 3), 3), Err(Error::Capability(_))));
        assert!(matches!(build_induced(2, 2, &rational(1, 2, 1), 2), Err(Error::Precondition(_))));
        assert!(matches!(build_induced(2, 2, &rational(1, 2, 2), 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn induced_with_larger_coefficients() {
        let m = build_induced(2, 1, &rational(1, 2, 2), 2).unwrap();
        assert!(m.relation_report().holds());
        assert_eq!(m.representation().field().order(), 4);
    }

    #[test]
    fn weyl_action_matches_closed_form() {
        // s·e_t = θ(-1)θ(t)·e_{-1/t} for t ≠ 0.
        let m = build_induced(3, 1, &rational(1, 3, 1), 1).unwrap();
        let fq = m.group_field();
        let fc = m.coefficient_field();
        let s = m.weyl();
        for t in 1..m.q() {
            let image = s.apply(fc, &m.translate(t));
            let target = fq.neg(fq.inv(t).unwrap());
            let mut expected = vec![0; m.dim()];
            expected[1 + target as usize] = fc.mul(m.theta_value(fq.neg(1)), m.theta_value(t));
            assert_eq!(image, expected, "t = {t}");
        }
    }

    #[test]
    fn spin_examples() {
        let m = build_induced(2, 1, &trivial(2, 1), 1).unwrap();
        let rep = m.representation();
        let f = rep.field();
        assert_eq!(rep.spin(&[0, 0, 0]).dim(), 0);
        let all = linalg::add_vectors(f, &m.highest(), &m.subgroup_sum(1).unwrap());
        assert_eq!(rep.spin(&all).dim(), 1);
        let diff = linalg::add_vectors(f, &m.highest(), &linalg::scale_vector(f, f.neg(1), &m.translate(0)));
        let st = rep.spin(&diff);
        assert_eq!(st.dim(), 2);
        // Spinning is idempotent.
        assert_eq!(rep.spin_all(st.basis().to_vec()), st);
    }

    #[test]
    fn fixed_point_examples() {
        let m = build_induced(2, 1, &trivial(2, 1), 1).unwrap();
        let rep = m.representation();
        let fixed = unipotent_fixed_points(&m);
        assert_eq!(fixed.dim(), 2);
        let f = rep.field();
        assert!(fixed.contains(f, &m.highest()));
        assert!(fixed.contains(f, &m.subgroup_sum(1).unwrap()));
        assert_eq!(rep.fixed_subspace(&[]).dim(), m.dim());
        let st = rep.spin(&[1, 1, 0]);
        let sub = rep.restrict(&st).unwrap();
        let u: Vec<Action> = m
            .unipotent_generators()
            .iter()
            .map(|g| sub_action(&m, &st, g))
            .collect();
        assert_eq!(sub.fixed_subspace(&u).dim(), 1);
        for (p, a) in [(2, 2), (3, 1), (5, 1)] {
            for lambda in -2..=2 {
                let m = build_induced(p, a, &rational(lambda, p, a), a).unwrap();
                assert_eq!(unipotent_fixed_points(&m).dim(), 2);
            }
        }
    }

    fn sub_action(m: &InducedModule, w: &Subspace, g: &Action) -> Action {
        let f = m.representation().field();
        let cols: Vec<Vector> = w.basis().iter().map(|b| w.coordinates(&g.apply(f, b))).collect();
        Action::Dense(Matrix::from_columns(w.dim(), &cols))
    }

    #[test]
    fn irreducibility_examples() {
        let gate = Gate::default();
        let m = build_induced(2, 1, &trivial(2, 1), 1).unwrap();
        let rep = m.representation();
        let st = rep.spin(&[1, 1, 0]);
        assert!(rep.restrict(&st).unwrap().is_irreducible(&gate).unwrap().irreducible);
        let zero = rep.restrict(&Subspace::zero(3)).unwrap();
        assert!(!zero.is_irreducible(&gate).unwrap().irreducible);
        let whole = rep.is_irreducible(&gate).unwrap();
        assert!(!whole.irreducible);
        let w = whole.witness.unwrap();
        assert!(!rep.spin(&w).is_whole());

        let tight = Gate {
            max_vectors: 4,
            randomized: None,
        };
        assert!(matches!(rep.is_irreducible(&tight), Err(Error::Capability(_))));
        let sampled = Gate {
            max_vectors: 4,
            randomized: Some((7, 8)),
        };
        let v = rep.is_irreducible(&sampled).unwrap();
        assert_eq!(v.mode, Mode::Randomized);
        assert!(!v.irreducible);
    }

    #[test]
    fn restrict_rejects_non_submodules() {
        let m = build_induced(2, 1, &trivial(2, 1), 1).unwrap();
        let rep = m.representation();
        let line = Subspace::span(rep.field(), 3, [m.translate(1)]);
        assert!(matches!(rep.restrict(&line), Err(Error::Consistency(_))));
    }

    #[test]
    fn costandard_examples() {
        let gate = Gate::default();
        for p in [2u64, 3, 5] {
            let zero = build_costandard(0, p, 1, 1).unwrap();
            assert_eq!((zero.dim(), zero.l_submodule().dim()), (1, 1));
            let top = build_costandard(p as usize, p, 1, 1).unwrap();
            assert_eq!((top.dim(), top.l_submodule().dim()), (p as usize + 1, 2));
            let below = build_costandard(p as usize - 1, p, 1, 1).unwrap();
            assert_eq!(below.l_submodule().dim(), p as usize);
            for m in [zero, top, below] {
                assert!(m.relation_report().holds());
                let l = m.check_l_submodule(&gate).unwrap();
                assert!(l.submodule);
                assert!(l.irreducibility.unwrap().irreducible);
            }
        }
    }

    #[test]
    fn costandard_relations_and_submodule() {
        let gate = Gate::default();
        for (p, a) in [(2u64, 1usize), (3, 1), (2, 2)] {
            let q = p.pow(crate::gfq::factorial(a) as u32) as usize;
            for n in 0..=8 {
                let m = build_costandard(n, p, a, a).unwrap();
                let rel = m.relation_report();
                assert!(rel.holds(), "p={p} a={a} n={n}: {:?}", rel.failures);
                let l = m.check_l_submodule(&gate).unwrap();
                assert!(l.submodule);
                assert_eq!(l.dim as u64, digit_product(n as u64, p).unwrap());
                if n < q {
                    assert!(l.irreducibility.unwrap().irreducible, "p={p} a={a} n={n}");
                }
            }
        }
    }

    #[test]
    fn projection_is_an_intertwiner() {
        for (p, a) in [(2u64, 1usize), (3, 1), (2, 2)] {
            let tower = std::sync::Arc::new(crate::gfq::make_tower(p, a).unwrap());
            for n in 0..=6usize {
                let lambda = n as i64;
                let theta = rational(lambda, p, a);
                let ind = InducedModule::build(tower.clone(), a, &theta, a).unwrap();
                let cm = CostandardModule::build(tower.clone(), n, a, a).unwrap();
                let pi = cm.projection_from(&ind).unwrap();
                assert!(cm.is_intertwiner(&ind, &pi), "p={p} a={a} n={n}");
                // The image is the submodule generated by v_0.
                let image = pi.image(cm.representation().field());
                let mut v0 = vec![0; n + 1];
                v0[0] = 1;
                assert_eq!(image, cm.representation().spin(&v0));
            }
        }
    }

    #[test]
    fn hecke_split_for_trivial_character() {
        let gate = Gate::default();
        for (p, a) in [(2u64, 1usize), (3, 1), (2, 2)] {
            let m = build_induced(p, a, &trivial(p, a), a).unwrap();
            let split = idempotent_split(&m, &gate).unwrap();
            assert!(split.holds(), "{split:?}");
            assert_eq!((split.dim_e, split.dim_o), (1, m.q() as usize));
        }
        let m = build_induced(2, 2, &rational(1, 2, 2), 2).unwrap();
        assert!(matches!(hecke_operators(&m), Err(Error::Precondition(_))));
    }

    #[test]
    fn socle_and_head_examples() {
        let gate = Gate::default();
        let m = build_induced(2, 2, &rational(1, 2, 2), 2).unwrap();
        let r = socle_and_head(&m, &gate).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.head_dim, Some(2));
        assert!(unique_minimal_submodule(&m, &gate).unwrap().is_some());

        let m = build_induced(2, 2, &rational(-1, 2, 2), 2).unwrap();
        assert_eq!(m.exponent(), 2);
        assert_eq!(head_dimension(&m, &gate).unwrap(), Some(2));

        let m = build_induced(3, 1, &rational(1, 3, 1), 1).unwrap();
        assert!(socle_and_head(&m, &gate).unwrap().holds());

        // λ = 2 is trivial on F_3^*.
        let m = build_induced(3, 1, &rational(2, 3, 1), 1).unwrap();
        assert!(matches!(socle_and_head(&m, &gate), Err(Error::Precondition(_))));
        // Level 2 over F_9 is above the enumeration gate.
        let m = build_induced(3, 2, &rational(2, 3, 2), 2).unwrap();
        assert!(matches!(socle_and_head(&m, &gate), Err(Error::Capability(_))));
        let m = build_induced(2, 2, &rational(2, 2, 2), 2).unwrap();
        assert_eq!(head_dimension(&m, &gate).unwrap(), Some(2));
    }

    #[test]
    fn pi_image_examples() {
        let trivial_image = pi_image(&trivial(2, 2), 1, 2).unwrap();
        assert!(!trivial_image.is_nonzero());
        let minus_one = pi_image(&rational(-1, 2, 2), 1, 2).unwrap();
        assert_eq!(minus_one.exponent, 2);
        assert!(minus_one.is_nonzero() && minus_one.routes_agree);
        let one = pi_image(&rational(1, 2, 3), 2, 3).unwrap();
        assert_eq!(one.exponent, 1);
        assert!(!one.is_nonzero() && one.routes_agree);
        assert!(pi_image(&rational(1, 2, 2), 2, 2).is_err());
    }

    #[test]
    fn pi_image_routes_agree_widely() {
        for p in [2u64, 3, 5] {
            let top = if p == 2 { 3 } else { 2 };
            for lambda in -5..=5 {
                let theta = rational(lambda, p, top);
                for t in 2..=top {
                    for r in 1..t {
                        let img = pi_image(&theta, r, t).unwrap();
                        assert!(img.routes_agree, "p={p} λ={lambda} r={r} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn chain_examples() {
        let v = verify_irreducibility_chain(&rational(-1, 2, 2), 1, 2).unwrap();
        assert!(v.generates && v.pi_nonzero && v.agrees(), "{v:?}");
        let v = verify_irreducibility_chain(&rational(1, 2, 3), 2, 3).unwrap();
        assert!(!v.generates && !v.pi_nonzero && v.agrees(), "{v:?}");
        let v = verify_irreducibility_chain(&trivial(2, 2), 1, 2).unwrap();
        assert!(!v.generates && !v.pi_nonzero, "{v:?}");
    }

    #[test]
    fn span_search_reports_cap() {
        match span_equality_search(&rational(-1, 2, 3), 1, 3).unwrap() {
            SpanSearch::Found { b, .. } => assert_eq!(b, 2),
            other => panic!("{other:?}"),
        }
        match span_equality_search(&rational(1, 3, 3), 1, 3).unwrap() {
            SpanSearch::NotFoundUpTo { cap, skipped } => {
                assert_eq!(cap, 3);
                assert_eq!(skipped.len(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lab_record_json() {
        let rec = LabRecord {
            lemma: "hecke-split".into(),
            parameters: serde_json::json!({"p": 2, "a": 1}),
            verdict: Verdict::Pass,
            witnesses: Value::Null,
        };
        let s = serde_json::to_string(&rec).unwrap();
        assert_eq!(s, r#"{"lemma":"hecke-split","parameters":{"a":1,"p":2},"verdict":"pass","witnesses":null}"#);
    }
}
