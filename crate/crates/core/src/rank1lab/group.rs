//! The generators `ε(x)`, `h(u)`, `s` of `SL₂(F_q)` and their defining
//! relations, checked as exact identities on any module that implements
//! [`Sl2Action`].

use serde::Serialize;

use super::module::Action;
use crate::gfq::GaloisField;

/// Largest `q` for which relations are checked over all pairs of elements.
/// Above it a deterministic sample of `q` pairs per relation is used.
pub const EXHAUSTIVE_RELATION_ORDER: u32 = 64;

/// A module for `SL₂(F_q)` with `ε(x) = [[1,x],[0,1]]`,
/// `h(u) = diag(u, u⁻¹)` and `s = [[0,1],[-1,0]]`.
pub trait Sl2Action {
    /// The field `F_q` the group is defined over.
    fn group_field(&self) -> &GaloisField;
    /// The field the action matrices live in.
    fn coefficient_field(&self) -> &GaloisField;
    fn eps(&self, x: u32) -> Action;
    fn torus(&self, u: u32) -> Action;
    fn weyl(&self) -> Action;

    /// Checks `ε(x)ε(y) = ε(x+y)`, `h(u)h(v) = h(uv)`,
    /// `h(u)ε(x) = ε(u²x)h(u)`, `s² = h(-1)` and, for `t ≠ 0`,
    /// `ε(t)s = s·ε(-1/t)·s·h(t)·ε(-1/t)`.
    fn check_relations(&self) -> RelationReport {
        let fq = self.group_field();
        let fc = self.coefficient_field();
        let q = fq.order();
        let all: Vec<u32> = fq.elements().collect();
        let pairs: Vec<(u32, u32)> = if q <= EXHAUSTIVE_RELATION_ORDER {
            all.iter().flat_map(|&x| all.iter().map(move |&y| (x, y))).collect()
        } else {
            // A fixed spread of pairs: x runs over the field, y along a stride.
            let stride = (q / 7).max(1) | 1;
            all.iter().map(|&x| (x, (x.wrapping_mul(stride) + 1) % q)).collect()
        };
        let mut report = RelationReport::default();
        let mut record = |name: &str, ok: bool, args: String| {
            report.checked += 1;
            if !ok && report.failures.len() < 16 {
                report.failures.push(format!("{name} at {args}"));
            }
            if !ok {
                report.failed += 1;
            }
        };

        for &(x, y) in &pairs {
            let lhs = self.eps(x).compose(fc, &self.eps(y));
            record("additivity of ε", lhs.same_as(&self.eps(fq.add(x, y))), format!("x={x}, y={y}"));
        }
        for &(u, v) in pairs.iter().filter(|(u, v)| *u != 0 && *v != 0) {
            let lhs = self.torus(u).compose(fc, &self.torus(v));
            record("multiplicativity of h", lhs.same_as(&self.torus(fq.mul(u, v))), format!("u={u}, v={v}"));
        }
        for &(u, x) in pairs.iter().filter(|(u, _)| *u != 0) {
            let lhs = self.torus(u).compose(fc, &self.eps(x));
            let rhs = self.eps(fq.mul(fq.mul(u, u), x)).compose(fc, &self.torus(u));
            record("torus conjugation", lhs.same_as(&rhs), format!("u={u}, x={x}"));
        }
        let s = self.weyl();
        record("s² = h(-1)", s.compose(fc, &s).same_as(&self.torus(fq.neg(1))), String::new());
        for t in fq.elements().filter(|&t| t != 0) {
            let minus_inv = fq.neg(fq.inv(t).expect("t is nonzero"));
            let e = self.eps(minus_inv);
            let rhs = s
                .compose(fc, &e)
                .compose(fc, &s)
                .compose(fc, &self.torus(t))
                .compose(fc, &e);
            let lhs = self.eps(t).compose(fc, &s);
            record("conjugate of ε by s", lhs.same_as(&rhs), format!("t={t}"));
        }
        report
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    pub failed: usize,
    /// The first few failing instances.
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn holds(&self) -> bool {
        self.failed == 0
    }
}
