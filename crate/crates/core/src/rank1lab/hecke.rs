//! Hecke operators on the induced module for a character trivial on the
//! torus, and the splitting by the idempotents `e = T_e + T_s`, `o = -T_s`.

use serde::Serialize;

use super::group::Sl2Action;
use super::induced::InducedModule;
use super::linalg::{Matrix, Vector};
use super::module::{Gate, IrreducibilityVerdict};
use crate::error::{bail, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeOperators {
    pub t_e: Matrix,
    /// `T_s(1_θ) = Σ_{u ∈ U_a} u·s·1_θ`, extended as a module map.
    pub t_s: Matrix,
}

/// `T_e` and `T_s`, checked to commute with every generator.
pub fn hecke_operators(module: &InducedModule) -> Result<HeckeOperators> {
    if module.exponent() != 0 {
        bail!(
            Precondition,
            "Hecke split needs θ trivial on the torus at level {}, got m = {}",
            module.level(),
            module.exponent()
        );
    }
    let rep = module.representation();
    let f = rep.field();
    let n = module.dim();
    let image = module.subgroup_sum(module.level())?;
    let s = module.weyl();
    let s_image = s.apply(f, &image);
    let mut columns: Vec<Vector> = vec![image];
    for t in 0..module.q() {
        columns.push(module.eps(t).apply(f, &s_image));
    }
    let t_s = Matrix::from_columns(n, &columns);
    for g in rep.generators() {
        let g = g.to_matrix();
        if g.mul(f, &t_s) != t_s.mul(f, &g) {
            bail!(Consistency, "T_s does not commute with a generator");
        }
    }
    Ok(HeckeOperators {
        t_e: Matrix::identity(n),
        t_s,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeckeSplit {
    pub p: u64,
    pub level: usize,
    pub q: u32,
    /// `T_s² = -T_s`.
    pub quadratic_relation: bool,
    pub idempotents_orthogonal: bool,
    /// Dimension of the image of `e = T_e + T_s`.
    pub dim_e: usize,
    /// Dimension of the image of `o = -T_s`.
    pub dim_o: usize,
    pub e_summand: IrreducibilityVerdict,
    pub o_summand: IrreducibilityVerdict,
}

impl HeckeSplit {
    pub fn holds(&self) -> bool {
        self.quadratic_relation
            && self.idempotents_orthogonal
            && self.dim_e == 1
            && self.dim_o == self.q as usize
            && self.e_summand.irreducible
            && self.o_summand.irreducible
    }
}

pub fn idempotent_split(module: &InducedModule, gate: &Gate) -> Result<HeckeSplit> {
    let ops = hecke_operators(module)?;
    let rep = module.representation();
    let f = rep.field();
    let minus_one = f.neg(1);
    let e = ops.t_e.add(f, &ops.t_s);
    let o = ops.t_s.scale(f, minus_one);
    let quadratic_relation = ops.t_s.mul(f, &ops.t_s) == o;
    let idempotents_orthogonal = e.mul(f, &e) == e
        && o.mul(f, &o) == o
        && e.mul(f, &o).is_zero()
        && o.mul(f, &e).is_zero()
        && e.add(f, &o) == ops.t_e;
    let y_e = e.image(f);
    let y_o = o.image(f);
    Ok(HeckeSplit {
        p: module.p(),
        level: module.level(),
        q: module.q(),
        quadratic_relation,
        idempotents_orthogonal,
        dim_e: y_e.dim(),
        dim_o: y_o.dim(),
        e_summand: rep.restrict(&y_e)?.is_irreducible(gate)?,
        o_summand: rep.restrict(&y_o)?.is_irreducible(gate)?,
    })
}
