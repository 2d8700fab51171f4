//! The costandard module `∇(n)` with basis `v_0, …, v_n`, its simple
//! submodule `L(n)` and the map from the induced module onto it.

use std::sync::Arc;

use serde::Serialize;

use super::group::{RelationReport, Sl2Action};
use super::induced::InducedModule;
use super::linalg::{Matrix, Subspace, Vector};
use super::module::{Action, Gate, IrreducibilityVerdict, Representation};
use crate::error::{bail, Result};
use crate::gfq::{make_tower, FieldTower, GaloisField};
use crate::padic::lucas_unchecked;

#[derive(Debug, Clone)]
pub struct CostandardModule {
    n: usize,
    tower: Arc<FieldTower>,
    level: usize,
    coeff_level: usize,
    rep: Representation,
}

/// `∇(n)` for `SL₂(F_{p^{level!}})` over a fresh tower.
pub fn build_costandard(n: usize, p: u64, level: usize, coeff_level: usize) -> Result<CostandardModule> {
    let tower = Arc::new(make_tower(p, coeff_level.max(level))?);
    CostandardModule::build(tower, n, level, coeff_level)
}

impl CostandardModule {
    pub fn build(tower: Arc<FieldTower>, n: usize, level: usize, coeff_level: usize) -> Result<Self> {
        if level == 0 || coeff_level < level {
            bail!(Precondition, "need 1 ≤ level ≤ coefficient level, got {level} and {coeff_level}");
        }
        let fc = tower.field(coeff_level)?.clone();
        let mut module = Self {
            n,
            tower,
            level,
            coeff_level,
            rep: Representation::new(fc.clone(), n + 1, Vec::new())?,
        };
        let fq = module.group_field();
        let mut generators: Vec<Action> = fq.additive_basis().into_iter().map(|b| module.eps(b)).collect();
        generators.push(module.torus(fq.primitive_element()));
        generators.push(module.weyl());
        module.rep = Representation::new(fc, n + 1, generators)?;
        Ok(module)
    }

    pub fn highest_weight(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeff_level(&self) -> usize {
        self.coeff_level
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    fn lift(&self, x: u32) -> u32 {
        self.tower
            .embed_value(x, self.level, self.coeff_level)
            .expect("levels checked at construction")
    }

    /// Indices `i` with `binom(n, i) ≢ 0 (mod p)`.
    pub fn simple_support(&self) -> Vec<usize> {
        let p = self.tower.p();
        (0..=self.n)
            .filter(|&i| lucas_unchecked(self.n as u64, i as u64, p) != 0)
            .collect()
    }

    /// `L(n)`, spanned by the `v_i` of [`Self::simple_support`].
    pub fn l_submodule(&self) -> Subspace {
        let f = self.rep.field();
        Subspace::span(
            f,
            self.dim(),
            self.simple_support().into_iter().map(|i| {
                let mut v = vec![0; self.dim()];
                v[i] = 1;
                v
            }),
        )
    }

    pub fn relation_report(&self) -> RelationReport {
        self.check_relations()
    }

    /// Checks that `L(n)` is a submodule and tests its irreducibility.
    pub fn check_l_submodule(&self, gate: &Gate) -> Result<LSubmoduleReport> {
        let l = self.l_submodule();
        let submodule = self.rep.is_submodule(&l);
        if !submodule {
            return Ok(LSubmoduleReport {
                n: self.n,
                dim: l.dim(),
                submodule,
                irreducibility: None,
            });
        }
        let irreducibility = Some(self.rep.restrict(&l)?.is_irreducible(gate)?);
        Ok(LSubmoduleReport {
            n: self.n,
            dim: l.dim(),
            submodule,
            irreducibility,
        })
    }

    /// The matrix of `e_∞ ↦ v_0`, `e_t ↦ ε(t)·s·v_0` from `induced`, which
    /// must share this module's tower and levels and have `m_a ≡ n`.
    pub fn projection_from(&self, induced: &InducedModule) -> Result<Matrix> {
        if !Arc::ptr_eq(&self.tower, induced.tower())
            || induced.level() != self.level
            || induced.coeff_level() != self.coeff_level
        {
            bail!(Argument, "modules must share a tower and levels");
        }
        let q1 = induced.q() as u64 - 1;
        if induced.exponent() % q1 != self.n as u64 % q1 {
            bail!(Precondition, "m_a = {} is not congruent to n = {} mod {q1}", induced.exponent(), self.n);
        }
        let f = self.rep.field();
        let mut v0 = vec![0; self.dim()];
        v0[0] = 1;
        let sv0 = self.weyl().apply(f, &v0);
        let mut columns = vec![v0];
        for t in self.group_field().elements() {
            columns.push(self.eps(t).apply(f, &sv0));
        }
        Ok(Matrix::from_columns(self.dim(), &columns))
    }

    /// Checks `π∘g = g∘π` for all generators of both modules.
    pub fn is_intertwiner(&self, induced: &InducedModule, pi: &Matrix) -> bool {
        let f = self.rep.field();
        let fq = self.group_field();
        let mut pairs: Vec<(Action, Action)> = fq
            .additive_basis()
            .into_iter()
            .map(|b| (induced.eps(b), self.eps(b)))
            .collect();
        let g = fq.primitive_element();
        pairs.push((induced.torus(g), self.torus(g)));
        pairs.push((induced.weyl(), self.weyl()));
        pairs.iter().all(|(a, b)| {
            pi.mul(f, &a.to_matrix()) == b.to_matrix().mul(f, pi)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LSubmoduleReport {
    pub n: usize,
    pub dim: usize,
    pub submodule: bool,
    pub irreducibility: Option<IrreducibilityVerdict>,
}

impl Sl2Action for CostandardModule {
    fn group_field(&self) -> &GaloisField {
        self.tower.field(self.level).expect("level checked at construction")
    }

    fn coefficient_field(&self) -> &GaloisField {
        self.rep.field()
    }

    /// `ε(a)·v_i = Σ_{j ≤ i} binom(i, j)·a^{i-j}·v_j`.
    fn eps(&self, x: u32) -> Action {
        let f = self.rep.field();
        let p = self.tower.p();
        let a = self.lift(x);
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for i in 0..=self.n {
            for j in 0..=i {
                let b = lucas_unchecked(i as u64, j as u64, p);
                if b != 0 {
                    let c = f.mul(f.from_int(b as i64), f.pow_u(a, (i - j) as u64));
                    m.set(j, i, c);
                }
            }
        }
        Action::Dense(m)
    }

    /// `h(u)·v_i = u^{n-2i}·v_i`.
    fn torus(&self, u: u32) -> Action {
        let f = self.rep.field();
        let u = self.lift(u);
        let scale = (0..=self.n)
            .map(|i| f.pow(u, self.n as i64 - 2 * i as i64).expect("u is nonzero"))
            .collect();
        Action::Monomial {
            target: (0..=self.n as u32).collect(),
            scale,
        }
    }

    /// `s·v_i = (-1)^{n-i}·v_{n-i}`.
    fn weyl(&self) -> Action {
        let f = self.rep.field();
        Action::Monomial {
            target: (0..=self.n as u32).rev().collect(),
            scale: (0..=self.n)
                .map(|i| if (self.n - i) % 2 == 0 { 1 } else { f.neg(1) })
                .collect(),
        }
    }
}

/// `Σ_l binom(m, l)·a^l` placed at `v_{m-l}`, i.e. `ε(a)·v_m`, as a sparse
/// helper for large `m`.
pub(crate) fn eps_on_top(f: &GaloisField, p: u64, m: u64, a: u32) -> Vec<(usize, u32)> {
    (0..=m)
        .filter_map(|l| {
            let b = lucas_unchecked(m, l, p);
            if b == 0 {
                return None;
            }
            let c = f.mul(f.from_int(b as i64), f.pow_u(a, l));
            (c != 0).then_some(((m - l) as usize, c))
        })
        .collect()
}

pub(crate) fn dense(len: usize, entries: &[(usize, u32)]) -> Vector {
    let mut v = vec![0; len];
    for &(i, c) in entries {
        v[i] = c;
    }
    v
}
