//! The level-`a` truncation of the module induced from a torus character
//! `θ(u) = u^{m_a}` on the Borel subgroup of `SL₂(F_q)`, `q = p^{a!}`.
//!
//! Basis: `e_∞ = 1_θ` (index 0) and `e_t = ε(t)·s·1_θ` (index `1 + t`, with
//! `t` the encoded element of `F_q`).

use std::sync::Arc;

use super::group::{RelationReport, Sl2Action};
use super::linalg::Vector;
use super::module::{Action, Representation};
use crate::error::{bail, Result};
use crate::gfq::{factorial, make_tower, FieldTower, GaloisField};
use crate::limitchar::TruncatedCharacter;

/// Largest induced-module dimension the lab builds (`q ≤ 64`).
pub const MAX_INDUCED_DIM: usize = 65;

#[derive(Debug, Clone)]
pub struct InducedModule {
    tower: Arc<FieldTower>,
    level: usize,
    coeff_level: usize,
    theta: TruncatedCharacter,
    /// `θ(u)` in the coefficient field, indexed by the encoding of `u`.
    theta_values: Vec<u32>,
    s_action: Action,
    rep: Representation,
}

/// One step of a word in the generators, acting on a scaled basis vector.
#[derive(Debug, Clone, Copy)]
enum Letter {
    Eps(u32),
    Torus(u32),
    Weyl,
}

/// Builds the module over a fresh tower of height `coeff_level`.
pub fn build_induced(p: u64, a: usize, theta: &TruncatedCharacter, coeff_level: usize) -> Result<InducedModule> {
    let tower = Arc::new(make_tower(p, coeff_level.max(a))?);
    InducedModule::build(tower, a, theta, coeff_level)
}

impl InducedModule {
    pub fn build(tower: Arc<FieldTower>, a: usize, theta: &TruncatedCharacter, coeff_level: usize) -> Result<Self> {
        let p = tower.p();
        if theta.p() != p {
            bail!(Argument, "character is for p = {}, tower for p = {p}", theta.p());
        }
        if a == 0 {
            bail!(Argument, "level must be at least 1");
        }
        if theta.level() < a {
            bail!(Precondition, "character known to level {}, module needs level {a}", theta.level());
        }
        if coeff_level < a {
            bail!(Precondition, "coefficient level {coeff_level} does not contain F_(p^{a}!)");
        }
        let q = (p as u128).pow(factorial(a) as u32);
        if q + 1 > MAX_INDUCED_DIM as u128 {
            bail!(Capability, "induced module of dimension {} exceeds the cap {MAX_INDUCED_DIM}", q + 1);
        }
        let fa = tower.field(a)?.clone();
        let fc = tower.field(coeff_level)?.clone();
        let m = theta.residue(a);
        let mut theta_values = vec![0u32; fa.order() as usize];
        for u in fa.elements().filter(|&u| u != 0) {
            theta_values[u as usize] = tower.embed_value(fa.pow_u(u, m), a, coeff_level)?;
        }
        let mut module = Self {
            tower,
            level: a,
            coeff_level,
            theta: theta.restrict(a)?,
            theta_values,
            s_action: Action::Monomial {
                target: Vec::new(),
                scale: Vec::new(),
            },
            rep: Representation::new(fc.clone(), 0, Vec::new())?,
        };
        module.s_action = module.derive_weyl_action()?;
        let mut generators: Vec<Action> = fa.additive_basis().into_iter().map(|b| module.eps(b)).collect();
        generators.push(module.torus(fa.primitive_element()));
        generators.push(module.s_action.clone());
        module.rep = Representation::new(fc, module.dim(), generators)?;

        module.check_cosets()?;
        let relations = module.check_relations();
        if !relations.holds() {
            bail!(Consistency, "induced module violates relations: {:?}", relations.failures);
        }
        Ok(module)
    }

    pub fn p(&self) -> u64 {
        self.tower.p()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeff_level(&self) -> usize {
        self.coeff_level
    }

    pub fn q(&self) -> u32 {
        self.group_field().order()
    }

    pub fn dim(&self) -> usize {
        self.q() as usize + 1
    }

    pub fn theta(&self) -> &TruncatedCharacter {
        &self.theta
    }

    /// `m_a`, the exponent of `θ` on `F_q^*`.
    pub fn exponent(&self) -> u64 {
        self.theta.residue(self.level)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    /// `θ(u)` in the coefficient field.
    pub fn theta_value(&self, u: u32) -> u32 {
        self.theta_values[u as usize]
    }

    pub fn basis_vector(&self, index: usize) -> Vector {
        let mut v = vec![0; self.dim()];
        v[index] = 1;
        v
    }

    /// `1_θ`.
    pub fn highest(&self) -> Vector {
        self.basis_vector(0)
    }

    /// `ε(t)·s·1_θ`.
    pub fn translate(&self, t: u32) -> Vector {
        self.basis_vector(1 + t as usize)
    }

    /// `Σ_{u ∈ U_r} u·s·1_θ` where `U_r = ε(F_{p^{r!}})`, `r ≤ a`.
    pub fn subgroup_sum(&self, r: usize) -> Result<Vector> {
        if r == 0 || r > self.level {
            bail!(Argument, "subgroup level {r} outside 1..={}", self.level);
        }
        let mut v = vec![0; self.dim()];
        for x in self.tower.field(r)?.elements() {
            let t = self.tower.embed_value(x, r, self.level)?;
            v[1 + t as usize] = 1;
        }
        Ok(v)
    }

    /// `ε(b_j)` for the standard `F_p`-basis of `F_q`: generators of `U_a`.
    pub fn unipotent_generators(&self) -> Vec<Action> {
        self.group_field().additive_basis().into_iter().map(|b| self.eps(b)).collect()
    }

    fn apply_letter(&self, letter: Letter, (index, c): (usize, u32), partial_s: bool) -> Result<(usize, u32)> {
        let fq = self.group_field();
        let fc = self.coefficient_field();
        Ok(match letter {
            Letter::Eps(x) => match index {
                0 => (0, c),
                i => (1 + fq.add((i - 1) as u32, x) as usize, c),
            },
            Letter::Torus(u) => {
                let th = self.theta_value(u);
                match index {
                    0 => (0, fc.mul(th, c)),
                    i => {
                        let t = fq.mul(fq.mul(u, u), (i - 1) as u32);
                        (1 + t as usize, fc.mul(fc.inv(th)?, c))
                    }
                }
            }
            Letter::Weyl if partial_s => match index {
                0 => (1, c),
                1 => (0, fc.mul(self.theta_value(fq.neg(1)), c)),
                _ => bail!(Consistency, "s on e_t with t ≠ 0 is not yet known"),
            },
            Letter::Weyl => match &self.s_action {
                Action::Monomial { target, scale } => (target[index] as usize, fc.mul(scale[index], c)),
                Action::Dense(_) => unreachable!("s acts monomially"),
            },
        })
    }

    /// `s·e_∞ = e_0` and `s·e_0 = s²·1_θ = θ(-1)·e_∞`; for `t ≠ 0`,
    /// `s·ε(t)·s = h(-1)·ε(-1/t)·s·h(t)·ε(-1/t)` is applied to `1_θ`, which
    /// only needs `s` on `e_∞`.
    fn derive_weyl_action(&self) -> Result<Action> {
        let fq = self.group_field();
        let n = self.dim();
        let mut target = vec![0u32; n];
        let mut scale = vec![0u32; n];
        let (i, c) = self.apply_letter(Letter::Weyl, (0, 1), true)?;
        target[0] = i as u32;
        scale[0] = c;
        for t in fq.elements() {
            let (i, c) = if t == 0 {
                self.apply_letter(Letter::Weyl, (1, 1), true)?
            } else {
                let e = Letter::Eps(fq.neg(fq.inv(t)?));
                let word = [e, Letter::Torus(t), Letter::Weyl, e, Letter::Torus(fq.neg(1))];
                word.iter()
                    .try_fold((0, 1), |acc, &l| self.apply_letter(l, acc, true))?
            };
            target[1 + t as usize] = i as u32;
            scale[1 + t as usize] = c;
        }
        Ok(Action::Monomial { target, scale })
    }

    /// Independent check of the generator actions: for `g·x_t` with
    /// `x_∞ = 1`, `x_t = ε(t)s`, write `g·x_t = x_{t'}·b` with `b ∈ B` and
    /// compare with `θ(b)·e_{t'}`.
    fn check_cosets(&self) -> Result<()> {
        let fq = self.group_field();
        let mut elements: Vec<(String, [u32; 4], Action)> = Vec::new();
        for x in fq.elements() {
            elements.push((format!("ε({x})"), [1, x, 0, 1], self.eps(x)));
        }
        for u in fq.elements().filter(|&u| u != 0) {
            elements.push((format!("h({u})"), [u, 0, 0, fq.inv(u)?], self.torus(u)));
        }
        elements.push(("s".into(), [0, 1, fq.neg(1), 0], self.weyl()));
        for (name, g, action) in &elements {
            let Action::Monomial { target, scale } = action else {
                unreachable!("induced actions are monomial")
            };
            for index in 0..self.dim() {
                let x = if index == 0 {
                    [1, 0, 0, 1]
                } else {
                    let t = (index - 1) as u32;
                    [fq.neg(t), 1, fq.neg(1), 0]
                };
                let (alpha, gamma) = (
                    fq.add(fq.mul(g[0], x[0]), fq.mul(g[1], x[2])),
                    fq.add(fq.mul(g[2], x[0]), fq.mul(g[3], x[2])),
                );
                let expected = if gamma == 0 {
                    (0, self.theta_value(alpha))
                } else {
                    let t = fq.mul(alpha, fq.inv(gamma)?);
                    (1 + t as usize, self.theta_value(fq.neg(gamma)))
                };
                let got = (target[index] as usize, scale[index]);
                if got != expected {
                    bail!(Consistency, "{name} on basis vector {index}: action gives {got:?}, cosets give {expected:?}");
                }
            }
        }
        Ok(())
    }

    pub fn relation_report(&self) -> RelationReport {
        self.check_relations()
    }
}

impl Sl2Action for InducedModule {
    fn group_field(&self) -> &GaloisField {
        self.tower.field(self.level).expect("level checked at construction")
    }

    fn coefficient_field(&self) -> &GaloisField {
        self.rep.field()
    }

    fn eps(&self, x: u32) -> Action {
        let n = self.dim();
        let mut target = vec![0u32; n];
        let mut scale = vec![0u32; n];
        for (index, (t, c)) in target.iter_mut().zip(scale.iter_mut()).enumerate() {
            let (i, k) = self.apply_letter(Letter::Eps(x), (index, 1), false).expect("ε is total");
            *t = i as u32;
            *c = k;
        }
        Action::Monomial { target, scale }
    }

    fn torus(&self, u: u32) -> Action {
        let n = self.dim();
        let mut target = vec![0u32; n];
        let mut scale = vec![0u32; n];
        for (index, (t, c)) in target.iter_mut().zip(scale.iter_mut()).enumerate() {
            let (i, k) = self.apply_letter(Letter::Torus(u), (index, 1), false).expect("u is nonzero");
            *t = i as u32;
            *c = k;
        }
        Action::Monomial { target, scale }
    }

    fn weyl(&self) -> Action {
        self.s_action.clone()
    }
}
