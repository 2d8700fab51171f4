//! Brute-force checks on induced modules: socle and head, fixed points of
//! the unipotent radical, the image of `Σ_{u ∈ U_r} u·s·1_θ` in `∇(m_t)`, and
//! when that sum generates the whole module.

use serde::Serialize;

use super::costandard::{dense, eps_on_top};
use super::induced::{build_induced, InducedModule};
use super::linalg::{Subspace, Vector};
use super::module::Gate;
use crate::error::{bail, Result};
use crate::gfq::{factorial, make_tower, MAX_TOWER_LEVEL};
use crate::limitchar::TruncatedCharacter;
use crate::padic::{expand, power_sum};

/// `Π (d_i + 1)` over the base-`p` digits of `m`: the dimension of `L(m)`.
pub fn digit_product(m: u64, p: u64) -> Result<u64> {
    Ok(expand(m, p)?.digits().iter().map(|d| d + 1).product())
}

/// `U_a`-fixed vectors of the whole module.
pub fn unipotent_fixed_points(module: &InducedModule) -> Subspace {
    module
        .representation()
        .fixed_subspace(&module.unipotent_generators())
}

fn intersection_dim(f: &crate::gfq::GaloisField, a: &Subspace, b: &Subspace) -> usize {
    a.dim() + b.dim() - a.sum(f, b).dim()
}

/// Submodule structure of an induced module with `m_a ≠ 0`, found by
/// spinning every vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SocleHead {
    pub p: u64,
    pub level: usize,
    pub exponent: u64,
    pub dim: usize,
    /// Distinct cyclic submodules seen.
    pub cyclic_submodules: usize,
    /// Basis of `S = spin(Σ_{u ∈ U_a} u·s·1_θ)`.
    pub socle: Vec<Vector>,
    pub socle_simple: bool,
    /// A vector whose spin does not contain `S`, if any.
    pub socle_counterexample: Option<Vector>,
    /// Dimension of the sum of all proper submodules, if that sum is proper.
    pub maximal_dim: Option<usize>,
    /// Generators of proper submodules summing to the whole module.
    pub maximal_counterexample: Vec<Vector>,
    pub head_dim: Option<usize>,
    pub expected_head_dim: u64,
    /// Every nonzero submodule seen has a nonzero `U_a`-fixed vector.
    pub fixed_points_everywhere: bool,
    pub whole_fixed_dim: usize,
}

impl SocleHead {
    pub fn unique_minimal(&self) -> bool {
        self.socle_simple && self.socle_counterexample.is_none()
    }

    pub fn unique_maximal(&self) -> bool {
        self.maximal_dim.is_some()
    }

    pub fn holds(&self) -> bool {
        self.unique_minimal()
            && self.unique_maximal()
            && self.head_dim == Some(self.expected_head_dim as usize)
            && self.fixed_points_everywhere
            && self.whole_fixed_dim == 2
    }
}

pub fn socle_and_head(module: &InducedModule, gate: &Gate) -> Result<SocleHead> {
    let m = module.exponent();
    if m == 0 {
        bail!(
            Precondition,
            "θ is trivial on the torus at level {}; socle and head are not unique",
            module.level()
        );
    }
    let rep = module.representation();
    let f = rep.field();
    let cyclic = rep.cyclic_submodules(gate)?;
    let fixed = unipotent_fixed_points(module);

    let socle = rep.spin(&module.subgroup_sum(module.level())?);
    let socle_simple = !socle.is_whole() && rep.restrict(&socle)?.is_irreducible(gate)?.irreducible;
    let socle_counterexample = cyclic
        .iter()
        .find(|(_, s)| !s.contains_subspace(f, &socle))
        .map(|(v, _)| v.clone());

    let mut maximal = Subspace::zero(module.dim());
    let mut witnesses = Vec::new();
    for (v, s) in cyclic.iter().filter(|(_, s)| !s.is_whole()) {
        if !maximal.contains_subspace(f, s) {
            maximal = maximal.sum(f, s);
            witnesses.push(v.clone());
        }
    }
    let (maximal_dim, maximal_counterexample) = if maximal.is_whole() {
        (None, witnesses)
    } else {
        (Some(maximal.dim()), Vec::new())
    };
    let fixed_points_everywhere = cyclic
        .iter()
        .all(|(_, s)| intersection_dim(f, &fixed, s) > 0);

    Ok(SocleHead {
        p: module.p(),
        level: module.level(),
        exponent: m,
        dim: module.dim(),
        cyclic_submodules: cyclic.len(),
        socle: socle.basis().to_vec(),
        socle_simple,
        socle_counterexample,
        maximal_dim,
        maximal_counterexample,
        head_dim: maximal_dim.map(|d| module.dim() - d),
        expected_head_dim: digit_product(m, module.p())?,
        fixed_points_everywhere,
        whole_fixed_dim: fixed.dim(),
    })
}

/// The unique minimal submodule, or `None` when it does not exist.
pub fn unique_minimal_submodule(module: &InducedModule, gate: &Gate) -> Result<Option<Subspace>> {
    let report = socle_and_head(module, gate)?;
    if !report.unique_minimal() {
        return Ok(None);
    }
    let f = module.representation().field();
    Ok(Some(Subspace::span(f, module.dim(), report.socle)))
}

/// `dim` of the module over its unique maximal submodule, or `None` when
/// the proper submodules sum to everything.
pub fn head_dimension(module: &InducedModule, gate: &Gate) -> Result<Option<usize>> {
    Ok(socle_and_head(module, gate)?.head_dim)
}

/// `Σ_{a ∈ F_{p^{r!}}} ε(a)·v_{m_t}` in `∇(m_t)` over `F_{p^{t!}}`, as
/// sparse `(index, coefficient)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiImage {
    pub p: u64,
    pub r: usize,
    pub t: usize,
    pub exponent: u64,
    pub support: Vec<(usize, u32)>,
    /// The direct sum and the power-sum closed form agree.
    pub routes_agree: bool,
}

impl PiImage {
    pub fn is_nonzero(&self) -> bool {
        !self.support.is_empty()
    }
}

pub fn pi_image(theta: &TruncatedCharacter, r: usize, t: usize) -> Result<PiImage> {
    if r == 0 || r >= t || t > theta.level() {
        bail!(Argument, "need 1 ≤ r < t ≤ {}, got r = {r}, t = {t}", theta.level());
    }
    if t > MAX_TOWER_LEVEL {
        bail!(Capability, "level {t} exceeds the field tower cap {MAX_TOWER_LEVEL}");
    }
    let p = theta.p();
    let m = theta.residue(t);
    let tower = make_tower(p, t)?;
    let f = tower.field(t)?;
    let len = m as usize + 1;

    let mut direct = vec![0u32; len];
    for a in tower.field(r)?.elements() {
        let a = tower.embed_value(a, r, t)?;
        for (i, c) in eps_on_top(f, p, m, a) {
            direct[i] = f.add(direct[i], c);
        }
    }

    let q_r = p.pow(factorial(r) as u32);
    let mut closed = Vec::new();
    for l in 0..=m {
        let b = crate::padic::lucas_unchecked(m, l, p);
        let c = b * power_sum(q_r, l, true)? % p;
        if c != 0 {
            closed.push(((m - l) as usize, f.from_int(c as i64)));
        }
    }
    closed.sort_unstable();
    let routes_agree = dense(len, &closed) == direct;
    Ok(PiImage {
        p,
        r,
        t,
        exponent: m,
        support: closed,
        routes_agree,
    })
}

/// Whether `Σ_{u ∈ U_r} u·s·1_θ` generates the level-`t` induced module,
/// next to whether its image in `∇(m_t)` is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainVerdict {
    pub p: u64,
    pub r: usize,
    pub t: usize,
    pub exponent: u64,
    pub dim: usize,
    pub spin_dim: usize,
    pub generates: bool,
    pub pi_nonzero: bool,
    pub pi_routes_agree: bool,
}

impl ChainVerdict {
    pub fn agrees(&self) -> bool {
        self.generates == self.pi_nonzero && self.pi_routes_agree
    }
}

pub fn verify_irreducibility_chain(theta: &TruncatedCharacter, r: usize, t: usize) -> Result<ChainVerdict> {
    let pi = pi_image(theta, r, t)?;
    let module = build_induced(theta.p(), t, theta, t)?;
    let spin = module.representation().spin(&module.subgroup_sum(r)?);
    Ok(ChainVerdict {
        p: theta.p(),
        r,
        t,
        exponent: module.exponent(),
        dim: module.dim(),
        spin_dim: spin.dim(),
        generates: spin.is_whole(),
        pi_nonzero: pi.is_nonzero(),
        pi_routes_agree: pi.routes_agree,
    })
}

/// Search for `b > a` with `Σ_{u ∈ U_a} u·s·1_θ` generating the level-`b`
/// module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SpanSearch {
    Found { b: usize, dim: usize },
    /// Nothing up to `cap`; levels that could not be built are listed.
    NotFoundUpTo { cap: usize, skipped: Vec<(usize, String)> },
}

pub fn span_equality_search(theta: &TruncatedCharacter, a: usize, cap: usize) -> Result<SpanSearch> {
    let cap = cap.min(theta.level()).min(MAX_TOWER_LEVEL);
    let mut skipped = Vec::new();
    for b in a + 1..=cap {
        let module = match build_induced(theta.p(), b, theta, b) {
            Ok(m) => m,
            Err(crate::Error::Capability(msg)) => {
                skipped.push((b, msg));
                continue;
            }
            Err(e) => return Err(e),
        };
        if module.representation().spin(&module.subgroup_sum(a)?).is_whole() {
            return Ok(SpanSearch::Found { b, dim: module.dim() });
        }
    }
    Ok(SpanSearch::NotFoundUpTo { cap, skipped })
}
