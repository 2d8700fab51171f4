//! Finite-dimensional representations given by generator actions: spinning,
//! restriction to submodules, fixed points and irreducibility tests.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linalg::{is_zero, nullspace, projective_points, Matrix, Subspace, Vector};
use crate::error::{bail, Result};
use crate::gfq::GaloisField;

/// Default enumeration gate: exhaustive checks run when `|F|^dim ≤ 2^22`.
pub const DEFAULT_GATE: u64 = 1 << 22;

/// Linear action of one group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    /// `g·e_j = scale[j]·e_{target[j]}`.
    Monomial { target: Vec<u32>, scale: Vec<u32> },
    Dense(Matrix),
}

impl Action {
    pub fn dim(&self) -> usize {
        match self {
            Self::Monomial { target, .. } => target.len(),
            Self::Dense(m) => m.cols(),
        }
    }

    pub fn apply(&self, f: &GaloisField, v: &[u32]) -> Vector {
        match self {
            Self::Monomial { target, scale } => {
                let mut out = vec![0u32; v.len()];
                for (j, &x) in v.iter().enumerate() {
                    if x != 0 {
                        let t = target[j] as usize;
                        out[t] = f.add(out[t], f.mul(scale[j], x));
                    }
                }
                out
            }
            Self::Dense(m) => m.apply(f, v),
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        match self {
            Self::Monomial { target, scale } => {
                let n = target.len();
                let mut m = Matrix::zeros(n, n);
                for j in 0..n {
                    m.set(target[j] as usize, j, scale[j]);
                }
                m
            }
            Self::Dense(m) => m.clone(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, f: &GaloisField, other: &Action) -> Action {
        match (self, other) {
            (
                Self::Monomial { target: t1, scale: s1 },
                Self::Monomial { target: t2, scale: s2 },
            ) => {
                let target = t2.iter().map(|&k| t1[k as usize]).collect();
                let scale = t2.iter().zip(s2).map(|(&k, &c)| f.mul(s1[k as usize], c)).collect();
                Self::Monomial { target, scale }
            }
            _ => Self::Dense(self.to_matrix().mul(f, &other.to_matrix())),
        }
    }

    pub fn same_as(&self, other: &Action) -> bool {
        match (self, other) {
            (Self::Monomial { .. }, Self::Monomial { .. }) => self == other,
            _ => self.to_matrix() == other.to_matrix(),
        }
    }
}

/// A representation over a finite field through the actions of a
/// generating set.
#[derive(Debug, Clone)]
pub struct Representation {
    field: Arc<GaloisField>,
    dim: usize,
    generators: Vec<Action>,
}

/// How irreducibility may be decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gate {
    /// Largest `|F|^dim` for exhaustive enumeration.
    pub max_vectors: u64,
    /// Opt-in randomized mode above the gate: `(seed, samples)`.
    pub randomized: Option<(u64, usize)>,
}

impl Default for Gate {
    fn default() -> Self {
        Self {
            max_vectors: DEFAULT_GATE,
            randomized: None,
        }
    }
}

impl Gate {
    pub(crate) fn allows(&self, order: u32, dim: usize) -> bool {
        (order as f64).powi(dim as i32) <= self.max_vectors as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    /// Sampling only; a positive answer is not a proof.
    Randomized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibilityVerdict {
    pub irreducible: bool,
    pub mode: Mode,
    pub dim: usize,
    /// A vector (in the coordinates of the tested space) spinning to a
    /// proper nonzero submodule.
    pub witness: Option<Vector>,
    pub witness_span_dim: Option<usize>,
    pub vectors_checked: u64,
}

impl Representation {
    pub fn new(field: Arc<GaloisField>, dim: usize, generators: Vec<Action>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
            bail!(Argument, "generator of size {} on a space of dimension {dim}", g.dim());
        }
        Ok(Self {
            field,
            dim,
            generators,
        })
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Action] {
        &self.generators
    }

    /// The smallest generator-stable subspace containing `seeds`.
    pub fn spin_all(&self, seeds: impl IntoIterator<Item = Vector>) -> Subspace {
        let f = &*self.field;
        let mut space = Subspace::zero(self.dim);
        let mut queue: Vec<Vector> = Vec::new();
        for v in seeds {
            if let Some(row) = space.insert(f, v) {
                queue.push(row);
            }
        }
        while let Some(v) = queue.pop() {
            if space.is_whole() {
                break;
            }
            for g in &self.generators {
                if let Some(row) = space.insert(f, g.apply(f, &v)) {
                    queue.push(row);
                }
            }
        }
        space
    }

    pub fn spin(&self, v: &[u32]) -> Subspace {
        self.spin_all([v.to_vec()])
    }

    pub fn is_submodule(&self, w: &Subspace) -> bool {
        let f = &*self.field;
        w.basis()
            .iter()
            .all(|b| self.generators.iter().all(|g| w.contains(f, &g.apply(f, b))))
    }

    /// The action on an invariant subspace, in its echelon coordinates.
    pub fn restrict(&self, w: &Subspace) -> Result<Representation> {
        let f = &*self.field;
        let d = w.dim();
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let mut columns = Vec::with_capacity(d);
            for b in w.basis() {
                let image = g.apply(f, b);
                let coords = w.coordinates(&image);
                if w.combine(f, &coords) != image {
                    bail!(Consistency, "subspace is not stable under a generator");
                }
                columns.push(coords);
            }
            gens.push(Action::Dense(Matrix::from_columns(d, &columns)));
        }
        Representation::new(self.field.clone(), d, gens)
    }

    /// Common fixed vectors of the given actions.
    pub fn fixed_subspace(&self, actions: &[Action]) -> Subspace {
        let f = &*self.field;
        let mut rows = Vec::new();
        for a in actions {
            let m = a.to_matrix().sub(f, &Matrix::identity(self.dim));
            rows.extend((0..self.dim).map(|i| m.row(i).to_vec()));
        }
        Subspace::span(f, self.dim, nullspace(f, &rows, self.dim))
    }

    pub fn is_irreducible(&self, gate: &Gate) -> Result<IrreducibilityVerdict> {
        let order = self.field.order();
        if self.dim == 0 {
            return Ok(IrreducibilityVerdict {
                irreducible: false,
                mode: Mode::Exhaustive,
                dim: 0,
                witness: None,
                witness_span_dim: None,
                vectors_checked: 0,
            });
        }
        if gate.allows(order, self.dim) {
            let mut checked = 0;
            for v in projective_points(order, self.dim) {
                checked += 1;
                let s = self.spin(&v);
                if !s.is_whole() {
                    return Ok(IrreducibilityVerdict {
                        irreducible: false,
                        mode: Mode::Exhaustive,
                        dim: self.dim,
                        witness_span_dim: Some(s.dim()),
                        witness: Some(v),
                        vectors_checked: checked,
                    });
                }
            }
            return Ok(IrreducibilityVerdict {
                irreducible: true,
                mode: Mode::Exhaustive,
                dim: self.dim,
                witness: None,
                witness_span_dim: None,
                vectors_checked: checked,
            });
        }
        let Some((seed, samples)) = gate.randomized else {
            bail!(
                Capability,
                "|F|^dim = {order}^{} exceeds the enumeration gate; enable randomized mode",
                self.dim
            );
        };
        Ok(self.randomized_irreducibility(seed, samples))
    }

    /// Spins random vectors and kernel vectors of random group-algebra
    /// elements. Finding a proper submodule is conclusive; not finding one
    /// is only evidence.
    fn randomized_irreducibility(&self, seed: u64, samples: usize) -> IrreducibilityVerdict {
        let f = &*self.field;
        let order = f.order();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0;
        let mut candidates: Vec<Vector> = Vec::new();
        for _ in 0..samples {
            let v: Vector = (0..self.dim).map(|_| rng.gen_range(0..order)).collect();
            if !is_zero(&v) {
                candidates.push(v);
            }
            // A random combination of random words in the generators.
            let mut a = Matrix::zeros(self.dim, self.dim);
            for _ in 0..3 {
                let mut word = Matrix::identity(self.dim);
                for _ in 0..rng.gen_range(1..=4) {
                    let g = &self.generators[rng.gen_range(0..self.generators.len())];
                    word = g.to_matrix().mul(f, &word);
                }
                a = a.add(f, &word.scale(f, rng.gen_range(0..order)));
            }
            let rows: Vec<Vector> = (0..self.dim).map(|i| a.row(i).to_vec()).collect();
            candidates.extend(nullspace(f, &rows, self.dim).into_iter().take(2));
        }
        for v in candidates {
            checked += 1;
            let s = self.spin(&v);
            if !s.is_whole() {
                return IrreducibilityVerdict {
                    irreducible: false,
                    mode: Mode::Randomized,
                    dim: self.dim,
                    witness_span_dim: Some(s.dim()),
                    witness: Some(v),
                    vectors_checked: checked,
                };
            }
        }
        IrreducibilityVerdict {
            irreducible: true,
            mode: Mode::Randomized,
            dim: self.dim,
            witness: None,
            witness_span_dim: None,
            vectors_checked: checked,
        }
    }

    /// Spins of all nonzero vectors, one per line, deduplicated.
    pub fn cyclic_submodules(&self, gate: &Gate) -> Result<Vec<(Vector, Subspace)>> {
        let order = self.field.order();
        if !gate.allows(order, self.dim) {
            bail!(
                Capability,
                "|F|^dim = {order}^{} exceeds the enumeration gate",
                self.dim
            );
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for v in projective_points(order, self.dim) {
            let s = self.spin(&v);
            if seen.insert(s.clone()) {
                out.push((v, s));
            }
        }
        Ok(out)
    }
}
