use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::datum::RootDatum;
use super::system::RootSystem;
use crate::error::{bail, Result};

/// Largest Weyl group that will be enumerated.
pub const MAX_WEYL_ORDER: usize = 10_000;

/// A Weyl group element, identified by its permutation of the roots.
#[derive(Debug, Clone)]
pub struct WeylElement {
    action: Vec<u32>,
    word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.action.hash(state);
    }
}

impl WeylElement {
    /// Index of `w(root k)`.
    pub fn apply(&self, k: usize) -> usize {
        self.action[k] as usize
    }

    /// A reduced word `[i_1, …, i_l]` with `w = s_{i_1} ⋯ s_{i_l}` (0-based).
    pub fn reduced_word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// All elements of a finite Weyl group, in breadth-first order from the
/// identity; positions in [`WeylGroup::elements`] serve as element ids.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    system: Arc<RootSystem>,
    elements: Vec<WeylElement>,
    index: HashMap<Vec<u32>, usize>,
    longest: usize,
}

pub fn weyl_group(datum: &RootDatum) -> Result<WeylGroup> {
    WeylGroup::build(Arc::new(RootSystem::build(datum)?))
}

impl WeylGroup {
    /// Generates `W` by left multiplication with simple reflections. The
    /// breadth-first depth of an element is its length, and the path that
    /// reached it is a reduced word.
    pub fn build(system: Arc<RootSystem>) -> Result<Self> {
        let identity: Vec<u32> = (0..system.n_roots() as u32).collect();
        let mut elements = vec![WeylElement {
            action: identity.clone(),
            word: vec![],
        }];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(at) = queue.pop_front() {
            for i in 0..system.rank() {
                let s = system.reflection_table(i);
                let action: Vec<u32> = elements[at].action.iter().map(|&k| s[k as usize] as u32).collect();
                if index.contains_key(&action) {
                    continue;
                }
                if elements.len() >= MAX_WEYL_ORDER {
                    bail!(Capability, "Weyl group has more than {MAX_WEYL_ORDER} elements");
                }
                let mut word = Vec::with_capacity(elements[at].word.len() + 1);
                word.push(i);
                word.extend_from_slice(&elements[at].word);
                index.insert(action.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(WeylElement { action, word });
            }
        }
        let longest = (0..elements.len())
            .max_by_key(|&k| elements[k].length())
            .expect("the identity is always present");
        let group = Self {
            system,
            elements,
            index,
            longest,
        };
        group.check_lengths()?;
        Ok(group)
    }

    fn check_lengths(&self) -> Result<()> {
        for (k, w) in self.elements.iter().enumerate() {
            if self.inversion_set(k).len() != w.length() {
                bail!(Consistency, "length of {:?} differs from its inversion count", w.word);
            }
        }
        let maximal = self.elements.iter().filter(|w| w.length() == self.elements[self.longest].length());
        if maximal.count() != 1 {
            bail!(Consistency, "the longest element is not unique");
        }
        Ok(())
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, w: usize) -> &WeylElement {
        &self.elements[w]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn length(&self, w: usize) -> usize {
        self.elements[w].length()
    }

    pub fn longest_element(&self) -> usize {
        self.longest
    }

    pub fn simple_reflection(&self, i: usize) -> usize {
        let action: Vec<u32> = self.system.reflection_table(i).iter().map(|&k| k as u32).collect();
        self.index[&action]
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        let (x, y) = (&self.elements[a].action, &self.elements[b].action);
        let action: Vec<u32> = y.iter().map(|&k| x[k as usize]).collect();
        self.index[&action]
    }

    pub fn inverse(&self, w: usize) -> usize {
        let x = &self.elements[w].action;
        let mut inv = vec![0u32; x.len()];
        for (k, &t) in x.iter().enumerate() {
            inv[t as usize] = k as u32;
        }
        self.index[&inv]
    }

    /// Evaluates a word `s_{i_1} ⋯ s_{i_l}` (0-based letters).
    pub fn evaluate(&self, word: &[usize]) -> Result<usize> {
        let mut acc = self.identity();
        for &i in word {
            if i >= self.system.rank() {
                bail!(Argument, "letter {} outside 1..={}", i + 1, self.system.rank());
            }
            acc = self.multiply(acc, self.simple_reflection(i));
        }
        Ok(acc)
    }

    /// Positive roots sent to negative roots by `w`.
    pub fn inversion_set(&self, w: usize) -> Vec<usize> {
        let el = &self.elements[w];
        (0..self.system.n_positive())
            .filter(|&k| !self.system.is_positive(el.apply(k)))
            .collect()
    }

    /// Elements of `W_J`, the subgroup generated by `s_j`, `j ∈ J`.
    pub fn parabolic_subgroup(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&w| self.elements[w].word.iter().all(|i| subset.contains(i)))
            .collect()
    }

    /// Minimal-length representatives of the cosets `wW_J`: the `w` with
    /// `w(α_j) > 0` for all `j ∈ J`.
    pub fn min_coset_reps(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&w| subset.iter().all(|&j| self.system.is_positive(self.elements[w].apply(j))))
            .collect()
    }

    /// Coefficients of `Σ_w t^{ℓ(w)}`.
    pub fn poincare_polynomial(&self) -> Vec<u64> {
        let top = self.length(self.longest);
        let mut coeffs = vec![0u64; top + 1];
        for w in &self.elements {
            coeffs[w.length()] += 1;
        }
        coeffs
    }
}
