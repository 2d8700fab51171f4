use std::collections::HashMap;

use super::datum::RootDatum;
use crate::error::{bail, Result};

/// Root count beyond which a Cartan matrix is declared not of finite type.
const MAX_ROOTS: usize = 4096;

/// The root system of a datum: roots in the basis of simple roots, coroots
/// in the basis of simple coroots.
///
/// Positive roots come first, ordered by height with `α_i` at index `i`;
/// the negative of positive root `k` sits at `k + n_positive`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    datum: RootDatum,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    n_positive: usize,
    index: HashMap<Vec<i64>, usize>,
    /// `reflect[i][k]` is the index of `s_i(root k)`.
    reflect: Vec<Vec<usize>>,
}

impl RootSystem {
    pub fn build(datum: &RootDatum) -> Result<Self> {
        let r = datum.rank();
        let unit = |i: usize| -> Vec<i64> { (0..r).map(|j| i64::from(i == j)).collect() };
        // Closure of the simple roots under simple reflections, carrying the
        // coroot along by the transposed action.
        let mut positive: Vec<(Vec<i64>, Vec<i64>)> = (0..r).map(|i| (unit(i), unit(i))).collect();
        let mut seen: HashMap<Vec<i64>, usize> =
            positive.iter().enumerate().map(|(k, (a, _))| (a.clone(), k)).collect();
        let mut next = 0;
        while next < positive.len() {
            let (beta, cobeta) = positive[next].clone();
            next += 1;
            for i in 0..r {
                let image = reflect_root(datum, i, &beta);
                if image.iter().all(|&c| c <= 0) {
                    continue;
                }
                if !seen.contains_key(&image) {
                    if positive.len() >= MAX_ROOTS {
                        bail!(Argument, "Cartan matrix is not of finite type");
                    }
                    seen.insert(image.clone(), positive.len());
                    positive.push((image, reflect_coroot(datum, i, &cobeta)));
                }
            }
        }
        let height = |v: &Vec<i64>| v.iter().sum::<i64>();
        positive.sort_by(|a, b| height(&a.0).cmp(&height(&b.0)).then(b.0.cmp(&a.0)));

        let n_positive = positive.len();
        let mut roots = Vec::with_capacity(2 * n_positive);
        let mut coroots = Vec::with_capacity(2 * n_positive);
        for (a, c) in &positive {
            roots.push(a.clone());
            coroots.push(c.clone());
        }
        for (a, c) in &positive {
            roots.push(a.iter().map(|x| -x).collect());
            coroots.push(c.iter().map(|x| -x).collect());
        }
        let index: HashMap<_, _> = roots.iter().cloned().enumerate().map(|(k, a)| (a, k)).collect();
        let mut reflect = vec![vec![0usize; roots.len()]; r];
        for (i, row) in reflect.iter_mut().enumerate() {
            for (k, beta) in roots.iter().enumerate() {
                let image = reflect_root(datum, i, beta);
                let Some(&target) = index.get(&image) else {
                    bail!(Consistency, "root set is not closed under s_{}", i + 1);
                };
                row[k] = target;
            }
        }
        let system = Self {
            datum: datum.clone(),
            roots,
            coroots,
            n_positive,
            index,
            reflect,
        };
        system.check_coroots()?;
        Ok(system)
    }

    /// `⟨β, β^∨⟩ = 2` for every root, and the coroot map is compatible with
    /// each simple reflection.
    fn check_coroots(&self) -> Result<()> {
        for k in 0..self.roots.len() {
            if self.pair(&self.roots[k], &self.coroots[k]) != 2 {
                bail!(Consistency, "root {:?} does not pair to 2 with its coroot", self.roots[k]);
            }
            for i in 0..self.rank() {
                let t = self.reflect[i][k];
                if reflect_coroot(&self.datum, i, &self.coroots[k]) != self.coroots[t] {
                    bail!(Consistency, "coroot of s_{}({:?}) is inconsistent", i + 1, self.roots[k]);
                }
            }
        }
        Ok(())
    }

    /// `⟨β, γ^∨⟩` for a root `β` and coroot `γ^∨` in simple coordinates.
    pub fn pair(&self, root: &[i64], coroot: &[i64]) -> i64 {
        let r = self.rank();
        (0..r)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .map(|(i, j)| coroot[i] * root[j] * self.datum.pairing(i, j))
            .sum()
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn n_positive(&self) -> usize {
        self.n_positive
    }

    pub fn n_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, k: usize) -> &[i64] {
        &self.roots[k]
    }

    pub fn coroot(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.n_positive]
    }

    pub fn index_of(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_positive(&self, k: usize) -> bool {
        k < self.n_positive
    }

    pub fn height(&self, k: usize) -> i64 {
        self.roots[k].iter().sum()
    }

    /// Index of the negative of root `k`.
    pub fn negate(&self, k: usize) -> usize {
        if k < self.n_positive {
            k + self.n_positive
        } else {
            k - self.n_positive
        }
    }

    pub(crate) fn reflection_table(&self, i: usize) -> &[usize] {
        &self.reflect[i]
    }

    /// Positive roots supported on the simple roots in `subset`.
    pub fn positive_roots_in(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.n_positive)
            .filter(|&k| {
                self.roots[k]
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || subset.contains(&i))
            })
            .collect()
    }
}

fn reflect_root(datum: &RootDatum, i: usize, beta: &[i64]) -> Vec<i64> {
    let c: i64 = beta.iter().enumerate().map(|(j, &b)| b * datum.pairing(i, j)).sum();
    let mut out = beta.to_vec();
    out[i] -= c;
    out
}

fn reflect_coroot(datum: &RootDatum, i: usize, cobeta: &[i64]) -> Vec<i64> {
    let c: i64 = cobeta.iter().enumerate().map(|(j, &b)| b * datum.pairing(j, i)).sum();
    let mut out = cobeta.to_vec();
    out[i] -= c;
    out
}
