use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use super::field::GaloisField;
use crate::error::{bail, Result};

/// Highest supported level; level `n` has degree `n!`, so level 3 is `F_{p^6}`.
pub const MAX_TOWER_LEVEL: usize = 3;

static NEXT_TOWER_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// The nested fields `F_p ⊂ F_{p^{2!}} ⊂ … ⊂ F_{p^{N!}}` with compatible
/// embeddings.
///
/// Levels are 1-based. The embedding `k → n` sends the class of `x` at level
/// `k` to the smallest root (by element encoding) of the level-`k` modulus
/// inside level `n`; composites are checked against direct embeddings when
/// the tower is built.
#[derive(Debug)]
pub struct FieldTower {
    id: u64,
    p: u64,
    levels: Vec<Arc<GaloisField>>,
    /// `embed[k-1][n-1][v]`: image of level-`k` element `v` in level `n`.
    embed: Vec<Vec<Vec<u32>>>,
}

/// An element of a specific tower level, tagged with its tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    tower: u64,
    level: usize,
    value: u32,
}

impl FieldElement {
    pub fn level(&self) -> usize {
        self.level
    }

    /// Encoded coordinates (see [`GaloisField`]).
    pub fn value(&self) -> u32 {
        self.value
    }
}

pub fn make_tower(p: u64, max_level: usize) -> Result<FieldTower> {
    FieldTower::new(p, max_level)
}

impl FieldTower {
    pub fn new(p: u64, max_level: usize) -> Result<Self> {
        crate::padic::check_prime(p)?;
        if max_level == 0 {
            bail!(Argument, "a tower needs at least one level");
        }
        if max_level > MAX_TOWER_LEVEL {
            bail!(
                Capability,
                "tower level {max_level} exceeds the supported cap {MAX_TOWER_LEVEL}"
            );
        }
        let levels = (1..=max_level)
            .map(|n| GaloisField::new(p, factorial(n)).map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        let mut embed = vec![vec![Vec::new(); max_level]; max_level];
        for k in 0..max_level {
            for n in k..max_level {
                embed[k][n] = embedding_table(&levels[k], &levels[n])?;
            }
        }
        let tower = Self {
            id: NEXT_TOWER_ID.fetch_add(1, Ordering::Relaxed),
            p,
            levels,
            embed,
        };
        tower.check_compatibility()?;
        Ok(tower)
    }

    fn check_compatibility(&self) -> Result<()> {
        let n_levels = self.levels.len();
        for k in 0..n_levels {
            for n in k..n_levels {
                for m in n..n_levels {
                    for v in self.levels[k].elements() {
                        let two_step = self.embed[n][m][self.embed[k][n][v as usize] as usize];
                        if two_step != self.embed[k][m][v as usize] {
                            bail!(
                                Consistency,
                                "embeddings {}→{}→{} and {}→{} disagree",
                                k + 1,
                                n + 1,
                                m + 1,
                                k + 1,
                                m + 1
                            );
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn max_level(&self) -> usize {
        self.levels.len()
    }

    pub fn field(&self, level: usize) -> Result<&Arc<GaloisField>> {
        self.check_level(level)?;
        Ok(&self.levels[level - 1])
    }

    fn check_level(&self, level: usize) -> Result<()> {
        if level == 0 || level > self.levels.len() {
            bail!(Argument, "level {level} outside 1..={}", self.levels.len());
        }
        Ok(())
    }

    fn check_member(&self, x: &FieldElement) -> Result<()> {
        if x.tower != self.id {
            bail!(Argument, "element belongs to a different tower");
        }
        Ok(())
    }

    pub fn element(&self, level: usize, value: u32) -> Result<FieldElement> {
        let f = self.field(level)?;
        if value >= f.order() {
            bail!(Argument, "value {value} outside F_{}", f.order());
        }
        Ok(FieldElement {
            tower: self.id,
            level,
            value,
        })
    }

    pub fn from_coords(&self, level: usize, coords: &[u32]) -> Result<FieldElement> {
        let f = self.field(level)?;
        if coords.len() != f.degree() {
            bail!(Argument, "expected {} coordinates", f.degree());
        }
        self.element(level, f.from_coords(coords))
    }

    pub fn coords(&self, x: &FieldElement) -> Result<Vec<u32>> {
        self.check_member(x)?;
        Ok(self.levels[x.level - 1].coords(x.value))
    }

    pub fn zero(&self, level: usize) -> Result<FieldElement> {
        self.element(level, 0)
    }

    pub fn one(&self, level: usize) -> Result<FieldElement> {
        self.element(level, 1)
    }

    /// Raw embedding of an encoded element between levels.
    pub fn embed_value(&self, value: u32, from: usize, to: usize) -> Result<u32> {
        self.check_level(from)?;
        self.check_level(to)?;
        if to < from {
            bail!(Argument, "cannot embed level {from} into lower level {to}");
        }
        self.embed[from - 1][to - 1]
            .get(value as usize)
            .copied()
            .ok_or_else(|| crate::Error::Argument(format!("value {value} outside level {from}")))
    }

    pub fn embed(&self, x: &FieldElement, to_level: usize) -> Result<FieldElement> {
        self.check_member(x)?;
        let value = self.embed_value(x.value, x.level, to_level)?;
        self.element(to_level, value)
    }

    fn lift_pair(&self, x: &FieldElement, y: &FieldElement) -> Result<(usize, u32, u32)> {
        self.check_member(x)?;
        self.check_member(y)?;
        let level = x.level.max(y.level);
        Ok((
            level,
            self.embed_value(x.value, x.level, level)?,
            self.embed_value(y.value, y.level, level)?,
        ))
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        let (level, a, b) = self.lift_pair(x, y)?;
        self.element(level, self.levels[level - 1].add(a, b))
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        let (level, a, b) = self.lift_pair(x, y)?;
        self.element(level, self.levels[level - 1].sub(a, b))
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        let (level, a, b) = self.lift_pair(x, y)?;
        self.element(level, self.levels[level - 1].mul(a, b))
    }

    pub fn neg(&self, x: &FieldElement) -> Result<FieldElement> {
        self.check_member(x)?;
        self.element(x.level, self.levels[x.level - 1].neg(x.value))
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        self.check_member(x)?;
        self.element(x.level, self.levels[x.level - 1].inv(x.value)?)
    }

    pub fn pow(&self, x: &FieldElement, e: i64) -> Result<FieldElement> {
        self.check_member(x)?;
        self.element(x.level, self.levels[x.level - 1].pow(x.value, e)?)
    }

    /// `x^{p^k}`.
    pub fn frobenius(&self, x: &FieldElement, k: u64) -> Result<FieldElement> {
        self.check_member(x)?;
        self.element(x.level, self.levels[x.level - 1].frobenius(x.value, k))
    }

    pub fn multiplicative_order(&self, x: &FieldElement) -> Result<u64> {
        self.check_member(x)?;
        self.levels[x.level - 1].multiplicative_order(x.value)
    }

    pub fn enumerate(&self, level: usize) -> Result<Vec<FieldElement>> {
        let f = self.field(level)?;
        f.elements().map(|v| self.element(level, v)).collect()
    }

    pub fn multiplicative_generator(&self, level: usize) -> Result<FieldElement> {
        let g = self.field(level)?.primitive_element();
        self.element(level, g)
    }

    pub fn modulus(&self, level: usize) -> Result<Vec<u32>> {
        Ok(self.field(level)?.modulus().to_vec())
    }
}

/// Image table of `lower` inside `upper`, determined by the least root of
/// the lower modulus.
fn embedding_table(lower: &GaloisField, upper: &GaloisField) -> Result<Vec<u32>> {
    if upper.degree() % lower.degree() != 0 {
        bail!(
            Consistency,
            "degree {} does not divide {}",
            lower.degree(),
            upper.degree()
        );
    }
    let root = upper
        .elements()
        .find(|&a| upper.eval_prime_poly(lower.modulus(), a) == 0)
        .ok_or_else(|| crate::Error::Consistency("lower modulus has no root".into()))?;
    let powers: Vec<u32> = (0..lower.degree())
        .map(|i| upper.pow_u(root, i as u64))
        .collect();
    Ok(lower
        .elements()
        .map(|v| {
            lower
                .coords(v)
                .iter()
                .zip(&powers)
                .fold(0u32, |acc, (&c, &r)| upper.add(acc, upper.mul(c, r)))
        })
        .collect())
}
