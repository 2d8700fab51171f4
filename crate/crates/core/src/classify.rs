//! Classification of irreducible modules with a `B`-stable line.
//!
//! A torus character is given by its restrictions `θ|_{T_i}` to the rank-one
//! tori of a simply connected datum. The indices where the restriction has
//! bounded digit sums form `J`; the module is parabolically induced from the
//! Levi factor on `J`, where it is a twisted tensor product of restricted
//! simple modules. It is finite-dimensional exactly when `J = I`.
//!
//! Index sets in this module are 1-based, matching the JSON interface.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::gfq::MAX_TOWER_LEVEL;
use crate::limitchar::{
    classify_exact, truncate, ExactClass, GaloisTwist, SymbolicCharacter, TwistedFactor,
};
use crate::rootdata::RootDatum;

/// JSON form of a torus character: `{"restrictions": {"1": …, "2": …}}`
/// with an optional `"central"` part that is carried through unanalyzed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSpec {
    pub restrictions: BTreeMap<String, SymbolicCharacter>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central: Option<SymbolicCharacter>,
}

/// A character of the maximal torus of a simply connected group, through
/// its restrictions to the tori `T_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusCharacter {
    datum: RootDatum,
    restrictions: Vec<SymbolicCharacter>,
    central: Option<SymbolicCharacter>,
}

impl TorusCharacter {
    pub fn new(datum: &RootDatum, restrictions: Vec<SymbolicCharacter>) -> Result<Self> {
        if !datum.simply_connected() {
            bail!(
                Precondition,
                "restrictions determine the character only for simply connected data; \
                 supply a lift with report_with_lift"
            );
        }
        if restrictions.len() != datum.rank() {
            bail!(
                Argument,
                "{} restrictions given for rank {}",
                restrictions.len(),
                datum.rank()
            );
        }
        Ok(Self {
            datum: datum.clone(),
            restrictions,
            central: None,
        })
    }

    pub fn from_spec(datum: &RootDatum, spec: &CharacterSpec) -> Result<Self> {
        let rank = datum.rank();
        let mut slots: Vec<Option<SymbolicCharacter>> = vec![None; rank];
        for (key, sc) in &spec.restrictions {
            let i = match key.parse::<usize>() {
                Ok(i) if (1..=rank).contains(&i) => i,
                _ => bail!(Argument, "restriction key {key:?} is not an index in 1..={rank}"),
            };
            slots[i - 1] = Some(sc.clone());
        }
        let restrictions = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| crate::Error::Argument(format!("index {} has no restriction", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        let mut theta = Self::new(datum, restrictions)?;
        theta.central = spec.central.clone();
        Ok(theta)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    /// `θ|_{T_i}` for `i` in `1..=rank`.
    pub fn restriction(&self, i: usize) -> &SymbolicCharacter {
        &self.restrictions[i - 1]
    }

    pub fn restrictions(&self) -> &[SymbolicCharacter] {
        &self.restrictions
    }

    pub fn central(&self) -> Option<&SymbolicCharacter> {
        self.central.as_ref()
    }
}

/// `I(θ)`: indices where the restriction is trivial.
pub fn trivial_support(theta: &TorusCharacter) -> Vec<usize> {
    (1..=theta.datum.rank())
        .filter(|&i| theta.restriction(i).is_trivial())
        .collect()
}

/// `J`: indices where the restriction has bounded digit sums.
pub fn x0_support(theta: &TorusCharacter, p: u64) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in 1..=theta.datum.rank() {
        if classify_exact(theta.restriction(i), p)?.is_x0() {
            out.push(i);
        }
    }
    Ok(out)
}

/// One restricted factor: `⟨θ_k, α_i^∨⟩` for every `i ∈ I` (zero off `J`)
/// together with the twist `ω_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct X1Factor {
    pub weight: Vec<u64>,
    pub twist: GaloisTwist,
}

/// Decomposition over `J` into restricted weights with pairwise distinct
/// twists, all compared at one level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SteinbergDecomposition {
    /// Level at which twists were compared; shorter twists are extended by
    /// their integer lift.
    pub twist_level: usize,
    pub factors: Vec<X1Factor>,
}

/// Pools the digit factors of `θ|_{T_i}`, `i ∈ J`, and groups them by twist.
/// Each group is one restricted weight. The result is re-expanded and
/// compared with the truncations of every `θ|_{T_i}` up to the tower cap.
pub fn steinberg_decompose(
    theta: &TorusCharacter,
    subset: &[usize],
    p: u64,
) -> Result<SteinbergDecomposition> {
    let rank = theta.datum.rank();
    let mut per_index: Vec<(usize, Vec<TwistedFactor>)> = Vec::new();
    for &i in subset {
        if i == 0 || i > rank {
            bail!(Argument, "index {i} outside 1..={rank}");
        }
        match classify_exact(theta.restriction(i), p)? {
            ExactClass::X0 { factors } => per_index.push((i, factors)),
            ExactClass::X1 => bail!(
                Precondition,
                "restriction at index {i} has unbounded digit sums and cannot be decomposed"
            ),
        }
    }
    let twist_level = per_index
        .iter()
        .flat_map(|(_, fs)| fs.iter().map(|f| f.twist.level()))
        .fold(MAX_TOWER_LEVEL, usize::max);

    let mut groups: BTreeMap<GaloisTwist, Vec<u64>> = BTreeMap::new();
    for (i, factors) in &per_index {
        for f in factors {
            let weight = groups
                .entry(f.twist.at_level(twist_level))
                .or_insert_with(|| vec![0; rank]);
            weight[i - 1] += f.theta;
            if weight[i - 1] >= p {
                bail!(
                    Consistency,
                    "grouping by twist produced a non-restricted entry at index {i}"
                );
            }
        }
    }
    let factors: Vec<X1Factor> = groups
        .into_iter()
        .map(|(twist, weight)| X1Factor { weight, twist })
        .collect();

    for (i, _) in &per_index {
        let parts: Vec<TwistedFactor> = factors
            .iter()
            .filter(|f| f.weight[i - 1] != 0)
            .map(|f| TwistedFactor {
                theta: f.weight[i - 1],
                twist: f.twist.clone(),
            })
            .collect();
        let rebuilt = SymbolicCharacter::twisted(parts);
        for n in 1..=MAX_TOWER_LEVEL {
            if truncate(&rebuilt, p, n)? != truncate(theta.restriction(*i), p, n)? {
                bail!(
                    Consistency,
                    "decomposition does not reproduce the restriction at index {i}, level {n}"
                );
            }
        }
    }
    Ok(SteinbergDecomposition {
        twist_level,
        factors,
    })
}

/// The Levi factor on `J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Levi {
    pub simple_roots: Vec<usize>,
    pub cartan: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub schema: &'static str,
    pub p: u64,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub trivial_support: Vec<usize>,
    pub levi: Levi,
    pub factors: Vec<X1Factor>,
    pub twist_level: usize,
    pub finite_dimensional: bool,
    pub statement: String,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub lifted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub central: Option<SymbolicCharacter>,
}

pub fn report(theta: &TorusCharacter, p: u64) -> Result<ClassificationReport> {
    let rank = theta.datum.rank();
    let j = x0_support(theta, p)?;
    let trivial = trivial_support(theta);
    if !trivial.iter().all(|i| j.contains(i)) {
        bail!(Consistency, "trivial support {trivial:?} is not inside J = {j:?}");
    }
    let decomposition = steinberg_decompose(theta, &j, p)?;
    let finite_dimensional = j.len() == rank;
    let all: Vec<usize> = (1..=rank).collect();
    let decomposes_on_all = match steinberg_decompose(theta, &all, p) {
        Ok(_) => true,
        Err(crate::Error::Precondition(_)) => false,
        Err(e) => return Err(e),
    };
    if decomposes_on_all != finite_dimensional {
        bail!(Consistency, "J = I disagrees with decomposability over I");
    }
    let zero_based: Vec<usize> = j.iter().map(|i| i - 1).collect();
    let levi = Levi {
        simple_roots: j.clone(),
        cartan: theta.datum.sub_datum(&zero_based)?.cartan().to_vec(),
    };
    let statement = statement(&j, rank, &decomposition);
    Ok(ClassificationReport {
        schema: "v1",
        p,
        j,
        trivial_support: trivial,
        levi,
        factors: decomposition.factors,
        twist_level: decomposition.twist_level,
        finite_dimensional,
        statement,
        lifted: false,
        central: theta.central.clone(),
    })
}

fn statement(j: &[usize], rank: usize, d: &SteinbergDecomposition) -> String {
    let set = j.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
    let levi_part = if d.factors.is_empty() {
        "𝕃_J(θ) is one-dimensional".to_owned()
    } else {
        format!(
            "𝕃_J(θ) ≅ {} twisted restricted factors, twists pairwise distinct (equal at level {} compared)",
            d.factors.len(),
            d.twist_level
        )
    };
    if j.is_empty() {
        "𝕃(θ) = 𝕄(θ) is irreducible and infinite-dimensional".to_owned()
    } else if j.len() == rank {
        format!("𝕃(θ) ≅ 𝕃_I(θ) is finite-dimensional; {levi_part}")
    } else {
        format!("𝕃(θ) ≅ Ind_{{P_J}}^G 𝕃_J(θ) with J = {{{set}}}, infinite-dimensional; {levi_part}")
    }
}

/// Classification for a datum that need not be simply connected. The
/// restrictions to the `T_i` do not determine the character in general, so
/// the caller supplies `lift`, which must return the restrictions of a
/// chosen lift to the simply connected cover (same Cartan matrix). No lift
/// is chosen here.
pub fn report_with_lift<F>(
    datum: &RootDatum,
    restrictions: &[SymbolicCharacter],
    p: u64,
    lift: F,
) -> Result<ClassificationReport>
where
    F: FnOnce(&RootDatum, &[SymbolicCharacter]) -> Result<Vec<SymbolicCharacter>>,
{
    let cover = RootDatum::new(datum.cartan().to_vec(), true)?;
    let lifted = lift(datum, restrictions)?;
    let theta = TorusCharacter::new(&cover, lifted)?;
    let mut out = report(&theta, p)?;
    out.lifted = !datum.simply_connected();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    fn rp(l: i64) -> SymbolicCharacter {
        SymbolicCharacter::rational(l)
    }

    fn theta(name: &str, r: Vec<SymbolicCharacter>) -> TorusCharacter {
        TorusCharacter::new(&RootDatum::of_type(name).unwrap(), r).unwrap()
    }

    #[test]
    fn supports() {
        let t = theta("A2", vec![SymbolicCharacter::Trivial, SymbolicCharacter::Trivial]);
        assert_eq!(trivial_support(&t), vec![1, 2]);
        let t = theta("A2", vec![rp(1), SymbolicCharacter::Trivial]);
        assert_eq!(trivial_support(&t), vec![2]);
        let t = theta("A2", vec![rp(1), rp(3)]);
        assert!(trivial_support(&t).is_empty());
        assert_eq!(x0_support(&t, 2).unwrap(), vec![1, 2]);
        let t = theta("A2", vec![rp(-1), rp(1)]);
        assert_eq!(x0_support(&t, 2).unwrap(), vec![2]);
        let t = theta("A2", vec![rp(-1), rp(-5)]);
        assert!(x0_support(&t, 3).unwrap().is_empty());
    }

    #[test]
    fn decomposition_examples() {
        let t = theta("A2", vec![rp(1), rp(2)]);
        let d = steinberg_decompose(&t, &[1, 2], 2).unwrap();
        assert_eq!(d.factors.len(), 2);
        assert_eq!(d.factors[0].weight, vec![1, 0]);
        assert_eq!(d.factors[0].twist.at(3), 0);
        assert_eq!(d.factors[1].weight, vec![0, 1]);
        assert_eq!(d.factors[1].twist.at(3), 1);

        let t = theta("A2", vec![SymbolicCharacter::Trivial, SymbolicCharacter::Trivial]);
        assert!(steinberg_decompose(&t, &[1, 2], 2).unwrap().factors.is_empty());

        let t = theta("A1", vec![rp(5)]);
        let d = steinberg_decompose(&t, &[1], 3).unwrap();
        let got: Vec<_> = d.factors.iter().map(|f| (f.weight.clone(), f.twist.at(3))).collect();
        assert_eq!(got, vec![(vec![2], 0), (vec![1], 1)]);

        // Shared twists merge into one weight.
        let t = theta("A2", vec![rp(3), rp(1)]);
        let d = steinberg_decompose(&t, &[1, 2], 2).unwrap();
        assert_eq!(d.factors[0].weight, vec![1, 1]);
        assert_eq!(d.factors[1].weight, vec![1, 0]);

        let t = theta("A2", vec![rp(-1), rp(1)]);
        assert!(matches!(steinberg_decompose(&t, &[1, 2], 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn twisted_restrictions_compare_at_a_common_level() {
        // ω = 7 at level 4 and the integer twist 1 agree at level 3 but differ at 4.
        let f = |g: u64, level| TwistedFactor {
            theta: 1,
            twist: GaloisTwist::from_integer(g, level).unwrap(),
        };
        let t = theta(
            "A2",
            vec![SymbolicCharacter::twisted(vec![f(7, 4)]), SymbolicCharacter::twisted(vec![f(1, 3)])],
        );
        let d = steinberg_decompose(&t, &[1, 2], 2).unwrap();
        assert_eq!(d.twist_level, 4);
        assert_eq!(d.factors.len(), 2);
    }

    #[test]
    fn reports() {
        let r = report(&theta("A1", vec![rp(-1)]), 2).unwrap();
        assert!(r.j.is_empty());
        assert!(!r.finite_dimensional);
        assert!(r.statement.contains("𝕄(θ) is irreducible"));

        let r = report(&theta("A2", vec![rp(1), rp(2)]), 2).unwrap();
        assert_eq!(r.j, vec![1, 2]);
        assert!(r.finite_dimensional);
        assert_eq!(r.factors.len(), 2);

        let r = report(&theta("A2", vec![SymbolicCharacter::Trivial, rp(-1)]), 2).unwrap();
        assert_eq!(r.j, vec![1]);
        assert_eq!(r.trivial_support, vec![1]);
        assert_eq!(r.levi.cartan, vec![vec![2]]);
        assert!(r.factors.is_empty());
        assert!(!r.finite_dimensional);
        assert!(r.statement.contains("Ind_{P_J}^G"));
    }

    #[test]
    fn rank_one_dichotomy() {
        for p in [2, 3] {
            for l in -16..=16 {
                let r = report(&theta("A1", vec![rp(l)]), p).unwrap();
                assert_eq!(r.finite_dimensional, l >= 0, "p={p} λ={l}");
            }
        }
    }

    #[test]
    fn factors_are_restricted_and_distinct() {
        for p in [2u64, 3, 5] {
            for a in -20i64..40 {
                for b in [0i64, 1, 7, 26, -3] {
                    let t = theta("A2", vec![rp(a), rp(b)]);
                    let r = report(&t, p).unwrap();
                    assert!(r.trivial_support.iter().all(|i| r.j.contains(i)));
                    assert!(r.factors.iter().all(|f| f.weight.iter().all(|&w| w < p)));
                    let mut tw: Vec<_> = r.factors.iter().map(|f| &f.twist).collect();
                    tw.dedup();
                    assert_eq!(tw.len(), r.factors.len());
                }
            }
        }
    }

    #[test]
    fn json_interface() {
        let datum: RootDatum = serde_json::from_str(r#"{"cartan":[[2]],"simply_connected":true}"#).unwrap();
        let spec: CharacterSpec =
            serde_json::from_str(r#"{"restrictions":{"1":{"kind":"trivial"}}}"#).unwrap();
        let r = report(&TorusCharacter::from_spec(&datum, &spec).unwrap(), 2).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["J"], serde_json::json!([1]));
        assert_eq!(v["finite_dimensional"], serde_json::json!(true));
        assert_eq!(v["factors"], serde_json::json!([]));
        assert_eq!(v["schema"], serde_json::json!("v1"));

        let missing: CharacterSpec = serde_json::from_str(r#"{"restrictions":{}}"#).unwrap();
        assert!(TorusCharacter::from_spec(&datum, &missing).is_err());
        let bad: CharacterSpec =
            serde_json::from_str(r#"{"restrictions":{"2":{"kind":"trivial"}}}"#).unwrap();
        assert!(TorusCharacter::from_spec(&datum, &bad).is_err());
    }

    #[test]
    fn non_simply_connected_needs_a_lift() {
        let adjoint = RootDatum::new(vec![vec![2]], false).unwrap();
        assert!(matches!(
            TorusCharacter::new(&adjoint, vec![rp(2)]),
            Err(Error::Precondition(_))
        ));
        let r = report_with_lift(&adjoint, &[rp(2)], 3, |_, given| Ok(given.to_vec())).unwrap();
        assert!(r.lifted);
        assert!(r.finite_dimensional);
    }
}
