//! `bstable lab …`: single computations on the rank-one modules.

use bstable::rank1lab::{
    build_costandard, build_induced, idempotent_split, pi_image, socle_and_head,
    span_equality_search, unipotent_fixed_points, verify_irreducibility_chain, Gate, LabRecord,
    Verdict,
};
use bstable::Error;
use clap::Subcommand;
use serde_json::{json, Value};

use crate::input::{self, CharacterInput};
use crate::CliError;

#[derive(Debug, Subcommand)]
pub enum LabCommand {
    /// Build the induced module and check its relations.
    Induced {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        level: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        character: String,
        /// Coefficient field level (defaults to `level`).
        #[arg(long)]
        coeff_level: Option<usize>,
    },
    /// Build the costandard module ∇(n) and its simple submodule.
    Costandard {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        n: usize,
    },
    /// Unique minimal and maximal submodules by exhaustive spinning.
    SocleHead {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        level: usize,
        #[arg(long, allow_hyphen_values = true)]
        character: String,
    },
    /// Hecke idempotent split for a character trivial on the torus.
    HeckeSplit {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        level: usize,
    },
    /// The image of the level-r subgroup sum in the costandard module.
    PiImage {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        character: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
    },
    /// Whether the level-r subgroup sum generates the level-t module.
    Chain {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        character: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
    },
    /// Smallest b > a at which the level-a subgroup sum generates.
    SpanSearch {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        character: String,
        #[arg(long)]
        a: usize,
        #[arg(long, default_value_t = 3)]
        cap: usize,
    },
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("lab reports serialize")
}

fn lab_record(lemma: &str, parameters: Value, verdict: Verdict, witnesses: Value) -> LabRecord {
    LabRecord {
        lemma: lemma.to_owned(),
        parameters,
        verdict,
        witnesses,
    }
}

pub fn run(cmd: &LabCommand, gate: &Gate) -> Result<LabRecord, CliError> {
    Ok(match cmd {
        LabCommand::Induced {
            p,
            level,
            character,
            coeff_level,
        } => {
            let ch = input::character(character)?;
            let p = input::prime(*p, Some(&ch))?;
            let c = coeff_level.unwrap_or(*level);
            let theta = ch.at_level(p, *level)?;
            let m = build_induced(p, *level, &theta, c)?;
            let rel = m.relation_report();
            let fixed = unipotent_fixed_points(&m).dim();
            lab_record(
                "sl2-defining-relations",
                json!({"p": p, "level": level, "coeff_level": c, "residues": theta.residues()}),
                Verdict::from_bool(rel.holds() && fixed == 2),
                json!({"dim": m.dim(), "exponent": m.exponent(), "relations": rel, "unipotent_fixed_dim": fixed}),
            )
        }
        LabCommand::Costandard { p, level, n } => {
            let cm = build_costandard(*n, *p, *level, *level)?;
            let rel = cm.relation_report();
            let l = cm.check_l_submodule(gate)?;
            let irreducible = l.irreducibility.as_ref().is_some_and(|v| v.irreducible);
            lab_record(
                "costandard-simple-submodule",
                json!({"p": p, "level": level, "n": n}),
                Verdict::from_bool(rel.holds() && l.submodule),
                json!({"dim": cm.dim(), "simple_support": cm.simple_support(), "relations": rel, "simple": l, "simple_irreducible": irreducible}),
            )
        }
        LabCommand::SocleHead { p, level, character } => {
            let ch = input::character(character)?;
            let p = input::prime(*p, Some(&ch))?;
            let theta = ch.at_level(p, *level)?;
            let m = build_induced(p, *level, &theta, *level)?;
            let params = json!({"p": p, "level": level, "residues": theta.residues()});
            match socle_and_head(&m, gate) {
                Ok(r) => lab_record("simple-socle-and-head", params, Verdict::from_bool(r.holds()), to_value(&r)),
                Err(Error::Precondition(reason)) => {
                    lab_record("simple-socle-and-head", params, Verdict::Skipped, json!({"reason": reason}))
                }
                Err(e) => return Err(e.into()),
            }
        }
        LabCommand::HeckeSplit { p, level } => {
            let theta = input::CharacterInput::Symbolic(bstable::limitchar::SymbolicCharacter::Trivial)
                .at_level(*p, *level)?;
            let m = build_induced(*p, *level, &theta, *level)?;
            let split = idempotent_split(&m, gate)?;
            lab_record(
                "hecke-idempotent-split",
                json!({"p": p, "level": level}),
                Verdict::from_bool(split.holds()),
                to_value(&split),
            )
        }
        LabCommand::PiImage { p, character, r, t } => {
            let (p, theta) = character_to(*p, character, *t)?;
            let img = pi_image(&theta, *r, *t)?;
            lab_record(
                "costandard-image-of-subgroup-sum",
                json!({"p": p, "r": r, "t": t, "residues": theta.residues()}),
                Verdict::from_bool(img.routes_agree),
                to_value(&img),
            )
        }
        LabCommand::Chain { p, character, r, t } => {
            let (p, theta) = character_to(*p, character, *t)?;
            let v = verify_irreducibility_chain(&theta, *r, *t)?;
            lab_record(
                "generation-vs-costandard-image",
                json!({"p": p, "r": r, "t": t, "residues": theta.residues()}),
                Verdict::from_bool(v.agrees()),
                to_value(&v),
            )
        }
        LabCommand::SpanSearch { p, character, a, cap } => {
            let (p, theta) = character_to(*p, character, *cap)?;
            let outcome = span_equality_search(&theta, *a, *cap)?;
            // A search that finds nothing is reported, not failed.
            lab_record(
                "subgroup-sum-span-search",
                json!({"p": p, "a": a, "cap": cap, "residues": theta.residues()}),
                Verdict::Pass,
                to_value(&outcome),
            )
        }
    })
}

fn character_to(
    p: Option<u64>,
    character: &str,
    level: usize,
) -> Result<(u64, bstable::limitchar::TruncatedCharacter), CliError> {
    let ch: CharacterInput = input::character(character)?;
    let p = input::prime(p, Some(&ch))?;
    Ok((p, ch.at_level(p, level)?))
}
