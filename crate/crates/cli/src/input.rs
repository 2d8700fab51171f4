//! Reading roots data and characters from command-line arguments.
//!
//! JSON arguments are taken inline when they start with `{` or `[`, read
//! from standard input for `-`, and otherwise read from the named file.

use std::io::Read;
use std::path::Path;

use bstable::limitchar::{truncate, SymbolicCharacter, TruncatedCharacter};
use bstable::rootdata::RootDatum;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

pub fn json_text(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_owned());
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("reading standard input: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|e| CliError::Usage(format!("reading {arg}: {e}")))
}

pub fn parse_json<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, CliError> {
    let text = json_text(arg)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid {what}: {e}")))
}

/// A Cartan type such as `A2` or `B3`, or a datum in JSON.
pub fn datum(arg: &str) -> Result<RootDatum, CliError> {
    if arg.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) && !Path::new(arg).exists() {
        return Ok(RootDatum::of_type(arg)?);
    }
    parse_json(arg, "root datum")
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CharacterInput {
    Truncated(TruncatedCharacter),
    Symbolic(SymbolicCharacter),
}

/// An integer `λ` stands for `t ↦ t^λ`; anything else is JSON, either a
/// closed form or `{"p": …, "residues": […]}`.
pub fn character(arg: &str) -> Result<CharacterInput, CliError> {
    if let Ok(lambda) = arg.trim().parse::<i64>() {
        return Ok(CharacterInput::Symbolic(SymbolicCharacter::rational(lambda)));
    }
    parse_json(arg, "character")
}

impl CharacterInput {
    pub fn prime(&self) -> Option<u64> {
        match self {
            Self::Truncated(tc) => Some(tc.p()),
            Self::Symbolic(_) => None,
        }
    }

    pub fn at_level(&self, p: u64, level: usize) -> Result<TruncatedCharacter, CliError> {
        match self {
            Self::Symbolic(sc) => Ok(truncate(sc, p, level)?),
            Self::Truncated(tc) => {
                if tc.p() != p {
                    return Err(CliError::Usage(format!("character is for p = {}, not {p}", tc.p())));
                }
                Ok(tc.restrict(level)?)
            }
        }
    }
}

/// `p` from the flag or, failing that, from a truncated character.
pub fn prime(flag: Option<u64>, character: Option<&CharacterInput>) -> Result<u64, CliError> {
    match (flag, character.and_then(CharacterInput::prime)) {
        (Some(p), Some(q)) if p != q => Err(CliError::Usage(format!("--p {p} disagrees with the character's p = {q}"))),
        (Some(p), _) | (None, Some(p)) => Ok(p),
        (None, None) => Err(CliError::Usage("--p is required".into())),
    }
}
