//! JSON description of a δ-sequence.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::delta::{
    build_type_a, build_type_b, build_type_c, build_type_d, build_type_d_degenerate, DeltaCore, DeltaSequence,
    TypeERule, TypeEStream,
};
use crate::values::{parse_rational, QuadraticNumber};

use super::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurdDocument {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RuleDocument {
    Geometric { head: Vec<String>, ratio: String },
    Explicit { entries: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDocument {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub core: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prefix: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surd: Option<SurdDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleDocument>,
    #[serde(rename = "char", default, skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<u64>,
}

fn rationals(v: &[String]) -> Result<Vec<BigRational>, CliError> {
    v.iter()
        .map(|s| parse_rational(s).map_err(|e| CliError::usage(format!("bad rational {s:?}: {e}"))))
        .collect()
}

impl SequenceDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| CliError::usage(format!("malformed document: {e}")))?;
        doc.check_fields()?;
        Ok(doc)
    }

    /// Compact JSON with fields in schema order.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }

    fn check_fields(&self) -> Result<(), CliError> {
        let present = [
            ("core", self.core.is_some()),
            ("last", self.last.is_some()),
            ("prefix", self.prefix.is_some()),
            ("surd", self.surd.is_some()),
            ("rule", self.rule.is_some()),
        ];
        let (required, optional): (&[&str], &[&str]) = match self.kind.as_str() {
            "A" => (&["core", "last"], &[]),
            "B" | "C" => (&["core"], &[]),
            "D" => (&["surd"], &["prefix"]),
            "E" => (&["rule"], &[]),
            other => return Err(CliError::usage(format!("unknown type {other:?}"))),
        };
        for (name, here) in present {
            if here && !required.contains(&name) && !optional.contains(&name) {
                return Err(CliError::usage(format!("field {name:?} does not belong to type {}", self.kind)));
            }
            if !here && required.contains(&name) {
                return Err(CliError::usage(format!("type {} needs the field {name:?}", self.kind)));
            }
        }
        Ok(())
    }

    /// The integer core named by the document, if any. Invalid cores are
    /// reported with exit code 2.
    pub fn core(&self) -> Result<Option<DeltaCore>, CliError> {
        self.core.as_deref().map(DeltaCore::new).transpose().map_err(CliError::from)
    }

    pub fn build(&self) -> Result<DeltaSequence, CliError> {
        Ok(match self.kind.as_str() {
            "A" => build_type_a(self.core()?.unwrap(), self.last.unwrap())?,
            "B" => build_type_b(self.core()?.unwrap()),
            "C" => build_type_c(self.core()?.unwrap())?,
            "D" => {
                let s = self.surd.as_ref().unwrap();
                let q = QuadraticNumber::new(s.a, s.b, s.c, s.d)
                    .map_err(|e| CliError::usage(format!("bad surd: {e}")))?;
                match self.prefix.as_deref() {
                    None | Some([]) => build_type_d_degenerate(q)?,
                    Some(p) => build_type_d(rationals(p)?, q)?,
                }
            }
            "E" => {
                let rule = match self.rule.as_ref().unwrap() {
                    RuleDocument::Geometric { head, ratio } => TypeERule::Geometric {
                        head: rationals(head)?,
                        ratio: rationals(std::slice::from_ref(ratio))?.remove(0),
                    },
                    RuleDocument::Explicit { entries } => TypeERule::Explicit(rationals(entries)?),
                };
                DeltaSequence::E(TypeEStream::new(rule)?)
            }
            _ => unreachable!("checked in parse"),
        })
    }
}
