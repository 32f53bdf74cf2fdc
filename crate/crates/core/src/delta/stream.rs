//! Lazily materialized infinite rational sequences (type E).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::types::integer_entries;
use super::{fmt_list, DeltaCore, DeltaError};
use crate::values::{fmt_rational, rational_gcd};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeERule {
    /// `head` followed by `δ_i = δ_{i−1}·ratio`.
    Geometric { head: Vec<BigRational>, ratio: BigRational },
    /// A fixed list; only its own prefixes can be materialized.
    Explicit(Vec<BigRational>),
}

impl fmt::Display for TypeERule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[BigRational]| fmt_list(&v.iter().map(fmt_rational).collect::<Vec<_>>());
        match self {
            TypeERule::Geometric { head, ratio } => {
                write!(f, "head {}, ratio {}", show(head), fmt_rational(ratio))
            }
            TypeERule::Explicit(v) => write!(f, "explicit {}", show(v)),
        }
    }
}

/// Proof that `δ0, …, δj` is an integer δ-sequence divided by its `δ1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCertificate {
    pub j: usize,
    pub prefix: Vec<BigRational>,
    /// The common multiplier, equal to `δ1` of the core.
    pub scale: BigRational,
    pub core: DeltaCore,
}

#[derive(Debug, Clone)]
pub struct TypeEStream {
    rule: TypeERule,
    cache: Arc<Mutex<BTreeMap<usize, PrefixCertificate>>>,
}

impl TypeEStream {
    pub fn new(rule: TypeERule) -> Result<Self, DeltaError> {
        let head = match &rule {
            TypeERule::Geometric { head, ratio } => {
                if !ratio.is_positive() {
                    return Err(DeltaError::NotNormalized(format!("ratio {} is not positive", fmt_rational(ratio))));
                }
                head
            }
            TypeERule::Explicit(v) => v,
        };
        if head.len() < 2 {
            return Err(DeltaError::TooShort(head.len()));
        }
        if let Some((i, v)) = head.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            return Err(DeltaError::NotNormalized(format!("δ{i} = {} is not positive", fmt_rational(v))));
        }
        if !head[1].is_one() {
            return Err(DeltaError::NotNormalized(format!("δ1 = {} instead of 1", fmt_rational(&head[1]))));
        }
        Ok(Self {
            rule,
            cache: Arc::default(),
        })
    }

    pub fn rule(&self) -> &TypeERule {
        &self.rule
    }

    /// `δ0, …, δj`.
    pub fn materialize(&self, j: usize) -> Result<Vec<BigRational>, DeltaError> {
        match &self.rule {
            TypeERule::Explicit(v) => v.get(..=j).map(<[_]>::to_vec).ok_or(DeltaError::PrefixUnavailable(j)),
            TypeERule::Geometric { head, ratio } => {
                let mut out: Vec<BigRational> = head.iter().take(j + 1).cloned().collect();
                while out.len() <= j {
                    let next = out.last().unwrap() * ratio;
                    out.push(next);
                }
                Ok(out)
            }
        }
    }

    /// Rescales `δ0, …, δj` to coprime integers and validates them as a core.
    pub fn validate_prefix(&self, j: usize) -> Result<PrefixCertificate, DeltaError> {
        if let Some(c) = self.cache.lock().unwrap().get(&j) {
            return Ok(c.clone());
        }
        if j == 0 {
            return Err(DeltaError::TooShort(1));
        }
        let prefix = self.materialize(j)?;
        let scale = rational_gcd(&prefix).unwrap().recip();
        let entries = integer_entries(&prefix, &scale)?;
        let core = DeltaCore::new(&entries)?;
        let cert = PrefixCertificate { j, prefix, scale, core };
        self.cache.lock().unwrap().insert(j, cert.clone());
        Ok(cert)
    }
}
