//! The five kinds of δ-sequences and their constructors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::stream::TypeEStream;
use super::{fmt_list, DeltaCore, DeltaError};
use crate::values::{
    cf_expand, cf_recurrence, rational_gcd, recurrence_terms, ContinuedFraction, IntPair, OrderedValue,
    QuadraticNumber,
};

/// How far the witness search for type D goes (multiplier of the prefix scale).
const WITNESS_SEARCH: i64 = 256;

/// Prefix length materialized for type E when the caller does not say.
pub const DEFAULT_E_PREFIX: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    A,
    B,
    C,
    D,
    E,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// How a type C sequence was obtained from its integer core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CConstruction {
    General {
        /// Continued fraction of the last e/m pair of the core.
        cf: ContinuedFraction,
        ab: IntPair,
        ab_prime: IntPair,
        /// `A·a_t + B`.
        scale: BigInt,
    },
    /// The two- and three-entry clauses.
    Small {
        cf: ContinuedFraction,
        j: Option<i64>,
        n1: Option<i64>,
    },
}

/// A rational approximant of the irrational entry of a type D sequence
/// together with the integer core it comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DWitness {
    pub approximant: BigRational,
    pub core: DeltaCore,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeD {
    General {
        prefix: Vec<BigRational>,
        last: QuadraticNumber,
        witnesses: Vec<DWitness>,
    },
    /// `{τ, 1}` with `τ > 1` irrational.
    Degenerate { tau: QuadraticNumber },
}

#[derive(Debug, Clone)]
pub enum DeltaSequence {
    A { core: DeltaCore, last: i64 },
    B { core: DeltaCore },
    C {
        base: DeltaCore,
        entries: Vec<OrderedValue>,
        construction: CConstruction,
    },
    D(TypeD),
    E(TypeEStream),
}

pub fn build_type_a(core: DeltaCore, last: i64) -> Result<DeltaSequence, DeltaError> {
    let g = core.g();
    let bound = core.n(g) * core.entries()[g];
    if last > bound {
        return Err(DeltaError::BoundViolated {
            last: last.to_string(),
            bound: bound.to_string(),
        });
    }
    Ok(DeltaSequence::A { core, last })
}

pub fn build_type_b(core: DeltaCore) -> DeltaSequence {
    DeltaSequence::B { core }
}

fn pair_times(k: &BigInt, p: &IntPair) -> OrderedValue {
    OrderedValue::LexPair(k * &p.0, k * &p.1)
}

fn exact_div(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt, DeltaError> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(DeltaError::NotIntegral(format!("{what}: {num} is not divisible by {den}")));
    }
    Ok(q)
}

/// Type C sequence attached to `core`. Cores with `g = 1` (non-divides case)
/// or `g = 2` (divides case) go through [`build_type_c_small`].
pub fn build_type_c(core: DeltaCore) -> Result<DeltaSequence, DeltaError> {
    let g = core.g();
    let divides = core.divides_case();
    if (!divides && g == 1) || (divides && g == 2) {
        return build_type_c_small(core, None, None);
    }
    if divides && g == 1 {
        return Err(DeltaError::Unsupported(format!(
            "no type C sequence for the two-entry core {core} in the divides case"
        )));
    }
    let pairs = core.em_pairs();
    let (m, e) = *pairs.last().unwrap();
    let cf = cf_expand(&m.into(), &e.into(), None)?;
    if cf.digits().len() < 2 {
        return Err(DeltaError::CfTooShort(format!("{m}/{e} = {cf}")));
    }
    let (ab, ab_prime) = cf_recurrence(cf.digits())?;
    let a_t = cf.digits().last().unwrap().clone();
    let scale = &ab.0 * &a_t + &ab.1;
    let delta = core.entries();
    let mut entries = Vec::with_capacity(g + 1);
    for (i, &d) in delta[..g].iter().enumerate() {
        let k = exact_div(&d.into(), &scale, &format!("δ{i}"))?;
        entries.push(pair_times(&k, &ab));
    }
    let k = exact_div(&(BigInt::from(delta[g]) + &ab_prime.0 * &a_t + &ab_prime.1), &scale, "last entry")?;
    let last = pair_times(&k, &ab).checked_sub(&OrderedValue::LexPair(ab_prime.0.clone(), ab_prime.1.clone()))?;
    entries.push(last);
    Ok(DeltaSequence::C {
        base: core,
        entries,
        construction: CConstruction::General {
            cf,
            ab,
            ab_prime,
            scale,
        },
    })
}

/// The small clauses: `{δ0, δ1}` from a two-entry core in the non-divides
/// case, or `{δ0, δ1, δ2}` from a three-entry core in the divides case.
/// `j` and `n1` may be given explicitly; they are checked against
/// `δ0/(δ0−δ1)` and `δ0/gcd(δ0, δ1)`.
pub fn build_type_c_small(core: DeltaCore, j: Option<i64>, n1: Option<i64>) -> Result<DeltaSequence, DeltaError> {
    let delta = core.entries().to_vec();
    let divides = core.divides_case();
    let (m, e) = core.em_pairs()[0];
    let cf = cf_expand(&m.into(), &e.into(), None)?;
    let y = recurrence_terms(cf.digits());
    let t = cf.digits().len();
    // entry k of `y` is y_{k-1}
    let y_t1 = &y[t];
    let y_t2 = &y[t - 1];
    let as_value = |p: &IntPair| OrderedValue::LexPair(p.0.clone(), p.1.clone());
    let entries = match (core.g(), divides) {
        (1, false) => {
            if j.is_some() || n1.is_some() {
                return Err(DeltaError::ParameterMismatch(
                    "j and n1 only apply to three-entry cores".into(),
                ));
            }
            let d0 = as_value(y_t1);
            let d1 = d0.checked_sub(&as_value(y_t2))?;
            vec![d0, d1]
        }
        (2, true) => {
            let j_core = delta[0] / (delta[0] - delta[1]);
            let n1_core = delta[0] / delta[0].gcd(&delta[1]);
            if let Some(j) = j.filter(|&j| j != j_core) {
                return Err(DeltaError::ParameterMismatch(format!("j = {j}, expected {j_core}")));
            }
            if let Some(n1) = n1.filter(|&n| n != n1_core) {
                return Err(DeltaError::ParameterMismatch(format!("n1 = {n1}, expected {n1_core}")));
            }
            let d0 = pair_times(&j_core.into(), y_t2);
            let d1 = d0.checked_sub(&as_value(y_t2))?;
            let d2 = d0.checked_add(&d1.scale(&n1_core.into()))?.checked_sub(&as_value(y_t1))?;
            vec![d0, d1, d2]
        }
        _ => {
            return Err(DeltaError::Unsupported(format!(
                "the small type C clauses need a two-entry core (non-divides) or a three-entry core (divides), got {core}"
            )))
        }
    };
    Ok(DeltaSequence::C {
        base: core,
        entries,
        construction: CConstruction::Small { cf, j, n1 },
    })
}

/// Type D sequence from a normalized rational prefix `δ0, …, δ_{g−1}` and an
/// irrational last entry. Witness cores are searched among rescalings
/// `k·S·prefix ∪ {N}` with `N/(k·S)` close to the last entry.
pub fn build_type_d(prefix: Vec<BigRational>, last: QuadraticNumber) -> Result<DeltaSequence, DeltaError> {
    if last.is_rational() {
        return Err(DeltaError::RationalLast);
    }
    if !last.is_positive() {
        return Err(DeltaError::NotNormalized(format!("last entry {last} is not positive")));
    }
    if prefix.len() < 2 {
        return Err(DeltaError::TooShort(prefix.len() + 1));
    }
    if let Some((index, v)) = prefix.iter().enumerate().find(|(_, v)| !v.is_positive()) {
        return Err(DeltaError::NotNormalized(format!("δ{index} = {v} is not positive")));
    }
    if !prefix[1].is_one() {
        return Err(DeltaError::NotNormalized(format!("δ1 = {} instead of 1", prefix[1])));
    }
    let unit = rational_gcd(&prefix).unwrap();
    let scaled = integer_entries(&prefix, &unit.recip())?;
    let g = prefix.len();

    // n_{g-1} δ_{g-1} in the normalized scale
    let mut d = vec![scaled[0]];
    for &x in &scaled[1..] {
        d.push(d.last().unwrap().gcd(&x));
    }
    let n_prev = d[g - 2] / d[g - 1];
    let bound = &prefix[g - 1] * BigRational::from_integer(n_prev.into());
    if last.try_cmp(&QuadraticNumber::from_rational(bound.clone()))?.is_ge() {
        return Err(DeltaError::BoundViolated {
            last: last.to_string(),
            bound: super::super::values::OrderedValue::Rational(bound).to_string(),
        });
    }

    let base = unit.recip();
    let mut witnesses: Vec<DWitness> = Vec::new();
    for k in 2..=WITNESS_SEARCH {
        let big_k = &base * BigRational::from_integer(k.into());
        let target = last.checked_mul(&QuadraticNumber::from_rational(big_k.clone()))?.floor();
        for candidate in [target.clone(), target + 1] {
            let Some(nv) = candidate.to_i64() else { continue };
            if nv <= 0 || nv.gcd(&k) != 1 {
                continue;
            }
            let mut entries: Vec<i64> = scaled.iter().map(|x| x * k).collect();
            entries.push(nv);
            let Ok(core) = DeltaCore::new(&entries) else { continue };
            let approximant = BigRational::new(nv.into(), 1.into()) / &big_k;
            if witnesses.iter().all(|w| w.approximant != approximant) {
                witnesses.push(DWitness { approximant, core });
            }
        }
        if witnesses.len() >= 2 {
            return Ok(DeltaSequence::D(TypeD::General {
                prefix,
                last,
                witnesses,
            }));
        }
    }
    Err(DeltaError::NoWitness)
}

pub fn build_type_d_degenerate(tau: QuadraticNumber) -> Result<DeltaSequence, DeltaError> {
    if tau.is_rational() {
        return Err(DeltaError::RationalLast);
    }
    if tau.try_cmp(&QuadraticNumber::from_integer(1))?.is_le() {
        return Err(DeltaError::NotNormalized(format!("τ = {tau} must exceed 1")));
    }
    Ok(DeltaSequence::D(TypeD::Degenerate { tau }))
}

/// `values · factor` as machine integers; errors if any is not integral.
pub(crate) fn integer_entries(values: &[BigRational], factor: &BigRational) -> Result<Vec<i64>, DeltaError> {
    values
        .iter()
        .map(|v| {
            let x = v * factor;
            if !x.is_integer() {
                return Err(DeltaError::NotIntegral(format!("{v} times {factor}")));
            }
            x.to_integer().to_i64().ok_or(DeltaError::Overflow)
        })
        .collect()
}

/// e/m pairs from real or lattice entries, given the `n_i` and the `e_l`
/// for `l ≥ 1`.
fn em_from(
    delta: &[OrderedValue],
    n: &[BigInt],
    tail_e: &[OrderedValue],
    divides: bool,
) -> Result<Vec<(OrderedValue, OrderedValue)>, DeltaError> {
    let g = delta.len() - 1;
    let e0 = delta[0].checked_sub(&delta[1])?;
    let mut out = Vec::new();
    if !divides {
        out.push((delta[0].clone(), e0));
        for i in 1..g {
            let m = delta[i].scale(&n[i - 1]).checked_sub(&delta[i + 1])?;
            out.push((m, tail_e[i - 1].clone()));
        }
    } else {
        let m0 = delta[0].checked_add(&delta[1].scale(&n[0]))?.checked_sub(&delta[2])?;
        out.push((m0, e0));
        for i in 1..g.saturating_sub(1) {
            let m = delta[i + 1].scale(&n[i]).checked_sub(&delta[i + 2])?;
            out.push((m, tail_e[i - 1].clone()));
        }
    }
    Ok(out)
}

fn to_values(core: &DeltaCore) -> Vec<OrderedValue> {
    core.entries().iter().map(|&x| x.into()).collect()
}

impl DeltaSequence {
    pub fn tag(&self) -> TypeTag {
        match self {
            DeltaSequence::A { .. } => TypeTag::A,
            DeltaSequence::B { .. } => TypeTag::B,
            DeltaSequence::C { .. } => TypeTag::C,
            DeltaSequence::D(_) => TypeTag::D,
            DeltaSequence::E(_) => TypeTag::E,
        }
    }

    /// The integer core the sequence is built from, when there is one.
    pub fn core(&self) -> Option<&DeltaCore> {
        match self {
            DeltaSequence::A { core, .. } | DeltaSequence::B { core } => Some(core),
            DeltaSequence::C { base, .. } => Some(base),
            _ => None,
        }
    }

    /// Number of trailing free points, `n_g δ_g − δ_{g+1}` (type A only).
    pub fn f_free(&self) -> Option<i64> {
        match self {
            DeltaSequence::A { core, last } => {
                let g = core.g();
                Some(core.n(g) * core.entries()[g] - last)
            }
            _ => None,
        }
    }

    /// The entries of the sequence; type E is materialized up to index
    /// `e_prefix` (default 4).
    pub fn generators(&self, e_prefix: Option<usize>) -> Result<Vec<OrderedValue>, DeltaError> {
        Ok(match self {
            DeltaSequence::A { core, last } => {
                let mut v = to_values(core);
                v.push((*last).into());
                v
            }
            DeltaSequence::B { core } => {
                let d0 = core.entries()[0];
                let mut v: Vec<OrderedValue> = core.entries().iter().map(|&x| OrderedValue::pair(0, x)).collect();
                v.push(OrderedValue::pair(-1, d0 * d0));
                v
            }
            DeltaSequence::C { entries, .. } => entries.clone(),
            DeltaSequence::D(TypeD::General { prefix, last, .. }) => {
                let mut v: Vec<OrderedValue> = prefix.iter().cloned().map(OrderedValue::Rational).collect();
                v.push(OrderedValue::real(last.clone()));
                v
            }
            DeltaSequence::D(TypeD::Degenerate { tau }) => vec![OrderedValue::real(tau.clone()), 1.into()],
            DeltaSequence::E(stream) => stream
                .materialize(e_prefix.unwrap_or(DEFAULT_E_PREFIX))?
                .into_iter()
                .map(OrderedValue::Rational)
                .collect(),
        })
    }

    /// The `(m_l, e_l)` pairs whose continued fractions describe the
    /// proximity structure. Type B ends with the pair `((1,0),(0,1))`.
    pub fn em_pairs(&self, e_prefix: Option<usize>) -> Result<Vec<(OrderedValue, OrderedValue)>, DeltaError> {
        let int_pairs = |core: &DeltaCore| -> Vec<(OrderedValue, OrderedValue)> {
            core.em_pairs().into_iter().map(|(m, e)| (m.into(), e.into())).collect()
        };
        Ok(match self {
            DeltaSequence::A { core, .. } => int_pairs(core),
            DeltaSequence::B { core } => {
                let mut v: Vec<(OrderedValue, OrderedValue)> = core
                    .em_pairs()
                    .into_iter()
                    .map(|(m, e)| (OrderedValue::pair(0, m), OrderedValue::pair(0, e)))
                    .collect();
                v.push((OrderedValue::pair(1, 0), OrderedValue::pair(0, 1)));
                v
            }
            DeltaSequence::C {
                base,
                entries,
                construction,
            } => {
                let n: Vec<BigInt> = base.n_all().iter().map(|&x| x.into()).collect();
                let tail_e = match construction {
                    CConstruction::General { ab, scale, .. } => base
                        .tail_e_values()
                        .iter()
                        .map(|&e| Ok(pair_times(&exact_div(&e.into(), scale, "e value")?, ab)))
                        .collect::<Result<Vec<_>, DeltaError>>()?,
                    CConstruction::Small { .. } => Vec::new(),
                };
                let mut pairs = em_from(entries, &n, &tail_e, base.divides_case())?;
                if let CConstruction::Small { .. } = construction {
                    // the small clauses fix the single pair (y_{t-1}, y_{t-2})
                    pairs.truncate(1);
                    if base.g() == 1 {
                        pairs[0].0 = entries[0].clone();
                    }
                }
                pairs
            }
            DeltaSequence::D(TypeD::Degenerate { tau }) => {
                let t = OrderedValue::real(tau.clone());
                vec![(t.clone(), t.checked_sub(&1.into())?)]
            }
            DeltaSequence::D(TypeD::General { prefix, .. }) => {
                let g = prefix.len();
                let mut d = vec![prefix[0].clone()];
                for x in &prefix[1..] {
                    d.push(rational_gcd(&[d.last().unwrap().clone(), x.clone()]).unwrap());
                }
                let n: Vec<BigInt> = (0..g - 1).map(|i| (&d[i] / &d[i + 1]).to_integer()).collect();
                let divides = (&prefix[0] / (&prefix[0] - &prefix[1])).is_integer();
                let skip = if divides { 2 } else { 1 };
                let tail_e: Vec<OrderedValue> = d.iter().skip(skip).cloned().map(OrderedValue::Rational).collect();
                let entries = self.generators(None)?;
                em_from(&entries, &n, &tail_e, divides)?
            }
            DeltaSequence::E(stream) => {
                let cert = stream.validate_prefix(e_prefix.unwrap_or(DEFAULT_E_PREFIX))?;
                let unit = BigRational::from_integer(cert.core.entries()[1].into());
                cert.core
                    .em_pairs()
                    .into_iter()
                    .map(|(m, e)| {
                        (
                            OrderedValue::Rational(BigRational::from_integer(m.into()) / &unit),
                            OrderedValue::Rational(BigRational::from_integer(e.into()) / &unit),
                        )
                    })
                    .collect()
            }
        })
    }
}

impl fmt::Display for DeltaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.generators(None) {
            Ok(g) => {
                let s = fmt_list(&g);
                if let DeltaSequence::E(_) = self {
                    write!(f, "{},…}}", &s[..s.len() - 1])
                } else {
                    f.write_str(&s)
                }
            }
            Err(e) => write!(f, "<{e}>"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub tag: TypeTag,
    pub rationale: String,
}

/// Type tag of a constructed sequence plus the clause it satisfies.
pub fn classify(seq: &DeltaSequence) -> Classification {
    let rationale = match seq {
        DeltaSequence::A { core, last } => {
            let g = core.g();
            format!(
                "finite integer sequence: core {core} satisfies conditions (1)-(3) and δ{} = {last} ≤ n{g}δ{g} = {}",
                g + 1,
                core.n(g) * core.entries()[g]
            )
        }
        DeltaSequence::B { core } => format!(
            "core {core} placed in the second coordinate, closed by (-1,{})",
            core.entries()[0] * core.entries()[0]
        ),
        DeltaSequence::C {
            base, construction, ..
        } => match construction {
            CConstruction::General { cf, ab, ab_prime, .. } => format!(
                "lattice points from core {base}: last pair expands as {cf}, (A,B) = ({},{}), (A',B') = ({},{})",
                ab.0, ab.1, ab_prime.0, ab_prime.1
            ),
            CConstruction::Small { cf, .. } => {
                format!("small clause for core {base}: first pair expands as {cf}")
            }
        },
        DeltaSequence::D(TypeD::General { prefix, witnesses, .. }) => format!(
            "rational prefix of length {} followed by an irrational entry, certified by {} witness cores",
            prefix.len(),
            witnesses.len()
        ),
        DeltaSequence::D(TypeD::Degenerate { tau }) => format!("degenerate pair {{τ,1}} with τ = {tau} irrational"),
        DeltaSequence::E(stream) => format!(
            "infinite rational sequence; every finite prefix is a normalized δ-sequence ({})",
            stream.rule()
        ),
    };
    Classification {
        tag: seq.tag(),
        rationale,
    }
}
