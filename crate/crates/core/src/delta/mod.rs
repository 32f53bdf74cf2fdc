//! δ-sequences: validation of integer cores, the derived e/m pairs and
//! maximal contact values, and the five sequence types built on top of them.

mod stream;
mod types;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::semigroup::{GeneratedSemigroup, NumericalSemigroup, SemigroupError};
use crate::values::ValueError;

pub use stream::{PrefixCertificate, TypeERule, TypeEStream};
pub use types::{
    build_type_a, build_type_b, build_type_c, build_type_c_small, build_type_d, build_type_d_degenerate,
    classify, CConstruction, Classification, DWitness, DeltaSequence, TypeD, TypeTag, DEFAULT_E_PREFIX,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeltaError {
    #[error("a δ-sequence needs at least two entries, got {0}")]
    TooShort(usize),
    #[error("entry δ{index} = {value} is not positive")]
    NonPositive { index: usize, value: i64 },
    #[error("invalid δ-sequence {}: {}", fmt_list(&.0.entries), .0.failures().join("; "))]
    Invalid(Box<ValidationReport>),
    #[error("last entry {last} exceeds the bound {bound}")]
    BoundViolated { last: String, bound: String },
    #[error("construction undefined: {0}")]
    NotIntegral(String),
    #[error("continued fraction too short: {0}")]
    CfTooShort(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("the last entry of a type D sequence must be irrational")]
    RationalLast,
    #[error("sequence is not normalized: {0}")]
    NotNormalized(String),
    #[error("no witness core found for the irrational entry")]
    NoWitness,
    #[error("integer overflow while rescaling")]
    Overflow,
    #[error("prefix up to index {0} is not available")]
    PrefixUnavailable(usize),
    #[error("{0} is neither 0 nor a prime")]
    NotPrime(u64),
    #[error("small-case parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("second core is longer than the first")]
    LengthViolation,
    #[error(transparent)]
    Value(#[from] ValueError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

pub(crate) fn fmt_list<T: fmt::Display>(v: &[T]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Result of one of the three conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionCheck {
    pub holds: bool,
    /// Smallest index at which the condition fails.
    pub first_failure: Option<usize>,
}

impl ConditionCheck {
    fn from_failure(first_failure: Option<usize>) -> Self {
        ConditionCheck {
            holds: first_failure.is_none(),
            first_failure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub entries: Vec<i64>,
    /// `d_1, …, d_{g+1}`.
    pub d: Vec<i64>,
    /// `n_1, …, n_g`.
    pub n: Vec<i64>,
    /// Conditions (1), (2), (3) in order.
    pub conditions: [ConditionCheck; 3],
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    /// One line per failing condition.
    pub fn failures(&self) -> Vec<String> {
        let g = self.entries.len() - 1;
        let mut out = Vec::new();
        if let Some(i) = self.conditions[0].first_failure {
            out.push(if i > g {
                format!("condition (1): d{} = 1 fails", g + 1)
            } else {
                format!("condition (1): n{i} > 1 fails")
            });
        }
        if let Some(i) = self.conditions[1].first_failure {
            out.push(format!("condition (2): n{i}δ{i} ∈ ⟨δ0,…,δ{}⟩ fails", i - 1));
        }
        if let Some(i) = self.conditions[2].first_failure {
            out.push(if i == 1 {
                "condition (3): δ0 > δ1 fails".to_string()
            } else {
                format!("condition (3): δ{i} < n{}δ{} fails", i - 1, i - 1)
            });
        }
        out
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d = {:?}", self.d)?;
        writeln!(f, "n = {:?}", self.n)?;
        for (k, c) in self.conditions.iter().enumerate() {
            let verdict = if c.holds { "holds" } else { "fails" };
            writeln!(f, "condition ({}): {verdict}", k + 1)?;
        }
        for line in self.failures() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Checks conditions (1), (2) and (3) on a list of positive integers.
pub fn validate_core(entries: &[i64]) -> Result<ValidationReport, DeltaError> {
    if entries.len() < 2 {
        return Err(DeltaError::TooShort(entries.len()));
    }
    if let Some((index, &value)) = entries.iter().enumerate().find(|(_, &v)| v <= 0) {
        return Err(DeltaError::NonPositive { index, value });
    }
    let g = entries.len() - 1;
    let mut d = vec![entries[0]];
    for &delta in &entries[1..] {
        d.push(d.last().unwrap().gcd(&delta));
    }
    let n: Vec<i64> = (0..g).map(|i| d[i] / d[i + 1]).collect();

    let c1 = n
        .iter()
        .position(|&x| x <= 1)
        .map(|i| i + 1)
        .or_else(|| (d[g] != 1).then_some(g + 1));

    let mut c2 = None;
    for i in 1..=g {
        let target = n[i - 1].checked_mul(entries[i]).ok_or(DeltaError::Overflow)?;
        if !NumericalSemigroup::new(&entries[..i])?.contains(target) {
            c2 = Some(i);
            break;
        }
    }

    let c3 = if entries[0] <= entries[1] {
        Some(1)
    } else {
        (2..=g).find(|&i| entries[i] >= n[i - 2] * entries[i - 1])
    };

    Ok(ValidationReport {
        entries: entries.to_vec(),
        d,
        n,
        conditions: [
            ConditionCheck::from_failure(c1),
            ConditionCheck::from_failure(c2),
            ConditionCheck::from_failure(c3),
        ],
    })
}

/// A δ-sequence in ℕ: positive integers satisfying conditions (1)–(3).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeltaCore {
    entries: Vec<i64>,
    d: Vec<i64>,
    n: Vec<i64>,
}

/// Everything the e/m formulas and maximal contact values give for a core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedInvariants {
    pub d: Vec<i64>,
    pub n: Vec<i64>,
    pub divides_case: bool,
    /// `(m_l, e_l)` pairs.
    pub em_pairs: Vec<(i64, i64)>,
    /// Maximal contact values `β̄_0, …`.
    pub beta: Vec<i64>,
}

impl DeltaCore {
    pub fn new(entries: &[i64]) -> Result<Self, DeltaError> {
        let report = validate_core(entries)?;
        if !report.is_valid() {
            return Err(DeltaError::Invalid(Box::new(report)));
        }
        Ok(DeltaCore {
            entries: report.entries,
            d: report.d,
            n: report.n,
        })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn g(&self) -> usize {
        self.entries.len() - 1
    }

    /// `d_i` for `1 ≤ i ≤ g+1`.
    pub fn d(&self, i: usize) -> i64 {
        self.d[i - 1]
    }

    /// `n_i` for `1 ≤ i ≤ g`.
    pub fn n(&self, i: usize) -> i64 {
        self.n[i - 1]
    }

    pub fn d_all(&self) -> &[i64] {
        &self.d
    }

    pub fn n_all(&self) -> &[i64] {
        &self.n
    }

    /// Whether `δ0 − δ1` divides `δ0`.
    pub fn divides_case(&self) -> bool {
        self.entries[0] % (self.entries[0] - self.entries[1]) == 0
    }

    pub fn em_pairs(&self) -> Vec<(i64, i64)> {
        let e = &self.entries;
        let g = self.g();
        if !self.divides_case() {
            let mut out = vec![(e[0], e[0] - e[1])];
            for i in 1..g {
                out.push((self.n(i) * e[i] - e[i + 1], self.d(i + 1)));
            }
            out
        } else if g == 1 {
            // {k, k-1}: the germ is smooth and the single pair is (δ0, 1)
            vec![(e[0], 1)]
        } else {
            let mut out = vec![(e[0] + self.n(1) * e[1] - e[2], e[0] - e[1])];
            for i in 1..g - 1 {
                out.push((self.n(i + 1) * e[i + 1] - e[i + 2], self.d(i + 2)));
            }
            out
        }
    }

    /// `e_l` values for `l ≥ 1` expressed through `d`, so they can be
    /// rescaled by the type C construction.
    pub(crate) fn tail_e_values(&self) -> Vec<i64> {
        self.em_pairs().iter().skip(1).map(|p| p.1).collect()
    }

    /// Maximal contact values of the germ at infinity.
    pub fn beta(&self) -> Vec<i64> {
        let e = &self.entries;
        let sq = e[0] * e[0];
        let mut out = vec![e[0] - e[1]];
        if !self.divides_case() {
            out.push(e[0]);
        }
        for i in 2..=self.g() {
            out.push(sq / self.d(i) - e[i]);
        }
        out
    }

    /// Entries divided by `δ1`.
    pub fn normalize(&self) -> Vec<BigRational> {
        let one = BigInt::from(self.entries[1]);
        self.entries
            .iter()
            .map(|&x| BigRational::new(x.into(), one.clone()))
            .collect()
    }

    pub fn derived_invariants(&self) -> DerivedInvariants {
        DerivedInvariants {
            d: self.d.clone(),
            n: self.n.clone(),
            divides_case: self.divides_case(),
            em_pairs: self.em_pairs(),
            beta: self.beta(),
        }
    }

    pub fn semigroup(&self) -> GeneratedSemigroup {
        GeneratedSemigroup::from_integers(&self.entries).expect("non-empty")
    }

    pub fn numerical_semigroup(&self) -> NumericalSemigroup {
        NumericalSemigroup::new(&self.entries).expect("positive entries")
    }
}

impl fmt::Display for DeltaCore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_list(&self.entries))
    }
}

/// Result of comparing two cores entry by entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioCheck {
    pub holds: bool,
    /// `β̄_0 / β̄'_0`.
    pub ratio: BigRational,
    /// How many indices `1 ≤ i ≤ s'−1` were compared.
    pub checked: usize,
}

/// Tests `δ_i / δ'_i = β̄_0 / β̄'_0` for `1 ≤ i ≤ s'−1`, where `s'` is the
/// last index of the second core.
pub fn ratio_check(core: &DeltaCore, other: &DeltaCore) -> Result<RatioCheck, DeltaError> {
    if other.g() > core.g() {
        return Err(DeltaError::LengthViolation);
    }
    let ratio = BigRational::new(core.beta()[0].into(), other.beta()[0].into());
    let range = 1..other.g();
    let holds = range
        .clone()
        .all(|i| BigRational::new(core.entries[i].into(), other.entries[i].into()) == ratio);
    Ok(RatioCheck {
        holds,
        ratio,
        checked: range.len(),
    })
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

/// Whether the characteristic `p` (0 or a prime) avoids `gcd(δ0, δ1)`.
pub fn char_condition(core: &DeltaCore, p: u64) -> Result<bool, DeltaError> {
    if p == 0 {
        return Ok(true);
    }
    if !is_prime(p) {
        return Err(DeltaError::NotPrime(p));
    }
    Ok(core.d(2) as u64 % p != 0)
}
