//! Elements of the ordered value groups ℤ, ℤ² (lexicographic), ℚ and ℚ(√d),
//! plus continued fractions and the generalized Euclidean algorithm over them.

mod cf;
mod quadratic;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use cf::{
    cf_expand, cf_fold, cf_recurrence, recurrence_terms, ContinuedFraction, IntPair, EuclidStep, EuclidWalk, Quotient, Tail,
    DEFAULT_DIGIT_BUDGET,
};
pub use quadratic::QuadraticNumber;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ValueKind {
    Integer,
    LexPair,
    Rational,
    Quadratic,
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ValueKind::Integer => "integer",
            ValueKind::LexPair => "lex pair",
            ValueKind::Rational => "rational",
            ValueKind::Quadratic => "quadratic",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValueError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative radicand {0}")]
    NegativeRadicand(BigInt),
    #[error("radicands {0} and {1} cannot be mixed")]
    IncompatibleRadicands(BigInt, BigInt),
    #[error("cannot combine {0} value with {1} value")]
    KindMismatch(ValueKind, ValueKind),
    #[error("denominator must be positive")]
    NonPositiveDenominator,
    #[error("numerator must be non-negative")]
    NegativeNumerator,
    #[error("expansion did not close within {0} digits")]
    BudgetExhausted(usize),
    #[error("cannot fold a continued fraction with an infinite tail")]
    InfiniteTail,
    #[error("the recurrence needs at least two digits, got {0}")]
    TooFewDigits(usize),
    #[error("malformed value {0:?}")]
    Malformed(String),
}

/// An element of one of the four value groups.
///
/// Integers mix freely with rationals and quadratic numbers (they embed in
/// ℚ ⊂ ℚ(√d)); lex pairs only combine with lex pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrderedValue {
    Integer(BigInt),
    LexPair(BigInt, BigInt),
    Rational(BigRational),
    Quadratic(QuadraticNumber),
}

impl From<i64> for OrderedValue {
    fn from(n: i64) -> Self {
        OrderedValue::Integer(n.into())
    }
}

impl From<BigInt> for OrderedValue {
    fn from(n: BigInt) -> Self {
        OrderedValue::Integer(n)
    }
}

impl From<BigRational> for OrderedValue {
    fn from(r: BigRational) -> Self {
        OrderedValue::Rational(r)
    }
}

impl From<QuadraticNumber> for OrderedValue {
    fn from(q: QuadraticNumber) -> Self {
        OrderedValue::real(q)
    }
}

impl OrderedValue {
    pub fn pair(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        OrderedValue::LexPair(a.into(), b.into())
    }

    pub fn rational(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, ValueError> {
        let q = q.into();
        if q.is_zero() {
            return Err(ValueError::ZeroDenominator);
        }
        Ok(OrderedValue::Rational(BigRational::new(p.into(), q)))
    }

    /// Wraps a real quadratic number, collapsing rationals to `Rational`.
    pub fn real(q: QuadraticNumber) -> Self {
        match q.to_rational() {
            Some(r) => OrderedValue::Rational(r),
            None => OrderedValue::Quadratic(q),
        }
    }

    pub fn kind(&self) -> ValueKind {
        match self {
            OrderedValue::Integer(_) => ValueKind::Integer,
            OrderedValue::LexPair(..) => ValueKind::LexPair,
            OrderedValue::Rational(_) => ValueKind::Rational,
            OrderedValue::Quadratic(_) => ValueKind::Quadratic,
        }
    }

    /// The additive identity of the group `kind` lives in.
    pub fn zero_of(kind: ValueKind) -> Self {
        match kind {
            ValueKind::LexPair => OrderedValue::pair(0, 0),
            ValueKind::Rational => OrderedValue::Rational(BigRational::zero()),
            _ => OrderedValue::Integer(BigInt::zero()),
        }
    }

    pub fn is_real(&self) -> bool {
        !matches!(self, OrderedValue::LexPair(..))
    }

    /// Real value as a quadratic number (`None` for lex pairs).
    pub fn to_real(&self) -> Option<QuadraticNumber> {
        match self {
            OrderedValue::Integer(n) => Some(QuadraticNumber::from_integer(n.clone())),
            OrderedValue::Rational(r) => Some(QuadraticNumber::from_rational(r.clone())),
            OrderedValue::Quadratic(q) => Some(q.clone()),
            OrderedValue::LexPair(..) => None,
        }
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            OrderedValue::Integer(n) => Some(n),
            _ => None,
        }
    }

    /// Integer value of an integer, or of a rational / quadratic with no
    /// fractional or irrational part.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            OrderedValue::Integer(n) => Some(n.clone()),
            OrderedValue::Rational(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            OrderedValue::Integer(n) => n.is_zero(),
            OrderedValue::LexPair(a, b) => a.is_zero() && b.is_zero(),
            OrderedValue::Rational(r) => r.is_zero(),
            OrderedValue::Quadratic(q) => q.is_zero(),
        }
    }

    /// Sign in the group order.
    pub fn signum(&self) -> Ordering {
        let zero = BigInt::zero();
        match self {
            OrderedValue::Integer(n) => n.cmp(&zero),
            OrderedValue::LexPair(a, b) => a.cmp(&zero).then(b.cmp(&zero)),
            OrderedValue::Rational(r) => r.numer().cmp(&zero),
            OrderedValue::Quadratic(q) => q.signum(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn neg(&self) -> Self {
        match self {
            OrderedValue::Integer(n) => OrderedValue::Integer(-n),
            OrderedValue::LexPair(a, b) => OrderedValue::LexPair(-a, -b),
            OrderedValue::Rational(r) => OrderedValue::Rational(-r),
            OrderedValue::Quadratic(q) => OrderedValue::Quadratic(q.neg()),
        }
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self.is_real() == other.is_real()
    }

    fn mismatch(&self, other: &Self) -> ValueError {
        ValueError::KindMismatch(self.kind(), other.kind())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ValueError> {
        use OrderedValue::*;
        Ok(match (self, other) {
            (Integer(a), Integer(b)) => Integer(a + b),
            (LexPair(a, b), LexPair(c, d)) => LexPair(a + c, b + d),
            (Rational(a), Rational(b)) => Rational(a + b),
            (Rational(a), Integer(b)) | (Integer(b), Rational(a)) => {
                Rational(a + BigRational::from_integer(b.clone()))
            }
            _ if self.is_real() && other.is_real() => {
                let (x, y) = (self.to_real().unwrap(), other.to_real().unwrap());
                OrderedValue::real(x.checked_add(&y)?)
            }
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ValueError> {
        self.checked_add(&other.neg())
    }

    /// Multiplication by an integer scalar.
    pub fn scale(&self, k: &BigInt) -> Self {
        match self {
            OrderedValue::Integer(n) => OrderedValue::Integer(n * k),
            OrderedValue::LexPair(a, b) => OrderedValue::LexPair(a * k, b * k),
            OrderedValue::Rational(r) => OrderedValue::Rational(r * BigRational::from_integer(k.clone())),
            OrderedValue::Quadratic(q) => OrderedValue::real(q.scale(k)),
        }
    }

    /// Exact comparison of compatible values.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, ValueError> {
        use OrderedValue::*;
        match (self, other) {
            (Integer(a), Integer(b)) => Ok(a.cmp(b)),
            (LexPair(a, b), LexPair(c, d)) => Ok(a.cmp(c).then(b.cmp(d))),
            (Rational(a), Rational(b)) => Ok(a.cmp(b)),
            _ if self.is_real() && other.is_real() => {
                let (x, y) = (self.to_real().unwrap(), other.to_real().unwrap());
                match x.try_cmp(&y) {
                    Ok(o) => Ok(o),
                    Err(ValueError::IncompatibleRadicands(..)) => Ok(cmp_distinct_radicands(&x, &y)),
                    Err(e) => Err(e),
                }
            }
            _ => Err(self.mismatch(other)),
        }
    }
}

/// Compares `x` and `y` lying in different quadratic fields. Two such
/// irrationals are never equal, so refining `floor(2^k x)` against
/// `floor(2^k y)` separates them eventually.
fn cmp_distinct_radicands(x: &QuadraticNumber, y: &QuadraticNumber) -> Ordering {
    let mut k = BigInt::one();
    loop {
        match x.scale(&k).floor().cmp(&y.scale(&k).floor()) {
            Ordering::Equal => k <<= 8,
            o => return o,
        }
    }
}

impl PartialOrd for OrderedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order: real values by magnitude (ties broken by kind so that the
/// order agrees with structural equality), and all lex pairs after all reals.
impl Ord for OrderedValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_real(), other.is_real()) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self
                .try_cmp(other)
                .expect("compatible kinds")
                .then(self.kind().cmp(&other.kind())),
        }
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for OrderedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderedValue::Integer(n) => write!(f, "{n}"),
            OrderedValue::LexPair(a, b) => write!(f, "({a},{b})"),
            OrderedValue::Rational(r) => f.write_str(&fmt_rational(r)),
            OrderedValue::Quadratic(q) => write!(f, "{q}"),
        }
    }
}

/// Parses `"12"`, `"-3/4"` or `"(a,b)"`; whitespace is ignored.
impl std::str::FromStr for OrderedValue {
    type Err = ValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ValueError::Malformed(s.to_string());
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            return Ok(OrderedValue::pair(
                a.parse::<BigInt>().map_err(|_| bad())?,
                b.parse::<BigInt>().map_err(|_| bad())?,
            ));
        }
        if let Some((p, q)) = t.split_once('/') {
            let p = p.parse::<BigInt>().map_err(|_| bad())?;
            let q = q.parse::<BigInt>().map_err(|_| bad())?;
            return OrderedValue::rational(p, q);
        }
        t.parse::<BigInt>().map(OrderedValue::Integer).map_err(|_| bad())
    }
}

/// Parses a rational literal `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational, ValueError> {
    let bad = || ValueError::Malformed(s.to_string());
    let t = s.trim();
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(ValueError::ZeroDenominator);
    }
    Ok(BigRational::new(p, q))
}

/// Greatest common divisor of a list of rationals: the largest `r > 0` with
/// every entry an integer multiple of `r`.
pub fn rational_gcd(values: &[BigRational]) -> Option<BigRational> {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for v in values {
        den = den.lcm(v.denom());
    }
    for v in values {
        num = num.gcd(&(v.numer() * (&den / v.denom())));
    }
    (!num.is_zero()).then(|| BigRational::new(num.abs(), den))
}
