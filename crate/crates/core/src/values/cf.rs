//! Continued fractions and the generalized Euclidean algorithm.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{OrderedValue, QuadraticNumber, ValueError};

/// Digit budget used when the caller passes `None`.
pub const DEFAULT_DIGIT_BUDGET: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tail {
    Terminated,
    /// The last division had an infinite quotient.
    Infinity,
    /// Pure surd `q√d > 0` added to the last digit.
    Surd(QuadraticNumber),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    digits: Vec<BigInt>,
    tail: Tail,
}

impl ContinuedFraction {
    /// Builds a continued fraction, rewriting a terminated `⟨…,a,1⟩` as `⟨…,a+1⟩`.
    pub fn new(mut digits: Vec<BigInt>, tail: Tail) -> Self {
        if tail == Tail::Terminated && digits.len() >= 2 && digits.last().unwrap().is_one() {
            digits.pop();
            *digits.last_mut().unwrap() += 1;
        }
        ContinuedFraction { digits, tail }
    }

    pub fn digits(&self) -> &[BigInt] {
        &self.digits
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn is_terminated(&self) -> bool {
        self.tail == Tail::Terminated
    }

    /// Sum of all finite digits.
    pub fn digit_sum(&self) -> BigInt {
        self.digits.iter().sum()
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        match &self.tail {
            Tail::Terminated => {}
            Tail::Infinity => parts.push("inf".into()),
            Tail::Surd(q) => parts.push(q.to_string()),
        }
        let body = match parts.split_first() {
            None => String::new(),
            Some((head, [])) => head.clone(),
            Some((head, rest)) => format!("{head};{}", rest.join(",")),
        };
        write!(f, "<{body}>")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quotient {
    Finite(BigInt),
    Infinite,
}

/// One division `m = q·e + r` of the generalized Euclidean algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidStep {
    pub quotient: Quotient,
    pub divisor: OrderedValue,
    /// `None` once the walk has ended (zero remainder or infinite quotient).
    pub remainder: Option<OrderedValue>,
}

/// Lazily runs the Euclidean algorithm on `(m, e)` in any value group.
///
/// Over ℤ, ℚ and ℤ² the walk ends; over ℚ(√d) with an irrational ratio it
/// goes on forever and the caller decides where to stop.
#[derive(Debug, Clone)]
pub struct EuclidWalk {
    state: Option<(OrderedValue, OrderedValue)>,
}

impl EuclidWalk {
    pub fn new(m: &OrderedValue, e: &OrderedValue) -> Result<Self, ValueError> {
        check_operands(m, e)?;
        Ok(EuclidWalk {
            state: Some((m.clone(), e.clone())),
        })
    }
}

impl Iterator for EuclidWalk {
    type Item = EuclidStep;

    fn next(&mut self) -> Option<EuclidStep> {
        let (m, e) = self.state.take()?;
        let quotient = floor_quotient(&m, &e);
        let remainder = match &quotient {
            Quotient::Infinite => None,
            Quotient::Finite(q) => {
                let r = m.checked_sub(&e.scale(q)).expect("compatible operands");
                (!r.is_zero()).then_some(r)
            }
        };
        if let Some(r) = &remainder {
            self.state = Some((e.clone(), r.clone()));
        }
        Some(EuclidStep {
            quotient,
            divisor: e,
            remainder,
        })
    }
}

fn check_operands(m: &OrderedValue, e: &OrderedValue) -> Result<(), ValueError> {
    if !m.compatible(e) {
        return Err(ValueError::KindMismatch(m.kind(), e.kind()));
    }
    if !e.is_positive() {
        return Err(ValueError::NonPositiveDenominator);
    }
    if m.is_negative() {
        return Err(ValueError::NegativeNumerator);
    }
    Ok(())
}

/// Largest `q` with `q·e ≤ m`, for `e > 0` and `m ≥ 0`.
fn floor_quotient(m: &OrderedValue, e: &OrderedValue) -> Quotient {
    match (m, e) {
        (OrderedValue::Integer(a), OrderedValue::Integer(b)) => Quotient::Finite(a.div_floor(b)),
        (OrderedValue::LexPair(m1, m2), OrderedValue::LexPair(e1, e2)) => {
            if e1.is_positive() {
                let mut q = m1.div_floor(e1);
                if &q * e1 == *m1 && *m2 < &q * e2 {
                    q -= 1;
                }
                Quotient::Finite(q)
            } else if m1.is_positive() {
                // (x, y) with x > 0 exceeds every multiple of (0, z)
                Quotient::Infinite
            } else {
                Quotient::Finite(m2.div_floor(e2))
            }
        }
        _ => {
            let x = m.to_real().unwrap();
            let y = e.to_real().unwrap();
            Quotient::Finite(x.checked_div(&y).expect("compatible operands").floor())
        }
    }
}

/// Expands `num / den` as a continued fraction.
///
/// For quadratic irrational ratios the expansion stops as soon as a complete
/// quotient has the form `a + q√d` with `a ≥ 0` an integer and `q > 0`; if no
/// such quotient shows up within `budget` digits the call fails with
/// [`ValueError::BudgetExhausted`].
pub fn cf_expand(
    num: &OrderedValue,
    den: &OrderedValue,
    budget: Option<usize>,
) -> Result<ContinuedFraction, ValueError> {
    check_operands(num, den)?;
    if num.is_real() {
        let x = num.to_real().unwrap().checked_div(&den.to_real().unwrap())?;
        if !x.is_rational() {
            return expand_quadratic(x, budget.unwrap_or(DEFAULT_DIGIT_BUDGET));
        }
    }
    let mut digits = Vec::new();
    let mut tail = Tail::Terminated;
    for step in EuclidWalk::new(num, den)? {
        match step.quotient {
            Quotient::Finite(q) => digits.push(q),
            Quotient::Infinite => tail = Tail::Infinity,
        }
    }
    Ok(ContinuedFraction::new(digits, tail))
}

fn expand_quadratic(mut x: QuadraticNumber, budget: usize) -> Result<ContinuedFraction, ValueError> {
    let mut digits = Vec::new();
    while digits.len() < budget {
        let r = x.rational_part();
        if r.is_integer() && !r.is_negative() && x.surd_coefficient().is_positive() {
            let surd = x.checked_sub(&QuadraticNumber::from_rational(r.clone()))?;
            digits.push(r.to_integer());
            return Ok(ContinuedFraction::new(digits, Tail::Surd(surd)));
        }
        let a = x.floor();
        x = x.checked_sub(&QuadraticNumber::from_integer(a.clone()))?.recip()?;
        digits.push(a);
    }
    Err(ValueError::BudgetExhausted(budget))
}

/// Folds a continued fraction back into a ratio.
///
/// Terminated fractions give a reduced integer pair; surd-tailed ones give
/// `(x, 1)` with `x` the quadratic value.
pub fn cf_fold(cf: &ContinuedFraction) -> Result<(OrderedValue, OrderedValue), ValueError> {
    let (last, rest) = cf
        .digits
        .split_last()
        .ok_or_else(|| ValueError::Malformed(cf.to_string()))?;
    match &cf.tail {
        Tail::Infinity => Err(ValueError::InfiniteTail),
        Tail::Terminated => {
            let mut x = BigRational::from_integer(last.clone());
            for a in rest.iter().rev() {
                x = BigRational::from_integer(a.clone()) + x.recip();
            }
            Ok((
                OrderedValue::Integer(x.numer().clone()),
                OrderedValue::Integer(x.denom().clone()),
            ))
        }
        Tail::Surd(rho) => {
            let mut x = rho.checked_add(&QuadraticNumber::from_integer(last.clone()))?;
            for a in rest.iter().rev() {
                x = QuadraticNumber::from_integer(a.clone()).checked_add(&x.recip()?)?;
            }
            Ok((OrderedValue::real(x), OrderedValue::from(1)))
        }
    }
}

pub type IntPair = (BigInt, BigInt);

/// All terms `y_{-1}, y_0, …, y_{t-1}` of `y_i = a_{t-i}·y_{i-1} + y_{i-2}`
/// seeded with `y_{-1} = (0,1)`, `y_0 = (1,0)`; entry `k` holds `y_{k-1}`.
pub fn recurrence_terms(digits: &[BigInt]) -> Vec<IntPair> {
    let t = digits.len();
    let mut y: Vec<IntPair> = vec![(BigInt::zero(), BigInt::one()), (BigInt::one(), BigInt::zero())];
    for i in 1..t {
        let a = &digits[t - i - 1];
        let next = (a * &y[i].0 + &y[i - 1].0, a * &y[i].1 + &y[i - 1].1);
        y.push(next);
    }
    y
}

/// Runs the recurrence above and returns `(y_{t-2}, y_{t-3})`.
pub fn cf_recurrence(digits: &[BigInt]) -> Result<(IntPair, IntPair), ValueError> {
    let t = digits.len();
    if t < 2 {
        return Err(ValueError::TooFewDigits(t));
    }
    let mut y = recurrence_terms(digits);
    y.truncate(t);
    let ab = y.pop().unwrap();
    let ab_prime = y.pop().unwrap();
    Ok((ab, ab_prime))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn expand(m: i64, e: i64) -> String {
        cf_expand(&m.into(), &e.into(), None).unwrap().to_string()
    }

    #[test]
    fn integer_expansions() {
        assert_eq!(expand(21, 6), "<3;2>");
        assert_eq!(expand(62, 3), "<20;1,2>");
        assert_eq!(expand(9, 9), "<1>");
        assert_eq!(expand(2, 5), "<0;2,2>");
        assert_eq!(expand(0, 5), "<0>");
    }

    #[test]
    fn lex_pair_expansion_reaches_infinity() {
        let cf = cf_expand(&OrderedValue::pair(21, 20), &OrderedValue::pair(1, 1), None).unwrap();
        assert_eq!(cf.digits(), ints(&[20, 1]).as_slice());
        assert_eq!(cf.tail(), &Tail::Infinity);
        assert_eq!(cf.to_string(), "<20;1,inf>");
        let cf = cf_expand(&OrderedValue::pair(1, 0), &OrderedValue::pair(0, 3), None).unwrap();
        assert_eq!(cf.to_string(), "<inf>");
        let cf = cf_expand(&OrderedValue::pair(0, 62), &OrderedValue::pair(0, 3), None).unwrap();
        assert_eq!(cf.to_string(), "<20;1,2>");
    }

    #[test]
    fn lex_pair_floor_respects_second_coordinate() {
        // (4,1) = 1·(2,3) + (2,-2)
        let mut walk = EuclidWalk::new(&OrderedValue::pair(4, 1), &OrderedValue::pair(2, 3)).unwrap();
        let step = walk.next().unwrap();
        assert_eq!(step.quotient, Quotient::Finite(1.into()));
        assert_eq!(step.remainder, Some(OrderedValue::pair(2, -2)));
    }

    #[test]
    fn quadratic_expansion_stops_at_positive_surd() {
        let x = QuadraticNumber::new(39, 1, 31, 2).unwrap();
        let cf = cf_expand(&OrderedValue::real(x.clone()), &1.into(), None).unwrap();
        assert_eq!(cf.to_string(), "<1;3,2,sqrt(2)>");
        let (n, d) = cf_fold(&cf).unwrap();
        assert_eq!(n, OrderedValue::real(x));
        assert_eq!(d, OrderedValue::from(1));
    }

    #[test]
    fn quadratic_budget() {
        // (1+√5)/2 never has a non-negative integer rational part after the first step
        let phi = QuadraticNumber::new(1, 1, 2, 5).unwrap();
        let err = cf_expand(&OrderedValue::real(phi), &1.into(), Some(10)).unwrap_err();
        assert_eq!(err, ValueError::BudgetExhausted(10));
    }

    #[test]
    fn operand_errors() {
        assert!(cf_expand(&1.into(), &OrderedValue::pair(0, 1), None).is_err());
        assert_eq!(
            cf_expand(&1.into(), &0.into(), None).unwrap_err(),
            ValueError::NonPositiveDenominator
        );
        assert_eq!(
            cf_expand(&(-1).into(), &2.into(), None).unwrap_err(),
            ValueError::NegativeNumerator
        );
    }

    #[test]
    fn fold_examples() {
        let cf = ContinuedFraction::new(ints(&[3, 2]), Tail::Terminated);
        assert_eq!(cf_fold(&cf).unwrap(), (7.into(), 2.into()));
        let cf = ContinuedFraction::new(ints(&[5]), Tail::Terminated);
        assert_eq!(cf_fold(&cf).unwrap(), (5.into(), 1.into()));
        let cf = ContinuedFraction::new(ints(&[20, 1]), Tail::Infinity);
        assert_eq!(cf_fold(&cf).unwrap_err(), ValueError::InfiniteTail);
    }

    #[test]
    fn canonical_form() {
        let cf = ContinuedFraction::new(ints(&[3, 1, 1]), Tail::Terminated);
        assert_eq!(cf.digits(), ints(&[3, 2]).as_slice());
        let cf = ContinuedFraction::new(ints(&[1]), Tail::Terminated);
        assert_eq!(cf.digits(), ints(&[1]).as_slice());
    }

    #[test]
    fn recurrence_examples() {
        let pair = |a: i64, b: i64| (BigInt::from(a), BigInt::from(b));
        assert_eq!(cf_recurrence(&ints(&[20, 1, 2])).unwrap(), (pair(1, 1), pair(1, 0)));
        assert_eq!(cf_recurrence(&ints(&[3, 2])).unwrap(), (pair(1, 0), pair(0, 1)));
        assert_eq!(cf_recurrence(&ints(&[2, 3, 4])).unwrap(), (pair(3, 1), pair(1, 0)));
        assert_eq!(cf_recurrence(&ints(&[4])).unwrap_err(), ValueError::TooFewDigits(1));
        // y_{t-1} for ⟨2;2⟩ is (2,1)
        assert_eq!(recurrence_terms(&ints(&[2, 2]))[2], pair(2, 1));
    }
}
