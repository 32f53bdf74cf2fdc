//! Real quadratic numbers `(a + b√d)/c` with exact arithmetic and exact sign.
//!
//! A `QuadraticNumber` may also hold a plain rational (then `b = 0` and the
//! radicand is stored as 1). Everything is kept normalized: `c > 0`,
//! `gcd(a, b, c) = 1` and `d` square-free, so structural equality is value
//! equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ValueError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

/// Splits `d` into `k² · d'` with `d'` square-free.
fn square_free_part(d: &BigInt) -> (BigInt, BigInt) {
    let mut rest = d.clone();
    let mut k = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let sq = &p * &p;
        while (&rest % &sq).is_zero() {
            rest /= &sq;
            k *= &p;
        }
        p += 1;
    }
    (k, rest)
}

impl QuadraticNumber {
    /// Builds `(a + b√d)/c`, extracting square factors of `d`.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, ValueError> {
        let (a, mut b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(ValueError::ZeroDenominator);
        }
        if d.is_negative() {
            return Err(ValueError::NegativeRadicand(d));
        }
        if d.is_zero() || b.is_zero() {
            return Ok(Self::from_rational(BigRational::new(a, c)));
        }
        let (k, d) = square_free_part(&d);
        b *= k;
        if d.is_one() {
            return Ok(Self::from_rational(BigRational::new(a + b, c)));
        }
        Ok(Self::normalized(a, b, c, d))
    }

    fn normalized(mut a: BigInt, mut b: BigInt, mut c: BigInt, d: BigInt) -> Self {
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() && !g.is_zero() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        let d = if b.is_zero() { BigInt::one() } else { d };
        QuadraticNumber { a, b, c, d }
    }

    pub fn from_rational(r: BigRational) -> Self {
        let (a, c) = (r.numer().clone(), r.denom().clone());
        QuadraticNumber {
            a,
            b: BigInt::zero(),
            c,
            d: BigInt::one(),
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// Rebuilds from the `r + s√d` form.
    fn from_parts(r: BigRational, s: BigRational, d: &BigInt) -> Self {
        if s.is_zero() {
            return Self::from_rational(r);
        }
        let c = r.denom().lcm(s.denom());
        let a = r.numer() * (&c / r.denom());
        let b = s.numer() * (&c / s.denom());
        Self::normalized(a, b, c, d.clone())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    /// Radicand; 1 for rationals.
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.c.is_one()
    }

    pub fn rational_part(&self) -> BigRational {
        BigRational::new(self.a.clone(), self.c.clone())
    }

    /// Coefficient `s` of `√d` in `r + s√d`.
    pub fn surd_coefficient(&self) -> BigRational {
        BigRational::new(self.b.clone(), self.c.clone())
    }

    /// Returns the rational value when there is no irrational part.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.rational_part())
    }

    fn common_radicand(&self, other: &Self) -> Result<BigInt, ValueError> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == other.d => Ok(self.d.clone()),
            _ => Err(ValueError::IncompatibleRadicands(
                self.d.clone(),
                other.d.clone(),
            )),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ValueError> {
        let d = self.common_radicand(other)?;
        Ok(Self::from_parts(
            self.rational_part() + other.rational_part(),
            self.surd_coefficient() + other.surd_coefficient(),
            &d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ValueError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ValueError> {
        let d = self.common_radicand(other)?;
        let (r1, s1) = (self.rational_part(), self.surd_coefficient());
        let (r2, s2) = (other.rational_part(), other.surd_coefficient());
        let dd = BigRational::from_integer(d.clone());
        Ok(Self::from_parts(
            &r1 * &r2 + &s1 * &s2 * dd,
            r1 * s2 + s1 * r2,
            &d,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ValueError> {
        self.checked_mul(&other.recip()?)
    }

    pub fn recip(&self) -> Result<Self, ValueError> {
        if self.is_zero() {
            return Err(ValueError::DivisionByZero);
        }
        // c / (a + b√d) = c (a - b√d) / (a² - b²d)
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        Ok(Self::normalized(
            &self.c * &self.a,
            -(&self.c * &self.b),
            norm,
            self.d.clone(),
        ))
    }

    pub fn neg(&self) -> Self {
        QuadraticNumber {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::normalized(&self.a * k, &self.b * k, self.c.clone(), self.d.clone())
    }

    /// Exact sign of the real number.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.sign_cmp();
        let sb = self.b.sign_cmp();
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: the larger of a² and b²d wins
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * &self.d;
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, ValueError> {
        Ok(self.checked_sub(other)?.signum())
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.a.div_floor(&self.c);
        }
        // √(b²d) lies strictly between s and s + 1
        let s = (&self.b * &self.b * &self.d).sqrt();
        let lower = if self.b.is_positive() {
            &self.a + &s
        } else {
            &self.a - &s - 1
        };
        lower.div_floor(&self.c)
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return if self.c.is_one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            };
        }
        let mut num = String::new();
        if !self.a.is_zero() {
            num.push_str(&self.a.to_string());
            num.push(if self.b.is_negative() { '-' } else { '+' });
        } else if self.b.is_negative() {
            num.push('-');
        }
        let babs = self.b.abs();
        if !babs.is_one() {
            num.push_str(&format!("{babs}*"));
        }
        num.push_str(&format!("sqrt({})", self.d));
        if self.c.is_one() {
            write!(f, "{num}")
        } else if self.a.is_zero() {
            write!(f, "{num}/{}", self.c)
        } else {
            write!(f, "({num})/{}", self.c)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> QuadraticNumber {
        QuadraticNumber::new(a, b, c, d).unwrap()
    }

    #[test]
    fn normalizes_square_factors_and_signs() {
        // (2 + 2√8)/-4 = (-1 - 2√2)/2
        let x = q(2, 2, -4, 8);
        let parts = (x.a().clone(), x.b().clone(), x.c().clone(), x.d().clone());
        assert_eq!(parts, ((-1).into(), (-2).into(), 2.into(), 2.into()));
        // √9 collapses to an integer
        assert!(q(1, 1, 1, 9).is_integer());
        assert_eq!(q(1, 1, 1, 9), QuadraticNumber::from_integer(4));
        assert!(q(3, 0, 6, 5).is_rational());
    }

    #[test]
    fn paper_type_d_entry_rationalizes() {
        // (33 + 14√2) / (6 (7 + 3√2)) = (147 - √2)/186
        let num = q(33, 14, 1, 2);
        let den = q(42, 18, 1, 2);
        assert_eq!(num.checked_div(&den).unwrap(), q(147, -1, 186, 2));
        // (9 + 4√2)/(7 + 3√2) = (39 + √2)/31
        assert_eq!(
            q(9, 4, 1, 2).checked_div(&q(7, 3, 1, 2)).unwrap(),
            q(39, 1, 31, 2)
        );
    }

    #[test]
    fn sign_and_floor() {
        assert_eq!(q(-1, 1, 1, 2).signum(), Ordering::Greater);
        assert_eq!(q(2, -1, 1, 5).signum(), Ordering::Less);
        assert_eq!(q(39, 1, 31, 2).floor(), 1.into());
        assert_eq!(q(8, -1, 2, 2).floor(), 3.into());
        assert_eq!(q(-3, -1, 1, 2).floor(), (-5).into());
        assert_eq!(q(7, 0, 2, 1).floor(), 3.into());
        assert_eq!(q(-7, 0, 2, 1).floor(), (-4).into());
    }

    #[test]
    fn incompatible_radicands_are_rejected() {
        assert!(q(0, 1, 1, 2).checked_add(&q(0, 1, 1, 3)).is_err());
        assert!(q(0, 1, 1, 2).checked_add(&q(1, 0, 1, 1)).is_ok());
    }

    #[test]
    fn display() {
        assert_eq!(q(39, 1, 31, 2).to_string(), "(39+sqrt(2))/31");
        assert_eq!(q(147, -1, 186, 2).to_string(), "(147-sqrt(2))/186");
        assert_eq!(q(0, 2, 1, 3).to_string(), "2*sqrt(3)");
        assert_eq!(q(3, 0, 4, 1).to_string(), "3/4");
        assert_eq!(q(0, -1, 2, 2).to_string(), "-sqrt(2)/2");
    }
}
