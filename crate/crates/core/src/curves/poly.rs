//! Sparse polynomials in `x` and `y` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::CurveError;
use crate::values::OrderedValue;

/// Exponent pair `(i, j)` of `x^i y^j`.
pub type Exponent = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<Exponent, BigRational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, BigRational::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, BigRational::one())
    }

    pub fn monomial(i: u32, j: u32, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Coefficient of `y^j`, as a polynomial in `x`.
    pub fn y_coefficient(&self, j: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, b), _)| *b == j)
                .map(|(&(a, _), c)| ((a, 0), c.clone())),
        )
    }

    pub fn is_monic_in_y(&self) -> bool {
        self.deg_y().is_some_and(|d| self.y_coefficient(d) == Self::one())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e, c * k)))
    }

    fn shift(&self, di: u32, dj: u32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(i, j), c)| ((i + di, j + dj), c.clone())).collect(),
        }
    }

    pub fn checked_pow(&self, n: u32) -> Result<Self, CurveError> {
        if let Some(d) = self.total_degree() {
            if d.checked_mul(n).is_none_or(|t| t > super::MAX_DEGREE) {
                return Err(CurveError::DegreeOverflow);
            }
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, n: u32) -> Self {
        self.checked_pow(n).expect("degree within bounds")
    }

    /// Division in `y` by a polynomial monic in `y`: `self = q·div + r`
    /// with `deg_y r < deg_y div`.
    pub fn divrem_y(&self, div: &Self) -> Result<(Self, Self), CurveError> {
        if !div.is_monic_in_y() {
            return Err(CurveError::NotMonic(div.to_string()));
        }
        let dq = div.deg_y().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(d) = rem.deg_y().filter(|&d| d >= dq) {
            let lead = rem.y_coefficient(d).shift(0, d - dq);
            rem = &rem - &(&lead * div);
            quot = &quot + &lead;
        }
        Ok((quot, rem))
    }

    /// `self(a, y)` as dense coefficients in `y`, lowest degree first.
    pub fn eval_x(&self, a: &BigRational) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.deg_y().map_or(0, |d| d as usize + 1)];
        for (&(i, j), c) in &self.terms {
            out[j as usize] += c * num_traits::pow(a.clone(), i as usize);
        }
        out
    }

    /// Value of the polynomial at a point.
    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize))
            .sum()
    }

    /// Coefficients keyed by the monomial text, e.g. `"x^2*y"`.
    pub fn coefficient_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(&(i, j), c)| (monomial_text(i, j), OrderedValue::Rational(c.clone()).to_string()))
            .collect()
    }
}

fn monomial_text(i: u32, j: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    let parts: Vec<String> = [part("x", i), part("y", j)].into_iter().flatten().collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut order: Vec<(&Exponent, &BigRational)> = self.terms.iter().collect();
        order.sort_by(|(a, _), (b, _)| (b.0 + b.1, b.1).cmp(&(a.0 + a.1, a.1)));
        for (k, (&(i, j), c)) in order.into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let coeff = OrderedValue::Rational(a.clone()).to_string();
            if i == 0 && j == 0 {
                f.write_str(&coeff)?;
            } else if a.is_one() {
                f.write_str(&monomial_text(i, j))?;
            } else {
                write!(f, "{coeff}*{}", monomial_text(i, j))?;
            }
        }
        Ok(())
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(i, j), c) in &self.terms {
            for (&(k, l), d) in &rhs.terms {
                out.add_term((i + k, j + l), c * d);
            }
        }
        out
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        self.scale(&-BigRational::one())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BivariatePolynomial {
            type Output = BivariatePolynomial;
            fn $m(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl From<i64> for BivariatePolynomial {
    fn from(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> BivariatePolynomial {
        BivariatePolynomial::x()
    }
    fn y() -> BivariatePolynomial {
        BivariatePolynomial::y()
    }

    #[test]
    fn arithmetic_and_display() {
        let q2 = y().pow(3) - x().pow(2);
        assert_eq!(q2.to_string(), "y^3 - x^2");
        let q3 = q2.pow(2) - x().pow(3) * y();
        assert_eq!(q3.len(), 4);
        assert_eq!(q3.total_degree(), Some(6));
        assert_eq!(q3.deg_y(), Some(6));
        assert!(q3.is_monic_in_y());
        assert!((&q2 - &q2).is_zero());
        let half = BivariatePolynomial::constant(BigRational::new(3.into(), 2.into())) * x();
        assert_eq!(half.to_string(), "3/2*x");
        assert_eq!(BivariatePolynomial::from(-4).to_string(), "-4");
    }

    #[test]
    fn division_in_y() {
        let q2 = y().pow(3) - x().pow(2);
        let f = y().pow(7) + x() * y();
        let (q, r) = f.divrem_y(&q2).unwrap();
        assert_eq!(&(&q * &q2) + &r, f);
        assert!(r.deg_y().unwrap() < 3);
        assert!(f.divrem_y(&(x() * y())).is_err());
    }

    #[test]
    fn evaluation() {
        let f = y().pow(2) * x() + BivariatePolynomial::from(3);
        let two = BigRational::from_integer(2.into());
        let ev = f.eval_x(&two);
        assert_eq!(ev, vec![3.into(), 0.into(), 2.into()].into_iter().map(BigRational::from_integer).collect::<Vec<_>>());
        assert_eq!(f.eval(&two, &two), BigRational::from_integer(11.into()));
        assert_eq!(f.coefficient_map()["x*y^2"], "1");
    }
}
