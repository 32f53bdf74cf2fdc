//! Text syntax: rational literals, `x`, `y`, `+ - * ^` and parentheses.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::BivariatePolynomial;
use super::CurveError;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> CurveError {
        CurveError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<BivariatePolynomial, CurveError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<BivariatePolynomial, CurveError> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BivariatePolynomial, CurveError> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<BivariatePolynomial, CurveError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let Some(text) = self.digits().map(str::to_owned) else {
            return Err(self.error("expected an exponent"));
        };
        let n: u32 = text.parse().map_err(|_| CurveError::Parse {
            position: at,
            message: format!("exponent {text} is too large"),
        })?;
        base.checked_pow(n).map_err(|_| CurveError::Parse {
            position: at,
            message: format!("exponent {n} exceeds the degree limit"),
        })
    }

    fn atom(&mut self) -> Result<BivariatePolynomial, CurveError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(BivariatePolynomial::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BivariatePolynomial::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().unwrap().parse().unwrap();
                let save = self.pos;
                let mut den = BigInt::from(1);
                if self.eat(b'/') {
                    match self.digits() {
                        Some(d) => den = d.parse().unwrap(),
                        None => {
                            self.pos = save;
                            return Err(self.error("expected a denominator after '/'"));
                        }
                    }
                    if den.is_zero() {
                        self.pos = save;
                        return Err(self.error("zero denominator"));
                    }
                }
                Ok(BivariatePolynomial::constant(BigRational::new(num, den)))
            }
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

pub fn parse_poly(text: &str) -> Result<BivariatePolynomial, CurveError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn grammar_examples() {
        let f = parse_poly("y^3 - x^2").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.coeff(0, 3), r(1, 1));
        assert_eq!(f.coeff(2, 0), r(-1, 1));
        assert_eq!(parse_poly("(y^3-x^2)^2 - x^3*y").unwrap().len(), 4);
        let f = parse_poly("3/2*x").unwrap();
        assert_eq!(f.coeff(1, 0), r(3, 2));
        assert_eq!(parse_poly("-(x - 1)*(x + 1)").unwrap().to_string(), "-x^2 + 1");
    }

    #[test]
    fn errors_carry_positions() {
        let CurveError::Parse { position, .. } = parse_poly("x + * y").unwrap_err() else { panic!() };
        assert_eq!(position, 4);
        let CurveError::Parse { position, .. } = parse_poly("(x + y").unwrap_err() else { panic!() };
        assert_eq!(position, 6);
        assert!(parse_poly("x^99999999999").is_err());
        assert!(parse_poly("x^100000").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("x y").is_err());
    }
}
