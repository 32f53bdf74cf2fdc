//! Approximate roots `q_0, …, q_{g+1}` of the curve attached to a core,
//! expansions in the q-basis and values at infinity.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::BivariatePolynomial;
use super::CurveError;
use crate::delta::{DeltaCore, DeltaSequence};
use crate::semigroup::expansion_digits;
use crate::values::OrderedValue;

/// `x^{s_0} y^{s_1} q_2^{s_2} ⋯ q_{g+1}^{s_{g+1}}` with a rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QAdicTerm {
    pub exponents: Vec<u32>,
    pub coefficient: BigRational,
}

/// `q_0 = x`, `q_1 = y` and `q_{i+1} = q_i^{n_i} − t_i ∏_{j<i} q_j^{a_{ij}}`
/// where `n_i δ_i = Σ a_{ij} δ_j`. `t` defaults to all ones.
pub fn approximate_roots(core: &DeltaCore, t: Option<&[BigRational]>) -> Result<Vec<BivariatePolynomial>, CurveError> {
    let g = core.g();
    let ones = vec![BigRational::one(); g];
    let t = t.unwrap_or(&ones);
    if t.len() != g {
        return Err(CurveError::ParameterCount { expected: g, got: t.len() });
    }
    if let Some(i) = t.iter().position(Zero::is_zero) {
        return Err(CurveError::ZeroParameter(i + 1));
    }
    if core.entries()[0] as u64 > super::MAX_DEGREE as u64 {
        return Err(CurveError::DegreeOverflow);
    }
    let mut q = vec![BivariatePolynomial::x(), BivariatePolynomial::y()];
    for i in 1..=g {
        let digits = expansion_digits(core, i)?;
        let mut tail = BivariatePolynomial::constant(t[i - 1].clone());
        for (j, &a) in digits.iter().enumerate() {
            tail = &tail * &q[j].checked_pow(a as u32)?;
        }
        let next = &q[i].checked_pow(core.n(i) as u32)? - &tail;
        let want = (core.entries()[0] / core.d(i + 1)) as u32;
        if next.total_degree() != Some(want) || next.deg_y() != Some(want) || !next.is_monic_in_y() {
            return Err(CurveError::Postcondition(format!(
                "q{} = {next} should be monic of degree {want} in y",
                i + 1
            )));
        }
        q.push(next);
    }
    Ok(q)
}

fn expand_level(f: BivariatePolynomial, roots: &[BivariatePolynomial], k: usize, exps: &mut Vec<u32>, out: &mut Vec<QAdicTerm>) -> Result<(), CurveError> {
    if k == 0 {
        for (&(i, j), c) in f.terms() {
            debug_assert_eq!(j, 0);
            exps[0] = i;
            out.push(QAdicTerm {
                exponents: exps.clone(),
                coefficient: c.clone(),
            });
        }
        exps[0] = 0;
        return Ok(());
    }
    let mut rest = f;
    let mut s = 0u32;
    while !rest.is_zero() {
        let (quot, rem) = rest.divrem_y(&roots[k])?;
        if !rem.is_zero() {
            exps[k] = s;
            expand_level(rem, roots, k - 1, exps, out)?;
        }
        rest = quot;
        s += 1;
    }
    exps[k] = 0;
    Ok(())
}

/// Writes `f` as a sum of terms in the q-basis, dividing by `q_{g+1}`, then
/// `q_g`, …, down to `q_1 = y`. Every exponent `s_i` with `1 ≤ i ≤ g` ends
/// up below `n_i`.
pub fn qadic_expand(f: &BivariatePolynomial, roots: &[BivariatePolynomial]) -> Result<Vec<QAdicTerm>, CurveError> {
    if roots.len() < 2 {
        return Err(CurveError::ParameterCount {
            expected: 2,
            got: roots.len(),
        });
    }
    let top = roots.len() - 1;
    let mut out = Vec::new();
    let mut exps = vec![0u32; roots.len()];
    expand_level(f.clone(), roots, top, &mut exps, &mut out)?;
    out.sort();
    Ok(out)
}

/// Substitutes the roots back into an expansion.
pub fn qadic_reconstruct(terms: &[QAdicTerm], roots: &[BivariatePolynomial]) -> BivariatePolynomial {
    let mut powers: HashMap<(usize, u32), BivariatePolynomial> = HashMap::new();
    let mut acc = BivariatePolynomial::zero();
    for t in terms {
        let mut m = BivariatePolynomial::constant(t.coefficient.clone());
        for (i, &s) in t.exponents.iter().enumerate() {
            if s > 0 {
                let p = powers.entry((i, s)).or_insert_with(|| roots[i].pow(s));
                m = &m * p;
            }
        }
        acc = &acc + &m;
    }
    acc
}

/// `−ν(f)` together with whether it relies on the curve being generic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinityValue {
    pub value: OrderedValue,
    /// The maximum is attained by a term involving `q_{g+1}`, or by
    /// several terms at once.
    pub generic: bool,
}

fn weights(seq: &DeltaSequence) -> Result<Vec<OrderedValue>, CurveError> {
    match seq {
        DeltaSequence::A { .. } | DeltaSequence::B { .. } => Ok(seq.generators(None)?),
        _ => Err(CurveError::UnsupportedType(seq.tag())),
    }
}

fn term_value(t: &QAdicTerm, w: &[OrderedValue]) -> Result<OrderedValue, CurveError> {
    let mut acc = OrderedValue::zero_of(w[0].kind());
    for (s, wi) in t.exponents.iter().zip(w) {
        acc = acc.checked_add(&wi.scale(&BigInt::from(*s)))?;
    }
    Ok(acc)
}

/// Maximum over the q-adic terms of `Σ s_i w_i`, with weights `δ_0, …,
/// δ_{g+1}` for type A and `(0,δ_0), …, (0,δ_g), (−1,δ_0²)` for type B.
pub fn value_at_infinity(
    f: &BivariatePolynomial,
    seq: &DeltaSequence,
    roots: &[BivariatePolynomial],
) -> Result<InfinityValue, CurveError> {
    if f.is_zero() {
        return Err(CurveError::ZeroPolynomial);
    }
    let w = weights(seq)?;
    if w.len() != roots.len() {
        return Err(CurveError::ParameterCount {
            expected: w.len(),
            got: roots.len(),
        });
    }
    let top = roots.len() - 1;
    let mut best: Option<(OrderedValue, usize, bool)> = None;
    for t in qadic_expand(f, roots)? {
        let v = term_value(&t, &w)?;
        let uses_top = t.exponents[top] > 0;
        best = Some(match best {
            None => (v, 1, uses_top),
            Some((b, n, u)) => match v.try_cmp(&b)? {
                std::cmp::Ordering::Greater => (v, 1, uses_top),
                std::cmp::Ordering::Equal => (b, n + 1, u || uses_top),
                std::cmp::Ordering::Less => (b, n, u),
            },
        });
    }
    let (value, count, uses_top) = best.unwrap();
    Ok(InfinityValue {
        value,
        generic: uses_top || count > 1,
    })
}

/// `−ν(f)` measured with the core weights only: `f` is first reduced
/// modulo `q_{g+1}`. Errors when `q_{g+1}` divides `f`.
pub fn core_value(f: &BivariatePolynomial, core: &DeltaCore, roots: &[BivariatePolynomial]) -> Result<i64, CurveError> {
    let top = roots.len() - 1;
    if top != core.g() + 1 {
        return Err(CurveError::ParameterCount {
            expected: core.g() + 2,
            got: roots.len(),
        });
    }
    let (_, rem) = f.divrem_y(&roots[top])?;
    if rem.is_zero() {
        return Err(CurveError::CommonFactor);
    }
    let delta = core.entries();
    qadic_expand(&rem, roots)?
        .iter()
        .map(|t| t.exponents[..top].iter().zip(delta).map(|(&s, &d)| s as i64 * d).sum())
        .max()
        .ok_or(CurveError::ZeroPolynomial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::parse_poly;
    use crate::delta::{build_type_a, build_type_b};

    fn roots_of(v: &[i64]) -> (DeltaCore, Vec<BivariatePolynomial>) {
        let core = DeltaCore::new(v).unwrap();
        let r = approximate_roots(&core, None).unwrap();
        (core, r)
    }

    #[test]
    fn roots_of_examples() {
        let (_, r) = roots_of(&[18, 12, 33, 4]);
        assert_eq!(r.len(), 5);
        assert_eq!(r[0], BivariatePolynomial::x());
        assert_eq!(r[2], parse_poly("y^3 - x^2").unwrap());
        assert_eq!(r[3], parse_poly("(y^3-x^2)^2 - x^3*y").unwrap());
        assert_eq!(r[4], parse_poly("((y^3-x^2)^2 - x^3*y)^3 - y").unwrap());
        let (_, r) = roots_of(&[5, 3]);
        assert_eq!(r[2], parse_poly("y^5 - x^3").unwrap());

        let core = DeltaCore::new(&[5, 3]).unwrap();
        let two = [BigRational::from_integer(2.into())];
        assert_eq!(approximate_roots(&core, Some(&two)).unwrap()[2], parse_poly("y^5 - 2*x^3").unwrap());
        assert!(approximate_roots(&core, Some(&[BigRational::zero()])).is_err());
    }

    #[test]
    fn expansions() {
        let (_, r) = roots_of(&[18, 12, 33, 4]);
        let t = qadic_expand(&r[3], &r).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].exponents, vec![0, 0, 0, 1, 0]);

        let f = parse_poly("y^6").unwrap();
        let t = qadic_expand(&f, &r).unwrap();
        assert_eq!(qadic_reconstruct(&t, &r), f);
        let shown: Vec<(Vec<u32>, String)> =
            t.iter().map(|t| (t.exponents.clone(), t.coefficient.to_string())).collect();
        assert_eq!(
            shown,
            vec![
                (vec![0, 0, 0, 1, 0], "1".to_string()),
                (vec![2, 0, 1, 0, 0], "2".to_string()),
                (vec![3, 1, 0, 0, 0], "1".to_string()),
                (vec![4, 0, 0, 0, 0], "1".to_string()),
            ]
        );
        let c = parse_poly("7/3").unwrap();
        assert_eq!(qadic_expand(&c, &r).unwrap().len(), 1);
    }

    #[test]
    fn values_at_infinity() {
        let (core, r) = roots_of(&[18, 12, 33, 4]);
        let a = build_type_a(core.clone(), -5).unwrap();
        let v = |s: &str| value_at_infinity(&parse_poly(s).unwrap(), &a, &r).unwrap();
        assert_eq!(v("x").value, 18.into());
        assert_eq!(v("x*y").value, 30.into());
        let q4 = value_at_infinity(&r[4], &a, &r).unwrap();
        assert_eq!(q4.value, (-5).into());
        assert!(q4.generic);
        assert!(!v("x*y").generic);

        let b = build_type_b(core.clone());
        let q4 = value_at_infinity(&r[4], &b, &r).unwrap();
        assert_eq!(q4.value, OrderedValue::pair(-1, 324));
        assert_eq!(value_at_infinity(&r[2], &b, &r).unwrap().value, OrderedValue::pair(0, 33));

        assert_eq!(core_value(&r[2], &core, &r).unwrap(), 33);
        assert!(core_value(&r[4], &core, &r).is_err());
    }
}
