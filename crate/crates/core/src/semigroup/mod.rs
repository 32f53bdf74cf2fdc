//! Sub-semigroups of the value groups spanned by finitely many generators.

mod numerical;
mod oracle;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::delta::{DeltaCore, DeltaSequence};
use crate::values::{OrderedValue, QuadraticNumber, ValueError, ValueKind};

pub use numerical::{integer_membership, NumericalSemigroup, APERY_LIMIT};
pub use oracle::{brute_force_generate, brute_force_generate_below, BRUTE_FORCE_LIMIT};

/// Node budget for searches that are not decided by a closed-form argument.
pub const DEFAULT_SEARCH_BUDGET: usize = 200_000;

/// Largest window `enumerate` walks through element by element.
pub const WINDOW_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemigroupError {
    #[error("a semigroup needs at least one generator")]
    EmptyGenerators,
    #[error("cannot use a {1} value with {0} generators")]
    KindMismatch(ValueKind, ValueKind),
    #[error(transparent)]
    Value(#[from] ValueError),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("window is unbounded: {0}")]
    Unbounded(String),
    #[error("search budget of {0} nodes exhausted")]
    Budget(usize),
    #[error("index {0} out of range")]
    Index(usize),
}

/// Outcome of a membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Non-negative coefficients, one per generator.
    Yes(Vec<BigInt>),
    No,
    /// The search ran out of budget before deciding.
    Unknown { budget: usize },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Yes(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedSemigroup {
    generators: Vec<OrderedValue>,
}

/// How a real generator list is mapped to integer coordinates.
enum RealCoords {
    /// Rational values times a common denominator.
    Integer(Vec<BigInt>, BigInt),
    /// `(surd coefficient, rational part)` times a common denominator.
    Pairs(Vec<(BigInt, BigInt)>, BigInt, BigInt),
}

impl GeneratedSemigroup {
    pub fn new(generators: Vec<OrderedValue>) -> Result<Self, SemigroupError> {
        let first = generators.first().ok_or(SemigroupError::EmptyGenerators)?;
        if let Some(g) = generators.iter().find(|g| !g.compatible(first)) {
            return Err(SemigroupError::KindMismatch(first.kind(), g.kind()));
        }
        Ok(GeneratedSemigroup { generators })
    }

    pub fn from_integers(gens: &[i64]) -> Result<Self, SemigroupError> {
        Self::new(gens.iter().map(|&g| g.into()).collect())
    }

    pub fn generators(&self) -> &[OrderedValue] {
        &self.generators
    }

    pub fn is_lex(&self) -> bool {
        !self.generators[0].is_real()
    }

    fn check(&self, v: &OrderedValue) -> Result<(), SemigroupError> {
        if v.compatible(&self.generators[0]) {
            Ok(())
        } else {
            Err(SemigroupError::KindMismatch(self.generators[0].kind(), v.kind()))
        }
    }

    /// Integer coordinates for the real generators plus the extra values.
    fn real_coords(&self, extra: &[&OrderedValue]) -> Result<(RealCoords, Vec<QuadraticNumber>), SemigroupError> {
        let gens: Vec<QuadraticNumber> = self.generators.iter().map(|g| g.to_real().unwrap()).collect();
        let extra: Vec<QuadraticNumber> = extra.iter().map(|g| g.to_real().unwrap()).collect();
        let mut radicand: Option<BigInt> = None;
        for q in gens.iter().filter(|q| !q.is_rational()) {
            match &radicand {
                Some(d) if d != q.d() => {
                    return Err(ValueError::IncompatibleRadicands(d.clone(), q.d().clone()).into())
                }
                _ => radicand = Some(q.d().clone()),
            }
        }
        let den = gens.iter().chain(&extra).fold(BigInt::one(), |acc, q| acc.lcm(q.c()));
        let scale = |q: &QuadraticNumber| (q.b() * (&den / q.c()), q.a() * (&den / q.c()));
        let coords = match radicand {
            None => RealCoords::Integer(gens.iter().map(|q| scale(q).1).collect(), den),
            Some(d) => RealCoords::Pairs(gens.iter().map(scale).collect(), den, d),
        };
        Ok((coords, extra))
    }

    pub fn member(&self, v: &OrderedValue) -> Result<Membership, SemigroupError> {
        self.member_with_budget(v, DEFAULT_SEARCH_BUDGET)
    }

    pub fn member_with_budget(&self, v: &OrderedValue, budget: usize) -> Result<Membership, SemigroupError> {
        self.check(v)?;
        if self.is_lex() {
            let gens: Vec<(BigInt, BigInt)> = self.generators.iter().map(lex_parts).collect();
            return solve_2d(&gens, &lex_parts(v), budget);
        }
        let (coords, extra) = self.real_coords(&[v])?;
        let q = &extra[0];
        match coords {
            RealCoords::Integer(gens, den) => {
                if !q.is_rational() {
                    return Ok(Membership::No);
                }
                integer_membership(&gens, &(q.a() * (&den / q.c())))
            }
            RealCoords::Pairs(gens, den, d) => {
                if !q.is_rational() && q.d() != &d {
                    return Ok(Membership::No);
                }
                let target = (q.b() * (&den / q.c()), q.a() * (&den / q.c()));
                solve_2d(&gens, &target, budget)
            }
        }
    }

    /// Members `v` with `lo ≤ v ≤ hi`, sorted in the group order.
    pub fn enumerate(&self, lo: &OrderedValue, hi: &OrderedValue) -> Result<Vec<OrderedValue>, SemigroupError> {
        self.check(lo)?;
        self.check(hi)?;
        if lo.try_cmp(hi)?.is_gt() {
            return Ok(Vec::new());
        }
        if self.is_lex() {
            return self.enumerate_lex(lo, hi);
        }
        let (coords, ends) = self.real_coords(&[lo, hi])?;
        match coords {
            RealCoords::Integer(gens, den) => {
                let all_integer = self.generators.iter().all(|g| matches!(g, OrderedValue::Integer(_)));
                let lo = (ends[0].rational_part() * BigRational::from_integer(den.clone())).ceil().to_integer();
                let hi = (ends[1].rational_part() * BigRational::from_integer(den.clone())).floor().to_integer();
                let members = integer_window(&gens, &lo, &hi)?;
                Ok(members
                    .into_iter()
                    .map(|k| {
                        if all_integer {
                            OrderedValue::Integer(k)
                        } else {
                            OrderedValue::Rational(BigRational::new(k, den.clone()))
                        }
                    })
                    .collect())
            }
            RealCoords::Pairs(..) => self.enumerate_positive_reals(lo, hi),
        }
    }

    fn enumerate_lex(&self, lo: &OrderedValue, hi: &OrderedValue) -> Result<Vec<OrderedValue>, SemigroupError> {
        let (a, b0) = lex_parts(lo);
        let (a1, b1) = lex_parts(hi);
        if a != a1 {
            return Err(SemigroupError::Unbounded(format!(
                "lex window from {lo} to {hi} crosses first coordinates"
            )));
        }
        window_len(&b0, &b1)?;
        let mut out = Vec::new();
        let mut b = b0;
        while b <= b1 {
            let v = OrderedValue::LexPair(a.clone(), b.clone());
            match self.member(&v)? {
                Membership::Yes(_) => out.push(v),
                Membership::No => {}
                Membership::Unknown { budget } => return Err(SemigroupError::Budget(budget)),
            }
            b += 1;
        }
        Ok(out)
    }

    /// Sums of positive real generators lying in `[lo, hi]`.
    fn enumerate_positive_reals(&self, lo: &OrderedValue, hi: &OrderedValue) -> Result<Vec<OrderedValue>, SemigroupError> {
        if self.generators.iter().any(|g| !g.is_positive()) {
            return Err(SemigroupError::Unbounded(
                "irrational window with non-positive generators".into(),
            ));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![OrderedValue::from(0)];
        while let Some(v) = stack.pop() {
            for g in &self.generators {
                let w = v.checked_add(g)?;
                if w.try_cmp(hi)?.is_le() && seen.insert(w.clone()) {
                    if seen.len() > WINDOW_LIMIT {
                        return Err(SemigroupError::TooLarge("window".into()));
                    }
                    stack.push(w);
                }
            }
        }
        seen.insert(OrderedValue::from(0));
        let mut out = Vec::new();
        for v in seen {
            if v.try_cmp(lo)?.is_ge() {
                out.push(v);
            }
        }
        Ok(out)
    }
}

fn lex_parts(v: &OrderedValue) -> (BigInt, BigInt) {
    match v {
        OrderedValue::LexPair(a, b) => (a.clone(), b.clone()),
        _ => unreachable!("checked lex kind"),
    }
}

fn window_len(lo: &BigInt, hi: &BigInt) -> Result<usize, SemigroupError> {
    match (hi - lo).to_usize() {
        Some(n) if n < WINDOW_LIMIT => Ok(n + 1),
        _ => Err(SemigroupError::TooLarge(format!("window [{lo}, {hi}]"))),
    }
}

fn integer_window(gens: &[BigInt], lo: &BigInt, hi: &BigInt) -> Result<Vec<BigInt>, SemigroupError> {
    if lo > hi {
        return Ok(Vec::new());
    }
    let nonzero: Vec<i64> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.to_i64().ok_or_else(|| SemigroupError::TooLarge(g.to_string())))
        .collect::<Result<_, _>>()?;
    window_len(lo, hi)?;
    let lo = lo.to_i64().ok_or_else(|| SemigroupError::TooLarge(lo.to_string()))?;
    let hi = hi.to_i64().ok_or_else(|| SemigroupError::TooLarge(hi.to_string()))?;
    if nonzero.is_empty() {
        return Ok(if lo <= 0 && 0 <= hi { vec![BigInt::zero()] } else { Vec::new() });
    }
    let pos = nonzero.iter().any(|&g| g > 0);
    let neg = nonzero.iter().any(|&g| g < 0);
    let keep: Box<dyn Fn(i64) -> bool> = if pos && neg {
        let g = nonzero.iter().fold(0i64, |acc, x| acc.gcd(x));
        Box::new(move |v| v % g == 0)
    } else if pos {
        let s = NumericalSemigroup::new(&nonzero)?;
        Box::new(move |v| v == 0 || s.contains(v))
    } else {
        let flipped: Vec<i64> = nonzero.iter().map(|g| -g).collect();
        let s = NumericalSemigroup::new(&flipped)?;
        Box::new(move |v| v == 0 || s.contains(-v))
    };
    Ok((lo..=hi).filter(|&v| keep(v)).map(BigInt::from).collect())
}

/// Solves `Σ c_i g_i = target` over ℕ in ℤ², where the first coordinate is
/// the one the group order looks at first.
fn solve_2d(gens: &[(BigInt, BigInt)], target: &(BigInt, BigInt), budget: usize) -> Result<Membership, SemigroupError> {
    let k = gens.len();
    let flat: Vec<usize> = (0..k).filter(|&i| gens[i].0.is_zero()).collect();
    let pos: Vec<usize> = (0..k).filter(|&i| gens[i].0.is_positive()).collect();
    let neg: Vec<usize> = (0..k).filter(|&i| gens[i].0.is_negative()).collect();
    let flat_gens: Vec<BigInt> = flat.iter().map(|&i| gens[i].1.clone()).collect();

    // Decide the second coordinate once the steep generators are fixed.
    let finish = |steep: &[BigInt], idx: &[usize]| -> Result<Option<Vec<BigInt>>, SemigroupError> {
        let mut rest = target.1.clone();
        for (c, &i) in steep.iter().zip(idx) {
            rest -= c * &gens[i].1;
        }
        let flat_part = if flat.is_empty() {
            if rest.is_zero() { Some(Vec::new()) } else { None }
        } else {
            match integer_membership(&flat_gens, &rest)? {
                Membership::Yes(c) => Some(c),
                _ => None,
            }
        };
        Ok(flat_part.map(|fc| {
            let mut full = vec![BigInt::zero(); k];
            for (c, &i) in steep.iter().zip(idx) {
                full[i] = c.clone();
            }
            for (c, &i) in fc.into_iter().zip(&flat) {
                full[i] = c;
            }
            full
        }))
    };

    if pos.is_empty() && neg.is_empty() {
        if !target.0.is_zero() {
            return Ok(Membership::No);
        }
        return Ok(match finish(&[], &[])? {
            Some(c) => Membership::Yes(c),
            None => Membership::No,
        });
    }
    if pos.is_empty() || neg.is_empty() {
        let (side, sign) = if neg.is_empty() { (&pos, BigInt::one()) } else { (&neg, -BigInt::one()) };
        let weight = &target.0 * &sign;
        if weight.is_negative() {
            return Ok(Membership::No);
        }
        let steps: Vec<BigInt> = side.iter().map(|&i| gens[i].0.abs()).collect();
        let mut nodes = 0usize;
        let mut coef = vec![BigInt::zero(); side.len()];
        return compositions(&steps, 0, weight, &mut coef, &mut nodes, budget, &mut |c| finish(c, side));
    }
    bounded_search(gens, target, budget)
}

/// Depth-first walk over `c ≥ 0` with `Σ c_i·steps_i = rest`.
fn compositions(
    steps: &[BigInt],
    at: usize,
    rest: BigInt,
    coef: &mut Vec<BigInt>,
    nodes: &mut usize,
    budget: usize,
    leaf: &mut dyn FnMut(&[BigInt]) -> Result<Option<Vec<BigInt>>, SemigroupError>,
) -> Result<Membership, SemigroupError> {
    *nodes += 1;
    if *nodes > budget {
        return Ok(Membership::Unknown { budget });
    }
    if at + 1 == steps.len() {
        if !(&rest % &steps[at]).is_zero() {
            return Ok(Membership::No);
        }
        coef[at] = &rest / &steps[at];
        return Ok(match leaf(coef)? {
            Some(c) => Membership::Yes(c),
            None => Membership::No,
        });
    }
    let mut c = BigInt::zero();
    let mut left = rest;
    let mut unknown = None;
    while !left.is_negative() {
        coef[at] = c.clone();
        match compositions(steps, at + 1, left.clone(), coef, nodes, budget, leaf)? {
            Membership::Yes(w) => return Ok(Membership::Yes(w)),
            Membership::Unknown { budget } => {
                unknown = Some(budget);
                break;
            }
            Membership::No => {}
        }
        c += 1;
        left -= &steps[at];
    }
    coef[at] = BigInt::zero();
    Ok(match unknown {
        Some(budget) => Membership::Unknown { budget },
        None => Membership::No,
    })
}

/// Breadth-first search by number of summands, for generator sets whose
/// leading coordinates have both signs.
fn bounded_search(gens: &[(BigInt, BigInt)], target: &(BigInt, BigInt), budget: usize) -> Result<Membership, SemigroupError> {
    let zero = (BigInt::zero(), BigInt::zero());
    let mut seen: HashMap<(BigInt, BigInt), Vec<BigInt>> = HashMap::new();
    seen.insert(zero.clone(), vec![BigInt::zero(); gens.len()]);
    let mut frontier = vec![zero];
    while !frontier.is_empty() {
        if let Some(c) = seen.get(target) {
            return Ok(Membership::Yes(c.clone()));
        }
        let mut next = Vec::new();
        for v in &frontier {
            for (i, g) in gens.iter().enumerate() {
                let w = (&v.0 + &g.0, &v.1 + &g.1);
                if seen.contains_key(&w) {
                    continue;
                }
                let mut c = seen[v].clone();
                c[i] += 1;
                seen.insert(w.clone(), c);
                next.push(w);
                if seen.len() > budget {
                    return Ok(match seen.get(target) {
                        Some(c) => Membership::Yes(c.clone()),
                        None => Membership::Unknown { budget },
                    });
                }
            }
        }
        frontier = next;
    }
    Ok(Membership::No)
}

/// Digits `(a_0, …, a_{i-1})` of `n_i δ_i = Σ a_j δ_j` with `0 ≤ a_j < n_j`
/// for `j ≥ 1`.
pub fn expansion_digits(core: &DeltaCore, i: usize) -> Result<Vec<i64>, SemigroupError> {
    let g = core.g();
    if i == 0 || i > g {
        return Err(SemigroupError::Index(i));
    }
    let delta = core.entries();
    let mut rest = core.n(i) * delta[i];
    let mut digits = vec![0i64; i];
    for j in (1..i).rev() {
        // everything before δ_j is a multiple of d_j
        let (dj, dj1, nj) = (core.d(j), core.d(j + 1), core.n(j));
        let target = (rest / dj1).rem_euclid(nj);
        let unit = (delta[j] / dj1).rem_euclid(nj);
        let inv = unit.extended_gcd(&nj).x.rem_euclid(nj);
        let a = (target * inv).rem_euclid(nj);
        debug_assert_eq!((rest - a * delta[j]) % dj, 0);
        digits[j] = a;
        rest -= a * delta[j];
    }
    if rest < 0 || rest % delta[0] != 0 {
        return Err(SemigroupError::Index(i));
    }
    digits[0] = rest / delta[0];
    Ok(digits)
}

/// Whether the semigroup spanned by the sequence is well ordered.
pub fn is_well_ordered(seq: &DeltaSequence) -> bool {
    match seq {
        DeltaSequence::A { last, .. } => *last >= 0,
        DeltaSequence::B { .. } | DeltaSequence::C { .. } => {
            seq.generators(None).map(|g| g.iter().all(|v| !v.is_negative())).unwrap_or(false)
        }
        DeltaSequence::D(_) | DeltaSequence::E(_) => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<OrderedValue> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn check_witness(s: &GeneratedSemigroup, v: &OrderedValue, m: &Membership) {
        let Membership::Yes(c) = m else { panic!("expected member: {v}") };
        let mut acc = OrderedValue::zero_of(v.kind());
        for (g, k) in s.generators().iter().zip(c) {
            assert!(!k.is_negative());
            acc = acc.checked_add(&g.scale(k)).unwrap();
        }
        assert_eq!(acc.try_cmp(v).unwrap(), std::cmp::Ordering::Equal);
    }

    #[test]
    fn integer_examples() {
        let s = GeneratedSemigroup::from_integers(&[18, 12, 33, 4]).unwrap();
        assert_eq!(s.member(&47.into()).unwrap(), Membership::No);
        let m = s.member(&66.into()).unwrap();
        check_witness(&s, &66.into(), &m);
        let s = GeneratedSemigroup::from_integers(&[18, 12, 33, 4, -5]).unwrap();
        let m = s.member(&(-1).into()).unwrap();
        assert_eq!(m, Membership::Yes([0, 0, 0, 1, 1].map(BigInt::from).to_vec()));
    }

    #[test]
    fn lex_example() {
        let s = GeneratedSemigroup::new(vec![
            OrderedValue::pair(0, 18),
            OrderedValue::pair(0, 12),
            OrderedValue::pair(0, 33),
            OrderedValue::pair(0, 4),
            OrderedValue::pair(-1, 324),
        ])
        .unwrap();
        let v = OrderedValue::pair(-1, 336);
        let m = s.member(&v).unwrap();
        check_witness(&s, &v, &m);
        assert_eq!(s.member(&OrderedValue::pair(0, 47)).unwrap(), Membership::No);
        assert_eq!(s.member(&OrderedValue::pair(1, 0)).unwrap(), Membership::No);
        assert!(s.member(&5.into()).is_err());
    }

    #[test]
    fn lex_with_both_signs_uses_bounded_search() {
        let s = GeneratedSemigroup::new(vec![OrderedValue::pair(1, 0), OrderedValue::pair(-1, 1)]).unwrap();
        let v = OrderedValue::pair(0, 2);
        let m = s.member(&v).unwrap();
        check_witness(&s, &v, &m);
    }

    #[test]
    fn quadratic_membership() {
        let x = OrderedValue::real(QuadraticNumber::new(147, -1, 186, 2).unwrap());
        let mut gens: Vec<OrderedValue> = ["3/2", "1", "33/12", "1/3"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        gens.push(x.clone());
        let s = GeneratedSemigroup::new(gens).unwrap();
        let v = x.scale(&2.into()).checked_add(&"1/3".parse().unwrap()).unwrap();
        let m = s.member(&v).unwrap();
        check_witness(&s, &v, &m);
        let r2 = OrderedValue::real(QuadraticNumber::new(0, 1, 1, 2).unwrap());
        assert_eq!(s.member(&r2).unwrap(), Membership::No);
        assert_eq!(s.member(&"1/12".parse().unwrap()).unwrap(), Membership::No);
    }

    #[test]
    fn enumerate_examples() {
        let s = GeneratedSemigroup::from_integers(&[18, 12, 33, 4]).unwrap();
        let got = s.enumerate(&0.into(), &50.into()).unwrap();
        let want = ints(&[
            0, 4, 8, 12, 16, 18, 20, 22, 24, 26, 28, 30, 32, 33, 34, 36, 37, 38, 40, 41, 42, 44, 45, 46, 48,
            49, 50,
        ]);
        assert_eq!(got, want);
        let s = GeneratedSemigroup::from_integers(&[1]).unwrap();
        assert_eq!(s.enumerate(&0.into(), &3.into()).unwrap(), ints(&[0, 1, 2, 3]));
        let s = GeneratedSemigroup::from_integers(&[18, 12, 33, 4, -5]).unwrap();
        assert_eq!(s.enumerate(&(-3).into(), &3.into()).unwrap(), ints(&[-3, -2, -1, 0, 1, 2, 3]));
    }

    #[test]
    fn enumerate_rational_and_lex() {
        let s = GeneratedSemigroup::new(vec!["5/3".parse().unwrap(), 1.into()]).unwrap();
        let got: Vec<String> = s
            .enumerate(&0.into(), &"10/3".parse().unwrap())
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(got, ["0", "1", "5/3", "2", "8/3", "3", "10/3"]);
        let s = GeneratedSemigroup::new(vec![OrderedValue::pair(0, 3), OrderedValue::pair(-1, 0)]).unwrap();
        assert!(s.enumerate(&OrderedValue::pair(-1, 0), &OrderedValue::pair(0, 0)).is_err());
        assert_eq!(
            s.enumerate(&OrderedValue::pair(-1, 0), &OrderedValue::pair(-1, 4)).unwrap(),
            vec![OrderedValue::pair(-1, 0), OrderedValue::pair(-1, 3)]
        );
    }

    #[test]
    fn digits_of_example_core() {
        let core = DeltaCore::new(&[18, 12, 33, 4]).unwrap();
        assert_eq!(expansion_digits(&core, 1).unwrap(), vec![2]);
        assert_eq!(expansion_digits(&core, 2).unwrap(), vec![3, 1]);
        assert_eq!(expansion_digits(&core, 3).unwrap(), vec![0, 1, 0]);
        assert!(expansion_digits(&core, 4).is_err());
    }
}
