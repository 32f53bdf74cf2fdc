//! Integer semigroups: Apéry-set membership for positive generators and the
//! group case for generators of both signs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{Membership, SemigroupError};

/// Largest modulus (smallest reduced generator) we build an Apéry table for.
pub const APERY_LIMIT: i64 = 1 << 22;

/// Semigroup generated by positive integers, with its Apéry set with respect
/// to the smallest generator (after dividing out the gcd).
#[derive(Debug, Clone)]
pub struct NumericalSemigroup {
    gens: Vec<i64>,
    scale: i64,
    modulus_index: usize,
    apery: Vec<i64>,
    pred: Vec<usize>,
}

impl NumericalSemigroup {
    pub fn new(gens: &[i64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        if let Some(g) = gens.iter().find(|&&g| g <= 0) {
            return Err(SemigroupError::TooLarge(format!(
                "expected positive generators, got {g}"
            )));
        }
        let scale = gens.iter().fold(0i64, |acc, &g| acc.gcd(&g));
        let reduced: Vec<i64> = gens.iter().map(|g| g / scale).collect();
        let (modulus_index, &m) = reduced
            .iter()
            .enumerate()
            .min_by_key(|(_, &g)| g)
            .unwrap();
        if m > APERY_LIMIT {
            return Err(SemigroupError::TooLarge(format!("smallest generator {m}")));
        }
        let m_us = m as usize;
        let mut apery = vec![i64::MAX; m_us];
        let mut pred = vec![usize::MAX; m_us];
        apery[0] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0i64, 0usize)));
        while let Some(Reverse((dist, r))) = heap.pop() {
            if dist > apery[r] {
                continue;
            }
            for (i, &g) in reduced.iter().enumerate() {
                let nr = ((r as i64 + g) % m) as usize;
                let nd = dist + g;
                if nd < apery[nr] {
                    apery[nr] = nd;
                    pred[nr] = i;
                    heap.push(Reverse((nd, nr)));
                }
            }
        }
        Ok(NumericalSemigroup {
            gens: gens.to_vec(),
            scale,
            modulus_index,
            apery,
            pred,
        })
    }

    pub fn generators(&self) -> &[i64] {
        &self.gens
    }

    /// gcd of the generators.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    fn modulus(&self) -> i64 {
        self.apery.len() as i64
    }

    pub fn contains(&self, v: i64) -> bool {
        if v < 0 || v % self.scale != 0 {
            return false;
        }
        let v = v / self.scale;
        v >= self.apery[(v % self.modulus()) as usize]
    }

    /// Non-negative coefficients `s` with `Σ s_i g_i = v`, if any.
    pub fn witness(&self, v: i64) -> Option<Vec<i64>> {
        if !self.contains(v) {
            return None;
        }
        let m = self.modulus();
        let v = v / self.scale;
        let mut coef = vec![0i64; self.gens.len()];
        let r = (v % m) as usize;
        coef[self.modulus_index] = (v - self.apery[r]) / m;
        let mut cur = r;
        while cur != 0 {
            let i = self.pred[cur];
            coef[i] += 1;
            let g = self.gens[i] / self.scale;
            cur = ((cur as i64 - g).rem_euclid(m)) as usize;
        }
        Some(coef)
    }

    /// Largest integer outside the semigroup; `None` when the generators
    /// share a factor (infinitely many gaps).
    pub fn frobenius(&self) -> Option<i64> {
        (self.scale == 1).then(|| self.apery.iter().max().unwrap() - self.modulus())
    }

    pub fn conductor(&self) -> Option<i64> {
        self.frobenius().map(|f| f + 1)
    }
}

fn to_i64(v: &BigInt) -> Result<i64, SemigroupError> {
    v.to_i64()
        .ok_or_else(|| SemigroupError::TooLarge(format!("value {v}")))
}

fn widen(coef: Vec<i64>) -> Vec<BigInt> {
    coef.into_iter().map(BigInt::from).collect()
}

/// Membership of `v` in the semigroup spanned by arbitrary integers.
///
/// When generators of both signs occur the semigroup is the subgroup `gℤ`
/// (for `a > 0 > -b`, `-a = (b-1)a + a(-b)`), so membership is divisibility;
/// the witness search prefers few uses of negative generators.
pub fn integer_membership(gens: &[BigInt], v: &BigInt) -> Result<Membership, SemigroupError> {
    let gens: Vec<i64> = gens.iter().map(to_i64).collect::<Result<_, _>>()?;
    let v = to_i64(v)?;
    Ok(match solve(&gens, v)? {
        Some(c) => Membership::Yes(widen(c)),
        None => Membership::No,
    })
}

fn solve(gens: &[i64], v: i64) -> Result<Option<Vec<i64>>, SemigroupError> {
    let k = gens.len();
    if v == 0 {
        return Ok(Some(vec![0; k]));
    }
    let pos: Vec<usize> = (0..k).filter(|&i| gens[i] > 0).collect();
    let neg: Vec<usize> = (0..k).filter(|&i| gens[i] < 0).collect();
    let spread = |idx: &[usize], c: Vec<i64>| {
        let mut full = vec![0i64; k];
        for (&i, ci) in idx.iter().zip(c) {
            full[i] = ci;
        }
        full
    };
    match (pos.is_empty(), neg.is_empty()) {
        (true, true) => Ok(None),
        (false, true) => {
            let s = NumericalSemigroup::new(&pos.iter().map(|&i| gens[i]).collect::<Vec<_>>())?;
            Ok(s.witness(v).map(|c| spread(&pos, c)))
        }
        (true, false) => {
            let s = NumericalSemigroup::new(&neg.iter().map(|&i| -gens[i]).collect::<Vec<_>>())?;
            Ok(s.witness(-v).map(|c| spread(&neg, c)))
        }
        (false, false) => {
            let g = gens.iter().fold(0i64, |acc, x| acc.gcd(x));
            if v % g != 0 {
                return Ok(None);
            }
            let s = NumericalSemigroup::new(&pos.iter().map(|&i| gens[i]).collect::<Vec<_>>())?;
            // Past the Frobenius number of the positive part only the
            // residue mod its gcd matters.
            let frob = (s.apery.iter().max().unwrap() - s.modulus()) * s.scale;
            for &j in &neg {
                let b = -gens[j];
                let reach = ((frob - v).max(0) / b) + 1 + s.scale;
                for t in 0..=reach {
                    if let Some(c) = s.witness(v + t * b) {
                        let mut full = spread(&pos, c);
                        full[j] += t;
                        return Ok(Some(full));
                    }
                }
            }
            Ok(Some(bezout_witness(gens, v, g, &pos, &neg)))
        }
    }
}

/// Coefficients over ℤ for `Σ x_i g_i = v`, then lifted to ℕ with the zero
/// relations `|n|·p + p·n = 0`.
fn bezout_witness(gens: &[i64], v: i64, g: i64, pos: &[usize], neg: &[usize]) -> Vec<i64> {
    let mut x = vec![0i128; gens.len()];
    let mut acc: i128 = 0;
    for (i, &gi) in gens.iter().enumerate() {
        if gi == 0 {
            continue;
        }
        if acc == 0 {
            acc = gi as i128;
            x[i] = 1;
            continue;
        }
        let e = (acc as i64).extended_gcd(&gi);
        for xj in x.iter_mut() {
            *xj *= e.x as i128;
        }
        x[i] = e.y as i128;
        acc = e.gcd as i128;
    }
    let factor = (v / g) as i128 * acc.signum();
    for xj in x.iter_mut() {
        *xj *= factor;
    }
    let (p, n) = (pos[0], neg[0]);
    let (gp, gn) = (gens[p] as i128, -(gens[n] as i128));
    for i in 0..gens.len() {
        if x[i] >= 0 {
            continue;
        }
        let gi = gens[i] as i128;
        if gi > 0 {
            let t = (-x[i] + gn - 1) / gn;
            x[i] += t * gn;
            x[n] += t * gi;
        } else {
            let t = (-x[i] + gp - 1) / gp;
            x[i] += t * gp;
            x[p] += t * -gi;
        }
    }
    x.into_iter().map(|c| c as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(g: &[i64], c: &[i64]) -> i64 {
        g.iter().zip(c).map(|(a, b)| a * b).sum()
    }

    #[test]
    fn frobenius_of_example_core() {
        let s = NumericalSemigroup::new(&[18, 12, 33, 4]).unwrap();
        assert_eq!(s.frobenius(), Some(47));
        assert_eq!(s.conductor(), Some(48));
        assert!(!s.contains(47));
        let w = s.witness(66).unwrap();
        assert_eq!(dot(&[18, 12, 33, 4], &w), 66);
    }

    #[test]
    fn non_primitive_generators() {
        let s = NumericalSemigroup::new(&[6, 4]).unwrap();
        assert_eq!(s.frobenius(), None);
        assert!(s.contains(10) && !s.contains(9) && !s.contains(2));
    }

    #[test]
    fn mixed_signs_form_a_group() {
        let g = [18, 12, 33, 4, -5];
        for v in -40..40 {
            let c = solve(&g, v).unwrap().expect("every integer is a member");
            assert!(c.iter().all(|&x| x >= 0));
            assert_eq!(dot(&g, &c), v);
        }
        assert_eq!(solve(&g, -1).unwrap().unwrap(), vec![0, 0, 0, 1, 1]);
        assert!(solve(&[6, -4], 3).unwrap().is_none());
    }

    #[test]
    fn bezout_fallback_is_valid() {
        let g = [9, 6, -15];
        for v in [-30i64, -3, 3, 21, 300] {
            let c = bezout_witness(&g, v, 3, &[0, 1], &[2]);
            assert!(c.iter().all(|&x| x >= 0), "{c:?}");
            assert_eq!(dot(&g, &c), v);
        }
    }
}
