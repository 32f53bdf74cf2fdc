//! Exhaustive generation of bounded sums, used as an independent oracle.

use std::collections::BTreeSet;

use crate::values::OrderedValue;

use super::SemigroupError;

/// Refuses to build sets larger than this.
pub const BRUTE_FORCE_LIMIT: usize = 5_000_000;

/// All sums `Σ s_i g_i` with `Σ s_i ≤ budget`.
pub fn brute_force_generate(
    generators: &[OrderedValue],
    budget: usize,
) -> Result<BTreeSet<OrderedValue>, SemigroupError> {
    generate(generators, budget, None)
}

/// Like [`brute_force_generate`] but drops sums above `cap`. Only sound for
/// non-negative generators, where a dropped sum can never come back down.
pub fn brute_force_generate_below(
    generators: &[OrderedValue],
    budget: usize,
    cap: &OrderedValue,
) -> Result<BTreeSet<OrderedValue>, SemigroupError> {
    if generators.iter().any(|g| g.is_negative()) {
        return Err(SemigroupError::Unbounded("cap with negative generators".into()));
    }
    generate(generators, budget, Some(cap))
}

fn generate(
    generators: &[OrderedValue],
    budget: usize,
    cap: Option<&OrderedValue>,
) -> Result<BTreeSet<OrderedValue>, SemigroupError> {
    let first = generators.first().ok_or(SemigroupError::EmptyGenerators)?;
    let zero = OrderedValue::zero_of(first.kind());
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    for _ in 0..budget {
        let mut next = Vec::new();
        for v in &frontier {
            for g in generators {
                let w = v.checked_add(g)?;
                if let Some(c) = cap {
                    if w.try_cmp(c)?.is_gt() {
                        continue;
                    }
                }
                if seen.insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        if seen.len() > BRUTE_FORCE_LIMIT {
            return Err(SemigroupError::TooLarge(format!("{} sums", seen.len())));
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let gens: Vec<OrderedValue> = vec![5.into(), 3.into()];
        let got: Vec<String> = brute_force_generate(&gens, 3).unwrap().iter().map(|v| v.to_string()).collect();
        assert_eq!(got, ["0", "3", "5", "6", "8", "9", "10", "11", "13", "15"]);

        let got = brute_force_generate(&[7.into()], 3).unwrap();
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![0.into(), 7.into(), 14.into(), 21.into()]);

        let gens = vec![OrderedValue::pair(0, 1), OrderedValue::pair(-1, 0)];
        let got = brute_force_generate(&gens, 2).unwrap();
        let want: BTreeSet<OrderedValue> = [(0, 0), (0, 1), (0, 2), (-1, 0), (-1, 1), (-2, 0)]
            .iter()
            .map(|&(a, b)| OrderedValue::pair(a, b))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn cap_prunes() {
        let got = brute_force_generate_below(&[5.into(), 3.into()], 10, &10.into()).unwrap();
        assert_eq!(got.len(), 7);
        assert!(brute_force_generate_below(&[(-1).into()], 3, &0.into()).is_err());
    }
}
