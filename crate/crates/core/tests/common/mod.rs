#![allow(dead_code)]

use valinf::delta::{validate_core, DeltaCore};

/// Calls `visit` on every list of positive integers with `δ0 ≤ max_d0`
/// that satisfies conditions (1)–(3), checked directly: the gcd chain drops
/// at every step and ends at 1, `n_i δ_i` is a sum of earlier entries, and
/// `δ_i < n_{i−1} δ_{i−1}`.
///
/// Every target `n_i δ_i` is below `δ0²`, so one reachability table of
/// that length per prefix settles condition (2).
pub fn for_each_core(max_d0: i64, mut visit: impl FnMut(&[i64])) {
    for d0 in 2..=max_d0 {
        let limit = (d0 * d0) as usize;
        let mut reach = vec![false; limit];
        for v in (0..limit).step_by(d0 as usize) {
            reach[v] = true;
        }
        let mut prefix = vec![d0];
        descend(&mut prefix, d0, d0 - 1, &reach, &mut visit);
    }
}

fn descend(prefix: &mut Vec<i64>, d: i64, hi: i64, reach: &[bool], visit: &mut impl FnMut(&[i64])) {
    for next in 1..=hi {
        let d_next = num_integer::gcd(d, next);
        if d_next == d {
            continue;
        }
        let n = d / d_next;
        if !reach[(n * next) as usize] {
            continue;
        }
        prefix.push(next);
        if d_next == 1 {
            visit(prefix);
        } else {
            let mut grown = reach.to_vec();
            let step = next as usize;
            for v in step..grown.len() {
                if grown[v - step] {
                    grown[v] = true;
                }
            }
            descend(prefix, d_next, n * next - 1, &grown, visit);
        }
        prefix.pop();
    }
}

/// The same enumeration driven by `validate_core` alone.
pub fn all_cores(max_d0: i64) -> Vec<DeltaCore> {
    let mut out = Vec::new();
    for d0 in 2..=max_d0 {
        let mut prefix = vec![d0];
        extend(&mut prefix, &mut out);
    }
    out
}

fn extend(prefix: &mut Vec<i64>, out: &mut Vec<DeltaCore>) {
    let (hi, d) = match prefix.len() {
        1 => (prefix[0] - 1, prefix[0]),
        _ => {
            let r = validate_core(prefix).unwrap();
            let g = prefix.len() - 1;
            (r.n[g - 1] * prefix[g] - 1, r.d[g])
        }
    };
    for next in 1..=hi {
        if num_integer::gcd(d, next) == d {
            continue;
        }
        prefix.push(next);
        let r = validate_core(prefix).unwrap();
        let gcd_only = matches!(r.conditions[0].first_failure, Some(i) if i == prefix.len());
        if r.conditions[1].holds && r.conditions[2].holds {
            if r.conditions[0].holds {
                out.push(DeltaCore::new(prefix).unwrap());
            } else if gcd_only {
                extend(prefix, out);
            }
        }
        prefix.pop();
    }
}

/// Membership table for `0..=cap` by generating every sum of generators.
pub fn sieve(gens: &[i64], cap: i64) -> Vec<bool> {
    let mut member = vec![false; cap as usize + 1];
    member[0] = true;
    for v in 1..=cap as usize {
        member[v] = gens.iter().any(|&g| g as usize <= v && member[v - g as usize]);
    }
    member
}
