//! `deg_x Res_y(f, q)` by evaluation and interpolation modulo primes.
//!
//! Both polynomials are scaled to integer coefficients, so `Res_y` lies in
//! `ℤ[x]` with every coefficient bounded by
//! `B = ‖q‖₁^{deg_y f} · ‖f‖₁^{deg_y q}` (row sums of the Sylvester matrix).
//! Once the product of the primes used exceeds `B`, a coefficient vanishes
//! exactly when it vanishes modulo every prime, which makes the degree exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::poly::BivariatePolynomial;
use super::CurveError;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^61`, largest first.
fn primes() -> impl Iterator<Item = u64> {
    (1..(1u64 << 61)).rev().step_by(2).filter(|&n| is_prime_u64(n))
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

/// Integer coefficients `(i, j, c)` of `k·f` for the least positive `k`
/// clearing denominators.
fn integer_terms(f: &BivariatePolynomial) -> Vec<(u32, u32, BigInt)> {
    let den = f.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    f.terms()
        .map(|(&(i, j), c)| (i, j, (c * BigRational::from_integer(den.clone())).to_integer()))
        .collect()
}

fn l1_norm(terms: &[(u32, u32, BigInt)]) -> BigInt {
    terms.iter().map(|(_, _, c)| c.abs()).sum()
}

/// Dense coefficients in `y` of `f(a, y) mod p`, trailing zeros removed.
fn eval_mod(terms: &[(u32, u32, BigInt)], reduced: &[u64], a: u64, p: u64, deg_y: usize) -> Vec<u64> {
    let mut out = vec![0u64; deg_y + 1];
    for ((i, j, _), &c) in terms.iter().zip(reduced) {
        let v = mul_mod(c, pow_mod(a, *i as u64, p), p);
        let slot = &mut out[*j as usize];
        *slot = (*slot + v) % p;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while r.len() > db {
        let k = r.len() - 1;
        let c = mul_mod(r[k], inv, p);
        for (i, &bi) in b.iter().enumerate() {
            let t = mul_mod(c, bi, p);
            r[k - db + i] = (r[k - db + i] + p - t) % p;
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

/// Resultant over `𝔽_p` with actual degrees.
fn resultant_mod(a: &[u64], b: &[u64], p: u64) -> u64 {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    let mut acc = 1u64;
    loop {
        if a.is_empty() || b.is_empty() {
            return 0;
        }
        let (m, n) = (a.len() - 1, b.len() - 1);
        if n == 0 {
            return mul_mod(acc, pow_mod(b[0], m as u64, p), p);
        }
        if m == 0 {
            return mul_mod(acc, pow_mod(a[0], n as u64, p), p);
        }
        if m < n {
            if m * n % 2 == 1 {
                acc = (p - acc) % p;
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let r = rem_mod(&a, &b, p);
        if r.is_empty() {
            return 0;
        }
        if m * n % 2 == 1 {
            acc = (p - acc) % p;
        }
        acc = mul_mod(acc, pow_mod(b[n], (m - (r.len() - 1)) as u64, p), p);
        a = b;
        b = r;
    }
}

/// Monomial coefficients of the interpolant through `(k, ys[k])`.
fn interpolate_mod(ys: &[u64], p: u64) -> Vec<u64> {
    let n = ys.len();
    let mut c = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            let diff = (c[i] + p - c[i - 1]) % p;
            c[i] = mul_mod(diff, inv_mod(k as u64, p), p);
        }
    }
    // Horner on the Newton basis ∏(x − i)
    let mut out = vec![0u64; n];
    for k in (0..n).rev() {
        // out ← out·(x − k) + c[k]
        let mut next = vec![0u64; n];
        for (d, &v) in out.iter().enumerate() {
            if v == 0 {
                continue;
            }
            if d + 1 < n {
                next[d + 1] = (next[d + 1] + v) % p;
            }
            next[d] = (next[d] + p - mul_mod(v, k as u64 % p, p)) % p;
        }
        next[0] = (next[0] + c[k]) % p;
        out = next;
    }
    out
}

/// `deg_x Res_y(f, q)` for `q` monic in `y`. When `f` does not involve `y`
/// this is the degree of `f^{deg_y q}`.
pub fn resultant_oracle(f: &BivariatePolynomial, q: &BivariatePolynomial) -> Result<u64, CurveError> {
    if f.is_zero() || q.is_zero() {
        return Err(CurveError::ZeroPolynomial);
    }
    if !q.is_monic_in_y() {
        return Err(CurveError::NotMonic(q.to_string()));
    }
    let ft = integer_terms(f);
    let qt = integer_terms(q);
    let (fy, qy) = (f.deg_y().unwrap() as usize, q.deg_y().unwrap() as usize);
    let q_lead = qt.iter().find(|(_, j, _)| *j as usize == qy).map(|(_, _, c)| c.clone()).unwrap();
    let bound = num_traits::pow(l1_norm(&qt), fy) * num_traits::pow(l1_norm(&ft), qy);
    let points = f.total_degree().unwrap() as usize * q.total_degree().unwrap() as usize + 1;

    let mut nonzero = vec![false; points];
    let mut modulus = BigInt::one();
    for p in primes() {
        if modulus > bound {
            break;
        }
        if reduce(&q_lead, p) == 0 {
            continue;
        }
        let fr: Vec<u64> = ft.iter().map(|(_, _, c)| reduce(c, p)).collect();
        let qr: Vec<u64> = qt.iter().map(|(_, _, c)| reduce(c, p)).collect();
        let lead = reduce(&q_lead, p);
        let ys: Vec<u64> = (0..points as u64)
            .map(|a| {
                let qa = eval_mod(&qt, &qr, a, p, qy);
                let fa = eval_mod(&ft, &fr, a, p, fy);
                // Sylvester resultant with the formal degree of f
                let missing = (fy + 1 - fa.len().min(fy + 1)) as u64;
                let r = resultant_mod(&qa, &fa, p);
                if fa.is_empty() {
                    r
                } else {
                    mul_mod(r, pow_mod(lead, missing, p), p)
                }
            })
            .collect();
        for (k, c) in interpolate_mod(&ys, p).into_iter().enumerate() {
            nonzero[k] |= c != 0;
        }
        modulus *= BigInt::from(p);
    }
    nonzero.iter().rposition(|&b| b).map(|d| d as u64).ok_or(CurveError::CommonFactor)
}

#[cfg(test)]
pub(crate) mod exact {
    //! Slow rational reference used to cross-check the modular path.

    use super::*;
    use num_traits::Zero;

    fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }

    fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        while r.len() > db {
            let k = r.len() - 1;
            let c = &r[k] / &b[db];
            for (i, bi) in b.iter().enumerate() {
                r[k - db + i] -= &c * bi;
            }
            r.pop();
            r = trim(r);
        }
        trim(r)
    }

    pub fn resultant_univariate(a: &[BigRational], b: &[BigRational]) -> BigRational {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        let mut acc = BigRational::one();
        loop {
            if a.is_empty() || b.is_empty() {
                return BigRational::zero();
            }
            let (m, n) = (a.len() - 1, b.len() - 1);
            if n == 0 {
                return acc * num_traits::pow(b[0].clone(), m);
            }
            if m == 0 {
                return acc * num_traits::pow(a[0].clone(), n);
            }
            if m < n {
                if m * n % 2 == 1 {
                    acc = -acc;
                }
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = rem(&a, &b);
            if r.is_empty() {
                return BigRational::zero();
            }
            if m * n % 2 == 1 {
                acc = -acc;
            }
            acc *= num_traits::pow(b[n].clone(), m - (r.len() - 1));
            a = b;
            b = r;
        }
    }

    /// Same contract as [`resultant_oracle`], over ℚ.
    pub fn resultant_degree(f: &BivariatePolynomial, q: &BivariatePolynomial) -> Option<usize> {
        let n = f.total_degree()? as usize * q.total_degree()? as usize;
        let xs: Vec<BigRational> = (0..=n).map(|a| BigRational::from_integer(a.into())).collect();
        let mut c: Vec<BigRational> = xs.iter().map(|a| resultant_univariate(&q.eval_x(a), &f.eval_x(a))).collect();
        for k in 1..c.len() {
            for i in (k..c.len()).rev() {
                c[i] = (&c[i] - &c[i - 1]) / (&xs[i] - &xs[i - k]);
            }
        }
        c.iter().rposition(|v| !v.is_zero())
    }
}
