//! Integer helpers: modular arithmetic on `u128`, primality and factorization.
//!
//! Inputs here are group orders `p^k - 1` and moduli `q^m + 1`, so `u128`
//! is plenty. Factorization is trial division followed by Pollard rho
//! (Brent variant) under an iteration budget.

use crate::error::FieldError;

const TRIAL_LIMIT: u128 = 1_000_000;
const RHO_BUDGET: u64 = 20_000_000;

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    let (a, b) = (a % m, b % m);
    if a < (1 << 64) && b < (1 << 64) {
        if let Some(p) = a.checked_mul(b) {
            return p % m;
        }
    }
    // shift-and-add keeps every intermediate below 2m
    let (mut x, mut y, mut acc) = (a, b, 0u128);
    while y > 0 {
        if y & 1 == 1 {
            acc = add_mod(acc, x, m);
        }
        x = add_mod(x, x, m);
        y >>= 1;
    }
    acc
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

pub fn pow_mod(base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut b = base % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs; for wider inputs the same
/// witness set is a strong probable-prime test.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u128; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Returns `(p, k)` when `n = p^k` for a prime `p`.
pub fn prime_power(n: u128) -> Option<(u128, u32)> {
    if n < 2 {
        return None;
    }
    if is_prime(n) {
        return Some((n, 1));
    }
    let mut p = 2u128;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            let mut r = n;
            while r % p == 0 {
                r /= p;
                k += 1;
            }
            return (r == 1).then_some((p, k));
        }
        p += 1;
    }
    None
}

fn rho(n: u128, c: u128, budget: &mut u64) -> Option<u128> {
    let f = |x: u128| add_mod(mul_mod(x, x, n), c, n);
    let (mut x, mut y, mut g) = (2u128, 2u128, 1u128);
    let mut q = 1u128;
    let mut ys = 2u128;
    let mut r = 1u64;
    let m = 64u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += m;
            *budget = budget.checked_sub(m)?;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
            *budget = budget.checked_sub(1)?;
        }
    }
    Some(g)
}

fn split(n: u128, out: &mut Vec<u128>, budget: &mut u64) -> Result<(), FieldError> {
    if n == 1 {
        return Ok(());
    }
    if is_prime(n) {
        out.push(n);
        return Ok(());
    }
    for c in 1u128.. {
        let d = rho(n, c, budget).ok_or(FieldError::FactorizationTooLarge { n })?;
        if d != n {
            split(d, out, budget)?;
            return split(n / d, out, budget);
        }
    }
    unreachable!()
}

/// Prime factorization as sorted `(prime, exponent)` pairs.
pub fn factorize(mut n: u128) -> Result<Vec<(u128, u32)>, FieldError> {
    let mut primes = Vec::new();
    let mut d = 2u128;
    while d <= TRIAL_LIMIT && d * d <= n {
        while n % d == 0 {
            primes.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        let mut budget = RHO_BUDGET;
        split(n, &mut primes, &mut budget)?;
    }
    primes.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// Checked `base^exp` in i128.
pub fn ipow(base: i128, exp: u32) -> Option<i128> {
    base.checked_pow(exp)
}
