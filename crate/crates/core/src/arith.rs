//! Small exact number-theory helpers.

use num_bigint::BigUint;
use num_traits::One;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn mobius(mut n: u64) -> i64 {
    if n == 1 {
        return 1;
    }
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub fn factorial_u128(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// Number of partitions p(0), p(1), ..., p(n).
pub fn partition_numbers(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] += p[total - part];
        }
    }
    p
}

/// Multiplicative order of `d` modulo `m` (`m >= 1`, `gcd(d, m) = 1`).
pub fn multiplicative_order(d: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(d % m, m) != 1 {
        return None;
    }
    let mut x = d % m;
    let mut k = 1;
    while x != 1 {
        x = x * (d % m) % m;
        k += 1;
    }
    Some(k)
}

/// Aperiodic necklaces of length `n` over `q` letters: `(1/n) sum_{e|n} mu(e) q^{n/e}`.
pub fn aperiodic_necklaces(q: u64, n: u64) -> u64 {
    let total: i128 = divisors(n)
        .into_iter()
        .map(|e| mobius(e) as i128 * (q as i128).pow((n / e) as u32))
        .sum();
    (total / n as i128) as u64
}
