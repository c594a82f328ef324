//! Small integer and modular helpers shared by every module.
//!
//! Residues are stored as `u128`. Every modulus handled here is below `2^127`
//! so that a sum of two residues never overflows.

#[inline]
pub fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

#[inline]
pub fn neg_mod(a: u128, m: u128) -> u128 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

#[inline]
pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        (a * b) % m
    } else {
        mul_mod_wide(a % m, b % m, m)
    }
}

// Double-and-add; only reached for moduli above 2^64.
fn mul_mod_wide(mut a: u128, mut b: u128, m: u128) -> u128 {
    let mut r = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            r = add_mod(r, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    r
}

pub fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of a unit modulo `m = p^k`: Fermat mod p, then Newton lifting.
pub fn inv_mod_prime_power(a: u128, p: u64, m: u128) -> Option<u128> {
    let p128 = p as u128;
    let a = a % m;
    if a.is_multiple_of(p128) {
        return None;
    }
    let mut x = pow_mod(a % p128, p128 - 2, p128);
    let mut prec = p128;
    while prec < m {
        prec = prec.saturating_mul(prec).min(m);
        // x <- x (2 - a x)
        let ax = mul_mod(a % prec, x, prec);
        let t = sub_mod(2 % prec, ax, prec);
        x = mul_mod(x, t, prec);
    }
    Some(x % m)
}

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
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a as u128, d as u128, n as u128);
        if x == 1 || x == n as u128 - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n as u128);
            if x == n as u128 - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in the closed interval `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|k| n.is_multiple_of(*k)).collect()
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            n /= q;
            if n.is_multiple_of(q) {
                return 0;
            }
            sign = -sign;
        }
        q += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, q| acc / q * (q - 1))
}

/// Multiplicative order of `a` modulo `d` (requires gcd(a, d) = 1, d >= 1).
pub fn multiplicative_order(a: u64, d: u64) -> u64 {
    if d == 1 {
        return 1;
    }
    let a = a % d;
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % d as u128) as u64;
        k += 1;
    }
    k
}

/// p-adic valuation of a nonzero integer.
pub fn valuation_u128(mut x: u128, p: u64) -> u32 {
    let p = p as u128;
    let mut v = 0;
    while x != 0 && x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// `p^e`, or `None` when it would not stay below `2^127`.
pub fn checked_pow(p: u64, e: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p as u128)?;
        if acc >= 1u128 << 127 {
            return None;
        }
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_multiplication_agrees_with_bigint() {
        use num_bigint::BigUint;
        let m: u128 = 5u128.pow(50);
        let a = m - 12345;
        let b = m / 3 + 7;
        let expect = (BigUint::from(a) * BigUint::from(b)) % BigUint::from(m);
        assert_eq!(BigUint::from(mul_mod(a, b, m)), expect);
    }

    #[test]
    fn inverse_mod_prime_power() {
        let m = 7u128.pow(6);
        for a in [1u128, 2, 3, 48, 100, 117_648] {
            let x = inv_mod_prime_power(a, 7, m).unwrap();
            assert_eq!(mul_mod(a, x, m), 1);
        }
        assert!(inv_mod_prime_power(14, 7, m).is_none());
    }

    #[test]
    fn primes_and_orders() {
        assert_eq!(primes_in(5, 20), vec![5, 7, 11, 13, 17, 19]);
        assert!(is_prime(999_983));
        assert!(!is_prime(1_000_001));
        assert_eq!(multiplicative_order(5, 3), 2);
        assert_eq!(multiplicative_order(7, 4), 2);
        assert_eq!(multiplicative_order(5, 31), 3);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(3), -1);
        assert_eq!(euler_phi(12), 4);
    }
}
