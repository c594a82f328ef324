//! Integer polynomial identities between sums of `(1+T)^e` and quotients
//! `omega_n / omega_d`, checked exactly over `Z[T]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{euler_phi, gcd, mobius};
use crate::error::{Error, Result};
use crate::iwasawa::OmegaPoly;

type IntPoly = Vec<BigInt>;

fn trim(mut a: IntPoly) -> IntPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn sub(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn scale(a: &[BigInt], c: &BigInt) -> IntPoly {
    trim(a.iter().map(|x| x * c).collect())
}

/// Exact quotient by a monic polynomial; panics on a nonzero remainder.
fn div_exact(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
    trim(q)
}

/// `sum_e c_e (1+T)^e` for `e < len`, by Horner in `(1+T)`.
fn group_ring_sum(coeffs: &[BigInt]) -> IntPoly {
    let mut acc: IntPoly = Vec::new();
    for c in coeffs.iter().rev() {
        // acc <- acc * (1 + T) + c
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i] += a;
            next[i + 1] += a;
        }
        if next.is_empty() {
            next.push(BigInt::zero());
        }
        next[0] += c;
        acc = trim(next);
    }
    acc
}

/// `omega_n / omega_d`; `omega_{-1}` is read as `T`.
fn omega_quotient(p: u64, n: u32, d: i64) -> IntPoly {
    let num = OmegaPoly::new(p, n).expand();
    let den = if d < 0 {
        vec![BigInt::zero(), BigInt::one()]
    } else {
        OmegaPoly::new(p, d as u32).expand()
    };
    div_exact(&num, &den)
}

/// Ramanujan sum `c_q(l)` by von Sterneck's formula.
fn ramanujan(q: u64, l: u64) -> BigInt {
    let g = gcd(l % q, q);
    let g = if l.is_multiple_of(q) { q } else { g };
    let m = q / g;
    BigInt::from(mobius(m)) * BigInt::from(euler_phi(q) / euler_phi(m))
}

/// Outcome of each of the four parts; parts (a) and (b) are vacuous at `d = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lemma2Report {
    pub multiples: bool,
    pub non_multiples: bool,
    pub assembled: bool,
    pub in_ideal: bool,
}

impl Lemma2Report {
    pub fn holds(&self) -> bool {
        self.multiples && self.non_multiples && self.assembled && self.in_ideal
    }
}

pub fn lemma2_report(p: u64, n: u32, d: u32) -> Result<Lemma2Report> {
    if d > n {
        return Err(Error::OutOfRange(format!("d = {d} exceeds n = {n}")));
    }
    let len = (p as usize).pow(n);
    let pb = BigInt::from(p);
    let mut rep = Lemma2Report { multiples: true, non_multiples: true, assembled: true, in_ideal: true };

    if d >= 1 {
        let step = (p as usize).pow(d - 1);
        let count = (p as usize).pow(n - d + 1);
        let mut mult = vec![BigInt::zero(); len];
        let mut rest = vec![BigInt::zero(); len];
        for l in 0..count {
            if l % p as usize == 0 {
                mult[l * step] += &pb - 1u32;
            } else {
                rest[l * step] -= 1u32;
            }
        }
        let q_d = omega_quotient(p, n, d as i64);
        let q_dm = omega_quotient(p, n, d as i64 - 1);
        rep.multiples = group_ring_sum(&mult) == scale(&q_d, &(&pb - 1u32));
        rep.non_multiples = group_ring_sum(&rest) == sub(&q_d, &q_dm);
    }

    // p^{n+1} e_d from Ramanujan sums over the exponents
    let pd = p.pow(d);
    let weights: Vec<BigInt> = (0..len as u64).map(|l| &pb * ramanujan(pd, l)).collect();
    let lhs = group_ring_sum(&weights);
    let rhs = if d == 0 {
        scale(&omega_quotient(p, n, -1), &pb)
    } else {
        sub(
            &scale(&omega_quotient(p, n, d as i64), &pb.pow(d + 1)),
            &scale(&omega_quotient(p, n, d as i64 - 1), &pb.pow(d)),
        )
    };
    rep.assembled = lhs == rhs;
    rep.in_ideal = rhs.iter().all(|c| c.is_multiple_of(&pb));
    Ok(rep)
}

pub fn lemma2_identities(p: u64, n: u32, d: u32) -> Result<bool> {
    Ok(lemma2_report(p, n, d)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(lemma2_identities(5, 1, 0).unwrap());
        assert!(lemma2_identities(5, 2, 1).unwrap());
        assert!(lemma2_identities(7, 2, 2).unwrap());
        assert_eq!(lemma2_identities(5, 1, 2), Err(Error::OutOfRange("d = 2 exceeds n = 1".into())));
    }

    #[test]
    fn ramanujan_sums() {
        // c_5(l): 4 at multiples of 5, -1 elsewhere; c_25(l): 20, -5, 0
        assert_eq!(ramanujan(5, 10), BigInt::from(4));
        assert_eq!(ramanujan(5, 3), BigInt::from(-1));
        assert_eq!(ramanujan(25, 50), BigInt::from(20));
        assert_eq!(ramanujan(25, 5), BigInt::from(-5));
        assert_eq!(ramanujan(25, 3), BigInt::from(0));
        assert_eq!(ramanujan(1, 7), BigInt::from(1));
    }

    #[test]
    fn flipped_sign_fails() {
        // the non-multiple sum is omega_n/omega_d - omega_n/omega_{d-1}, not its negative
        let (p, n, d) = (5u64, 2u32, 1u32);
        let step = (p as usize).pow(d - 1);
        let mut rest = vec![BigInt::zero(); (p as usize).pow(n)];
        for l in 0..(p as usize).pow(n - d + 1) {
            if l % p as usize != 0 {
                rest[l * step] -= 1u32;
            }
        }
        let wrong = sub(&omega_quotient(p, n, d as i64 - 1), &omega_quotient(p, n, d as i64));
        assert_ne!(group_ring_sum(&rest), wrong);
    }

    #[test]
    fn quotient_degrees() {
        let q = omega_quotient(5, 2, 1);
        assert_eq!(q.len(), 25 - 5 + 1);
        assert_eq!(omega_quotient(5, 1, -1).len(), 5);
    }
}
