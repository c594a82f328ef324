//! Exact traces from `Q(zeta_l)` to `Q` of
//! `S = (zeta^{p+1} + zeta^{p-1}) / (zeta^p - 1)^2`, with the closed form in
//! terms of `m = ord_l(p)` and `b = [1 - p^{m-1}]_l`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{is_prime, multiplicative_order, pow_mod};
use crate::bernoulli::rational_mod;
use crate::error::{Error, Result};
use crate::padic::PadicCtx;

type RatPoly = Vec<BigRational>;

fn trim(mut a: RatPoly) -> RatPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn rat_divrem(a: &[BigRational], b: &[BigRational]) -> (RatPoly, RatPoly) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    (trim(q), trim(r))
}

/// `Q[x]/(Phi_l)` for a prime `l`, elements in the power basis of length `l - 1`.
#[derive(Clone, Debug)]
pub struct ExactCycloCtx {
    ell: u64,
}

impl ExactCycloCtx {
    pub fn new(ell: u64) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::BadEll);
        }
        Ok(ExactCycloCtx { ell })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    fn modulus(&self) -> RatPoly {
        vec![BigRational::one(); self.ell as usize]
    }

    /// Reduce an integer-indexed coefficient vector.
    fn reduce_int(&self, raw: &[BigInt]) -> Vec<BigInt> {
        let l = self.ell as usize;
        let mut folded = vec![BigInt::zero(); l];
        for (i, v) in raw.iter().enumerate() {
            folded[i % l] += v;
        }
        let top = folded.pop().expect("l >= 2");
        folded.iter_mut().for_each(|c| *c -= &top);
        folded
    }

    pub fn monomial(&self, k: u64) -> RatPoly {
        let mut raw = vec![BigInt::zero(); (k % self.ell) as usize + 1];
        raw[(k % self.ell) as usize] = BigInt::one();
        self.reduce_int(&raw).into_iter().map(BigRational::from_integer).collect()
    }

    /// Inverse modulo `Phi_l` by the extended Euclidean algorithm.
    pub fn inv(&self, a: &[BigRational]) -> Option<RatPoly> {
        let (mut r0, mut r1) = (self.modulus(), trim(a.to_vec()));
        let (mut s0, mut s1): (RatPoly, RatPoly) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = rat_divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = rat_sub(&s0, &rat_mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].clone();
        let inv: RatPoly = s0.iter().map(|x| x / &c).collect();
        Some(self.reduce_rat(&inv))
    }

    fn reduce_rat(&self, a: &[BigRational]) -> RatPoly {
        let den = a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = a.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
        self.reduce_int(&ints)
            .into_iter()
            .map(|v| BigRational::new(v, den.clone()))
            .collect()
    }

    /// Product, via a common denominator and integer convolution.
    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> RatPoly {
        let common = |v: &[BigRational]| {
            let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
            (ints, den)
        };
        let (ai, ad) = common(a);
        let (bi, bd) = common(b);
        let mut raw = vec![BigInt::zero(); ai.len() + bi.len()];
        for (i, x) in ai.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bi.iter().enumerate() {
                raw[i + j] += x * y;
            }
        }
        let den = ad * bd;
        self.reduce_int(&raw).into_iter().map(|v| BigRational::new(v, den.clone())).collect()
    }

    /// `Tr(sum c_i x^i) = c_0 (l - 1) - sum_{i >= 1} c_i`.
    pub fn trace(&self, a: &[BigRational]) -> BigRational {
        let mut it = a.iter();
        let c0 = it.next().cloned().unwrap_or_else(BigRational::zero);
        let rest = it.fold(BigRational::zero(), |acc, x| acc + x);
        c0 * BigRational::from_integer(BigInt::from(self.ell - 1)) - rest
    }
}

/// Exact and closed-form values of the trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma5Trace {
    pub ell: u64,
    pub p: u64,
    pub m: u64,
    pub b: u64,
    pub s_exact: BigRational,
    pub s_closed: BigRational,
    pub matches: bool,
    /// `(l^2 + 2)/3` is a square mod p
    pub square_flag: bool,
}

/// `-b^2 + b(l+2) - (l^2 + 6l + 5)/6` with `m = ord_l(p)`, `b = [1 - p^{m-1}]_l`.
pub fn closed_form(ell: u64, p: u64) -> (u64, u64, BigRational) {
    let m = multiplicative_order(p % ell, ell);
    let pm = pow_mod(p as u128, (m - 1) as u128, ell as u128) as u64;
    let b = (1 + ell - pm) % ell;
    let (lb, bb) = (BigInt::from(ell), BigInt::from(b));
    let s = BigRational::from_integer(-(&bb * &bb) + &bb * (&lb + 2))
        - BigRational::new(&lb * &lb + &lb * 6 + 5, BigInt::from(6));
    (m, b, s)
}

/// `(l^2 + 2)/3` is a square (possibly zero) mod p.
pub fn square_flag(ell: u64, p: u64) -> bool {
    let v = ((ell as u128 * ell as u128).div_ceil(3) % p as u128) as u64;
    is_square_mod(v, p)
}

fn is_square_mod(v: u64, p: u64) -> bool {
    v.is_multiple_of(p) || pow_mod(v as u128, (p as u128 - 1) / 2, p as u128) == 1
}

pub fn lemma5_trace(ell: u64, p: u64) -> Result<Lemma5Trace> {
    if ell == p || ell < 5 {
        return Err(Error::BadEll);
    }
    let cx = ExactCycloCtx::new(ell)?;
    let den = rat_sub(&cx.monomial(p), &cx.monomial(0));
    let inv = cx.inv(&den).ok_or(Error::BadEll)?;
    let num: RatPoly = {
        let a = cx.monomial(p + 1);
        let b = cx.monomial(p - 1);
        a.iter().zip(&b).map(|(x, y)| x + y).collect()
    };
    let s_exact = cx.trace(&cx.mul(&num, &cx.mul(&inv, &inv)));
    let (m, b, s_closed) = closed_form(ell, p);
    Ok(Lemma5Trace {
        ell,
        p,
        m,
        b,
        matches: s_exact == s_closed,
        s_exact,
        s_closed,
        square_flag: square_flag(ell, p),
    })
}

/// A class `alpha mod p` with `(alpha^2 + 2)/3` a non-square, and the primes
/// `l = alpha mod p, l >= p^2` on which `S != 0 mod p` was confirmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaClass {
    pub alpha: u64,
    pub confirmed: Vec<u64>,
}

pub fn alpha_class_search(p: u64) -> Result<AlphaClass> {
    let ctx = PadicCtx::new(p, 1)?;
    let inv3 = ctx.inv(3).ok_or(Error::BadPrime(p))?;
    for alpha in 2..p {
        let v = ctx.mul(ctx.add(ctx.mul(alpha as u128, alpha as u128), 2), inv3);
        if is_square_mod(v as u64, p) {
            continue;
        }
        let mut confirmed = Vec::with_capacity(10);
        let mut ell = p * p + (alpha + p - (p * p) % p) % p;
        let mut ok = true;
        while confirmed.len() < 10 {
            if is_prime(ell) {
                let (_, _, s) = closed_form(ell, p);
                let r = rational_mod(&s, &ctx).ok_or(Error::BadPrime(p))?;
                if r == 0 {
                    ok = false;
                    break;
                }
                confirmed.push(ell);
            }
            ell += p;
        }
        if ok {
            return Ok(AlphaClass { alpha, confirmed });
        }
    }
    Err(Error::NotFound)
}

/// Number of classes `alpha` with `(alpha^2 + 2)/3` a non-square mod p.
pub fn non_square_class_count(p: u64) -> usize {
    let ctx = PadicCtx::new(p, 1).expect("prime");
    let inv3 = ctx.inv(3).expect("p > 3");
    (1..p)
        .filter(|&a| !is_square_mod(ctx.mul(ctx.add((a * a) as u128, 2), inv3) as u64, p))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn helper_traces_at_seven() {
        let cx = ExactCycloCtx::new(7).unwrap();
        let pi = rat_sub(&cx.monomial(1), &cx.monomial(0));
        let inv = cx.inv(&pi).unwrap();
        assert_eq!(cx.mul(&inv, &pi), cx.monomial(0));
        assert_eq!(cx.trace(&inv), q(-3, 1));
        assert_eq!(cx.trace(&cx.mul(&inv, &inv)), q(-1, 1));
    }

    #[test]
    fn example_p5_l31() {
        let t = lemma5_trace(31, 5).unwrap();
        assert_eq!((t.m, t.b), (3, 7));
        assert_eq!(t.s_closed, q(-10, 1));
        assert_eq!(t.s_exact, q(-10, 1));
        assert!(t.matches && t.square_flag);
    }

    #[test]
    fn exact_matches_closed_form_small() {
        for p in [5u64, 7] {
            for ell in crate::arith::primes_in(p * p, 120) {
                assert!(lemma5_trace(ell, p).unwrap().matches, "p={p} l={ell}");
            }
        }
    }

    #[test]
    fn vanishing_forces_square() {
        for p in [5u64, 7, 11] {
            let ctx = PadicCtx::new(p, 1).unwrap();
            for ell in crate::arith::primes_in(p * p, 400) {
                let (_, _, s) = closed_form(ell, p);
                if rational_mod(&s, &ctx) == Some(0) {
                    assert!(square_flag(ell, p), "p={p} l={ell}");
                }
            }
        }
    }

    #[test]
    fn alpha_classes() {
        let a = alpha_class_search(5).unwrap();
        assert_eq!(a.alpha, 2);
        assert_eq!(a.confirmed.len(), 10);
        assert!(a.confirmed.iter().all(|l| l % 5 == a.alpha && *l >= 25));
        let a7 = alpha_class_search(7).unwrap();
        let v = (a7.alpha * a7.alpha + 2) * 5 % 7; // 3^{-1} = 5 mod 7
        assert!(![1, 2, 4].contains(&v));
        assert!(non_square_class_count(13) >= 1);
    }

    #[test]
    fn rejects_bad_ell() {
        assert_eq!(lemma5_trace(5, 5), Err(Error::BadEll));
        assert_eq!(lemma5_trace(9, 5), Err(Error::BadEll));
    }
}
