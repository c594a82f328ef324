//! Exact Bernoulli numbers and generalized Bernoulli numbers `B_{m, omega^j}`
//! reduced into `Z/p^N`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::inv_mod_prime_power;
use crate::error::Result;
use crate::padic::PadicCtx;

/// Cache of `B_0, ..., B_k` with `B_1 = -1/2`.
#[derive(Clone, Debug)]
pub struct BernoulliOracle {
    numbers: Vec<BigRational>,
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

impl Default for BernoulliOracle {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliOracle {
    pub fn new() -> Self {
        BernoulliOracle { numbers: vec![BigRational::one()] }
    }

    fn extend_to(&mut self, k: usize) {
        // sum_{i<=m} C(m+1, i) B_i = 0
        while self.numbers.len() <= k {
            let m = self.numbers.len();
            let row = binomial_row(m + 1);
            let mut s = BigRational::zero();
            for (i, b) in self.numbers.iter().enumerate() {
                s += b * BigRational::from_integer(row[i].clone());
            }
            self.numbers.push(-s / BigRational::from_integer(row[m].clone()));
        }
    }

    pub fn bernoulli(&mut self, k: usize) -> BigRational {
        self.extend_to(k);
        self.numbers[k].clone()
    }

    /// `B_m(x) = sum_k C(m, k) B_k x^{m-k}`.
    pub fn poly(&mut self, m: usize, x: &BigRational) -> BigRational {
        self.extend_to(m);
        let row = binomial_row(m);
        let mut acc = BigRational::zero();
        for k in 0..=m {
            acc = acc * x + &self.numbers[k] * BigRational::from_integer(row[k].clone());
        }
        acc
    }

    /// `B_{m, omega^j} / divisor` in `Z/p^N`, using conductor p for every j.
    ///
    /// Errors with `InexactDivision` when the value is not p-integral.
    pub fn teichmuller_value(&mut self, ctx: PadicCtx, j: u64, m: usize, divisor: i64) -> Result<u128> {
        let p = ctx.p();
        let pq = BigRational::from_integer(BigInt::from(p));
        let scale = pow_rational(&pq, m as i64 - 1) / BigRational::from_integer(BigInt::from(divisor));
        let terms: Vec<BigRational> = (1..p)
            .map(|a| &scale * self.poly(m, &(BigRational::from_integer(BigInt::from(a)) / &pq)))
            .collect();
        let extra = terms.iter().map(|t| valuation(t.denom(), p)).max().unwrap_or(0);
        let work = ctx.with_precision(ctx.precision() + extra)?;
        let shift = BigRational::from_integer(BigInt::from(p).pow(extra));
        let mut s = 0u128;
        for (i, t) in terms.iter().enumerate() {
            let a = (i + 1) as u128;
            let w = work.pow(work.teichmuller(a)?, j as u128);
            let r = rational_mod(&(t * &shift), &work).expect("p-integral after shift");
            s = work.add(s, work.mul(w, r));
        }
        let (c, v) = work.div_exact_pow_p(s, extra)?;
        Ok(c.truncate_to(v, &ctx))
    }

    /// `-B_{m, omega^j} / m`.
    pub fn l_value(&mut self, ctx: PadicCtx, j: u64, m: usize) -> Result<u128> {
        let v = self.teichmuller_value(ctx, j, m, m as i64)?;
        Ok(ctx.neg(v))
    }
}

fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

fn valuation(x: &BigInt, p: u64) -> u32 {
    if x.is_zero() {
        return 0;
    }
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    while (&y % &pb).is_zero() {
        y /= &pb;
        v += 1;
    }
    v
}

/// A p-integral rational as a residue mod `p^N`; `None` if p divides the denominator.
pub fn rational_mod(r: &BigRational, ctx: &PadicCtx) -> Option<u128> {
    let m = BigInt::from(BigUint::from(ctx.modulus()));
    let num = ((r.numer() % &m) + &m) % &m;
    let den = ((r.denom() % &m) + &m) % &m;
    let den = den.to_u128()?;
    let inv = inv_mod_prime_power(den, ctx.p(), ctx.modulus())?;
    Some(ctx.mul(num.to_u128()?, inv))
}

/// True when p divides the numerator of `B_k`.
pub fn is_irregular_pair(oracle: &mut BernoulliOracle, p: u64, k: usize) -> bool {
    let b = oracle.bernoulli(k);
    (b.numer().abs() % BigInt::from(p)).is_zero()
}
