//! Fixed-precision arithmetic in `Z/p^N`: Teichmüller decomposition,
//! the Iwasawa logarithm and discrete logarithms of principal units.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{self, add_mod, mul_mod, neg_mod, pow_mod, sub_mod};
use crate::error::{Error, Result};

/// The ring `Z/p^N` for a prime `p >= 5`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicCtx {
    p: u64,
    prec: u32,
    modulus: u128,
}

impl fmt::Debug for PadicCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.p, self.prec)
    }
}

impl PadicCtx {
    pub fn new(p: u64, prec: u32) -> Result<Self> {
        if p < 5 || !arith::is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        Self::with_prime_unchecked(p, prec)
    }

    fn with_prime_unchecked(p: u64, prec: u32) -> Result<Self> {
        if prec == 0 {
            return Err(Error::BadPrecision(prec));
        }
        let modulus = arith::checked_pow(p, prec).ok_or(Error::PrecisionOverflow { p, prec })?;
        Ok(PadicCtx { p, prec, modulus })
    }

    /// Same prime, different number of digits.
    pub fn with_precision(&self, prec: u32) -> Result<Self> {
        Self::with_prime_unchecked(self.p, prec)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn precision(&self) -> u32 {
        self.prec
    }

    #[inline]
    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    /// `p^e` as an integer (not reduced).
    pub fn p_pow(&self, e: u32) -> u128 {
        (self.p as u128).pow(e)
    }

    pub fn elem(&self, value: u128) -> PadicInt {
        PadicInt { ctx: *self, value: value % self.modulus }
    }

    pub fn from_i128(&self, x: i128) -> u128 {
        let m = self.modulus as i128;
        if m > 0 {
            (x.rem_euclid(m)) as u128
        } else {
            // modulus >= 2^127 never happens; guarded in the constructor
            unreachable!()
        }
    }

    pub fn from_i64(&self, x: i64) -> u128 {
        self.from_i128(x as i128)
    }

    #[inline]
    pub fn add(&self, a: u128, b: u128) -> u128 {
        add_mod(a, b, self.modulus)
    }

    #[inline]
    pub fn sub(&self, a: u128, b: u128) -> u128 {
        sub_mod(a, b, self.modulus)
    }

    #[inline]
    pub fn neg(&self, a: u128) -> u128 {
        neg_mod(a, self.modulus)
    }

    #[inline]
    pub fn mul(&self, a: u128, b: u128) -> u128 {
        mul_mod(a, b, self.modulus)
    }

    pub fn pow(&self, a: u128, e: u128) -> u128 {
        pow_mod(a, e, self.modulus)
    }

    pub fn is_unit(&self, a: u128) -> bool {
        !a.is_multiple_of(self.p as u128)
    }

    pub fn inv(&self, a: u128) -> Option<u128> {
        arith::inv_mod_prime_power(a, self.p, self.modulus)
    }

    /// Valuation of a residue, capped at the precision.
    pub fn valuation(&self, a: u128) -> u32 {
        if a.is_multiple_of(self.modulus) {
            self.prec
        } else {
            arith::valuation_u128(a, self.p)
        }
    }

    /// Reduce a residue of this ring into `target` (which must have the same
    /// prime and no more digits).
    pub fn truncate_to(&self, a: u128, target: &PadicCtx) -> u128 {
        debug_assert_eq!(self.p, target.p);
        a % target.modulus
    }

    /// Exact division by `p^t`. The quotient is only known to `N - t` digits,
    /// so it is returned together with the context witnessing that precision.
    pub fn div_exact_pow_p(&self, a: u128, t: u32) -> Result<(PadicCtx, u128)> {
        if t >= self.prec {
            return Err(Error::PrecisionTooLow);
        }
        let pt = self.p_pow(t);
        if !a.is_multiple_of(pt) {
            return Err(Error::InexactDivision { power: t });
        }
        let target = self.with_precision(self.prec - t)?;
        Ok((target, (a / pt) % target.modulus))
    }

    /// ω(a) as the fixpoint of x -> x^p.
    pub fn teichmuller(&self, a: u128) -> Result<u128> {
        if !self.is_unit(a) {
            return Err(Error::DivisibleByP);
        }
        let mut x = a % self.modulus;
        // converges after at most N - 1 steps
        for _ in 0..=self.prec {
            let y = self.pow(x, self.p as u128);
            if y == x {
                return Ok(x);
            }
            x = y;
        }
        debug_assert_eq!(self.pow(x, self.p as u128), x);
        Ok(x)
    }

    /// ⟨a⟩ = a / ω(a).
    pub fn angle(&self, a: u128) -> Result<u128> {
        let w = self.teichmuller(a)?;
        let winv = self.inv(w).ok_or(Error::NotUnit)?;
        Ok(self.mul(a, winv))
    }

    /// Teichmüller representatives of 0..p-1 (index 0 holds 0).
    pub fn teichmuller_table(&self) -> Vec<u128> {
        let mut out = vec![0u128; self.p as usize];
        for (r, slot) in out.iter_mut().enumerate().skip(1) {
            *slot = self.teichmuller(r as u128).expect("nonzero residue");
        }
        out
    }

    /// The Iwasawa logarithm of a principal unit, from the power series of
    /// `log(1 + x)` evaluated at elevated working precision.
    pub fn iwasawa_log(&self, u: u128) -> Result<u128> {
        let p = self.p as u128;
        if u % p != 1 % p {
            return Err(Error::NotPrincipalUnit);
        }
        let n = self.prec;
        // number of terms: all k with k - v_p(k) < N contribute
        let mut last = 0u32;
        let mut max_v = 0u32;
        let mut k = 1u32;
        while k - ilog_floor(k, self.p) < n {
            last = k;
            max_v = max_v.max(arith::valuation_u128(k as u128, self.p));
            k += 1;
        }
        let spec_work = n + n.div_ceil((self.p - 2) as u32) + 1;
        let work = self.with_precision(spec_work.max(n + max_v))?;
        let x = (u % self.modulus + work.modulus - 1) % work.modulus;
        let mut acc = 0u128;
        let mut xpow = 1u128;
        for k in 1..=last {
            xpow = work.mul(xpow, x);
            let v = arith::valuation_u128(k as u128, self.p);
            let (qctx, q) = work.div_exact_pow_p(xpow, v)?;
            let unit = (k as u128) / (p.pow(v));
            let unit_inv = qctx.inv(unit).ok_or(Error::NotUnit)?;
            let term = qctx.mul(q, unit_inv) % self.modulus;
            if k % 2 == 1 {
                acc = self.add(acc, term);
            } else {
                acc = self.sub(acc, term);
            }
        }
        Ok(acc)
    }

    /// The unique `i mod p^n` with `base^i = ⟨k⟩ (mod p^{n+1})`.
    ///
    /// Uses a linear scan when `p^n < 10^5` and baby-step/giant-step above.
    pub fn gamma_index(&self, k: u128, n: u32, base: u128) -> Result<u128> {
        if !self.is_unit(k) {
            return Err(Error::NotUnit);
        }
        let level = self.with_precision(n + 1)?;
        check_base(&level, base)?;
        if n == 0 {
            return Ok(0);
        }
        let target = level.angle(k % level.modulus)?;
        let base = base % level.modulus;
        let order = self.p_pow(n);
        if order < 100_000 {
            let mut x = 1u128;
            for i in 0..order {
                if x == target {
                    return Ok(i);
                }
                x = level.mul(x, base);
            }
            unreachable!("base generates the principal units");
        }
        let step = (order as f64).sqrt().ceil() as u128;
        let mut baby = HashMap::with_capacity(step as usize);
        let mut x = 1u128;
        for j in 0..step {
            baby.entry(x).or_insert(j);
            x = level.mul(x, base);
        }
        let giant = level.inv(level.pow(base, step)).ok_or(Error::NotUnit)?;
        let mut y = target;
        for i in 0..=step {
            if let Some(&j) = baby.get(&y) {
                return Ok((i * step + j) % order);
            }
            y = level.mul(y, giant);
        }
        unreachable!("base generates the principal units")
    }
}

fn ilog_floor(k: u32, p: u64) -> u32 {
    let mut e = 0;
    let mut x = k as u64;
    while x >= p {
        x /= p;
        e += 1;
    }
    e
}

fn check_base(level: &PadicCtx, base: u128) -> Result<()> {
    let p = level.p as u128;
    if base % p != 1 {
        return Err(Error::BadBase);
    }
    if level.prec >= 2 && base % (p * p) == 1 {
        return Err(Error::BadBase);
    }
    Ok(())
}

/// Precomputed `gamma_index` for every unit residue mod `p^{n+1}`, built
/// constructively from the decomposition `k = ω(k) base^i`.
#[derive(Clone, Debug)]
pub struct GammaIndexTable {
    p: u64,
    n: u32,
    modulus: u128,
    index: Vec<u32>,
}

impl GammaIndexTable {
    pub fn new(p: u64, n: u32, base: u128) -> Result<Self> {
        let level = PadicCtx::new(p, n + 1)?;
        check_base(&level, base)?;
        let modulus = level.modulus;
        let size = usize::try_from(modulus).map_err(|_| Error::OutOfRange("table too large".into()))?;
        let mut index = vec![u32::MAX; size];
        let order = level.p_pow(n) as u32;
        let base = base % modulus;
        for w in level.teichmuller_table().into_iter().skip(1) {
            let mut x = w;
            for i in 0..order {
                index[x as usize] = i;
                x = level.mul(x, base);
            }
        }
        Ok(GammaIndexTable { p, n, modulus, index })
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    /// `None` when `p | k`.
    #[inline]
    pub fn get(&self, k: u128) -> Option<u32> {
        let v = self.index[(k % self.modulus) as usize];
        (v != u32::MAX).then_some(v)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
}

/// A p-adic integer known to a fixed number of digits.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicInt {
    ctx: PadicCtx,
    value: u128,
}

impl fmt::Debug for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.value, self.ctx.p, self.ctx.prec)
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl PadicInt {
    pub fn ctx(&self) -> PadicCtx {
        self.ctx
    }

    pub fn value(&self) -> u128 {
        self.value
    }

    pub fn teichmuller(&self) -> Result<PadicInt> {
        Ok(self.ctx.elem(self.ctx.teichmuller(self.value)?))
    }

    pub fn angle(&self) -> Result<PadicInt> {
        Ok(self.ctx.elem(self.ctx.angle(self.value)?))
    }

    pub fn iwasawa_log(&self) -> Result<PadicInt> {
        Ok(self.ctx.elem(self.ctx.iwasawa_log(self.value)?))
    }

    pub fn gamma_index(&self, n: u32, base: u128) -> Result<u128> {
        if self.ctx.prec < n + 1 {
            return Err(Error::PrecisionTooLow);
        }
        self.ctx.gamma_index(self.value, n, base)
    }

    pub fn inv(&self) -> Result<PadicInt> {
        self.ctx.inv(self.value).map(|v| self.ctx.elem(v)).ok_or(Error::NotUnit)
    }

    pub fn pow(&self, e: u128) -> PadicInt {
        self.ctx.elem(self.ctx.pow(self.value, e))
    }

    pub fn valuation(&self) -> u32 {
        self.ctx.valuation(self.value)
    }
}

impl Add for PadicInt {
    type Output = PadicInt;
    fn add(self, rhs: PadicInt) -> PadicInt {
        assert_eq!(self.ctx, rhs.ctx, "mismatched p-adic contexts");
        self.ctx.elem(self.ctx.add(self.value, rhs.value))
    }
}

impl Sub for PadicInt {
    type Output = PadicInt;
    fn sub(self, rhs: PadicInt) -> PadicInt {
        assert_eq!(self.ctx, rhs.ctx, "mismatched p-adic contexts");
        self.ctx.elem(self.ctx.sub(self.value, rhs.value))
    }
}

impl Mul for PadicInt {
    type Output = PadicInt;
    fn mul(self, rhs: PadicInt) -> PadicInt {
        assert_eq!(self.ctx, rhs.ctx, "mismatched p-adic contexts");
        self.ctx.elem(self.ctx.mul(self.value, rhs.value))
    }
}

impl Neg for PadicInt {
    type Output = PadicInt;
    fn neg(self) -> PadicInt {
        self.ctx.elem(self.ctx.neg(self.value))
    }
}
