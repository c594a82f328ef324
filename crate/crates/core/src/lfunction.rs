//! Stickelberger elements, the Iwasawa series `f(T, theta)` and `g(T, chi)`,
//! the unit series `G(T, theta)`, and the checkers built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::arith::{divisors, gcd, mobius, mul_mod};
use crate::bernoulli::BernoulliOracle;
use crate::characters::{enumerate_even_nontrivial, DeltaChar, DirichletChar};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::iwasawa::{level_size, IwasawaPoly, Lambda};
use crate::mirimanoff::{mirimanoff_series, primitive_sum};
use crate::padic::{GammaIndexTable, PadicCtx};
use crate::ring::CoeffRing;

/// A level-n truncation of `f(T, theta)` or `g(T, chi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LSeriesResult<R: CoeffRing> {
    pub series: IwasawaPoly<R>,
    pub j: u64,
    pub n: u32,
    pub precision: u32,
    /// digits used before dividing by `p^{n+1}`
    pub working_precision: u32,
    /// odd character: the series is zero by convention
    pub odd_zeroed: bool,
    /// trivial character: the stored series is `(1 - (1+p)/(1+T)) f`
    pub pole_factored: bool,
}

// Raw sums c_i = sum_{gamma_n(k) = i} k omega(k)^{j-1} mod p^{work}, for each j.
//
// With k = omega(r) (1+p)^i mod p^{n+1} the integer representative of k is
// recomputed per i; weights depend only on r.
fn stickelberger_raw(p: u64, n: u32, work: PadicCtx, js: &[u64]) -> Result<Vec<Vec<u128>>> {
    let level = PadicCtx::new(p, n + 1)?;
    let q = level.modulus();
    let len = level_size(p, n);
    let m = work.modulus();
    let omega_level = level.teichmuller_table();
    let omega_work = work.teichmuller_table();
    let fits_u64 = (p as u128 - 1)
        .checked_mul(m - 1)
        .and_then(|x| x.checked_mul(q - 1))
        .is_some_and(|x| x < u64::MAX as u128);
    let g = 1 + p as u128;

    let one = |j: u64| -> Vec<u128> {
        let e = ((j + p - 2) % (p - 1)) as u128;
        let w: Vec<u128> = (1..p as usize).map(|r| work.pow(omega_work[r], e)).collect();
        let mut cur: Vec<u128> = omega_level[1..].to_vec();
        let mut out = Vec::with_capacity(len);
        if fits_u64 {
            let w64: Vec<u64> = w.iter().map(|&x| x as u64).collect();
            let mut cur64: Vec<u64> = cur.iter().map(|&x| x as u64).collect();
            let (q64, g64, m64) = (q as u64, g as u64, m as u64);
            for _ in 0..len {
                let s: u64 = w64.iter().zip(&cur64).map(|(a, b)| a * b).sum();
                out.push((s % m64) as u128);
                for c in cur64.iter_mut() {
                    *c = ((*c as u128 * g64 as u128) % q64 as u128) as u64;
                }
            }
        } else {
            for _ in 0..len {
                let mut s = 0u128;
                for (a, b) in w.iter().zip(&cur) {
                    s = work.add(s, mul_mod(*a, *b, m));
                }
                out.push(s);
                for c in cur.iter_mut() {
                    *c = mul_mod(*c, g, q);
                }
            }
        }
        out
    };
    Ok(js.par_iter().map(|&j| one(j)).collect())
}

fn stickelberger_div(theta: &DeltaChar, n: u32, raw: Vec<u128>, work: PadicCtx) -> Result<IwasawaPoly<PadicCtx>> {
    let ctx = theta.ctx();
    let p = ctx.p() as u128;
    let mut raw = raw;
    if theta.is_trivial() {
        // multiply by 1 - (1+p) (1+T)
        let len = raw.len();
        let shifted: Vec<u128> = (0..len).map(|i| raw[(i + len - 1) % len]).collect();
        for (c, s) in raw.iter_mut().zip(shifted) {
            *c = work.sub(*c, work.mul(1 + p, s));
        }
    }
    let coeffs = raw
        .into_iter()
        .map(|c| {
            let (lower, q) = work.div_exact_pow_p(c, n + 1)?;
            Ok(ctx.neg(lower.truncate_to(q, &ctx)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IwasawaPoly::from_group_ring_vec(&ctx, n, coeffs))
}

fn working_ctx(ctx: PadicCtx, n: u32) -> Result<PadicCtx> {
    ctx.with_precision(ctx.precision() + n + 1)
}

/// `v_n(theta) = -p^{-(n+1)} sum k theta omega^{-1}(k) gamma_n(k)`; for trivial
/// theta the sum is first multiplied by `1 - (1+p) gamma_n(1+p)`.
pub fn v_element(theta: &DeltaChar, n: u32) -> Result<IwasawaPoly<PadicCtx>> {
    let ctx = theta.ctx();
    let work = working_ctx(ctx, n)?;
    let raw = stickelberger_raw(ctx.p(), n, work, &[theta.j()])?.pop().expect("one row");
    stickelberger_div(theta, n, raw, work)
}

/// `w_n(theta) = p^{n+1} v_n(theta) = -sum k theta omega^{-1}(k) gamma_n(k)`, no division.
pub fn w_element(theta: &DeltaChar, n: u32) -> Result<IwasawaPoly<PadicCtx>> {
    let ctx = theta.ctx();
    let raw = stickelberger_raw(ctx.p(), n, ctx, &[theta.j()])?.pop().expect("one row");
    Ok(IwasawaPoly::from_group_ring_vec(&ctx, n, raw).neg())
}

fn f_from_v(theta: &DeltaChar, n: u32, v: Option<IwasawaPoly<PadicCtx>>) -> Result<LSeriesResult<PadicCtx>> {
    let ctx = theta.ctx();
    let series = match v {
        Some(v) => v.substitute(-1)?,
        None => IwasawaPoly::zero(&ctx, n),
    };
    Ok(LSeriesResult {
        series,
        j: theta.j(),
        n,
        precision: ctx.precision(),
        working_precision: ctx.precision() + n + 1,
        odd_zeroed: !theta.is_even(),
        pole_factored: theta.is_trivial(),
    })
}

/// `f(T, theta) = v_n(theta)` under `T -> 1/(1+T) - 1`; zero for odd theta.
pub fn f_series(theta: &DeltaChar, n: u32) -> Result<LSeriesResult<PadicCtx>> {
    let v = if theta.is_even() { Some(v_element(theta, n)?) } else { None };
    f_from_v(theta, n, v)
}

/// `f_series` for several characters at once, sharing the sweep.
pub fn f_series_batch(ctx: PadicCtx, n: u32, js: &[u64]) -> Result<Vec<LSeriesResult<PadicCtx>>> {
    let work = working_ctx(ctx, n)?;
    let even: Vec<u64> = js.iter().copied().filter(|j| j % 2 == 0).collect();
    let mut raws = stickelberger_raw(ctx.p(), n, work, &even)?.into_iter();
    js.iter()
        .map(|&j| {
            let theta = DeltaChar::new(ctx, j as i64);
            let v = if theta.is_even() {
                Some(stickelberger_div(&theta, n, raws.next().expect("row per even j"), work)?)
            } else {
                None
            };
            f_from_v(&theta, n, v)
        })
        .collect()
}

/// `f((1+p)^{1-m} - 1, theta) = -B_{m, theta}/m` modulo `p^{min(N, n+1)}`.
pub fn interpolation_check(theta: &DeltaChar, m: u64, n: u32, oracle: &mut BernoulliOracle) -> Result<Check> {
    let ctx = theta.ctx();
    let p = ctx.p();
    if !theta.is_even() || theta.is_trivial() {
        return Err(Error::Precondition("interpolation needs an even nontrivial character".into()));
    }
    if !m.is_multiple_of(p - 1) || m < p - 1 {
        return Err(Error::Precondition(format!("m = {m} must be a positive multiple of p - 1")));
    }
    let digits = ctx.precision().min(n + 1);
    if digits == 0 {
        return Err(Error::PrecisionTooLow);
    }
    let f = f_series(theta, n)?.series;
    let u = ctx.inv(ctx.pow(1 + p as u128, (m - 1) as u128)).expect("unit");
    let value = f.evaluate(&ctx.sub(u, 1));
    let expect = oracle.l_value(ctx, theta.j(), m as usize)?;
    let cmp = ctx.with_precision(digits)?;
    Ok(Check::from_bool(value % cmp.modulus() == expect % cmp.modulus()))
}

fn require_not_one_or_omega(theta: &DeltaChar) -> Result<()> {
    if theta.j() <= 1 {
        return Err(Error::Precondition("theta must differ from 1 and omega".into()));
    }
    Ok(())
}

/// Closed form `(p-1) theta omega^{-1}(-1) gamma_n(p-1) sum_{p !| l <= (p^{n+1}-1)/(p-1)} theta omega^{-1}(l) gamma_n(l)`.
pub fn g_closed_form(theta: &DeltaChar, n: u32) -> Result<IwasawaPoly<PadicCtx>> {
    require_not_one_or_omega(theta)?;
    let ctx = theta.ctx();
    let p = ctx.p() as u128;
    let table = GammaIndexTable::new(ctx.p(), n, 1 + p)?;
    let tw = theta.twist_omega_inv();
    let top = (p.pow(n + 1) - 1) / (p - 1);
    let sum = IwasawaPoly::from_group_ring(
        &ctx,
        n,
        (1..=top).filter(|l| l % p != 0).map(|l| (table.get(l).expect("unit") as u128, tw.value(l).expect("unit"))),
    );
    let lead = ctx.mul(ctx.from_i64(p as i64 - 1), tw.sign());
    let shift = IwasawaPoly::gamma_power(&ctx, n, table.get(p - 1).expect("unit") as u128);
    Ok(sum.mul(&shift).scale(&lead))
}

/// `G_n(theta) = sum_{alpha in mu_{p-1}, alpha != 1} (alpha - 1) M_n(theta, alpha)`,
/// checked against the closed form.
pub fn g_unit_series(theta: &DeltaChar, n: u32) -> Result<IwasawaPoly<PadicCtx>> {
    require_not_one_or_omega(theta)?;
    let ctx = theta.ctx();
    let mut acc = IwasawaPoly::zero(&ctx, n);
    for a in 2..ctx.p() as u128 {
        let alpha = ctx.teichmuller(a)?;
        let m = mirimanoff_series(&ctx, theta, &alpha, n)?.series;
        acc = acc.add(&m.scale(&ctx.sub(alpha, 1)));
    }
    let closed = g_closed_form(theta, n)?;
    if let Some(index) = Check::series(&acc, &closed).witness {
        return Err(Error::ClosedFormMismatch { index });
    }
    Ok(acc)
}

/// `sum_{l | d} l mu(d/l) theta omega^{-1}(l) gamma_n(l)`.
pub fn mobius_factor(theta: &DeltaChar, d: u64, n: u32) -> Result<IwasawaPoly<PadicCtx>> {
    let ctx = theta.ctx();
    let table = GammaIndexTable::new(ctx.p(), n, 1 + ctx.p() as u128)?;
    let tw = theta.twist_omega_inv();
    let mut entries = Vec::new();
    for l in divisors(d) {
        let mu = mobius(d / l);
        if mu == 0 {
            continue;
        }
        let c = ctx.mul(ctx.from_i64(mu * l as i64), tw.value(l as u128)?);
        entries.push((table.get(l as u128).expect("unit") as u128, c));
    }
    Ok(IwasawaPoly::from_group_ring(&ctx, n, entries))
}

/// `sum_{o(rho) = d} M_n(theta, rho) = -v_n(theta) sum_{l | d} l mu(d/l) theta omega^{-1}(l) gamma_n(l)`.
///
/// For odd theta the right side is zero; for trivial theta both sides carry
/// the factor `1 - (1+p) gamma_n(1+p)`.
pub fn theorem5_check(theta: &DeltaChar, d: u64, n: u32, seed: u64) -> Result<Check> {
    let ctx = theta.ctx();
    let mut lhs = primitive_sum(theta, d, n, seed)?;
    let rhs = if theta.is_even() {
        v_element(theta, n)?.mul(&mobius_factor(theta, d, n)?).neg()
    } else {
        IwasawaPoly::zero(&ctx, n)
    };
    if theta.is_trivial() {
        let factor = IwasawaPoly::one(&ctx, n)
            .sub(&IwasawaPoly::gamma_power(&ctx, n, 1).scale(&(1 + ctx.p() as u128)));
        lhs = lhs.mul(&factor);
    }
    Ok(Check::series(&lhs, &rhs))
}

/// `f' != 0 (mod p)` at level n; a vanishing derivative is never asserted.
pub fn corollary1_from_series(f: &IwasawaPoly<PadicCtx>) -> Result<Check> {
    if f.derivative_nonzero_mod_p() {
        return Ok(Check::pass());
    }
    if let Ok(ml) = f.mu_lambda() {
        if let Lambda::Resolved(l) = ml.lambda {
            if ml.mu == 0 && l >= 1 && l % f.ring().p() != 0 {
                return Ok(Check::pass());
            }
        }
    }
    Err(Error::NeedsHigherPrecision { level: f.level() })
}

pub fn corollary1_check(theta: &DeltaChar, n: u32) -> Result<Check> {
    if !theta.is_even() || theta.is_trivial() {
        return Err(Error::Precondition("corollary 1 needs an even nontrivial character".into()));
    }
    corollary1_from_series(&f_series(theta, n)?.series)
}

/// `B(y) = floor((1+q_0) y) - (1+q_0) floor(y) - q_0/2` in `Z/p^N`.
pub fn b_fractional(y: &BigRational, q0: u64, ctx: &PadicCtx) -> u128 {
    let s = BigInt::from(1 + q0);
    let a = (y * BigRational::from_integer(s.clone())).floor().to_integer();
    let b = y.floor().to_integer() * &s;
    let m = BigInt::from(ctx.modulus());
    let int = (a - b).mod_floor(&m).to_u128().expect("reduced");
    let half = ctx.inv(2).expect("p odd");
    ctx.sub(int, ctx.mul(q0 as u128 % ctx.modulus(), half))
}

/// `g(T, chi) = sum_{(a, q_0) = 1, a <= q_n} B(a/q_n) chi omega^{-1}(a) (1+T)^{-i(a)-1}`,
/// `i` the index for the base `1 + q_0`.
pub fn g_series(chi: &DirichletChar, n: u32) -> Result<LSeriesResult<crate::unramified::UnramCtx>> {
    if !chi.is_even() {
        return Err(Error::Precondition("g is defined for even characters".into()));
    }
    let w = chi.ring().clone();
    let base = w.base_ctx();
    let p = chi.p();
    let q0 = chi.q0();
    let qn = q0 as u128 * (p as u128).pow(n);
    let table = GammaIndexTable::new(p, n, 1 + q0 as u128)?;
    let len = level_size(p, n) as u128;
    let half_q0 = base.mul(q0 as u128 % base.modulus(), base.inv(2).expect("p odd"));
    let mut coeffs = IwasawaPoly::zero(&w, n).into_group_ring();
    for a in 1..=qn {
        if gcd((a % q0 as u128) as u64, q0) != 1 {
            continue;
        }
        // 0 < a/q_n <= 1 so the floor of y vanishes except at a = q_n, which is not prime to q_0
        let fl = ((1 + q0 as u128) * a) / qn;
        let b = base.sub(fl % base.modulus(), half_q0);
        let i = table.get(a).expect("unit") as u128;
        let e = ((len - i % len) + len - 1) % len;
        let term = w.mul_base(&chi.value_twist(a as u64), b);
        w.add_assign(&mut coeffs[e as usize], &term);
    }
    Ok(LSeriesResult {
        series: IwasawaPoly::from_group_ring_vec(&w, n, coeffs),
        j: chi.j(),
        n,
        precision: base.precision(),
        working_precision: base.precision(),
        odd_zeroed: false,
        pole_factored: false,
    })
}

/// Nonvanishing of `g` and `g'` mod p, and for `d = 1` agreement with `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Theorem6Report {
    pub nonzero: bool,
    pub derivative_nonzero: bool,
    /// `(1+T) g = (T - q_0) f`; only for `d = 1`
    pub cross_identity: Option<Check>,
}

impl Theorem6Report {
    pub fn holds(&self) -> bool {
        self.nonzero && self.derivative_nonzero && self.cross_identity.is_none_or(|c| c.holds)
    }
}

pub fn theorem6_check(chi: &DirichletChar, n: u32) -> Result<Theorem6Report> {
    let g = g_series(chi, n)?.series;
    let nonzero = !g.is_zero_mod_p();
    let derivative_nonzero = g.derivative_nonzero_mod_p();
    let cross_identity = if chi.d() == 1 {
        let base = chi.ring().base_ctx();
        let coeffs = g
            .group_ring()
            .iter()
            .map(|c| chi.ring().to_base(c).ok_or(Error::NotRational))
            .collect::<Result<Vec<_>>>()?;
        let g = IwasawaPoly::from_group_ring_vec(&base, n, coeffs);
        let theta = DeltaChar::new(base, chi.j() as i64);
        let f = f_series(&theta, n)?.series;
        let gamma = IwasawaPoly::gamma_power(&base, n, 1);
        let check = if theta.is_trivial() {
            // the stored f already carries (T - p)/(1 + T)
            Check::series(&g, &f)
        } else {
            let t_minus_q0 = gamma.sub(&IwasawaPoly::constant(&base, n, 1 + chi.q0() as u128));
            Check::series(&g.mul(&gamma), &f.mul(&t_minus_q0))
        };
        Some(check)
    } else {
        None
    };
    Ok(Theorem6Report { nonzero, derivative_nonzero, cross_identity })
}

/// One row of the λ/μ table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LambdaRow {
    pub p: u64,
    pub j: u64,
    pub mu: u32,
    pub lambda: Lambda,
    pub fprime_nonzero: bool,
}

/// Rows for every even nontrivial `omega^j`, ordered by `(p, j)`.
pub fn lambda_table(primes: &[u64], n: u32, prec: u32) -> Result<Vec<LambdaRow>> {
    let rows = primes
        .par_iter()
        .map(|&p| {
            let ctx = PadicCtx::new(p, prec)?;
            let js: Vec<u64> = enumerate_even_nontrivial(ctx).iter().map(|t| t.j()).collect();
            let fs = f_series_batch(ctx, n, &js)?;
            js.iter()
                .zip(fs)
                .map(|(&j, f)| {
                    let ml = f.series.mu_lambda()?;
                    Ok(LambdaRow {
                        p,
                        j,
                        mu: ml.mu,
                        lambda: ml.lambda,
                        fprime_nonzero: f.series.derivative_nonzero_mod_p(),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.into_iter().flatten().collect())
}
