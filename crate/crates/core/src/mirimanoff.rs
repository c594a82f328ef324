//! Mirimanoff polynomials and the series `M_n(theta, a)`.

use crate::arith::gcd;
use crate::characters::DeltaChar;
use crate::check::Check;
use crate::error::{Error, Result};
use crate::iwasawa::IwasawaPoly;
use crate::padic::{GammaIndexTable, PadicCtx};
use crate::ring::CoeffRing;
use crate::unramified::make_splitting_ctx_seeded;

/// `phi_j(T) = sum_{a=1}^{p-1} a^{j-1} T^a` over `F_p`, constant term first.
pub fn phi(j: u64, p: u64) -> Result<Vec<u64>> {
    if j == 0 || j > p - 1 {
        return Err(Error::OutOfRange(format!("j = {j} not in 1..={}", p - 1)));
    }
    let mut c = vec![0u64; p as usize];
    for (a, slot) in c.iter_mut().enumerate().skip(1) {
        *slot = crate::arith::pow_mod(a as u128, (j - 1) as u128, p as u128) as u64;
    }
    Ok(c)
}

/// `u_n(theta, a) = sum_{p !| k < p^{n+1}} theta omega^{-1}(k) a^k gamma_n(k)`.
pub fn u_series<R: CoeffRing>(ring: &R, theta: &DeltaChar, a: &R::Elem, n: u32) -> Result<IwasawaPoly<R>> {
    if !ring.is_unit(a) {
        return Err(Error::NotUnit);
    }
    let p = ring.prime();
    let table = GammaIndexTable::new(p, n, 1 + p as u128)?;
    let tw = theta.with_ctx(ring.base()).twist_omega_inv().table();
    let top = (p as u128).pow(n + 1);
    let mut coeffs = IwasawaPoly::zero(ring, n).into_group_ring();
    let mut pw = ring.one();
    for k in 1..top {
        pw = ring.mul(&pw, a);
        let r = (k % p as u128) as usize;
        if r == 0 {
            continue;
        }
        let i = table.get(k).expect("unit") as usize;
        let term = ring.mul_base(&pw, tw[r]);
        ring.add_assign(&mut coeffs[i], &term);
    }
    Ok(IwasawaPoly::from_group_ring_vec(ring, n, coeffs))
}

/// `M_n(theta, a)` with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct MirimanoffSeries<R: CoeffRing> {
    pub series: IwasawaPoly<R>,
    pub j: u64,
    pub a: R::Elem,
    pub n: u32,
}

impl<R: CoeffRing> MirimanoffSeries<R> {
    pub fn precision(&self) -> u32 {
        self.series.ring().precision()
    }
}

/// `M_n(theta, a) = u_n(theta, a) / (a^{p^{n+1}} - 1)`.
pub fn mirimanoff_series<R: CoeffRing>(
    ring: &R,
    theta: &DeltaChar,
    a: &R::Elem,
    n: u32,
) -> Result<MirimanoffSeries<R>> {
    if !ring.is_unit(a) || !ring.is_unit(&ring.sub(a, &ring.one())) {
        return Err(Error::BadA);
    }
    let p = ring.prime() as u128;
    let den = ring.sub(&ring.pow(a, p.pow(n + 1)), &ring.one());
    let inv = ring.inv(&den).ok_or(Error::BadA)?;
    let series = u_series(ring, theta, a, n)?.scale(&inv);
    Ok(MirimanoffSeries { series, j: theta.j(), a: a.clone(), n })
}

/// `M(theta, a) = (-1)^j M(theta, a^{-1})`.
pub fn lemma4_check<R: CoeffRing>(ring: &R, theta: &DeltaChar, a: &R::Elem, n: u32) -> Result<Check> {
    let lhs = mirimanoff_series(ring, theta, a, n)?.series;
    let a_inv = ring.inv(a).ok_or(Error::BadA)?;
    let mut rhs = mirimanoff_series(ring, theta, &a_inv, n)?.series;
    if !theta.is_even() {
        rhs = rhs.neg();
    }
    Ok(Check::series(&lhs, &rhs))
}

/// Restricting `M_{n+1}` gives `M_n`.
pub fn lemma3_check<R: CoeffRing>(ring: &R, theta: &DeltaChar, a: &R::Elem, n: u32) -> Result<Check> {
    let upper = mirimanoff_series(ring, theta, a, n + 1)?.series.restrict()?;
    let lower = mirimanoff_series(ring, theta, a, n)?.series;
    Ok(Check::series(&upper, &lower))
}

/// `M(0, theta, a) = phi_j(a) / (a^p - 1) (mod p)`.
pub fn value_at_zero_check<R: CoeffRing>(ring: &R, theta: &DeltaChar, a: &R::Elem, n: u32) -> Result<Check> {
    let m0 = mirimanoff_series(ring, theta, a, n)?.series.augmentation();
    let r1 = ring.with_precision(1)?;
    let a1 = ring.truncate_elem(a, &r1);
    let p = ring.prime();
    let j = if theta.j() == 0 { p - 1 } else { theta.j() };
    let coeffs = phi(j, p)?;
    let mut phi_a = r1.zero();
    let mut pw = r1.one();
    for c in coeffs.iter().skip(1) {
        pw = r1.mul(&pw, &a1);
        phi_a = r1.add(&phi_a, &r1.mul_base(&pw, *c as u128));
    }
    let den = r1.sub(&r1.pow(&a1, p as u128), &r1.one());
    let rhs = r1.mul(&phi_a, &r1.inv(&den).ok_or(Error::BadA)?);
    Ok(Check::from_bool(ring.truncate_elem(&m0, &r1) == rhs))
}

/// Whether `M_n(theta, a)` has vanishing derivative mod p, i.e. its
/// representative mod `(p, omega_n)` is a series in `T^p`.
pub fn derivative_vanishes_mod_p<R: CoeffRing>(ring: &R, theta: &DeltaChar, a: &R::Elem, n: u32) -> Result<bool> {
    let m = mirimanoff_series(ring, theta, a, n)?;
    Ok(!m.series.derivative_nonzero_mod_p())
}

/// `sum M_n(theta, rho)` over primitive d-th roots of unity, as a series over `Z/p^N`.
pub fn primitive_sum(theta: &DeltaChar, d: u64, n: u32, seed: u64) -> Result<IwasawaPoly<PadicCtx>> {
    let base = theta.ctx();
    let p = base.p();
    if d < 2 || gcd(d, p) != 1 {
        return Err(Error::BadD { d, reason: "need d >= 2 prime to p" });
    }
    let w = make_splitting_ctx_seeded(p, base.precision(), d, seed)?;
    let mut acc = IwasawaPoly::zero(&w, n);
    for rho in w.roots_of_unity(d)? {
        acc = acc.add(&mirimanoff_series(&w, theta, &rho, n)?.series);
    }
    let coeffs = acc
        .group_ring()
        .iter()
        .map(|c| w.to_base(c).ok_or(Error::NotRational))
        .collect::<Result<Vec<_>>>()?;
    Ok(IwasawaPoly::from_group_ring_vec(&base, n, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unramified::make_splitting_ctx;
    use proptest::prelude::*;

    fn ctx(p: u64, prec: u32) -> PadicCtx {
        PadicCtx::new(p, prec).unwrap()
    }

    #[test]
    fn mirimanoff_polynomials() {
        assert_eq!(phi(1, 5).unwrap(), vec![0, 1, 1, 1, 1]);
        assert_eq!(phi(2, 5).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(phi(3, 5).unwrap(), vec![0, 1, 4, 4, 1]);
        assert!(phi(0, 5).is_err());
        assert!(phi(5, 5).is_err());
    }

    #[test]
    fn value_at_zero_example() {
        let c = ctx(5, 2);
        let m = mirimanoff_series(&c, &DeltaChar::new(c, 2), &2, 1).unwrap();
        assert_eq!(m.series.augmentation() % 5, 3);
    }

    #[test]
    fn odd_theta_at_minus_one_vanishes() {
        for p in [5u64, 7, 11] {
            let c = ctx(p, 2);
            for j in (1..p - 1).step_by(2) {
                let m = mirimanoff_series(&c, &DeltaChar::new(c, j as i64), &c.neg(1), 2).unwrap();
                assert!(m.series.is_zero(), "p={p} j={j}");
            }
        }
    }

    #[test]
    fn bad_arguments() {
        let c = ctx(5, 2);
        let t = DeltaChar::new(c, 2);
        assert_eq!(mirimanoff_series(&c, &t, &6, 1).unwrap_err(), Error::BadA);
        assert_eq!(mirimanoff_series(&c, &t, &10, 1).unwrap_err(), Error::BadA);
        assert!(matches!(primitive_sum(&t, 5, 1, 0), Err(Error::BadD { .. })));
    }

    #[test]
    fn lemma4_examples() {
        let c = ctx(5, 2);
        assert!(lemma4_check(&c, &DeltaChar::new(c, 2), &2, 1).unwrap().holds);
        assert!(lemma4_check(&c, &DeltaChar::new(c, 2), &24, 1).unwrap().holds);
        let c7 = ctx(7, 2);
        assert!(lemma4_check(&c7, &DeltaChar::new(c7, 3), &3, 1).unwrap().holds);
    }

    #[test]
    fn teichmuller_collapse() {
        // for a in mu_{p-1}: (a - 1) M_n = u_n
        let c = ctx(7, 3);
        let t = DeltaChar::new(c, 4);
        for a in 2..6u128 {
            let w = c.teichmuller(a).unwrap();
            let m = mirimanoff_series(&c, &t, &w, 1).unwrap().series;
            let u = u_series(&c, &t, &w, 1).unwrap();
            assert_eq!(m.scale(&c.sub(w, 1)), u);
        }
    }

    #[test]
    fn u0_sum_over_roots() {
        // sum over alpha != 1 in mu_{p-1} of u_0(theta, alpha) is (p-1) theta omega^{-1}(-1),
        // theta != omega
        for p in [5u64, 7, 11] {
            let c = ctx(p, 2);
            for j in (0..p - 1).filter(|&j| j != 1) {
                let t = DeltaChar::new(c, j as i64);
                let mut acc = IwasawaPoly::zero(&c, 0);
                for a in 2..p as u128 {
                    acc = acc.add(&u_series(&c, &t, &c.teichmuller(a).unwrap(), 0).unwrap());
                }
                let sign = t.twist_omega_inv().sign();
                assert_eq!(acc.coeff(0), &c.mul(c.from_i64(p as i64 - 1), sign));
            }
        }
    }

    #[test]
    fn restriction_compatible() {
        let c = ctx(5, 3);
        for j in 0..4 {
            for a in [2u128, 3, 7, 24] {
                assert!(lemma3_check(&c, &DeltaChar::new(c, j), &a, 1).unwrap().holds);
            }
        }
    }

    #[test]
    fn primitive_sums_are_rational() {
        let c = ctx(5, 2);
        let t = DeltaChar::new(c, 2);
        let s2 = primitive_sum(&t, 2, 1, 0).unwrap();
        assert_eq!(s2, mirimanoff_series(&c, &t, &24, 1).unwrap().series);
        let s3 = primitive_sum(&t, 3, 1, 0).unwrap();
        assert!(!s3.is_zero());
        assert!(primitive_sum(&DeltaChar::new(c, 1), 2, 1, 0).unwrap().is_zero());
    }

    #[test]
    fn frobenius_fixes_primitive_sum() {
        let w = make_splitting_ctx(7, 2, 4).unwrap();
        let t = DeltaChar::new(w.base_ctx(), 2);
        let mut direct = IwasawaPoly::zero(&w, 1);
        let mut frob = IwasawaPoly::zero(&w, 1);
        for rho in w.roots_of_unity(4).unwrap() {
            direct = direct.add(&mirimanoff_series(&w, &t, &rho, 1).unwrap().series);
            frob = frob.add(&mirimanoff_series(&w, &t, &w.frobenius(&rho), 1).unwrap().series);
        }
        assert_eq!(direct, frob);
    }

    #[test]
    fn derivative_classification_small() {
        let c = ctx(5, 2);
        assert!(derivative_vanishes_mod_p(&c, &DeltaChar::new(c, 1), &24, 2).unwrap());
        assert!(derivative_vanishes_mod_p(&c, &DeltaChar::new(c, 3), &4, 2).unwrap());
        assert!(!derivative_vanishes_mod_p(&c, &DeltaChar::new(c, 2), &2, 2).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn antisymmetry_random(j in 0i64..10, a in 2u128..10_000) {
            let c = ctx(11, 2);
            prop_assume!(a % 11 > 1);
            prop_assert!(lemma4_check(&c, &DeltaChar::new(c, j), &a, 1).unwrap().holds);
        }

        #[test]
        fn value_at_zero_random(j in 0i64..6, a in 2u128..1000) {
            let c = ctx(7, 2);
            prop_assume!(a % 7 > 1);
            prop_assert!(value_at_zero_check(&c, &DeltaChar::new(c, j), &a, 1).unwrap().holds);
        }
    }
}
