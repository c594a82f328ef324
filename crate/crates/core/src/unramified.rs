//! Truncated unramified extensions `W = (Z/p^N)[x]/(h)` containing the
//! `d`-th roots of unity for some `d` prime to `p`.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{self, gcd};
use crate::error::{Error, Result};
use crate::padic::PadicCtx;
use crate::poly::{self, PolyRing};
use crate::ring::CoeffRing;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnramElem {
    pub coeffs: Vec<u128>,
}

struct Inner {
    base: PadicCtx,
    d: u64,
    seed: u64,
    /// monic, length m + 1
    h: Vec<u128>,
    /// images of x^i (i < m) under Frobenius
    frob: Vec<Vec<u128>>,
}

#[derive(Clone)]
pub struct UnramCtx {
    inner: Arc<Inner>,
}

impl fmt::Debug for UnramCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({:?}, d={}, h={:?})", self.inner.base, self.inner.d, self.inner.h)
    }
}

impl PartialEq for UnramCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.h == other.inner.h)
    }
}

/// Build a ring containing the `d`-th roots of unity, of degree `ord_d(p)`.
pub fn make_splitting_ctx(p: u64, prec: u32, d: u64) -> Result<UnramCtx> {
    make_splitting_ctx_seeded(p, prec, d, 0)
}

pub fn make_splitting_ctx_seeded(p: u64, prec: u32, d: u64, seed: u64) -> Result<UnramCtx> {
    let base = PadicCtx::new(p, prec)?;
    if d == 0 {
        return Err(Error::BadD { d, reason: "d must be positive" });
    }
    if gcd(d, p) != 1 {
        return Err(Error::BadD { d, reason: "d must be prime to p" });
    }
    let m = arith::multiplicative_order(p % d, d) as usize;
    let phi: Vec<u128> = poly::cyclotomic_poly(d).into_iter().map(|c| base.from_i128(c)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fp = PolyRing::fp(p);
    let mut factors = Vec::new();
    equal_degree_split(p, m, &fp.reduce(&phi), &mut rng, &mut factors);
    factors.sort();
    let g = factors.into_iter().next().expect("Phi_d has a factor");
    debug_assert_eq!(g.len(), m + 1);
    let h = hensel_lift(&base, &phi, &g);
    let mut ctx = UnramCtx { inner: Arc::new(Inner { base, d, seed, h, frob: Vec::new() }) };
    // x is a primitive d-th root of unity; Frobenius sends it to x^p.
    let x = ctx.gen();
    let xp = ctx.pow(&x, p as u128);
    let mut frob = Vec::with_capacity(m);
    let mut acc = ctx.one();
    for _ in 0..m {
        frob.push(acc.coeffs.clone());
        acc = ctx.mul(&acc, &xp);
    }
    Arc::get_mut(&mut ctx.inner).expect("fresh context").frob = frob;
    Ok(ctx)
}

// Cantor-Zassenhaus for a squarefree product of degree-m irreducibles over F_p.
fn equal_degree_split(p: u64, m: usize, f: &[u128], rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u128>>) {
    let fp = PolyRing::fp(p);
    let f = fp.monic(f);
    let deg = f.len() - 1;
    if deg == m {
        out.push(f);
        return;
    }
    loop {
        let r: Vec<u128> = (0..deg).map(|_| rng.random_range(0..p) as u128).collect();
        let r = fp.reduce(&r);
        if r.len() <= 1 {
            continue;
        }
        // r^{(q-1)/2} = Norm(r)^{(p-1)/2}, Norm(r) = prod_{i<m} r^{p^i}
        let mut norm = r.clone();
        let mut conj = r.clone();
        for _ in 1..m {
            conj = fp.powmod(&conj, p as u128, &f);
            norm = fp.mulmod(&norm, &conj, &f);
        }
        let s = fp.powmod(&norm, (p as u128 - 1) / 2, &f);
        let s1 = fp.sub(&s, &[1]);
        let g = poly::fp_gcd(p, &f, &s1);
        let dg = g.len().saturating_sub(1);
        if dg > 0 && dg < deg {
            let (q, _) = fp.divrem(&f, &g);
            equal_degree_split(p, m, &g, rng, out);
            equal_degree_split(p, m, &q, rng, out);
            return;
        }
    }
}

// Lift a monic factor g of f mod p to a monic factor of f mod p^N.
fn hensel_lift(base: &PadicCtx, f: &[u128], g: &[u128]) -> Vec<u128> {
    let p = base.p();
    let fp = PolyRing::fp(p);
    let (k, _) = fp.divrem(f, g);
    let (one, s, t) = poly::fp_ext_gcd(p, g, &k);
    assert_eq!(one, vec![1u128], "factors must be coprime");
    let mut big_g = g.to_vec();
    let mut big_k = k;
    let full = PolyRing::over(base);
    for j in 1..base.precision() {
        let pj = base.p_pow(j);
        let next = PolyRing { p, m: pj * p as u128 };
        let diff = next.sub(f, &next.mul(&big_g, &big_k));
        let e: Vec<u128> = diff.iter().map(|c| (c / pj) % p as u128).collect();
        let e = fp.reduce(&e);
        let (q, r) = fp.divrem(&fp.mul(&e, &t), g);
        let corr_k = fp.add(&fp.mul(&e, &s), &fp.mul(&q, &k_mod_p(&fp, &big_k)));
        big_g = full.add(&big_g, &full.scale(&r, pj));
        big_k = full.add(&big_k, &full.scale(&corr_k, pj));
    }
    big_g
}

fn k_mod_p(fp: &PolyRing, k: &[u128]) -> Vec<u128> {
    fp.reduce(k)
}

impl UnramCtx {
    pub fn base_ctx(&self) -> PadicCtx {
        self.inner.base
    }

    pub fn m(&self) -> usize {
        self.inner.h.len() - 1
    }

    pub fn d(&self) -> u64 {
        self.inner.d
    }

    pub fn seed(&self) -> u64 {
        self.inner.seed
    }

    pub fn modulus_poly(&self) -> &[u128] {
        &self.inner.h
    }

    /// `q = p^m`, the size of the residue field.
    pub fn residue_field_size(&self) -> u128 {
        (self.inner.base.p() as u128).pow(self.m() as u32)
    }

    fn poly_ring(&self) -> PolyRing {
        PolyRing::over(&self.inner.base)
    }

    pub fn elem(&self, coeffs: &[u128]) -> UnramElem {
        let r = self.poly_ring();
        let red = r.rem(coeffs, &self.inner.h);
        self.pad(red)
    }

    fn pad(&self, mut v: Vec<u128>) -> UnramElem {
        v.resize(self.m(), 0);
        UnramElem { coeffs: v }
    }

    /// The class of x.
    pub fn gen(&self) -> UnramElem {
        self.elem(&[0, 1])
    }

    pub fn frobenius(&self, e: &UnramElem) -> UnramElem {
        let b = self.inner.base;
        let mut out = vec![0u128; self.m()];
        for (c, img) in e.coeffs.iter().zip(&self.inner.frob) {
            if *c == 0 {
                continue;
            }
            for (o, v) in out.iter_mut().zip(img) {
                *o = b.add(*o, b.mul(*c, *v));
            }
        }
        UnramElem { coeffs: out }
    }

    pub fn trace_to_base(&self, e: &UnramElem) -> u128 {
        let mut acc = self.zero();
        let mut cur = e.clone();
        for _ in 0..self.m() {
            acc = self.add(&acc, &cur);
            cur = self.frobenius(&cur);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        acc.coeffs[0]
    }

    /// Fixpoint of y -> y^q.
    pub fn teichmuller_lift(&self, e: &UnramElem) -> Result<UnramElem> {
        if !self.is_unit(e) {
            return Err(Error::NotUnit);
        }
        let p = self.inner.base.p() as u128;
        let mut y = e.clone();
        for _ in 0..=self.inner.base.precision() {
            let mut z = y.clone();
            for _ in 0..self.m() {
                z = self.pow(&z, p);
            }
            if z == y {
                return Ok(y);
            }
            y = z;
        }
        Ok(y)
    }

    /// All primitive `d`-th roots of unity, listed as `z^k` with `k` ascending
    /// for a fixed deterministic generator `z`.
    pub fn roots_of_unity(&self, d: u64) -> Result<Vec<UnramElem>> {
        let q1 = self.residue_field_size() - 1;
        if d == 0 || !q1.is_multiple_of(d as u128) {
            return Err(Error::BadD { d, reason: "d must divide p^m - 1" });
        }
        let z = self.primitive_root(d);
        Ok((1..=d)
            .filter(|&k| gcd(k, d) == 1)
            .map(|k| self.pow(&z, k as u128))
            .collect())
    }

    fn primitive_root(&self, d: u64) -> UnramElem {
        if d == 1 {
            return self.one();
        }
        let p = self.inner.base.p();
        let m = self.m();
        let q1 = self.residue_field_size() - 1;
        let primes = arith::prime_factors(d);
        // enumerate residue-field elements by base-p digits of a counter
        let mut counter: u128 = 1;
        loop {
            let mut digits = Vec::with_capacity(m);
            let mut c = counter;
            for _ in 0..m {
                digits.push(c % p as u128);
                c /= p as u128;
            }
            counter += 1;
            let cand = self.elem(&digits);
            let Ok(w) = self.teichmuller_lift(&cand) else { continue };
            let z = self.pow(&w, q1 / d as u128);
            if primes.iter().all(|&l| self.pow(&z, (d / l) as u128) != self.one()) {
                return z;
            }
        }
    }
}

impl CoeffRing for UnramCtx {
    type Elem = UnramElem;

    fn prime(&self) -> u64 {
        self.inner.base.p()
    }
    fn precision(&self) -> u32 {
        self.inner.base.precision()
    }
    fn degree(&self) -> usize {
        self.m()
    }
    fn base(&self) -> PadicCtx {
        self.inner.base
    }
    fn zero(&self) -> UnramElem {
        UnramElem { coeffs: vec![0; self.m()] }
    }
    fn one(&self) -> UnramElem {
        self.from_base(1)
    }
    fn from_base(&self, c: u128) -> UnramElem {
        let mut v = vec![0; self.m()];
        v[0] = c % self.inner.base.modulus();
        UnramElem { coeffs: v }
    }
    fn add(&self, a: &UnramElem, b: &UnramElem) -> UnramElem {
        let bctx = self.inner.base;
        UnramElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| bctx.add(*x, *y)).collect() }
    }
    fn sub(&self, a: &UnramElem, b: &UnramElem) -> UnramElem {
        let bctx = self.inner.base;
        UnramElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| bctx.sub(*x, *y)).collect() }
    }
    fn neg(&self, a: &UnramElem) -> UnramElem {
        let bctx = self.inner.base;
        UnramElem { coeffs: a.coeffs.iter().map(|x| bctx.neg(*x)).collect() }
    }
    fn mul(&self, a: &UnramElem, b: &UnramElem) -> UnramElem {
        if self.m() == 1 {
            return UnramElem { coeffs: vec![self.inner.base.mul(a.coeffs[0], b.coeffs[0])] };
        }
        let r = self.poly_ring();
        self.pad(r.mulmod(&a.coeffs, &b.coeffs, &self.inner.h))
    }
    fn mul_base(&self, a: &UnramElem, c: u128) -> UnramElem {
        let bctx = self.inner.base;
        UnramElem { coeffs: a.coeffs.iter().map(|x| bctx.mul(*x, c)).collect() }
    }
    fn is_zero(&self, a: &UnramElem) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }
    fn valuation(&self, a: &UnramElem) -> u32 {
        a.coeffs.iter().map(|&c| self.inner.base.valuation(c)).min().unwrap_or(self.precision())
    }
    fn inv(&self, a: &UnramElem) -> Option<UnramElem> {
        if self.m() == 1 {
            return self.inner.base.inv(a.coeffs[0]).map(|v| UnramElem { coeffs: vec![v] });
        }
        let r = self.poly_ring();
        poly::inv_mod_poly(&r, &r.reduce(&a.coeffs), &self.inner.h).map(|v| self.pad(v))
    }
    fn with_precision(&self, prec: u32) -> Result<Self> {
        if prec > self.precision() {
            // lifting h further needs the original factorization
            return make_splitting_ctx_seeded(self.prime(), prec, self.inner.d, self.inner.seed);
        }
        let base = self.inner.base.with_precision(prec)?;
        let m = base.modulus();
        let inner = Inner {
            base,
            d: self.inner.d,
            seed: self.inner.seed,
            h: self.inner.h.iter().map(|c| c % m).collect(),
            frob: self.inner.frob.iter().map(|v| v.iter().map(|c| c % m).collect()).collect(),
        };
        Ok(UnramCtx { inner: Arc::new(inner) })
    }
    fn truncate_elem(&self, a: &UnramElem, target: &Self) -> UnramElem {
        let m = target.inner.base.modulus();
        UnramElem { coeffs: a.coeffs.iter().map(|c| c % m).collect() }
    }
    fn to_base(&self, a: &UnramElem) -> Option<u128> {
        a.coeffs[1..].iter().all(|&c| c == 0).then_some(a.coeffs[0])
    }
    fn residue_coords(&self, a: &UnramElem) -> Vec<u64> {
        let p = self.prime() as u128;
        a.coeffs.iter().map(|&c| (c % p) as u64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn splitting_degrees() {
        assert_eq!(make_splitting_ctx(5, 2, 2).unwrap().m(), 1);
        let w = make_splitting_ctx(5, 2, 3).unwrap();
        assert_eq!(w.m(), 2);
        assert_eq!(w.modulus_poly(), &[1, 1, 1]);
        assert_eq!(make_splitting_ctx(7, 2, 4).unwrap().m(), 2);
        assert!(matches!(make_splitting_ctx(5, 2, 10), Err(Error::BadD { .. })));
        assert_eq!(make_splitting_ctx(5, 3, 31).unwrap().m(), 3);
    }

    #[test]
    fn lifted_factor_divides_cyclotomic_polynomial() {
        for (p, d) in [(5u64, 31u64), (7, 19), (11, 7), (13, 8)] {
            let w = make_splitting_ctx(p, 4, d).unwrap();
            let x = w.gen();
            assert_eq!(w.pow(&x, d as u128), w.one());
            let base = w.base_ctx();
            let r = PolyRing::over(&base);
            let phi: Vec<u128> = poly::cyclotomic_poly(d).into_iter().map(|c| base.from_i128(c)).collect();
            assert!(r.rem(&phi, w.modulus_poly()).is_empty());
        }
    }

    #[test]
    fn teichmuller_examples() {
        let w = make_splitting_ctx(5, 3, 3).unwrap();
        assert_eq!(w.teichmuller_lift(&w.one()).unwrap(), w.one());
        let m1 = w.neg(&w.one());
        assert_eq!(w.teichmuller_lift(&m1).unwrap(), m1);
        let rho = w.teichmuller_lift(&w.gen()).unwrap();
        assert_eq!(w.pow(&rho, 3), w.one());
        assert_ne!(rho, w.one());
        let s = w.add(&rho, &w.mul(&rho, &rho));
        assert_eq!(s, m1);
        assert_eq!(w.teichmuller_lift(&w.from_base(5)), Err(Error::NotUnit));
    }

    #[test]
    fn roots_of_unity_examples() {
        let w = make_splitting_ctx(5, 3, 3).unwrap();
        assert_eq!(w.roots_of_unity(1).unwrap(), vec![w.one()]);
        assert_eq!(w.roots_of_unity(2).unwrap(), vec![w.neg(&w.one())]);
        let r3 = w.roots_of_unity(3).unwrap();
        assert_eq!(r3.len(), 2);
        assert_eq!(w.mul(&r3[0], &r3[1]), w.one());
        assert_eq!(w.add(&r3[0], &r3[1]), w.neg(&w.one()));
        assert!(w.roots_of_unity(7).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let w = make_splitting_ctx(5, 3, 3).unwrap();
        let c = w.from_base(17);
        assert_eq!(w.frobenius(&c), c);
        assert_eq!(w.trace_to_base(&w.one()), 2);
        let roots = w.roots_of_unity(3).unwrap();
        for r in &roots {
            let f = w.frobenius(r);
            assert_eq!(f, w.pow(r, 5));
            assert!(roots.contains(&f));
        }
    }

    #[test]
    fn primitive_roots_give_cyclotomic_polynomial() {
        // prod (X - rho) over primitive d-th roots equals Phi_d coefficientwise
        for (p, d) in [(5u64, 3u64), (5, 4), (7, 8), (11, 12), (13, 12), (5, 13)] {
            let w = make_splitting_ctx(p, 3, d).unwrap();
            let q1 = w.residue_field_size() - 1;
            let mut divs = arith::divisors(q1 as u64);
            divs.retain(|&e| e <= 60);
            for e in divs {
                let roots = w.roots_of_unity(e).unwrap();
                assert_eq!(roots.len() as u64, arith::euler_phi(e));
                let mut prod = vec![w.one()];
                for r in &roots {
                    let mut next = vec![w.zero(); prod.len() + 1];
                    for (i, c) in prod.iter().enumerate() {
                        next[i + 1] = w.add(&next[i + 1], c);
                        next[i] = w.sub(&next[i], &w.mul(c, r));
                    }
                    prod = next;
                }
                let phi = poly::cyclotomic_poly(e);
                let base = w.base_ctx();
                for (c, expect) in prod.iter().zip(phi) {
                    assert_eq!(w.to_base(c), Some(base.from_i128(expect)));
                }
            }
        }
    }

    #[test]
    fn frobenius_order_and_inverse() {
        let w = make_splitting_ctx(7, 4, 19).unwrap();
        let e = w.elem(&[3, 1, 4]);
        let mut f = e.clone();
        for _ in 0..w.m() {
            f = w.frobenius(&f);
        }
        assert_eq!(f, e);
        let inv = w.inv(&e).unwrap();
        assert_eq!(w.mul(&e, &inv), w.one());
    }

    proptest! {
        #[test]
        fn frobenius_is_a_ring_map(a in proptest::collection::vec(0u128..625, 2), b in proptest::collection::vec(0u128..625, 2)) {
            let w = make_splitting_ctx(5, 4, 3).unwrap();
            let (a, b) = (w.elem(&a), w.elem(&b));
            prop_assert_eq!(w.frobenius(&w.mul(&a, &b)), w.mul(&w.frobenius(&a), &w.frobenius(&b)));
            prop_assert_eq!(w.frobenius(&w.add(&a, &b)), w.add(&w.frobenius(&a), &w.frobenius(&b)));
            let fa = w.frobenius(&a);
            prop_assert_eq!(w.frobenius(&fa), a);
        }

        #[test]
        fn teichmuller_is_multiplicative(a in proptest::collection::vec(0u128..343, 2), b in proptest::collection::vec(0u128..343, 2)) {
            let w = make_splitting_ctx(7, 3, 4).unwrap();
            let (a, b) = (w.elem(&a), w.elem(&b));
            prop_assume!(w.is_unit(&a) && w.is_unit(&b));
            let lab = w.teichmuller_lift(&w.mul(&a, &b)).unwrap();
            let la = w.teichmuller_lift(&a).unwrap();
            let lb = w.teichmuller_lift(&b).unwrap();
            prop_assert_eq!(lab, w.mul(&la, &lb));
            let q1 = w.residue_field_size() - 1;
            prop_assert_eq!(w.pow(&la, q1), w.one());
            prop_assert_eq!(w.residue_coords(&la), w.residue_coords(&a));
        }
    }
}
