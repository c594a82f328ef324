//! Dense univariate polynomials over `F_p` and `Z/p^N`, low degree first.

use crate::arith::{add_mod, inv_mod_prime_power, mul_mod, pow_mod, sub_mod};
use crate::padic::PadicCtx;

pub fn trim<T: PartialEq + Default>(a: &mut Vec<T>) {
    while a.last().is_some_and(|c| *c == T::default()) {
        a.pop();
    }
}

/// Polynomials over `Z/m` for a prime power `m`; `p` is needed for inverses.
#[derive(Clone, Copy, Debug)]
pub struct PolyRing {
    pub p: u64,
    pub m: u128,
}

impl PolyRing {
    pub fn fp(p: u64) -> Self {
        PolyRing { p, m: p as u128 }
    }

    pub fn over(ctx: &PadicCtx) -> Self {
        PolyRing { p: ctx.p(), m: ctx.modulus() }
    }

    pub fn reduce(&self, a: &[u128]) -> Vec<u128> {
        let mut v: Vec<u128> = a.iter().map(|c| c % self.m).collect();
        trim(&mut v);
        v
    }

    pub fn add(&self, a: &[u128], b: &[u128]) -> Vec<u128> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            out.push(add_mod(x, y, self.m));
        }
        trim(&mut out);
        out
    }

    pub fn sub(&self, a: &[u128], b: &[u128]) -> Vec<u128> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            out.push(sub_mod(x, y, self.m));
        }
        trim(&mut out);
        out
    }

    pub fn scale(&self, a: &[u128], c: u128) -> Vec<u128> {
        let mut out: Vec<u128> = a.iter().map(|&x| mul_mod(x, c, self.m)).collect();
        trim(&mut out);
        out
    }

    pub fn mul(&self, a: &[u128], b: &[u128]) -> Vec<u128> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(x, y, self.m), self.m);
            }
        }
        trim(&mut out);
        out
    }

    /// Division by a polynomial with unit leading coefficient.
    pub fn divrem(&self, a: &[u128], b: &[u128]) -> (Vec<u128>, Vec<u128>) {
        let b = self.reduce(b);
        assert!(!b.is_empty(), "division by zero polynomial");
        let lead_inv = inv_mod_prime_power(*b.last().unwrap(), self.p, self.m)
            .expect("leading coefficient must be a unit");
        let mut r = self.reduce(a);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let mut q = vec![0u128; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + db], lead_inv, self.m);
            q[k] = c;
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = sub_mod(r[k + j], mul_mod(c, bj, self.m), self.m);
                }
            }
        }
        trim(&mut q);
        trim(&mut r);
        (q, r)
    }

    pub fn rem(&self, a: &[u128], b: &[u128]) -> Vec<u128> {
        self.divrem(a, b).1
    }

    pub fn mulmod(&self, a: &[u128], b: &[u128], f: &[u128]) -> Vec<u128> {
        self.rem(&self.mul(a, b), f)
    }

    pub fn powmod(&self, a: &[u128], mut e: u128, f: &[u128]) -> Vec<u128> {
        let mut base = self.rem(a, f);
        let mut acc = self.rem(&[1], f);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, f);
            }
            base = self.mulmod(&base, &base, f);
            e >>= 1;
        }
        acc
    }

    pub fn monic(&self, a: &[u128]) -> Vec<u128> {
        let a = self.reduce(a);
        match a.last() {
            None => a,
            Some(&l) => {
                let inv = inv_mod_prime_power(l, self.p, self.m).expect("unit leading coefficient");
                self.scale(&a, inv)
            }
        }
    }
}

/// Field-only routines (modulus p).
pub fn fp_gcd(p: u64, a: &[u128], b: &[u128]) -> Vec<u128> {
    let r = PolyRing::fp(p);
    let mut a = r.reduce(a);
    let mut b = r.reduce(b);
    while !b.is_empty() {
        let t = r.rem(&a, &b);
        a = b;
        b = t;
    }
    r.monic(&a)
}

/// Returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn fp_ext_gcd(p: u64, a: &[u128], b: &[u128]) -> (Vec<u128>, Vec<u128>, Vec<u128>) {
    let r = PolyRing::fp(p);
    let (mut r0, mut r1) = (r.reduce(a), r.reduce(b));
    let (mut s0, mut s1) = (vec![1u128], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u128]);
    while !r1.is_empty() {
        let (q, rem) = r.divrem(&r0, &r1);
        r0 = std::mem::replace(&mut r1, rem);
        let s2 = r.sub(&s0, &r.mul(&q, &s1));
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = r.sub(&t0, &r.mul(&q, &t1));
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(&l) => {
            let inv = pow_mod(l, p as u128 - 2, p as u128);
            (r.scale(&r0, inv), r.scale(&s0, inv), r.scale(&t0, inv))
        }
    }
}

/// Inverse of `a` modulo a monic `f` over `Z/p^N`: extended gcd mod p, then
/// Newton lifting. `None` if `a` is not invertible mod (p, f).
pub fn inv_mod_poly(ring: &PolyRing, a: &[u128], f: &[u128]) -> Option<Vec<u128>> {
    let (g, s, _) = fp_ext_gcd(ring.p, a, f);
    if g != vec![1u128] {
        return None;
    }
    let mut x = s;
    let mut prec = ring.p as u128;
    let a = ring.rem(a, f);
    while prec < ring.m {
        prec = prec.saturating_mul(prec).min(ring.m);
        let sub = PolyRing { p: ring.p, m: prec };
        let ax = sub.mulmod(&a, &x, f);
        let two_minus = sub.sub(&[2 % prec], &ax);
        x = sub.mulmod(&x, &two_minus, f);
    }
    Some(ring.reduce(&x))
}

/// Integer coefficients of the d-th cyclotomic polynomial, from
/// `Phi_d = prod_{e | d} (x^e - 1)^{mu(d/e)}`.
pub fn cyclotomic_poly(d: u64) -> Vec<i128> {
    let mut num = vec![1i128];
    let mut dens = Vec::new();
    for e in crate::arith::divisors(d) {
        let mut f = vec![0i128; e as usize + 1];
        f[0] = -1;
        f[e as usize] = 1;
        match crate::arith::mobius(d / e) {
            1 => num = int_mul(&num, &f),
            -1 => dens.push(f),
            _ => {}
        }
    }
    for den in dens {
        num = int_div_exact(&num, &den);
    }
    num
}

fn int_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn int_div_exact(a: &[i128], b: &[i128]) -> Vec<i128> {
    // b is monic
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i128; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}
