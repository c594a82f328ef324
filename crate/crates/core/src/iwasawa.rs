//! The truncated Iwasawa algebra `R[T]/(p^N, omega_n(T))`.
//!
//! Elements are stored by their group-ring coefficients: `a_i` is the
//! coefficient of `(1+T)^i`, `0 <= i < p^n`. The polynomial
//! `sum a_i (1+T)^i` has degree below `p^n`, so it is also the canonical
//! monomial representative; the monomial coefficients are a binomial
//! transform away.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::CoeffRing;

#[derive(Clone, Debug, PartialEq)]
pub struct IwasawaPoly<R: CoeffRing> {
    ring: R,
    n: u32,
    coeffs: Vec<R::Elem>,
}

/// λ is only meaningful when it is provably below `p^n` and `μ < N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lambda {
    Resolved(u64),
    Unresolved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MuLambda {
    pub mu: u32,
    pub lambda: Lambda,
}

pub fn level_size(p: u64, n: u32) -> usize {
    (p as usize).pow(n)
}

impl<R: CoeffRing> IwasawaPoly<R> {
    pub fn zero(ring: &R, n: u32) -> Self {
        let len = level_size(ring.prime(), n);
        IwasawaPoly { ring: ring.clone(), n, coeffs: vec![ring.zero(); len] }
    }

    pub fn constant(ring: &R, n: u32, c: R::Elem) -> Self {
        let mut f = Self::zero(ring, n);
        f.coeffs[0] = c;
        f
    }

    pub fn one(ring: &R, n: u32) -> Self {
        Self::constant(ring, n, ring.one())
    }

    /// `(1+T)^e` for an exponent reduced mod `p^n`.
    pub fn gamma_power(ring: &R, n: u32, e: u128) -> Self {
        let mut f = Self::zero(ring, n);
        let len = f.coeffs.len() as u128;
        f.coeffs[(e % len) as usize] = ring.one();
        f
    }

    /// `sum c_i (1+T)^i`; exponents are reduced mod `p^n` and repeated ones add.
    pub fn from_group_ring<I>(ring: &R, n: u32, entries: I) -> Self
    where
        I: IntoIterator<Item = (u128, R::Elem)>,
    {
        let mut f = Self::zero(ring, n);
        let len = f.coeffs.len() as u128;
        for (e, c) in entries {
            let slot = &mut f.coeffs[(e % len) as usize];
            *slot = ring.add(slot, &c);
        }
        f
    }

    pub fn from_group_ring_vec(ring: &R, n: u32, coeffs: Vec<R::Elem>) -> Self {
        assert_eq!(coeffs.len(), level_size(ring.prime(), n), "wrong number of group-ring coefficients");
        IwasawaPoly { ring: ring.clone(), n, coeffs }
    }

    /// A polynomial given by monomial coefficients (any length), reduced
    /// mod `omega_n`.
    pub fn from_monomial(ring: &R, n: u32, coeffs: &[R::Elem]) -> Self {
        // Horner in S = 1+T: acc <- acc (S - 1) + c_m
        let len = level_size(ring.prime(), n);
        let mut acc = vec![ring.zero(); len];
        for c in coeffs.iter().rev() {
            // multiply by S - 1 cyclically
            let last = acc[len - 1].clone();
            let mut next = vec![ring.zero(); len];
            next[0] = ring.sub(&last, &acc[0]);
            for i in 1..len {
                next[i] = ring.sub(&acc[i - 1], &acc[i]);
            }
            next[0] = ring.add(&next[0], c);
            acc = next;
        }
        IwasawaPoly { ring: ring.clone(), n, coeffs: acc }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn group_ring(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_group_ring(self) -> Vec<R::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R::Elem {
        &self.coeffs[i]
    }

    /// Monomial coefficients of the canonical representative, exactly.
    pub fn to_monomial(&self) -> Vec<R::Elem> {
        // Horner: acc <- acc (1+T) + a_i, degree stays below p^n
        let r = &self.ring;
        let len = self.coeffs.len();
        let mut acc = vec![r.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            // at this point acc has degree below len - 1 - i
            for k in (1..len - i).rev() {
                let prev = acc[k - 1].clone();
                r.add_assign(&mut acc[k], &prev);
            }
            r.add_assign(&mut acc[0], a);
        }
        acc
    }

    /// Monomial coefficients mod p, one vector per coordinate of R.
    ///
    /// Uses `(1+T)^i = prod_k (1 + T^{p^k})^{i_k} (mod p)`: the transform
    /// factors into a p x p Pascal matrix along each base-p digit.
    pub fn monomial_mod_p(&self) -> Vec<Vec<u64>> {
        let p = self.ring.prime();
        let deg = self.ring.degree();
        let len = self.coeffs.len();
        let mut coords = vec![vec![0u64; len]; deg];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (k, c) in self.ring.residue_coords(a).into_iter().enumerate() {
                coords[k][i] = c;
            }
        }
        let table = binomial_table_mod_p(p);
        for arr in coords.iter_mut() {
            lucas_transform(arr, p, self.n, &table);
        }
        coords
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn is_zero_mod_p(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.residue_coords(c).iter().all(|&x| x == 0))
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.n, other.n, "level mismatch");
        assert_eq!(self.ring, other.ring, "ring mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| self.ring.add(a, b)).collect();
        IwasawaPoly { ring: self.ring.clone(), n: self.n, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| self.ring.sub(a, b)).collect();
        IwasawaPoly { ring: self.ring.clone(), n: self.n, coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.neg(a)).collect();
        IwasawaPoly { ring: self.ring.clone(), n: self.n, coeffs }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        IwasawaPoly { ring: self.ring.clone(), n: self.n, coeffs }
    }

    /// Product in the group ring (cyclic convolution of exponents).
    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let r = &self.ring;
        let len = self.coeffs.len();
        let mut out = vec![r.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if r.is_zero(b) {
                    continue;
                }
                let k = (i + j) % len;
                let prod = r.mul(a, b);
                r.add_assign(&mut out[k], &prod);
            }
        }
        IwasawaPoly { ring: r.clone(), n: self.n, coeffs: out }
    }

    /// `f((1+T)^c - 1)`: permutes group-ring exponents `i -> i c`.
    pub fn substitute(&self, c: i128) -> Result<Self> {
        let p = self.ring.prime() as i128;
        if c.rem_euclid(p) == 0 {
            return Err(Error::NotUnit);
        }
        let len = self.coeffs.len();
        let c = c.rem_euclid(len as i128) as u128;
        let mut out = vec![self.ring.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            let k = ((i as u128 * c) % len as u128) as usize;
            out[k] = a.clone();
        }
        Ok(IwasawaPoly { ring: self.ring.clone(), n: self.n, coeffs: out })
    }

    /// `f(u(1+T) - 1)` on the canonical representative.
    pub fn scale_shift(&self, u: &R::Elem) -> Self {
        let r = &self.ring;
        let mut pw = r.one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(r.mul(a, &pw));
            pw = r.mul(&pw, u);
        }
        IwasawaPoly { ring: r.clone(), n: self.n, coeffs: out }
    }

    /// `d/dT` of the canonical representative.
    pub fn derivative(&self) -> Self {
        let r = &self.ring;
        let len = self.coeffs.len();
        let mut out = vec![r.zero(); len];
        for i in 1..len {
            out[i - 1] = r.mul_base(&self.coeffs[i], i as u128);
        }
        IwasawaPoly { ring: r.clone(), n: self.n, coeffs: out }
    }

    /// Value of the canonical representative at `T = t`.
    pub fn evaluate(&self, t: &R::Elem) -> R::Elem {
        let r = &self.ring;
        let s = r.add(&r.one(), t);
        let mut acc = r.zero();
        for a in self.coeffs.iter().rev() {
            acc = r.add(&r.mul(&acc, &s), a);
        }
        acc
    }

    /// Value at `T = 0`.
    pub fn augmentation(&self) -> R::Elem {
        let r = &self.ring;
        self.coeffs.iter().fold(r.zero(), |acc, a| r.add(&acc, a))
    }

    /// Reduction to level `n - 1`.
    pub fn restrict(&self) -> Result<Self> {
        if self.n == 0 {
            return Err(Error::OutOfRange("cannot restrict below level 0".into()));
        }
        let r = &self.ring;
        let len = level_size(r.prime(), self.n - 1);
        let mut out = vec![r.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            r.add_assign(&mut out[i % len], a);
        }
        Ok(IwasawaPoly { ring: r.clone(), n: self.n - 1, coeffs: out })
    }

    /// Restrict down to level `m <= n`.
    pub fn restrict_to(&self, m: u32) -> Result<Self> {
        let mut f = self.clone();
        while f.n > m {
            f = f.restrict()?;
        }
        Ok(f)
    }

    /// Reduce coefficients into a ring with fewer digits.
    pub fn truncate(&self, target: &R) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.truncate_elem(a, target)).collect();
        IwasawaPoly { ring: target.clone(), n: self.n, coeffs }
    }

    /// `(μ, λ)` from the canonical representative.
    pub fn mu_lambda(&self) -> Result<MuLambda> {
        let modp = self.monomial_mod_p();
        let len = self.coeffs.len();
        if let Some(i) = (0..len).find(|&i| modp.iter().any(|c| c[i] != 0)) {
            return Ok(MuLambda { mu: 0, lambda: Lambda::Resolved(i as u64) });
        }
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let prec = self.ring.precision();
        let mono = self.to_monomial();
        let vals: Vec<u32> = mono.iter().map(|c| self.ring.valuation(c).min(prec)).collect();
        let mu = *vals.iter().min().expect("nonempty");
        let lambda = if mu < prec {
            let i = vals.iter().position(|&v| v == mu).expect("attained");
            Lambda::Resolved(i as u64)
        } else {
            Lambda::Unresolved
        };
        Ok(MuLambda { mu, lambda })
    }

    /// Whether `f' != 0 (mod p)`: some monomial coefficient not divisible by
    /// p sits at an exponent prime to p.
    pub fn derivative_nonzero_mod_p(&self) -> bool {
        let p = self.ring.prime() as usize;
        let modp = self.monomial_mod_p();
        (0..self.coeffs.len()).any(|i| i % p != 0 && modp.iter().any(|c| c[i] != 0))
    }

    /// First exponent prime to p carrying a nonzero coefficient mod p.
    pub fn first_derivative_witness(&self) -> Option<usize> {
        let p = self.ring.prime() as usize;
        let modp = self.monomial_mod_p();
        (0..self.coeffs.len()).find(|&i| i % p != 0 && modp.iter().any(|c| c[i] != 0))
    }
}

fn binomial_table_mod_p(p: u64) -> Vec<Vec<u64>> {
    let p = p as usize;
    let mut t = vec![vec![0u64; p]; p];
    for i in 0..p {
        t[i][0] = 1;
        for m in 1..=i {
            t[i][m] = (t[i - 1][m - 1] + if m < i { t[i - 1][m] } else { 0 }) % p as u64;
        }
    }
    t
}

// y[m] = sum_{i >= m} C(i, m) x[i] along every digit axis.
fn lucas_transform(arr: &mut [u64], p: u64, n: u32, table: &[Vec<u64>]) {
    let pu = p as usize;
    let len = arr.len();
    let mut fiber = vec![0u64; pu];
    let mut stride = 1usize;
    for _ in 0..n {
        let block = stride * pu;
        for start in (0..len).step_by(block) {
            for off in 0..stride {
                let base = start + off;
                let mut any = false;
                for (i, f) in fiber.iter_mut().enumerate() {
                    *f = arr[base + i * stride];
                    any |= *f != 0;
                }
                if !any {
                    continue;
                }
                for m in 0..pu {
                    let mut acc = 0u64;
                    for i in m..pu {
                        acc += table[i][m] * fiber[i];
                    }
                    arr[base + m * stride] = acc % p;
                }
            }
        }
        stride = block;
    }
}

/// `omega_n(T) = (1+T)^{p^n} - 1` over the integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OmegaPoly {
    pub p: u64,
    pub n: u32,
}

impl OmegaPoly {
    pub fn new(p: u64, n: u32) -> Self {
        OmegaPoly { p, n }
    }

    pub fn degree(&self) -> usize {
        level_size(self.p, self.n)
    }

    /// Monomial coefficients, constant term first.
    pub fn expand(&self) -> Vec<BigInt> {
        let deg = self.degree();
        let mut c = vec![BigInt::zero(); deg + 1];
        let mut b = BigInt::one();
        for (k, slot) in c.iter_mut().enumerate() {
            *slot = b.clone();
            b = b * BigInt::from(deg - k) / BigInt::from(k + 1);
        }
        c[0] -= 1;
        c
    }

    /// The image of `omega_n` in the algebra at level `level`.
    pub fn image<R: CoeffRing>(&self, ring: &R, level: u32) -> IwasawaPoly<R> {
        let e = (self.p as u128).pow(self.n);
        IwasawaPoly::gamma_power(ring, level, e).sub(&IwasawaPoly::one(ring, level))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PadicCtx;
    use crate::unramified::make_splitting_ctx;
    use proptest::prelude::*;

    fn ctx(p: u64, n: u32) -> PadicCtx {
        PadicCtx::new(p, n).unwrap()
    }

    #[test]
    fn group_ring_basics() {
        let r = ctx(5, 2);
        let c = IwasawaPoly::from_group_ring(&r, 2, [(0u128, 7u128)]);
        assert_eq!(c.to_monomial()[0], 7);
        assert!(c.to_monomial()[1..].iter().all(|&x| x == 0));
        let g = IwasawaPoly::from_group_ring(&r, 2, [(1u128, 1u128)]);
        let m = g.to_monomial();
        assert_eq!(&m[..3], &[1, 1, 0]);
        let last = IwasawaPoly::from_group_ring(&r, 2, [(24u128, 1u128)]);
        let back = IwasawaPoly::from_monomial(&r, 2, &last.to_monomial());
        assert_eq!(back, last);
    }

    #[test]
    fn substitute_examples() {
        let r = ctx(7, 3);
        let f = IwasawaPoly::from_group_ring_vec(&r, 1, (0..7u128).map(|i| i * i + 3).collect());
        assert_eq!(f.substitute(1).unwrap(), f);
        assert_eq!(f.substitute(-1).unwrap().substitute(-1).unwrap(), f);
        let w = OmegaPoly::new(7, 1).image(&r, 1);
        assert!(w.substitute(3).unwrap().is_zero());
        assert_eq!(f.substitute(14), Err(Error::NotUnit));
    }

    #[test]
    fn scale_shift_examples() {
        let r = ctx(5, 3);
        let t = IwasawaPoly::from_monomial(&r, 2, &[0, 1]);
        assert_eq!(t.scale_shift(&1), t);
        let c = IwasawaPoly::constant(&r, 2, 9);
        assert_eq!(c.scale_shift(&6), c);
        let shifted = t.scale_shift(&6).to_monomial();
        assert_eq!(&shifted[..3], &[5, 6, 0]);
    }

    #[test]
    fn derivative_examples() {
        let r = ctx(5, 2);
        let t2 = IwasawaPoly::from_monomial(&r, 2, &[0, 0, 1]);
        assert_eq!(t2.derivative().to_monomial()[..3], [0, 2, 0]);
        assert!(IwasawaPoly::constant(&r, 2, 3).derivative().is_zero());
        for i in 1..25u128 {
            let g = IwasawaPoly::gamma_power(&r, 2, i);
            let expect = IwasawaPoly::from_group_ring(&r, 2, [(i - 1, i % 25)]);
            assert_eq!(g.derivative(), expect);
        }
    }

    #[test]
    fn mu_lambda_examples() {
        let r = ctx(5, 2);
        // T^3 + 5 (1 + T^7)
        let mut m = vec![0u128; 25];
        m[3] = 1;
        m[0] = 5;
        m[7] = 5;
        let f = IwasawaPoly::from_monomial(&r, 2, &m);
        assert_eq!(f.mu_lambda().unwrap(), MuLambda { mu: 0, lambda: Lambda::Resolved(3) });
        let g = IwasawaPoly::constant(&r, 2, 10);
        assert_eq!(g.mu_lambda().unwrap(), MuLambda { mu: 1, lambda: Lambda::Resolved(0) });
        assert_eq!(IwasawaPoly::zero(&r, 2).mu_lambda(), Err(Error::ZeroInput));
    }

    #[test]
    fn restrict_examples() {
        let r = ctx(5, 2);
        let w = OmegaPoly::new(5, 1).image(&r, 2);
        assert!(w.restrict().unwrap().is_zero());
        let c = IwasawaPoly::constant(&r, 2, 4);
        assert_eq!(c.restrict().unwrap(), IwasawaPoly::constant(&r, 1, 4));
    }

    #[test]
    fn omega_expansion() {
        let w = OmegaPoly::new(5, 1).expand();
        let expect: Vec<BigInt> = [0, 5, 10, 10, 5, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(w, expect);
    }

    #[test]
    fn lucas_agrees_with_exact_transform() {
        for (p, n) in [(5u64, 2u32), (7, 2), (5, 3), (11, 1)] {
            let r = ctx(p, 2);
            let len = level_size(p, n);
            let coeffs: Vec<u128> = (0..len as u128).map(|i| (i * 7 + i * i * 3 + 1) % 25).collect();
            let f = IwasawaPoly::from_group_ring_vec(&r, n, coeffs);
            let exact: Vec<u64> = f.to_monomial().iter().map(|c| (c % p as u128) as u64).collect();
            assert_eq!(f.monomial_mod_p()[0], exact);
        }
    }

    #[test]
    fn unramified_coefficients() {
        let w = make_splitting_ctx(5, 2, 3).unwrap();
        let x = w.gen();
        let f = IwasawaPoly::from_group_ring(&w, 1, [(2u128, x.clone())]);
        let back = IwasawaPoly::from_monomial(&w, 1, &f.to_monomial());
        assert_eq!(back, f);
        let ml = f.mu_lambda().unwrap();
        assert_eq!(ml, MuLambda { mu: 0, lambda: Lambda::Resolved(0) });
    }

    fn arb_poly(p: u64, n: u32, prec: u32) -> impl Strategy<Value = IwasawaPoly<PadicCtx>> {
        let r = ctx(p, prec);
        let len = level_size(p, n);
        proptest::collection::vec(0u128..r.modulus(), len)
            .prop_map(move |v| IwasawaPoly::from_group_ring_vec(&r, n, v))
    }

    proptest! {
        #[test]
        fn basis_round_trip(f in arb_poly(7, 2, 3)) {
            let back = IwasawaPoly::from_monomial(f.ring(), 2, &f.to_monomial());
            prop_assert_eq!(back, f);
        }

        #[test]
        fn substitute_is_a_homomorphism(f in arb_poly(5, 2, 2), g in arb_poly(5, 2, 2), c in 1i128..200, d in 1i128..200) {
            prop_assume!(c % 5 != 0 && d % 5 != 0);
            prop_assert_eq!(f.mul(&g).substitute(c).unwrap(), f.substitute(c).unwrap().mul(&g.substitute(c).unwrap()));
            prop_assert_eq!(f.add(&g).substitute(c).unwrap(), f.substitute(c).unwrap().add(&g.substitute(c).unwrap()));
            prop_assert_eq!(f.substitute(c).unwrap().substitute(d).unwrap(), f.substitute(c * d).unwrap());
        }

        #[test]
        fn substitute_matches_composition(f in arb_poly(5, 1, 3), c in 1i128..24) {
            prop_assume!(c % 5 != 0);
            // f((1+T)^c - 1) computed with polynomial arithmetic in the monomial basis
            let r = *f.ring();
            let sc = IwasawaPoly::gamma_power(&r, 1, c as u128).sub(&IwasawaPoly::one(&r, 1));
            let mono = f.to_monomial();
            let mut acc = IwasawaPoly::zero(&r, 1);
            for m in mono.iter().rev() {
                acc = acc.mul(&sc).add(&IwasawaPoly::constant(&r, 1, *m));
            }
            prop_assert_eq!(f.substitute(c).unwrap(), acc);
        }

        #[test]
        fn leibniz_on_representatives(a in proptest::collection::vec(0u128..125, 12), b in proptest::collection::vec(0u128..125, 12)) {
            let r = ctx(5, 3);
            let f = IwasawaPoly::from_monomial(&r, 2, &a);
            let g = IwasawaPoly::from_monomial(&r, 2, &b);
            let lhs = f.mul(&g).derivative();
            let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn mu_lambda_is_additive(a in proptest::collection::vec(0u128..25, 6), b in proptest::collection::vec(0u128..25, 6), sa in 0usize..6, sb in 0usize..6) {
            let r = ctx(5, 2);
            let mut a = a; let mut b = b;
            a[sa] = 1 + a[sa] % 4 * 5;
            b[sb] = 2 + b[sb] % 3 * 5;
            let f = IwasawaPoly::from_monomial(&r, 2, &a);
            let g = IwasawaPoly::from_monomial(&r, 2, &b);
            let (mf, mg) = (f.mu_lambda().unwrap(), g.mu_lambda().unwrap());
            let mfg = f.mul(&g).mu_lambda().unwrap();
            if let (Lambda::Resolved(lf), Lambda::Resolved(lg)) = (mf.lambda, mg.lambda) {
                prop_assert_eq!(mfg.mu, mf.mu + mg.mu);
                prop_assert_eq!(mfg.lambda, Lambda::Resolved(lf + lg));
            }
        }
    }
}
