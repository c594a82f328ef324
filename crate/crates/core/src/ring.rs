//! Coefficient rings for group-ring elements.
//!
//! A ring value plays the role of a store: elements are plain data and every
//! operation goes through the ring, which carries the modulus.

use std::fmt::Debug;

use crate::error::Result;
use crate::padic::PadicCtx;

pub trait CoeffRing: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn prime(&self) -> u64;
    fn precision(&self) -> u32;
    /// Rank over `Z/p^N`.
    fn degree(&self) -> usize;
    fn base(&self) -> PadicCtx;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Embed a residue of the base ring.
    fn from_base(&self, c: u128) -> Self::Elem;
    fn from_i64(&self, c: i64) -> Self::Elem {
        self.from_base(self.base().from_i64(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul_base(&self, a: &Self::Elem, c: u128) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Minimum p-adic valuation of the coordinates, capped at the precision.
    fn valuation(&self, a: &Self::Elem) -> u32;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// The same ring with a different number of p-adic digits.
    fn with_precision(&self, prec: u32) -> Result<Self>;
    /// Reduce an element into a ring with fewer digits.
    fn truncate_elem(&self, a: &Self::Elem, target: &Self) -> Self::Elem;
    /// The element as a base-ring residue, if it lies in `Z/p^N`.
    fn to_base(&self, a: &Self::Elem) -> Option<u128>;
    /// Coordinates mod p.
    fn residue_coords(&self, a: &Self::Elem) -> Vec<u64>;

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.residue_coords(a).iter().any(|&c| c != 0) && self.inv(a).is_some()
    }
}

impl CoeffRing for PadicCtx {
    type Elem = u128;

    fn prime(&self) -> u64 {
        self.p()
    }
    fn precision(&self) -> u32 {
        PadicCtx::precision(self)
    }
    fn degree(&self) -> usize {
        1
    }
    fn base(&self) -> PadicCtx {
        *self
    }
    fn zero(&self) -> u128 {
        0
    }
    fn one(&self) -> u128 {
        1 % self.modulus()
    }
    fn from_base(&self, c: u128) -> u128 {
        c % self.modulus()
    }
    fn add(&self, a: &u128, b: &u128) -> u128 {
        PadicCtx::add(self, *a, *b)
    }
    fn sub(&self, a: &u128, b: &u128) -> u128 {
        PadicCtx::sub(self, *a, *b)
    }
    fn neg(&self, a: &u128) -> u128 {
        PadicCtx::neg(self, *a)
    }
    fn mul(&self, a: &u128, b: &u128) -> u128 {
        PadicCtx::mul(self, *a, *b)
    }
    fn mul_base(&self, a: &u128, c: u128) -> u128 {
        PadicCtx::mul(self, *a, c)
    }
    fn is_zero(&self, a: &u128) -> bool {
        *a == 0
    }
    fn valuation(&self, a: &u128) -> u32 {
        PadicCtx::valuation(self, *a)
    }
    fn inv(&self, a: &u128) -> Option<u128> {
        PadicCtx::inv(self, *a)
    }
    fn with_precision(&self, prec: u32) -> Result<Self> {
        PadicCtx::with_precision(self, prec)
    }
    fn truncate_elem(&self, a: &u128, target: &Self) -> u128 {
        a % target.modulus()
    }
    fn to_base(&self, a: &u128) -> Option<u128> {
        Some(*a)
    }
    fn residue_coords(&self, a: &u128) -> Vec<u64> {
        vec![(a % self.p() as u128) as u64]
    }
    fn pow(&self, a: &u128, e: u128) -> u128 {
        PadicCtx::pow(self, *a, e)
    }
}
