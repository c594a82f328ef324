//! Characters of `Delta = (Z/p)^*` as powers of the Teichmüller character,
//! and even Dirichlet characters `psi * omega^j` of conductor `d` or `pd`.

use crate::arith::{self, gcd, lcm};
use crate::error::{Error, Result};
use crate::padic::PadicCtx;
use crate::ring::CoeffRing;
use crate::unramified::{make_splitting_ctx_seeded, UnramCtx, UnramElem};

/// `theta = omega^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaChar {
    ctx: PadicCtx,
    j: u64,
}

impl DeltaChar {
    pub fn new(ctx: PadicCtx, j: i64) -> Self {
        let order = ctx.p() as i64 - 1;
        DeltaChar { ctx, j: j.rem_euclid(order) as u64 }
    }

    pub fn ctx(&self) -> PadicCtx {
        self.ctx
    }

    /// Exponent in `0..p-1`.
    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn value(&self, a: u128) -> Result<u128> {
        let w = self.ctx.teichmuller(a)?;
        Ok(self.ctx.pow(w, self.j as u128))
    }

    pub fn is_even(&self) -> bool {
        self.j.is_multiple_of(2)
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0
    }

    /// `theta omega^{-1}`.
    pub fn twist_omega_inv(&self) -> DeltaChar {
        DeltaChar::new(self.ctx, self.j as i64 - 1)
    }

    pub fn inverse(&self) -> DeltaChar {
        DeltaChar::new(self.ctx, -(self.j as i64))
    }

    pub fn with_ctx(&self, ctx: PadicCtx) -> DeltaChar {
        DeltaChar { ctx, j: self.j }
    }

    /// Values on residues mod p (index 0 holds 0).
    pub fn table(&self) -> Vec<u128> {
        self.ctx
            .teichmuller_table()
            .into_iter()
            .enumerate()
            .map(|(r, w)| if r == 0 { 0 } else { self.ctx.pow(w, self.j as u128) })
            .collect()
    }

    /// `theta(-1) = (-1)^j` as a residue.
    pub fn sign(&self) -> u128 {
        if self.is_even() {
            1
        } else {
            self.ctx.neg(1)
        }
    }
}

/// `omega^j` for even `j` in `2..=p-3`.
pub fn enumerate_even_nontrivial(ctx: PadicCtx) -> Vec<DeltaChar> {
    let p = ctx.p();
    (2..p - 2).step_by(2).map(|j| DeltaChar::new(ctx, j as i64)).collect()
}

// One cyclic factor of (Z/d)^*: generator and order, acting on the component
// modulo q^e of a CRT decomposition.
#[derive(Clone, Debug)]
struct CyclicFactor {
    prime_power: u64,
    generator: u64,
    order: u64,
}

fn cyclic_factors(d: u64) -> Vec<CyclicFactor> {
    let mut out = Vec::new();
    for q in arith::prime_factors(d) {
        let mut qe = 1;
        while d.is_multiple_of(qe * q) {
            qe *= q;
        }
        if q == 2 {
            if qe == 4 {
                out.push(CyclicFactor { prime_power: 4, generator: 3, order: 2 });
            } else if qe >= 8 {
                out.push(CyclicFactor { prime_power: qe, generator: qe - 1, order: 2 });
                out.push(CyclicFactor { prime_power: qe, generator: 5, order: qe / 4 });
            }
        } else {
            let order = arith::euler_phi(qe);
            let generator = (2..qe)
                .find(|&g| gcd(g, qe) == 1 && arith::multiplicative_order(g, qe) == order)
                .expect("odd prime powers have primitive roots");
            out.push(CyclicFactor { prime_power: qe, generator, order });
        }
    }
    out
}

// Exponents of a unit a mod d in terms of the cyclic factors.
fn discrete_logs(a: u64, d: u64, factors: &[CyclicFactor]) -> Vec<u64> {
    let mut logs = Vec::with_capacity(factors.len());
    let mut i = 0;
    while i < factors.len() {
        let f = &factors[i];
        let x = a % f.prime_power;
        if f.prime_power >= 8 && f.prime_power.is_multiple_of(2) {
            // x = (-1)^s 5^t
            let g5 = &factors[i + 1];
            let (s, y) = if x % 4 == 1 { (0, x) } else { (1, f.prime_power - x) };
            let t = dlog(5, y, g5.order, f.prime_power);
            logs.push(s);
            logs.push(t);
            i += 2;
        } else {
            logs.push(dlog(f.generator, x, f.order, f.prime_power));
            i += 1;
        }
    }
    debug_assert!(d == 1 || !factors.is_empty() || d == 2);
    logs
}

fn dlog(g: u64, x: u64, order: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    for e in 0..order {
        if acc == x % m {
            return e;
        }
        acc = acc * g % m;
    }
    panic!("{x} is not in the subgroup generated by {g} mod {m}")
}

/// `chi = psi * omega^j` with `psi` primitive modulo `d` (`p` does not divide `d`).
///
/// Values of `psi` are roots of unity of order prime to p and live in an
/// unramified ring; `omega^j` takes values in `Z/p^N`.
#[derive(Clone, Debug)]
pub struct DirichletChar {
    p: u64,
    d: u64,
    index: u64,
    j: u64,
    psi_order: u64,
    ring: UnramCtx,
    /// psi values on residues mod d (zero off units)
    psi: Vec<UnramElem>,
    omega: Vec<u128>,
}

impl DirichletChar {
    /// `index` is the mixed-radix exponent vector of `psi` over the cyclic
    /// factors of `(Z/d)^*`.
    pub fn new(p: u64, prec: u32, d: u64, index: u64, j: i64, seed: u64) -> Result<Self> {
        let base = PadicCtx::new(p, prec)?;
        if d == 0 || gcd(d, p) != 1 {
            return Err(Error::BadD { d, reason: "d must be positive and prime to p" });
        }
        let factors = cyclic_factors(d);
        let group_order: u64 = factors.iter().map(|f| f.order).product();
        if index >= group_order.max(1) {
            return Err(Error::OutOfRange(format!("character index {index} >= {group_order}")));
        }
        // digits of the index
        let mut ks = Vec::with_capacity(factors.len());
        let mut rest = index;
        for f in &factors {
            ks.push(rest % f.order);
            rest /= f.order;
        }
        let expo = factors.iter().fold(1, |acc, f| lcm(acc, f.order));
        let psi_order = factors
            .iter()
            .zip(&ks)
            .fold(1, |acc, (f, &k)| lcm(acc, f.order / gcd(k, f.order)));
        if psi_order % p == 0 {
            return Err(Error::UnsupportedCharacter { order: psi_order });
        }
        let ring = make_splitting_ctx_seeded(p, prec, psi_order, seed)?;
        let z = ring.roots_of_unity(psi_order)?.into_iter().next().expect("primitive root");
        let mut psi = vec![ring.zero(); d as usize];
        let mut exps = vec![None; d as usize];
        for a in 0..d {
            if gcd(a, d) != 1 {
                continue;
            }
            let logs = discrete_logs(a, d, &factors);
            // exponent in Z/expo, then scaled to the order of psi
            let e = factors
                .iter()
                .zip(&ks)
                .zip(&logs)
                .fold(0u64, |acc, ((f, &k), &l)| (acc + k * (expo / f.order) * l) % expo);
            let e = e / (expo / psi_order);
            exps[a as usize] = Some(e);
            psi[a as usize] = ring.pow(&z, e as u128);
        }
        // primitivity: psi is nontrivial on units = 1 mod d/q for each q | d
        for q in arith::prime_factors(d) {
            let dq = d / q;
            let nontrivial = (1..d).any(|a| gcd(a, d) == 1 && a % dq == 1 % dq && exps[a as usize] != Some(0));
            if !nontrivial {
                return Err(Error::Precondition(format!("character index {index} is not primitive mod {d}")));
            }
        }
        let j = j.rem_euclid(p as i64 - 1) as u64;
        let omega = base.teichmuller_table();
        Ok(DirichletChar { p, d, index, j, psi_order, ring, psi, omega })
    }

    /// Indices of the primitive characters mod `d` whose order is prime to p.
    pub fn primitive_indices(p: u64, d: u64) -> Vec<u64> {
        let factors = cyclic_factors(d);
        let group_order: u64 = factors.iter().map(|f| f.order).product();
        (0..group_order.max(1))
            .filter(|&i| DirichletChar::new(p, 1, d, i, 0, 0).is_ok())
            .collect()
    }

    /// All even supported characters `psi * omega^j` with `psi` primitive mod `d`.
    pub fn enumerate_even(p: u64, prec: u32, d: u64, seed: u64) -> Result<Vec<DirichletChar>> {
        let mut out = Vec::new();
        for idx in Self::primitive_indices(p, d) {
            for j in 0..(p - 1) as i64 {
                let chi = DirichletChar::new(p, prec, d, idx, j, seed)?;
                if chi.is_even() {
                    out.push(chi);
                }
            }
        }
        Ok(out)
    }

    pub fn ring(&self) -> &UnramCtx {
        &self.ring
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    /// `q_0 = p d`.
    pub fn q0(&self) -> u64 {
        self.p * self.d
    }

    /// Order of `psi` (the `omega^j` part has order dividing p - 1).
    pub fn psi_order(&self) -> u64 {
        self.psi_order
    }

    pub fn order(&self) -> u64 {
        let w = (self.p - 1) / gcd(self.j, self.p - 1);
        lcm(self.psi_order, w)
    }

    pub fn psi_value(&self, a: u64) -> UnramElem {
        self.psi[(a % self.d) as usize].clone()
    }

    fn omega_pow(&self, a: u64, e: u64) -> u128 {
        let base = self.ring.base_ctx();
        base.pow(self.omega[(a % self.p) as usize], e as u128)
    }

    /// `chi(a)`, zero when `gcd(a, pd) > 1`.
    pub fn value(&self, a: u64) -> UnramElem {
        if gcd(a, self.q0()) != 1 {
            return self.ring.zero();
        }
        self.ring.mul_base(&self.psi_value(a), self.omega_pow(a, self.j))
    }

    /// `chi omega^{-1}(a)`.
    pub fn value_twist(&self, a: u64) -> UnramElem {
        if gcd(a, self.q0()) != 1 {
            return self.ring.zero();
        }
        let e = (self.j + self.p - 2) % (self.p - 1);
        self.ring.mul_base(&self.psi_value(a), self.omega_pow(a, e))
    }

    pub fn is_even(&self) -> bool {
        self.value(self.q0() - 1) == self.ring.one()
    }

    /// `psi` trivial: `chi` is a power of omega.
    pub fn is_delta_char(&self) -> bool {
        self.d == 1
    }
}
