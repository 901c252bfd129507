//! Exact arithmetic in F_q, q = p^m.
//!
//! A [`FieldCtx`] is an immutable, cheaply clonable handle. Elements are small
//! `Copy` values carrying the fingerprint of the field that produced them, so
//! mixing elements of different fields is detected by the checked entry points
//! ([`FieldCtx::apply`], [`FieldCtx::check`]) and by the polynomial layer.
//!
//! For m = 1 the canonical representation is the residue in `[0, p)`. For
//! m > 1 an element is a coefficient vector `(c_0, .., c_{m-1})` over F_p
//! (constant term first) modulo the field modulus, stored as the integer
//! `c_0 + c_1 p + .. + c_{m-1} p^{m-1}`.

use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest supported field order (exclusive); keeps products inside 64 bits.
pub const MAX_ORDER: u64 = 1 << 31;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    repr: u64,
    field: u64,
}

impl FieldElement {
    /// Canonical integer representation (the residue when m = 1).
    pub fn repr(self) -> u64 {
        self.repr
    }

    pub fn is_zero(self) -> bool {
        self.repr == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.repr)
    }
}

/// A checked field operation, see [`FieldCtx::apply`].
#[derive(Debug, Clone, Copy)]
pub enum FieldOp {
    Add(FieldElement, FieldElement),
    Sub(FieldElement, FieldElement),
    Mul(FieldElement, FieldElement),
    Inv(FieldElement),
    /// Negative exponents go through the inverse.
    Pow(FieldElement, i64),
}

struct Inner {
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus, constant term first, length m + 1. Empty when m = 1.
    modulus: Vec<u64>,
    id: u64,
    /// Distinct primes dividing q - 1.
    group_primes: Vec<u64>,
    primitive_root: u64,
}

#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.id == other.0.id
                && self.0.p == other.0.p
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.m, self.0.modulus)
        }
    }
}

fn fingerprint(p: u64, modulus: &[u64]) -> u64 {
    // FNV-1a over the words
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in std::iter::once(p).chain(modulus.iter().copied()) {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

impl FieldCtx {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        if p >= MAX_ORDER {
            return Err(Error::InvalidParams(format!(
                "field order {p} exceeds 2^31"
            )));
        }
        Ok(Self::build(p, 1, p, Vec::new()))
    }

    /// F_{p^m}, using the smallest monic irreducible of degree m as modulus
    /// (candidates ordered lexicographically by coefficients, constant term first).
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams(
                "extension degree must be at least 1".into(),
            ));
        }
        if m == 1 {
            return Self::prime(p);
        }
        let base = Self::prime(p)?;
        let q = Self::order_of(p, m)?;
        let top = q / p;
        for t in 0..q {
            // digit for c_0 is the most significant
            let mut coeffs = vec![0u64; m as usize + 1];
            let mut rest = t;
            let mut place = top;
            for c in coeffs.iter_mut().take(m as usize) {
                *c = rest / place;
                rest %= place;
                place = (place / p).max(1);
            }
            coeffs[m as usize] = 1;
            if coeffs[0] == 0 {
                continue;
            }
            let f = Poly::from_u64s(&base, &coeffs);
            if f.is_irreducible()? {
                return Ok(Self::build(p, m, q, coeffs));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// F_{p^m} with an explicit monic modulus (constant term first, degree m ≥ 2).
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self> {
        let base = Self::prime(p)?;
        if modulus.len() < 3 {
            return Err(Error::InvalidParams(
                "modulus must have degree at least 2".into(),
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParams(
                "modulus coefficients must be residues mod p".into(),
            ));
        }
        let f = Poly::from_u64s(&base, modulus);
        if !f.is_monic() {
            return Err(Error::InvalidParams("modulus must be monic".into()));
        }
        if !f.is_irreducible()? {
            return Err(Error::InvalidParams("modulus is reducible over F_p".into()));
        }
        let m = (modulus.len() - 1) as u32;
        let q = Self::order_of(p, m)?;
        Ok(Self::build(p, m, q, modulus.to_vec()))
    }

    /// The field with `q` elements; `q` must be a prime power.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, m) = arith::prime_power(q)
            .ok_or_else(|| Error::InvalidParams(format!("q = {q} is not a prime power")))?;
        Self::new(p, m)
    }

    fn order_of(p: u64, m: u32) -> Result<u64> {
        match p.checked_pow(m) {
            Some(q) if q < MAX_ORDER => Ok(q),
            _ => Err(Error::InvalidParams(format!(
                "field order {p}^{m} exceeds 2^31"
            ))),
        }
    }

    fn build(p: u64, m: u32, q: u64, modulus: Vec<u64>) -> Self {
        let inner = Inner {
            p,
            m,
            q,
            id: fingerprint(p, &modulus),
            modulus,
            group_primes: arith::prime_factors(q - 1),
            primitive_root: 0,
        };
        let mut ctx = FieldCtx(Arc::new(inner));
        let g = (1..q)
            .map(|r| ctx.elem(r))
            .find(|&g| ctx.is_primitive(g))
            .expect("F_q^* is cyclic");
        Arc::get_mut(&mut ctx.0)
            .expect("unshared during construction")
            .primitive_root = g.repr;
        ctx
    }

    fn is_primitive(&self, g: FieldElement) -> bool {
        let n = self.0.q - 1;
        self.0
            .group_primes
            .iter()
            .all(|&f| self.pow(g, n / f) != self.one())
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Monic modulus, constant term first; empty for a prime field.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    fn elem(&self, repr: u64) -> FieldElement {
        FieldElement {
            repr,
            field: self.0.id,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn int(&self, x: i64) -> FieldElement {
        self.elem(x.rem_euclid(self.0.p as i64) as u64)
    }

    /// Element with the given canonical representation.
    pub fn from_repr(&self, repr: u64) -> Result<FieldElement> {
        if repr >= self.0.q {
            return Err(Error::InvalidArgument(format!(
                "{repr} is not a canonical element of F_{}",
                self.0.q
            )));
        }
        Ok(self.elem(repr))
    }

    /// Element from F_p coefficients, constant term first (at most m of them).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.m as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::InvalidArgument(format!(
                "{coeffs:?} is not an element of F_{}",
                self.0.q
            )));
        }
        Ok(self.encode(coeffs))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        self.decode(a.repr)
    }

    /// Iterates over all q elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(|r| self.elem(r))
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.field == self.0.id && a.repr < self.0.q
    }

    pub fn check(&self, a: FieldElement) -> Result<FieldElement> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::MixedFields)
        }
    }

    fn decode(&self, mut repr: u64) -> Vec<u64> {
        let p = self.0.p;
        (0..self.0.m)
            .map(|_| {
                let c = repr % p;
                repr /= p;
                c
            })
            .collect()
    }

    fn encode(&self, coeffs: &[u64]) -> FieldElement {
        let p = self.0.p;
        let repr = coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c);
        self.elem(repr)
    }

    fn digitwise(&self, a: u64, b: u64, f: impl Fn(u64, u64) -> u64) -> FieldElement {
        let (mut a, mut b) = (a, b);
        let p = self.0.p;
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.0.m {
            out += f(a % p, b % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        self.elem(out)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        let p = self.0.p;
        if self.0.m == 1 {
            let s = a.repr + b.repr;
            self.elem(if s >= p { s - p } else { s })
        } else {
            self.digitwise(a.repr, b.repr, |x, y| (x + y) % p)
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p;
        if self.0.m == 1 {
            self.elem(if a.repr == 0 { 0 } else { p - a.repr })
        } else {
            self.digitwise(a.repr, 0, |x, _| (p - x) % p)
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        let p = self.0.p;
        if self.0.m == 1 {
            return self.elem(a.repr * b.repr % p);
        }
        let m = self.0.m as usize;
        let (x, y) = (self.decode(a.repr), self.decode(b.repr));
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        let modulus = &self.0.modulus;
        for top in (m..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (j, &fj) in modulus.iter().enumerate().take(m) {
                let idx = top - m + j;
                prod[idx] = (prod[idx] + (p - c) * fj) % p;
            }
            prod[top] = 0;
        }
        self.encode(&prod[..m])
    }

    /// `a^e` by repeated squaring.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.0.q - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Checked arithmetic: verifies operand ownership and nonzero inverses.
    pub fn apply(&self, op: FieldOp) -> Result<FieldElement> {
        match op {
            FieldOp::Add(a, b) => Ok(self.add(self.check(a)?, self.check(b)?)),
            FieldOp::Sub(a, b) => Ok(self.sub(self.check(a)?, self.check(b)?)),
            FieldOp::Mul(a, b) => Ok(self.mul(self.check(a)?, self.check(b)?)),
            FieldOp::Inv(a) => self.inv(self.check(a)?),
            FieldOp::Pow(a, e) if e >= 0 => Ok(self.pow(self.check(a)?, e as u64)),
            FieldOp::Pow(a, e) => {
                let inv = self.inv(self.check(a)?)?;
                Ok(self.pow(inv, e.unsigned_abs()))
            }
        }
    }

    /// Smallest e ≥ 1 with a^e = 1, found by stripping prime factors from q - 1.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u64> {
        let a = self.check(a)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut e = self.0.q - 1;
        for &f in &self.0.group_primes {
            while e.is_multiple_of(f) && self.pow(a, e / f) == self.one() {
                e /= f;
            }
        }
        Ok(e)
    }

    /// The smallest generator of F_q^* by canonical representation.
    pub fn primitive_root(&self) -> FieldElement {
        self.elem(self.0.primitive_root)
    }

    /// `g^((q-1)/ell^k)` for the smallest primitive root `g`.
    pub fn primitive_root_of_unity(&self, ell: u64, k: u32) -> Result<FieldElement> {
        let no_root = || Error::NoSuchRoot {
            ell,
            k,
            q: self.0.q,
        };
        if !arith::is_prime(ell) {
            return Err(Error::InvalidArgument(format!("{ell} is not prime")));
        }
        let order = arith::checked_pow(ell, k).ok_or_else(no_root)?;
        if !(self.0.q - 1).is_multiple_of(order) {
            return Err(no_root());
        }
        Ok(self.pow(self.primitive_root(), (self.0.q - 1) / order))
    }

    /// Discrete logarithm of `target` to `base`, where `base` has order `ell^k`
    /// and `target` lies in the subgroup it generates. Digit-by-digit in base ell.
    pub fn subgroup_log(
        &self,
        base: FieldElement,
        target: FieldElement,
        ell: u64,
        k: u32,
    ) -> Option<u64> {
        if k == 0 {
            return (target == self.one()).then_some(0);
        }
        let order = ell.pow(k);
        let gamma = self.pow(base, order / ell);
        let base_inv = self.inv(base).ok()?;
        let mut x = 0u64;
        let mut place = 1u64;
        for i in 0..k {
            let shifted = self.mul(target, self.pow(base_inv, x));
            let h = self.pow(shifted, ell.pow(k - 1 - i));
            let mut cur = self.one();
            let mut digit = None;
            for d in 0..ell {
                if cur == h {
                    digit = Some(d);
                    break;
                }
                cur = self.mul(cur, gamma);
            }
            x += digit? * place;
            place *= ell;
        }
        (self.pow(base, x) == target).then_some(x)
    }

    /// Finds an element of order `ell^(k+r)` whose `ell^r`-th power is `mu_k`,
    /// where `mu_k` has order `ell^k`.
    pub fn lift_root_of_unity(
        &self,
        mu_k: FieldElement,
        ell: u64,
        k: u32,
        r: u32,
    ) -> Result<FieldElement> {
        let base_k = self.primitive_root_of_unity(ell, k)?;
        let base_top = self.primitive_root_of_unity(ell, k + r)?;
        let t = self.subgroup_log(base_k, mu_k, ell, k).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "{} is not an {ell}^{k}-th root of unity",
                self.format(mu_k)
            ))
        })?;
        Ok(self.pow(base_top, t))
    }

    /// Decimal residue (m = 1) or comma-separated coefficients, constant term first.
    pub fn format(&self, a: FieldElement) -> String {
        if self.0.m == 1 {
            a.repr.to_string()
        } else {
            self.decode(a.repr)
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Inverse of [`format`](Self::format). Negative residues are accepted for prime fields.
    pub fn parse(&self, s: &str) -> Result<FieldElement> {
        let bad = || Error::InvalidArgument(format!("cannot parse field element {s:?}"));
        if self.0.m == 1 {
            let v: i64 = s.trim().parse().map_err(|_| bad())?;
            if v.unsigned_abs() >= self.0.p {
                return Err(bad());
            }
            return Ok(self.int(v));
        }
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(&coeffs).map_err(|_| bad())
    }

    /// Sign and magnitude with the symmetric residue for prime fields, e.g. `131 ↦ (true, 32)` in F_163.
    pub fn signed(&self, a: FieldElement) -> Option<(bool, u64)> {
        (self.0.m == 1).then(|| {
            if a.repr > self.0.p / 2 {
                (true, self.0.p - a.repr)
            } else {
                (false, a.repr)
            }
        })
    }
}
