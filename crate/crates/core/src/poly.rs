//! Dense univariate polynomials over a [`FieldCtx`], constant term first.

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// A polynomial in canonical form: no trailing zero coefficients, the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldCtx,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &FieldCtx, coeffs: Vec<FieldElement>) -> Result<Self> {
        for &c in &coeffs {
            field.check(c)?;
        }
        Ok(Self::from_raw(field, coeffs))
    }

    fn from_raw(field: &FieldCtx, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    /// From canonical representations (residues for prime fields), reduced mod q.
    pub fn from_u64s(field: &FieldCtx, coeffs: &[u64]) -> Self {
        let q = field.q();
        let cs = coeffs
            .iter()
            .map(|&c| field.from_repr(c % q).expect("reduced"))
            .collect();
        Self::from_raw(field, cs)
    }

    /// From signed integers mapped into the prime subfield.
    pub fn from_ints(field: &FieldCtx, coeffs: &[i64]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|&c| field.int(c)).collect())
    }

    pub fn zero(field: &FieldCtx) -> Self {
        Self {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldCtx) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &FieldCtx, c: FieldElement) -> Self {
        Self::from_raw(field, vec![c])
    }

    pub fn x(field: &FieldCtx) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    /// `c · x^degree`
    pub fn monomial(field: &FieldCtx, c: FieldElement, degree: usize) -> Self {
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_raw(field, coeffs)
    }

    /// `x^degree - c`
    pub fn binomial(field: &FieldCtx, degree: usize, c: FieldElement) -> Self {
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = field.one();
        coeffs[0] = field.sub(coeffs[0], c);
        Self::from_raw(field, coeffs)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .copied()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(self.field.one())
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.add_raw(other))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.add_raw(&other.neg()))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.mul_raw(other))
    }

    pub fn neg(&self) -> Poly {
        Self::from_raw(
            &self.field,
            self.coeffs.iter().map(|&c| self.field.neg(c)).collect(),
        )
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        Self::from_raw(
            &self.field,
            self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect(),
        )
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Self {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn add_raw(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_raw(f, coeffs)
    }

    fn mul_raw(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Self::from_raw(f, out)
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor)?;
        self.divrem_raw(divisor)
    }

    fn divrem_raw(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let t = f.mul(c, lead_inv);
            quot[top - dd] = t;
            for (j, &dj) in divisor.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    let idx = top - dd + j;
                    rem[idx] = f.sub(rem[idx], f.mul(t, dj));
                }
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(f, quot), Self::from_raw(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Horner evaluation.
    pub fn eval(&self, a: FieldElement) -> Result<FieldElement> {
        let f = &self.field;
        let a = f.check(a)?;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, &c| f.add(f.mul(acc, a), c)))
    }

    /// Scales to leading coefficient 1; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(self.field.inv(l).expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem_raw(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Poly {
        self.mul_raw(other)
            .divrem_raw(modulus)
            .expect("nonzero modulus")
            .1
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        self.same_field(modulus)?;
        let mut acc = Self::one(&self.field).divrem_raw(modulus)?.1;
        let mut base = self.divrem_raw(modulus)?.1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus);
            }
        }
        Ok(acc)
    }

    /// Rabin/Frobenius irreducibility test for a monic polynomial of degree d ≥ 1:
    /// `x^(q^d) ≡ x (mod f)` and `gcd(x^(q^(d/p)) - x, f) = 1` for each prime `p | d`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => {
                return Err(Error::InvalidArgument(
                    "irreducibility of a constant polynomial".into(),
                ))
            }
        };
        if !self.is_monic() {
            return Err(Error::InvalidArgument(
                "irreducibility test needs a monic polynomial".into(),
            ));
        }
        if d == 1 {
            return Ok(true);
        }
        let q = self.field.q();
        let x = Self::x(&self.field).divrem_raw(self)?.1;
        // frob[j] = x^(q^j) mod f
        let mut frob = Vec::with_capacity(d + 1);
        frob.push(x.clone());
        for j in 1..=d {
            let next = frob[j - 1].pow_mod(q, self)?;
            frob.push(next);
        }
        if frob[d] != x {
            return Ok(false);
        }
        for p in arith::prime_factors(d as u64) {
            let h = frob[d / p as usize].add_raw(&x.neg());
            if h.gcd(self)?.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coefficients as canonical element strings, constant term first.
    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|&c| self.field.format(c)).collect()
    }
}

impl fmt::Display for Poly {
    /// Descending powers, zero terms omitted: `x^224 + 42x^192 + 19`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if self.field.m() == 1 {
                self.field.format(c)
            } else {
                format!("({})", self.field.format(c))
            };
            let one = c == self.field.one();
            match i {
                0 => write!(f, "{coeff}")?,
                1 if one => write!(f, "x")?,
                1 => write!(f, "{coeff}x")?,
                _ if one => write!(f, "x^{i}")?,
                _ => write!(f, "{coeff}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{:?}]({})", self.field, self)
    }
}
