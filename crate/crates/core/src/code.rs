//! Irreducible μ_k-constacyclic codes C_{k,i} of length ℓ^n and their weight
//! distributions.
//!
//! Codewords use the vector convention where the first symbol is the
//! coefficient of the highest power: `(a_0, .., a_{m-1}) ↔ a_0 x^(m-1) + .. + a_{m-1}`.
//! Polynomials elsewhere in the crate are constant-term-first; conversion
//! happens only in [`Codeword::from_poly`] and [`Codeword::to_poly`].

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factor::CodeParams;
use crate::field::{FieldCtx, FieldElement};
use crate::poly::Poly;

/// Default enumeration cap for the brute-force weight oracle.
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct ConstacyclicCode {
    params: CodeParams,
    index: u64,
    check_constant: FieldElement,
    generator: Poly,
}

impl ConstacyclicCode {
    /// C_{k,i}: check polynomial x^(ℓ^(n-r)) - μ_{k+r}^(ℓ^k·i+1), generator by exact division.
    pub fn new(params: &CodeParams, i: u64) -> Result<Self> {
        let max = params.num_factors();
        if i == 0 || i > max {
            return Err(Error::IndexOutOfRange { index: i, max });
        }
        let check_constant = params.factor_constant(i);
        let check = Poly::binomial(params.field(), params.sub_degree(), check_constant);
        let (generator, rem) = params.binomial().divrem(&check)?;
        debug_assert!(rem.is_zero());
        Ok(Self {
            params: params.clone(),
            index: i,
            check_constant,
            generator,
        })
    }

    /// The canonical code C_k = C_{k,ℓ^r}, whose check constant is μ_{k+r}.
    pub fn canonical(params: &CodeParams) -> Result<Self> {
        Self::new(params, params.num_factors())
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn field(&self) -> &FieldCtx {
        self.params.field()
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn length(&self) -> usize {
        self.params.length()
    }

    pub fn dimension(&self) -> usize {
        self.params.sub_degree()
    }

    pub fn check_constant(&self) -> FieldElement {
        self.check_constant
    }

    pub fn check_polynomial(&self) -> Poly {
        Poly::binomial(self.field(), self.dimension(), self.check_constant)
    }

    /// Generator obtained by dividing x^(ℓ^n) - μ_k by the check binomial.
    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    /// Closed form Σ_{i=0}^{ℓ^r-1} c^i x^(ℓ^(n-r)(ℓ^r-i-1)) with c the check constant.
    pub fn generator_poly(&self) -> Poly {
        let f = self.field();
        let blocks = self.params.num_factors() as usize;
        let d = self.dimension();
        let mut coeffs = vec![f.zero(); d * (blocks - 1) + 1];
        let mut c = f.one();
        for i in 0..blocks {
            coeffs[d * (blocks - i - 1)] = c;
            c = f.mul(c, self.check_constant);
        }
        Poly::new(f, coeffs).expect("coefficients from the code's field")
    }

    /// Minimum distance ℓ^r.
    pub fn min_distance(&self) -> u64 {
        self.params.num_factors()
    }

    /// Blocks `(a, a·c, .., a·c^(ℓ^r-1))`.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Codeword> {
        let f = self.field();
        if message.len() != self.dimension() {
            return Err(Error::LengthMismatch {
                expected: self.dimension(),
                found: message.len(),
            });
        }
        for &a in message {
            f.check(a)?;
        }
        let mut symbols = Vec::with_capacity(self.length());
        let mut c = f.one();
        for _ in 0..self.params.num_factors() {
            symbols.extend(message.iter().map(|&a| f.mul(a, c)));
            c = f.mul(c, self.check_constant);
        }
        Ok(Codeword {
            field: f.clone(),
            symbols,
        })
    }

    /// Message polynomial `Σ a_j x^(D-1-j)` times the generator.
    pub fn encode_poly(&self, message: &[FieldElement]) -> Result<Poly> {
        if message.len() != self.dimension() {
            return Err(Error::LengthMismatch {
                expected: self.dimension(),
                found: message.len(),
            });
        }
        let rev: Vec<FieldElement> = message.iter().rev().copied().collect();
        Poly::new(self.field(), rev)?.mul(&self.generator)
    }

    /// Membership: correct length and divisible by the generator.
    pub fn contains(&self, word: &Codeword) -> bool {
        word.len() == self.length()
            && word.field == *self.field()
            && word
                .to_poly()
                .divrem(&self.generator)
                .is_ok_and(|(_, r)| r.is_zero())
    }
}

/// A vector in F_q^m, first symbol ↔ highest power of x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    field: FieldCtx,
    symbols: Vec<FieldElement>,
}

impl Codeword {
    pub fn new(field: &FieldCtx, symbols: Vec<FieldElement>) -> Result<Self> {
        for &s in &symbols {
            field.check(s)?;
        }
        Ok(Self {
            field: field.clone(),
            symbols,
        })
    }

    pub fn zero(field: &FieldCtx, len: usize) -> Self {
        Self {
            field: field.clone(),
            symbols: vec![field.zero(); len],
        }
    }

    /// Reads a polynomial of degree < `len` in the highest-power-first convention.
    pub fn from_poly(p: &Poly, len: usize) -> Result<Self> {
        if p.degree().is_some_and(|d| d >= len) {
            return Err(Error::LengthMismatch {
                expected: len,
                found: p.degree().unwrap() + 1,
            });
        }
        let symbols = (0..len).map(|t| p.coeff(len - 1 - t)).collect();
        Ok(Self {
            field: p.field().clone(),
            symbols,
        })
    }

    pub fn to_poly(&self) -> Poly {
        let rev = self.symbols.iter().rev().copied().collect();
        Poly::new(&self.field, rev).expect("symbols from the codeword's field")
    }

    pub fn symbols(&self) -> &[FieldElement] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|s| !s.is_zero()).count()
    }

    pub fn format(&self) -> Vec<String> {
        self.symbols.iter().map(|&s| self.field.format(s)).collect()
    }
}

/// `(c_0, c_1, .., c_{m-1}) ↦ (c_1, .., c_{m-1}, μ·c_0)`, i.e. multiplication by x
/// modulo x^m - μ.
pub fn constacyclic_shift(word: &Codeword, mu: FieldElement) -> Codeword {
    let f = &word.field;
    let mut symbols = word.symbols.clone();
    if let Some(&first) = symbols.first() {
        symbols.rotate_left(1);
        *symbols.last_mut().unwrap() = f.mul(mu, first);
    }
    Codeword {
        field: f.clone(),
        symbols,
    }
}

/// Sparse weight → exact count map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    length: usize,
    entries: BTreeMap<usize, BigUint>,
}

impl WeightDistribution {
    pub fn new(length: usize, entries: BTreeMap<usize, BigUint>) -> Self {
        Self { length, entries }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn entries(&self) -> &BTreeMap<usize, BigUint> {
        &self.entries
    }

    /// A_w, zero where absent.
    pub fn count(&self, w: usize) -> BigUint {
        self.entries.get(&w).cloned().unwrap_or_default()
    }

    /// Σ A_w
    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Smallest positive weight with a nonzero count.
    pub fn min_distance(&self) -> Option<usize> {
        self.entries.keys().copied().find(|&w| w > 0)
    }
}

/// A_{ℓ^r·j} = C(ℓ^(n-r), j)·(q-1)^j for 0 ≤ j ≤ ℓ^(n-r).
pub fn weight_distribution_closed(code: &ConstacyclicCode) -> WeightDistribution {
    let dim = code.dimension();
    let step = code.min_distance() as usize;
    let nonzero = BigUint::from(code.field().q() - 1);
    let mut entries = BTreeMap::new();
    let mut binom = BigUint::one();
    let mut power = BigUint::one();
    for j in 0..=dim {
        entries.insert(step * j, &binom * &power);
        binom = binom * BigUint::from(dim - j) / BigUint::from(j + 1);
        power *= &nonzero;
    }
    WeightDistribution::new(code.length(), entries)
}

/// q^dimension, if it fits in a u64.
fn message_count(code: &ConstacyclicCode) -> Option<u64> {
    code.field()
        .q()
        .checked_pow(u32::try_from(code.dimension()).ok()?)
}

/// Enumerates every message, encodes it as `a(x)·g(x)` with `g` from exact
/// division and tallies Hamming weights.
pub fn weight_distribution_bruteforce(
    code: &ConstacyclicCode,
    cap: u64,
) -> Result<WeightDistribution> {
    let f = code.field();
    let q = f.q();
    let dim = code.dimension();
    let len = code.length();
    let total = message_count(code);
    if total.is_none_or(|t| t > cap) {
        let count = total.map_or_else(|| format!("{q}^{dim}"), |t| t.to_string());
        return Err(Error::TooLarge { count, cap });
    }
    // row j: x^(D-1-j)·g(x) as sparse (position, coefficient) in codeword order
    let rows: Vec<Vec<(usize, FieldElement)>> = (0..dim)
        .map(|j| {
            let shifted = code.generator().shift(dim - 1 - j);
            shifted
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, &c)| (len - 1 - e, c))
                .collect()
        })
        .collect();
    let elems: Vec<FieldElement> = f.elements().collect();

    let tally = |lead: u64| -> Vec<u64> {
        let mut hist = vec![0u64; len + 1];
        let mut word = vec![f.zero(); len];
        let mut weight = 0usize;
        let add_row =
            |j: usize, delta: FieldElement, word: &mut Vec<FieldElement>, weight: &mut usize| {
                for &(pos, c) in &rows[j] {
                    let old = word[pos];
                    let new = f.add(old, f.mul(delta, c));
                    word[pos] = new;
                    match (old.is_zero(), new.is_zero()) {
                        (true, false) => *weight += 1,
                        (false, true) => *weight -= 1,
                        _ => {}
                    }
                }
            };
        add_row(0, elems[lead as usize], &mut word, &mut weight);
        let mut digits = vec![0usize; dim];
        digits[0] = lead as usize;
        loop {
            hist[weight] += 1;
            // odometer over positions 1..dim (position 0 fixed to `lead`)
            let mut j = dim;
            loop {
                if j == 1 {
                    return hist;
                }
                j -= 1;
                let old = elems[digits[j]];
                let next = (digits[j] + 1) % q as usize;
                digits[j] = next;
                add_row(j, f.sub(elems[next], old), &mut word, &mut weight);
                if next != 0 {
                    break;
                }
            }
        }
    };
    let hist = (0..q).into_par_iter().map(tally).reduce(
        || vec![0u64; len + 1],
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    let entries = hist
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(w, c)| (w, BigUint::from(c)))
        .collect();
    Ok(WeightDistribution::new(len, entries))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComparisonMethod {
    BruteForce,
    ClosedForm,
}

/// Outcome of comparing the ℓ^r codes C_{k,1}, .., C_{k,ℓ^r}.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub check_constants: Vec<FieldElement>,
    pub distinct: bool,
    pub distributions: Vec<WeightDistribution>,
    pub identical_distributions: bool,
    pub method: ComparisonMethod,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.distinct && self.identical_distributions
    }
}

/// Checks that the check constants are pairwise distinct and that all codes share
/// one weight distribution (brute force when q^dim ≤ cap, closed form otherwise).
pub fn equivalence_class_check(params: &CodeParams, cap: u64) -> Result<EquivalenceReport> {
    let codes = (1..=params.num_factors())
        .map(|i| ConstacyclicCode::new(params, i))
        .collect::<Result<Vec<_>>>()?;
    let check_constants: Vec<FieldElement> = codes.iter().map(|c| c.check_constant()).collect();
    let mut sorted = check_constants.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let distinct = sorted.len() == check_constants.len();

    let feasible = message_count(&codes[0]).is_some_and(|t| t <= cap);
    let (method, distributions) = if feasible {
        let ds = codes
            .iter()
            .map(|c| weight_distribution_bruteforce(c, cap))
            .collect::<Result<Vec<_>>>()?;
        (ComparisonMethod::BruteForce, ds)
    } else {
        (
            ComparisonMethod::ClosedForm,
            codes.iter().map(weight_distribution_closed).collect(),
        )
    };
    let identical_distributions = distributions.windows(2).all(|w| w[0] == w[1]);
    Ok(EquivalenceReport {
        check_constants,
        distinct,
        distributions,
        identical_distributions,
        method,
    })
}
