//! Closed-form irreducible factorizations of `x^(ℓ^n) - μ` over F_q.
//!
//! For a primitive ℓ^k-th root of unity μ_k (1 ≤ k ≤ s = ν_ℓ(q-1)) and
//! r = min{n, s-k},
//!
//! ```text
//! x^(ℓ^n) - μ_k = ∏_{i=1}^{ℓ^r} (x^(ℓ^(n-r)) - μ_{k+r}^(ℓ^k·i + 1))
//! ```
//!
//! and every factor is irreducible. The cyclic case (k = 0) is handled by
//! [`factor_cyclic`].

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::poly::Poly;

/// Largest supported code length / binomial degree ℓ^n.
pub const MAX_LENGTH: u64 = 1 << 24;

/// Parameters (q, ℓ, n, k) together with the derived s, r and the chosen roots of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParams {
    field: FieldCtx,
    ell: u64,
    n: u32,
    k: u32,
    s: u32,
    r: u32,
    mu_k: FieldElement,
    mu_k_plus_r: FieldElement,
}

/// Checks the standing hypotheses shared by the binomial and cyclic factorizations
/// and returns s = ν_ℓ(q-1).
fn check_ell(field: &FieldCtx, ell: u64, n: u32) -> Result<u32> {
    if !arith::is_prime(ell) {
        return Err(Error::InvalidParams(format!("ℓ={ell} must be prime")));
    }
    if field.p() == ell {
        return Err(Error::InvalidParams(format!(
            "gcd(ℓ, q) = 1 required, but ℓ={ell} divides q={}",
            field.q()
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    match ell.checked_pow(n) {
        Some(len) if len <= MAX_LENGTH => {}
        _ => {
            return Err(Error::InvalidParams(format!(
                "length ℓ^n = {ell}^{n} exceeds 2^24"
            )))
        }
    }
    let s = arith::ell_adic_valuation(field.q() - 1, ell)?;
    if s == 0 {
        return Err(Error::InvalidParams(format!(
            "ℓ={ell} must divide q-1={}",
            field.q() - 1
        )));
    }
    if ell == 2 && s == 1 {
        return Err(Error::UnsupportedCase(format!(
            "ℓ=2 requires 4 | (q−1); q={} ≡ 3 (mod 4) is not covered",
            field.q()
        )));
    }
    Ok(s)
}

impl CodeParams {
    /// Uses the deterministic roots μ_j = g^((q-1)/ℓ^j), g the smallest primitive root.
    pub fn new(field: &FieldCtx, ell: u64, n: u32, k: u32) -> Result<Self> {
        let (s, r) = Self::validate(field, ell, n, k)?;
        let mu_k_plus_r = field.primitive_root_of_unity(ell, k + r)?;
        Self::assemble(field, ell, n, k, s, r, mu_k_plus_r)
    }

    /// Uses an explicit μ_k (validated to have order ℓ^k); μ_{k+r} is derived as
    /// an ℓ^r-th root of it.
    pub fn with_mu(field: &FieldCtx, ell: u64, n: u32, k: u32, mu_k: FieldElement) -> Result<Self> {
        let (s, r) = Self::validate(field, ell, n, k)?;
        let mu_k = field.check(mu_k)?;
        let order = if mu_k.is_zero() {
            0
        } else {
            field.multiplicative_order(mu_k)?
        };
        if order != ell.pow(k) {
            return Err(Error::InvalidParams(format!(
                "μ_k={} has order {order}, expected ℓ^k={}",
                field.format(mu_k),
                ell.pow(k)
            )));
        }
        let lifted = field.lift_root_of_unity(mu_k, ell, k, r)?;
        Self::assemble(field, ell, n, k, s, r, lifted)
    }

    /// Uses an explicit μ_{k+r} (validated to have order ℓ^(k+r)); μ_k = μ_{k+r}^(ℓ^r).
    pub fn with_lifted_root(
        field: &FieldCtx,
        ell: u64,
        n: u32,
        k: u32,
        mu_k_plus_r: FieldElement,
    ) -> Result<Self> {
        let (s, r) = Self::validate(field, ell, n, k)?;
        let mu = field.check(mu_k_plus_r)?;
        let order = if mu.is_zero() {
            0
        } else {
            field.multiplicative_order(mu)?
        };
        if order != ell.pow(k + r) {
            return Err(Error::InvalidParams(format!(
                "μ_(k+r)={} has order {order}, expected ℓ^(k+r)={}",
                field.format(mu),
                ell.pow(k + r)
            )));
        }
        Self::assemble(field, ell, n, k, s, r, mu)
    }

    fn validate(field: &FieldCtx, ell: u64, n: u32, k: u32) -> Result<(u32, u32)> {
        let s = check_ell(field, ell, n)?;
        if k == 0 {
            return Err(Error::InvalidParams(
                "k must be at least 1 (k = 0 is the cyclic case)".into(),
            ));
        }
        if k > s {
            return Err(Error::InvalidParams(format!(
                "ℓ^k must divide q−1: k={k} exceeds s=ν_ℓ(q−1)={s}"
            )));
        }
        Ok((s, n.min(s - k)))
    }

    fn assemble(
        field: &FieldCtx,
        ell: u64,
        n: u32,
        k: u32,
        s: u32,
        r: u32,
        mu_k_plus_r: FieldElement,
    ) -> Result<Self> {
        let mu_k = field.pow(mu_k_plus_r, ell.pow(r));
        Ok(Self {
            field: field.clone(),
            ell,
            n,
            k,
            s,
            r,
            mu_k,
            mu_k_plus_r,
        })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn mu_k(&self) -> FieldElement {
        self.mu_k
    }

    pub fn mu_k_plus_r(&self) -> FieldElement {
        self.mu_k_plus_r
    }

    /// ℓ^n
    pub fn length(&self) -> usize {
        self.ell.pow(self.n) as usize
    }

    /// ℓ^(n-r), the degree of each irreducible factor.
    pub fn sub_degree(&self) -> usize {
        self.ell.pow(self.n - self.r) as usize
    }

    /// ℓ^r, the number of irreducible factors.
    pub fn num_factors(&self) -> u64 {
        self.ell.pow(self.r)
    }

    /// The binomial x^(ℓ^n) - μ_k.
    pub fn binomial(&self) -> Poly {
        Poly::binomial(&self.field, self.length(), self.mu_k)
    }

    /// μ_{k+r}^(ℓ^k·i + 1), the constant of the i-th factor (1 ≤ i ≤ ℓ^r).
    pub fn factor_constant(&self, i: u64) -> FieldElement {
        let order = self.ell.pow(self.k + self.r);
        let e = (self.ell.pow(self.k) as u128 * i as u128 + 1) % order as u128;
        self.field.pow(self.mu_k_plus_r, e as u64)
    }
}

/// The factor `x^sub_degree - constant`; always of multiplicity one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinomialFactor {
    pub sub_degree: u64,
    pub constant: FieldElement,
}

impl BinomialFactor {
    pub fn multiplicity(&self) -> u32 {
        1
    }

    pub fn to_poly(&self, field: &FieldCtx) -> Poly {
        Poly::binomial(field, self.sub_degree as usize, self.constant)
    }
}

/// Serret's criterion: `x^t - a` is irreducible iff every prime factor of t divides
/// e = ord(a) but not (q-1)/e, and q ≡ 1 (mod 4) whenever 4 | t.
pub fn serret_irreducible(field: &FieldCtx, t: u64, a: FieldElement) -> Result<bool> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t={t} must be at least 2")));
    }
    let e = field.multiplicative_order(a)?;
    let cofactor = (field.q() - 1) / e;
    let primes_ok = arith::prime_factors(t)
        .iter()
        .all(|&p| e % p == 0 && !cofactor.is_multiple_of(p));
    let four_ok = !t.is_multiple_of(4) || field.q() % 4 == 1;
    Ok(primes_ok && four_ok)
}

/// The ℓ^r irreducible factors of x^(ℓ^n) - μ_k, in increasing product index i.
pub fn factor_ell_binomial(params: &CodeParams) -> Vec<BinomialFactor> {
    let sub_degree = params.sub_degree() as u64;
    (1..=params.num_factors())
        .map(|i| BinomialFactor {
            sub_degree,
            constant: params.factor_constant(i),
        })
        .collect()
}

/// Irreducible factorization of x^(ℓ^n) - 1. With v = ν_ℓ(q-1) and η a primitive
/// ℓ^v-th root of unity: for n ≤ v the binomial splits into ℓ^n linear factors;
/// otherwise it is the ℓ^v linear factors x - η^j together with
/// x^(ℓ^a) - η^i for 1 ≤ a ≤ n-v and ℓ ∤ i.
pub fn factor_cyclic(field: &FieldCtx, ell: u64, n: u32) -> Result<Vec<BinomialFactor>> {
    let v = check_ell(field, ell, n)?;
    if n <= v {
        let zeta = field.primitive_root_of_unity(ell, n)?;
        return Ok(powers(field, zeta, ell.pow(n))
            .map(|c| BinomialFactor {
                sub_degree: 1,
                constant: c,
            })
            .collect());
    }
    let eta = field.primitive_root_of_unity(ell, v)?;
    let order = ell.pow(v);
    let mut out: Vec<BinomialFactor> = powers(field, eta, order)
        .map(|c| BinomialFactor {
            sub_degree: 1,
            constant: c,
        })
        .collect();
    for a in 1..=(n - v) {
        let sub_degree = ell.pow(a);
        for i in (1..order).filter(|i| i % ell != 0) {
            out.push(BinomialFactor {
                sub_degree,
                constant: field.pow(eta, i),
            });
        }
    }
    Ok(out)
}

fn powers(
    field: &FieldCtx,
    base: FieldElement,
    count: u64,
) -> impl Iterator<Item = FieldElement> + '_ {
    (0..count).scan(field.one(), move |acc, _| {
        let cur = *acc;
        *acc = field.mul(*acc, base);
        Some(cur)
    })
}

/// Product of the factors as a dense polynomial.
pub fn expand(field: &FieldCtx, factors: &[BinomialFactor]) -> Poly {
    factors.iter().fold(Poly::one(field), |acc, f| {
        acc.mul(&f.to_poly(field)).expect("same field")
    })
}

/// `x^d - c` in product notation with symmetric residues: `(x^27 + 32)`.
pub fn format_factor(field: &FieldCtx, sub_degree: u64, constant: FieldElement) -> String {
    let var = if sub_degree == 1 {
        "x".to_string()
    } else {
        format!("x^{sub_degree}")
    };
    if constant.is_zero() {
        return var;
    }
    match field.signed(constant) {
        Some((true, mag)) => format!("{var} + {mag}"),
        Some((false, mag)) => format!("{var} - {mag}"),
        None => format!("{var} - ({})", field.format(constant)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_reprs(fs: &[BinomialFactor]) -> Vec<u64> {
        let mut v: Vec<u64> = fs.iter().map(|f| f.constant.repr()).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn serret_examples() {
        let f97 = FieldCtx::prime(97).unwrap();
        assert!(serret_irreducible(&f97, 32, f97.int(42)).unwrap());
        assert!(!serret_irreducible(&f97, 2, f97.one()).unwrap());
        assert_eq!(
            serret_irreducible(&f97, 2, f97.zero()),
            Err(Error::DivisionByZero)
        );
        let f19 = FieldCtx::prime(19).unwrap();
        // 4 is not a cube in F_19
        let cubes: Vec<u64> = (1..19u64).map(|b| b.pow(3) % 19).collect();
        assert!(!cubes.contains(&4));
        assert!(serret_irreducible(&f19, 3, f19.int(4)).unwrap());
        assert!(!serret_irreducible(&f19, 9, f19.int(7)).unwrap());
    }

    #[test]
    fn serret_agrees_with_frobenius() {
        for q in [13u64, 17, 19, 37] {
            let field = FieldCtx::prime(q).unwrap();
            for t in 2..=9u64 {
                for a in field.elements().skip(1) {
                    let frob = Poly::binomial(&field, t as usize, a)
                        .is_irreducible()
                        .unwrap();
                    assert_eq!(
                        serret_irreducible(&field, t, a).unwrap(),
                        frob,
                        "q={q} t={t} a={a:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn small_factorization_in_f19() {
        let f19 = FieldCtx::prime(19).unwrap();
        let params = CodeParams::new(&f19, 3, 2, 1).unwrap();
        assert_eq!(params.mu_k_plus_r(), f19.int(4));
        assert_eq!(params.mu_k(), f19.int(7));
        let fs = factor_ell_binomial(&params);
        let consts: Vec<u64> = fs.iter().map(|f| f.constant.repr()).collect();
        assert_eq!(consts, vec![9, 6, 4]);
        assert!(fs
            .iter()
            .all(|f| f.sub_degree == 3 && f.multiplicity() == 1));
        assert_eq!(expand(&f19, &fs), Poly::binomial(&f19, 9, f19.int(7)));
    }

    #[test]
    fn factorization_163_ordered() {
        let f = FieldCtx::prime(163).unwrap();
        let params = CodeParams::with_mu(&f, 3, 5, 2, f.int(38)).unwrap();
        assert_eq!((params.s(), params.r()), (4, 2));
        let fs = factor_ell_binomial(&params);
        let expected: Vec<i64> = vec![-32, -75, -79, -68, 24, -66, -63, 51, -18];
        let mut want: Vec<u64> = expected.iter().map(|&c| f.int(c).repr()).collect();
        want.sort_unstable();
        assert_eq!(sorted_reprs(&fs), want);
        // with μ_4 = -18 the factor order is fixed too
        let lifted = CodeParams::with_lifted_root(&f, 3, 5, 2, f.int(-18)).unwrap();
        assert_eq!(lifted.mu_k(), f.int(38));
        let ordered: Vec<FieldElement> = factor_ell_binomial(&lifted)
            .iter()
            .map(|b| b.constant)
            .collect();
        let want: Vec<FieldElement> = expected.iter().map(|&c| f.int(c)).collect();
        assert_eq!(ordered, want);
    }

    #[test]
    fn linear_when_n_small() {
        let f = FieldCtx::prime(163).unwrap();
        let params = CodeParams::new(&f, 3, 2, 1).unwrap();
        assert_eq!(params.r(), 2);
        let fs = factor_ell_binomial(&params);
        assert_eq!(fs.len(), 9);
        assert!(fs.iter().all(|b| b.sub_degree == 1));
        assert_eq!(expand(&f, &fs), params.binomial());
    }

    #[test]
    fn hypothesis_guards() {
        let f19 = FieldCtx::prime(19).unwrap();
        assert!(matches!(
            CodeParams::new(&f19, 2, 3, 1),
            Err(Error::UnsupportedCase(_))
        ));
        assert!(matches!(
            factor_cyclic(&f19, 2, 3),
            Err(Error::UnsupportedCase(_))
        ));
        assert!(matches!(
            CodeParams::new(&f19, 3, 2, 3),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            CodeParams::new(&f19, 5, 2, 1),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            CodeParams::new(&f19, 19, 2, 1),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            CodeParams::new(&f19, 4, 2, 1),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            CodeParams::new(&f19, 3, 0, 1),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            CodeParams::new(&f19, 3, 2, 0),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            CodeParams::new(&f19, 3, 40, 1),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            CodeParams::with_mu(&f19, 3, 2, 1, f19.int(4)),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            CodeParams::with_lifted_root(&f19, 3, 2, 1, f19.int(7)),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn cyclic_small() {
        let f19 = FieldCtx::prime(19).unwrap();
        let fs = factor_cyclic(&f19, 3, 1).unwrap();
        assert_eq!(sorted_reprs(&fs), vec![1, 7, 11]);
        for n in 1..=3 {
            let fs = factor_cyclic(&f19, 3, n).unwrap();
            assert_eq!(
                expand(&f19, &fs),
                Poly::binomial(&f19, 3usize.pow(n), f19.one())
            );
        }
    }

    #[test]
    fn factor_text() {
        let f = FieldCtx::prime(163).unwrap();
        assert_eq!(format_factor(&f, 27, f.int(-32)), "x^27 + 32");
        assert_eq!(format_factor(&f, 27, f.int(24)), "x^27 - 24");
        assert_eq!(format_factor(&f, 1, f.int(1)), "x - 1");
    }

    #[test]
    fn extension_field_factorization() {
        // F_25: q - 1 = 24, ℓ = 2, s = 3
        let f25 = FieldCtx::new(5, 2).unwrap();
        for k in 1..=3 {
            for n in 1..=4 {
                let params = CodeParams::new(&f25, 2, n, k).unwrap();
                let fs = factor_ell_binomial(&params);
                assert_eq!(expand(&f25, &fs), params.binomial());
                for b in &fs {
                    assert!(b.to_poly(&f25).is_irreducible().unwrap());
                }
            }
        }
    }
}
