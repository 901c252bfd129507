//! Irreducible μ-constacyclic codes of length ℓ^n over F_q.
//!
//! The crate factors `x^(ℓ^n) - μ_k` into irreducible binomials in closed form,
//! builds every irreducible μ_k-constacyclic code of length ℓ^n, and computes
//! generator polynomials, codewords and exact weight distributions. Closed
//! forms are cross-checked by a Frobenius irreducibility test and by
//! brute-force enumeration.
//!
//! ```
//! use constacode::{CodeParams, ConstacyclicCode, FieldCtx, weight_distribution_closed};
//!
//! let f = FieldCtx::prime(19).unwrap();
//! let params = CodeParams::new(&f, 3, 2, 1).unwrap();
//! let code = ConstacyclicCode::canonical(&params).unwrap();
//! assert_eq!((code.length(), code.dimension()), (9, 3));
//! assert_eq!(code.generator().to_string(), "x^6 + 4x^3 + 16");
//! let w = weight_distribution_closed(&code);
//! assert_eq!(w.count(3), 54u32.into());
//! ```

pub mod arith;
pub mod cli;
pub mod code;
pub mod error;
pub mod factor;
pub mod field;
pub mod poly;
pub mod verify;

pub use arith::ell_adic_valuation;
pub use code::{
    constacyclic_shift, equivalence_class_check, weight_distribution_bruteforce,
    weight_distribution_closed, Codeword, ComparisonMethod, ConstacyclicCode, EquivalenceReport,
    WeightDistribution, DEFAULT_CAP,
};
pub use error::{Error, Result};
pub use factor::{
    factor_cyclic, factor_ell_binomial, serret_irreducible, BinomialFactor, CodeParams,
};
pub use field::{FieldCtx, FieldElement, FieldOp};
pub use poly::Poly;
