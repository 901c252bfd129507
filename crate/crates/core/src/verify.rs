//! Self-check suite run by `constacode verify`.

use num_bigint::BigUint;

use crate::code::{
    constacyclic_shift, equivalence_class_check, weight_distribution_bruteforce,
    weight_distribution_closed, ComparisonMethod, ConstacyclicCode,
};
use crate::error::{Error, Result};
use crate::factor::{
    expand, factor_cyclic, factor_ell_binomial, serret_irreducible, BinomialFactor, CodeParams,
};
use crate::field::{FieldCtx, FieldElement};

/// Factors up to this degree are audited with the Frobenius test; larger ones with Serret's criterion.
pub const FROBENIUS_AUDIT_MAX_DEGREE: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    fn push(&mut self, name: &'static str, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check {
            name,
            status,
            detail: detail.into(),
        });
    }

    fn skip(&mut self, name: &'static str, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            status: Status::Skipped,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

/// Irreducibility of `x^d - c`: Frobenius test for small d, Serret's criterion otherwise.
pub fn audit_factor(field: &FieldCtx, factor: &BinomialFactor) -> Result<bool> {
    if factor.sub_degree == 1 {
        return Ok(true);
    }
    if factor.sub_degree <= FROBENIUS_AUDIT_MAX_DEGREE {
        factor.to_poly(field).is_irreducible()
    } else {
        serret_irreducible(field, factor.sub_degree, factor.constant)
    }
}

/// Deterministic sample messages: unit vectors, all-ones and a ramp.
fn sample_messages(field: &FieldCtx, dim: usize) -> Vec<Vec<FieldElement>> {
    let mut out: Vec<Vec<FieldElement>> = (0..dim.min(8))
        .map(|j| {
            (0..dim)
                .map(|t| if t == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect();
    out.push(vec![field.one(); dim]);
    let q = field.q();
    out.push(
        (0..dim as u64)
            .map(|t| field.from_repr((3 * t + 1) % q).unwrap())
            .collect(),
    );
    out
}

pub fn run(params: &CodeParams, cap: u64) -> Result<Report> {
    let field = params.field();
    let mut report = Report::default();

    let factors = factor_ell_binomial(params);
    report.push(
        "reconstruction",
        expand(field, &factors) == params.binomial(),
        format!(
            "product of {} factors equals x^{} - μ_k",
            factors.len(),
            params.length()
        ),
    );
    let census = factors.len() as u64 == params.num_factors()
        && factors
            .iter()
            .all(|f| f.sub_degree as usize == params.sub_degree());
    report.push(
        "factor-census",
        census,
        format!(
            "{} factors of degree {}",
            params.num_factors(),
            params.sub_degree()
        ),
    );

    let mut audited = true;
    for f in &factors {
        audited &= audit_factor(field, f)?;
    }
    report.push("irreducibility-audit", audited, "every factor irreducible");

    let mut consts: Vec<FieldElement> = factors.iter().map(|f| f.constant).collect();
    consts.sort_unstable();
    consts.dedup();
    report.push(
        "distinct-constants",
        consts.len() == factors.len(),
        "factor constants pairwise distinct",
    );

    if params.n() > params.s() - params.k() {
        let mut serret = true;
        let mut orders = true;
        let top = params.ell().pow(params.k() + params.r());
        for f in &factors {
            serret &= serret_irreducible(field, f.sub_degree, f.constant)?;
            orders &= field.multiplicative_order(f.constant)? == top;
        }
        report.push(
            "serret-consistency",
            serret,
            "Serret's criterion holds for every factor",
        );
        report.push(
            "constant-orders",
            orders,
            format!("every constant has order {top}"),
        );
    } else {
        report.push(
            "linear-split",
            factors.iter().all(|f| f.sub_degree == 1),
            "n ≤ s-k: all factors linear",
        );
    }

    let mut generators = true;
    let mut encodes = true;
    let mut shifts = true;
    for i in 1..=params.num_factors() {
        let code = ConstacyclicCode::new(params, i)?;
        let product = code.generator().mul(&code.check_polynomial())?;
        generators &= code.generator_poly() == *code.generator() && product == params.binomial();
        for msg in sample_messages(field, code.dimension()) {
            let word = code.encode(&msg)?;
            encodes &= word.to_poly() == code.encode_poly(&msg)?;
            shifts &= code.contains(&constacyclic_shift(&word, params.mu_k()));
            encodes &= word.weight() % code.min_distance() as usize == 0;
        }
    }
    report.push(
        "generator-identity",
        generators,
        "closed-form generator equals exact quotient",
    );
    report.push(
        "encode-identity",
        encodes,
        "block encoding equals a(x)·g(x)",
    );
    report.push(
        "shift-closure",
        shifts,
        "constacyclic shift by μ_k preserves membership",
    );

    let canonical = ConstacyclicCode::canonical(params)?;
    let closed = weight_distribution_closed(&canonical);
    let mass = BigUint::from(field.q()).pow(canonical.dimension() as u32);
    report.push(
        "mass",
        closed.total() == mass,
        format!("Σ A_w = q^{}", canonical.dimension()),
    );
    report.push(
        "min-distance",
        closed.min_distance() == Some(canonical.min_distance() as usize),
        format!("d = {}", canonical.min_distance()),
    );

    match weight_distribution_bruteforce(&canonical, cap) {
        Ok(brute) => report.push(
            "closed-vs-oracle",
            brute == closed,
            "closed form equals enumeration",
        ),
        Err(Error::TooLarge { count, cap }) => report.skip(
            "closed-vs-oracle",
            format!("{count} codewords exceed cap {cap}"),
        ),
        Err(e) => return Err(e),
    }

    let eq = equivalence_class_check(params, cap)?;
    match eq.method {
        ComparisonMethod::BruteForce => report.push(
            "equivalence-class",
            eq.passed(),
            format!(
                "{} distinct codes with identical enumerated distributions",
                eq.check_constants.len()
            ),
        ),
        ComparisonMethod::ClosedForm => report.push(
            "equivalence-class",
            eq.passed(),
            format!(
                "{} distinct codes (closed-form comparison; enumeration exceeds cap)",
                eq.check_constants.len()
            ),
        ),
    }

    let cyclic = factor_cyclic(field, params.ell(), params.n())?;
    let mut cyclic_ok =
        expand(field, &cyclic) == crate::poly::Poly::binomial(field, params.length(), field.one());
    for f in &cyclic {
        cyclic_ok &= audit_factor(field, f)?;
    }
    report.push(
        "cyclic-factorization",
        cyclic_ok,
        format!("{} factors of x^{} - 1", cyclic.len(), params.length()),
    );

    Ok(report)
}
