use constacode::{
    constacyclic_shift, factor_ell_binomial, serret_irreducible, weight_distribution_bruteforce,
    weight_distribution_closed, CodeParams, ConstacyclicCode, FieldCtx, Poly,
};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Valid (q, ℓ, n, k) at desk scale.
fn small_params() -> impl Strategy<Value = CodeParams> {
    let cases: Vec<(u64, u64)> = vec![
        (13, 2),
        (13, 3),
        (17, 2),
        (19, 3),
        (37, 2),
        (37, 3),
        (25, 2),
        (9, 2),
        (49, 3),
    ];
    (proptest::sample::select(cases), 1u32..=4, 1u32..=5).prop_filter_map(
        "invalid k",
        |((q, ell), n, k)| {
            let f = FieldCtx::with_order(q).ok()?;
            CodeParams::new(&f, ell, n, k).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorization_reconstructs(params in small_params()) {
        let f = params.field().clone();
        let factors = factor_ell_binomial(&params);
        prop_assert_eq!(factors.len() as u64, params.num_factors());
        prop_assert_eq!(constacode::factor::expand(&f, &factors), params.binomial());
        let mut consts: Vec<_> = factors.iter().map(|b| b.constant).collect();
        consts.sort();
        consts.dedup();
        prop_assert_eq!(consts.len(), factors.len());
        for b in &factors {
            prop_assert_eq!(b.sub_degree as usize, params.sub_degree());
            if b.sub_degree <= 64 {
                prop_assert!(b.to_poly(&f).is_irreducible().unwrap());
            }
            if params.n() > params.s() - params.k() {
                prop_assert!(serret_irreducible(&f, b.sub_degree, b.constant).unwrap());
                prop_assert_eq!(f.multiplicative_order(b.constant).unwrap(), params.ell().pow(params.s()));
            }
        }
    }

    #[test]
    fn generator_and_encoding_identities(params in small_params(), seed in any::<u64>()) {
        let f = params.field().clone();
        let i = seed % params.num_factors() + 1;
        let code = ConstacyclicCode::new(&params, i).unwrap();
        prop_assert_eq!(&code.generator_poly(), code.generator());
        prop_assert_eq!(code.generator().mul(&code.check_polynomial()).unwrap(), params.binomial());
        prop_assert_eq!(code.dimension() as u64 * params.num_factors(), code.length() as u64);

        let mut state = seed;
        let msg: Vec<_> = (0..code.dimension())
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                f.from_repr((state >> 33) % f.q()).unwrap()
            })
            .collect();
        let word = code.encode(&msg).unwrap();
        prop_assert_eq!(word.to_poly(), code.encode_poly(&msg).unwrap());
        prop_assert_eq!(word.weight() % code.min_distance() as usize, 0);
        let shifted = constacyclic_shift(&word, params.mu_k());
        prop_assert!(code.contains(&shifted));
    }

    #[test]
    fn closed_form_mass(params in small_params()) {
        let code = ConstacyclicCode::canonical(&params).unwrap();
        let w = weight_distribution_closed(&code);
        prop_assert_eq!(w.total(), BigUint::from(params.q()).pow(code.dimension() as u32));
        prop_assert_eq!(w.count(0), BigUint::from(1u32));
        prop_assert!(w.entries().keys().all(|k| k % code.min_distance() as usize == 0));
    }
}

#[test]
fn closed_form_equals_enumeration_everywhere_feasible() {
    let mut checked = 0;
    for (q, ell) in [
        (13u64, 2u64),
        (13, 3),
        (17, 2),
        (19, 3),
        (37, 2),
        (37, 3),
        (9, 2),
        (25, 2),
        (49, 3),
    ] {
        let f = FieldCtx::with_order(q).unwrap();
        for n in 1..=4 {
            for k in 1..=4 {
                let Ok(params) = CodeParams::new(&f, ell, n, k) else {
                    continue;
                };
                for i in 1..=params.num_factors() {
                    let code = ConstacyclicCode::new(&params, i).unwrap();
                    match weight_distribution_bruteforce(&code, 200_000) {
                        Ok(brute) => {
                            assert_eq!(
                                brute,
                                weight_distribution_closed(&code),
                                "q={q} ℓ={ell} n={n} k={k} i={i}"
                            );
                            checked += 1;
                        }
                        Err(constacode::Error::TooLarge { .. }) => {}
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
    assert!(checked > 20, "only {checked} codes enumerated");
}

#[test]
fn full_space_when_s_is_one() {
    // ℓ = 3, q = 13: s = 1, so C_1 is all of F_13^(3^n)
    let f = FieldCtx::prime(13).unwrap();
    let params = CodeParams::new(&f, 3, 2, 1).unwrap();
    let code = ConstacyclicCode::canonical(&params).unwrap();
    assert_eq!(code.generator(), &Poly::one(&f));
    assert_eq!(code.dimension(), 9);
    let w = weight_distribution_closed(&code);
    assert_eq!(w.count(2), BigUint::from(36u32 * 144));
}
