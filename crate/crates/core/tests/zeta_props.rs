use num_bigint::BigInt;
use proptest::prelude::*;
use slicess::assembler::tables::h2_rank;
use slicess::assembler::two_adic::CohomologyOrders;
use slicess::motivic::{BaseModel, NumberRingParams};
use slicess::zeta::{bernoulli, report_q, staudt_clausen_2part, v2, w_q_2part, zeta_v2_via_kq, ZetaValue};

#[test]
fn bernoulli_denominators_have_one_factor_of_two() {
    for k in 1..=30 {
        let b = bernoulli(k).unwrap();
        assert!(staudt_clausen_2part(&b), "B_{}", 2 * k);
        assert_eq!(v2(&b), -1, "B_{}", 2 * k);
    }
}

#[test]
fn roots_of_unity_match_the_valuation_of_q() {
    for q in (2..=64i64).step_by(2) {
        let want = BigInt::from(q).trailing_zeros().unwrap() as u32 + 2;
        assert_eq!(w_q_2part(q).unwrap(), want, "q = {q}");
    }
}

#[test]
fn special_values_of_the_riemann_zeta_function() {
    for k in 0..=10 {
        for which in [ZetaValue::MinusOne, ZetaValue::MinusThree] {
            let r = report_q(k, which).unwrap();
            let oracle = r.oracle_v2.unwrap();
            assert_eq!(r.kgl.v2, oracle, "{which} k={k}");
            assert_eq!(r.kq.weight0, oracle, "{which} k={k}");
            assert!(r.kq.agree && r.agree, "{which} k={k}");
            // H^{2,q}(Z[1/2]; Z₂) is cyclic of 2-rank at most 1.
            assert!((0..=1).contains(&r.h2_v2), "{which} k={k}: H2 = 2^{}", r.h2_v2);
            if which == ZetaValue::MinusOne {
                assert!(r.kq.weight2_agrees, "k={k}");
            }
        }
    }
}

const TOTALLY_REAL: [(u32, u32, u32, u32); 4] = [(1, 1, 0, 0), (2, 1, 0, 0), (2, 2, 1, 1), (3, 1, 1, 2)];

proptest! {
    #[test]
    fn weight_zero_hermitian_route_matches_cohomology(
        idx in 0usize..TOTALLY_REAL.len(),
        k in 0i64..6,
        minus_three in any::<bool>(),
        extra1 in 0u32..8,
        extra2 in 0u32..8,
    ) {
        let (r1, s, t, tplus) = TOTALLY_REAL[idx];
        let params = NumberRingParams::new(r1, 0, s, t, tplus).unwrap();
        let model = BaseModel::NumberRing(params);
        let which = if minus_three { ZetaValue::MinusThree } else { ZetaValue::MinusOne };
        let q = which.weight(k);
        let rk2 = h2_rank(&params, q);
        let coh = CohomologyOrders {
            h1: [(q, params.dim(1, q) - rk2 + extra1)].into(),
            h2: [(q, rk2 + extra2)].into(),
        };
        let route = zeta_v2_via_kq(&model, k, which, &coh).unwrap();
        prop_assert!(route.agree, "{:?}", route);
        prop_assert_eq!(route.cohomological, extra2 as i64 + rk2 as i64 - (params.dim(1, q) - rk2 + extra1) as i64);
    }
}
