use proptest::prelude::*;
use slicess::motivic::{
    apply_op, basis, coeff_map, milnor_basis, multiply, steenrod_apply, steenrod_relation_failures, uct_kind, BaseModel,
    CoeffMap, MapClass, Monomial, Op, Prim, UctKind,
};

#[test]
fn steenrod_relations_hold_on_every_model() {
    for m in BaseModel::EXPLICIT {
        let f = steenrod_relation_failures(&m, 12);
        assert!(f.is_empty(), "{f:?}");
    }
}

#[test]
fn composite_symbols_agree_with_composition() {
    let sq1 = Op::from(Prim::Sq1);
    let sq2 = Op::from(Prim::Sq2);
    let sq3 = Op::from(Prim::Sq3);
    for model in BaseModel::EXPLICIT {
        for p in 0..=6 {
            for q in 0..=12 {
                for m in basis(&model, p, q).monomials() {
                    assert_eq!(
                        steenrod_apply(&model, &Prim::Sq2Sq1.into(), m),
                        steenrod_apply(&model, &sq2.compose(&sq1), m)
                    );
                    assert_eq!(
                        steenrod_apply(&model, &Prim::Sq3Sq1.into(), m),
                        steenrod_apply(&model, &sq3.compose(&sq1), m)
                    );
                }
            }
        }
    }
}

#[test]
fn squares_vanish_on_the_diagonal() {
    for model in BaseModel::EXPLICIT {
        for p in 0..=6 {
            for m in milnor_basis(&model, p) {
                for s in [Prim::Sq1, Prim::Sq2, Prim::Sq3, Prim::Sq2Sq1, Prim::Sq3Sq1] {
                    assert!(steenrod_apply(&model, &s.into(), &m).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn normal_forms_are_idempotent_and_closed() {
    for model in BaseModel::EXPLICIT {
        for p in 0..=12 {
            for q in 0..=12 {
                for m in basis(&model, p, q).monomials() {
                    assert_eq!(multiply(&model, m, &Monomial::ONE), Some(*m));
                    assert_eq!(m.bidegree(), (p, q));
                }
                // Products of basis elements land in a basis.
                for a in milnor_basis(&model, p.min(3)) {
                    for b in milnor_basis(&model, q.min(3)) {
                        if let Some(c) = multiply(&model, &a, &b) {
                            assert!(milnor_basis(&model, c.p()).contains(&c));
                            assert_eq!(multiply(&model, &b, &a), Some(c));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn multiplication_is_associative() {
    for model in BaseModel::EXPLICIT {
        let gens: Vec<Monomial> = (0..=3).flat_map(|p| milnor_basis(&model, p)).collect();
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let ab_c = multiply(&model, a, b).and_then(|x| multiply(&model, &x, c));
                    let a_bc = multiply(&model, b, c).and_then(|x| multiply(&model, a, &x));
                    assert_eq!(ab_c, a_bc, "{model}: ({a})({b})({c})");
                }
            }
        }
    }
}

#[test]
fn tau_is_an_isomorphism_above_the_diagonal() {
    for model in BaseModel::EXPLICIT {
        for p in 0..=8 {
            let d = milnor_basis(&model, p).len() as u32;
            for q in p..=14 {
                assert_eq!(basis(&model, p, q).dim(), d);
                for m in basis(&model, p, q).monomials() {
                    let img = steenrod_apply(&model, &Op::tau(), m).unwrap();
                    assert_eq!(img.terms().count(), 1);
                }
            }
        }
    }
}

/// Milnor K-theory dimensions of the local fields: k₁ and k₂.
#[test]
fn local_field_milnor_dims() {
    use slicess::motivic::Class4::*;
    assert_eq!(milnor_basis(&BaseModel::LocalQl(One), 1).len(), 2);
    assert_eq!(milnor_basis(&BaseModel::LocalQl(One), 2).len(), 1);
    assert_eq!(milnor_basis(&BaseModel::LocalQl(Three), 1).len(), 2);
    assert_eq!(milnor_basis(&BaseModel::LocalQl(Three), 2).len(), 1);
    assert_eq!(milnor_basis(&BaseModel::LocalQl(Three), 3).len(), 0);
    assert_eq!(milnor_basis(&BaseModel::LocalQ2, 1).len(), 3);
}

/// The connecting map for Z/2 → Z/4 → Z/2 is Sq¹, so the universal
/// coefficient data must reproduce the Sq¹ column of the τ-power table.
#[test]
fn bockstein_data_matches_sq1() {
    for model in BaseModel::EXPLICIT {
        for p in 0..=4 {
            for q in 0..=14 {
                for m in basis(&model, p, q).monomials() {
                    let sq1 = steenrod_apply(&model, &Prim::Sq1.into(), m).unwrap();
                    let del = steenrod_apply(&model, &Prim::Del2nTo2(1).into(), m).unwrap();
                    assert_eq!(sq1, del, "{model} on {m}");
                }
            }
        }
    }
}

#[test]
fn lift_partners_are_reductions_of_the_same_order() {
    for model in BaseModel::EXPLICIT {
        for p in 0..=4 {
            for q in 0..=14 {
                let mut partners = Vec::new();
                for m in basis(&model, p, q).monomials() {
                    if let UctKind::Lift { e, partner } = uct_kind(&model, m) {
                        assert_eq!(partner.bidegree(), (p + 1, q), "{model} {m}");
                        assert!(basis(&model, p + 1, q).monomials().contains(&partner));
                        assert_eq!(uct_kind(&model, &partner), UctKind::Reduction { e: Some(e) }, "{model} {m}");
                        partners.push(partner);
                    }
                }
                let n = partners.len();
                partners.sort();
                partners.dedup();
                assert_eq!(partners.len(), n, "two lifts share a partner");
            }
        }
    }
}

/// Each finite reduction in degree a+1 has exactly one lift in degree a.
#[test]
fn finite_reductions_have_lifts() {
    for model in BaseModel::EXPLICIT {
        for p in 0..=4 {
            for q in 0..=14 {
                for m in basis(&model, p + 1, q).monomials() {
                    if let UctKind::Reduction { e: Some(_) } = uct_kind(&model, m) {
                        let lifts = basis(&model, p, q)
                            .monomials()
                            .iter()
                            .filter(|x| matches!(uct_kind(&model, x), UctKind::Lift { partner, .. } if partner == *m))
                            .count();
                        assert_eq!(lifts, 1, "{model} {m}");
                    }
                }
            }
        }
    }
}

/// The three cases for H^{a,b}(ℝ; Z/2^n).
#[test]
fn real_coefficient_maps_follow_the_three_cases() {
    let r = BaseModel::RealClosed;
    for n in 2..=4 {
        for a in 0..=6i64 {
            for b in a..=10i64 {
                let c = |k| coeff_map(k, &r, n, a, b).unwrap();
                if (a - b).rem_euclid(2) == 1 {
                    assert_eq!(c(CoeffMap::Inc), MapClass::Iso);
                    assert_eq!(c(CoeffMap::Del2nTo2), MapClass::Iso);
                    assert_eq!(c(CoeffMap::Del2To2n), MapClass::Iso);
                    assert_eq!(c(CoeffMap::Pr), MapClass::Trivial);
                } else if a > 0 {
                    assert_eq!(c(CoeffMap::Pr), MapClass::Iso);
                    assert_eq!(c(CoeffMap::Inc), MapClass::Trivial);
                    assert_eq!(c(CoeffMap::Del2nTo2), MapClass::Trivial);
                    assert_eq!(c(CoeffMap::Del2To2n), MapClass::Trivial);
                } else {
                    assert_eq!(c(CoeffMap::Del2nTo2), MapClass::Trivial);
                    assert_eq!(c(CoeffMap::Del2To2n), MapClass::Trivial);
                    assert_eq!(c(CoeffMap::Inc), MapClass::Injective);
                    assert_eq!(c(CoeffMap::Pr), MapClass::Surjective);
                }
            }
        }
    }
}

/// pr∘inc is multiplication by 2^{n−1} on h, hence zero for n ≥ 2, while
/// ∂∘inc and pr∘∂' both recover the Bockstein Sq¹.
#[test]
fn coefficient_composites() {
    for model in BaseModel::EXPLICIT {
        for n in 2..=4 {
            let pr_inc = Op::chain(&[Prim::Pr(n), Prim::Inc(n)]);
            let del_inc = Op::chain(&[Prim::Del2nTo2(n), Prim::Inc(n)]);
            let pr_del = Op::chain(&[Prim::Pr(n), Prim::Del2To2n(n)]);
            let sq1 = Op::from(Prim::Sq1);
            for p in 0..=3 {
                for q in 0..=10 {
                    for m in basis(&model, p, q).monomials() {
                        assert!(apply_op(&model, &pr_inc, 1, m).unwrap().is_empty(), "{model} pr∘inc on {m}");
                        let s = steenrod_apply(&model, &sq1, m).unwrap();
                        assert_eq!(steenrod_apply(&model, &del_inc, m).unwrap(), s, "{model} ∂∘inc on {m}");
                        assert_eq!(steenrod_apply(&model, &pr_del, m).unwrap(), s, "{model} pr∘∂' on {m}");
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn steenrod_outputs_have_expected_bidegree(k in 0u32..40, rho in 0u32..6) {
        let r = BaseModel::RealClosed;
        let m = Monomial { rho, tau: k, ..Monomial::ONE };
        for s in [Prim::Sq1, Prim::Sq2, Prim::Sq3, Prim::Sq2Sq1, Prim::Sq3Sq1] {
            let (dp, dq) = s.bidegree();
            for t in steenrod_apply(&r, &s.into(), &m).unwrap().terms() {
                prop_assert_eq!(t.bidegree(), (m.p() + dp, m.q() + dq));
            }
        }
    }
}
