use std::collections::BTreeMap;

use slicess::assembler::tables::{self, Sym};
use slicess::assembler::{
    filtration, group_order_2rank, kw_integral, mod2_tables, two_adic_tables, witt_grading, Extension,
};
use slicess::engine::Sseq;
use slicess::motivic::{BaseModel, Class4, DimRange, NumberRingParams};
use slicess::slices::Theory;

fn log_order(model: &BaseModel, theory: Theory, n: u32, p: i64, w: i64) -> u32 {
    let t = filtration(model, theory, n, p, w).unwrap();
    group_order_2rank(&t).log_order.unwrap().value().unwrap()
}

#[test]
fn k_theory_of_the_reals_is_8_periodic() {
    let pattern = [1, 1, 2, 1, 1, 0, 0, 0];
    for p in 0..32 {
        assert_eq!(log_order(&BaseModel::RealClosed, Theory::KGL, 1, p, 0), pattern[p as usize % 8], "K_{p}");
    }
}

#[test]
fn mod2_k_theory_orders_are_8_periodic_on_fields() {
    for model in BaseModel::EXPLICIT {
        let start = (model.vcd() as i64 - 1).max(0);
        for p in start..start + 16 {
            assert_eq!(
                log_order(&model, Theory::KGL, 1, p, 0),
                log_order(&model, Theory::KGL, 1, p + 8, 0),
                "{model} K_{p}"
            );
        }
    }
}

/// Over a quadratically closed field E^∞(KQ/2) is h^{0,q−w} in the listed
/// positions and zero elsewhere.
#[test]
fn kq2_over_quadratically_closed_fields() {
    let model = BaseModel::QuadClosed;
    for w in 0..=3i64 {
        let s = Sseq::new(model, Theory::KQ, 1, w).unwrap();
        for p in -4..=24i64 {
            for q in w..=w + 16 {
                let got = s.einf_components(p, q).unwrap().iter().map(|c| c.dim.lo).sum::<u32>();
                let want = if 2 * w <= p {
                    let d = 2 * q - p;
                    let r = p.rem_euclid(8);
                    u32::from(matches!((d, r), (0, 0 | 2) | (1, 1 | 3) | (2, 2 | 4)))
                } else {
                    u32::from(q == w && matches!((p - w).rem_euclid(4), 0 | 1))
                };
                assert_eq!(got, want, "w={w} ({p},{q})");
            }
        }
    }
}

/// The filtration quotients of KQ_{n+2c,c}(F; Z/2), c = 0..3, over a real
/// closed field, as (a, weight offset) with weight 4k + offset.
fn kq2_real_table(r: usize, c: usize) -> &'static [(i64, i64)] {
    const T: [[&[(i64, i64)]; 4]; 8] = [
        [&[(1, 1), (0, 0)], &[(0, 1)], &[(0, 1)], &[]],
        [&[(1, 2), (0, 1)], &[(1, 2), (0, 1)], &[], &[(1, 1)]],
        [&[(0, 1), (1, 2), (0, 2), (2, 3)], &[(0, 2)], &[(2, 2)], &[(1, 2)]],
        [&[(1, 3), (0, 2)], &[(3, 3)], &[], &[(2, 3), (1, 2)]],
        [&[(4, 4), (0, 3)], &[], &[(2, 3)], &[(1, 3)]],
        [&[], &[], &[], &[(1, 4)]],
        [&[], &[], &[(0, 4)], &[]],
        [&[], &[(0, 4)], &[], &[]],
    ];
    T[r][c]
}

#[test]
fn kq2_over_real_closed_fields() {
    let model = BaseModel::RealClosed;
    for k in 0..=2i64 {
        for r in 0..8usize {
            for c in 0..4i64 {
                let (p, w) = (8 * k + r as i64 + 2 * c, c);
                // Each h^{a,b} is one-dimensional and sits in slice row q = b + w.
                let mut want: BTreeMap<i64, u32> = BTreeMap::new();
                for &(a, off) in kq2_real_table(r, c as usize) {
                    let b = 4 * k + off;
                    assert!((0..=b).contains(&a));
                    *want.entry(b + w).or_default() += 1;
                }
                let t = filtration(&model, Theory::KQ, 1, p, w).unwrap();
                let got: BTreeMap<i64, u32> =
                    t.quotients.iter().map(|x| (x.q.unwrap(), x.log_order.unwrap().value().unwrap())).collect();
                assert_eq!(got, want, "KQ_{{{p},{w}}} (row 8k+{r}, k={k})");
            }
        }
    }
}

#[test]
fn witt_groups_from_kw_columns() {
    use slicess::assembler::witt_mod2_logs;
    // (log₂|W/2|, log₂|₂W|, log₂|W|).
    let cases = [
        (BaseModel::LocalQ2, 3, 3, 5),
        (BaseModel::LocalQl(Class4::One), 4, 4, 4),
        (BaseModel::LocalQl(Class4::Three), 2, 2, 4),
        (BaseModel::FiniteField(Class4::One), 2, 2, 2),
        (BaseModel::FiniteField(Class4::Three), 1, 1, 2),
        (BaseModel::QuadClosed, 1, 1, 1),
    ];
    for (model, quot, tors, order) in cases {
        assert_eq!(witt_mod2_logs(&model).unwrap(), (DimRange::exact(quot), DimRange::exact(tors)), "{model}");
        // W is finite and filtered by the powers of I with I^q/I^{q+1} ≅ h^{q,q}.
        let graded: u32 = witt_grading(&model, 8).dims.iter().sum();
        assert_eq!(graded, order, "{model}");
    }
    // W(ℝ) = Z.
    assert_eq!(witt_mod2_logs(&BaseModel::RealClosed).unwrap(), (DimRange::exact(1), DimRange::exact(0)));
}

#[test]
fn kw2n_over_the_reals() {
    let model = BaseModel::RealClosed;
    for n in 2..=4u32 {
        for w in 0..=3i64 {
            let s = Sseq::new(model, Theory::KW, n, w).unwrap();
            for p in -4..=16i64 {
                for q in w..=w + 12 {
                    let got = s.einf_components(p, q).unwrap().iter().map(|c| c.dim.lo).sum::<u32>();
                    let want = u32::from((p - w).rem_euclid(4) == 0 && q - w < n as i64);
                    assert_eq!(got, want, "n={n} w={w} ({p},{q})");
                }
                let t = filtration(&model, Theory::KW, n, p, w).unwrap();
                let o = group_order_2rank(&t);
                if (p - w).rem_euclid(4) == 0 {
                    assert_eq!(o.log_order, Some(DimRange::exact(n)));
                    assert_eq!(o.rank, Some(DimRange::exact(1)));
                    assert_eq!(t.extension, Extension::ResolvedByRho);
                } else {
                    assert_eq!(o.log_order, Some(DimRange::exact(0)));
                }
            }
        }
    }
}

const TUPLES: [(u32, u32, u32, u32, u32); 3] = [(1, 0, 1, 0, 0), (2, 1, 3, 1, 2), (0, 2, 2, 1, 1)];

fn params(t: (u32, u32, u32, u32, u32)) -> NumberRingParams {
    NumberRingParams::new(t.0, t.1, t.2, t.3, t.4).unwrap()
}

/// 2-ranks of the ρ-subquotients of h^{*,*}(O_{F,S}) from the rank formulas
/// for rings of S-integers; `None` for symbols they do not cover.
fn remark_rank(p: &NumberRingParams, sym: Sym, k: i64) -> Option<u32> {
    let NumberRingParams { r1, r2, s, t, tplus } = *p;
    let h = |a: i64, b: i64| -> u32 {
        match (a, b) {
            (0, b) if b >= 0 => 1,
            (1, b) if b >= 1 => r1 + r2 + s + t,
            (2, 1) => t,
            (2, b) if b >= 2 => r1 + s + t - 1,
            (a, b) if a >= 3 && a <= b => r1,
            _ => 0,
        }
    };
    let w = |off: i64| 4 * k + off;
    Some(match sym {
        Sym::H(a, off) => h(a, w(off)),
        Sym::Ker(2, 1, _) => r2 + s + tplus,
        Sym::Ker(1, 2, off) if w(off) > 1 => s + t - 1,
        Sym::Ker(_, 2, off) if w(off) == 1 => t,
        Sym::Coker(3, 4, off) if w(off) >= 4 => tplus - t,
        Sym::Coker(2, 3, off) if w(off) >= 3 => tplus - t,
        Sym::Coker(3, 3, off) if w(off) >= 3 => r1.saturating_sub(1),
        Sym::Free => r1,
        _ => return None,
    })
}

#[test]
fn number_ring_tables_match_rank_formulas() {
    for tup in TUPLES {
        let pr = params(tup);
        let model = BaseModel::NumberRing(pr);
        for k in 0..=2i64 {
            for (theory, lengths) in [(Theory::KQ, tables::KQ_MOD2_LENGTHS), (Theory::KGL, tables::K_MOD2_LENGTHS)] {
                let rows = mod2_tables(&model, theory, k).unwrap();
                for (r, t) in rows.iter().enumerate() {
                    assert_eq!(t.length, lengths[r], "{theory} row {r}");
                    let row = if theory == Theory::KQ { tables::kq_mod2(r as u8) } else { tables::k_mod2(r as u8) };
                    check_slots(&pr, &row, t, k);
                }
                if theory == Theory::KQ {
                    assert!(rows[5].quotients.is_empty());
                }
            }
            for w in 0..4i64 {
                let rows = two_adic_tables(&model, w, k).unwrap();
                for (r, t) in rows.iter().enumerate() {
                    assert_eq!(t.length, tables::KQ_2ADIC_LENGTHS[w as usize][r]);
                    check_slots(&pr, &tables::kq_2adic(w as u8, r as u8), t, k);
                }
            }
        }
    }
}

fn check_slots(pr: &NumberRingParams, row: &tables::Row, t: &slicess::assembler::FiltrationTable, k: i64) {
    for (slot, quot) in row.slots.iter().zip(&t.quotients) {
        let want: Option<u32> = slot.iter().map(|&s| remark_rank(pr, s, k)).sum();
        if let Some(want) = want {
            assert_eq!(quot.rank, Some(DimRange::exact(want)), "{} slot {}", t.label, quot.label);
        }
    }
}

#[test]
fn integers_with_two_inverted() {
    let z = BaseModel::NumberRing(NumberRingParams::z_half());
    let t = filtration(&z, Theory::KQ, 1, 2, 0).unwrap();
    let dims: Vec<u32> = t.quotients.iter().map(|x| x.rank.unwrap().lo).collect();
    assert_eq!(dims, [1, 3, 1]);
    assert_eq!(group_order_2rank(&t).log_order, Some(DimRange::exact(5)));
    assert_eq!(log_order(&z, Theory::KGL, 1, 1, 0), 2);
}

#[test]
fn witt_theory_of_s_integers() {
    for tup in TUPLES {
        let pr = params(tup);
        let model = BaseModel::NumberRing(pr);
        let pic = kw_integral(&model, 3, 0).unwrap();
        assert_eq!(group_order_2rank(&pic).rank.unwrap(), DimRange::exact(pr.t));
        let w = kw_integral(&model, 4, 0).unwrap();
        let o = group_order_2rank(&w);
        assert_eq!(o.free_rank, pr.r1);
        for p in [1, 2, 5, 6] {
            assert!(kw_integral(&model, p, 0).unwrap().quotients.is_empty());
        }
    }
}
