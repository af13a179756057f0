use rayon::prelude::*;
use slicess::engine::closed_form::{e2_formula, h_dim};
use slicess::engine::{hat_dim, Sseq};
use slicess::motivic::BaseModel;
use slicess::slices::Theory;

const P: std::ops::RangeInclusive<i64> = -6..=18;
const Q: std::ops::RangeInclusive<i64> = 0..=14;

fn grid() -> Vec<(i64, i64)> {
    Q.flat_map(|q| P.map(move |p| (p, q))).collect()
}

#[test]
fn d1_squares_to_zero_everywhere() {
    let mut cases = Vec::new();
    for model in BaseModel::EXPLICIT {
        for theory in Theory::ALL {
            for n in 1..=3 {
                for w in 0..=3 {
                    cases.push(Sseq::new(model, theory, n, w).unwrap());
                }
            }
        }
    }
    let bad: Vec<String> = cases
        .par_iter()
        .flat_map_iter(|s| {
            grid().into_iter().filter_map(move |(p, q)| match s.d1_squared_vanishes(p, q) {
                Ok(true) => None,
                Ok(false) => Some(format!("{s} at ({p},{q})")),
                Err(e) => Some(format!("{s} at ({p},{q}): {e}")),
            })
        })
        .collect();
    assert!(bad.is_empty(), "{} failures, first: {:?}", bad.len(), &bad[..bad.len().min(5)]);
}

#[test]
fn e2_matches_closed_forms() {
    let mut cases = Vec::new();
    for model in BaseModel::EXPLICIT {
        for theory in Theory::ALL {
            for w in 0..=3 {
                cases.push(Sseq::new(model, theory, 1, w).unwrap());
            }
        }
    }
    let bad: Vec<String> = cases
        .par_iter()
        .flat_map_iter(|s| {
            grid().into_iter().filter_map(move |(p, q)| {
                let got = s.e2_group(p, q).unwrap().log_order();
                let f = e2_formula(&s.model, s.theory, p, q, s.weight);
                let want = f.dim(&s.model).value().unwrap();
                (got != want).then(|| format!("{s} at ({p},{q}): computed {got}, {f} has {want}"))
            })
        })
        .collect();
    assert!(bad.is_empty(), "{} failures, first: {:#?}", bad.len(), &bad[..bad.len().min(8)]);
}

#[test]
fn e2_is_a_subquotient_of_e1() {
    for model in BaseModel::EXPLICIT {
        for theory in Theory::ALL {
            let s = Sseq::new(model, theory, 2, 1).unwrap();
            for (p, q) in grid() {
                let e1 = s.e1_cell(p, q).unwrap().group().log_order();
                assert!(s.e2_group(p, q).unwrap().log_order() <= e1);
            }
        }
    }
}

/// d¹_{p,q,0} and d¹_{p+w,q,w} are given by the same operations on the
/// summands they share.
#[test]
fn weight_shift_identity() {
    for model in BaseModel::EXPLICIT {
        for theory in Theory::ALL {
            for n in 1..=2 {
                let s0 = Sseq::new(model, theory, n, 0).unwrap();
                for w in 1..=3 {
                    let sw = Sseq::new(model, theory, n, w).unwrap();
                    for q in 0..=10 {
                        for p in -2..=12 {
                            let a = s0.d1_matrix(p, q).unwrap();
                            let b = sw.d1_matrix(p + w, q).unwrap();
                            let shared = |s: &Sseq, pp: i64, src: i64, tgt: i64| {
                                let has = |c: slicess::engine::E1Cell, j| c.summands.iter().any(|x| x.j == j);
                                has(s.e1_cell(pp, q).unwrap(), src) && has(s.e1_cell(pp - 1, q + 1).unwrap(), tgt)
                            };
                            let key = |x: &slicess::engine::Block| (x.src_j, x.tgt_j, x.d, x.op.clone());
                            let ka: Vec<_> = a.blocks.iter().map(key).collect();
                            let kb: Vec<_> = b.blocks.iter().map(key).collect();
                            for x in &kb {
                                if shared(&s0, p, x.0, x.1) {
                                    assert!(ka.contains(x), "{model} {theory} n={n} ({p},{q}) w={w}: {x:?}");
                                }
                            }
                            for x in &ka {
                                if shared(&sw, p + w, x.0, x.1) {
                                    assert!(kb.contains(x), "{model} {theory} n={n} ({p},{q}) w={w}: {x:?}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Over fields E²(KW/2^n) is ĥ^{q',q'} in the two columns p − w ≡ 0, 1.
#[test]
fn kw2n_e2_is_hat_h() {
    for model in BaseModel::EXPLICIT {
        for n in 2..=3 {
            for w in 0..=1 {
                let s = Sseq::new(model, Theory::KW, n, w).unwrap();
                for (p, q) in grid() {
                    let qp = q - w;
                    let want = match (p - w).rem_euclid(4) {
                        0 | 1 if qp >= 0 => hat_dim(&model, qp, qp).unwrap(),
                        _ => 0,
                    };
                    assert_eq!(s.e2_group(p, q).unwrap().log_order(), want, "{s} ({p},{q})");
                }
            }
        }
    }
}

/// v₂(ℓ^i − 1) for the representative primes 5 and 3.
fn v_ell(l: u128, i: u32) -> u32 {
    (l.pow(i) - 1).trailing_zeros()
}

/// log₂ |K_m(F; Z/2^n)| from K_m/2^n ⊕ ₂ⁿK_{m−1}, m ≥ 0, using the
/// classical computations of K_*(ℝ) (via ko), of algebraically closed
/// fields and of finite fields.
fn k_theory_log_order(model: &BaseModel, n: u32, m: u32) -> Option<u32> {
    match model {
        BaseModel::RealClosed => Some(match m % 8 {
            0 | 4 => n,
            1 | 3 => 1,
            2 => 2,
            _ => 0,
        }),
        BaseModel::QuadClosed => Some(if m.is_multiple_of(2) { n } else { 0 }),
        BaseModel::FiniteField(c) => {
            let l = if *c == slicess::motivic::Class4::One { 5 } else { 3 };
            Some(if m == 0 { n } else { n.min(v_ell(l, m.div_ceil(2))) })
        }
        _ => None,
    }
}

/// E² = E^∞ for KGL/2^n, and the column sums reproduce K_*(F; Z/2^n).
#[test]
fn kgl2n_columns_match_k_theory() {
    for model in BaseModel::EXPLICIT {
        for n in 1..=4 {
            let s = Sseq::new(model, Theory::KGL, n, 0).unwrap();
            for m in 0..=12u32 {
                let Some(want) = k_theory_log_order(&model, n, m) else { continue };
                let got: u32 = (0..=20)
                    .map(|q| s.einf_components(m as i64, q).unwrap().iter().map(|c| c.dim.lo).sum::<u32>())
                    .sum();
                assert_eq!(got, want, "{s}: K_{m}");
            }
        }
    }
}

/// τ̃⁴-periodicity of E²(KQ/2) in the stable range.
#[test]
fn kq2_periodicity() {
    for model in [BaseModel::RealClosed, BaseModel::QuadClosed] {
        let s = Sseq::new(model, Theory::KQ, 1, 0).unwrap();
        for q in 0..=10 {
            for p in 1..=12 {
                assert_eq!(
                    s.e2_group(p, q).unwrap(),
                    s.e2_group(p + 8, q + 4).unwrap(),
                    "{model} ({p},{q})"
                );
            }
        }
    }
}

#[test]
fn closed_form_support_is_bounded_by_e1() {
    // A closed-form term only involves groups that occur in E¹.
    for model in BaseModel::EXPLICIT {
        for (p, q) in grid() {
            let f = e2_formula(&model, Theory::KGL, p, q, 0);
            if !f.0.is_empty() {
                assert!(h_dim(&model, 2 * q - p, q) > 0 || (p, q) == (0, 1));
            }
        }
    }
}
