//! Mod-2^n cohomology of the explicit models through a split universal
//! coefficient description of the integral groups.
//!
//! Every monomial `g` of h^{a,b} arises either as the reduction of a cyclic
//! summand Z/2^e of H^a(−; Z(b)) (e may be infinite) or as the lift of a
//! 2-torsion class of such a summand in H^{a+1}. In H^{a,b}(−; Z/2^n) the
//! same monomial names a cyclic summand of order 2^{min(n,e)}.

use serde::{Deserialize, Serialize};

use super::model::{BaseModel, Class4};
use super::monomial::{basis, Monomial};
use super::ops::{apply_op, Op, Prim};
use super::MotivicError;
use crate::f2linalg::{homology_group_2n, IntMatrix2n};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UctKind {
    /// Reduction of a cyclic summand of order 2^e (None = infinite).
    Reduction { e: Option<u32> },
    /// Lift of the 2-torsion of a summand Z/2^e whose reduction is `partner`.
    Lift { e: u32, partner: Monomial },
}

fn v2(x: u64) -> u32 {
    x.trailing_zeros()
}

/// v₂(ℓ^m − 1) for the representative prime of the class.
fn v_ell(c: Class4, m: u32) -> u32 {
    let l = c.representative();
    if m == 0 {
        return u32::MAX;
    }
    match c {
        Class4::One => v2(l - 1) + v2(m as u64),
        Class4::Three if m % 2 == 1 => 1,
        Class4::Three => v2(l - 1) + v2(l + 1) + v2(m as u64) - 1,
    }
}

/// v₂ of w_b(Q₂).
fn w_q2(b: u32) -> u32 {
    if b % 2 == 1 {
        1
    } else {
        v2(b as u64) + 2
    }
}

fn red(e: u32) -> UctKind {
    UctKind::Reduction { e: Some(e) }
}

const FREE: UctKind = UctKind::Reduction { e: None };

fn lift(e: u32, partner: Monomial) -> UctKind {
    UctKind::Lift { e, partner }
}

/// Universal-coefficient type of a normal-form monomial in an explicit model.
pub fn uct_kind(model: &BaseModel, m: &Monomial) -> UctKind {
    let (a, b) = (m.p() as u32, m.q() as u32);
    let tau = |k: u32, x: Monomial| x.with_tau(k);
    match model {
        BaseModel::QuadClosed => FREE,
        BaseModel::RealClosed => {
            if a == 0 && b % 2 == 0 {
                FREE
            } else if a % 2 == b % 2 {
                red(1)
            } else {
                lift(1, Monomial::rho_pow(a + 1).with_tau(b - a - 1))
            }
        }
        BaseModel::FiniteField(c) => {
            let unr = if *c == Class4::One { Monomial::U } else { Monomial::RHO };
            match (a, b) {
                (0, 0) => FREE,
                (0, _) => lift(v_ell(*c, b), tau(b - 1, unr)),
                _ => red(v_ell(*c, b)),
            }
        }
        BaseModel::LocalQl(c) => {
            let top = if *c == Class4::One {
                Monomial { u: 1, pi: 1, ..Monomial::ONE }
            } else {
                Monomial { pi: 2, ..Monomial::ONE }
            };
            match (a, b) {
                (0, 0) => FREE,
                (0, _) => {
                    let unr = if *c == Class4::One { Monomial::U } else { Monomial::RHO };
                    lift(v_ell(*c, b), tau(b - 1, unr))
                }
                (1, _) if m.pi == 0 => red(v_ell(*c, b)),
                (1, 1) => FREE,
                (1, _) => lift(v_ell(*c, b - 1), tau(b - 2, top)),
                _ => red(v_ell(*c, b - 1)),
            }
        }
        BaseModel::LocalQ2 => match (a, b) {
            (0, 0) => FREE,
            (0, _) if b % 2 == 1 => lift(w_q2(b), tau(b - 1, Monomial::RHO)),
            (0, _) => lift(w_q2(b), tau(b - 1, Monomial::PI)),
            (1, 1) => {
                if m.rho == 1 {
                    red(1)
                } else {
                    FREE
                }
            }
            (1, _) if b % 2 == 1 => match (m.rho, m.u) {
                (1, _) => red(1),
                (_, 1) => lift(w_q2(b - 1), tau(b - 2, Monomial::rho_pow(2))),
                _ => FREE,
            },
            (1, _) => match (m.rho, m.u) {
                (1, _) => lift(1, tau(b - 2, Monomial::rho_pow(2))),
                (_, 1) => FREE,
                _ => red(w_q2(b)),
            },
            _ => red(w_q2(b - 1)),
        },
        BaseModel::NumberRing(_) => FREE,
    }
}

/// log₂ of the order of the summand named by `m` in H(−; Z/2^n).
pub fn generator_level(model: &BaseModel, m: &Monomial, n: u32) -> u32 {
    if n <= 1 {
        return 1;
    }
    match uct_kind(model, m) {
        UctKind::Reduction { e: None } => n,
        UctKind::Reduction { e: Some(e) } | UctKind::Lift { e, .. } => e.min(n),
    }
}

/// Levels of the basis of H^{a,b}(−; Z/2^n).
pub fn piece_levels(model: &BaseModel, mons: &[Monomial], n: u32) -> Vec<u32> {
    mons.iter().map(|m| generator_level(model, m, n)).collect()
}

/// Matrix of `op` from the level-`src_level` group with basis `src` to the
/// level-`tgt_level` group with basis `tgt`.
pub fn op_matrix(
    model: &BaseModel,
    op: &Op,
    src_level: u32,
    src: &[Monomial],
    tgt_level: u32,
    tgt: &[Monomial],
) -> Result<IntMatrix2n, MotivicError> {
    let row_levels = piece_levels(model, tgt, tgt_level);
    let col_levels = piece_levels(model, src, src_level);
    let mut entries = vec![0u64; tgt.len() * src.len()];
    for (j, m) in src.iter().enumerate() {
        for (img, c) in apply_op(model, op, src_level, m)? {
            let i = tgt.iter().position(|t| *t == img).unwrap_or_else(|| {
                panic!("image {img} of {m} under {op} lies outside the target basis")
            });
            entries[i * src.len() + j] = c;
        }
    }
    Ok(IntMatrix2n::with_levels(row_levels, col_levels, entries).expect("operation matrices are well defined"))
}

/// Shape of a homomorphism of finite groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapClass {
    Iso,
    Trivial,
    /// Injective with nontrivial cokernel.
    Injective,
    /// Surjective with nontrivial kernel.
    Surjective,
    /// Neither injective nor surjective, and nonzero.
    Other,
}

/// The four maps between mod-2 and mod-2^n coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoeffMap {
    Pr,
    Inc,
    Del2nTo2,
    Del2To2n,
}

impl CoeffMap {
    pub fn prim(self, n: u32) -> Prim {
        match self {
            CoeffMap::Pr => Prim::Pr(n),
            CoeffMap::Inc => Prim::Inc(n),
            CoeffMap::Del2nTo2 => Prim::Del2nTo2(n),
            CoeffMap::Del2To2n => Prim::Del2To2n(n),
        }
    }
}

/// Classifies a coefficient map on H^{a,b} of an explicit model.
pub fn coeff_map(kind: CoeffMap, model: &BaseModel, n: u32, a: i64, b: i64) -> Result<MapClass, MotivicError> {
    let map = kind.prim(n);
    let (src_level, tgt_level) = match map.levels() {
        (Some(s), Some(t)) => (s, t),
        _ => (1, 1),
    };
    let (da, db) = map.bidegree();
    let src = basis(model, a, b).monomials().to_vec();
    let tgt = basis(model, a + da, b + db).monomials().to_vec();
    let m = op_matrix(model, &map.into(), src_level, &src, tgt_level, &tgt)?;
    let src_order: u32 = m.col_levels().iter().sum();
    let tgt_order: u32 = m.row_levels().iter().sum();
    let ker = homology_group_2n(&IntMatrix2n::zeros(m.col_levels().to_vec(), vec![]), &m)
        .expect("kernel computation")
        .log_order();
    let image = src_order - ker;
    Ok(match (ker == 0, image == tgt_order, image == 0) {
        (true, true, _) => MapClass::Iso,
        (_, _, true) => MapClass::Trivial,
        (true, false, _) => MapClass::Injective,
        (false, true, _) => MapClass::Surjective,
        _ => MapClass::Other,
    })
}
