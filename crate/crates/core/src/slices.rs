//! Slices of KGL/2^n, KQ/2^n and KW/2^n and the quintuples describing
//! their first slice differentials.
//!
//! s_q(E) is a sum of summands Σ^{q+j,q} MZ/2^l. The d¹-component a_d of a
//! quintuple (a₄, a₃, a₂, a₁, a₀) has bidegree (d, 1) and maps the summand
//! j of s_q to the summand j + d − 2 of s_{q+1}.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::motivic::{MotivicError, Op, Prim};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theory {
    KGL,
    KQ,
    KW,
}

impl Theory {
    pub const ALL: [Theory; 3] = [Theory::KGL, Theory::KQ, Theory::KW];

    pub fn name(&self) -> &'static str {
        match self {
            Theory::KGL => "KGL",
            Theory::KQ => "KQ",
            Theory::KW => "KW",
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theory {
    type Err = SliceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "kgl" | "k" => Ok(Theory::KGL),
            "kq" | "gw" => Ok(Theory::KQ),
            "kw" | "w" => Ok(Theory::KW),
            _ => Err(SliceError::UnknownTheory(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SliceError {
    #[error("unknown theory `{0}` (expected kgl, kq or kw)")]
    UnknownTheory(String),
    #[error("coefficient exponent must be at least 1")]
    BadModulus,
    #[error("s_{q}({theory}) has no summand with j = {j}")]
    NoSummand { theory: Theory, q: i64, j: i64 },
    #[error("component a_{d} at (q={q}, j={j}) of {theory}/2^{n}: {why}")]
    Malformed { theory: Theory, n: u32, q: i64, j: i64, d: usize, why: String },
    #[error(transparent)]
    Motivic(#[from] MotivicError),
}

/// One summand Σ^{q+j,q} MZ/2^level of a slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SummandSpec {
    pub q: i64,
    pub j: i64,
    pub level: u32,
}

impl SummandSpec {
    pub fn bidegree(&self) -> (i64, i64) {
        (self.q + self.j, self.q)
    }
}

/// Offset of the target summand of component a_d.
pub const fn target_offset(j: i64, d: usize) -> i64 {
    j + d as i64 - 2
}

/// Coefficient level of summand j of s_q, or None if there is no such summand.
pub fn summand_level(theory: Theory, n: u32, q: i64, j: i64) -> Option<u32> {
    match theory {
        Theory::KGL => (j == q).then_some(n),
        Theory::KW => Some(1),
        Theory::KQ if j > q => None,
        Theory::KQ if j == q && q.rem_euclid(2) == 0 => Some(n),
        Theory::KQ => Some(1),
    }
}

/// Summands of s_q with offset j in `jmin..=jmax`.
pub fn slice_summands(theory: Theory, n: u32, q: i64, jmin: i64, jmax: i64) -> Vec<SummandSpec> {
    (jmin..=jmax)
        .filter_map(|j| summand_level(theory, n, q, j).map(|level| SummandSpec { q, j, level }))
        .collect()
}

/// The d¹-quintuple of one summand; `entries[d]` is a_d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialSpec {
    pub theory: Theory,
    pub n: u32,
    pub source: SummandSpec,
    pub entries: [Op; 5],
}

impl DifferentialSpec {
    /// Nonzero components as (d, target summand, operation).
    pub fn components(&self) -> impl Iterator<Item = (usize, SummandSpec, &Op)> {
        let (t, n, s) = (self.theory, self.n, self.source);
        self.entries.iter().enumerate().filter(|(_, op)| !op.is_zero()).map(move |(d, op)| {
            let j = target_offset(s.j, d);
            let level = summand_level(t, n, s.q + 1, j).expect("validated at construction");
            (d, SummandSpec { q: s.q + 1, j, level }, op)
        })
    }
}

impl fmt::Display for DifferentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.entries.iter().rev().map(|o| o.to_string()).collect();
        write!(f, "({})", e.join(", "))
    }
}

fn sq(p: Prim) -> Op {
    p.into()
}

fn sq2_plus_rho_sq1() -> Op {
    sq(Prim::Sq2) + Op::rho().compose(&sq(Prim::Sq1))
}

fn q1() -> Op {
    sq(Prim::Sq2Sq1) + sq(Prim::Sq3)
}

/// Builds [a₀, a₁, a₂, a₃, a₄] from the written order (a₄, a₃, a₂, a₁, a₀).
fn quint(a4: Op, a3: Op, a2: Op, a1: Op, a0: Op) -> [Op; 5] {
    [a0, a1, a2, a3, a4]
}

fn kw2(j: i64) -> [Op; 5] {
    let z = Op::zero;
    match j.rem_euclid(4) {
        0 => quint(sq(Prim::Sq3Sq1), z(), sq(Prim::Sq2), z(), z()),
        1 => quint(sq(Prim::Sq3Sq1), q1(), sq(Prim::Sq2), Op::rho() + Op::tau().compose(&sq(Prim::Sq1)), z()),
        2 => quint(sq(Prim::Sq3Sq1), z(), sq2_plus_rho_sq1(), z(), Op::tau()),
        _ => quint(sq(Prim::Sq3Sq1), q1(), sq2_plus_rho_sq1(), Op::tau().compose(&sq(Prim::Sq1)), Op::tau()),
    }
}

fn kq2_top(q: i64) -> [Op; 5] {
    let z = Op::zero;
    let tsq1 = || Op::tau().compose(&sq(Prim::Sq1));
    match q.rem_euclid(4) {
        0 => quint(z(), sq(Prim::Sq2Sq1), sq2_plus_rho_sq1(), z(), z()),
        1 => quint(z(), q1(), sq(Prim::Sq2), Op::rho() + tsq1(), z()),
        2 => quint(z(), sq(Prim::Sq2Sq1), sq2_plus_rho_sq1(), tsq1(), Op::tau()),
        _ => quint(z(), q1(), sq2_plus_rho_sq1(), tsq1(), Op::tau()),
    }
}

fn kw2n(j: i64) -> [Op; 5] {
    let z = Op::zero;
    match j.rem_euclid(4) {
        0 | 1 => quint(sq(Prim::Sq3Sq1), z(), sq(Prim::Sq2), z(), z()),
        _ => quint(sq(Prim::Sq3Sq1), z(), sq2_plus_rho_sq1(), z(), Op::tau()),
    }
}

fn kq2n_below_top(q: i64, n: u32) -> [Op; 5] {
    let z = Op::zero;
    let del_sq2sq1 = || Op::chain(&[Prim::Del2To2n(n), Prim::Sq2Sq1]);
    match (q - 1).rem_euclid(4) {
        0 => quint(del_sq2sq1(), z(), sq(Prim::Sq2), z(), z()),
        1 => quint(sq(Prim::Sq3Sq1), z(), sq(Prim::Sq2), z(), z()),
        2 => quint(del_sq2sq1(), z(), sq2_plus_rho_sq1(), z(), Op::tau()),
        _ => quint(sq(Prim::Sq3Sq1), z(), sq2_plus_rho_sq1(), z(), Op::tau()),
    }
}

fn kq2n_top(q: i64, n: u32) -> [Op; 5] {
    let z = Op::zero;
    let sq2_del = || Op::chain(&[Prim::Sq2, Prim::Del2nTo2(n)]);
    let sq2_pr = || Op::chain(&[Prim::Sq2, Prim::Pr(n)]);
    let inc_sq2sq1 = || Op::chain(&[Prim::Inc(n), Prim::Sq2Sq1]);
    match q.rem_euclid(4) {
        0 => quint(z(), sq2_del(), sq2_pr(), z(), z()),
        1 => quint(z(), inc_sq2sq1(), sq(Prim::Sq2), z(), z()),
        2 => quint(
            z(),
            sq2_del(),
            sq2_pr(),
            Op::chain(&[Prim::Mul { rho: 0, tau: 1 }, Prim::Del2nTo2(n)]),
            Op::chain(&[Prim::Mul { rho: 0, tau: 1 }, Prim::Pr(n)]),
        ),
        _ => quint(z(), inc_sq2sq1(), sq2_plus_rho_sq1(), z(), Op::tau()),
    }
}

/// d¹ on KGL/2^n. For n = 1 this is the first Milnor operation Q₁. For
/// n ≥ 2 it is ∂'Sq²pr + inc Sq²∂, which reduces to Sq¹Sq² + Sq²Sq¹ = Q₁
/// when n = 1 and squares to zero because Sq²Sq¹Sq² vanishes.
fn kgl(n: u32) -> [Op; 5] {
    let z = Op::zero;
    let a3 = if n == 1 {
        q1()
    } else {
        Op::chain(&[Prim::Del2To2n(n), Prim::Sq2, Prim::Pr(n)]) + Op::chain(&[Prim::Inc(n), Prim::Sq2, Prim::Del2nTo2(n)])
    };
    quint(z(), a3, z(), z(), z())
}

/// The d¹-quintuple on summand j of s_q(theory/2^n).
pub fn d1_components(theory: Theory, n: u32, q: i64, j: i64) -> Result<DifferentialSpec, SliceError> {
    if n == 0 {
        return Err(SliceError::BadModulus);
    }
    let level = summand_level(theory, n, q, j).ok_or(SliceError::NoSummand { theory, q, j })?;
    let entries = match (theory, n) {
        (Theory::KGL, _) => kgl(n),
        (Theory::KW, 1) => kw2(j),
        (Theory::KW, _) => kw2n(j),
        (Theory::KQ, 1) if j == q => kq2_top(q),
        (Theory::KQ, 1) => kw2(j),
        (Theory::KQ, _) if j == q => kq2n_top(q, n),
        (Theory::KQ, _) if j == q - 1 => kq2n_below_top(q, n),
        (Theory::KQ, _) => kw2n(j),
    };
    let spec = DifferentialSpec { theory, n, source: SummandSpec { q, j, level }, entries };
    validate(&spec)?;
    Ok(spec)
}

fn validate(spec: &DifferentialSpec) -> Result<(), SliceError> {
    let s = spec.source;
    for (d, op) in spec.entries.iter().enumerate() {
        if op.is_zero() {
            continue;
        }
        let bad = |why: String| SliceError::Malformed { theory: spec.theory, n: spec.n, q: s.q, j: s.j, d, why };
        let jt = target_offset(s.j, d);
        let tgt = summand_level(spec.theory, spec.n, s.q + 1, jt)
            .ok_or_else(|| bad(format!("target summand j = {jt} does not exist")))?;
        match op.bidegree()? {
            Some(b) if b == (d as i64, 1) => {}
            other => return Err(bad(format!("bidegree {other:?}, expected ({d}, 1)"))),
        }
        op.check_levels(s.level, tgt).map_err(|e| bad(e.to_string()))?;
    }
    Ok(())
}
