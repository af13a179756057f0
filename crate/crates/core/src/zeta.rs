//! 2-adic valuations of special values of Dedekind zeta functions, from
//! algebraic K-theory, from hermitian K-theory, and for F = Q from
//! Bernoulli numbers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::assembler::two_adic::{kq_order, kq_ratio_23_w2, CohomologyOrders};
use crate::assembler::AssemblerError;
use crate::engine::closed_form::{term_dim, Term};
use crate::motivic::{BaseModel, NumberRingParams};

pub type RationalExact = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZetaError {
    #[error("w_q is only handled for even q ≥ 2, got q = {0}")]
    OddQUnsupported(i64),
    #[error("{0} is not totally real")]
    NotTotallyReal(String),
    #[error("{0} is not a ring of S-integers")]
    NotNumberRing(String),
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error(transparent)]
    Assembler(#[from] AssemblerError),
}

/// 2-adic valuation of a nonzero integer.
pub fn v2_int(n: &BigInt) -> i64 {
    assert!(!n.is_zero(), "v₂(0) is infinite");
    n.trailing_zeros().expect("nonzero") as i64
}

/// 2-adic valuation of a nonzero rational.
pub fn v2(x: &RationalExact) -> i64 {
    v2_int(x.numer()) - v2_int(x.denom())
}

fn binomials(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row
}

/// B_0, …, B_m from Σ_{j=0}^{m} C(m+1, j) B_j = 0.
pub fn bernoulli_numbers(m: usize) -> Vec<RationalExact> {
    let mut b: Vec<RationalExact> = vec![RationalExact::one()];
    for n in 1..=m {
        let c = binomials(n + 1);
        let s: RationalExact = (0..n).map(|j| RationalExact::from_integer(c[j].clone()) * &b[j]).sum();
        b.push(-s / RationalExact::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// B_{2k}, k ≥ 1.
pub fn bernoulli(k: u32) -> Result<RationalExact, ZetaError> {
    if k == 0 {
        return Err(ZetaError::BadArgument("bernoulli needs k ≥ 1".into()));
    }
    Ok(bernoulli_numbers(2 * k as usize).pop().expect("nonempty"))
}

/// ζ_Q(1 − 2k) = −B_{2k}/(2k).
pub fn zeta_q(k: u32) -> Result<RationalExact, ZetaError> {
    Ok(-bernoulli(k)? / RationalExact::from_integer(BigInt::from(2 * k)))
}

/// v₂(w_q(Q)): the largest m such that a^q ≡ 1 mod 2^m for every odd a,
/// found by checking all units mod 2^m.
pub fn w_q_2part(q: i64) -> Result<u32, ZetaError> {
    if q < 2 || q % 2 != 0 {
        return Err(ZetaError::OddQUnsupported(q));
    }
    let trivial = |m: u32| {
        let modulus = 1u64 << m;
        (1..modulus).step_by(2).all(|a| mod_pow(a, q as u64, modulus) == 1)
    };
    let mut m = 1;
    while m < 40 && trivial(m + 1) {
        m += 1;
    }
    Ok(m)
}

fn mod_pow(a: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc: u128 = 1 % m;
    let mut base = a as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

/// The algebraic K-theory route ζ_F(1−q) ~ 2^{r₁} #K_{2q−2}/#K_{2q−1}, q even,
/// with the K-groups obtained from H^{1,q} and H^{2,q}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KglRoute {
    pub q: i64,
    /// v₂ #K_{2q−2}(O_F[1/2]).
    pub k_even: i64,
    /// v₂ #K_{2q−1}(O_F[1/2]) torsion.
    pub k_odd: i64,
    pub v2: i64,
}

pub fn zeta_v2_via_kgl(r1: u32, q: i64, h1: i64, h2: i64) -> Result<KglRoute, ZetaError> {
    if q < 2 || q % 2 != 0 {
        return Err(ZetaError::OddQUnsupported(q));
    }
    let r1 = r1 as i64;
    // K_{2q−1} → H^{1,q} has kernel (Z/2)^{r₁} in degrees ≡ 3 mod 8, and
    // K_{2q−2} → H^{2,q} has cokernel (Z/2)^{r₁} in degrees ≡ 6 mod 8.
    let (k_odd, k_even) = if q % 4 == 2 { (h1 + r1, h2) } else { (h1, h2 - r1) };
    Ok(KglRoute { q, k_even, k_odd, v2: r1 + k_even - k_odd })
}

/// Which special value: ζ_F(−1−4k) or ζ_F(−3−4k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZetaValue {
    MinusOne,
    MinusThree,
}

impl ZetaValue {
    /// The argument s of ζ_F(s).
    pub fn argument(self, k: i64) -> i64 {
        match self {
            ZetaValue::MinusOne => -1 - 4 * k,
            ZetaValue::MinusThree => -3 - 4 * k,
        }
    }

    /// The weight q with s = 1 − q.
    pub fn weight(self, k: i64) -> i64 {
        1 - self.argument(k)
    }
}

impl fmt::Display for ZetaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZetaValue::MinusOne => "ζ_F(−1−4k)",
            ZetaValue::MinusThree => "ζ_F(−3−4k)",
        })
    }
}

/// The hermitian K-theory route: the expression in terms of KQ_{*,0} and
/// the one in terms of KQ_{*,2}, each as a v₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KqRoute {
    /// v₂ #H^{2,q} − v₂ #H^{1,q}.
    pub cohomological: i64,
    pub weight0: i64,
    pub weight2: i64,
    /// The KQ_{*,0} expression equals the cohomological one.
    pub agree: bool,
    /// The KQ_{*,2} expression equals the cohomological one.
    pub weight2_agrees: bool,
}

pub fn zeta_v2_via_kq(
    model: &BaseModel,
    k: i64,
    which: ZetaValue,
    coh: &CohomologyOrders,
) -> Result<KqRoute, ZetaError> {
    let params = model.number_ring().ok_or_else(|| ZetaError::NotNumberRing(model.to_string()))?;
    if params.r2 > 0 {
        return Err(ZetaError::NotTotallyReal(model.to_string()));
    }
    if k < 0 {
        return Err(ZetaError::BadArgument(format!("k = {k} is negative")));
    }
    let h = |a: i64, b: i64| params.dim(a, b) as i64;
    let r1 = params.r1 as i64;
    let kq = |kk: i64, r: u8, w: i64| kq_order(params, coh, kk, r, w).map(|o| o.torsion as i64);
    let q = which.weight(k);
    let hq = |i: u32| {
        let map = if i == 1 { &coh.h1 } else { &coh.h2 };
        map.get(&q).map(|&v| v as i64).ok_or_else(|| AssemblerError::Undetermined(format!("H^{{{i},{q}}}")))
    };
    let cohomological = hq(2)? - hq(1)?;
    let (weight0, weight2) = match which {
        ZetaValue::MinusOne => (
            h(2, q + 1) - h(1, q + 1) + kq(k, 2, 0)? - kq(k, 3, 0)?,
            r1 + h(2, q + 1) + kq(k, 6, 2)? - kq(k, 7, 2)?,
        ),
        ZetaValue::MinusThree => {
            let ker = ker_rho2(params, q);
            (
                r1 + ker + kq(k, 6, 0)? - kq(k, 7, 0)?,
                r1 + 1 + h(2, 4 * k + 3) - h(1, 4 * k + 1) + kq_ratio_23_w2(params, coh, k + 1)?,
            )
        }
    };
    Ok(KqRoute {
        cohomological,
        weight0,
        weight2,
        agree: weight0 == cohomological,
        weight2_agrees: weight2 == cohomological,
    })
}

/// dim ker(ρ: h^{2,q} → h^{3,q+1}).
fn ker_rho2(params: &NumberRingParams, q: i64) -> i64 {
    term_dim(&BaseModel::NumberRing(*params), &Term::Ker(1, 2, q)).value().expect("ker ρ on h^{2,q} is determined") as i64
}

/// The comparison for one special value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaReport {
    pub field: String,
    pub k: i64,
    pub value: ZetaValue,
    /// s with the value ζ_F(s).
    pub argument: i64,
    /// v₂ from the Bernoulli numbers, F = Q only.
    pub oracle_v2: Option<i64>,
    /// v₂ #H^{1,q}, the 2-part of w_q.
    pub h1_v2: i64,
    /// v₂ #H^{2,q} solved from the algebraic K-theory route.
    pub h2_v2: i64,
    pub kgl: KglRoute,
    pub kq: KqRoute,
    /// Sign of the value predicted by the functional equation.
    pub sign: i8,
    /// All routes agree with the oracle.
    pub agree: bool,
}

/// The report for F = Q, using Z[1/2] and the Bernoulli oracle.
pub fn report_q(k: i64, which: ZetaValue) -> Result<ZetaReport, ZetaError> {
    if k < 0 {
        return Err(ZetaError::BadArgument(format!("k = {k} is negative")));
    }
    let params = NumberRingParams::z_half();
    let model = BaseModel::NumberRing(params);
    let q = which.weight(k);
    let oracle = v2(&zeta_q((q / 2) as u32)?);
    let h1 = w_q_2part(q)? as i64;
    let offset = zeta_v2_via_kgl(params.r1, q, h1, 0)?.v2;
    let h2 = oracle - offset;
    if h2 < 0 {
        return Err(ZetaError::Assembler(AssemblerError::Inconsistent(format!("#H^{{2,{q}}} would be 2^{h2}"))));
    }
    let kgl = zeta_v2_via_kgl(params.r1, q, h1, h2)?;
    let coh = CohomologyOrders { h1: [(q, h1 as u32)].into(), h2: [(q, h2 as u32)].into() };
    let kq = zeta_v2_via_kq(&model, k, which, &coh)?;
    Ok(ZetaReport {
        field: "Q".into(),
        k,
        value: which,
        argument: which.argument(k),
        oracle_v2: Some(oracle),
        h1_v2: h1,
        h2_v2: h2,
        kgl,
        kq,
        sign: if params.r1.is_multiple_of(2) { 1 } else { -1 },
        agree: kgl.v2 == oracle && kq.agree && kq.weight0 == oracle,
    })
}

/// Reports for k in a range, both values each.
pub fn reports_q(ks: impl IntoIterator<Item = i64>) -> Result<Vec<ZetaReport>, ZetaError> {
    let mut out = Vec::new();
    for k in ks {
        for which in [ZetaValue::MinusOne, ZetaValue::MinusThree] {
            out.push(report_q(k, which)?);
        }
    }
    Ok(out)
}

/// A fixed-width table of reports.
pub fn to_text(reports: &[ZetaReport]) -> String {
    let mut out = String::from(" k      s  oracle  kgl  kq0  kq2  H1  H2  agree\n");
    for r in reports {
        let oracle = r.oracle_v2.map_or("-".to_string(), |v| v.to_string());
        out.push_str(&format!(
            "{:>2} {:>6} {:>7} {:>4} {:>4} {:>4} {:>3} {:>3}  {}\n",
            r.k, r.argument, oracle, r.kgl.v2, r.kq.weight0, r.kq.weight2, r.h1_v2, r.h2_v2, if r.agree { "yes" } else { "no" }
        ));
    }
    out
}

/// Whether the denominator of B_{2k} is exactly divisible by 2.
pub fn staudt_clausen_2part(b: &RationalExact) -> bool {
    let d = b.denom();
    d.is_even() && (d / BigInt::from(2)).is_odd()
}
