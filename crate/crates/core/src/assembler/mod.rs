//! From E^∞ columns to filtered abutments: filtration tables, group orders
//! and 2-ranks, the graded Witt ring, and the number-ring group tables.

mod render;
pub mod tables;
pub mod two_adic;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::closed_form::h_dim;
use crate::engine::{EngineError, Sseq};
use crate::motivic::{BaseModel, DimRange, NumberRingParams};
use crate::slices::Theory;

pub use render::{to_latex, to_text};
use tables::{Row, Sym};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssemblerError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("{0} is not a ring of S-integers")]
    NotNumberRing(String),
    #[error("E^∞ column {p} of {sseq} is still nonzero at q = {q}")]
    Unbounded { sseq: String, p: i64, q: i64 },
    #[error("the order of {0} is not determined by the inputs")]
    Undetermined(String),
    #[error("inconsistent orders: {0}")]
    Inconsistent(String),
}

/// How the filtration quotients assemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Extension {
    /// At most one nonzero quotient.
    Trivial,
    /// Extensions are left open.
    SplitUnknown,
    /// The quotients are linked by ρ = −2 into nonsplit chains.
    ResolvedByRho,
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extension::Trivial => "trivial",
            Extension::SplitUnknown => "split-unknown",
            Extension::ResolvedByRho => "resolved-by-rho",
        })
    }
}

/// One filtration quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quotient {
    /// Instantiated name, e.g. "ker ρ²_{1,4}".
    pub label: String,
    /// Table form of the name, e.g. "ker ρ²_{1,4k+4}", for tabulated rows.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub symbol: Option<String>,
    /// The slice row q it is read from, for quotients computed from E^∞.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<i64>,
    /// log₂ of the order of the torsion part; `None` if undetermined.
    pub log_order: Option<DimRange>,
    /// Dimension of the quotient mod 2; `None` if undetermined.
    pub rank: Option<DimRange>,
    /// Number of Z₂ summands.
    pub free_rank: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group: Option<String>,
}

impl Quotient {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.log_order == Some(DimRange::exact(0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationTable {
    /// The abutment, e.g. "KQ_{2,0}(Z[1/2]; Z/2)".
    pub label: String,
    /// Row name in table form, e.g. "8k+2", for tabulated rows.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub row: Option<String>,
    /// f₀/f₁, f₁/f₂, …, in order.
    pub quotients: Vec<Quotient>,
    pub length: usize,
    pub extension: Extension,
}

/// Order and 2-rank bounds of an abutment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderRank {
    /// log₂ of the order of the torsion part, if determined.
    pub log_order: Option<DimRange>,
    pub rank: Option<DimRange>,
    pub free_rank: u32,
}

pub fn group_order_2rank(table: &FiltrationTable) -> OrderRank {
    let qs = &table.quotients;
    let free_rank = qs.iter().map(|x| x.free_rank).sum();
    let log_order = qs.iter().map(|x| x.log_order).sum::<Option<DimRange>>();
    let ranks: Option<Vec<DimRange>> = qs.iter().map(|x| x.rank).collect();
    let rank = ranks.map(|rs| {
        let nonzero: Vec<&DimRange> = rs.iter().filter(|r| r.hi > 0).collect();
        let cyclic_chain = table.extension == Extension::ResolvedByRho
            && free_rank == 0
            && nonzero.iter().all(|r| **r == DimRange::exact(1));
        if cyclic_chain && !nonzero.is_empty() {
            return DimRange::exact(1);
        }
        let lo = rs.iter().map(|r| r.lo).max().unwrap_or(0);
        let hi = rs.iter().map(|r| r.hi).sum::<u32>().max(lo);
        DimRange::new(lo, hi)
    });
    OrderRank { log_order, rank, free_rank }
}

fn coefficients(n: u32) -> String {
    if n == 1 {
        "Z/2".into()
    } else {
        format!("Z/{}", 1u64 << n)
    }
}

fn abutment(theory: Theory, model: &BaseModel, coeff: &str, p: i64, w: i64) -> String {
    match theory {
        Theory::KGL if w == 0 => format!("K_{{{p}}}({model}; {coeff})"),
        t => format!("{}_{{{p},{w}}}({model}; {coeff})", t.name()),
    }
}

/// The filtration of theory_{p,w}(model; Z/2^n).
///
/// Explicit fields read the E^∞ column; rings of S-integers use the
/// tabulated rows for K_p and KQ_{p,0} with p ≥ 0 and the closed-form
/// E² = E^∞ column otherwise.
pub fn filtration(model: &BaseModel, theory: Theory, n: u32, p: i64, w: i64) -> Result<FiltrationTable, AssemblerError> {
    if let (BaseModel::NumberRing(params), 1, 0, Theory::KGL | Theory::KQ) = (model, n, w, theory) {
        if p >= 0 {
            let (k, r) = (p.div_euclid(8), p.rem_euclid(8) as u8);
            let row = if theory == Theory::KQ { tables::kq_mod2(r) } else { tables::k_mod2(r) };
            let label = abutment(theory, model, "Z/2", p, 0);
            return Ok(instantiate(label, r, &row, params, k));
        }
    }
    engine_filtration(Sseq::new(*model, theory, n, w)?, p)
}

fn engine_filtration(s: Sseq, p: i64) -> Result<FiltrationTable, AssemblerError> {
    let w = s.weight;
    let qmax = w.max((p + 8).div_euclid(2)) + 8 + s.n as i64;
    let mut quotients = Vec::new();
    for q in w..=qmax {
        let comps = s.einf_components(p, q)?;
        let log: DimRange = comps.iter().map(|c| c.dim).sum();
        if log == DimRange::exact(0) {
            continue;
        }
        if q > qmax - 6 {
            return Err(AssemblerError::Unbounded { sseq: s.to_string(), p, q });
        }
        let groups: Option<Vec<_>> = comps.iter().map(|c| c.group.clone()).collect();
        let group = groups.map(|g| g.iter().fold(crate::f2linalg::Abelian2Group::trivial(), |a, b| a.direct_sum(b)));
        quotients.push(Quotient {
            label: comps.iter().map(|c| c.label.as_str()).collect::<Vec<_>>().join(" ⊕ "),
            symbol: None,
            q: Some(q),
            log_order: Some(log),
            rank: Some(group.as_ref().map_or(log, |g| DimRange::exact(g.rank() as u32))),
            free_rank: 0,
            group: group.map(|g| g.to_string()),
        });
    }
    let extension = match quotients.len() {
        0 | 1 => Extension::Trivial,
        _ if s.theory == Theory::KW && s.model == BaseModel::RealClosed => Extension::ResolvedByRho,
        _ => Extension::SplitUnknown,
    };
    Ok(FiltrationTable {
        label: abutment(s.theory, &s.model, &coefficients(s.n), p, w),
        row: None,
        length: quotients.len(),
        quotients,
        extension,
    })
}

/// Filtrations for a range of degrees, computed in parallel.
pub fn filtrations(
    model: &BaseModel,
    theory: Theory,
    n: u32,
    ps: impl IntoIterator<Item = i64>,
    w: i64,
) -> Result<Vec<FiltrationTable>, AssemblerError> {
    let ps: Vec<i64> = ps.into_iter().collect();
    ps.par_iter().map(|&p| filtration(model, theory, n, p, w)).collect()
}

fn row_name(r: u8) -> String {
    if r == 0 {
        "8k".into()
    } else {
        format!("8k+{r}")
    }
}

fn instantiate(label: String, r: u8, row: &Row, params: &NumberRingParams, k: i64) -> FiltrationTable {
    let quotients: Vec<Quotient> = row
        .slots
        .iter()
        .map(|slot| {
            let join = |f: &dyn Fn(&Sym) -> String| slot.iter().map(f).collect::<Vec<_>>().join(" ⊕ ");
            Quotient {
                label: join(&|s| s.at(k)),
                symbol: Some(join(&|s| s.symbolic())),
                q: None,
                log_order: slot.iter().map(|s| s.log_order(params, k)).sum(),
                rank: slot.iter().map(|s| s.rank(params, k)).sum(),
                free_rank: slot.iter().map(|s| s.free_rank(params, k)).sum(),
                group: None,
            }
        })
        .collect();
    let extension = if quotients.len() <= 1 {
        Extension::Trivial
    } else if row.slots.iter().flatten().any(|s| *s == Sym::Free) && params.r1 > 0 {
        Extension::ResolvedByRho
    } else {
        Extension::SplitUnknown
    };
    FiltrationTable { label, row: Some(row_name(r)), length: row.length, quotients, extension }
}

fn params_of(model: &BaseModel) -> Result<&NumberRingParams, AssemblerError> {
    model.number_ring().ok_or_else(|| AssemblerError::NotNumberRing(model.to_string()))
}

/// The tabulated mod-2 rows K_{8k+r} or KQ_{8k+r,0}, r = 0..7.
pub fn mod2_tables(model: &BaseModel, theory: Theory, k: i64) -> Result<Vec<FiltrationTable>, AssemblerError> {
    let params = params_of(model)?;
    let pick = match theory {
        Theory::KGL => tables::k_mod2,
        Theory::KQ => tables::kq_mod2,
        Theory::KW => return Err(AssemblerError::OutOfRange("no mod-2 table for KW".into())),
    };
    Ok((0..8u8)
        .map(|r| {
            let p = 8 * k + r as i64;
            instantiate(abutment(theory, model, "Z/2", p, 0), r, &pick(r), params, k)
        })
        .collect())
}

/// The 2-adic rows KQ_{8k+r,w}(O_{F,S}; Z₂), r = 0..7, for w mod 4.
pub fn two_adic_tables(model: &BaseModel, w: i64, k: i64) -> Result<Vec<FiltrationTable>, AssemblerError> {
    let params = params_of(model)?;
    let wm = w.rem_euclid(4) as u8;
    Ok((0..8u8)
        .map(|r| {
            let p = 8 * k + r as i64;
            instantiate(abutment(Theory::KQ, model, "Z₂", p, w), r, &tables::kq_2adic(wm, r), params, k)
        })
        .collect())
}

/// KW_{p,w}(O_{F,S}) with integral coefficients: W(O_{F,S}) filtered by
/// the powers of the fundamental ideal, or Pic/2.
pub fn kw_integral(model: &BaseModel, p: i64, w: i64) -> Result<FiltrationTable, AssemblerError> {
    let params = params_of(model)?;
    let label = abutment(Theory::KW, model, "Z", p, w);
    let q = |label: String, dim: u32, free: u32| Quotient {
        label,
        symbol: None,
        q: None,
        log_order: (free == 0).then_some(DimRange::exact(dim)),
        rank: Some(DimRange::exact(dim)),
        free_rank: free,
        group: None,
    };
    let (quotients, extension) = match (p - w).rem_euclid(4) {
        0 => {
            let mut v: Vec<Quotient> = (0..=2)
                .map(|i| {
                    let name = if i == 2 { "h^{2,2}/τ".to_string() } else { format!("h^{{{i},{i}}}") };
                    q(name, graded_witt(model, i), 0)
                })
                .collect();
            // I^q/I^{q+1} ≅ h^{q,q} has dimension r₁ for q ≥ 3: the signature tower.
            if params.r1 > 0 {
                v.push(q("I³ ≅ Z^{r₁}".into(), params.r1, params.r1));
            }
            let v: Vec<Quotient> = v.into_iter().filter(|x| !x.is_zero()).collect();
            let ext = if params.r1 > 0 { Extension::ResolvedByRho } else { Extension::SplitUnknown };
            (v, ext)
        }
        3 => (vec![q("h^{2,1}".into(), params.t, 0)].into_iter().filter(|x| !x.is_zero()).collect(), Extension::Trivial),
        _ => (vec![], Extension::Trivial),
    };
    let extension = if quotients.len() <= 1 { Extension::Trivial } else { extension };
    Ok(FiltrationTable { label, row: None, length: quotients.len(), quotients, extension })
}

/// dim I^q/I^{q+1} = dim h^{q,q}/τ h^{q,q−1}.
pub fn graded_witt(model: &BaseModel, q: i64) -> u32 {
    if q < 0 {
        return 0;
    }
    match model {
        BaseModel::NumberRing(p) => p.milnor_mod_tau(q),
        // Over fields h^{q,q−1} = 0.
        m => h_dim(m, q, q),
    }
}

/// q ↦ dim I^q/I^{q+1} for q = 0..=qmax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittGrading {
    pub dims: Vec<u32>,
}

pub fn witt_grading(model: &BaseModel, qmax: i64) -> WittGrading {
    WittGrading { dims: (0..=qmax).map(|q| graded_witt(model, q)).collect() }
}

/// log₂|W/2| and log₂|₂W| from the mod-2 KW columns p = 0 and p = 1.
pub fn witt_mod2_logs(model: &BaseModel) -> Result<(DimRange, DimRange), AssemblerError> {
    let order = |p| -> Result<DimRange, AssemblerError> {
        let t = filtration(model, Theory::KW, 1, p, 0)?;
        group_order_2rank(&t).log_order.ok_or_else(|| AssemblerError::Undetermined(t.label.clone()))
    };
    Ok((order(0)?, order(1)?))
}

/// KQ_{p,w}(O_{F,S}; Z_ℓ) for an odd prime ℓ ∈ S and p − w ≥ 0, in terms
/// of H^{i,m}(O_{F,S}; Z_ℓ).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OddPrimary {
    Zero,
    H { i: i64, weight: i64 },
}

impl fmt::Display for OddPrimary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OddPrimary::Zero => f.write_str("0"),
            OddPrimary::H { i, weight } => write!(f, "H^{{{i},{weight}}}"),
        }
    }
}

pub fn odd_primary(model: &BaseModel, ell: u64, p: i64, w: i64) -> Result<OddPrimary, AssemblerError> {
    params_of(model)?;
    if ell < 3 || ell.is_multiple_of(2) || !(2..).take_while(|d| d * d <= ell).all(|d| !ell.is_multiple_of(d)) {
        return Err(AssemblerError::OutOfRange(format!("{ell} is not an odd prime")));
    }
    let d = p - w;
    if d < 0 {
        return Err(AssemblerError::OutOfRange(format!("p − w = {d} is negative")));
    }
    let m = d.div_euclid(2);
    Ok(match d % 4 {
        0 => OddPrimary::H { i: 0, weight: m },
        1 => OddPrimary::Zero,
        2 => OddPrimary::H { i: 2, weight: 2 + m },
        _ => OddPrimary::H { i: 1, weight: 2 + m },
    })
}
