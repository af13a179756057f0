//! Slice spectral sequences: E¹ pages, d¹ matrices, E² by homology and the
//! documented higher differentials.
//!
//! Cells are computed on demand from the base model, so a page on any
//! window is exact: neighbours outside the window are built as needed.

pub mod closed_form;
mod page;
pub mod render;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::f2linalg::{composite_is_zero, homology_group_2n, Abelian2Group, IntMatrix2n, LinalgError};
use crate::motivic::{basis, op_matrix, piece_levels, BaseModel, DimRange, Monomial, MotivicError, Op};
use crate::slices::{d1_components, summand_level, SliceError, Theory};

pub use page::{Cell, Component, Page, PageIndex, Window};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("{model} with coefficients Z/2^{n} is only available through the number-ring tables")]
    UnsupportedTier { model: String, n: u32 },
    #[error("no documented rule determines E^∞ for {theory}/2^{n} over {model}")]
    NoCollapseRule { theory: Theory, n: u32, model: String },
    #[error("E^∞ rule for {0} does not apply: {1}")]
    RuleViolated(String, String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Motivic(#[from] MotivicError),
    #[error(transparent)]
    Slice(#[from] SliceError),
}

/// A slice spectral sequence for theory/2^n over a base in a fixed weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sseq {
    pub model: BaseModel,
    pub theory: Theory,
    pub n: u32,
    pub weight: i64,
}

/// One summand H_l^{i,q'} of an E¹ cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Summand {
    pub j: i64,
    pub level: u32,
    pub i: i64,
    pub basis: Vec<Monomial>,
    pub gen_levels: Vec<u32>,
}

impl E1Summand {
    pub fn label(&self, weight: i64) -> String {
        if self.level == 1 {
            format!("h^{{{},{}}}", self.i, weight)
        } else {
            format!("H_{}^{{{},{}}}", self.level, self.i, weight)
        }
    }
}

/// An E¹ cell with explicit bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Cell {
    pub p: i64,
    pub q: i64,
    pub summands: Vec<E1Summand>,
}

impl E1Cell {
    pub fn levels(&self) -> Vec<u32> {
        self.summands.iter().flat_map(|s| s.gen_levels.iter().copied()).collect()
    }

    pub fn len(&self) -> usize {
        self.summands.iter().map(|s| s.basis.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn group(&self) -> Abelian2Group {
        Abelian2Group::from_exponents(self.levels())
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.summands
            .iter()
            .map(|s| {
                let o = acc;
                acc += s.basis.len();
                o
            })
            .collect()
    }
}

/// A labelled block of a d¹ matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub src_j: i64,
    pub tgt_j: i64,
    pub d: usize,
    pub op: String,
    pub rows: std::ops::Range<usize>,
    pub cols: std::ops::Range<usize>,
}

/// d¹_{p,q,w} as a mixed-level integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialMatrix {
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub matrix: IntMatrix2n,
    pub blocks: Vec<Block>,
}

/// How E^∞ is obtained from E².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HigherRule {
    /// No differentials beyond d¹.
    Collapse,
    /// Only dⁿ : E_{p,q,w} → E_{p−1,q+n,w} for p − w ≡ 1 mod 4, each an isomorphism.
    KwRealDn,
}

impl fmt::Display for Sseq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{} over {} in weight {}", self.theory, self.n, self.model, self.weight)
    }
}

impl Sseq {
    pub fn new(model: BaseModel, theory: Theory, n: u32, weight: i64) -> Result<Self, EngineError> {
        if n == 0 {
            return Err(SliceError::BadModulus.into());
        }
        if !model.is_explicit() && n > 1 {
            return Err(EngineError::UnsupportedTier { model: model.to_string(), n });
        }
        Ok(Sseq { model, theory, n, weight })
    }

    fn explicit(&self) -> bool {
        self.model.is_explicit()
    }

    /// Range of i for the summands H^{i,q'} of a cell.
    fn i_range(&self, qp: i64) -> std::ops::RangeInclusive<i64> {
        // h^{2,1} is the only class below the diagonal, over S-integers.
        0..=qp.max(if self.explicit() { qp } else { 2 })
    }

    /// The E¹ cell at (p, q) with explicit bases.
    pub fn e1_cell(&self, p: i64, q: i64) -> Result<E1Cell, EngineError> {
        if !self.explicit() {
            return Err(MotivicError::DimensionOnly { model: self.model.to_string() }.into());
        }
        let qp = q - self.weight;
        let mut summands = Vec::new();
        if qp >= 0 {
            for i in self.i_range(qp) {
                let j = p - q + i;
                let Some(level) = summand_level(self.theory, self.n, q, j) else { continue };
                let b = basis(&self.model, i, qp).monomials().to_vec();
                if b.is_empty() {
                    continue;
                }
                let gen_levels = piece_levels(&self.model, &b, level);
                summands.push(E1Summand { j, level, i, basis: b, gen_levels });
            }
        }
        Ok(E1Cell { p, q, summands })
    }

    /// The E¹ cell as page components; works for number rings too.
    pub fn e1_components(&self, p: i64, q: i64) -> Result<Vec<Component>, EngineError> {
        let qp = q - self.weight;
        if let BaseModel::NumberRing(params) = &self.model {
            let mut out = Vec::new();
            if qp >= 0 {
                for i in self.i_range(qp) {
                    let j = p - q + i;
                    if summand_level(self.theory, self.n, q, j).is_none() {
                        continue;
                    }
                    let d = params.dim(i, qp);
                    if d > 0 {
                        out.push(Component {
                            label: format!("h^{{{i},{qp}}}"),
                            dim: DimRange::exact(d),
                            group: Some(Abelian2Group::elementary(d as usize)),
                        });
                    }
                }
            }
            return Ok(out);
        }
        let cell = self.e1_cell(p, q)?;
        Ok(cell
            .summands
            .iter()
            .map(|s| {
                let g = Abelian2Group::from_exponents(s.gen_levels.clone());
                Component { label: s.label(qp), dim: DimRange::exact(g.log_order()), group: Some(g) }
            })
            .collect())
    }

    /// d¹ : E¹_{p,q,w} → E¹_{p−1,q+1,w}.
    pub fn d1_matrix(&self, p: i64, q: i64) -> Result<DifferentialMatrix, EngineError> {
        let src = self.e1_cell(p, q)?;
        let tgt = self.e1_cell(p - 1, q + 1)?;
        self.d1_between(&src, &tgt)
    }

    fn d1_between(&self, src: &E1Cell, tgt: &E1Cell) -> Result<DifferentialMatrix, EngineError> {
        let (rows, cols) = (tgt.len(), src.len());
        let (row_off, col_off) = (tgt.offsets(), src.offsets());
        let mut entries = vec![0u64; rows * cols];
        let mut blocks = Vec::new();
        for (si, s) in src.summands.iter().enumerate() {
            let spec = d1_components(self.theory, self.n, src.q, s.j)?;
            for (d, tsum, op) in spec.components() {
                let Some(ti) = tgt.summands.iter().position(|t| t.j == tsum.j) else { continue };
                let t = &tgt.summands[ti];
                debug_assert_eq!(t.level, tsum.level);
                debug_assert_eq!(t.i, s.i + d as i64);
                let m = op_matrix(&self.model, op, s.level, &s.basis, t.level, &t.basis)?;
                let (r0, c0) = (row_off[ti], col_off[si]);
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        entries[(r0 + r) * cols + c0 + c] = m.get(r, c);
                    }
                }
                blocks.push(Block {
                    src_j: s.j,
                    tgt_j: t.j,
                    d,
                    op: op.to_string(),
                    rows: r0..r0 + t.basis.len(),
                    cols: c0..c0 + s.basis.len(),
                });
            }
        }
        let matrix = IntMatrix2n::with_levels(tgt.levels(), src.levels(), entries)?;
        Ok(DifferentialMatrix { source: (src.p, src.q), target: (tgt.p, tgt.q), matrix, blocks })
    }

    /// Whether d¹_{p−1,q+1} ∘ d¹_{p,q} = 0.
    pub fn d1_squared_vanishes(&self, p: i64, q: i64) -> Result<bool, EngineError> {
        let a = self.d1_matrix(p, q)?;
        let b = self.d1_matrix(p - 1, q + 1)?;
        Ok(composite_is_zero(&a.matrix, &b.matrix)?)
    }

    /// E²_{p,q,w} as a group (explicit models).
    pub fn e2_group(&self, p: i64, q: i64) -> Result<Abelian2Group, EngineError> {
        let mid = self.e1_cell(p, q)?;
        if mid.is_empty() {
            return Ok(Abelian2Group::trivial());
        }
        let d_in = self.d1_between(&self.e1_cell(p + 1, q - 1)?, &mid)?;
        let d_out = self.d1_between(&mid, &self.e1_cell(p - 1, q + 1)?)?;
        Ok(homology_group_2n(&d_in.matrix, &d_out.matrix)?)
    }

    /// Symbolic description of E² for mod-2 coefficients.
    pub fn e2_label(&self, p: i64, q: i64) -> Option<String> {
        (self.n == 1).then(|| closed_form::e2_formula(&self.model, self.theory, p, q, self.weight).to_string())
    }

    /// E²_{p,q,w} as page components.
    pub fn e2_components(&self, p: i64, q: i64) -> Result<Vec<Component>, EngineError> {
        if !self.explicit() {
            let f = closed_form::e2_formula(&self.model, self.theory, p, q, self.weight);
            return Ok(f
                .0
                .iter()
                .map(|t| {
                    let dim = closed_form::term_dim(&self.model, t);
                    let group = dim.value().map(|d| Abelian2Group::elementary(d as usize));
                    Component { label: t.to_string(), dim, group }
                })
                .collect());
        }
        let g = self.e2_group(p, q)?;
        Ok(single(g, || self.e2_label(p, q).unwrap_or_else(|| "E2".into())))
    }

    /// Which rule produces E^∞ from E².
    pub fn higher_rule(&self) -> Result<HigherRule, EngineError> {
        use BaseModel::*;
        let none = || EngineError::NoCollapseRule { theory: self.theory, n: self.n, model: self.model.to_string() };
        if self.n == 1 {
            return Ok(HigherRule::Collapse);
        }
        match (self.theory, self.model) {
            // d^r raises 2q − p by 2r + 1 ≥ 5, and E² sits in 0 ≤ 2q − p ≤ 2.
            (Theory::KGL, m) if m.is_explicit() => Ok(HigherRule::Collapse),
            (Theory::KW, RealClosed) => Ok(HigherRule::KwRealDn),
            // E² vanishes for q' ≥ 2, out of reach of every d^r with r ≥ 2.
            (Theory::KW, QuadClosed | FiniteField(_)) => Ok(HigherRule::Collapse),
            // E² already has the order of the mod-2^n Witt groups.
            (Theory::KW, LocalQl(_)) => Ok(HigherRule::Collapse),
            _ => Err(none()),
        }
    }

    /// E^∞_{p,q,w} as page components.
    pub fn einf_components(&self, p: i64, q: i64) -> Result<Vec<Component>, EngineError> {
        match self.higher_rule()? {
            HigherRule::Collapse => {
                let c = self.e2_components(p, q)?;
                if self.theory == Theory::KGL && self.n > 1 && !c.is_empty() && !(0..=2).contains(&(2 * q - p)) {
                    return Err(EngineError::RuleViolated(self.to_string(), format!("E² nonzero at ({p},{q})")));
                }
                Ok(c)
            }
            HigherRule::KwRealDn => self.kw_real_einf(p, q),
        }
    }

    fn kw_real_einf(&self, p: i64, q: i64) -> Result<Vec<Component>, EngineError> {
        let n = self.n as i64;
        let here = self.e2_group(p, q)?;
        let partner = match (p - self.weight).rem_euclid(4) {
            1 => Some(self.e2_group(p - 1, q + n)?),
            0 => Some(self.e2_group(p + 1, q - n)?),
            _ => None,
        };
        let hit = match partner {
            Some(other) if !here.is_trivial() && !other.is_trivial() => {
                if here != Abelian2Group::elementary(1) || other != here {
                    return Err(EngineError::RuleViolated(self.to_string(), format!("d{n} at ({p},{q}) is not Z/2 → Z/2")));
                }
                true
            }
            _ => false,
        };
        if hit {
            return Ok(vec![]);
        }
        Ok(single(here, || format!("h^{{{0},{0}}}", q - self.weight)))
    }

    pub fn cell_components(&self, r: PageIndex, p: i64, q: i64) -> Result<Vec<Component>, EngineError> {
        match r {
            PageIndex::Finite(1) => self.e1_components(p, q),
            PageIndex::Finite(2) => self.e2_components(p, q),
            PageIndex::Finite(r) => match self.higher_rule()? {
                HigherRule::Collapse => self.e2_components(p, q),
                HigherRule::KwRealDn if r <= self.n => self.e2_components(p, q),
                HigherRule::KwRealDn => self.kw_real_einf(p, q),
            },
            PageIndex::Infinity => self.einf_components(p, q),
        }
    }

    /// The page E^r on a window, computed cell-parallel.
    pub fn page(&self, r: PageIndex, window: Window) -> Result<Page, EngineError> {
        window.validate()?;
        if r == PageIndex::Finite(0) {
            return Err(EngineError::InvalidWindow("pages start at r = 1".into()));
        }
        let coords: Vec<(i64, i64)> = window.coords().collect();
        let cells: Result<Vec<Cell>, EngineError> = coords
            .par_iter()
            .map(|&(p, q)| {
                Ok(Cell { p, q, components: self.cell_components(r, p, q)?, boundary: window.on_boundary(p, q) })
            })
            .collect();
        Ok(Page { sseq: *self, page: r, window, cells: cells? })
    }

    pub fn e1_page(&self, window: Window) -> Result<Page, EngineError> {
        self.page(PageIndex::Finite(1), window)
    }

    pub fn e2_page(&self, window: Window) -> Result<Page, EngineError> {
        self.page(PageIndex::Finite(2), window)
    }

    pub fn einf_page(&self, window: Window) -> Result<Page, EngineError> {
        self.page(PageIndex::Infinity, window)
    }
}

fn single(g: Abelian2Group, label: impl FnOnce() -> String) -> Vec<Component> {
    if g.is_trivial() {
        return vec![];
    }
    vec![Component { label: label(), dim: DimRange::exact(g.log_order()), group: Some(g) }]
}

/// dim ĥ^{p,q}: the quotient of h^{p,q} ⊕ h^{p−4,q} ⊕ … by the image of
/// B = (τ, Sq³Sq¹) on h^{p−4,q−1} ⊕ h^{p−8,q−1} ⊕ …, explicit models only.
pub fn hat_dim(model: &BaseModel, p: i64, q: i64) -> Result<u32, EngineError> {
    let ks: Vec<i64> = (0..).take_while(|k| p - 4 * k >= 0).collect();
    let tgt: Vec<Vec<Monomial>> = ks.iter().map(|k| basis(model, p - 4 * k, q).monomials().to_vec()).collect();
    let src: Vec<Vec<Monomial>> = ks.iter().skip(1).map(|k| basis(model, p - 4 * k, q - 1).monomials().to_vec()).collect();
    let rows: usize = tgt.iter().map(Vec::len).sum();
    let cols: usize = src.iter().map(Vec::len).sum();
    let row_off: Vec<usize> = tgt.iter().scan(0, |a, v| { let o = *a; *a += v.len(); Some(o) }).collect();
    let mut m = crate::f2linalg::BitMatrix::zeros(rows, cols);
    let mut c0 = 0;
    let tau = Op::tau();
    let sq = Op::from(crate::motivic::Prim::Sq3Sq1);
    for (idx, s) in src.iter().enumerate() {
        let k = idx + 1;
        for (blk, op) in [(k, &tau), (k - 1, &sq)] {
            let t = op_matrix(model, op, 1, s, 1, &tgt[blk])?;
            for r in 0..t.rows() {
                for c in 0..t.cols() {
                    if t.get(r, c) & 1 == 1 {
                        m.set(row_off[blk] + r, c0 + c, true);
                    }
                }
            }
        }
        c0 += s.len();
    }
    Ok((rows - m.rank()) as u32)
}
