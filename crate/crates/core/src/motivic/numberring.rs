//! Dimension data for h^{*,*}(O_{F,S}).

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use super::model::NumberRingParams;
use super::MotivicError;

/// A dimension known to lie in `lo..=hi`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimRange {
    pub lo: u32,
    pub hi: u32,
}

impl DimRange {
    pub fn exact(d: u32) -> Self {
        DimRange { lo: d, hi: d }
    }

    pub fn new(lo: u32, hi: u32) -> Self {
        assert!(lo <= hi, "empty range {lo}..={hi}");
        DimRange { lo, hi }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn value(&self) -> Option<u32> {
        self.is_exact().then_some(self.lo)
    }

    /// `d − self`, for the complement of a subspace of dimension `self`.
    pub fn complement_in(&self, d: u32) -> DimRange {
        DimRange { lo: d.saturating_sub(self.hi), hi: d.saturating_sub(self.lo) }
    }

    pub fn contains(&self, d: u32) -> bool {
        self.lo <= d && d <= self.hi
    }
}

impl Add for DimRange {
    type Output = DimRange;
    fn add(self, o: DimRange) -> DimRange {
        DimRange { lo: self.lo + o.lo, hi: self.hi + o.hi }
    }
}

impl Sub for DimRange {
    type Output = DimRange;
    /// Dimension of a quotient A/B with B ⊆ A.
    fn sub(self, o: DimRange) -> DimRange {
        DimRange { lo: self.lo.saturating_sub(o.hi), hi: self.hi.saturating_sub(o.lo) }
    }
}

impl std::iter::Sum for DimRange {
    fn sum<I: Iterator<Item = DimRange>>(iter: I) -> DimRange {
        iter.fold(DimRange::exact(0), |a, b| a + b)
    }
}

impl fmt::Display for DimRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

impl NumberRingParams {
    /// dim h^{p,q}(O_{F,S}).
    pub fn dim(&self, p: i64, q: i64) -> u32 {
        let NumberRingParams { r1, r2, s, t, .. } = *self;
        match (p, q) {
            (0, q) if q >= 0 => 1,
            (1, q) if q >= 1 => r1 + r2 + s + t,
            (2, 1) => t,
            (2, q) if q >= 2 => r1 + s + t - 1,
            (p, q) if p >= 3 && p <= q => r1,
            _ => 0,
        }
    }

    /// Rank of ρ^i : h^{p,q} → h^{p+i,q+i}.
    pub fn rho_rank(&self, i: u32, p: i64, q: i64) -> DimRange {
        if i == 0 {
            return DimRange::exact(self.dim(p, q));
        }
        let ii = i as i64;
        let (src, tgt) = (self.dim(p, q), self.dim(p + ii, q + ii));
        if src == 0 || tgt == 0 {
            return DimRange::exact(0);
        }
        let NumberRingParams { r1, s, t, tplus, .. } = *self;
        match p {
            0 if r1 > 0 => DimRange::exact(1),
            0 => DimRange::new(0, 1),
            1 if i >= 2 => DimRange::exact(r1 + t - tplus),
            1 => DimRange::new(r1 + t - tplus, src.min(tgt).min(r1 + s + t - 1)),
            2 if q == 1 => DimRange::exact(0),
            _ => DimRange::exact(r1),
        }
    }

    /// 2-rank of ker(ρ^i) on h^{p,q}.
    pub fn rho_kernel(&self, i: u32, p: i64, q: i64) -> DimRange {
        self.rho_rank(i, p, q).complement_in(self.dim(p, q))
    }

    /// 2-rank of h^{p,q}/ρ^i.
    pub fn rho_cokernel(&self, i: u32, p: i64, q: i64) -> DimRange {
        let ii = i as i64;
        self.rho_rank(i, p - ii, q - ii).complement_in(self.dim(p, q))
    }

    pub fn rho_kernel_dim(&self, i: u32, p: i64, q: i64) -> Result<u32, MotivicError> {
        let r = self.rho_kernel(i, p, q);
        r.value().ok_or(MotivicError::UnknownKernel { i, p, q, lo: r.lo, hi: r.hi })
    }

    pub fn rho_cokernel_dim(&self, i: u32, p: i64, q: i64) -> Result<u32, MotivicError> {
        let r = self.rho_cokernel(i, p, q);
        r.value().ok_or(MotivicError::UnknownKernel { i, p: p - i as i64, q: q - i as i64, lo: r.lo, hi: r.hi })
    }

    /// dim h^{q,q}/τ h^{q,q−1}. Only h^{2,1} lies below the diagonal, and
    /// τ is injective on it.
    pub fn milnor_mod_tau(&self, q: i64) -> u32 {
        match q {
            2 => self.dim(2, 2) - self.t,
            q => self.dim(q, q),
        }
    }
}

/// Dimension-only description of h^{p,q}(O_{F,S}) with the ρ-subspaces
/// used by the closed-form tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberRingPiece {
    pub dim: u32,
    /// 2-ranks of ker ρ^i for i = 1..=5.
    pub ker_rho: Vec<DimRange>,
    /// 2-ranks of h^{p,q}/ρ^i for i = 1..=5.
    pub coker_rho: Vec<DimRange>,
}

impl NumberRingPiece {
    pub fn new(params: &NumberRingParams, p: i64, q: i64) -> Self {
        NumberRingPiece {
            dim: params.dim(p, q),
            ker_rho: (1..=5).map(|i| params.rho_kernel(i, p, q)).collect(),
            coker_rho: (1..=5).map(|i| params.rho_cokernel(i, p, q)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nr(r1: u32, r2: u32, s: u32, t: u32, tp: u32) -> NumberRingParams {
        NumberRingParams::new(r1, r2, s, t, tp).unwrap()
    }

    #[test]
    fn remark_formulas() {
        let z = nr(1, 0, 1, 0, 0);
        assert_eq!(z.dim(1, 1), 2);
        assert_eq!(z.rho_kernel_dim(2, 1, 3), Ok(1));
        assert_eq!(z.rho_kernel_dim(1, 2, 4), Ok(0));
        let f = nr(2, 1, 3, 1, 2);
        assert_eq!(f.rho_cokernel_dim(3, 4, 7), Ok(1));
        assert_eq!(f.rho_cokernel_dim(3, 3, 7), Ok(1));
        assert_eq!(f.rho_kernel_dim(2, 1, 5), Ok(1 + 3 + 2));
        assert_eq!(f.rho_kernel_dim(1, 2, 1), Ok(1));
    }

    #[test]
    fn unknown_kernels_are_reported() {
        let f = nr(2, 1, 3, 1, 2);
        assert!(matches!(f.rho_kernel_dim(1, 1, 2), Err(MotivicError::UnknownKernel { .. })));
        let r = f.rho_kernel(1, 1, 2);
        // Inside the bound stated for ker ρ on h^1: [0, r₂+s+t⁺].
        assert!(r.hi <= 1 + 3 + 2);
    }

    #[test]
    fn support() {
        let f = nr(2, 1, 3, 1, 2);
        assert_eq!(f.dim(2, 1), 1);
        assert_eq!(f.dim(3, 2), 0);
        assert_eq!(f.dim(5, 5), 2);
        assert_eq!(f.dim(-1, 3), 0);
        for p in 3..10 {
            for q in p..12 {
                assert_eq!(f.dim(p, q), 2);
            }
        }
    }
}
