//! Orders of the 2-adic groups KQ_{8k+r,w}(O_F[1/2]; Z₂), r ∈ {2,3,6,7},
//! w ∈ {0,2}, for totally real F, in terms of the orders of the 2-adic
//! motivic cohomology groups H^{1,q} and H^{2,q} at even q.
//!
//! The tabulated quotients that mod-2 data leaves open are resolved by the
//! exact sequences relating them to H^{1,q}, H^{2,q} and h^{*,*}.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::tables::h2_rank;
use super::AssemblerError;
use crate::engine::closed_form::{term_dim, Term};
use crate::motivic::{BaseModel, NumberRingParams};

/// v₂ of #H^{1,q}(O; Z₂) and #H^{2,q}(O; Z₂) at even weights q ≥ 2, where
/// both groups are finite over a totally real field.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyOrders {
    pub h1: BTreeMap<i64, u32>,
    pub h2: BTreeMap<i64, u32>,
}

impl CohomologyOrders {
    fn get(map: &BTreeMap<i64, u32>, i: u32, q: i64) -> Result<i64, AssemblerError> {
        map.get(&q).map(|&v| v as i64).ok_or_else(|| AssemblerError::Undetermined(format!("H^{{{i},{q}}}")))
    }
}

/// Torsion order and Z₂-rank of a 2-adic group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoAdicOrder {
    /// v₂ of the order of the torsion subgroup.
    pub torsion: u32,
    pub free_rank: u32,
}

struct Ctx<'a> {
    params: &'a NumberRingParams,
    coh: &'a CohomologyOrders,
}

impl Ctx<'_> {
    fn h(&self, a: i64, b: i64) -> i64 {
        self.params.dim(a, b) as i64
    }

    fn h1(&self, q: i64) -> Result<i64, AssemblerError> {
        CohomologyOrders::get(&self.coh.h1, 1, q)
    }

    fn h2(&self, q: i64) -> Result<i64, AssemblerError> {
        let v = CohomologyOrders::get(&self.coh.h2, 2, q)?;
        let rk = h2_rank(self.params, q) as i64;
        if v < rk {
            return Err(AssemblerError::Inconsistent(format!("#H^{{2,{q}}} = 2^{v} is below its 2-rank {rk}")));
        }
        Ok(v)
    }

    fn rk2(&self, q: i64) -> i64 {
        h2_rank(self.params, q) as i64
    }

    /// v₂ #ker(pr: H^{1,q} → h^{1,q}) = v₂ #2H^{1,q}; H^{1,q}/2 is the
    /// kernel of the Bockstein h^{1,q} → H^{2,q}.
    fn ker_pr1(&self, q: i64) -> Result<i64, AssemblerError> {
        let rank = self.h(1, q) - self.rk2(q);
        let v = self.h1(q)?;
        if v < rank {
            return Err(AssemblerError::Inconsistent(format!("#H^{{1,{q}}} = 2^{v} is below its 2-rank {rank}")));
        }
        Ok(v - rank)
    }
}

/// The order of KQ_{8k+r,w}(O; Z₂) for the degrees used in the zeta-value
/// formulas.
pub fn kq_order(
    params: &NumberRingParams,
    coh: &CohomologyOrders,
    k: i64,
    r: u8,
    w: i64,
) -> Result<TwoAdicOrder, AssemblerError> {
    if params.r2 != 0 {
        return Err(AssemblerError::OutOfRange("2-adic orders need a totally real field".into()));
    }
    let c = Ctx { params, coh };
    let model = BaseModel::NumberRing(*params);
    let (torsion, free) = match (w, r) {
        (0, 2) => {
            let q = 4 * k + 2;
            // ker(τpr, Sq²)_{2,q} has order 2#H^{2,q}/#h^{2,q+1}; h^{1,q+1}/τpr ≅ ₂H^{2,q}.
            (1 + c.h2(q)? - c.h(2, q + 1) + c.rk2(q), 0)
        }
        (0, 3) => {
            let q = 4 * k + 2;
            (c.ker_pr1(q)? + c.h(0, q + 1), 0)
        }
        (0, 6) => {
            let q = 4 * k + 4;
            (c.h2(q)? - c.h(4, q + 1), 0)
        }
        (0, 7) => {
            let q = 4 * k + 4;
            let ker = term_dim(&model, &Term::Ker(1, 2, q + 1)).value().expect("ker ρ on h^{2,q} is determined") as i64;
            (c.h1(q)? + ker, 0)
        }
        (2, 2) => {
            let q = 4 * k;
            let kernel = c.h2(q)? - c.h(2, q + 1) - c.h(1, q) + c.h(0, q);
            (kernel + c.rk2(q) - c.h(5, q + 1), params.r1)
        }
        (2, 3) => {
            let q = 4 * k;
            (c.h(0, q + 1) + c.ker_pr1(q)?, 0)
        }
        (2, 6) => {
            let q = 4 * k + 2;
            (c.h2(q)? - c.h(3, q + 1), params.r1)
        }
        (2, 7) => {
            let q = 4 * k + 2;
            (c.h1(q)? + c.h(2, q + 1), 0)
        }
        _ => return Err(AssemblerError::OutOfRange(format!("KQ_{{8k+{r},{w}}} is not resolved"))),
    };
    if torsion < 0 {
        return Err(AssemblerError::Inconsistent(format!("KQ_{{{},{w}}} would have order 2^{torsion}", 8 * k + r as i64)));
    }
    Ok(TwoAdicOrder { torsion: torsion as u32, free_rank: free })
}

/// v₂ of #(KQ_{8k+2,2})_tor / #KQ_{8k+3,2} with q = 4k, from the exact
/// sequences directly; defined even where the individual groups are not
/// pinned down by the tabulated quotients.
pub fn kq_ratio_23_w2(params: &NumberRingParams, coh: &CohomologyOrders, k: i64) -> Result<i64, AssemblerError> {
    if params.r2 != 0 {
        return Err(AssemblerError::OutOfRange("2-adic orders need a totally real field".into()));
    }
    let c = Ctx { params, coh };
    let q = 4 * k;
    Ok(c.h2(q)? - c.h(2, q + 1) - c.h(1, q) + c.h(1, q + 1) - c.h1(q)? - c.h(5, q + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_with_two_inverted() {
        let z = NumberRingParams::z_half();
        // H^{1,2} = Z/8 and H^{2,2} = Z/2.
        let coh = CohomologyOrders { h1: [(2, 3)].into(), h2: [(2, 1)].into() };
        assert_eq!(kq_order(&z, &coh, 0, 2, 0).unwrap().torsion, 2);
        assert_eq!(kq_order(&z, &coh, 0, 3, 0).unwrap().torsion, 3);
        let bad = CohomologyOrders { h1: [(2, 3)].into(), h2: [(2, 0)].into() };
        assert!(matches!(kq_order(&z, &bad, 0, 2, 0), Err(AssemblerError::Inconsistent(_))));
        assert!(matches!(kq_order(&z, &coh, 0, 6, 0), Err(AssemblerError::Undetermined(_))));
    }
}
