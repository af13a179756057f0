//! Transcriptions of the number-ring group tables.
//!
//! Each slot of a row is a direct sum of symbols whose bidegrees are affine
//! in k; instantiating a row at a given k and parameter tuple resolves every
//! mod-2 symbol to a dimension.

use std::fmt;

use crate::engine::closed_form::{term_dim, Term};
use crate::motivic::{BaseModel, DimRange, NumberRingParams};

/// A symbol in a table slot. Weights are written `4k + off`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sym {
    /// h^{a,4k+off}.
    H(i64, i64),
    /// ker(ρ^i)_{a,4k+off}.
    Ker(u32, i64, i64),
    /// h^{a,4k+off}/ρ^i.
    Coker(u32, i64, i64),
    /// H^{a,4k+off} with 2-adic coefficients.
    Int(i64, i64),
    /// Z₂^{r₁}.
    Free,
    /// A subquotient of 2-adic or mod-2 cohomology that the mod-2 data does
    /// not determine; `#` in the template stands for the weight.
    Opaque(&'static str, i64),
}

fn weight_str(off: i64) -> String {
    match off {
        0 => "4k".into(),
        o if o > 0 => format!("4k+{o}"),
        o => format!("4k{o}"),
    }
}

impl Sym {
    pub fn symbolic(&self) -> String {
        self.render(&weight_str)
    }

    pub fn at(&self, k: i64) -> String {
        self.render(&|off| (4 * k + off).to_string())
    }

    fn render(&self, b: &dyn Fn(i64) -> String) -> String {
        match *self {
            Sym::H(a, o) => format!("h^{{{a},{}}}", b(o)),
            Sym::Ker(i, a, o) => format!("ker ρ{}_{{{a},{}}}", sup(i), b(o)),
            Sym::Coker(i, a, o) => format!("h^{{{a},{}}}/ρ{}", b(o), sup(i)),
            Sym::Int(a, o) => format!("H^{{{a},{}}}", b(o)),
            Sym::Free => "Z₂^{r₁}".into(),
            Sym::Opaque(t, o) => t.replace('#', &b(o)),
        }
    }

    /// The mod-2 term this symbol denotes at k, if it is one.
    pub fn term(&self, k: i64) -> Option<Term> {
        let w = |o: i64| 4 * k + o;
        match *self {
            Sym::H(a, o) => Some(Term::H(a, w(o))),
            Sym::Ker(i, a, o) => Some(Term::Ker(i, a, w(o))),
            Sym::Coker(i, a, o) => Some(Term::Coker(i, a, w(o))),
            _ => None,
        }
    }

    /// 2-rank of the symbol at k, when the parameters determine it.
    pub fn rank(&self, params: &NumberRingParams, k: i64) -> Option<DimRange> {
        if let Some(t) = self.term(k) {
            return Some(term_dim(&BaseModel::NumberRing(*params), &t));
        }
        let NumberRingParams { r1, r2, .. } = *params;
        match *self {
            Sym::Free => Some(DimRange::exact(r1)),
            Sym::Int(0, o) => Some(DimRange::exact(u32::from(4 * k + o == 0))),
            // Z^{d_q} ⊕ Z/w_q with w_q even.
            Sym::Int(1, o) => {
                let q = 4 * k + o;
                let d = if q >= 2 && q % 2 == 0 { r2 } else if q > 1 { r1 + r2 } else { 0 };
                Some(DimRange::exact(d + u32::from(q != 0)))
            }
            Sym::Int(2, o) => Some(DimRange::exact(h2_rank(params, 4 * k + o))),
            _ => None,
        }
    }

    /// log₂ of the order of the symbol at k; `None` when infinite or not
    /// determined by the mod-2 data.
    pub fn log_order(&self, params: &NumberRingParams, k: i64) -> Option<DimRange> {
        match self {
            Sym::Free if params.r1 > 0 => None,
            Sym::Free => Some(DimRange::exact(0)),
            Sym::Int(0, o) if 4 * k + o != 0 => Some(DimRange::exact(0)),
            Sym::Int(..) | Sym::Opaque(..) => None,
            _ => self.rank(params, k),
        }
    }

    pub fn free_rank(&self, params: &NumberRingParams, k: i64) -> u32 {
        match *self {
            Sym::Free => params.r1,
            Sym::Int(0, o) => u32::from(4 * k + o == 0),
            Sym::Int(1, o) => {
                let q = 4 * k + o;
                match q {
                    q if q >= 2 && q % 2 == 0 => params.r2,
                    q if q > 1 => params.r1 + params.r2,
                    _ => 0,
                }
            }
            _ => 0,
        }
    }
}

/// 2-rank of H^{2,q}(O_{F,S}; Z₂)/2.
pub fn h2_rank(params: &NumberRingParams, q: i64) -> u32 {
    let base = params.s + params.t - 1;
    if q % 2 == 0 {
        base + params.r1
    } else {
        base
    }
}

fn sup(n: u32) -> &'static str {
    match n {
        1 => "",
        2 => "²",
        3 => "³",
        4 => "⁴",
        5 => "⁵",
        _ => "ⁿ",
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbolic())
    }
}

/// One row: the filtration length and the slots f₀/f₁, f₁/f₂, ….
pub struct Row {
    pub length: usize,
    pub slots: Vec<Vec<Sym>>,
}

fn row(slots: &[&[Sym]]) -> Row {
    Row { length: slots.len(), slots: slots.iter().map(|s| s.to_vec()).collect() }
}

use Sym::{Coker as C, Free as Z, Int as I, Ker as K, Opaque as O, H};

/// The mod-2 hermitian K-groups KQ_{8k+r,0}(O_{F,S}; Z/2).
pub fn kq_mod2(r: u8) -> Row {
    match r % 8 {
        0 => row(&[&[H(0, 0)], &[K(1, 2, 1), H(1, 1)], &[C(1, 2, 2)]]),
        1 => row(&[&[K(1, 1, 1), H(0, 1)], &[K(1, 2, 2), H(1, 2)]]),
        2 => row(&[&[H(0, 1)], &[H(1, 2), H(0, 2)], &[H(2, 3)]]),
        3 => row(&[&[H(0, 2)], &[H(1, 3)]]),
        4 => row(&[&[H(0, 3)], &[H(4, 4)]]),
        5 => row(&[]),
        6 => row(&[&[K(1, 2, 4)], &[C(3, 4, 5)]]),
        _ => row(&[&[K(2, 1, 4)], &[K(1, 2, 5)]]),
    }
}

/// The mod-2 algebraic K-groups K_{8k+r}(O_{F,S}; Z/2).
pub fn k_mod2(r: u8) -> Row {
    match r % 8 {
        0 => row(&[&[H(0, 0)], &[K(1, 2, 1)]]),
        1 => row(&[&[H(1, 1)]]),
        2 => row(&[&[H(0, 1)], &[H(2, 2)]]),
        3 => row(&[&[H(1, 2)], &[C(3, 3, 3)]]),
        4 => row(&[&[H(2, 3)], &[C(3, 4, 4)]]),
        5 => row(&[&[K(2, 1, 3)], &[C(3, 3, 4)]]),
        6 => row(&[&[K(1, 2, 4)], &[C(3, 4, 5)]]),
        _ => row(&[&[K(2, 1, 4)]]),
    }
}

const KER_PR: [&str; 4] = ["ker(pr)_{0,#}", "ker(pr)_{1,#}", "ker(pr)_{2,#}", "ker(pr)_{3,#}"];
const TAU_PR: [&str; 3] = ["h^{0,#}/τpr", "h^{1,#}/τpr", "h^{2,#}/τpr"];
const KER_TPR_SQ2: &str = "ker(τpr, Sq²)_{2,#}";

/// The 2-adic hermitian K-groups KQ_{8k+r,w}(O_{F,S}; Z₂) for w ≡ 0..3.
pub fn kq_2adic(w: u8, r: u8) -> Row {
    match (w % 4, r % 8) {
        (0, 0) => row(&[&[I(0, 0)], &[H(1, 1)], &[H(2, 2)], &[Z]]),
        (0, 1) => row(&[&[H(0, 1)], &[O(KER_PR[3], 2), H(1, 2)]]),
        (0, 2) => row(&[&[O(KER_TPR_SQ2, 2)], &[O(TAU_PR[1], 3)]]),
        (0, 3) => row(&[&[O(KER_PR[1], 2)], &[H(0, 3)]]),
        (0, 4) => row(&[&[Z]]),
        (0, 5) => row(&[]),
        (0, 6) => row(&[&[O("ker(Sq²pr)_{2,#}", 4)]]),
        (0, _) => row(&[&[O("ker(Sq²∂)_{1,#}", 4)], &[K(2, 2, 5)]]),
        (1, 0) => row(&[&[K(2, 1, 4)], &[K(2, 2, 5)]]),
        (1, 1) => row(&[&[H(0, 0)], &[O(KER_PR[3], 1), H(1, 1)], &[O(TAU_PR[2], 2)], &[Z]]),
        (1, 2) => row(&[&[O(KER_PR[2], 1), H(0, 1)], &[O(TAU_PR[1], 2)]]),
        (1, 3) => row(&[&[O(KER_PR[1], 1)], &[H(0, 2)]]),
        (1, 4) => row(&[]),
        (1, 5) => row(&[&[Z]]),
        (1, 6) => row(&[&[O(KER_PR[2], 3)]]),
        (1, _) => row(&[&[O("ker(Sq²pr)_{1,#}", 3)], &[K(1, 2, 4)]]),
        (2, 0) => row(&[&[K(2, 1, 3)], &[C(2, 2, 4)]]),
        (2, 1) => row(&[&[K(2, 0, 3)], &[K(2, 1, 4)]]),
        (2, 2) => row(&[&[O("ker(τpr)_{2,#}", 0), H(0, 0)], &[O(TAU_PR[1], 1)], &[Z]]),
        (2, 3) => row(&[&[O(KER_PR[1], 0)], &[O(TAU_PR[0], 1)]]),
        (2, 4) => row(&[&[O(KER_PR[0], 0)]]),
        (2, 5) => row(&[]),
        (2, 6) => row(&[&[I(2, 2)], &[Z]]),
        (2, _) => row(&[&[I(1, 2)], &[H(2, 3)]]),
        (_, 0) => row(&[&[H(1, 1)], &[C(2, 2, 3)]]),
        (_, 1) => row(&[&[K(2, 0, 2)], &[O(KER_PR[3], 3)], &[O(TAU_PR[2], 4)]]),
        (_, 2) => row(&[&[O(KER_TPR_SQ2, 3)], &[O(TAU_PR[1], 4)]]),
        (_, 3) => row(&[&[O(KER_PR[1], -1)], &[H(0, 0)], &[Z]]),
        (_, 4) | (_, 5) => row(&[]),
        (_, 6) => row(&[&[O("ker(Sq²∂)_{2,#}", 1)]]),
        (_, _) => row(&[&[I(1, 1)], &[H(2, 2)], &[Z]]),
    }
}

/// Lengths l of the mod-2 tables, as printed.
pub const KQ_MOD2_LENGTHS: [usize; 8] = [3, 2, 3, 2, 2, 0, 2, 2];
pub const K_MOD2_LENGTHS: [usize; 8] = [2, 1, 2, 2, 2, 2, 2, 1];
pub const KQ_2ADIC_LENGTHS: [[usize; 8]; 4] =
    [[4, 2, 2, 2, 1, 0, 1, 2], [2, 4, 2, 2, 0, 1, 1, 2], [2, 2, 3, 2, 1, 0, 2, 2], [2, 3, 2, 3, 0, 0, 1, 3]];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_match_printed_lengths() {
        for r in 0..8u8 {
            assert_eq!(kq_mod2(r).length, KQ_MOD2_LENGTHS[r as usize]);
            assert_eq!(k_mod2(r).length, K_MOD2_LENGTHS[r as usize]);
            for w in 0..4u8 {
                assert_eq!(kq_2adic(w, r).length, KQ_2ADIC_LENGTHS[w as usize][r as usize], "w={w} r={r}");
            }
        }
    }

    #[test]
    fn symbols_render() {
        assert_eq!(K(2, 1, 4).symbolic(), "ker ρ²_{1,4k+4}");
        assert_eq!(K(2, 1, 4).at(1), "ker ρ²_{1,8}");
        assert_eq!(O(KER_PR[1], -1).symbolic(), "ker(pr)_{1,4k-1}");
        assert_eq!(C(3, 4, 5).at(0), "h^{4,5}/ρ³");
    }
}
