//! Closed-form descriptions of E² for KGL/2, KW/2 and KQ/2 in terms of
//! ρ-kernels and ρ-cokernels of h^{*,*}.
//!
//! For explicit fields the dimensions are computed from monomial bases;
//! for rings of S-integers they come from the rank data in
//! [`crate::motivic::numberring`] and may only be known up to a range.

use std::fmt;

use crate::f2linalg::BitMatrix;
use crate::motivic::{basis, multiply, BaseModel, DimRange, Monomial};
use crate::slices::Theory;

/// One summand of a closed-form E² term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Term {
    /// h^{a,b}.
    H(i64, i64),
    /// ker(ρ^i : h^{a,b} → h^{a+i,b+i}).
    Ker(u32, i64, i64),
    /// h^{a,b}/ρ^i.
    Coker(u32, i64, i64),
    /// h^{2,2}/(ρ, τ) over a ring of S-integers.
    H22ModRhoTau,
    /// ker(ρ_{2,2})/τ h^{2,1} over a ring of S-integers.
    KerRho22ModTau,
}

fn sup(n: u32) -> String {
    const D: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if n == 1 {
        return String::new();
    }
    n.to_string().chars().map(|c| D[c.to_digit(10).unwrap() as usize]).collect()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Term::H(a, b) => write!(f, "h^{{{a},{b}}}"),
            Term::Ker(i, a, b) => write!(f, "ker ρ{}_{{{a},{b}}}", sup(i)),
            Term::Coker(i, a, b) => write!(f, "h^{{{a},{b}}}/ρ{}", sup(i)),
            Term::H22ModRhoTau => f.write_str("h^{2,2}/(ρ,τ)"),
            Term::KerRho22ModTau => f.write_str("ker ρ_{2,2}/τ"),
        }
    }
}

/// A closed-form E² entry: a direct sum of terms (empty means zero).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Formula(pub Vec<Term>);

impl Formula {
    fn zero() -> Self {
        Formula(vec![])
    }

    fn of(terms: &[Term]) -> Self {
        Formula(terms.to_vec())
    }

    pub fn dim(&self, model: &BaseModel) -> DimRange {
        self.0.iter().map(|t| term_dim(model, t)).sum()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// Rank of ρ^i : h^{a,b} → h^{a+i,b+i} on an explicit model.
fn explicit_rho_rank(model: &BaseModel, i: u32, a: i64, b: i64) -> u32 {
    let src = basis(model, a, b).monomials().to_vec();
    let tgt = basis(model, a + i as i64, b + i as i64).monomials().to_vec();
    if src.is_empty() || tgt.is_empty() {
        return 0;
    }
    let rho = Monomial::rho_pow(i);
    let m = BitMatrix::from_fn(tgt.len(), src.len(), |r, c| multiply(model, &src[c], &rho) == Some(tgt[r]));
    m.rank() as u32
}

pub fn h_dim(model: &BaseModel, a: i64, b: i64) -> u32 {
    match model {
        BaseModel::NumberRing(p) => p.dim(a, b),
        _ => basis(model, a, b).dim(),
    }
}

fn rho_rank(model: &BaseModel, i: u32, a: i64, b: i64) -> DimRange {
    match model {
        BaseModel::NumberRing(p) => p.rho_rank(i, a, b),
        _ => DimRange::exact(explicit_rho_rank(model, i, a, b)),
    }
}

pub fn term_dim(model: &BaseModel, t: &Term) -> DimRange {
    match *t {
        Term::H(a, b) => DimRange::exact(h_dim(model, a, b)),
        Term::Ker(i, a, b) => rho_rank(model, i, a, b).complement_in(h_dim(model, a, b)),
        Term::Coker(i, a, b) => {
            let ii = i as i64;
            rho_rank(model, i, a - ii, b - ii).complement_in(h_dim(model, a, b))
        }
        Term::H22ModRhoTau => {
            // im ρ and im τ may overlap in h^{2,2}.
            let d = h_dim(model, 2, 2);
            let t = h_dim(model, 2, 1);
            let r = rho_rank(model, 1, 1, 1);
            let lo = d.saturating_sub((r.hi + t).min(d));
            let hi = d.saturating_sub(r.lo.max(t));
            DimRange::new(lo, hi)
        }
        Term::KerRho22ModTau => {
            // τ h^{2,1} ⊆ ker ρ_{2,2} and τ is injective on h^{2,1}.
            let k = rho_rank(model, 1, 2, 2).complement_in(h_dim(model, 2, 2));
            k - DimRange::exact(h_dim(model, 2, 1))
        }
    }
}

fn m4(x: i64) -> i64 {
    x.rem_euclid(4)
}

/// E²_{p,q,w}(KGL/2).
pub fn kgl2(p: i64, q: i64, w: i64) -> Formula {
    let (a, b) = (2 * q - p, q - w);
    if (p - w, q) == (0, 1) {
        return Formula::of(&[Term::H(2, 1)]);
    }
    match m4(p - w - q) {
        0 | 1 => Formula::of(&[Term::Coker(3, a, b)]),
        _ => Formula::of(&[Term::Ker(3, a, b)]),
    }
}

/// E²_{p,q,w}(KW/2), including the exceptional rows over S-integers.
pub fn kw2(model: &BaseModel, p: i64, q: i64, w: i64) -> Formula {
    let b = q - w;
    let r = m4(p - w);
    if let BaseModel::NumberRing(_) = model {
        if b == 2 {
            return match r {
                0 => Formula::of(&[Term::H22ModRhoTau]),
                1 => Formula::of(&[Term::KerRho22ModTau]),
                _ => Formula::zero(),
            };
        }
        if b == 1 {
            return match r {
                0 => Formula::of(&[Term::H(1, 1), Term::H(2, 1)]),
                1 => Formula::of(&[Term::Ker(1, 1, 1)]),
                2 => Formula::zero(),
                _ => Formula::of(&[Term::H(2, 1)]),
            };
        }
    }
    match r {
        0 => Formula::of(&[Term::Coker(1, b, b)]),
        1 => Formula::of(&[Term::Ker(1, b, b)]),
        _ => Formula::zero(),
    }
}

/// E²_{p,q,w}(KQ/2).
pub fn kq2(model: &BaseModel, p: i64, q: i64, w: i64) -> Formula {
    use Term::{Coker as C, Ker as K};
    let (a, b) = (2 * q - p, q - w);
    if p > 2 * q {
        return Formula::zero();
    }
    let r = m4(p - w);
    let c = q - p + w;
    if c <= 0 {
        let t = match (r, m4(c)) {
            (0, 0) => vec![C(5, a, b)],
            (0, 1) => vec![K(2, a, b), C(2, a - 1, b)],
            (0, 2) => vec![K(2, a - 1, b), C(1, a - 2, b)],
            (0, _) => vec![C(2, a - 2, b)],
            (1, 0) => vec![K(1, a, b), C(2, a - 1, b)],
            (1, 1) => vec![K(2, a - 1, b), C(2, a - 2, b)],
            (1, 2) => vec![K(5, a - 2, b)],
            (1, _) => vec![K(2, a, b)],
            (2, 0) => vec![C(3, a - 1, b), C(1, a - 2, b)],
            (2, 1) => vec![C(3, a - 2, b)],
            (2, 2) => vec![K(2, a, b)],
            (2, _) => vec![C(3, a, b), K(2, a - 1, b)],
            (_, 0) => vec![C(2, a - 2, b)],
            (_, 1) => vec![K(3, a, b)],
            (_, 2) => vec![K(1, a, b), K(3, a - 1, b)],
            (_, _) => vec![C(2, a - 1, b), K(3, a - 2, b)],
        };
        return Formula(t);
    }
    if c == 1 {
        return Formula(match r {
            0 => vec![C(2, a - 1, b)],
            1 => vec![K(1, a - 1, b), C(2, a - 2, b)],
            2 => vec![C(3, a - 2, b)],
            _ => vec![],
        });
    }
    // Above the line q − p + w = 1 the KQ/2 and KW/2 pages agree.
    kw2(model, p, q, w)
}

/// The closed form for a mod-2 theory.
pub fn e2_formula(model: &BaseModel, theory: Theory, p: i64, q: i64, w: i64) -> Formula {
    let f = match theory {
        Theory::KGL => kgl2(p, q, w),
        Theory::KW => kw2(model, p, q, w),
        Theory::KQ => kq2(model, p, q, w),
    };
    Formula(f.0.into_iter().filter(|t| term_dim(model, t) != DimRange::exact(0)).collect())
}
