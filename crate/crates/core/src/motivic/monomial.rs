use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::model::{BaseModel, Class4};
use super::numberring::NumberRingPiece;

/// A monomial `τ^tau · ρ^rho u^u π^pi`.
///
/// Ordering is by Milnor exponents first (ρ < u < π) and τ last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub rho: u32,
    pub u: u32,
    pub pi: u32,
    pub tau: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { rho: 0, u: 0, pi: 0, tau: 0 };
    pub const RHO: Monomial = Monomial { rho: 1, u: 0, pi: 0, tau: 0 };
    pub const U: Monomial = Monomial { rho: 0, u: 1, pi: 0, tau: 0 };
    pub const PI: Monomial = Monomial { rho: 0, u: 0, pi: 1, tau: 0 };

    pub fn tau_pow(k: u32) -> Monomial {
        Monomial { tau: k, ..Monomial::ONE }
    }

    pub fn rho_pow(a: u32) -> Monomial {
        Monomial { rho: a, ..Monomial::ONE }
    }

    /// Same Milnor part, τ-exponent replaced.
    pub fn with_tau(self, tau: u32) -> Monomial {
        Monomial { tau, ..self }
    }

    /// The Milnor part, i.e. `self` with τ-exponent 0.
    pub fn milnor(self) -> Monomial {
        self.with_tau(0)
    }

    /// Cohomological degree.
    pub fn p(&self) -> i64 {
        (self.rho + self.u + self.pi) as i64
    }

    /// Weight.
    pub fn q(&self) -> i64 {
        self.p() + self.tau as i64
    }

    pub fn bidegree(&self) -> (i64, i64) {
        (self.p(), self.q())
    }

    fn raw_mul(&self, o: &Monomial) -> Monomial {
        Monomial { rho: self.rho + o.rho, u: self.u + o.u, pi: self.pi + o.pi, tau: self.tau + o.tau }
    }
}

fn sup(n: u32) -> String {
    const D: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if n == 1 {
        return String::new();
    }
    n.to_string().chars().map(|c| D[c.to_digit(10).unwrap() as usize]).collect()
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (sym, e) in [("ρ", self.rho), ("u", self.u), ("π", self.pi), ("τ", self.tau)] {
            if e > 0 {
                s.push_str(sym);
                s.push_str(&sup(e));
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        f.write_str(&s)
    }
}

/// Normal form of a Milnor exponent vector in the given model, or None if
/// the product vanishes. Degree-two products in the local models reduce
/// to a single monomial and everything in degree three vanishes, so the
/// rules below are confluent.
pub(crate) fn normalize(model: &BaseModel, m: Monomial) -> Option<Monomial> {
    let d = m.rho + m.u + m.pi;
    let keep = |ok: bool| if ok { Some(m) } else { None };
    match model {
        BaseModel::RealClosed => keep(m.u == 0 && m.pi == 0),
        BaseModel::QuadClosed => keep(d == 0),
        // −1 is a square, so ρ = 0; u is the nonsquare class.
        BaseModel::FiniteField(Class4::One) => keep(m.rho == 0 && m.pi == 0 && m.u <= 1),
        // −1 is the nonsquare class.
        BaseModel::FiniteField(Class4::Three) => keep(m.u == 0 && m.pi == 0 && m.rho <= 1),
        BaseModel::LocalQl(Class4::One) => keep(m.rho == 0 && m.u <= 1 && m.pi <= 1),
        BaseModel::LocalQl(Class4::Three) => {
            if m.u > 0 || d > 2 {
                return None;
            }
            match (m.rho, m.pi) {
                (2, 0) => None,
                // {−1, ℓ} = {ℓ, ℓ}
                (1, 1) => Some(Monomial { rho: 0, pi: 2, ..m }),
                _ => Some(m),
            }
        }
        BaseModel::LocalQ2 => match d {
            0 | 1 => Some(m),
            2 if m.rho == 2 => Some(m),
            2 if m.u == 1 && m.pi == 1 => Some(Monomial { rho: 2, u: 0, pi: 0, ..m }),
            _ => None,
        },
        BaseModel::NumberRing(_) => None,
    }
}

/// Normal-form Milnor basis of h^{p,p}.
pub fn milnor_basis(model: &BaseModel, p: i64) -> Vec<Monomial> {
    if p < 0 {
        return vec![];
    }
    let p = p as u32;
    let mut out = Vec::new();
    for rho in 0..=p {
        for u in 0..=p - rho {
            let m = Monomial { rho, u, pi: p - rho - u, tau: 0 };
            if normalize(model, m) == Some(m) {
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

/// Product of two normal-form monomials: zero or a single monomial.
pub fn multiply(model: &BaseModel, a: &Monomial, b: &Monomial) -> Option<Monomial> {
    normalize(model, a.raw_mul(b))
}

/// A formal F₂-linear combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct F2Sum(pub BTreeSet<Monomial>);

impl F2Sum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(m: Monomial) -> Self {
        F2Sum([m].into_iter().collect())
    }

    pub fn add_term(&mut self, m: Monomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.0.iter()
    }
}

impl fmt::Display for F2Sum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Either an explicit basis or number-ring dimension data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PieceData {
    Basis(Vec<Monomial>),
    Dims(NumberRingPiece),
}

/// The bidegree-(p, q) piece of h^{*,*}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPiece {
    pub p: i64,
    pub q: i64,
    pub data: PieceData,
}

impl GradedPiece {
    pub fn dim(&self) -> u32 {
        match &self.data {
            PieceData::Basis(b) => b.len() as u32,
            PieceData::Dims(d) => d.dim,
        }
    }

    pub fn monomials(&self) -> &[Monomial] {
        match &self.data {
            PieceData::Basis(b) => b,
            PieceData::Dims(_) => &[],
        }
    }
}

/// Basis (explicit models) or dimension data (number rings) of h^{p,q}.
pub fn basis(model: &BaseModel, p: i64, q: i64) -> GradedPiece {
    let data = match model {
        BaseModel::NumberRing(params) => PieceData::Dims(NumberRingPiece::new(params, p, q)),
        _ => {
            let b = if p < 0 || q < p {
                vec![]
            } else {
                milnor_basis(model, p).into_iter().map(|m| m.with_tau((q - p) as u32)).collect()
            };
            PieceData::Basis(b)
        }
    };
    GradedPiece { p, q, data }
}
