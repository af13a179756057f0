use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::model::BaseModel;
use super::monomial::{normalize, F2Sum, Monomial};
use super::uct::{generator_level, uct_kind, UctKind};
use super::MotivicError;

/// Atomic operation symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Prim {
    Id,
    Sq1,
    Sq2,
    Sq3,
    Sq2Sq1,
    Sq3Sq1,
    /// Multiplication by ρ^rho τ^tau; a negative τ-power lowers the τ-exponent.
    Mul { rho: u32, tau: i32 },
    /// Reduction H(Z/2^n) → h.
    Pr(u32),
    /// Inclusion h → H(Z/2^n) induced by 1 ↦ 2^{n−1}.
    Inc(u32),
    /// Connecting map H(Z/2^n) → h of degree one.
    Del2nTo2(u32),
    /// Connecting map h → H(Z/2^n) of degree one.
    Del2To2n(u32),
}

/// Values of Sq on τ^k, indexed by k mod 4, as (ρ-power, τ-drop).
type TauTable = [Option<(u32, u32)>; 4];

const SQ1: TauTable = [None, Some((1, 1)), None, Some((1, 1))];
const SQ2: TauTable = [None, None, Some((2, 1)), Some((2, 1))];
const SQ3: TauTable = [None, None, Some((3, 2)), None];
const SQ2SQ1: TauTable = [None, None, None, Some((3, 2))];
const SQ3SQ1: TauTable = [None, None, None, Some((4, 3))];

impl Prim {
    pub fn bidegree(&self) -> (i64, i64) {
        match *self {
            Prim::Id | Prim::Pr(_) | Prim::Inc(_) => (0, 0),
            Prim::Sq1 | Prim::Del2nTo2(_) | Prim::Del2To2n(_) => (1, 0),
            Prim::Sq2 => (2, 1),
            Prim::Sq3 | Prim::Sq2Sq1 => (3, 1),
            Prim::Sq3Sq1 => (4, 1),
            Prim::Mul { rho, tau } => (rho as i64, rho as i64 + tau as i64),
        }
    }

    /// (source level, target level); None means any level.
    pub fn levels(&self) -> (Option<u32>, Option<u32>) {
        match *self {
            Prim::Id => (None, None),
            Prim::Pr(n) | Prim::Del2nTo2(n) => (Some(n), Some(1)),
            Prim::Inc(n) | Prim::Del2To2n(n) => (Some(1), Some(n)),
            _ => (Some(1), Some(1)),
        }
    }

    fn tau_table(&self) -> Option<&'static TauTable> {
        match self {
            Prim::Sq1 => Some(&SQ1),
            Prim::Sq2 => Some(&SQ2),
            Prim::Sq3 => Some(&SQ3),
            Prim::Sq2Sq1 => Some(&SQ2SQ1),
            Prim::Sq3Sq1 => Some(&SQ3SQ1),
            _ => None,
        }
    }
}

fn sup_i(n: i32) -> String {
    const D: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s = String::new();
    if n < 0 {
        s.push('⁻');
    }
    for c in n.unsigned_abs().to_string().chars() {
        s.push(D[c.to_digit(10).unwrap() as usize]);
    }
    s
}

impl fmt::Display for Prim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Prim::Id => f.write_str("id"),
            Prim::Sq1 => f.write_str("Sq¹"),
            Prim::Sq2 => f.write_str("Sq²"),
            Prim::Sq3 => f.write_str("Sq³"),
            Prim::Sq2Sq1 => f.write_str("Sq²Sq¹"),
            Prim::Sq3Sq1 => f.write_str("Sq³Sq¹"),
            Prim::Mul { rho, tau } => {
                let mut s = String::new();
                if rho > 0 {
                    s.push('ρ');
                    if rho > 1 {
                        s.push_str(&sup_i(rho as i32));
                    }
                }
                if tau != 0 {
                    s.push('τ');
                    if tau != 1 {
                        s.push_str(&sup_i(tau));
                    }
                }
                if s.is_empty() {
                    s.push('1');
                }
                f.write_str(&s)
            }
            Prim::Pr(_) => f.write_str("pr"),
            Prim::Inc(_) => f.write_str("inc"),
            Prim::Del2nTo2(_) => f.write_str("∂"),
            Prim::Del2To2n(_) => f.write_str("∂'"),
        }
    }
}

/// A formal F₂-sum of composites of primitive symbols.
///
/// Each term lists its factors in written order, so `[Sq2, Pr(n)]` is
/// Sq²∘pr and applies `pr` first. The empty sum is the zero map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Op {
    terms: Vec<Vec<Prim>>,
}

impl From<Prim> for Op {
    fn from(p: Prim) -> Self {
        Op { terms: vec![vec![p]] }
    }
}

impl std::ops::Add for Op {
    type Output = Op;
    fn add(mut self, rhs: Op) -> Op {
        self.terms.extend(rhs.terms);
        self
    }
}

impl Op {
    pub fn zero() -> Op {
        Op::default()
    }

    pub fn id() -> Op {
        Prim::Id.into()
    }

    pub fn tau() -> Op {
        Prim::Mul { rho: 0, tau: 1 }.into()
    }

    pub fn rho() -> Op {
        Prim::Mul { rho: 1, tau: 0 }.into()
    }

    pub fn mul(rho: u32, tau: i32) -> Op {
        Prim::Mul { rho, tau }.into()
    }

    /// Composite from written factors, e.g. `chain(&[Sq2, Pr(n)])` is Sq²∘pr.
    pub fn chain(factors: &[Prim]) -> Op {
        Op { terms: vec![factors.to_vec()] }
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Op) -> Op {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &rhs.terms {
                let mut t = a.clone();
                t.extend_from_slice(b);
                terms.push(t);
            }
        }
        Op { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Vec<Prim>] {
        &self.terms
    }

    /// Common bidegree of the terms; None for the zero map.
    pub fn bidegree(&self) -> Result<Option<(i64, i64)>, MotivicError> {
        let mut out = None;
        for t in &self.terms {
            let d = t.iter().fold((0, 0), |acc, p| {
                let b = p.bidegree();
                (acc.0 + b.0, acc.1 + b.1)
            });
            match out {
                None => out = Some(d),
                Some(e) if e != d => return Err(MotivicError::Inhomogeneous(self.to_string())),
                _ => {}
            }
        }
        Ok(out)
    }

    /// Source and target coefficient levels of a term, checking the chain.
    fn term_levels(term: &[Prim]) -> Result<(Option<u32>, Option<u32>), MotivicError> {
        let mut src: Option<u32> = None;
        let mut cur: Option<u32> = None;
        for p in term.iter().rev() {
            let (a, b) = p.levels();
            if let (Some(c), Some(a)) = (cur, a) {
                if c != a {
                    return Err(MotivicError::LevelMismatch { op: p.to_string(), expected: a, got: c });
                }
            }
            if src.is_none() && cur.is_none() {
                src = a;
            }
            cur = b.or(cur).or(a);
        }
        Ok((src, cur))
    }

    /// Checks that every term maps level `src` to level `tgt`.
    pub fn check_levels(&self, src: u32, tgt: u32) -> Result<(), MotivicError> {
        for t in &self.terms {
            let (a, b) = Self::term_levels(t)?;
            let a = a.unwrap_or(src);
            let b = b.unwrap_or(a);
            if a != src {
                return Err(MotivicError::LevelMismatch { op: self.to_string(), expected: a, got: src });
            }
            if b != tgt {
                return Err(MotivicError::LevelMismatch { op: self.to_string(), expected: tgt, got: b });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut s = String::new();
                for (i, p) in t.iter().enumerate() {
                    let cur = p.to_string();
                    let prev_is_symbol = i > 0 && !matches!(t[i - 1], Prim::Mul { .. });
                    let cur_is_coeff = matches!(p, Prim::Pr(_) | Prim::Inc(_) | Prim::Del2nTo2(_) | Prim::Del2To2n(_));
                    if prev_is_symbol && cur_is_coeff {
                        s.push('∘');
                    }
                    s.push_str(&cur);
                }
                s
            })
            .collect();
        f.write_str(&parts.join("+"))
    }
}

type Element = BTreeMap<Monomial, u64>;

fn add_to(out: &mut Element, m: Monomial, c: u64, modulus_exp: u32) {
    let mask = (1u64 << modulus_exp) - 1;
    let e = out.entry(m).or_insert(0);
    *e = (*e + c) & mask;
    if *e == 0 {
        out.remove(&m);
    }
}

fn apply_prim(model: &BaseModel, p: Prim, level: u32, x: &Element) -> Result<(Element, u32), MotivicError> {
    let (want, tgt) = p.levels();
    if let Some(w) = want {
        if w != level {
            return Err(MotivicError::LevelMismatch { op: p.to_string(), expected: w, got: level });
        }
    }
    let tgt = tgt.unwrap_or(level);
    let mut out = Element::new();
    for (&m, &c) in x {
        match p {
            Prim::Id => add_to(&mut out, m, c, generator_level(model, &m, tgt)),
            Prim::Mul { rho, tau } => {
                let t = m.tau as i64 + tau as i64;
                if t < 0 || c & 1 == 0 {
                    continue;
                }
                let raw = Monomial { rho: m.rho + rho, ..m.milnor() };
                if let Some(n) = normalize(model, raw) {
                    add_to(&mut out, n.with_tau(t as u32), 1, 1);
                }
            }
            Prim::Pr(n) => {
                let keep = match uct_kind(model, &m) {
                    UctKind::Reduction { .. } => true,
                    UctKind::Lift { e, .. } => e >= n,
                };
                if keep {
                    add_to(&mut out, m, c, 1);
                }
            }
            Prim::Inc(n) => {
                let shift = match uct_kind(model, &m) {
                    UctKind::Reduction { .. } => n - 1,
                    UctKind::Lift { e, .. } => e.min(n) - 1,
                };
                let lvl = generator_level(model, &m, n);
                if shift < lvl {
                    add_to(&mut out, m, c << shift, lvl);
                }
            }
            Prim::Del2nTo2(n) => {
                if let UctKind::Lift { e, partner } = uct_kind(model, &m) {
                    if e <= n {
                        add_to(&mut out, partner, c, 1);
                    }
                }
            }
            Prim::Del2To2n(n) => {
                if let UctKind::Lift { e, partner } = uct_kind(model, &m) {
                    if e <= n {
                        add_to(&mut out, partner, c << (e - 1), generator_level(model, &partner, n));
                    }
                }
            }
            sq => {
                if c & 1 == 0 {
                    continue;
                }
                let table = sq.tau_table().expect("Steenrod symbol");
                if let Some((r, drop)) = table[(m.tau % 4) as usize] {
                    let raw = Monomial { rho: m.rho + r, ..m.milnor() };
                    if let Some(n) = normalize(model, raw) {
                        add_to(&mut out, n.with_tau(m.tau - drop), 1, 1);
                    }
                }
            }
        }
    }
    Ok((out, tgt))
}

/// Applies `op` to the basis element `m` of the coefficient-level-`level`
/// cohomology. Returns the image as (monomial, coefficient) pairs, each
/// coefficient reduced modulo the order of its target generator.
pub fn apply_op(model: &BaseModel, op: &Op, level: u32, m: &Monomial) -> Result<Vec<(Monomial, u64)>, MotivicError> {
    if let BaseModel::NumberRing(_) = model {
        if op.terms.iter().flatten().any(|p| matches!(p, Prim::Mul { tau, .. } if *tau < 0)) {
            return Err(MotivicError::NegativeTauOnNumberRing);
        }
        return Err(MotivicError::DimensionOnly { model: model.tag() });
    }
    let mut total = Element::new();
    let mut total_level: Option<u32> = None;
    for term in &op.terms {
        let mut x = Element::new();
        x.insert(*m, 1);
        let mut lvl = level;
        for p in term.iter().rev() {
            let (y, l) = apply_prim(model, *p, lvl, &x)?;
            x = y;
            lvl = l;
        }
        if let Some(tl) = total_level {
            if tl != lvl {
                return Err(MotivicError::LevelMismatch { op: op.to_string(), expected: tl, got: lvl });
            }
        }
        total_level = Some(lvl);
        for (mm, c) in x {
            add_to(&mut total, mm, c, generator_level(model, &mm, lvl));
        }
    }
    Ok(total.into_iter().collect())
}

/// Mod-2 action of `op` on a monomial of an explicit model.
pub fn steenrod_apply(model: &BaseModel, op: &Op, m: &Monomial) -> Result<F2Sum, MotivicError> {
    let mut out = F2Sum::zero();
    for (mm, c) in apply_op(model, op, 1, m)? {
        if c & 1 == 1 {
            out.add_term(mm);
        }
    }
    Ok(out)
}

/// Checks Sq¹Sq¹ = 0, Sq¹Sq² = Sq³ and Sq²Sq² = τSq³Sq¹ on every basis
/// monomial of bidegree (p, q) with 0 ≤ p, q ≤ `max`. Returns a
/// description of each failure.
pub fn steenrod_relation_failures(model: &BaseModel, max: i64) -> Vec<String> {
    let sq1 = Op::from(Prim::Sq1);
    let sq2 = Op::from(Prim::Sq2);
    let relations: [(&str, Op, Op); 3] = [
        ("Sq¹Sq¹ = 0", sq1.compose(&sq1), Op::zero()),
        ("Sq¹Sq² = Sq³", sq1.compose(&sq2), Prim::Sq3.into()),
        ("Sq²Sq² = τSq³Sq¹", sq2.compose(&sq2), Op::tau().compose(&Prim::Sq3Sq1.into())),
    ];
    let mut failures = Vec::new();
    for p in 0..=max {
        for q in 0..=max {
            for m in super::monomial::basis(model, p, q).monomials() {
                for (name, lhs, rhs) in &relations {
                    let l = steenrod_apply(model, lhs, m);
                    let r = steenrod_apply(model, rhs, m);
                    if l != r {
                        failures.push(format!("{model}: {name} fails on {m}"));
                    }
                }
            }
        }
    }
    failures
}
