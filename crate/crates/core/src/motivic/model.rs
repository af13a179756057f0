use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::MotivicError;

/// Residue of an odd prime ℓ modulo 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Class4 {
    One,
    Three,
}

impl Class4 {
    pub fn of_prime(l: u64) -> Option<Class4> {
        match l % 4 {
            1 => Some(Class4::One),
            3 => Some(Class4::Three),
            _ => None,
        }
    }

    /// The prime standing in for the whole class when 2-adic data such as
    /// v₂(ℓ^m − 1) is needed.
    pub fn representative(self) -> u64 {
        match self {
            Class4::One => 5,
            Class4::Three => 3,
        }
    }

    fn digit(self) -> u8 {
        match self {
            Class4::One => 1,
            Class4::Three => 3,
        }
    }
}

/// Numerical invariants of a ring of S-integers O_{F,S}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NumberRingParams {
    /// Real embeddings.
    pub r1: u32,
    /// Pairs of complex embeddings.
    pub r2: u32,
    /// Finite primes in S.
    pub s: u32,
    /// 2-rank of the Picard group.
    pub t: u32,
    /// 2-rank of the narrow Picard group.
    pub tplus: u32,
}

impl NumberRingParams {
    pub fn new(r1: u32, r2: u32, s: u32, t: u32, tplus: u32) -> Result<Self, MotivicError> {
        let p = NumberRingParams { r1, r2, s, t, tplus };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), MotivicError> {
        if self.s < 1 {
            return Err(MotivicError::InvalidParams("S must contain a dyadic prime, so s ≥ 1".into()));
        }
        if self.tplus < self.t {
            return Err(MotivicError::InvalidParams("t⁺ must be at least t".into()));
        }
        if self.r1 + 2 * self.r2 == 0 {
            return Err(MotivicError::InvalidParams("a number field has r₁ + 2r₂ ≥ 1".into()));
        }
        if self.tplus > self.t + self.r1 {
            return Err(MotivicError::InvalidParams("t⁺ − t cannot exceed r₁".into()));
        }
        Ok(())
    }

    /// Z[1/2]: one real place, the prime 2, trivial class groups.
    pub fn z_half() -> Self {
        NumberRingParams { r1: 1, r2: 0, s: 1, t: 0, tplus: 0 }
    }
}

impl fmt::Display for NumberRingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "numberring:r1={},r2={},s={},t={},tplus={}", self.r1, self.r2, self.s, self.t, self.tplus)
    }
}

/// A base scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseModel {
    /// A real closed field such as ℝ.
    RealClosed,
    /// A quadratically closed field containing all 2-power roots of unity.
    QuadClosed,
    /// A finite field F_ℓ.
    FiniteField(Class4),
    /// The 2-adic numbers.
    LocalQ2,
    /// An ℓ-adic field Q_ℓ, ℓ odd.
    LocalQl(Class4),
    /// A ring of S-integers in a number field.
    NumberRing(NumberRingParams),
}

impl BaseModel {
    pub const EXPLICIT: [BaseModel; 7] = [
        BaseModel::RealClosed,
        BaseModel::QuadClosed,
        BaseModel::FiniteField(Class4::One),
        BaseModel::FiniteField(Class4::Three),
        BaseModel::LocalQ2,
        BaseModel::LocalQl(Class4::One),
        BaseModel::LocalQl(Class4::Three),
    ];

    pub fn is_explicit(&self) -> bool {
        !matches!(self, BaseModel::NumberRing(_))
    }

    pub fn number_ring(&self) -> Option<&NumberRingParams> {
        match self {
            BaseModel::NumberRing(p) => Some(p),
            _ => None,
        }
    }

    /// Virtual 2-cohomological dimension.
    pub fn vcd(&self) -> u32 {
        match self {
            BaseModel::QuadClosed => 0,
            BaseModel::RealClosed => 0,
            BaseModel::FiniteField(_) => 1,
            BaseModel::LocalQ2 | BaseModel::LocalQl(_) => 2,
            BaseModel::NumberRing(_) => 2,
        }
    }

    /// 2-cohomological dimension; infinite for ordered fields.
    pub fn cd2(&self) -> Option<u32> {
        match self {
            BaseModel::RealClosed => None,
            BaseModel::NumberRing(p) if p.r1 > 0 => None,
            m => Some(m.vcd()),
        }
    }

    /// Largest p with h^{p,p} ≠ 0, or None if unbounded.
    pub fn milnor_top(&self) -> Option<u32> {
        match self {
            BaseModel::RealClosed => None,
            BaseModel::QuadClosed => Some(0),
            BaseModel::FiniteField(_) => Some(1),
            BaseModel::LocalQ2 | BaseModel::LocalQl(_) => Some(2),
            BaseModel::NumberRing(p) if p.r1 > 0 => None,
            BaseModel::NumberRing(_) => Some(2),
        }
    }

    /// Short stable name used in file names and JSON.
    pub fn tag(&self) -> String {
        match self {
            BaseModel::RealClosed => "R".into(),
            BaseModel::QuadClosed => "Qbar".into(),
            BaseModel::FiniteField(c) => format!("Fl:{}", c.digit()),
            BaseModel::LocalQ2 => "Q2".into(),
            BaseModel::LocalQl(c) => format!("Ql:{}", c.digit()),
            BaseModel::NumberRing(p) => p.to_string(),
        }
    }
}

impl fmt::Display for BaseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

fn parse_class(src: &str, arg: &str) -> Result<Class4, MotivicError> {
    let err = |why: &str| MotivicError::Parse(src.to_string(), why.to_string());
    let l: u64 = arg.trim().parse().map_err(|_| err("expected 1, 3 or an odd prime"))?;
    if l == 1 || l == 3 {
        return Ok(if l == 1 { Class4::One } else { Class4::Three });
    }
    if l < 2 || l.is_multiple_of(2) || !is_prime(l) {
        return Err(err("expected 1, 3 or an odd prime"));
    }
    Class4::of_prime(l).ok_or_else(|| err("expected an odd prime"))
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FromStr for BaseModel {
    type Err = MotivicError;

    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let s = src.trim();
        let err = |why: &str| MotivicError::Parse(src.to_string(), why.to_string());
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a)),
            None => (s, None),
        };
        match (head.to_ascii_lowercase().as_str(), arg) {
            ("r" | "real" | "realclosed", None) => Ok(BaseModel::RealClosed),
            ("qbar" | "c" | "quadclosed", None) => Ok(BaseModel::QuadClosed),
            ("q2", None) => Ok(BaseModel::LocalQ2),
            ("fl" | "f", Some(a)) => Ok(BaseModel::FiniteField(parse_class(src, a)?)),
            ("ql", Some(a)) => Ok(BaseModel::LocalQl(parse_class(src, a)?)),
            ("numberring" | "ofs", Some(a)) => {
                let mut vals: [Option<u32>; 5] = [None; 5];
                for kv in a.split(',').filter(|x| !x.trim().is_empty()) {
                    let (k, v) = kv.split_once('=').ok_or_else(|| err("expected key=value pairs"))?;
                    let v: u32 = v.trim().parse().map_err(|_| err("parameter values must be nonnegative integers"))?;
                    let slot = match k.trim() {
                        "r1" => 0,
                        "r2" => 1,
                        "s" => 2,
                        "t" => 3,
                        "tplus" | "t+" => 4,
                        other => return Err(err(&format!("unknown parameter `{other}`"))),
                    };
                    vals[slot] = Some(v);
                }
                let [Some(r1), Some(r2), Some(s), Some(t), tplus] = vals else {
                    return Err(err("need r1, r2, s and t"));
                };
                let p = NumberRingParams::new(r1, r2, s, t, tplus.unwrap_or(t))?;
                Ok(BaseModel::NumberRing(p))
            }
            ("q" | "z[1/2]", None) => Ok(BaseModel::NumberRing(NumberRingParams::z_half())),
            _ => Err(err("expected R, Qbar, Q2, Fl:<1|3|prime>, Ql:<1|3|prime> or numberring:r1=..,r2=..,s=..,t=..,tplus=..")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for m in BaseModel::EXPLICIT {
            assert_eq!(m.tag().parse::<BaseModel>().unwrap(), m);
        }
        let nr: BaseModel = "numberring:r1=2,r2=1,s=3,t=1,tplus=2".parse().unwrap();
        assert_eq!(nr.tag().parse::<BaseModel>().unwrap(), nr);
    }

    #[test]
    fn parse_primes() {
        assert_eq!("Fl:7".parse::<BaseModel>().unwrap(), BaseModel::FiniteField(Class4::Three));
        assert_eq!("Ql:13".parse::<BaseModel>().unwrap(), BaseModel::LocalQl(Class4::One));
        assert!("Ql:9".parse::<BaseModel>().is_err());
        assert!("Fl:2".parse::<BaseModel>().is_err());
    }

    #[test]
    fn parse_rejects_bad_params() {
        assert!("numberring:r1=1,r2=0,s=0,t=0".parse::<BaseModel>().is_err());
        assert!("numberring:r1=1,r2=0,s=1,t=2,tplus=1".parse::<BaseModel>().is_err());
        assert!("numberring:r1=1,r2=0,s=1".parse::<BaseModel>().is_err());
        assert!("bogus".parse::<BaseModel>().is_err());
    }
}
