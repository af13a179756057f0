use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{EngineError, Sseq};
use crate::f2linalg::Abelian2Group;
use crate::motivic::DimRange;

/// Inclusive (p, q) bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub p: (i64, i64),
    pub q: (i64, i64),
}

impl Window {
    pub fn new(p: (i64, i64), q: (i64, i64)) -> Self {
        Window { p, q }
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.p.0 > self.p.1 || self.q.0 > self.q.1 {
            return Err(EngineError::InvalidWindow(format!("{self:?} is empty")));
        }
        Ok(())
    }

    /// Cells in row-major order: q ascending, then p ascending.
    pub fn coords(&self) -> impl Iterator<Item = (i64, i64)> {
        let (p, q) = (self.p, self.q);
        (q.0..=q.1).flat_map(move |qq| (p.0..=p.1).map(move |pp| (pp, qq)))
    }

    pub fn on_boundary(&self, p: i64, q: i64) -> bool {
        p == self.p.0 || p == self.p.1 || q == self.q.0 || q == self.q.1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PageIndex {
    Finite(u32),
    Infinity,
}

impl fmt::Display for PageIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PageIndex::Finite(r) => write!(f, "{r}"),
            PageIndex::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for PageIndex {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "infinity" | "∞" => Ok(PageIndex::Infinity),
            _ => s.parse().map(PageIndex::Finite).map_err(|_| format!("bad page index `{s}`")),
        }
    }
}

impl Serialize for PageIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PageIndex::Finite(r) => s.serialize_u32(*r),
            PageIndex::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for PageIndex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(r) => Ok(PageIndex::Finite(r)),
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A labelled direct summand of a cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub label: String,
    /// log₂ of the order (the F₂-dimension for elementary groups).
    pub dim: DimRange,
    pub group: Option<Abelian2Group>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub p: i64,
    pub q: i64,
    pub components: Vec<Component>,
    pub boundary: bool,
}

impl Cell {
    pub fn log_order(&self) -> DimRange {
        self.components.iter().map(|c| c.dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.log_order() == DimRange::exact(0)
    }

    /// The whole group, when every summand is known.
    pub fn group(&self) -> Option<Abelian2Group> {
        self.components.iter().try_fold(Abelian2Group::trivial(), |acc, c| Some(acc.direct_sum(c.group.as_ref()?)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Page {
    pub sseq: Sseq,
    pub page: PageIndex,
    pub window: Window,
    /// Cells in window order.
    pub cells: Vec<Cell>,
}

impl Page {
    pub fn cell(&self, p: i64, q: i64) -> Option<&Cell> {
        let w = &self.window;
        if !(w.p.0..=w.p.1).contains(&p) || !(w.q.0..=w.q.1).contains(&q) {
            return None;
        }
        let width = (w.p.1 - w.p.0 + 1) as usize;
        self.cells.get((q - w.q.0) as usize * width + (p - w.p.0) as usize)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.is_zero())
    }
}
