//! Serialization of pages: a versioned JSON document, CSV, an ASCII chart
//! and TikZ source.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::page::{Page, Window};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageMeta {
    pub version: u32,
    pub theory: String,
    /// The coefficient modulus 2^n.
    #[serde(rename = "mod")]
    pub modulus: u64,
    pub base: String,
    pub weight: i64,
    pub page: String,
    pub window: Window,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    pub p: i64,
    pub q: i64,
    /// log₂ of the order of each labelled summand (lower bound if inexact).
    pub dims: Vec<u32>,
    pub labels: Vec<String>,
    pub boundary: bool,
    /// The cell as a sum of cyclic groups, when known.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group: Option<String>,
    /// Upper bounds for `dims`, present only when some dimension is undetermined.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dims_hi: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageDoc {
    pub meta: PageMeta,
    pub cells: Vec<CellDoc>,
}

impl PageDoc {
    /// The first cell where two documents disagree, if any.
    pub fn first_mismatch(&self, other: &PageDoc, skip_boundary: bool) -> Option<String> {
        if self.meta != other.meta {
            return Some(format!("meta differs: {:?} vs {:?}", self.meta, other.meta));
        }
        let key = |c: &CellDoc| (c.q, c.p);
        let mut a: Vec<&CellDoc> = self.cells.iter().filter(|c| !(skip_boundary && c.boundary)).collect();
        let mut b: Vec<&CellDoc> = other.cells.iter().filter(|c| !(skip_boundary && c.boundary)).collect();
        a.sort_by_key(|c| key(c));
        b.sort_by_key(|c| key(c));
        for (x, y) in a.iter().zip(&b) {
            if x != y {
                return Some(format!("cell ({},{}): {:?} vs {:?}", x.p, x.q, x, y));
            }
        }
        (a.len() != b.len()).then(|| format!("{} cells vs {}", a.len(), b.len()))
    }
}

pub fn to_doc(page: &Page) -> PageDoc {
    let s = &page.sseq;
    let meta = PageMeta {
        version: FORMAT_VERSION,
        theory: s.theory.name().to_string(),
        modulus: 1u64 << s.n,
        base: s.model.tag(),
        weight: s.weight,
        page: page.page.to_string(),
        window: page.window,
    };
    let cells = page
        .cells
        .iter()
        .map(|c| {
            let exact = c.components.iter().all(|x| x.dim.is_exact());
            CellDoc {
                p: c.p,
                q: c.q,
                dims: c.components.iter().map(|x| x.dim.lo).collect(),
                labels: c.components.iter().map(|x| x.label.clone()).collect(),
                boundary: c.boundary,
                group: c.group().map(|g| g.to_string()),
                dims_hi: (!exact).then(|| c.components.iter().map(|x| x.dim.hi).collect()),
            }
        })
        .collect();
    PageDoc { meta, cells }
}

pub fn to_json(page: &Page) -> String {
    serde_json::to_string_pretty(&to_doc(page)).expect("page documents serialize")
}

/// `p,q,dim` for every nonzero cell.
pub fn to_csv(page: &Page) -> String {
    let mut out = String::from("p,q,dim\n");
    for c in page.nonzero() {
        writeln!(out, "{},{},{}", c.p, c.q, c.log_order()).unwrap();
    }
    out
}

/// A chart with q increasing upwards and p to the right; each nonzero cell
/// shows log₂ of its order.
pub fn to_ascii(page: &Page) -> String {
    let w = page.window;
    let s = &page.sseq;
    let mut out = String::new();
    writeln!(out, "E^{} of {}/{} over {}, weight {}", page.page, s.theory, 1u64 << s.n, s.model, s.weight).unwrap();
    let width = 4;
    for q in (w.q.0..=w.q.1).rev() {
        write!(out, "{q:>4} |").unwrap();
        for p in w.p.0..=w.p.1 {
            let c = page.cell(p, q).expect("cell in window");
            let t = if c.is_zero() { ".".to_string() } else { c.log_order().to_string() };
            write!(out, "{t:>width$}").unwrap();
        }
        out.push('\n');
    }
    write!(out, "     +").unwrap();
    out.push_str(&"-".repeat(width * (w.p.1 - w.p.0 + 1) as usize));
    out.push('\n');
    write!(out, "  p   ").unwrap();
    for p in w.p.0..=w.p.1 {
        write!(out, "{p:>width$}").unwrap();
    }
    out.push('\n');
    out
}

/// TikZ source in the style of a spectral sequence chart: one dot per F₂
/// summand, stacked horizontally, with labels in a tooltip comment.
pub fn to_tikz(page: &Page) -> String {
    let w = page.window;
    let s = &page.sseq;
    let mut out = String::new();
    writeln!(out, "% E^{} of {}/{} over {}, weight {}", page.page, s.theory, 1u64 << s.n, s.model, s.weight).unwrap();
    writeln!(out, "\\begin{{tikzpicture}}[scale=0.6]").unwrap();
    writeln!(out, "  \\draw[very thin, gray!40] ({},{}) grid ({},{});", w.p.0, w.q.0, w.p.1, w.q.1).unwrap();
    for p in w.p.0..=w.p.1 {
        writeln!(out, "  \\node[below] at ({p},{}) {{\\tiny ${p}$}};", w.q.0).unwrap();
    }
    for q in w.q.0..=w.q.1 {
        writeln!(out, "  \\node[left] at ({},{q}) {{\\tiny ${q}$}};", w.p.0).unwrap();
    }
    for c in page.nonzero() {
        let d = c.log_order();
        let k = d.lo.max(1);
        let step = 0.16;
        let x0 = c.p as f64 - step * (k as f64 - 1.0) / 2.0;
        for i in 0..k {
            writeln!(out, "  \\fill ({:.2},{}) circle (2pt);", x0 + step * i as f64, c.q).unwrap();
        }
        let label: Vec<&str> = c.components.iter().map(|x| x.label.as_str()).collect();
        if !d.is_exact() {
            writeln!(out, "  \\node[above right] at ({},{}) {{\\tiny ${}$}};", c.p, c.q, d).unwrap();
        }
        writeln!(out, "  % ({},{}): {}", c.p, c.q, label.join(" + ")).unwrap();
    }
    writeln!(out, "\\end{{tikzpicture}}").unwrap();
    out
}
