use std::fmt::Write;

use super::{group_order_2rank, FiltrationTable, Quotient};
use crate::motivic::DimRange;

fn slot_name(i: usize, len: usize) -> String {
    if i + 1 == len {
        format!("f{i}")
    } else {
        format!("f{i}/f{}", i + 1)
    }
}

fn order_str(o: Option<DimRange>, free: u32) -> String {
    let tors = match o {
        Some(d) if d.is_exact() => format!("2^{}", d.lo),
        Some(d) => format!("2^({d})"),
        None => "?".into(),
    };
    if free > 0 {
        format!("Z₂^{free} + tors {tors}")
    } else {
        tors
    }
}

fn quotient_str(x: &Quotient) -> String {
    let dim = match x.rank {
        Some(r) => r.to_string(),
        None => "?".into(),
    };
    format!("{} [{}]", x.symbol.as_deref().unwrap_or(&x.label), dim)
}

/// Aligned text, one table per line: abutment, l, quotients with their
/// 2-ranks in brackets, the order and the extension status.
pub fn to_text(tables: &[FiltrationTable]) -> String {
    let head: Vec<String> = tables.iter().map(|t| t.row.clone().unwrap_or_else(|| t.label.clone())).collect();
    let width = head.iter().map(|h| h.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (t, h) in tables.iter().zip(&head) {
        let qs: Vec<String> = t
            .quotients
            .iter()
            .enumerate()
            .map(|(i, x)| format!("{} = {}", slot_name(i, t.quotients.len()), quotient_str(x)))
            .collect();
        let o = group_order_2rank(t);
        let body = if qs.is_empty() { "0".to_string() } else { qs.join(", ") };
        let pad = width - h.chars().count();
        writeln!(out, "{h}{} | {} | {body} | order {} | {}", " ".repeat(pad), t.length, order_str(o.log_order, o.free_rank), t.extension)
            .unwrap();
    }
    out
}

fn latex_symbol(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        match c {
            'ρ' => out.push_str("\\rho"),
            'τ' => out.push_str("\\tau "),
            '∂' => out.push_str("\\partial "),
            '⊕' => out.push_str("\\oplus"),
            '²' => out.push_str("^{2}"),
            '³' => out.push_str("^{3}"),
            '⁴' => out.push_str("^{4}"),
            '⁵' => out.push_str("^{5}"),
            '₂' => out.push_str("_{2}"),
            '₁' => out.push_str("_{1}"),
            'Z' => out.push_str("\\mathbb{Z}"),
            c => out.push(c),
        }
    }
    out.replace("ker ", "\\ker ").replace("pr", "\\mathsf{pr}").replace("Sq", "\\mathsf{Sq}")
}

/// A tabular body in the layout `n & l & f₀/f₁ = …, …`.
pub fn to_latex(tables: &[FiltrationTable]) -> String {
    let mut out = String::from("\\begin{tabular}{l|l|l}\n\\hline\n");
    for t in tables {
        let name = t.row.clone().unwrap_or_else(|| t.label.clone());
        let len = t.quotients.len();
        let qs: Vec<String> = t
            .quotients
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let slot = if i + 1 == len { format!("\\mathsf{{f}}_{{{i}}}") } else { format!("\\mathsf{{f}}_{{{i}}}/\\mathsf{{f}}_{{{}}}", i + 1) };
                format!("${slot} = {}$", latex_symbol(x.symbol.as_deref().unwrap_or(&x.label)))
            })
            .collect();
        let body = if qs.is_empty() { "$0$".to_string() } else { qs.join(", ") };
        writeln!(out, "${}$ & ${}$ & {body} \\\\", latex_symbol(&name), t.length).unwrap();
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}
