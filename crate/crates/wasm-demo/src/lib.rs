//! wasm-bindgen wrappers over the slicess command line, for `www/index.html`.
//! The plain functions are what the bindings call, so they can be tested
//! natively.

use slicess::cli::{run, EXIT_OK};
use wasm_bindgen::prelude::*;

fn invoke(args: &[String]) -> Result<String, String> {
    let out = run(std::iter::once("slicess".to_string()).chain(args.iter().cloned()));
    if out.code == EXIT_OK {
        Ok(out.stdout)
    } else {
        Err(out.stderr.trim_end().to_string())
    }
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// An E^r page as an ASCII chart.
pub fn page_chart(theory: &str, base: &str, modulus: u32, weight: i64, p: &str, q: &str, r: &str) -> Result<String, String> {
    let mut args = strings(&["page", "--theory", theory, "--base", base, "--p", p, "--q", q, "--r", r]);
    args.extend(["--mod".into(), modulus.to_string(), "--weight".into(), weight.to_string()]);
    invoke(&args)
}

/// Filtration quotients of π_{n,w} for n in a range.
pub fn group_table(theory: &str, base: &str, modulus: u32, weight: i64, n: &str) -> Result<String, String> {
    let mut args = strings(&["groups", "--theory", theory, "--base", base, "--n", n]);
    args.extend(["--mod".into(), modulus.to_string(), "--weight".into(), weight.to_string()]);
    invoke(&args)
}

/// 2-adic valuations of ζ_Q(−1−4k) and ζ_Q(−3−4k) by every route.
pub fn zeta_table(k: &str) -> Result<String, String> {
    invoke(&strings(&["zeta", "--field", "Q", "--k", k]))
}

#[wasm_bindgen(js_name = pageChart)]
pub fn page_chart_js(theory: &str, base: &str, modulus: u32, weight: i32, p: &str, q: &str, r: &str) -> Result<String, JsValue> {
    page_chart(theory, base, modulus, weight.into(), p, q, r).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = groupTable)]
pub fn group_table_js(theory: &str, base: &str, modulus: u32, weight: i32, n: &str) -> Result<String, JsValue> {
    group_table(theory, base, modulus, weight.into(), n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = zetaTable)]
pub fn zeta_table_js(k: &str) -> Result<String, JsValue> {
    zeta_table(k).map_err(|e| JsValue::from_str(&e))
}
