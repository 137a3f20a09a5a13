//! Browser bindings. Every exported function returns a JSON string; errors
//! surface as thrown JS `Error`s.

use cdes::formula::cdes_formula_typed;
use cdes::poly::gn;
use cdes::tableaux::{
    brute_count_tableaux, count_tableaux_formula, shape_to_descent_set, PartitionShape,
};
use cdes::tree::{tree_weight_sum, WeightSequence};
use cdes::{
    brute_cdes_count, cdes_formula, cdes_recursive, gap_vector, BruteCap, MemoCache, ValueSet,
};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Browser-side limits, kept low so a click never stalls the page.
const BRUTE_LIMIT: u32 = 9;
const POLY_LIMIT: u32 = 12;
const FILLING_LIMIT: usize = 16;

/// `cdes_n(S)` by every applicable method.
pub fn count_report(n: u32, set: &str) -> cdes::Result<String> {
    let set: ValueSet = set.parse()?;
    let formula = cdes_formula(n, &set)?;
    let mut methods = vec![
        json!({"method": "formula", "count": formula.to_string()}),
        json!({"method": "typed", "count": cdes_formula_typed(n, &set)?.to_string()}),
        json!({"method": "recursion", "count": cdes_recursive(n, &set, &MemoCache::new())?.to_string()}),
    ];
    if !set.contains(1) {
        let d = WeightSequence::new(gap_vector(&set)?.gaps().to_vec());
        methods.push(json!({"method": "tree", "count": tree_weight_sum(&d)?.to_string()}));
    }
    if n <= BRUTE_LIMIT {
        let brute = brute_cdes_count(n, &set, BruteCap::new(BRUTE_LIMIT)?)?;
        methods.push(json!({"method": "brute", "count": brute.to_string()}));
    }
    let agree = methods.iter().all(|m| m["count"] == formula.to_string());
    Ok(json!({
        "query": {"n": n, "set": set.elements()},
        "result": formula.to_string(),
        "methods": methods,
        "agree": agree,
    })
    .to_string())
}

/// `g_n` as a string plus one row per monomial.
pub fn polynomial_report(n: u32) -> cdes::Result<String> {
    if n > POLY_LIMIT {
        return Err(cdes::Error::CapExceeded {
            what: "n",
            requested: n as u64,
            cap: POLY_LIMIT as u64,
        });
    }
    let g = gn(n)?;
    let terms: Vec<_> = g
        .terms()
        .map(|(m, c)| {
            let set = m.descent_set().map(|s| s.into_vec()).unwrap_or_default();
            json!({"set": set, "ydeg": m.ydeg(), "count": c.to_string()})
        })
        .collect();
    Ok(json!({"query": {"n": n}, "result": g.to_string(), "terms": terms}).to_string())
}

/// Tableaux count of a shape with its border-path set, cross-checked by
/// enumeration for small shapes.
pub fn tableaux_report(shape: &str) -> cdes::Result<String> {
    let shape: PartitionShape = shape.parse()?;
    let (n, set) = shape_to_descent_set(&shape);
    let count = count_tableaux_formula(&shape);
    let brute = if shape.boxes() <= FILLING_LIMIT {
        Some(brute_count_tableaux(&shape, FILLING_LIMIT)?.to_string())
    } else {
        None
    };
    Ok(json!({
        "query": {"shape": shape.parts()},
        "result": count.to_string(),
        "n": n,
        "set": set.elements(),
        "brute": brute,
    })
    .to_string())
}

fn to_js(r: cdes::Result<String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = countAllMethods)]
pub fn count_all_methods(n: u32, set: &str) -> Result<String, JsError> {
    to_js(count_report(n, set))
}

#[wasm_bindgen(js_name = descentPolynomial)]
pub fn descent_polynomial(n: u32) -> Result<String, JsError> {
    to_js(polynomial_report(n))
}

#[wasm_bindgen(js_name = tableauxCount)]
pub fn tableaux_count(shape: &str) -> Result<String, JsError> {
    to_js(tableaux_report(shape))
}
