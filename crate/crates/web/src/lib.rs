//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export takes a ring definition (or the name of a built-in space) and
//! returns JSON text; errors come back as a thrown string.

use std::sync::Arc;

use serde_json::json;
use wasm_bindgen::prelude::*;

use cohring::atlas::builtin_ring;
use cohring::charclass::gysin_sphere_bundle;
use cohring::dsl::parse_ring_dsl;
use cohring::gring::{FundamentalClass, GradedRingPresentation};

/// A built-in space name (`P`, `Q`, `R`, `Gr2R9`) or a `ring { .. }` block.
fn load(source: &str) -> Result<Arc<GradedRingPresentation>, String> {
    let trimmed = source.trim();
    if trimmed.starts_with("ring") {
        parse_ring_dsl(trimmed).map(Arc::new).map_err(|e| e.to_string())
    } else {
        builtin_ring(trimmed).map_err(|e| e.to_string())
    }
}

pub fn reduce_json(source: &str, polynomial: &str) -> Result<String, String> {
    let ring = load(source)?;
    let p = ring.parse(polynomial).map_err(|e| e.to_string())?;
    let reduced = ring.reduce(&p).map_err(|e| e.to_string())?;
    let zero = ring.is_zero_class(&p).map_err(|e| e.to_string())?;
    Ok(json!({ "ring": ring.to_string(), "normal_form": reduced.to_string(), "is_zero": zero }).to_string())
}

/// Ranks in every degree and, when the top piece is `Z`, the values of the
/// top-degree monomials.
pub fn betti_pairing_json(source: &str) -> Result<String, String> {
    let ring = load(source)?;
    let top = ring.top_degree().ok_or("the ring needs a `top` degree")?;
    let ranks = ring.poincare_series(top);
    let values = match ring.graded_basis(top).basis.first() {
        Some(b) if ring.rank(top) == 1 => {
            let fc = FundamentalClass::new(ring.clone(), b).map_err(|e| e.to_string())?;
            let ctx = ring.context();
            fc.monomial_values()
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|(m, v)| json!({ "monomial": m.display(ctx), "value": v.to_string() }))
                .collect()
        }
        _ => Vec::new(),
    };
    Ok(json!({ "ring": ring.to_string(), "top": top, "ranks": ranks, "top_values": values }).to_string())
}

pub fn gysin_json(source: &str, euler: &str, fibre_dim: u32) -> Result<String, String> {
    let ring = load(source)?;
    let e = ring.parse(euler).map_err(|e| e.to_string())?;
    let table = gysin_sphere_bundle(&ring, &e, fibre_dim).map_err(|e| e.to_string())?;
    let rows: Vec<_> = table
        .iter()
        .map(|g| {
            json!({
                "degree": g.degree,
                "group": g.group.as_ref().map(|x| x.to_string()),
                "cokernel": g.cokernel.to_string(),
                "kernel": g.kernel.to_string(),
            })
        })
        .collect();
    Ok(json!({ "ring": ring.to_string(), "rows": rows }).to_string())
}

#[wasm_bindgen]
pub fn reduce(source: &str, polynomial: &str) -> Result<String, JsValue> {
    reduce_json(source, polynomial).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn betti_pairing(source: &str) -> Result<String, JsValue> {
    betti_pairing_json(source).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn gysin(source: &str, euler: &str, fibre_dim: u32) -> Result<String, JsValue> {
    gysin_json(source, euler, fibre_dim).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn reduces_in_builtin_and_defined_rings() {
        assert_eq!(parse(&reduce_json("R", "t^9").unwrap())["normal_form"], "3*t*w^2");
        let v = parse(&reduce_json("ring X { gen x:2; rel x^3; top 4; }", "x^3 + x").unwrap());
        assert_eq!(v["normal_form"], "x");
        assert!(reduce_json("T", "t").is_err());
        assert!(reduce_json("R", "t^").is_err());
    }

    #[test]
    fn quadric_table() {
        let v = parse(&betti_pairing_json("Q").unwrap());
        let values: Vec<&str> = v["top_values"].as_array().unwrap().iter().map(|x| x["value"].as_str().unwrap()).collect();
        assert_eq!(values, ["78", "45", "26", "15"]);
        assert_eq!(v["ranks"].as_array().unwrap().iter().filter_map(Value::as_u64).sum::<u64>(), 24);
    }

    #[test]
    fn sphere_bundle_over_p() {
        let v = parse(&gysin_json("P", "3*a^2", 15).unwrap());
        let nonzero: Vec<String> = v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|r| r["group"] != "0")
            .map(|r| format!("{}:{}", r["degree"], r["group"].as_str().unwrap()))
            .collect();
        assert_eq!(nonzero, ["0:Z", "8:Z", "16:Z/3", "23:Z", "31:Z"]);
    }
}
