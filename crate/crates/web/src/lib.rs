//! Browser bindings for a few of the core computations. Each export returns a JSON string.

use num_complex::Complex64;
use serde_json::json;
use taut_circles::cartan::TautFamily;
use taut_circles::rational::fmt as rat;
use taut_circles::{e2moduli, gv, seifert};
use wasm_bindgen::prelude::*;

fn seifert_json(tuple: &str) -> taut_circles::Result<String> {
    let s = seifert::parse_seifert(tuple)?;
    let v = json!({
        "tuple": s.to_string(),
        "chi_orb": rat(&seifert::chi_orb(&s)),
        "euler_number": rat(&seifert::euler_number(&s)),
        "fibre_index": seifert::fibre_index(&s).ok().map(|r| rat(&r)),
        "admissible": seifert::admits_sl2(&s),
        "det_c": seifert::det_c(&s).to_string(),
        "h1": seifert::h1(&s).to_string(),
    });
    Ok(serde_json::to_string_pretty(&v).expect("serializes"))
}

fn gv_json(re: f64, im: f64, resolution: usize) -> taut_circles::Result<String> {
    let fam = TautFamily::A(Complex64::new(re, im));
    let e = gv::gv_integral(&fam, resolution, &gv::GvOptions::default())?;
    let v = json!({
        "value": [e.value.re, e.value.im],
        "closed_form": [e.closed_form.re, e.closed_form.im],
        "rel_err": e.rel_err,
        "resolution": e.resolution,
        "moduli_value": gv::moduli_value_from_gv(e.closed_form),
    });
    Ok(serde_json::to_string_pretty(&v).expect("serializes"))
}

fn bundles_json() -> taut_circles::Result<String> {
    let rows = e2moduli::PERIODS
        .iter()
        .map(|&k| {
            Ok(json!({
                "k": k,
                "h1": e2moduli::h1(k)?.to_string(),
                "moduli": e2moduli::moduli_descriptor(k)?,
            }))
        })
        .collect::<taut_circles::Result<Vec<_>>>()?;
    Ok(serde_json::to_string_pretty(&rows).expect("serializes"))
}

fn js_err(e: taut_circles::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Invariants of a Seifert tuple such as `g=0 b=-2 (2,1) (3,2) (7,6)`.
#[wasm_bindgen]
pub fn seifert_invariants(tuple: &str) -> Result<String, JsValue> {
    seifert_json(tuple).map_err(js_err)
}

/// Godbillon–Vey quadrature for the `a` family at the given grid resolution.
#[wasm_bindgen]
pub fn gv_quadrature(re: f64, im: f64, resolution: usize) -> Result<String, JsValue> {
    gv_json(re, im, resolution).map_err(js_err)
}

/// Homology and moduli of the periodic torus bundles.
#[wasm_bindgen]
pub fn torus_bundles() -> Result<String, JsValue> {
    bundles_json().map_err(js_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exports_produce_json() {
        let s: serde_json::Value = serde_json::from_str(&seifert_json("g=0 b=-2 (2,1) (3,2) (7,6)").unwrap()).unwrap();
        assert_eq!(s["h1"], "0");
        let g: serde_json::Value = serde_json::from_str(&gv_json(0.5, 0.0, 16).unwrap()).unwrap();
        assert!(g["rel_err"].as_f64().unwrap() < 0.02);
        let b: serde_json::Value = serde_json::from_str(&bundles_json().unwrap()).unwrap();
        assert_eq!(b.as_array().unwrap().len(), e2moduli::PERIODS.len());
        assert!(seifert_json("g=0 b=1 (2,4)").is_err());
        assert!(gv_json(1.5, 0.0, 16).is_err());
    }
}
