//! Browser bindings: three operations, each returning text (JSON or CSV).
//! Errors come back as JS exceptions carrying the message.

use expcone_core::distortion::{build_model, cayley_ball, distortion_curve};
use expcone_core::formats::{parse_algebra, parse_matrices, AlgebraInputError};
use expcone_core::report;
use wasm_bindgen::prelude::*;

// Ball enumeration grows exponentially; keep the page responsive.
const MAX_RADIUS: u32 = 16;

/// Cone-dimension report for an algebra given in the text format.
pub fn conedim_json(text: &str) -> Result<String, String> {
    let g = parse_algebra(text).map_err(|e| match e {
        AlgebraInputError::Parse(p) => format!("line {}, column {}: {}", p.line, p.column, p.message),
        AlgebraInputError::Lie(l) => l.to_string(),
    })?;
    let r = report::conedim_report("conedim <input>", text.as_bytes(), &g).map_err(|e| e.to_string())?;
    Ok(r.to_json())
}

/// Distortion CSV (`intrinsic_size,ambient_length`) for a group model.
pub fn distortion_csv(model: &str, radius: u32) -> Result<String, String> {
    if radius > MAX_RADIUS {
        return Err(format!("radius is limited to {MAX_RADIUS} here"));
    }
    let m = build_model(model).map_err(|e| e.to_string())?;
    let table = cayley_ball(&m, radius).map_err(|e| e.to_string())?;
    Ok(distortion_curve(&m, &table).to_csv())
}

/// p-adic norms and lengths of `matrix:` lines.
pub fn padic_length_json(prime: u64, text: &str) -> Result<String, String> {
    let mats = parse_matrices(text).map_err(|p| format!("line {}, column {}: {}", p.line, p.column, p.message))?;
    let r = report::padic_length_report(&format!("padic length --prime {prime} <input>"), text.as_bytes(), prime, &mats)
        .map_err(|e| e.to_string())?;
    Ok(r.to_json())
}

#[wasm_bindgen]
pub fn conedim(text: &str) -> Result<String, JsError> {
    conedim_json(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn distortion(model: &str, radius: u32) -> Result<String, JsError> {
    distortion_csv(model, radius).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn padic_length(prime: u32, text: &str) -> Result<String, JsError> {
    padic_length_json(prime as u64, text).map_err(|e| JsError::new(&e))
}
