//! Browser bindings: knitting tables, diamond cokernels and path-sign checks,
//! each returned as a `meshknit/1` JSON artifact.

use meshknit::mesh::{diamond_cokernel, knit_layers, path_sign_check};
use meshknit::quiver::QuiverDescription;
use meshknit::report::{self, Format, RunConfig};
use meshknit::{Error, FieldSpec, QuiverKind, TranslationQuiver};
use wasm_bindgen::prelude::*;

fn quiver(spec: &str, window: u32) -> Result<TranslationQuiver, Error> {
    let kind: QuiverKind = spec.parse()?;
    QuiverDescription { kind, window }.build()
}

fn config(command: &str, field: FieldSpec, window: u32, k_max: u32) -> Result<RunConfig, Error> {
    RunConfig::new(command, field, window, k_max, Format::Json, 0)
}

pub fn knit_json(quiver_spec: &str, vertex: &str, k_max: u32, window: u32) -> Result<String, Error> {
    let q = quiver(quiver_spec, window)?;
    let v = q.parse_vertex(vertex)?;
    let table = knit_layers(&q, &v, k_max, window)?;
    let cfg = config("knit", FieldSpec::Rationals, window, k_max)?.param("quiver", q.kind()).param("vertex", v);
    Ok(report::render(&cfg, &report::layer_table(&table)))
}

pub fn diamond_json(n: u32, vertex: &str, window: u32) -> Result<String, Error> {
    let q = quiver("dihedral", window)?;
    let v = q.parse_vertex(vertex)?;
    let table = diamond_cokernel(&q, &v, n, window, FieldSpec::Rationals)?;
    let cfg = config("diamond", FieldSpec::Rationals, window, 0)?.param("n", n).param("vertex", v);
    Ok(report::render(&cfg, &report::layer_table(&table)))
}

pub fn sign_check_json(from: &str, to: &str, window: u32) -> Result<String, Error> {
    let q = quiver("dihedral", window)?;
    let (u, m) = (q.parse_vertex(from)?, q.parse_vertex(to)?);
    let rep = path_sign_check(&q, &u, &m, None, window, FieldSpec::Rationals)?;
    let cfg = config("signcheck", FieldSpec::Rationals, window, 0)?.param("from", u).param("to", m);
    Ok(report::render(&cfg, &report::sign_report(&rep)))
}

fn js(r: Result<String, Error>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen]
pub fn knit(quiver_spec: &str, vertex: &str, k_max: u32, window: u32) -> Result<String, JsValue> {
    js(knit_json(quiver_spec, vertex, k_max, window))
}

#[wasm_bindgen]
pub fn diamond(n: u32, vertex: &str, window: u32) -> Result<String, JsValue> {
    js(diamond_json(n, vertex, window))
}

#[wasm_bindgen]
pub fn sign_check(from: &str, to: &str, window: u32) -> Result<String, JsValue> {
    js(sign_check_json(from, to, window))
}
