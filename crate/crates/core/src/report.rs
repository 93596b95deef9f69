//! JSON reports: a versioned envelope (schema tag, command echo, SHA-256 of
//! the input) around per-command results. Every result key holding a
//! number carries an anchor naming the statement the number comes from.
//! Rationals appear as "p/q" strings; floats only as "approx:" strings.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::covering::{
    burillo_refinement, check_space, min_multiplicity_cover, parallel_fibers_check, parallel_fibers_check_from,
    CoveringError, FiniteMetricSpace, QuotientExample,
};
use crate::distortion::{log_metric_compare, DistortionCurve, DistortionError, GrowthReport};
use crate::exactmath::{fmt_rational, Q};
use crate::exprad::{
    cat0_verdict_with, conedim_with, exponential_radical, lift_probe, sample_pairs, section_data, ExpradError,
};
use crate::formats::FiberedFile;
use crate::liealg::{
    cartan_subalgebra, growth_class, is_nilpotent, is_solvable, nilpotency_class, nilradical, series, solvable_radical,
    triangulable_from, LieAlgebra, Subspace,
};
use crate::padic::{
    diagonal_norm_log, length, padic_conedim, ultranorm_log, HarnessReport, PadicContext, PadicError,
    PadicTriangularMatrix, SplitTorusData,
};

pub const SCHEMA: &str = "expcone-report/1";
/// Floats are printed with this many significant digits.
pub const APPROX_DIGITS: usize = 12;

pub mod anchors {
    pub const DIMENSION: &str = "dimension of the input";
    pub const SERIES: &str = "derived and lower central series (dimensions)";
    pub const RADICALS: &str = "solvable radical and nilradical (largest nilpotent ideal)";
    pub const CARTAN: &str = "Cartan subalgebra: nilpotent and self-normalizing, h + nilradical = g";
    pub const GROWTH: &str = "polynomial growth iff every ad-operator has purely imaginary spectrum";
    pub const EXP_RADICAL: &str = "exponential radical: smallest kernel onto a polynomial-growth quotient";
    pub const STABLE_TERM: &str = "exponential radical of a triangulable group is the stable lower central term";
    pub const CONE_DIMENSION: &str = "cone dimension = dim(G/R_exp G), in general georank + geodim";
    pub const GEORANK: &str = "georank: real rank plus central rank of the semisimple part";
    pub const GEODIM: &str = "geodim: dimension minus maximal compact dimension of the radical quotient";
    pub const NILSHADOW: &str = "nilshadow: nilpotent group of the same dimension shadowing a type R group";
    pub const CAT0: &str = "CAT(0) embedding iff the amenable radical of G/R_exp G is quasi-abelian";
    pub const SECTION: &str = "Cartan section of G -> G/N with BCH correction P of degree at most class(h)";
    pub const LIFT: &str = "lift estimate: |section(x)^-1 section(y)| <= a d(x,y) + log(1 + |P|)";
    pub const PADIC_NORM: &str = "ultranorm on unipotent triangular matrices and the derived length";
    pub const PADIC_HARNESS: &str =
        "ultranorm submultiplicative, inverse-invariant, conjugation bound, length subadditive, shrink";
    pub const PADIC_CONEDIM: &str = "cone dimension of a p-adic algebraic group = dimension of a maximal split torus";
    pub const DISTORTION: &str = "exponentially distorted subgroups carry a metric equivalent to log(1 + word metric)";
    pub const BALL_GROWTH: &str = "polynomial versus exponential growth of word balls";
    pub const COVERING: &str = "covering dimension: multiplicity of refinements minus one";
    pub const METRIC: &str = "finite metric space checks: triangle and ultrametric inequalities";
    pub const PARALLEL: &str = "metrically parallel fibers: d(x,z) = d(f(x),f(z)) with f(z) = f(y)";
    pub const REFINEMENT: &str =
        "fiberwise refinement keeps the base multiplicity with mesh below (3 lambda + 2) r_k";
}

#[derive(Clone, Debug)]
pub struct Report {
    command: String,
    digest: String,
    results: Map<String, Value>,
    anchors: BTreeMap<String, String>,
}

pub fn input_digest(input: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(input)))
}

pub fn approx(x: f64) -> String {
    format!("approx:{:.*e}", APPROX_DIGITS - 1, x)
}

/// Rewrites every non-integer JSON number as an "approx:" string.
fn mark_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => Value::String(approx(n.as_f64().unwrap())),
        Value::Array(a) => Value::Array(a.into_iter().map(mark_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, mark_floats(v))).collect()),
        other => other,
    }
}

fn to_value(v: impl Serialize) -> Value {
    // every payload here is plain data; serialization cannot fail
    mark_floats(serde_json::to_value(v).expect("serializable payload"))
}

impl Report {
    pub fn new(command: impl Into<String>, input: &[u8]) -> Self {
        Report {
            command: command.into(),
            digest: input_digest(input),
            results: Map::new(),
            anchors: BTreeMap::new(),
        }
    }

    /// A field without numeric content.
    pub fn put(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results.insert(key.to_string(), to_value(value));
        self
    }

    pub fn anchored(&mut self, key: &str, value: impl Serialize, anchor: &str) -> &mut Self {
        self.anchors.insert(key.to_string(), anchor.to_string());
        self.put(key, value)
    }

    pub fn results(&self) -> &Map<String, Value> {
        &self.results
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "input_digest": self.digest,
            "approx_precision": format!("{APPROX_DIGITS} significant digits"),
            "results": Value::Object(self.results.clone()),
            "anchors": self.anchors,
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("serializable report");
        s.push('\n');
        s
    }
}

fn is_rational_string(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    let mut parts = s.splitn(2, '/');
    let num = parts.next().unwrap_or("");
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    digits(num) && parts.next().is_none_or(digits)
}

fn has_numeric(v: &Value) -> bool {
    match v {
        Value::Number(_) => true,
        Value::String(s) => s.starts_with("approx:") || is_rational_string(s),
        Value::Array(a) => a.iter().any(has_numeric),
        Value::Object(o) => o.values().any(has_numeric),
        _ => false,
    }
}

fn has_raw_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(a) => a.iter().any(has_raw_float),
        Value::Object(o) => o.values().any(has_raw_float),
        _ => false,
    }
}

/// Schema check: envelope keys present, no bare floats, and every result
/// key with numeric content anchored.
pub fn validate_report(v: &Value) -> Result<(), String> {
    let o = v.as_object().ok_or("report is not an object")?;
    for key in ["schema", "version", "command", "input_digest", "approx_precision", "results", "anchors"] {
        if !o.contains_key(key) {
            return Err(format!("missing `{key}`"));
        }
    }
    if o["schema"] != SCHEMA {
        return Err(format!("unknown schema {}", o["schema"]));
    }
    let digest = o["input_digest"].as_str().unwrap_or("");
    if !digest.starts_with("sha256:") || digest.len() != 7 + 64 {
        return Err("malformed input digest".into());
    }
    let results = o["results"].as_object().ok_or("`results` is not an object")?;
    let anchors = o["anchors"].as_object().ok_or("`anchors` is not an object")?;
    if has_raw_float(&o["results"]) {
        return Err("bare floating-point number in results".into());
    }
    for (k, val) in results {
        if has_numeric(val) && !anchors.get(k).and_then(Value::as_str).is_some_and(|a| !a.is_empty()) {
            return Err(format!("numeric field `{k}` has no anchor"));
        }
    }
    Ok(())
}

fn describe_basis(g: &LieAlgebra, s: &Subspace) -> Vec<String> {
    s.basis().iter().map(|v| g.describe(v)).collect()
}

fn brackets(g: &LieAlgebra) -> Vec<String> {
    g.bracket_listing()
        .iter()
        .map(|e| format!("[{},{}] = {}", e.left, e.right, e.value))
        .collect()
}

/// "R^k" for abelian algebras, otherwise the bracket table.
fn shape(g: &LieAlgebra) -> Value {
    if g.is_abelian() {
        if g.dim() == 0 {
            json!("0")
        } else {
            json!(format!("R^{}", g.dim()))
        }
    } else {
        json!({ "dim": g.dim(), "basis": g.basis_names(), "brackets": brackets(g) })
    }
}

pub fn validate_report_for(command: &str, input: &[u8], g: &LieAlgebra) -> Report {
    let mut r = Report::new(command, input);
    r.put("valid", true).put("name", g.name()).put("basis", g.basis_names());
    r.anchored("dim", g.dim(), anchors::DIMENSION);
    r.put("brackets", brackets(g));
    r
}

pub fn analyze_report(command: &str, input: &[u8], g: &LieAlgebra) -> Result<Report, ExpradError> {
    let mut r = Report::new(command, input);
    r.put("name", g.name());
    r.anchored("dim", g.dim(), anchors::DIMENSION);
    let s = series(g);
    r.anchored(
        "series",
        json!({
            "derived": s.derived.iter().map(Subspace::dim).collect::<Vec<_>>(),
            "lower_central": s.lower_central.iter().map(Subspace::dim).collect::<Vec<_>>(),
            "stable_term": describe_basis(g, &s.stable_term),
            "solvable": is_solvable(g),
            "nilpotent": is_nilpotent(g),
            "nilpotency_class": nilpotency_class(g),
        }),
        anchors::SERIES,
    );
    let rad = solvable_radical(g);
    let nil = nilradical(g);
    r.anchored(
        "radicals",
        json!({
            "solvable_radical_dim": rad.dim(),
            "solvable_radical": describe_basis(g, &rad),
            "nilradical_dim": nil.dim(),
            "nilradical": describe_basis(g, &nil),
        }),
        anchors::RADICALS,
    );
    if is_solvable(g) {
        let data = cartan_subalgebra(g)?;
        let growth = growth_class(&data);
        r.anchored(
            "cartan",
            json!({
                "dim": data.cartan.dim(),
                "basis": describe_basis(g, &data.cartan),
                "regular_element": g.describe(&data.regular_element),
                "weight_components": data.components.iter().map(|c| c.space.dim()).collect::<Vec<_>>(),
            }),
            anchors::CARTAN,
        );
        r.anchored(
            "growth",
            json!({
                "class": growth.variant,
                "witness": growth.witness.as_ref().map(|w| json!({
                    "cartan_vector": g.describe(&w.cartan_vector),
                    "component": w.component,
                    "roots": {
                        "real_positive": w.certificate.real_positive,
                        "real_negative": w.certificate.real_negative,
                        "other_complex_pairs": w.certificate.other_complex_pairs,
                    },
                })),
            }),
            anchors::GROWTH,
        );
        r.put("triangulable", triangulable_from(&data));
        r.put("type_r", growth.is_polynomial());
    } else {
        r.put("cartan", Value::Null);
        r.put("growth", "not computed: the algebra is not solvable");
    }
    Ok(r)
}

pub fn exprad_report(command: &str, input: &[u8], g: &LieAlgebra) -> Result<Report, ExpradError> {
    let rep = exponential_radical(g)?;
    let mut r = Report::new(command, input);
    r.anchored(
        "radical",
        json!({ "dim": rep.radical.dim(), "basis": describe_basis(g, &rep.radical) }),
        if rep.method == crate::exprad::RadicalMethod::StableLcs {
            anchors::STABLE_TERM
        } else {
            anchors::EXP_RADICAL
        },
    );
    r.put("method", rep.method);
    r.anchored("quotient", shape(&rep.quotient), anchors::EXP_RADICAL);
    r.put("quotient_growth", rep.quotient_growth.variant);
    r.put("minimality_certified", rep.minimality_certified);
    Ok(r)
}

pub fn conedim_report(command: &str, input: &[u8], g: &LieAlgebra) -> Result<Report, ExpradError> {
    let rep = exponential_radical(g)?;
    let cd = conedim_with(g, &rep)?;
    let mut r = Report::new(command, input);
    r.anchored("value", cd.value, anchors::CONE_DIMENSION);
    r.put("route", cd.route);
    r.anchored("georank", cd.georank_part, anchors::GEORANK);
    r.anchored("geodim", cd.geodim_part, anchors::GEODIM);
    r.anchored("radical_dim", cd.radical_dim, anchors::EXP_RADICAL);
    r.anchored("dim", g.dim(), anchors::DIMENSION);
    r.anchored("quotient", shape(&rep.quotient), anchors::EXP_RADICAL);
    Ok(r)
}

pub fn cat0_report(command: &str, input: &[u8], g: &LieAlgebra) -> Result<Report, ExpradError> {
    let rep = exponential_radical(g)?;
    let v = cat0_verdict_with(&rep)?;
    let mut r = Report::new(command, input);
    r.put("embeds", v.embeds).put("reason", v.reason);
    r.anchored("quotient_nilshadow_dim", v.quotient_nilshadow_dim, anchors::NILSHADOW);
    r.anchored("quotient", shape(&rep.quotient), anchors::CAT0);
    Ok(r)
}

pub fn section_report(command: &str, input: &[u8], g: &LieAlgebra) -> Result<Report, ExpradError> {
    let sd = section_data(g)?;
    let names = sd.variable_names();
    let mut r = Report::new(command, input);
    let sub = |s: &Subspace| json!({ "dim": s.dim(), "basis": describe_basis(g, s) });
    r.anchored(
        "spaces",
        json!({ "n": sub(&sd.n), "h": sub(&sd.h), "v": sub(&sd.v), "w": sub(&sd.w) }),
        anchors::SECTION,
    );
    r.put(
        "correction",
        sd.bch_polynomial.iter().map(|p| p.render(&names)).collect::<Vec<_>>(),
    );
    r.anchored("degree_bound", sd.degree_bound, anchors::SECTION);
    r.anchored(
        "correction_degree",
        sd.bch_polynomial.iter().filter_map(|p| p.total_degree()).max().unwrap_or(0),
        anchors::SECTION,
    );
    r.put("split", sd.is_split());
    Ok(r)
}

pub fn liftprobe_report(
    command: &str,
    input: &[u8],
    g: &LieAlgebra,
    seed: u64,
    scales: &[u64],
    samples: usize,
) -> Result<Report, ExpradError> {
    let sd = section_data(g)?;
    let pairs = sample_pairs(&sd, seed, samples);
    let probe = lift_probe(&sd, &pairs, scales)?;
    let mut r = Report::new(command, input);
    r.anchored("seed", seed, anchors::LIFT).anchored("samples", samples, anchors::LIFT);
    r.anchored(
        "rows",
        probe
            .rows
            .iter()
            .map(|row| json!({ "scale": row.scale as u64, "ratio": row.ratio, "growth_term": row.growth_term }))
            .collect::<Vec<_>>(),
        anchors::LIFT,
    );
    r.anchored("max_ratio", probe.max_ratio, anchors::LIFT);
    r.anchored("decreasing_from", probe.decreasing_from.map(|s| s as u64), anchors::LIFT);
    Ok(r)
}

pub fn padic_check_report(command: &str, rep: &HarnessReport) -> Report {
    let input = format!("p={} n={} samples={} seed={}", rep.prime, rep.size, rep.samples, rep.seed);
    let mut r = Report::new(command, input.as_bytes());
    r.anchored("prime", rep.prime, anchors::PADIC_HARNESS)
        .anchored("size", rep.size, anchors::PADIC_HARNESS)
        .anchored("samples", rep.samples, anchors::PADIC_HARNESS)
        .anchored("seed", rep.seed, anchors::PADIC_HARNESS)
        .anchored("checks_run", rep.checks_run, anchors::PADIC_HARNESS)
        .anchored("violations", &rep.violations, anchors::PADIC_HARNESS);
    r.put("passed", rep.passed());
    r
}

pub fn padic_length_report(
    command: &str,
    input: &[u8],
    prime: u64,
    matrices: &[crate::exactmath::RationalMatrix],
) -> Result<Report, PadicError> {
    let mut rows = Vec::new();
    for m in matrices {
        let ctx = PadicContext::new(prime, m.rows())?;
        let g = PadicTriangularMatrix::new(ctx, m.clone())?;
        let (d, u) = g.decompose();
        rows.push(json!({
            "size": m.rows(),
            "diagonal_log_norm": diagonal_norm_log(&d).to_string(),
            "unipotent_log_norm": ultranorm_log(&u)?.to_string(),
            "length": fmt_rational(&length(&g)),
        }));
    }
    let mut r = Report::new(command, input);
    r.anchored("prime", prime, anchors::PADIC_NORM);
    r.anchored("matrices", rows, anchors::PADIC_NORM);
    Ok(r)
}

pub fn padic_conedim_report(command: &str, input: &[u8], data: &SplitTorusData) -> Result<Report, PadicError> {
    let value = padic_conedim(data)?;
    let mut r = Report::new(command, input);
    r.anchored("value", value, anchors::PADIC_CONEDIM);
    r.anchored("unipotent_dim", data.unipotent_basis.len(), anchors::PADIC_CONEDIM);
    r.put("compactly_generated", true);
    Ok(r)
}

pub fn distortion_report(command: &str, curve: &DistortionCurve) -> Result<Report, DistortionError> {
    let fit = log_metric_compare(curve)?;
    let input = format!("model={} radius={}", curve.model, curve.radius);
    let mut r = Report::new(command, input.as_bytes());
    r.put("model", &curve.model).put("subgroup", &curve.subgroup).put("size_measure", &curve.size_measure);
    r.anchored("radius", curve.radius, anchors::DISTORTION);
    r.anchored("rows", curve.rows.len(), anchors::DISTORTION);
    r.anchored("max_size", curve.max_size(), anchors::DISTORTION);
    r.anchored("envelope", curve.envelope(), anchors::DISTORTION);
    r.anchored("log_metric_fit", &fit, anchors::DISTORTION);
    Ok(r)
}

pub fn growth_report(command: &str, model: &str, radius: u32, g: &GrowthReport) -> Report {
    let input = format!("model={model} radius={radius}");
    let mut r = Report::new(command, input.as_bytes());
    r.put("model", model);
    r.anchored("radius", radius, anchors::BALL_GROWTH);
    r.anchored("ball_sizes", &g.ball_sizes, anchors::BALL_GROWTH);
    r.anchored("local_exponents", &g.local_exponents, anchors::BALL_GROWTH);
    r.anchored("fitted_exponent", g.fitted_exponent, anchors::BALL_GROWTH);
    r.anchored("last_ratio", g.last_ratio, anchors::BALL_GROWTH);
    r.put("verdict", g.verdict);
    r
}

pub fn covdim_report(command: &str, input: &[u8], space: &FiniteMetricSpace, scale: &Q) -> Result<Report, CoveringError> {
    let check = check_space(space, None)?;
    let cover = min_multiplicity_cover(space, scale)?;
    let mut r = Report::new(command, input);
    r.anchored("points", space.len(), anchors::METRIC);
    r.anchored("space", &check, anchors::METRIC);
    r.anchored("scale", fmt_rational(scale), anchors::COVERING);
    r.anchored("multiplicity", cover.multiplicity, anchors::COVERING);
    r.anchored("dimension", cover.multiplicity - 1, anchors::COVERING);
    r.anchored("mesh", fmt_rational(&cover.mesh), anchors::COVERING);
    r.put(
        "sets",
        cover
            .sets
            .iter()
            .map(|s| s.iter().map(|&i| space.labels()[i].clone()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    Ok(r)
}

pub fn burillo_report(command: &str, input: &[u8], file: &FiberedFile) -> Result<Report, CoveringError> {
    let par = parallel_fibers_check(&file.map);
    let rep = burillo_refinement(&file.map, &file.levels)?;
    let mut r = Report::new(command, input);
    r.anchored("lambda", fmt_rational(&rep.lambda), anchors::REFINEMENT);
    r.anchored("parallel", &par, anchors::PARALLEL);
    r.anchored("levels", &rep.levels, anchors::REFINEMENT);
    r.put("passed", rep.passed());
    Ok(r)
}

/// Parallel-fiber slack of a ball truncation of a group quotient, on the
/// interior ball (sources) and on the whole ball.
pub fn quotient_report(command: &str, model: &str, radius: u32, e: &QuotientExample) -> Report {
    let input = format!("model={model} radius={radius}");
    let inner = parallel_fibers_check_from(&e.map, &e.interior);
    let whole = parallel_fibers_check(&e.map);
    let mut r = Report::new(command, input.as_bytes());
    r.put("model", model);
    r.anchored("radius", radius, anchors::PARALLEL);
    r.anchored("points", e.map.x.len(), anchors::PARALLEL);
    r.anchored("interior_points", e.interior.len(), anchors::PARALLEL);
    r.anchored("interior", &inner, anchors::PARALLEL);
    r.anchored("whole_ball", &whole, anchors::PARALLEL);
    r
}
