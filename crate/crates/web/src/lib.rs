//! wasm bindings for the demo page in `www/`. Every export takes and returns strings
//! (arrangement documents in, JSON with an embedded SVG out) so the page needs no
//! glue beyond `JSON.parse`.

use incidence_core::arrangement::{density_lower_bound, random_arrangement};
use incidence_core::document::{
    read_arrangement, ArrangementDocument, CertificateView, MonitorView, PartitionView, StatsView,
    TraceView,
};
use incidence_core::partition::{crossing_profile, partition};
use incidence_core::pipeline::{balanced_size, run_theorem1, PipelineConfig};
use incidence_core::svg::{render, Overlay};
use incidence_core::{grid_construction, Arrangement};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const WIDTH: u32 = 640;
const HEIGHT: u32 = 480;
/// Keeps the page responsive; the native CLI has no such limit.
const MAX_POINTS: usize = 5000;

fn load(doc: &str) -> Result<Arrangement, String> {
    let (arr, _) = read_arrangement(doc).map_err(|e| e.to_string())?;
    if arr.n_points() > MAX_POINTS {
        return Err(format!(
            "{} points; the demo accepts at most {MAX_POINTS}",
            arr.n_points()
        ));
    }
    Ok(arr)
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

pub fn grid_document(n: u32) -> Result<String, String> {
    let arr = grid_construction(n).map_err(|e| e.to_string())?;
    Ok(ArrangementDocument::from_arrangement(&arr, None).to_json_pretty())
}

pub fn random_document(
    seed: u64,
    n_points: usize,
    n_lines: usize,
    bound: u32,
) -> Result<String, String> {
    let arr = random_arrangement(seed, n_points, n_lines, bound).map_err(|e| e.to_string())?;
    Ok(ArrangementDocument::from_arrangement(&arr, None).to_json_pretty())
}

#[derive(Serialize)]
struct AnalyzeOut {
    stats: StatsView,
    density: String,
    monitor: MonitorView,
    svg: String,
}

pub fn analyze_document(doc: &str) -> Result<String, String> {
    let arr = load(doc)?;
    let lines = (0..arr.n_lines()).collect();
    to_json(&AnalyzeOut {
        stats: (&arr.stats()).into(),
        density: density_lower_bound(arr.n_incidences(), balanced_size(&arr), 1000).to_string(),
        monitor: (&incidence_core::clique::de_caen_szekely_monitor(&arr)).into(),
        svg: render(
            &arr,
            &Overlay {
                lines,
                ..Overlay::default()
            },
            WIDTH,
            HEIGHT,
        ),
    })
}

#[derive(Serialize)]
struct PartitionOut {
    partition: PartitionView,
    max_crossing: usize,
    mean_crossing: String,
    per_line: Vec<usize>,
    svg: String,
}

pub fn partition_document(doc: &str, r: usize, drawn_lines: usize) -> Result<String, String> {
    let arr = load(doc)?;
    let pr = partition(arr.points(), r).map_err(|e| e.to_string())?;
    let profile = crossing_profile(&pr, arr.lines());
    let overlay = Overlay {
        partition: Some(&pr),
        lines: (0..arr.n_lines().min(drawn_lines)).collect(),
        certificate: None,
    };
    to_json(&PartitionOut {
        partition: PartitionView::new(&pr, &pr.verify(arr.points())),
        max_crossing: profile.max,
        mean_crossing: profile.mean.to_string(),
        per_line: profile.per_line,
        svg: render(&arr, &overlay, WIDTH, HEIGHT),
    })
}

#[derive(Serialize)]
struct Theorem1Out {
    status: &'static str,
    c: String,
    trace: TraceView,
    certificate: Option<CertificateView>,
    svg: String,
}

/// Tuple search with `c` measured from the document.
pub fn theorem1_document(doc: &str, k: usize) -> Result<String, String> {
    let arr = load(doc)?;
    let c = density_lower_bound(arr.n_incidences(), balanced_size(&arr), 1000);
    let cfg = PipelineConfig::new(k, c.clone()).map_err(|e| e.to_string())?;
    let outcome = run_theorem1(&arr, &cfg).map_err(|e| e.to_string())?;
    let trace = outcome.trace();
    let pr = if trace.r > 0 {
        Some(partition(arr.points(), trace.r).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let cert = outcome.certificate();
    let overlay = Overlay {
        partition: pr.as_ref(),
        lines: Vec::new(),
        certificate: cert,
    };
    to_json(&Theorem1Out {
        status: if cert.is_some() { "found" } else { "not_found" },
        c: c.to_string(),
        trace: trace.into(),
        certificate: cert.map(|c| CertificateView::new(&arr, c)),
        svg: render(&arr, &overlay, WIDTH, HEIGHT),
    })
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = gridDocument)]
pub fn grid_document_js(n: u32) -> Result<String, JsError> {
    js(grid_document(n))
}

#[wasm_bindgen(js_name = randomDocument)]
pub fn random_document_js(
    seed: u32,
    n_points: u32,
    n_lines: u32,
    bound: u32,
) -> Result<String, JsError> {
    js(random_document(
        u64::from(seed),
        n_points as usize,
        n_lines as usize,
        bound,
    ))
}

#[wasm_bindgen(js_name = analyze)]
pub fn analyze_js(doc: &str) -> Result<String, JsError> {
    js(analyze_document(doc))
}

#[wasm_bindgen(js_name = partition)]
pub fn partition_js(doc: &str, r: u32, drawn_lines: u32) -> Result<String, JsError> {
    js(partition_document(doc, r as usize, drawn_lines as usize))
}

#[wasm_bindgen(js_name = theorem1)]
pub fn theorem1_js(doc: &str, k: u32) -> Result<String, JsError> {
    js(theorem1_document(doc, k as usize))
}
