//! The `incidence` command line: generators, analysis, partitions and the tuple
//! search, all reading and writing arrangement documents.

pub mod args;
pub mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::time::Instant;

use incidence_core::arrangement::{
    density_lower_bound, pencil, random_arrangement, spanned_lines, square_grid_points,
};
use incidence_core::document::{read_arrangement, ArrangementDocument, Metadata};
use incidence_core::geom::Point;
use incidence_core::partition::{partition, PartitionResult};
use incidence_core::pipeline::{
    balanced_size, inequality_audit, run_theorem1, PipelineConfig, Theorem1Outcome,
};
use incidence_core::svg::{render, Overlay};
use incidence_core::{grid_construction, Arrangement, Scalar};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use args::{AnalyzeArgs, InputArgs, OutputArgs, PartitionArgs, Source, Theorem1Args};
pub use args::{Cli, Command, Format};

/// Exit status for a search that ran to completion without finding a tuple.
pub const EXIT_NOT_FOUND: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed documents, impossible parameters; exit code 2.
    #[error("{0}")]
    Input(String),
    /// Output failures and broken invariants; exit code 1.
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn internal_err(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

/// Run one command and return its exit status.
pub fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Generate { source } => generate(source),
        Command::Analyze(a) => analyze(a),
        Command::Partition(a) => partition_cmd(a),
        Command::Theorem1(a) => theorem1(*a),
    }
}

fn load(input: &InputArgs) -> Result<Arrangement, CliError> {
    let text = match input.input.as_deref() {
        None => read_stdin()?,
        Some(p) if p == Path::new("-") => read_stdin()?,
        Some(p) => {
            fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?
        }
    };
    let (arr, _) = read_arrangement(&text).map_err(input_err)?;
    log::info!(
        "loaded {} points, {} lines, {} incidences",
        arr.n_points(),
        arr.n_lines(),
        arr.n_incidences()
    );
    Ok(arr)
}

fn read_stdin() -> Result<String, CliError> {
    let mut text = String::new();
    io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
    Ok(text)
}

fn emit(out: &OutputArgs, bytes: &[u8]) -> Result<(), CliError> {
    match &out.output {
        Some(p) => fs::write(p, bytes).map_err(|e| internal_err(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(bytes).map_err(internal_err),
    }
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(internal_err)?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn csv_bytes<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(internal_err)?;
    }
    w.into_inner().map_err(internal_err)
}

fn generate(source: Source) -> Result<u8, CliError> {
    let (arr, meta, out) = match source {
        Source::Grid { n, out } => (
            grid_construction(n).map_err(input_err)?,
            meta("grid", json!({ "n": n })),
            out,
        ),
        Source::Spanned { side, input, out } => {
            let (points, params) = match side {
                Some(side) => (square_grid_points(side), json!({ "side": side })),
                None => {
                    let arr = load(&InputArgs { input })?;
                    (arr.points().to_vec(), json!({}))
                }
            };
            (
                spanned_lines(points).map_err(input_err)?,
                meta("spanned", params),
                out,
            )
        }
        Source::Random {
            seed,
            n_points,
            n_lines,
            bound,
            out,
        } => (
            random_arrangement(seed, n_points, n_lines, bound).map_err(input_err)?,
            meta(
                "random",
                json!({ "seed": seed, "n_points": n_points, "n_lines": n_lines, "bound": bound }),
            ),
            out,
        ),
        Source::Pencil {
            n,
            without_center,
            out,
        } => (
            pencil(&Point::from_ints(0, 0), n, !without_center),
            meta(
                "pencil",
                json!({ "n": n, "include_center": !without_center }),
            ),
            out,
        ),
    };
    log::info!(
        "generated {} points, {} lines",
        arr.n_points(),
        arr.n_lines()
    );
    let bytes = match out.format {
        Format::Json => {
            let mut s = ArrangementDocument::from_arrangement(&arr, Some(meta)).to_json_pretty();
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let points = arr.points().iter().map(|p| {
                [
                    "point".to_string(),
                    p.x.to_string(),
                    p.y.to_string(),
                    String::new(),
                ]
            });
            let lines = arr.lines().iter().map(|l| {
                [
                    "line".to_string(),
                    l.a().to_string(),
                    l.b().to_string(),
                    l.c().to_string(),
                ]
            });
            let header = std::iter::once(["kind", "v1", "v2", "v3"].map(String::from));
            csv_bytes(header.chain(points).chain(lines))?
        }
    };
    emit(&out, &bytes)?;
    Ok(0)
}

fn meta(generator: &str, params: serde_json::Value) -> Metadata {
    let params = match params {
        serde_json::Value::Object(m) => m.into_iter().collect(),
        _ => Default::default(),
    };
    Metadata {
        generator: generator.to_string(),
        params,
    }
}

fn analyze(a: AnalyzeArgs) -> Result<u8, CliError> {
    let arr = load(&a.input)?;
    let rep = report::analyze(&arr, &a.constant, a.monitor);
    if let Some(m) = &rep.monitor {
        if !m.conjecture_holds {
            log::warn!(
                "triangle count {} exceeds |P|·|L| = {}",
                m.triangles,
                m.bound
            );
        }
    }
    let bytes = match a.out.format {
        Format::Json => json_bytes(&rep)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                m: usize,
                rich_count: usize,
                bound: String,
                within_bound: bool,
            }
            csv_bytes(arr.st_bound_report(&a.constant).iter().map(|r| Row {
                m: r.m,
                rich_count: r.rich_count,
                bound: r.bound.to_string(),
                within_bound: r.within_bound,
            }))?
        }
    };
    emit(&a.out, &bytes)?;
    Ok(0)
}

fn do_partition(arr: &Arrangement, r: usize) -> Result<PartitionResult, CliError> {
    partition(arr.points(), r).map_err(input_err)
}

fn write_svg(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| internal_err(format!("{}: {e}", path.display())))
}

fn partition_cmd(a: PartitionArgs) -> Result<u8, CliError> {
    let arr = load(&a.input)?;
    let pr = do_partition(&arr, a.r)?;
    log::info!("{} cells for r = {}", pr.t(), a.r);
    if let Some(path) = &a.svg {
        let overlay = Overlay {
            partition: Some(&pr),
            lines: (0..arr.n_lines().min(a.svg_lines)).collect(),
            certificate: None,
        };
        write_svg(path, &render(&arr, &overlay, 800, 600))?;
    }
    let rep = report::partition(&arr, &pr);
    if !(rep.partition.covers && rep.partition.regions_contain_members) {
        return Err(CliError::Internal(
            "partition failed its own verification".into(),
        ));
    }
    let bytes = match a.out.format {
        Format::Json => json_bytes(&rep)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                cell: usize,
                size: usize,
                x_min: String,
                x_max: String,
                y_min: String,
                y_max: String,
                points: String,
            }
            let bound =
                |v: &Option<Scalar>| v.as_ref().map(ToString::to_string).unwrap_or_default();
            csv_bytes(pr.cells.iter().enumerate().map(|(i, c)| {
                Row {
                    cell: i,
                    size: c.point_indices.len(),
                    x_min: bound(&c.region.x_min),
                    x_max: bound(&c.region.x_max),
                    y_min: bound(&c.region.y_min),
                    y_max: bound(&c.region.y_max),
                    points: c
                        .point_indices
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(";"),
                }
            }))?
        }
    };
    emit(&a.out, &bytes)?;
    Ok(0)
}

/// Config from the flags; `c` is measured from the input when not given.
pub fn theorem1_config(
    arr: &Arrangement,
    a: &Theorem1Args,
) -> Result<(PipelineConfig, bool), CliError> {
    let measured = a.c.is_none();
    let c =
        a.c.clone()
            .unwrap_or_else(|| density_lower_bound(arr.n_incidences(), balanced_size(arr), 1000));
    let mut cfg = PipelineConfig::new(a.k, c).map_err(input_err)?;
    if let Some(beta) = &a.beta {
        cfg.beta_k = beta.clone();
    }
    if let Some(t) = a.threshold {
        cfg.multiplicity_threshold = t;
    }
    if let Some(s) = &a.slack {
        cfg.rich_threshold_slack = s.clone();
    }
    if let Some(f) = a.fallback_cap {
        cfg.fallback_cap = f;
    }
    if let Some(m) = a.max_tuples {
        cfg.max_tuples_per_cell = m;
    }
    cfg.r_override = a.r;
    cfg.validate().map_err(input_err)?;
    Ok((cfg, measured))
}

fn theorem1(a: Theorem1Args) -> Result<u8, CliError> {
    let arr = load(&a.input)?;
    let (cfg, measured) = theorem1_config(&arr, &a)?;
    log::info!("k = {}, c = {}, beta = {}", cfg.k, cfg.c, cfg.beta_k);
    let start = Instant::now();
    let outcome = run_theorem1(&arr, &cfg).map_err(internal_err)?;
    let elapsed = start.elapsed().as_millis();
    let trace = outcome.trace();
    log::info!(
        "r = {}, t = {}, {} cells tried",
        trace.r,
        trace.t,
        trace.attempts.len()
    );

    let pr = if trace.r > 0 {
        Some(do_partition(&arr, trace.r)?)
    } else {
        None
    };
    let audit = pr.as_ref().map(|pr| inequality_audit(&arr, pr, &cfg));
    if let Some(path) = &a.svg {
        let overlay = Overlay {
            partition: pr.as_ref(),
            lines: Vec::new(),
            certificate: outcome.certificate(),
        };
        write_svg(path, &render(&arr, &overlay, 800, 600))?;
    }
    let rep = report::theorem1(report::Theorem1Inputs {
        arr: &arr,
        cfg: &cfg,
        outcome: &outcome,
        audit: audit.as_ref(),
        c_measured: measured,
        seed: a.seed,
        duration_ms: a.timing.then_some(elapsed),
    });
    let bytes = match a.out.format {
        Format::Json => json_bytes(&rep)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                position: usize,
                index: usize,
                x: String,
                y: String,
            }
            let rows: Vec<Row> = outcome
                .certificate()
                .map(|c| {
                    c.point_indices
                        .iter()
                        .zip(&c.points)
                        .enumerate()
                        .map(|(position, (&index, p))| Row {
                            position,
                            index,
                            x: p.x.to_string(),
                            y: p.y.to_string(),
                        })
                        .collect()
                })
                .unwrap_or_default();
            if rows.is_empty() {
                b"position,index,x,y\n".to_vec()
            } else {
                csv_bytes(rows)?
            }
        }
    };
    emit(&a.out, &bytes)?;
    Ok(match outcome {
        Theorem1Outcome::Found { .. } => 0,
        Theorem1Outcome::NotFound { .. } => EXIT_NOT_FOUND,
    })
}
