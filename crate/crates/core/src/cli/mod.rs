//! The `latticeforge` command-line front end.
//!
//! Every subcommand writes one JSON [`RunReport`] to standard output and a
//! short human-readable summary to standard error. Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, or the property holds |
//! | 1 | a mathematically negative result |
//! | 2 | usage or input error |
//! | 3 | a resource cap was hit |
//! | 4 | an internal invariant failed (a bug) |

pub mod io;
pub mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::Error;
use crate::geometry::{self, LatticePolytope, LatticeSimplex, RatPoint};
use crate::sumset::{self, IdpReport, PointSet};
use crate::unimodular::{
    self, find_ell, find_unimodular_triangulation, verify_cover, CertificateOutcome, CoverStatus,
    SimplicialCover,
};

use io::{CoverFile, InputError, Loaded, PolytopeFile};
pub use report::RunReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "LATTICEFORGE_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "latticeforge",
    version,
    about = "Exact checks of the integer decomposition property h(P ∩ Z^n) = (hP) ∩ Z^n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Polytope JSON file: {"dim": n, "vertices": [[...], ...], "name": "..."}
    file: Option<PathBuf>,
    /// Built-in polytope instead of a file: std-simplex-N, a1, a2, cube-N, square
    #[arg(long, conflicts_with = "file")]
    example: Option<String>,
}

#[derive(Args, Debug)]
struct Search {
    /// Number of point orders to try (lexicographic first, then shuffles)
    #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..))]
    attempts: u64,
    /// Seed for the shuffled orders
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice index, unimodularity and HNF diagonal of a simplex
    ///
    /// FILE lists exactly n+1 vertices, or is a cover file whose cells are tested.
    UnimodularTest {
        #[command(flatten)]
        input: Input,
        /// Test only this cell of a cover file
        #[arg(long)]
        cell: Option<usize>,
    },
    /// Brute-force comparison of h(P ∩ Z^n) with (hP) ∩ Z^n
    IdpCheck {
        #[command(flatten)]
        input: Input,
        /// Check a single h
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..),
              required_unless_present = "h_max", conflicts_with = "h_max")]
        h: Option<u64>,
        /// Check every h from 1 to this value
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        h_max: Option<u64>,
    },
    /// Write a lattice point of hP as a sum of h lattice points of P
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Comma-separated coordinates, e.g. 1,1
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        h: u64,
        /// Cover JSON file to use instead of searching for a triangulation
        #[arg(long)]
        cover: Option<PathBuf>,
        #[command(flatten)]
        search: Search,
    },
    /// Search for a unimodular triangulation, or verify a given cover
    Triangulate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        search: Search,
        /// Verify this cover file against the polytope instead of searching
        #[arg(long)]
        verify: Option<PathBuf>,
        /// Include the found triangulation as a cover file in the report
        #[arg(long)]
        emit_cover: bool,
    },
    /// Smallest dilation factor whose dilate has a unimodular triangulation
    FindEll {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        ell_max: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        h_max: u64,
        #[command(flatten)]
        search: Search,
    },
}

/// What one invocation printed and returned.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A subcommand's payload, exit code and summary.
struct Done {
    result: Value,
    code: i32,
    summary: String,
}

enum Failure {
    Input(String),
    Lib(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Lib(e) if e.is_resource() => EXIT_RESOURCE,
            Failure::Lib(Error::Internal(_)) => EXIT_INTERNAL,
            Failure::Lib(_) => EXIT_INPUT,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Input(m) => json!({ "error": "input", "message": m }),
            Failure::Lib(e) => {
                let kind = match self.code() {
                    EXIT_RESOURCE => "resource",
                    EXIT_INTERNAL => "internal",
                    _ => "input",
                };
                let mut v = json!({ "error": kind, "message": e.to_string() });
                if let Some(h) = offending_h(e) {
                    v["h"] = json!(h);
                }
                if let Error::AtEll { ell, .. } = e {
                    v["ell"] = json!(ell);
                }
                v
            }
        }
    }
}

fn offending_h(e: &Error) -> Option<u64> {
    match e {
        Error::ResourceAt { h, .. } => Some(*h),
        Error::AtEll { source, .. } => offending_h(source),
        _ => None,
    }
}

/// Sizes the global thread pool from [`THREADS_ENV`], if set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let echo = args.iter().skip(1).cloned().collect();
    let start = Instant::now();
    let mut digest = String::new();
    let (result, code, summary) = match dispatch(cli.command, &mut digest) {
        Ok(d) => (d.result, d.code, d.summary),
        Err(f) => {
            let msg = match &f {
                Failure::Input(m) => m.clone(),
                Failure::Lib(e) => e.to_string(),
            };
            (f.to_json(), f.code(), format!("error: {msg}\n"))
        }
    };
    let mut report = RunReport::new(echo, digest, code, result);
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    let mut stdout = report.to_json();
    stdout.push('\n');
    Outcome {
        code,
        stdout,
        stderr: summary,
    }
}

fn dispatch(cmd: Command, digest: &mut String) -> Result<Done, Failure> {
    match cmd {
        Command::UnimodularTest { input, cell } => unimodular_test(&input, cell, digest),
        Command::IdpCheck { input, h, h_max } => {
            let file = load(&input, digest)?;
            idp_check(&file.value, h, h_max)
        }
        Command::Decompose {
            input,
            point,
            h,
            cover,
            search,
        } => {
            let file = load_with_cover(&input, cover.as_deref(), digest)?;
            decompose(&file.0, &point, h, file.1.as_ref(), &search)
        }
        Command::Triangulate {
            input,
            search,
            verify,
            emit_cover,
        } => {
            let file = load_with_cover(&input, verify.as_deref(), digest)?;
            match file.1 {
                Some(c) => verify_cover_cmd(&file.0, &c),
                None => triangulate(&file.0, &search, emit_cover),
            }
        }
        Command::FindEll {
            input,
            ell_max,
            h_max,
            search,
        } => {
            let file = load(&input, digest)?;
            find_ell_cmd(&file.value, ell_max, h_max, &search)
        }
    }
}

fn load(input: &Input, digest: &mut String) -> Result<Loaded<PolytopeFile>, Failure> {
    let file = io::load_polytope(input.file.as_deref(), input.example.as_deref())?;
    *digest = io::digest([file.bytes.as_slice()]);
    Ok(file)
}

fn load_with_cover(
    input: &Input,
    cover: Option<&Path>,
    digest: &mut String,
) -> Result<(PolytopeFile, Option<CoverFile>), Failure> {
    let file = io::load_polytope(input.file.as_deref(), input.example.as_deref())?;
    let cover = cover.map(io::load_cover).transpose()?;
    let mut parts = vec![file.bytes.as_slice()];
    if let Some(c) = &cover {
        parts.push(c.bytes.as_slice());
    }
    *digest = io::digest(parts);
    Ok((file.value, cover.map(|c| c.value)))
}

fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn simplex_json(s: &LatticeSimplex) -> Value {
    let index = unimodular::lattice_index(s);
    let diag: Vec<Value> = unimodular::difference_hnf(s).diagonal().iter().map(big).collect();
    json!({
        "vertices": s.vertices(),
        "lattice_index": index.value().map(big),
        "unimodular": index.is_unimodular(),
        "hnf_diagonal": diag,
    })
}

fn unimodular_test(input: &Input, cell: Option<usize>, digest: &mut String) -> Result<Done, Failure> {
    // A file with a "cells" key is a cover file.
    let (simplices, bytes) = match &input.file {
        Some(path) if input.example.is_none() && is_cover_file(path)? => {
            let c = io::load_cover(path)?;
            let all = c.value.simplices()?;
            let chosen = match cell {
                Some(k) => {
                    let s = all.get(k).cloned().ok_or_else(|| {
                        InputError::new(format!("cell {k} out of range (cover has {})", all.len()))
                    })?;
                    vec![(k, s)]
                }
                None => all.into_iter().enumerate().collect(),
            };
            (chosen, c.bytes)
        }
        _ => {
            if cell.is_some() {
                return Err(InputError::new("--cell applies only to cover files").into());
            }
            let f = io::load_polytope(input.file.as_deref(), input.example.as_deref())?;
            let s = f.value.simplex()?;
            (vec![(0, s)], f.bytes)
        }
    };
    *digest = io::digest([bytes.as_slice()]);
    let rows: Vec<Value> = simplices
        .iter()
        .map(|(k, s)| {
            let mut v = simplex_json(s);
            v["cell"] = json!(k);
            v
        })
        .collect();
    let all = simplices.iter().all(|(_, s)| unimodular::is_unimodular(s));
    let mut summary = String::new();
    for (k, s) in &simplices {
        let _ = writeln!(
            summary,
            "simplex {k}: index {}, {}",
            unimodular::lattice_index(s),
            if unimodular::is_unimodular(s) { "unimodular" } else { "not unimodular" }
        );
    }
    Ok(Done {
        result: json!({ "unimodular": all, "simplices": rows }),
        code: if all { EXIT_OK } else { EXIT_NEGATIVE },
        summary,
    })
}

fn is_cover_file(path: &Path) -> Result<bool, InputError> {
    let text = io::read_file(path)?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| InputError::new(format!("{}: malformed input: {e}", path.display())))?;
    Ok(v.get("cells").is_some())
}

fn idp_check(file: &PolytopeFile, h: Option<u64>, h_max: Option<u64>) -> Result<Done, Failure> {
    let p = file.polytope()?;
    let reports: Vec<IdpReport> = match (h, h_max) {
        (Some(h), _) => vec![sumset::idp_check(&p, h).map_err(|e| e.at_h(h))?],
        (None, Some(m)) => sumset::idp_scan(&p, m)?,
        (None, None) => unreachable!("clap requires --h or --h-max"),
    };
    let holds = reports.iter().all(|r| r.holds);
    let mut summary = String::new();
    for r in &reports {
        let _ = write!(
            summary,
            "h = {}: |h(P ∩ Z^n)| = {}, |(hP) ∩ Z^n| = {}, ",
            r.h, r.sumset_size, r.dilate_size
        );
        match r.witnesses.points().first() {
            None => summary.push_str("holds\n"),
            Some(w) => {
                let _ = writeln!(summary, "fails ({} witnesses, e.g. {w})", r.witnesses.len());
            }
        }
    }
    Ok(Done {
        result: json!({ "holds": holds, "reports": reports }),
        code: if holds { EXIT_OK } else { EXIT_NEGATIVE },
        summary,
    })
}

fn certified_cover(
    p: &LatticePolytope,
    cover: Option<&CoverFile>,
    search: &Search,
) -> Result<(Option<SimplicialCover>, Value), Failure> {
    match cover {
        Some(c) => {
            let cover = c.cover_of(p)?.certify();
            let info = json!({ "source": "file", "status": cover.status });
            Ok((cover.is_certified().then_some(cover), info))
        }
        None => {
            let s = find_unimodular_triangulation(p, search.attempts as usize, search.seed)?;
            let info = json!({
                "source": "search",
                "attempt": s.attempt,
                "attempts_made": s.attempts_made,
                "proven_none": s.proven_none,
            });
            Ok((s.cover, info))
        }
    }
}

fn decompose(
    file: &PolytopeFile,
    point: &str,
    h: u64,
    cover: Option<&CoverFile>,
    search: &Search,
) -> Result<Done, Failure> {
    let p = file.polytope()?;
    let x = io::parse_point(point)?;
    if x.dim() != p.dim() {
        return Err(Error::Dimension {
            expected: p.dim(),
            found: x.dim(),
        }
        .into());
    }
    if !geometry::contains(&p, &RatPoint::scaled_down(&x, h))? {
        return Err(Error::PointOutside.into());
    }
    let (cover, info) = if p.is_full_dimensional() {
        certified_cover(&p, cover, search)?
    } else {
        (None, json!({ "source": "none", "reason": "polytope is not full-dimensional" }))
    };

    if let Some(c) = cover {
        let d = unimodular::decompose(&p, &c, &x, h)?;
        let summary = format!(
            "{x} = {} (cell weights {:?})\n",
            join(d.parts.iter()),
            d.weights.iter().map(|(_, w)| w).collect::<Vec<_>>()
        );
        return Ok(Done {
            result: json!({ "status": "decomposed", "cover": info, "decomposition": d }),
            code: EXIT_OK,
            summary,
        });
    }

    // No certified cover: answer by direct search instead.
    let pool = PointSet::new(p.dim(), geometry::lattice_points(&p)?)?;
    let found = sumset::find_summands(&pool, h, &x)?;
    let summary = match &found {
        Some(parts) => format!(
            "no certified cover; direct search found {x} = {}\n",
            join(parts.iter())
        ),
        None => format!(
            "no certified cover; no decomposition exists: {x} is not a sum of {h} lattice points of P\n"
        ),
    };
    Ok(Done {
        result: json!({
            "status": "unknown",
            "cover": info,
            "fallback": {
                "method": "exhaustive search",
                "decomposition_exists": found.is_some(),
                "parts": found,
            },
        }),
        code: EXIT_NEGATIVE,
        summary,
    })
}

fn join<T: std::fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items.map(|t| t.to_string()).collect::<Vec<_>>().join(" + ")
}

fn cover_summary(c: &SimplicialCover) -> Result<Value, Failure> {
    let target = unimodular::normalized_volume(&c.target)?;
    Ok(json!({
        "kind": c.kind,
        "status": c.status,
        "cells": c.cells.len(),
        "cells_volume": big(&c.cells_volume()),
        "target_volume": big(&target),
    }))
}

fn triangulate(file: &PolytopeFile, search: &Search, emit: bool) -> Result<Done, Failure> {
    let p = file.polytope()?;
    let s = find_unimodular_triangulation(&p, search.attempts as usize, search.seed)?;
    let mut result = json!({
        "found": s.cover.is_some(),
        "attempt": s.attempt,
        "attempts_made": s.attempts_made,
        "proven_none": s.proven_none,
        "seed": search.seed,
    });
    let summary = match &s.cover {
        Some(c) => {
            result["cover"] = cover_summary(c)?;
            if emit {
                result["cover_file"] = json!(CoverFile::from_cover(c));
            }
            format!(
                "certified unimodular triangulation with {} cells (attempt {})\n",
                c.cells.len(),
                s.attempt.unwrap_or(0)
            )
        }
        None if s.proven_none => {
            "no unimodular triangulation exists: the only triangulation is a non-unimodular simplex\n"
                .to_string()
        }
        None => format!(
            "no unimodular triangulation found in {} attempts (not a proof of nonexistence)\n",
            s.attempts_made
        ),
    };
    Ok(Done {
        code: if s.cover.is_some() { EXIT_OK } else { EXIT_NEGATIVE },
        result,
        summary,
    })
}

fn verify_cover_cmd(file: &PolytopeFile, cover: &CoverFile) -> Result<Done, Failure> {
    let p = file.polytope()?;
    let mut c = cover.cover_of(&p)?;
    c.status = verify_cover(&c);
    let summary = match &c.status {
        CoverStatus::Certified => "cover certified\n".to_string(),
        CoverStatus::VerticesOnly => {
            "cells are unimodular and inside P; coverage is not verified for general covers\n".to_string()
        }
        CoverStatus::Uncertified { defects } => format!("cover rejected: {} defects\n", defects.len()),
    };
    Ok(Done {
        code: if c.is_certified() { EXIT_OK } else { EXIT_NEGATIVE },
        result: json!({ "verified": cover_summary(&c)? }),
        summary,
    })
}

fn find_ell_cmd(file: &PolytopeFile, ell_max: u64, h_max: u64, search: &Search) -> Result<Done, Failure> {
    let p = file.polytope()?;
    let r = find_ell(&p, ell_max, h_max, search.attempts as usize, search.seed)?;
    let mut summary = String::from("ell  points  certificate     oracle (h = 1..)\n");
    for row in &r.rows {
        let cert = match &row.certificate {
            CertificateOutcome::Certified { cells, .. } => format!("certified/{cells}"),
            CertificateOutcome::ProvenNone => "proven-none".into(),
            CertificateOutcome::Unknown { .. } => "unknown".into(),
        };
        let verdicts: String = row.idp.iter().map(|i| if i.holds { '+' } else { '-' }).collect();
        let _ = writeln!(
            summary,
            "{:<4} {:<7} {:<15} {}{}",
            row.ell,
            row.lattice_points,
            cert,
            verdicts,
            if row.agrees { "" } else { "  DISAGREES" }
        );
    }
    match r.ell {
        Some(l) => {
            let _ = writeln!(summary, "ell = {l}");
        }
        None => summary.push_str("no certified ell within the cap\n"),
    }
    if !r.all_agree() {
        return Err(Error::Internal("certificate contradicted by the oracle".into()).into());
    }
    Ok(Done {
        code: if r.ell.is_some() { EXIT_OK } else { EXIT_NEGATIVE },
        result: json!(r),
        summary,
    })
}
