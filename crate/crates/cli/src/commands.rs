//! The three subcommand drivers. Each returns its stdout payload together
//! with the process exit code (0 ok, 2 singular input, 3 numerical
//! inconsistency) so the binary stays a thin shell.

use num_complex::Complex64;
use rayon::prelude::*;

use quartics::report::SingularReport;
use quartics::{autgroup, catalog, verify, weierstrass, CurveId, Error, ProjPoint};

use crate::config::{OutputFormat, RunConfig};
use crate::output;

pub struct CommandOutcome {
    pub stdout: String,
    pub exit_code: i32,
}

fn ok(stdout: String) -> CommandOutcome {
    CommandOutcome {
        stdout,
        exit_code: 0,
    }
}

/// Maps pipeline errors onto the documented exit codes.
fn error_code(e: &Error) -> i32 {
    match e {
        Error::SingularCurve { .. } => 2,
        Error::InvalidInput(_) => 64,
        _ => 3,
    }
}

pub fn parse_curve(pencil: Option<&[f64]>, named: Option<&str>) -> Result<CurveId, String> {
    match (pencil, named) {
        (Some(t), None) => {
            let re = t[0];
            let im = t.get(1).copied().unwrap_or(0.0);
            Ok(CurveId::Pencil(Complex64::new(re, im)))
        }
        (None, Some(name)) => match name {
            "fermat" => Ok(CurveId::Fermat),
            "klein" => Ok(CurveId::Klein),
            "picard" => Ok(CurveId::Picard),
            "c3" => Ok(CurveId::C3),
            other => Err(format!(
                "unknown curve `{other}` (expected fermat, klein, picard or c3)"
            )),
        },
        _ => Err("specify exactly one of --pencil or --named".into()),
    }
}

/// Full verdict for one curve, serialized per the report schema.
pub fn cmd_report(curve: &CurveId, config: &RunConfig) -> CommandOutcome {
    let tols = config.tolerances();
    let f = catalog::build_curve(curve);
    let group = match catalog::pencil_group(&tols)
        .and_then(|g| autgroup::invariant_subgroup(&g, &f, tols.group_eps))
    {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return CommandOutcome {
                stdout: String::new(),
                exit_code: error_code(&e),
            };
        }
    };
    match weierstrass::transitivity_report(curve.to_string(), &f, &group, &tols) {
        Ok(report) => match config.format {
            OutputFormat::Json => ok(output::report_to_json(&report)),
            OutputFormat::Text => ok(output::report_to_text(&report)),
            OutputFormat::Csv => {
                eprintln!("error: reports serialize as json or text; csv applies to sweeps");
                CommandOutcome {
                    stdout: String::new(),
                    exit_code: 64,
                }
            }
        },
        Err(Error::SingularCurve { witness }) => {
            let report = SingularReport {
                curve_id: curve.to_string(),
                smooth: false,
                witness: ProjPoint::new(witness).expect("witness is a valid point"),
                error: "singular curve".into(),
            };
            CommandOutcome {
                stdout: output::singular_to_json(&report),
                exit_code: 2,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            CommandOutcome {
                stdout: String::new(),
                exit_code: error_code(&e),
            }
        }
    }
}

/// One CSV row per parameter, in grid order regardless of the worker
/// count; per-row failures are recorded in the status column.
pub fn cmd_sweep(grid: &[Complex64], config: &RunConfig) -> CommandOutcome {
    let tols = config.tolerances();
    let group = match catalog::pencil_group(&tols) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return CommandOutcome {
                stdout: String::new(),
                exit_code: error_code(&e),
            };
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .expect("worker pool");
    let rows: Vec<output::SweepRow> = pool.install(|| {
        grid.par_iter()
            .map(|&t| {
                let f = catalog::pencil(t);
                match weierstrass::transitivity_report(
                    CurveId::Pencil(t).to_string(),
                    &f,
                    &group,
                    &tols,
                ) {
                    Ok(r) => output::SweepRow {
                        re: t.re,
                        im: t.im,
                        smooth: true,
                        wp_count: r.wp_count,
                        n_orbits: r.orbit_sizes.len() as u32,
                        transitive: r.transitive,
                        weight2_count: r.weight_histogram.get("2").copied().unwrap_or(0),
                        status: "ok".into(),
                    },
                    Err(Error::SingularCurve { .. }) => output::SweepRow {
                        re: t.re,
                        im: t.im,
                        smooth: false,
                        wp_count: 0,
                        n_orbits: 0,
                        transitive: false,
                        weight2_count: 0,
                        status: "singular".into(),
                    },
                    Err(e) => output::SweepRow {
                        re: t.re,
                        im: t.im,
                        smooth: false,
                        wp_count: 0,
                        n_orbits: 0,
                        transitive: false,
                        weight2_count: 0,
                        status: format!("error: {e}").replace(',', ";"),
                    },
                }
            })
            .collect()
    });
    let mut out = String::from(output::SWEEP_HEADER);
    for row in &rows {
        out.push('\n');
        out.push_str(&output::sweep_row_to_csv(row));
    }
    ok(out)
}

/// Runs the verification suite; one pass/fail line per criterion.
pub fn cmd_verify(only: Option<&str>, config: &RunConfig) -> CommandOutcome {
    let tols = config.tolerances();
    let results = verify::run(&tols, only);
    if results.is_empty() {
        eprintln!("error: no criterion matches `{}`", only.unwrap_or(""));
        return CommandOutcome {
            stdout: String::new(),
            exit_code: 64,
        };
    }
    let mut lines = Vec::new();
    let mut all_ok = true;
    for r in &results {
        all_ok &= r.passed;
        lines.push(format!(
            "{} {} — {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.details
        ));
    }
    lines.push(format!(
        "{}/{} criteria passed",
        results.iter().filter(|r| r.passed).count(),
        results.len()
    ));
    CommandOutcome {
        stdout: lines.join("\n"),
        exit_code: if all_ok { 0 } else { 1 },
    }
}

/// Parses `from:to:count` linspace specs, e.g. `--grid -4:4:41,-4:4:41`.
pub fn parse_grid(spec: &str) -> Result<Vec<Complex64>, String> {
    fn linspace(part: &str) -> Result<Vec<f64>, String> {
        let fields: Vec<&str> = part.split(':').collect();
        if fields.len() != 3 {
            return Err(format!("bad linspace `{part}` (expected FROM:TO:COUNT)"));
        }
        let from: f64 = fields[0].parse().map_err(|e| format!("bad FROM: {e}"))?;
        let to: f64 = fields[1].parse().map_err(|e| format!("bad TO: {e}"))?;
        let count: usize = fields[2].parse().map_err(|e| format!("bad COUNT: {e}"))?;
        if count == 0 {
            return Err("COUNT must be positive".into());
        }
        if count == 1 {
            return Ok(vec![from]);
        }
        let step = (to - from) / (count - 1) as f64;
        Ok((0..count).map(|i| from + step * i as f64).collect())
    }
    let (re_part, im_part) = match spec.split_once(',') {
        Some((a, b)) => (a, Some(b)),
        None => (spec, None),
    };
    let res = linspace(re_part)?;
    let ims = match im_part {
        Some(p) => linspace(p)?,
        None => vec![0.0],
    };
    let mut out = Vec::with_capacity(res.len() * ims.len());
    for &re in &res {
        for &im in &ims {
            out.push(Complex64::new(re, im));
        }
    }
    Ok(out)
}

/// Parses whitespace-separated `re[:im]` points.
pub fn parse_points(spec: &str) -> Result<Vec<Complex64>, String> {
    let mut out = Vec::new();
    for tok in spec.split_whitespace() {
        let (re, im) = match tok.split_once(':') {
            Some((a, b)) => (
                a.parse().map_err(|e| format!("bad point `{tok}`: {e}"))?,
                b.parse().map_err(|e| format!("bad point `{tok}`: {e}"))?,
            ),
            None => (
                tok.parse().map_err(|e| format!("bad point `{tok}`: {e}"))?,
                0.0,
            ),
        };
        out.push(Complex64::new(re, im));
    }
    if out.is_empty() {
        return Err("empty point list".into());
    }
    Ok(out)
}
