//! Deterministic serialization: JSON with numbers at 15 significant digits
//! (round-trips doubles without noise digits and re-emits byte-identically)
//! and the CSV schema of the sweep command.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

use quartics::report::{CurveReport, SingularReport};

/// Formats a double with up to 15 significant digits in exponent form,
/// trailing zeros trimmed. Parsing and re-formatting the result is a
/// fixed point, which keeps emitted files byte-stable.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let s = format!("{x:.14e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
    format!("{mantissa}e{exp}")
}

struct SigDigits;

impl Formatter for SigDigits {
    fn write_f64<W: io::Write + ?Sized>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }
    fn write_f32<W: io::Write + ?Sized>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        writer.write_all(fmt_f64(value as f64).as_bytes())
    }
}

/// Compact JSON with the 15-significant-digit number format.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits);
    value
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    String::from_utf8(out).expect("serializer emits utf-8")
}

pub fn report_to_json(report: &CurveReport) -> String {
    to_json(report)
}

pub fn singular_to_json(report: &SingularReport) -> String {
    to_json(report)
}

/// Human-readable report summary.
pub fn report_to_text(r: &CurveReport) -> String {
    let mut lines = Vec::new();
    lines.push(format!("curve        {}", r.curve_id));
    lines.push(format!("smooth       {}", r.smooth));
    lines.push(format!("group order  {}", r.group_order));
    lines.push(format!("wp count     {}", r.wp_count));
    let hist: Vec<String> = r
        .weight_histogram
        .iter()
        .map(|(w, n)| format!("weight {w}: {n}"))
        .collect();
    lines.push(format!("weights      {}", hist.join(", ")));
    let sizes: Vec<String> = r.orbit_sizes.iter().map(|s| s.to_string()).collect();
    lines.push(format!("orbits       [{}]", sizes.join(", ")));
    lines.push(format!("transitive   {}", r.transitive));
    lines.push(format!("signature    {}", r.signature));
    lines.push(format!("hurwitz ok   {}", r.hurwitz_bound_ok));
    for p in &r.points {
        let c = p.point.coords();
        lines.push(format!(
            "  [{}{:+}i : {}{:+}i : {}{:+}i]  weight {}  gaps {:?}  stab {}  orbit {}",
            fmt_f64(c[0].re),
            c[0].im,
            fmt_f64(c[1].re),
            c[1].im,
            fmt_f64(c[2].re),
            c[2].im,
            p.weight,
            p.gaps,
            p.stabilizer_order,
            p.orbit_id
        ));
    }
    lines.join("\n")
}

/// One sweep row. Failures never abort the sweep; they land in `status`.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub re: f64,
    pub im: f64,
    pub smooth: bool,
    pub wp_count: u32,
    pub n_orbits: u32,
    pub transitive: bool,
    pub weight2_count: u32,
    pub status: String,
}

pub const SWEEP_HEADER: &str = "re,im,smooth,wp_count,n_orbits,transitive,weight2_count,status";

pub fn sweep_row_to_csv(row: &SweepRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        fmt_f64(row.re),
        fmt_f64(row.im),
        row.smooth,
        row.wp_count,
        row.n_orbits,
        row.transitive,
        row.weight2_count,
        row.status
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt_f64_is_reparse_stable() {
        for x in [
            0.0,
            1.0,
            -2.5,
            std::f64::consts::PI,
            1.5e-12,
            -9.87654321098765e8,
            0.1 + 0.2,
        ] {
            let s = fmt_f64(x);
            let y: f64 = s.parse().unwrap();
            assert_eq!(s, fmt_f64(y), "not a fixed point for {x}: {s}");
        }
    }

    #[test]
    fn fmt_f64_compacts_integers() {
        assert_eq!(fmt_f64(2.0), "2e0");
        assert_eq!(fmt_f64(0.0), "0");
        assert_eq!(fmt_f64(-0.0), "0");
        assert_eq!(fmt_f64(0.5), "5e-1");
    }
}
