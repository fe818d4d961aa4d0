//! CSV and gnuplot emission for batch results.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::policies::PolicyName;
use crate::sim::BatchResult;

pub const CSV_HEADER: &str = "policy,seed,t,instant_regret,cum_regret,avg_regret";

/// `%.10g`: ten significant digits, trailing zeros dropped, scientific
/// notation outside 1e-5 ≤ |v| < 1e10.
pub fn format_sig10(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..10).contains(&exp) {
        let fixed = format!("{:.*}", (9 - exp) as usize, v);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn csv_string(result: &BatchResult) -> String {
    let mut out = String::with_capacity(64 * result.runs.len() * result.checkpoints.len() + 64);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for run in &result.runs {
        for (k, &t) in result.checkpoints.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                run.policy,
                run.seed,
                t,
                format_sig10(run.instant[k]),
                format_sig10(run.cumulative[k]),
                format_sig10(run.average[k]),
            );
        }
    }
    out
}

pub fn emit_csv(result: &BatchResult, path: &Path) -> Result<()> {
    fs::write(path, csv_string(result)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// One parsed CSV data row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub policy: PolicyName,
    pub seed: u64,
    pub t: u64,
    pub instant_regret: f64,
    pub cum_regret: f64,
    pub avg_regret: f64,
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: "missing CSV header".into(),
            })
        }
    }
    lines
        .map(|(i, line)| {
            let bad = |m: String| Error::Parse {
                line: i + 1,
                message: m,
            };
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 6 {
                return Err(bad(format!("expected 6 fields, got {}", f.len())));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|e| bad(format!("{s:?}: {e}")));
            let int = |s: &str| s.parse::<u64>().map_err(|e| bad(format!("{s:?}: {e}")));
            Ok(CsvRow {
                policy: f[0].parse().map_err(|e: Error| bad(e.to_string()))?,
                seed: int(f[1])?,
                t: int(f[2])?,
                instant_regret: num(f[3])?,
                cum_regret: num(f[4])?,
                avg_regret: num(f[5])?,
            })
        })
        .collect()
}

/// Self-contained gnuplot script: time-averaged regret per policy with a
/// mean ± std band, and the regret bound (divided by t) as a dashed line.
pub fn plot_script(result: &BatchResult, image_name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# {} regret, horizon {}",
        result.scenario, result.horizon
    );
    let _ = writeln!(s, "set terminal svg size 900,560");
    let _ = writeln!(s, "set output '{image_name}'");
    let _ = writeln!(s, "set logscale x");
    let _ = writeln!(s, "set xlabel 't'");
    let _ = writeln!(s, "set ylabel 'time-averaged regret'");
    let _ = writeln!(s, "set key top right");
    let _ = writeln!(s, "set style fill transparent solid 0.2 noborder");
    for agg in &result.aggregates {
        let _ = writeln!(s, "${} << EOD", block_name(agg.policy));
        for (k, &t) in result.checkpoints.iter().enumerate() {
            let _ = writeln!(
                s,
                "{} {} {}",
                t,
                format_sig10(agg.mean_average[k]),
                format_sig10(agg.std_average[k])
            );
        }
        let _ = writeln!(s, "EOD");
    }
    let mut series = Vec::new();
    for agg in &result.aggregates {
        let b = block_name(agg.policy);
        series.push(format!(
            "${b} using 1:($2-$3):($2+$3) with filledcurves notitle"
        ));
        series.push(format!(
            "${b} using 1:2 with lines lw 2 title '{}'",
            agg.policy
        ));
    }
    if let Some(bound) = &result.bound_average {
        let _ = writeln!(s, "$bound << EOD");
        for (&t, b) in result.checkpoints.iter().zip(bound) {
            let _ = writeln!(s, "{} {}", t, format_sig10(*b));
        }
        let _ = writeln!(s, "EOD");
        let _ = writeln!(s, "set yrange [0:*]");
        series.push("$bound using 1:2 with lines dt 2 lc rgb 'gray40' title 'bound / t'".into());
    }
    if series.is_empty() {
        let _ = writeln!(s, "plot 0 notitle");
    } else {
        let _ = writeln!(s, "plot \\\n    {}", series.join(", \\\n    "));
    }
    s
}

fn block_name(p: PolicyName) -> String {
    p.as_str().replace('-', "_")
}

/// Write the plot script to `path`; the image lands beside it as `.svg`.
pub fn emit_plot_script(result: &BatchResult, path: &Path) -> Result<()> {
    let image = path.with_extension("svg");
    let image_name = image
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "regret.svg".into());
    fs::write(path, plot_script(result, &image_name))
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig10_formatting() {
        assert_eq!(format_sig10(0.0), "0");
        assert_eq!(format_sig10(1.0), "1");
        assert_eq!(format_sig10(0.5), "0.5");
        assert_eq!(format_sig10(1.0 / 3.0), "0.3333333333");
        assert_eq!(format_sig10(2.0 / 3.0 * 1000.0), "666.6666667");
        assert_eq!(format_sig10(1234567.891234), "1234567.891");
        assert_eq!(format_sig10(1e-7), "1e-7");
        assert_eq!(format_sig10(-2.5e12), "-2.5e12");
        assert_eq!(format_sig10(9.99999999999), "10");
        assert_eq!(format_sig10(1e-5), "0.00001");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_csv("nope\n").is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\nmoss,1,2,3\n")).is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\nbogus,1,2,3,4,5\n")).is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\n")).unwrap().is_empty());
    }
}
