//! Artifact formats: fixed-precision reals, the exact-rational lattice
//! JSON, the per-record CSV dialect with its reader, and the summary JSON.
//! Everything here is deterministic so identical configs give identical
//! bytes.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;

use frobenius_core::domains::PrimitivePoint;
use frobenius_core::ensemble::EnsembleRecord;
use frobenius_core::lattice::{RealLatticeBasis, Scale};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::args::RunConfig;

/// Significant digits for reals in artifacts.
pub const SIG_DIGITS: i32 = 12;

/// A real with 12 significant digits. Fixed notation near unit scale,
/// scientific once fixed notation would pad with long zero runs; rounding
/// at the 12th digit, never truncation.
pub fn format_significant(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let e = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&e) {
        return format!("{:.*e}", (SIG_DIGITS - 1) as usize, x);
    }
    let p = (SIG_DIGITS - 1) - e;
    if p >= 0 {
        format!("{:.*}", p as usize, x)
    } else {
        let scale = 10f64.powi(-p);
        format!("{:.0}", (x / scale).round() * scale)
    }
}

/// Exact rational as `p` or `p/q`.
pub fn rat_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<BigRational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .trim()
        .parse()
        .map_err(|_| format!("bad rational numerator in {s:?}"))?;
    let d: BigInt = den
        .trim()
        .parse()
        .map_err(|_| format!("bad rational denominator in {s:?}"))?;
    if d == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

/// Exact lattice basis on the wire: rational column entries as strings plus
/// the irrational scale as (base, root) with scale = base^(1/root).
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct LatticeJson {
    pub dim: usize,
    /// Column-major; columns[j][i] is row i of basis vector j.
    pub columns: Vec<Vec<String>>,
    pub scale: ScaleJson,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ScaleJson {
    pub base: String,
    pub root: u32,
}

pub fn lattice_to_json(b: &RealLatticeBasis) -> LatticeJson {
    LatticeJson {
        dim: b.dim(),
        columns: b
            .rational_columns()
            .iter()
            .map(|col| col.iter().map(rat_string).collect())
            .collect(),
        scale: ScaleJson {
            base: rat_string(b.scale().base()),
            root: b.scale().root(),
        },
    }
}

pub fn lattice_from_json(j: &LatticeJson) -> Result<RealLatticeBasis, String> {
    let mut cols = Vec::with_capacity(j.columns.len());
    for col in &j.columns {
        if col.len() != j.dim {
            return Err(format!(
                "column has {} entries, expected {}",
                col.len(),
                j.dim
            ));
        }
        let parsed: Result<Vec<BigRational>, String> = col.iter().map(|s| parse_rat(s)).collect();
        cols.push(parsed?);
    }
    if cols.len() != j.dim {
        return Err(format!("{} columns, expected {}", cols.len(), j.dim));
    }
    let base = parse_rat(&j.scale.base)?;
    let scale = Scale::new(base, j.scale.root).map_err(|e| e.to_string())?;
    RealLatticeBasis::from_parts(cols, scale).map_err(|e| e.to_string())
}

/// `--lattice` accepts inline JSON (starts with `{`) or a file path.
pub fn parse_lattice_arg(arg: &str) -> Result<RealLatticeBasis, String> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| format!("cannot read {arg}: {e}"))?
    };
    let j: LatticeJson =
        serde_json::from_str(&text).map_err(|e| format!("bad lattice JSON: {e}"))?;
    lattice_from_json(&j)
}

/// One ensemble record in JSON artifacts.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct RecordJson {
    pub a: Vec<u64>,
    #[serde(rename = "F")]
    pub f: i128,
    pub sum_a: u128,
    pub root_prod: f64,
    pub q_stat: f64,
    pub q_stat_nosum: f64,
}

impl From<&EnsembleRecord> for RecordJson {
    fn from(r: &EnsembleRecord) -> Self {
        RecordJson {
            a: r.a.coords().to_vec(),
            f: r.f_value,
            sum_a: r.sum_a,
            root_prod: r.root_prod,
            q_stat: r.q_stat,
            q_stat_nosum: r.q_stat_nosum,
        }
    }
}

fn config_comment(config: &RunConfig) -> String {
    format!(
        "# {}",
        serde_json::to_string(config).expect("config serializes")
    )
}

/// Per-record CSV: a config comment line, the mandatory header, then one
/// row per record with reals at 12 significant digits.
pub fn ensemble_csv(config: &RunConfig, records: &[EnsembleRecord]) -> String {
    let dim = records.first().map_or_else(
        || config.dim.unwrap_or(0),
        |r| r.a.dim(),
    );
    let mut out = String::new();
    out.push_str(&config_comment(config));
    out.push('\n');
    for i in 1..=dim {
        let _ = write!(out, "a{i},");
    }
    out.push_str("F,sum_a,root_prod,q_stat,q_stat_nosum\n");
    for r in records {
        for c in r.a.coords() {
            let _ = write!(out, "{c},");
        }
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.f_value,
            r.sum_a,
            format_significant(r.root_prod),
            format_significant(r.q_stat),
            format_significant(r.q_stat_nosum),
        );
    }
    out
}

/// Reads an ensemble CSV produced by `ensemble_csv`, returning the embedded
/// config and the records (reals at the printed precision).
pub fn read_ensemble_csv(text: &str) -> Result<(RunConfig, Vec<EnsembleRecord>), String> {
    let mut lines = text.lines();
    let first = lines.next().ok_or("empty csv")?;
    let config_json = first
        .strip_prefix("# ")
        .ok_or("missing config comment line")?;
    let config: RunConfig =
        serde_json::from_str(config_json).map_err(|e| format!("bad config line: {e}"))?;
    let header = lines.next().ok_or("missing header line")?;
    let cols: Vec<&str> = header.split(',').collect();
    let dim = cols.iter().take_while(|c| c.starts_with('a')).count();
    let expected: Vec<String> = (1..=dim).map(|i| format!("a{i}")).collect();
    let tail = ["F", "sum_a", "root_prod", "q_stat", "q_stat_nosum"];
    let ok = cols.len() == dim + tail.len()
        && cols[..dim] == expected[..]
        && cols[dim..] == tail[..];
    if !ok {
        return Err(format!("unexpected header {header:?}"));
    }
    let mut records = Vec::new();
    for (k, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != dim + tail.len() {
            return Err(format!("row {} has {} fields", k + 3, fields.len()));
        }
        let coords: Result<Vec<u64>, _> = fields[..dim].iter().map(|s| s.parse()).collect();
        let coords = coords.map_err(|e| format!("row {}: bad coordinate: {e}", k + 3))?;
        let a = PrimitivePoint::new(coords).map_err(|e| format!("row {}: {e}", k + 3))?;
        let num = |i: usize| -> Result<f64, String> {
            fields[dim + i]
                .parse()
                .map_err(|e| format!("row {}: bad real: {e}", k + 3))
        };
        records.push(EnsembleRecord {
            f_value: fields[dim]
                .parse()
                .map_err(|e| format!("row {}: bad F: {e}", k + 3))?,
            sum_a: fields[dim + 1]
                .parse()
                .map_err(|e| format!("row {}: bad sum: {e}", k + 3))?,
            root_prod: num(2)?,
            q_stat: num(3)?,
            q_stat_nosum: num(4)?,
            a,
        });
    }
    Ok((config, records))
}

/// Ensemble artifact in JSON form.
#[derive(Serialize, Deserialize, Debug)]
pub struct EnsembleJson {
    pub config: RunConfig,
    pub count: u64,
    pub records: Vec<RecordJson>,
}

/// The summary block for distribution and tail runs. Every key is always
/// present; fields a given run does not produce are null.
#[derive(Serialize, Deserialize, Debug)]
pub struct Summary {
    pub domain: Option<String>,
    pub dim: Option<usize>,
    #[serde(rename = "T")]
    pub t: Option<f64>,
    pub mode: Option<String>,
    pub seed: Option<u64>,
    pub count: Option<u64>,
    pub zeta_d: Option<f64>,
    /// Pairs (R, T^-d * #{q_stat <= R}).
    pub ecdf_grid: Option<Vec<(f64, f64)>>,
    /// Pairs (R, fraction of q_stat strictly above R).
    pub psi_grid: Option<Vec<(f64, f64)>>,
    pub tail_slope: Option<f64>,
}

impl Summary {
    pub fn from_config(config: &RunConfig) -> Self {
        Summary {
            domain: config.domain.clone(),
            dim: config.dim,
            t: config.t,
            mode: config.mode.clone(),
            seed: config.seed,
            count: None,
            zeta_d: None,
            ecdf_grid: None,
            psi_grid: None,
            tail_slope: None,
        }
    }
}

/// A generic CSV grid artifact: config comment, header, rows of reals.
pub fn grid_csv(config: &RunConfig, header: &str, rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    out.push_str(&config_comment(config));
    out.push('\n');
    out.push_str(header);
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| format_significant(v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("artifact serializes")
}

/// Writes the artifact to `--out` or stdout, always newline-terminated.
pub fn emit(out: &Option<String>, text: &str) -> Result<(), String> {
    let body = if text.ends_with('\n') {
        text.to_string()
    } else {
        format!("{text}\n")
    };
    match out {
        Some(path) => fs::write(path, body).map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| format!("stdout: {e}"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(0.0), "0");
        assert_eq!(format_significant(1.0), "1.00000000000");
        assert_eq!(format_significant(-2.5), "-2.50000000000");
        assert_eq!(format_significant(5.477225575051661), "5.47722557505");
        // 13th digit rounds, not truncates
        assert_eq!(format_significant(1.000000000006), "1.00000000001");
        // Large magnitudes stay integral with trailing rounding
        assert_eq!(format_significant(1.23456789012345e14), "123456789012000");
        // Outside the fixed window, scientific with the same digit count
        assert_eq!(format_significant(1.5e-9), "1.50000000000e-9");
        assert_eq!(format_significant(2.5e20), "2.50000000000e20");
    }

    #[test]
    fn rational_strings_round_trip() {
        for s in ["3", "-7/2", "0", "36893488147419103232/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_string(&r), s);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn lattice_json_round_trips_exactly() {
        let a = PrimitivePoint::new(vec![2, 3, 5]).unwrap();
        let b = frobenius_core::lattice::frobenius_lattice(&a).unwrap();
        let j = lattice_to_json(&b);
        let b2 = lattice_from_json(&j).unwrap();
        assert_eq!(b.rational_columns(), b2.rational_columns());
        assert_eq!(b.scale().base(), b2.scale().base());
        assert_eq!(b.scale().root(), b2.scale().root());
        // And through the string sniffing path
        let text = serde_json::to_string(&j).unwrap();
        let b3 = parse_lattice_arg(&text).unwrap();
        assert_eq!(b.rational_columns(), b3.rational_columns());
    }

    #[test]
    fn ensemble_csv_round_trips() {
        use frobenius_core::ensemble::record_for;
        let recs: Vec<EnsembleRecord> = [vec![2u64, 3, 5], vec![3, 4, 5], vec![6, 9, 20]]
            .into_iter()
            .map(|c| record_for(PrimitivePoint::new(c).unwrap()).unwrap())
            .collect();
        let config = crate::args::Command::Frobenius {
            coords: vec![2, 3, 5],
            apery: false,
            out: None,
        }
        .run_config();
        let text = ensemble_csv(&config, &recs);
        assert!(text.starts_with("# {\"subcommand\":\"frobenius\""));
        assert!(text.contains("a1,a2,a3,F,sum_a,root_prod,q_stat,q_stat_nosum"));
        let (config2, recs2) = read_ensemble_csv(&text).unwrap();
        assert_eq!(config, config2);
        assert_eq!(recs.len(), recs2.len());
        for (r, r2) in recs.iter().zip(&recs2) {
            assert_eq!(r.a.coords(), r2.a.coords());
            assert_eq!(r.f_value, r2.f_value);
            assert_eq!(r.sum_a, r2.sum_a);
            assert!((r.q_stat - r2.q_stat).abs() <= 1e-9 * r.q_stat.abs());
        }
        // Reprinting the parsed records reproduces the same bytes
        assert_eq!(text, ensemble_csv(&config2, &recs2));
    }
}
