//! Subcommand dispatch. Each branch builds one artifact with the run
//! configuration embedded, prints or writes it, and maps results onto the
//! shared exit-code contract.

use std::ffi::OsString;
use std::fs;

use frobenius_core::convexgeom::{successive_minima, Gauge};
use frobenius_core::covering::{
    covering_radius_planar, covering_radius_sandwich_only, covering_radius_via_frobenius,
    verify_identity, CoveringMethod, CoveringResult,
};
use frobenius_core::domains::{Domain, PrimitivePoint};
use frobenius_core::ensemble::{
    default_tail_grid, distribution_value, tail_fit, convergence_report, Ecdf, EnsembleRecord,
    Mode,
};
use frobenius_core::frobenius::{apery_set, classical_bounds, frobenius_number};
use frobenius_core::lattice::{frobenius_lattice, frobenius_lattice_intersection, lattice_equal};
use frobenius_core::numeric::zeta;
use frobenius_core::siegel::{count_in_body, TestBody};
use serde::Serialize;

use crate::args::{Cli, Command, EnsembleArgs, RunConfig};
use crate::drivers::{build_records, make_pool, map_domain_points};
use crate::output::{
    emit, ensemble_csv, format_significant, grid_csv, json_string, lattice_to_json,
    parse_lattice_arg, rat_string, EnsembleJson, LatticeJson, RecordJson, Summary,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_VIOLATIONS: i32 = 2;

/// Full entry point: parse, dispatch, translate everything to an exit code.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    use clap::Parser;
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    EXIT_OK
                }
                _ => EXIT_FAILURE,
            };
            let _ = e.print();
            code
        }
    }
}

pub fn run(cli: &Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn core<T>(r: frobenius_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn parse_domain(spec: &str, dim: usize, volume: Option<f64>) -> Result<Domain, String> {
    match spec {
        "cube" => core(Domain::unit_cube(dim)),
        "d0" => core(Domain::dominant_last(dim)),
        path => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read domain file {path}: {e}"))?;
            let halfspaces = core(Domain::parse_halfspaces(&text, dim))?;
            let vol = volume.ok_or("custom domains need --domain-volume")?;
            core(Domain::custom(dim, halfspaces, vol))
        }
    }
}

fn parse_gauge(name: &str, dim: usize) -> Result<Gauge, String> {
    match name {
        "simplex" => core(Gauge::simplex(dim)),
        "diff-simplex" => core(Gauge::diff_simplex(dim)),
        "polar-diff-simplex" => core(Gauge::polar_diff_simplex(dim)),
        other => Err(format!(
            "unknown gauge {other:?} (simplex | diff-simplex | polar-diff-simplex)"
        )),
    }
}

fn parse_mode(mode: &str, n: Option<u64>, seed: u64) -> Result<Mode, String> {
    match mode {
        "exhaustive" => Ok(Mode::Exhaustive),
        "sample" => {
            let n = n.ok_or("sample mode needs --n")?;
            Ok(Mode::Sample { n, seed })
        }
        other => Err(format!("unknown mode {other:?} (exhaustive | sample)")),
    }
}

/// `box:h1,h2,...` (half-widths) or `ball:r`, in lattice-rank dimensions.
fn parse_body(spec: &str, rank: usize) -> Result<TestBody, String> {
    if let Some(rest) = spec.strip_prefix("box:") {
        let hw: Result<Vec<f64>, _> = rest.split(',').map(|s| s.trim().parse()).collect();
        let hw = hw.map_err(|_| format!("bad half-widths in {spec:?}"))?;
        if hw.len() != rank {
            return Err(format!(
                "body has {} half-widths, lattice rank is {rank}",
                hw.len()
            ));
        }
        core(TestBody::centered_box(hw))
    } else if let Some(rest) = spec.strip_prefix("ball:") {
        let r: f64 = rest
            .trim()
            .parse()
            .map_err(|_| format!("bad radius in {spec:?}"))?;
        core(TestBody::centered_ball(rank, r))
    } else {
        Err(format!("body must be box:h1,... or ball:r, got {spec:?}"))
    }
}

fn point(coords: &[u64]) -> Result<PrimitivePoint, String> {
    core(PrimitivePoint::new(coords.to_vec()))
}

fn ensemble_pieces(
    pool: &rayon::ThreadPool,
    ens: &EnsembleArgs,
) -> Result<(Domain, Mode, Vec<EnsembleRecord>), String> {
    let domain = parse_domain(&ens.domain, ens.dim, ens.domain_volume)?;
    let mode = parse_mode(&ens.mode, ens.n, ens.seed)?;
    let records = core(build_records(
        pool,
        &domain,
        ens.t,
        mode,
        ens.min_coord,
        ens.enum_budget,
    ))?;
    Ok((domain, mode, records))
}

fn method_name(m: CoveringMethod) -> &'static str {
    match m {
        CoveringMethod::FrobeniusIdentity => "identity",
        CoveringMethod::PlanarExact => "planar",
        CoveringMethod::SandwichOnly => "sandwich",
    }
}

#[derive(Serialize)]
struct CoveringResultJson {
    value: f64,
    method: &'static str,
    bracket: (f64, f64),
    tol: f64,
}

impl From<&CoveringResult> for CoveringResultJson {
    fn from(r: &CoveringResult) -> Self {
        CoveringResultJson {
            value: r.value,
            method: method_name(r.method),
            bracket: r.bracket,
            tol: r.tol,
        }
    }
}

#[derive(Serialize)]
struct FrobeniusOut {
    #[serde(rename = "F")]
    f: i128,
    #[serde(skip_serializing_if = "Option::is_none")]
    apery: Option<Vec<u128>>,
    config: RunConfig,
}

#[derive(Serialize)]
struct LatticeOut {
    congruence: LatticeJson,
    kernel: LatticeJson,
    equal: bool,
    config: RunConfig,
}

#[derive(Serialize)]
struct MinimaOut {
    lambdas: Vec<f64>,
    lambdas_exact: Vec<String>,
    witnesses: Vec<Vec<i64>>,
    config: RunConfig,
}

#[derive(Serialize)]
struct CoveringOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    identity: Option<CoveringResultJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    planar: Option<CoveringResultJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sandwich: Option<CoveringResultJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
    config: RunConfig,
}

#[derive(Serialize)]
struct ConvergencePairOut {
    t1: f64,
    t2: f64,
    ks: f64,
}

#[derive(Serialize)]
struct ConvergenceOut {
    counts: Vec<u64>,
    pairs: Vec<ConvergencePairOut>,
    config: RunConfig,
}

#[derive(Serialize)]
struct SiegelOut {
    mean: f64,
    predicted: f64,
    n: u64,
    config: RunConfig,
}

#[derive(Serialize)]
struct IdentityViolation {
    a: Vec<u64>,
    residual: f64,
}

#[derive(Serialize)]
struct VerifyIdentityOut {
    checked: u64,
    max_residual: f64,
    violations: Vec<IdentityViolation>,
    config: RunConfig,
}

#[derive(Serialize)]
struct BoundViolation {
    a: Vec<u64>,
    #[serde(rename = "F")]
    f: i128,
    bound: &'static str,
    value: i128,
}

#[derive(Serialize)]
struct VerifyBoundsOut {
    checked: u64,
    violations: Vec<BoundViolation>,
    config: RunConfig,
}

fn dispatch(cli: &Cli) -> Result<i32, String> {
    let pool = make_pool(cli.threads)?;
    let config = cli.command.run_config();
    match &cli.command {
        Command::Frobenius { coords, apery, out } => {
            let a = point(coords)?;
            let f = core(frobenius_number(&a))?;
            let apery_values = if *apery {
                Some(core(apery_set(&a))?)
            } else {
                None
            };
            let artifact = FrobeniusOut {
                f: f.value,
                apery: apery_values,
                config,
            };
            emit(out, &json_string(&artifact))?;
            Ok(EXIT_OK)
        }

        Command::Lattice { coords, out } => {
            let a = point(coords)?;
            let b1 = core(frobenius_lattice(&a))?;
            let b2 = core(frobenius_lattice_intersection(&a))?;
            let equal = core(lattice_equal(&b1, &b2, 0.0))?;
            let artifact = LatticeOut {
                congruence: lattice_to_json(&b1),
                kernel: lattice_to_json(&b2),
                equal,
                config,
            };
            emit(out, &json_string(&artifact))?;
            Ok(EXIT_OK)
        }

        Command::Minima {
            lattice,
            gauge,
            budget,
            out,
        } => {
            let basis = parse_lattice_arg(lattice)?;
            let g = parse_gauge(gauge, basis.dim())?;
            let r = core(successive_minima(&basis, &g, *budget))?;
            let artifact = MinimaOut {
                lambdas: r.lambdas,
                lambdas_exact: r.lambdas_exact.iter().map(rat_string).collect(),
                witnesses: r.witnesses,
                config,
            };
            emit(out, &json_string(&artifact))?;
            Ok(EXIT_OK)
        }

        Command::Covering {
            a,
            lattice,
            method,
            tol,
            budget,
            out,
        } => {
            let mut artifact = CoveringOut {
                identity: None,
                planar: None,
                sandwich: None,
                residual: None,
                config,
            };
            match (a, lattice) {
                (Some(coords), None) => {
                    let a = point(coords)?;
                    match method.as_str() {
                        "identity" => {
                            let r = core(covering_radius_via_frobenius(&a, *budget))?;
                            artifact.identity = Some((&r).into());
                        }
                        "planar" => {
                            let basis = core(frobenius_lattice(&a))?;
                            let r = core(covering_radius_planar(&basis, *tol, *budget))?;
                            artifact.planar = Some((&r).into());
                        }
                        "both" => {
                            let ri = core(covering_radius_via_frobenius(&a, *budget))?;
                            let basis = core(frobenius_lattice(&a))?;
                            let rp = core(covering_radius_planar(&basis, *tol, *budget))?;
                            artifact.residual = Some((ri.value - rp.value).abs());
                            artifact.identity = Some((&ri).into());
                            artifact.planar = Some((&rp).into());
                        }
                        "sandwich" => {
                            let r = core(covering_radius_sandwich_only(&a, *budget))?;
                            artifact.sandwich = Some((&r).into());
                        }
                        other => {
                            return Err(format!(
                                "unknown method {other:?} (identity | planar | both | sandwich)"
                            ))
                        }
                    }
                }
                (None, Some(spec)) => {
                    if method != "planar" {
                        return Err("--lattice supports only --method planar".into());
                    }
                    let basis = parse_lattice_arg(spec)?;
                    let r = core(covering_radius_planar(&basis, *tol, *budget))?;
                    artifact.planar = Some((&r).into());
                }
                _ => return Err("pass exactly one of --a or --lattice".into()),
            }
            emit(out, &json_string(&artifact))?;
            Ok(EXIT_OK)
        }

        Command::Ensemble { ens, format, out } => {
            let (_, _, records) = ensemble_pieces(&pool, ens)?;
            let text = match format.as_str() {
                "csv" => ensemble_csv(&config, &records),
                "json" => json_string(&EnsembleJson {
                    count: records.len() as u64,
                    records: records.iter().map(RecordJson::from).collect(),
                    config,
                }),
                other => return Err(format!("unknown format {other:?} (csv | json)")),
            };
            emit(out, &text)?;
            Ok(EXIT_OK)
        }

        Command::Distribution {
            ens,
            r_grid,
            format,
            out,
        } => {
            let (domain, mode, records) = ensemble_pieces(&pool, ens)?;
            let mut rows = Vec::with_capacity(r_grid.len());
            for &r in r_grid {
                let (lhs, reference) =
                    core(distribution_value(&records, &domain, ens.t, mode, r))?;
                rows.push(vec![r, lhs, reference]);
            }
            let text = match format.as_str() {
                "csv" => grid_csv(&config, "R,lhs,reference", &rows),
                "json" => {
                    let mut s = Summary::from_config(&config);
                    s.count = Some(records.len() as u64);
                    s.zeta_d = Some(core(zeta(ens.dim as u32))?);
                    s.ecdf_grid = Some(rows.iter().map(|row| (row[0], row[1])).collect());
                    json_string(&s)
                }
                other => return Err(format!("unknown format {other:?} (csv | json)")),
            };
            emit(out, &text)?;
            Ok(EXIT_OK)
        }

        Command::Tail {
            ens,
            r_grid,
            grid_points,
            stat,
            format,
            out,
        } => {
            let (_, _, records) = ensemble_pieces(&pool, ens)?;
            let values: Vec<f64> = match stat.as_str() {
                "nosum" => records.iter().map(|r| r.q_stat_nosum).collect(),
                "sum" => records.iter().map(|r| r.q_stat).collect(),
                other => return Err(format!("unknown stat {other:?} (nosum | sum)")),
            };
            let grid = match r_grid {
                Some(g) => g.clone(),
                None => core(default_tail_grid(&values, *grid_points))?,
            };
            let fit = core(tail_fit(&values, &grid))?;
            let text = match format.as_str() {
                "json" => {
                    let mut s = Summary::from_config(&config);
                    s.count = Some(values.len() as u64);
                    s.zeta_d = Some(core(zeta(ens.dim as u32))?);
                    s.psi_grid = Some(
                        fit.r_grid
                            .iter()
                            .copied()
                            .zip(fit.psi_hat.iter().copied())
                            .collect(),
                    );
                    s.tail_slope = Some(fit.slope);
                    json_string(&s)
                }
                "csv" => {
                    let rows: Vec<Vec<f64>> = fit
                        .r_grid
                        .iter()
                        .zip(&fit.psi_hat)
                        .map(|(&r, &p)| vec![r, p])
                        .collect();
                    grid_csv(&config, "R,psi_hat", &rows)
                }
                other => return Err(format!("unknown format {other:?} (json | csv)")),
            };
            emit(out, &text)?;
            Ok(EXIT_OK)
        }

        Command::Convergence {
            domain,
            dim,
            t_list,
            min_coord,
            enum_budget,
            out,
        } => {
            let dom = parse_domain(domain, *dim, None)?;
            let mut ecdfs = Vec::with_capacity(t_list.len());
            let mut counts = Vec::with_capacity(t_list.len());
            for &t in t_list {
                let q = core(crate::drivers::build_q_stats(
                    &pool,
                    &dom,
                    t,
                    *min_coord,
                    *enum_budget,
                ))?;
                counts.push(q.len() as u64);
                ecdfs.push((t, core(Ecdf::new(q))?));
            }
            let report = core(convergence_report(&ecdfs))?;
            let artifact = ConvergenceOut {
                counts,
                pairs: report
                    .into_iter()
                    .map(|((t1, t2), ks)| ConvergencePairOut { t1, t2, ks })
                    .collect(),
                config,
            };
            emit(out, &json_string(&artifact))?;
            Ok(EXIT_OK)
        }

        Command::Siegel {
            domain,
            dim,
            t,
            body,
            budget,
            enum_budget,
            out,
        } => {
            let dom = parse_domain(domain, *dim, None)?;
            let body = parse_body(body, dim - 1)?;
            let counts = core(map_domain_points(
                &pool,
                &dom,
                *t,
                1,
                *enum_budget,
                |p| {
                    let basis = frobenius_lattice(&p)?;
                    count_in_body(&basis, &body, *budget)
                },
            ))?;
            if counts.is_empty() {
                return Err("no primitive points in the dilated domain".into());
            }
            let total: u64 = counts.iter().sum();
            let artifact = SiegelOut {
                mean: total as f64 / counts.len() as f64,
                predicted: body.volume(),
                n: counts.len() as u64,
                config,
            };
            emit(out, &json_string(&artifact))?;
            Ok(EXIT_OK)
        }

        Command::VerifyIdentity {
            domain,
            dim,
            t,
            tol,
            budget,
            enum_budget,
            out,
        } => {
            if *dim != 3 {
                return Err("verify-identity needs --dim 3 (the direct route is planar)".into());
            }
            let dom = parse_domain(domain, *dim, None)?;
            let checked = core(map_domain_points(
                &pool,
                &dom,
                *t,
                1,
                *enum_budget,
                |p| {
                    let residual = verify_identity(&p, *tol, *budget)?;
                    Ok((p, residual))
                },
            ))?;
            if checked.is_empty() {
                return Err("no primitive points in the dilated domain".into());
            }
            let max_residual = checked.iter().map(|(_, r)| *r).fold(0.0f64, f64::max);
            let violations: Vec<IdentityViolation> = checked
                .iter()
                .filter(|(_, r)| *r > *tol)
                .map(|(p, r)| IdentityViolation {
                    a: p.coords().to_vec(),
                    residual: *r,
                })
                .collect();
            println!(
                "verify-identity: checked {} tuples, max residual {}, tol {}, violations {}",
                checked.len(),
                format_significant(max_residual),
                tol,
                violations.len()
            );
            for v in &violations {
                println!(
                    "violation: a={:?} residual={}",
                    v.a,
                    format_significant(v.residual)
                );
            }
            if let Some(path) = out {
                let artifact = VerifyIdentityOut {
                    checked: checked.len() as u64,
                    max_residual,
                    violations,
                    config,
                };
                emit(&Some(path.clone()), &json_string(&artifact))?;
                Ok(exit_for(artifact_is_clean_identity(&artifact)))
            } else {
                Ok(exit_for(violations.is_empty()))
            }
        }

        Command::VerifyBounds {
            domain,
            dim,
            t,
            min_coord,
            enum_budget,
            out,
        } => {
            if *min_coord < 2 {
                return Err("verify-bounds needs --min-coord >= 2 (the bounds assume it)".into());
            }
            let dom = parse_domain(domain, *dim, None)?;
            let results = core(map_domain_points(
                &pool,
                &dom,
                *t,
                *min_coord,
                *enum_budget,
                |p| {
                    let f = frobenius_number(&p)?.value;
                    let bounds = classical_bounds(&p.sorted_coords())?;
                    Ok((p, f, bounds))
                },
            ))?;
            let mut violations = Vec::new();
            for (p, f, bounds) in &results {
                let mut named: Vec<(&'static str, i128)> =
                    vec![("erdos_graham", bounds.erdos_graham), ("selmer", bounds.selmer)];
                if let Some(v) = bounds.vitek {
                    named.push(("vitek", v));
                }
                for (bound, value) in named {
                    if value >= 0 && *f > value {
                        violations.push(BoundViolation {
                            a: p.sorted_coords(),
                            f: *f,
                            bound,
                            value,
                        });
                    }
                }
            }
            println!(
                "verify-bounds: checked {} tuples, violations {}",
                results.len(),
                violations.len()
            );
            for v in &violations {
                println!("violation: a={:?} F={} {}={}", v.a, v.f, v.bound, v.value);
            }
            let clean = violations.is_empty();
            if let Some(path) = out {
                let artifact = VerifyBoundsOut {
                    checked: results.len() as u64,
                    violations,
                    config,
                };
                emit(&Some(path.clone()), &json_string(&artifact))?;
            }
            Ok(exit_for(clean))
        }
    }
}

fn exit_for(clean: bool) -> i32 {
    if clean {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    }
}

fn artifact_is_clean_identity(a: &VerifyIdentityOut) -> bool {
    a.violations.is_empty()
}
