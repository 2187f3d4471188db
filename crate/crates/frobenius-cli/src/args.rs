//! Argument surface and the serializable run configuration embedded in
//! every artifact. `--threads` and enumeration budgets are deliberately
//! absent from `RunConfig`: they must never change output bytes.

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub const DEFAULT_ENUM_BUDGET: u64 = frobenius_core::domains::DEFAULT_ENUM_BUDGET;
pub const DEFAULT_MINIMA_BUDGET: u128 = frobenius_core::convexgeom::DEFAULT_MINIMA_BUDGET;

#[derive(Parser, Debug)]
#[command(
    name = "frob",
    about = "Frobenius numbers, unimodular lattices, covering radii and ensemble statistics",
    version
)]
pub struct Cli {
    /// Worker thread cap (0 = library default). Never affects output bytes.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Frobenius number of a primitive positive tuple
    Frobenius {
        /// Coordinates a1 a2 ... ad
        #[arg(required = true, num_args = 2..)]
        coords: Vec<u64>,
        /// Include the Apery set (one minimal value per residue class)
        #[arg(long)]
        apery: bool,
        /// Write the JSON here instead of stdout
        #[arg(long)]
        out: Option<String>,
    },

    /// Both lattice constructions for a tuple, plus their equality verdict
    Lattice {
        #[arg(required = true, num_args = 3..)]
        coords: Vec<u64>,
        #[arg(long)]
        out: Option<String>,
    },

    /// Successive minima of a gauge on a lattice basis
    Minima {
        /// Basis as inline JSON or a path to a JSON file
        #[arg(long)]
        lattice: String,
        /// simplex | diff-simplex | polar-diff-simplex
        #[arg(long, default_value = "diff-simplex")]
        gauge: String,
        #[arg(long, default_value_t = DEFAULT_MINIMA_BUDGET)]
        budget: u128,
        #[arg(long)]
        out: Option<String>,
    },

    /// Covering radius of the lattice attached to a tuple, or of an
    /// explicit rank-2 basis
    Covering {
        /// Tuple a1,a2,...,ad (builds its unimodular lattice)
        #[arg(long, value_delimiter = ',')]
        a: Option<Vec<u64>>,
        /// Explicit basis as inline JSON or a file path (planar method only)
        #[arg(long)]
        lattice: Option<String>,
        /// identity | planar | both | sandwich
        #[arg(long, default_value = "both")]
        method: String,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MINIMA_BUDGET)]
        budget: u128,
        #[arg(long)]
        out: Option<String>,
    },

    /// Build an ensemble of Frobenius records over a dilated domain
    Ensemble {
        #[command(flatten)]
        ens: EnsembleArgs,
        /// csv | json
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<String>,
    },

    /// Exact counting side of the limit distribution at given thresholds
    Distribution {
        #[command(flatten)]
        ens: EnsembleArgs,
        /// Thresholds R, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        r_grid: Vec<f64>,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<String>,
    },

    /// Survival-function tail fit over an ensemble
    Tail {
        #[command(flatten)]
        ens: EnsembleArgs,
        /// Explicit R grid; defaults to a geometric grid over the sample
        #[arg(long, value_delimiter = ',')]
        r_grid: Option<Vec<f64>>,
        /// Number of points when the grid is defaulted
        #[arg(long, default_value_t = 8)]
        grid_points: usize,
        /// Which statistic to fit: nosum (F alone over the root, the tail
        /// display) | sum (F plus the coordinate sum)
        #[arg(long, default_value = "nosum")]
        stat: String,
        /// json (summary) | csv (the psi grid for plotting)
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<String>,
    },

    /// Kolmogorov-Smirnov distances between consecutive dilation sizes
    Convergence {
        /// cube | d0 | path to a half-space file
        #[arg(long, default_value = "cube")]
        domain: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Dilation sizes, comma separated
        #[arg(long = "T-list", value_delimiter = ',', required = true)]
        t_list: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        min_coord: u64,
        #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
        enum_budget: u64,
        #[arg(long)]
        out: Option<String>,
    },

    /// Mean lattice-point count in a test body over the lattice ensemble
    Siegel {
        #[arg(long, default_value = "d0")]
        domain: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long = "T")]
        t: f64,
        /// box:h1,h2,... (half-widths) or ball:r
        #[arg(long)]
        body: String,
        #[arg(long, default_value_t = DEFAULT_MINIMA_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
        enum_budget: u64,
        #[arg(long)]
        out: Option<String>,
    },

    /// Sweep the covering-radius identity against the planar computation
    VerifyIdentity {
        #[arg(long, default_value = "d0")]
        domain: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long = "T")]
        t: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MINIMA_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
        enum_budget: u64,
        #[arg(long)]
        out: Option<String>,
    },

    /// Check the classical upper bounds against exact Frobenius numbers
    VerifyBounds {
        #[arg(long, default_value = "cube")]
        domain: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long = "T")]
        t: f64,
        #[arg(long, default_value_t = 2)]
        min_coord: u64,
        #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
        enum_budget: u64,
        #[arg(long)]
        out: Option<String>,
    },
}

/// Flags shared by every ensemble-building subcommand.
#[derive(clap::Args, Debug)]
pub struct EnsembleArgs {
    /// cube | d0 | path to a half-space file
    #[arg(long)]
    pub domain: String,
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long = "T")]
    pub t: f64,
    /// exhaustive | sample
    #[arg(long, default_value = "exhaustive")]
    pub mode: String,
    /// Sample size (sample mode only)
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub min_coord: u64,
    /// Volume of a custom domain (required with a half-space file)
    #[arg(long)]
    pub domain_volume: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
    pub enum_budget: u64,
}

/// The configuration block embedded verbatim in every artifact. Field order
/// is the serialization order, so identical configs give identical bytes.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_grid: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gauge: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub body: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_list: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_coord: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub apery: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stat: Option<String>,
}

impl RunConfig {
    fn new(subcommand: &str) -> Self {
        RunConfig {
            subcommand: subcommand.to_string(),
            domain: None,
            dim: None,
            t: None,
            mode: None,
            n: None,
            seed: None,
            tol: None,
            r_grid: None,
            out: None,
            format: None,
            a: None,
            coords: None,
            gauge: None,
            method: None,
            body: None,
            t_list: None,
            min_coord: None,
            apery: None,
            lattice: None,
            stat: None,
        }
    }
}

impl EnsembleArgs {
    fn fill(&self, c: &mut RunConfig) {
        c.domain = Some(self.domain.clone());
        c.dim = Some(self.dim);
        c.t = Some(self.t);
        c.mode = Some(self.mode.clone());
        c.n = self.n;
        if self.mode == "sample" {
            c.seed = Some(self.seed);
        }
        c.min_coord = Some(self.min_coord);
    }
}

impl Command {
    /// The exact block embedded in this run's artifacts.
    pub fn run_config(&self) -> RunConfig {
        match self {
            Command::Frobenius { coords, apery, out } => {
                let mut c = RunConfig::new("frobenius");
                c.coords = Some(coords.clone());
                c.apery = Some(*apery);
                c.out = out.clone();
                c
            }
            Command::Lattice { coords, out } => {
                let mut c = RunConfig::new("lattice");
                c.coords = Some(coords.clone());
                c.out = out.clone();
                c
            }
            Command::Minima {
                lattice,
                gauge,
                out,
                ..
            } => {
                let mut c = RunConfig::new("minima");
                c.lattice = Some(lattice.clone());
                c.gauge = Some(gauge.clone());
                c.out = out.clone();
                c
            }
            Command::Covering {
                a,
                lattice,
                method,
                tol,
                out,
                ..
            } => {
                let mut c = RunConfig::new("covering");
                c.a = a.clone();
                c.lattice = lattice.clone();
                c.method = Some(method.clone());
                c.tol = Some(*tol);
                c.out = out.clone();
                c
            }
            Command::Ensemble { ens, format, out } => {
                let mut c = RunConfig::new("ensemble");
                ens.fill(&mut c);
                c.format = Some(format.clone());
                c.out = out.clone();
                c
            }
            Command::Distribution {
                ens,
                r_grid,
                format,
                out,
            } => {
                let mut c = RunConfig::new("distribution");
                ens.fill(&mut c);
                c.r_grid = Some(r_grid.clone());
                c.format = Some(format.clone());
                c.out = out.clone();
                c
            }
            Command::Tail {
                ens,
                r_grid,
                stat,
                format,
                out,
                ..
            } => {
                let mut c = RunConfig::new("tail");
                ens.fill(&mut c);
                c.r_grid = r_grid.clone();
                c.stat = Some(stat.clone());
                c.format = Some(format.clone());
                c.out = out.clone();
                c
            }
            Command::Convergence {
                domain,
                dim,
                t_list,
                min_coord,
                out,
                ..
            } => {
                let mut c = RunConfig::new("convergence");
                c.domain = Some(domain.clone());
                c.dim = Some(*dim);
                c.t_list = Some(t_list.clone());
                c.min_coord = Some(*min_coord);
                c.out = out.clone();
                c
            }
            Command::Siegel {
                domain,
                dim,
                t,
                body,
                out,
                ..
            } => {
                let mut c = RunConfig::new("siegel");
                c.domain = Some(domain.clone());
                c.dim = Some(*dim);
                c.t = Some(*t);
                c.body = Some(body.clone());
                c.out = out.clone();
                c
            }
            Command::VerifyIdentity {
                domain,
                dim,
                t,
                tol,
                out,
                ..
            } => {
                let mut c = RunConfig::new("verify-identity");
                c.domain = Some(domain.clone());
                c.dim = Some(*dim);
                c.t = Some(*t);
                c.tol = Some(*tol);
                c.out = out.clone();
                c
            }
            Command::VerifyBounds {
                domain,
                dim,
                t,
                min_coord,
                out,
                ..
            } => {
                let mut c = RunConfig::new("verify-bounds");
                c.domain = Some(domain.clone());
                c.dim = Some(*dim);
                c.t = Some(*t);
                c.min_coord = Some(*min_coord);
                c.out = out.clone();
                c
            }
        }
    }
}
