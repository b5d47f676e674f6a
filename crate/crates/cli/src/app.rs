use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lipcheb_core::verify::{run_campaign, CampaignConfig, CheckKind, CheckReport, DEFAULT_SEED};
use lipcheb_core::{
    cheb_l2_seeded, cheb_linf, cheb_radius_linf, hausdorff, nnet_dist, AxisBox, NormTag,
};

use crate::cloudfile::read_cloud;
use crate::error::CliError;
use crate::output::{fmt_f64, to_json};

/// Chebyshev centers, Hausdorff and bottleneck distances for point clouds,
/// and seeded checks of the stability bounds between them.
#[derive(Debug, Parser)]
#[command(name = "lipcheb", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chebyshev radius and center set of a cloud.
    Center {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = NormArg::Linf)]
        norm: NormArg,
        #[arg(long, value_enum, default_value_t = Format::Doc)]
        format: Format,
        /// Shuffle seed for the Euclidean enclosing-ball solver.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Chebyshev radius of a cloud.
    Radius {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = NormArg::Linf)]
        norm: NormArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Hausdorff distance (`alpha`) or bottleneck distance (`alphahat`).
    Hausdorff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = NormArg::Linf)]
        norm: NormArg,
        #[arg(long, value_enum, default_value_t = Variant::Alpha)]
        variant: Variant,
    },
    /// Bottleneck distance between two equal-size clouds.
    NnetDist {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = NormArg::Linf)]
        norm: NormArg,
    },
    /// Run verification campaigns and write their reports.
    Verify(CampaignArgs),
    /// Emit per-trial rows of a campaign for plotting.
    PlotData(CampaignArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Linf,
    L2,
}

impl From<NormArg> for NormTag {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::Linf => NormTag::Linf,
            NormArg::L2 => NormTag::L2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// JSON document.
    Doc,
    /// Delimited rows.
    Rows,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Alpha,
    Alphahat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    Theorem2,
    Corollary,
    AlphaLeAlphahat,
    RadiusLipschitz,
    Lemma0,
    Lemma1,
    Lemma2,
    Tightness,
    All,
}

impl CheckArg {
    fn kinds(self) -> Vec<CheckKind> {
        let one = |k| vec![k];
        match self {
            CheckArg::Theorem2 => one(CheckKind::CenterLipschitz),
            CheckArg::Corollary => one(CheckKind::CenterLipschitzBottleneck),
            CheckArg::AlphaLeAlphahat => one(CheckKind::HausdorffBelowBottleneck),
            CheckArg::RadiusLipschitz => one(CheckKind::RadiusLipschitz),
            CheckArg::Lemma0 => one(CheckKind::TwoPointSandwich),
            CheckArg::Lemma1 => one(CheckKind::CenterStability),
            CheckArg::Lemma2 => one(CheckKind::DisjointBallCenters),
            CheckArg::Tightness => one(CheckKind::Tightness),
            CheckArg::All => CheckKind::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CampaignArgs {
    #[arg(value_enum)]
    pub check: CheckArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Dimension range `min:max` (or a single value).
    #[arg(long, value_parser = parse_range, default_value = "2:8")]
    pub dim: (usize, usize),
    /// Cloud-size range `min:max` (or a single value).
    #[arg(long, value_parser = parse_range, default_value = "1:32")]
    pub points: (usize, usize),
    /// Largest perturbation size.
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    /// Coordinates are drawn from `[-coord, coord]`.
    #[arg(long, default_value_t = 10.0)]
    pub coord: f64,
    /// Constant of the center-map bounds.
    #[arg(long, default_value_t = 2.0)]
    pub lipschitz: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl CampaignArgs {
    fn config(&self) -> CampaignConfig {
        CampaignConfig {
            seed: self.seed,
            trials: self.trials,
            dim_min: self.dim.0,
            dim_max: self.dim.1,
            points_min: self.points.0,
            points_max: self.points.1,
            coord_max: self.coord,
            eps_max: self.eps,
            lipschitz: self.lipschitz,
        }
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{t}` is not a nonnegative integer"))
    };
    let (lo, hi) = match s.split_once(':') {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// Exit status of a successful dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    ViolationsFound,
}

#[derive(Serialize)]
struct BoxDoc<'a> {
    norm: NormTag,
    radius: f64,
    center_set: &'a AxisBox,
}

#[derive(Serialize)]
struct BallDoc<'a> {
    norm: NormTag,
    radius: f64,
    center: &'a [f64],
}

#[derive(Serialize)]
struct PlotRow<'a> {
    check: &'a str,
    trial: u64,
    step: u32,
    alpha_inputs: f64,
    alpha_centers: f64,
    ratio: f64,
}

const ROWS_HEADER: &str = "check,trial,step,alpha_inputs,alpha_centers,ratio";

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<Outcome, CliError> {
    let mut out = String::new();
    let outcome = match cli.command {
        Command::Center {
            file,
            norm,
            format,
            seed,
        } => {
            let m = read_cloud(&file)?;
            match (NormTag::from(norm), format) {
                (NormTag::Linf, Format::Doc) => {
                    let r = cheb_linf(&m);
                    out = to_json(&BoxDoc {
                        norm: NormTag::Linf,
                        radius: r.radius,
                        center_set: &r.center_set,
                    });
                }
                (NormTag::Linf, Format::Rows) => {
                    let r = cheb_linf(&m);
                    out.push_str(&format!("radius,{}\n", fmt_f64(r.radius)));
                    for iv in r.center_set.intervals() {
                        out.push_str(&format!("{},{}\n", fmt_f64(iv.lo), fmt_f64(iv.hi)));
                    }
                }
                (NormTag::L2, Format::Doc) => {
                    let r = cheb_l2_seeded(&m, seed);
                    out = to_json(&BallDoc {
                        norm: NormTag::L2,
                        radius: r.radius,
                        center: r.center.coords(),
                    });
                }
                (NormTag::L2, Format::Rows) => {
                    let r = cheb_l2_seeded(&m, seed);
                    out.push_str(&format!("radius,{}\n", fmt_f64(r.radius)));
                    let coords: Vec<String> =
                        r.center.coords().iter().map(|&c| fmt_f64(c)).collect();
                    out.push_str(&coords.join(","));
                    out.push('\n');
                }
            }
            Outcome::Ok
        }
        Command::Radius { file, norm, seed } => {
            let m = read_cloud(&file)?;
            let r = match NormTag::from(norm) {
                NormTag::Linf => cheb_radius_linf(&m),
                NormTag::L2 => cheb_l2_seeded(&m, seed).radius,
            };
            out = format!("{}\n", fmt_f64(r));
            Outcome::Ok
        }
        Command::Hausdorff {
            a,
            b,
            norm,
            variant,
        } => {
            let (m, w) = (read_cloud(&a)?, read_cloud(&b)?);
            let value = match variant {
                Variant::Alpha => hausdorff(&m, &w, norm.into())?,
                Variant::Alphahat => nnet_dist(&m, &w, norm.into())?,
            };
            out = format!("{}\n", fmt_f64(value));
            Outcome::Ok
        }
        Command::NnetDist { a, b, norm } => {
            let (m, w) = (read_cloud(&a)?, read_cloud(&b)?);
            out = format!("{}\n", fmt_f64(nnet_dist(&m, &w, norm.into())?));
            Outcome::Ok
        }
        Command::Verify(args) => {
            let cfg = args.config();
            let mut reports: Vec<CheckReport> = Vec::new();
            for kind in args.check.kinds() {
                let (report, _) = run_campaign(kind, &cfg)?;
                out.push_str(&report.summary());
                out.push('\n');
                reports.push(report);
            }
            if let Some(path) = &args.out {
                let doc = if args.check == CheckArg::All {
                    to_json(&reports)
                } else {
                    to_json(&reports[0])
                };
                write_file(path, &doc)?;
            }
            if reports.iter().all(CheckReport::passed) {
                Outcome::Ok
            } else {
                Outcome::ViolationsFound
            }
        }
        Command::PlotData(args) => {
            let cfg = args.config();
            let mut rows = Vec::new();
            for kind in args.check.kinds() {
                let (_, trial_rows) = run_campaign(kind, &cfg)?;
                rows.extend(trial_rows.into_iter().map(|r| (kind, r)));
            }
            let doc = match args.format.unwrap_or(Format::Rows) {
                Format::Rows => {
                    let mut s = String::from(ROWS_HEADER);
                    s.push('\n');
                    for (kind, r) in &rows {
                        s.push_str(&format!(
                            "{},{},{},{},{},{}\n",
                            kind.name(),
                            r.trial,
                            r.step,
                            fmt_f64(r.alpha_inputs),
                            fmt_f64(r.alpha_centers),
                            fmt_f64(r.ratio)
                        ));
                    }
                    s
                }
                Format::Doc => to_json(
                    &rows
                        .iter()
                        .map(|(kind, r)| PlotRow {
                            check: kind.name(),
                            trial: r.trial,
                            step: r.step,
                            alpha_inputs: r.alpha_inputs,
                            alpha_centers: r.alpha_centers,
                            ratio: r.ratio,
                        })
                        .collect::<Vec<_>>(),
                ),
            };
            match &args.out {
                Some(path) => write_file(path, &doc)?,
                None => out = doc,
            }
            Outcome::Ok
        }
    };
    stdout
        .write_all(out.as_bytes())
        .map_err(|source| CliError::Write {
            path: "<stdout>".into(),
            source,
        })?;
    Ok(outcome)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}
