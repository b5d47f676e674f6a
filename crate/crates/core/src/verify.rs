//! Seeded randomized campaigns that check the stability inequalities
//! between clouds, their Chebyshev radii and their center sets.
//!
//! Every trial draws its inputs from a ChaCha8 stream selected by
//! `(seed, trial index)`, so a trial's data does not depend on which trials
//! ran before it. Each check is a pure [`evaluate`] of a [`Witness`]; the
//! campaigns feed random witnesses through it, and the same function replays
//! any witness stored in a report.

use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chebyshev::{cheb_l2, cheb_linf, cheb_radius_linf, enclosing_balls_disjoint};
use crate::error::{Error, Result};
use crate::geometry::{diameter, dist, NormTag, PointCloud, Vector};
use crate::metrics::{box_directed_hausdorff_linf, box_hausdorff_linf, hausdorff, nnet_dist};

pub const DEFAULT_SEED: u64 = 42;

/// Slack for inequality certification.
pub const INEQUALITY_TOL: f64 = 1e-9;

/// Slack for closed-form identities and for `alpha <= alpha_hat`.
pub const EXACT_TOL: f64 = 1e-12;

/// Lipschitz constant of the max-norm center map.
pub const LIPSCHITZ_CONSTANT: f64 = 2.0;

/// Length of each stability trace, `n = 1..=STABILITY_STEPS`.
pub const STABILITY_STEPS: u32 = 64;

/// Perturbation sizes of the analytic family reaching ratio 2.
pub const TIGHTNESS_DELTAS: [f64; 3] = [1.0, 0.1, 0.01];

/// Moves attempted per hill-climbing run in the tightness search.
pub const HILL_CLIMB_STEPS: u32 = 40;

/// The inequality families a campaign can check.
///
/// Wire names (`theorem2`, `lemma0`, ...) are the CLI check names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CheckKind {
    /// `alpha(cheb M, cheb W) <= 2 alpha(M, W)` in the max norm.
    #[serde(rename = "theorem2")]
    CenterLipschitz,
    /// Same bound with the bottleneck distance on the right.
    #[serde(rename = "corollary")]
    CenterLipschitzBottleneck,
    /// `alpha(M, W) <= alpha_hat(M, W)` for equal-size clouds.
    #[serde(rename = "alpha-le-alphahat")]
    HausdorffBelowBottleneck,
    /// `|R(M) - R(W)| <= alpha(M, W)` in both norms.
    #[serde(rename = "radius-lipschitz")]
    RadiusLipschitz,
    /// Two-sided bound for Euclidean 2-point clouds:
    /// `|c_M c_Z| <= alpha(M, Z) <= |c_M c_Z| + (D[M] + D[Z]) / 2`.
    #[serde(rename = "lemma0")]
    TwoPointSandwich,
    /// Center boxes of `M + U/n` drift back into the center box of `M`
    /// at rate `2/n`.
    #[serde(rename = "lemma1")]
    CenterStability,
    /// `|c_M c_W| <= 2 alpha(M, W)` for Euclidean clouds whose open
    /// enclosing balls are disjoint.
    #[serde(rename = "lemma2")]
    DisjointBallCenters,
    /// Analytic family with ratio exactly 2, plus hill-climbing for larger ratios.
    #[serde(rename = "tightness")]
    Tightness,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::CenterLipschitz,
        CheckKind::CenterLipschitzBottleneck,
        CheckKind::HausdorffBelowBottleneck,
        CheckKind::RadiusLipschitz,
        CheckKind::TwoPointSandwich,
        CheckKind::CenterStability,
        CheckKind::DisjointBallCenters,
        CheckKind::Tightness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::CenterLipschitz => "theorem2",
            CheckKind::CenterLipschitzBottleneck => "corollary",
            CheckKind::HausdorffBelowBottleneck => "alpha-le-alphahat",
            CheckKind::RadiusLipschitz => "radius-lipschitz",
            CheckKind::TwoPointSandwich => "lemma0",
            CheckKind::CenterStability => "lemma1",
            CheckKind::DisjointBallCenters => "lemma2",
            CheckKind::Tightness => "tightness",
        }
    }

    /// Whether the check runs in the max norm and needs `dim >= 2`.
    fn needs_plane(self) -> bool {
        matches!(
            self,
            CheckKind::CenterLipschitz
                | CheckKind::CenterLipschitzBottleneck
                | CheckKind::CenterStability
                | CheckKind::Tightness
        )
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

/// Parameters of one campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub seed: u64,
    pub trials: u64,
    pub dim_min: usize,
    pub dim_max: usize,
    pub points_min: usize,
    pub points_max: usize,
    /// Coordinates are drawn from `[-coord_max, coord_max]`.
    pub coord_max: f64,
    /// Perturbation sizes are drawn from `(0, eps_max]`.
    pub eps_max: f64,
    /// Constant on the right of the center-map bounds; 2 unless probing
    /// whether a smaller one survives.
    #[serde(default = "default_lipschitz")]
    pub lipschitz: f64,
}

fn default_lipschitz() -> f64 {
    LIPSCHITZ_CONSTANT
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: DEFAULT_SEED,
            trials: 10_000,
            dim_min: 2,
            dim_max: 8,
            points_min: 1,
            points_max: 32,
            coord_max: 10.0,
            eps_max: 1.0,
            lipschitz: LIPSCHITZ_CONSTANT,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self, kind: CheckKind) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.dim_min == 0 || self.dim_min > self.dim_max {
            return bad(format!("dim range {}:{}", self.dim_min, self.dim_max));
        }
        if kind.needs_plane() && self.dim_min < 2 {
            return bad(format!("check {kind} needs dim >= 2"));
        }
        if self.points_min == 0 || self.points_min > self.points_max {
            return bad(format!(
                "points range {}:{}",
                self.points_min, self.points_max
            ));
        }
        if !(self.coord_max.is_finite() && self.coord_max >= 0.0) {
            return bad(format!("coordinate bound {}", self.coord_max));
        }
        if !(self.eps_max.is_finite() && self.eps_max > 0.0) {
            return bad(format!("eps bound {}", self.eps_max));
        }
        if !(self.lipschitz.is_finite() && self.lipschitz > 0.0) {
            return bad(format!("lipschitz constant {}", self.lipschitz));
        }
        Ok(())
    }
}

/// Inputs of one evaluated instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub m: PointCloud,
    pub w: PointCloud,
    pub norm: NormTag,
    /// Perturbation scale: `1/n` for stability traces, `delta` for the
    /// analytic tightness family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tol: f64,
}

impl Inequality {
    fn new(label: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        Inequality {
            label: label.to_owned(),
            lhs,
            rhs,
            tol,
        }
    }

    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + self.tol
    }
}

/// Result of evaluating a witness: the distance between the inputs, the
/// distance between what the check derives from them, and the inequalities
/// relating the two.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub input_metric: f64,
    pub center_metric: f64,
    pub inequalities: Vec<Inequality>,
}

impl Evaluation {
    /// `center_metric / input_metric`, defined as 0 when the inputs coincide.
    pub fn ratio(&self) -> f64 {
        if self.input_metric > 0.0 {
            self.center_metric / self.input_metric
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: u64,
    pub step: u32,
    pub inequality: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; negative beyond the tolerance for a violation.
    pub slack: f64,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxRatio {
    pub value: f64,
    pub trial: u64,
    pub step: u32,
    pub input_metric: f64,
    pub center_metric: f64,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Retention {
    pub retained: u64,
    pub rate: f64,
}

/// One analytic-family instance of the tightness search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactRatio {
    pub delta: f64,
    pub input_metric: f64,
    pub center_metric: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: CheckKind,
    pub seed: u64,
    pub trials_run: u64,
    pub violations: Vec<Violation>,
    pub max_ratio: Option<MaxRatio>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retention: Option<Retention>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exact_ratios: Vec<ExactRatio>,
    pub config: CampaignConfig,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let ratio = self
            .max_ratio
            .as_ref()
            .map_or_else(|| "n/a".to_owned(), |r| format!("{:.12}", r.value));
        let mut line = format!(
            "{} {}: trials={} violations={} max_ratio={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.check_name,
            self.trials_run,
            self.violations.len(),
            ratio,
        );
        if let Some(r) = &self.retention {
            line.push_str(&format!(" retained={} rate={:.4}", r.retained, r.rate));
        }
        line
    }
}

/// One per-trial (or per-step) record for external plotting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub trial: u64,
    pub step: u32,
    pub alpha_inputs: f64,
    pub alpha_centers: f64,
    pub ratio: f64,
}

/// Evaluates one check on a witness with the default constant 2.
pub fn evaluate(kind: CheckKind, witness: &Witness) -> Result<Evaluation> {
    evaluate_with(kind, witness, LIPSCHITZ_CONSTANT)
}

/// Evaluates one check on a witness, using `lipschitz` as the constant of
/// the center-map bounds. Campaigns and replays share this path.
pub fn evaluate_with(kind: CheckKind, witness: &Witness, lipschitz: f64) -> Result<Evaluation> {
    let Witness { m, w, norm, scale } = witness;
    let eval = match kind {
        CheckKind::CenterLipschitz | CheckKind::Tightness => {
            let input = hausdorff(m, w, NormTag::Linf)?;
            let centers = box_hausdorff_linf(&cheb_linf(m).center_set, &cheb_linf(w).center_set)?;
            let mut inequalities = vec![Inequality::new(
                "lipschitz",
                centers,
                lipschitz * input,
                INEQUALITY_TOL,
            )];
            if kind == CheckKind::Tightness && scale.is_some() {
                let ratio = if input > 0.0 { centers / input } else { 0.0 };
                inequalities.push(Inequality::new(
                    "exact-ratio",
                    (ratio - LIPSCHITZ_CONSTANT).abs(),
                    0.0,
                    EXACT_TOL,
                ));
            }
            Evaluation {
                input_metric: input,
                center_metric: centers,
                inequalities,
            }
        }
        CheckKind::CenterLipschitzBottleneck => {
            let input = nnet_dist(m, w, NormTag::Linf)?;
            let centers = box_hausdorff_linf(&cheb_linf(m).center_set, &cheb_linf(w).center_set)?;
            Evaluation {
                input_metric: input,
                center_metric: centers,
                inequalities: vec![Inequality::new(
                    "lipschitz",
                    centers,
                    lipschitz * input,
                    INEQUALITY_TOL,
                )],
            }
        }
        CheckKind::HausdorffBelowBottleneck => {
            let alpha = hausdorff(m, w, *norm)?;
            let alpha_hat = nnet_dist(m, w, *norm)?;
            Evaluation {
                input_metric: alpha_hat,
                center_metric: alpha,
                inequalities: vec![Inequality::new(
                    "alpha-le-alphahat",
                    alpha,
                    alpha_hat,
                    EXACT_TOL,
                )],
            }
        }
        CheckKind::RadiusLipschitz => {
            let input = hausdorff(m, w, *norm)?;
            let (rm, rw) = match norm {
                NormTag::Linf => (cheb_radius_linf(m), cheb_radius_linf(w)),
                NormTag::L2 => (cheb_l2(m).radius, cheb_l2(w).radius),
            };
            let drift = (rm - rw).abs();
            Evaluation {
                input_metric: input,
                center_metric: drift,
                inequalities: vec![Inequality::new("radius", drift, input, INEQUALITY_TOL)],
            }
        }
        CheckKind::TwoPointSandwich => {
            if m.len() != 2 || w.len() != 2 {
                return Err(Error::InvalidConfig(
                    "two-point sandwich needs clouds of exactly two points".into(),
                ));
            }
            let input = hausdorff(m, w, NormTag::L2)?;
            let centers = dist(&cheb_l2(m).center, &cheb_l2(w).center, NormTag::L2)?;
            let half_diams = 0.5 * (diameter(m, NormTag::L2) + diameter(w, NormTag::L2));
            Evaluation {
                input_metric: input,
                center_metric: centers,
                inequalities: vec![
                    Inequality::new("lower", centers, input, INEQUALITY_TOL),
                    Inequality::new("upper", input, centers + half_diams, INEQUALITY_TOL),
                ],
            }
        }
        CheckKind::CenterStability => {
            let scale = scale.ok_or_else(|| {
                Error::InvalidConfig("stability witness needs a perturbation scale".into())
            })?;
            // `w` is the perturbed cloud, `m` the limit.
            let input = hausdorff(w, m, NormTag::Linf)?;
            let drift =
                box_directed_hausdorff_linf(&cheb_linf(w).center_set, &cheb_linf(m).center_set)?;
            Evaluation {
                input_metric: input,
                center_metric: drift,
                inequalities: vec![
                    Inequality::new("perturbation", input, scale, INEQUALITY_TOL),
                    Inequality::new("drift", drift, lipschitz * scale, INEQUALITY_TOL),
                ],
            }
        }
        CheckKind::DisjointBallCenters => {
            let input = hausdorff(m, w, NormTag::L2)?;
            let centers = dist(&cheb_l2(m).center, &cheb_l2(w).center, NormTag::L2)?;
            Evaluation {
                input_metric: input,
                center_metric: centers,
                inequalities: vec![Inequality::new(
                    "centers",
                    centers,
                    lipschitz * input,
                    INEQUALITY_TOL,
                )],
            }
        }
    };
    Ok(eval)
}

/// Independent ChaCha8 stream for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `n` points with coordinates uniform in `coord_range` (inclusive).
pub fn gen_cloud(
    rng: &mut ChaCha8Rng,
    dim: usize,
    n: usize,
    coord_range: (f64, f64),
) -> Result<PointCloud> {
    let (lo, hi) = coord_range;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::InvalidConfig(format!(
            "coordinate range [{lo}, {hi}]"
        )));
    }
    let points = (0..n)
        .map(|_| Vector::new((0..dim).map(|_| rng.random_range(lo..=hi)).collect()))
        .collect::<Result<Vec<_>>>()?;
    PointCloud::new(points)
}

/// Moves every point of `m` by at most `eps` in `norm`.
///
/// Each displacement is a uniform direction in the cube, rescaled to a
/// uniform length in `[0, eps]`.
pub fn gen_perturbation(
    m: &PointCloud,
    eps: f64,
    rng: &mut ChaCha8Rng,
    norm: NormTag,
) -> Result<PointCloud> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::InvalidConfig(format!("perturbation size {eps}")));
    }
    let dim = m.dim();
    let zero = vec![0.0; dim];
    let points = m
        .iter()
        .map(|p| {
            let dir: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect();
            let length: f64 = rng.random_range(0.0..=1.0);
            let size = crate::geometry::dist_unchecked(&dir, &zero, norm);
            let factor = if size > 0.0 { eps * length / size } else { 0.0 };
            Vector::new(
                p.coords()
                    .iter()
                    .zip(&dir)
                    .map(|(x, d)| x + factor * d)
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    PointCloud::new(points)
}

/// `M = {(0,0), (0,2)}` and `W = {(delta,-delta), (delta, 2+delta)}`:
/// Hausdorff distance `delta`, center boxes `2 delta` apart.
pub fn tightness_pair(delta: f64) -> (PointCloud, PointCloud) {
    let m = PointCloud::from_rows(&[[0.0, 0.0], [0.0, 2.0]]).expect("finite");
    let w = PointCloud::from_rows(&[[delta, -delta], [delta, 2.0 + delta]])
        .expect("delta must be finite");
    (m, w)
}

struct Collector {
    kind: CheckKind,
    lipschitz: f64,
    violations: Vec<Violation>,
    max_ratio: Option<MaxRatio>,
    rows: Vec<TrialRow>,
}

impl Collector {
    fn new(kind: CheckKind, lipschitz: f64) -> Self {
        Collector {
            kind,
            lipschitz,
            violations: Vec::new(),
            max_ratio: None,
            rows: Vec::new(),
        }
    }

    fn observe(&mut self, trial: u64, step: u32, witness: &Witness) -> Result<Evaluation> {
        let eval = evaluate_with(self.kind, witness, self.lipschitz)?;
        for ineq in eval.inequalities.iter().filter(|i| !i.holds()) {
            self.violations.push(Violation {
                trial,
                step,
                inequality: ineq.label.clone(),
                lhs: ineq.lhs,
                rhs: ineq.rhs,
                slack: ineq.rhs - ineq.lhs,
                witness: witness.clone(),
            });
        }
        let ratio = eval.ratio();
        if self
            .max_ratio
            .as_ref()
            .is_none_or(|best| ratio > best.value)
        {
            self.max_ratio = Some(MaxRatio {
                value: ratio,
                trial,
                step,
                input_metric: eval.input_metric,
                center_metric: eval.center_metric,
                witness: witness.clone(),
            });
        }
        Ok(eval)
    }

    fn row(&mut self, trial: u64, step: u32, eval: &Evaluation) {
        self.rows.push(TrialRow {
            trial,
            step,
            alpha_inputs: eval.input_metric,
            alpha_centers: eval.center_metric,
            ratio: eval.ratio(),
        });
    }

    fn observe_row(&mut self, trial: u64, step: u32, witness: &Witness) -> Result<Evaluation> {
        let eval = self.observe(trial, step, witness)?;
        self.row(trial, step, &eval);
        Ok(eval)
    }

    fn finish(
        mut self,
        cfg: &CampaignConfig,
        trials_run: u64,
        retention: Option<Retention>,
        exact_ratios: Vec<ExactRatio>,
    ) -> (CheckReport, Vec<TrialRow>) {
        self.violations.sort_by_key(|v| (v.trial, v.step));
        let report = CheckReport {
            check_name: self.kind,
            seed: cfg.seed,
            trials_run,
            violations: self.violations,
            max_ratio: self.max_ratio,
            retention,
            exact_ratios,
            config: cfg.clone(),
        };
        (report, self.rows)
    }
}

struct Sampler<'a> {
    cfg: &'a CampaignConfig,
    rng: ChaCha8Rng,
}

impl<'a> Sampler<'a> {
    fn new(cfg: &'a CampaignConfig, trial: u64) -> Self {
        Sampler {
            cfg,
            rng: trial_rng(cfg.seed, trial),
        }
    }

    fn dim(&mut self) -> usize {
        self.rng.random_range(self.cfg.dim_min..=self.cfg.dim_max)
    }

    fn size(&mut self) -> usize {
        self.rng
            .random_range(self.cfg.points_min..=self.cfg.points_max)
    }

    fn cloud(&mut self, dim: usize, n: usize) -> Result<PointCloud> {
        let c = self.cfg.coord_max;
        gen_cloud(&mut self.rng, dim, n, (-c, c))
    }

    fn eps(&mut self) -> f64 {
        // (0, eps_max]
        self.cfg.eps_max * (1.0 - self.rng.random_range(0.0..1.0))
    }

    fn perturb(&mut self, m: &PointCloud, norm: NormTag) -> Result<PointCloud> {
        let eps = self.eps();
        gen_perturbation(m, eps, &mut self.rng, norm)
    }

    fn norm(&mut self) -> NormTag {
        if self.rng.random_bool(0.5) {
            NormTag::Linf
        } else {
            NormTag::L2
        }
    }

    /// Partner cloud: an independent draw or a perturbation of `m`, 50/50.
    /// Independent draws keep `m`'s size when `same_size` is set.
    fn partner(&mut self, m: &PointCloud, norm: NormTag, same_size: bool) -> Result<PointCloud> {
        if self.rng.random_bool(0.5) {
            let n = if same_size { m.len() } else { self.size() };
            self.cloud(m.dim(), n)
        } else {
            self.perturb(m, norm)
        }
    }
}

/// Runs one campaign, returning its report and per-trial plot rows.
pub fn run_campaign(kind: CheckKind, cfg: &CampaignConfig) -> Result<(CheckReport, Vec<TrialRow>)> {
    cfg.validate(kind)?;
    match kind {
        CheckKind::CenterLipschitz => pairs_campaign(kind, cfg, NormTag::Linf, false),
        CheckKind::CenterLipschitzBottleneck => pairs_campaign(kind, cfg, NormTag::Linf, true),
        CheckKind::HausdorffBelowBottleneck => alpha_le_alphahat_campaign(cfg),
        CheckKind::RadiusLipschitz => radius_campaign(cfg),
        CheckKind::TwoPointSandwich => two_point_campaign(cfg),
        CheckKind::CenterStability => stability_campaign(cfg),
        CheckKind::DisjointBallCenters => disjoint_balls_campaign(cfg),
        CheckKind::Tightness => tightness_campaign(cfg),
    }
}

pub fn check_center_lipschitz(cfg: &CampaignConfig) -> Result<CheckReport> {
    run_campaign(CheckKind::CenterLipschitz, cfg).map(|r| r.0)
}

pub fn check_center_lipschitz_bottleneck(cfg: &CampaignConfig) -> Result<CheckReport> {
    run_campaign(CheckKind::CenterLipschitzBottleneck, cfg).map(|r| r.0)
}

pub fn check_alpha_le_alphahat(cfg: &CampaignConfig) -> Result<CheckReport> {
    run_campaign(CheckKind::HausdorffBelowBottleneck, cfg).map(|r| r.0)
}

pub fn check_radius_lipschitz(cfg: &CampaignConfig) -> Result<CheckReport> {
    run_campaign(CheckKind::RadiusLipschitz, cfg).map(|r| r.0)
}

pub fn check_two_point_sandwich(cfg: &CampaignConfig) -> Result<CheckReport> {
    run_campaign(CheckKind::TwoPointSandwich, cfg).map(|r| r.0)
}

pub fn check_center_stability(cfg: &CampaignConfig) -> Result<CheckReport> {
    run_campaign(CheckKind::CenterStability, cfg).map(|r| r.0)
}

pub fn check_disjoint_ball_centers(cfg: &CampaignConfig) -> Result<CheckReport> {
    run_campaign(CheckKind::DisjointBallCenters, cfg).map(|r| r.0)
}

pub fn tightness_search(cfg: &CampaignConfig) -> Result<CheckReport> {
    run_campaign(CheckKind::Tightness, cfg).map(|r| r.0)
}

fn pairs_campaign(
    kind: CheckKind,
    cfg: &CampaignConfig,
    norm: NormTag,
    same_size: bool,
) -> Result<(CheckReport, Vec<TrialRow>)> {
    let mut col = Collector::new(kind, cfg.lipschitz);
    for trial in 0..cfg.trials {
        let mut s = Sampler::new(cfg, trial);
        let (dim, n) = (s.dim(), s.size());
        let m = s.cloud(dim, n)?;
        let w = s.partner(&m, norm, same_size)?;
        col.observe_row(
            trial,
            0,
            &Witness {
                m,
                w,
                norm,
                scale: None,
            },
        )?;
    }
    Ok(col.finish(cfg, cfg.trials, None, vec![]))
}

fn alpha_le_alphahat_campaign(cfg: &CampaignConfig) -> Result<(CheckReport, Vec<TrialRow>)> {
    let mut col = Collector::new(CheckKind::HausdorffBelowBottleneck, cfg.lipschitz);
    for trial in 0..cfg.trials {
        let mut s = Sampler::new(cfg, trial);
        let (dim, n) = (s.dim(), s.size());
        let norm = s.norm();
        let m = s.cloud(dim, n)?;
        let w = s.partner(&m, norm, true)?;
        col.observe_row(
            trial,
            0,
            &Witness {
                m,
                w,
                norm,
                scale: None,
            },
        )?;
    }
    Ok(col.finish(cfg, cfg.trials, None, vec![]))
}

fn radius_campaign(cfg: &CampaignConfig) -> Result<(CheckReport, Vec<TrialRow>)> {
    let mut col = Collector::new(CheckKind::RadiusLipschitz, cfg.lipschitz);
    for trial in 0..cfg.trials {
        let mut s = Sampler::new(cfg, trial);
        let (dim, n) = (s.dim(), s.size());
        let m = s.cloud(dim, n)?;
        for (step, norm) in [NormTag::Linf, NormTag::L2].into_iter().enumerate() {
            let w = s.partner(&m, norm, false)?;
            let witness = Witness {
                m: m.clone(),
                w,
                norm,
                scale: None,
            };
            col.observe_row(trial, step as u32, &witness)?;
        }
    }
    Ok(col.finish(cfg, cfg.trials, None, vec![]))
}

fn two_point_campaign(cfg: &CampaignConfig) -> Result<(CheckReport, Vec<TrialRow>)> {
    let mut col = Collector::new(CheckKind::TwoPointSandwich, cfg.lipschitz);
    for trial in 0..cfg.trials {
        let mut s = Sampler::new(cfg, trial);
        let dim = s.dim();
        let m = s.cloud(dim, 2)?;
        let w = s.partner(&m, NormTag::L2, true)?;
        let witness = Witness {
            m,
            w,
            norm: NormTag::L2,
            scale: None,
        };
        col.observe_row(trial, 0, &witness)?;
    }
    Ok(col.finish(cfg, cfg.trials, None, vec![]))
}

/// For each base cloud `M`, a fixed displacement field `U` with
/// `|u_i|_inf <= 1` defines `M_n = M + U/n`, `n = 1..=64`.
fn stability_campaign(cfg: &CampaignConfig) -> Result<(CheckReport, Vec<TrialRow>)> {
    let mut col = Collector::new(CheckKind::CenterStability, cfg.lipschitz);
    for trial in 0..cfg.trials {
        let mut s = Sampler::new(cfg, trial);
        let (dim, n) = (s.dim(), s.size());
        let m = s.cloud(dim, n)?;
        let field = gen_cloud(&mut s.rng, dim, n, (-1.0, 1.0))?;
        for step in 1..=STABILITY_STEPS {
            let scale = 1.0 / f64::from(step);
            let moved = m
                .iter()
                .zip(&field)
                .map(|(p, u)| p.translated(&u.scaled(scale)?))
                .collect::<Result<Vec<_>>>()?;
            let witness = Witness {
                m: m.clone(),
                w: PointCloud::new(moved)?,
                norm: NormTag::Linf,
                scale: Some(scale),
            };
            col.observe_row(trial, step, &witness)?;
        }
    }
    Ok(col.finish(cfg, cfg.trials, None, vec![]))
}

/// Partner clouds are independent draws shifted by up to `3 * coord_max`
/// per coordinate; only pairs with disjoint open enclosing balls count.
fn disjoint_balls_campaign(cfg: &CampaignConfig) -> Result<(CheckReport, Vec<TrialRow>)> {
    let mut col = Collector::new(CheckKind::DisjointBallCenters, cfg.lipschitz);
    let mut retained = 0u64;
    for trial in 0..cfg.trials {
        let mut s = Sampler::new(cfg, trial);
        let (dim, n) = (s.dim(), s.size());
        let m = s.cloud(dim, n)?;
        let n_w = s.size();
        let spread = 3.0 * cfg.coord_max;
        let shift = gen_cloud(&mut s.rng, dim, 1, (-spread, spread))?;
        let w = s.cloud(dim, n_w)?.translated(&shift.points()[0])?;
        if !enclosing_balls_disjoint(&m, &w)? {
            continue;
        }
        retained += 1;
        let witness = Witness {
            m,
            w,
            norm: NormTag::L2,
            scale: None,
        };
        col.observe_row(trial, 0, &witness)?;
    }
    let rate = if cfg.trials > 0 {
        retained as f64 / cfg.trials as f64
    } else {
        0.0
    };
    Ok(col.finish(cfg, cfg.trials, Some(Retention { retained, rate }), vec![]))
}

/// Trials `0..3` are the analytic family; each later trial hill-climbs from
/// a random perturbation pair, keeping moves of `W` that raise the ratio.
fn tightness_campaign(cfg: &CampaignConfig) -> Result<(CheckReport, Vec<TrialRow>)> {
    let mut col = Collector::new(CheckKind::Tightness, cfg.lipschitz);
    let mut exact = Vec::new();
    for (trial, delta) in TIGHTNESS_DELTAS.into_iter().enumerate() {
        let (m, w) = tightness_pair(delta);
        let witness = Witness {
            m,
            w,
            norm: NormTag::Linf,
            scale: Some(delta),
        };
        let eval = col.observe_row(trial as u64, 0, &witness)?;
        exact.push(ExactRatio {
            delta,
            input_metric: eval.input_metric,
            center_metric: eval.center_metric,
            ratio: eval.ratio(),
        });
    }
    let offset = TIGHTNESS_DELTAS.len() as u64;
    for run in 0..cfg.trials {
        let trial = offset + run;
        let mut s = Sampler::new(cfg, trial);
        let (dim, n) = (s.dim(), s.size());
        let m = s.cloud(dim, n)?;
        let mut best = Witness {
            w: s.perturb(&m, NormTag::Linf)?,
            m,
            norm: NormTag::Linf,
            scale: None,
        };
        let mut best_eval = col.observe(trial, 0, &best)?;
        for step in 1..=HILL_CLIMB_STEPS {
            let step_size = 0.5 * s.eps() / f64::from(step);
            let candidate = Witness {
                w: gen_perturbation(&best.w, step_size, &mut s.rng, NormTag::Linf)?,
                ..best.clone()
            };
            let eval = col.observe(trial, step, &candidate)?;
            if eval.ratio() > best_eval.ratio() {
                best = candidate;
                best_eval = eval;
            }
        }
        col.row(trial, 0, &best_eval);
    }
    Ok(col.finish(cfg, offset + cfg.trials, None, exact))
}
