//! Central-charge fits, off-critical slopes and the lattice sweeps that feed
//! them.
//!
//! Every fit is ordinary least squares of the entropy against the logarithmic
//! abscissa of a conformal formula; the slope is converted to a central charge
//! through the prefactor of that formula.

use std::f64::consts::PI;

use crate::boson::{boson_block_entropy, BosonParams};
use crate::error::{Error, Result};
use crate::ising::{
    block_entanglement, correlation_length, ff_entropy, ff_renyi, free_fermion, BlockSpec, BoundaryCondition, Solver,
    TfiParams,
};
use crate::sweep::par_map;

pub const MIN_FIT_POINTS: usize = 3;
pub const POOR_FIT_RMS: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingPoint {
    pub abscissa: f64,
    pub entropy: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DatasetMeta {
    pub geometry: String,
    pub boundary_points: u32,
    pub model: String,
}

/// Entropy samples with strictly increasing abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingDataset {
    points: Vec<ScalingPoint>,
    meta: DatasetMeta,
}

impl ScalingDataset {
    pub fn new(points: Vec<ScalingPoint>, meta: DatasetMeta) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if !(p.abscissa.is_finite() && p.entropy.is_finite()) {
                return Err(Error::Validation(format!("row {i} is not finite: {p:?}")));
            }
        }
        if let Some(i) = points.windows(2).position(|w| w[1].abscissa <= w[0].abscissa) {
            return Err(Error::Validation(format!(
                "abscissae must be strictly increasing; row {} ({}) follows {}",
                i + 1,
                points[i + 1].abscissa,
                points[i].abscissa
            )));
        }
        Ok(ScalingDataset { points, meta })
    }

    pub fn from_pairs(pairs: &[(f64, f64)], meta: DatasetMeta) -> Result<Self> {
        Self::new(pairs.iter().map(|&(abscissa, entropy)| ScalingPoint { abscissa, entropy }).collect(), meta)
    }

    pub fn points(&self) -> &[ScalingPoint] {
        &self.points
    }

    pub fn meta(&self) -> &DatasetMeta {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Rows with `lo <= abscissa <= hi`.
    pub fn window(&self, lo: f64, hi: f64) -> ScalingDataset {
        ScalingDataset {
            points: self.points.iter().copied().filter(|p| p.abscissa >= lo && p.abscissa <= hi).collect(),
            meta: self.meta.clone(),
        }
    }
}

/// Which conformal law the abscissa refers to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitModel {
    /// Interval of length `ell` in a periodic chain of `size` sites:
    /// `S = (c/3) ln[(L/pi) sin(pi ell/L)] + k`.
    BulkPeriodic { size: f64 },
    /// Interval at the end of an open chain: `(c/6) ln[(2L/pi) sin(pi ell/L)]`,
    /// or `(c/6) ln(2 ell)` when the chain is semi-infinite or the abscissa
    /// is the half-split length of a size sweep.
    BoundaryOpen { size: Option<f64> },
    /// Interval of length `ell` in an infinite system: `(c/3) ln ell`.
    SingleInterval,
    /// Abscissa is the correlation length: `(A c/6) ln xi`.
    OffCritical { boundary_points: u32 },
}

impl FitModel {
    pub fn tag(&self) -> &'static str {
        match self {
            FitModel::BulkPeriodic { .. } => "bulk_periodic",
            FitModel::BoundaryOpen { .. } => "boundary_open",
            FitModel::SingleInterval => "single_interval",
            FitModel::OffCritical { .. } => "off_critical",
        }
    }

    /// Coefficient of `c` in front of the logarithm.
    pub fn prefactor(&self) -> f64 {
        match self {
            FitModel::BulkPeriodic { .. } | FitModel::SingleInterval => 1.0 / 3.0,
            FitModel::BoundaryOpen { .. } => 1.0 / 6.0,
            FitModel::OffCritical { boundary_points } => *boundary_points as f64 / 6.0,
        }
    }

    pub fn log_abscissa(&self, x: f64) -> Result<f64> {
        let arg = match *self {
            FitModel::BulkPeriodic { size } => {
                if !(x > 0.0 && x < size) {
                    return Err(Error::Validation(format!("interval {x} outside (0, {size})")));
                }
                size / PI * (PI * x / size).sin()
            }
            FitModel::BoundaryOpen { size: Some(size) } => {
                if !(x > 0.0 && x < size) {
                    return Err(Error::Validation(format!("interval {x} outside (0, {size})")));
                }
                2.0 * size / PI * (PI * x / size).sin()
            }
            FitModel::BoundaryOpen { size: None } => 2.0 * x,
            FitModel::SingleInterval | FitModel::OffCritical { .. } => x,
        };
        if !(arg > 0.0) {
            return Err(Error::Validation(format!("abscissa {x} has no logarithm under {}", self.tag())));
        }
        Ok(arg.ln())
    }

    fn validate(&self) -> Result<()> {
        match *self {
            FitModel::BulkPeriodic { size } | FitModel::BoundaryOpen { size: Some(size) } if !(size > 0.0) => {
                Err(Error::Validation(format!("system size must be positive, got {size}")))
            }
            FitModel::OffCritical { boundary_points: 0 } => {
                Err(Error::Validation("off-critical fit needs at least one boundary point".into()))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub c_est: f64,
    pub intercept: f64,
    pub rms_residual: f64,
    pub n_points: usize,
    /// `rms_residual > 0.05`.
    pub poor_fit: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub rms_residual: f64,
}

/// Least-squares line through `(x, y)`.
pub fn line_fit(x: &[f64], y: &[f64]) -> Result<LineFit> {
    if x.len() != y.len() {
        return Err(Error::Validation(format!("{} abscissae for {} ordinates", x.len(), y.len())));
    }
    let n = x.len();
    if n < MIN_FIT_POINTS {
        return Err(Error::InsufficientData { needed: MIN_FIT_POINTS, got: n });
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return Err(Error::Validation("abscissae are all equal".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    Ok(LineFit { slope, intercept, rms_residual: (rss / n as f64).sqrt() })
}

pub fn fit_central_charge(ds: &ScalingDataset, model: FitModel) -> Result<FitResult> {
    model.validate()?;
    let x = ds.points.iter().map(|p| model.log_abscissa(p.abscissa)).collect::<Result<Vec<_>>>()?;
    let y: Vec<f64> = ds.points.iter().map(|p| p.entropy).collect();
    let line = line_fit(&x, &y)?;
    let poor_fit = line.rms_residual > POOR_FIT_RMS;
    if poor_fit {
        log::warn!("{} fit has rms residual {:.3e}", model.tag(), line.rms_residual);
    }
    Ok(FitResult {
        c_est: line.slope / model.prefactor(),
        intercept: line.intercept,
        rms_residual: line.rms_residual,
        n_points: x.len(),
        poor_fit,
    })
}

/// Exponent `e` of `Tr rho^n ~ chord^-e`, fitted in log-log form.
pub fn renyi_exponent_fit(chords: &[f64], traces: &[f64]) -> Result<f64> {
    if let Some(bad) = chords.iter().chain(traces).find(|v| !(**v > 0.0)) {
        return Err(Error::Validation(format!("power-law fit needs positive data, got {bad}")));
    }
    let x: Vec<f64> = chords.iter().map(|v| v.ln()).collect();
    let y: Vec<f64> = traces.iter().map(|v| v.ln()).collect();
    Ok(-line_fit(&x, &y)?.slope)
}

/// Slope of `S` against `ln xi` over `xi in [lo, hi]`.
///
/// Several branches (for instance the two sides of a critical point) are
/// pooled with a separate intercept each, so constant offsets between
/// branches do not leak into the slope.
pub fn off_critical_slope(branches: &[&ScalingDataset], window: (f64, f64)) -> Result<f64> {
    let (lo, hi) = window;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::Validation(format!("invalid correlation-length window [{lo}, {hi}]")));
    }
    let (mut sxx, mut sxy, mut n) = (0.0, 0.0, 0);
    for ds in branches {
        let w = ds.window(lo, hi);
        if w.is_empty() {
            continue;
        }
        let x: Vec<f64> = w.points.iter().map(|p| p.abscissa.ln()).collect();
        let mx = x.iter().sum::<f64>() / x.len() as f64;
        let my = w.points.iter().map(|p| p.entropy).sum::<f64>() / x.len() as f64;
        for (xi, p) in x.iter().zip(&w.points) {
            sxx += (xi - mx).powi(2);
            sxy += (xi - mx) * (p.entropy - my);
        }
        n += x.len();
    }
    if n < MIN_FIT_POINTS {
        return Err(Error::InsufficientData { needed: MIN_FIT_POINTS, got: n });
    }
    if !(sxx > 0.0) {
        return Err(Error::Validation("every branch has a single correlation length in the window".into()));
    }
    Ok(sxy / sxx)
}

/// Side of the critical point approached by an off-critical sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Disordered,
    Ordered,
}

impl Phase {
    pub fn coupling(self, xi: f64) -> f64 {
        match self {
            Phase::Disordered => 1.0 - 1.0 / xi,
            Phase::Ordered => 1.0 + 1.0 / xi,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Phase::Disordered => "disordered",
            Phase::Ordered => "ordered",
        }
    }
}

/// Geometric grid of `points` values from `lo` to `hi`.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo) || points < 2 {
        return Err(Error::Validation(format!("invalid log grid [{lo}, {hi}] with {points} points")));
    }
    let step = (hi / lo).ln() / (points - 1) as f64;
    Ok((0..points).map(|i| if i + 1 == points { hi } else { lo * (step * i as f64).exp() }).collect())
}

/// Entropies (and optional Rényi traces) of the blocks `[start, start + ell)`
/// of the critical or off-critical Ising chain, from a single free-fermion
/// ground state.
pub fn ising_block_sweep(p: &TfiParams, start: usize, ells: &[usize], renyi: &[u32]) -> Result<Vec<IsingBlockRow>> {
    let gs = free_fermion::FreeFermionGroundState::new(p)?;
    ells.iter()
        .map(|&ell| {
            let b = BlockSpec::new(start, ell, p.sites())?;
            let f = free_fermion::fermion_spectrum(&gs.block_correlations(&b)?)?;
            Ok(IsingBlockRow {
                ell,
                entropy: ff_entropy(&f),
                renyi: renyi.iter().map(|&n| (n, ff_renyi(&f, n))).collect(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsingBlockRow {
    pub ell: usize,
    pub entropy: f64,
    pub renyi: Vec<(u32, f64)>,
}

fn meta(geometry: &str, boundary_points: u32, model: &str) -> DatasetMeta {
    DatasetMeta { geometry: geometry.into(), boundary_points, model: model.into() }
}

pub fn ising_scaling_dataset(p: &TfiParams, ells: &[usize]) -> Result<ScalingDataset> {
    let rows = ising_block_sweep(p, 0, ells, &[])?;
    let bp = BlockSpec::new(0, ells.first().copied().unwrap_or(1), p.sites())?.boundary_points(p.sites(), p.bc());
    ScalingDataset::new(
        rows.iter().map(|r| ScalingPoint { abscissa: r.ell as f64, entropy: r.entropy }).collect(),
        meta(p.bc().tag(), bp, "ising"),
    )
}

/// Block used by the off-critical and figure sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlockPolicy {
    /// Half of a periodic chain (two boundary points).
    #[default]
    PeriodicHalf,
    /// Left half of an open chain (one boundary point).
    OpenHalf,
}

impl BlockPolicy {
    pub fn bc(self) -> BoundaryCondition {
        match self {
            BlockPolicy::PeriodicHalf => BoundaryCondition::Periodic,
            BlockPolicy::OpenHalf => BoundaryCondition::Open,
        }
    }

    pub fn boundary_points(self) -> u32 {
        match self {
            BlockPolicy::PeriodicHalf => 2,
            BlockPolicy::OpenHalf => 1,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            BlockPolicy::PeriodicHalf => "periodic_half",
            BlockPolicy::OpenHalf => "open_half",
        }
    }
}

impl std::str::FromStr for BlockPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "periodic_half" | "periodic" => Ok(BlockPolicy::PeriodicHalf),
            "open_half" | "open" => Ok(BlockPolicy::OpenHalf),
            other => Err(Error::Validation(format!("unknown block policy '{other}'"))),
        }
    }
}

fn half_block_entropy(lambda: f64, sites: usize, policy: BlockPolicy) -> Result<f64> {
    let p = TfiParams::new(lambda, sites, policy.bc())?;
    let block = BlockSpec::half(sites)?;
    Ok(block_entanglement(&p, &[block], &[], Solver::FreeFermion)?[0].entropy)
}

/// Half-block entropy against `xi = |lambda - 1|^-1` on one side of the
/// critical point.
pub fn ising_off_critical_sweep(xis: &[f64], sites: usize, phase: Phase, policy: BlockPolicy) -> Result<ScalingDataset> {
    let s = par_map(xis, |&xi| half_block_entropy(phase.coupling(xi), sites, policy))?;
    ScalingDataset::new(
        xis.iter().zip(s).map(|(&abscissa, entropy)| ScalingPoint { abscissa, entropy }).collect(),
        meta(policy.bc().tag(), policy.boundary_points(), &format!("ising_{}", phase.tag())),
    )
}

/// `S(lambda)` for the half block. The grid must be strictly increasing.
pub fn figure_sweep(lambdas: &[f64], sites: usize, policy: BlockPolicy) -> Result<ScalingDataset> {
    let s = par_map(lambdas, |&l| half_block_entropy(l, sites, policy))?;
    ScalingDataset::new(
        lambdas.iter().zip(s).map(|(&abscissa, entropy)| ScalingPoint { abscissa, entropy }).collect(),
        meta(policy.bc().tag(), policy.boundary_points(), "ising_figure"),
    )
}

/// Location of the maximum and monotonicity of both flanks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveShape {
    pub argmax: usize,
    pub peak_abscissa: f64,
    pub rising_before_peak: bool,
    pub falling_after_peak: bool,
}

impl CurveShape {
    pub fn single_peak(&self) -> bool {
        self.rising_before_peak && self.falling_after_peak
    }
}

pub fn curve_shape(ds: &ScalingDataset) -> Result<CurveShape> {
    let pts = ds.points();
    if pts.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let argmax = pts
        .iter()
        .enumerate()
        .fold(0, |best, (i, p)| if p.entropy > pts[best].entropy { i } else { best });
    Ok(CurveShape {
        argmax,
        peak_abscissa: pts[argmax].abscissa,
        rising_before_peak: pts[..=argmax].windows(2).all(|w| w[1].entropy > w[0].entropy),
        falling_after_peak: pts[argmax..].windows(2).all(|w| w[1].entropy < w[0].entropy),
    })
}

/// Half-split entropy of open boson chains of the given sizes at fixed mass,
/// with the half length `L/2` as abscissa.
pub fn boson_half_split_sweep(sizes: &[usize], mass: f64) -> Result<ScalingDataset> {
    let s = par_map(sizes, |&n| {
        let p = BosonParams::new(mass, n, BoundaryCondition::Open)?;
        boson_block_entropy(&p, &BlockSpec::half(n)?)
    })?;
    ScalingDataset::new(
        sizes.iter().zip(s).map(|(&n, entropy)| ScalingPoint { abscissa: (n / 2) as f64, entropy }).collect(),
        meta("open", 1, "boson"),
    )
}

/// Boson block entropy against `xi = 1/m`.
pub fn boson_off_critical_sweep(xis: &[f64], sites: usize, bc: BoundaryCondition, block: BlockSpec) -> Result<ScalingDataset> {
    let s = par_map(xis, |&xi| boson_block_entropy(&BosonParams::new(1.0 / xi, sites, bc)?, &block))?;
    ScalingDataset::new(
        xis.iter().zip(s).map(|(&abscissa, entropy)| ScalingPoint { abscissa, entropy }).collect(),
        meta(bc.tag(), block.boundary_points(sites, bc), "boson"),
    )
}

/// Half-split entropy of an open chain of `sites` sites against `xi/L`.
pub fn crossover_curve(sites: usize, masses: &[f64]) -> Result<ScalingDataset> {
    let mut masses = masses.to_vec();
    masses.sort_by(|a, b| b.total_cmp(a));
    let s = par_map(&masses, |&m| {
        boson_block_entropy(&BosonParams::new(m, sites, BoundaryCondition::Open)?, &BlockSpec::half(sites)?)
    })?;
    ScalingDataset::new(
        masses
            .iter()
            .zip(s)
            .map(|(&m, entropy)| ScalingPoint { abscissa: 1.0 / (m * sites as f64), entropy })
            .collect(),
        meta("open", 1, "boson_crossover"),
    )
}

/// `xi` column for an Ising table; `None` at the critical point.
pub fn ising_xi(lambda: f64) -> Option<f64> {
    let xi = correlation_length(lambda);
    (!xi.is_divergent()).then(|| xi.value())
}
