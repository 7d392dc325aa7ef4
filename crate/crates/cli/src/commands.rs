use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cftent::analysis::{
    curve_shape, figure_sweep, fit_central_charge, ising_xi, BlockPolicy, FitModel, ScalingDataset, ScalingPoint,
};
use cftent::boson::{boson_block_entropy, BosonParams};
use cftent::cft::{
    entropy_multi_interval, entropy_off_critical, predict, CentralCharge, Cutoff, Geometry, IntervalSet,
    NonUniversalConstants, OffCriticalInput, Quantity,
};
use cftent::ising::{block_entanglement, dense::MAX_DENSE_SITES, BlockSpec, BoundaryCondition, Solver, TfiParams};
use cftent::sweep::par_map;

use crate::table::{Cell, Format, InputTable, ResultTable};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "cftent", version, about = "Entanglement entropy predictions, lattice solvers and fits")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the table here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for sweeps; 0 uses every available core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, short, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate closed-form conformal predictions.
    Predict(PredictArgs),
    /// Block entanglement of the transverse-field Ising chain.
    Ising(IsingArgs),
    /// Block entanglement of the massive harmonic chain.
    Boson(BosonArgs),
    /// Fit a central charge to a table produced by `ising` or `boson`.
    Fit(FitArgs),
    /// Half-block entropy against the coupling for the Ising chain.
    Figure(FigureArgs),
}

/// Real grid given as comma-separated values, `lo:hi:count` (linear) or
/// `lo:hi:count:log`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

#[derive(Debug, Clone, PartialEq)]
pub struct IndexList(pub Vec<usize>);

#[derive(Debug, Clone, PartialEq)]
pub struct Intervals(pub Vec<(f64, f64)>);

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    grid_values(s).map(Grid)
}

fn grid_values(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 1 {
        return s
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|_| format!("'{v}' is not a number")))
            .collect();
    }
    if !(parts.len() == 3 || (parts.len() == 4 && parts[3] == "log")) {
        return Err(format!("grid '{s}' must be a list or lo:hi:count[:log]"));
    }
    let lo: f64 = parts[0].parse().map_err(|_| format!("bad grid start '{}'", parts[0]))?;
    let hi: f64 = parts[1].parse().map_err(|_| format!("bad grid end '{}'", parts[1]))?;
    let n: usize = parts[2].parse().map_err(|_| format!("bad grid count '{}'", parts[2]))?;
    if n < 2 || !(hi > lo) {
        return Err(format!("grid '{s}' needs hi > lo and at least 2 points"));
    }
    if parts.len() == 4 {
        return cftent::analysis::log_grid(lo, hi, n).map_err(|e| e.to_string());
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|i| if i + 1 == n { hi } else { lo + step * i as f64 }).collect())
}

fn parse_usize_list(s: &str) -> Result<IndexList, String> {
    usize_values(s).map(IndexList)
}

fn usize_values(s: &str) -> Result<Vec<usize>, String> {
    if let Some((lo, hi)) = s.split_once("..=") {
        let lo: usize = lo.parse().map_err(|_| format!("bad range start '{lo}'"))?;
        let hi: usize = hi.parse().map_err(|_| format!("bad range end '{hi}'"))?;
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .map(|v| v.trim().parse::<usize>().map_err(|_| format!("'{v}' is not a nonnegative integer")))
        .collect()
}

fn parse_intervals(s: &str) -> Result<Intervals, String> {
    s.split(',')
        .map(|iv| {
            let (u, v) = iv.split_once(':').ok_or_else(|| format!("interval '{iv}' must be u:v"))?;
            let u: f64 = u.trim().parse().map_err(|_| format!("bad endpoint '{u}'"))?;
            let v: f64 = v.trim().parse().map_err(|_| format!("bad endpoint '{v}'"))?;
            Ok((u, v))
        })
        .collect::<Result<Vec<_>, String>>()
        .map(Intervals)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

/// Spelling of an enum flag as the parser accepts it.
fn flag<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryArg {
    Infinite,
    Thermal,
    Periodic,
    Boundary,
    BoundaryThermal,
    BoundaryFinite,
    Multi,
    OffCritical,
}

impl GeometryArg {
    fn name(self) -> &'static str {
        match self {
            GeometryArg::Infinite => "infinite",
            GeometryArg::Thermal => "thermal",
            GeometryArg::Periodic => "periodic",
            GeometryArg::Boundary => "boundary",
            GeometryArg::BoundaryThermal => "boundary-thermal",
            GeometryArg::BoundaryFinite => "boundary-finite",
            GeometryArg::Multi => "multi",
            GeometryArg::OffCritical => "off-critical",
        }
    }
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long, value_enum)]
    pub geometry: GeometryArg,
    /// Central charge.
    #[arg(long)]
    pub c: f64,
    /// UV cutoff.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    /// Interval lengths.
    #[arg(long, value_parser = parse_grid)]
    pub ell: Option<Grid>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// System length for the finite geometries.
    #[arg(long)]
    pub length: Option<f64>,
    /// Disjoint intervals `u:v,u:v,...` for the multi-interval geometry.
    #[arg(long, value_parser = parse_intervals)]
    pub intervals: Option<Intervals>,
    /// Correlation lengths for the off-critical geometry.
    #[arg(long, value_parser = parse_grid)]
    pub xi: Option<Grid>,
    #[arg(long, default_value_t = 2)]
    pub boundary_points: u32,
    /// Evaluate `Tr rho^n` instead of the entropy.
    #[arg(long)]
    pub renyi: Option<u32>,
    #[arg(long)]
    pub k1: Option<f64>,
    #[arg(long)]
    pub k1b: Option<f64>,
    /// Rényi prefactor `c_n` for the index given by `--renyi`.
    #[arg(long)]
    pub cn: Option<f64>,
}

impl PredictArgs {
    fn echo(&self) -> Vec<(String, String)> {
        let mut p = vec![kv("geometry", self.geometry.name()), kv("c", self.c), kv("a", self.a)];
        if let Some(Grid(e)) = &self.ell {
            p.push(kv("ell", join(e)));
        }
        if let Some(b) = self.beta {
            p.push(kv("beta", b));
        }
        if let Some(l) = self.length {
            p.push(kv("length", l));
        }
        if let Some(Intervals(iv)) = &self.intervals {
            p.push(kv("intervals", iv.iter().map(|(u, v)| format!("{u}:{v}")).collect::<Vec<_>>().join(",")));
        }
        if let Some(Grid(x)) = &self.xi {
            p.push(kv("xi", join(x)));
        }
        if self.geometry == GeometryArg::OffCritical {
            p.push(kv("boundary-points", self.boundary_points));
        }
        for (k, v) in [("renyi", self.renyi.map(|n| n as f64)), ("k1", self.k1), ("k1b", self.k1b), ("cn", self.cn)] {
            if let Some(v) = v {
                p.push(kv(k, v));
            }
        }
        p
    }
}

fn require<T>(v: Option<T>, flag: &str, geometry: GeometryArg) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Input(format!("--{flag} is required for the {} geometry", geometry.name())))
}

pub fn cmd_predict(args: &PredictArgs) -> Result<ResultTable, CliError> {
    let c = CentralCharge::new(args.c)?;
    let a = Cutoff::new(args.a)?;
    let mut consts = NonUniversalConstants::new();
    if let Some(k) = args.k1 {
        consts = consts.with_bulk(k);
    }
    if let Some(k) = args.k1b {
        consts = consts.with_boundary(k);
    }
    if let Some(cn) = args.cn {
        let n = args.renyi.ok_or_else(|| CliError::Input("--cn needs --renyi".into()))?;
        consts = consts.with_renyi(n, cn)?;
    }
    let quantity = match args.renyi {
        Some(n) => Quantity::RenyiTrace { n },
        None => Quantity::Entropy,
    };
    let qname = if args.renyi.is_some() { "renyi_trace" } else { "entropy" };
    let mut t = ResultTable::new(
        "predict",
        args.echo(),
        &["geometry", "quantity", "n", "ell", "xi", "value", "constants_defaulted"],
    );
    let n_cell = || args.renyi.map_or(Cell::Null, |n| Cell::from(n));
    let g = args.geometry;
    match g {
        GeometryArg::Multi => {
            if args.renyi.is_some() {
                return Err(CliError::Input("the multi-interval geometry has no Rényi prediction".into()));
            }
            let set = IntervalSet::new(require(args.intervals.as_ref(), "intervals", g)?.0.clone())?;
            let v = entropy_multi_interval(&set, a, c, &consts)?;
            let total: f64 = set.intervals().iter().map(|(u, v)| v - u).sum();
            t.push(vec![g.name().into(), qname.into(), n_cell(), total.into(), Cell::Null, v.into(), consts.bulk_defaulted().into()]);
        }
        GeometryArg::OffCritical => {
            if args.renyi.is_some() {
                return Err(CliError::Input("the off-critical geometry has no Rényi prediction".into()));
            }
            for &xi in &require(args.xi.as_ref(), "xi", g)?.0 {
                let v = entropy_off_critical(OffCriticalInput::new(xi, args.boundary_points)?, a, c)?;
                t.push(vec![g.name().into(), qname.into(), n_cell(), Cell::Null, xi.into(), v.into(), false.into()]);
            }
        }
        _ => {
            let geometry = match g {
                GeometryArg::Infinite => Geometry::InfiniteLine,
                GeometryArg::Thermal => Geometry::Thermal { beta: require(args.beta, "beta", g)? },
                GeometryArg::Periodic => Geometry::PeriodicFinite { length: require(args.length, "length", g)? },
                GeometryArg::Boundary => Geometry::SemiInfiniteBoundary,
                GeometryArg::BoundaryThermal => Geometry::BoundaryThermal { beta: require(args.beta, "beta", g)? },
                GeometryArg::BoundaryFinite => Geometry::BoundaryFinite { length: require(args.length, "length", g)? },
                GeometryArg::Multi | GeometryArg::OffCritical => unreachable!(),
            };
            for &ell in &require(args.ell.as_ref(), "ell", g)?.0 {
                let p = predict(geometry, quantity, ell, a, c, &consts)?;
                t.push(vec![
                    g.name().into(),
                    qname.into(),
                    n_cell(),
                    ell.into(),
                    Cell::Null,
                    p.value.into(),
                    p.constants_defaulted.into(),
                ]);
            }
        }
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BcArg {
    Periodic,
    Open,
}

impl From<BcArg> for BoundaryCondition {
    fn from(b: BcArg) -> Self {
        match b {
            BcArg::Periodic => BoundaryCondition::Periodic,
            BcArg::Open => BoundaryCondition::Open,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Dense,
    Freefermion,
}

impl From<SolverArg> for Solver {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Dense => Solver::Dense,
            SolverArg::Freefermion => Solver::FreeFermion,
        }
    }
}

#[derive(Debug, Args)]
pub struct IsingArgs {
    /// Couplings: list or grid.
    #[arg(long, value_parser = parse_grid)]
    pub lambda: Grid,
    #[arg(long)]
    pub sites: usize,
    #[arg(long, value_enum, default_value_t = BcArg::Periodic)]
    pub bc: BcArg,
    #[arg(long, value_enum, default_value_t = SolverArg::Freefermion)]
    pub solver: SolverArg,
    /// First site of every block.
    #[arg(long, default_value_t = 0)]
    pub start: usize,
    /// Block lengths (`1,2,5` or `lo..=hi`); defaults to every length that fits.
    #[arg(long, value_parser = parse_usize_list)]
    pub ell: Option<IndexList>,
    /// Integer Rényi indices whose traces are reported.
    #[arg(long, value_parser = parse_usize_list)]
    pub renyi: Option<IndexList>,
}

fn blocks(start: usize, ell: Option<&[usize]>, sites: usize) -> Result<Vec<BlockSpec>, CliError> {
    let lens: Vec<usize> = match ell {
        Some(l) => l.to_vec(),
        None => (1..sites.saturating_sub(start).min(sites - 1) + 1).collect(),
    };
    if lens.is_empty() {
        return Err(CliError::Input(format!("no block fits from site {start} in {sites} sites")));
    }
    lens.iter().map(|&l| BlockSpec::new(start, l, sites).map_err(CliError::from)).collect()
}

pub fn cmd_ising(args: &IsingArgs) -> Result<ResultTable, CliError> {
    let lambda = args.lambda.0.clone();
    if lambda.is_empty() {
        return Err(CliError::Input("--lambda needs at least one value".into()));
    }
    let solver: Solver = args.solver.into();
    if solver == Solver::Dense && args.sites > MAX_DENSE_SITES {
        return Err(cftent::Error::Resource(format!(
            "dense solver supports at most {MAX_DENSE_SITES} sites, requested {}",
            args.sites
        ))
        .into());
    }
    let bc: BoundaryCondition = args.bc.into();
    for &l in &lambda {
        TfiParams::new(l, args.sites, bc)?;
    }
    let blocks = blocks(args.start, args.ell.as_ref().map(|l| l.0.as_slice()), args.sites)?;
    let renyi: Vec<u32> = args.renyi.iter().flat_map(|r| r.0.iter()).map(|&n| n as u32).collect();
    let results = par_map(&lambda, |&l| {
        block_entanglement(&TfiParams::new(l, args.sites, bc)?, &blocks, &renyi, solver)
    })?;

    let mut params = vec![
        kv("lambda", join(&lambda)),
        kv("sites", args.sites),
        kv("bc", bc.tag()),
        kv("solver", solver.tag()),
        kv("start", args.start),
        kv("ell", join(&blocks.iter().map(|b| b.len()).collect::<Vec<_>>())),
    ];
    if !renyi.is_empty() {
        params.push(kv("renyi", join(&renyi)));
    }
    let renyi_cols: Vec<String> = renyi.iter().map(|n| format!("renyi_{n}")).collect();
    let mut cols = vec!["lambda", "xi", "sites", "bc", "start", "ell", "entropy"];
    cols.extend(renyi_cols.iter().map(String::as_str));
    cols.extend(["solver", "degenerate"]);
    let mut t = ResultTable::new("ising", params, &cols);
    for (&l, rows) in lambda.iter().zip(&results) {
        for (b, r) in blocks.iter().zip(rows) {
            let mut row: Vec<Cell> = vec![
                l.into(),
                ising_xi(l).into(),
                args.sites.into(),
                bc.tag().into(),
                b.start().into(),
                b.len().into(),
                r.entropy.into(),
            ];
            row.extend(r.renyi.iter().map(|&(_, v)| Cell::from(v)));
            row.push(r.solver.tag().into());
            row.push(r.degenerate.into());
            t.push(row);
        }
    }
    Ok(t)
}

#[derive(Debug, Args)]
pub struct BosonArgs {
    /// Masses: list or grid.
    #[arg(long, value_parser = parse_grid, conflicts_with = "xi", required_unless_present = "xi")]
    pub mass: Option<Grid>,
    /// Correlation lengths `1/m`: list or grid.
    #[arg(long, value_parser = parse_grid)]
    pub xi: Option<Grid>,
    #[arg(long)]
    pub sites: usize,
    #[arg(long, value_enum, default_value_t = BcArg::Open)]
    pub bc: BcArg,
    #[arg(long, default_value_t = 0)]
    pub start: usize,
    /// Block lengths; defaults to half the chain.
    #[arg(long, value_parser = parse_usize_list)]
    pub ell: Option<IndexList>,
}

pub fn cmd_boson(args: &BosonArgs) -> Result<ResultTable, CliError> {
    let masses: Vec<f64> = match (&args.mass, &args.xi) {
        (Some(m), _) => m.0.clone(),
        (None, Some(x)) => x.0.iter().map(|x| 1.0 / x).collect(),
        (None, None) => return Err(CliError::Input("one of --mass or --xi is required".into())),
    };
    let bc: BoundaryCondition = args.bc.into();
    for &m in &masses {
        BosonParams::new(m, args.sites, bc)?;
    }
    let half = [args.sites / 2];
    let blocks = blocks(args.start, Some(args.ell.as_ref().map_or(&half[..], |l| l.0.as_slice())), args.sites)?;
    let results = par_map(&masses, |&m| {
        let p = BosonParams::new(m, args.sites, bc)?;
        blocks.iter().map(|b| boson_block_entropy(&p, b)).collect::<cftent::Result<Vec<f64>>>()
    })?;
    let grid = match (&args.mass, &args.xi) {
        (Some(m), _) => kv("mass", join(&m.0)),
        (None, x) => kv("xi", join(x.as_ref().map_or(&[][..], |x| x.0.as_slice()))),
    };
    let params = vec![
        grid,
        kv("sites", args.sites),
        kv("bc", bc.tag()),
        kv("start", args.start),
        kv("ell", join(&blocks.iter().map(|b| b.len()).collect::<Vec<_>>())),
    ];
    let mut t = ResultTable::new("boson", params, &["mass", "xi", "sites", "bc", "start", "ell", "entropy"]);
    for (&m, rows) in masses.iter().zip(&results) {
        for (b, &s) in blocks.iter().zip(rows) {
            t.push(vec![
                m.into(),
                (1.0 / m).into(),
                args.sites.into(),
                bc.tag().into(),
                b.start().into(),
                b.len().into(),
                s.into(),
            ]);
        }
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    BulkPeriodic,
    BoundaryOpen,
    SingleInterval,
    OffCritical,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// CSV or JSON table (`-` reads standard input).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// System size for the finite-size models; read from the `sites` column
    /// when omitted.
    #[arg(long)]
    pub size: Option<f64>,
    /// Boundary points for the off-critical model.
    #[arg(long)]
    pub boundary_points: Option<u32>,
    /// Abscissa column; `xi` for the off-critical model, `ell` otherwise.
    #[arg(long)]
    pub x_column: Option<String>,
    #[arg(long, default_value = "entropy")]
    pub y_column: String,
    #[arg(long)]
    pub x_min: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
    /// Exit with status 4 when the fit is poor.
    #[arg(long)]
    pub strict: bool,
}

pub struct FitOutcome {
    pub table: ResultTable,
    pub poor_fit: bool,
}

pub fn cmd_fit(args: &FitArgs, input: &str) -> Result<FitOutcome, CliError> {
    let table = InputTable::parse(input)?;
    let x_col = args.x_column.clone().unwrap_or_else(|| {
        if args.model == ModelArg::OffCritical { "xi" } else { "ell" }.to_string()
    });
    let xs = table.floats(&x_col)?;
    let ys = table.floats(&args.y_column)?;
    let lo = args.x_min.unwrap_or(f64::NEG_INFINITY);
    let hi = args.x_max.unwrap_or(f64::INFINITY);
    let points: Vec<ScalingPoint> = xs
        .iter()
        .zip(&ys)
        .filter(|(x, _)| **x >= lo && **x <= hi)
        .map(|(&abscissa, &entropy)| ScalingPoint { abscissa, entropy })
        .collect();
    let size = || -> Result<f64, CliError> {
        if let Some(s) = args.size {
            return Ok(s);
        }
        let sites = table.floats("sites")?;
        match sites.first() {
            Some(&s) if sites.iter().all(|&v| v == s) => Ok(s),
            _ => Err(CliError::Input("--size is required: the table has no single 'sites' value".into())),
        }
    };
    let model = match args.model {
        ModelArg::BulkPeriodic => FitModel::BulkPeriodic { size: size()? },
        ModelArg::BoundaryOpen => FitModel::BoundaryOpen { size: args.size },
        ModelArg::SingleInterval => FitModel::SingleInterval,
        ModelArg::OffCritical => FitModel::OffCritical {
            boundary_points: args
                .boundary_points
                .ok_or_else(|| CliError::Input("--boundary-points is required for the off-critical model".into()))?,
        },
    };
    let ds = ScalingDataset::new(points, Default::default())?;
    let fit = fit_central_charge(&ds, model)?;

    let mut params = vec![kv("input", args.input.display()), kv("model", flag(&args.model))];
    match model {
        FitModel::BulkPeriodic { size } | FitModel::BoundaryOpen { size: Some(size) } => params.push(kv("size", size)),
        FitModel::OffCritical { boundary_points } => params.push(kv("boundary-points", boundary_points)),
        _ => {}
    }
    params.push(kv("x-column", &x_col));
    params.push(kv("y-column", &args.y_column));
    if let Some(v) = args.x_min {
        params.push(kv("x-min", v));
    }
    if let Some(v) = args.x_max {
        params.push(kv("x-max", v));
    }
    if args.strict {
        params.push(kv("strict", ""));
    }
    let mut t = ResultTable::new("fit", params, &["model", "c_est", "intercept", "rms_residual", "n_points", "poor_fit"]);
    t.push(vec![
        model.tag().into(),
        fit.c_est.into(),
        fit.intercept.into(),
        fit.rms_residual.into(),
        fit.n_points.into(),
        fit.poor_fit.into(),
    ]);
    Ok(FitOutcome { table: t, poor_fit: fit.poor_fit })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    PeriodicHalf,
    OpenHalf,
}

impl From<PolicyArg> for BlockPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::PeriodicHalf => BlockPolicy::PeriodicHalf,
            PolicyArg::OpenHalf => BlockPolicy::OpenHalf,
        }
    }
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long, value_parser = parse_grid, default_value = "0:2:201")]
    pub lambda: Grid,
    #[arg(long, default_value_t = 400)]
    pub sites: usize,
    #[arg(long, value_enum, default_value_t = PolicyArg::PeriodicHalf)]
    pub policy: PolicyArg,
}

pub fn cmd_figure(args: &FigureArgs) -> Result<ResultTable, CliError> {
    let lambda = args.lambda.0.clone();
    let policy: BlockPolicy = args.policy.into();
    let ds = figure_sweep(&lambda, args.sites, policy)?;
    let shape = curve_shape(&ds)?;
    let params = vec![kv("lambda", join(&lambda)), kv("sites", args.sites), kv("policy", flag(&args.policy))];
    let mut t = ResultTable::new("figure", params, &["lambda", "xi", "entropy", "is_peak"]);
    for (i, p) in ds.points().iter().enumerate() {
        t.push(vec![p.abscissa.into(), ising_xi(p.abscissa).into(), p.entropy.into(), (i == shape.argmax).into()]);
    }
    Ok(t)
}

/// Runs one command and returns the table plus whether a strict fit failed.
pub fn run(cli: &Cli) -> Result<(ResultTable, bool), CliError> {
    match &cli.command {
        Command::Predict(a) => Ok((cmd_predict(a)?, false)),
        Command::Ising(a) => Ok((cmd_ising(a)?, false)),
        Command::Boson(a) => Ok((cmd_boson(a)?, false)),
        Command::Figure(a) => Ok((cmd_figure(a)?, false)),
        Command::Fit(a) => {
            let text = if a.input.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else {
                std::fs::read_to_string(&a.input)
                    .map_err(|e| CliError::Input(format!("cannot read {}: {e}", a.input.display())))?
            };
            let out = cmd_fit(a, &text)?;
            Ok((out.table, a.strict && out.poor_fit))
        }
    }
}
