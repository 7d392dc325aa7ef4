//! Transverse-field Ising chain `H = -sum_n sx_n - lambda sum_n sz_n sz_{n+1}`.
//!
//! Two solvers compute the entanglement of a contiguous block in the ground
//! state:
//!
//! * [`dense`]: exact diagonalization in the even sector of the spin-flip
//!   parity `prod_n sx_n`, followed by a partial trace. Limited to
//!   [`dense::MAX_DENSE_SITES`] sites.
//! * [`free_fermion`]: Jordan-Wigner fermionization and the block Majorana
//!   correlation matrix, which scales to hundreds of sites.
//!
//! Both select the even-parity ground state, which for `lambda > 1` is the
//! symmetric combination of the two ordered states. Lattice spacing is 1.

pub mod dense;
pub mod free_fermion;
mod spectrum;

pub use spectrum::{
    entropy_from_spectrum, ff_entropy, ff_log_renyi, ff_renyi, ff_renyi_real, renyi_from_spectrum,
    renyi_from_spectrum_real, EntanglementSpectrum, FermionSpectrum,
};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    Periodic,
    Open,
}

impl BoundaryCondition {
    pub fn tag(self) -> &'static str {
        match self {
            BoundaryCondition::Periodic => "periodic",
            BoundaryCondition::Open => "open",
        }
    }
}

impl std::str::FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "periodic" | "pbc" => Ok(BoundaryCondition::Periodic),
            "open" | "obc" => Ok(BoundaryCondition::Open),
            other => Err(Error::Validation(format!("unknown boundary condition '{other}'"))),
        }
    }
}

/// Parameters of the transverse-field Ising chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TfiParams {
    lambda: f64,
    sites: usize,
    bc: BoundaryCondition,
}

impl TfiParams {
    pub fn new(lambda: f64, sites: usize, bc: BoundaryCondition) -> Result<Self> {
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::Domain(format!("coupling must be nonnegative and finite, got {lambda}")));
        }
        if sites < 2 {
            return Err(Error::Domain(format!("chain needs at least 2 sites, got {sites}")));
        }
        Ok(TfiParams { lambda, sites, bc })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn bc(&self) -> BoundaryCondition {
        self.bc
    }
}

/// Contiguous block of sites `[start, start + len)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockSpec {
    start: usize,
    len: usize,
}

impl BlockSpec {
    pub fn new(start: usize, len: usize, sites: usize) -> Result<Self> {
        if len == 0 || len >= sites {
            return Err(Error::Validation(format!("block length must lie in [1, {}), got {len}", sites)));
        }
        if start + len > sites {
            return Err(Error::Validation(format!(
                "block [{start}, {}) exceeds the chain of {sites} sites",
                start + len
            )));
        }
        Ok(BlockSpec { start, len })
    }

    /// Left half `[0, sites/2)`.
    pub fn half(sites: usize) -> Result<Self> {
        Self::new(0, sites / 2, sites)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn sites(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }

    /// Number of endpoints shared with the complement.
    pub fn boundary_points(&self, sites: usize, bc: BoundaryCondition) -> u32 {
        match bc {
            BoundaryCondition::Periodic => 2,
            BoundaryCondition::Open => {
                u32::from(self.start > 0) + u32::from(self.start + self.len < sites)
            }
        }
    }
}

/// Correlation length `|lambda - 1|^-1` in lattice units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CorrelationLength {
    Finite(f64),
    Divergent,
}

impl CorrelationLength {
    pub fn value(self) -> f64 {
        match self {
            CorrelationLength::Finite(x) => x,
            CorrelationLength::Divergent => f64::INFINITY,
        }
    }

    pub fn is_divergent(self) -> bool {
        matches!(self, CorrelationLength::Divergent)
    }
}

pub fn correlation_length(lambda: f64) -> CorrelationLength {
    if lambda == 1.0 {
        CorrelationLength::Divergent
    } else {
        CorrelationLength::Finite(1.0 / (lambda - 1.0).abs())
    }
}

/// Which solver produced a block result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Dense,
    FreeFermion,
}

impl Solver {
    pub fn tag(self) -> &'static str {
        match self {
            Solver::Dense => "dense",
            Solver::FreeFermion => "freefermion",
        }
    }
}

impl std::str::FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Solver::Dense),
            "freefermion" | "ff" => Ok(Solver::FreeFermion),
            other => Err(Error::Validation(format!("unknown solver '{other}'"))),
        }
    }
}

/// Entanglement data of one block.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockEntanglement {
    pub entropy: f64,
    /// `Tr rho_A^n` for the requested integer indices, in request order.
    pub renyi: Vec<(u32, f64)>,
    pub solver: Solver,
    /// Set when the ground space was (nearly) degenerate and the even-parity
    /// state was selected.
    pub degenerate: bool,
}

/// Block entanglement with the requested solver.
///
/// A free-fermion solve that hits an exactly degenerate single-particle level
/// falls back to the dense solver when the chain is small enough.
pub fn block_entanglement(
    p: &TfiParams,
    blocks: &[BlockSpec],
    renyi: &[u32],
    solver: Solver,
) -> Result<Vec<BlockEntanglement>> {
    if renyi.contains(&0) {
        return Err(Error::Domain("Rényi index must be at least 1".into()));
    }
    match solver {
        Solver::Dense => {
            let gs = dense::dense_ground_state(p)?;
            blocks
                .iter()
                .map(|b| {
                    let spec = dense::reduced_density_matrix(&gs.amplitudes, p.sites(), b)?;
                    Ok(BlockEntanglement {
                        entropy: entropy_from_spectrum(&spec),
                        renyi: renyi.iter().map(|&n| (n, renyi_from_spectrum(&spec, n))).collect(),
                        solver: Solver::Dense,
                        degenerate: gs.degenerate,
                    })
                })
                .collect()
        }
        Solver::FreeFermion => {
            let gs = free_fermion::FreeFermionGroundState::new(p)?;
            if gs.degenerate() && p.sites() <= dense::MAX_DENSE_SITES {
                log::warn!(
                    "degenerate single-particle level at lambda = {}; using the dense solver",
                    p.lambda()
                );
                return block_entanglement(p, blocks, renyi, Solver::Dense);
            }
            blocks
                .iter()
                .map(|b| {
                    let f = free_fermion::fermion_spectrum(&gs.block_correlations(b)?)?;
                    Ok(BlockEntanglement {
                        entropy: ff_entropy(&f),
                        renyi: renyi.iter().map(|&n| (n, ff_renyi(&f, n))).collect(),
                        solver: Solver::FreeFermion,
                        degenerate: gs.degenerate(),
                    })
                })
                .collect()
        }
    }
}
