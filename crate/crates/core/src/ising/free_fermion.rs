//! Free-fermion solution of the chain.
//!
//! With Majorana operators `a_j = gamma_{2j}`, `b_j = gamma_{2j+1}` one has
//! `sx_j = i a_j b_j` and `sz_j sz_{j+1} = i b_j a_{j+1}`, so
//! `H = i sum_{jk} K_{jk} a_j b_k` with `K_{jj} = -1` and `K_{j+1,j} = lambda`.
//! In the even parity sector of the periodic chain the fermions are
//! antiperiodic, `K_{0,N-1} = -lambda`. The singular value decomposition
//! `K = U S V^T` gives the ground-state correlator `<i a_j b_m> = G_{jm}`
//! with `G = -U V^T`.
//!
//! The periodic `K` is skew-circulant, diagonal in the antiperiodic momenta
//! `k = (2m+1) pi/N` with eigenvalues `lambda e^{-ik} - 1`, so there `G` is a
//! momentum sum and the SVD is skipped.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::{BlockSpec, BoundaryCondition, FermionSpectrum, TfiParams};
use crate::error::{Error, Result};

const DEGENERACY_TOL: f64 = 1e-12;
const ANTISYMMETRY_TOL: f64 = 1e-10;
const PAIRING_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct FreeFermionGroundState {
    sites: usize,
    g: DMatrix<f64>,
    energy: f64,
    smallest_level: f64,
}

/// Coupling matrix `K` of `H = i a^T K b`.
pub fn coupling_matrix(p: &TfiParams) -> DMatrix<f64> {
    let n = p.sites();
    let mut k = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        k[(j, j)] = -1.0;
        if j + 1 < n {
            k[(j + 1, j)] += p.lambda();
        }
    }
    if p.bc() == BoundaryCondition::Periodic {
        k[(0, n - 1)] -= p.lambda();
    }
    k
}

impl FreeFermionGroundState {
    pub fn new(p: &TfiParams) -> Result<Self> {
        match p.bc() {
            BoundaryCondition::Periodic => Ok(Self::periodic(p)),
            BoundaryCondition::Open => Self::from_coupling(&coupling_matrix(p)),
        }
    }

    fn periodic(p: &TfiParams) -> Self {
        let n = p.sites();
        let lambda = p.lambda();
        let modes: Vec<(f64, f64, f64)> = (0..n)
            .map(|m| {
                let k = (2 * m + 1) as f64 * PI / n as f64;
                let (re, im) = (lambda * k.cos() - 1.0, -lambda * k.sin());
                let r = re.hypot(im);
                (k, re / r, im / r)
            })
            .collect();
        let levels: Vec<f64> = (0..n)
            .map(|m| {
                let k = (2 * m + 1) as f64 * PI / n as f64;
                (1.0 + lambda * lambda - 2.0 * lambda * k.cos()).sqrt()
            })
            .collect();
        // G_{jm} = -(1/N) sum_k Re[w_k e^{ik(j-m)}]; shifting j - m by N flips the sign
        let profile: Vec<f64> = (0..n)
            .map(|r| {
                -modes
                    .iter()
                    .map(|&(k, wr, wi)| {
                        let (s, c) = (k * r as f64).sin_cos();
                        wr * c - wi * s
                    })
                    .sum::<f64>()
                    / n as f64
            })
            .collect();
        let g = DMatrix::from_fn(n, n, |j, m| if j >= m { profile[j - m] } else { -profile[j + n - m] });
        FreeFermionGroundState {
            sites: n,
            g,
            energy: -levels.iter().sum::<f64>(),
            smallest_level: levels.iter().copied().fold(f64::INFINITY, f64::min),
        }
    }

    /// Ground state of `H = i a^T K b` in the even parity sector, for any
    /// real coupling matrix.
    pub fn from_coupling(k: &DMatrix<f64>) -> Result<Self> {
        let n = k.nrows();
        if n == 0 || !k.is_square() {
            return Err(Error::Validation(format!("coupling matrix must be square, got {:?}", k.shape())));
        }
        let svd = k.clone().svd(true, true);
        let u = svd.u.ok_or_else(|| Error::Consistency("SVD did not return U".into()))?;
        let v_t = svd.v_t.ok_or_else(|| Error::Consistency("SVD did not return V^T".into()))?;
        let s = svd.singular_values;
        if s.iter().any(|x| !x.is_finite()) {
            return Err(Error::Consistency("non-finite single-particle level".into()));
        }
        let (kmin, smallest_level) = s.iter().copied().enumerate().fold((0, f64::INFINITY), |acc, (i, x)| {
            if x < acc.1 { (i, x) } else { acc }
        });
        let mut signs = vec![1.0; n];
        let mut g = -(&u * &v_t);
        // The occupation that minimizes each mode may sit in the odd sector;
        // flipping the softest mode restores even parity.
        if g.determinant() < 0.0 {
            signs[kmin] = -1.0;
            g = DMatrix::zeros(n, n);
            for m in 0..n {
                let col = u.column(m);
                let row = v_t.row(m);
                g -= signs[m] * (col * row);
            }
        }
        let energy = -s.iter().zip(&signs).map(|(x, sg)| x * sg).sum::<f64>();
        Ok(FreeFermionGroundState { sites: n, g, energy, smallest_level })
    }

    /// `G_{jm} = <i a_j b_m>`.
    pub fn correlator(&self) -> &DMatrix<f64> {
        &self.g
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn smallest_level(&self) -> f64 {
        self.smallest_level
    }

    /// A single-particle level is zero to within `1e-12`, so the parity
    /// sectors are degenerate.
    pub fn degenerate(&self) -> bool {
        self.smallest_level < DEGENERACY_TOL
    }

    /// Antisymmetric `2 len x 2 len` Majorana correlation matrix
    /// `Gamma_{mn} = <i gamma_m gamma_n>` (`m != n`) of the block, in the order
    /// `a_s, b_s, a_{s+1}, b_{s+1}, ...`.
    pub fn block_correlations(&self, block: &BlockSpec) -> Result<DMatrix<f64>> {
        if block.start() + block.len() > self.sites {
            return Err(Error::Validation(format!(
                "block [{}, {}) exceeds the chain of {} sites",
                block.start(),
                block.start() + block.len(),
                self.sites
            )));
        }
        let len = block.len();
        let s = block.start();
        let mut m = DMatrix::<f64>::zeros(2 * len, 2 * len);
        for i in 0..len {
            for j in 0..len {
                let x = self.g[(s + i, s + j)];
                m[(2 * i, 2 * j + 1)] = x;
                m[(2 * j + 1, 2 * i)] = -x;
            }
        }
        Ok(m)
    }
}

/// Spectrum `nu_j` of a real antisymmetric Majorana correlation matrix, whose
/// eigenvalues come in pairs `+-i nu_j`.
pub fn fermion_spectrum(gamma: &DMatrix<f64>) -> Result<FermionSpectrum> {
    let dim = gamma.nrows();
    if dim == 0 || dim % 2 != 0 || gamma.ncols() != dim {
        return Err(Error::Validation(format!(
            "Majorana correlation matrix must be square with even dimension, got {}x{}",
            dim,
            gamma.ncols()
        )));
    }
    let asym = (gamma + gamma.transpose()).amax();
    if asym > ANTISYMMETRY_TOL {
        return Err(Error::Consistency(format!("correlation matrix is not antisymmetric (defect {asym:.3e})")));
    }
    let mut sv: Vec<f64> = gamma.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| a.total_cmp(b));
    let mut nus = Vec::with_capacity(dim / 2);
    for pair in sv.chunks(2) {
        if (pair[0] - pair[1]).abs() > PAIRING_TOL {
            return Err(Error::Consistency(format!(
                "unpaired correlation eigenvalues {} and {}",
                pair[0], pair[1]
            )));
        }
        nus.push(0.5 * (pair[0] + pair[1]));
    }
    FermionSpectrum::new(nus)
}
