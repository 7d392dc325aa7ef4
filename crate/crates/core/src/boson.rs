//! Massive harmonic chain `H = (1/2) sum_n [p_n^2 + m^2 x_n^2 + (x_{n+1} - x_n)^2]`
//! with dispersion `omega_k^2 = m^2 + 4 sin^2(k/2)`.
//!
//! The ground state is Gaussian, so block entanglement follows from the
//! symplectic eigenvalues of the block correlators `X_ij = <x_i x_j>` and
//! `P_ij = <p_i p_j>`. Open chains have Dirichlet ends (`x_0 = x_{N+1} = 0`).

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::ising::{BlockSpec, BoundaryCondition};

pub const MIN_MASS: f64 = 1e-8;
const MU_CLAMP_TOL: f64 = 1e-10;
const MU_ERROR_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BosonParams {
    mass: f64,
    sites: usize,
    bc: BoundaryCondition,
}

impl BosonParams {
    pub fn new(mass: f64, sites: usize, bc: BoundaryCondition) -> Result<Self> {
        if !mass.is_finite() {
            return Err(Error::Domain(format!("mass must be finite, got {mass}")));
        }
        if mass <= MIN_MASS {
            return Err(Error::ZeroMode(format!(
                "mass {mass} is at or below {MIN_MASS:e}; the massless chain has a divergent zero mode, raise m"
            )));
        }
        if sites < 2 {
            return Err(Error::Domain(format!("chain needs at least 2 sites, got {sites}")));
        }
        Ok(BosonParams { mass, sites, bc })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn bc(&self) -> BoundaryCondition {
        self.bc
    }

    /// `xi = 1/m` in lattice units.
    pub fn correlation_length(&self) -> f64 {
        1.0 / self.mass
    }
}

fn omega(mass: f64, k: f64) -> f64 {
    (mass * mass + 4.0 * (0.5 * k).sin().powi(2)).sqrt()
}

/// Position and momentum correlators restricted to `block`.
pub fn boson_correlators(p: &BosonParams, block: &BlockSpec) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let n = p.sites();
    if block.start() + block.len() > n {
        return Err(Error::Validation(format!(
            "block [{}, {}) exceeds the chain of {n} sites",
            block.start(),
            block.start() + block.len()
        )));
    }
    let len = block.len();
    let mut x = DMatrix::<f64>::zeros(len, len);
    let mut pm = DMatrix::<f64>::zeros(len, len);
    match p.bc() {
        BoundaryCondition::Periodic => {
            let modes: Vec<(f64, f64)> = (0..n)
                .map(|j| {
                    let k = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                    (k, omega(p.mass(), k))
                })
                .collect();
            let norm = 0.5 / n as f64;
            let profile: Vec<(f64, f64)> = (0..len)
                .map(|r| {
                    modes.iter().fold((0.0, 0.0), |(fx, fp), &(k, w)| {
                        let c = (k * r as f64).cos();
                        (fx + c / w, fp + c * w)
                    })
                })
                .map(|(fx, fp)| (fx * norm, fp * norm))
                .collect();
            for i in 0..len {
                for j in 0..len {
                    let (fx, fp) = profile[i.abs_diff(j)];
                    x[(i, j)] = fx;
                    pm[(i, j)] = fp;
                }
            }
        }
        BoundaryCondition::Open => {
            // sin(q a) sin(q b) = [cos(q(a-b)) - cos(q(a+b))] / 2 with a, b = site + 1
            let modes: Vec<(f64, f64)> = (1..=n)
                .map(|k| {
                    let q = std::f64::consts::PI * k as f64 / (n + 1) as f64;
                    (q, omega(p.mass(), q))
                })
                .collect();
            let norm = 0.5 / (n + 1) as f64;
            let f = |r: usize| -> (f64, f64) {
                let (fx, fp) = modes.iter().fold((0.0, 0.0), |(fx, fp), &(q, w)| {
                    let c = (q * r as f64).cos();
                    (fx + c / w, fp + c * w)
                });
                (fx * norm, fp * norm)
            };
            let s = block.start();
            let near: Vec<(f64, f64)> = (0..len).map(f).collect();
            let far: Vec<(f64, f64)> = (0..2 * len - 1).map(|r| f(2 * s + 2 + r)).collect();
            for i in 0..len {
                for j in 0..len {
                    let (ax, ap) = near[i.abs_diff(j)];
                    let (bx, bp) = far[i + j];
                    x[(i, j)] = ax - bx;
                    pm[(i, j)] = ap - bp;
                }
            }
        }
    }
    Ok((x, pm))
}

/// Symplectic eigenvalues `mu_j >= 1/2` of a Gaussian block state.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSpectrum {
    mus: Vec<f64>,
}

impl SymplecticSpectrum {
    /// Clamps values within `1e-10` below `1/2`; anything further below is a
    /// consistency error.
    pub fn new(mut mus: Vec<f64>) -> Result<Self> {
        for mu in mus.iter_mut() {
            if !mu.is_finite() || *mu < 0.5 - MU_ERROR_TOL {
                return Err(Error::Consistency(format!(
                    "symplectic eigenvalue {mu} violates the uncertainty bound 1/2"
                )));
            }
            if *mu < 0.5 {
                if *mu < 0.5 - MU_CLAMP_TOL {
                    log::warn!("symplectic eigenvalue {mu} below 1/2; clamping");
                }
                *mu = 0.5;
            }
        }
        mus.sort_by(|a, b| a.total_cmp(b));
        Ok(SymplecticSpectrum { mus })
    }

    pub fn mus(&self) -> &[f64] {
        &self.mus
    }
}

/// `mu_j = sqrt(eig(X^{1/2} P X^{1/2}))`, the spectrum of `sqrt(X P)`.
pub fn symplectic_spectrum(x: &DMatrix<f64>, p: &DMatrix<f64>) -> Result<SymplecticSpectrum> {
    if !x.is_square() || x.shape() != p.shape() {
        return Err(Error::Validation(format!(
            "correlators must be square and equal in size, got {:?} and {:?}",
            x.shape(),
            p.shape()
        )));
    }
    let ex = SymmetricEigen::new(x.clone());
    if ex.eigenvalues.iter().any(|&v| v <= 0.0) {
        return Err(Error::Consistency("position correlator is not positive definite".into()));
    }
    let sqrt_diag = DMatrix::from_diagonal(&ex.eigenvalues.map(f64::sqrt));
    let root = &ex.eigenvectors * sqrt_diag * ex.eigenvectors.transpose();
    let m = &root * p * &root;
    let m = (&m + m.transpose()) * 0.5;
    let mus = SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .map(|&v| v.max(0.0).sqrt())
        .collect();
    SymplecticSpectrum::new(mus)
}

/// `sum_j [(mu + 1/2) ln(mu + 1/2) - (mu - 1/2) ln(mu - 1/2)]`.
pub fn boson_entropy(s: &SymplecticSpectrum) -> f64 {
    s.mus
        .iter()
        .map(|&mu| {
            let lo = mu - 0.5;
            let tail = if lo > 0.0 { lo * lo.ln() } else { 0.0 };
            (mu + 0.5) * (mu + 0.5).ln() - tail
        })
        .sum()
}

/// Entanglement entropy of `block` in the ground state.
pub fn boson_block_entropy(p: &BosonParams, block: &BlockSpec) -> Result<f64> {
    let (x, pm) = boson_correlators(p, block)?;
    Ok(boson_entropy(&symplectic_spectrum(&x, &pm)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn entropy_of_known_spectra() {
        let s = SymplecticSpectrum::new(vec![0.5; 4]).unwrap();
        assert_eq!(boson_entropy(&s), 0.0);
        let s = SymplecticSpectrum::new(vec![1.0]).unwrap();
        let expect = 1.5 * 1.5f64.ln() - 0.5 * 0.5f64.ln();
        assert!((boson_entropy(&s) - expect).abs() < 1e-15);
        assert!((boson_entropy(&s) - 0.954771252442219).abs() < 1e-14);
        assert!(SymplecticSpectrum::new(vec![0.49]).is_err());
        assert_eq!(SymplecticSpectrum::new(vec![0.5 - 1e-11]).unwrap().mus(), &[0.5]);
    }

    #[test]
    fn zero_mode_guard() {
        assert!(matches!(BosonParams::new(1e-9, 10, BoundaryCondition::Periodic), Err(Error::ZeroMode(_))));
        assert!(matches!(BosonParams::new(0.0, 10, BoundaryCondition::Open), Err(Error::ZeroMode(_))));
        assert!(BosonParams::new(f64::NAN, 10, BoundaryCondition::Open).is_err());
        assert!(BosonParams::new(1.0, 1, BoundaryCondition::Open).is_err());
    }

    #[test]
    fn open_correlators_match_the_mode_sum() {
        let n = 17;
        let p = BosonParams::new(0.3, n, BoundaryCondition::Open).unwrap();
        let b = BlockSpec::new(4, 6, n).unwrap();
        let (x, pm) = boson_correlators(&p, &b).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let (a, c) = ((4 + i + 1) as f64, (4 + j + 1) as f64);
                let (mut ex, mut ep) = (0.0, 0.0);
                for k in 1..=n {
                    let q = PI * k as f64 / (n + 1) as f64;
                    let w = omega(0.3, q);
                    let phi = 2.0 / (n + 1) as f64 * (q * a).sin() * (q * c).sin();
                    ex += phi / (2.0 * w);
                    ep += phi * w / 2.0;
                }
                assert!((x[(i, j)] - ex).abs() < 1e-13);
                assert!((pm[(i, j)] - ep).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn full_chain_is_pure() {
        // X P = 1/4 on the whole chain.
        for bc in [BoundaryCondition::Periodic, BoundaryCondition::Open] {
            let p = BosonParams::new(0.2, 12, bc).unwrap();
            let b = BlockSpec::new(0, 11, 12).unwrap();
            let (x, pm) = boson_correlators(&p, &b).unwrap();
            assert!((x.symmetric_part() - &x).amax() < 1e-15);
            let s = symplectic_spectrum(&x, &pm).unwrap();
            assert_eq!(s.mus().len(), 11);
            assert!(s.mus()[..10].iter().all(|&mu| (mu - 0.5).abs() < 1e-9));
        }
    }

    #[test]
    fn single_site_obeys_uncertainty() {
        for &m in &[0.01, 0.5, 3.0, 100.0] {
            let p = BosonParams::new(m, 20, BoundaryCondition::Periodic).unwrap();
            let (x, pm) = boson_correlators(&p, &BlockSpec::new(3, 1, 20).unwrap()).unwrap();
            let mu = (x[(0, 0)] * pm[(0, 0)]).sqrt();
            assert!(mu >= 0.5);
            let s = symplectic_spectrum(&x, &pm).unwrap();
            assert!((s.mus()[0] - mu).abs() < 1e-12);
        }
    }

    #[test]
    fn deep_massive_is_nearly_product() {
        let p = BosonParams::new(10.0, 64, BoundaryCondition::Open).unwrap();
        assert!(boson_block_entropy(&p, &BlockSpec::half(64).unwrap()).unwrap() < 0.05);
        let mut last = f64::INFINITY;
        for m in [5.0, 7.0, 10.0, 20.0, 50.0, 100.0] {
            let p = BosonParams::new(m, 64, BoundaryCondition::Open).unwrap();
            let s = boson_block_entropy(&p, &BlockSpec::half(64).unwrap()).unwrap();
            assert!(s < last && s >= 0.0);
            last = s;
        }
    }

    #[test]
    fn periodic_and_open_agree_deep_in_the_bulk() {
        let m = 0.5;
        let pp = BosonParams::new(m, 200, BoundaryCondition::Periodic).unwrap();
        let po = BosonParams::new(m, 200, BoundaryCondition::Open).unwrap();
        let b = BlockSpec::new(90, 20, 200).unwrap();
        let sp = boson_block_entropy(&pp, &b).unwrap();
        let so = boson_block_entropy(&po, &b).unwrap();
        assert!((sp - so).abs() < 1e-10);
    }
}
