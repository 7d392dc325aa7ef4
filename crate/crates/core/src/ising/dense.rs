//! Exact diagonalization oracle for small chains.
//!
//! The Hamiltonian is built in the eigenbasis of `sx` (bit `1` means
//! `sx = -1`), where the spin-flip parity is diagonal and the even sector is
//! the set of even-weight bit strings. The returned ground state is expressed
//! in the `sz` product basis with site `n` in bit `n`.

use nalgebra::{DMatrix, SymmetricEigen};

use super::{BlockSpec, BoundaryCondition, EntanglementSpectrum, TfiParams};
use crate::error::{Error, Result};
use crate::lanczos::lowest_eigenpair;

pub const MAX_DENSE_SITES: usize = 14;
const LANCZOS_TOL: f64 = 1e-10;
const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct DenseGroundState {
    /// `2^N` real amplitudes in the `sz` basis; the largest-magnitude
    /// amplitude is positive.
    pub amplitudes: Vec<f64>,
    pub energy: f64,
    /// Lowest energy in the odd-parity sector.
    pub odd_sector_energy: f64,
    /// Even and odd sectors split by less than `1e-12`; the even
    /// (spin-flip symmetric) state was selected.
    pub degenerate: bool,
}

fn bonds(p: &TfiParams) -> Vec<(usize, usize)> {
    let n = p.sites();
    let mut b: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    if p.bc() == BoundaryCondition::Periodic {
        b.push((n - 1, 0));
    }
    b
}

/// Lowest eigenpair in the sector with bit-string parity `parity`, returned
/// as a full-length vector in the `sx` basis.
fn sector_ground_state(p: &TfiParams, parity: u32) -> Result<(f64, Vec<f64>)> {
    let n = p.sites();
    let full = 1usize << n;
    let states: Vec<usize> = (0..full).filter(|s| s.count_ones() % 2 == parity).collect();
    let mut index = vec![usize::MAX; full];
    for (i, &s) in states.iter().enumerate() {
        index[s] = i;
    }
    let flips: Vec<usize> = bonds(p).into_iter().map(|(i, j)| (1 << i) | (1 << j)).collect();
    let diag: Vec<f64> = states.iter().map(|s| -(n as f64) + 2.0 * s.count_ones() as f64).collect();
    let lambda = p.lambda();
    let apply = |x: &[f64], y: &mut [f64]| {
        for (i, &s) in states.iter().enumerate() {
            let mut acc = diag[i] * x[i];
            for f in &flips {
                acc -= lambda * x[index[s ^ f]];
            }
            y[i] = acc;
        }
    };
    // The sector Hamiltonian is stoquastic, so a positive start vector overlaps
    // the ground state.
    let start: Vec<f64> = (0..states.len()).map(|i| 1.0 + 0.25 * ((i * 7919) % 101) as f64 / 101.0).collect();
    let tol = LANCZOS_TOL * (1.0 + lambda) * n as f64;
    let pair = lowest_eigenpair(states.len(), apply, &start, tol)?;
    let mut v = vec![0.0; full];
    for (i, &s) in states.iter().enumerate() {
        v[s] = pair.vector[i];
    }
    Ok((pair.value, v))
}

/// In-place Walsh-Hadamard transform over all sites.
fn hadamard_all(v: &mut [f64]) {
    let len = v.len();
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for i in block..block + h {
                let a = v[i];
                let b = v[i + h];
                v[i] = (a + b) * scale;
                v[i + h] = (a - b) * scale;
            }
        }
        h *= 2;
    }
}

/// Ground state of the chain in the even spin-flip sector.
pub fn dense_ground_state(p: &TfiParams) -> Result<DenseGroundState> {
    if p.sites() > MAX_DENSE_SITES {
        return Err(Error::Resource(format!(
            "dense solver supports at most {MAX_DENSE_SITES} sites, requested {}",
            p.sites()
        )));
    }
    let (energy, mut amplitudes) = sector_ground_state(p, 0)?;
    let (odd_sector_energy, _) = sector_ground_state(p, 1)?;
    hadamard_all(&mut amplitudes);
    let norm = amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt();
    let pivot = amplitudes
        .iter()
        .copied()
        .max_by(|a, b| a.abs().total_cmp(&b.abs()))
        .unwrap_or(1.0);
    let sign = if pivot < 0.0 { -1.0 } else { 1.0 };
    amplitudes.iter_mut().for_each(|a| *a *= sign / norm);
    Ok(DenseGroundState {
        amplitudes,
        energy,
        odd_sector_energy,
        degenerate: (odd_sector_energy - energy).abs() < DEGENERACY_TOL,
    })
}

/// Spectrum of the reduced density matrix of the sites selected by `mask`
/// for a real pure state on `sites` qubits (site `n` in bit `n`).
///
/// The returned spectrum has `2^|A|` entries; beyond the Schmidt rank they
/// are zero.
pub fn reduced_spectrum(state: &[f64], sites: usize, mask: usize) -> Result<EntanglementSpectrum> {
    if state.len() != 1usize << sites {
        return Err(Error::Validation(format!(
            "state has {} amplitudes, expected 2^{sites}",
            state.len()
        )));
    }
    let all = (1usize << sites) - 1;
    if mask & !all != 0 {
        return Err(Error::Validation(format!("site mask {mask:#b} exceeds {sites} sites")));
    }
    let in_a: Vec<usize> = (0..sites).filter(|i| mask >> i & 1 == 1).collect();
    let in_b: Vec<usize> = (0..sites).filter(|i| mask >> i & 1 == 0).collect();
    let rows = 1usize << in_a.len();
    let cols = 1usize << in_b.len();
    let gather = |s: usize, which: &[usize]| -> usize {
        which.iter().enumerate().fold(0, |acc, (k, &site)| acc | ((s >> site & 1) << k))
    };
    let mut psi = DMatrix::<f64>::zeros(rows, cols);
    for (s, &amp) in state.iter().enumerate() {
        psi[(gather(s, &in_a), gather(s, &in_b))] = amp;
    }
    let gram = if rows <= cols { &psi * psi.transpose() } else { psi.transpose() * &psi };
    let mut probs: Vec<f64> = SymmetricEigen::new(gram).eigenvalues.iter().copied().collect();
    probs.resize(rows, 0.0);
    EntanglementSpectrum::new(probs)
}

/// Spectrum of `rho_A = Tr_B |psi><psi|` for a contiguous block.
pub fn reduced_density_matrix(state: &[f64], sites: usize, block: &BlockSpec) -> Result<EntanglementSpectrum> {
    let mask = block.sites().fold(0usize, |m, i| m | (1 << i));
    reduced_spectrum(state, sites, mask)
}
