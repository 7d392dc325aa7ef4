use crate::error::{Error, Result};

const SUM_TOL: f64 = 1e-10;
const CLAMP_TOL: f64 = 1e-12;

/// Eigenvalues of a reduced density matrix, in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementSpectrum {
    probabilities: Vec<f64>,
}

impl EntanglementSpectrum {
    /// Sorts, clamps round-off negatives to zero and checks normalization.
    pub fn new(mut probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::Validation("empty entanglement spectrum".into()));
        }
        for p in probabilities.iter_mut() {
            if !p.is_finite() || *p < -CLAMP_TOL || *p > 1.0 + CLAMP_TOL {
                return Err(Error::Consistency(format!("density-matrix eigenvalue {p} outside [0, 1]")));
            }
            *p = p.clamp(0.0, 1.0);
        }
        let sum: f64 = probabilities.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::Consistency(format!("density-matrix eigenvalues sum to {sum}")));
        }
        probabilities.sort_by(|a, b| b.total_cmp(a));
        Ok(EntanglementSpectrum { probabilities })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }
}

/// `-sum p ln p` with `0 ln 0 = 0`.
pub fn entropy_from_spectrum(s: &EntanglementSpectrum) -> f64 {
    s.probabilities.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.ln()).sum()
}

/// `Tr rho^n = sum p^n`.
pub fn renyi_from_spectrum(s: &EntanglementSpectrum, n: u32) -> f64 {
    if n == 1 {
        return 1.0;
    }
    s.probabilities.iter().map(|&p| p.powi(n as i32)).sum()
}

/// `sum p^n` for real `n > 0`, dropping zero eigenvalues.
pub fn renyi_from_spectrum_real(s: &EntanglementSpectrum, n: f64) -> f64 {
    s.probabilities.iter().filter(|&&p| p > 0.0).map(|&p| p.powf(n)).sum()
}

/// Majorana correlation eigenvalues `nu_j` of a Gaussian block state, one per
/// site of the block, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionSpectrum {
    nus: Vec<f64>,
}

impl FermionSpectrum {
    pub fn new(mut nus: Vec<f64>) -> Result<Self> {
        for nu in nus.iter_mut() {
            if !nu.is_finite() || *nu < -CLAMP_TOL || *nu > 1.0 + CLAMP_TOL {
                return Err(Error::Consistency(format!("Majorana correlation eigenvalue {nu} outside [0, 1]")));
            }
            *nu = nu.clamp(0.0, 1.0);
        }
        nus.sort_by(|a, b| a.total_cmp(b));
        Ok(FermionSpectrum { nus })
    }

    pub fn nus(&self) -> &[f64] {
        &self.nus
    }
}

fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p > 0.0 { -p * p.ln() } else { 0.0 };
    term(x) + term(1.0 - x)
}

/// `sum_j H2((1 + nu_j)/2)`.
pub fn ff_entropy(f: &FermionSpectrum) -> f64 {
    f.nus.iter().map(|&nu| binary_entropy(0.5 * (1.0 + nu))).sum()
}

/// `ln Tr rho^n = sum_j ln[((1+nu)/2)^n + ((1-nu)/2)^n]` for real `n > 0`.
pub fn ff_log_renyi(f: &FermionSpectrum, n: f64) -> f64 {
    f.nus
        .iter()
        .map(|&nu| {
            let p = 0.5 * (1.0 + nu);
            let q = 0.5 * (1.0 - nu);
            let qn = if q > 0.0 { q.powf(n) } else { 0.0 };
            (p.powf(n) + qn).ln()
        })
        .sum()
}

pub fn ff_renyi_real(f: &FermionSpectrum, n: f64) -> f64 {
    ff_log_renyi(f, n).exp()
}

pub fn ff_renyi(f: &FermionSpectrum, n: u32) -> f64 {
    if n == 1 {
        return 1.0;
    }
    f.nus
        .iter()
        .map(|&nu| (0.5 * (1.0 + nu)).powi(n as i32) + (0.5 * (1.0 - nu)).powi(n as i32))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn replica_derivative<F: Fn(f64) -> f64>(trace: F) -> f64 {
        let h = 1e-5;
        -(trace(1.0 + h) - trace(1.0 - h)) / (2.0 * h)
    }

    #[test]
    fn dense_spectrum_values() {
        let pure = EntanglementSpectrum::new(vec![1.0]).unwrap();
        assert_eq!(entropy_from_spectrum(&pure), 0.0);
        let bell = EntanglementSpectrum::new(vec![0.5, 0.5]).unwrap();
        assert!((entropy_from_spectrum(&bell) - LN_2).abs() < 1e-15);
        assert!((renyi_from_spectrum(&bell, 3) - 0.25).abs() < 1e-15);
        for k in 1..6 {
            let d = 1usize << k;
            let s = EntanglementSpectrum::new(vec![1.0 / d as f64; d]).unwrap();
            assert!((entropy_from_spectrum(&s) - k as f64 * LN_2).abs() < 1e-13);
        }
        let s = EntanglementSpectrum::new(vec![0.1, 0.6, 0.3]).unwrap();
        assert_eq!(s.probabilities(), &[0.6, 0.3, 0.1]);
        assert_eq!(renyi_from_spectrum(&s, 1), 1.0);
    }

    #[test]
    fn dense_spectrum_rejects_unnormalized() {
        assert!(EntanglementSpectrum::new(vec![0.5, 0.4]).is_err());
        assert!(EntanglementSpectrum::new(vec![1.2, -0.2]).is_err());
        assert!(EntanglementSpectrum::new(vec![]).is_err());
        let s = EntanglementSpectrum::new(vec![1.0, -1e-14]).unwrap();
        assert_eq!(s.probabilities(), &[1.0, 0.0]);
    }

    #[test]
    fn dense_replica_derivative() {
        let s = EntanglementSpectrum::new(vec![0.55, 0.25, 0.15, 0.05]).unwrap();
        let d = replica_derivative(|n| renyi_from_spectrum_real(&s, n));
        assert!((d - entropy_from_spectrum(&s)).abs() < 1e-6);
    }

    #[test]
    fn fermion_spectrum_limits() {
        let frozen = FermionSpectrum::new(vec![1.0; 5]).unwrap();
        assert_eq!(ff_entropy(&frozen), 0.0);
        assert_eq!(ff_renyi(&frozen, 3), 1.0);
        let maximal = FermionSpectrum::new(vec![0.0; 5]).unwrap();
        assert!((ff_entropy(&maximal) - 5.0 * LN_2).abs() < 1e-14);
        assert!((ff_renyi(&maximal, 2) - 0.5f64.powi(5)).abs() < 1e-15);
        assert!(FermionSpectrum::new(vec![1.1]).is_err());
        assert_eq!(FermionSpectrum::new(vec![1.0 + 1e-13]).unwrap().nus(), &[1.0]);
    }

    #[test]
    fn fermion_replica_derivative() {
        let f = FermionSpectrum::new(vec![0.02, 0.35, 0.71, 0.93, 0.999]).unwrap();
        let d = replica_derivative(|n| ff_renyi_real(&f, n));
        assert!((d - ff_entropy(&f)).abs() < 1e-6);
        for n in 1..5 {
            assert!((ff_renyi(&f, n) - ff_renyi_real(&f, n as f64)).abs() < 1e-13);
        }
    }
}
