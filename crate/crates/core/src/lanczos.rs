//! Lowest eigenpair of a real symmetric operator given as a matrix-vector
//! product. Lanczos with full reorthogonalization and explicit restarts;
//! small operators are assembled and diagonalized densely.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

const DENSE_LIMIT: usize = 256;
const KRYLOV_DIM: usize = 160;
const MAX_RESTARTS: usize = 40;

#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
    /// `|| A x - value x ||` of the returned unit vector.
    pub residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn residual_of<F: Fn(&[f64], &mut [f64])>(apply: &F, x: &[f64], value: f64) -> f64 {
    let mut ax = vec![0.0; x.len()];
    apply(x, &mut ax);
    ax.iter().zip(x).map(|(a, b)| (a - value * b).powi(2)).sum::<f64>().sqrt()
}

fn dense<F: Fn(&[f64], &mut [f64])>(dim: usize, apply: &F) -> Eigenpair {
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    let mut e = vec![0.0; dim];
    let mut col = vec![0.0; dim];
    for j in 0..dim {
        e.iter_mut().for_each(|x| *x = 0.0);
        e[j] = 1.0;
        apply(&e, &mut col);
        for i in 0..dim {
            m[(i, j)] = col[i];
        }
    }
    let m = (&m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(m);
    let k = eig.eigenvalues.argmin().0;
    let vector: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
    let value = eig.eigenvalues[k];
    let residual = residual_of(apply, &vector, value);
    Eigenpair { value, vector, residual }
}

/// Lowest eigenpair of the `dim`-dimensional operator `apply`.
///
/// `start` must overlap the ground state; it is normalized internally.
pub fn lowest_eigenpair<F>(dim: usize, apply: F, start: &[f64], tol: f64) -> Result<Eigenpair>
where
    F: Fn(&[f64], &mut [f64]),
{
    if dim == 0 || start.len() != dim {
        return Err(Error::Validation(format!("start vector has length {} for dimension {dim}", start.len())));
    }
    if dim <= DENSE_LIMIT {
        return Ok(dense(dim, &apply));
    }
    let mut x: Vec<f64> = start.to_vec();
    let n0 = norm(&x);
    if n0 == 0.0 {
        return Err(Error::Validation("start vector is zero".into()));
    }
    x.iter_mut().for_each(|v| *v /= n0);

    let mut best: Option<Eigenpair> = None;
    for _ in 0..MAX_RESTARTS {
        let m = KRYLOV_DIM.min(dim);
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
        let mut alpha: Vec<f64> = Vec::with_capacity(m);
        let mut beta: Vec<f64> = Vec::with_capacity(m);
        basis.push(x.clone());
        let mut w = vec![0.0; dim];
        let mut ritz = (0.0, vec![1.0]);
        for j in 0..m {
            apply(&basis[j], &mut w);
            let a = dot(&basis[j], &w);
            alpha.push(a);
            // two passes of classical Gram-Schmidt against the whole basis
            for _ in 0..2 {
                for q in &basis {
                    let h = dot(q, &w);
                    w.iter_mut().zip(q).for_each(|(wi, qi)| *wi -= h * qi);
                }
            }
            let b = norm(&w);
            let k = j + 1;
            let mut t = DMatrix::<f64>::zeros(k, k);
            for i in 0..k {
                t[(i, i)] = alpha[i];
                if i + 1 < k {
                    t[(i, i + 1)] = beta[i];
                    t[(i + 1, i)] = beta[i];
                }
            }
            let eig = SymmetricEigen::new(t);
            let idx = eig.eigenvalues.argmin().0;
            let y: Vec<f64> = eig.eigenvectors.column(idx).iter().copied().collect();
            let estimate = b * y[k - 1].abs();
            ritz = (eig.eigenvalues[idx], y);
            if estimate < tol || b < 1e-14 {
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|v| v / b).collect());
        }
        let (theta, y) = ritz;
        let mut v = vec![0.0; dim];
        for (coef, q) in y.iter().zip(&basis) {
            v.iter_mut().zip(q).for_each(|(vi, qi)| *vi += coef * qi);
        }
        let nv = norm(&v);
        v.iter_mut().for_each(|a| *a /= nv);
        let residual = residual_of(&apply, &v, theta);
        let candidate = Eigenpair { value: theta, vector: v.clone(), residual };
        if residual < tol {
            return Ok(candidate);
        }
        best = Some(candidate);
        x = v;
    }
    let best = best.expect("at least one restart");
    Err(Error::Consistency(format!(
        "Lanczos did not converge: residual {:.3e} after {MAX_RESTARTS} restarts",
        best.residual
    )))
}
