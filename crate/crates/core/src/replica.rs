//! Conformal maps of the replica surface and the stress-tensor identities
//! they imply.
//!
//! A [`MapJet`] carries a holomorphic map and its first three derivatives at
//! one point. Jets compose by Faà di Bruno's formula, which lets the
//! uniformizing maps be assembled from a Möbius map and a power map and makes
//! the Schwarzian chain rule directly testable.
//!
//! Fractional powers use the principal branch. Evaluations closer than
//! [`SINGULARITY_RADIUS`] to a branch point fail instead of returning
//! non-finite values.

use num_complex::Complex64;

use crate::cft::{scaling_dimension, CentralCharge};
use crate::error::{Error, Result};

pub const SINGULARITY_RADIUS: f64 = 1e-12;

/// A holomorphic map and its first three derivatives at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapJet {
    pub value: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
    pub d3: Complex64,
}

impl MapJet {
    pub fn identity(z: Complex64) -> Self {
        MapJet { value: z, d1: Complex64::new(1.0, 0.0), d2: Complex64::new(0.0, 0.0), d3: Complex64::new(0.0, 0.0) }
    }

    /// `z -> scale * z + shift`; a rigid motion when `|scale| = 1`.
    pub fn affine(z: Complex64, scale: Complex64, shift: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        MapJet { value: scale * z + shift, d1: scale, d2: zero, d3: zero }
    }

    /// `z -> (a z + b) / (c z + d)`.
    pub fn mobius(z: Complex64, a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm() < SINGULARITY_RADIUS {
            return Err(Error::Domain("degenerate Möbius map (ad - bc = 0)".into()));
        }
        let den = c * z + d;
        if den.norm() < SINGULARITY_RADIUS {
            return Err(Error::Singularity(format!("Möbius pole at z = {z}")));
        }
        let d1 = det / (den * den);
        let d2 = -2.0 * c * d1 / den;
        let d3 = -3.0 * c * d2 / den;
        Ok(MapJet { value: (a * z + b) / den, d1, d2, d3 })
    }

    /// Principal-branch power `z -> z^p`.
    pub fn power(z: Complex64, p: f64) -> Result<Self> {
        if z.norm() < SINGULARITY_RADIUS {
            return Err(Error::Singularity(format!("power map branch point at z = {z}")));
        }
        let value = z.powf(p);
        let d1 = p * value / z;
        let d2 = (p - 1.0) * d1 / z;
        let d3 = (p - 2.0) * d2 / z;
        Ok(MapJet { value, d1, d2, d3 })
    }

    /// `z -> scale * ln z`, principal branch.
    pub fn log(z: Complex64, scale: f64) -> Result<Self> {
        if z.norm() < SINGULARITY_RADIUS {
            return Err(Error::Singularity(format!("logarithm branch point at z = {z}")));
        }
        let d1 = scale / z;
        let d2 = -d1 / z;
        let d3 = -2.0 * d2 / z;
        Ok(MapJet { value: scale * z.ln(), d1, d2, d3 })
    }

    /// `z -> exp(scale * z)`.
    pub fn exp(z: Complex64, scale: f64) -> Self {
        let value = (scale * z).exp();
        MapJet { value, d1: scale * value, d2: scale * scale * value, d3: scale * scale * scale * value }
    }

    /// Jet of `outer ∘ inner`, where `outer` is evaluated at `inner.value`.
    pub fn compose(outer: &MapJet, inner: &MapJet) -> MapJet {
        let g1 = inner.d1;
        let g2 = inner.d2;
        let g3 = inner.d3;
        MapJet {
            value: outer.value,
            d1: outer.d1 * g1,
            d2: outer.d2 * g1 * g1 + outer.d1 * g2,
            d3: outer.d3 * g1 * g1 * g1 + 3.0 * outer.d2 * g1 * g2 + outer.d1 * g3,
        }
    }

    /// Schwarzian derivative `(f''' f' - 3/2 f''^2) / f'^2`.
    pub fn schwarzian(&self) -> Result<Complex64> {
        if self.d1.norm() == 0.0 {
            return Err(Error::NonConformal(format!("{}", self.value)));
        }
        Ok((self.d3 * self.d1 - 1.5 * self.d2 * self.d2) / (self.d1 * self.d1))
    }
}

/// Branch points `u < v` on the real axis joining `sheets` copies of the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPointPair {
    u: f64,
    v: f64,
    sheets: u32,
}

impl BranchPointPair {
    pub fn new(u: f64, v: f64, sheets: u32) -> Result<Self> {
        if !(u.is_finite() && v.is_finite() && u < v) {
            return Err(Error::Domain(format!("branch points must satisfy u < v, got ({u}, {v})")));
        }
        if sheets == 0 {
            return Err(Error::Domain("sheet count must be at least 1".into()));
        }
        Ok(BranchPointPair { u, v, sheets })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn sheets(&self) -> u32 {
        self.sheets
    }
}

fn guard(w: Complex64, at: Complex64, name: &str) -> Result<()> {
    if (w - at).norm() < SINGULARITY_RADIUS {
        Err(Error::Singularity(format!("w = {w} coincides with branch point {name} = {at}")))
    } else {
        Ok(())
    }
}

/// `((w - p) / (w - q))^(1/n)` assembled as power ∘ Möbius.
fn sheet_map(w: Complex64, p: Complex64, q: Complex64, n: u32) -> Result<MapJet> {
    guard(w, p, "u")?;
    guard(w, q, "v")?;
    let one = Complex64::new(1.0, 0.0);
    let mob = MapJet::mobius(w, one, -p, one, -q)?;
    let pow = MapJet::power(mob.value, 1.0 / n as f64)?;
    Ok(MapJet::compose(&pow, &mob))
}

/// Two-point function of a scalar of scaling dimension `delta` on the plane,
/// `|r1 - r2|^(-2 delta)`.
pub fn two_point_plane(r1: [f64; 2], r2: [f64; 2], delta: f64) -> Result<f64> {
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(Error::Domain(format!("scaling dimension must be nonnegative, got {delta}")));
    }
    let dist = (r1[0] - r2[0]).hypot(r1[1] - r2[1]);
    if dist < SINGULARITY_RADIUS {
        return Err(Error::Singularity("coincident points in two-point function".into()));
    }
    Ok(dist.powf(-2.0 * delta))
}

/// Two-point function at `z1, z2` in the geometry that `w(z)` maps onto the
/// plane: `|w'(z1)|^delta |w'(z2)|^delta <phi(w(z1)) phi(w(z2))>_plane`.
///
/// `delta` is the full scaling dimension, as in [`two_point_plane`], so each
/// point carries one power of its local scale factor.
pub fn two_point_mapped(jet1: &MapJet, jet2: &MapJet, delta: f64) -> Result<f64> {
    for jet in [jet1, jet2] {
        if jet.d1.norm() < SINGULARITY_RADIUS {
            return Err(Error::NonConformal(format!("{}", jet.value)));
        }
    }
    let w1 = jet1.value;
    let w2 = jet2.value;
    let plane = two_point_plane([w1.re, w1.im], [w2.re, w2.im], delta)?;
    Ok((jet1.d1.norm() * jet2.d1.norm()).powf(delta) * plane)
}

/// Jet of the map `w -> ((w - u)/(w - v))^(1/n)` uniformizing the
/// `n`-sheeted surface branched over `(u, v)`.
pub fn uniformizing_map_jet(w: Complex64, bp: &BranchPointPair) -> Result<MapJet> {
    sheet_map(w, Complex64::new(bp.u, 0.0), Complex64::new(bp.v, 0.0), bp.sheets)
}

/// Jet of `w -> ((w - i ell)/(w + i ell))^(1/n)`, which takes the
/// `n`-sheeted half plane (`w = tau + i x`, boundary at `x = 0`) to the unit
/// disc.
pub fn boundary_uniformizing_map_jet(w: Complex64, ell: f64, n: u32) -> Result<MapJet> {
    if !(ell.is_finite() && ell > 0.0) {
        return Err(Error::Domain(format!("interval length must be positive, got {ell}")));
    }
    if n == 0 {
        return Err(Error::Domain("sheet count must be at least 1".into()));
    }
    sheet_map(w, Complex64::new(0.0, ell), Complex64::new(0.0, -ell), n)
}

/// Transformation law of the holomorphic stress tensor,
/// `T(w) = z'(w)^2 T(z) + (c/12) {z; w}`.
pub fn transform_stress(jet: &MapJet, t_at_image: Complex64, c: CentralCharge) -> Result<Complex64> {
    if jet.d1.norm() == 0.0 {
        return Err(Error::NonConformal(format!("{}", jet.value)));
    }
    Ok(jet.d1 * jet.d1 * t_at_image + c.value() / 12.0 * jet.schwarzian()?)
}

/// Closed form `<T(w)>` on the `n`-sheeted surface branched over `(u, v)`.
pub fn stress_expectation_sheeted(w: Complex64, bp: &BranchPointPair, c: CentralCharge) -> Result<Complex64> {
    let u = Complex64::new(bp.u, 0.0);
    let v = Complex64::new(bp.v, 0.0);
    guard(w, u, "u")?;
    guard(w, v, "v")?;
    let n = bp.sheets as f64;
    let pref = c.value() * (1.0 - 1.0 / (n * n)) / 24.0;
    let du = w - u;
    let dv = w - v;
    Ok(pref * (v - u) * (v - u) / (du * du * dv * dv))
}

/// `<T(w) Phi_n(u) Phi_-n(v)> / <Phi_n(u) Phi_-n(v)>` from the conformal
/// Ward identity, with twist fields normalized to `|v - u|^(-4 delta_n)`.
pub fn ward_identity_ratio(w: Complex64, bp: &BranchPointPair, delta_n: f64) -> Result<Complex64> {
    let u = Complex64::new(bp.u, 0.0);
    let v = Complex64::new(bp.v, 0.0);
    guard(w, u, "u")?;
    guard(w, v, "v")?;
    let du = w - u;
    let dv = w - v;
    let sep = v - u;
    let three_point =
        delta_n / (du * du * dv * dv * sep.powf(2.0 * delta_n - 2.0) * sep.conj().powf(2.0 * delta_n));
    let two_point = sep.norm().powf(-4.0 * delta_n);
    Ok(three_point / two_point)
}

/// `<T(w)>` on the `n`-sheeted half plane with the interval `[0, ell)` at the
/// boundary, `Delta_n (u - v)^2 / ((w - u)^2 (w - v)^2)` with `u = i ell`,
/// `v = -i ell`.
///
/// Note `(u - v)^2 = (2 i ell)^2 = -(2 ell)^2`; this sign is the one the
/// Schwarzian of the boundary uniformizing map produces.
pub fn stress_expectation_boundary(w: Complex64, ell: f64, n: u32, c: CentralCharge) -> Result<Complex64> {
    if !(ell.is_finite() && ell > 0.0) {
        return Err(Error::Domain(format!("interval length must be positive, got {ell}")));
    }
    if n == 0 {
        return Err(Error::Domain("sheet count must be at least 1".into()));
    }
    let u = Complex64::new(0.0, ell);
    let v = Complex64::new(0.0, -ell);
    guard(w, u, "i ell")?;
    guard(w, v, "-i ell")?;
    let delta = scaling_dimension(n as f64, c)?;
    let du = w - u;
    let dv = w - v;
    Ok(delta * (u - v) * (u - v) / (du * du * dv * dv))
}
