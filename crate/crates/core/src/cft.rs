//! Closed-form conformal predictions for ground-state entanglement entropy.
//!
//! All entropies are in nats (natural logarithm) and the velocity of
//! excitations is set to one, so inverse temperatures `beta` and system sizes
//! `L` carry the same length units as the interval length `ell` and the
//! cutoff `a`.
//!
//! Non-universal additive constants default to zero and the Rényi prefactors
//! `c_n` default to one. [`Prediction`] records whether a default was used.

use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};

/// Central charge of the underlying conformal field theory.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CentralCharge(f64);

impl CentralCharge {
    pub const ISING: CentralCharge = CentralCharge(0.5);
    pub const FREE_BOSON: CentralCharge = CentralCharge(1.0);

    pub fn new(c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::Domain(format!("central charge must be positive and finite, got {c}")));
        }
        Ok(CentralCharge(c))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// UV cutoff (lattice spacing).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Cutoff(f64);

impl Cutoff {
    pub const LATTICE: Cutoff = Cutoff(1.0);

    pub fn new(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Domain(format!("cutoff must be positive and finite, got {a}")));
        }
        Ok(Cutoff(a))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    fn check(self, what: &'static str, value: f64) -> Result<()> {
        if value.is_finite() && value > self.0 {
            Ok(())
        } else {
            Err(Error::CutoffViolation { what, value, cutoff: self.0 })
        }
    }
}

/// Ordered, strictly disjoint intervals `(u_k, v_k)` forming subsystem A.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl IntervalSet {
    /// Touching intervals (`v_k == u_{k+1}`) are rejected: the multi-interval
    /// entropy diverges there.
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::Validation("interval set is empty".into()));
        }
        for (k, &(u, v)) in intervals.iter().enumerate() {
            if !(u.is_finite() && v.is_finite()) {
                return Err(Error::Validation(format!("interval {k} has non-finite endpoints")));
            }
            if u >= v {
                return Err(Error::Validation(format!("interval {k} = ({u}, {v}) is empty or reversed")));
            }
        }
        for (k, pair) in intervals.windows(2).enumerate() {
            let (u0, v0) = pair[0];
            let (u1, v1) = pair[1];
            if v0 >= u1 {
                return Err(Error::Validation(format!(
                    "intervals {k} = ({u0}, {v0}) and {} = ({u1}, {v1}) overlap, touch or are unsorted",
                    k + 1
                )));
            }
        }
        Ok(IntervalSet { intervals })
    }

    pub fn single(u: f64, v: f64) -> Result<Self> {
        Self::new(vec![(u, v)])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Number of endpoints A shares with its complement on the infinite line.
    pub fn boundary_points(&self) -> u32 {
        2 * self.intervals.len() as u32
    }
}

/// Physical setup of the 1+1 dimensional system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    InfiniteLine,
    Thermal { beta: f64 },
    PeriodicFinite { length: f64 },
    SemiInfiniteBoundary,
    BoundaryThermal { beta: f64 },
    BoundaryFinite { length: f64 },
}

impl Geometry {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Geometry::Thermal { beta } | Geometry::BoundaryThermal { beta } => {
                if !(beta.is_finite() && beta > 0.0) {
                    return Err(Error::Domain(format!("inverse temperature must be positive, got {beta}")));
                }
            }
            Geometry::PeriodicFinite { length } | Geometry::BoundaryFinite { length } => {
                if !(length.is_finite() && length > 0.0) {
                    return Err(Error::Domain(format!("system length must be positive, got {length}")));
                }
            }
            Geometry::InfiniteLine | Geometry::SemiInfiniteBoundary => {}
        }
        Ok(())
    }

    pub fn has_boundary(&self) -> bool {
        matches!(
            self,
            Geometry::SemiInfiniteBoundary | Geometry::BoundaryThermal { .. } | Geometry::BoundaryFinite { .. }
        )
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Geometry::InfiniteLine => "infinite",
            Geometry::Thermal { .. } => "thermal",
            Geometry::PeriodicFinite { .. } => "periodic",
            Geometry::SemiInfiniteBoundary => "boundary",
            Geometry::BoundaryThermal { .. } => "boundary-thermal",
            Geometry::BoundaryFinite { .. } => "boundary-finite",
        }
    }
}

/// Non-universal constants: the bulk and boundary additive entropy constants
/// and the Rényi prefactors `c_n`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NonUniversalConstants {
    bulk: Option<f64>,
    boundary: Option<f64>,
    renyi: BTreeMap<u32, f64>,
}

impl NonUniversalConstants {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_bulk(mut self, k1: f64) -> Self {
        self.bulk = Some(k1);
        self
    }

    pub fn with_boundary(mut self, k1b: f64) -> Self {
        self.boundary = Some(k1b);
        self
    }

    /// Sets `c_n`. Requires `n >= 1`, `cn > 0`, and `c_1 = 1`.
    pub fn with_renyi(mut self, n: u32, cn: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("Rényi index must be at least 1".into()));
        }
        if !(cn.is_finite() && cn > 0.0) {
            return Err(Error::Domain(format!("c_{n} must be positive, got {cn}")));
        }
        if n == 1 && cn != 1.0 {
            return Err(Error::Domain(format!("c_1 is fixed to 1 by normalization, got {cn}")));
        }
        self.renyi.insert(n, cn);
        Ok(self)
    }

    pub fn bulk(&self) -> f64 {
        self.bulk.unwrap_or(0.0)
    }

    pub fn boundary(&self) -> f64 {
        self.boundary.unwrap_or(0.0)
    }

    pub fn renyi(&self, n: u32) -> f64 {
        self.renyi.get(&n).copied().unwrap_or(1.0)
    }

    pub fn bulk_defaulted(&self) -> bool {
        self.bulk.is_none()
    }

    pub fn boundary_defaulted(&self) -> bool {
        self.boundary.is_none()
    }

    pub fn renyi_defaulted(&self, n: u32) -> bool {
        n != 1 && !self.renyi.contains_key(&n)
    }
}

/// Input of the off-critical formula: correlation length and the number of
/// boundary points between A and its complement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffCriticalInput {
    pub xi: f64,
    pub boundary_points: u32,
}

impl OffCriticalInput {
    pub fn new(xi: f64, boundary_points: u32) -> Result<Self> {
        if !(xi.is_finite() && xi > 0.0) {
            return Err(Error::Domain(format!("correlation length must be positive and finite, got {xi}")));
        }
        if boundary_points == 0 {
            return Err(Error::Domain("number of boundary points must be at least 1".into()));
        }
        Ok(OffCriticalInput { xi, boundary_points })
    }
}

/// Central charge of the unitary minimal model `M(m, m+1)`.
pub fn minimal_model_central_charge(m: u64) -> Result<f64> {
    if m < 3 {
        return Err(Error::Domain(format!("minimal models start at m = 3, got {m}")));
    }
    let m = m as f64;
    Ok(1.0 - 6.0 / (m * (m + 1.0)))
}

/// Holomorphic dimension of the twist field on the `n`-sheeted surface,
/// `(c/24)(1 - 1/n^2)`. Accepts real `n > 0`.
pub fn scaling_dimension(n: f64, c: CentralCharge) -> Result<f64> {
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::Domain(format!("replica index must be positive, got {n}")));
    }
    Ok(c.value() / 24.0 * (1.0 - 1.0 / (n * n)))
}

/// `(ell/a)^(-(c/6)(n - 1/n))` for real `n > 0` with unit prefactor. This is
/// the analytic continuation used for the replica derivative.
pub fn renyi_power_law(n: f64, ell: f64, a: Cutoff, c: CentralCharge) -> Result<f64> {
    let delta = scaling_dimension(n, c)?;
    a.check("ell", ell)?;
    Ok((ell / a.value()).powf(-4.0 * n * delta))
}

/// `Tr rho_A^n = c_n (ell/a)^(-(c/6)(n - 1/n))` for a single interval.
pub fn renyi_trace_single_interval(
    n: u32,
    ell: f64,
    a: Cutoff,
    c: CentralCharge,
    consts: &NonUniversalConstants,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("Rényi index must be at least 1".into()));
    }
    Ok(consts.renyi(n) * renyi_power_law(n as f64, ell, a, c)?)
}

pub fn entropy_single_interval(ell: f64, a: Cutoff, c: CentralCharge, consts: &NonUniversalConstants) -> Result<f64> {
    if ell == a.value() {
        return Ok(consts.bulk());
    }
    a.check("ell", ell)?;
    Ok(c.value() / 3.0 * (ell / a.value()).ln() + consts.bulk())
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("inverse temperature must be positive and finite, got {beta}")))
    }
}

fn check_within(ell: f64, length: f64) -> Result<()> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::Domain(format!("system length must be positive, got {length}")));
    }
    if ell >= length {
        return Err(Error::Domain(format!("interval length {ell} must be smaller than the system length {length}")));
    }
    Ok(())
}

/// `ln(sinh x)` for `x > 0` without overflow at large `x`.
pub(crate) fn ln_sinh(x: f64) -> f64 {
    if x > 20.0 {
        x - LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// Single interval at inverse temperature `beta`.
pub fn entropy_thermal(ell: f64, beta: f64, a: Cutoff, c: CentralCharge, consts: &NonUniversalConstants) -> Result<f64> {
    check_beta(beta)?;
    a.check("ell", ell)?;
    let log_arg = (beta / (PI * a.value())).ln() + ln_sinh(PI * ell / beta);
    Ok(c.value() / 3.0 * log_arg + consts.bulk())
}

/// Single interval of a periodic system of length `length`.
pub fn entropy_periodic(ell: f64, length: f64, a: Cutoff, c: CentralCharge, consts: &NonUniversalConstants) -> Result<f64> {
    check_within(ell, length)?;
    a.check("ell", ell)?;
    let chord = length / (PI * a.value()) * (PI * ell / length).sin();
    Ok(c.value() / 3.0 * chord.ln() + consts.bulk())
}

/// Interval `[0, ell)` adjacent to the boundary of a semi-infinite system.
pub fn entropy_boundary(ell: f64, a: Cutoff, c: CentralCharge, consts: &NonUniversalConstants) -> Result<f64> {
    let arg = 2.0 * ell / a.value();
    if !(ell.is_finite() && arg >= 1.0) {
        return Err(Error::CutoffViolation { what: "2 ell", value: 2.0 * ell, cutoff: a.value() });
    }
    Ok(c.value() / 6.0 * arg.ln() + consts.boundary())
}

pub fn entropy_boundary_thermal(
    ell: f64,
    beta: f64,
    a: Cutoff,
    c: CentralCharge,
    consts: &NonUniversalConstants,
) -> Result<f64> {
    check_beta(beta)?;
    a.check("ell", ell)?;
    let log_arg = (beta / (PI * a.value())).ln() + ln_sinh(2.0 * PI * ell / beta);
    Ok(c.value() / 6.0 * log_arg + consts.boundary())
}

/// Finite system with two boundaries, cut into `ell` and `length - ell`.
pub fn entropy_boundary_finite(
    ell: f64,
    length: f64,
    a: Cutoff,
    c: CentralCharge,
    consts: &NonUniversalConstants,
) -> Result<f64> {
    check_within(ell, length)?;
    a.check("ell", ell)?;
    let chord = 2.0 * length / (PI * a.value()) * (PI * ell / length).sin();
    Ok(c.value() / 6.0 * chord.ln() + consts.boundary())
}

/// Several disjoint intervals on the infinite line.
///
/// The first sum runs over all ordered pairs `(j, k)` with `|v_k - u_j|`, the
/// form that reduces to twice the single-interval result when two intervals
/// are far apart.
pub fn entropy_multi_interval(
    set: &IntervalSet,
    a: Cutoff,
    c: CentralCharge,
    consts: &NonUniversalConstants,
) -> Result<f64> {
    let iv = set.intervals();
    for (k, &(u, v)) in iv.iter().enumerate() {
        if v - u <= a.value() {
            return Err(Error::Validation(format!(
                "interval {k} has length {} not exceeding the cutoff {}",
                v - u,
                a.value()
            )));
        }
    }
    for (k, pair) in iv.windows(2).enumerate() {
        let gap = pair[1].0 - pair[0].1;
        if gap <= a.value() {
            return Err(Error::Validation(format!(
                "gap {gap} between intervals {k} and {} does not exceed the cutoff {}",
                k + 1,
                a.value()
            )));
        }
    }
    let a = a.value();
    let mut cross = 0.0;
    for &(_, v) in iv {
        for &(u, _) in iv {
            cross += ((v - u).abs() / a).ln();
        }
    }
    let mut same_u = 0.0;
    let mut same_v = 0.0;
    for k in 0..iv.len() {
        for j in 0..k {
            same_u += ((iv[k].0 - iv[j].0) / a).ln();
            same_v += ((iv[k].1 - iv[j].1) / a).ln();
        }
    }
    Ok(c.value() / 3.0 * (cross - same_u - same_v) + iv.len() as f64 * consts.bulk())
}

/// Off-critical entropy `boundary_points * (c/6) ln(xi/a)` for `xi >> a`.
///
/// Fails for `xi <= a` and logs a warning for `xi < 100 a`.
pub fn entropy_off_critical(input: OffCriticalInput, a: Cutoff, c: CentralCharge) -> Result<f64> {
    if input.xi <= a.value() {
        return Err(Error::Domain(format!(
            "correlation length {} must exceed the cutoff {}",
            input.xi,
            a.value()
        )));
    }
    if input.xi < 100.0 * a.value() {
        log::warn!(
            "off-critical formula evaluated at xi/a = {:.3}; it holds only for xi >> a",
            input.xi / a.value()
        );
    }
    Ok(input.boundary_points as f64 * c.value() / 6.0 * (input.xi / a.value()).ln())
}

/// What to evaluate for a given geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Entropy,
    RenyiTrace { n: u32 },
}

/// One evaluated prediction with a record of defaulted constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub value: f64,
    pub constants_defaulted: bool,
}

/// Entropy or Rényi trace of a single interval of length `ell` in `geometry`.
///
/// Rényi traces are available for the infinite line only.
pub fn predict(
    geometry: Geometry,
    quantity: Quantity,
    ell: f64,
    a: Cutoff,
    c: CentralCharge,
    consts: &NonUniversalConstants,
) -> Result<Prediction> {
    geometry.validate()?;
    let defaulted = if geometry.has_boundary() { consts.boundary_defaulted() } else { consts.bulk_defaulted() };
    match quantity {
        Quantity::RenyiTrace { n } => {
            if geometry != Geometry::InfiniteLine {
                return Err(Error::Domain(format!("Rényi traces are only available on the infinite line, not {}", geometry.tag())));
            }
            let value = renyi_trace_single_interval(n, ell, a, c, consts)?;
            Ok(Prediction { value, constants_defaulted: consts.renyi_defaulted(n) })
        }
        Quantity::Entropy => {
            let value = match geometry {
                Geometry::InfiniteLine => entropy_single_interval(ell, a, c, consts)?,
                Geometry::Thermal { beta } => entropy_thermal(ell, beta, a, c, consts)?,
                Geometry::PeriodicFinite { length } => entropy_periodic(ell, length, a, c, consts)?,
                Geometry::SemiInfiniteBoundary => entropy_boundary(ell, a, c, consts)?,
                Geometry::BoundaryThermal { beta } => entropy_boundary_thermal(ell, beta, a, c, consts)?,
                Geometry::BoundaryFinite { length } => entropy_boundary_finite(ell, length, a, c, consts)?,
            };
            Ok(Prediction { value, constants_defaulted: defaulted })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(v: f64) -> CentralCharge {
        CentralCharge::new(v).unwrap()
    }

    fn zero() -> NonUniversalConstants {
        NonUniversalConstants::new()
    }

    #[test]
    fn minimal_models() {
        assert_abs_diff_eq!(minimal_model_central_charge(3).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(minimal_model_central_charge(5).unwrap(), 0.8, epsilon = 1e-15);
        assert!((minimal_model_central_charge(1_000_000).unwrap() - 1.0).abs() < 1e-5);
        assert!(matches!(minimal_model_central_charge(2), Err(Error::Domain(_))));
    }

    #[test]
    fn twist_dimension() {
        assert_eq!(scaling_dimension(1.0, c(0.7)).unwrap(), 0.0);
        assert_abs_diff_eq!(scaling_dimension(2.0, c(0.5)).unwrap(), 0.015625, epsilon = 1e-15);
        assert_abs_diff_eq!(scaling_dimension(3.0, c(1.0)).unwrap(), 1.0 / 27.0, epsilon = 1e-15);
        assert!(scaling_dimension(0.0, c(1.0)).is_err());
        assert!(scaling_dimension(-1.0, c(1.0)).is_err());
    }

    #[test]
    fn renyi_single_interval_values() {
        let a = Cutoff::LATTICE;
        assert_eq!(renyi_trace_single_interval(1, 37.0, a, c(0.5), &zero()).unwrap(), 1.0);
        let t2 = renyi_trace_single_interval(2, 100.0, a, c(0.5), &zero()).unwrap();
        assert_abs_diff_eq!(t2, 0.562_341_325_190_349, epsilon = 1e-12);
        let t3 = renyi_trace_single_interval(3, 10.0, a, c(1.0), &zero()).unwrap();
        assert_abs_diff_eq!(t3, 0.359_381_366_380_463, epsilon = 1e-12);
        let k = NonUniversalConstants::new().with_renyi(2, 0.8).unwrap();
        assert_abs_diff_eq!(renyi_trace_single_interval(2, 100.0, a, c(0.5), &k).unwrap(), 0.8 * t2, epsilon = 1e-14);
        assert!(matches!(
            renyi_trace_single_interval(2, 0.5, a, c(0.5), &zero()),
            Err(Error::CutoffViolation { .. })
        ));
    }

    #[test]
    fn c1_is_pinned() {
        assert!(NonUniversalConstants::new().with_renyi(1, 2.0).is_err());
        assert!(NonUniversalConstants::new().with_renyi(1, 1.0).is_ok());
    }

    #[test]
    fn single_interval_values() {
        let a = Cutoff::LATTICE;
        assert_eq!(entropy_single_interval(1.0, a, c(0.5), &zero()).unwrap(), 0.0);
        let e3 = 3f64.exp();
        assert_abs_diff_eq!(entropy_single_interval(e3, a, c(0.5), &zero()).unwrap(), 0.5, epsilon = 1e-14);
        let k = NonUniversalConstants::new().with_bulk(0.7);
        assert_abs_diff_eq!(
            entropy_single_interval(1000.0, a, c(1.0), &k).unwrap(),
            3.002_585_092_994_046,
            epsilon = 1e-12
        );
        assert!(entropy_single_interval(0.9, a, c(1.0), &k).is_err());
    }

    #[test]
    fn thermal_values_and_limits() {
        let a = Cutoff::LATTICE;
        let s = entropy_thermal(100.0, 100.0, a, c(0.5), &zero()).unwrap();
        // 30-digit evaluation of (1/6) ln((100/pi) sinh pi)
        assert_abs_diff_eq!(s, 0.984_502_764_098_634, epsilon = 1e-12);

        let low = entropy_thermal(10.0, 1e4, a, c(0.5), &zero()).unwrap();
        let zero_t = entropy_single_interval(10.0, a, c(0.5), &zero()).unwrap();
        assert!((low - zero_t).abs() < 1e-4);

        let ell = 1e4;
        let hot = entropy_thermal(ell, 10.0, a, c(0.5), &zero()).unwrap();
        let leading = PI * 0.5 / 3.0 * ell / 10.0;
        assert!(hot.is_finite());
        assert!(((hot - leading) / leading).abs() < 1e-3);

        assert!(matches!(entropy_thermal(10.0, 0.0, a, c(0.5), &zero()), Err(Error::Domain(_))));
        assert!(matches!(entropy_thermal(10.0, -1.0, a, c(0.5), &zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn periodic_symmetry_and_maximum() {
        let a = Cutoff::LATTICE;
        let l = 64.0;
        for ell in 2..63 {
            let ell = ell as f64;
            let s = entropy_periodic(ell, l, a, c(0.5), &zero()).unwrap();
            let r = entropy_periodic(l - ell, l, a, c(0.5), &zero()).unwrap();
            assert_abs_diff_eq!(s, r, epsilon = 1e-14);
        }
        let best = (2..63)
            .map(|e| (e, entropy_periodic(e as f64, l, a, c(0.5), &zero()).unwrap()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        assert_eq!(best.0, 32);
        let far = entropy_periodic(10.0, 1e5, a, c(0.5), &zero()).unwrap();
        let line = entropy_single_interval(10.0, a, c(0.5), &zero()).unwrap();
        assert!((far - line).abs() < 1e-6);
        assert!(matches!(entropy_periodic(64.0, 64.0, a, c(0.5), &zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn boundary_values() {
        let a = Cutoff::LATTICE;
        assert_eq!(entropy_boundary(0.5, a, c(0.5), &zero()).unwrap(), 0.0);
        assert_abs_diff_eq!(
            entropy_boundary(50.0, a, c(0.5), &zero()).unwrap(),
            0.383_764_182_165_674,
            epsilon = 1e-12
        );
        // Same log argument X: bulk (c/3) ln X vs boundary (c/6) ln X.
        let x = 80.0;
        let bulk = entropy_single_interval(x, a, c(0.8), &zero()).unwrap();
        let bnd = entropy_boundary(x / 2.0, a, c(0.8), &zero()).unwrap();
        assert_abs_diff_eq!(bulk / bnd, 2.0, epsilon = 1e-13);
        assert!(entropy_boundary(0.4, a, c(0.5), &zero()).is_err());
    }

    #[test]
    fn boundary_thermal_values() {
        let a = Cutoff::LATTICE;
        let s = entropy_boundary_thermal(100.0, 100.0, a, c(1.0), &zero()).unwrap();
        // 30-digit evaluation of (1/6) ln((100/pi) sinh 2 pi)
        assert_abs_diff_eq!(s, 1.508_412_489_901_649, epsilon = 1e-12);
        let hot = entropy_boundary_thermal(1e4, 10.0, a, c(1.0), &zero()).unwrap();
        let leading = PI / 3.0 * 1e3;
        assert!(((hot - leading) / leading).abs() < 1e-3);
        let cold = entropy_boundary_thermal(10.0, 1e4, a, c(1.0), &zero()).unwrap();
        let zero_t = entropy_boundary(10.0, a, c(1.0), &zero()).unwrap();
        assert!((cold - zero_t).abs() < 1e-4);
    }

    #[test]
    fn boundary_finite_values() {
        let a = Cutoff::LATTICE;
        let s = entropy_boundary_finite(50.0, 100.0, a, c(0.5), &zero()).unwrap();
        // 30-digit evaluation of (1/12) ln(200/pi)
        assert_abs_diff_eq!(s, 0.346_132_290_058_220, epsilon = 1e-12);
        for ell in [3.0, 17.0, 41.0] {
            let l = entropy_boundary_finite(ell, 100.0, a, c(0.5), &zero()).unwrap();
            let r = entropy_boundary_finite(100.0 - ell, 100.0, a, c(0.5), &zero()).unwrap();
            assert_abs_diff_eq!(l, r, epsilon = 1e-14);
        }
        let far = entropy_boundary_finite(10.0, 1e5, a, c(0.5), &zero()).unwrap();
        assert!((far - entropy_boundary(10.0, a, c(0.5), &zero()).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn multi_interval_rejects_bad_sets() {
        assert!(IntervalSet::new(vec![]).is_err());
        assert!(IntervalSet::new(vec![(1.0, 0.0)]).is_err());
        assert!(IntervalSet::new(vec![(0.0, 2.0), (1.0, 3.0)]).is_err());
        assert!(IntervalSet::new(vec![(3.0, 4.0), (0.0, 1.0)]).is_err());
        let err = IntervalSet::new(vec![(0.0, 1.0), (1.0, 2.0)]).unwrap_err();
        assert!(err.to_string().contains("intervals 0"));
        let set = IntervalSet::new(vec![(0.0, 1.0), (1.005, 2.0)]).unwrap();
        assert!(entropy_multi_interval(&set, Cutoff::new(0.01).unwrap(), c(1.0), &zero()).is_err());
    }

    #[test]
    fn off_critical_values() {
        let a = Cutoff::LATTICE;
        let xi = 400.0;
        let s = entropy_off_critical(OffCriticalInput::new(xi, 1).unwrap(), a, c(0.5)).unwrap();
        assert_abs_diff_eq!(s, xi.ln() / 12.0, epsilon = 1e-14);
        let s = entropy_off_critical(OffCriticalInput::new(6f64.exp(), 2).unwrap(), a, c(1.0)).unwrap();
        assert_abs_diff_eq!(s, 2.0, epsilon = 1e-13);
        let s = entropy_off_critical(OffCriticalInput::new(xi, 1).unwrap(), a, c(1.0)).unwrap();
        assert_abs_diff_eq!(s, xi.ln() / 6.0, epsilon = 1e-14);
        assert!(entropy_off_critical(OffCriticalInput::new(1.0, 1).unwrap(), a, c(1.0)).is_err());
        // below 100 a only warns
        assert!(entropy_off_critical(OffCriticalInput::new(20.0, 1).unwrap(), a, c(1.0)).is_ok());
    }

    #[test]
    fn ln_sinh_is_continuous_at_switch() {
        let below = ln_sinh(20.0 - 1e-12);
        let above = ln_sinh(20.0 + 1e-12);
        assert!((below - above).abs() < 1e-11);
        assert!(ln_sinh(5000.0).is_finite());
    }

    #[test]
    fn predict_flags_defaults() {
        let a = Cutoff::LATTICE;
        let p = predict(Geometry::InfiniteLine, Quantity::Entropy, 100.0, a, c(0.5), &zero()).unwrap();
        assert_abs_diff_eq!(p.value, 0.767_528_364_331_349, epsilon = 1e-12);
        assert!(p.constants_defaulted);
        let k = NonUniversalConstants::new().with_bulk(0.1);
        let p = predict(Geometry::InfiniteLine, Quantity::Entropy, 100.0, a, c(0.5), &k).unwrap();
        assert!(!p.constants_defaulted);
        let p = predict(Geometry::SemiInfiniteBoundary, Quantity::Entropy, 100.0, a, c(0.5), &k).unwrap();
        assert!(p.constants_defaulted);
        let p = predict(Geometry::InfiniteLine, Quantity::RenyiTrace { n: 1 }, 100.0, a, c(0.5), &k).unwrap();
        assert_eq!(p.value, 1.0);
        assert!(!p.constants_defaulted);
        assert!(predict(Geometry::Thermal { beta: 1.0 }, Quantity::RenyiTrace { n: 2 }, 10.0, a, c(0.5), &k).is_err());
    }
}
