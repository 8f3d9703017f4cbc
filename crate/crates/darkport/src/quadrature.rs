//! Quadrature-variance algebra for Gaussian noise states.
//!
//! A stationary Gaussian field state is described by the second moments of
//! its two quadratures: variances `v_plus` and `v_minus` plus the symmetrized
//! cross-correlation. Variances are normalized to the vacuum, so the shot
//! noise limit is exactly 1 in every quadrature. All decibel values use the
//! power convention dB = 10*log10(V); -3 dB of squeezing means V = 0.501.
//!
//! Optical loss of power efficiency eta acts as a beamsplitter that admixes
//! vacuum: V -> eta*V + (1 - eta), correlations scale by eta. This pulls any
//! state monotonically toward vacuum and preserves the uncertainty product
//! v_plus*v_minus - c^2 >= 1.

use crate::error::ModelError;

/// Noise variance relative to vacuum, in dB (power convention).
///
/// 0 dB is the shot-noise level; negative values are squeezed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseVarianceDb(pub f64);

/// Converts a dB variance to a linear one: 10^(x/10).
pub fn db_to_linear(x: NoiseVarianceDb) -> f64 {
    10f64.powf(x.0 / 10.0)
}

/// Converts a linear variance to dB: 10*log10(v). Rejects v <= 0.
pub fn linear_to_db(v: f64) -> Result<NoiseVarianceDb, ModelError> {
    if !v.is_finite() || v <= 0.0 {
        return Err(ModelError::InvalidParameter {
            name: "variance",
            value: v,
            reason: "must be a finite positive number",
        });
    }
    Ok(NoiseVarianceDb(10.0 * v.log10()))
}

/// Second moments of a Gaussian state's quadratures, vacuum-normalized.
///
/// Invariants: both variances positive, and the uncertainty product
/// v_plus*v_minus - correlation^2 >= 1 (equality for pure states).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureCovariance {
    pub v_plus: f64,
    pub v_minus: f64,
    pub correlation: f64,
}

/// Slack allowed on the uncertainty product to absorb rounding in states
/// built from measured dB values.
const UNCERTAINTY_TOL: f64 = 1e-9;

impl QuadratureCovariance {
    pub fn new(v_plus: f64, v_minus: f64, correlation: f64) -> Result<Self, ModelError> {
        if !v_plus.is_finite() || v_plus <= 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "v_plus",
                value: v_plus,
                reason: "must be a finite positive variance",
            });
        }
        if !v_minus.is_finite() || v_minus <= 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "v_minus",
                value: v_minus,
                reason: "must be a finite positive variance",
            });
        }
        if !correlation.is_finite() {
            return Err(ModelError::InvalidParameter {
                name: "correlation",
                value: correlation,
                reason: "must be finite",
            });
        }
        let state = Self {
            v_plus,
            v_minus,
            correlation,
        };
        let product = state.uncertainty_product();
        if product < 1.0 - UNCERTAINTY_TOL {
            return Err(ModelError::UnphysicalCovariance { product });
        }
        Ok(state)
    }

    /// The vacuum state: unit variance in both quadratures, no correlation.
    pub fn vacuum() -> Self {
        Self {
            v_plus: 1.0,
            v_minus: 1.0,
            correlation: 0.0,
        }
    }

    /// v_plus*v_minus - correlation^2; >= 1 for physical states, = 1 for pure.
    pub fn uncertainty_product(&self) -> f64 {
        self.v_plus * self.v_minus - self.correlation * self.correlation
    }

    /// Beamsplitter loss of power efficiency `eta` in [0, 1].
    ///
    /// Vacuum is a fixed point; eta = 1 is the identity; eta = 0 yields vacuum.
    pub fn apply_loss(&self, eta: f64) -> Result<Self, ModelError> {
        if !(0.0..=1.0).contains(&eta) || !eta.is_finite() {
            return Err(ModelError::InvalidParameter {
                name: "efficiency",
                value: eta,
                reason: "must lie in [0, 1]",
            });
        }
        Ok(Self {
            v_plus: eta * self.v_plus + (1.0 - eta),
            v_minus: eta * self.v_minus + (1.0 - eta),
            correlation: eta * self.correlation,
        })
    }

    /// Variance of the quadrature at homodyne angle `theta`:
    /// cos^2(t)*v_plus + sin^2(t)*v_minus + 2*sin(t)*cos(t)*correlation.
    pub fn measured_variance(&self, theta_rad: f64) -> f64 {
        let (s, c) = theta_rad.sin_cos();
        c * c * self.v_plus + s * s * self.v_minus + 2.0 * s * c * self.correlation
    }
}

/// A pure squeezed state: suppression below vacuum in dB, and the angle of
/// the squeezed quadrature relative to the homodyne measurement quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeSpec {
    pub suppression_db: f64,
    pub angle_rad: f64,
}

impl SqueezeSpec {
    pub fn new(suppression_db: f64, angle_rad: f64) -> Result<Self, ModelError> {
        if !suppression_db.is_finite() || suppression_db < 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "suppression_db",
                value: suppression_db,
                reason: "must be >= 0 (0 dB is vacuum)",
            });
        }
        if !angle_rad.is_finite() {
            return Err(ModelError::InvalidParameter {
                name: "angle_rad",
                value: angle_rad,
                reason: "must be finite",
            });
        }
        Ok(Self {
            suppression_db,
            angle_rad,
        })
    }
}

/// Covariance of the pure squeezed state described by `spec`.
///
/// Before rotation the squeezed quadrature has variance 10^(-s/10) and the
/// anti-squeezed one 10^(+s/10) (pure state, unit uncertainty product); the
/// principal axes are then rotated by `angle_rad`.
pub fn make_squeezed(spec: &SqueezeSpec) -> QuadratureCovariance {
    let v_sq = db_to_linear(NoiseVarianceDb(-spec.suppression_db));
    let v_anti = db_to_linear(NoiseVarianceDb(spec.suppression_db));
    let (s, c) = spec.angle_rad.sin_cos();
    QuadratureCovariance {
        v_plus: c * c * v_sq + s * s * v_anti,
        v_minus: s * s * v_sq + c * c * v_anti,
        correlation: s * c * (v_sq - v_anti),
    }
}

/// Variance of `state`'s quadrature at homodyne angle `theta` (free-function
/// form of [`QuadratureCovariance::measured_variance`]).
pub fn measured_variance(state: &QuadratureCovariance, theta_rad: f64) -> f64 {
    state.measured_variance(theta_rad)
}

/// Source-level squeezing suppression that, after a loss of efficiency `eta`,
/// would be measured as `measured_db` of squeezing.
///
/// Inverts V_meas = eta*V_src + (1 - eta). Fails when the requested measured
/// level is deeper than the loss allows (V_meas <= 1 - eta).
pub fn source_suppression_for_measured(measured_db: f64, eta: f64) -> Result<f64, ModelError> {
    if !measured_db.is_finite() || measured_db < 0.0 {
        return Err(ModelError::InvalidParameter {
            name: "measured_db",
            value: measured_db,
            reason: "must be >= 0",
        });
    }
    if !(0.0..=1.0).contains(&eta) || eta == 0.0 {
        return Err(ModelError::InvalidParameter {
            name: "efficiency",
            value: eta,
            reason: "must lie in (0, 1]",
        });
    }
    let v_meas = db_to_linear(NoiseVarianceDb(-measured_db));
    let v_src = (v_meas - (1.0 - eta)) / eta;
    if v_src <= 0.0 {
        return Err(ModelError::InvalidParameter {
            name: "measured_db",
            value: measured_db,
            reason: "deeper than the chain efficiency can deliver",
        });
    }
    Ok(-10.0 * v_src.log10())
}
