//! Homodyne detection efficiency and spectrum-analyzer trace arithmetic.
//!
//! The model's noise curves are relative to the shot-noise limit; a spectrum
//! analyzer shows absolute dBm. Traces are synthesized by anchoring 0 dB to a
//! scenario-supplied SNL level and power-adding the electronic floor and any
//! calibration signal. dBm values add and subtract as powers:
//! 10*log10(10^(a/10) +/- 10^(b/10)).

use crate::error::ModelError;
use crate::quadrature::QuadratureCovariance;

/// Homodyne readout: photodiode quantum efficiency, mode-overlap fringe
/// visibility, and the quadrature noise of the local oscillator.
///
/// In the offset-locked readout the LO is the dark-port carrier, which
/// derives from the input beam; `lo_variance` records that beam's quadrature
/// noise at the detector (the noise budget couples it through the bright-port
/// transfer, configured on the interferometer side).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomodyneSpec {
    pub quantum_efficiency: f64,
    pub fringe_visibility: f64,
    pub lo_variance: QuadratureCovariance,
}

impl HomodyneSpec {
    pub fn new(
        quantum_efficiency: f64,
        fringe_visibility: f64,
        lo_variance: QuadratureCovariance,
    ) -> Result<Self, ModelError> {
        if !(0.0..=1.0).contains(&quantum_efficiency) || !quantum_efficiency.is_finite() {
            return Err(ModelError::InvalidParameter {
                name: "quantum_efficiency",
                value: quantum_efficiency,
                reason: "must lie in [0, 1]",
            });
        }
        if !(0.0..=1.0).contains(&fringe_visibility) || !fringe_visibility.is_finite() {
            return Err(ModelError::InvalidParameter {
                name: "fringe_visibility",
                value: fringe_visibility,
                reason: "must lie in [0, 1]",
            });
        }
        Ok(Self {
            quantum_efficiency,
            fringe_visibility,
            lo_variance,
        })
    }

    /// An ideal readout: unit efficiency and visibility, vacuum-quiet LO.
    pub fn ideal() -> Self {
        Self {
            quantum_efficiency: 1.0,
            fringe_visibility: 1.0,
            lo_variance: QuadratureCovariance::vacuum(),
        }
    }
}

/// Effective detection efficiency: quantum efficiency times visibility
/// squared (imperfect overlap wastes signal power like a loss).
pub fn homodyne_efficiency(spec: &HomodyneSpec) -> f64 {
    spec.quantum_efficiency * spec.fringe_visibility * spec.fringe_visibility
}

/// Power sum of two dBm levels. `f64::NEG_INFINITY` represents "no power"
/// and is the identity element.
pub fn add_powers_dbm(a_dbm: f64, b_dbm: f64) -> f64 {
    10.0 * (10f64.powf(a_dbm / 10.0) + 10f64.powf(b_dbm / 10.0)).log10()
}

/// Removes a known electronic floor from a measured total:
/// 10*log10(10^(total/10) - 10^(electronic/10)).
///
/// Fails when the floor is at or above the total, where no optical power
/// remains to attribute.
pub fn subtract_electronic_noise(total_dbm: f64, electronic_dbm: f64) -> Result<f64, ModelError> {
    let remainder = 10f64.powf(total_dbm / 10.0) - 10f64.powf(electronic_dbm / 10.0);
    if remainder <= 0.0 {
        return Err(ModelError::ElectronicAboveTotal {
            total_dbm,
            electronic_dbm,
        });
    }
    Ok(10.0 * remainder.log10())
}

/// A synthesized analyzer trace: absolute levels over a frequency grid, with
/// the resolution/video bandwidth the levels are referenced to.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTrace {
    pub frequencies_hz: Vec<f64>,
    pub levels_dbm: Vec<f64>,
    pub rbw_hz: f64,
    pub vbw_hz: f64,
}

/// Builds an absolute trace from a relative noise curve.
///
/// Each point is add_powers_dbm(snl_ref_dbm + v_pd_db, electronic_dbm); a
/// calibration signal, given as (frequency, dBm), is power-added into the
/// nearest grid bin. Pass `f64::NEG_INFINITY` for `electronic_dbm` when no
/// electronic floor applies. Deterministic: no noise is drawn.
pub fn synthesize_trace(
    frequencies_hz: &[f64],
    v_pd_db: &[f64],
    snl_ref_dbm: f64,
    electronic_dbm: f64,
    signal: Option<(f64, f64)>,
    rbw_hz: f64,
    vbw_hz: f64,
) -> Result<SpectrumTrace, ModelError> {
    if frequencies_hz.len() != v_pd_db.len() {
        return Err(ModelError::InvalidParameter {
            name: "v_pd_db",
            value: v_pd_db.len() as f64,
            reason: "must have one entry per frequency",
        });
    }
    if frequencies_hz.is_empty() {
        return Err(ModelError::InvalidParameter {
            name: "frequencies_hz",
            value: 0.0,
            reason: "must not be empty",
        });
    }
    let mut levels: Vec<f64> = frequencies_hz
        .iter()
        .zip(v_pd_db)
        .map(|(_, v)| add_powers_dbm(snl_ref_dbm + v, electronic_dbm))
        .collect();
    if let Some((signal_hz, signal_dbm)) = signal {
        let bin = frequencies_hz
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (*a - signal_hz).abs().total_cmp(&(*b - signal_hz).abs()))
            .map(|(i, _)| i)
            .expect("grid checked non-empty");
        levels[bin] = add_powers_dbm(levels[bin], signal_dbm);
    }
    Ok(SpectrumTrace {
        frequencies_hz: frequencies_hz.to_vec(),
        levels_dbm: levels,
        rbw_hz,
        vbw_hz,
    })
}
