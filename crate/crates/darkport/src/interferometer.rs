//! Quantum-noise model of an offset-locked Michelson with power recycling
//! and squeezed vacuum injected at the dark port.
//!
//! The Michelson is folded into a two-port compound mirror
//! ([`crate::optics::michelson_two_port`]) and placed behind the power
//! mirror, forming a linear cavity for the bright mode. Resumming the cavity
//! round trips (loop factor r1*r2'*e^{i*phi}, r2' = cos(delta)*
//! sqrt(arm_efficiency*(1-round_trip_loss)), phi = 2*pi*omega/FSR) gives
//! closed-form amplitude transfer coefficients from every input port to the
//! homodyne readout behind the dark port:
//!
//! - the squeezed input, reflecting off the compound interferometer,
//! - the bright-port input beam, leaking to the dark port via the fringe
//!   offset,
//! - one vacuum port per loss: rotator pass in, rotator pass out, arm loss,
//!   cavity round-trip loss, power-mirror loss, homodyne inefficiency.
//!
//! The derivation and sign conventions are spelled out in docs/model.md; the
//! convention anchor is that on the dark fringe with everything lossless the
//! squeezed input reflects to the readout with coefficient exactly +1.
//!
//! Because every response obeys h(-omega) = conj(h(omega)), both quadratures
//! see the same scalar |T| and the detected variance is the incoherent budget
//!     V_pd(omega) = |T_lo|^2 V_lo + |T_sqz|^2 V_sqz + sum |T_vac|^2,
//! each vacuum port contributing unit variance. Passivity makes the squared
//! magnitudes sum to one at every frequency, which doubles as the strongest
//! internal check on the algebra.

use num_complex::Complex64;

use crate::detection::{homodyne_efficiency, HomodyneSpec};
use crate::error::ModelError;
use crate::optics::{free_spectral_range, CavitySpec, MirrorSpec, SidebandFrequency};
use crate::quadrature::{make_squeezed, QuadratureCovariance, SqueezeSpec};

/// Full description of one interferometer configuration.
///
/// `power_mirror: None` is the plain Michelson: the recycling port is open
/// (transmissivity 1), handled by the same code path with r1 = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferometerConfig {
    pub input_power_w: f64,
    pub power_mirror: Option<MirrorSpec>,
    pub cavity_length_m: f64,
    pub target_dark_power_w: f64,
    /// Lumped recycling-cavity round-trip power loss (scatter, mode
    /// mismatch), on top of the arm loss. Typically fitted, not measured.
    pub round_trip_loss: f64,
    /// Double-pass power loss of the injection/readout rotator; each pass
    /// costs sqrt(1 - loss) in power.
    pub rotator_double_pass_loss: f64,
    /// One-way arm power efficiency of the Michelson.
    pub arm_efficiency: f64,
    pub homodyne: HomodyneSpec,
    /// Squeezed state entering the dark port, referenced at the source
    /// (before any rotator or detection loss). `None` leaves vacuum.
    pub squeeze: Option<SqueezeSpec>,
    /// Quadrature noise of the input beam (the local oscillator's origin);
    /// vacuum for a shot-noise-limited laser.
    pub input_beam_variance: QuadratureCovariance,
}

impl InterferometerConfig {
    /// Checks every field range, naming the offending field.
    pub fn validate(&self) -> Result<(), ModelError> {
        if !self.input_power_w.is_finite() || self.input_power_w <= 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "input_power_w",
                value: self.input_power_w,
                reason: "must be a positive power",
            });
        }
        if let Some(m) = &self.power_mirror {
            MirrorSpec::new(m.power_reflectivity, m.power_loss)?;
        }
        if !self.cavity_length_m.is_finite() || self.cavity_length_m <= 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "cavity_length_m",
                value: self.cavity_length_m,
                reason: "must be a positive length",
            });
        }
        if !self.target_dark_power_w.is_finite()
            || self.target_dark_power_w < 0.0
            || self.target_dark_power_w > self.input_power_w
        {
            return Err(ModelError::InvalidParameter {
                name: "target_dark_power_w",
                value: self.target_dark_power_w,
                reason: "must lie in [0, input_power_w]",
            });
        }
        if !(0.0..1.0).contains(&self.round_trip_loss) {
            return Err(ModelError::InvalidParameter {
                name: "round_trip_loss",
                value: self.round_trip_loss,
                reason: "must lie in [0, 1)",
            });
        }
        if !(0.0..1.0).contains(&self.rotator_double_pass_loss) {
            return Err(ModelError::InvalidParameter {
                name: "rotator_double_pass_loss",
                value: self.rotator_double_pass_loss,
                reason: "must lie in [0, 1)",
            });
        }
        if !(self.arm_efficiency > 0.0 && self.arm_efficiency <= 1.0) {
            return Err(ModelError::InvalidParameter {
                name: "arm_efficiency",
                value: self.arm_efficiency,
                reason: "must lie in (0, 1]",
            });
        }
        HomodyneSpec::new(
            self.homodyne.quantum_efficiency,
            self.homodyne.fringe_visibility,
            self.homodyne.lo_variance,
        )?;
        QuadratureCovariance::new(
            self.homodyne.lo_variance.v_plus,
            self.homodyne.lo_variance.v_minus,
            self.homodyne.lo_variance.correlation,
        )?;
        if let Some(s) = &self.squeeze {
            SqueezeSpec::new(s.suppression_db, s.angle_rad)?;
        }
        QuadratureCovariance::new(
            self.input_beam_variance.v_plus,
            self.input_beam_variance.v_minus,
            self.input_beam_variance.correlation,
        )?;
        Ok(())
    }

    /// Power mirror amplitude reflectivity; 0 for the open (simple) port.
    fn r1(&self) -> f64 {
        self.power_mirror
            .map(|m| m.amplitude_reflectivity())
            .unwrap_or(0.0)
    }

    /// Power mirror power transmissivity; 1 for the open port.
    fn t1_power(&self) -> f64 {
        self.power_mirror
            .map(|m| m.power_transmissivity())
            .unwrap_or(1.0)
    }

    fn mirror_loss_power(&self) -> f64 {
        self.power_mirror.map(|m| m.power_loss).unwrap_or(0.0)
    }

    /// Single-pass power efficiency of the rotator.
    pub fn rotator_single_pass_efficiency(&self) -> f64 {
        (1.0 - self.rotator_double_pass_loss).sqrt()
    }

    /// Loop amplitude k = r1*sqrt(arm_efficiency*(1 - round_trip_loss));
    /// the dark-port power peaks at cos(delta) = k.
    fn loop_amplitude(&self) -> f64 {
        self.r1() * (self.arm_efficiency * (1.0 - self.round_trip_loss)).sqrt()
    }

    fn dark_power_at(&self, delta: f64) -> f64 {
        let (s, c) = delta.sin_cos();
        let r2p = c * (self.arm_efficiency * (1.0 - self.round_trip_loss)).sqrt();
        let denom = 1.0 - self.r1() * r2p;
        let gain = self.t1_power() / (denom * denom);
        self.input_power_w * gain * s * s * self.arm_efficiency
    }
}

/// Solved lock point of the interferometer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    /// Fringe offset delta: half the round-trip differential arm phase.
    pub fringe_offset_rad: f64,
    /// cos(delta)*sqrt(arm_efficiency): the compound Michelson amplitude
    /// reflectivity seen by the recycling cavity (excluding its lumped
    /// round-trip loss).
    pub effective_michelson_reflectivity: f64,
    /// Circulating over input power on resonance.
    pub recycling_gain: f64,
    pub circulating_power_w: f64,
    pub dark_port_power_w: f64,
}

const OPERATING_POINT_ITERATIONS: u32 = 200;
const DELTA_TOLERANCE: f64 = 1e-12;
const POWER_RELATIVE_TOLERANCE: f64 = 1e-9;

/// Finds the fringe offset that leaks `target_dark_power_w` to the dark port.
///
/// Dark-port power P(delta) = P_in * G(delta) * sin^2(delta) * arm_efficiency
/// with G(delta) = T1/(1 - k*cos(delta))^2 rises monotonically from 0 up to
/// its peak at cos(delta) = k, so bisection on (0, arccos(k)] is guaranteed
/// to converge; the branch closest to the dark fringe is the physical lock
/// point. For the open port (k = 0) the bracket is the full (0, pi/2].
pub fn solve_operating_point(config: &InterferometerConfig) -> Result<OperatingPoint, ModelError> {
    config.validate()?;
    let k = config.loop_amplitude();
    let delta_peak = k.min(1.0).acos();
    let target = config.target_dark_power_w;

    let delta = if target == 0.0 {
        0.0
    } else {
        let max_power = config.dark_power_at(delta_peak);
        if target > max_power {
            return Err(ModelError::UnreachableDarkPower {
                target_w: target,
                max_w: max_power,
            });
        }
        let (mut lo, mut hi) = (0.0f64, delta_peak);
        let mut iterations = 0;
        while hi - lo > DELTA_TOLERANCE {
            if iterations >= OPERATING_POINT_ITERATIONS {
                return Err(ModelError::NoConvergence {
                    iterations: OPERATING_POINT_ITERATIONS,
                });
            }
            let mid = 0.5 * (lo + hi);
            if config.dark_power_at(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            iterations += 1;
        }
        0.5 * (lo + hi)
    };

    let op = operating_point_at(config, delta);
    let residual = (op.dark_port_power_w - target).abs();
    if target > 0.0 && residual > POWER_RELATIVE_TOLERANCE * target {
        return Err(ModelError::NoConvergence {
            iterations: OPERATING_POINT_ITERATIONS,
        });
    }
    Ok(op)
}

/// Operating point at an explicitly chosen fringe offset (no solving).
pub fn operating_point_at(config: &InterferometerConfig, delta: f64) -> OperatingPoint {
    let (s, c) = delta.sin_cos();
    let root_eta_arm = config.arm_efficiency.sqrt();
    let r2p = c * root_eta_arm * (1.0 - config.round_trip_loss).sqrt();
    let denom = 1.0 - config.r1() * r2p;
    let gain = config.t1_power() / (denom * denom);
    let circulating = config.input_power_w * gain;
    OperatingPoint {
        fringe_offset_rad: delta,
        effective_michelson_reflectivity: c * root_eta_arm,
        recycling_gain: gain,
        circulating_power_w: circulating,
        dark_port_power_w: circulating * s * s * config.arm_efficiency,
    }
}

/// Lumped round-trip loss that brings the recycling gain to `target_gain`
/// for a fixed compound-mirror amplitude `michelson_reflectivity`.
///
/// Inverts G = T1/(1 - r1*r_m*sqrt(1-loss))^2 in closed form. The loss can
/// only lower the gain, so the target must lie between T1 (fully lossy) and
/// the lossless T1/(1 - r1*r_m)^2.
pub fn fit_round_trip_loss(
    power_mirror: &MirrorSpec,
    target_gain: f64,
    michelson_reflectivity: f64,
) -> Result<f64, ModelError> {
    if !(0.0..=1.0).contains(&michelson_reflectivity) || michelson_reflectivity == 0.0 {
        return Err(ModelError::InvalidParameter {
            name: "michelson_reflectivity",
            value: michelson_reflectivity,
            reason: "must lie in (0, 1]",
        });
    }
    if !target_gain.is_finite() || target_gain <= 0.0 {
        return Err(ModelError::InvalidParameter {
            name: "target_gain",
            value: target_gain,
            reason: "must be a positive gain",
        });
    }
    let r1 = power_mirror.amplitude_reflectivity();
    let t1_pow = power_mirror.power_transmissivity();
    let rr = r1 * michelson_reflectivity;
    if rr == 0.0 {
        // No cavity: the gain is T1 regardless of loss.
        return if (target_gain - t1_pow).abs() <= 1e-9 * t1_pow {
            Ok(0.0)
        } else {
            Err(ModelError::GainAboveLosslessMax {
                target: target_gain,
                max: t1_pow,
            })
        };
    }
    let lossless_max = t1_pow / ((1.0 - rr) * (1.0 - rr));
    // Targets computed in floating point may overshoot the boundary by a few
    // ulp; treat them as sitting on it.
    if target_gain > lossless_max * (1.0 + 1e-12) {
        return Err(ModelError::GainAboveLosslessMax {
            target: target_gain,
            max: lossless_max,
        });
    }
    if target_gain < t1_pow * (1.0 - 1e-12) {
        return Err(ModelError::GainBelowMinimum {
            target: target_gain,
            min: t1_pow,
        });
    }
    let s = ((1.0 - (t1_pow / target_gain).sqrt()) / rr).clamp(0.0, 1.0);
    Ok((1.0 - s * s).clamp(0.0, 1.0))
}

/// Lumped round-trip loss that makes the *solved operating point* reach
/// `target_gain` while still leaking the configured dark-port power.
///
/// At the target gain the required offset follows from
/// sin^2(delta) = P_dark/(P_in*G*arm_efficiency); the loss then comes from
/// [`fit_round_trip_loss`] at that offset. Fitting at a guessed reflectivity
/// instead would miss the target once the operating point is re-solved.
pub fn fit_loss_for_target_gain(
    config: &InterferometerConfig,
    target_gain: f64,
) -> Result<f64, ModelError> {
    config.validate()?;
    let mirror = config.power_mirror.ok_or(ModelError::InvalidParameter {
        name: "power_mirror",
        value: 0.0,
        reason: "a recycling mirror is required to fit a gain",
    })?;
    if !target_gain.is_finite() || target_gain <= 0.0 {
        return Err(ModelError::InvalidParameter {
            name: "target_gain",
            value: target_gain,
            reason: "must be a positive gain",
        });
    }
    let sin_sq =
        config.target_dark_power_w / (config.input_power_w * target_gain * config.arm_efficiency);
    if sin_sq >= 1.0 {
        return Err(ModelError::GainNotSelfConsistent {
            target: target_gain,
            reason: "the requested dark-port power exceeds the full fringe at this gain",
        });
    }
    let cos_delta = (1.0 - sin_sq).sqrt();
    let r_m = cos_delta * config.arm_efficiency.sqrt();
    let loss = fit_round_trip_loss(&mirror, target_gain, r_m)?;
    // The solver walks the rising branch (delta <= arccos(k)); a fit landing
    // past the dark-power peak would re-solve to a different gain.
    let k = mirror.amplitude_reflectivity() * (config.arm_efficiency * (1.0 - loss)).sqrt();
    if cos_delta < k {
        return Err(ModelError::GainNotSelfConsistent {
            target: target_gain,
            reason: "operating point would sit past the dark-power peak",
        });
    }
    Ok(loss)
}

/// The recycling cavity implied by a solved configuration, with the
/// compound-mirror reflectivity degraded by the lumped round-trip loss.
/// `None` for the open (simple) port.
pub fn recycling_cavity_spec(
    config: &InterferometerConfig,
    op: &OperatingPoint,
) -> Option<CavitySpec> {
    let mirror = config.power_mirror?;
    let r2p = op.effective_michelson_reflectivity * (1.0 - config.round_trip_loss).sqrt();
    CavitySpec::new(mirror, r2p, config.cavity_length_m).ok()
}

/// Noise input ports of the detection network. Every loss contributes one
/// vacuum port; the arm port carries the root-sum-square of the two internal
/// arm-loss modes (only |T|^2 of a vacuum port enters the budget).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VacuumPort {
    RotatorIn,
    RotatorOut,
    ArmLoss,
    CavityLoss,
    PowerMirrorLoss,
    Homodyne,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumCoupling {
    pub port: VacuumPort,
    pub amplitude: Complex64,
}

/// Amplitude transfer coefficients from every input port to the homodyne
/// readout at one sideband frequency.
///
/// Passive-network completeness: |t_lo|^2 + |t_sqz|^2 + sum|t_vac|^2 = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferSet {
    pub sideband: SidebandFrequency,
    /// Bright-port input beam to readout.
    pub t_lo: Complex64,
    /// Dark-port squeezed input to readout.
    pub t_sqz: Complex64,
    pub t_vac: Vec<VacuumCoupling>,
}

impl TransferSet {
    pub fn vacuum_power_total(&self) -> f64 {
        self.t_vac.iter().map(|v| v.amplitude.norm_sqr()).sum()
    }

    /// |t_lo|^2 + |t_sqz|^2 + sum|t_vac|^2; exactly 1 for the passive network.
    pub fn completeness(&self) -> f64 {
        self.t_lo.norm_sqr() + self.t_sqz.norm_sqr() + self.vacuum_power_total()
    }
}

/// Couplings into the dark-port output field (before the readout chain).
struct DarkPortCouplings {
    /// Dark input reflecting back out (the squeezed path).
    rho_dark: Complex64,
    /// Bright-port input beam, through the power mirror.
    from_bright: Complex64,
    /// Power-mirror loss vacuum.
    from_mirror_loss: Complex64,
    /// Cavity round-trip loss vacuum.
    from_cavity_loss: Complex64,
    /// Two arm-loss vacuum modes.
    from_arm: (Complex64, Complex64),
}

impl DarkPortCouplings {
    /// Row norm of the dark-output port over all network inputs; 1 by
    /// unitarity of the embedding.
    fn completeness(&self) -> f64 {
        self.rho_dark.norm_sqr()
            + self.from_bright.norm_sqr()
            + self.from_mirror_loss.norm_sqr()
            + self.from_cavity_loss.norm_sqr()
            + self.from_arm.0.norm_sqr()
            + self.from_arm.1.norm_sqr()
    }
}

/// Resummed cavity loop: every path from a source into the circulating
/// bright mode and back out the dark port shares the resolvent 1/D,
/// D = 1 - r1*r2'*e^{i*phi}.
fn dark_port_couplings(
    config: &InterferometerConfig,
    op: &OperatingPoint,
    omega: SidebandFrequency,
) -> DarkPortCouplings {
    let fsr = free_spectral_range(config.cavity_length_m).expect("validated length");
    let phi = 2.0 * std::f64::consts::PI * omega.hz / fsr;
    let e = Complex64::from_polar(1.0, phi);
    let p = Complex64::from_polar(1.0, phi / 2.0);
    let i = Complex64::new(0.0, 1.0);

    let r1 = config.r1();
    let t1 = config.t1_power().sqrt();
    let l1 = config.mirror_loss_power().sqrt();
    let eta_a = config.arm_efficiency;
    let sa = eta_a.sqrt();
    let (sin_d, cos_d) = op.fringe_offset_rad.sin_cos();
    let root_pass = (1.0 - config.round_trip_loss).sqrt();
    let root_loss = config.round_trip_loss.sqrt();

    let r2p = sa * cos_d * root_pass;
    let d = Complex64::new(1.0, 0.0) - r1 * r2p * e;
    // One circuit from the bright return into the re-entering bright field:
    // loss, propagation, power-mirror reflection, propagation, resummed.
    let loop_out = e * r1 * root_pass / d;

    DarkPortCouplings {
        rho_dark: sa * cos_d - eta_a * sin_d * sin_d * loop_out,
        from_bright: i * sa * sin_d * p * t1 / d,
        from_mirror_loss: i * sa * sin_d * p * l1 / d,
        from_cavity_loss: i * sa * sin_d * e * r1 * root_loss / d,
        from_arm: (
            i * sin_d * (1.0 - eta_a).sqrt() / d,
            (1.0 - eta_a).sqrt() * (cos_d - sa * sin_d * sin_d * loop_out),
        ),
    }
}

/// Transfer coefficients from all ports to the readout at `omega`.
pub fn transfer_functions(
    config: &InterferometerConfig,
    op: &OperatingPoint,
    omega: SidebandFrequency,
) -> TransferSet {
    let c = dark_port_couplings(config, op, omega);
    debug_assert!(
        (c.completeness() - 1.0).abs() < 1e-9,
        "dark-port row norm {} is not unity",
        c.completeness()
    );
    let eta_pass = config.rotator_single_pass_efficiency();
    let eta_h = homodyne_efficiency(&config.homodyne);
    // Readout chain behind the dark port: rotator pass out, then homodyne.
    let out_chain = (eta_h * eta_pass).sqrt();
    let arm_amp = (c.from_arm.0.norm_sqr() + c.from_arm.1.norm_sqr()).sqrt();

    TransferSet {
        sideband: omega,
        t_lo: out_chain * c.from_bright,
        t_sqz: out_chain * eta_pass.sqrt() * c.rho_dark,
        t_vac: vec![
            VacuumCoupling {
                port: VacuumPort::RotatorIn,
                amplitude: out_chain * (1.0 - eta_pass).sqrt() * c.rho_dark,
            },
            VacuumCoupling {
                port: VacuumPort::RotatorOut,
                amplitude: Complex64::new((eta_h * (1.0 - eta_pass)).sqrt(), 0.0),
            },
            VacuumCoupling {
                port: VacuumPort::ArmLoss,
                amplitude: Complex64::new(out_chain * arm_amp, 0.0),
            },
            VacuumCoupling {
                port: VacuumPort::CavityLoss,
                amplitude: out_chain * c.from_cavity_loss,
            },
            VacuumCoupling {
                port: VacuumPort::PowerMirrorLoss,
                amplitude: out_chain * c.from_mirror_loss,
            },
            VacuumCoupling {
                port: VacuumPort::Homodyne,
                amplitude: Complex64::new((1.0 - eta_h).sqrt(), 0.0),
            },
        ],
    }
}

/// One row of a noise spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    pub frequency_hz: f64,
    /// Detected variance relative to the shot-noise limit (vacuum = 1).
    pub v_pd: f64,
    pub v_pd_db: f64,
    pub t_lo_sq: f64,
    pub t_sqz_sq: f64,
    pub t_vac_sq_total: f64,
}

/// Detected noise budget over a frequency grid:
/// V_pd = |T_lo|^2 V_lo + |T_sqz|^2 V_sqz + sum |T_vac|^2.
///
/// V_sqz and V_lo are the measured-quadrature variances of the squeezed
/// input and the input beam; every loss port contributes vacuum.
pub fn noise_spectrum(
    config: &InterferometerConfig,
    op: &OperatingPoint,
    frequencies_hz: &[f64],
) -> Vec<SpectrumPoint> {
    let v_sqz = config
        .squeeze
        .as_ref()
        .map(|s| make_squeezed(s).measured_variance(0.0))
        .unwrap_or(1.0);
    let v_lo = config.input_beam_variance.measured_variance(0.0);
    frequencies_hz
        .iter()
        .map(|&f| {
            let ts = transfer_functions(config, op, SidebandFrequency::hz(f));
            let t_lo_sq = ts.t_lo.norm_sqr();
            let t_sqz_sq = ts.t_sqz.norm_sqr();
            let t_vac_sq_total = ts.vacuum_power_total();
            let v_pd = t_lo_sq * v_lo + t_sqz_sq * v_sqz + t_vac_sq_total;
            SpectrumPoint {
                frequency_hz: f,
                v_pd,
                v_pd_db: 10.0 * v_pd.log10(),
                t_lo_sq,
                t_sqz_sq,
                t_vac_sq_total,
            }
        })
        .collect()
}

/// Detected power of a differential arm-length calibration signal, in watts
/// of sideband power at the readout.
///
/// A differential phase modulation of depth m rides the circulating field;
/// linearizing the fringe splits it into two sidebands of amplitude
/// (m/2)*cos(delta)*sqrt(P_circ*arm_efficiency)/sqrt(2)... the detected power
/// works out to
///     P_sig = P_circ * (m/2)^2 * |rho(omega)|^2 * eta_rotator_pass * eta_homodyne,
/// where rho is the same dark-port reflection the squeezing sees, so signal
/// and squeezing share the readout chain (the signal passes the rotator
/// once). Proportionality constant (m/2)^2 per that linearization; only
/// ratios between configurations are compared against measurements.
pub fn signal_response(
    config: &InterferometerConfig,
    op: &OperatingPoint,
    signal: SidebandFrequency,
    modulation_depth_rad: f64,
) -> Result<f64, ModelError> {
    if !modulation_depth_rad.is_finite() || modulation_depth_rad < 0.0 {
        return Err(ModelError::InvalidParameter {
            name: "modulation_depth_rad",
            value: modulation_depth_rad,
            reason: "must be >= 0",
        });
    }
    let rho = dark_port_couplings(config, op, signal).rho_dark;
    let half = 0.5 * modulation_depth_rad;
    Ok(op.circulating_power_w
        * half
        * half
        * rho.norm_sqr()
        * config.rotator_single_pass_efficiency()
        * homodyne_efficiency(&config.homodyne))
}

/// Shot-noise-limited minimum detectable phase 1/sqrt(n) for mean photon
/// number n.
pub fn min_detectable_phase(mean_photon_number: f64) -> Result<f64, ModelError> {
    if !mean_photon_number.is_finite() || mean_photon_number <= 0.0 {
        return Err(ModelError::InvalidParameter {
            name: "mean_photon_number",
            value: mean_photon_number,
            reason: "must be a positive count",
        });
    }
    Ok(1.0 / mean_photon_number.sqrt())
}

fn check_geometry(a: &InterferometerConfig, b: &InterferometerConfig) -> Result<(), ModelError> {
    let mismatch = |field| Err(ModelError::GeometryMismatch { field });
    if a.input_power_w != b.input_power_w {
        return mismatch("input_power_w");
    }
    if a.power_mirror != b.power_mirror {
        return mismatch("power_mirror");
    }
    if a.cavity_length_m != b.cavity_length_m {
        return mismatch("cavity_length_m");
    }
    if a.target_dark_power_w != b.target_dark_power_w {
        return mismatch("target_dark_power_w");
    }
    if a.round_trip_loss != b.round_trip_loss {
        return mismatch("round_trip_loss");
    }
    if a.rotator_double_pass_loss != b.rotator_double_pass_loss {
        return mismatch("rotator_double_pass_loss");
    }
    if a.arm_efficiency != b.arm_efficiency {
        return mismatch("arm_efficiency");
    }
    if a.homodyne != b.homodyne {
        return mismatch("homodyne");
    }
    if a.input_beam_variance != b.input_beam_variance {
        return mismatch("input_beam_variance");
    }
    Ok(())
}

/// SNR gain of `with_squeeze` over `reference` at the signal frequency, in
/// dB: -10*log10(V_sqz/V_ref).
///
/// The two configurations must share all geometry and efficiencies and may
/// differ only in the squeezed input; the signal transfer is then identical
/// and the SNR change is purely the noise-floor change.
pub fn snr_improvement(
    with_squeeze: &InterferometerConfig,
    reference: &InterferometerConfig,
    signal: SidebandFrequency,
) -> Result<f64, ModelError> {
    check_geometry(with_squeeze, reference)?;
    let op = solve_operating_point(with_squeeze)?;
    let v_sqz = noise_spectrum(with_squeeze, &op, &[signal.hz])[0].v_pd;
    let v_ref = noise_spectrum(reference, &op, &[signal.hz])[0].v_pd;
    Ok(-10.0 * (v_sqz / v_ref).log10())
}
