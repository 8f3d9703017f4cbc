//! Frequency-domain quantum-noise budget for a power-recycled Michelson
//! interferometer with squeezed vacuum injected at the dark port.
//!
//! The model answers one question: with a given squeezed state driven into
//! the antisymmetric port through a lossy rotator, what noise floor does the
//! homodyne detector behind the dark port see as a function of sideband
//! frequency, and how does that floor compare with the shot-noise limit and
//! with a measured spectrum?
//!
//! Structure of the model, bottom up:
//!
//! - [`quadrature`]: Gaussian quadrature states as 2x2 covariance data,
//!   squeezing in dB, beamsplitter loss, homodyne projection.
//! - [`optics`]: mirrors, the two-mirror cavity response over sideband
//!   frequency, and the Michelson folded into a two-port compound mirror.
//! - [`interferometer`]: the assembled instrument. Solves the offset lock
//!   point, fits the lumped cavity loss to a measured recycling gain, and
//!   resums the cavity loop into amplitude transfer coefficients from every
//!   input (squeezed port, input beam, each loss vacuum) to the readout.
//! - [`detection`]: homodyne efficiency, dBm bookkeeping, and synthesis of
//!   analyzer-style traces with electronic noise and a calibration tone.
//!
//! All spectra are single-sided in sideband frequency and quoted relative to
//! the shot-noise limit (vacuum = 1, i.e. 0 dB); traces convert to absolute
//! dBm only at the very end through a measured shot-noise anchor.
//!
//! The load-bearing invariant everywhere is passivity: at every frequency
//! the squared transfer magnitudes from all ports sum to exactly one, so a
//! configuration with vacuum at every input detects exactly vacuum. Tests
//! lean on that identity rather than on tabulated spectra.

pub mod detection;
pub mod error;
pub mod interferometer;
pub mod optics;
pub mod quadrature;

pub use detection::{
    add_powers_dbm, homodyne_efficiency, subtract_electronic_noise, synthesize_trace, HomodyneSpec,
    SpectrumTrace,
};
pub use error::ModelError;
pub use interferometer::{
    fit_loss_for_target_gain, fit_round_trip_loss, min_detectable_phase, noise_spectrum,
    operating_point_at, recycling_cavity_spec, signal_response, snr_improvement,
    solve_operating_point, transfer_functions, InterferometerConfig, OperatingPoint, SpectrumPoint,
    TransferSet, VacuumCoupling, VacuumPort,
};
pub use optics::{
    cavity_buildup, cavity_linewidth_fwhm, cavity_reflection, cavity_transmission,
    free_spectral_range, michelson_two_port, propagation_phase, CavitySpec, MirrorSpec,
    SidebandFrequency, TwoPortScattering, SPEED_OF_LIGHT,
};
pub use quadrature::{
    db_to_linear, linear_to_db, make_squeezed, measured_variance, source_suppression_for_measured,
    NoiseVarianceDb, QuadratureCovariance, SqueezeSpec,
};
