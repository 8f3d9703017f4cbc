//! Scenario files: one flat TOML table describing a bench, resolved into
//! the library's configuration types.
//!
//! Keys carry their units in the name (`input_power_mw`, `cavity_length_m`)
//! so a file never needs a comment to be unambiguous. Two presets ship
//! embedded in the binary: `bench` (tabletop, recycling gain 4) and `aligo`
//! (km-scale parameters, representative rather than a fit to any particular
//! instrument).
//!
//! The cavity round-trip loss can be given directly (`round_trip_loss`) or
//! left to be fitted from a measured recycling gain
//! (`target_recycling_gain`); exactly one of the two may appear.

use std::fmt;
use std::path::Path;

use darkport::{
    fit_loss_for_target_gain, homodyne_efficiency, source_suppression_for_measured, HomodyneSpec,
    InterferometerConfig, MirrorSpec, ModelError, NoiseVarianceDb, QuadratureCovariance,
    SqueezeSpec,
};
use serde::Deserialize;

pub const BENCH_PRESET: &str = include_str!("../scenarios/bench.toml");
pub const ALIGO_PRESET: &str = include_str!("../scenarios/aligo.toml");

/// Interferometer variant selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Variant {
    /// Plain Michelson, recycling port open.
    Simple,
    /// Power-recycled Michelson.
    Prm,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Simple => "simple",
            Variant::Prm => "prm",
        })
    }
}

/// Where the quoted squeezing level was referenced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SqueezeReference {
    /// At the squeezer output, before any loss.
    Source,
    /// On a direct homodyne of the source with this scenario's detector;
    /// the at-source level is recovered by inverting the detection loss.
    Measured,
}

fn default_arm_efficiency() -> f64 {
    1.0
}
fn default_freq_points() -> usize {
    200
}
fn default_squeeze_reference() -> SqueezeReference {
    SqueezeReference::Source
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    pub input_power_mw: f64,
    pub dark_port_power_mw: f64,
    pub cavity_length_m: f64,
    pub power_mirror_reflectivity: Option<f64>,
    #[serde(default)]
    pub power_mirror_loss: f64,
    pub round_trip_loss: Option<f64>,
    pub target_recycling_gain: Option<f64>,
    #[serde(default)]
    pub rotator_double_pass_loss: f64,
    #[serde(default = "default_arm_efficiency")]
    pub arm_efficiency: f64,
    pub squeezing_db: f64,
    #[serde(default)]
    pub squeeze_angle_rad: f64,
    #[serde(default = "default_squeeze_reference")]
    pub squeeze_reference: SqueezeReference,
    /// Input-beam noise above shot, in dB (0 = shot-noise-limited laser).
    #[serde(default)]
    pub input_noise_db: f64,
    pub homodyne_qe: f64,
    pub fringe_visibility: f64,
    #[serde(default = "default_freq_points")]
    pub freq_points: usize,
    pub freq_start_hz: Option<f64>,
    pub freq_stop_hz: Option<f64>,
    pub signal_frequency_hz: f64,
    pub signal_modulation_rad: f64,
    /// Measured level of the calibration tone with the simple variant, dBm.
    pub signal_ref_dbm: f64,
    /// Measured shot-noise level on the analyzer, dBm.
    pub snl_dbm: f64,
    pub electronic_noise_dbm: Option<f64>,
    pub rbw_hz: f64,
    pub vbw_hz: f64,
}

/// Errors from the command-line layer: scenario problems map to exit code 1,
/// model errors keep their own split (solver failures exit 2).
#[derive(Debug)]
pub enum CliError {
    Model(ModelError),
    Scenario(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Model(e) => write!(f, "{e}"),
            CliError::Scenario(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Model(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(e) if e.is_solver_failure() => 2,
            _ => 1,
        }
    }
}

/// Loads a scenario from a preset name (`bench`, `aligo`) or a TOML path.
pub fn load_scenario(spec: &str) -> Result<ScenarioFile, CliError> {
    let text = match spec {
        "bench" => BENCH_PRESET.to_string(),
        "aligo" => ALIGO_PRESET.to_string(),
        path => std::fs::read_to_string(Path::new(path)).map_err(|e| {
            CliError::Scenario(format!(
                "cannot read scenario '{path}' (not a preset name and not a readable file): {e}"
            ))
        })?,
    };
    parse_scenario(&text)
}

pub fn parse_scenario(text: &str) -> Result<ScenarioFile, CliError> {
    let file: ScenarioFile = toml::from_str(text)
        .map_err(|e| CliError::Scenario(format!("scenario parse error: {e}")))?;
    file.check()?;
    Ok(file)
}

impl ScenarioFile {
    /// Structural checks that do not need the model: key combinations and
    /// signs. Physical ranges are enforced by the configuration itself.
    fn check(&self) -> Result<(), CliError> {
        if self.round_trip_loss.is_some() && self.target_recycling_gain.is_some() {
            return Err(CliError::Scenario(
                "give either round_trip_loss or target_recycling_gain, not both".into(),
            ));
        }
        if self.target_recycling_gain.is_some() && self.power_mirror_reflectivity.is_none() {
            return Err(CliError::Scenario(
                "target_recycling_gain needs power_mirror_reflectivity".into(),
            ));
        }
        if self.freq_start_hz.is_some() != self.freq_stop_hz.is_some() {
            return Err(CliError::Scenario(
                "freq_start_hz and freq_stop_hz must be given together".into(),
            ));
        }
        if let (Some(a), Some(b)) = (self.freq_start_hz, self.freq_stop_hz) {
            if !(a > 0.0 && b > a) {
                return Err(CliError::Scenario(
                    "need 0 < freq_start_hz < freq_stop_hz".into(),
                ));
            }
        }
        if self.freq_points < 2 {
            return Err(CliError::Scenario("freq_points must be at least 2".into()));
        }
        Ok(())
    }

    fn homodyne(&self) -> Result<HomodyneSpec, CliError> {
        // The local oscillator is the input beam; excess input noise shows
        // up on both.
        Ok(HomodyneSpec::new(
            self.homodyne_qe,
            self.fringe_visibility,
            self.input_beam_variance()?,
        )?)
    }

    fn input_beam_variance(&self) -> Result<QuadratureCovariance, CliError> {
        let v = darkport::db_to_linear(NoiseVarianceDb(self.input_noise_db));
        Ok(QuadratureCovariance::new(v, v, 0.0)?)
    }

    /// At-source squeeze description, converting a measured reference by
    /// inverting the detection chain it was measured through.
    fn squeeze(&self) -> Result<SqueezeSpec, CliError> {
        let suppression_db = match self.squeeze_reference {
            SqueezeReference::Source => self.squeezing_db,
            SqueezeReference::Measured => {
                let eta = homodyne_efficiency(&self.homodyne()?);
                source_suppression_for_measured(self.squeezing_db, eta)?
            }
        };
        Ok(SqueezeSpec::new(suppression_db, self.squeeze_angle_rad)?)
    }

    /// The cavity round-trip loss for the recycled variant: given, fitted
    /// from the target gain, or zero.
    pub fn resolved_round_trip_loss(&self) -> Result<f64, CliError> {
        if let Some(loss) = self.round_trip_loss {
            return Ok(loss);
        }
        let Some(gain) = self.target_recycling_gain else {
            return Ok(0.0);
        };
        let mut cfg = self.build_config(Variant::Prm, false, 0.0)?;
        cfg.round_trip_loss = 0.0;
        Ok(fit_loss_for_target_gain(&cfg, gain)?)
    }

    /// Full model configuration for one variant. The simple variant opens
    /// the recycling port and drops the cavity loss with it.
    pub fn config(
        &self,
        variant: Variant,
        squeezed: bool,
    ) -> Result<InterferometerConfig, CliError> {
        let loss = match variant {
            Variant::Prm => self.resolved_round_trip_loss()?,
            Variant::Simple => 0.0,
        };
        self.build_config(variant, squeezed, loss)
    }

    fn build_config(
        &self,
        variant: Variant,
        squeezed: bool,
        round_trip_loss: f64,
    ) -> Result<InterferometerConfig, CliError> {
        let power_mirror = match variant {
            Variant::Simple => None,
            Variant::Prm => {
                let r = self.power_mirror_reflectivity.ok_or_else(|| {
                    CliError::Scenario(
                        "power_mirror_reflectivity is required for the prm variant".into(),
                    )
                })?;
                Some(MirrorSpec::new(r, self.power_mirror_loss)?)
            }
        };
        let cfg = InterferometerConfig {
            input_power_w: self.input_power_mw * 1e-3,
            power_mirror,
            cavity_length_m: self.cavity_length_m,
            target_dark_power_w: self.dark_port_power_mw * 1e-3,
            round_trip_loss,
            rotator_double_pass_loss: self.rotator_double_pass_loss,
            arm_efficiency: self.arm_efficiency,
            homodyne: self.homodyne()?,
            squeeze: if squeezed {
                Some(self.squeeze()?)
            } else {
                None
            },
            input_beam_variance: self.input_beam_variance()?,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
