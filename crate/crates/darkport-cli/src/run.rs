//! Command implementations. Each returns the finished output as a string so
//! the binary stays a thin argument-and-exit-code shell and tests can call
//! straight through.
//!
//! Spectra and traces are CSV; the lock-point and SNR summaries are plain
//! `key: value` text. All numeric output is deterministic: same scenario,
//! same bytes.

use std::fmt::Write as _;

use darkport::{
    cavity_linewidth_fwhm, free_spectral_range, noise_spectrum, recycling_cavity_spec,
    signal_response, solve_operating_point, synthesize_trace, InterferometerConfig, OperatingPoint,
    SidebandFrequency,
};

use crate::scenario::{CliError, ScenarioFile, Variant};

/// Log-spaced grid with exact endpoints.
fn log_space(start_hz: f64, stop_hz: f64, points: usize) -> Vec<f64> {
    let n = points.max(2);
    let ratio = stop_hz / start_hz;
    let mut grid: Vec<f64> = (0..n)
        .map(|i| start_hz * ratio.powf(i as f64 / (n - 1) as f64))
        .collect();
    grid[0] = start_hz;
    grid[n - 1] = stop_hz;
    grid
}

/// Sideband grid for a scenario: the explicit range when given, otherwise
/// two decades below the recycled cavity's half linewidth up to two decades
/// above it, clamped to the single-sided FSR/2 span.
///
/// The default is derived from the recycled variant even when the simple
/// one is being evaluated, so the two variants of one scenario always land
/// on identical grids and their spectra compare row by row.
pub fn frequency_axis(file: &ScenarioFile) -> Result<Vec<f64>, CliError> {
    if let (Some(start), Some(stop)) = (file.freq_start_hz, file.freq_stop_hz) {
        return Ok(log_space(start, stop, file.freq_points));
    }
    let cfg = file.config(Variant::Prm, false)?;
    let op = solve_operating_point(&cfg)?;
    let cavity = recycling_cavity_spec(&cfg, &op).ok_or_else(|| {
        CliError::Scenario(
            "cannot derive a default frequency range without a power mirror; \
             set freq_start_hz and freq_stop_hz"
                .into(),
        )
    })?;
    let half_width = cavity_linewidth_fwhm(&cavity)? / 2.0;
    let fsr = free_spectral_range(file.cavity_length_m)?;
    let start = 0.01 * half_width;
    let stop = (100.0 * half_width).min(0.5 * fsr);
    Ok(log_space(start, stop, file.freq_points))
}

fn solved(cfg: &InterferometerConfig) -> Result<OperatingPoint, CliError> {
    Ok(solve_operating_point(cfg)?)
}

/// Noise budget CSV relative to shot noise.
pub fn run_spectrum(
    file: &ScenarioFile,
    variant: Variant,
    squeezed: bool,
) -> Result<String, CliError> {
    let cfg = file.config(variant, squeezed)?;
    let op = solved(&cfg)?;
    let grid = frequency_axis(file)?;
    let mut out =
        String::from("frequency_hz,v_pd_linear,v_pd_db,t_lo_sq,t_sqz_sq,t_vac_sq_total\n");
    for p in noise_spectrum(&cfg, &op, &grid) {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            p.frequency_hz, p.v_pd, p.v_pd_db, p.t_lo_sq, p.t_sqz_sq, p.t_vac_sq_total
        )
        .expect("writing to a string cannot fail");
    }
    Ok(out)
}

/// Solved lock point and the cavity figures that follow from it.
pub fn run_operating_point(
    file: &ScenarioFile,
    variant: Variant,
    squeezed: bool,
) -> Result<String, CliError> {
    let cfg = file.config(variant, squeezed)?;
    let op = solved(&cfg)?;
    let mut out = String::new();
    writeln!(out, "scenario: {}", file.name).unwrap();
    writeln!(out, "variant: {variant}").unwrap();
    writeln!(out, "squeezed: {}", if squeezed { "on" } else { "off" }).unwrap();
    if variant == Variant::Prm {
        let fitted = file.round_trip_loss.is_none() && file.target_recycling_gain.is_some();
        writeln!(
            out,
            "round_trip_loss: {:.9}{}",
            cfg.round_trip_loss,
            if fitted { " (fitted)" } else { "" }
        )
        .unwrap();
    }
    writeln!(out, "fringe_offset_rad: {:.9}", op.fringe_offset_rad).unwrap();
    writeln!(
        out,
        "fringe_offset_deg: {:.6}",
        op.fringe_offset_rad.to_degrees()
    )
    .unwrap();
    writeln!(
        out,
        "effective_michelson_reflectivity: {:.9}",
        op.effective_michelson_reflectivity
    )
    .unwrap();
    writeln!(out, "recycling_gain: {:.6}", op.recycling_gain).unwrap();
    writeln!(
        out,
        "circulating_power_mw: {:.6}",
        op.circulating_power_w * 1e3
    )
    .unwrap();
    writeln!(out, "dark_port_power_mw: {:.6}", op.dark_port_power_w * 1e3).unwrap();
    let fsr = free_spectral_range(cfg.cavity_length_m)?;
    writeln!(out, "free_spectral_range_mhz: {:.6}", fsr * 1e-6).unwrap();
    if let Some(cavity) = recycling_cavity_spec(&cfg, &op) {
        let fwhm = cavity_linewidth_fwhm(&cavity)?;
        writeln!(out, "cavity_linewidth_fwhm_mhz: {:.6}", fwhm * 1e-6).unwrap();
    }
    Ok(out)
}

/// Squeezing benefit at the calibration frequency: noise floors with the
/// source on and off, and the recycling signal advantage over the simple
/// variant.
pub fn run_snr(file: &ScenarioFile, variant: Variant) -> Result<String, CliError> {
    let cfg_on = file.config(variant, true)?;
    let cfg_off = file.config(variant, false)?;
    let op = solved(&cfg_on)?;
    let f = file.signal_frequency_hz;
    let floor_on = noise_spectrum(&cfg_on, &op, &[f])[0].v_pd_db;
    let floor_off = noise_spectrum(&cfg_off, &op, &[f])[0].v_pd_db;

    let mut out = String::new();
    writeln!(out, "scenario: {}", file.name).unwrap();
    writeln!(out, "variant: {variant}").unwrap();
    writeln!(out, "signal_frequency_mhz: {:.6}", f * 1e-6).unwrap();
    writeln!(out, "noise_floor_squeezed_db: {floor_on:.6}").unwrap();
    writeln!(out, "noise_floor_unsqueezed_db: {floor_off:.6}").unwrap();
    writeln!(out, "snr_improvement_db: {:.6}", floor_off - floor_on).unwrap();
    if variant == Variant::Prm {
        let ratio_db = 10.0 * signal_ratio_to_simple(file, variant)?.log10();
        writeln!(out, "signal_vs_simple_db: {ratio_db:.6}").unwrap();
    }
    Ok(out)
}

/// Detected calibration-tone power of `variant` relative to the simple
/// variant at the scenario's signal frequency.
fn signal_ratio_to_simple(file: &ScenarioFile, variant: Variant) -> Result<f64, CliError> {
    let sig = SidebandFrequency::hz(file.signal_frequency_hz);
    let m = file.signal_modulation_rad;
    let cfg = file.config(variant, false)?;
    let resp = signal_response(&cfg, &solved(&cfg)?, sig, m)?;
    let simple = file.config(Variant::Simple, false)?;
    let resp_simple = signal_response(&simple, &solved(&simple)?, sig, m)?;
    Ok(resp / resp_simple)
}

/// Analyzer-style absolute trace: the modeled floor anchored to the
/// measured shot-noise level, electronic noise power-added, and the
/// calibration tone placed in its nearest bin at the level implied by the
/// simple-variant reference measurement.
pub fn run_trace(
    file: &ScenarioFile,
    variant: Variant,
    squeezed: bool,
) -> Result<String, CliError> {
    let cfg = file.config(variant, squeezed)?;
    let op = solved(&cfg)?;
    let grid = frequency_axis(file)?;
    let v_db: Vec<f64> = noise_spectrum(&cfg, &op, &grid)
        .iter()
        .map(|p| p.v_pd_db)
        .collect();
    let tone_dbm = file.signal_ref_dbm + 10.0 * signal_ratio_to_simple(file, variant)?.log10();
    let trace = synthesize_trace(
        &grid,
        &v_db,
        file.snl_dbm,
        file.electronic_noise_dbm.unwrap_or(f64::NEG_INFINITY),
        Some((file.signal_frequency_hz, tone_dbm)),
        file.rbw_hz,
        file.vbw_hz,
    )?;
    let mut out = String::from("frequency_hz,level_dbm\n");
    for (f, level) in trace.frequencies_hz.iter().zip(&trace.levels_dbm) {
        writeln!(out, "{f},{level}").expect("writing to a string cannot fail");
    }
    Ok(out)
}
