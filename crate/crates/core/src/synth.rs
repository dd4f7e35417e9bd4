//! Deterministic NMEA log synthesis from statistical scenario profiles.
//!
//! The generator reproduces a site's *marginal* statistics: per-epoch
//! satellite count and per-satellite C/N0 are drawn independently from the
//! profile's Gaussians. That reproduces the mean of per-epoch C/N0 sums as
//! roughly `sat_count_mu * cn0_mean_mu` but not the exact sum distribution
//! of a real site, where count and signal strength are correlated. Test
//! tolerances are therefore derived from the generator's own law wherever
//! sums are asserted.
//!
//! Determinism: every random draw is addressed by `(seed, epoch, counter)`
//! through [`crate::rng`], so the same config yields byte-identical output,
//! any epoch can be generated without its predecessors, and generation may
//! be parallelized by epoch range.
//!
//! Per epoch, in documented draw order:
//!
//! 1. one uniform word decides whether the epoch is missing
//!    (`missing_epoch_rate`); a missing epoch is a lone no-fix GGA so the
//!    epoch indexing downstream stays dense;
//! 2. a Gaussian for satellite count, rounded and clamped to
//!    `[0, prn_pool.len()]` (a draw of 0 also degenerates to a no-fix GGA);
//! 3. Gaussians for PDOP and HDOP, clamped to `[0, 99.99]`, swapped if
//!    HDOP exceeds PDOP; forced to the 99.99 sentinel when fewer than 4
//!    satellites are emitted;
//! 4. one Gaussian per satellite for C/N0, clamped to `[0, 60]` and
//!    emitted as the conventional 2-digit integer GSV field.
//!
//! PRNs rotate deterministically through the pool; elevations and azimuths
//! are deterministic placeholders spread over the sky (nothing downstream
//! consumes them).

use std::path::Path;

use thiserror::Error;

use crate::epoch::DOP_SENTINEL;
use crate::nmea::frame;
use crate::rng::CounterRng;
use crate::sites;

/// Marginal statistics of one scenario, the generator's whole input.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioProfile {
    pub name: String,
    /// Mean and spread of per-satellite C/N0, dB-Hz.
    pub cn0_mean_mu: f64,
    pub cn0_mean_sigma: f64,
    /// Mean and spread of the per-epoch satellite count.
    pub sat_count_mu: f64,
    pub sat_count_sigma: f64,
    pub pdop_mu: f64,
    pub pdop_sigma: f64,
    pub hdop_mu: f64,
    pub hdop_sigma: f64,
    /// Fraction of epochs emitted with no satellites at all.
    pub missing_epoch_rate: f64,
}

impl ScenarioProfile {
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, sigma) in [
            ("cn0_mean_sigma", self.cn0_mean_sigma),
            ("sat_count_sigma", self.sat_count_sigma),
            ("pdop_sigma", self.pdop_sigma),
            ("hdop_sigma", self.hdop_sigma),
        ] {
            if !(sigma >= 0.0) {
                return Err(ConfigError::NegativeSigma(name, sigma));
            }
        }
        if !(0.0..=1.0).contains(&self.missing_epoch_rate) {
            return Err(ConfigError::BadMissingRate(self.missing_epoch_rate));
        }
        if !(self.sat_count_mu >= 0.0) {
            return Err(ConfigError::NegativeSatCount(self.sat_count_mu));
        }
        Ok(())
    }

    /// Resolve one of the bundled `local_*` presets.
    pub fn builtin(name: &str) -> Option<ScenarioProfile> {
        sites::site_by_name(name).map(|site| site.profile())
    }

    /// Parse a profile file: `key=value` lines, `#` comments ignored.
    ///
    /// Keys: `name`, `cn0_mean_mu`, `cn0_mean_sigma`, `sat_count_mu`,
    /// `sat_count_sigma`, `pdop_mu`, `pdop_sigma`, `hdop_mu`, `hdop_sigma`,
    /// `missing_epoch_rate`. All numeric keys are required.
    pub fn from_config_str(text: &str) -> Result<ScenarioProfile, ConfigError> {
        let mut name = None;
        let mut values = std::collections::HashMap::new();
        for (number, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::BadLine(number as u64 + 1, line.to_string()))?;
            let (key, value) = (key.trim(), value.trim());
            if key == "name" {
                name = Some(value.to_string());
                continue;
            }
            let number_value: f64 = value
                .parse()
                .map_err(|_| ConfigError::BadLine(number as u64 + 1, line.to_string()))?;
            values.insert(key.to_string(), number_value);
        }
        let mut take = |key: &'static str| -> Result<f64, ConfigError> {
            values.remove(key).ok_or(ConfigError::MissingKey(key))
        };
        let profile = ScenarioProfile {
            name: name.unwrap_or_else(|| "unnamed".to_string()),
            cn0_mean_mu: take("cn0_mean_mu")?,
            cn0_mean_sigma: take("cn0_mean_sigma")?,
            sat_count_mu: take("sat_count_mu")?,
            sat_count_sigma: take("sat_count_sigma")?,
            pdop_mu: take("pdop_mu")?,
            pdop_sigma: take("pdop_sigma")?,
            hdop_mu: take("hdop_mu")?,
            hdop_sigma: take("hdop_sigma")?,
            missing_epoch_rate: take("missing_epoch_rate")?,
        };
        if let Some(unknown) = values.keys().next() {
            return Err(ConfigError::UnknownKey(unknown.clone()));
        }
        profile.validate()?;
        Ok(profile)
    }

    pub fn from_config_file(path: &Path) -> Result<ScenarioProfile, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io(path.display().to_string(), e.to_string()))?;
        ScenarioProfile::from_config_str(&text)
    }

    /// Render the profile in its file form.
    pub fn to_config_string(&self) -> String {
        format!(
            "name={}\n\
             cn0_mean_mu={}\n\
             cn0_mean_sigma={}\n\
             sat_count_mu={}\n\
             sat_count_sigma={}\n\
             pdop_mu={}\n\
             pdop_sigma={}\n\
             hdop_mu={}\n\
             hdop_sigma={}\n\
             missing_epoch_rate={:.6}\n",
            self.name,
            self.cn0_mean_mu,
            self.cn0_mean_sigma,
            self.sat_count_mu,
            self.sat_count_sigma,
            self.pdop_mu,
            self.pdop_sigma,
            self.hdop_mu,
            self.hdop_sigma,
            self.missing_epoch_rate,
        )
    }
}

/// Everything a generation run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub profile: ScenarioProfile,
    pub epochs: u64,
    pub seed: u64,
    /// Distinct GPS PRNs (1..=32) the generator may emit.
    pub prn_pool: Vec<u32>,
}

impl GeneratorConfig {
    pub fn new(profile: ScenarioProfile, epochs: u64, seed: u64) -> Self {
        GeneratorConfig {
            profile,
            epochs,
            seed,
            prn_pool: (1..=32).collect(),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.profile.validate()?;
        if self.epochs == 0 {
            return Err(ConfigError::ZeroEpochs);
        }
        if self.prn_pool.is_empty() {
            return Err(ConfigError::EmptyPrnPool);
        }
        if let Some(&bad) = self.prn_pool.iter().find(|&&p| !(1..=32).contains(&p)) {
            return Err(ConfigError::BadPrn(bad));
        }
        let mut seen = [false; 33];
        for &prn in &self.prn_pool {
            if std::mem::replace(&mut seen[prn as usize], true) {
                return Err(ConfigError::BadPrn(prn));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("{0} must be non-negative, got {1}")]
    NegativeSigma(&'static str, f64),
    #[error("missing_epoch_rate must lie in [0, 1], got {0}")]
    BadMissingRate(f64),
    #[error("sat_count_mu must be non-negative, got {0}")]
    NegativeSatCount(f64),
    #[error("profile line {0} is not key=value: '{1}'")]
    BadLine(u64, String),
    #[error("profile is missing key '{0}'")]
    MissingKey(&'static str),
    #[error("unknown profile key '{0}'")]
    UnknownKey(String),
    #[error("epochs must be at least 1")]
    ZeroEpochs,
    #[error("prn_pool must not be empty")]
    EmptyPrnPool,
    #[error("prn_pool entry {0} is not a distinct GPS PRN in 1..=32")]
    BadPrn(u32),
    #[error("cannot read profile file {0}: {1}")]
    Io(String, String),
}

// Fixed surveyed antenna position; nothing downstream consumes it.
const LAT_FIELD: &str = "2333.0300,S";
const LON_FIELD: &str = "04637.9980,W";
const ALT_FIELD: &str = "760.0";

fn time_field(epoch_index: u64) -> String {
    let t = epoch_index % 86_400;
    format!("{:02}{:02}{:02}.00", t / 3600, (t / 60) % 60, t % 60)
}

fn no_fix_gga(epoch_index: u64) -> String {
    frame(&format!("GPGGA,{},,,,,0,00,,,M,,M,,", time_field(epoch_index)))
}

/// Generate the sentences of one epoch. Pure in `(config, epoch_index)`.
pub fn generate_epoch(config: &GeneratorConfig, epoch_index: u64) -> Vec<String> {
    let profile = &config.profile;
    let mut rng = CounterRng::new(config.seed, epoch_index);

    if rng.next_f64() < profile.missing_epoch_rate {
        return vec![no_fix_gga(epoch_index)];
    }

    let pool = &config.prn_pool;
    let drawn = rng
        .next_gaussian(profile.sat_count_mu, profile.sat_count_sigma)
        .round();
    let count = drawn.clamp(0.0, pool.len() as f64) as usize;

    let mut pdop = rng
        .next_gaussian(profile.pdop_mu, profile.pdop_sigma)
        .clamp(0.0, DOP_SENTINEL);
    let mut hdop = rng
        .next_gaussian(profile.hdop_mu, profile.hdop_sigma)
        .clamp(0.0, DOP_SENTINEL);
    if hdop > pdop {
        std::mem::swap(&mut pdop, &mut hdop);
    }

    if count == 0 {
        return vec![no_fix_gga(epoch_index)];
    }
    if count < 4 {
        // No position solution without four satellites; the receiver
        // reports the sentinel geometry.
        pdop = DOP_SENTINEL;
        hdop = DOP_SENTINEL;
    }

    let cn0: Vec<u32> = (0..count)
        .map(|_| {
            rng.next_gaussian(profile.cn0_mean_mu, profile.cn0_mean_sigma)
                .clamp(0.0, 60.0)
                .round() as u32
        })
        .collect();

    let offset = (epoch_index as usize) % pool.len();
    let prns: Vec<u32> = (0..count).map(|i| pool[(offset + i) % pool.len()]).collect();

    let mut sentences = Vec::with_capacity(2 + count.div_ceil(4));
    let time = time_field(epoch_index);
    let used = count.min(12);

    if count >= 4 {
        sentences.push(frame(&format!(
            "GPGGA,{time},{LAT_FIELD},{LON_FIELD},1,{used:02},{hdop:.2},{ALT_FIELD},M,,M,,"
        )));
    } else {
        sentences.push(no_fix_gga(epoch_index));
    }

    let mut prn_slots = String::new();
    for slot in 0..12 {
        prn_slots.push(',');
        if slot < used {
            prn_slots.push_str(&format!("{:02}", prns[slot]));
        }
    }
    let fix_mode = if count >= 4 { 3 } else { 1 };
    let vdop = if count >= 4 {
        (pdop * pdop - hdop * hdop).max(0.0).sqrt()
    } else {
        DOP_SENTINEL
    };
    sentences.push(frame(&format!(
        "GPGSA,A,{fix_mode}{prn_slots},{pdop:.2},{hdop:.2},{vdop:.2}"
    )));

    let total_parts = count.div_ceil(4);
    for (part_index, chunk) in (0..count).collect::<Vec<_>>().chunks(4).enumerate() {
        let mut payload = format!(
            "GPGSV,{},{},{:02}",
            total_parts,
            part_index + 1,
            count
        );
        for &i in chunk {
            // Elevations and azimuths are deterministic placeholders
            // spread over the sky.
            let elevation = 15 + (60 * i) / count;
            let azimuth = (360 * i) / count;
            payload.push_str(&format!(
                ",{:02},{:02},{:03},{:02}",
                prns[i], elevation, azimuth, cn0[i]
            ));
        }
        sentences.push(frame(&payload));
    }
    sentences
}

/// Generate a whole log document with CRLF line endings.
///
/// Byte-identical for identical `(config, seed)`; every sentence passes
/// strict parsing.
pub fn generate_log(config: &GeneratorConfig) -> Result<String, ConfigError> {
    config.validate()?;
    let mut out = String::new();
    for epoch_index in 0..config.epochs {
        for sentence in generate_epoch(config, epoch_index) {
            out.push_str(&sentence);
            out.push_str("\r\n");
        }
    }
    Ok(out)
}
