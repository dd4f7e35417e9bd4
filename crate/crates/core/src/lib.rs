//! Indoor/outdoor scenario detection from NMEA 0183 receiver output.
//!
//! GNSS receivers degrade in characteristic ways as sky visibility drops:
//! fewer satellites, weaker carrier-to-noise density (C/N0), worse solution
//! geometry (DOP). This crate turns a raw NMEA 0183 log into a per-epoch
//! feature vector and classifies each epoch into one of four conventional
//! scenario types (open outdoor, obstructed outdoor, indoor near openings,
//! indoor) with simple threshold rule sets.
//!
//! The pipeline, module by module:
//!
//! * [`nmea`] parses GGA/GSA/GSV sentences with checksum verification and
//!   multi-part GSV assembly.
//! * [`epoch`] groups sentences into 1 Hz epochs and computes the feature
//!   vector: sum and mean of C/N0, PDOP, HDOP, satellite count.
//! * [`classify`] applies the threshold rules, either on the C/N0 sum alone
//!   or on the combined metrics.
//! * [`validate`] scores classifier output against ground-truth labels.
//! * [`synth`] deterministically generates NMEA logs matching a statistical
//!   scenario profile, for desk-scale validation without field data.
//! * [`link_budget`] holds the C/N0 and SNR power formulas and an L-band
//!   material attenuation table.
//! * [`sites`] bundles reference statistics for 40 surveyed sites, used as
//!   generator presets and classifier fixtures.

pub mod classify;
pub mod epoch;
pub mod link_budget;
pub mod nmea;
pub mod rng;
pub mod sites;
pub mod synth;
pub mod validate;

pub use classify::{RuleMode, RuleSet, Scenario, Thresholds};
pub use epoch::{EpochFolder, EpochMetrics, EpochRecord, SummaryStat, DOP_SENTINEL};
pub use nmea::{
    Diagnostic, DopValues, FixData, ParseError, ParsePolicy, SatelliteObservation, Sentence,
};
pub use synth::{GeneratorConfig, ScenarioProfile};
pub use validate::{LabelInterval, ValidationReport};
