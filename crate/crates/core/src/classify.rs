//! Threshold classification of epoch metrics into scenario types.
//!
//! Two rule sets are provided. The sum-only rules partition the C/N0 sum
//! axis into four bands and always produce a label. The combined rules add
//! mean, DOP and satellite-count clauses; they are stricter and refuse with
//! [`Scenario::Indeterminate`] when no rule fires. All interval bounds are
//! lower-inclusive and upper-exclusive.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::epoch::EpochMetrics;

/// The four conventional scenario types plus the combined rules' refusal
/// label. Only the combined rule set can produce `Indeterminate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// No zenith blockage and no relevant horizon blockage.
    OpenOutdoor,
    /// Open zenith but relevant blockage over the observation horizon.
    ObstructedOutdoor,
    /// Blocked zenith with possible line of sight through openings.
    IndoorNearOpening,
    /// Blocked zenith, no line of sight to any satellite.
    Indoor,
    /// No combined rule fired.
    Indeterminate,
}

impl Scenario {
    pub const ALL: [Scenario; 5] = [
        Scenario::OpenOutdoor,
        Scenario::ObstructedOutdoor,
        Scenario::IndoorNearOpening,
        Scenario::Indoor,
        Scenario::Indeterminate,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Scenario::OpenOutdoor => "open_outdoor",
            Scenario::ObstructedOutdoor => "obstructed_outdoor",
            Scenario::IndoorNearOpening => "indoor_near_opening",
            Scenario::Indoor => "indoor",
            Scenario::Indeterminate => "indeterminate",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scenario {
    type Err = UnknownScenario;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scenario::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| UnknownScenario(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown scenario label '{0}'")]
pub struct UnknownScenario(pub String);

/// Which rule set to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RuleMode {
    #[default]
    SumOnly,
    Combined,
}

/// Classification thresholds; the defaults are the published rule values.
///
/// Sum boundaries split the C/N0-sum axis at 100/200/350 dB-Hz, mean
/// boundaries sit at 20/25/30 dB-Hz, geometry is acceptable at DOP <= 7,
/// and fewer than 4 satellites cannot produce a position at all.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// C/N0 sum at or above this is open outdoor, dB-Hz.
    pub sum_open: f64,
    /// C/N0 sum at or above this (below `sum_open`) is obstructed outdoor.
    pub sum_obstructed: f64,
    /// C/N0 sum at or above this (below `sum_obstructed`) is indoor near
    /// an opening; anything below is indoor.
    pub sum_near_opening: f64,
    /// Minimum C/N0 mean for the combined open-outdoor rule, dB-Hz.
    pub mean_open: f64,
    /// Lower mean bound of the combined obstructed-outdoor rule, dB-Hz.
    pub mean_obstructed: f64,
    /// Mean below this supports the combined indoor rule, dB-Hz.
    pub mean_indoor: f64,
    /// PDOP and HDOP at or below this count as good geometry.
    pub dop_max: f64,
    /// Fewer satellites than this is indoor regardless of other metrics.
    pub min_sats: u32,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            sum_open: 350.0,
            sum_obstructed: 200.0,
            sum_near_opening: 100.0,
            mean_open: 30.0,
            mean_obstructed: 20.0,
            mean_indoor: 25.0,
            dop_max: 7.0,
            min_sats: 4,
        }
    }
}

impl Thresholds {
    /// Overrides must preserve the band ordering or the intervals stop
    /// partitioning the axis.
    pub fn validate(&self) -> Result<(), RuleSetError> {
        let ordered_sums = 0.0 <= self.sum_near_opening
            && self.sum_near_opening < self.sum_obstructed
            && self.sum_obstructed < self.sum_open;
        let ordered_means = 0.0 <= self.mean_obstructed
            && self.mean_obstructed < self.mean_indoor
            && self.mean_indoor < self.mean_open;
        if !ordered_sums {
            return Err(RuleSetError::BadOrdering(format!(
                "sum thresholds must satisfy 0 <= {} < {} < {}",
                self.sum_near_opening, self.sum_obstructed, self.sum_open
            )));
        }
        if !ordered_means {
            return Err(RuleSetError::BadOrdering(format!(
                "mean thresholds must satisfy 0 <= {} < {} < {}",
                self.mean_obstructed, self.mean_indoor, self.mean_open
            )));
        }
        if !(self.dop_max > 0.0) {
            return Err(RuleSetError::BadOrdering(format!(
                "dop_max must be positive, got {}",
                self.dop_max
            )));
        }
        Ok(())
    }
}

/// Mode plus thresholds, loadable from a flat key=value file.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RuleSet {
    pub mode: RuleMode,
    pub thresholds: Thresholds,
}

impl RuleSet {
    pub fn sum_only() -> Self {
        RuleSet {
            mode: RuleMode::SumOnly,
            thresholds: Thresholds::default(),
        }
    }

    pub fn combined() -> Self {
        RuleSet {
            mode: RuleMode::Combined,
            thresholds: Thresholds::default(),
        }
    }

    pub fn classify(&self, metrics: &EpochMetrics) -> Scenario {
        match self.mode {
            RuleMode::SumOnly => classify_sum_only(metrics, self),
            RuleMode::Combined => classify_combined(metrics, self),
        }
    }

    /// Parse a rules file: one `key=value` per line, `#` comments and blank
    /// lines ignored. Keys: `sum_open`, `sum_obstructed`, `sum_near_opening`,
    /// `mean_open`, `mean_obstructed`, `mean_indoor`, `dop_max`, `min_sats`,
    /// and optional `mode` (`sum` or `combined`). Unset keys keep their
    /// defaults; the result must pass [`Thresholds::validate`].
    pub fn from_config_str(text: &str) -> Result<RuleSet, RuleSetError> {
        let mut rules = RuleSet::default();
        for (number, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                RuleSetError::BadLine(number as u64 + 1, format!("no '=' in '{line}'"))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let float = || -> Result<f64, RuleSetError> {
                value.parse().map_err(|_| {
                    RuleSetError::BadLine(
                        number as u64 + 1,
                        format!("value '{value}' for '{key}' is not a number"),
                    )
                })
            };
            match key {
                "sum_open" => rules.thresholds.sum_open = float()?,
                "sum_obstructed" => rules.thresholds.sum_obstructed = float()?,
                "sum_near_opening" => rules.thresholds.sum_near_opening = float()?,
                "mean_open" => rules.thresholds.mean_open = float()?,
                "mean_obstructed" => rules.thresholds.mean_obstructed = float()?,
                "mean_indoor" => rules.thresholds.mean_indoor = float()?,
                "dop_max" => rules.thresholds.dop_max = float()?,
                "min_sats" => {
                    rules.thresholds.min_sats = value.parse().map_err(|_| {
                        RuleSetError::BadLine(
                            number as u64 + 1,
                            format!("value '{value}' for min_sats is not an integer"),
                        )
                    })?
                }
                "mode" => {
                    rules.mode = match value {
                        "sum" | "sum_only" => RuleMode::SumOnly,
                        "combined" => RuleMode::Combined,
                        other => {
                            return Err(RuleSetError::BadLine(
                                number as u64 + 1,
                                format!("unknown mode '{other}'"),
                            ))
                        }
                    }
                }
                other => {
                    return Err(RuleSetError::UnknownKey(other.to_string()));
                }
            }
        }
        rules.thresholds.validate()?;
        Ok(rules)
    }

    pub fn from_config_file(path: &Path) -> Result<RuleSet, RuleSetError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RuleSetError::Io(path.display().to_string(), e.to_string()))?;
        RuleSet::from_config_str(&text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleSetError {
    #[error("threshold ordering violated: {0}")]
    BadOrdering(String),
    #[error("rules file line {0}: {1}")]
    BadLine(u64, String),
    #[error("unknown rules key '{0}'")]
    UnknownKey(String),
    #[error("cannot read rules file {0}: {1}")]
    Io(String, String),
    #[error("smoothing window must be an odd integer >= 1, got {0}")]
    BadWindow(usize),
}

/// Classify by the C/N0 sum alone. Total over every non-negative sum:
/// one band always matches.
pub fn classify_sum_only(metrics: &EpochMetrics, rules: &RuleSet) -> Scenario {
    let t = &rules.thresholds;
    let sum = metrics.cn0_sum;
    if sum >= t.sum_open {
        Scenario::OpenOutdoor
    } else if sum >= t.sum_obstructed {
        Scenario::ObstructedOutdoor
    } else if sum >= t.sum_near_opening {
        Scenario::IndoorNearOpening
    } else {
        Scenario::Indoor
    }
}

/// Classify by the combined metrics.
///
/// Rules are evaluated in a fixed precedence order, so at most one fires:
///
/// 1. indoor: (sum < 100 and mean < 25) or fewer than 4 satellites;
/// 2. open outdoor: sum >= 350, mean >= 30, PDOP and HDOP both <= 7;
/// 3. obstructed outdoor: 200 <= sum < 350 and 20 <= mean < 30;
/// 4. indoor near opening: 100 <= sum < 200 and PDOP and HDOP both > 7;
/// 5. otherwise indeterminate.
///
/// The indoor rule comes first so the satellite-count clause dominates
/// where clauses overlap. An absent mean (zero satellites) reaches indoor
/// through the satellite-count clause.
pub fn classify_combined(metrics: &EpochMetrics, rules: &RuleSet) -> Scenario {
    let t = &rules.thresholds;
    let sum = metrics.cn0_sum;
    let mean = metrics.cn0_mean;
    let mean_below = |bound: f64| mean.map(|m| m < bound).unwrap_or(false);
    let mean_at_least = |bound: f64| mean.map(|m| m >= bound).unwrap_or(false);

    if (sum < t.sum_near_opening && mean_below(t.mean_indoor))
        || metrics.satellite_count < t.min_sats
    {
        Scenario::Indoor
    } else if sum >= t.sum_open
        && mean_at_least(t.mean_open)
        && metrics.pdop <= t.dop_max
        && metrics.hdop <= t.dop_max
    {
        Scenario::OpenOutdoor
    } else if (t.sum_obstructed..t.sum_open).contains(&sum)
        && mean_at_least(t.mean_obstructed)
        && mean_below(t.mean_open)
    {
        Scenario::ObstructedOutdoor
    } else if (t.sum_near_opening..t.sum_obstructed).contains(&sum)
        && metrics.pdop > t.dop_max
        && metrics.hdop > t.dop_max
    {
        Scenario::IndoorNearOpening
    } else {
        Scenario::Indeterminate
    }
}

/// Classify a metrics sequence, optionally smoothing with a centered
/// majority vote.
///
/// `window` must be odd; 1 means element-wise classification. Near the
/// stream edges the window truncates to the available neighbors. Ties
/// resolve toward the unsmoothed label of the center epoch. Output length
/// equals input length.
pub fn classify_stream(
    metrics: &[EpochMetrics],
    rules: &RuleSet,
    window: usize,
) -> Result<Vec<(u64, Scenario)>, RuleSetError> {
    if window == 0 || window % 2 == 0 {
        return Err(RuleSetError::BadWindow(window));
    }
    let raw: Vec<Scenario> = metrics.iter().map(|m| rules.classify(m)).collect();
    if window == 1 {
        return Ok(metrics
            .iter()
            .zip(&raw)
            .map(|(m, &s)| (m.epoch_index, s))
            .collect());
    }
    let half = window / 2;
    let smoothed = raw.iter().enumerate().map(|(i, &label)| {
        let lo = i.saturating_sub(half);
        let hi = (i + half + 1).min(raw.len());
        let mut counts = [0usize; Scenario::ALL.len()];
        for &s in &raw[lo..hi] {
            counts[scenario_ordinal(s)] += 1;
        }
        let best = *counts.iter().max().expect("non-empty window");
        let winners: Vec<Scenario> = Scenario::ALL
            .into_iter()
            .filter(|&s| counts[scenario_ordinal(s)] == best)
            .collect();
        if winners.len() == 1 {
            winners[0]
        } else {
            label
        }
    });
    Ok(metrics
        .iter()
        .zip(smoothed)
        .map(|(m, s)| (m.epoch_index, s))
        .collect())
}

fn scenario_ordinal(s: Scenario) -> usize {
    Scenario::ALL
        .iter()
        .position(|&v| v == s)
        .expect("scenario is in ALL")
}

/// Header of the scenario CSV form.
pub const SCENARIO_CSV_HEADER: &str = "epoch,scenario";

/// Render classified epochs as CSV, header included.
pub fn write_scenario_csv(labels: &[(u64, Scenario)]) -> String {
    let mut out = String::with_capacity(16 + labels.len() * 24);
    out.push_str(SCENARIO_CSV_HEADER);
    out.push('\n');
    for (epoch, scenario) in labels {
        out.push_str(&format!("{epoch},{scenario}\n"));
    }
    out
}

/// Parse a scenario CSV document (header required).
pub fn read_scenario_csv(text: &str) -> Result<Vec<(u64, Scenario)>, ScenarioCsvError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(header) if header.trim_end() == SCENARIO_CSV_HEADER => {}
        Some(other) => return Err(ScenarioCsvError(format!("unexpected header '{other}'"))),
        None => return Ok(Vec::new()),
    }
    lines
        .map(|line| {
            let (epoch, label) = line
                .trim_end()
                .split_once(',')
                .ok_or_else(|| ScenarioCsvError(format!("no comma in row '{line}'")))?;
            let epoch = epoch
                .parse()
                .map_err(|_| ScenarioCsvError(format!("bad epoch in row '{line}'")))?;
            let scenario = label
                .parse()
                .map_err(|e: UnknownScenario| ScenarioCsvError(e.to_string()))?;
            Ok((epoch, scenario))
        })
        .collect()
}

/// One JSON line per classified epoch.
pub fn scenario_json_line(epoch: u64, scenario: Scenario) -> String {
    serde_json::json!({ "epoch": epoch, "scenario": scenario.as_str() }).to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct ScenarioCsvError(String);
