//! Reference statistics for forty surveyed sites, ten per scenario type.
//!
//! Each site was observed for one hour of 1 Hz epochs with a
//! single-constellation L1 GPS receiver with all receiver-side filters
//! disabled. Columns carry mean and standard deviation of the per-epoch
//! C/N0 mean, C/N0 sum, PDOP, HDOP and satellite count, plus the split of
//! epochs with and without measurements (an epoch without measurements has
//! no satellite with C/N0 above zero).
//!
//! The rows serve two jobs: [`SiteRecord::profile`] turns one into a
//! synthetic-generator preset (the files under `profiles/` are the same
//! data in file form), and [`SiteRecord::metrics_vector`] turns one into a
//! site-average feature vector for classifier regression tests.

use crate::classify::Scenario;
use crate::epoch::{EpochMetrics, SummaryStat};
use crate::synth::ScenarioProfile;

/// Consolidated statistics of one surveyed site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteRecord {
    pub name: &'static str,
    pub scenario: Scenario,
    pub cn0_mean: SummaryStat,
    pub cn0_sum: SummaryStat,
    pub pdop: SummaryStat,
    pub hdop: SummaryStat,
    pub sat_count: SummaryStat,
    pub epochs_with_measurement: u32,
    pub epochs_without_measurement: u32,
}

impl SiteRecord {
    pub fn total_epochs(&self) -> u32 {
        self.epochs_with_measurement + self.epochs_without_measurement
    }

    /// Fraction of epochs without measurements.
    pub fn missing_epoch_rate(&self) -> f64 {
        self.epochs_without_measurement as f64 / self.total_epochs() as f64
    }

    /// The site averages as one classifiable feature vector.
    pub fn metrics_vector(&self, epoch_index: u64) -> EpochMetrics {
        EpochMetrics::from_site_means(
            epoch_index,
            self.cn0_sum.mean,
            self.cn0_mean.mean,
            self.pdop.mean,
            self.hdop.mean,
            self.sat_count.mean,
        )
    }

    /// Generator preset reproducing this site's marginal statistics.
    pub fn profile(&self) -> ScenarioProfile {
        ScenarioProfile {
            name: self.name.to_string(),
            cn0_mean_mu: self.cn0_mean.mean,
            cn0_mean_sigma: self.cn0_mean.std_dev,
            sat_count_mu: self.sat_count.mean,
            sat_count_sigma: self.sat_count.std_dev,
            pdop_mu: self.pdop.mean,
            pdop_sigma: self.pdop.std_dev,
            hdop_mu: self.hdop.mean,
            hdop_sigma: self.hdop.std_dev,
            missing_epoch_rate: self.missing_epoch_rate(),
        }
    }
}

const fn stat(mean: f64, std_dev: f64) -> SummaryStat {
    SummaryStat { mean, std_dev }
}

#[allow(clippy::too_many_arguments)]
const fn site(
    name: &'static str,
    scenario: Scenario,
    cn0_mean: SummaryStat,
    cn0_sum: SummaryStat,
    pdop: SummaryStat,
    hdop: SummaryStat,
    sat_count: SummaryStat,
    epochs_with_measurement: u32,
    epochs_without_measurement: u32,
) -> SiteRecord {
    SiteRecord {
        name,
        scenario,
        cn0_mean,
        cn0_sum,
        pdop,
        hdop,
        sat_count,
        epochs_with_measurement,
        epochs_without_measurement,
    }
}

use Scenario::{Indoor, IndoorNearOpening, ObstructedOutdoor, OpenOutdoor};

/// All forty surveyed sites.
#[rustfmt::skip]
pub static SITES: [SiteRecord; 40] = [
    site("local_a1",  OpenOutdoor, stat(38.84, 1.00), stat(528.60,  68.52), stat( 1.91,  0.31), stat( 0.87,  0.04), stat(13.61, 1.72), 3527,   73),
    site("local_a2",  OpenOutdoor, stat(38.14, 1.24), stat(485.02,  88.39), stat( 1.99,  0.19), stat( 0.83,  0.04), stat(12.73, 2.35), 3598,    2),
    site("local_a3",  OpenOutdoor, stat(37.61, 1.25), stat(488.97, 133.95), stat( 1.76,  0.21), stat( 0.85,  0.05), stat(13.02, 3.64), 3272,  328),
    site("local_a4",  OpenOutdoor, stat(32.67, 1.94), stat(528.64, 169.65), stat( 1.65,  0.21), stat( 0.91,  0.10), stat(16.15, 4.95), 3486,  124),
    site("local_a5",  OpenOutdoor, stat(36.33, 1.40), stat(474.55,  99.65), stat( 1.85,  0.21), stat( 0.89,  0.06), stat(13.09, 2.83), 3419,  181),
    site("local_a6",  OpenOutdoor, stat(34.76, 1.50), stat(435.12,  66.42), stat( 1.68,  0.23), stat( 0.90,  0.11), stat(12.51, 1.81), 3558,   42),
    site("local_a7",  OpenOutdoor, stat(39.94, 1.23), stat(523.16, 192.32), stat( 1.86,  0.29), stat( 0.88,  0.07), stat(13.07, 4.72), 3065,  535),
    site("local_a8",  OpenOutdoor, stat(39.83, 1.09), stat(566.65,  39.60), stat( 1.78,  0.08), stat( 0.86,  0.07), stat(14.23, 1.02), 3578,   22),
    site("local_a9",  OpenOutdoor, stat(38.03, 1.14), stat(507.87,  73.41), stat( 2.06,  0.21), stat( 0.83,  0.03), stat(13.36, 1.96), 3552,   48),
    site("local_a10", OpenOutdoor, stat(38.86, 3.12), stat(571.01, 123.50), stat( 1.75,  0.23), stat( 0.91,  0.11), stat(14.68, 3.12), 3404,  196),
    site("local_b1",  ObstructedOutdoor, stat(27.50, 1.97), stat(291.34, 29.79), stat( 3.09,  2.30), stat( 1.93,  2.12), stat(10.64, 1.31), 3599,    1),
    site("local_b2",  ObstructedOutdoor, stat(27.10, 2.48), stat(233.80, 25.38), stat( 3.33,  1.37), stat( 1.91,  1.24), stat( 8.70, 1.24), 3600,    0),
    site("local_b3",  ObstructedOutdoor, stat(28.83, 2.34), stat(248.28, 26.30), stat( 3.67,  1.21), stat( 2.50,  1.08), stat( 8.69, 1.21), 3600,    0),
    site("local_b4",  ObstructedOutdoor, stat(25.76, 2.09), stat(260.65, 27.24), stat( 2.22,  0.59), stat( 1.21,  0.25), stat(10.14, 1.03), 3598,    2),
    site("local_b5",  ObstructedOutdoor, stat(26.98, 2.65), stat(281.10, 29.48), stat( 3.81,  6.53), stat( 2.57,  5.81), stat(10.50, 1.35), 3600,    0),
    site("local_b6",  ObstructedOutdoor, stat(29.82, 1.77), stat(287.94, 22.08), stat( 2.07,  0.19), stat( 0.99,  0.10), stat( 9.67, 0.73), 3600,    0),
    site("local_b7",  ObstructedOutdoor, stat(29.40, 1.72), stat(319.90, 17.18), stat( 2.02,  0.28), stat( 0.96,  0.10), stat(10.91, 0.82), 3600,    0),
    site("local_b8",  ObstructedOutdoor, stat(29.05, 2.37), stat(263.98, 36.02), stat( 3.38,  0.54), stat( 1.88,  0.38), stat( 9.10, 1.17), 3600,    0),
    site("local_b9",  ObstructedOutdoor, stat(29.83, 2.41), stat(254.56, 23.76), stat( 3.74,  1.99), stat( 2.77,  1.80), stat( 8.58, 1.04), 3598,    2),
    site("local_b10", ObstructedOutdoor, stat(27.24, 2.09), stat(264.66, 22.47), stat( 2.60,  0.33), stat( 1.32,  0.22), stat( 9.77, 1.13), 3599,    1),
    site("local_c1",  IndoorNearOpening, stat(20.64, 2.51), stat(123.48, 40.75), stat(22.38, 38.18), stat(21.11, 38.78), stat( 6.08, 2.09), 3521,   79),
    site("local_c2",  IndoorNearOpening, stat(21.55, 2.05), stat(172.95, 19.91), stat( 2.89,  0.81), stat( 1.42,  0.44), stat( 8.05, 0.85), 3600,    0),
    site("local_c3",  IndoorNearOpening, stat(21.95, 3.30), stat(118.43, 19.26), stat(16.79, 26.99), stat(15.20, 27.52), stat( 5.51, 1.16), 3599,    1),
    site("local_c4",  IndoorNearOpening, stat(26.78, 2.63), stat(122.69, 17.26), stat(14.81, 24.69), stat(13.70, 25.12), stat( 4.63, 0.85), 3600,    0),
    site("local_c5",  IndoorNearOpening, stat(21.76, 2.44), stat(102.60, 28.37), stat(51.59, 47.25), stat(51.51, 49.34), stat( 4.73, 1.30), 3600,    0),
    site("local_c6",  IndoorNearOpening, stat(25.69, 2.13), stat(159.13, 17.66), stat( 4.80,  4.72), stat( 3.93,  4.66), stat( 6.23, 0.86), 3592,    8),
    site("local_c7",  IndoorNearOpening, stat(16.93, 1.71), stat(157.17, 22.45), stat( 6.70,  7.67), stat( 5.67,  3.61), stat( 6.27, 1.11), 3600,    0),
    site("local_c8",  IndoorNearOpening, stat(25.45, 3.31), stat(149.53, 30.73), stat(13.90, 25.26), stat(12.12, 25.78), stat( 6.02, 1.49), 3600,    0),
    site("local_c9",  IndoorNearOpening, stat(22.18, 2.22), stat(140.96, 18.66), stat( 5.19,  9.42), stat( 3.91,  9.32), stat( 6.39, 0.92), 3600,    0),
    site("local_c10", IndoorNearOpening, stat(23.91, 2.29), stat(174.32, 25.48), stat( 8.96, 19.41), stat( 7.58, 19.64), stat( 7.35, 1.24), 3600,    0),
    site("local_d1",  Indoor, stat(21.87, 3.15), stat(45.66, 27.12), stat(99.99,  0.00), stat(99.99,  0.00), stat( 2.07, 1.17), 2965,  635),
    site("local_d2",  Indoor, stat(20.84, 6.47), stat(21.77,  7.44), stat(99.99,  0.00), stat(99.99,  0.00), stat( 1.05, 0.22),  435, 3165),
    site("local_d3",  Indoor, stat(21.39, 3.01), stat(84.30, 27.47), stat(54.27, 46.48), stat(52.70, 47.65), stat( 4.04, 1.41), 3600,    0),
    site("local_d4",  Indoor, stat(23.73, 2.69), stat(65.70, 36.13), stat(99.99,  0.00), stat(99.99,  0.00), stat( 2.79, 1.54), 3377,  223),
    site("local_d5",  Indoor, stat(22.54, 2.64), stat(73.93, 48.63), stat(99.99,  0.00), stat(99.99,  0.00), stat( 3.25, 2.04), 3354,  246),
    site("local_d6",  Indoor, stat(19.95, 4.23), stat(35.67, 18.43), stat(99.99,  0.00), stat(99.99,  0.00), stat( 1.80, 0.91), 2850,  750),
    site("local_d7",  Indoor, stat(19.85, 5.69), stat(70.79, 93.16), stat(80.12, 39.10), stat(79.91, 39.51), stat( 2.93, 3.09), 2288,  712),
    site("local_d8",  Indoor, stat(19.78, 4.53), stat(27.37, 22.01), stat(99.99,  0.00), stat(99.99,  0.00), stat( 1.37, 0.76), 2058, 1542),
    site("local_d9",  Indoor, stat(19.41, 5.89), stat(21.75,  9.40), stat(99.99,  0.00), stat(99.99,  0.00), stat( 1.12, 0.37),  612, 2988),
    site("local_d10", Indoor, stat(18.82, 4.38), stat(25.88, 13.61), stat(99.99,  0.00), stat(99.99,  0.00), stat( 1.36, 0.63), 1913, 1687),
];

/// Look up a bundled site by its `local_*` name.
pub fn site_by_name(name: &str) -> Option<&'static SiteRecord> {
    SITES.iter().find(|s| s.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_sites_per_scenario() {
        for scenario in [Indoor, IndoorNearOpening, ObstructedOutdoor, OpenOutdoor] {
            assert_eq!(SITES.iter().filter(|s| s.scenario == scenario).count(), 10);
        }
    }

    #[test]
    fn names_are_unique_and_resolvable() {
        for s in &SITES {
            assert!(std::ptr::eq(site_by_name(s.name).unwrap(), s));
        }
        assert!(site_by_name("local_e1").is_none());
    }

    #[test]
    fn most_sites_cover_a_full_hour() {
        // Two sites were recorded with a different epoch universe; all
        // others total 3600.
        let odd: Vec<&str> = SITES
            .iter()
            .filter(|s| s.total_epochs() != 3600)
            .map(|s| s.name)
            .collect();
        assert_eq!(odd, ["local_a4", "local_d7"]);
    }

    #[test]
    fn metrics_vector_rounds_satellites_half_up() {
        let a1 = site_by_name("local_a1").unwrap().metrics_vector(0);
        assert_eq!(a1.satellite_count, 14); // 13.61 rounds up
        assert_eq!(a1.cn0_sum, 528.60);

        let d2 = site_by_name("local_d2").unwrap().metrics_vector(0);
        assert_eq!(d2.satellite_count, 1); // 1.05 rounds down
    }

    #[test]
    fn profile_carries_rates_and_sigmas() {
        let d2 = site_by_name("local_d2").unwrap().profile();
        assert_eq!(d2.cn0_mean_mu, 20.84);
        assert_eq!(d2.cn0_mean_sigma, 6.47);
        assert!((d2.missing_epoch_rate - 3165.0 / 3600.0).abs() < 1e-12);
        d2.validate().unwrap();
    }
}
