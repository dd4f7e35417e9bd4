//! Carrier-to-noise density and SNR power formulas, plus an L-band
//! attenuation table for common construction materials.
//!
//! All quantities are in decibel units and all arithmetic is double
//! precision; nothing is rounded before serialization.

use thiserror::Error;

/// Boltzmann constant, W·s/K, as conventionally used in link budgets.
pub const BOLTZMANN_J_PER_K: f64 = 1.38e-23;

/// Inputs to the theoretical C/N0 budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudgetParams {
    /// Received signal power of one satellite, dBW.
    pub signal_power_dbw: f64,
    /// Antenna gain toward that satellite, dB.
    pub antenna_gain_db: f64,
    /// System noise temperature, Kelvin: source plus receiver temperature.
    pub system_noise_temp_k: f64,
    /// Implementation losses, dB.
    pub implementation_loss_db: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinkBudgetError {
    #[error("system noise temperature must be positive, got {0}")]
    NonPositiveNoiseTemperature(f64),
    #[error("interpolation position {0} outside [0, 1]")]
    PositionOutOfRange(f64),
}

/// Theoretical C/N0 in dB-Hz:
/// `S_r + G_a - 10·log10(k) - 10·log10(T_sys) - L`.
///
/// The noise-temperature term uses the standard coefficient 10; some
/// renderings of this budget print a unity coefficient on that term, which
/// does not yield dB-Hz and is treated here as a typesetting slip.
/// With k = 1.38e-23, the `-10·log10(k)` term is 228.6012… dB.
pub fn cn0_theoretical(params: &LinkBudgetParams) -> Result<f64, LinkBudgetError> {
    if params.system_noise_temp_k <= 0.0 {
        return Err(LinkBudgetError::NonPositiveNoiseTemperature(
            params.system_noise_temp_k,
        ));
    }
    Ok(params.signal_power_dbw + params.antenna_gain_db
        - 10.0 * BOLTZMANN_J_PER_K.log10()
        - 10.0 * params.system_noise_temp_k.log10()
        - params.implementation_loss_db)
}

/// SNR in dB from signal and noise powers in dB: `S_r - N`.
pub fn snr_from_powers(signal_power_db: f64, noise_power_db: f64) -> f64 {
    signal_power_db - noise_power_db
}

/// C/N0 in dB-Hz from SNR in dB over bandwidth `bw` in dB-Hz.
pub fn cn0_from_snr(snr_db: f64, bandwidth_dbhz: f64) -> f64 {
    snr_db + bandwidth_dbhz
}

/// SNR in dB from C/N0 in dB-Hz over bandwidth `bw` in dB-Hz.
pub fn snr_from_cn0(cn0_dbhz: f64, bandwidth_dbhz: f64) -> f64 {
    cn0_dbhz - bandwidth_dbhz
}

/// Direction of the C/N0 ↔ SNR conversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvertDirection {
    SnrToCn0,
    Cn0ToSnr,
}

/// Convert between SNR and C/N0 by adding or subtracting the bandwidth.
pub fn cn0_snr_convert(value: f64, bandwidth_dbhz: f64, direction: ConvertDirection) -> f64 {
    match direction {
        ConvertDirection::SnrToCn0 => cn0_from_snr(value, bandwidth_dbhz),
        ConvertDirection::Cn0ToSnr => snr_from_cn0(value, bandwidth_dbhz),
    }
}

/// Construction materials with published L-band attenuation ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Material {
    Drywall,
    Plywood,
    Glass,
    Wood,
    RebarGrid,
    Brick,
    Concrete,
    ReinforcedConcrete,
}

impl Material {
    pub const ALL: [Material; 8] = [
        Material::Drywall,
        Material::Plywood,
        Material::Glass,
        Material::Wood,
        Material::RebarGrid,
        Material::Brick,
        Material::Concrete,
        Material::ReinforcedConcrete,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Material::Drywall => "drywall",
            Material::Plywood => "plywood",
            Material::Glass => "glass",
            Material::Wood => "wood",
            Material::RebarGrid => "rebar_grid",
            Material::Brick => "brick",
            Material::Concrete => "concrete",
            Material::ReinforcedConcrete => "reinforced_concrete",
        }
    }
}

/// L-band attenuation range of one material, plus its dimensionless
/// transmission factor range (carried as data, consumed by nothing here).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialAttenuation {
    pub material: Material,
    pub atten_min_db: f64,
    pub atten_max_db: f64,
    pub factor_min: f64,
    pub factor_max: f64,
}

/// Attenuation table for L-band signals through common materials.
pub const MATERIALS: [MaterialAttenuation; 8] = [
    MaterialAttenuation { material: Material::Drywall, atten_min_db: 1.0, atten_max_db: 1.0, factor_min: 0.8, factor_max: 0.8 },
    MaterialAttenuation { material: Material::Plywood, atten_min_db: 1.0, atten_max_db: 3.0, factor_min: 0.8, factor_max: 0.5 },
    MaterialAttenuation { material: Material::Glass, atten_min_db: 1.0, atten_max_db: 4.0, factor_min: 0.8, factor_max: 0.4 },
    MaterialAttenuation { material: Material::Wood, atten_min_db: 2.0, atten_max_db: 9.0, factor_min: 0.6, factor_max: 0.1 },
    MaterialAttenuation { material: Material::RebarGrid, atten_min_db: 2.0, atten_max_db: 11.0, factor_min: 0.6, factor_max: 0.08 },
    MaterialAttenuation { material: Material::Brick, atten_min_db: 5.0, atten_max_db: 31.0, factor_min: 0.3, factor_max: 0.001 },
    MaterialAttenuation { material: Material::Concrete, atten_min_db: 12.0, atten_max_db: 43.0, factor_min: 0.06, factor_max: 0.00005 },
    MaterialAttenuation { material: Material::ReinforcedConcrete, atten_min_db: 29.0, atten_max_db: 33.0, factor_min: 0.001, factor_max: 0.0005 },
];

/// Look up one material's table row.
pub fn material_row(material: Material) -> &'static MaterialAttenuation {
    MATERIALS
        .iter()
        .find(|row| row.material == material)
        .expect("every material has a table row")
}

/// Attenuation in dB at a fractional `position` within the material's
/// published range: `min + position·(max - min)`, `position` in `[0, 1]`.
pub fn material_attenuation_db(material: Material, position: f64) -> Result<f64, LinkBudgetError> {
    if !(0.0..=1.0).contains(&position) {
        return Err(LinkBudgetError::PositionOutOfRange(position));
    }
    let row = material_row(material);
    Ok(row.atten_min_db + position * (row.atten_max_db - row.atten_min_db))
}

/// The material table as CSV for documentation and downstream tooling.
pub fn materials_csv() -> String {
    let mut out = String::from("material,atten_min_db,atten_max_db,factor_min,factor_max\n");
    for row in &MATERIALS {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.material.name(),
            row.atten_min_db,
            row.atten_max_db,
            row.factor_min,
            row.factor_max
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(sr: f64, ga: f64, tsys: f64, l: f64) -> LinkBudgetParams {
        LinkBudgetParams {
            signal_power_dbw: sr,
            antenna_gain_db: ga,
            system_noise_temp_k: tsys,
            implementation_loss_db: l,
        }
    }

    #[test]
    fn unit_noise_temperature_leaves_boltzmann_term() {
        // log10(1) = 0, so only -10 log10(k) = 228.6012... remains.
        let cn0 = cn0_theoretical(&params(-160.0, 0.0, 1.0, 0.0)).unwrap();
        assert_relative_eq!(cn0, 68.60120913598763, epsilon = 1e-10);
    }

    #[test]
    fn loss_enters_linearly() {
        let base = cn0_theoretical(&params(-160.0, 0.0, 290.0, 0.0)).unwrap();
        let lossy = cn0_theoretical(&params(-160.0, 0.0, 290.0, 3.0)).unwrap();
        assert_relative_eq!(base - lossy, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn typical_receiver_budget_matches_frozen_oracle() {
        // Frozen from a 40-digit evaluation of the formula before this
        // module was written.
        let cn0 = cn0_theoretical(&params(-160.0, 3.0, 290.0, 2.0)).unwrap();
        assert_relative_eq!(cn0, 44.977229156998074, epsilon = 1e-10);
    }

    #[test]
    fn non_positive_temperature_is_a_domain_error() {
        assert!(matches!(
            cn0_theoretical(&params(-160.0, 0.0, 0.0, 0.0)),
            Err(LinkBudgetError::NonPositiveNoiseTemperature(_))
        ));
        assert!(cn0_theoretical(&params(-160.0, 0.0, -5.0, 0.0)).is_err());
    }

    #[test]
    fn snr_is_power_difference() {
        assert_eq!(snr_from_powers(-160.0, -170.0), 10.0);
        assert_eq!(snr_from_powers(-140.25, -140.25), 0.0);
        assert_eq!(snr_from_powers(-158.5, -171.25), 12.75);
    }

    #[test]
    fn bandwidth_conversion_both_ways() {
        assert_eq!(cn0_snr_convert(10.0, 30.0, ConvertDirection::SnrToCn0), 40.0);
        assert_eq!(cn0_snr_convert(45.0, 33.0, ConvertDirection::Cn0ToSnr), 12.0);
    }

    #[test]
    fn conversion_round_trip_is_identity() {
        let cases = [(10.0, 30.0), (-3.25, 26.0), (45.5, 0.0), (0.0, 120.5)];
        for (value, bw) in cases {
            let there = cn0_snr_convert(value, bw, ConvertDirection::SnrToCn0);
            let back = cn0_snr_convert(there, bw, ConvertDirection::Cn0ToSnr);
            assert!((back - value).abs() < 1e-12);
        }
    }

    #[test]
    fn concrete_endpoints_and_brick_midpoint() {
        assert_eq!(material_attenuation_db(Material::Concrete, 0.0).unwrap(), 12.0);
        assert_eq!(material_attenuation_db(Material::Concrete, 1.0).unwrap(), 43.0);
        assert_eq!(material_attenuation_db(Material::Brick, 0.5).unwrap(), 18.0);
        for pos in [0.0, 0.3, 1.0] {
            assert_eq!(material_attenuation_db(Material::Drywall, pos).unwrap(), 1.0);
        }
    }

    #[test]
    fn position_outside_unit_interval_is_rejected() {
        assert!(material_attenuation_db(Material::Brick, -0.01).is_err());
        assert!(material_attenuation_db(Material::Brick, 1.01).is_err());
    }

    #[test]
    fn table_ranges_are_exact() {
        let expect: [(Material, f64, f64); 8] = [
            (Material::Drywall, 1.0, 1.0),
            (Material::Plywood, 1.0, 3.0),
            (Material::Glass, 1.0, 4.0),
            (Material::Wood, 2.0, 9.0),
            (Material::RebarGrid, 2.0, 11.0),
            (Material::Brick, 5.0, 31.0),
            (Material::Concrete, 12.0, 43.0),
            (Material::ReinforcedConcrete, 29.0, 33.0),
        ];
        for (material, lo, hi) in expect {
            let row = material_row(material);
            assert_eq!((row.atten_min_db, row.atten_max_db), (lo, hi), "{material:?}");
            assert!(row.atten_min_db <= row.atten_max_db);
        }
        assert_eq!(MATERIALS.len(), Material::ALL.len());
    }

    #[test]
    fn csv_export_lists_every_material() {
        let csv = materials_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "material,atten_min_db,atten_max_db,factor_min,factor_max"
        );
        assert_eq!(lines.count(), 8);
        assert!(csv.contains("concrete,12,43,0.06,0.00005"));
    }
}
