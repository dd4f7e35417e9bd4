//! Scoring classifier output against ground-truth scenario labels.
//!
//! Truth is a sorted list of non-overlapping `[start, end)` epoch intervals,
//! each carrying one of the four real scenario types. Every predicted epoch
//! must fall inside exactly one interval. An `indeterminate` prediction is
//! always a mismatch (truth can never be indeterminate) but is also counted
//! separately so refusals can be told apart from misclassifications.

use std::io::BufRead;

use thiserror::Error;

use crate::classify::Scenario;

/// One ground-truth span: epochs `start_epoch..end_epoch` (end exclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelInterval {
    pub start_epoch: u64,
    pub end_epoch: u64,
    pub truth: Scenario,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("label file is empty")]
    EmptyFile,
    #[error("label file line {0}: {1}")]
    Malformed(u64, String),
    #[error("label file line {0}: unknown label '{1}'")]
    UnknownLabel(u64, String),
    #[error("label intervals overlap: [{0}, {1}) and [{2}, {3})")]
    Overlap(u64, u64, u64, u64),
    #[error("cannot read label file: {0}")]
    Io(String),
}

/// Parse a label CSV: `start_epoch,end_epoch,label` rows, one optional
/// header row, `#` comments and blank lines ignored. Returns the intervals
/// sorted by start epoch.
pub fn load_labels<R: BufRead>(reader: R) -> Result<Vec<LabelInterval>, LabelError> {
    let mut intervals = Vec::new();
    for (index, line) in reader.lines().enumerate() {
        let number = index as u64 + 1;
        let line = line.map_err(|e| LabelError::Io(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if number == 1 && line.eq_ignore_ascii_case("start_epoch,end_epoch,label") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(LabelError::Malformed(
                number,
                format!("expected 3 fields, got {}", fields.len()),
            ));
        }
        let start_epoch: u64 = fields[0]
            .trim()
            .parse()
            .map_err(|_| LabelError::Malformed(number, format!("bad start '{}'", fields[0])))?;
        let end_epoch: u64 = fields[1]
            .trim()
            .parse()
            .map_err(|_| LabelError::Malformed(number, format!("bad end '{}'", fields[1])))?;
        if start_epoch >= end_epoch {
            return Err(LabelError::Malformed(
                number,
                format!("empty interval [{start_epoch}, {end_epoch})"),
            ));
        }
        let label = fields[2].trim();
        let truth: Scenario = label
            .parse()
            .map_err(|_| LabelError::UnknownLabel(number, label.to_string()))?;
        if truth == Scenario::Indeterminate {
            return Err(LabelError::UnknownLabel(number, label.to_string()));
        }
        intervals.push(LabelInterval {
            start_epoch,
            end_epoch,
            truth,
        });
    }
    if intervals.is_empty() {
        return Err(LabelError::EmptyFile);
    }
    intervals.sort_by_key(|i| i.start_epoch);
    for pair in intervals.windows(2) {
        if pair[1].start_epoch < pair[0].end_epoch {
            return Err(LabelError::Overlap(
                pair[0].start_epoch,
                pair[0].end_epoch,
                pair[1].start_epoch,
                pair[1].end_epoch,
            ));
        }
    }
    Ok(intervals)
}

/// Scenario order used for confusion-matrix rows and columns.
pub const TRUTH_ORDER: [Scenario; 4] = [
    Scenario::OpenOutdoor,
    Scenario::ObstructedOutdoor,
    Scenario::IndoorNearOpening,
    Scenario::Indoor,
];

/// Evaluation outcome over one prediction run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub total_epochs: u64,
    pub matches: u64,
    pub mismatches: u64,
    /// Indeterminate predictions (a subset of the mismatches).
    pub indeterminate: u64,
    /// `confusion[predicted][truth]`: predictions down the rows in
    /// [`Scenario::ALL`] order (indeterminate last), truth across the
    /// columns in [`TRUTH_ORDER`].
    pub confusion: [[u64; 4]; 5],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("epoch {0} is outside every truth interval")]
    UncoveredEpoch(u64),
}

/// Compare predictions against truth intervals epoch by epoch.
pub fn evaluate(
    predicted: &[(u64, Scenario)],
    truth: &[LabelInterval],
) -> Result<ValidationReport, EvalError> {
    let truth_row = |s: Scenario| TRUTH_ORDER.iter().position(|&t| t == s).unwrap();
    let predicted_row = |s: Scenario| Scenario::ALL.iter().position(|&t| t == s).unwrap();

    let mut report = ValidationReport {
        total_epochs: 0,
        matches: 0,
        mismatches: 0,
        indeterminate: 0,
        confusion: [[0; 4]; 5],
    };
    for &(epoch, label) in predicted {
        let interval = truth
            .iter()
            .find(|i| (i.start_epoch..i.end_epoch).contains(&epoch))
            .ok_or(EvalError::UncoveredEpoch(epoch))?;
        report.total_epochs += 1;
        report.confusion[predicted_row(label)][truth_row(interval.truth)] += 1;
        if label == interval.truth {
            report.matches += 1;
        } else {
            report.mismatches += 1;
            if label == Scenario::Indeterminate {
                report.indeterminate += 1;
            }
        }
    }
    Ok(report)
}

impl ValidationReport {
    /// Exact agreement percentage; formatting to two decimals happens only
    /// at serialization.
    pub fn accuracy_pct(&self) -> f64 {
        if self.total_epochs == 0 {
            return 0.0;
        }
        100.0 * self.matches as f64 / self.total_epochs as f64
    }

    /// Agreement recomputed from the confusion diagonal; must reconcile
    /// with `matches` exactly.
    pub fn matches_from_confusion(&self) -> u64 {
        TRUTH_ORDER
            .iter()
            .enumerate()
            .map(|(column, &scenario)| {
                let row = Scenario::ALL.iter().position(|&s| s == scenario).unwrap();
                self.confusion[row][column]
            })
            .sum()
    }

    /// Human-readable report table.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("epochs evaluated   {}\n", self.total_epochs));
        out.push_str(&format!(
            "matches            {} ({:.2}%)\n",
            self.matches,
            self.accuracy_pct()
        ));
        out.push_str(&format!(
            "mismatches         {} ({:.2}%)\n",
            self.mismatches,
            100.0 - self.accuracy_pct()
        ));
        out.push_str(&format!(
            "  indeterminate    {}\n\n",
            self.indeterminate
        ));
        out.push_str("confusion (rows: predicted, columns: truth)\n");
        out.push_str(&format!("{:>20}", ""));
        for truth in TRUTH_ORDER {
            out.push_str(&format!(" {:>19}", truth.as_str()));
        }
        out.push('\n');
        for (row, predicted) in Scenario::ALL.iter().enumerate() {
            out.push_str(&format!("{:>20}", predicted.as_str()));
            for column in 0..4 {
                out.push_str(&format!(" {:>19}", self.confusion[row][column]));
            }
            out.push('\n');
        }
        out
    }

    /// Machine-readable form; the accuracy percentage is rounded to two
    /// decimals, counts are exact.
    pub fn to_json(&self) -> serde_json::Value {
        let rounded = (self.accuracy_pct() * 100.0).round() / 100.0;
        serde_json::json!({
            "total_epochs": self.total_epochs,
            "matches": self.matches,
            "mismatches": self.mismatches,
            "indeterminate": self.indeterminate,
            "accuracy_pct": rounded,
            "confusion": {
                "predicted_order": Scenario::ALL.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
                "truth_order": TRUTH_ORDER.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
                "counts": self.confusion,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn labels(text: &str) -> Result<Vec<LabelInterval>, LabelError> {
        load_labels(Cursor::new(text))
    }

    #[test]
    fn single_row_single_interval() {
        let intervals = labels("0,3600,open_outdoor\n").unwrap();
        assert_eq!(
            intervals,
            vec![LabelInterval {
                start_epoch: 0,
                end_epoch: 3600,
                truth: Scenario::OpenOutdoor,
            }]
        );
    }

    #[test]
    fn header_row_is_skipped() {
        let intervals = labels("start_epoch,end_epoch,label\n0,10,indoor\n").unwrap();
        assert_eq!(intervals.len(), 1);
    }

    #[test]
    fn overlap_is_rejected() {
        assert!(matches!(
            labels("0,10,indoor\n5,15,indoor\n"),
            Err(LabelError::Overlap(0, 10, 5, 15))
        ));
    }

    #[test]
    fn unknown_and_indeterminate_labels_are_rejected() {
        assert!(matches!(
            labels("0,10,cave\n"),
            Err(LabelError::UnknownLabel(1, _))
        ));
        assert!(matches!(
            labels("0,10,indeterminate\n"),
            Err(LabelError::UnknownLabel(1, _))
        ));
    }

    #[test]
    fn empty_file_is_rejected() {
        assert!(matches!(labels(""), Err(LabelError::EmptyFile)));
        assert!(matches!(labels("# only a comment\n"), Err(LabelError::EmptyFile)));
    }

    #[test]
    fn four_contiguous_rows_make_four_sorted_intervals() {
        let text = "20,30,indoor\n0,10,open_outdoor\n10,20,obstructed_outdoor\n30,40,indoor_near_opening\n";
        let intervals = labels(text).unwrap();
        assert_eq!(intervals.len(), 4);
        assert!(intervals.windows(2).all(|p| p[0].end_epoch <= p[1].start_epoch));
        assert_eq!(intervals[0].truth, Scenario::OpenOutdoor);
    }

    #[test]
    fn degenerate_interval_is_malformed() {
        assert!(matches!(labels("5,5,indoor\n"), Err(LabelError::Malformed(1, _))));
        assert!(matches!(labels("9,5,indoor\n"), Err(LabelError::Malformed(1, _))));
    }

    fn uniform_truth(total: u64, truth: Scenario) -> Vec<LabelInterval> {
        vec![LabelInterval {
            start_epoch: 0,
            end_epoch: total,
            truth,
        }]
    }

    /// Predictions with exactly `matches` hits out of `total`.
    fn predictions(total: u64, matches: u64, truth: Scenario, miss: Scenario) -> Vec<(u64, Scenario)> {
        (0..total)
            .map(|e| (e, if e < matches { truth } else { miss }))
            .collect()
    }

    #[test]
    fn accuracy_formats_to_two_decimals_like_the_reference_runs() {
        let truth = uniform_truth(82_323, Scenario::OpenOutdoor);
        let report = evaluate(
            &predictions(82_323, 80_765, Scenario::OpenOutdoor, Scenario::Indoor),
            &truth,
        )
        .unwrap();
        assert_eq!(report.matches, 80_765);
        assert_eq!(format!("{:.2}", report.accuracy_pct()), "98.11");

        let report = evaluate(
            &predictions(82_323, 73_650, Scenario::OpenOutdoor, Scenario::Indoor),
            &truth,
        )
        .unwrap();
        assert_eq!(format!("{:.2}", report.accuracy_pct()), "89.46");
    }

    #[test]
    fn perfect_agreement_has_clean_diagonal() {
        let truth = vec![
            LabelInterval { start_epoch: 0, end_epoch: 5, truth: Scenario::Indoor },
            LabelInterval { start_epoch: 5, end_epoch: 9, truth: Scenario::OpenOutdoor },
        ];
        let predicted: Vec<(u64, Scenario)> = (0..9)
            .map(|e| (e, if e < 5 { Scenario::Indoor } else { Scenario::OpenOutdoor }))
            .collect();
        let report = evaluate(&predicted, &truth).unwrap();
        assert_eq!(report.matches, 9);
        assert_eq!(report.mismatches, 0);
        assert_eq!(format!("{:.2}", report.accuracy_pct()), "100.00");
        let diagonal = report.matches_from_confusion();
        assert_eq!(diagonal, 9);
        let off_diagonal: u64 =
            report.confusion.iter().flatten().sum::<u64>() - diagonal;
        assert_eq!(off_diagonal, 0);
    }

    #[test]
    fn indeterminate_counts_as_mismatch_and_separately() {
        let truth = uniform_truth(4, Scenario::ObstructedOutdoor);
        let predicted = vec![
            (0, Scenario::ObstructedOutdoor),
            (1, Scenario::Indeterminate),
            (2, Scenario::Indoor),
            (3, Scenario::Indeterminate),
        ];
        let report = evaluate(&predicted, &truth).unwrap();
        assert_eq!(report.matches, 1);
        assert_eq!(report.mismatches, 3);
        assert_eq!(report.indeterminate, 2);
        assert!(report.indeterminate <= report.mismatches);
        assert_eq!(report.matches + report.mismatches, report.total_epochs);
    }

    #[test]
    fn uncovered_epoch_is_an_error() {
        let truth = uniform_truth(10, Scenario::Indoor);
        let predicted = vec![(10, Scenario::Indoor)];
        assert_eq!(
            evaluate(&predicted, &truth),
            Err(EvalError::UncoveredEpoch(10))
        );
    }

    #[test]
    fn interval_order_does_not_matter() {
        let a = vec![
            LabelInterval { start_epoch: 0, end_epoch: 5, truth: Scenario::Indoor },
            LabelInterval { start_epoch: 5, end_epoch: 10, truth: Scenario::OpenOutdoor },
        ];
        let b: Vec<LabelInterval> = a.iter().rev().copied().collect();
        let predicted: Vec<(u64, Scenario)> =
            (0..10).map(|e| (e, Scenario::Indoor)).collect();
        assert_eq!(evaluate(&predicted, &a), evaluate(&predicted, &b));
    }

    #[test]
    fn confusion_total_reconciles() {
        let truth = vec![
            LabelInterval { start_epoch: 0, end_epoch: 6, truth: Scenario::IndoorNearOpening },
            LabelInterval { start_epoch: 6, end_epoch: 12, truth: Scenario::Indoor },
        ];
        let predicted: Vec<(u64, Scenario)> = (0..12)
            .map(|e| {
                let label = match e % 4 {
                    0 => Scenario::Indoor,
                    1 => Scenario::IndoorNearOpening,
                    2 => Scenario::Indeterminate,
                    _ => Scenario::OpenOutdoor,
                };
                (e, label)
            })
            .collect();
        let report = evaluate(&predicted, &truth).unwrap();
        let cell_total: u64 = report.confusion.iter().flatten().sum();
        assert_eq!(cell_total, report.total_epochs);
        assert_eq!(report.matches_from_confusion(), report.matches);
    }

    #[test]
    fn json_report_carries_all_fields() {
        let truth = uniform_truth(4, Scenario::Indoor);
        let predicted: Vec<(u64, Scenario)> = (0..4).map(|e| (e, Scenario::Indoor)).collect();
        let json = evaluate(&predicted, &truth).unwrap().to_json();
        assert_eq!(json["total_epochs"], 4);
        assert_eq!(json["accuracy_pct"], 100.0);
        assert_eq!(json["confusion"]["counts"][3][3], 4);
    }
}
