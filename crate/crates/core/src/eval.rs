//! Pixel-level scoring of a predicted forest mask against reference truth.
//!
//! Ignored reference pixels are counted but left out of every metric. A
//! ratio whose denominator is zero is undefined and serializes as `null`,
//! never as 0.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groundtruth::{Group, TruthRaster};
use crate::raster::BinaryMask;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
    pub ignored: u64,
}

impl ConfusionMatrix {
    /// Pixels that took part in the comparison.
    pub fn compared(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }

    /// All pixels, ignored ones included.
    pub fn total(&self) -> u64 {
        self.compared() + self.ignored
    }
}

pub fn confusion(pred: &BinaryMask, truth: &TruthRaster) -> Result<ConfusionMatrix> {
    pred.ensure_same_shape(truth)?;
    let mut cm = ConfusionMatrix::default();
    for (&p, &t) in pred.as_slice().iter().zip(truth.as_slice()) {
        let bucket = match (t, p) {
            (Group::Ignore, _) => &mut cm.ignored,
            (Group::Forest, true) => &mut cm.tp,
            (Group::Nonforest, true) => &mut cm.fp,
            (Group::Forest, false) => &mut cm.fn_,
            (Group::Nonforest, false) => &mut cm.tn,
        };
        *bucket += 1;
    }
    Ok(cm)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub accuracy: f64,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den != 0).then(|| num as f64 / den as f64)
}

pub fn metrics(cm: &ConfusionMatrix) -> Result<MetricsReport> {
    let compared = cm.compared();
    if compared == 0 {
        return Err(Error::EmptyComparison);
    }
    let precision = ratio(cm.tp, cm.tp + cm.fp);
    let recall = ratio(cm.tp, cm.tp + cm.fn_);
    let f1 = match (precision, recall) {
        (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
        _ => None,
    };
    Ok(MetricsReport {
        accuracy: (cm.tp + cm.tn) as f64 / compared as f64,
        precision,
        recall,
        f1,
    })
}

/// Confusion counts plus metrics; the metrics JSON document.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub confusion: ConfusionMatrix,
    #[serde(flatten)]
    pub metrics: MetricsReport,
}

impl EvaluationReport {
    pub fn new(confusion: ConfusionMatrix) -> Result<Self> {
        Ok(EvaluationReport {
            confusion,
            metrics: metrics(&confusion)?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn evaluate(pred: &BinaryMask, truth: &TruthRaster) -> Result<EvaluationReport> {
    EvaluationReport::new(confusion(pred, truth)?)
}

/// `a - b` for every count and metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportDelta {
    pub tp: i64,
    pub fp: i64,
    #[serde(rename = "fn")]
    pub fn_: i64,
    pub tn: i64,
    pub ignored: i64,
    pub accuracy: f64,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub a: EvaluationReport,
    pub b: EvaluationReport,
    pub delta: ReportDelta,
}

fn diff(a: u64, b: u64) -> i64 {
    a as i64 - b as i64
}

fn opt_diff(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    Some(a? - b?)
}

pub fn compare_report(cm_a: &ConfusionMatrix, cm_b: &ConfusionMatrix) -> Result<ComparisonReport> {
    if cm_a.total() != cm_b.total() {
        return Err(Error::SizeMismatch {
            left: cm_a.total(),
            right: cm_b.total(),
        });
    }
    let a = EvaluationReport::new(*cm_a)?;
    let b = EvaluationReport::new(*cm_b)?;
    let delta = ReportDelta {
        tp: diff(cm_a.tp, cm_b.tp),
        fp: diff(cm_a.fp, cm_b.fp),
        fn_: diff(cm_a.fn_, cm_b.fn_),
        tn: diff(cm_a.tn, cm_b.tn),
        ignored: diff(cm_a.ignored, cm_b.ignored),
        accuracy: a.metrics.accuracy - b.metrics.accuracy,
        precision: opt_diff(a.metrics.precision, b.metrics.precision),
        recall: opt_diff(a.metrics.recall, b.metrics.recall),
        f1: opt_diff(a.metrics.f1, b.metrics.f1),
    };
    Ok(ComparisonReport { a, b, delta })
}

impl ComparisonReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Percentage with two decimals, or `n/a` when undefined.
pub fn percent(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{:.2}%", v * 100.0),
        None => "n/a".to_string(),
    }
}

fn signed_percent(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{:+.2}%", v * 100.0),
        None => "n/a".to_string(),
    }
}

pub fn render_report(report: &EvaluationReport) -> String {
    let cm = &report.confusion;
    let m = &report.metrics;
    let mut out = String::new();
    writeln!(out, "              truth forest  truth non-forest").unwrap();
    writeln!(out, "pred forest   {:>12}  {:>16}", cm.tp, cm.fp).unwrap();
    writeln!(out, "pred other    {:>12}  {:>16}", cm.fn_, cm.tn).unwrap();
    writeln!(out, "ignored       {:>12}", cm.ignored).unwrap();
    writeln!(out).unwrap();
    writeln!(out, "accuracy   {:>8}", percent(Some(m.accuracy))).unwrap();
    writeln!(out, "precision  {:>8}", percent(m.precision)).unwrap();
    writeln!(out, "recall     {:>8}", percent(m.recall)).unwrap();
    writeln!(out, "f1         {:>8}", percent(m.f1)).unwrap();
    out
}

pub fn render_comparison(report: &ComparisonReport) -> String {
    let (a, b, d) = (&report.a, &report.b, &report.delta);
    let mut out = String::new();
    writeln!(out, "{:<10} {:>10} {:>10} {:>10}", "", "A", "B", "A - B").unwrap();
    let counts = [
        ("tp", a.confusion.tp, b.confusion.tp, d.tp),
        ("fp", a.confusion.fp, b.confusion.fp, d.fp),
        ("fn", a.confusion.fn_, b.confusion.fn_, d.fn_),
        ("tn", a.confusion.tn, b.confusion.tn, d.tn),
        (
            "ignored",
            a.confusion.ignored,
            b.confusion.ignored,
            d.ignored,
        ),
    ];
    for (name, x, y, dx) in counts {
        writeln!(out, "{name:<10} {x:>10} {y:>10} {dx:>+10}").unwrap();
    }
    let ratios = [
        (
            "accuracy",
            Some(a.metrics.accuracy),
            Some(b.metrics.accuracy),
            Some(d.accuracy),
        ),
        (
            "precision",
            a.metrics.precision,
            b.metrics.precision,
            d.precision,
        ),
        ("recall", a.metrics.recall, b.metrics.recall, d.recall),
        ("f1", a.metrics.f1, b.metrics.f1, d.f1),
    ];
    for (name, x, y, dx) in ratios {
        writeln!(
            out,
            "{name:<10} {:>10} {:>10} {:>10}",
            percent(x),
            percent(y),
            signed_percent(dx)
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raster::Grid;

    const F: Group = Group::Forest;
    const N: Group = Group::Nonforest;
    const I: Group = Group::Ignore;

    fn ten_pixel_fixture() -> (BinaryMask, TruthRaster) {
        // Hand-enumerated: 3 TP, 1 FP, 1 FN, 5 TN.
        let pred = [
            true, true, true, true, false, false, false, false, false, false,
        ];
        let truth = [F, F, F, N, F, N, N, N, N, N];
        (
            Grid::from_vec(5, 2, pred.to_vec()).unwrap(),
            Grid::from_vec(5, 2, truth.to_vec()).unwrap(),
        )
    }

    #[test]
    fn ten_pixel_counts_and_metrics() {
        let (pred, truth) = ten_pixel_fixture();
        let cm = confusion(&pred, &truth).unwrap();
        assert_eq!(
            cm,
            ConfusionMatrix {
                tp: 3,
                fp: 1,
                fn_: 1,
                tn: 5,
                ignored: 0
            }
        );
        let m = metrics(&cm).unwrap();
        assert_eq!(m.accuracy, 0.8);
        assert_eq!(m.precision, Some(0.75));
        assert_eq!(m.recall, Some(0.75));
        assert_eq!(m.f1, Some(0.75));
    }

    #[test]
    fn perfect_prediction() {
        let truth = Grid::from_vec(4, 1, vec![F, N, F, N]).unwrap();
        let pred = truth.map(|&g| g == F);
        let cm = confusion(&pred, &truth).unwrap();
        assert_eq!((cm.fp, cm.fn_), (0, 0));
        let m = metrics(&cm).unwrap();
        assert_eq!(
            (m.accuracy, m.precision, m.recall, m.f1),
            (1.0, Some(1.0), Some(1.0), Some(1.0))
        );
    }

    #[test]
    fn all_ignored() {
        let truth = Grid::filled(3, 3, I).unwrap();
        let pred = Grid::filled(3, 3, true).unwrap();
        let cm = confusion(&pred, &truth).unwrap();
        assert_eq!(
            cm,
            ConfusionMatrix {
                ignored: 9,
                ..Default::default()
            }
        );
        assert!(matches!(metrics(&cm), Err(Error::EmptyComparison)));
    }

    #[test]
    fn undefined_precision_is_not_zero() {
        let truth = Grid::from_vec(3, 1, vec![F, N, F]).unwrap();
        let pred = Grid::filled(3, 1, false).unwrap();
        let m = metrics(&confusion(&pred, &truth).unwrap()).unwrap();
        assert_eq!(m.recall, Some(0.0));
        assert_eq!(m.precision, None);
        assert_eq!(m.f1, None);
        let json = EvaluationReport::new(confusion(&pred, &truth).unwrap())
            .unwrap()
            .to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(v["precision"].is_null());
        assert_eq!(v["recall"], 0.0);
    }

    #[test]
    fn shape_mismatch() {
        let truth = Grid::filled(3, 1, F).unwrap();
        let pred = Grid::filled(1, 3, true).unwrap();
        assert!(matches!(confusion(&pred, &truth), Err(Error::Shape { .. })));
    }

    #[test]
    fn json_layout() {
        let (pred, truth) = ten_pixel_fixture();
        let report = evaluate(&pred, &truth).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "confusion": {"tp": 3, "fp": 1, "fn": 1, "tn": 5, "ignored": 0},
                "accuracy": 0.8, "precision": 0.75, "recall": 0.75, "f1": 0.75
            })
        );
        let back: EvaluationReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn identical_matrices_have_zero_delta() {
        let cm = ConfusionMatrix {
            tp: 4,
            fp: 2,
            fn_: 3,
            tn: 9,
            ignored: 1,
        };
        let d = compare_report(&cm, &cm).unwrap().delta;
        assert_eq!((d.tp, d.fp, d.fn_, d.tn, d.ignored), (0, 0, 0, 0, 0));
        assert_eq!(d.accuracy, 0.0);
        assert_eq!(
            (d.precision, d.recall, d.f1),
            (Some(0.0), Some(0.0), Some(0.0))
        );
    }

    #[test]
    fn crafted_pair_deltas() {
        // A finds more forest: fewer misses, more false alarms.
        let a = ConfusionMatrix {
            tp: 50,
            fp: 20,
            fn_: 10,
            tn: 20,
            ignored: 0,
        };
        let b = ConfusionMatrix {
            tp: 30,
            fp: 5,
            fn_: 30,
            tn: 35,
            ignored: 0,
        };
        let r = compare_report(&a, &b).unwrap();
        let d = r.delta;
        assert_eq!((d.tp, d.fp, d.fn_, d.tn, d.ignored), (20, 15, -20, -15, 0));
        assert!(d.fn_ < 0 && d.fp > 0);
        // accuracy 0.70 vs 0.65
        assert!((d.accuracy - 0.05).abs() < 1e-12);
        // precision 50/70 vs 30/35
        assert!((d.precision.unwrap() - (50.0 / 70.0 - 30.0 / 35.0)).abs() < 1e-12);
        // recall 50/60 vs 30/60
        assert!((d.recall.unwrap() - (20.0 / 60.0)).abs() < 1e-12);
        let text = render_comparison(&r);
        assert!(text.contains("-20"), "{text}");
        assert!(text.contains("+5.00%"), "{text}");
    }

    #[test]
    fn compare_rejects_size_mismatch() {
        let a = ConfusionMatrix {
            tp: 1,
            ..Default::default()
        };
        let b = ConfusionMatrix {
            tp: 1,
            tn: 1,
            ..Default::default()
        };
        assert!(matches!(
            compare_report(&a, &b),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn percentages_have_two_decimals() {
        assert_eq!(percent(Some(0.5975)), "59.75%");
        assert_eq!(percent(Some(1.0)), "100.00%");
        assert_eq!(percent(None), "n/a");
        let (pred, truth) = ten_pixel_fixture();
        let text = render_report(&evaluate(&pred, &truth).unwrap());
        assert!(text.contains("80.00%"));
        assert!(text.contains("75.00%"));
    }
}
