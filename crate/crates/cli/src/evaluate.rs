use std::fs;
use std::path::Path;

use forestmask_core::eval::{
    compare_report, confusion, render_comparison, render_report, EvaluationReport,
};
use forestmask_core::groundtruth::{boundary_band, ignore_where, to_truth, Legend, TruthRaster};
use forestmask_core::raster::{read_labels, read_pgm_mask};
use forestmask_core::{BinaryMask, ConfusionMatrix};

use crate::failure::{Failure, ResultExt};
use crate::EvaluateArgs;

fn load_mask(path: &Path) -> Result<BinaryMask, Failure> {
    read_pgm_mask(path).input(|| format!("reading mask {}", path.display()))
}

fn score(pred: &BinaryMask, truth: &TruthRaster, path: &Path) -> Result<ConfusionMatrix, Failure> {
    confusion(pred, truth).input(|| format!("comparing {} with the reference", path.display()))
}

pub fn run(args: &EvaluateArgs) -> Result<(), Failure> {
    let labels =
        read_labels(&args.truth).input(|| format!("reading labels {}", args.truth.display()))?;
    let legend =
        Legend::read(&args.legend).input(|| format!("reading legend {}", args.legend.display()))?;
    let mut truth = to_truth(&labels, &legend).input(|| "mapping labels to truth".to_string())?;
    if args.exclude_boundary > 0 {
        truth = ignore_where(&truth, &boundary_band(&labels, args.exclude_boundary))
            .expect("band has the label raster's shape");
    }

    let cm_a = score(&load_mask(&args.pred)?, &truth, &args.pred)?;
    let (json, text) = match &args.pred_b {
        None => {
            let report = EvaluationReport::new(cm_a).input(|| "scoring prediction".to_string())?;
            (report.to_json(), render_report(&report))
        }
        Some(path_b) => {
            let cm_b = score(&load_mask(path_b)?, &truth, path_b)?;
            let report =
                compare_report(&cm_a, &cm_b).input(|| "comparing predictions".to_string())?;
            (report.to_json(), render_comparison(&report))
        }
    };
    print!("{text}");
    fs::write(&args.json_out, json + "\n")
        .internal(|| format!("writing {}", args.json_out.display()))?;
    Ok(())
}
