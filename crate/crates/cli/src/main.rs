//! `forestmask` command-line tool.
//!
//! Exit codes: 0 on success, 1 on internal failure (for example an output
//! that cannot be written), 2 on bad user input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod classify;
mod evaluate;
mod failure;
mod prepare_gt;
mod synth;

use failure::Failure;

#[derive(Debug, Parser)]
#[command(
    name = "forestmask",
    version,
    about = "Forest / non-forest classification of satellite bands"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a scene from its B2, B3, B4 and B8 bands.
    Classify(ClassifyArgs),
    /// Pad, crop and resize a land-cover label raster to the target scene.
    PrepareGt(PrepareGtArgs),
    /// Score one or two predicted masks against reference labels.
    Evaluate(EvaluateArgs),
    /// Write a seeded synthetic scene with known truth.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Blue band (BRF).
    #[arg(long)]
    pub b2: PathBuf,
    /// Green band (BRF).
    #[arg(long)]
    pub b3: PathBuf,
    /// Red band (BRF).
    #[arg(long)]
    pub b4: PathBuf,
    /// Near-infrared band (BRF).
    #[arg(long)]
    pub b8: PathBuf,
    /// Forest mask output (PGM).
    #[arg(long)]
    pub out_mask: PathBuf,
    /// Red overlay output (PPM).
    #[arg(long)]
    pub out_overlay: PathBuf,
    /// Optional pixel-count summary (JSON).
    #[arg(long)]
    pub json_out: Option<PathBuf>,
    #[arg(long, default_value_t = forestmask_core::texture::DEFAULT_TEXTURE_THRESHOLD)]
    pub texture_threshold: u8,
    #[arg(long, default_value_t = forestmask_core::spectral::DEFAULT_NDVI_THRESHOLD)]
    pub ndvi_threshold: f32,
}

#[derive(Debug, Args)]
pub struct PrepareGtArgs {
    /// Class-index raster covering the tile (BRF, u16).
    #[arg(long)]
    pub labels: PathBuf,
    /// Legend JSON.
    #[arg(long)]
    pub legend: PathBuf,
    /// Side of the full satellite tile in pixels.
    #[arg(long, default_value_t = forestmask_core::groundtruth::DEFAULT_TILE_SIDE)]
    pub tile_side: usize,
    /// Top-left corner of the scene inside the tile, as `row,col`.
    #[arg(long, value_parser = prepare_gt::parse_origin)]
    pub scene_origin: (usize, usize),
    /// Side of the scene in tile pixels.
    #[arg(long, default_value_t = forestmask_core::groundtruth::DEFAULT_SCENE_SIDE)]
    pub scene_side: usize,
    /// Side of the resized output; defaults to the scene side.
    #[arg(long)]
    pub out_side: Option<usize>,
    /// Class index used for padding; defaults to the lowest ignore class.
    #[arg(long)]
    pub fill: Option<u16>,
    /// Resized label raster output (BRF, u16).
    #[arg(long)]
    pub out: PathBuf,
    /// Optional output for the cropped scene before resizing (BRF, u16).
    #[arg(long)]
    pub scene_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Predicted forest mask (PGM, nonzero = forest).
    #[arg(long)]
    pub pred: PathBuf,
    /// Second prediction to compare against the first (PGM).
    #[arg(long)]
    pub pred_b: Option<PathBuf>,
    /// Reference class-index raster (BRF, u16).
    #[arg(long)]
    pub truth: PathBuf,
    /// Legend JSON.
    #[arg(long)]
    pub legend: PathBuf,
    /// Metrics output (JSON).
    #[arg(long)]
    pub json_out: PathBuf,
    /// Ignore pixels within this many pixels of a class change.
    #[arg(long, default_value_t = 0)]
    pub exclude_boundary: usize,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 500)]
    pub side: usize,
    #[arg(long, default_value_t = 0.5)]
    pub forest_fraction: f64,
    /// Directory receiving b2/b3/b4/b8.brf, truth.brf and legend.json.
    #[arg(long)]
    pub out_dir: PathBuf,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify(args) => classify::run(&args),
        Command::PrepareGt(args) => prepare_gt::run(&args),
        Command::Evaluate(args) => evaluate::run(&args),
        Command::Synth(args) => synth::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error());
            ExitCode::from(failure.code())
        }
    }
}
