//! Forest / non-forest classification of multispectral satellite scenes.
//!
//! A pixel is forest when it is both textured and vegetated:
//!
//! 1. [`ingest`] quantizes the blue, green and red bands into an 8-bit
//!    true-colour composite.
//! 2. [`texture`] turns the composite into a texture mask: grayscale,
//!    aperture-5 Laplacian, 5x5 closing, threshold.
//! 3. [`spectral`] computes NDVI from the near-infrared and red bands and
//!    thresholds it into a vegetation mask.
//! 4. [`classify`] intersects the two masks and paints the result red over
//!    the composite.
//!
//! [`groundtruth`] prepares a land-cover reference raster for the scene and
//! [`eval`] scores a prediction against it. [`synth`] builds scenes whose
//! truth is known by construction.

pub mod classify;
pub mod error;
pub mod eval;
pub mod groundtruth;
pub mod ingest;
pub mod raster;
pub mod spectral;
pub mod synth;
pub mod texture;

pub use classify::{classify_scene, combine, overlay, Classification, SceneBands, Thresholds};
pub use error::{Error, Result};
pub use eval::{
    compare_report, confusion, metrics, ConfusionMatrix, EvaluationReport, MetricsReport,
};
pub use groundtruth::{Group, Legend, SceneSpec, TruthRaster};
pub use raster::{
    BandRaster, BinaryMask, FloatRaster, GrayImage, Grid, LabelRaster, Rgb, RgbImage,
};
