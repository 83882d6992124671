//! Fusion of the texture and vegetation gates into a forest mask.

use crate::error::Result;
use crate::ingest::compose_rgb;
use crate::raster::{BandRaster, BinaryMask, Rgb, RgbImage};
use crate::spectral::{ndvi, vegetation_mask, DEFAULT_NDVI_THRESHOLD};
use crate::texture::{texture_mask_with, DEFAULT_TEXTURE_THRESHOLD};

/// Colour painted over forest pixels.
pub const FOREST_RED: Rgb = [255, 0, 0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Closed edge response must exceed this.
    pub texture: u8,
    /// NDVI must exceed this.
    pub ndvi: f32,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            texture: DEFAULT_TEXTURE_THRESHOLD,
            ndvi: DEFAULT_NDVI_THRESHOLD,
        }
    }
}

/// The four bands the classifier consumes.
#[derive(Debug, Clone, Copy)]
pub struct SceneBands<'a> {
    pub blue: &'a BandRaster,
    pub green: &'a BandRaster,
    pub red: &'a BandRaster,
    pub nir: &'a BandRaster,
}

impl SceneBands<'_> {
    pub fn ensure_consistent(&self) -> Result<()> {
        self.red.ensure_same_shape(self.blue)?;
        self.red.ensure_same_shape(self.green)?;
        self.red.ensure_same_shape(self.nir)
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub composite: RgbImage,
    pub texture: BinaryMask,
    pub vegetation: BinaryMask,
    pub forest: BinaryMask,
    pub overlay: RgbImage,
}

/// Pixelwise AND.
pub fn combine(texture: &BinaryMask, vegetation: &BinaryMask) -> Result<BinaryMask> {
    texture.zip_map(vegetation, |&t, &v| t && v)
}

/// Paints forest pixels pure red and leaves every other pixel untouched.
pub fn overlay(rgb: &RgbImage, forest: &BinaryMask) -> Result<RgbImage> {
    rgb.zip_map(forest, |&px, &f| if f { FOREST_RED } else { px })
}

pub fn classify_scene(bands: SceneBands<'_>, thresholds: Thresholds) -> Result<Classification> {
    bands.ensure_consistent()?;
    let (texture_path, ndvi) = rayon::join(
        || {
            let composite = compose_rgb(bands.blue, bands.green, bands.red)?;
            let texture = texture_mask_with(&composite, thresholds.texture);
            Ok::<_, crate::Error>((composite, texture))
        },
        || ndvi(bands.nir, bands.red),
    );
    let (composite, texture) = texture_path?;
    let vegetation = vegetation_mask(&ndvi?, thresholds.ndvi);
    let forest = combine(&texture, &vegetation)?;
    let overlay = overlay(&composite, &forest)?;
    Ok(Classification {
        composite,
        texture,
        vegetation,
        forest,
        overlay,
    })
}
