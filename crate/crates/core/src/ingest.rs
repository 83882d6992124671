//! 8-bit composites built from reflectance bands.

use crate::error::Result;
use crate::raster::{BandRaster, GrayImage, Grid, RgbImage};

/// Quantizes reflectance to 8 bits: `floor(clamp(v, 0, 1) * 255)`.
pub fn quantize_reflectance(value: f32) -> u8 {
    (value.clamp(0.0, 1.0) * 255.0).floor() as u8
}

/// Builds the true-color composite with red = B4, green = B3, blue = B2.
pub fn compose_rgb(b2: &BandRaster, b3: &BandRaster, b4: &BandRaster) -> Result<RgbImage> {
    b4.ensure_same_shape(b3)?;
    b4.ensure_same_shape(b2)?;
    let pixels = b4
        .as_slice()
        .iter()
        .zip(b3.as_slice())
        .zip(b2.as_slice())
        .map(|((&r, &g), &b)| {
            [
                quantize_reflectance(r),
                quantize_reflectance(g),
                quantize_reflectance(b),
            ]
        })
        .collect();
    Grid::from_vec(b4.width(), b4.height(), pixels)
}

/// BT.601 luma, rounded half-up. Integer arithmetic keeps it exact.
pub fn luma(rgb: [u8; 3]) -> u8 {
    let [r, g, b] = rgb.map(u32::from);
    ((299 * r + 587 * g + 114 * b + 500) / 1000) as u8
}

pub fn to_gray(rgb: &RgbImage) -> GrayImage {
    rgb.map(|&px| luma(px))
}
