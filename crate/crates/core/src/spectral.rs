//! NDVI and the vegetation mask.

use crate::error::Result;
use crate::raster::{BandRaster, BinaryMask, FloatRaster};

/// Default NDVI level a pixel must exceed to count as vegetation.
pub const DEFAULT_NDVI_THRESHOLD: f32 = 0.5;

/// `(nir - red) / (nir + red)`, with a zero denominator mapped to 0.
///
/// The result is clamped to `[-1, 1]`; that only bites when a band carries
/// negative reflectance or the arithmetic overflows.
pub fn ndvi_value(nir: f32, red: f32) -> f32 {
    let sum = nir + red;
    if sum == 0.0 {
        return 0.0;
    }
    let v = (nir - red) / sum;
    if v.is_nan() {
        0.0
    } else {
        v.clamp(-1.0, 1.0)
    }
}

pub fn ndvi(b8: &BandRaster, b4: &BandRaster) -> Result<FloatRaster> {
    b8.grid()
        .zip_map(b4.grid(), |&nir, &red| ndvi_value(nir, red))
}

/// `value > threshold`, strictly.
pub fn vegetation_mask(ndvi: &FloatRaster, threshold: f32) -> BinaryMask {
    ndvi.map(|&v| v > threshold)
}
