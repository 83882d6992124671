//! Texture mask: 5-aperture Laplacian, 5x5 grayscale closing, threshold.
//!
//! The Laplacian is the second-derivative operator used by common vision
//! libraries for aperture 5: `K = s (x) d + d (x) s` with smoothing taps
//! `s = [1, 4, 6, 4, 1]` and derivative taps `d = [1, 0, -2, 0, 1]`. Borders
//! mirror about the edge pixel without repeating it (`dcb|abcd|cba`). The
//! signed response saturates into `0..=255`, so negative lobes vanish.
//!
//! Morphology uses a flat 5x5 square; windows are clipped to the image,
//! which is the same as padding with the neutral element of max/min.

use rayon::prelude::*;

use crate::ingest::to_gray;
use crate::raster::{BinaryMask, GrayImage, Grid, RgbImage};

/// Default level a closed edge response must exceed to count as texture.
pub const DEFAULT_TEXTURE_THRESHOLD: u8 = 64;

const SMOOTH_TAPS: [i32; 5] = [1, 4, 6, 4, 1];
const DERIV_TAPS: [i32; 5] = [1, 0, -2, 0, 1];
const APERTURE: usize = 5;
const RADIUS: usize = APERTURE / 2;

/// Square integer convolution kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel2D {
    side: usize,
    weights: Vec<i32>,
}

impl Kernel2D {
    /// Returns `None` unless `side` is odd and `weights.len() == side * side`.
    pub fn new(side: usize, weights: Vec<i32>) -> Option<Self> {
        (side % 2 == 1 && weights.len() == side * side).then_some(Kernel2D { side, weights })
    }

    /// The aperture-5 Laplacian, `s (x) d + d (x) s`.
    pub fn laplacian5() -> Self {
        let mut weights = Vec::with_capacity(APERTURE * APERTURE);
        for i in 0..APERTURE {
            for j in 0..APERTURE {
                weights.push(SMOOTH_TAPS[i] * DERIV_TAPS[j] + DERIV_TAPS[i] * SMOOTH_TAPS[j]);
            }
        }
        Kernel2D {
            side: APERTURE,
            weights,
        }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn weights(&self) -> &[i32] {
        &self.weights
    }

    pub fn sum(&self) -> i64 {
        self.weights.iter().map(|&w| i64::from(w)).sum()
    }
}

/// Mirror an out-of-range index back into `0..n` without repeating the edge.
pub(crate) fn reflect101(mut i: isize, n: usize) -> usize {
    if n == 1 {
        return 0;
    }
    let last = n as isize - 1;
    while i < 0 || i > last {
        if i < 0 {
            i = -i;
        }
        if i > last {
            i = 2 * last - i;
        }
    }
    i as usize
}

fn filter_rows(src: &[i32], width: usize, taps: &[i32; 5]) -> Vec<i32> {
    let mut out = vec![0i32; src.len()];
    out.par_chunks_mut(width)
        .zip(src.par_chunks(width))
        .for_each(|(dst, row)| {
            for (c, d) in dst.iter_mut().enumerate() {
                *d = taps
                    .iter()
                    .enumerate()
                    .map(|(k, &t)| {
                        t * row[reflect101(c as isize + k as isize - RADIUS as isize, width)]
                    })
                    .sum();
            }
        });
    out
}

/// Signed Laplacian response before saturation.
pub fn laplacian5_signed(gray: &GrayImage) -> Grid<i32> {
    let (width, height) = gray.dims();
    let src: Vec<i32> = gray.as_slice().iter().map(|&v| i32::from(v)).collect();
    let deriv_x = filter_rows(&src, width, &DERIV_TAPS);
    let smooth_x = filter_rows(&src, width, &SMOOTH_TAPS);

    let mut out = vec![0i32; src.len()];
    out.par_chunks_mut(width).enumerate().for_each(|(r, dst)| {
        let taps_rows: [usize; APERTURE] =
            std::array::from_fn(|k| reflect101(r as isize + k as isize - RADIUS as isize, height));
        for (c, d) in dst.iter_mut().enumerate() {
            let mut acc = 0;
            for k in 0..APERTURE {
                let idx = taps_rows[k] * width + c;
                acc += SMOOTH_TAPS[k] * deriv_x[idx] + DERIV_TAPS[k] * smooth_x[idx];
            }
            *d = acc;
        }
    });
    Grid::from_vec(width, height, out).expect("dimensions come from a valid image")
}

/// Laplacian edge response saturated to 8 bits.
pub fn laplacian5(gray: &GrayImage) -> GrayImage {
    laplacian5_signed(gray).map(|&v| v.clamp(0, 255) as u8)
}

#[derive(Clone, Copy)]
enum Extremum {
    Max,
    Min,
}

impl Extremum {
    fn pick(self, a: u8, b: u8) -> u8 {
        match self {
            Extremum::Max => a.max(b),
            Extremum::Min => a.min(b),
        }
    }
}

/// Max or min over a clipped `(2r+1) x (2r+1)` window, computed separably.
fn square_extremum(img: &GrayImage, radius: usize, op: Extremum) -> GrayImage {
    let (width, height) = img.dims();
    let src = img.as_slice();

    let mut horiz = vec![0u8; src.len()];
    horiz
        .par_chunks_mut(width)
        .zip(src.par_chunks(width))
        .for_each(|(dst, row)| {
            for (c, d) in dst.iter_mut().enumerate() {
                let lo = c.saturating_sub(radius);
                let hi = (c + radius).min(width - 1);
                *d = row[lo..=hi]
                    .iter()
                    .copied()
                    .reduce(|a, b| op.pick(a, b))
                    .unwrap();
            }
        });

    let mut out = vec![0u8; src.len()];
    out.par_chunks_mut(width).enumerate().for_each(|(r, dst)| {
        let lo = r.saturating_sub(radius);
        let hi = (r + radius).min(height - 1);
        dst.copy_from_slice(&horiz[lo * width..(lo + 1) * width]);
        for rr in lo + 1..=hi {
            for (d, &v) in dst.iter_mut().zip(&horiz[rr * width..(rr + 1) * width]) {
                *d = op.pick(*d, v);
            }
        }
    });
    Grid::from_vec(width, height, out).expect("dimensions come from a valid image")
}

/// Grayscale dilation with a flat 5x5 square.
pub fn dilate5(img: &GrayImage) -> GrayImage {
    square_extremum(img, RADIUS, Extremum::Max)
}

/// Grayscale erosion with a flat 5x5 square.
pub fn erode5(img: &GrayImage) -> GrayImage {
    square_extremum(img, RADIUS, Extremum::Min)
}

/// Morphological closing: dilation followed by erosion.
pub fn close5(img: &GrayImage) -> GrayImage {
    erode5(&dilate5(img))
}

/// `pixel > threshold`, strictly.
pub fn threshold_gt(img: &GrayImage, threshold: u8) -> BinaryMask {
    img.map(|&v| v > threshold)
}

pub fn texture_mask(rgb: &RgbImage) -> BinaryMask {
    texture_mask_with(rgb, DEFAULT_TEXTURE_THRESHOLD)
}

pub fn texture_mask_with(rgb: &RgbImage, threshold: u8) -> BinaryMask {
    threshold_gt(&close5(&laplacian5(&to_gray(rgb))), threshold)
}
