//! Row-major grid types shared by the whole pipeline.
//!
//! Every raster is a [`Grid`] of some pixel type with a top-left origin.
//! Constructors reject zero-sized grids and buffers whose length does not
//! match `width * height`, so a `Grid` in hand always satisfies both.

mod io;

pub use io::{
    read_band, read_labels, read_pgm, read_pgm_mask, read_ppm, write_band, write_labels, write_pgm,
    write_pgm_mask, write_ppm, BRF_MAGIC, DTYPE_F32, DTYPE_U16,
};

use crate::error::{Error, Result};

/// A dense `width x height` grid stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grid<T> {
    width: usize,
    height: usize,
    data: Vec<T>,
}

/// An 8-bit RGB pixel, `[r, g, b]`.
pub type Rgb = [u8; 3];

pub type RgbImage = Grid<Rgb>;
pub type GrayImage = Grid<u8>;
pub type BinaryMask = Grid<bool>;
pub type LabelRaster = Grid<u16>;
/// Float grid without a finiteness guarantee; NDVI output lives here.
pub type FloatRaster = Grid<f32>;

fn check_dims(width: usize, height: usize) -> Result<usize> {
    if width == 0 || height == 0 {
        return Err(Error::Dimensions {
            width,
            height,
            reason: "width and height must be positive",
        });
    }
    width.checked_mul(height).ok_or(Error::Dimensions {
        width,
        height,
        reason: "pixel count overflows",
    })
}

impl<T> Grid<T> {
    pub fn from_vec(width: usize, height: usize, data: Vec<T>) -> Result<Self> {
        let expected = check_dims(width, height)?;
        if data.len() != expected {
            return Err(Error::Truncated {
                expected,
                found: data.len(),
            });
        }
        Ok(Grid {
            width,
            height,
            data,
        })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> T,
    ) -> Result<Self> {
        check_dims(width, height)?;
        let mut data = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                data.push(f(row, col));
            }
        }
        Ok(Grid {
            width,
            height,
            data,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// Always false; grids are never empty. Present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.data[row * self.width..(row + 1) * self.width]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, T> {
        self.data.chunks_exact(self.width)
    }

    /// Returns `Err(Error::Shape)` unless `other` has the same dimensions.
    pub fn ensure_same_shape<U>(&self, other: &Grid<U>) -> Result<()> {
        if self.dims() == other.dims() {
            Ok(())
        } else {
            Err(Error::shape(self.dims(), other.dims()))
        }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Grid<U> {
        Grid {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Pixelwise combination of two equally sized grids.
    pub fn zip_map<U, V>(
        &self,
        other: &Grid<U>,
        mut f: impl FnMut(&T, &U) -> V,
    ) -> Result<Grid<V>> {
        self.ensure_same_shape(other)?;
        Ok(Grid {
            width: self.width,
            height: self.height,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }
}

impl<T: Copy> Grid<T> {
    pub fn filled(width: usize, height: usize, value: T) -> Result<Self> {
        let n = check_dims(width, height)?;
        Ok(Grid {
            width,
            height,
            data: vec![value; n],
        })
    }

    /// Pixel at `(row, col)`. Panics when out of range.
    pub fn get(&self, row: usize, col: usize) -> T {
        assert!(
            row < self.height && col < self.width,
            "pixel ({row}, {col}) out of range"
        );
        self.data[row * self.width + col]
    }
}

impl BinaryMask {
    pub fn count_true(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    /// True when every set pixel of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &BinaryMask) -> bool {
        self.dims() == other.dims() && self.data.iter().zip(&other.data).all(|(&a, &b)| !a || b)
    }
}

/// A single spectral band of surface reflectance.
///
/// Values are guaranteed finite. They are not restricted to `[0, 1]`:
/// processed products can exceed 1.0, and clamping happens only where the
/// band is quantized.
#[derive(Debug, Clone, PartialEq)]
pub struct BandRaster(Grid<f32>);

impl BandRaster {
    pub fn new(width: usize, height: usize, values: Vec<f32>) -> Result<Self> {
        Self::from_grid(Grid::from_vec(width, height, values)?)
    }

    pub fn from_grid(grid: Grid<f32>) -> Result<Self> {
        if let Some((index, &value)) = grid.data.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(BandRaster(grid))
    }

    pub fn filled(width: usize, height: usize, value: f32) -> Result<Self> {
        Self::from_grid(Grid::filled(width, height, value)?)
    }

    pub fn grid(&self) -> &Grid<f32> {
        &self.0
    }

    pub fn into_grid(self) -> Grid<f32> {
        self.0
    }

    pub fn width(&self) -> usize {
        self.0.width
    }

    pub fn height(&self) -> usize {
        self.0.height
    }

    pub fn dims(&self) -> (usize, usize) {
        self.0.dims()
    }

    pub fn as_slice(&self) -> &[f32] {
        &self.0.data
    }

    pub fn ensure_same_shape(&self, other: &BandRaster) -> Result<()> {
        self.0.ensure_same_shape(&other.0)
    }
}
