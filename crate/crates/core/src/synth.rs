//! Seeded synthetic scenes whose truth is known by construction.
//!
//! Forest occupies the leftmost columns and carries per-pixel luminance
//! noise with strong near-infrared. The remaining columns are smooth grass
//! (equally strong near-infrared, no texture) above open water (red
//! exceeds near-infrared). Grass therefore only fails the texture gate and
//! water fails both gates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groundtruth::{Group, Legend};
use crate::raster::{BandRaster, Grid, LabelRaster};

pub const CLASS_OTHER: u16 = 0;
pub const CLASS_FOREST: u16 = 1;
pub const CLASS_GRASS: u16 = 2;
pub const CLASS_WATER: u16 = 3;

/// Fraction of the non-forest columns' rows given to grass; water fills the rest.
const GRASS_ROW_FRACTION: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthParams {
    pub seed: u64,
    pub side: usize,
    pub forest_fraction: f64,
}

impl Default for SynthParams {
    fn default() -> Self {
        SynthParams {
            seed: 0,
            side: 500,
            forest_fraction: 0.5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticScene {
    pub blue: BandRaster,
    pub green: BandRaster,
    pub red: BandRaster,
    pub nir: BandRaster,
    pub labels: LabelRaster,
    pub legend: Legend,
}

/// Reflectance of one pixel as `[blue, green, red, nir]`.
fn reflectance(class: u16, u: f32) -> [f32; 4] {
    match class {
        CLASS_FOREST => [
            0.01 + 0.05 * u,
            0.03 + 0.50 * u,
            0.01 + 0.05 * u,
            0.35 + 0.15 * u,
        ],
        CLASS_GRASS => [0.04, 0.12, 0.05, 0.30],
        _ => [0.05, 0.04, 0.03, 0.01],
    }
}

pub fn synth_legend() -> Legend {
    let mut legend = Legend::new();
    for (index, name, group) in [
        (CLASS_OTHER, "Other", Group::Ignore),
        (CLASS_FOREST, "Mixed Treed", Group::Forest),
        (CLASS_GRASS, "Grass / Meadow", Group::Nonforest),
        (CLASS_WATER, "Open Water", Group::Nonforest),
    ] {
        legend
            .insert(index, name, group)
            .expect("indices are distinct");
    }
    legend
}

pub fn scene_labels(side: usize, forest_fraction: f64) -> Result<LabelRaster> {
    if !(0.0..=1.0).contains(&forest_fraction) {
        return Err(Error::Bounds(format!(
            "forest fraction {forest_fraction} outside [0, 1]"
        )));
    }
    let forest_cols = (forest_fraction * side as f64).round() as usize;
    let grass_rows = (GRASS_ROW_FRACTION * side as f64).round() as usize;
    Grid::from_fn(side, side, |r, c| {
        if c < forest_cols {
            CLASS_FOREST
        } else if r < grass_rows {
            CLASS_GRASS
        } else {
            CLASS_WATER
        }
    })
}

pub fn generate(params: &SynthParams) -> Result<SyntheticScene> {
    let labels = scene_labels(params.side, params.forest_fraction)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = labels.len();
    let mut bands: [Vec<f32>; 4] = std::array::from_fn(|_| Vec::with_capacity(n));
    for &class in labels.as_slice() {
        let u: f32 = rng.gen();
        for (band, value) in bands.iter_mut().zip(reflectance(class, u)) {
            band.push(value);
        }
    }
    let [blue, green, red, nir] =
        bands.map(|values| BandRaster::new(params.side, params.side, values));
    Ok(SyntheticScene {
        blue: blue?,
        green: green?,
        red: red?,
        nir: nir?,
        labels,
        legend: synth_legend(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::ndvi_value;

    #[test]
    fn same_seed_same_scene() {
        let p = SynthParams {
            seed: 42,
            side: 64,
            forest_fraction: 0.4,
        };
        let a = generate(&p).unwrap();
        let b = generate(&p).unwrap();
        assert_eq!(a.green, b.green);
        assert_eq!(a.labels, b.labels);
        let c = generate(&SynthParams { seed: 43, ..p }).unwrap();
        assert_ne!(a.green, c.green);
    }

    #[test]
    fn zero_fraction_has_no_forest() {
        let s = generate(&SynthParams {
            seed: 1,
            side: 32,
            forest_fraction: 0.0,
        })
        .unwrap();
        assert!(s.labels.as_slice().iter().all(|&c| c != CLASS_FOREST));
    }

    #[test]
    fn fraction_out_of_range() {
        assert!(generate(&SynthParams {
            seed: 1,
            side: 8,
            forest_fraction: 1.5
        })
        .is_err());
    }

    #[test]
    fn ndvi_levels_by_class() {
        for u in [0.0f32, 0.5, 0.999] {
            let [_, _, r, n] = reflectance(CLASS_FOREST, u);
            assert!(ndvi_value(n, r) > 0.7);
        }
        let [_, _, r, n] = reflectance(CLASS_GRASS, 0.3);
        assert!(ndvi_value(n, r) > 0.7);
        let [_, _, r, n] = reflectance(CLASS_WATER, 0.3);
        assert!(ndvi_value(n, r) < 0.0);
    }
}
