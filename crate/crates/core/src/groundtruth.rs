//! Reference label preparation.
//!
//! A land-cover class raster covering the whole satellite tile is padded on
//! the left to a square, the target scene is cut out by scaling its
//! position and size from tile pixels to label pixels, and the cut-out is
//! upsampled with nearest-neighbour to the scene resolution. A legend then
//! maps each class index to forest, non-forest or ignore.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::{BinaryMask, Grid, LabelRaster};

/// Full width of a 10 m Sentinel-2 tile, in pixels.
pub const DEFAULT_TILE_SIDE: usize = 10_980;
pub const DEFAULT_SCENE_SIDE: usize = 500;

pub const FOREST_CLASS_NAMES: [&str; 7] = [
    "Sparse Treed",
    "Treed Upland",
    "Deciduous Treed",
    "Mixed Treed",
    "Coniferous Treed",
    "Plantations - Treed Cultivated",
    "Tallgrass Woodland",
];

pub const IGNORED_CLASS_NAMES: [&str; 3] = ["Other", "Cloud/Shadow", "Disturbance"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Forest,
    Nonforest,
    Ignore,
}

impl Group {
    /// Grouping of the provincial land-cover class names; unknown names are
    /// non-forest.
    pub fn for_class_name(name: &str) -> Group {
        if FOREST_CLASS_NAMES.contains(&name) {
            Group::Forest
        } else if IGNORED_CLASS_NAMES.contains(&name) {
            Group::Ignore
        } else {
            Group::Nonforest
        }
    }
}

pub type TruthRaster = Grid<Group>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegendEntry {
    pub name: String,
    pub group: Group,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Legend {
    entries: BTreeMap<u16, LegendEntry>,
}

#[derive(Serialize, Deserialize)]
struct LegendFile {
    classes: Vec<LegendClass>,
}

#[derive(Serialize, Deserialize)]
struct LegendClass {
    index: u16,
    name: String,
    group: Group,
}

impl Legend {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a legend from `(index, name)` pairs, grouping each name with
    /// [`Group::for_class_name`].
    pub fn with_default_groups<S: Into<String>>(
        classes: impl IntoIterator<Item = (u16, S)>,
    ) -> Result<Self> {
        let mut legend = Legend::new();
        for (index, name) in classes {
            let name = name.into();
            let group = Group::for_class_name(&name);
            legend.insert(index, name, group)?;
        }
        Ok(legend)
    }

    pub fn insert(&mut self, index: u16, name: impl Into<String>, group: Group) -> Result<()> {
        if self.entries.contains_key(&index) {
            return Err(Error::Legend(format!("duplicate class index {index}")));
        }
        self.entries.insert(
            index,
            LegendEntry {
                name: name.into(),
                group,
            },
        );
        Ok(())
    }

    pub fn get(&self, index: u16) -> Option<&LegendEntry> {
        self.entries.get(&index)
    }

    pub fn group(&self, index: u16) -> Result<Group> {
        self.get(index)
            .map(|e| e.group)
            .ok_or(Error::LegendCoverage(index))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u16, &LegendEntry)> {
        self.entries.iter().map(|(&i, e)| (i, e))
    }

    /// Lowest class index grouped as ignore, the natural padding fill.
    pub fn first_ignore_index(&self) -> Option<u16> {
        self.iter()
            .find(|(_, e)| e.group == Group::Ignore)
            .map(|(i, _)| i)
    }

    pub fn from_json_str(json: &str) -> Result<Self> {
        let file: LegendFile =
            serde_json::from_str(json).map_err(|e| Error::Legend(e.to_string()))?;
        let mut legend = Legend::new();
        for class in file.classes {
            legend.insert(class.index, class.name, class.group)?;
        }
        Ok(legend)
    }

    pub fn to_json_string(&self) -> String {
        let file = LegendFile {
            classes: self
                .iter()
                .map(|(index, e)| LegendClass {
                    index,
                    name: e.name.clone(),
                    group: e.group,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("legend serializes")
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(&text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut text = self.to_json_string();
        text.push('\n');
        fs::write(path, text).map_err(|e| Error::io(path, e))
    }
}

/// Placement of the target scene inside the full satellite tile, in tile
/// pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SceneSpec {
    pub tile_side: usize,
    pub origin_row: usize,
    pub origin_col: usize,
    pub scene_side: usize,
}

impl SceneSpec {
    pub fn new(tile_side: usize, origin: (usize, usize), scene_side: usize) -> Result<Self> {
        let spec = SceneSpec {
            tile_side,
            origin_row: origin.0,
            origin_col: origin.1,
            scene_side,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.tile_side == 0 || self.scene_side == 0 {
            return Err(Error::Bounds(
                "tile and scene sides must be positive".into(),
            ));
        }
        let fits = |o: usize| {
            o.checked_add(self.scene_side)
                .is_some_and(|end| end <= self.tile_side)
        };
        if !fits(self.origin_row) || !fits(self.origin_col) {
            return Err(Error::Bounds(format!(
                "scene at ({}, {}) of side {} exceeds tile side {}",
                self.origin_row, self.origin_col, self.scene_side, self.tile_side
            )));
        }
        Ok(())
    }

    /// The scene rectangle expressed in pixels of a square label raster of
    /// side `label_side`.
    pub fn scaled_to(&self, label_side: usize) -> Result<CropRegion> {
        self.validate()?;
        let scale = |v: usize| (v as u128 * label_side as u128 / self.tile_side as u128) as usize;
        let region = CropRegion {
            row: scale(self.origin_row),
            col: scale(self.origin_col),
            side: scale(self.scene_side),
        };
        if region.side == 0 {
            return Err(Error::Bounds(format!(
                "scene of side {} maps to zero label pixels at label side {label_side}",
                self.scene_side
            )));
        }
        if region.row + region.side > label_side || region.col + region.side > label_side {
            return Err(Error::Bounds(format!(
                "crop {region:?} exceeds label raster side {label_side}"
            )));
        }
        Ok(region)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CropRegion {
    pub row: usize,
    pub col: usize,
    pub side: usize,
}

/// Adds `height - width` columns of `fill` on the left to make a square.
pub fn pad_left_to_square(labels: &LabelRaster, fill: u16) -> Result<LabelRaster> {
    let (width, height) = labels.dims();
    if width > height {
        return Err(Error::UnsupportedShape {
            width,
            height,
            reason: "padding only adds columns on the left; width exceeds height",
        });
    }
    let pad = height - width;
    Grid::from_fn(height, height, |r, c| {
        if c < pad {
            fill
        } else {
            labels.get(r, c - pad)
        }
    })
}

pub fn crop_scene(square: &LabelRaster, spec: &SceneSpec) -> Result<LabelRaster> {
    let (width, height) = square.dims();
    if width != height {
        return Err(Error::UnsupportedShape {
            width,
            height,
            reason: "scene crop expects a square label raster",
        });
    }
    let region = spec.scaled_to(width)?;
    Grid::from_fn(region.side, region.side, |r, c| {
        square.get(region.row + r, region.col + c)
    })
}

/// Nearest-neighbour resample of a square raster: output `(r, c)` takes
/// input `(floor(r * in / out), floor(c * in / out))`.
pub fn resize_nearest(labels: &LabelRaster, out_side: usize) -> Result<LabelRaster> {
    let (width, height) = labels.dims();
    if width != height {
        return Err(Error::UnsupportedShape {
            width,
            height,
            reason: "nearest-neighbour resize expects a square label raster",
        });
    }
    let source: Vec<usize> = (0..out_side).map(|i| i * width / out_side).collect();
    Grid::from_fn(out_side, out_side, |r, c| labels.get(source[r], source[c]))
}

pub fn to_truth(labels: &LabelRaster, legend: &Legend) -> Result<TruthRaster> {
    let cells = labels
        .as_slice()
        .iter()
        .map(|&i| legend.group(i))
        .collect::<Result<Vec<_>>>()?;
    Grid::from_vec(labels.width(), labels.height(), cells)
}

/// Pixels within `radius` (Chebyshev) of a pixel with a different class.
pub fn boundary_band(labels: &LabelRaster, radius: usize) -> BinaryMask {
    let (w, h) = labels.dims();
    let near = |grid: &dyn Fn(usize, usize) -> bool, r: usize, c: usize| {
        (r.saturating_sub(1)..=(r + 1).min(h - 1))
            .any(|rr| (c.saturating_sub(1)..=(c + 1).min(w - 1)).any(|cc| grid(rr, cc)))
    };
    let edge = Grid::from_fn(w, h, |r, c| {
        let here = labels.get(r, c);
        near(&|rr, cc| labels.get(rr, cc) != here, r, c)
    })
    .expect("dimensions come from a valid raster");
    if radius == 0 {
        return edge.map(|_| false);
    }
    // Edge pixels are at distance 1; each growth step adds one more.
    let mut band = edge;
    for _ in 1..radius {
        let prev = band;
        band = Grid::from_fn(w, h, |r, c| near(&|rr, cc| prev.get(rr, cc), r, c))
            .expect("dimensions come from a valid raster");
    }
    band
}

/// Marks every pixel set in `mask` as ignored.
pub fn ignore_where(truth: &TruthRaster, mask: &BinaryMask) -> Result<TruthRaster> {
    truth.zip_map(mask, |&g, &m| if m { Group::Ignore } else { g })
}

/// Intermediate and final rasters of one preparation run.
#[derive(Debug, Clone)]
pub struct PreparedTruth {
    pub padded_side: usize,
    pub crop: CropRegion,
    pub scene: LabelRaster,
    pub resized: LabelRaster,
}

/// Pad, crop and resize in one go, checking legend coverage of the result.
pub fn prepare_ground_truth(
    labels: &LabelRaster,
    legend: &Legend,
    spec: &SceneSpec,
    fill: u16,
    out_side: usize,
) -> Result<PreparedTruth> {
    legend.group(fill)?;
    let padded = pad_left_to_square(labels, fill)?;
    let crop = spec.scaled_to(padded.width())?;
    let scene = crop_scene(&padded, spec)?;
    let resized = resize_nearest(&scene, out_side)?;
    to_truth(&resized, legend)?;
    Ok(PreparedTruth {
        padded_side: padded.width(),
        crop,
        scene,
        resized,
    })
}
