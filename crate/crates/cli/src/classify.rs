use std::fs;
use std::path::Path;

use forestmask_core::raster::{read_band, write_pgm_mask, write_ppm};
use forestmask_core::{classify_scene, BandRaster, SceneBands, Thresholds};
use serde::Serialize;

use crate::failure::{Failure, ResultExt};
use crate::ClassifyArgs;

#[derive(Debug, Serialize)]
struct ClassifySummary {
    width: usize,
    height: usize,
    texture_threshold: u8,
    ndvi_threshold: f32,
    forest: usize,
    nonforest: usize,
    textured: usize,
    vegetated: usize,
}

fn load(path: &Path) -> Result<BandRaster, Failure> {
    read_band(path).input(|| format!("reading band {}", path.display()))
}

pub fn run(args: &ClassifyArgs) -> Result<(), Failure> {
    let blue = load(&args.b2)?;
    let green = load(&args.b3)?;
    let red = load(&args.b4)?;
    let nir = load(&args.b8)?;
    let thresholds = Thresholds {
        texture: args.texture_threshold,
        ndvi: args.ndvi_threshold,
    };
    let result = classify_scene(
        SceneBands {
            blue: &blue,
            green: &green,
            red: &red,
            nir: &nir,
        },
        thresholds,
    )
    .input(|| "bands must share one size".to_string())?;

    write_pgm_mask(&result.forest, &args.out_mask)
        .internal(|| format!("writing mask {}", args.out_mask.display()))?;
    write_ppm(&result.overlay, &args.out_overlay)
        .internal(|| format!("writing overlay {}", args.out_overlay.display()))?;

    let forest = result.forest.count_true();
    let summary = ClassifySummary {
        width: result.forest.width(),
        height: result.forest.height(),
        texture_threshold: thresholds.texture,
        ndvi_threshold: thresholds.ndvi,
        forest,
        nonforest: result.forest.len() - forest,
        textured: result.texture.count_true(),
        vegetated: result.vegetation.count_true(),
    };
    println!("forest      {:>10}", summary.forest);
    println!("non-forest  {:>10}", summary.nonforest);
    println!("textured    {:>10}", summary.textured);
    println!("vegetated   {:>10}", summary.vegetated);

    if let Some(path) = &args.json_out {
        let mut json = serde_json::to_string_pretty(&summary).expect("summary serializes");
        json.push('\n');
        fs::write(path, json).internal(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}
