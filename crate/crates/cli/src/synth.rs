use std::fs;

use forestmask_core::raster::{write_band, write_labels};
use forestmask_core::synth::{generate, SynthParams};

use crate::failure::{Failure, ResultExt};
use crate::SynthArgs;

pub fn run(args: &SynthArgs) -> Result<(), Failure> {
    let scene = generate(&SynthParams {
        seed: args.seed,
        side: args.side,
        forest_fraction: args.forest_fraction,
    })
    .input(|| "invalid synthetic scene parameters".to_string())?;

    let dir = &args.out_dir;
    fs::create_dir_all(dir).internal(|| format!("creating {}", dir.display()))?;
    for (name, band) in [
        ("b2.brf", &scene.blue),
        ("b3.brf", &scene.green),
        ("b4.brf", &scene.red),
        ("b8.brf", &scene.nir),
    ] {
        let path = dir.join(name);
        write_band(band, &path).internal(|| format!("writing {}", path.display()))?;
    }
    let truth = dir.join("truth.brf");
    write_labels(&scene.labels, &truth).internal(|| format!("writing {}", truth.display()))?;
    let legend = dir.join("legend.json");
    scene
        .legend
        .write(&legend)
        .internal(|| format!("writing {}", legend.display()))?;

    println!("wrote {0}x{0} scene to {1}", args.side, dir.display());
    Ok(())
}
