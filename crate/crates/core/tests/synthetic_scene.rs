use forestmask_core::eval::evaluate;
use forestmask_core::groundtruth::{boundary_band, ignore_where, to_truth};
use forestmask_core::synth::{generate, SynthParams, CLASS_FOREST, CLASS_GRASS, CLASS_WATER};
use forestmask_core::{classify_scene, SceneBands, Thresholds};

fn run(
    seed: u64,
    fraction: f64,
) -> (
    forestmask_core::synth::SyntheticScene,
    forestmask_core::Classification,
) {
    let scene = generate(&SynthParams {
        seed,
        side: 500,
        forest_fraction: fraction,
    })
    .unwrap();
    let c = classify_scene(
        SceneBands {
            blue: &scene.blue,
            green: &scene.green,
            red: &scene.red,
            nir: &scene.nir,
        },
        Thresholds::default(),
    )
    .unwrap();
    (scene, c)
}

#[test]
fn constructed_scene_is_recovered() {
    for seed in [1, 2, 24, 25] {
        let (scene, c) = run(seed, 0.5);
        let band = boundary_band(&scene.labels, 4);
        let truth = ignore_where(&to_truth(&scene.labels, &scene.legend).unwrap(), &band).unwrap();
        let report = evaluate(&c.forest, &truth).unwrap();
        assert!(report.metrics.accuracy >= 0.99, "seed {seed}: {report:?}");

        for (i, &class) in scene.labels.as_slice().iter().enumerate() {
            let (r, col) = (i / 500, i % 500);
            let off_frame = r >= 4 && col >= 4 && r < 496 && col < 496;
            let interior = !band.as_slice()[i] && off_frame;
            match class {
                CLASS_WATER => {
                    assert!(!c.forest.as_slice()[i]);
                    assert!(!c.vegetation.as_slice()[i]);
                    if interior {
                        assert!(!c.texture.as_slice()[i]);
                    }
                }
                CLASS_GRASS if interior => {
                    assert!(c.vegetation.as_slice()[i]);
                    assert!(!c.texture.as_slice()[i]);
                }
                CLASS_FOREST if interior => assert!(c.forest.as_slice()[i]),
                _ => {}
            }
        }
    }
}

#[test]
fn all_forest_and_no_forest_scenes() {
    let (_, c) = run(5, 1.0);
    assert_eq!(c.forest.count_true(), 500 * 500);
    let (_, c) = run(5, 0.0);
    assert_eq!(c.forest.count_true(), 0);
}

#[test]
fn raising_thresholds_never_grows_forest() {
    let scene = generate(&SynthParams {
        seed: 9,
        side: 96,
        forest_fraction: 0.5,
    })
    .unwrap();
    let bands = SceneBands {
        blue: &scene.blue,
        green: &scene.green,
        red: &scene.red,
        nir: &scene.nir,
    };
    let mut prev: Option<forestmask_core::BinaryMask> = None;
    for texture in [0u8, 64, 128, 255] {
        let forest = classify_scene(bands, Thresholds { texture, ndvi: 0.5 })
            .unwrap()
            .forest;
        if let Some(p) = &prev {
            assert!(forest.is_subset_of(p));
        }
        prev = Some(forest);
    }
    assert_eq!(prev.unwrap().count_true(), 0);
    let mut prev: Option<forestmask_core::BinaryMask> = None;
    for ndvi in [-1.0f32, 0.0, 0.5, 0.8, 1.0] {
        let forest = classify_scene(bands, Thresholds { texture: 64, ndvi })
            .unwrap()
            .forest;
        if let Some(p) = &prev {
            assert!(forest.is_subset_of(p));
        }
        prev = Some(forest);
    }
}
