use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use forestmask_bench::scene;
use forestmask_core::ingest::{compose_rgb, to_gray};
use forestmask_core::spectral::ndvi;
use forestmask_core::texture::{close5, laplacian5, texture_mask};
use forestmask_core::{classify_scene, SceneBands, Thresholds};

fn stages(c: &mut Criterion) {
    let s = scene(500);
    let rgb = compose_rgb(&s.blue, &s.green, &s.red).unwrap();
    let gray = to_gray(&rgb);
    let edges = laplacian5(&gray);

    let mut group = c.benchmark_group("stages_500");
    group.bench_function("compose_rgb", |b| {
        b.iter(|| compose_rgb(black_box(&s.blue), &s.green, &s.red).unwrap())
    });
    group.bench_function("to_gray", |b| b.iter(|| to_gray(black_box(&rgb))));
    group.bench_function("laplacian5", |b| b.iter(|| laplacian5(black_box(&gray))));
    group.bench_function("close5", |b| b.iter(|| close5(black_box(&edges))));
    group.bench_function("texture_mask", |b| b.iter(|| texture_mask(black_box(&rgb))));
    group.bench_function("ndvi", |b| {
        b.iter(|| ndvi(black_box(&s.nir), &s.red).unwrap())
    });
    group.finish();
}

fn full_pipeline(c: &mut Criterion) {
    let s = scene(500);
    c.bench_function("classify_scene_500", |b| {
        b.iter(|| {
            classify_scene(
                black_box(SceneBands {
                    blue: &s.blue,
                    green: &s.green,
                    red: &s.red,
                    nir: &s.nir,
                }),
                Thresholds::default(),
            )
            .unwrap()
        })
    });
}

criterion_group!(benches, stages, full_pipeline);
criterion_main!(benches);
