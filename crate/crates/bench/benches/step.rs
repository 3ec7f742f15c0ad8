use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use pathramsey_core::pipeline::{run_step, ColouringSpec, StepConfig};

fn toy_steps(c: &mut Criterion) {
    let mut group = c.benchmark_group("toy step");
    group.sample_size(20);
    for (name, colouring) in [
        ("monochromatic", ColouringSpec::Monochromatic { colour: 1 }),
        ("adversarial", ColouringSpec::Adversarial { seed: 3 }),
    ] {
        let cfg = StepConfig::toy(colouring, 3);
        group.bench_function(name, |b| b.iter(|| run_step(black_box(&cfg)).is_ok()));
    }
    group.finish();
}

criterion_group!(benches, toy_steps);
criterion_main!(benches);
