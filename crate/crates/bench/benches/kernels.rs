use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use koszul_bench::{dense, field, instance};
use koszul_core::complex::{koszul, KoszulData, Orientation};
use koszul_core::homalg::ext;
use koszul_core::hyper::{hyper_modules, Flavor};
use koszul_core::module::{submodule_gb, FpModule};
use koszul_core::resolution::minimal_free_resolution;

fn linear_algebra(c: &mut Criterion) {
    let f = field();
    for n in [40, 120] {
        let m = dense(n, n, n * 3 / 4);
        c.bench_function(&format!("rank {n}x{n}"), |b| b.iter(|| m.rank(&f)));
        c.bench_function(&format!("kernel {n}x{n}"), |b| b.iter(|| m.kernel(&f)));
    }
}

fn groebner(c: &mut Criterion) {
    for id in ["gor_points", "cube_4"] {
        let inst = instance(id);
        c.bench_function(&format!("gb ideal {id}"), |b| {
            b.iter_batched(
                || FpModule::cyclic(&inst.ring, &inst.ideal).unwrap(),
                |m| submodule_gb(&inst.ring, m.gens(), m.rels()).len(),
                BatchSize::SmallInput,
            )
        });
    }
}

fn resolutions(c: &mut Criterion) {
    for (id, cut) in [("thurs", 6), ("gor_points", 4), ("cube_4", 4)] {
        let inst = instance(id);
        c.bench_function(&format!("resolve k over {id} to {cut}"), |b| {
            b.iter_batched(|| FpModule::residue_field(&inst.ring), |k| minimal_free_resolution(&k, cut), BatchSize::SmallInput)
        });
    }
}

fn koszul_homology(c: &mut Criterion) {
    for id in ["thurs", "cube_4", "gor_points"] {
        let inst = instance(id);
        c.bench_function(&format!("koszul homology {id}"), |b| {
            b.iter_batched(
                || KoszulData::new(inst.ideal.clone(), FpModule::ring_module(&inst.ring)).unwrap(),
                |d| {
                    let cx = koszul(&d, Orientation::Chain);
                    cx.indices().map(|i| cx.homology(i).module.hilbert()).count()
                },
                BatchSize::SmallInput,
            )
        });
    }
}

fn derived(c: &mut Criterion) {
    let inst = instance("thurs");
    c.bench_function("ext k k over thurs to 4", |b| {
        b.iter_batched(
            || FpModule::residue_field(&inst.ring),
            |k| (0..=4).map(|i| ext(&k, &k, i, 4).unwrap().module.hilbert()).count(),
            BatchSize::SmallInput,
        )
    });
    for flavor in [Flavor::V, Flavor::U, Flavor::W] {
        c.bench_function(&format!("{flavor} on thurs"), |b| {
            b.iter_batched(
                || (FpModule::ring_module(&inst.ring), FpModule::residue_field(&inst.ring)),
                |(a, k)| hyper_modules(flavor, &inst.ideal, &a, &k, 3).unwrap().len(),
                BatchSize::SmallInput,
            )
        });
    }
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = linear_algebra, groebner, resolutions, koszul_homology, derived
}
criterion_main!(kernels);
