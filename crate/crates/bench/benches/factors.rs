use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use tamegamma::constructions::gamma_equiv_level;
use tamegamma::{FamilyBounds, FieldSpec, Scene, TestFamily, Q};
use tamegamma_bench::{cubic_pair, ramified_char};

fn gauss_and_eps(c: &mut Criterion) {
    let mut g = c.benchmark_group("tate_eps");
    for (p, e, k) in [(5u64, 2u32, 4i64), (7, 2, 6), (13, 4, 10)] {
        let scene = Scene::new(p).unwrap();
        let spec = FieldSpec { f: 1, e, c: 0 };
        let amb = scene.ambient(&[spec]).unwrap();
        let field = amb.embed(&spec).unwrap();
        let theta = amb.emb(&field, &ramified_char(p, e, k));
        g.bench_with_input(BenchmarkId::from_parameter(format!("p{p}_e{e}_k{k}")), &theta, |b, t| {
            b.iter(|| amb.tate_eps(black_box(t)).unwrap())
        });
    }
    g.finish();
}

fn induced_twist(c: &mut Criterion) {
    let p = 7;
    let scene = Scene::new(p).unwrap();
    let se = FieldSpec { f: 1, e: 3, c: 0 };
    let sl = FieldSpec { f: 1, e: 2, c: 1 };
    let amb = scene.ambient(&[se, sl]).unwrap();
    let (e, l) = (amb.embed(&se).unwrap(), amb.embed(&sl).unwrap());
    let chi = ramified_char(p, 3, 2);
    let eta = ramified_char(p, 2, 3);
    let eta = tamegamma::MultChar { field: sl, ..eta };
    c.bench_function("gamma_induced_twist_3x2", |b| {
        b.iter(|| amb.gamma_induced_twist(&e, black_box(&chi), &l, black_box(&eta)).unwrap())
    });
}

fn family(c: &mut Criterion) {
    let scene = Scene::new(5).unwrap();
    let bounds = FamilyBounds::new(1, Q::from_integer(2), 24);
    c.bench_function("test_family_dim1_p5", |b| b.iter(|| TestFamily::build(&scene, black_box(&bounds)).unwrap()));
    let (scene, a, bb) = cubic_pair(5);
    let fam = TestFamily::build(&scene, &bounds).unwrap();
    let mut g = c.benchmark_group("gamma_equiv_level");
    g.sample_size(10);
    g.bench_function("noncusp_level1_p5", |b| b.iter(|| gamma_equiv_level(&scene, &a, &bb, 1, black_box(&fam)).unwrap()));
    g.finish();
}

criterion_group!(benches, gauss_and_eps, induced_twist, family);
criterion_main!(benches);
