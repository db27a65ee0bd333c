use criterion::{criterion_group, criterion_main, Criterion};
use orbifold_core::cochains::{kappa_c_penta, kappa_c_tri, kappa_l1, kappa_l_tri};
use orbifold_core::exactalg::ParamPoly;
use orbifold_core::obstructions::{check_conditions, phi, CheckOptions};
use orbifold_core::Exec;

fn bench_verify(c: &mut Criterion) {
    let (a, b) = (ParamPoly::a(), ParamPoly::b());
    let n = 6;
    let kl = kappa_l1(&ParamPoly::a1(), n)
        .add(&kappa_l_tri(&a, &b, n).unwrap())
        .unwrap();
    let kc = kappa_c_tri(&ParamPoly::c(), n)
        .unwrap()
        .add(&kappa_c_penta(&a, &b, n))
        .unwrap();
    let mut group = c.benchmark_group("check_conditions_n6");
    group.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        let opts = CheckOptions {
            exec,
            ..CheckOptions::default()
        };
        group.bench_function(name, |bench| bench.iter(|| check_conditions(&kl, &kc, &opts).unwrap()));
    }
    group.finish();

    let l5 = kappa_l_tri(&a, &b, 5).unwrap();
    let mut group = c.benchmark_group("phi_ltri_n5");
    group.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_function(name, |bench| bench.iter(|| phi(&l5, &l5, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_verify);
criterion_main!(benches);
