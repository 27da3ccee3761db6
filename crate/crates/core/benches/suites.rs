use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ordiso::monotone::{is_matrix_monotone, ScalarFunction};
use ordiso::par::Exec;
use ordiso::verify::{run_suite, SuiteConfig};

fn execs() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    if Exec::parallel_available() {
        v.push(("parallel", Exec::Parallel));
    }
    v
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for (name, trials) in [("theta-inversion", 500), ("block-3by3", 50), ("phi-order", 100), ("effect-auto", 200)] {
        for (label, exec) in execs() {
            let cfg = SuiteConfig::new(1, trials).with_exec(exec);
            group.bench_with_input(BenchmarkId::new(name, label), &cfg, |b, cfg| {
                b.iter(|| {
                    let out = run_suite(name, cfg).unwrap();
                    assert!(out.passed());
                })
            });
        }
    }
    group.finish();
}

fn monotone(c: &mut Criterion) {
    let mut group = c.benchmark_group("loewner-verdict");
    group.sample_size(10);
    let f = ScalarFunction::sqrt();
    for (label, exec) in execs() {
        group.bench_function(BenchmarkId::new("sqrt-n6", label), |b| {
            b.iter(|| is_matrix_monotone(&f, 6, 1000, 3, exec, &Default::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, suites, monotone);
criterion_main!(benches);
