use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sr_qsd::dist::{qsd_pdf, Representation};
use sr_qsd::eigen::solve_lambda_default;
use sr_qsd::exec::Execution;
use sr_qsd::grid::{abscissae, EvalGrid, GridKind};
use sr_qsd::mc::{simulate_killed_with, McConfig};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn pdf_grid(c: &mut Criterion) {
    let ctx = solve_lambda_default(20.0).unwrap();
    let xs = abscissae(20.0, 1024, GridKind::Log).unwrap();
    let mut g = c.benchmark_group("pdf_grid_1024");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                EvalGrid::tabulate(20.0, ctx.lambda(), xs.clone(), exec, |x| {
                    qsd_pdf(&ctx, x, Representation::DerivativeForm)
                })
                .unwrap()
            })
        });
    }
    g.finish();
}

fn killed_mc(c: &mut Criterion) {
    let cfg = McConfig {
        r0: 5.0,
        t_end: 5.0,
        n_paths: 2_000,
        seed: 1,
        ..McConfig::killed(20.0).unwrap()
    };
    let mut g = c.benchmark_group("killed_mc_2000_paths");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| simulate_killed_with(black_box(&cfg), exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, pdf_grid, killed_mc);
criterion_main!(benches);
