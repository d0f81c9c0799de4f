use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use iepoly::{compute, validate, Method, TernaryContext, DEFAULT_DEGREE_CAP};
use iepoly_bench::ladder;

fn constructions(c: &mut Criterion) {
    let mut group = c.benchmark_group("ternary_ladder");
    group.sample_size(10);
    for ctx in ladder() {
        let rho = ctx.to_rho();
        group.throughput(Throughput::Elements(ctx.degree() as u64 + 1));
        for method in Method::ALL {
            group.bench_with_input(BenchmarkId::new(method.name(), ctx.r()), &rho, |b, rho| {
                b.iter(|| compute(rho, method, DEFAULT_DEGREE_CAP).unwrap())
            });
        }
        group.bench_with_input(BenchmarkId::new("stream", ctx.r()), &ctx, |b, ctx| {
            b.iter(|| ctx.summary().unwrap())
        });
    }
    group.finish();
}

fn higher_order(c: &mut Criterion) {
    let mut group = c.benchmark_group("order_four");
    for params in [[3u64, 5, 7, 11], [5, 7, 11, 13]] {
        let rho = validate(&params).unwrap();
        for method in Method::ALL {
            group.bench_with_input(BenchmarkId::new(method.name(), format!("{params:?}")), &rho, |b, rho| {
                b.iter(|| compute(rho, method, DEFAULT_DEGREE_CAP).unwrap())
            });
        }
    }
    group.finish();
}

fn point_queries(c: &mut Criterion) {
    let ctx = TernaryContext::new(3, 5, 1_000_003).unwrap();
    let mid = ctx.degree() / 2;
    c.bench_function("coeff_at_middle", |b| b.iter(|| ctx.coeff_at(mid).unwrap()));
    c.bench_function("chi", |b| b.iter(|| ctx.chi(mid).unwrap()));
}

criterion_group!(benches, constructions, higher_order, point_queries);
criterion_main!(benches);
