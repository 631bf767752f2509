use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use twistbound::bounds::{survey_reports, survey_reports_seq, ReportOptions};
use twistbound::seifert::TwistKnot;
use twistbound::subgroup::{exhaustive_search, exhaustive_search_seq};
use twistbound::tau::{tau_table, tau_table_seq};

fn bench_tau_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("tau_table");
    for n in [200u64, 2_000, 20_000] {
        let k = TwistKnot::new(n).unwrap();
        group.bench_with_input(BenchmarkId::new("parallel", n), &k, |b, k| {
            b.iter(|| tau_table(black_box(k)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &k, |b, k| {
            b.iter(|| tau_table_seq(black_box(k)))
        });
    }
    group.finish();
}

fn bench_survey(c: &mut Criterion) {
    let mut group = c.benchmark_group("survey");
    group.sample_size(10);
    let options = ReportOptions::default();
    for span in [50u64, 200] {
        group.bench_with_input(BenchmarkId::new("parallel", span), &span, |b, &span| {
            b.iter(|| survey_reports(black_box(1), black_box(span), &options).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", span), &span, |b, &span| {
            b.iter(|| survey_reports_seq(black_box(1), black_box(span), &options).unwrap())
        });
    }
    group.finish();
}

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("witness_search");
    group.sample_size(10);
    // m = 21 admits no negative Pell solution and no witness in these boxes,
    // so every run scans the whole box.
    let k = TwistKnot::new(5).unwrap();
    for bound in [16i64, 32] {
        group.bench_with_input(BenchmarkId::new("parallel", bound), &bound, |b, &bound| {
            b.iter(|| exhaustive_search(black_box(&k), bound))
        });
        group.bench_with_input(BenchmarkId::new("sequential", bound), &bound, |b, &bound| {
            b.iter(|| exhaustive_search_seq(black_box(&k), bound))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_tau_table, bench_survey, bench_search);
criterion_main!(benches);
