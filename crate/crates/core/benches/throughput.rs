//! Instance throughput with the rayon pool against one worker.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sclab::combinat::{Partition, SchubertProblem};
use sclab::galois::{sample_census, PrimeSource, SampleOptions};
use sclab::realcount::{run_experiment, RunOptions, ScheduleRow};

fn real_counts(c: &mut Criterion) {
    let p = SchubertProblem::new(2, 5, vec![Partition::box_one(); 6]).unwrap();
    let sched = [ScheduleRow { osc_type: vec![(Partition::box_one(), 2)], instances: 16 }];
    let mut g = c.benchmark_group("real_counts_gr25");
    g.sample_size(10);
    for jobs in [1, 0] {
        let label = if jobs == 1 { "sequential" } else { "parallel" };
        g.bench_with_input(BenchmarkId::new(label, 16), &jobs, |b, &jobs| {
            b.iter(|| run_experiment(&p, &sched, 1, &RunOptions { jobs, ..Default::default() }).unwrap())
        });
    }
    g.finish();
}

fn frobenius(c: &mut Criterion) {
    let p = SchubertProblem::new(4, 8, vec![Partition::of(&[2, 2]); 4]).unwrap();
    let mut g = c.benchmark_group("census_2222_gr48");
    g.sample_size(10);
    for jobs in [1, 0] {
        let label = if jobs == 1 { "sequential" } else { "parallel" };
        g.bench_with_input(BenchmarkId::new(label, 32), &jobs, |b, &jobs| {
            b.iter(|| sample_census(&p, 32, &PrimeSource::default(), 1, jobs, SampleOptions::default()).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, real_counts, frobenius);
criterion_main!(benches);
