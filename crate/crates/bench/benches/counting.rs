use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use latticecount::oracle::count_closure_bruteforce;
use latticecount::polygon::count_closure_polygon;
use latticecount::rational::rat;
use latticecount::triangle::{count_closure_triangle, residue_assembly};
use latticecount::{Counter, DilationVector, Point, PolygonSpec, SimplexSystem, TriangleDilation, TriangleSpec};

fn tetrahedron() -> SimplexSystem {
    SimplexSystem::new(vec![vec![-1, 0, 0], vec![0, -2, 1], vec![0, 0, -1], vec![3, 1, 2]]).unwrap()
}

fn recursion_vs_oracle(c: &mut Criterion) {
    let system = tetrahedron();
    let counter = Counter::new(system.clone()).unwrap();
    let mut group = c.benchmark_group("simplex_closure");
    for s in [4i64, 16, 64] {
        let t = DilationVector::new(vec![0, 0, 0, s]);
        group.bench_with_input(BenchmarkId::new("recursion", s), &t, |b, t| {
            b.iter(|| counter.count_closure(black_box(t)).unwrap())
        });
        if s <= 16 {
            group.bench_with_input(BenchmarkId::new("oracle", s), &t, |b, t| {
                b.iter(|| count_closure_bruteforce(&system, black_box(t)).unwrap())
            });
        }
    }
    group.finish();
}

fn triangle(c: &mut Criterion) {
    let spec = TriangleSpec::new(3, 4, 5, 7).unwrap();
    let mut group = c.benchmark_group("triangle");
    for t3 in [10i64, 1_000, 100_000] {
        let dil = TriangleDilation::new(-5, -3, t3);
        group.bench_with_input(BenchmarkId::new("closed_form", t3), &dil, |b, dil| {
            b.iter(|| count_closure_triangle(&spec, black_box(dil)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("residues", t3), &dil, |b, dil| {
            b.iter(|| residue_assembly(&spec, black_box(dil)))
        });
    }
    group.finish();
}

fn polygon(c: &mut Criterion) {
    let scaled = |k: i128| {
        let pts = [(0, 1, 0, 1), (7, 2, -1, 3), (11, 2, 5, 4), (3, 1, 13, 3), (-5, 4, 7, 2)];
        PolygonSpec::new(pts.iter().map(|&(xn, xd, yn, yd)| Point::new(rat(k * xn, xd), rat(k * yn, yd))).collect())
            .unwrap()
    };
    let mut group = c.benchmark_group("polygon");
    for k in [1i128, 10, 1_000] {
        let poly = scaled(k);
        group.bench_with_input(BenchmarkId::new("closure", k), &poly, |b, poly| {
            b.iter(|| count_closure_polygon(black_box(poly)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, recursion_vs_oracle, triangle, polygon);
criterion_main!(benches);
