use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use twisted_su::operator::{restrict_to_basis, restriction_grid, twisted_su, SpectralParams};
use twisted_su::rmatrix::{belavin_matrix, cg_twisted, jcg_affine, BelavinMode};
use twisted_su::space::BasisFamily;
use twisted_su::special::{jacobi_theta1, KernelFamily, DEFAULT_TOL};
use twisted_su::verify::{belavin_cg_point, cg_jcg_point, ybe_residual_matrix};
use twisted_su::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn theta(cr: &mut Criterion) {
    cr.bench_function("theta1", |b| {
        b.iter(|| jacobi_theta1(black_box(c(0.3, 0.1)), black_box(c(0.1, 1.0)), DEFAULT_TOL))
    });
}

fn tables(cr: &mut Criterion) {
    let mut g = cr.benchmark_group("tables");
    for n in [2usize, 3, 4] {
        g.bench_with_input(BenchmarkId::new("cg-twisted", n), &n, |b, &n| {
            b.iter(|| cg_twisted(n, c(1.7, 0.3), c(0.3, 0.0), c(0.2, 0.0), c(0.1, 0.0)))
        });
        g.bench_with_input(BenchmarkId::new("belavin-closed", n), &n, |b, &n| {
            b.iter(|| {
                belavin_matrix(
                    n,
                    c(0.1, 1.0),
                    c(0.41, 0.0),
                    c(0.3, 0.0),
                    BelavinMode::ClosedForm,
                    DEFAULT_TOL,
                )
            })
        });
        g.bench_with_input(BenchmarkId::new("jcg-affine", n), &n, |b, &n| {
            b.iter(|| jcg_affine(n, c(0.2, 0.0), c(0.1, 0.0), c(0.41, 0.0), c(0.3, 0.0)))
        });
    }
    g.finish();
}

fn ybe(cr: &mut Criterion) {
    let builder = |l| cg_twisted(3, c(1.7, 0.3), l, c(0.2, 0.0), c(0.1, 0.0));
    cr.bench_function("ybe-matrix n=3", |b| {
        b.iter(|| ybe_residual_matrix(&builder, c(0.41, 0.0), c(0.12, 0.0)))
    });
}

fn restriction(cr: &mut Criterion) {
    let sp = SpectralParams {
        lam: c(0.27, 0.0),
        kappa: c(0.41, 0.0),
        alpha: c(0.2, 0.0),
        beta: c(0.1, 0.0),
    };
    let op = twisted_su(KernelFamily::Rational, sp, DEFAULT_TOL).unwrap();
    let basis = BasisFamily::Monomial { n: 2 };
    cr.bench_function("restrict rational n=2", |b| {
        b.iter(|| {
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0);
            let grid = restriction_grid(&op, 24, &mut rng).unwrap();
            restrict_to_basis(&op, &basis, &grid)
        })
    });
}

fn sweep_points(cr: &mut Criterion) {
    cr.bench_function("belavin-cg point n=3", |b| {
        b.iter(|| belavin_cg_point(3, black_box(15.0), c(0.41, 0.0), c(0.3, 0.0), DEFAULT_TOL))
    });
    cr.bench_function("cg-jcg point n=3", |b| {
        b.iter(|| {
            cg_jcg_point(
                3,
                black_box(1e4),
                c(0.41, 0.0),
                c(0.3, 0.0),
                c(0.2, 0.0),
                c(0.1, 0.0),
            )
        })
    });
}

criterion_group!(benches, theta, tables, ybe, restriction, sweep_points);
criterion_main!(benches);
