use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use quartics::{catalog, polyalg, projgeom, roots, weierstrass, Tolerances, UniPoly};

fn bench_hessian(c: &mut Criterion) {
    let f = catalog::pencil(Complex64::new(1.0, 0.0));
    c.bench_function("hessian_det_quartic", |b| {
        b.iter(|| std::hint::black_box(&f).hessian_det())
    });
}

fn bench_eliminate(c: &mut Criterion) {
    let f = catalog::pencil(Complex64::new(1.0, 0.0));
    let h = f.hessian_det();
    c.bench_function("eliminate_quartic_hessian", |b| {
        b.iter(|| {
            polyalg::eliminate(
                std::hint::black_box(&f),
                std::hint::black_box(&h),
                polyalg::Axis::Z,
                polyalg::Axis::X,
            )
            .unwrap()
        })
    });
}

fn bench_aberth_deg24(c: &mut Criterion) {
    let f = catalog::pencil(Complex64::new(1.0, 0.0));
    let h = f.hessian_det();
    let eliminant: UniPoly =
        polyalg::eliminate(&f, &h, polyalg::Axis::Z, polyalg::Axis::X).unwrap();
    c.bench_function("aberth_deg24", |b| {
        b.iter(|| roots::aberth_roots(std::hint::black_box(&eliminant), 1e-12).unwrap())
    });
}

fn bench_intersect(c: &mut Criterion) {
    let f = catalog::pencil(Complex64::new(1.0, 0.0));
    let h = f.hessian_det();
    let tols = Tolerances::default();
    c.bench_function("intersect_curve_hessian", |b| {
        b.iter(|| projgeom::intersect(std::hint::black_box(&f), &h, &tols).unwrap())
    });
}

fn bench_group_generate(c: &mut Criterion) {
    let tols = Tolerances::default();
    c.bench_function("pencil_group_generate", |b| {
        b.iter(|| catalog::pencil_group(std::hint::black_box(&tols)).unwrap())
    });
}

fn bench_full_report(c: &mut Criterion) {
    let tols = Tolerances::default();
    let group = catalog::pencil_group(&tols).unwrap();
    let f = catalog::pencil(Complex64::new(1.0, 0.0));
    c.bench_function("transitivity_report_c1", |b| {
        b.iter(|| {
            weierstrass::transitivity_report(
                "pencil(1,0)".to_string(),
                std::hint::black_box(&f),
                &group,
                &tols,
            )
            .unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_hessian,
    bench_eliminate,
    bench_aberth_deg24,
    bench_intersect,
    bench_group_generate,
    bench_full_report
);
criterion_main!(benches);
