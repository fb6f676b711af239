use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ntcodes::distance::{exact_min_distance_enum, exact_min_distance_parity, DistanceConfig};
use ntcodes::reduction::normal_form;
use ntcodes::report::subfield_subcode;
use ntcodes::subfield::trace_span_dim;
use ntcodes::{make_field, FieldElement, Monomial, SparsePolynomial};
use ntcodes_bench::curves;

fn field_mul(c: &mut Criterion) {
    let f = make_field(2, 4).unwrap();
    let elems: Vec<FieldElement> = f.elements().collect();
    c.bench_function("field/mul_all_pairs_f16", |b| {
        b.iter(|| {
            let mut acc = FieldElement::ZERO;
            for &x in &elems {
                for &y in &elems {
                    acc = f.add(acc, f.mul(x, y));
                }
            }
            black_box(acc)
        })
    });
}

fn reduction(c: &mut Criterion) {
    let mut group = c.benchmark_group("normal_form");
    for curve in curves() {
        let mut f = SparsePolynomial::zero_on(&curve);
        for (i, j) in [(17, 23), (9, 40), (30, 3), (2, 64)] {
            f.add_term(Monomial::new(i, j), FieldElement::ONE);
        }
        group.bench_with_input(BenchmarkId::from_parameter(curve.u()), &f, |b, f| {
            b.iter(|| normal_form(&curve, black_box(f)))
        });
    }
    group.finish();
}

fn trace_dimension(c: &mut Criterion) {
    let mut group = c.benchmark_group("trace_span_dim");
    for (curve, s, t) in [(0, 8, 2), (1, 14, 4), (1, 30, 2)] {
        let curve = &curves()[curve];
        let id = format!("u{}_s{s}_t{t}", curve.u());
        group.bench_function(id, |b| b.iter(|| trace_span_dim(curve, black_box(s), t)));
    }
    group.finish();
}

fn distance(c: &mut Criterion) {
    let [nt3, nt5] = curves();
    let cfg = DistanceConfig::default();
    let binary = subfield_subcode(&nt3, 36, 2).unwrap();
    let quaternary = subfield_subcode(&nt5, 60, 4).unwrap();
    let small = subfield_subcode(&nt3, 20, 2).unwrap();
    let mut group = c.benchmark_group("distance");
    group.sample_size(10);
    group.bench_function("columns_nt3_36_f2", |b| {
        b.iter(|| exact_min_distance_parity(&binary, &cfg))
    });
    group.bench_function("columns_nt5_60_f4", |b| {
        b.iter(|| exact_min_distance_parity(&quaternary, &cfg))
    });
    group.bench_function("enumeration_nt3_20_f2", |b| {
        b.iter(|| exact_min_distance_enum(&small, &cfg))
    });
    group.finish();
}

criterion_group!(benches, field_mul, reduction, trace_dimension, distance);
criterion_main!(benches);
