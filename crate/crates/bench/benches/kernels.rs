use criterion::{black_box, criterion_group, criterion_main, Criterion};

use superharm::actions::dot;
use superharm::isotypic::{projector_multiplicity, quotient_multiplicity};
use superharm::molien::molien_series;
use superharm::{Bidegree, Character, Flavor, Space};
use superharm_bench::{group, operand_pairs};

fn molien(c: &mut Criterion) {
    for id in ["B3", "I2-5", "G-3-1-2"] {
        let g = group(id);
        c.bench_function(&format!("molien/{id}"), |b| {
            b.iter(|| molien_series(&g, Character::Det, Space::V, Space::V, 8, g.n() as u32).unwrap())
        });
    }
}

fn projector(c: &mut Criterion) {
    let g = group("B3");
    let bd = Bidegree::new(4, 1);
    c.bench_function("projector-rank/B3(4,1)", |b| {
        b.iter(|| projector_multiplicity(&g, Character::Det, bd, Flavor::DualExterior).unwrap())
    });
    c.bench_function("quotient/B3(4,1)", |b| {
        b.iter(|| quotient_multiplicity(&g, Character::Det, bd).unwrap())
    });
}

fn dot_action(c: &mut Criterion) {
    let g = group("G-3-1-2");
    let pairs = operand_pairs(&g, 32, 1);
    c.bench_function("dot/G-3-1-2", |b| {
        b.iter(|| {
            for (f, h) in &pairs {
                black_box(dot(f, h).unwrap());
            }
        })
    });
}

criterion_group!(benches, molien, projector, dot_action);
criterion_main!(benches);
