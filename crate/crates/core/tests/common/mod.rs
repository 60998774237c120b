//! Seeded generators of random models, morphisms, towers and functions.

#![allow(dead_code)]

use std::sync::Arc;

use proeuler::prolim::{Characteristic, MultiplierSystem, Tower};
use proeuler::ring::{AtomTable, Poly};
use proeuler::variety::{ConstructibleFn, MorphismModel, Stratum, VarietyModel};
use proeuler::{BigInt, Motivic, Polynomial};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn poly(s: &str) -> Polynomial {
    s.parse().unwrap()
}

/// `L` together with `E` (χ = 0) and `Q` (χ = 2).
pub fn atoms() -> Arc<AtomTable<BigInt>> {
    Arc::new(
        AtomTable::new()
            .with("E", 0, Some("1 - u - v + u*v"))
            .unwrap()
            .with("Q", 2, Some("u + v"))
            .unwrap(),
    )
}

const ATOMS: [&str; 3] = ["L", "E", "Q"];

/// A small nonzero class with nonnegative coefficients.
pub fn class(r: &mut Rng8) -> Polynomial {
    let terms = r.gen_range(1..=2);
    let mut out = Poly::zero();
    for _ in 0..terms {
        let mut m = Poly::int(r.gen_range(1..=2));
        for _ in 0..r.gen_range(0..=2) {
            m = &m * &Poly::atom(*ATOMS.choose(r).unwrap());
        }
        out = &out + &m;
    }
    out
}

/// A class with nonzero Euler characteristic.
pub fn class_nonzero_chi(r: &mut Rng8, atoms: &AtomTable<BigInt>) -> Polynomial {
    loop {
        let c = class(r);
        if atoms.euler_of(&c).unwrap() != BigInt::from(0) {
            return c;
        }
    }
}

pub fn model(
    r: &mut Rng8,
    atoms: &Arc<AtomTable<BigInt>>,
    name: &str,
    max_strata: usize,
) -> Arc<VarietyModel<BigInt>> {
    let n = r.gen_range(1..=max_strata);
    let components = r.gen_range(1..=n);
    let strata = (0..n)
        .map(|i| {
            Stratum::new(
                format!("s{i}"),
                class(r),
                format!("{name}c{}", i % components),
            )
        })
        .collect();
    Arc::new(VarietyModel::new(name, atoms.clone(), strata).unwrap())
}

/// A random map onto `target`: each source stratum picks an image and a
/// fiber class, and its class is `fiber · [image]`.
pub fn morphism_to(
    r: &mut Rng8,
    target: &Arc<VarietyModel<BigInt>>,
    name: &str,
    max_strata: usize,
) -> MorphismModel<BigInt> {
    let n = r.gen_range(1..=max_strata);
    let mut images = Vec::with_capacity(n);
    let mut fibers = Vec::with_capacity(n);
    let mut strata = Vec::with_capacity(n);
    for i in 0..n {
        let t = r.gen_range(0..target.len());
        let g = class(r);
        strata.push(Stratum::new(
            format!("x{i}"),
            &g * target.class_of(t),
            format!("{name}c{}", i % 2),
        ));
        images.push(t);
        fibers.push(g);
    }
    let source =
        Arc::new(VarietyModel::new(format!("{name}_src"), target.atoms().clone(), strata).unwrap());
    MorphismModel::new(name, source, target.clone(), images, fibers).unwrap()
}

pub fn morphism(r: &mut Rng8, atoms: &Arc<AtomTable<BigInt>>, name: &str) -> MorphismModel<BigInt> {
    let target = model(r, atoms, &format!("{name}_tgt"), 4);
    morphism_to(r, &target, name, 6)
}

pub fn constructible(r: &mut Rng8, model: &Arc<VarietyModel<BigInt>>) -> ConstructibleFn<BigInt> {
    let values = (0..model.len())
        .map(|_| BigInt::from(r.gen_range(-3..=3)))
        .collect();
    ConstructibleFn::from_values(model.clone(), values).unwrap()
}

/// Values in `{0, 1, 2}`, so that distinct functions are common but not
/// the rule.
pub fn sparse_constructible(
    r: &mut Rng8,
    model: &Arc<VarietyModel<BigInt>>,
) -> ConstructibleFn<BigInt> {
    let values = (0..model.len())
        .map(|_| BigInt::from(r.gen_range(0..=2)))
        .collect();
    ConstructibleFn::from_values(model.clone(), values).unwrap()
}

pub fn motivic(r: &mut Rng8, model: &Arc<VarietyModel<BigInt>>) -> Motivic {
    let values = (0..model.len())
        .map(|_| {
            if r.gen_bool(0.25) {
                Poly::zero()
            } else {
                class(r)
            }
        })
        .collect();
    Motivic::from_values(model.clone(), values).unwrap()
}

/// A finite tower of depth `depth` whose bond `n` replaces every stratum by
/// one copy per class in a template `F_n` (so `π_n` is surjective, its
/// fiberwise Euler sum is `χ(ΣF_n)` and its class sum is `ΣF_n`). The
/// template sums have nonzero Euler characteristic, so both multiplier
/// systems are declared.
pub fn template_tower(
    r: &mut Rng8,
    atoms: &Arc<AtomTable<BigInt>>,
    name: &str,
    depth: usize,
) -> Arc<Tower<BigInt>> {
    let base = model(r, atoms, &format!("{name}0"), 2);
    let mut levels = vec![base];
    let mut bonds = Vec::new();
    for n in 0..depth {
        let below = levels[n].clone();
        let copies = if below.len() >= 8 {
            1
        } else {
            r.gen_range(1..=2)
        };
        let template: Vec<Polynomial> = loop {
            let t: Vec<Polynomial> = (0..copies).map(|_| class(r)).collect();
            let sum = t.iter().fold(Poly::zero(), |a, b| &a + b);
            if atoms.euler_of(&sum).unwrap() != BigInt::from(0) {
                break t;
            }
        };
        let (next, bond) = replicate(
            &below,
            &template,
            &format!("{name}{}", n + 1),
            &format!("{name}b{n}"),
        );
        levels.push(next);
        bonds.push(Arc::new(bond));
    }
    Arc::new(Tower::explicit(name, levels, bonds).unwrap())
}

/// The level above `below` with one stratum per (stratum, template entry).
pub fn replicate(
    below: &Arc<VarietyModel<BigInt>>,
    template: &[Polynomial],
    level_name: &str,
    bond_name: &str,
) -> (Arc<VarietyModel<BigInt>>, MorphismModel<BigInt>) {
    let mut strata = Vec::new();
    let mut images = Vec::new();
    let mut fibers = Vec::new();
    for t in 0..below.len() {
        let s = below.stratum(t);
        for (j, g) in template.iter().enumerate() {
            strata.push(Stratum::new(
                format!("{}.{j}", s.id),
                g * &s.class,
                s.component.clone(),
            ));
            images.push(t);
            fibers.push(g.clone());
        }
    }
    let next = Arc::new(VarietyModel::new(level_name, below.atoms().clone(), strata).unwrap());
    let bond = MorphismModel::new(bond_name, next.clone(), below.clone(), images, fibers).unwrap();
    (next, bond)
}

/// The declared system of `kind`, which the template towers always have.
pub fn declared(tower: &Tower<BigInt>, kind: Characteristic) -> MultiplierSystem<BigInt> {
    tower.declared(kind).cloned().expect("declared multipliers")
}
