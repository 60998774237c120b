//! Projective towers of variety models and the inductive limits of
//! coefficient groups along them.
//!
//! Levels are indexed from 0. An element of the limit is a representative
//! value at some level; lifting moves it up along the bonds, optionally
//! twisted by per-bond classes. Stable elements have a pro-characteristic
//! `char(α_n) / p(0, n)` in the localization at the multiplier steps.

mod ind;
mod multiplier;
mod promorphism;
mod tower;

pub use ind::{
    cylinder_function, e_transform_ind, enumerate_propoints, Additive, IndConstructible,
    IndFunction, IndMotivic, LevelValue, ProPoint, Stability, Transitions,
};
pub use multiplier::{Characteristic, MultiplierSystem};
pub use promorphism::ProMorphism;
pub use tower::{Tower, TowerRule, DEFAULT_STRATA_CAP};
