//! Exact Euler calculus on finite stratified models.
//!
//! Constructible functions, relative Grothendieck classes and ℕ-indexed
//! projective towers of such models, with the fraction-valued
//! characteristics of inductive limits (pro-Euler characteristic, motivic
//! measure of cylinder sets).
//!
//! All types are generic over an exact integer [`Scalar`]; the aliases at the
//! crate root fix it to [`BigInt`].

pub mod builders;
pub mod cli;
pub mod error;
pub mod format;
pub mod lex;
pub mod prolim;
pub mod relgroth;
pub mod report;
pub mod ring;
pub mod scalar;
pub mod variety;

pub use num_bigint::BigInt;

pub use error::{Error, Result};
pub use report::{Report, Violation, ViolationKind};
pub use scalar::Scalar;

pub type Polynomial = ring::Poly<BigInt>;
pub type Fraction = ring::LocalizedClass<BigInt>;
pub type Atoms = ring::AtomTable<BigInt>;
pub type Variety = variety::VarietyModel<BigInt>;
pub type Morphism = variety::MorphismModel<BigInt>;
pub type Constructible = variety::ConstructibleFn<BigInt>;
pub type Motivic = relgroth::MotivicFn<BigInt>;
pub type ProTower = prolim::Tower<BigInt>;
pub type Multipliers = prolim::MultiplierSystem<BigInt>;
pub type IndConstructible = prolim::IndConstructible<BigInt>;
pub type IndMotivic = prolim::IndMotivic<BigInt>;
