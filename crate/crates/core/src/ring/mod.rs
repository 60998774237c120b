//! Symbolic Grothendieck ring: free integer polynomials over declared atoms,
//! their localizations, and ring-homomorphic evaluations.

pub mod atoms;
pub mod frac;
pub mod poly;

pub use atoms::{specialize_hodge, Atom, AtomTable, EvaluationMap, HODGE_U, HODGE_V, LINE};
pub use frac::{DenominatorSet, LocalizedClass};
pub use poly::{Monomial, Poly};
