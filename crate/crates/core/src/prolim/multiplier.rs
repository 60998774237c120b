use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{DenominatorSet, LocalizedClass, Poly};
use crate::scalar::Scalar;

/// Which characteristic a tower value is measured by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Characteristic {
    /// Integer Euler characteristic `χ`.
    Euler,
    /// Grothendieck class `Γ` (or `χ_Gro` for class-valued functions).
    Gamma,
}

impl Characteristic {
    pub fn label(self) -> &'static str {
        match self {
            Characteristic::Euler => "euler",
            Characteristic::Gamma => "gamma",
        }
    }
}

/// A projective system of nonzero multipliers generated by per-step values:
/// `p(n, m) = step(n)·step(n+1)···step(m−1)` and `p(n, n) = 1`.
///
/// Steps are an explicit prefix optionally followed by a constant tail that
/// repeats forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierSystem<C> {
    prefix: Vec<Poly<C>>,
    tail: Option<Poly<C>>,
    set: Arc<DenominatorSet<C>>,
    slots: Vec<usize>,
    tail_slot: Option<usize>,
}

impl<C: Scalar> MultiplierSystem<C> {
    pub fn new(prefix: Vec<Poly<C>>, tail: Option<Poly<C>>) -> Result<Self> {
        if let Some(step) = prefix.iter().position(Poly::is_zero) {
            return Err(Error::ZeroMultiplier { step });
        }
        if tail.as_ref().is_some_and(Poly::is_zero) {
            return Err(Error::ZeroMultiplier { step: prefix.len() });
        }
        let mut generators: Vec<Poly<C>> = Vec::new();
        let mut slot_of = |p: &Poly<C>| match generators.iter().position(|g| g == p) {
            Some(i) => i,
            None => {
                generators.push(p.clone());
                generators.len() - 1
            }
        };
        let slots = prefix.iter().map(&mut slot_of).collect();
        let tail_slot = tail.as_ref().map(&mut slot_of);
        let set = Arc::new(DenominatorSet::new(generators)?);
        Ok(MultiplierSystem {
            prefix,
            tail,
            set,
            slots,
            tail_slot,
        })
    }

    pub fn constant(step: Poly<C>) -> Result<Self> {
        Self::new(Vec::new(), Some(step))
    }

    pub fn from_integers(steps: &[i64]) -> Result<Self> {
        Self::new(steps.iter().map(|&s| Poly::int(s)).collect(), None)
    }

    pub fn prefix(&self) -> &[Poly<C>] {
        &self.prefix
    }

    pub fn tail(&self) -> Option<&Poly<C>> {
        self.tail.as_ref()
    }

    /// Number of steps, `None` when the tail repeats forever.
    pub fn len(&self) -> Option<usize> {
        self.tail.is_none().then_some(self.prefix.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn step(&self, n: usize) -> Result<&Poly<C>> {
        self.prefix
            .get(n)
            .or(self.tail.as_ref())
            .ok_or(Error::MissingStep(n))
    }

    fn slot(&self, n: usize) -> Result<usize> {
        self.slots
            .get(n)
            .copied()
            .or(self.tail_slot)
            .ok_or(Error::MissingStep(n))
    }

    /// `p(n, m)` for `n ≤ m`.
    pub fn transition(&self, n: usize, m: usize) -> Result<Poly<C>> {
        if m < n {
            return Err(Error::LevelBelow {
                requested: m,
                level: n,
            });
        }
        (n..m).map(|k| self.step(k).cloned()).product()
    }

    pub fn denominator_set(&self) -> &Arc<DenominatorSet<C>> {
        &self.set
    }

    /// Generator exponents of `p(0, n)`.
    pub fn exponents_to(&self, n: usize) -> Result<Vec<u32>> {
        let mut e = vec![0u32; self.set.len()];
        for k in 0..n {
            e[self.slot(k)?] += 1;
        }
        Ok(e)
    }

    /// `numerator / p(0, n)` in the localization at the steps.
    pub fn fraction(&self, numerator: Poly<C>, n: usize) -> Result<LocalizedClass<C>> {
        LocalizedClass::new(numerator, self.exponents_to(n)?, self.set.clone())
    }

    /// All steps are integer constants.
    pub fn is_integral(&self) -> bool {
        self.prefix
            .iter()
            .chain(self.tail.iter())
            .all(Poly::is_constant)
    }

    /// Same steps from level `from` onwards.
    pub fn agrees_from(&self, other: &Self, from: usize) -> bool {
        if self.tail != other.tail {
            return false;
        }
        let upto = self.prefix.len().max(other.prefix.len());
        (from..upto).all(|n| match (self.step(n), other.step(n)) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Poly<BigInt>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    #[test]
    fn cocycle() {
        let m = MultiplierSystem::new(vec![p("2"), p("1 + L"), p("L")], Some(p("3"))).unwrap();
        for n in 0..5 {
            assert_eq!(m.transition(n, n).unwrap(), P::one());
            for k in n..6 {
                for j in k..7 {
                    let lhs = &m.transition(n, k).unwrap() * &m.transition(k, j).unwrap();
                    assert_eq!(lhs, m.transition(n, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn zero_steps_are_rejected() {
        assert_eq!(
            MultiplierSystem::<BigInt>::new(vec![p("2"), p("0")], None),
            Err(Error::ZeroMultiplier { step: 1 })
        );
        assert!(MultiplierSystem::<BigInt>::constant(P::zero()).is_err());
    }

    #[test]
    fn denominators_count_distinct_steps() {
        let m = MultiplierSystem::new(vec![p("1 + L"), p("L")], Some(p("L"))).unwrap();
        assert_eq!(m.denominator_set().generators(), &[p("1 + L"), p("L")]);
        assert_eq!(m.exponents_to(0).unwrap(), vec![0, 0]);
        assert_eq!(m.exponents_to(4).unwrap(), vec![1, 3]);
        assert_eq!(m.fraction(p("1"), 2).unwrap().denominator(), p("L^2 + L"));
    }

    #[test]
    fn finite_systems_run_out() {
        let m = MultiplierSystem::<BigInt>::from_integers(&[2, 3]).unwrap();
        assert_eq!(m.step(2), Err(Error::MissingStep(2)));
        assert_eq!(m.len(), Some(2));
        assert!(m.is_integral());
    }

    #[test]
    fn agreement() {
        let a = MultiplierSystem::new(vec![p("1")], Some(p("2"))).unwrap();
        let b = MultiplierSystem::constant(p("2")).unwrap();
        assert!(!a.agrees_from(&b, 0));
        assert!(a.agrees_from(&b, 1));
    }
}
