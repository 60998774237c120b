use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::atoms::EvaluationMap;
use crate::ring::poly::Poly;
use crate::scalar::Scalar;

/// Generators of a multiplicative set: finite products of their powers are
/// the allowed denominators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenominatorSet<C> {
    generators: Vec<Poly<C>>,
}

impl<C: Scalar> DenominatorSet<C> {
    pub fn new(generators: Vec<Poly<C>>) -> Result<Self> {
        if let Some(i) = generators.iter().position(Poly::is_zero) {
            return Err(Error::ZeroGenerator(i));
        }
        Ok(DenominatorSet { generators })
    }

    pub fn empty() -> Self {
        DenominatorSet {
            generators: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[Poly<C>] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn position(&self, g: &Poly<C>) -> Option<usize> {
        self.generators.iter().position(|x| x == g)
    }

    /// Expanded product of generator powers.
    pub fn product(&self, exponents: &[u32]) -> Poly<C> {
        self.generators
            .iter()
            .zip(exponents)
            .filter(|(_, e)| **e > 0)
            .map(|(g, e)| g.pow(*e))
            .product()
    }
}

/// An element `numerator / product(generator^exponent)` of a localization.
///
/// Equality is decided by cross-multiplication, which is sound because the
/// free integer polynomial ring has no zero divisors.
#[derive(Clone, Debug)]
pub struct LocalizedClass<C> {
    numerator: Poly<C>,
    exponents: Vec<u32>,
    set: Arc<DenominatorSet<C>>,
}

impl<C: Scalar> LocalizedClass<C> {
    pub fn new(
        numerator: Poly<C>,
        exponents: Vec<u32>,
        set: Arc<DenominatorSet<C>>,
    ) -> Result<Self> {
        if exponents.len() != set.len() {
            return Err(Error::InvalidArgument(format!(
                "{} exponents for {} generators",
                exponents.len(),
                set.len()
            )));
        }
        Ok(LocalizedClass {
            numerator,
            exponents,
            set,
        })
    }

    pub fn whole(numerator: Poly<C>, set: Arc<DenominatorSet<C>>) -> Self {
        let exponents = vec![0; set.len()];
        LocalizedClass {
            numerator,
            exponents,
            set,
        }
    }

    pub fn numerator(&self) -> &Poly<C> {
        &self.numerator
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn denominator_set(&self) -> &Arc<DenominatorSet<C>> {
        &self.set
    }

    pub fn denominator(&self) -> Poly<C> {
        self.set.product(&self.exponents)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn same_set(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.set, &other.set) || self.set == other.set {
            Ok(())
        } else {
            Err(Error::DenominatorMismatch)
        }
    }

    fn raise_to(&self, target: &[u32]) -> Poly<C> {
        let extra: Vec<u32> = target
            .iter()
            .zip(&self.exponents)
            .map(|(t, e)| t - e)
            .collect();
        &self.numerator * &self.set.product(&extra)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_set(other)?;
        let common: Vec<u32> = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| *a.max(b))
            .collect();
        let numerator = &self.raise_to(&common) + &other.raise_to(&common);
        Ok(LocalizedClass {
            numerator,
            exponents: common,
            set: self.set.clone(),
        })
    }

    pub fn neg(&self) -> Self {
        LocalizedClass {
            numerator: -&self.numerator,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_set(other)?;
        Ok(LocalizedClass {
            numerator: &self.numerator * &other.numerator,
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
            set: self.set.clone(),
        })
    }

    /// Cancel generators against the numerator by exact division, one
    /// generator at a time in declared order.
    pub fn normalize(&self) -> Self {
        let mut numerator = self.numerator.clone();
        let mut exponents = self.exponents.clone();
        if numerator.is_zero() {
            exponents.iter_mut().for_each(|e| *e = 0);
        }
        for (g, e) in self.set.generators().iter().zip(exponents.iter_mut()) {
            while *e > 0 {
                match numerator.exact_div(g).expect("generators are nonzero") {
                    Some(q) => {
                        numerator = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        LocalizedClass {
            numerator,
            exponents,
            set: self.set.clone(),
        }
    }

    /// Image under a ring homomorphism. Fails when a generator maps to zero.
    pub fn evaluate(&self, map: &EvaluationMap<C>) -> Result<Self> {
        let gens = self
            .set
            .generators()
            .iter()
            .map(|g| map.evaluate(g))
            .collect::<Result<Vec<_>>>()?;
        let set = Arc::new(DenominatorSet::new(gens)?);
        Ok(LocalizedClass {
            numerator: map.evaluate(&self.numerator)?,
            exponents: self.exponents.clone(),
            set,
        })
    }
}

impl<C: Scalar> PartialEq for LocalizedClass<C> {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator() == &other.numerator * &self.denominator()
    }
}

impl<C: Scalar> Eq for LocalizedClass<C> {}

fn parenthesized<C: Scalar>(p: &Poly<C>) -> String {
    if p.len() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

/// Canonical text of the normalized fraction: `NUM` when the denominator
/// cancels, otherwise `NUM / DEN` with multi-term parts parenthesized.
impl<C: Scalar> fmt::Display for LocalizedClass<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalize();
        let den = n.denominator();
        if den.is_one() {
            write!(f, "{}", n.numerator)
        } else {
            write!(
                f,
                "{} / {}",
                parenthesized(&n.numerator),
                parenthesized(&den)
            )
        }
    }
}
