use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{ConstructibleSet, VarietyModel};
use crate::error::{Error, Result};
use crate::ring::Poly;
use crate::scalar::Scalar;

/// Integer-valued function constant on strata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructibleFn<C> {
    model: Arc<VarietyModel<C>>,
    values: Vec<C>,
}

pub(crate) fn same_model<C: Scalar>(
    a: &Arc<VarietyModel<C>>,
    b: &Arc<VarietyModel<C>>,
) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ModelMismatch {
            expected: a.name().to_string(),
            found: b.name().to_string(),
        })
    }
}

impl<C: Scalar> ConstructibleFn<C> {
    pub fn zero(model: Arc<VarietyModel<C>>) -> Self {
        let values = vec![C::zero(); model.len()];
        ConstructibleFn { model, values }
    }

    /// The constant function 1.
    pub fn one(model: Arc<VarietyModel<C>>) -> Self {
        let values = vec![C::one(); model.len()];
        ConstructibleFn { model, values }
    }

    pub fn indicator(model: Arc<VarietyModel<C>>, set: &ConstructibleSet) -> Self {
        let values = (0..model.len())
            .map(|i| if set.contains(i) { C::one() } else { C::zero() })
            .collect();
        ConstructibleFn { model, values }
    }

    pub fn from_values(model: Arc<VarietyModel<C>>, values: Vec<C>) -> Result<Self> {
        if values.len() != model.len() {
            return Err(Error::InvalidArgument(format!(
                "{} values for {} strata of `{}`",
                values.len(),
                model.len(),
                model.name()
            )));
        }
        Ok(ConstructibleFn { model, values })
    }

    /// Values by stratum id; unlisted strata are zero.
    pub fn from_pairs<S: AsRef<str>>(
        model: Arc<VarietyModel<C>>,
        pairs: &[(S, C)],
    ) -> Result<Self> {
        let mut f = Self::zero(model);
        for (id, v) in pairs {
            let i = f.model.index_of(id.as_ref())?;
            f.values[i] = v.clone();
        }
        Ok(f)
    }

    pub fn model(&self) -> &Arc<VarietyModel<C>> {
        &self.model
    }

    pub fn values(&self) -> &[C] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &C {
        &self.values[i]
    }

    pub fn value_of(&self, id: &str) -> Result<&C> {
        Ok(&self.values[self.model.index_of(id)?])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&C, &C) -> C) -> Result<Self> {
        same_model(&self.model, &other.model)?;
        Ok(ConstructibleFn {
            model: self.model.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() * b.clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        ConstructibleFn {
            model: self.model.clone(),
            values: self.values.iter().map(|v| v.clone() * c.clone()).collect(),
        }
    }

    /// `χ(α) = Σ_s α(s)·χ_c(s)`.
    pub fn chi(&self) -> C {
        self.values
            .iter()
            .enumerate()
            .fold(C::zero(), |acc, (i, v)| {
                acc + v.clone() * self.model.euler(i).clone()
            })
    }

    /// `χ(α) = Σ_n n·χ(α⁻¹(n))`, grouping strata by value first.
    pub fn chi_by_level_sets(&self) -> C {
        let mut levels: BTreeMap<C, C> = BTreeMap::new();
        for (i, v) in self.values.iter().enumerate() {
            let e = levels.entry(v.clone()).or_insert_with(C::zero);
            *e = e.clone() + self.model.euler(i).clone();
        }
        levels
            .into_iter()
            .fold(C::zero(), |acc, (n, chi)| acc + n * chi)
    }

    /// `Γ(α) = Σ_s α(s)·[s]`.
    pub fn gamma_class(&self) -> Poly<C> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| self.model.class_of(i).scale(v))
            .sum()
    }

    /// `Γ(α) = Σ_n n·[α⁻¹(n)]`.
    pub fn gamma_by_level_sets(&self) -> Poly<C> {
        let mut levels: BTreeMap<C, Poly<C>> = BTreeMap::new();
        for (i, v) in self.values.iter().enumerate() {
            let e = levels.entry(v.clone()).or_default();
            *e = &*e + self.model.class_of(i);
        }
        levels.into_iter().map(|(n, cls)| cls.scale(&n)).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.values.iter().all(One::is_one)
    }
}

/// `(α × β)(s, u) = α(s)·β(u)` on the product model.
pub fn exterior_product<C: Scalar>(
    alpha: &ConstructibleFn<C>,
    beta: &ConstructibleFn<C>,
) -> ConstructibleFn<C> {
    let model = Arc::new(alpha.model.product(&beta.model));
    exterior_on(model, alpha, beta)
}

pub(crate) fn exterior_on<C: Scalar>(
    model: Arc<VarietyModel<C>>,
    alpha: &ConstructibleFn<C>,
    beta: &ConstructibleFn<C>,
) -> ConstructibleFn<C> {
    let values = alpha
        .values
        .iter()
        .flat_map(|a| beta.values.iter().map(move |b| a.clone() * b.clone()))
        .collect();
    ConstructibleFn { model, values }
}
