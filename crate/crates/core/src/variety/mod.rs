//! Finite stratified variety models and the calculus of constructible
//! functions on them.

mod function;
mod morphism;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

pub use function::{exterior_product, ConstructibleFn};
pub use morphism::{bivariant_product, Classification, FiberSquare, MorphismModel};

use crate::error::{Error, Result};
use crate::report::{Report, ViolationKind};
use crate::ring::{AtomTable, Poly};
use crate::scalar::Scalar;

/// A piece of a stratification: its Grothendieck class and the label of the
/// connected component it belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum<C> {
    pub id: String,
    pub class: Poly<C>,
    pub component: String,
}

impl<C: Scalar> Stratum<C> {
    pub fn new(id: impl Into<String>, class: Poly<C>, component: impl Into<String>) -> Self {
        Stratum {
            id: id.into(),
            class,
            component: component.into(),
        }
    }
}

/// A variety presented by finitely many strata.
#[derive(Clone, Debug)]
pub struct VarietyModel<C> {
    name: String,
    atoms: Arc<AtomTable<C>>,
    strata: Vec<Stratum<C>>,
    euler: Vec<C>,
    index: HashMap<String, usize>,
    smooth_dim: Option<u32>,
}

impl<C: PartialEq> PartialEq for VarietyModel<C> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.name == other.name
                && self.strata == other.strata
                && self.smooth_dim == other.smooth_dim
                && self.atoms == other.atoms)
    }
}

impl<C: Eq> Eq for VarietyModel<C> {}

impl<C: Scalar> VarietyModel<C> {
    /// Invariant check on raw data.
    pub fn check(name: &str, atoms: &AtomTable<C>, strata: &[Stratum<C>]) -> Report {
        let mut report = Report::new();
        if strata.is_empty() {
            report.push(name, ViolationKind::NonemptyStrata, "no strata");
        }
        let mut seen = BTreeSet::new();
        for s in strata {
            let subject = format!("{name}/{}", s.id);
            if !seen.insert(s.id.as_str()) {
                report.push(&subject, ViolationKind::DuplicateStratum, "");
            }
            if s.class.is_zero() {
                report.push(&subject, ViolationKind::ZeroClass, "");
            }
            if let Err(Error::UnassignedAtom(a)) = atoms.euler_of(&s.class) {
                report.push(&subject, ViolationKind::UnassignedAtom, a);
            }
        }
        report
    }

    pub fn new(
        name: impl Into<String>,
        atoms: Arc<AtomTable<C>>,
        strata: Vec<Stratum<C>>,
    ) -> Result<Self> {
        let name = name.into();
        Self::check(&name, &atoms, &strata).into_result()?;
        let euler = strata
            .iter()
            .map(|s| atoms.euler_of(&s.class))
            .collect::<Result<Vec<_>>>()?;
        let index = strata
            .iter()
            .enumerate()
            .map(|(i, s)| (s.id.clone(), i))
            .collect();
        Ok(VarietyModel {
            name,
            atoms,
            strata,
            euler,
            index,
            smooth_dim: None,
        })
    }

    /// Declare the model smooth of pure dimension `d`. Not verified.
    pub fn with_smooth_dim(mut self, d: u32) -> Self {
        self.smooth_dim = Some(d);
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// The one-stratum point with class 1.
    pub fn point(atoms: Arc<AtomTable<C>>) -> Self {
        Self::new("pt", atoms, vec![Stratum::new("pt", Poly::one(), "pt")])
            .expect("point model is valid")
            .with_smooth_dim(0)
    }

    pub fn validate(&self) -> Report {
        Self::check(&self.name, &self.atoms, &self.strata)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn atoms(&self) -> &Arc<AtomTable<C>> {
        &self.atoms
    }

    pub fn strata(&self) -> &[Stratum<C>] {
        &self.strata
    }

    pub fn stratum(&self, i: usize) -> &Stratum<C> {
        &self.strata[i]
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn smooth_dim(&self) -> Option<u32> {
        self.smooth_dim
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownStratum {
                model: self.name.clone(),
                id: id.to_string(),
            })
    }

    /// Compactly supported Euler characteristic of stratum `i`.
    pub fn euler(&self, i: usize) -> &C {
        &self.euler[i]
    }

    pub fn class_of(&self, i: usize) -> &Poly<C> {
        &self.strata[i].class
    }

    /// `[X]`, the sum of the stratum classes.
    pub fn total_class(&self) -> Poly<C> {
        self.strata.iter().map(|s| s.class.clone()).sum()
    }

    /// `χ(X)`, the sum of the stratum Euler characteristics.
    pub fn chi(&self) -> C {
        self.euler.iter().fold(C::zero(), |a, b| a + b.clone())
    }

    /// Cartesian product. Strata are pairs with id `s.u` and multiplied class.
    pub fn product(&self, other: &VarietyModel<C>) -> VarietyModel<C> {
        let mut strata = Vec::with_capacity(self.len() * other.len());
        for s in &self.strata {
            for u in &other.strata {
                strata.push(Stratum::new(
                    pair_id(&s.id, &u.id),
                    &s.class * &u.class,
                    pair_id(&s.component, &u.component),
                ));
            }
        }
        let mut out = VarietyModel::new(
            format!("{}x{}", self.name, other.name),
            self.atoms.clone(),
            strata,
        )
        .expect("product of valid models is valid");
        out.smooth_dim = self.smooth_dim.zip(other.smooth_dim).map(|(a, b)| a + b);
        out
    }

    /// Disjoint union, with ids prefixed `0:` and `1:`.
    pub fn disjoint_union(&self, other: &VarietyModel<C>) -> VarietyModel<C> {
        let tag = |k: u8, s: &Stratum<C>| {
            Stratum::new(
                format!("{k}:{}", s.id),
                s.class.clone(),
                format!("{k}:{}", s.component),
            )
        };
        let strata = self
            .strata
            .iter()
            .map(|s| tag(0, s))
            .chain(other.strata.iter().map(|s| tag(1, s)))
            .collect();
        VarietyModel::new(
            format!("{}+{}", self.name, other.name),
            self.atoms.clone(),
            strata,
        )
        .expect("union of valid models is valid")
    }

    /// Sub-model on a nonempty set of strata.
    pub fn restrict(&self, set: &ConstructibleSet) -> Result<VarietyModel<C>> {
        let strata = set.members().map(|i| self.strata[i].clone()).collect();
        VarietyModel::new(format!("{}|sub", self.name), self.atoms.clone(), strata)
    }
}

/// `g ∘ f` for `f: X → Y`, `g: Y → Z`.
pub fn compose<C: Scalar>(f: &MorphismModel<C>, g: &MorphismModel<C>) -> Result<MorphismModel<C>> {
    f.then(g)
}

pub fn fiber_square<C: Scalar>(
    f: &MorphismModel<C>,
    g: &MorphismModel<C>,
) -> Result<FiberSquare<C>> {
    FiberSquare::new(f, g)
}

pub(crate) fn pair_id(a: &str, b: &str) -> String {
    format!("{a}.{b}")
}

/// A union of strata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructibleSet {
    size: usize,
    members: BTreeSet<usize>,
}

impl ConstructibleSet {
    pub fn from_ids<C: Scalar, S: AsRef<str>>(model: &VarietyModel<C>, ids: &[S]) -> Result<Self> {
        let members = ids
            .iter()
            .map(|id| model.index_of(id.as_ref()))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(ConstructibleSet {
            size: model.len(),
            members,
        })
    }

    pub fn from_indices<C: Scalar>(
        model: &VarietyModel<C>,
        idx: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let members: BTreeSet<usize> = idx.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i >= model.len()) {
            return Err(Error::UnknownStratum {
                model: model.name().to_string(),
                id: format!("#{bad}"),
            });
        }
        Ok(ConstructibleSet {
            size: model.len(),
            members,
        })
    }

    pub fn all<C: Scalar>(model: &VarietyModel<C>) -> Self {
        ConstructibleSet {
            size: model.len(),
            members: (0..model.len()).collect(),
        }
    }

    pub fn empty<C: Scalar>(model: &VarietyModel<C>) -> Self {
        ConstructibleSet {
            size: model.len(),
            members: BTreeSet::new(),
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn complement(&self) -> ConstructibleSet {
        ConstructibleSet {
            size: self.size,
            members: (0..self.size)
                .filter(|i| !self.members.contains(i))
                .collect(),
        }
    }
}
