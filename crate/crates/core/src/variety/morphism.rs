use std::collections::HashMap;
use std::sync::Arc;

use super::function::same_model;
use super::{pair_id, ConstructibleFn, ConstructibleSet, Stratum, VarietyModel};
use crate::error::{Error, Result};
use crate::report::{Report, ViolationKind};
use crate::ring::Poly;
use crate::scalar::Scalar;

/// A stratum-locally trivial morphism: every source stratum `s` maps onto a
/// single target stratum `t(s)` with fiber class `g_s`, and
/// `[s] = g_s·[t(s)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismModel<C> {
    name: String,
    source: Arc<VarietyModel<C>>,
    target: Arc<VarietyModel<C>>,
    images: Vec<usize>,
    fibers: Vec<Poly<C>>,
    fiber_euler: Vec<C>,
}

impl<C: Scalar> MorphismModel<C> {
    pub fn check(
        name: &str,
        source: &VarietyModel<C>,
        target: &VarietyModel<C>,
        images: &[usize],
        fibers: &[Poly<C>],
    ) -> Report {
        let mut report = Report::new();
        if images.len() != source.len() || fibers.len() != source.len() {
            report.push(
                name,
                ViolationKind::UnmappedStratum,
                format!(
                    "{} assignments for {} source strata",
                    images.len().min(fibers.len()),
                    source.len()
                ),
            );
            return report;
        }
        for (s, (&t, g)) in images.iter().zip(fibers).enumerate() {
            let subject = format!("{name}/{}", source.stratum(s).id);
            if t >= target.len() {
                report.push(
                    &subject,
                    ViolationKind::UnmappedStratum,
                    "image out of range",
                );
                continue;
            }
            if let Err(Error::UnassignedAtom(a)) = source.atoms().euler_of(g) {
                report.push(&subject, ViolationKind::UnassignedAtom, a);
            }
            let expected = g * target.class_of(t);
            if source.class_of(s) != &expected {
                report.push(
                    &subject,
                    ViolationKind::LocalTriviality,
                    format!(
                        "[{}] = {} but fiber*[{}] = {}",
                        source.stratum(s).id,
                        source.class_of(s),
                        target.stratum(t).id,
                        expected
                    ),
                );
            }
        }
        report
    }

    pub fn new(
        name: impl Into<String>,
        source: Arc<VarietyModel<C>>,
        target: Arc<VarietyModel<C>>,
        images: Vec<usize>,
        fibers: Vec<Poly<C>>,
    ) -> Result<Self> {
        let name = name.into();
        Self::check(&name, &source, &target, &images, &fibers).into_result()?;
        let fiber_euler = fibers
            .iter()
            .map(|g| source.atoms().euler_of(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(MorphismModel {
            name,
            source,
            target,
            images,
            fibers,
            fiber_euler,
        })
    }

    /// Build from `(source id, target id, fiber class)` triples covering every
    /// source stratum.
    pub fn from_ids<S: AsRef<str>>(
        name: impl Into<String>,
        source: Arc<VarietyModel<C>>,
        target: Arc<VarietyModel<C>>,
        map: &[(S, S, Poly<C>)],
    ) -> Result<Self> {
        let name = name.into();
        let mut images = vec![None; source.len()];
        let mut fibers = vec![Poly::zero(); source.len()];
        for (s, t, g) in map {
            let si = source.index_of(s.as_ref())?;
            images[si] = Some(target.index_of(t.as_ref())?);
            fibers[si] = g.clone();
        }
        if let Some(missing) = images.iter().position(Option::is_none) {
            let mut report = Report::new();
            report.push(
                format!("{name}/{}", source.stratum(missing).id),
                ViolationKind::UnmappedStratum,
                "",
            );
            return Err(report.into());
        }
        let images = images.into_iter().map(Option::unwrap).collect();
        Self::new(name, source, target, images, fibers)
    }

    pub fn identity(model: Arc<VarietyModel<C>>) -> Self {
        let n = model.len();
        Self::new(
            format!("id_{}", model.name()),
            model.clone(),
            model,
            (0..n).collect(),
            vec![Poly::one(); n],
        )
        .expect("identity is locally trivial")
    }

    /// The constant map to `point`, which must be a one-stratum model of class 1.
    pub fn to_point(model: Arc<VarietyModel<C>>, point: Arc<VarietyModel<C>>) -> Result<Self> {
        let n = model.len();
        let fibers = model.strata().iter().map(|s| s.class.clone()).collect();
        Self::new(
            format!("{}->pt", model.name()),
            model,
            point,
            vec![0; n],
            fibers,
        )
    }

    /// The constant map to a fresh point model.
    pub fn collapse(model: Arc<VarietyModel<C>>) -> Self {
        let point = Arc::new(VarietyModel::point(model.atoms().clone()));
        Self::to_point(model, point).expect("map to a point is locally trivial")
    }

    /// Inclusion of the sub-model carried by `set`.
    pub fn inclusion(model: Arc<VarietyModel<C>>, set: &ConstructibleSet) -> Result<Self> {
        let sub = Arc::new(model.restrict(set)?);
        let images = set.members().collect::<Vec<_>>();
        let fibers = vec![Poly::one(); images.len()];
        Self::new(format!("{}<-sub", model.name()), sub, model, images, fibers)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<VarietyModel<C>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<VarietyModel<C>> {
        &self.target
    }

    pub fn image(&self, s: usize) -> usize {
        self.images[s]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn fiber(&self, s: usize) -> &Poly<C> {
        &self.fibers[s]
    }

    pub fn fiber_euler(&self, s: usize) -> &C {
        &self.fiber_euler[s]
    }

    pub fn validate(&self) -> Report {
        let mut report = self.source.validate();
        report.extend(self.target.validate());
        report.extend(Self::check(
            &self.name,
            &self.source,
            &self.target,
            &self.images,
            &self.fibers,
        ));
        report
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &t in &self.images {
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn preimages(&self, t: usize) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(move |(_, &u)| u == t)
            .map(|(s, _)| s)
    }

    /// `(f_*α)(t) = Σ_{t(s)=t} α(s)·χ(g_s)`.
    pub fn pushforward(&self, alpha: &ConstructibleFn<C>) -> Result<ConstructibleFn<C>> {
        same_model(&self.source, alpha.model())?;
        let mut values = vec![C::zero(); self.target.len()];
        for (s, v) in alpha.values().iter().enumerate() {
            let t = self.images[s];
            values[t] = values[t].clone() + v.clone() * self.fiber_euler[s].clone();
        }
        ConstructibleFn::from_values(self.target.clone(), values)
    }

    /// `(f^*β)(s) = β(t(s))`.
    pub fn pullback(&self, beta: &ConstructibleFn<C>) -> Result<ConstructibleFn<C>> {
        same_model(&self.target, beta.model())?;
        let values = self.images.iter().map(|&t| beta.value(t).clone()).collect();
        ConstructibleFn::from_values(self.source.clone(), values)
    }

    /// `other ∘ self`, for `self: X → Y` and `other: Y → Z`.
    pub fn then(&self, other: &MorphismModel<C>) -> Result<MorphismModel<C>> {
        same_model(&self.target, &other.source)?;
        let images = self.images.iter().map(|&t| other.images[t]).collect();
        let fibers = self
            .images
            .iter()
            .zip(&self.fibers)
            .map(|(&t, g)| g * &other.fibers[t])
            .collect();
        MorphismModel::new(
            format!("{}.{}", other.name, self.name),
            self.source.clone(),
            other.target.clone(),
            images,
            fibers,
        )
    }

    /// Classification of the fiberwise Euler data, weighted by `alpha`
    /// (default the unit function on the source).
    pub fn classify(&self, alpha: Option<&ConstructibleFn<C>>) -> Result<Classification<C>> {
        let unit;
        let alpha = match alpha {
            Some(a) => a,
            None => {
                unit = ConstructibleFn::one(self.source.clone());
                &unit
            }
        };
        let profile = self.pushforward(alpha)?;

        let mut by_component: HashMap<&str, &C> = HashMap::new();
        let mut is_euler = true;
        for (t, v) in profile.values().iter().enumerate() {
            let comp = self.target.stratum(t).component.as_str();
            match by_component.get(comp) {
                Some(prev) if *prev != v => is_euler = false,
                Some(_) => {}
                None => {
                    by_component.insert(comp, v);
                }
            }
        }

        let mut euler_sums = vec![C::zero(); self.target.len()];
        let mut class_sums = vec![Poly::zero(); self.target.len()];
        for s in 0..self.source.len() {
            let t = self.images[s];
            euler_sums[t] = euler_sums[t].clone() + self.fiber_euler[s].clone();
            class_sums[t] = &class_sums[t] + &self.fibers[s];
        }
        let chi_constant = all_equal(euler_sums);
        let gamma_constant = all_equal(class_sums);
        Ok(Classification {
            profile,
            is_euler,
            chi_constant,
            gamma_constant,
        })
    }
}

fn all_equal<T: PartialEq>(mut xs: Vec<T>) -> Option<T> {
    let first = xs.pop()?;
    xs.iter().all(|x| *x == first).then_some(first)
}

/// Fiberwise Euler data of a morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification<C> {
    /// `f_*α` on the target.
    pub profile: ConstructibleFn<C>,
    /// Profile constant along every connected component of the target.
    pub is_euler: bool,
    /// `c` with `Σ_{s↦t} χ(g_s) = c` for every target stratum `t`.
    pub chi_constant: Option<C>,
    /// `γ` with `Σ_{s↦t} g_s = γ` for every target stratum `t`.
    pub gamma_constant: Option<Poly<C>>,
}

/// `α • β = α · f^*β`.
pub fn bivariant_product<C: Scalar>(
    alpha: &ConstructibleFn<C>,
    f: &MorphismModel<C>,
    beta: &ConstructibleFn<C>,
) -> Result<ConstructibleFn<C>> {
    alpha.mul(&f.pullback(beta)?)
}

/// Fiber product `W = X ×_Z Y` with its two projections.
#[derive(Clone, Debug)]
pub struct FiberSquare<C> {
    pub apex: Arc<VarietyModel<C>>,
    /// `W → X`, fiber class of the `Y` factor.
    pub to_left: MorphismModel<C>,
    /// `W → Y`, fiber class of the `X` factor.
    pub to_right: MorphismModel<C>,
}

impl<C: Scalar> FiberSquare<C> {
    /// Strata of `W` are the pairs `(s, u)` with `f(s) = g(u)` and class
    /// `[t]·g_s·g_u`.
    pub fn new(f: &MorphismModel<C>, g: &MorphismModel<C>) -> Result<Self> {
        same_model(&f.target, &g.target)?;
        let (x, y) = (&f.source, &g.source);
        let mut strata = Vec::new();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for s in 0..x.len() {
            for u in 0..y.len() {
                let t = f.images[s];
                if g.images[u] != t {
                    continue;
                }
                let (xs, yu) = (x.stratum(s), y.stratum(u));
                let class = &(f.target.class_of(t) * &f.fibers[s]) * &g.fibers[u];
                strata.push(Stratum::new(
                    pair_id(&xs.id, &yu.id),
                    class,
                    pair_id(&xs.component, &yu.component),
                ));
                left.push((s, g.fibers[u].clone()));
                right.push((u, f.fibers[s].clone()));
            }
        }
        if strata.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "fiber product of `{}` and `{}` is empty",
                f.name, g.name
            )));
        }
        let apex = Arc::new(VarietyModel::new(
            format!("{}x_{}{}", x.name(), f.target.name(), y.name()),
            x.atoms().clone(),
            strata,
        )?);
        let (li, lf) = left.into_iter().unzip();
        let (ri, rf) = right.into_iter().unzip();
        let to_left =
            MorphismModel::new(format!("pr_{}", x.name()), apex.clone(), x.clone(), li, lf)?;
        let to_right =
            MorphismModel::new(format!("pr_{}", y.name()), apex.clone(), y.clone(), ri, rf)?;
        Ok(FiberSquare {
            apex,
            to_left,
            to_right,
        })
    }
}
