use std::fmt::Debug;
use std::sync::Arc;

use super::multiplier::{Characteristic, MultiplierSystem};
use super::tower::Tower;
use crate::error::{Error, Result};
use crate::relgroth::MotivicFn;
use crate::ring::{LocalizedClass, Poly};
use crate::scalar::Scalar;
use crate::variety::{ConstructibleFn, ConstructibleSet, MorphismModel, VarietyModel};

/// A per-level coefficient group a tower can carry: integer-valued
/// constructible functions or class-valued motivic functions.
pub trait LevelValue<C: Scalar>: Clone + PartialEq + Debug + Send + Sync + Sized {
    /// Value at a single stratum.
    type Point: Clone + PartialEq + Debug;

    fn model(&self) -> &Arc<VarietyModel<C>>;
    fn unit(model: Arc<VarietyModel<C>>) -> Self;
    fn zero(model: Arc<VarietyModel<C>>) -> Self;
    fn indicator(model: Arc<VarietyModel<C>>, set: &ConstructibleSet) -> Self;
    fn pull_back(&self, f: &MorphismModel<C>) -> Result<Self>;
    fn push_forward(&self, f: &MorphismModel<C>) -> Result<Self>;
    fn times(&self, other: &Self) -> Result<Self>;
    fn characteristic(&self, kind: Characteristic) -> Result<Poly<C>>;
    fn at(&self, stratum: usize) -> Self::Point;
}

impl<C: Scalar> LevelValue<C> for ConstructibleFn<C> {
    type Point = C;

    fn model(&self) -> &Arc<VarietyModel<C>> {
        ConstructibleFn::model(self)
    }
    fn unit(model: Arc<VarietyModel<C>>) -> Self {
        ConstructibleFn::one(model)
    }
    fn zero(model: Arc<VarietyModel<C>>) -> Self {
        ConstructibleFn::zero(model)
    }
    fn indicator(model: Arc<VarietyModel<C>>, set: &ConstructibleSet) -> Self {
        ConstructibleFn::indicator(model, set)
    }
    fn pull_back(&self, f: &MorphismModel<C>) -> Result<Self> {
        f.pullback(self)
    }
    fn push_forward(&self, f: &MorphismModel<C>) -> Result<Self> {
        f.pushforward(self)
    }
    fn times(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }
    fn characteristic(&self, kind: Characteristic) -> Result<Poly<C>> {
        Ok(match kind {
            Characteristic::Euler => Poly::constant(self.chi()),
            Characteristic::Gamma => self.gamma_class(),
        })
    }
    fn at(&self, stratum: usize) -> C {
        self.value(stratum).clone()
    }
}

impl<C: Scalar> LevelValue<C> for MotivicFn<C> {
    type Point = Poly<C>;

    fn model(&self) -> &Arc<VarietyModel<C>> {
        MotivicFn::model(self)
    }
    fn unit(model: Arc<VarietyModel<C>>) -> Self {
        MotivicFn::one(model)
    }
    fn zero(model: Arc<VarietyModel<C>>) -> Self {
        MotivicFn::zero(model)
    }
    fn indicator(model: Arc<VarietyModel<C>>, set: &ConstructibleSet) -> Self {
        MotivicFn::iota(&ConstructibleFn::indicator(model, set))
    }
    fn pull_back(&self, f: &MorphismModel<C>) -> Result<Self> {
        self.pullback(f)
    }
    fn push_forward(&self, f: &MorphismModel<C>) -> Result<Self> {
        self.pushforward(f)
    }
    fn times(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }
    /// `Γ` is `χ_Gro`; `χ` is its Euler evaluation.
    fn characteristic(&self, kind: Characteristic) -> Result<Poly<C>> {
        let class = self.chi_gro();
        Ok(match kind {
            Characteristic::Euler => Poly::constant(self.model().atoms().euler_of(&class)?),
            Characteristic::Gamma => class,
        })
    }
    fn at(&self, stratum: usize) -> Poly<C> {
        self.value(stratum).clone()
    }
}

/// How a representative moves up one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transitions<V> {
    /// `α ↦ π_n^*α`.
    Plain,
    /// `α ↦ b_n·π_n^*α`, with `b_n` living on level `n + 1`.
    Twisted(Vec<V>),
}

impl<V> Transitions<V> {
    pub fn is_plain(&self) -> bool {
        matches!(self, Transitions::Plain)
    }

    /// Twists for bonds `0..len`, `None` for plain transitions.
    pub fn twists(&self) -> Option<&[V]> {
        match self {
            Transitions::Plain => None,
            Transitions::Twisted(b) => Some(b),
        }
    }
}

impl<V> Transitions<V> {
    /// Checked twisted system: twist `n` must live on `tower.level(n + 1)`.
    pub fn twisted<C: Scalar>(tower: &Tower<C>, twists: Vec<V>) -> Result<Self>
    where
        V: LevelValue<C>,
    {
        for (n, b) in twists.iter().enumerate() {
            let want = tower.level(n + 1)?;
            if !(Arc::ptr_eq(b.model(), &want) || **b.model() == *want) {
                return Err(Error::TransitionMismatch);
            }
        }
        Ok(Transitions::Twisted(twists))
    }

    /// Move a level-`n` value to level `n + 1`.
    pub fn step<C: Scalar>(&self, tower: &Tower<C>, n: usize, value: &V) -> Result<V>
    where
        V: LevelValue<C>,
    {
        let pulled = value.pull_back(&*tower.bond(n)?)?;
        match self {
            Transitions::Plain => Ok(pulled),
            Transitions::Twisted(b) => b.get(n).ok_or(Error::MissingTwist(n))?.times(&pulled),
        }
    }

    /// The composite class `b_{nm}` on level `m`, so that lifting from `n`
    /// to `m` is `α ↦ b_{nm}·π_{nm}^*α`. `None` means the unit.
    pub fn composite<C: Scalar>(&self, tower: &Tower<C>, n: usize, m: usize) -> Result<Option<V>>
    where
        V: LevelValue<C>,
    {
        if m < n {
            return Err(Error::LevelBelow {
                requested: m,
                level: n,
            });
        }
        let Transitions::Twisted(b) = self else {
            return Ok(None);
        };
        let mut acc: Option<V> = None;
        for k in n..m {
            let twist = b.get(k).ok_or(Error::MissingTwist(k))?;
            acc = Some(match acc {
                None => twist.clone(),
                Some(prev) => twist.times(&prev.pull_back(&*tower.bond(k)?)?)?,
            });
        }
        Ok(acc)
    }
}

/// Outcome of a stability check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stability {
    /// The defining equality holds at every level checked.
    pub stable_up_to_horizon: bool,
    /// The multipliers are certified by the bonds, so stability holds at
    /// every level.
    pub certified: bool,
    /// Top level checked.
    pub horizon: usize,
    /// First level `m` at which `χ(α_{m+1}) ≠ step(m)·χ(α_m)`.
    pub failed_at: Option<usize>,
}

impl Stability {
    pub fn is_stable(&self) -> bool {
        self.certified || self.stable_up_to_horizon
    }

    pub fn label(&self) -> &'static str {
        match (self.certified, self.stable_up_to_horizon) {
            (true, _) => "certified",
            (false, true) => "horizon-checked",
            (false, false) => "unstable",
        }
    }
}

/// An element of the inductive limit of per-level coefficient groups,
/// represented by a value at one level.
#[derive(Clone, Debug)]
pub struct IndFunction<C: Scalar, V> {
    tower: Arc<Tower<C>>,
    transitions: Arc<Transitions<V>>,
    level: usize,
    value: V,
}

/// Same tower, same transitions, same level and value.
impl<C: Scalar, V: PartialEq> PartialEq for IndFunction<C, V> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.tower, &other.tower)
            && self.level == other.level
            && (Arc::ptr_eq(&self.transitions, &other.transitions)
                || self.transitions == other.transitions)
            && self.value == other.value
    }
}

pub type IndConstructible<C> = IndFunction<C, ConstructibleFn<C>>;
pub type IndMotivic<C> = IndFunction<C, MotivicFn<C>>;

impl<C: Scalar, V: LevelValue<C>> IndFunction<C, V> {
    pub fn new(
        tower: Arc<Tower<C>>,
        transitions: Arc<Transitions<V>>,
        level: usize,
        value: V,
    ) -> Result<Self> {
        let model = tower.level(level)?;
        if !(Arc::ptr_eq(&model, value.model()) || model == *value.model()) {
            return Err(Error::ModelMismatch {
                expected: model.name().to_string(),
                found: value.model().name().to_string(),
            });
        }
        Ok(IndFunction {
            tower,
            transitions,
            level,
            value,
        })
    }

    pub fn plain(tower: Arc<Tower<C>>, level: usize, value: V) -> Result<Self> {
        Self::new(tower, Arc::new(Transitions::Plain), level, value)
    }

    /// `[1]` represented at `level`.
    pub fn unit(tower: Arc<Tower<C>>, level: usize) -> Result<Self> {
        let model = tower.level(level)?;
        Self::plain(tower, level, V::unit(model))
    }

    pub fn tower(&self) -> &Arc<Tower<C>> {
        &self.tower
    }

    pub fn transitions(&self) -> &Arc<Transitions<V>> {
        &self.transitions
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn value(&self) -> &V {
        &self.value
    }

    /// Same element with a different representative value at the same level.
    pub fn with_value(&self, value: V) -> Result<Self> {
        Self::new(
            self.tower.clone(),
            self.transitions.clone(),
            self.level,
            value,
        )
    }

    /// The representative at level `m ≥ level`.
    pub fn lift(&self, m: usize) -> Result<Self> {
        if m < self.level {
            return Err(Error::LevelBelow {
                requested: m,
                level: self.level,
            });
        }
        let mut value = self.value.clone();
        for n in self.level..m {
            value = self.transitions.step(&self.tower, n, &value)?;
        }
        Ok(IndFunction {
            tower: self.tower.clone(),
            transitions: self.transitions.clone(),
            level: m,
            value,
        })
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.tower, &other.tower) {
            return Err(Error::TowerMismatch);
        }
        if !(Arc::ptr_eq(&self.transitions, &other.transitions)
            || self.transitions == other.transitions)
        {
            return Err(Error::TransitionMismatch);
        }
        Ok(())
    }

    /// Whether the two representatives agree after lifting to some level at
    /// most `horizon`.
    pub fn ind_eq(&self, other: &Self, horizon: usize) -> Result<bool> {
        self.compatible(other)?;
        let start = self.level.max(other.level);
        if horizon < start {
            return Err(Error::LevelBelow {
                requested: horizon,
                level: start,
            });
        }
        let (mut a, mut b) = (self.lift(start)?.value, other.lift(start)?.value);
        for n in start..=horizon {
            if a == b {
                return Ok(true);
            }
            if n < horizon {
                a = self.transitions.step(&self.tower, n, &a)?;
                b = self.transitions.step(&self.tower, n, &b)?;
            }
        }
        Ok(false)
    }

    /// Sum, represented at the higher of the two levels.
    pub fn add(&self, other: &Self) -> Result<Self>
    where
        V: Additive,
    {
        self.compatible(other)?;
        let m = self.level.max(other.level);
        let (a, b) = (self.lift(m)?, other.lift(m)?);
        a.with_value(a.value.plus(&b.value)?)
    }

    /// Check `char(α_{m+1}) = step(m)·char(α_m)` for `level ≤ m < horizon`,
    /// and whether the bonds certify `system` outright.
    pub fn check_stability(
        &self,
        system: &MultiplierSystem<C>,
        kind: Characteristic,
        horizon: usize,
    ) -> Result<Stability> {
        if horizon < self.level {
            return Err(Error::LevelBelow {
                requested: horizon,
                level: self.level,
            });
        }
        if let Some(depth) = self.tower.depth() {
            if horizon > depth {
                return Err(Error::OutOfDepth {
                    level: horizon,
                    depth,
                });
            }
        }
        let certified =
            self.transitions.is_plain() && self.tower.certifies(kind, system, self.level);
        let mut value = self.value.clone();
        let mut current = value.characteristic(kind)?;
        let mut failed_at = None;
        for m in self.level..horizon {
            let step = system.step(m)?;
            value = self.transitions.step(&self.tower, m, &value)?;
            let next = value.characteristic(kind)?;
            if next != step * &current {
                failed_at = Some(m);
                break;
            }
            current = next;
        }
        Ok(Stability {
            stable_up_to_horizon: failed_at.is_none(),
            certified,
            horizon,
            failed_at,
        })
    }

    /// Default horizon for stability checks: two levels above the
    /// representative, within the tower depth.
    pub fn default_horizon(&self) -> usize {
        let h = self.level + 2;
        self.tower.depth().map_or(h, |d| h.min(d))
    }

    /// `char(α_n) / p(0, n)` after checking stability up to `horizon`.
    /// The fraction is returned as computed, without normalization.
    pub fn pro_characteristic_at(
        &self,
        system: &MultiplierSystem<C>,
        kind: Characteristic,
        horizon: usize,
    ) -> Result<(LocalizedClass<C>, Stability)> {
        let stability = self.check_stability(system, kind, horizon)?;
        if !stability.is_stable() {
            return Err(Error::Unstable {
                level: stability.failed_at.unwrap_or(self.level),
            });
        }
        let value = system.fraction(self.value.characteristic(kind)?, self.level)?;
        Ok((value, stability))
    }

    pub fn pro_characteristic(
        &self,
        system: &MultiplierSystem<C>,
        kind: Characteristic,
    ) -> Result<LocalizedClass<C>> {
        Ok(self
            .pro_characteristic_at(system, kind, self.default_horizon())?
            .0)
    }

    /// `Ψ(α)(x) = α_n(x_n)`.
    pub fn functionize(&self, point: &ProPoint) -> Result<V::Point> {
        let x = point.at(self.level).ok_or(Error::PrefixTooShort {
            len: point.len(),
            level: self.level,
        })?;
        Ok(self.value.at(x))
    }
}

/// Values that can be added.
pub trait Additive: Sized {
    fn plus(&self, other: &Self) -> Result<Self>;
}

impl<C: Scalar> Additive for ConstructibleFn<C> {
    fn plus(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
}

impl<C: Scalar> Additive for MotivicFn<C> {
    fn plus(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
}

/// `[1_C]` for a union of strata `C` of level `n`, with plain transitions.
pub fn cylinder_function<C: Scalar, V: LevelValue<C>>(
    tower: &Arc<Tower<C>>,
    n: usize,
    set: &ConstructibleSet,
) -> Result<IndFunction<C, V>> {
    let model = tower.level(n)?;
    IndFunction::plain(tower.clone(), n, V::indicator(model, set))
}

/// A compatible thread of strata `(x_0, …, x_m)`, stored as stratum indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProPoint {
    prefix: Vec<usize>,
}

impl ProPoint {
    pub fn new<C: Scalar>(tower: &Tower<C>, prefix: Vec<usize>) -> Result<Self> {
        for (k, pair) in prefix.windows(2).enumerate() {
            let bond = tower.bond(k)?;
            if pair[1] >= bond.source().len() || bond.image(pair[1]) != pair[0] {
                return Err(Error::IncompatiblePoint(k));
            }
        }
        if let Some(&x0) = prefix.first() {
            if x0 >= tower.level(0)?.len() {
                return Err(Error::IncompatiblePoint(0));
            }
        }
        Ok(ProPoint { prefix })
    }

    /// The thread through a level-`m` stratum, projected down.
    pub fn through<C: Scalar>(tower: &Tower<C>, m: usize, stratum: usize) -> Result<Self> {
        let mut prefix = vec![0; m + 1];
        prefix[m] = stratum;
        for k in (0..m).rev() {
            prefix[k] = tower.bond(k)?.image(prefix[k + 1]);
        }
        Ok(ProPoint { prefix })
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    pub fn at(&self, level: usize) -> Option<usize> {
        self.prefix.get(level).copied()
    }

    /// Stratum ids along the thread.
    pub fn ids<C: Scalar>(&self, tower: &Tower<C>) -> Result<Vec<String>> {
        self.prefix
            .iter()
            .enumerate()
            .map(|(k, &x)| Ok(tower.level(k)?.stratum(x).id.clone()))
            .collect()
    }
}

/// All compatible threads up to level `m`. Each level-`m` stratum determines
/// exactly one thread, so there are as many as level `m` has strata.
pub fn enumerate_propoints<C: Scalar>(
    tower: &Tower<C>,
    m: usize,
    cap: usize,
) -> Result<Vec<ProPoint>> {
    let top = tower.level(m)?;
    if top.len() > cap {
        return Err(Error::CapExceeded {
            count: top.len(),
            cap,
        });
    }
    (0..top.len())
        .map(|s| ProPoint::through(tower, m, s))
        .collect()
}

/// Apply `e` levelwise to a class-valued element and its twists.
pub fn e_transform_ind<C: Scalar>(a: &IndMotivic<C>) -> Result<IndConstructible<C>> {
    let transitions = match &*a.transitions {
        Transitions::Plain => Transitions::Plain,
        Transitions::Twisted(b) => Transitions::Twisted(
            b.iter()
                .map(MotivicFn::e_transform)
                .collect::<Result<_>>()?,
        ),
    };
    IndFunction::new(
        a.tower.clone(),
        Arc::new(transitions),
        a.level,
        a.value.e_transform()?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::AtomTable;
    use crate::variety::Stratum;
    use num_bigint::BigInt;

    type P = Poly<BigInt>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// The two-point collapse: levels `{a,b}`, `{a,b}`, `{a}` with identity
    /// then inclusion bonds.
    fn collapse_tower() -> Arc<Tower<BigInt>> {
        let atoms = Arc::new(AtomTable::new());
        let ab = |name: &str| {
            Arc::new(
                VarietyModel::new(
                    name,
                    atoms.clone(),
                    vec![
                        Stratum::new("a", P::one(), "a"),
                        Stratum::new("b", P::one(), "b"),
                    ],
                )
                .unwrap(),
            )
        };
        let (x0, x1) = (ab("X0"), ab("X1"));
        let x2 = Arc::new(
            VarietyModel::new("X2", atoms.clone(), vec![Stratum::new("a", P::one(), "a")]).unwrap(),
        );
        let b0 = MorphismModel::new("b0", x1.clone(), x0.clone(), vec![0, 1], vec![P::one(); 2])
            .unwrap();
        let b1 = MorphismModel::new("b1", x2.clone(), x1.clone(), vec![0], vec![P::one()]).unwrap();
        Arc::new(
            Tower::explicit(
                "collapse",
                vec![x0, x1, x2],
                vec![Arc::new(b0), Arc::new(b1)],
            )
            .unwrap(),
        )
    }

    #[test]
    fn collapse_identifies_late() {
        let t = collapse_tower();
        let x1 = t.level(1).unwrap();
        let alpha = ConstructibleFn::from_pairs(x1.clone(), &[("b", b(5))]).unwrap();
        let a = IndFunction::plain(t.clone(), 1, alpha).unwrap();
        let zero = IndFunction::plain(t.clone(), 1, ConstructibleFn::zero(x1)).unwrap();
        assert!(!a.ind_eq(&zero, 1).unwrap());
        assert!(a.ind_eq(&zero, 2).unwrap());
        assert_eq!(
            a.ind_eq(&zero, 0).unwrap_err(),
            Error::LevelBelow {
                requested: 0,
                level: 1
            }
        );

        let only = enumerate_propoints(&t, 2, 10).unwrap();
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].prefix(), &[0, 0, 0]);
        assert_eq!(a.functionize(&only[0]).unwrap(), b(0));
    }

    #[test]
    fn lifting_and_twisting() {
        let t = collapse_tower();
        let x0 = t.level(0).unwrap();
        let x1 = t.level(1).unwrap();
        let alpha = ConstructibleFn::from_values(x0, vec![b(2), b(3)]).unwrap();
        let a = IndFunction::plain(t.clone(), 0, alpha.clone()).unwrap();
        assert_eq!(a.lift(0).unwrap(), a);
        assert_eq!(a.lift(1).unwrap().value().values(), &[b(2), b(3)]);
        assert!(a.ind_eq(&a.lift(2).unwrap(), 2).unwrap());

        let twist = ConstructibleFn::from_values(x1, vec![b(7), b(-1)]).unwrap();
        let tr = Arc::new(Transitions::twisted(&t, vec![twist]).unwrap());
        let tw = IndFunction::new(t.clone(), tr.clone(), 0, alpha).unwrap();
        assert_eq!(tw.lift(1).unwrap().value().values(), &[b(14), b(-3)]);
        assert_eq!(tw.lift(2).unwrap_err(), Error::MissingTwist(1));
        let composite = tr.composite(&t, 0, 1).unwrap().unwrap();
        assert_eq!(composite.values(), &[b(7), b(-1)]);
    }

    #[test]
    fn stability_on_explicit_towers() {
        let t = collapse_tower();
        let system = MultiplierSystem::from_integers(&[1, 1]).unwrap();
        let one = IndFunction::<BigInt, ConstructibleFn<BigInt>>::unit(t.clone(), 0).unwrap();
        let s = one
            .check_stability(&system, Characteristic::Euler, 1)
            .unwrap();
        assert!(s.stable_up_to_horizon);
        assert_eq!(s.failed_at, None);
        assert!(!s.certified);
        assert_eq!(s.label(), "horizon-checked");
        let s = one
            .check_stability(&system, Characteristic::Euler, 2)
            .unwrap();
        assert_eq!((s.failed_at, s.label()), (Some(1), "unstable"));

        let x0 = t.level(0).unwrap();
        let bad = IndFunction::plain(
            t.clone(),
            0,
            ConstructibleFn::from_values(x0, vec![b(1), b(1)]).unwrap(),
        )
        .unwrap();
        let s = bad.check_stability(
            &MultiplierSystem::from_integers(&[1, 1]).unwrap(),
            Characteristic::Euler,
            2,
        );
        let s = s.unwrap();
        assert!(!s.stable_up_to_horizon);
        assert_eq!(s.failed_at, Some(1));
        assert_eq!(
            bad.pro_characteristic_at(&system, Characteristic::Euler, 2)
                .unwrap_err(),
            Error::Unstable { level: 1 }
        );
        let (v, _) = bad
            .pro_characteristic_at(&system, Characteristic::Euler, 1)
            .unwrap();
        assert_eq!(v.to_string(), "2");
        assert!(bad
            .check_stability(&system, Characteristic::Euler, 3)
            .is_err());
    }

    #[test]
    fn motivic_values_and_e() {
        let t = collapse_tower();
        let x1 = t.level(1).unwrap();
        let m = MotivicFn::from_values(x1.clone(), vec![p("L"), p("L + 1")]).unwrap();
        let twist = MotivicFn::from_values(t.level(2).unwrap(), vec![p("L^2")]).unwrap();
        let tr =
            Arc::new(Transitions::twisted(&t, vec![MotivicFn::one(x1.clone()), twist]).unwrap());
        let a = IndFunction::new(t.clone(), tr, 1, m).unwrap();
        assert_eq!(
            a.value().characteristic(Characteristic::Gamma).unwrap(),
            p("2*L + 1")
        );
        assert_eq!(
            a.value().characteristic(Characteristic::Euler).unwrap(),
            p("3")
        );
        let e = e_transform_ind(&a).unwrap();
        assert_eq!(e.value().values(), &[b(1), b(2)]);
        assert_eq!(
            e_transform_ind(&a.lift(2).unwrap()).unwrap(),
            e.lift(2).unwrap()
        );
    }

    #[test]
    fn propoints_must_be_compatible() {
        let t = collapse_tower();
        assert!(ProPoint::new(&t, vec![1, 1]).is_ok());
        assert_eq!(
            ProPoint::new(&t, vec![0, 1]).unwrap_err(),
            Error::IncompatiblePoint(0)
        );
        assert_eq!(
            ProPoint::new(&t, vec![1, 1, 0]).unwrap_err(),
            Error::IncompatiblePoint(1)
        );
        let x = ProPoint::new(&t, vec![1]).unwrap();
        let one = IndFunction::<BigInt, ConstructibleFn<BigInt>>::unit(t.clone(), 1).unwrap();
        assert_eq!(
            one.functionize(&x).unwrap_err(),
            Error::PrefixTooShort { len: 1, level: 1 }
        );
        assert_eq!(
            enumerate_propoints(&t, 1, 1).unwrap_err(),
            Error::CapExceeded { count: 2, cap: 1 }
        );
    }
}
