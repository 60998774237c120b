use std::fmt;
use std::sync::{Arc, Mutex};

use super::multiplier::{Characteristic, MultiplierSystem};
use crate::error::{Error, Result};
use crate::report::{Report, ViolationKind};
use crate::ring::Poly;
use crate::scalar::Scalar;
use crate::variety::{MorphismModel, VarietyModel};

/// Default bound on the number of strata a single materialized level may have.
pub const DEFAULT_STRATA_CAP: usize = 1 << 16;

/// Generates a tower level by level.
pub trait TowerRule<C: Scalar>: Send + Sync {
    /// Level 0.
    fn base(&self) -> Result<VarietyModel<C>>;

    /// Level `n + 1` together with the bond onto `level_n`.
    fn grow(&self, n: usize, level_n: &Arc<VarietyModel<C>>) -> Result<MorphismModel<C>>;

    /// Last level index, `None` when unbounded.
    fn depth(&self) -> Option<usize> {
        None
    }
}

#[derive(Default)]
struct Cache<C> {
    levels: Vec<Arc<VarietyModel<C>>>,
    bonds: Vec<Arc<MorphismModel<C>>>,
}

/// An ℕ-indexed projective tower `X_0 ← X_1 ← X_2 ← ⋯`.
///
/// Levels of rule-generated towers are built on first access and never
/// replaced afterwards, so every reader sees the same models.
pub struct Tower<C: Scalar> {
    name: String,
    rule: Option<Box<dyn TowerRule<C>>>,
    depth: Option<usize>,
    cache: Mutex<Cache<C>>,
    declared_chi: Option<MultiplierSystem<C>>,
    declared_gamma: Option<MultiplierSystem<C>>,
    strata_cap: usize,
}

impl<C: Scalar> fmt::Debug for Tower<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tower")
            .field("name", &self.name)
            .field("depth", &self.depth)
            .field("materialized", &self.materialized())
            .finish()
    }
}

impl<C: Scalar> Tower<C> {
    /// A tower generated by `rule`, with optional declared multipliers.
    pub fn from_rule(name: impl Into<String>, rule: impl TowerRule<C> + 'static) -> Result<Self> {
        let base = Arc::new(rule.base()?);
        let depth = rule.depth();
        Ok(Tower {
            name: name.into(),
            rule: Some(Box::new(rule)),
            depth,
            cache: Mutex::new(Cache {
                levels: vec![base],
                bonds: Vec::new(),
            }),
            declared_chi: None,
            declared_gamma: None,
            strata_cap: DEFAULT_STRATA_CAP,
        })
    }

    /// A finite tower from its levels and bonds, `bonds[n]: levels[n+1] → levels[n]`.
    ///
    /// Declared multipliers are read off the bonds whenever every bond has a
    /// constant fiber characteristic.
    pub fn explicit(
        name: impl Into<String>,
        levels: Vec<Arc<VarietyModel<C>>>,
        bonds: Vec<Arc<MorphismModel<C>>>,
    ) -> Result<Self> {
        let name = name.into();
        if levels.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "tower `{name}` has no levels"
            )));
        }
        if bonds.len() + 1 != levels.len() {
            return Err(Error::InvalidArgument(format!(
                "tower `{name}` has {} levels but {} bonds",
                levels.len(),
                bonds.len()
            )));
        }
        for (n, b) in bonds.iter().enumerate() {
            for (model, want) in [(b.source(), &levels[n + 1]), (b.target(), &levels[n])] {
                if !(Arc::ptr_eq(model, want) || model == want) {
                    return Err(Error::ModelMismatch {
                        expected: want.name().to_string(),
                        found: model.name().to_string(),
                    });
                }
            }
        }
        let mut chi_steps = Some(Vec::new());
        let mut gamma_steps = Some(Vec::new());
        for b in &bonds {
            let c = b.classify(None)?;
            match (&mut chi_steps, c.chi_constant) {
                (Some(v), Some(x)) if !x.is_zero() => v.push(Poly::constant(x)),
                _ => chi_steps = None,
            }
            match (&mut gamma_steps, c.gamma_constant) {
                (Some(v), Some(x)) if !x.is_zero() => v.push(x),
                _ => gamma_steps = None,
            }
        }
        let depth = Some(levels.len() - 1);
        Ok(Tower {
            name,
            rule: None,
            depth,
            cache: Mutex::new(Cache { levels, bonds }),
            declared_chi: chi_steps
                .map(|s| MultiplierSystem::new(s, None))
                .transpose()?,
            declared_gamma: gamma_steps
                .map(|s| MultiplierSystem::new(s, None))
                .transpose()?,
            strata_cap: DEFAULT_STRATA_CAP,
        })
    }

    /// Attach declared multipliers. They are trusted by [`Tower::certifies`]
    /// once attached; use [`Tower::certify`] to compare them with the bonds.
    pub fn with_declared(
        mut self,
        kind: Characteristic,
        system: Option<MultiplierSystem<C>>,
    ) -> Self {
        match kind {
            Characteristic::Euler => self.declared_chi = system,
            Characteristic::Gamma => self.declared_gamma = system,
        }
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_strata_cap(mut self, cap: usize) -> Self {
        self.strata_cap = cap;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn depth(&self) -> Option<usize> {
        self.depth
    }

    pub fn declared(&self, kind: Characteristic) -> Option<&MultiplierSystem<C>> {
        match kind {
            Characteristic::Euler => self.declared_chi.as_ref(),
            Characteristic::Gamma => self.declared_gamma.as_ref(),
        }
    }

    /// Number of levels built so far.
    pub fn materialized(&self) -> usize {
        self.cache
            .lock()
            .expect("tower cache poisoned")
            .levels
            .len()
    }

    fn check_depth(&self, n: usize) -> Result<()> {
        match self.depth {
            Some(depth) if n > depth => Err(Error::OutOfDepth { level: n, depth }),
            _ => Ok(()),
        }
    }

    fn ensure(&self, n: usize) -> Result<std::sync::MutexGuard<'_, Cache<C>>> {
        self.check_depth(n)?;
        let mut cache = self.cache.lock().expect("tower cache poisoned");
        while cache.levels.len() <= n {
            let k = cache.levels.len() - 1;
            let rule = self
                .rule
                .as_ref()
                .ok_or(Error::OutOfDepth { level: n, depth: k })?;
            let top = cache.levels[k].clone();
            let bond = rule.grow(k, &top)?;
            if !(Arc::ptr_eq(bond.target(), &top) || **bond.target() == *top) {
                return Err(Error::ModelMismatch {
                    expected: top.name().to_string(),
                    found: bond.target().name().to_string(),
                });
            }
            let next = bond.source().clone();
            if next.len() > self.strata_cap {
                return Err(Error::CapExceeded {
                    count: next.len(),
                    cap: self.strata_cap,
                });
            }
            cache.levels.push(next);
            cache.bonds.push(Arc::new(bond));
        }
        Ok(cache)
    }

    pub fn level(&self, n: usize) -> Result<Arc<VarietyModel<C>>> {
        Ok(self.ensure(n)?.levels[n].clone())
    }

    /// `π_{n,n+1}: X_{n+1} → X_n`.
    pub fn bond(&self, n: usize) -> Result<Arc<MorphismModel<C>>> {
        Ok(self.ensure(n + 1)?.bonds[n].clone())
    }

    /// `π_{nm}: X_m → X_n`, the composite of bonds `m−1` down to `n`.
    pub fn composite_bond(&self, n: usize, m: usize) -> Result<MorphismModel<C>> {
        if m < n {
            return Err(Error::LevelBelow {
                requested: m,
                level: n,
            });
        }
        if m == n {
            return Ok(MorphismModel::identity(self.level(m)?));
        }
        let mut out = (*self.bond(m - 1)?).clone();
        for k in (n..m - 1).rev() {
            out = out.then(&*self.bond(k)?)?;
        }
        Ok(out)
    }

    /// Compare `system` with the fiber data of bonds `from..upto`.
    pub fn certify(
        &self,
        kind: Characteristic,
        system: &MultiplierSystem<C>,
        from: usize,
        upto: usize,
    ) -> Report {
        let mut report = Report::new();
        for n in from..upto {
            let subject = format!("{}/bond{n}", self.name);
            let bond = match self.bond(n) {
                Ok(b) => b,
                Err(e) => {
                    report.push(&subject, ViolationKind::Certification, e.to_string());
                    break;
                }
            };
            let step = match system.step(n) {
                Ok(s) => s,
                Err(e) => {
                    report.push(&subject, ViolationKind::Certification, e.to_string());
                    continue;
                }
            };
            let observed = bond.classify(None).map(|c| match kind {
                Characteristic::Euler => c.chi_constant.map(Poly::constant),
                Characteristic::Gamma => c.gamma_constant,
            });
            match observed {
                Ok(Some(ref c)) if c == step => {}
                Ok(Some(c)) => report.push(
                    &subject,
                    ViolationKind::Certification,
                    format!(
                        "{} step {n} is {step} but the bond multiplies by {c}",
                        kind.label()
                    ),
                ),
                Ok(None) => report.push(
                    &subject,
                    ViolationKind::Certification,
                    format!("bond has no constant {} multiplier", kind.label()),
                ),
                Err(e) => report.push(&subject, ViolationKind::Certification, e.to_string()),
            }
        }
        report
    }

    /// Whether `system` is known to govern every bond from level `from` on:
    /// either it agrees with the declared multipliers, or the tower is finite
    /// and every remaining bond checks out.
    pub fn certifies(
        &self,
        kind: Characteristic,
        system: &MultiplierSystem<C>,
        from: usize,
    ) -> bool {
        if let Some(declared) = self.declared(kind) {
            if declared.agrees_from(system, from) {
                return true;
            }
        }
        match self.depth {
            Some(depth) => self.certify(kind, system, from, depth).is_valid(),
            None => false,
        }
    }
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

    /// `X_n = A¹ × L^n` as one stratum, fibers `L`.
    struct Lines;

    impl TowerRule<BigInt> for Lines {
        fn base(&self) -> Result<VarietyModel<BigInt>> {
            VarietyModel::new(
                "A0",
                Arc::new(AtomTable::new()),
                vec![Stratum::new("o", p("L"), "A")],
            )
        }
        fn grow(
            &self,
            n: usize,
            level_n: &Arc<VarietyModel<BigInt>>,
        ) -> Result<MorphismModel<BigInt>> {
            let class = level_n.class_of(0) * &p("L");
            let next = VarietyModel::new(
                format!("A{}", n + 1),
                level_n.atoms().clone(),
                vec![Stratum::new("o", class, "A")],
            )?;
            MorphismModel::new(
                format!("b{n}"),
                Arc::new(next),
                level_n.clone(),
                vec![0],
                vec![p("L")],
            )
        }
    }

    #[test]
    fn rule_levels_are_cached() {
        let t = Tower::from_rule("T", Lines).unwrap();
        assert_eq!(t.materialized(), 1);
        let l3 = t.level(3).unwrap();
        assert_eq!(l3.class_of(0), &p("L^4"));
        assert_eq!(t.materialized(), 4);
        assert!(Arc::ptr_eq(&l3, &t.level(3).unwrap()));
        assert!(Arc::ptr_eq(t.bond(2).unwrap().source(), &l3));
    }

    #[test]
    fn composite_bonds() {
        let t = Tower::from_rule("T", Lines).unwrap();
        let b = t.composite_bond(1, 3).unwrap();
        assert_eq!(b.fiber(0), &p("L^2"));
        assert_eq!(t.composite_bond(1, 2).unwrap(), *t.bond(1).unwrap());
        assert_eq!(
            t.composite_bond(2, 2).unwrap(),
            MorphismModel::identity(t.level(2).unwrap())
        );
        let a = t.composite_bond(0, 2).unwrap().fiber(0).clone();
        let ab = t.composite_bond(0, 4).unwrap();
        assert_eq!(
            ab.fiber(0),
            &(&a * t.composite_bond(2, 4).unwrap().fiber(0))
        );
    }

    #[test]
    fn strata_cap_is_enforced() {
        struct Doubling;
        impl TowerRule<BigInt> for Doubling {
            fn base(&self) -> Result<VarietyModel<BigInt>> {
                Ok(VarietyModel::point(Arc::new(AtomTable::new())))
            }
            fn grow(
                &self,
                _: usize,
                level_n: &Arc<VarietyModel<BigInt>>,
            ) -> Result<MorphismModel<BigInt>> {
                let two = VarietyModel::new(
                    "2",
                    level_n.atoms().clone(),
                    vec![
                        Stratum::new("0", P::one(), "0"),
                        Stratum::new("1", P::one(), "1"),
                    ],
                )?;
                let next = Arc::new(level_n.product(&two));
                let images = (0..next.len()).map(|i| i / 2).collect();
                MorphismModel::new(
                    "pr",
                    next.clone(),
                    level_n.clone(),
                    images,
                    vec![P::one(); next.len()],
                )
            }
        }
        let t = Tower::from_rule("D", Doubling).unwrap().with_strata_cap(8);
        assert!(t.level(3).is_ok());
        assert_eq!(
            t.level(4).unwrap_err(),
            Error::CapExceeded { count: 16, cap: 8 }
        );
    }

    #[test]
    fn explicit_towers_read_off_multipliers() {
        let atoms = Arc::new(AtomTable::new());
        let pt = Arc::new(VarietyModel::point(atoms.clone()));
        let p1 = Arc::new(
            VarietyModel::new(
                "P1",
                atoms,
                vec![
                    Stratum::new("p", P::one(), "P1"),
                    Stratum::new("c", p("L"), "P1"),
                ],
            )
            .unwrap(),
        );
        let bond = Arc::new(MorphismModel::to_point(p1.clone(), pt.clone()).unwrap());
        let t = Tower::explicit("E", vec![pt, p1], vec![bond]).unwrap();
        assert_eq!(
            t.declared(Characteristic::Euler).unwrap().step(0).unwrap(),
            &p("2")
        );
        assert_eq!(
            t.declared(Characteristic::Gamma).unwrap().step(0).unwrap(),
            &p("L + 1")
        );
        assert_eq!(
            t.level(2).unwrap_err(),
            Error::OutOfDepth { level: 2, depth: 1 }
        );

        let wrong = MultiplierSystem::from_integers(&[3]).unwrap();
        assert!(t
            .certify(Characteristic::Euler, &wrong, 0, 1)
            .has(ViolationKind::Certification));
        assert!(!t.certifies(Characteristic::Euler, &wrong, 0));
        assert!(t.certifies(
            Characteristic::Euler,
            &MultiplierSystem::from_integers(&[2]).unwrap(),
            0
        ));
    }
}
