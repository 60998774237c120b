use std::sync::Arc;

use super::ind::{IndFunction, LevelValue, Transitions};
use super::tower::Tower;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::variety::{FiberSquare, MorphismModel, VarietyModel};

/// A levelwise morphism of towers `f_n: X_n → Y_n` whose squares
///
/// ```text
/// X_{n+1} ──f_{n+1}──▶ Y_{n+1}
///    │                    │
///    ▼                    ▼
///   X_n  ─────f_n─────▶  Y_n
/// ```
///
/// are fiber squares, for `n` below the truncation depth.
#[derive(Clone, Debug)]
pub struct ProMorphism<C: Scalar> {
    source: Arc<Tower<C>>,
    target: Arc<Tower<C>>,
    maps: Vec<Arc<MorphismModel<C>>>,
}

fn same<C: Scalar>(a: &Arc<VarietyModel<C>>, b: &Arc<VarietyModel<C>>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ModelMismatch {
            expected: b.name().to_string(),
            found: a.name().to_string(),
        })
    }
}

impl<C: Scalar> ProMorphism<C> {
    pub fn new(
        source: Arc<Tower<C>>,
        target: Arc<Tower<C>>,
        maps: Vec<Arc<MorphismModel<C>>>,
    ) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::InvalidArgument(
                "a pro-morphism needs at least one level".into(),
            ));
        }
        for (n, f) in maps.iter().enumerate() {
            same(f.source(), &source.level(n)?)?;
            same(f.target(), &target.level(n)?)?;
        }
        let out = ProMorphism {
            source,
            target,
            maps,
        };
        for n in 0..out.maps.len() - 1 {
            out.check_square(n)?;
        }
        Ok(out)
    }

    /// Identity on the first `depth + 1` levels.
    pub fn identity(tower: Arc<Tower<C>>, depth: usize) -> Result<Self> {
        let maps = (0..=depth)
            .map(|n| Ok(Arc::new(MorphismModel::identity(tower.level(n)?))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(tower.clone(), tower, maps)
    }

    pub fn source(&self) -> &Arc<Tower<C>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Tower<C>> {
        &self.target
    }

    pub fn map(&self, n: usize) -> Result<&Arc<MorphismModel<C>>> {
        let depth = self.depth();
        self.maps
            .get(n)
            .ok_or(Error::OutOfDepth { level: n, depth })
    }

    pub fn depth(&self) -> usize {
        self.maps.len() - 1
    }

    /// Rebuild the fiber product `X_n ×_{Y_n} Y_{n+1}` and compare it with
    /// `X_{n+1}` stratum by stratum: the map `x ↦ (π(x), f_{n+1}(x))` must be a
    /// bijection preserving classes and both fiber classes.
    pub fn check_square(&self, n: usize) -> Result<()> {
        let fail = |reason: String| Error::NotFiberSquare { level: n, reason };
        let (fn_, fm) = (&self.maps[n], &self.maps[n + 1]);
        let pi = self.source.bond(n)?;
        let rho = self.target.bond(n)?;
        let square = FiberSquare::new(fn_, &rho).map_err(|e| fail(e.to_string()))?;
        let x = fm.source();
        if x.len() != square.apex.len() {
            return Err(fail(format!(
                "{} strata but the fiber product has {}",
                x.len(),
                square.apex.len()
            )));
        }
        let mut hit = vec![false; square.apex.len()];
        for s in 0..x.len() {
            let (a, u) = (pi.image(s), fm.image(s));
            let w = (0..square.apex.len())
                .find(|&w| square.to_left.image(w) == a && square.to_right.image(w) == u)
                .ok_or_else(|| {
                    fail(format!(
                        "stratum `{}` does not lie over a point of the fiber product",
                        x.stratum(s).id
                    ))
                })?;
            if std::mem::replace(&mut hit[w], true) {
                return Err(fail(format!(
                    "two strata over `{}`",
                    square.apex.stratum(w).id
                )));
            }
            let id = &x.stratum(s).id;
            if x.class_of(s) != square.apex.class_of(w) {
                return Err(fail(format!(
                    "class of `{id}` is {} but should be {}",
                    x.class_of(s),
                    square.apex.class_of(w)
                )));
            }
            if pi.fiber(s) != square.to_left.fiber(w) || fm.fiber(s) != square.to_right.fiber(w) {
                return Err(fail(format!(
                    "fiber classes at `{id}` do not match the fiber product"
                )));
            }
        }
        Ok(())
    }

    /// `g ∘ f` levelwise.
    pub fn then(&self, other: &ProMorphism<C>) -> Result<ProMorphism<C>> {
        if !Arc::ptr_eq(&self.target, &other.source) {
            return Err(Error::TowerMismatch);
        }
        let depth = self.depth().min(other.depth());
        let maps = (0..=depth)
            .map(|n| Ok(Arc::new(self.maps[n].then(&other.maps[n])?)))
            .collect::<Result<Vec<_>>>()?;
        ProMorphism::new(self.source.clone(), other.target.clone(), maps)
    }

    /// `f_∞*[α_n] = [f_{n*}α_n]`, landing in the target tower with
    /// `target_transitions`. Twisted sources need twists pulled back from the
    /// target ones, `d_n = f_{n+1}^* b_n`.
    pub fn pushforward<V: LevelValue<C>>(
        &self,
        a: &IndFunction<C, V>,
        target_transitions: Arc<Transitions<V>>,
    ) -> Result<IndFunction<C, V>> {
        if !Arc::ptr_eq(a.tower(), &self.source) {
            return Err(Error::TowerMismatch);
        }
        let f = self.map(a.level())?;
        match (&**a.transitions(), &*target_transitions) {
            (Transitions::Plain, Transitions::Plain) => {}
            (Transitions::Twisted(d), Transitions::Twisted(b)) => {
                for n in a.level()..self.depth() {
                    let (Some(dn), Some(bn)) = (d.get(n), b.get(n)) else {
                        break;
                    };
                    if *dn != bn.pull_back(&self.maps[n + 1])? {
                        return Err(Error::TransitionMismatch);
                    }
                }
            }
            _ => return Err(Error::TransitionMismatch),
        }
        IndFunction::new(
            self.target.clone(),
            target_transitions,
            a.level(),
            a.value().push_forward(f)?,
        )
    }

    /// Pushforward with plain transitions on the target.
    pub fn pushforward_plain<V: LevelValue<C>>(
        &self,
        a: &IndFunction<C, V>,
    ) -> Result<IndFunction<C, V>> {
        self.pushforward(a, Arc::new(Transitions::Plain))
    }
}
