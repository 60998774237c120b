//! Standard models and the canonical towers built from them.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::prolim::{
    cylinder_function, Characteristic, IndFunction, MultiplierSystem, Tower, TowerRule,
};
use crate::ring::{AtomTable, LocalizedClass, Poly};
use crate::scalar::Scalar;
use crate::variety::{ConstructibleFn, ConstructibleSet, MorphismModel, Stratum, VarietyModel};

fn model<C: Scalar>(
    name: &str,
    atoms: &Arc<AtomTable<C>>,
    strata: &[(&str, &str)],
    smooth: Option<u32>,
) -> Arc<VarietyModel<C>> {
    let strata = strata
        .iter()
        .map(|(id, class)| Stratum::new(*id, class.parse().expect("standard class parses"), name))
        .collect();
    let m = VarietyModel::new(name, atoms.clone(), strata).expect("standard model is valid");
    Arc::new(match smooth {
        Some(d) => m.with_smooth_dim(d),
        None => m,
    })
}

/// `PT`, one stratum of class 1.
pub fn point<C: Scalar>(atoms: &Arc<AtomTable<C>>) -> Arc<VarietyModel<C>> {
    model("PT", atoms, &[("pt", "1")], Some(0))
}

/// Two points on separate components.
pub fn two_points<C: Scalar>(atoms: &Arc<AtomTable<C>>) -> Arc<VarietyModel<C>> {
    k_points(atoms, 2)
}

/// `P1 = pt ⊔ A¹`: the point `p` at infinity and the chart `c`.
pub fn p1<C: Scalar>(atoms: &Arc<AtomTable<C>>) -> Arc<VarietyModel<C>> {
    model("P1", atoms, &[("p", "1"), ("c", "L")], Some(1))
}

pub fn affine_line<C: Scalar>(atoms: &Arc<AtomTable<C>>) -> Arc<VarietyModel<C>> {
    model("A1", atoms, &[("o", "L")], Some(1))
}

/// `A²` split into the origin `o` and its complement `r`.
pub fn affine_plane<C: Scalar>(atoms: &Arc<AtomTable<C>>) -> Arc<VarietyModel<C>> {
    model("A2", atoms, &[("o", "1"), ("r", "L^2 - 1")], Some(2))
}

/// `k` points `0, …, k−1`, each its own component.
pub fn k_points<C: Scalar>(atoms: &Arc<AtomTable<C>>, k: usize) -> Arc<VarietyModel<C>> {
    let strata = (0..k)
        .map(|i| Stratum::new(i.to_string(), Poly::one(), i.to_string()))
        .collect();
    Arc::new(
        VarietyModel::new(format!("K{k}"), atoms.clone(), strata)
            .expect("point sets are valid")
            .with_smooth_dim(0),
    )
}

/// Parameters of a canonical tower.
#[derive(Clone, Debug)]
pub enum TowerShape<C: Scalar> {
    /// `X^{n+1}` at level `n`.
    Power { base: Arc<VarietyModel<C>> },
    /// Truncated arcs on a smooth `X` of dimension `dim`.
    Arc {
        base: Arc<VarietyModel<C>>,
        dim: u32,
    },
    /// `k^{n+1}` symbol strings at level `n`.
    Sequence { atoms: Arc<AtomTable<C>>, k: usize },
    /// `X_{n+1}` a bundle over `X_n` with fiber `F_n`.
    LocallyTrivial {
        base: Arc<VarietyModel<C>>,
        fibers: Vec<Arc<VarietyModel<C>>>,
    },
    /// Levels and bonds given outright.
    Explicit {
        levels: Vec<Arc<VarietyModel<C>>>,
        bonds: Vec<Arc<MorphismModel<C>>>,
    },
}

impl<C: Scalar> TowerShape<C> {
    pub fn kind(&self) -> &'static str {
        match self {
            TowerShape::Power { .. } => "power",
            TowerShape::Arc { .. } => "arc",
            TowerShape::Sequence { .. } => "sequence",
            TowerShape::LocallyTrivial { .. } => "locally_trivial",
            TowerShape::Explicit { .. } => "explicit",
        }
    }

    pub fn build(&self, name: &str) -> Result<Tower<C>> {
        let tower = match self {
            TowerShape::Power { base } => build_power_tower(base)?,
            TowerShape::Arc { base, dim } => build_arc_tower(base, *dim)?,
            TowerShape::Sequence { atoms, k } => build_sequence_tower(atoms, *k)?,
            TowerShape::LocallyTrivial { base, fibers } => {
                build_locally_trivial_tower(base, fibers)?
            }
            TowerShape::Explicit { levels, bonds } => {
                Tower::explicit(name, levels.clone(), bonds.clone())?
            }
        };
        Ok(tower.renamed(name))
    }
}

struct PowerRule<C>(Arc<VarietyModel<C>>);

impl<C: Scalar> TowerRule<C> for PowerRule<C> {
    fn base(&self) -> Result<VarietyModel<C>> {
        Ok((*self.0).clone())
    }

    fn grow(&self, n: usize, level_n: &Arc<VarietyModel<C>>) -> Result<MorphismModel<C>> {
        let x = &self.0;
        let next = Arc::new(
            level_n
                .product(x)
                .renamed(format!("{}^{}", x.name(), n + 2)),
        );
        let k = x.len();
        let images = (0..next.len()).map(|i| i / k).collect();
        let fibers = (0..next.len()).map(|i| x.class_of(i % k).clone()).collect();
        MorphismModel::new(format!("pr{n}"), next, level_n.clone(), images, fibers)
    }
}

/// `X^ℕ`: level `k` is `X^{k+1}`, bonds forget the last factor.
///
/// Declares Euler steps `χ(X)` and class steps `[X]`; a vanishing step is
/// left undeclared (see [`power_multipliers`]).
pub fn build_power_tower<C: Scalar>(x: &Arc<VarietyModel<C>>) -> Result<Tower<C>> {
    let chi = x.chi();
    let class = x.total_class();
    let tower = Tower::from_rule(format!("{}^N", x.name()), PowerRule(x.clone()))?;
    Ok(tower
        .with_declared(
            Characteristic::Euler,
            (!chi.is_zero())
                .then(|| MultiplierSystem::constant(Poly::constant(chi)))
                .transpose()?,
        )
        .with_declared(
            Characteristic::Gamma,
            (!class.is_zero())
                .then(|| MultiplierSystem::constant(class))
                .transpose()?,
        ))
}

/// The constant multiplier system of the power tower of `x`.
pub fn power_multipliers<C: Scalar>(
    x: &VarietyModel<C>,
    kind: Characteristic,
) -> Result<MultiplierSystem<C>> {
    let step = match kind {
        Characteristic::Euler => Poly::constant(x.chi()),
        Characteristic::Gamma => x.total_class(),
    };
    MultiplierSystem::constant(step)
}

struct ArcRule<C> {
    base: Arc<VarietyModel<C>>,
    fiber: Poly<C>,
}

impl<C: Scalar> TowerRule<C> for ArcRule<C> {
    fn base(&self) -> Result<VarietyModel<C>> {
        Ok((*self.base)
            .clone()
            .renamed(format!("L0({})", self.base.name())))
    }

    fn grow(&self, n: usize, level_n: &Arc<VarietyModel<C>>) -> Result<MorphismModel<C>> {
        let strata = level_n
            .strata()
            .iter()
            .map(|s| Stratum::new(s.id.clone(), &s.class * &self.fiber, s.component.clone()))
            .collect();
        let mut next = VarietyModel::new(
            format!("L{}({})", n + 1, self.base.name()),
            level_n.atoms().clone(),
            strata,
        )?;
        if let Some(d) = level_n.smooth_dim() {
            next = next.with_smooth_dim(d);
        }
        let k = level_n.len();
        MorphismModel::new(
            format!("tr{n}"),
            Arc::new(next),
            level_n.clone(),
            (0..k).collect(),
            vec![self.fiber.clone(); k],
        )
    }
}

/// Truncated arcs of a smooth `X` of dimension `d`: level `n` has the strata
/// of `X` with classes `[s]·L^{nd}`, bonds are affine bundles with fiber `L^d`.
pub fn build_arc_tower<C: Scalar>(x: &Arc<VarietyModel<C>>, d: u32) -> Result<Tower<C>> {
    if x.smooth_dim() != Some(d) {
        return Err(Error::InvalidArgument(format!(
            "`{}` is not flagged smooth of dimension {d}",
            x.name()
        )));
    }
    let fiber = Poly::atom(crate::ring::LINE).pow(d);
    let tower = Tower::from_rule(
        format!("L({})", x.name()),
        ArcRule {
            base: x.clone(),
            fiber: fiber.clone(),
        },
    )?;
    Ok(tower
        .with_declared(
            Characteristic::Euler,
            Some(MultiplierSystem::constant(Poly::one())?),
        )
        .with_declared(
            Characteristic::Gamma,
            Some(MultiplierSystem::constant(fiber)?),
        ))
}

/// The shift space `k^ℕ`: the power tower of `k` points.
pub fn build_sequence_tower<C: Scalar>(atoms: &Arc<AtomTable<C>>, k: usize) -> Result<Tower<C>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "alphabet size {k} is below 2"
        )));
    }
    Ok(build_power_tower(&k_points(atoms, k))?.renamed(format!("{k}^N")))
}

struct BundleRule<C> {
    base: Arc<VarietyModel<C>>,
    fibers: Vec<Poly<C>>,
}

impl<C: Scalar> TowerRule<C> for BundleRule<C> {
    fn base(&self) -> Result<VarietyModel<C>> {
        Ok((*self.base).clone())
    }

    fn grow(&self, n: usize, level_n: &Arc<VarietyModel<C>>) -> Result<MorphismModel<C>> {
        let fiber = &self.fibers[n];
        let strata = level_n
            .strata()
            .iter()
            .map(|s| Stratum::new(s.id.clone(), &s.class * fiber, s.component.clone()))
            .collect();
        let next = VarietyModel::new(
            format!("{}_{}", self.base.name(), n + 1),
            level_n.atoms().clone(),
            strata,
        )?;
        let k = level_n.len();
        MorphismModel::new(
            format!("bundle{n}"),
            Arc::new(next),
            level_n.clone(),
            (0..k).collect(),
            vec![fiber.clone(); k],
        )
    }

    fn depth(&self) -> Option<usize> {
        Some(self.fibers.len())
    }
}

/// `X_{n+1} → X_n` a locally trivial bundle with fiber `F_n`, for `n` below
/// the number of fibers. Declares steps `χ(F_n)` and `[F_n]`; the Euler steps
/// are left undeclared when some `χ(F_n)` vanishes.
pub fn build_locally_trivial_tower<C: Scalar>(
    base: &Arc<VarietyModel<C>>,
    fibers: &[Arc<VarietyModel<C>>],
) -> Result<Tower<C>> {
    let classes: Vec<Poly<C>> = fibers.iter().map(|f| f.total_class()).collect();
    let euler: Vec<Poly<C>> = fibers.iter().map(|f| Poly::constant(f.chi())).collect();
    let chi = if euler.iter().any(Poly::is_zero) {
        None
    } else {
        Some(MultiplierSystem::new(euler, None)?)
    };
    let gamma = MultiplierSystem::new(classes.clone(), None)?;
    let tower = Tower::from_rule(
        format!("{}~", base.name()),
        BundleRule {
            base: base.clone(),
            fibers: classes,
        },
    )?;
    Ok(tower
        .with_declared(Characteristic::Euler, chi)
        .with_declared(Characteristic::Gamma, Some(gamma)))
}

/// `Γ(1_C) / p(0, n)` for the cylinder over `C` at level `n`, using the
/// tower's declared class multipliers.
pub fn motivic_measure<C: Scalar>(
    tower: &Arc<Tower<C>>,
    n: usize,
    set: &ConstructibleSet,
) -> Result<LocalizedClass<C>> {
    let steps = tower
        .declared(Characteristic::Gamma)
        .ok_or_else(|| Error::Uncertified(tower.name().to_string()))?
        .clone();
    let cylinder: IndFunction<C, ConstructibleFn<C>> = cylinder_function(tower, n, set)?;
    cylinder.pro_characteristic(&steps, Characteristic::Gamma)
}

/// `d_k(a, b) = Σ_n |a_n − b_n| / k^n` on prefixes of length `m`: the exact
/// partial sum and the bound `k^{1−m}` on the remaining terms.
pub fn sequence_metric(k: u32, a: &[u32], b: &[u32]) -> Result<(BigRational, BigRational)> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "alphabet size {k} is below 2"
        )));
    }
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "prefix lengths {} and {} differ",
            a.len(),
            b.len()
        )));
    }
    if let Some(&symbol) = a.iter().chain(b).find(|&&s| s >= k) {
        return Err(Error::SymbolOutOfRange { symbol, k });
    }
    let base = BigInt::from(k);
    let mut weight = BigRational::one();
    let mut partial = BigRational::zero();
    for (&x, &y) in a.iter().zip(b) {
        let diff = (BigInt::from(x) - BigInt::from(y)).abs();
        partial += &weight * BigRational::from_integer(diff);
        weight /= BigRational::from_integer(base.clone());
    }
    let tail = weight * BigRational::from_integer(base);
    Ok((partial, tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<BigInt>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    fn atoms() -> Arc<AtomTable<BigInt>> {
        Arc::new(AtomTable::new())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn power_tower_of_p1() {
        let t = build_power_tower(&p1(&atoms())).unwrap();
        assert_eq!(t.level(1).unwrap().len(), 4);
        let bond = t.bond(0).unwrap();
        assert!((0..4).all(|s| [P::one(), p("L")].contains(bond.fiber(s))));
        for kind in [Characteristic::Euler, Characteristic::Gamma] {
            let steps = t.declared(kind).unwrap();
            assert!(t.certify(kind, steps, 0, 4).is_valid());
        }
        assert_eq!(
            t.declared(Characteristic::Euler).unwrap().step(3).unwrap(),
            &p("2")
        );
    }

    #[test]
    fn power_tower_of_a_point() {
        let t = build_power_tower(&point(&atoms())).unwrap();
        assert_eq!(t.level(4).unwrap().len(), 1);
        assert_eq!(
            t.declared(Characteristic::Gamma).unwrap().step(0).unwrap(),
            &P::one()
        );
    }

    #[test]
    fn vanishing_euler_multiplier() {
        let a = atoms();
        let x = Arc::new(
            VarietyModel::new("G", a.clone(), vec![Stratum::new("g", p("L - 1"), "G")]).unwrap(),
        );
        let t = build_power_tower(&x).unwrap();
        assert!(t.declared(Characteristic::Euler).is_none());
        assert_eq!(
            power_multipliers(&x, Characteristic::Euler).unwrap_err(),
            Error::ZeroMultiplier { step: 0 }
        );
    }

    #[test]
    fn arc_towers() {
        let a = atoms();
        let t = build_arc_tower(&affine_line(&a), 1).unwrap();
        assert_eq!(t.level(3).unwrap().class_of(0), &p("L^4"));
        assert_eq!(t.composite_bond(1, 3).unwrap().fiber(0), &p("L^2"));
        let t2 = build_arc_tower(&affine_plane(&a), 2).unwrap();
        assert_eq!(t2.level(3).unwrap().total_class(), p("L^8"));
        assert!(build_arc_tower(&affine_plane(&a), 1).is_err());
        let unflagged = Arc::new((*affine_line(&a)).clone().renamed("A1"));
        let plain = Arc::new(VarietyModel::new("A1", a, unflagged.strata().to_vec()).unwrap());
        assert!(build_arc_tower(&plain, 1).is_err());
    }

    #[test]
    fn measures() {
        let a = atoms();
        for (x, d, want) in [
            (affine_line(&a), 1, "L"),
            (affine_plane(&a), 2, "L^2"),
            (p1(&a), 1, "L + 1"),
        ] {
            let t = Arc::new(build_arc_tower(&x, d).unwrap());
            for n in 0..4 {
                let full = ConstructibleSet::all(&t.level(n).unwrap());
                let m = motivic_measure(&t, n, &full).unwrap();
                assert_eq!(m.normalize().to_string(), want);
                let empty = ConstructibleSet::empty(&t.level(n).unwrap());
                assert_eq!(motivic_measure(&t, n, &empty).unwrap().to_string(), "0");
            }
        }
        let t = Arc::new(build_arc_tower(&affine_plane(&a), 2).unwrap());
        let origin = ConstructibleSet::from_ids(&t.level(3).unwrap(), &["o"]).unwrap();
        let m = motivic_measure(&t, 3, &origin).unwrap();
        assert_eq!(m.numerator(), &p("L^6"));
        assert_eq!(m.denominator(), p("L^6"));
    }

    #[test]
    fn sequence_towers() {
        let a = atoms();
        let t = build_sequence_tower(&a, 2).unwrap();
        assert_eq!(t.level(1).unwrap().len(), 4);
        let c = t.bond(0).unwrap().classify(None).unwrap();
        assert_eq!(c.chi_constant, Some(BigInt::from(2)));
        let c3 = build_sequence_tower(&a, 3)
            .unwrap()
            .bond(1)
            .unwrap()
            .classify(None)
            .unwrap();
        assert_eq!(c3.chi_constant, Some(BigInt::from(3)));
        assert!(build_sequence_tower(&a, 1).is_err());

        let t = Arc::new(t);
        let one = ConstructibleSet::from_indices(&t.level(3).unwrap(), [5]).unwrap();
        let m = motivic_measure(&t, 3, &one).unwrap();
        assert_eq!(m.to_string(), "1 / 8");
    }

    #[test]
    fn bundle_towers() {
        let a = atoms();
        let pt = point(&a);
        let t = build_locally_trivial_tower(&pt, &[p1(&a), p1(&a)]).unwrap();
        assert_eq!(
            t.declared(Characteristic::Euler).unwrap().step(1).unwrap(),
            &p("2")
        );
        assert_eq!(
            t.declared(Characteristic::Gamma).unwrap().step(0).unwrap(),
            &p("L + 1")
        );
        assert_eq!(
            t.level(3).unwrap_err(),
            Error::OutOfDepth { level: 3, depth: 2 }
        );

        let mixed = build_locally_trivial_tower(&pt, &[p1(&a), affine_line(&a)]).unwrap();
        let g = mixed.declared(Characteristic::Gamma).unwrap();
        assert_eq!(g.fraction(P::one(), 2).unwrap().denominator(), p("L^2 + L"));
        assert!(mixed.certify(Characteristic::Gamma, g, 0, 2).is_valid());

        let trivial = build_locally_trivial_tower(&pt, std::slice::from_ref(&pt)).unwrap();
        assert_eq!(trivial.bond(0).unwrap().fiber(0), &P::one());
    }

    #[test]
    fn metric() {
        assert_eq!(
            sequence_metric(2, &[0, 1, 1], &[0, 1, 1]).unwrap().0,
            q(0, 1)
        );
        assert_eq!(
            sequence_metric(2, &[0; 4], &[1; 4]).unwrap(),
            (q(15, 8), q(1, 8))
        );
        assert_eq!(sequence_metric(3, &[0], &[2]).unwrap(), (q(2, 1), q(1, 1)));
        assert_eq!(
            sequence_metric(2, &[0], &[2]).unwrap_err(),
            Error::SymbolOutOfRange { symbol: 2, k: 2 }
        );
        assert!(sequence_metric(2, &[0], &[]).is_err());
    }
}
