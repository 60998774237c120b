//! Relative Grothendieck group `K₀(V/X)` modeled as class-valued functions
//! on strata, and the transformations linking it to constructible functions.
//!
//! The value of a motivic function at a stratum `t` is the class of the fiber
//! over a point of `t`. Scissor relations hold by stratum additivity.

use std::fmt::Debug;
use std::sync::Arc;

use crate::error::Result;
use crate::ring::Poly;
use crate::scalar::Scalar;
use crate::variety::{ConstructibleFn, ConstructibleSet, MorphismModel, VarietyModel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotivicFn<C> {
    model: Arc<VarietyModel<C>>,
    values: Vec<Poly<C>>,
}

fn same_model<C: Scalar>(a: &Arc<VarietyModel<C>>, b: &Arc<VarietyModel<C>>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(crate::Error::ModelMismatch {
            expected: a.name().to_string(),
            found: b.name().to_string(),
        })
    }
}

impl<C: Scalar> MotivicFn<C> {
    pub fn zero(model: Arc<VarietyModel<C>>) -> Self {
        let values = vec![Poly::zero(); model.len()];
        MotivicFn { model, values }
    }

    /// `1_X = [X → X]`.
    pub fn one(model: Arc<VarietyModel<C>>) -> Self {
        let values = vec![Poly::one(); model.len()];
        MotivicFn { model, values }
    }

    pub fn from_values(model: Arc<VarietyModel<C>>, values: Vec<Poly<C>>) -> Result<Self> {
        if values.len() != model.len() {
            return Err(crate::Error::InvalidArgument(format!(
                "{} values for {} strata of `{}`",
                values.len(),
                model.len(),
                model.name()
            )));
        }
        Ok(MotivicFn { model, values })
    }

    pub fn from_pairs<S: AsRef<str>>(
        model: Arc<VarietyModel<C>>,
        pairs: &[(S, Poly<C>)],
    ) -> Result<Self> {
        let mut m = Self::zero(model);
        for (id, v) in pairs {
            let i = m.model.index_of(id.as_ref())?;
            m.values[i] = v.clone();
        }
        Ok(m)
    }

    /// The class of `h: W → X`: `m(t) = Σ_{h(s)=t} g_s`.
    pub fn from_morphism(h: &MorphismModel<C>) -> Self {
        let mut m = Self::zero(h.target().clone());
        for s in 0..h.source().len() {
            let t = h.image(s);
            m.values[t] = &m.values[t] + h.fiber(s);
        }
        m
    }

    /// `ι(α)`: integer values as constant classes.
    pub fn iota(alpha: &ConstructibleFn<C>) -> Self {
        MotivicFn {
            model: alpha.model().clone(),
            values: alpha
                .values()
                .iter()
                .map(|v| Poly::constant(v.clone()))
                .collect(),
        }
    }

    pub fn model(&self) -> &Arc<VarietyModel<C>> {
        &self.model
    }

    pub fn values(&self) -> &[Poly<C>] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Poly<C> {
        &self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Poly::is_zero)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&Poly<C>, &Poly<C>) -> Poly<C>) -> Result<Self> {
        same_model(&self.model, &other.model)?;
        Ok(MotivicFn {
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
        self.zip_with(other, |a, b| a + b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// `f_*m(u) = Σ_{f(t)=u} m(t)·g_t`.
    pub fn pushforward(&self, f: &MorphismModel<C>) -> Result<Self> {
        same_model(f.source(), &self.model)?;
        let mut out = Self::zero(f.target().clone());
        for (t, v) in self.values.iter().enumerate() {
            let u = f.image(t);
            out.values[u] = &out.values[u] + &(v * f.fiber(t));
        }
        Ok(out)
    }

    /// `g^*m(s) = m(g(s))`.
    pub fn pullback(&self, g: &MorphismModel<C>) -> Result<Self> {
        same_model(g.target(), &self.model)?;
        Ok(MotivicFn {
            model: g.source().clone(),
            values: g.images().iter().map(|&t| self.values[t].clone()).collect(),
        })
    }

    /// `χ_Gro(m) = Σ_t m(t)·[t]`, the pushforward to a point.
    pub fn chi_gro(&self) -> Poly<C> {
        self.values
            .iter()
            .enumerate()
            .map(|(t, v)| v * self.model.class_of(t))
            .sum()
    }

    /// `e(m)(t) = χ(m(t))`.
    pub fn e_transform(&self) -> Result<ConstructibleFn<C>> {
        let atoms = self.model.atoms();
        let values = self
            .values
            .iter()
            .map(|v| atoms.euler_of(v))
            .collect::<Result<Vec<_>>>()?;
        ConstructibleFn::from_values(self.model.clone(), values)
    }
}

/// `(m × n)(s, u) = m(s)·n(u)` on the product model.
pub fn motivic_exterior<C: Scalar>(m: &MotivicFn<C>, n: &MotivicFn<C>) -> MotivicFn<C> {
    let model = Arc::new(m.model.product(&n.model));
    let values = m
        .values
        .iter()
        .flat_map(|a| n.values.iter().map(move |b| a * b))
        .collect();
    MotivicFn { model, values }
}

/// `Γ(α) = χ_Gro(ι(α))`.
pub fn gamma_class<C: Scalar>(alpha: &ConstructibleFn<C>) -> Poly<C> {
    alpha.gamma_class()
}

/// A covariant/contravariant theory on variety models with an exterior
/// product, evaluated on either constructible or motivic functions.
pub trait Theory<C: Scalar> {
    type Element: Clone + PartialEq + Debug;

    fn unit(model: &Arc<VarietyModel<C>>) -> Self::Element;
    fn add(a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;
    fn push(f: &MorphismModel<C>, x: &Self::Element) -> Result<Self::Element>;
    fn pull(f: &MorphismModel<C>, x: &Self::Element) -> Result<Self::Element>;
    fn cross(a: &Self::Element, b: &Self::Element) -> Self::Element;
}

/// Constructible functions, `F`.
#[derive(Debug, Clone, Copy)]
pub struct Constructible;

/// The motivic shadow of `K₀(V/−)`.
#[derive(Debug, Clone, Copy)]
pub struct Motivic;

impl<C: Scalar> Theory<C> for Constructible {
    type Element = ConstructibleFn<C>;

    fn unit(model: &Arc<VarietyModel<C>>) -> Self::Element {
        ConstructibleFn::one(model.clone())
    }
    fn add(a: &Self::Element, b: &Self::Element) -> Result<Self::Element> {
        a.add(b)
    }
    fn push(f: &MorphismModel<C>, x: &Self::Element) -> Result<Self::Element> {
        f.pushforward(x)
    }
    fn pull(f: &MorphismModel<C>, x: &Self::Element) -> Result<Self::Element> {
        f.pullback(x)
    }
    fn cross(a: &Self::Element, b: &Self::Element) -> Self::Element {
        crate::variety::exterior_product(a, b)
    }
}

impl<C: Scalar> Theory<C> for Motivic {
    type Element = MotivicFn<C>;

    fn unit(model: &Arc<VarietyModel<C>>) -> Self::Element {
        MotivicFn::one(model.clone())
    }
    fn add(a: &Self::Element, b: &Self::Element) -> Result<Self::Element> {
        a.add(b)
    }
    fn push(f: &MorphismModel<C>, x: &Self::Element) -> Result<Self::Element> {
        x.pushforward(f)
    }
    fn pull(f: &MorphismModel<C>, x: &Self::Element) -> Result<Self::Element> {
        x.pullback(f)
    }
    fn cross(a: &Self::Element, b: &Self::Element) -> Self::Element {
        motivic_exterior(a, b)
    }
}

/// The canonical transformation out of `K₀(V/X)`:
/// `τ([h: W → X]) = h_* p_W^* 1_pt` in the theory `T`.
pub fn tau_canonical<C: Scalar, T: Theory<C>>(h: &MorphismModel<C>) -> Result<T::Element> {
    let to_point = MorphismModel::collapse(h.source().clone());
    let unit_pt = T::unit(to_point.target());
    T::push(h, &T::pull(&to_point, &unit_pt)?)
}

/// Closed and open halves; `None` for an empty side.
pub type Split<E> = (Option<E>, Option<E>);

/// The two halves of the unit of `X` split along a union of strata `Z` and
/// its complement: `(i_* i^* 1_X, j_* j^* 1_X)`. Either half is `None` when
/// its side is empty.
pub fn unit_split<C: Scalar, T: Theory<C>>(
    model: &Arc<VarietyModel<C>>,
    closed: &ConstructibleSet,
) -> Result<Split<T::Element>> {
    let unit = T::unit(model);
    let half = |set: &ConstructibleSet| -> Result<Option<T::Element>> {
        if set.is_empty() {
            return Ok(None);
        }
        let inc = MorphismModel::inclusion(model.clone(), set)?;
        Ok(Some(T::push(&inc, &T::pull(&inc, &unit)?)?))
    };
    Ok((half(closed)?, half(&closed.complement())?))
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

    fn model(name: &str, strata: &[(&str, &str)]) -> Arc<VarietyModel<BigInt>> {
        let atoms = Arc::new(AtomTable::new());
        let strata = strata
            .iter()
            .map(|(id, c)| Stratum::new(*id, p(c), name))
            .collect();
        Arc::new(VarietyModel::new(name, atoms, strata).unwrap())
    }

    fn p1() -> Arc<VarietyModel<BigInt>> {
        model("P1", &[("p", "1"), ("c", "L")])
    }

    fn pt() -> Arc<VarietyModel<BigInt>> {
        model("PT", &[("pt", "1")])
    }

    fn proj() -> MorphismModel<BigInt> {
        MorphismModel::to_point(p1(), pt()).unwrap()
    }

    #[test]
    fn classes_of_morphisms() {
        let id = MorphismModel::identity(p1());
        assert_eq!(MotivicFn::from_morphism(&id), MotivicFn::one(p1()));
        assert_eq!(MotivicFn::from_morphism(&proj()).values(), &[p("1 + L")]);
        let two = model("TWO", &[("a", "1"), ("b", "1")]);
        let cover = MorphismModel::to_point(two, pt()).unwrap();
        assert_eq!(MotivicFn::from_morphism(&cover).values(), &[p("2")]);
    }

    #[test]
    fn pushforward_is_composition() {
        let one = MotivicFn::one(p1());
        assert_eq!(one.pushforward(&proj()).unwrap().values(), &[p("1 + L")]);
        assert_eq!(
            one.pushforward(&MorphismModel::identity(p1())).unwrap(),
            one
        );
    }

    #[test]
    fn pullback_of_unit_is_unit() {
        let pulled = MotivicFn::one(pt()).pullback(&proj()).unwrap();
        assert_eq!(pulled, MotivicFn::one(p1()));
    }

    #[test]
    fn chi_gro_values() {
        assert_eq!(MotivicFn::one(p1()).chi_gro(), p("1 + L"));
        assert_eq!(MotivicFn::one(pt()).chi_gro(), p("1"));
        let h = proj();
        assert_eq!(
            MotivicFn::from_morphism(&h).chi_gro(),
            h.source().total_class()
        );
    }

    #[test]
    fn e_and_iota() {
        assert!(MotivicFn::one(p1()).e_transform().unwrap().is_unit());
        let e = MotivicFn::from_morphism(&proj()).e_transform().unwrap();
        assert_eq!(e, proj().pushforward(&ConstructibleFn::one(p1())).unwrap());
        let w = ConstructibleFn::from_pairs(p1(), &[("c", BigInt::from(1))]).unwrap();
        assert_eq!(MotivicFn::iota(&w).values(), &[p("0"), p("1")]);
        assert_eq!(MotivicFn::iota(&w).e_transform().unwrap(), w);
        assert!(MotivicFn::iota(&ConstructibleFn::zero(p1())).is_zero());
    }

    #[test]
    fn gamma_is_not_covariant() {
        let a1 = model("A1", &[("a", "L")]);
        let one = ConstructibleFn::one(a1.clone());
        assert_eq!(gamma_class(&one), p("L"));
        let f = MorphismModel::collapse(a1);
        let pushed = f.pushforward(&one).unwrap();
        assert_eq!(gamma_class(&pushed), p("1"));
        assert_ne!(gamma_class(&pushed), gamma_class(&one));
        assert_eq!(gamma_class(&ConstructibleFn::zero(p1())), P::zero());
    }

    #[test]
    fn tau_on_projection() {
        let h = proj();
        let f = tau_canonical::<BigInt, Constructible>(&h).unwrap();
        assert_eq!(f.values(), &[BigInt::from(2)]);
        let id = MorphismModel::identity(p1());
        assert!(tau_canonical::<BigInt, Constructible>(&id)
            .unwrap()
            .is_unit());
        assert_eq!(
            tau_canonical::<BigInt, Motivic>(&h).unwrap(),
            MotivicFn::from_morphism(&h)
        );
    }

    #[test]
    fn unit_is_additive_over_a_split() {
        let x = model("X", &[("a", "1"), ("b", "L"), ("c", "L^2")]);
        let z = ConstructibleSet::from_ids(&x, &["b"]).unwrap();
        let (closed, open) = unit_split::<BigInt, Motivic>(&x, &z).unwrap();
        assert_eq!(
            closed.unwrap().add(&open.unwrap()).unwrap(),
            MotivicFn::one(x.clone())
        );
        let (closed, open) = unit_split::<BigInt, Constructible>(&x, &z).unwrap();
        assert!(closed.unwrap().add(&open.unwrap()).unwrap().is_unit());
    }
}
