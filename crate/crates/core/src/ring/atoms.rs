use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ring::poly::{is_atom_name, Poly};
use crate::scalar::Scalar;

/// Class of the affine line.
pub const LINE: &str = "L";
/// Reserved Hodge variables.
pub const HODGE_U: &str = "u";
pub const HODGE_V: &str = "v";

/// A generator of the symbolic Grothendieck ring together with its
/// Euler characteristic and, optionally, its Hodge polynomial in `u`, `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom<C> {
    pub name: String,
    pub euler: C,
    pub hodge: Option<Poly<C>>,
}

impl<C: Scalar> Atom<C> {
    pub fn new(name: impl Into<String>, euler: C, hodge: Option<Poly<C>>) -> Result<Self> {
        let name = name.into();
        if !is_atom_name(&name) {
            return Err(Error::InvalidAtomName(name));
        }
        if name == HODGE_U || name == HODGE_V {
            return Err(Error::ReservedAtom(name));
        }
        if let Some(h) = &hodge {
            let at_one = specialize_hodge(h, &Poly::one(), &Poly::one())?;
            if at_one != Poly::constant(euler.clone()) {
                return Err(Error::HodgeMismatch {
                    atom: name,
                    expected: euler.to_string(),
                    found: at_one.to_string(),
                });
            }
        }
        Ok(Atom { name, euler, hodge })
    }
}

/// Declared atoms. `L` is always present, by default with Euler
/// characteristic 1 and Hodge polynomial `u*v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomTable<C> {
    atoms: Vec<Atom<C>>,
}

impl<C: Scalar> Default for AtomTable<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Scalar> AtomTable<C> {
    pub fn new() -> Self {
        let uv = &Poly::atom(HODGE_U) * &Poly::atom(HODGE_V);
        AtomTable {
            atoms: vec![Atom {
                name: LINE.to_string(),
                euler: C::one(),
                hodge: Some(uv),
            }],
        }
    }

    /// Declare a new atom. Redeclaring `L` replaces its default data; any
    /// other repeated name is an error.
    pub fn declare(&mut self, atom: Atom<C>) -> Result<()> {
        match self.atoms.iter().position(|a| a.name == atom.name) {
            Some(0) if atom.name == LINE => {
                self.atoms[0] = atom;
                Ok(())
            }
            Some(_) => Err(Error::DuplicateAtom(atom.name)),
            None => {
                self.atoms.push(atom);
                Ok(())
            }
        }
    }

    pub fn with(mut self, name: &str, euler: i64, hodge: Option<&str>) -> Result<Self> {
        let hodge = hodge.map(str::parse).transpose()?;
        self.declare(Atom::new(name, C::from(euler), hodge)?)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&Atom<C>> {
        self.atoms.iter().find(|a| a.name == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom<C>> {
        self.atoms.iter()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// The integer Euler evaluation: each atom goes to the constant `euler`.
    pub fn euler_map(&self) -> EvaluationMap<C> {
        EvaluationMap::from_pairs(
            self.atoms
                .iter()
                .map(|a| (a.name.clone(), Poly::constant(a.euler.clone()))),
        )
    }

    /// The Hodge evaluation into `Z[u, v]`. Atoms without a Hodge polynomial
    /// stay unassigned.
    pub fn hodge_map(&self) -> EvaluationMap<C> {
        EvaluationMap::from_pairs(
            self.atoms
                .iter()
                .filter_map(|a| a.hodge.clone().map(|h| (a.name.clone(), h))),
        )
    }

    /// Integer Euler characteristic of a class.
    pub fn euler_of(&self, p: &Poly<C>) -> Result<C> {
        let value = p.substitute(|a| self.get(a).map(|atom| Poly::constant(atom.euler.clone())))?;
        Ok(value
            .as_constant()
            .expect("euler evaluation lands in constants"))
    }
}

/// Ring homomorphism data: the image of each atom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EvaluationMap<C> {
    assignment: BTreeMap<String, Poly<C>>,
}

impl<C: Scalar> EvaluationMap<C> {
    pub fn new() -> Self {
        EvaluationMap {
            assignment: BTreeMap::new(),
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, Poly<C>)>) -> Self {
        EvaluationMap {
            assignment: pairs.into_iter().collect(),
        }
    }

    pub fn assign(mut self, atom: impl Into<String>, image: Poly<C>) -> Self {
        self.assignment.insert(atom.into(), image);
        self
    }

    pub fn image(&self, atom: &str) -> Option<&Poly<C>> {
        self.assignment.get(atom)
    }

    pub fn evaluate(&self, p: &Poly<C>) -> Result<Poly<C>> {
        p.substitute(|a| self.assignment.get(a).cloned())
    }
}

/// Substitute values for the Hodge variables `u` and `v`.
pub fn specialize_hodge<C: Scalar>(p: &Poly<C>, u: &Poly<C>, v: &Poly<C>) -> Result<Poly<C>> {
    if let Some(bad) = p.atoms().into_iter().find(|a| a != HODGE_U && a != HODGE_V) {
        return Err(Error::NonReservedAtom(bad));
    }
    EvaluationMap::new()
        .assign(HODGE_U, u.clone())
        .assign(HODGE_V, v.clone())
        .evaluate(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = Poly<BigInt>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    fn table() -> AtomTable<BigInt> {
        AtomTable::new().with("T", 0, Some("u*v - 1")).unwrap()
    }

    #[test]
    fn euler_of_affine_classes() {
        let eps = table().euler_map();
        assert_eq!(eps.evaluate(&p("1 + L")).unwrap(), p("2"));
        assert_eq!(eps.evaluate(&p("2")).unwrap(), p("2"));
        assert_eq!(eps.evaluate(&p("T^3 + L")).unwrap(), p("1"));
    }

    #[test]
    fn hodge_of_projective_line() {
        let h = table().hodge_map();
        assert_eq!(h.evaluate(&p("1 + L")).unwrap(), p("1 + u*v"));
    }

    #[test]
    fn unassigned_atom_is_named() {
        let eps = table().euler_map();
        assert_eq!(
            eps.evaluate(&p("L + Q")),
            Err(Error::UnassignedAtom("Q".into()))
        );
    }

    #[test]
    fn chi_y_specialization() {
        let lhs = specialize_hodge(&p("1 + u*v"), &p("-y"), &p("1")).unwrap();
        // chi_y(P^1) = chi(O) + chi(Omega^1) y = 1 - y
        assert_eq!(lhs, p("1 - y"));
        assert_eq!(
            specialize_hodge(&p("1 + u*v"), &p("1"), &p("1")).unwrap(),
            p("2")
        );
        let q = p("3*u^2*v - u + 4");
        assert_eq!(specialize_hodge(&q, &p("u"), &p("v")).unwrap(), q);
        assert_eq!(
            specialize_hodge(&p("u + L"), &p("1"), &p("1")),
            Err(Error::NonReservedAtom("L".into()))
        );
    }

    #[test]
    fn atom_invariants() {
        assert!(matches!(
            Atom::<BigInt>::new("u", BigInt::from(1), None),
            Err(Error::ReservedAtom(_))
        ));
        assert!(matches!(
            Atom::<BigInt>::new("", BigInt::from(1), None),
            Err(Error::InvalidAtomName(_))
        ));
        assert!(matches!(
            Atom::new("E", BigInt::from(3), Some(p("u*v"))),
            Err(Error::HodgeMismatch { .. })
        ));
        let mut t = table();
        assert!(matches!(
            t.declare(Atom::new("T", BigInt::from(0), None).unwrap()),
            Err(Error::DuplicateAtom(_))
        ));
        // L may be redeclared
        t.declare(Atom::new("L", BigInt::from(1), None).unwrap())
            .unwrap();
        assert_eq!(t.get("L").unwrap().hodge, None);
    }

    #[test]
    fn declared_hodge_matches_euler_at_one() {
        for a in table().iter() {
            let h = a.hodge.as_ref().unwrap();
            assert_eq!(
                specialize_hodge(h, &P::one(), &P::one()).unwrap(),
                P::constant(a.euler.clone())
            );
        }
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_hom(a in super::super::poly::tests::arb_poly(), b in super::super::poly::tests::arb_poly()) {
            // arb_poly draws from L, T, u; give u an image too
            let e = table().euler_map().assign("u", p("2"));
            let ev = |x: &P| e.evaluate(x).unwrap();
            prop_assert_eq!(ev(&(&a * &b)), &ev(&a) * &ev(&b));
            prop_assert_eq!(ev(&(&a + &b)), &ev(&a) + &ev(&b));
            prop_assert_eq!(ev(&P::one()), P::one());
        }
    }
}
