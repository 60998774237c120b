use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lex::{tokenize, Cursor, Tok};
use crate::scalar::Scalar;

/// Power product of named atoms. The empty product is the unit monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(BTreeMap<String, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn atom(name: impl Into<String>) -> Self {
        Self::atom_pow(name, 1)
    }

    pub fn atom_pow(name: impl Into<String>, exp: u32) -> Self {
        let mut m = BTreeMap::new();
        if exp > 0 {
            m.insert(name.into(), exp);
        }
        Monomial(m)
    }

    /// Zero exponents are dropped, repeated names accumulate.
    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, u32)>) -> Self {
        let mut m: BTreeMap<String, u32> = BTreeMap::new();
        for (name, e) in pairs {
            if e > 0 {
                *m.entry(name.into()).or_insert(0) += e;
            }
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponent(&self, atom: &str) -> u32 {
        self.0.get(atom).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (k, v) in &other.0 {
            *m.entry(k.clone()).or_insert(0) += v;
        }
        Monomial(m)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = self.0.clone();
        for (k, v) in &other.0 {
            let e = m.get_mut(k)?;
            match (*e).cmp(v) {
                Ordering::Less => return None,
                Ordering::Equal => {
                    m.remove(k);
                }
                Ordering::Greater => *e -= v,
            }
        }
        Some(Monomial(m))
    }
}

/// Graded lexicographic order: total degree first, then exponents compared
/// atom by atom in ascending name order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let names: BTreeSet<&String> = self.0.keys().chain(other.0.keys()).collect();
        for name in names {
            match self.exponent(name).cmp(&other.exponent(name)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (name, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial with exact integer coefficients over named atoms.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> Self {
        Self::constant(C::from(c))
    }

    pub fn atom(name: impl Into<String>) -> Self {
        Self::term(C::one(), Monomial::atom(name))
    }

    pub fn term(c: C, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(a, _)| a.to_string()))
            .collect()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, k)| (n.mul(m), k.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `q` with `self = q * divisor`, or `None` when the
    /// divisor does not divide `self` in the integer polynomial ring.
    pub fn exact_div(&self, divisor: &Poly<C>) -> Result<Option<Poly<C>>> {
        let (lead_m, lead_c) = divisor.leading_term().ok_or(Error::ZeroDivisor)?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // When the divisor divides, the remainder stays a multiple of it and its
        // leading term is always divisible by the divisor's leading term.
        while let Some((m, c)) = rem.leading_term() {
            let Some(qm) = m.div(lead_m) else {
                return Ok(None);
            };
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return Ok(None);
            }
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    /// Ring homomorphism sending each atom through `assign`.
    pub fn substitute<F>(&self, mut assign: F) -> Result<Poly<C>>
    where
        F: FnMut(&str) -> Option<Poly<C>>,
    {
        let mut cache: BTreeMap<String, Poly<C>> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (atom, e) in m.factors() {
                if !cache.contains_key(atom) {
                    let image =
                        assign(atom).ok_or_else(|| Error::UnassignedAtom(atom.to_string()))?;
                    cache.insert(atom.to_string(), image);
                }
                t = &t * &cache[atom].pow(e);
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Parse one polynomial expression from a token cursor, stopping at the
    /// first token that cannot continue it.
    pub fn parse_from(cur: &mut Cursor<'_>) -> Result<Self> {
        parse_sum(cur)
    }
}

fn parse_sum<C: Scalar>(cur: &mut Cursor<'_>) -> Result<Poly<C>> {
    let mut acc = if cur.eat_sym('-') {
        -parse_product(cur)?
    } else {
        parse_product(cur)?
    };
    loop {
        if cur.eat_sym('+') {
            acc = &acc + &parse_product(cur)?;
        } else if cur.eat_sym('-') {
            acc = &acc - &parse_product(cur)?;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_product<C: Scalar>(cur: &mut Cursor<'_>) -> Result<Poly<C>> {
    let mut acc = parse_power(cur)?;
    while cur.eat_sym('*') {
        acc = &acc * &parse_power(cur)?;
    }
    Ok(acc)
}

fn parse_power<C: Scalar>(cur: &mut Cursor<'_>) -> Result<Poly<C>> {
    let base = parse_primary(cur)?;
    if cur.eat_sym('^') {
        let e = cur.expect_uint()?;
        let e = u32::try_from(e).map_err(|_| cur.error("exponent too large"))?;
        if e == 0 {
            return Err(cur.error("exponent must be positive"));
        }
        Ok(base.pow(e))
    } else {
        Ok(base)
    }
}

fn parse_primary<C: Scalar>(cur: &mut Cursor<'_>) -> Result<Poly<C>> {
    match cur.peek() {
        Some(Tok::Int(d)) => {
            let c = C::from_str_radix(d, 10).map_err(|_| cur.error("bad integer"))?;
            cur.advance();
            Ok(Poly::constant(c))
        }
        Some(Tok::Word(w)) => {
            if !is_atom_name(w) {
                return Err(cur.error(format!("`{w}` is not an atom name")));
            }
            let p = Poly::atom(w.clone());
            cur.advance();
            Ok(p)
        }
        Some(Tok::Sym('(')) => {
            cur.advance();
            let p = parse_sum(cur)?;
            cur.expect_sym(')')?;
            Ok(p)
        }
        _ => Err(cur.error("expected a polynomial term")),
    }
}

/// Atom identifiers: a letter or underscore followed by letters, digits,
/// underscores or primes.
pub fn is_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl<C: Scalar> FromStr for Poly<C> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let toks = tokenize(s)?;
        let mut cur = Cursor::new(&toks);
        let p = parse_sum(&mut cur)?;
        if !cur.at_end() {
            return Err(cur.error("trailing input after polynomial"));
        }
        Ok(p)
    }
}

/// Canonical text: terms in descending graded-lex order, e.g. `L^2 + 2*L + 1`.
impl<C: Scalar> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<'a, C: Scalar> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;

    fn add(self, rhs: &'a Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Scalar> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;

    fn sub(self, rhs: &'a Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a, C: Scalar> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;

    fn mul(self, rhs: &'a Poly<C>) -> Poly<C> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, k) in &rhs.terms {
                out.add_term(m.mul(n), c.clone() * k.clone());
            }
        }
        out
    }
}

impl<C: Scalar> Neg for &Poly<C> {
    type Output = Poly<C>;

    fn neg(self) -> Poly<C> {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<C: Scalar> Neg for Poly<C> {
    type Output = Poly<C>;

    fn neg(self) -> Poly<C> {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Scalar> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;

            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Scalar> Zero for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Scalar> One for Poly<C> {
    fn one() -> Self {
        Poly::one()
    }
}

impl<C: Scalar> std::iter::Sum for Poly<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |a, b| &a + &b)
    }
}

impl<C: Scalar> std::iter::Product for Poly<C> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Poly::one(), |a, b| &a * &b)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = Poly<BigInt>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    #[test]
    fn square_of_one_plus_l() {
        assert_eq!(&p("1 + L") * &p("1 + L"), p("1 + 2*L + L^2"));
        assert_eq!((&p("1 + L") * &p("1 + L")).to_string(), "L^2 + 2*L + 1");
    }

    #[test]
    fn zero_is_additive_identity() {
        let q = p("3*L*u - v + 7");
        assert_eq!(&q + &P::zero(), q);
        assert_eq!(P::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let dividend = p("L^3 + L^2");
        let divisor = p("L^2");
        let q = dividend.exact_div(&divisor).unwrap().unwrap();
        assert_eq!(q, p("L + 1"));
        // independent expansion of quotient times divisor
        let mut expanded = P::zero();
        for (m, c) in q.terms() {
            expanded = &expanded + &P::term(c.clone(), m.mul(&Monomial::atom_pow("L", 2)));
        }
        assert_eq!(expanded, dividend);
        assert_eq!(p("L + 1").exact_div(&p("L")).unwrap(), None);
        assert_eq!(p("3*L").exact_div(&p("2")).unwrap(), None);
        assert_eq!(p("L").exact_div(&P::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn printing_and_signs() {
        assert_eq!(p("1 - L").to_string(), "-L + 1");
        assert_eq!(p("-2*u*v - 1").to_string(), "-2*u*v - 1");
        assert_eq!(p("(L + 1)^2 - L^2").to_string(), "2*L + 1");
        assert_eq!(p("-(L)").to_string(), "-L");
    }

    #[test]
    fn parse_errors_carry_position() {
        assert!(matches!("L +".parse::<P>(), Err(Error::Parse { .. })));
        assert!(matches!("L^0".parse::<P>(), Err(Error::Parse { .. })));
        assert!(matches!("L L".parse::<P>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn grlex_order() {
        let l2 = Monomial::atom_pow("L", 2);
        let uv = Monomial::from_pairs([("u", 1), ("v", 1)]);
        let l = Monomial::atom("L");
        assert!(l < l2);
        assert!(uv < l2); // same degree; L sorts before u
        assert!(Monomial::one() < l);
    }

    #[test]
    fn works_over_machine_integers() {
        let a: Poly<i64> = "L + 1".parse().unwrap();
        assert_eq!((&a * &a).to_string(), "L^2 + 2*L + 1");
    }

    pub(crate) fn arb_poly() -> impl Strategy<Value = P> {
        let atoms = prop::sample::select(vec!["L", "T", "u"]);
        let mono = prop::collection::vec((atoms, 0u32..3), 0..3).prop_map(Monomial::from_pairs);
        prop::collection::vec((mono, -4i64..5), 0..5)
            .prop_map(|ts| P::from_terms(ts.into_iter().map(|(m, c)| (m, BigInt::from(c)))))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &P::one(), a.clone());
            prop_assert_eq!(&a - &a, P::zero());
        }

        #[test]
        fn exact_div_recovers_factor(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.exact_div(&b).unwrap(), Some(a));
        }

        #[test]
        fn print_parse_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<P>().unwrap(), a);
        }
    }
}
