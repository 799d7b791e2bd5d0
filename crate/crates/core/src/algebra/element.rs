use std::collections::btree_map;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use super::symbol::BasisSymbol;
use crate::rational::Rational;

/// A finite linear combination of basis symbols. Zero coefficients are
/// never stored, so structural equality is equality of vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<BasisSymbol, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(s: BasisSymbol) -> Self {
        Self::term(s, Rational::one())
    }

    pub fn term(s: BasisSymbol, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(s, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: &BasisSymbol) -> Rational {
        self.terms.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, BasisSymbol, Rational> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, s: BasisSymbol, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Rational, other: &Element) {
        if factor.is_zero() {
            return;
        }
        for (s, c) in &other.terms {
            self.add_term(*s, factor * c);
        }
    }

    pub fn scale(&self, factor: &Rational) -> Element {
        let mut out = Element::zero();
        out.add_scaled(factor, self);
        out
    }
}

impl FromIterator<(BasisSymbol, Rational)> for Element {
    fn from_iter<I: IntoIterator<Item = (BasisSymbol, Rational)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (s, c) in iter {
            e.add_term(s, c);
        }
        e
    }
}

impl<'a> IntoIterator for &'a Element {
    type Item = (&'a BasisSymbol, &'a Rational);
    type IntoIter = btree_map::Iter<'a, BasisSymbol, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), rhs);
        out
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&Rational::from_int(-1), rhs);
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&Rational::from_int(-1))
    }
}
