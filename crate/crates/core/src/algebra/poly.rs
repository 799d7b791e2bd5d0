//! Coefficient polynomials in the two formal index variables `m` and `n`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;

/// A polynomial in `m` and `n` with rational coefficients.
///
/// Keys are `(m_exponent, n_exponent)`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl CoeffPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_monomial(0, 0, c);
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_int(c))
    }

    pub fn m() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn n() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn monomial(m_exp: u32, n_exp: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_monomial(m_exp, n_exp, c);
        p
    }

    pub fn add_monomial(&mut self, m_exp: u32, n_exp: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((m_exp, n_exp)).or_insert_with(Rational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&(m_exp, n_exp));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial has no `m` or `n` dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn monomials(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn eval(&self, m: i64, n: i64) -> Rational {
        let mut acc = Rational::zero();
        for (&(a, b), c) in &self.terms {
            let mono = m
                .checked_pow(a)
                .and_then(|x| n.checked_pow(b).and_then(|y| x.checked_mul(y)));
            let v = match mono {
                Some(k) => c * &Rational::from_int(k),
                None => &(c * &Rational::from_int(m).pow(a)) * &Rational::from_int(n).pow(b),
            };
            acc += &v;
        }
        acc
    }

    /// The polynomial with `m` and `n` exchanged.
    pub fn swap_vars(&self) -> Self {
        CoeffPoly {
            terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(a, b), v) in &self.terms {
            out.add_monomial(a, b, v * c);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::int(1);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Monomials in canonical order: total degree descending, then the
    /// exponent of `n` descending.
    pub fn canonical_monomials(&self) -> Vec<(u32, u32, &Rational)> {
        let mut v: Vec<_> = self.monomials().collect();
        v.sort_by_key(|x| std::cmp::Reverse((x.0 + x.1, x.1)));
        v
    }
}

impl Add<&CoeffPoly> for &CoeffPoly {
    type Output = CoeffPoly;
    fn add(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_monomial(a, b, c.clone());
        }
        out
    }
}

impl Sub<&CoeffPoly> for &CoeffPoly {
    type Output = CoeffPoly;
    fn sub(self, rhs: &CoeffPoly) -> CoeffPoly {
        self + &(-rhs)
    }
}

impl Mul<&CoeffPoly> for &CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(d, e), f) in &rhs.terms {
                out.add_monomial(a + d, b + e, c * f);
            }
        }
        out
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        self.scale(&Rational::from_int(-1))
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<CoeffPoly> for CoeffPoly {
            type Output = CoeffPoly;
            fn $f(self, rhs: CoeffPoly) -> CoeffPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn virasoro_cocycle_value() {
        // (m^3 - m)/12 at m = 2
        let p = (CoeffPoly::m().pow(3) - CoeffPoly::m()).scale(&Rational::new(1, 12));
        assert_eq!(p.eval(2, -2), Rational::new(1, 2));
        assert_eq!(p.total_degree(), 3);
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = CoeffPoly::n() - CoeffPoly::m();
        let q = &p + &(CoeffPoly::m() - CoeffPoly::n());
        assert!(q.is_zero());
        assert_eq!(q.as_constant(), Some(Rational::zero()));
    }

    #[test]
    fn swap_exchanges_variables() {
        let p = CoeffPoly::n() - CoeffPoly::m().scale(&Rational::from_int(3));
        assert_eq!(p.swap_vars().eval(1, 5), p.eval(5, 1));
    }
}
