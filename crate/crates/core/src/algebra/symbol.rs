use std::fmt;

use crate::rational::Rational;

/// Which index lattice a family lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lattice {
    /// Indices `n` in ℤ.
    Integer,
    /// Indices `n + 1/2`.
    Half,
    /// A single central element with no index.
    Central,
}

impl Lattice {
    /// Parity of the doubled index (`None` for central families).
    pub fn parity(self) -> Option<i64> {
        match self {
            Lattice::Integer => Some(0),
            Lattice::Half => Some(1),
            Lattice::Central => None,
        }
    }

    pub fn is_central(self) -> bool {
        self == Lattice::Central
    }
}

/// A basis family declaration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    pub name: String,
    pub lattice: Lattice,
    /// Added to the doubled index to obtain the doubled grading degree.
    pub degree_shift: i64,
}

impl Family {
    pub fn integer(name: &str, degree_shift: i64) -> Self {
        Family { name: name.to_string(), lattice: Lattice::Integer, degree_shift }
    }

    pub fn half(name: &str, degree_shift: i64) -> Self {
        Family { name: name.to_string(), lattice: Lattice::Half, degree_shift }
    }

    pub fn central(name: &str) -> Self {
        Family { name: name.to_string(), lattice: Lattice::Central, degree_shift: 0 }
    }
}

/// Position of a family inside its [`AlgebraSpec`](super::AlgebraSpec).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyId(pub u32);

impl FamilyId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A doubled index: the stored value is twice the displayed one, so
/// `Y_{n+1/2}` carries the odd integer `2n + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index(pub i64);

impl Index {
    pub fn from_displayed(r: &Rational) -> Option<Index> {
        (r * &Rational::from_int(2)).to_i64().map(Index)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn displayed(self) -> Rational {
        Rational::new(self.0, 2)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.displayed())
    }
}

/// One basis vector: a family and (for indexed families) a doubled index.
/// Central symbols carry index 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisSymbol {
    pub family: FamilyId,
    pub index: Index,
}

impl BasisSymbol {
    pub fn new(family: FamilyId, twice: i64) -> Self {
        BasisSymbol { family, index: Index(twice) }
    }

    pub fn twice(self) -> i64 {
        self.index.0
    }
}

/// The integer a rule's formal variable takes at a symbol: `n` for
/// `F_n`, and `n` for `Y_{n+1/2}` (the integer part).
pub(crate) fn rule_variable(lattice: Lattice, twice: i64) -> i64 {
    match lattice {
        Lattice::Integer => twice / 2,
        Lattice::Half => (twice - 1).div_euclid(2),
        Lattice::Central => 0,
    }
}

/// Formats a symbol as `L_3`, `L_{-1}`, `Y_{1/2}` or `C_L`.
pub(crate) fn format_symbol(family: &Family, twice: i64) -> String {
    if family.lattice.is_central() {
        return family.name.clone();
    }
    let shown = Index(twice).displayed();
    if twice >= 0 && twice % 2 == 0 {
        format!("{}_{}", family.name, shown)
    } else {
        format!("{}_{{{}}}", family.name, shown)
    }
}
