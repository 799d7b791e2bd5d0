use std::collections::BTreeMap;

use crate::algebra::{AlgebraSpec, BasisSymbol, Element};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A linear map given by its values on finitely many basis symbols.
/// Symbols outside the table are undefined, not zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearMap {
    images: BTreeMap<BasisSymbol, Element>,
}

impl LinearMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Tabulates `f` on every symbol with `|doubled index| <= bound`.
    pub fn from_fn(spec: &AlgebraSpec, bound: i64, mut f: impl FnMut(BasisSymbol) -> Element) -> Self {
        LinearMap { images: spec.symbols_within(bound).into_iter().map(|s| (s, f(s))).collect() }
    }

    pub fn identity(spec: &AlgebraSpec, bound: i64) -> Self {
        Self::from_fn(spec, bound, Element::basis)
    }

    pub fn insert(&mut self, s: BasisSymbol, image: Element) {
        self.images.insert(s, image);
    }

    pub fn get(&self, s: &BasisSymbol) -> Option<&Element> {
        self.images.get(s)
    }

    pub fn domain(&self) -> impl Iterator<Item = &BasisSymbol> {
        self.images.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisSymbol, &Element)> {
        self.images.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.images.values().all(Element::is_zero)
    }

    /// Applies the map linearly; fails on the first undefined symbol.
    pub fn apply(&self, spec: &AlgebraSpec, e: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (s, c) in e {
            let img = self.images.get(s).ok_or_else(|| Error::UndefinedOnSymbol(spec.fmt_symbol(s)))?;
            out.add_scaled(c, img);
        }
        Ok(out)
    }
}

/// `φ([x,y]) − δ·([φ(x),y] + [x,φ(y)])`.
pub fn derivation_residual(
    spec: &AlgebraSpec,
    phi: &LinearMap,
    x: BasisSymbol,
    y: BasisSymbol,
    delta: &Rational,
) -> Result<Element> {
    spec.check_symbol(&x)?;
    spec.check_symbol(&y)?;
    let lhs = phi.apply(spec, &spec.bracket_basis(x, y))?;
    let px = phi.apply(spec, &Element::basis(x))?;
    let py = phi.apply(spec, &Element::basis(y))?;
    let rhs = &spec.bracket_unchecked(&px, &Element::basis(y)) + &spec.bracket_unchecked(&Element::basis(x), &py);
    let mut out = lhs;
    out.add_scaled(&-delta, &rhs);
    Ok(out)
}
