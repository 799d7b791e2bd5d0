//! Structure-constant presentations of graded Lie algebras.

use std::collections::{BTreeMap, HashSet};

use super::element::Element;
use super::poly::CoeffPoly;
use super::symbol::{format_symbol, rule_variable, BasisSymbol, Family, FamilyId, Lattice};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `δ_{m+n+shift, 0}`, with `m`, `n` the rule variables. A shift that is not
/// an integer never fires.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaCondition {
    pub shift: Rational,
}

impl DeltaCondition {
    pub fn new(shift: Rational) -> Self {
        DeltaCondition { shift }
    }

    pub fn fires(&self, m: i64, n: i64) -> bool {
        match self.shift.to_i64() {
            Some(c) => m + n + c == 0,
            None => false,
        }
    }
}

/// `coeff(m, n) · [delta] · target`, where an indexed target has doubled
/// index `x + y + offset` for sources with doubled indices `x`, `y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BracketTerm {
    pub target: FamilyId,
    pub offset: i64,
    pub delta: Option<DeltaCondition>,
    pub coeff: CoeffPoly,
}

/// The bracket `[left_m, right_n]`; the reversed order follows by antisymmetry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BracketRule {
    pub left: FamilyId,
    pub right: FamilyId,
    pub terms: Vec<BracketTerm>,
}

/// A term as written by hand: the target index is `m + n + shift` in the
/// rule-variable convention (for a half family `m` stands for `Y_{m+1/2}`).
#[derive(Clone, Debug)]
pub struct TermSpec {
    pub coeff: CoeffPoly,
    pub delta: Option<Rational>,
    pub target: String,
    pub shift: i64,
}

impl TermSpec {
    pub fn new(coeff: CoeffPoly, target: &str) -> Self {
        TermSpec { coeff, delta: None, target: target.to_string(), shift: 0 }
    }

    pub fn shift(mut self, k: i64) -> Self {
        self.shift = k;
        self
    }

    pub fn delta(mut self, c: Rational) -> Self {
        self.delta = Some(c);
        self
    }
}

/// Collects families and rules by name and produces a validated,
/// canonically ordered [`AlgebraSpec`].
#[derive(Clone, Debug, Default)]
pub struct AlgebraBuilder {
    name: String,
    params: BTreeMap<String, Rational>,
    families: Vec<Family>,
    rules: Vec<(String, String, Vec<TermSpec>)>,
}

impl AlgebraBuilder {
    pub fn new(name: &str) -> Self {
        AlgebraBuilder { name: name.to_string(), ..Default::default() }
    }

    pub fn param(mut self, name: &str, value: Rational) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn params(mut self, params: &BTreeMap<String, Rational>) -> Self {
        self.params.extend(params.iter().map(|(k, v)| (k.clone(), v.clone())));
        self
    }

    pub fn family(mut self, f: Family) -> Self {
        self.families.push(f);
        self
    }

    pub fn rule(mut self, left: &str, right: &str, terms: Vec<TermSpec>) -> Self {
        self.rules.push((left.to_string(), right.to_string(), terms));
        self
    }

    pub fn build(self) -> Result<AlgebraSpec> {
        let mut families = self.families;
        let mut seen = HashSet::new();
        for f in &families {
            if !is_identifier(&f.name) {
                return Err(Error::InvalidSpec(format!("bad family name {:?}", f.name)));
            }
            if !seen.insert(f.name.clone()) {
                return Err(Error::InvalidSpec(format!("family {} declared twice", f.name)));
            }
        }
        families.sort_by(|a, b| {
            (a.lattice.is_central(), &a.name).cmp(&(b.lattice.is_central(), &b.name))
        });
        let lookup_name = |name: &str| -> Result<FamilyId> {
            families
                .iter()
                .position(|f| f.name == name)
                .map(|i| FamilyId(i as u32))
                .ok_or_else(|| Error::UnknownFamily(name.to_string()))
        };

        let mut rules = Vec::new();
        let mut pairs = HashSet::new();
        for (l, r, specs) in &self.rules {
            let left = lookup_name(l)?;
            let right = lookup_name(r)?;
            for side in [left, right] {
                if families[side.idx()].lattice.is_central() {
                    return Err(Error::InvalidSpec(format!(
                        "central element {} cannot appear in a bracket rule",
                        families[side.idx()].name
                    )));
                }
            }
            if !pairs.insert((left.min(right), left.max(right))) {
                return Err(Error::InvalidSpec(format!("duplicate rule for pair ({l}, {r})")));
            }
            let mut terms = Vec::new();
            for t in specs {
                let target = lookup_name(&t.target)?;
                let offset = term_offset(&families, left, right, target, t.shift)?;
                terms.push(BracketTerm {
                    target,
                    offset,
                    delta: t.delta.clone().map(DeltaCondition::new),
                    coeff: t.coeff.clone(),
                });
            }
            rules.push(BracketRule { left, right, terms: canonical_terms(terms) });
        }
        rules.retain(|r| !r.terms.is_empty());
        rules.sort_by_key(|r| (r.left.min(r.right), r.left.max(r.right)));
        Ok(AlgebraSpec::from_parts(self.name, self.params, families, rules))
    }
}

/// Converts a rule-variable shift into a doubled-index offset, checking parity.
pub(crate) fn term_offset(
    families: &[Family],
    left: FamilyId,
    right: FamilyId,
    target: FamilyId,
    shift: i64,
) -> Result<i64> {
    let pl = families[left.idx()].lattice.parity().unwrap_or(0);
    let pr = families[right.idx()].lattice.parity().unwrap_or(0);
    match families[target.idx()].lattice.parity() {
        None => Ok(0),
        Some(pt) => Ok(2 * shift + pt - pl - pr),
    }
}

/// Inverse of [`term_offset`] for indexed targets.
pub(crate) fn term_shift(families: &[Family], rule_l: FamilyId, rule_r: FamilyId, t: &BracketTerm) -> i64 {
    let pl = families[rule_l.idx()].lattice.parity().unwrap_or(0);
    let pr = families[rule_r.idx()].lattice.parity().unwrap_or(0);
    let pt = families[t.target.idx()].lattice.parity().unwrap_or(0);
    (t.offset - pt + pl + pr) / 2
}

/// Merges terms with equal (target, offset, delta), drops zero terms and sorts.
pub(crate) fn canonical_terms(terms: Vec<BracketTerm>) -> Vec<BracketTerm> {
    let mut merged: BTreeMap<(FamilyId, i64, Option<DeltaCondition>), CoeffPoly> = BTreeMap::new();
    for t in terms {
        let slot = merged.entry((t.target, t.offset, t.delta)).or_default();
        *slot = &*slot + &t.coeff;
    }
    merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((target, offset, delta), coeff)| BracketTerm { target, offset, delta, coeff })
        .collect()
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A graded Lie algebra presented by families and bracket rules. Pairs of
/// families without a rule bracket to zero, and central families bracket to
/// zero with everything.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    name: String,
    params: BTreeMap<String, Rational>,
    families: Vec<Family>,
    rules: Vec<BracketRule>,
    // rule index and whether the stored orientation is (right, left)
    lookup: Vec<Option<(usize, bool)>>,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.params == other.params
            && self.families == other.families
            && self.rules == other.rules
    }
}

impl Eq for AlgebraSpec {}

impl AlgebraSpec {
    pub(crate) fn from_parts(
        name: String,
        params: BTreeMap<String, Rational>,
        families: Vec<Family>,
        rules: Vec<BracketRule>,
    ) -> Self {
        let nf = families.len();
        let mut lookup = vec![None; nf * nf];
        for (i, r) in rules.iter().enumerate() {
            lookup[r.left.idx() * nf + r.right.idx()] = Some((i, false));
            if r.left != r.right {
                lookup[r.right.idx() * nf + r.left.idx()] = Some((i, true));
            }
        }
        AlgebraSpec { name, params, families, rules, lookup }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, Rational> {
        &self.params
    }

    pub fn param(&self, name: &str) -> Option<&Rational> {
        self.params.get(name)
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn rules(&self) -> &[BracketRule] {
        &self.rules
    }

    pub fn family(&self, id: FamilyId) -> &Family {
        &self.families[id.idx()]
    }

    pub fn family_id(&self, name: &str) -> Option<FamilyId> {
        self.families.iter().position(|f| f.name == name).map(|i| FamilyId(i as u32))
    }

    pub fn family_ids(&self) -> impl Iterator<Item = FamilyId> {
        (0..self.families.len() as u32).map(FamilyId)
    }

    /// Builds a symbol from a family name and a doubled index.
    pub fn symbol(&self, name: &str, twice: i64) -> Result<BasisSymbol> {
        let id = self.family_id(name).ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
        let s = BasisSymbol::new(id, if self.family(id).lattice.is_central() { 0 } else { twice });
        self.check_symbol(&s)?;
        Ok(s)
    }

    /// The basis element of a central family.
    pub fn central(&self, name: &str) -> Result<BasisSymbol> {
        self.symbol(name, 0)
    }

    pub fn check_symbol(&self, s: &BasisSymbol) -> Result<()> {
        let fam = self
            .families
            .get(s.family.idx())
            .ok_or_else(|| Error::UnknownFamily(format!("#{}", s.family.0)))?;
        let ok = match fam.lattice.parity() {
            Some(p) => s.twice().rem_euclid(2) == p,
            None => s.twice() == 0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::OffLattice { symbol: format!("{}[{}]", fam.name, s.twice()) })
        }
    }

    pub fn check_element(&self, e: &Element) -> Result<()> {
        e.iter().try_for_each(|(s, _)| self.check_symbol(s))
    }

    /// Doubled grading degree of a symbol (central symbols have degree 0).
    pub fn degree(&self, s: &BasisSymbol) -> i64 {
        let f = self.family(s.family);
        if f.lattice.is_central() {
            0
        } else {
            s.twice() + f.degree_shift
        }
    }

    /// The symbol of `family` with doubled degree `deg`, if one exists.
    pub fn symbol_of_degree(&self, family: FamilyId, deg: i64) -> Option<BasisSymbol> {
        let f = self.family(family);
        match f.lattice.parity() {
            None => (deg == 0).then(|| BasisSymbol::new(family, 0)),
            Some(p) => {
                let twice = deg - f.degree_shift;
                (twice.rem_euclid(2) == p).then(|| BasisSymbol::new(family, twice))
            }
        }
    }

    /// All symbols with `|doubled index| <= bound`, centrals included when
    /// `bound >= 0`, in symbol order.
    pub fn symbols_within(&self, bound: i64) -> Vec<BasisSymbol> {
        let mut out = Vec::new();
        if bound < 0 {
            return out;
        }
        for id in self.family_ids() {
            match self.family(id).lattice.parity() {
                None => out.push(BasisSymbol::new(id, 0)),
                Some(p) => out.extend(
                    (-bound..=bound).filter(|t| t.rem_euclid(2) == p).map(|t| BasisSymbol::new(id, t)),
                ),
            }
        }
        out
    }

    pub fn is_central(&self, s: &BasisSymbol) -> bool {
        self.family(s.family).lattice.is_central()
    }

    /// Largest `|offset|` over all bracket terms with an indexed target.
    pub fn max_offset(&self) -> i64 {
        self.rules
            .iter()
            .flat_map(|r| r.terms.iter())
            .filter(|t| !self.family(t.target).lattice.is_central())
            .map(|t| t.offset.abs())
            .max()
            .unwrap_or(0)
    }

    pub fn rule_for(&self, a: FamilyId, b: FamilyId) -> Option<(&BracketRule, bool)> {
        self.lookup[a.idx() * self.families.len() + b.idx()].map(|(i, sw)| (&self.rules[i], sw))
    }

    /// Bracket of two basis symbols, assumed valid for this spec.
    pub fn bracket_basis(&self, x: BasisSymbol, y: BasisSymbol) -> Element {
        let Some((rule, swapped)) = self.rule_for(x.family, y.family) else {
            return Element::zero();
        };
        if swapped {
            let e = eval_terms(&self.families, rule.left, rule.right, &rule.terms, y, x);
            -&e
        } else {
            eval_terms(&self.families, rule.left, rule.right, &rule.terms, x, y)
        }
    }

    /// Bilinear bracket of two elements.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (sx, cx) in x {
            for (sy, cy) in y {
                let b = self.bracket_basis(*sx, *sy);
                if !b.is_zero() {
                    out.add_scaled(&(cx * cy), &b);
                }
            }
        }
        out
    }

    pub fn fmt_symbol(&self, s: &BasisSymbol) -> String {
        format_symbol(self.family(s.family), s.twice())
    }

    /// `-4*L_0 + 1/2*C_L`; the zero element prints as `0`.
    pub fn fmt_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (s, c)) in e.iter().enumerate() {
            let sym = self.fmt_symbol(s);
            let (neg, mag) = if c.is_negative() { (true, c.abs()) } else { (false, c.clone()) };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag.is_one() {
                out.push_str(&sym);
            } else {
                out.push_str(&format!("{mag}*{sym}"));
            }
        }
        out
    }
}

/// Evaluates a rule's term list at `(x, y)` in the rule's own orientation.
pub(crate) fn eval_terms(
    families: &[Family],
    left: FamilyId,
    right: FamilyId,
    terms: &[BracketTerm],
    x: BasisSymbol,
    y: BasisSymbol,
) -> Element {
    let m = rule_variable(families[left.idx()].lattice, x.twice());
    let n = rule_variable(families[right.idx()].lattice, y.twice());
    let mut out = Element::zero();
    for t in terms {
        if let Some(d) = &t.delta {
            if !d.fires(m, n) {
                continue;
            }
        }
        let c = t.coeff.eval(m, n);
        if c.is_zero() {
            continue;
        }
        let target = if families[t.target.idx()].lattice == Lattice::Central {
            BasisSymbol::new(t.target, 0)
        } else {
            BasisSymbol::new(t.target, x.twice() + y.twice() + t.offset)
        };
        out.add_term(target, c);
    }
    out
}
