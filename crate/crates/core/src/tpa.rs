//! Commutative products given by rule tables and the transposed Poisson
//! compatibility check `2z·[x,y] = [z·x, y] + [x, z·y]`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::algebra::{
    canonical_terms, eval_terms, AlgebraSpec, BasisSymbol, BracketTerm, CoeffPoly, Element, Family, FamilyId, Report,
    Window,
};
use crate::deriv::LinearMap;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A finitely supported sequence `t ↦ c_t`; zeros are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SupportSeq {
    values: BTreeMap<i64, Rational>,
}

impl SupportSeq {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, t: i64, c: Rational) {
        if c.is_zero() {
            self.values.remove(&t);
        } else {
            self.values.insert(t, c);
        }
    }

    pub fn get(&self, t: i64) -> Rational {
        self.values.get(&t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.values.iter().map(|(t, c)| (*t, c))
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }
}

impl FromIterator<(i64, Rational)> for SupportSeq {
    fn from_iter<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut s = SupportSeq::new();
        for (t, c) in iter {
            let c = &s.get(t) + &c;
            s.insert(t, c);
        }
        s
    }
}

/// `t:c` pairs separated by commas, e.g. `0:1,-1:3/2`. The empty string is
/// the zero sequence.
impl FromStr for SupportSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = SupportSeq::new();
        let s = s.trim();
        if s.is_empty() {
            return Ok(out);
        }
        for part in s.split(',') {
            let (t, c) = part
                .split_once(':')
                .ok_or_else(|| Error::BadRational(format!("expected t:value, got {:?}", part.trim())))?;
            let t: i64 = t.trim().parse().map_err(|_| Error::BadRational(format!("bad support point {:?}", t.trim())))?;
            let c: Rational = c.trim().parse()?;
            if out.values.contains_key(&t) {
                return Err(Error::BadRational(format!("support point {t} given twice")));
            }
            out.insert(t, c);
        }
        Ok(out)
    }
}

impl fmt::Display for SupportSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (t, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}:{c}")?;
        }
        Ok(())
    }
}

/// `left_m · right_n`; the reversed order is the same rule with `m` and `n`
/// exchanged (no sign).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductRule {
    pub left: FamilyId,
    pub right: FamilyId,
    pub terms: Vec<BracketTerm>,
}

/// A commutative product on the basis of an algebra. Pairs without a rule
/// multiply to zero.
#[derive(Clone, Debug)]
pub struct ProductSpec {
    base: String,
    params: BTreeMap<String, Rational>,
    families: Vec<Family>,
    rules: Vec<ProductRule>,
    lookup: Vec<Option<(usize, bool)>>,
}

impl PartialEq for ProductSpec {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.params == other.params && self.families == other.families && self.rules == other.rules
    }
}

impl Eq for ProductSpec {}

impl ProductSpec {
    /// Validates and canonicalizes `rules` against `base`.
    pub fn new(base: &AlgebraSpec, rules: Vec<ProductRule>) -> Result<Self> {
        let nf = base.families().len();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for r in rules {
            for id in [r.left, r.right].into_iter().chain(r.terms.iter().map(|t| t.target)) {
                if id.idx() >= nf {
                    return Err(Error::UnknownFamily(format!("#{}", id.0)));
                }
            }
            let key = (r.left.min(r.right), r.left.max(r.right));
            if !seen.insert(key) {
                return Err(Error::InvalidSpec(format!(
                    "duplicate product rule for pair ({}, {})",
                    base.family(r.left).name,
                    base.family(r.right).name
                )));
            }
            let terms = canonical_terms(r.terms);
            if !terms.is_empty() {
                out.push(ProductRule { left: r.left, right: r.right, terms });
            }
        }
        out.sort_by_key(|r| (r.left.min(r.right), r.left.max(r.right)));
        let mut lookup = vec![None; nf * nf];
        for (i, r) in out.iter().enumerate() {
            lookup[r.left.idx() * nf + r.right.idx()] = Some((i, false));
            if r.left != r.right {
                lookup[r.right.idx() * nf + r.left.idx()] = Some((i, true));
            }
        }
        Ok(ProductSpec {
            base: base.name().to_string(),
            params: base.params().clone(),
            families: base.families().to_vec(),
            rules: out,
            lookup,
        })
    }

    /// The zero product on `base`.
    pub fn zero(base: &AlgebraSpec) -> Self {
        Self::new(base, Vec::new()).expect("no rules to validate")
    }

    pub fn base_name(&self) -> &str {
        &self.base
    }

    pub fn rules(&self) -> &[ProductRule] {
        &self.rules
    }

    pub fn is_zero(&self) -> bool {
        self.rules.is_empty()
    }

    /// True if this product was built on an algebra with the same name,
    /// parameters and families as `spec`.
    pub fn fits(&self, spec: &AlgebraSpec) -> bool {
        self.base == spec.name() && &self.params == spec.params() && self.families == spec.families()
    }

    pub fn product_basis(&self, x: BasisSymbol, y: BasisSymbol) -> Element {
        let nf = self.families.len();
        let Some((i, swapped)) = self.lookup[x.family.idx() * nf + y.family.idx()] else {
            return Element::zero();
        };
        let r = &self.rules[i];
        if swapped {
            eval_terms(&self.families, r.left, r.right, &r.terms, y, x)
        } else {
            eval_terms(&self.families, r.left, r.right, &r.terms, x, y)
        }
    }

    fn product_unchecked(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (sx, cx) in x {
            for (sy, cy) in y {
                let p = self.product_basis(*sx, *sy);
                if !p.is_zero() {
                    out.add_scaled(&(cx * cy), &p);
                }
            }
        }
        out
    }
}

/// Bilinear evaluation of `x · y`.
pub fn product_eval(spec: &AlgebraSpec, p: &ProductSpec, x: &Element, y: &Element) -> Result<Element> {
    check_fits(spec, p)?;
    spec.check_element(x)?;
    spec.check_element(y)?;
    Ok(p.product_unchecked(x, y))
}

fn check_fits(spec: &AlgebraSpec, p: &ProductSpec) -> Result<()> {
    if p.fits(spec) {
        Ok(())
    } else {
        Err(Error::WrongBase { expected: p.base.clone(), actual: spec.name().to_string() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TpaReport {
    pub commutativity: Report,
    pub associativity: Report,
    pub compatibility: Report,
}

impl TpaReport {
    pub fn passed(&self) -> bool {
        self.commutativity.passed() && self.associativity.passed() && self.compatibility.passed()
    }

    pub fn reports(&self) -> [&Report; 3] {
        [&self.commutativity, &self.associativity, &self.compatibility]
    }
}

/// Checks commutativity, associativity and the compatibility identity over
/// all basis tuples with `|index| <= n_eq`. Compatibility witnesses are
/// ordered `(z, x, y)`.
pub fn check_tpa(spec: &AlgebraSpec, p: &ProductSpec, window: &Window) -> Result<TpaReport> {
    check_fits(spec, p)?;
    let syms = spec.symbols_within(window.n_eq);
    let one = |s: BasisSymbol| Element::basis(s);
    let mut comm = Report::new("commutativity");
    let mut assoc = Report::new("associativity");
    let mut compat = Report::new("compatibility");
    for &x in &syms {
        for &y in &syms {
            let xy = p.product_basis(x, y);
            comm.record(vec![x, y], &xy - &p.product_basis(y, x));
            let bxy = spec.bracket_basis(x, y);
            for &z in &syms {
                let left = p.product_unchecked(&xy, &one(z));
                let right = p.product_unchecked(&one(x), &p.product_basis(y, z));
                assoc.record(vec![x, y, z], &left - &right);

                // here x, y play the roles of the bracket arguments
                let mut r = p.product_unchecked(&one(z), &bxy).scale(&Rational::from_int(2));
                let zx = p.product_basis(z, x);
                r = &r - &spec.bracket_unchecked(&zx, &one(y));
                let zy = p.product_basis(z, y);
                r = &r - &spec.bracket_unchecked(&one(x), &zy);
                compat.record(vec![z, x, y], r);
            }
        }
    }
    Ok(TpaReport { commutativity: comm, associativity: assoc, compatibility: compat })
}

/// The product on the central extension with `λ = 1`:
/// `L_m·L_n = Σ α_t M_{m+n+t} + Σ β_t Y_{m+n+t+1/2}`,
/// `L_m·Y_{n+1/2} = Σ β_t M_{m+n+t+1}`, all other products zero.
pub fn theorem_product(base: &AlgebraSpec, alpha: &SupportSeq, beta: &SupportSeq) -> Result<ProductSpec> {
    let lambda_one = base.param("lambda").is_some_and(Rational::is_one);
    if base.name() != "Ltilde1" || !lambda_one {
        let actual = match base.param("lambda") {
            Some(l) => format!("{} with lambda={l}", base.name()),
            None => base.name().to_string(),
        };
        return Err(Error::WrongBase { expected: "Ltilde1 with lambda=1".to_string(), actual });
    }
    let id = |name: &str| base.family_id(name).ok_or_else(|| Error::UnknownFamily(name.to_string()));
    let (l, m, y) = (id("L")?, id("M")?, id("Y")?);
    let term = |target, offset, c: &Rational| BracketTerm {
        target,
        offset,
        delta: None,
        coeff: CoeffPoly::constant(c.clone()),
    };
    let mut ll = Vec::new();
    for (t, c) in alpha.iter() {
        ll.push(term(m, 2 * t, c));
    }
    let mut ly = Vec::new();
    for (t, c) in beta.iter() {
        ll.push(term(y, 2 * t + 1, c));
        ly.push(term(m, 2 * t + 1, c));
    }
    ProductSpec::new(
        base,
        vec![ProductRule { left: l, right: l, terms: ll }, ProductRule { left: l, right: y, terms: ly }],
    )
}

/// Left multiplication `x ↦ z·x`, tabulated on every symbol with
/// `|doubled index| <= bound`.
pub fn left_mult_derivation(spec: &AlgebraSpec, p: &ProductSpec, z: BasisSymbol, bound: i64) -> Result<LinearMap> {
    check_fits(spec, p)?;
    spec.check_symbol(&z)?;
    Ok(LinearMap::from_fn(spec, bound, |x| p.product_basis(z, x)))
}
