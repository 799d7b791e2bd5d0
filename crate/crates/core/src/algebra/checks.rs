//! Exact verification of the Lie axioms and of the grading on a window.

use super::element::Element;
use super::spec::AlgebraSpec;
use super::symbol::BasisSymbol;
use super::window::Window;

/// A nonzero residual together with the tuple that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub witness: Vec<BasisSymbol>,
    pub residual: Element,
}

impl Violation {
    pub fn describe(&self, spec: &AlgebraSpec) -> String {
        let w: Vec<_> = self.witness.iter().map(|s| spec.fmt_symbol(s)).collect();
        format!("({}) -> {}", w.join(", "), spec.fmt_element(&self.residual))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub tuples_checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(check: &str) -> Self {
        Report { check: check.to_string(), tuples_checked: 0, violations: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn record(&mut self, witness: Vec<BasisSymbol>, residual: Element) {
        self.tuples_checked += 1;
        if !residual.is_zero() {
            self.violations.push(Violation { witness, residual });
        }
    }

    pub fn find(&self, witness: &[BasisSymbol]) -> Option<&Violation> {
        self.violations.iter().find(|v| v.witness == witness)
    }
}

/// `[x,y] + [y,x]` over all ordered basis pairs with `|index| <= n_eq`.
pub fn check_skew(spec: &AlgebraSpec, window: &Window) -> Report {
    let syms = spec.symbols_within(window.n_eq);
    let mut report = Report::new("skew");
    for &x in &syms {
        for &y in &syms {
            let r = &spec.bracket_basis(x, y) + &spec.bracket_basis(y, x);
            report.record(vec![x, y], r);
        }
    }
    report
}

/// The Jacobi residual `[[x,y],z] + [[y,z],x] + [[z,x],y]` over all ordered
/// basis triples with `|index| <= n_eq`.
pub fn check_jacobi(spec: &AlgebraSpec, window: &Window) -> Report {
    let syms = spec.symbols_within(window.n_eq);
    let mut report = Report::new("jacobi");
    let single = |s: BasisSymbol| Element::basis(s);
    for &x in &syms {
        for &y in &syms {
            let xy = spec.bracket_basis(x, y);
            for &z in &syms {
                let mut r = spec.bracket_unchecked(&xy, &single(z));
                let yz = spec.bracket_basis(y, z);
                r = &r + &spec.bracket_unchecked(&yz, &single(x));
                let zx = spec.bracket_basis(z, x);
                r = &r + &spec.bracket_unchecked(&zx, &single(y));
                report.record(vec![x, y, z], r);
            }
        }
    }
    report
}

/// Degree additivity of every nonzero bracket of basis symbols. A violation
/// carries the offending part of `[x,y]` as its residual.
pub fn check_grading(spec: &AlgebraSpec, window: &Window) -> Report {
    let syms = spec.symbols_within(window.n_eq);
    let mut report = Report::new("grading");
    for &x in &syms {
        for &y in &syms {
            let total = spec.degree(&x) + spec.degree(&y);
            let bad: Element = spec
                .bracket_basis(x, y)
                .iter()
                .filter(|(t, _)| {
                    if spec.is_central(t) {
                        total != 0
                    } else {
                        spec.degree(t) != total
                    }
                })
                .map(|(t, c)| (*t, c.clone()))
                .collect();
            report.record(vec![x, y], bad);
        }
    }
    report
}
