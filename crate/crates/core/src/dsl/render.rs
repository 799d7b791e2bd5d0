use std::fmt::Write as _;

use crate::algebra::{term_shift, AlgebraSpec, BracketTerm, CoeffPoly, Family, FamilyId, Lattice};
use crate::rational::Rational;
use crate::tpa::ProductSpec;

fn monomial(m_exp: u32, n_exp: u32, c: &Rational) -> String {
    let mut vars = Vec::new();
    for (v, e) in [("m", m_exp), ("n", n_exp)] {
        match e {
            0 => {}
            1 => vars.push(v.to_string()),
            e => vars.push(format!("{v}^{e}")),
        }
    }
    let vars = vars.join("*");
    if vars.is_empty() {
        c.to_string()
    } else if c.is_one() {
        vars
    } else if (-c).is_one() {
        format!("-{vars}")
    } else {
        format!("{c}*{vars}")
    }
}

/// Monomials by total degree (highest first), then by `n` exponent.
pub fn render_poly(p: &CoeffPoly) -> String {
    let monos = p.canonical_monomials();
    if monos.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (a, b, c)) in monos.into_iter().enumerate() {
        let s = monomial(a, b, c);
        if i > 0 && !s.starts_with('-') {
            out.push('+');
        }
        out.push_str(&s);
    }
    out
}

fn affine(shift: &Rational) -> String {
    if shift.is_zero() {
        "m+n".to_string()
    } else if shift.is_negative() {
        format!("m+n-{}", shift.abs())
    } else {
        format!("m+n+{shift}")
    }
}

fn render_term(families: &[Family], left: FamilyId, right: FamilyId, t: &BracketTerm) -> String {
    let mut out = if t.coeff.monomials().count() == 1 {
        render_poly(&t.coeff)
    } else {
        format!("({})", render_poly(&t.coeff))
    };
    if let Some(d) = &t.delta {
        let _ = write!(out, "*delta({})", affine(&d.shift));
    }
    let target = &families[t.target.idx()];
    if target.lattice.is_central() {
        let _ = write!(out, "*{}", target.name);
    } else {
        let k = term_shift(families, left, right, t);
        let _ = write!(out, "*{}({})", target.name, affine(&Rational::from_int(k)));
    }
    out
}

fn render_rule(kw: &str, families: &[Family], left: FamilyId, right: FamilyId, terms: &[BracketTerm]) -> String {
    let body: Vec<String> = terms.iter().map(|t| render_term(families, left, right, t)).collect();
    let body = if body.is_empty() { "0".to_string() } else { body.join(" + ") };
    format!("{kw} {}(m) {}(n) = {body}\n", families[left.idx()].name, families[right.idx()].name)
}

/// Canonical text: header, indexed families, one `central` line, then the
/// rules, all in the spec's canonical order. Parameters are already
/// substituted, so the text is parameter free.
pub fn render_algebra(spec: &AlgebraSpec) -> String {
    let mut out = format!("algebra {}\n", spec.name());
    let mut centrals = Vec::new();
    for f in spec.families() {
        match f.lattice {
            Lattice::Integer => {
                let _ = writeln!(out, "family {} integer degree-offset {}", f.name, f.degree_shift);
            }
            Lattice::Half => {
                let _ = writeln!(out, "family {} half degree-offset {}", f.name, f.degree_shift);
            }
            Lattice::Central => centrals.push(f.name.as_str()),
        }
    }
    if !centrals.is_empty() {
        let _ = writeln!(out, "central {}", centrals.join(" "));
    }
    for r in spec.rules() {
        out.push_str(&render_rule("bracket", spec.families(), r.left, r.right, &r.terms));
    }
    out
}

/// Canonical text of a product: an `algebra` line naming the base, then one
/// `product` line per rule.
pub fn render_product(base: &AlgebraSpec, p: &ProductSpec) -> String {
    let mut out = format!("algebra {}\n", p.base_name());
    for r in p.rules() {
        out.push_str(&render_rule("product", base.families(), r.left, r.right, &r.terms));
    }
    out
}
