//! Built-in algebras: Witt, Virasoro, the Schrödinger–Witt family with its
//! extensions, the twisted Heisenberg–Virasoro algebra, and the deformative
//! algebras `L(λ,μ)` with their five central extensions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{AlgebraBuilder, AlgebraSpec, CoeffPoly, Family, TermSpec};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Which central extension of `L(λ,μ)` applies to a parameter pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    L1Generic,
    L2,
    L3,
    L4,
    L5,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::L1Generic => "L1_generic",
            CaseLabel::L2 => "L2",
            CaseLabel::L3 => "L3",
            CaseLabel::L4 => "L4",
            CaseLabel::L5 => "L5",
        }
    }

    /// The catalog entry implementing this case.
    pub fn catalog_name(self) -> &'static str {
        match self {
            CaseLabel::L1Generic => "Ltilde1",
            CaseLabel::L2 => "Ltilde2",
            CaseLabel::L3 => "Ltilde3",
            CaseLabel::L4 => "Ltilde4",
            CaseLabel::L5 => "Ltilde5",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.catalog_name())
    }
}

/// Case of `(λ, μ)`: μ ∈ 1/2+ℤ with λ ∈ {-3, -1, 1} gives the second, third
/// and fourth extension; μ ∈ ℤ with λ = -1 the fifth; everything else the first.
pub fn classify_case(lambda: &Rational, mu: &Rational) -> CaseLabel {
    let two_mu = mu * &Rational::from_int(2);
    let mu_int = mu.is_integer();
    let mu_half_odd = two_mu.is_integer() && !mu_int;
    let lam = lambda.to_i64();
    if mu_half_odd {
        match lam {
            Some(-3) => CaseLabel::L2,
            Some(-1) => CaseLabel::L3,
            Some(1) => CaseLabel::L4,
            _ => CaseLabel::L1Generic,
        }
    } else if mu_int && lam == Some(-1) {
        CaseLabel::L5
    } else {
        CaseLabel::L1Generic
    }
}

/// A catalog name with parameters, written `Ltilde1?lambda=1,mu=1/4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogKey {
    pub name: String,
    pub params: BTreeMap<String, Rational>,
}

impl CatalogKey {
    pub fn new(name: &str) -> Self {
        CatalogKey { name: name.to_string(), params: BTreeMap::new() }
    }

    pub fn with_lambda_mu(name: &str, lambda: Rational, mu: Rational) -> Self {
        let mut k = Self::new(name);
        k.params.insert("lambda".into(), lambda);
        k.params.insert("mu".into(), mu);
        k
    }
}

impl FromStr for CatalogKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, query) = match s.split_once('?') {
            Some((n, q)) => (n, Some(q)),
            None => (s, None),
        };
        let mut key = CatalogKey::new(name.trim());
        if let Some(q) = query {
            for part in q.split(',').filter(|p| !p.trim().is_empty()) {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| Error::UnknownCatalogEntry(format!("bad parameter {part:?} in {s:?}")))?;
                key.params.insert(k.trim().to_string(), v.trim().parse()?);
            }
        }
        Ok(key)
    }
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for (i, (k, v)) in self.params.iter().enumerate() {
            write!(f, "{}{k}={v}", if i == 0 { '?' } else { ',' })?;
        }
        Ok(())
    }
}

/// Description of a catalog entry for listings.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub params: &'static [&'static str],
    /// Case-representative parameter choices (empty list for unparameterized entries).
    pub representatives: Vec<(Rational, Rational)>,
}

pub fn entries() -> Vec<CatalogEntry> {
    let q = Rational::new;
    let none = Vec::new;
    vec![
        CatalogEntry { name: "witt", description: "Witt algebra", params: &[], representatives: none() },
        CatalogEntry { name: "virasoro", description: "Virasoro algebra", params: &[], representatives: none() },
        CatalogEntry { name: "so", description: "Schrödinger–Witt algebra", params: &[], representatives: none() },
        CatalogEntry {
            name: "so_tilde",
            description: "extended Schrödinger–Witt algebra",
            params: &[],
            representatives: none(),
        },
        CatalogEntry {
            name: "so_hat",
            description: "extended Schrödinger–Virasoro algebra",
            params: &[],
            representatives: none(),
        },
        CatalogEntry {
            name: "hv",
            description: "twisted Heisenberg–Virasoro algebra",
            params: &[],
            representatives: none(),
        },
        CatalogEntry {
            name: "L",
            description: "original deformative Schrödinger–Witt algebra L(lambda,mu)",
            params: &["lambda", "mu"],
            representatives: vec![(q(1, 1), q(1, 4)), (q(2, 1), q(1, 4))],
        },
        CatalogEntry {
            name: "Ltilde1",
            description: "central extension by C_L (generic case)",
            params: &["lambda", "mu"],
            representatives: vec![(q(1, 1), q(1, 4)), (q(2, 1), q(1, 4)), (q(1, 1), q(2, 1))],
        },
        CatalogEntry {
            name: "Ltilde2",
            description: "central extension by C_L, C_LY (mu in 1/2+Z, lambda = -3)",
            params: &["lambda", "mu"],
            representatives: vec![(q(-3, 1), q(1, 2))],
        },
        CatalogEntry {
            name: "Ltilde3",
            description: "central extension by C_L, C_LY, C_MY (mu in 1/2+Z, lambda = -1)",
            params: &["lambda", "mu"],
            representatives: vec![(q(-1, 1), q(1, 2))],
        },
        CatalogEntry {
            name: "Ltilde4",
            description: "central extension by C_L, C_LY, C_M (mu in 1/2+Z, lambda = 1)",
            params: &["lambda", "mu"],
            representatives: vec![(q(1, 1), q(1, 2))],
        },
        CatalogEntry {
            name: "Ltilde5",
            description: "central extension by C_L, C_Y (mu in Z, lambda = -1)",
            params: &["lambda", "mu"],
            representatives: vec![(q(-1, 1), q(0, 1))],
        },
    ]
}

/// Every catalog key at its case-representative parameters.
pub fn representative_keys() -> Vec<CatalogKey> {
    let mut out = Vec::new();
    for e in entries() {
        if e.params.is_empty() {
            out.push(CatalogKey::new(e.name));
        } else {
            for (l, m) in e.representatives {
                out.push(CatalogKey::with_lambda_mu(e.name, l, m));
            }
        }
    }
    out
}

fn m() -> CoeffPoly {
    CoeffPoly::m()
}

fn n() -> CoeffPoly {
    CoeffPoly::n()
}

fn c(v: Rational) -> CoeffPoly {
    CoeffPoly::constant(v)
}

fn int(v: i64) -> CoeffPoly {
    CoeffPoly::int(v)
}

fn zero_delta() -> Rational {
    Rational::zero()
}

fn witt_term() -> TermSpec {
    TermSpec::new(n() - m(), "L")
}

fn virasoro_term() -> TermSpec {
    TermSpec::new((m().pow(3) - m()).scale(&Rational::new(1, 12)), "C_L").delta(zero_delta())
}

/// `[L_m, Y_{n+1/2}] = (n + (1-m)/2) Y_{m+n+1/2}`
fn so_ly() -> TermSpec {
    TermSpec::new(n() + c(Rational::new(1, 2)) - m().scale(&Rational::new(1, 2)), "Y")
}

fn build_so(with_n: bool, with_centrals: bool, name: &str) -> Result<AlgebraSpec> {
    let mut b = AlgebraBuilder::new(name)
        .family(Family::integer("L", 0))
        .family(Family::integer("M", 0))
        .family(Family::half("Y", 0));
    let mut ll = vec![witt_term()];
    if with_centrals {
        ll.push(virasoro_term());
    }
    b = b
        .rule("L", "L", ll)
        .rule("L", "M", vec![TermSpec::new(n(), "M")])
        .rule("L", "Y", vec![so_ly()])
        .rule("Y", "Y", vec![TermSpec::new(m() - n(), "M").shift(1)]);
    if with_n {
        b = b
            .family(Family::integer("N", 0))
            .rule("N", "M", vec![TermSpec::new(int(2), "M")])
            .rule("N", "Y", vec![TermSpec::new(int(1), "Y")]);
        let mut ln = vec![TermSpec::new(n(), "N")];
        if with_centrals {
            ln.push(TermSpec::new(m().pow(2) - m(), "C_LN").delta(zero_delta()));
        }
        b = b.rule("L", "N", ln);
    }
    if with_centrals {
        b = b
            .family(Family::central("C_L"))
            .family(Family::central("C_LN"))
            .family(Family::central("C_N"))
            .rule("N", "N", vec![TermSpec::new(n(), "C_N").delta(zero_delta())]);
    }
    b.build()
}

fn build_hv() -> Result<AlgebraSpec> {
    AlgebraBuilder::new("hv")
        .family(Family::integer("L", 0))
        .family(Family::integer("N", 0))
        .family(Family::central("C_L"))
        .family(Family::central("C_LN"))
        .family(Family::central("C_N"))
        .rule("L", "L", vec![witt_term(), virasoro_term()])
        .rule(
            "L",
            "N",
            vec![TermSpec::new(n(), "N"), TermSpec::new(m().pow(2) - m(), "C_LN").delta(zero_delta())],
        )
        .rule("N", "N", vec![TermSpec::new(n(), "C_N").delta(zero_delta())])
        .build()
}

fn lambda_mu(key: &CatalogKey) -> Result<(Rational, Rational)> {
    let get = |p: &str| key.params.get(p).cloned().ok_or_else(|| Error::MissingParameter(p.to_string()));
    Ok((get("lambda")?, get("mu")?))
}

/// `L(λ,μ)` and its central extensions. `ext` is 0 for the plain algebra.
fn build_deformative(name: &str, ext: u8, lambda: &Rational, mu: &Rational) -> Result<AlgebraSpec> {
    let half = Rational::new(1, 2);
    let two = Rational::from_int(2);
    // central terms of the second to fifth extensions sit in degree 0 only
    // when M and Y are regraded by 2μ and μ
    let (m_shift, y_shift) = if ext >= 2 {
        let s = (mu * &Rational::from_int(2)).to_i64().expect("case guard keeps 2mu integral");
        (2 * s, s)
    } else {
        (0, 0)
    };
    let lm_coeff = n() - m().scale(lambda) + c(&two * mu);
    let ly_coeff = n() + c(half.clone()) - m().scale(&(&(lambda + &Rational::one()) * &half)) + c(mu.clone());
    let mut ll = vec![witt_term()];
    let mut lm = vec![TermSpec::new(lm_coeff, "M")];
    let mut ly = vec![TermSpec::new(ly_coeff, "Y")];
    let mut yy = vec![TermSpec::new(n() - m(), "M").shift(1)];
    let mut extra: Vec<(&str, &str, Vec<TermSpec>)> = Vec::new();
    let mut centrals: Vec<&str> = Vec::new();
    let delta_ly = mu + &half;
    let m_cubed_minus_m = m().pow(3) - m();
    if ext >= 1 {
        ll.push(virasoro_term());
        centrals.push("C_L");
    }
    match ext {
        2 => {
            ly.push(TermSpec::new(int(1), "C_LY").delta(delta_ly));
            centrals.push("C_LY");
        }
        3 => {
            ly.push(
                TermSpec::new((m().pow(2) - m()).scale(&half), "C_LY").delta(delta_ly),
            );
            extra.push((
                "M",
                "Y",
                vec![TermSpec::new(int(1), "C_MY").delta(&(mu * &Rational::from_int(3)) + &half)],
            ));
            centrals.extend(["C_LY", "C_MY"]);
        }
        4 => {
            ly.push(TermSpec::new(-m_cubed_minus_m.clone(), "C_LY").delta(delta_ly));
            lm.push(TermSpec::new(-m_cubed_minus_m, "C_M").delta(&two * mu));
            // x((x^2 - 1)) with x = m + μ + 1/2, firing at m + n + 2μ + 1 = 0
            let x = m() + c(mu + &half);
            yy.push(TermSpec::new(-(&x * &(x.pow(2) - int(1))), "C_M").delta(&(&two * mu) + &Rational::one()));
            centrals.extend(["C_LY", "C_M"]);
        }
        5 => {
            yy.push(
                TermSpec::new(-(m() + c(mu + &half)), "C_Y").delta(&(&two * mu) + &Rational::one()),
            );
            centrals.push("C_Y");
        }
        _ => {}
    }
    let mut b = AlgebraBuilder::new(name)
        .param("lambda", lambda.clone())
        .param("mu", mu.clone())
        .family(Family::integer("L", 0))
        .family(Family::integer("M", m_shift))
        .family(Family::half("Y", y_shift))
        .rule("L", "L", ll)
        .rule("L", "M", lm)
        .rule("L", "Y", ly)
        .rule("Y", "Y", yy);
    for cname in centrals {
        b = b.family(Family::central(cname));
    }
    for (l, r, t) in extra {
        b = b.rule(l, r, t);
    }
    b.build()
}

/// Constructs a catalog algebra. The five extensions of `L(λ,μ)` are guarded
/// by [`classify_case`].
pub fn builtin(key: &CatalogKey) -> Result<AlgebraSpec> {
    let ext = match key.name.as_str() {
        "witt" => {
            return AlgebraBuilder::new("witt")
                .family(Family::integer("L", 0))
                .rule("L", "L", vec![witt_term()])
                .build()
        }
        "virasoro" => {
            return AlgebraBuilder::new("virasoro")
                .family(Family::integer("L", 0))
                .family(Family::central("C_L"))
                .rule("L", "L", vec![witt_term(), virasoro_term()])
                .build()
        }
        "so" => return build_so(false, false, "so"),
        "so_tilde" => return build_so(true, false, "so_tilde"),
        "so_hat" => return build_so(true, true, "so_hat"),
        "hv" => return build_hv(),
        "L" => 0,
        "Ltilde1" => 1,
        "Ltilde2" => 2,
        "Ltilde3" => 3,
        "Ltilde4" => 4,
        "Ltilde5" => 5,
        other => return Err(Error::UnknownCatalogEntry(other.to_string())),
    };
    let (lambda, mu) = lambda_mu(key)?;
    if ext >= 1 {
        let case = classify_case(&lambda, &mu);
        if case.catalog_name() != key.name {
            return Err(Error::CaseViolation { requested: key.name.clone(), actual: case });
        }
    }
    build_deformative(&key.name, ext, &lambda, &mu)
}
