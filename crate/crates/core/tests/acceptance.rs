//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//! Arithmetic is exact, so every comparison below is an equality.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use halfderiv::algebra::{
    check_grading, check_jacobi, check_skew, AlgebraSpec, BasisSymbol, BracketTerm, CoeffPoly, Element, Window,
};
use halfderiv::catalog::{builtin, representative_keys, CatalogKey};
use halfderiv::deriv::{derivation_residual, projected_dimension, solve_derivations, DerivationReport, GeneratorKind};
use halfderiv::linalg::{SparseMatrix, SparseVec};
use halfderiv::tpa::{check_tpa, left_mult_derivation, theorem_product, ProductRule, ProductSpec, SupportSeq};
use halfderiv::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Doubled degrees -2, -3/2, ..., 2.
const DEGREES: [i64; 9] = [-4, -3, -2, -1, 0, 1, 2, 3, 4];
const N_CORE: i64 = 3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn half() -> Rational {
    Rational::new(1, 2)
}

fn spec(key: &str) -> AlgebraSpec {
    builtin(&key.parse::<CatalogKey>().unwrap()).unwrap()
}

/// Algebra keys of criteria 2 to 6, with the dimension each expects per
/// doubled degree.
fn theorem_cases() -> Vec<(&'static str, u32, BTreeMap<i64, usize>)> {
    let trivial: BTreeMap<i64, usize> = DEGREES.iter().map(|&g| (g, usize::from(g == 0))).collect();
    let lambda_one: BTreeMap<i64, usize> = DEGREES.iter().map(|&g| (g, if g == 0 { 2 } else { 1 })).collect();
    vec![
        ("so_hat", 2, trivial.clone()),
        ("hv", 3, trivial.clone()),
        ("Ltilde1?lambda=1,mu=1/4", 4, lambda_one.clone()),
        ("Ltilde1?lambda=1,mu=2", 4, lambda_one),
        ("Ltilde1?lambda=2,mu=1/4", 5, trivial.clone()),
        ("Ltilde2?lambda=-3,mu=1/2", 6, trivial.clone()),
        ("Ltilde3?lambda=-1,mu=1/2", 6, trivial.clone()),
        ("Ltilde4?lambda=1,mu=1/2", 6, trivial.clone()),
        ("Ltilde5?lambda=-1,mu=0", 6, trivial),
    ]
}

fn fmt_dims(d: &BTreeMap<i64, usize>) -> String {
    let parts: Vec<String> = d.iter().map(|(g, n)| format!("{}:{n}", Rational::new(*g, 2))).collect();
    parts.join(" ")
}

struct Solved {
    key: &'static str,
    criterion: u32,
    expected: BTreeMap<i64, usize>,
    report: DerivationReport,
}

fn solve_all(neq: i64) -> Vec<Solved> {
    theorem_cases()
        .into_iter()
        .map(|(key, criterion, expected)| {
            let a = spec(key);
            let w = Window::for_solving(&a, neq, N_CORE, 4);
            let report = solve_derivations(&a, &DEGREES, &w, &half()).unwrap();
            Solved { key, criterion, expected, report }
        })
        .collect()
}

fn criterion_dims(solved: &[Solved], criterion: u32) -> (bool, Vec<String>) {
    let mut ok = true;
    let mut notes = Vec::new();
    for s in solved.iter().filter(|s| s.criterion == criterion) {
        let dims = s.report.dims();
        let good = dims == s.expected && s.report.all_checked();
        ok &= good;
        if !good {
            notes.push(format!("{}: got {} expected {}", s.key, fmt_dims(&dims), fmt_dims(&s.expected)));
        }
    }
    (ok, notes)
}

fn identity_generator(s: &Solved) -> bool {
    let d = s.report.degree(0).unwrap();
    let g = &d.generators[0];
    g.kind == GeneratorKind::Trivial && g.coefficients.iter().all(|(a, b, v)| a == b && v.is_one())
}

fn c1_lie_axioms() -> Outcome {
    let w = Window::checks(5);
    let mut bad = Vec::new();
    let keys = representative_keys();
    for key in &keys {
        let a = builtin(key).unwrap();
        for r in [check_skew(&a, &w), check_grading(&a, &w), check_jacobi(&a, &w)] {
            if !r.passed() {
                bad.push(format!("{key} {}: {}", r.check, r.violations[0].describe(&a)));
            }
        }
    }
    let detail = if bad.is_empty() { format!("{} algebras, indices in [-5,5]", keys.len()) } else { bad.join("; ") };
    outcome(bad.is_empty(), detail)
}

fn c_trivial(solved: &[Solved], criterion: u32) -> Outcome {
    let (mut ok, mut notes) = criterion_dims(solved, criterion);
    for s in solved.iter().filter(|s| s.criterion == criterion) {
        if !identity_generator(s) {
            ok = false;
            notes.push(format!("{}: degree-0 generator is not Id", s.key));
        }
    }
    let detail = if ok { "dim 1 at degree 0 (Id), 0 elsewhere".to_string() } else { notes.join("; ") };
    outcome(ok, detail)
}

/// Every coefficient is `family_from_k -> family_to_{k+shift}` with one
/// common value, and each interior source of `from` appears.
fn uniform_map(
    a: &AlgebraSpec,
    coeffs: &[(BasisSymbol, BasisSymbol, Rational)],
    parts: &[(&str, &str, i64)],
    n_core: i64,
) -> bool {
    let Some(first) = coeffs.first().map(|c| c.2.clone()) else { return false };
    let mut expected = 0;
    for (from, to, shift) in parts {
        let (f, t) = (a.family_id(from).unwrap(), a.family_id(to).unwrap());
        let n = a.symbols_within(n_core).iter().filter(|s| s.family == f).count();
        let hits = coeffs.iter().filter(|(s, tt, _)| s.family == f && tt.family == t && tt.twice() == s.twice() + shift).count();
        if hits != n {
            return false;
        }
        expected += n;
    }
    coeffs.len() == expected && coeffs.iter().all(|c| c.2 == first)
}

fn c4_lambda_one(solved: &[Solved]) -> Outcome {
    let (mut ok, mut notes) = criterion_dims(solved, 4);
    for s in solved.iter().filter(|s| s.criterion == 4) {
        let a = spec(s.key);
        let n_core = s.report.window.n_core;
        let d1 = s.report.degree(2).unwrap();
        let g1 = d1.generators.iter().filter(|g| g.kind == GeneratorKind::Structured).collect::<Vec<_>>();
        if g1.len() != 1 || !uniform_map(&a, &g1[0].coefficients, &[("L", "M", 2)], n_core) {
            ok = false;
            notes.push(format!("{}: degree-1 generator is not L_n -> M_(n+1)", s.key));
        }
        let dh = s.report.degree(1).unwrap();
        let gh = dh.generators.iter().filter(|g| g.kind == GeneratorKind::Structured).collect::<Vec<_>>();
        if gh.len() != 1 || !uniform_map(&a, &gh[0].coefficients, &[("L", "Y", 1), ("Y", "M", 1)], n_core) {
            ok = false;
            notes.push(format!("{}: degree-1/2 generator is not L_n -> Y_(n+1/2), Y_(n+1/2) -> M_(n+1)", s.key));
        }
        if !identity_generator(s) {
            ok = false;
            notes.push(format!("{}: no Id at degree 0", s.key));
        }
    }
    let detail = if ok {
        "(1,1/4) and (1,2): dims 2 at 0 and 1 elsewhere; degree 1: L_n -> M_{n+1}; degree 1/2: L_n -> Y_{n+1/2}; Y_{n+1/2} -> M_{n+1}"
            .to_string()
    } else {
        notes.join("; ")
    };
    outcome(ok, detail)
}

fn c6_other_extensions(solved: &[Solved]) -> Outcome {
    let (ok, mut notes) = criterion_dims(solved, 6);
    for s in solved.iter().filter(|s| s.criterion == 6 && s.report.dims() != s.expected) {
        for g in s.report.degree(0).unwrap().generators.iter().filter(|g| g.kind == GeneratorKind::Structured) {
            notes.push(format!("{} extra generator {}", s.key, g.description));
        }
    }
    let detail = if ok { "all four: dim 1 at degree 0, 0 elsewhere".to_string() } else { notes.join("; ") };
    outcome(ok, detail)
}

fn random_seq(rng: &mut ChaCha8Rng) -> SupportSeq {
    let mut out = SupportSeq::new();
    for t in -2..=2 {
        if rng.gen_bool(0.5) {
            out.insert(t, common::random_rational(rng, 5, 4));
        }
    }
    out
}

fn tpa_instances() -> (AlgebraSpec, Vec<ProductSpec>) {
    let a = spec("Ltilde1?lambda=1,mu=1/4");
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let products = (0..25)
        .map(|_| {
            let alpha = random_seq(&mut rng);
            let beta = random_seq(&mut rng);
            theorem_product(&a, &alpha, &beta).unwrap()
        })
        .collect();
    (a, products)
}

fn c7_tpa(a: &AlgebraSpec, products: &[ProductSpec]) -> Outcome {
    let w = Window::checks(4);
    let mut notes = Vec::new();
    for (i, p) in products.iter().enumerate() {
        let r = check_tpa(a, p, &w).unwrap();
        for sub in r.reports() {
            if !sub.passed() {
                notes.push(format!("instance {i} {}: {}", sub.check, sub.violations[0].describe(a)));
            }
        }
    }
    let nonzero = products.iter().filter(|p| !p.is_zero()).count();

    // negative control on so_hat
    let so = spec("so_hat");
    let (l, m) = (so.family_id("L").unwrap(), so.family_id("M").unwrap());
    let rule = ProductRule {
        left: l,
        right: l,
        terms: vec![BracketTerm { target: m, offset: 0, delta: None, coeff: CoeffPoly::int(1) }],
    };
    let p = ProductSpec::new(&so, vec![rule]).unwrap();
    let wn = Window::checks(3);
    let r = check_tpa(&so, &p, &wn).unwrap();
    let mut witnesses = 0;
    let mut control_ok = r.commutativity.passed() && r.associativity.passed() && !r.compatibility.passed();
    for k in -3..=3 {
        for mm in -3..=3 {
            for n in -3..=3 {
                let w3 = [so.symbol("L", 2 * k).unwrap(), so.symbol("L", 2 * mm).unwrap(), so.symbol("L", 2 * n).unwrap()];
                let expected = Element::term(so.symbol("M", 2 * (mm + n + k)).unwrap(), Rational::from_int(n - mm));
                match r.compatibility.find(&w3) {
                    Some(v) => {
                        witnesses += 1;
                        control_ok &= v.residual == expected;
                    }
                    None => control_ok &= expected.is_zero(),
                }
            }
        }
    }
    if !control_ok {
        notes.push("so_hat control did not fail with residual (n-m)M_{m+n+k}".to_string());
    }
    let ok = notes.is_empty();
    let detail = if ok {
        format!(
            "25 instances ({nonzero} nonzero) pass at n_eq=4; so_hat L_m*L_n=M_(m+n) fails at {witnesses} (L_k,L_m,L_n) witnesses with (n-m)M_(m+n+k)"
        )
    } else {
        notes.join("; ")
    };
    outcome(ok, detail)
}

fn c8_left_mult(a: &AlgebraSpec, products: &[ProductSpec]) -> Outcome {
    let interior = a.symbols_within(2 * N_CORE);
    let zs = a.symbols_within(6);
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for (i, p) in products.iter().enumerate() {
        for &z in &zs {
            let phi = left_mult_derivation(a, p, z, 20).unwrap();
            for &x in &interior {
                for &y in &interior {
                    checked += 1;
                    let r = derivation_residual(a, &phi, x, y, &half()).unwrap();
                    if !r.is_zero() && bad.len() < 3 {
                        bad.push(format!("instance {i} z={} ({}, {})", a.fmt_symbol(&z), a.fmt_symbol(&x), a.fmt_symbol(&y)));
                    }
                }
            }
        }
    }
    let ok = bad.is_empty();
    outcome(ok, if ok { format!("{checked} residuals, all zero") } else { bad.join("; ") })
}

fn c9_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut notes = Vec::new();
    for i in 0..20 {
        let (rows, ncols, interior) = common::random_system(&mut rng);
        let mut m = SparseMatrix::new(ncols);
        for r in &rows {
            m.push(SparseVec::from_dense(r));
        }
        let sparse = projected_dimension(&m.nullspace(), &interior);
        let dense = common::dense_interior_dim(&rows, ncols, &interior);
        if sparse != dense {
            notes.push(format!("random system {i}: sparse {sparse} dense {dense}"));
        }
    }
    let mut compared = 0;
    for (key, _, _) in theorem_cases() {
        let a = spec(key);
        // the interior may be at most half the equation window
        let w = Window::for_solving(&a, 5, 2, 4);
        let sparse = solve_derivations(&a, &DEGREES, &w, &half()).unwrap();
        for d in &sparse.degrees {
            compared += 1;
            let dense = common::oracle_interior_dim(&a, d.degree, &w, &half());
            if dense != d.interior_dim {
                notes.push(format!("{key} degree {}: sparse {} dense {dense}", Rational::new(d.degree, 2), d.interior_dim));
            }
        }
    }
    let ok = notes.is_empty();
    outcome(ok, if ok { format!("20 random systems and {compared} (algebra, degree) solves at n_eq=5 agree") } else { notes.join("; ") })
}

fn c10_stability(at8: &[Solved], at10: &[Solved]) -> Outcome {
    let mut notes = Vec::new();
    for (a, b) in at8.iter().zip(at10) {
        if a.report.dims() != b.report.dims() {
            notes.push(format!("{}: {} vs {}", a.key, fmt_dims(&a.report.dims()), fmt_dims(&b.report.dims())));
        }
    }
    let ok = notes.is_empty();
    outcome(ok, if ok { format!("{} algebras, n_core={N_CORE}", at8.len()) } else { notes.join("; ") })
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    let mut report = |id: u32, name: &'static str, o: Outcome| {
        println!("criterion {id:>2} [{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((id, name, o));
    };
    report(1, "Lie axioms of catalog representatives", c1_lie_axioms());
    let at8 = solve_all(8);
    report(2, "so_hat half-derivations are trivial", c_trivial(&at8, 2));
    report(3, "hv half-derivations are trivial", c_trivial(&at8, 3));
    report(4, "Ltilde1 with lambda=1", c4_lambda_one(&at8));
    report(5, "Ltilde1 with lambda=2", c_trivial(&at8, 5));
    report(6, "Ltilde2..Ltilde5 half-derivations are trivial", c6_other_extensions(&at8));
    let (a, products) = tpa_instances();
    report(7, "transposed Poisson products", c7_tpa(&a, &products));
    report(8, "left multiplications are half-derivations", c8_left_mult(&a, &products));
    report(9, "sparse solver agrees with dense oracle", c9_oracle());
    let at10 = solve_all(10);
    report(10, "dimensions stable from n_eq=8 to n_eq=10", c10_stability(&at8, &at10));

    let failed: Vec<u32> = results.iter().filter(|r| !r.2.pass).map(|r| r.0).collect();
    println!(
        "acceptance: {} of {} criteria pass ({:.1}s)",
        results.len() - failed.len(),
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
