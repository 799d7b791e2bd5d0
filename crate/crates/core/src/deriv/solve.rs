//! Kernel computation, interior projection and generator classification.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::map::{derivation_residual, LinearMap};
use super::system::{assemble_system, LinearSystem, UnknownTable};
use crate::algebra::{AlgebraSpec, BasisSymbol, Element, Window};
use crate::error::Result;
use crate::linalg::SparseVec;
use crate::rational::Rational;

/// Kernel basis of a [`LinearSystem`] over its unknown table.
#[derive(Clone, Debug)]
pub struct SolutionSpace {
    pub table: UnknownTable,
    pub basis: Vec<SparseVec>,
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The map encoded by a coefficient vector, on every source of the table.
    pub fn to_map(&self, spec: &AlgebraSpec, v: &SparseVec) -> LinearMap {
        vector_to_map(spec, &self.table, v)
    }
}

pub fn nullspace(sys: &LinearSystem) -> SolutionSpace {
    SolutionSpace { table: sys.table.clone(), basis: sys.matrix.nullspace() }
}

fn vector_to_map(_spec: &AlgebraSpec, table: &UnknownTable, v: &SparseVec) -> LinearMap {
    let mut map = LinearMap::new();
    for s in table.sources() {
        map.insert(*s, Element::zero());
    }
    for (c, val) in v.entries() {
        let (s, t) = table.column(*c);
        let mut img = map.get(&s).cloned().unwrap_or_default();
        img.add_term(t, val.clone());
        map.insert(s, img);
    }
    map
}

/// Columns whose source is central or has `|index| <= n_core`.
pub fn interior_columns(spec: &AlgebraSpec, table: &UnknownTable, window: &Window) -> Vec<bool> {
    table
        .columns()
        .iter()
        .map(|(s, _)| spec.is_central(s) || s.twice().abs() <= window.n_core)
        .collect()
}

/// A kernel vector together with its interior projection.
#[derive(Clone, Debug)]
pub struct ProjectedVector {
    pub interior: SparseVec,
    pub full: SparseVec,
}

/// Reduced basis of the projected space, carrying the full vectors along.
#[derive(Clone, Debug, Default)]
struct CarriedEchelon {
    rows: BTreeMap<usize, ProjectedVector>,
}

impl CarriedEchelon {
    fn reduce(&self, mut v: ProjectedVector) -> ProjectedVector {
        while let Some((c, lead)) = v.interior.leading().map(|(c, x)| (c, x.clone())) {
            let Some(p) = self.rows.get(&c) else { break };
            let f = -&lead;
            v.interior = v.interior.axpy(&f, &p.interior);
            v.full = v.full.axpy(&f, &p.full);
        }
        v
    }

    fn insert(&mut self, v: ProjectedVector) -> bool {
        let mut v = self.reduce(v);
        let Some((c, lead)) = v.interior.leading().map(|(c, x)| (c, x.clone())) else {
            return false;
        };
        let inv = lead.recip().expect("nonzero");
        v.interior.scale(&inv);
        v.full.scale(&inv);
        self.rows.insert(c, v);
        true
    }

    /// Back-substitution so that every pivot column is zero in other rows.
    fn reduced(&self) -> Vec<ProjectedVector> {
        let mut done: BTreeMap<usize, ProjectedVector> = BTreeMap::new();
        for (&c, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            for (&k, p) in &done {
                let v = r.interior.get(k);
                if k > c && !v.is_zero() {
                    let f = -&v;
                    r.interior = r.interior.axpy(&f, &p.interior);
                    r.full = r.full.axpy(&f, &p.full);
                }
            }
            done.insert(c, r);
        }
        done.into_values().collect()
    }
}

/// Rank of the interior projection of a solution space, with a reduced
/// generator basis (full vectors whose projections are in reduced form).
pub fn interior_dimension(spec: &AlgebraSpec, space: &SolutionSpace, window: &Window) -> (usize, Vec<ProjectedVector>) {
    let keep = interior_columns(spec, &space.table, window);
    let mut ech = CarriedEchelon::default();
    for v in &space.basis {
        ech.insert(ProjectedVector { interior: v.restrict(|c| keep[c]), full: v.clone() });
    }
    let gens = ech.reduced();
    (gens.len(), gens)
}

/// Rank of `basis` after keeping only the coordinates marked in `keep`.
pub fn projected_dimension(basis: &[SparseVec], keep: &[bool]) -> usize {
    let mut ech = CarriedEchelon::default();
    for v in basis {
        let interior = v.restrict(|c| keep.get(c).copied().unwrap_or(false));
        ech.insert(ProjectedVector { interior, full: v.clone() });
    }
    ech.rows.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// A scalar multiple of the identity.
    Trivial,
    Structured,
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub description: String,
    /// Interior coefficients `(source, target, value)`.
    pub coefficients: Vec<(BasisSymbol, BasisSymbol, Rational)>,
    /// The generator on every source of the unknown window.
    pub map: LinearMap,
}

#[derive(Clone, Debug)]
pub struct DegreeResult {
    /// Doubled degree.
    pub degree: i64,
    pub interior_dim: usize,
    pub raw_dim: usize,
    pub unknowns: usize,
    pub equations: usize,
    /// The algebra has no bracket rules, so every map is a δ-derivation.
    pub abelian: bool,
    pub generators: Vec<Generator>,
    /// Every generator has zero residual on all interior pairs.
    pub residual_checked: bool,
}

#[derive(Clone, Debug)]
pub struct DerivationReport {
    pub algebra: String,
    pub params: BTreeMap<String, Rational>,
    pub window: Window,
    pub delta: Rational,
    pub degrees: Vec<DegreeResult>,
}

impl DerivationReport {
    /// Interior dimension per doubled degree.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.degrees.iter().map(|d| (d.degree, d.interior_dim)).collect()
    }

    pub fn degree(&self, twice: i64) -> Option<&DegreeResult> {
        self.degrees.iter().find(|d| d.degree == twice)
    }

    pub fn all_checked(&self) -> bool {
        self.degrees.iter().all(|d| d.residual_checked)
    }
}

/// Identity coefficients restricted to the unknown table.
fn identity_vector(table: &UnknownTable) -> SparseVec {
    SparseVec::from_pairs(
        table
            .columns()
            .iter()
            .enumerate()
            .filter(|(_, (s, t))| s == t)
            .map(|(c, _)| (c, Rational::one())),
    )
}

fn display_shift(shift_twice: i64, base_half: bool) -> String {
    let total = Rational::new(shift_twice + i64::from(base_half), 2);
    if total.is_zero() {
        "n".to_string()
    } else if total.is_negative() {
        format!("n-{}", total.abs())
    } else {
        format!("n+{total}")
    }
}

/// Coefficients grouped by (source family, target family, index shift).
type Groups = BTreeMap<(u32, u32, Option<i64>), Vec<(BasisSymbol, Rational)>>;

/// Human description such as `L_n -> M_{n+1}; Y_{n+1/2} -> 2*M_{n+1}`.
fn describe(spec: &AlgebraSpec, coeffs: &[(BasisSymbol, BasisSymbol, Rational)], window: &Window) -> String {
    let mut groups = Groups::new();
    for (s, t, v) in coeffs {
        let shift = (!spec.is_central(t) && !spec.is_central(s)).then(|| t.twice() - s.twice());
        groups.entry((s.family.0, t.family.0, shift)).or_default().push((*s, v.clone()));
    }
    let mut parts = Vec::new();
    for ((sf, tf, shift), entries) in groups {
        let sfam = &spec.families()[sf as usize];
        let tfam = &spec.families()[tf as usize];
        let Some(shift) = shift else {
            for (s, v) in entries {
                parts.push(format!("{} -> {}*{}", spec.fmt_symbol(&s), v, tfam.name));
            }
            continue;
        };
        let expected = spec
            .symbols_within(window.n_core)
            .into_iter()
            .filter(|s| s.family.0 == sf)
            .count();
        let first = entries[0].1.clone();
        let uniform = entries.len() == expected && entries.iter().all(|(_, v)| *v == first);
        let base_half = sfam.lattice.parity() == Some(1);
        let src = format!("{}_{{{}}}", sfam.name, display_shift(0, base_half));
        let tgt = format!("{}_{{{}}}", tfam.name, display_shift(shift, base_half));
        let src = src.replace("_{n}", "_n");
        let tgt = tgt.replace("_{n}", "_n");
        if uniform {
            if first.is_one() {
                parts.push(format!("{src} -> {tgt}"));
            } else {
                parts.push(format!("{src} -> {first}*{tgt}"));
            }
        } else {
            let mut s = format!("{src} -> c(n)*{tgt} with c = [");
            for (i, (sym, v)) in entries.iter().enumerate() {
                let _ = write!(s, "{}{}: {}", if i > 0 { ", " } else { "" }, spec.fmt_symbol(sym), v);
            }
            s.push(']');
            parts.push(s);
        }
    }
    parts.join("; ")
}

fn interior_coefficients(table: &UnknownTable, v: &SparseVec) -> Vec<(BasisSymbol, BasisSymbol, Rational)> {
    v.entries()
        .iter()
        .map(|(c, x)| {
            let (s, t) = table.column(*c);
            (s, t, x.clone())
        })
        .collect()
}

fn residual_ok(spec: &AlgebraSpec, map: &LinearMap, window: &Window, delta: &Rational) -> bool {
    let syms = spec.symbols_within(window.n_core);
    syms.iter().all(|&x| {
        syms.iter().all(|&y| matches!(derivation_residual(spec, map, x, y, delta), Ok(r) if r.is_zero()))
    })
}

/// Assembles, solves and projects one degree.
pub fn solve_degree(spec: &AlgebraSpec, degree: i64, window: &Window, delta: &Rational) -> Result<DegreeResult> {
    let sys = assemble_system(spec, degree, window, delta)?;
    let keep = interior_columns(spec, &sys.table, window);
    if spec.rules().is_empty() {
        return Ok(DegreeResult {
            degree,
            interior_dim: keep.iter().filter(|k| **k).count(),
            raw_dim: sys.table.len(),
            unknowns: sys.table.len(),
            equations: 0,
            abelian: true,
            generators: Vec::new(),
            residual_checked: true,
        });
    }
    let space = nullspace(&sys);
    let (dim, reduced) = interior_dimension(spec, &space, window);

    // Id (when present) first, then the rest of the projected space reduced
    // against it and against each other.
    let mut ech = CarriedEchelon::default();
    let mut trivial: Option<(usize, ProjectedVector)> = None;
    if degree == 0 {
        let id_full = identity_vector(&sys.table);
        let id = ProjectedVector { interior: id_full.restrict(|c| keep[c]), full: id_full };
        let mut probe = CarriedEchelon::default();
        for r in &reduced {
            probe.insert(r.clone());
        }
        if !id.interior.is_zero() && probe.reduce(id.clone()).interior.is_zero() {
            let pivot = id.interior.leading().map(|(c, _)| c).expect("nonzero");
            ech.insert(id.clone());
            trivial = Some((pivot, id));
        }
    }
    for r in reduced {
        ech.insert(r);
    }
    let mut found: Vec<(GeneratorKind, ProjectedVector)> = Vec::new();
    if let Some((_, id)) = &trivial {
        found.push((GeneratorKind::Trivial, id.clone()));
    }
    let id_pivot = trivial.as_ref().map(|(c, _)| *c);
    for row in ech.reduced() {
        if row.interior.leading().map(|(c, _)| c) != id_pivot {
            found.push((GeneratorKind::Structured, row));
        }
    }
    let mut generators = Vec::new();
    for (kind, g) in found {
        let coefficients = interior_coefficients(&sys.table, &g.interior);
        let description = match kind {
            GeneratorKind::Trivial => "Id".to_string(),
            GeneratorKind::Structured => describe(spec, &coefficients, window),
        };
        generators.push(Generator { kind, description, coefficients, map: space.to_map(spec, &g.full) });
    }
    let residual_checked = generators.iter().all(|g| residual_ok(spec, &g.map, window, delta));
    Ok(DegreeResult {
        degree,
        interior_dim: dim,
        raw_dim: space.dim(),
        unknowns: sys.table.len(),
        equations: sys.matrix.rows.len(),
        abelian: false,
        generators,
        residual_checked,
    })
}

/// Runs [`solve_degree`] for every requested doubled degree, in parallel,
/// and merges results in the order requested.
pub fn solve_derivations(
    spec: &AlgebraSpec,
    degrees: &[i64],
    window: &Window,
    delta: &Rational,
) -> Result<DerivationReport> {
    let results: Vec<Result<DegreeResult>> = std::thread::scope(|scope| {
        let handles: Vec<_> = degrees
            .iter()
            .map(|&g| scope.spawn(move || solve_degree(spec, g, window, delta)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect()
    });
    let degrees = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(DerivationReport {
        algebra: spec.name().to_string(),
        params: spec.params().clone(),
        window: *window,
        delta: delta.clone(),
        degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraBuilder;
    use crate::catalog::{builtin, CatalogKey};

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    #[test]
    fn witt_half_derivations_shift_the_index() {
        let w = builtin(&CatalogKey::new("witt")).unwrap();
        let win = Window::for_solving(&w, 6, 2, 4);
        let r = solve_derivations(&w, &[-4, -2, 0, 2, 4], &win, &half()).unwrap();
        assert_eq!(r.dims().into_iter().collect::<Vec<_>>(), vec![(-4, 1), (-2, 1), (0, 1), (2, 1), (4, 1)]);
        assert_eq!(r.degree(4).unwrap().generators[0].description, "L_n -> L_{n+2}");
        assert_eq!(r.degree(-2).unwrap().generators[0].description, "L_n -> L_{n-1}");
        let g = &r.degree(0).unwrap().generators[0];
        assert_eq!(g.kind, GeneratorKind::Trivial);
        assert_eq!(g.description, "Id");
        assert!(r.all_checked());
    }

    #[test]
    fn witt_ordinary_derivations_at_degree_zero() {
        let w = builtin(&CatalogKey::new("witt")).unwrap();
        let win = Window::for_solving(&w, 6, 2, 0);
        let d = solve_degree(&w, 0, &win, &Rational::one()).unwrap();
        assert_eq!(d.interior_dim, 1);
        // ad L_0 sends L_n to n L_n
        let g = &d.generators[0];
        let l = w.family_id("L").unwrap();
        let ratio = |n: i64| {
            let s = BasisSymbol::new(l, 2 * n);
            g.map.get(&s).unwrap().coeff(&s)
        };
        assert!(ratio(0).is_zero());
        assert_eq!(ratio(2), &ratio(1) * &Rational::from_int(2));
        assert!(d.residual_checked);
    }

    #[test]
    fn abelian_algebra_counts_interior_unknowns() {
        let a = AlgebraBuilder::new("ab").family(crate::algebra::Family::integer("A", 0)).build().unwrap();
        let win = Window::new(4, 8, 2);
        let d = solve_degree(&a, 0, &win, &half()).unwrap();
        assert!(d.abelian);
        assert_eq!(d.interior_dim, 3);
    }

    #[test]
    fn ltilde1_lambda_one_generators() {
        let a = builtin(&"Ltilde1?lambda=1,mu=1/4".parse().unwrap()).unwrap();
        let win = Window::for_solving(&a, 6, 2, 2);
        let r = solve_derivations(&a, &[0, 1, 2], &win, &half()).unwrap();
        assert_eq!(r.degree(0).unwrap().interior_dim, 2);
        let d1 = r.degree(2).unwrap();
        assert_eq!(d1.generators.len(), 1);
        assert_eq!(d1.generators[0].description, "L_n -> M_{n+1}");
        let dh = r.degree(1).unwrap();
        assert_eq!(dh.generators[0].description, "L_n -> Y_{n+1/2}; Y_{n+1/2} -> M_{n+1}");
    }

    #[test]
    fn window_too_small_is_reported() {
        let w = builtin(&CatalogKey::new("witt")).unwrap();
        let win = Window::new(8, 4, 2);
        assert!(matches!(solve_degree(&w, 0, &win, &half()), Err(crate::Error::WindowTooSmall { .. })));
    }
}
