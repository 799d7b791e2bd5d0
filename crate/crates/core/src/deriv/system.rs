//! The linear system whose kernel is the space of homogeneous δ-derivations
//! of one degree on a truncated window.

use std::collections::{HashMap, HashSet};

use crate::algebra::{AlgebraSpec, BasisSymbol, Window};
use crate::error::Result;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::rational::Rational;

/// One unknown per `(source, target)` with `deg(target) = deg(source) + g`
/// and `|source index| <= n_unk`. Central targets only occur at degree 0.
#[derive(Clone, Debug)]
pub struct UnknownTable {
    degree: i64,
    cols: Vec<(BasisSymbol, BasisSymbol)>,
    by_source: HashMap<BasisSymbol, Vec<(usize, BasisSymbol)>>,
}

impl UnknownTable {
    pub fn new(spec: &AlgebraSpec, degree: i64, window: &Window) -> Self {
        let mut cols = Vec::new();
        let mut by_source: HashMap<BasisSymbol, Vec<(usize, BasisSymbol)>> = HashMap::new();
        let sources = if window.is_empty() { Vec::new() } else { spec.symbols_within(window.n_unk) };
        for s in sources {
            let target_deg = spec.degree(&s) + degree;
            let entry = by_source.entry(s).or_default();
            for fam in spec.family_ids() {
                if let Some(t) = spec.symbol_of_degree(fam, target_deg) {
                    entry.push((cols.len(), t));
                    cols.push((s, t));
                }
            }
        }
        UnknownTable { degree, cols, by_source }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn column(&self, c: usize) -> (BasisSymbol, BasisSymbol) {
        self.cols[c]
    }

    pub fn columns(&self) -> &[(BasisSymbol, BasisSymbol)] {
        &self.cols
    }

    pub fn sources(&self) -> impl Iterator<Item = &BasisSymbol> {
        self.by_source.keys()
    }

    pub fn has_source(&self, s: &BasisSymbol) -> bool {
        self.by_source.contains_key(s)
    }

    /// Unknowns attached to a source: `(column, target)`.
    pub fn of_source(&self, s: &BasisSymbol) -> &[(usize, BasisSymbol)] {
        self.by_source.get(s).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn col_of(&self, source: &BasisSymbol, target: &BasisSymbol) -> Option<usize> {
        self.of_source(source).iter().find(|(_, t)| t == target).map(|(c, _)| *c)
    }
}

/// Rows are coefficient extractions of `φ([x,y]) − δ([φ(x),y] + [x,φ(y)])`
/// at one output symbol; columns are the unknowns of the table.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub table: UnknownTable,
    pub matrix: SparseMatrix,
    pub pairs_imposed: usize,
}

/// Assembles the system for doubled degree `degree`. Equations are imposed
/// for the basis pairs with `|index| <= n_eq` whose sources (including every
/// symbol of `[x,y]`) all carry unknowns. Only `x <= y` is used since the
/// bracket is antisymmetric; duplicate rows are dropped.
pub fn assemble_system(spec: &AlgebraSpec, degree: i64, window: &Window, delta: &Rational) -> Result<LinearSystem> {
    window.validate(spec, degree)?;
    let table = UnknownTable::new(spec, degree, window);
    let mut matrix = SparseMatrix::new(table.len());
    let mut pairs_imposed = 0;
    if window.is_empty() {
        return Ok(LinearSystem { table, matrix, pairs_imposed });
    }
    let syms = spec.symbols_within(window.n_eq);
    let neg_delta = -delta;
    let mut seen: HashSet<SparseVec> = HashSet::new();
    for (i, &x) in syms.iter().enumerate() {
        for &y in &syms[i..] {
            let bxy = spec.bracket_basis(x, y);
            if !table.has_source(&x) || !table.has_source(&y) || bxy.iter().any(|(s, _)| !table.has_source(s)) {
                continue;
            }
            pairs_imposed += 1;
            let mut rows: HashMap<BasisSymbol, Vec<(usize, Rational)>> = HashMap::new();
            for (s, c) in &bxy {
                for &(col, t) in table.of_source(s) {
                    rows.entry(t).or_default().push((col, c.clone()));
                }
            }
            for &(col, t) in table.of_source(&x) {
                for (o, v) in &spec.bracket_basis(t, y) {
                    rows.entry(*o).or_default().push((col, &neg_delta * v));
                }
            }
            for &(col, t) in table.of_source(&y) {
                for (o, v) in &spec.bracket_basis(x, t) {
                    rows.entry(*o).or_default().push((col, &neg_delta * v));
                }
            }
            for (_, pairs) in rows {
                let mut r = SparseVec::from_pairs(pairs);
                if let Some((_, lead)) = r.leading() {
                    let inv = lead.recip().expect("nonzero");
                    r.scale(&inv);
                    if seen.insert(r.clone()) {
                        matrix.push(r);
                    }
                }
            }
        }
    }
    // Row order depends on hashing, but the reduced echelon form (and so the
    // kernel basis) does not.
    Ok(LinearSystem { table, matrix, pairs_imposed })
}
