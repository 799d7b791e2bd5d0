//! Exact sparse Gaussian elimination over ℚ.

use std::collections::BTreeMap;

use crate::rational::Rational;

/// A sparse vector: strictly increasing column indices with nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from arbitrary `(col, value)` pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in pairs {
            *acc.entry(c).or_insert_with(Rational::zero) += &v;
        }
        SparseVec { entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(c, v)| (*c, v))
    }

    pub fn get(&self, col: usize) -> Rational {
        match self.entries.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn scale(&mut self, f: &Rational) {
        for (_, v) in &mut self.entries {
            *v *= f;
        }
    }

    /// `self + f * other`.
    pub fn axpy(&self, f: &Rational, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, f * &b[j].1));
                j += 1;
            } else {
                let mut v = a[i].1.clone();
                v.add_mul(f, &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    /// Keeps only the columns accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> SparseVec {
        SparseVec { entries: self.entries.iter().filter(|(c, _)| keep(*c)).cloned().collect() }
    }

    pub fn to_dense(&self, ncols: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); ncols];
        for (c, v) in &self.entries {
            out[*c] = v.clone();
        }
        out
    }
}

/// Incremental row echelon form with the lowest available column as pivot.
///
/// Each stored pivot row has leading coefficient 1. Rows are reduced on
/// insertion; [`Echelon::reduced_rows`] performs back-substitution.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots (leading columns only).
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        while let Some((c, v)) = row.leading() {
            match self.pivots.get(&c) {
                Some(p) => {
                    let f = -v;
                    row = row.axpy(&f, p);
                }
                None => break,
            }
        }
        row
    }

    /// Inserts a row; returns the new pivot column, or `None` if the row was
    /// dependent on those already present.
    pub fn insert(&mut self, row: SparseVec) -> Option<usize> {
        let mut r = self.reduce(row);
        let (c, lead) = r.leading().map(|(c, v)| (c, v.clone()))?;
        r.scale(&lead.recip().expect("leading entry is nonzero"));
        self.pivots.insert(c, r);
        Some(c)
    }

    /// Fully reduces `row` against every pivot (not only leading columns).
    pub fn reduce_fully(&self, row: &SparseVec) -> SparseVec {
        let mut r = row.clone();
        for (c, p) in &self.pivots {
            let v = r.get(*c);
            if !v.is_zero() {
                r = r.axpy(&-&v, p);
            }
        }
        r
    }

    /// Reduced row echelon form, keyed by pivot column.
    pub fn reduced_rows(&self) -> BTreeMap<usize, SparseVec> {
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&c, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            // every pivot column > c has already been fully reduced
            let cols: Vec<usize> = r.entries().iter().map(|(k, _)| *k).filter(|k| *k > c).collect();
            for k in cols {
                if let Some(p) = done.get(&k) {
                    let v = r.get(k);
                    if !v.is_zero() {
                        r = r.axpy(&-&v, p);
                    }
                }
            }
            done.insert(c, r);
        }
        done
    }

    /// A basis of the kernel: one vector per free column, in increasing
    /// order of that column, with a 1 at the free column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let rref = self.reduced_rows();
        let mut by_free: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (&pc, row) in &rref {
            for (k, v) in row.entries() {
                if *k != pc {
                    by_free.entry(*k).or_default().push((pc, -v));
                }
            }
        }
        (0..self.ncols)
            .filter(|c| !rref.contains_key(c))
            .map(|f| {
                let mut pairs = by_free.remove(&f).unwrap_or_default();
                pairs.push((f, Rational::one()));
                SparseVec::from_pairs(pairs)
            })
            .collect()
    }
}

/// A sparse matrix kept as a list of rows.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub ncols: usize,
    pub rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { ncols, rows: Vec::new() }
    }

    pub fn push(&mut self, row: SparseVec) {
        if !row.is_zero() {
            self.rows.push(row);
        }
    }

    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ncols);
        for r in &self.rows {
            e.insert(r.clone());
        }
        e
    }

    /// Exact kernel basis (see [`Echelon::kernel`]).
    pub fn nullspace(&self) -> Vec<SparseVec> {
        self.echelon().kernel()
    }

    pub fn apply(&self, v: &SparseVec) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|r| {
                let mut acc = Rational::zero();
                for (c, x) in r.entries() {
                    let y = v.get(*c);
                    if !y.is_zero() {
                        acc.add_mul(x, &y);
                    }
                }
                acc
            })
            .collect()
    }
}
