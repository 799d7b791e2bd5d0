//! Dense reference computations used to cross-check the sparse solver.
#![allow(dead_code)]

use std::collections::HashMap;

use halfderiv::algebra::{AlgebraSpec, BasisSymbol, Element, Window};
use halfderiv::Rational;
use rand::Rng;

/// Row echelon rank by dense elimination, skipping zero entries.
pub fn dense_rank(mut rows: Vec<Vec<Rational>>, ncols: usize) -> usize {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip().unwrap();
        let pivot: Vec<(usize, Rational)> = rows[rank]
            .iter()
            .enumerate()
            .skip(col)
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x * &inv))
            .collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (j, x) in &pivot {
                let v = &row[*j] - &(&f * x);
                row[*j] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// `dim π(ker A)` for the coordinate projection `π` onto the columns marked
/// in `interior`: `nullity(A) − nullity(A restricted to the other columns)`.
pub fn dense_interior_dim(rows: &[Vec<Rational>], ncols: usize, interior: &[bool]) -> usize {
    let nullity = ncols - dense_rank(rows.to_vec(), ncols);
    let ext: Vec<usize> = (0..ncols).filter(|&c| !interior[c]).collect();
    let ext_rows: Vec<Vec<Rational>> = rows.iter().map(|r| ext.iter().map(|&c| r[c].clone()).collect()).collect();
    let ext_nullity = ext.len() - dense_rank(ext_rows, ext.len());
    nullity - ext_nullity
}

/// The δ-derivation system of one degree, assembled directly from brackets
/// over all ordered pairs, as dense rows. Returns `(rows, ncols, interior)`.
pub fn dense_system(spec: &AlgebraSpec, degree: i64, w: &Window, delta: &Rational) -> (Vec<Vec<Rational>>, usize, Vec<bool>) {
    let max_shift = spec.families().iter().map(|f| f.degree_shift.abs()).max().unwrap_or(0);
    let sources = spec.symbols_within(w.n_unk);
    let targets = spec.symbols_within(w.n_unk + degree.abs() + 2 * max_shift);
    let mut cols: Vec<(BasisSymbol, BasisSymbol)> = Vec::new();
    let mut of_source: HashMap<BasisSymbol, Vec<(usize, BasisSymbol)>> = HashMap::new();
    for &s in &sources {
        let entry = of_source.entry(s).or_default();
        for &t in &targets {
            if spec.degree(&t) == spec.degree(&s) + degree {
                entry.push((cols.len(), t));
                cols.push((s, t));
            }
        }
    }
    let ncols = cols.len();
    let interior: Vec<bool> = cols.iter().map(|(s, _)| spec.is_central(s) || s.twice().abs() <= w.n_core).collect();
    let syms = spec.symbols_within(w.n_eq);
    let mut rows = Vec::new();
    for &x in &syms {
        for &y in &syms {
            let bxy = spec.bracket(&Element::basis(x), &Element::basis(y)).unwrap();
            let have = |s: &BasisSymbol| of_source.contains_key(s);
            if !have(&x) || !have(&y) || bxy.iter().any(|(s, _)| !have(s)) {
                continue;
            }
            let mut eqs: HashMap<BasisSymbol, Vec<Rational>> = HashMap::new();
            let mut add = |o: BasisSymbol, col: usize, v: Rational| {
                let row = eqs.entry(o).or_insert_with(|| vec![Rational::zero(); ncols]);
                row[col] = &row[col] + &v;
            };
            for (s, c) in &bxy {
                for (col, t) in &of_source[s] {
                    add(*t, *col, c.clone());
                }
            }
            for (col, t) in &of_source[&x] {
                let b = spec.bracket(&Element::basis(*t), &Element::basis(y)).unwrap();
                for (o, v) in &b {
                    add(*o, *col, -&(delta * v));
                }
            }
            for (col, t) in &of_source[&y] {
                let b = spec.bracket(&Element::basis(x), &Element::basis(*t)).unwrap();
                for (o, v) in &b {
                    add(*o, *col, -&(delta * v));
                }
            }
            rows.extend(eqs.into_values());
        }
    }
    (rows, ncols, interior)
}

pub fn oracle_interior_dim(spec: &AlgebraSpec, degree: i64, w: &Window, delta: &Rational) -> usize {
    let (rows, ncols, interior) = dense_system(spec, degree, w, delta);
    dense_interior_dim(&rows, ncols, &interior)
}

pub fn random_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    Rational::new(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

/// A small random sparse matrix together with a random interior mask.
pub fn random_system<R: Rng>(rng: &mut R) -> (Vec<Vec<Rational>>, usize, Vec<bool>) {
    let ncols = rng.gen_range(3..=12);
    let nrows = rng.gen_range(1..=12);
    let rows = (0..nrows)
        .map(|_| {
            (0..ncols)
                .map(|_| if rng.gen_bool(0.4) { random_rational(rng, 3, 2) } else { Rational::zero() })
                .collect()
        })
        .collect();
    let interior = (0..ncols).map(|_| rng.gen_bool(0.5)).collect();
    (rows, ncols, interior)
}
