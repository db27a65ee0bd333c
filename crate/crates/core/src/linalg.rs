//! Exact linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactalg::Rational;

/// A sparse row keyed by column index.
pub type SparseRow = BTreeMap<usize, Rational>;

/// Incremental row echelon form of sparse rows; tracks the rank of the span.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `row` against the current pivots.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        row.retain(|_, v| !v.is_zero());
        let mut floor = 0usize;
        loop {
            let Some((&col, coeff)) = row.range(floor..).next() else {
                return row;
            };
            match self.pivots.get(&col) {
                Some(pivot) => {
                    let factor = coeff.clone();
                    for (c, v) in pivot {
                        let entry = row.entry(*c).or_insert_with(Rational::zero);
                        *entry -= &factor * v;
                        if entry.is_zero() {
                            row.remove(c);
                        }
                    }
                }
                None => floor = col + 1,
            }
        }
    }

    /// Insert a row; returns true iff it was independent of the existing rows.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let reduced = self.reduce_leading(row);
        let Some((&col, lead)) = reduced.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        let normalized: SparseRow = reduced.iter().map(|(c, v)| (*c, v * &inv)).collect();
        self.pivots.insert(col, normalized);
        true
    }

    /// Reduce only until the leading column has no pivot.
    fn reduce_leading(&self, mut row: SparseRow) -> SparseRow {
        row.retain(|_, v| !v.is_zero());
        while let Some((&col, coeff)) = row.iter().next() {
            let Some(pivot) = self.pivots.get(&col) else {
                break;
            };
            let factor = coeff.clone();
            for (c, v) in pivot {
                let entry = row.entry(*c).or_insert_with(Rational::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    row.remove(c);
                }
            }
        }
        row
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.pivots.values()
    }
}

/// Dense matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn from_rows(data: Vec<Vec<Rational>>, cols: usize) -> Self {
        Matrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = self.data[r][c].recip();
            for v in self.data[r].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = self.data[r].clone();
            for i in 0..self.rows {
                if i != r && !self.data[i][c].is_zero() {
                    let f = self.data[i][c].clone();
                    for (v, pv) in self.data[i].iter_mut().zip(&pivot_row) {
                        if !pv.is_zero() {
                            *v -= &f * pv;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = -m.data[r][f].clone();
                }
                x
            })
            .collect()
    }
}
