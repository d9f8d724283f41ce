use std::collections::BTreeMap;

use super::scalar::Field;

/// Sparse row: strictly increasing column indices, no stored zeros.
pub type SparseRow<F> = Vec<(usize, F)>;

/// Drops zero entries from a dense row.
pub fn sparsify<F: Field>(dense: &[F]) -> SparseRow<F> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// `row + factor·other`, both sorted.
fn axpy<F: Field>(row: &[(usize, F)], factor: &F, other: &[(usize, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_left = j >= other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_right = i >= row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_left {
            out.push(row[i].clone());
            i += 1;
        } else if take_right {
            out.push((other[j].0, factor.mul(&other[j].1)));
            j += 1;
        } else {
            let v = row[i].1.add(&factor.mul(&other[j].1));
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental Gaussian elimination over an exact field.
///
/// Rows are reduced against the current pivot set as they arrive, so redundant
/// constraint rows cost one reduction and are then discarded.
#[derive(Clone, Debug)]
pub struct RowReducer<F> {
    ncols: usize,
    // pivot column -> row whose leading entry (at that column) is 1
    pivots: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> RowReducer<F> {
    pub fn new(ncols: usize) -> Self {
        RowReducer { ncols, pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        while let Some((c, v)) = row.first() {
            match self.pivots.get(c) {
                Some(p) => {
                    let f = v.neg();
                    row = axpy(&row, &f, p);
                }
                None => break,
            }
        }
        row
    }

    /// Adds a sparse row; returns `true` if the rank increased.
    pub fn push(&mut self, row: SparseRow<F>) -> bool {
        debug_assert!(row.iter().all(|(c, _)| *c < self.ncols));
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        let row = self.reduce(row);
        let Some((lead, v)) = row.first() else {
            return false;
        };
        let inv = v.inv();
        let lead = *lead;
        let normalized = row.into_iter().map(|(c, x)| (c, x.mul(&inv))).collect();
        self.pivots.insert(lead, normalized);
        true
    }

    pub fn push_dense(&mut self, row: &[F]) -> bool {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        self.push(sparsify(row))
    }

    /// Whether `row` lies in the span of the rows pushed so far.
    pub fn in_span(&self, row: SparseRow<F>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Completes back-substitution, producing the reduced row echelon form.
    pub fn into_rref(self) -> Rref<F> {
        let mut done: BTreeMap<usize, SparseRow<F>> = BTreeMap::new();
        for (lead, row) in self.pivots.into_iter().rev() {
            let mut row = row;
            let targets: Vec<usize> =
                row.iter().skip(1).map(|(c, _)| *c).filter(|c| done.contains_key(c)).collect();
            for c in targets {
                let Some(v) = row.iter().find(|(cc, _)| *cc == c).map(|(_, v)| v.neg()) else {
                    continue;
                };
                row = axpy(&row, &v, &done[&c]);
            }
            done.insert(lead, row);
        }
        Rref { ncols: self.ncols, rows: done }
    }
}

/// Reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref<F> {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.rows.contains_key(c)).collect()
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = (usize, &SparseRow<F>)> {
        self.rows.iter().map(|(c, r)| (*c, r))
    }

    /// Canonical null basis: one vector per free column in increasing order,
    /// with that coordinate 1, other free coordinates 0, and pivot coordinates
    /// the negated row entries.
    pub fn null_basis(&self) -> Vec<Vec<F>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![F::zero(); self.ncols];
                v[f] = F::one();
                for (p, row) in &self.rows {
                    if let Some((_, x)) = row.iter().find(|(c, _)| *c == f) {
                        v[*p] = x.neg();
                    }
                }
                v
            })
            .collect()
    }
}
