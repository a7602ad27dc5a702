use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::{CycRat, CyclotomicField, Scalar};

/// Sparse row: `(column, value)` pairs sorted by column, values nonzero.
pub type SparseRow = Vec<(usize, CycRat)>;

type Pivots = Vec<(usize, usize)>;

fn axpy(target: &mut BTreeMap<usize, CycRat>, a: &CycRat, row: &[(usize, CycRat)]) {
    // target += a * row
    for (c, v) in row {
        let t = a * v;
        match target.get_mut(c) {
            Some(slot) => {
                *slot = &*slot + &t;
                if slot.is_zero() {
                    target.remove(c);
                }
            }
            None => {
                target.insert(*c, t);
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Pivot {
    row: SparseRow,
    /// the pivot row as a combination of inserted rows
    combo: SparseRow,
}

/// Incrementally maintained row echelon form over a cyclotomic field.
///
/// Rows are inserted one at a time; the span, rank, kernel and membership
/// queries are exact. Each pivot row remembers how it was obtained from the
/// inserted rows, which is what [`RowSpace::express`] reports.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Arc<CyclotomicField>,
    cols: usize,
    pivots: BTreeMap<usize, Pivot>,
    inserted: usize,
}

impl RowSpace {
    pub fn new(field: &Arc<CyclotomicField>, cols: usize) -> Self {
        RowSpace {
            field: field.clone(),
            cols,
            pivots: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    fn reduce_with(
        &self,
        row: impl IntoIterator<Item = (usize, CycRat)>,
        mut combo: BTreeMap<usize, CycRat>,
    ) -> (BTreeMap<usize, CycRat>, BTreeMap<usize, CycRat>) {
        let mut work: BTreeMap<usize, CycRat> = BTreeMap::new();
        for (c, v) in row {
            assert!(c < self.cols, "column {c} out of range");
            if !v.is_zero() {
                axpy(&mut work, &CycRat::one(&self.field), &[(c, v)]);
            }
        }
        let mut cursor = 0;
        while let Some((&c, v)) = work.range(cursor..).next() {
            cursor = c + 1;
            if let Some(p) = self.pivots.get(&c) {
                let a = -v;
                axpy(&mut work, &a, &p.row);
                axpy(&mut combo, &a, &p.combo);
            }
        }
        (work, combo)
    }

    /// Inserts a row; returns true when it enlarged the span.
    pub fn insert(&mut self, row: impl IntoIterator<Item = (usize, CycRat)>) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let start = std::iter::once((idx, CycRat::one(&self.field))).collect();
        let (rem, combo) = self.reduce_with(row, start);
        let Some((&lead, lv)) = rem.iter().next() else {
            return false;
        };
        let inv = lv.inv().expect("nonzero pivot");
        let row = rem.iter().map(|(c, v)| (*c, v * &inv)).collect();
        let combo = combo.iter().map(|(c, v)| (*c, v * &inv)).collect();
        self.pivots.insert(lead, Pivot { row, combo });
        true
    }

    /// Inserts a dense row.
    pub fn insert_dense(&mut self, row: &[CycRat]) -> bool {
        self.insert(row.iter().cloned().enumerate())
    }

    /// Remainder of `row` after reduction by the span (empty iff contained).
    pub fn reduce(&self, row: impl IntoIterator<Item = (usize, CycRat)>) -> SparseRow {
        self.reduce_with(row, BTreeMap::new()).0.into_iter().collect()
    }

    pub fn contains(&self, row: impl IntoIterator<Item = (usize, CycRat)>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Coefficients `a_k` with `row = sum_k a_k * (k-th inserted row)`, or
    /// `None` when `row` is outside the span.
    pub fn express(&self, row: impl IntoIterator<Item = (usize, CycRat)>) -> Option<SparseRow> {
        let (rem, combo) = self.reduce_with(row, BTreeMap::new());
        rem.is_empty()
            .then(|| combo.into_iter().map(|(c, v)| (c, -v)).collect())
    }

    /// Reduced row echelon basis of the span, ordered by pivot column.
    pub fn rref(&self) -> Vec<SparseRow> {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&c, p) in self.pivots.iter().rev() {
            let mut work: BTreeMap<usize, CycRat> = p.row.iter().cloned().collect();
            let later: Vec<usize> = work.keys().copied().filter(|k| *k > c).collect();
            for k in later {
                if let (Some(v), Some(r)) = (work.get(&k).cloned(), done.get(&k)) {
                    axpy(&mut work, &-v, r);
                }
            }
            done.insert(c, work.into_iter().collect());
        }
        done.into_values().collect()
    }

    /// Dense rows of [`RowSpace::rref`].
    pub fn rref_dense(&self) -> Vec<Vec<CycRat>> {
        self.rref()
            .into_iter()
            .map(|r| {
                let mut d = vec![CycRat::zero(&self.field); self.cols];
                for (c, v) in r {
                    d[c] = v;
                }
                d
            })
            .collect()
    }

    /// Basis of the right kernel `{v : r . v = 0 for every row r}`, one
    /// vector per free column, with a 1 in that column.
    pub fn kernel(&self) -> Vec<Vec<CycRat>> {
        let rref = self.rref();
        let pivot_cols: Vec<usize> = self.pivots.keys().copied().collect();
        (0..self.cols)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|f| {
                let mut v = vec![CycRat::zero(&self.field); self.cols];
                v[f] = CycRat::one(&self.field);
                for (row, &p) in rref.iter().zip(&pivot_cols) {
                    if let Ok(k) = row.binary_search_by_key(&f, |(c, _)| *c) {
                        v[p] = -&row[k].1;
                    }
                }
                v
            })
            .collect()
    }
}

/// Dense matrix over [`Scalar`].
///
/// Numeric matrices are reduced by exact Gauss-Jordan elimination over the
/// cyclotomic field; matrices with parameter entries use fraction-free
/// (Bareiss) elimination over the parameter polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Arc<CyclotomicField>,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: &Arc<CyclotomicField>, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn from_rows(field: &Arc<CyclotomicField>, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidStructure("ragged matrix rows".into()));
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(field: &Arc<CyclotomicField>, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn is_numeric(&self) -> bool {
        self.data.iter().all(Scalar::is_numeric)
    }

    fn row_space(&self) -> Result<RowSpace> {
        let mut rs = RowSpace::new(&self.field, self.cols);
        for i in 0..self.rows {
            let mut row = Vec::new();
            for (j, s) in self.row(i).iter().enumerate() {
                if !s.is_zero() {
                    row.push((j, s.to_num(&self.field)?));
                }
            }
            rs.insert(row);
        }
        Ok(rs)
    }

    pub fn rank(&self) -> Result<usize> {
        if self.is_numeric() {
            Ok(self.row_space()?.rank())
        } else {
            Ok(self.bareiss()?.1.len())
        }
    }

    /// Basis of the right kernel. For parameter entries the basis is valid
    /// wherever the pivots found during elimination do not vanish.
    pub fn nullspace(&self) -> Result<Vec<Vec<Scalar>>> {
        if self.is_numeric() {
            return Ok(self
                .row_space()?
                .kernel()
                .into_iter()
                .map(|v| v.into_iter().map(Scalar::num).collect())
                .collect());
        }
        let (m, pivots) = self.bareiss()?;
        let d = match pivots.last() {
            Some(&(r, c)) => m[r][c].clone(),
            None => Scalar::one(&self.field),
        };
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        Ok((0..self.cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = d.clone();
                for &(r, c) in &pivots {
                    v[c] = -&m[r][f];
                }
                v
            })
            .collect())
    }

    /// Fraction-free Gauss-Jordan elimination. Returns the reduced matrix,
    /// in which every pivot equals the last one, and the pivot positions.
    fn bareiss(&self) -> Result<(Vec<Vec<Scalar>>, Pivots)> {
        let mut m: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut prev = Scalar::one(&self.field);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let piv = m[r][c].clone();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let a = m[i][c].clone();
                for j in 0..self.cols {
                    let num = &(&piv * &m[i][j]) - &(&a * &m[r][j]);
                    m[i][j] = num.exact_div(&prev)?.ok_or_else(|| {
                        Error::Elimination(format!("`{num}` is not divisible by `{prev}`"))
                    })?;
                }
            }
            pivots.push((r, c));
            prev = piv;
            r += 1;
        }
        Ok((m, pivots))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Arc<CyclotomicField> {
        CyclotomicField::rationals()
    }

    fn num(f: &Arc<CyclotomicField>, v: i64) -> Scalar {
        Scalar::from_int(f, v)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let f = q();
        assert!(Matrix::identity(&f, 4).nullspace().unwrap().is_empty());
    }

    #[test]
    fn one_by_two() {
        let f = q();
        let m = Matrix::from_rows(&f, vec![vec![num(&f, 1), num(&f, 1)]]).unwrap();
        assert_eq!(m.nullspace().unwrap(), vec![vec![num(&f, -1), num(&f, 1)]]);
        assert_eq!(m.rank().unwrap(), 1);
    }

    #[test]
    fn express_tracks_combinations() {
        let f = q();
        let mut rs = RowSpace::new(&f, 3);
        let r0 = [num(&f, 1), num(&f, 2), num(&f, 0)];
        let r1 = [num(&f, 0), num(&f, 1), num(&f, 1)];
        let to = |r: &[Scalar]| -> Vec<CycRat> { r.iter().map(|s| s.to_num(&f).unwrap()).collect() };
        rs.insert_dense(&to(&r0));
        rs.insert_dense(&to(&r1));
        // 2*r0 - 3*r1
        let target = to(&[num(&f, 2), num(&f, 1), num(&f, -3)]);
        let combo = rs.express(target.iter().cloned().enumerate()).unwrap();
        assert_eq!(combo, vec![(0, CycRat::from_int(&f, 2)), (1, CycRat::from_int(&f, -3))]);
        assert!(rs.express([(2, CycRat::one(&f))]).is_none());
    }

    #[test]
    fn parametric_kernel_is_fraction_free() {
        let f = q();
        let b = Scalar::symbol(&f, "b");
        // [b 1 0; 0 b 1]: kernel spanned by (1, -b, b^2) up to scale
        let m = Matrix::from_rows(&f, vec![
            vec![b.clone(), num(&f, 1), Scalar::zero()],
            vec![Scalar::zero(), b.clone(), num(&f, 1)],
        ])
        .unwrap();
        let k = m.nullspace().unwrap();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Scalar::is_zero));
        assert_eq!(m.rank().unwrap(), 2);
    }
}
