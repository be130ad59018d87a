//! Dense exact linear algebra over F_q.
//!
//! Gauss-Jordan elimination with first-nonzero pivoting. Output is
//! deterministic, so kernel bases and exported matrices are reproducible.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ff::{FieldCtx, FieldElem, FieldError};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed matrix data: {0}")]
    Malformed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type Vector = Vec<FieldElem>;

#[derive(Clone)]
pub struct Matrix {
    field: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElem>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.field.id() == other.field.id()
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
    }
}

/// Result of [`Matrix::rref`].
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// JSON export form: row-major serialized field elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

impl Matrix {
    pub fn zeros(field: &Arc<FieldCtx>, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Arc<FieldCtx>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Arc<FieldCtx>, cols: usize, rows: &[Vector]) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            entries.extend_from_slice(r);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Matrix from small integers, reduced into the prime subfield.
    pub fn from_ints(field: &Arc<FieldCtx>, rows: &[&[i64]]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Self::from_rows(field, cols, &rows)
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[FieldElem]) -> Result<(), LinalgError> {
        if row.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: row.len(),
            });
        }
        self.entries.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            if pr != lead {
                for j in 0..m.cols {
                    m.entries.swap(pr * m.cols + j, lead * m.cols + j);
                }
            }
            let inv = f.inv(m.get(lead, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(lead, j), inv);
                m.set(lead, j, v);
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(lead, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel, one vector per free column of the RREF:
    /// the free variable is 1, other free variables 0.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let Rref { matrix, pivots, .. } = self.rref();
        kernel_from_rref(&self.field, self.cols, &pivots, |i, j| matrix.get(i, j))
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&x| self.field.format(x)).collect(),
        }
    }

    pub fn from_json(field: &Arc<FieldCtx>, json: &MatrixJson) -> Result<Self, LinalgError> {
        if json.entries.len() != json.rows * json.cols {
            return Err(LinalgError::Malformed(format!(
                "{} entries for a {}x{} matrix",
                json.entries.len(),
                json.rows,
                json.cols
            )));
        }
        let entries = json
            .entries
            .iter()
            .map(|s| field.parse(s))
            .collect::<Result<_, _>>()?;
        Ok(Matrix {
            field: field.clone(),
            rows: json.rows,
            cols: json.cols,
            entries,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.field.format(x)).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(field: &Arc<FieldCtx>, text: &str) -> Result<Self, LinalgError> {
        let rows: Vec<Vector> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split(',').map(|s| field.parse(s)).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(field, cols, &rows)
    }
}

fn kernel_from_rref(
    field: &FieldCtx,
    cols: usize,
    pivots: &[usize],
    entry: impl Fn(usize, usize) -> FieldElem,
) -> Vec<Vector> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(entry(i, free));
            }
            v
        })
        .collect()
}

/// Incrementally maintained row space in semi-echelon form: every stored
/// row has a 1 at its pivot and zeros in all earlier columns and in the
/// pivot columns of earlier rows.
///
/// Used when the full constraint matrix would be too large to hold, and for
/// span-membership and basis-extension questions.
#[derive(Clone)]
pub struct RowSpace {
    field: Arc<FieldCtx>,
    cols: usize,
    rows: Vec<Vector>,
    pivot_row: Vec<Option<usize>>,
}

impl RowSpace {
    pub fn new(field: &Arc<FieldCtx>, cols: usize) -> Self {
        RowSpace {
            field: field.clone(),
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    fn check_len(&self, v: &[FieldElem]) -> Result<(), LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Reduces `v` in place against the stored rows. Returns the first
    /// column where the residual is nonzero, if any.
    fn reduce_in_place(&self, v: &mut [FieldElem]) -> Option<usize> {
        let f = &self.field;
        for c in 0..self.cols {
            if v[c].is_zero() {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    let factor = v[c];
                    let row = &self.rows[r];
                    for j in c..self.cols {
                        if !row[j].is_zero() {
                            v[j] = f.sub(v[j], f.mul(factor, row[j]));
                        }
                    }
                }
                None => return Some(c),
            }
        }
        None
    }

    pub fn contains(&self, v: &[FieldElem]) -> Result<bool, LinalgError> {
        self.check_len(v)?;
        let mut w = v.to_vec();
        Ok(self.reduce_in_place(&mut w).is_none())
    }

    /// Adds `v` to the span. Returns whether it was independent.
    pub fn insert(&mut self, v: &[FieldElem]) -> Result<bool, LinalgError> {
        self.check_len(v)?;
        let mut w = v.to_vec();
        let Some(c) = self.reduce_in_place(&mut w) else {
            return Ok(false);
        };
        // Keep reducing past the pivot so the row is zero on every
        // existing pivot column.
        let f = &self.field;
        for j in c + 1..self.cols {
            if w[j].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[j] {
                let factor = w[j];
                let row = &self.rows[r];
                for k in j..self.cols {
                    if !row[k].is_zero() {
                        w[k] = f.sub(w[k], f.mul(factor, row[k]));
                    }
                }
            }
        }
        let inv = f.inv(w[c]).expect("pivot is nonzero");
        for x in w.iter_mut().skip(c) {
            *x = f.mul(*x, inv);
        }
        self.pivot_row[c] = Some(self.rows.len());
        self.rows.push(w);
        Ok(true)
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// The span's reduced row echelon basis.
    pub fn rref_rows(&self) -> Vec<Vector> {
        let f = &self.field;
        let pivots = self.pivots();
        let mut out: Vec<Vector> = pivots
            .iter()
            .map(|&c| self.rows[self.pivot_row[c].unwrap()].clone())
            .collect();
        // Back-substitute from the bottom so each pivot column is cleared
        // in every other row.
        for i in (0..out.len()).rev() {
            let c = pivots[i];
            let (upper, lower) = out.split_at_mut(i);
            let pivot_row = &lower[0];
            for row in upper.iter_mut() {
                let factor = row[c];
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    if !pivot_row[j].is_zero() {
                        row[j] = f.sub(row[j], f.mul(factor, pivot_row[j]));
                    }
                }
            }
        }
        out
    }

    /// Kernel of the matrix whose rows span this space, in the same
    /// canonical form as [`Matrix::kernel_basis`].
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let rows = self.rref_rows();
        kernel_from_rref(&self.field, self.cols, &self.pivots(), |i, j| rows[i][j])
    }
}

/// Whether `v` is an F_q-combination of `basis`.
pub fn in_span(field: &Arc<FieldCtx>, basis: &[Vector], v: &[FieldElem]) -> Result<bool, LinalgError> {
    let mut space = RowSpace::new(field, v.len());
    for b in basis {
        space.insert(b)?;
    }
    space.contains(v)
}

/// Dimension of the span of `vectors` (all of length `cols`).
pub fn span_dim(field: &Arc<FieldCtx>, cols: usize, vectors: &[Vector]) -> Result<usize, LinalgError> {
    let mut space = RowSpace::new(field, cols);
    for v in vectors {
        space.insert(v)?;
    }
    Ok(space.dim())
}
