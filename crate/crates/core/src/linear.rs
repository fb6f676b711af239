//! Dense linear algebra over finite fields.
//!
//! A [`LinearCode`] always stores its generator matrix in reduced row-echelon
//! form, so two codes are equal exactly when their stored matrices are.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, SubfieldEmbedding};

pub type Vector = Vec<FieldElement>;

#[derive(Clone)]
pub struct LinearCode {
    field: Arc<Field>,
    n: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && *self.field == *other.field && self.rows == other.rows
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}, {}] code over {:?}", self.n, self.k(), self.field)?;
        for row in &self.rows {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Reduces `rows` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot columns.
pub fn rref(field: &Field, rows: &mut Vec<Vector>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = field.inv(rows[r][col]).expect("pivot is nonzero");
        for x in rows[r][col..].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = field.neg(row[col]);
            for (x, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = field.add(*x, field.mul(factor, p));
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: &Field, rows: &[Vector]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

pub fn dot(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter().zip(b).fold(FieldElement::ZERO, |acc, (&x, &y)| {
        field.add(acc, field.mul(x, y))
    })
}

impl LinearCode {
    /// Row space of `rows`, each of length `n`.
    pub fn row_space_basis(field: Arc<Field>, n: usize, rows: Vec<Vector>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("codes must have positive length"));
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "row of length {} in a code of length {n}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|&&x| !field.contains(x)) {
                return Err(Error::FieldMismatch(format!("{bad} is not in {field:?}")));
            }
        }
        let mut rows = rows;
        let pivots = rref(&field, &mut rows);
        Ok(LinearCode {
            field,
            n,
            rows,
            pivots,
        })
    }

    pub fn zero(field: Arc<Field>, n: usize) -> Result<Self> {
        Self::row_space_basis(field, n, Vec::new())
    }

    pub fn full(field: Arc<Field>, n: usize) -> Result<Self> {
        let rows = (0..n)
            .map(|i| {
                let mut v = vec![FieldElement::ZERO; n];
                v[i] = FieldElement::ONE;
                v
            })
            .collect();
        Self::row_space_basis(field, n, rows)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Generator matrix in reduced row-echelon form.
    pub fn generator(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The dual code `{ v : <v, c> = 0 for all c }`.
    pub fn kernel(&self) -> LinearCode {
        let f = &self.field;
        let mut is_pivot = vec![false; self.n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![FieldElement::ZERO; self.n];
                v[free] = FieldElement::ONE;
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = f.neg(row[free]);
                }
                v
            })
            .collect();
        LinearCode::row_space_basis(f.clone(), self.n, rows).expect("kernel rows are well formed")
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        if v.len() != self.n {
            return false;
        }
        // eliminate against the echelon rows; membership iff the remainder vanishes
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if c.is_zero() {
                continue;
            }
            let minus = f.neg(c);
            for (x, &r) in w.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(minus, r));
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn encode(&self, message: &[FieldElement]) -> Vector {
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.n];
        for (&a, row) in message.iter().zip(&self.rows) {
            if a.is_zero() {
                continue;
            }
            for (x, &r) in out.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(a, r));
            }
        }
        out
    }

    fn check_compatible(&self, other: &LinearCode) -> Result<()> {
        if *self.field != *other.field || self.n != other.n {
            return Err(Error::FieldMismatch(format!(
                "cannot combine a length-{} code over {:?} with a length-{} code over {:?}",
                self.n, self.field, other.n, other.field
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        LinearCode::row_space_basis(self.field.clone(), self.n, rows)
    }

    pub fn intersection(&self, other: &LinearCode) -> Result<LinearCode> {
        Ok(self.kernel().sum(&other.kernel())?.kernel())
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.n == other.n
            && *self.field == *other.field
            && self.rows.iter().all(|r| other.contains(r))
    }

    /// Is every generator orthogonal to every generator of `other`?
    pub fn is_orthogonal_to(&self, other: &LinearCode) -> bool {
        self.rows
            .iter()
            .all(|a| other.rows.iter().all(|b| dot(&self.field, a, b).is_zero()))
    }
}

/// Replaces every row of `code` by the `m` rows of its coordinates in the
/// embedding's basis, giving a matrix over the small field. A vector `c` over
/// the small field is orthogonal to every row of `code` exactly when it is
/// orthogonal to every expanded row.
pub fn expand_to_subfield(code: &LinearCode, emb: &SubfieldEmbedding) -> Result<LinearCode> {
    if **code.field() != **emb.big() {
        return Err(Error::FieldMismatch(format!(
            "code is over {:?}, embedding targets {:?}",
            code.field(),
            emb.big()
        )));
    }
    let m = emb.degree() as usize;
    let mut rows = Vec::with_capacity(code.k() * m);
    for row in code.generator() {
        let coords: Vec<Vec<FieldElement>> = row.iter().map(|&x| emb.decompose(x)).collect();
        for l in 0..m {
            rows.push(coords.iter().map(|c| c[l]).collect());
        }
    }
    LinearCode::row_space_basis(emb.small().clone(), code.n(), rows)
}

/// The big-field span of a code over the small field.
pub fn embed_code(code: &LinearCode, emb: &SubfieldEmbedding) -> Result<LinearCode> {
    if **code.field() != **emb.small() {
        return Err(Error::FieldMismatch(format!(
            "code is over {:?}, embedding starts at {:?}",
            code.field(),
            emb.small()
        )));
    }
    let rows = code
        .generator()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| emb.embed(x))
                .collect::<Result<Vector>>()
        })
        .collect::<Result<Vec<_>>>()?;
    LinearCode::row_space_basis(emb.big().clone(), code.n(), rows)
}
