//! Exact rational matrices and Gaussian elimination with a caller-prescribed
//! pivot-column scan order.
//!
//! Everything here is dense: the degreewise blocks this crate eliminates are
//! tiny (at most a few dozen rows), so sparse machinery would add complexity
//! for nothing. Pivots are normalized to 1 so reduction coefficients can be
//! read straight off the echelon form.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Rational `num/den`. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A dense row-major matrix of exact rationals, with optional opaque row and
/// column labels for diagnostics.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
    pub row_labels: Option<Vec<String>>,
    pub col_labels: Option<Vec<String>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
            row_labels: None,
            col_labels: None,
        }
    }

    /// Convenience constructor from integer entries.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    pub fn with_labels(
        mut self,
        row_labels: Option<Vec<String>>,
        col_labels: Option<Vec<String>>,
    ) -> Self {
        for (labels, count, kind) in [
            (&row_labels, self.rows, "row"),
            (&col_labels, self.cols, "column"),
        ] {
            if let Some(l) = labels {
                assert_eq!(l.len(), count, "{kind} label count mismatch");
                let distinct: std::collections::BTreeSet<&String> = l.iter().collect();
                assert_eq!(distinct.len(), l.len(), "{kind} labels must be distinct");
            }
        }
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c) + a * b;
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }
}

/// Result of `echelonize_ordered`: the reduced form, the pivot columns in
/// order of selection, and the rank.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: RationalMatrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl Echelon {
    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_cols.contains(&col)
    }

    /// Reduces `v` modulo the row space: subtracts pivot rows until every
    /// pivot coordinate is zero. The result is the unique representative of
    /// the class of `v` supported on non-pivot coordinates.
    pub fn normal_form(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.reduced.cols(), "vector length mismatch");
        let mut out = v.to_vec();
        for (k, &p) in self.pivot_cols.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let coeff = std::mem::replace(&mut out[p], Rational::zero());
            for c in 0..out.len() {
                if c == p {
                    continue;
                }
                let e = self.reduced.get(k, c);
                if !e.is_zero() {
                    out[c] -= &coeff * e;
                }
            }
        }
        out
    }
}

/// Gauss-Jordan elimination scanning pivot columns in the prescribed order.
///
/// `column_order` must be a permutation of `0..cols`. The output rows are the
/// reduced row echelon form relative to that order (pivots normalized to 1,
/// pivot columns cleared elsewhere), with row `k` carrying the `k`-th pivot.
/// The result is unique given the order, so repeated runs are bit-identical.
pub fn echelonize_ordered(m: &RationalMatrix, column_order: &[usize]) -> Echelon {
    assert_eq!(
        column_order.len(),
        m.cols(),
        "column order must cover all columns"
    );
    {
        let mut seen = vec![false; m.cols()];
        for &c in column_order {
            assert!(
                c < m.cols() && !seen[c],
                "column order is not a permutation"
            );
            seen[c] = true;
        }
    }
    let mut red = m.clone();
    red.row_labels = None;
    let mut pivot_cols = Vec::new();
    let mut next_row = 0usize;
    for &c in column_order {
        if next_row >= red.rows() {
            break;
        }
        let Some(src) = (next_row..red.rows()).find(|&r| !red.get(r, c).is_zero()) else {
            continue;
        };
        if src != next_row {
            for k in 0..red.cols() {
                let tmp = red.get(src, k).clone();
                red.set(src, k, red.get(next_row, k).clone());
                red.set(next_row, k, tmp);
            }
        }
        let inv = red.get(next_row, c).recip();
        for k in 0..red.cols() {
            if !red.get(next_row, k).is_zero() {
                let v = red.get(next_row, k) * &inv;
                red.set(next_row, k, v);
            }
        }
        for r in 0..red.rows() {
            if r == next_row || red.get(r, c).is_zero() {
                continue;
            }
            let factor = red.get(r, c).clone();
            for k in 0..red.cols() {
                let e = red.get(next_row, k);
                if !e.is_zero() {
                    let v = red.get(r, k) - &factor * e;
                    red.set(r, k, v);
                }
            }
        }
        pivot_cols.push(c);
        next_row += 1;
    }
    let rank = pivot_cols.len();
    Echelon {
        reduced: red,
        pivot_cols,
        rank,
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    let order: Vec<usize> = (0..m.cols()).collect();
    echelonize_ordered(m, &order).rank
}

/// Some solution of `m * x = rhs` when the system is consistent.
pub fn solve_consistent(m: &RationalMatrix, rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(rhs.len(), m.rows(), "right-hand side length mismatch");
    let mut aug = RationalMatrix::zeros(m.rows(), m.cols() + 1);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, m.cols(), rhs[r].clone());
    }
    // Keep the augmented column out of the pivot scan.
    let order: Vec<usize> = (0..=m.cols()).collect();
    let ech = echelonize_ordered(&aug, &order);
    if ech.pivot_cols.contains(&m.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (k, &p) in ech.pivot_cols.iter().enumerate() {
        x[p] = ech.reduced.get(k, m.cols()).clone();
    }
    Some(x)
}

/// Exact determinant of the square submatrix selected by `row_sel` x `col_sel`.
///
/// Panics when the selection is not square or out of range.
pub fn determinant(m: &RationalMatrix, row_sel: &[usize], col_sel: &[usize]) -> Rational {
    assert_eq!(row_sel.len(), col_sel.len(), "non-square selection");
    let k = row_sel.len();
    if k == 0 {
        return Rational::one();
    }
    let mut sub: Vec<Vec<Rational>> = row_sel
        .iter()
        .map(|&r| col_sel.iter().map(|&c| m.get(r, c).clone()).collect())
        .collect();
    let mut det = Rational::one();
    for c in 0..k {
        let Some(src) = (c..k).find(|&r| !sub[r][c].is_zero()) else {
            return Rational::zero();
        };
        if src != c {
            sub.swap(src, c);
            det = -det;
        }
        det *= &sub[c][c];
        let inv = sub[c][c].recip();
        for r in c + 1..k {
            if sub[r][c].is_zero() {
                continue;
            }
            let factor = &sub[r][c] * &inv;
            for j in c..k {
                let v = &sub[c][j] * &factor;
                sub[r][j] -= v;
            }
        }
    }
    det
}

/// Short display form used in diagnostics, e.g. `-1/2`.
pub fn rational_to_string(v: &Rational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `p` or `p/q` with optional sign. Rejects `q == 0`.
pub fn rational_from_str(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (
            a.trim().parse::<BigInt>().ok()?,
            b.trim().parse::<BigInt>().ok()?,
        ),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}
