//! Dense matrices over the Gaussian rationals and exact row reduction.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// A dense row-major matrix with exact entries.
///
/// Zero-row matrices are legal and carry their column count, which is how
/// the zero subspace of ℂⁿ is represented.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    /// A matrix with no rows and `cols` columns.
    pub fn empty(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.entries[k * n + k] = GaussianRational::one();
        }
        m
    }

    /// Builds a matrix from explicit rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (k, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {k} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Matrix { rows: n, cols, entries })
    }

    /// Convenience constructor from integer real/imaginary pairs.
    pub fn from_int_rows(cols: usize, rows: &[&[(i64, i64)]]) -> Result<Self> {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&(a, b)| GaussianRational::from_ints(a, b)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[GaussianRational]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    /// Entry (i, j) of the result is `conj(m[j][i])`.
    pub fn conj_transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).conj());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Entrywise conjugate (no transpose).
    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(GaussianRational::conj).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Keeps only the first `n` rows.
    pub fn truncate_rows(mut self, n: usize) -> Matrix {
        let n = n.min(self.rows);
        self.entries.truncate(n * self.cols);
        self.rows = n;
        self
    }

    /// Reduced row-echelon form and rank.
    ///
    /// The result is the unique RREF of the row space: every pivot is 1,
    /// pivot columns are zero elsewhere, and zero rows sit at the bottom.
    pub fn rref(&self) -> (Matrix, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place();
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Row-reduces in place and returns the pivot columns.
    fn reduce(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(sel) = (pr..rows).find(|&r| !self.entries[r * cols + c].is_zero()) else {
                continue;
            };
            if sel != pr {
                for k in c..cols {
                    self.entries.swap(sel * cols + k, pr * cols + k);
                }
            }
            let pivot = &self.entries[pr * cols + c];
            if !pivot.is_one() {
                let inv = pivot.inv().expect("pivot is nonzero");
                for k in c..cols {
                    let e = &mut self.entries[pr * cols + k];
                    if !e.is_zero() {
                        *e = &*e * &inv;
                    }
                }
            }
            let pivot_row: Vec<GaussianRational> = self.entries[pr * cols + c..(pr + 1) * cols].to_vec();
            for r in 0..rows {
                if r == pr {
                    continue;
                }
                let factor = self.entries[r * cols + c].clone();
                if factor.is_zero() {
                    continue;
                }
                for (off, p) in pivot_row.iter().enumerate() {
                    if !p.is_zero() {
                        let e = &mut self.entries[r * cols + c + off];
                        *e -= &(&factor * p);
                    }
                }
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    fn rref_in_place(&mut self) -> usize {
        self.reduce().len()
    }

    /// Canonical basis of the row space: the nonzero rows of the RREF.
    pub fn row_space_basis(&self) -> Matrix {
        let (m, rank) = self.rref();
        m.truncate_rows(rank)
    }

    /// Canonical basis (as rows, in RREF) of `{v : self · v = 0}`.
    pub fn kernel(&self) -> Matrix {
        let mut m = self.clone();
        let pivots = m.reduce();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(n - pivots.len());
        for f in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![GaussianRational::zero(); n];
            v[f] = GaussianRational::one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(k, f);
            }
            basis.push(v);
        }
        let k = Matrix::from_rows(n, basis).expect("kernel rows have n entries");
        k.row_space_basis()
    }

    /// Parses the matrix text format: one row per line (or `;`-separated),
    /// whitespace-separated scalar entries. `cols` fixes the width of an
    /// empty matrix and is checked against nonempty input.
    pub fn parse(src: &str, cols: Option<usize>) -> Result<Matrix> {
        let mut rows = Vec::new();
        let mut offset = 0;
        for line in src.split_inclusive('\n') {
            let content = line.split('#').next().unwrap_or("");
            let mut seg_off = offset;
            for segment in content.split(';') {
                let mut row = Vec::new();
                let mut search = 0;
                for tok in segment.split_whitespace() {
                    let at = seg_off + search + segment[search..].find(tok).unwrap_or(0);
                    search = at - seg_off + tok.len();
                    let z: GaussianRational = tok
                        .parse()
                        .map_err(|_| Error::parse_at(src, at, format!("malformed scalar `{tok}`")))?;
                    row.push(z);
                }
                if !row.is_empty() {
                    rows.push((seg_off, row));
                }
                seg_off += segment.len() + 1;
            }
            offset += line.len();
        }
        let width = match (rows.first(), cols) {
            (Some((_, r)), _) => r.len(),
            (None, Some(c)) => c,
            (None, None) => 0,
        };
        if let Some(c) = cols {
            if c != width {
                return Err(Error::parse_at(
                    src,
                    rows.first().map_or(0, |r| r.0),
                    format!("expected {c} columns, found {width}"),
                ));
            }
        }
        let mut out = Vec::with_capacity(rows.len());
        for (at, row) in rows {
            if row.len() != width {
                return Err(Error::parse_at(
                    src,
                    at,
                    format!("ragged row: {} entries, expected {width}", row.len()),
                ));
            }
            out.push(row);
        }
        Matrix::from_rows(width, out)
    }
}

/// Prints the matrix text format, one row per line.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_iter() {
            let mut first = true;
            for e in row {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{e}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for (k, row) in self.row_iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            f.write_str(&cells.join(" "))?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(src: &str) -> Matrix {
        Matrix::parse(src, None).unwrap()
    }

    #[test]
    fn rref_examples() {
        assert_eq!(Matrix::identity(2).rref(), (Matrix::identity(2), 2));
        assert_eq!(m("1 1\n1 1").rref(), (m("1 1\n0 0"), 1));
        assert_eq!(m("0 1 1*i\n0 2 2*i").rref(), (m("0 1 1*i\n0 0 0"), 1));
    }

    #[test]
    fn rank_of_complex_example_matches_float_rank() {
        // Independent check: the 2x2 minors of [[0,1,i],[0,2,2i]] all vanish
        // in floating point, so the rank is 1.
        let rows = [
            [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)],
            [(0.0, 0.0), (2.0, 0.0), (0.0, 2.0)],
        ];
        let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
        for i in 0..3 {
            for j in i + 1..3 {
                let l = mul(rows[0][i], rows[1][j]);
                let r = mul(rows[0][j], rows[1][i]);
                assert!((l.0 - r.0).abs() < 1e-12 && (l.1 - r.1).abs() < 1e-12);
            }
        }
        assert_eq!(m("0 1 1*i\n0 2 2*i").rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::zeros(2, 2).kernel(), Matrix::identity(2));
        assert_eq!(Matrix::identity(2).kernel(), Matrix::empty(2));
        let a = m("1 1 0");
        let k = a.kernel();
        assert_eq!(k.rows(), 2);
        for row in k.row_iter() {
            let v = Matrix::from_rows(1, row.iter().map(|e| vec![e.clone()]).collect()).unwrap();
            assert!(a.matmul(&v).unwrap().is_zero());
        }
    }

    #[test]
    fn conj_transpose_examples() {
        let d = m("2 0\n0 -3");
        assert_eq!(d.conj_transpose(), d);
        assert_eq!(m("1*i").conj_transpose(), m("-1*i"));
    }

    #[test]
    fn matmul_examples() {
        let a = m("1 2*i 3\n0 1 1/2");
        assert_eq!(a.matmul(&Matrix::identity(3)).unwrap(), a);
        assert_eq!(m("1 1*i").matmul(&m("1\n1*i")).unwrap(), m("0"));
        assert!(a.matmul(&a).is_err());
    }

    #[test]
    fn parse_reports_positions() {
        let err = Matrix::parse("1 2\n3 x", None).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 3,
                message: "malformed scalar `x`".into()
            }
        );
        assert!(Matrix::parse("1 2\n3", None).is_err());
        assert_eq!(Matrix::parse("", Some(3)).unwrap(), Matrix::empty(3));
        assert_eq!(Matrix::parse("1 0; 0 1", None).unwrap(), Matrix::identity(2));
    }

    fn arb_matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = Matrix> {
        (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
            prop::collection::vec((-2i64..=2, -2i64..=2), r * c).prop_map(move |v| {
                Matrix::new(
                    r,
                    c,
                    v.into_iter().map(|(a, b)| GaussianRational::from_ints(a, b)).collect(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent_and_rank_preserving(a in arb_matrix(4, 4)) {
            let (r, rank) = a.rref();
            prop_assert_eq!(r.rref(), (r.clone(), rank));
        }

        #[test]
        fn rank_nullity(a in arb_matrix(4, 5)) {
            prop_assert_eq!(a.kernel().rows() + a.rank(), a.cols());
            prop_assert!(a.matmul(&a.kernel().conj_transpose().conj()).unwrap().is_zero());
        }

        #[test]
        fn rank_of_conj_transpose(a in arb_matrix(4, 4)) {
            prop_assert_eq!(a.rank(), a.conj_transpose().rank());
            prop_assert_eq!(a.conj_transpose().conj_transpose(), a);
        }

        #[test]
        fn row_permutation_gives_identical_canonical_form(a in arb_matrix(4, 4), rot in 0usize..4) {
            let rows: Vec<Vec<GaussianRational>> = a.row_iter().map(<[_]>::to_vec).collect();
            let k = rot % rows.len();
            let mut permuted = rows[k..].to_vec();
            permuted.extend_from_slice(&rows[..k]);
            permuted.reverse();
            let b = Matrix::from_rows(a.cols(), permuted).unwrap();
            prop_assert_eq!(a.rref(), b.rref());
        }

        #[test]
        fn matmul_is_associative(a in arb_matrix(2, 3), b in arb_matrix(3, 2), c in arb_matrix(2, 2)) {
            if a.cols() == b.rows() && b.cols() == c.rows() {
                let l = a.matmul(&b).unwrap().matmul(&c).unwrap();
                let r = a.matmul(&b.matmul(&c).unwrap()).unwrap();
                prop_assert_eq!(l, r);
            }
        }
    }
}
