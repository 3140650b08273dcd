use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

use super::{denominator_lcm, format_rational, Rational};
use crate::error::{Error, Result};

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed for the 0-row case.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        let n = rows.len();
        Ok(ExactMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect();
        Self::from_rows(rows, cols).expect("rectangular input")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
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

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: Vec<Rational>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} pushed onto {} columns",
                row.len(),
                self.cols
            )));
        }
        self.entries.extend(row);
        self.rows += 1;
        Ok(())
    }

    /// Copy with row `del_row` and column `del_col` removed (either may be `None`).
    pub fn minor(&self, del_row: Option<usize>, del_col: Option<usize>) -> ExactMatrix {
        let rows: Vec<Vec<Rational>> = (0..self.rows)
            .filter(|&r| Some(r) != del_row)
            .map(|r| {
                (0..self.cols)
                    .filter(|&c| Some(c) != del_col)
                    .map(|c| self.get(r, c).clone())
                    .collect()
            })
            .collect();
        let cols = self.cols - usize::from(del_col.is_some());
        ExactMatrix::from_rows(rows, cols).expect("minor is rectangular")
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("matrix product".into()));
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Rows scaled to integers by the lcm of their denominators, with the scale factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = denominator_lcm(row);
                let ints = row.iter().map(|v| (v * &l).to_integer()).collect();
                (ints, l)
            })
            .unzip()
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let (mut a, scales) = self.integer_rows();
        let ech = bareiss_echelon(&mut a, n);
        if ech.pivots.len() < n {
            return Ok(Rational::zero());
        }
        let det_int = if ech.negate { -&a[n - 1][n - 1] } else { a[n - 1][n - 1].clone() };
        let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        Ok(Rational::new(det_int, scale))
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let (mut a, _) = self.integer_rows();
        bareiss_echelon(&mut a, self.cols).pivots.len()
    }

    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve with a {}x{} matrix and a vector of length {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let n = self.rows;
        let mut aug = self.clone();
        aug.cols += 1;
        aug.entries = (0..n)
            .flat_map(|r| self.row(r).iter().cloned().chain(std::iter::once(b[r].clone())))
            .collect();
        let (mut a, _) = aug.integer_rows();
        let ech = bareiss_echelon(&mut a, n);
        if ech.pivots.len() < n {
            return Err(Error::SingularMatrix);
        }
        let mut x = vec![Rational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = Rational::from_integer(a[i][n].clone());
            for j in i + 1..n {
                if !a[i][j].is_zero() {
                    acc -= Rational::from_integer(a[i][j].clone()) * &x[j];
                }
            }
            x[i] = acc / Rational::from_integer(a[i][i].clone());
        }
        Ok(x)
    }

    /// Reduced row echelon form over Q and the pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

struct Echelon {
    pivots: Vec<(usize, usize)>,
    negate: bool,
}

/// Fraction-free (Bareiss) forward elimination in place, searching pivots in
/// the first `pivot_cols` columns. Every division is exact.
fn bareiss_echelon(a: &mut [Vec<BigInt>], pivot_cols: usize) -> Echelon {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut negate = false;
    let mut pivots = Vec::new();
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            negate = !negate;
        }
        let (top, below) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in below.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let num = pivot * &row[j] - &lead * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
        }
        prev = pivot.clone();
        pivots.push((r, c));
        r += 1;
    }
    Echelon { pivots, negate }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact determinant by fraction-free elimination. A 0x0 matrix has determinant 1.
pub fn det_fraction_free(a: &ExactMatrix) -> Result<Rational> {
    a.determinant()
}

/// Unique solution of `A x = b`; `SingularMatrix` when `det A = 0`.
pub fn solve_exact(a: &ExactMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    a.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    #[test]
    fn determinant_examples() {
        let a = ExactMatrix::from_i64_rows(&[&[0, -3], &[1, 0]]);
        assert_eq!(det_fraction_free(&a).unwrap(), int(3));
        assert_eq!(det_fraction_free(&ExactMatrix::identity(5)).unwrap(), int(1));
        assert_eq!(det_fraction_free(&ExactMatrix::from_i64_rows(&[&[-1]])).unwrap(), int(-1));
        assert_eq!(det_fraction_free(&ExactMatrix::zeros(0, 0)).unwrap(), int(1));
        assert!(det_fraction_free(&ExactMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn rational_entries() {
        let a = ExactMatrix::from_rows(
            vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 5)]],
            2,
        )
        .unwrap();
        // 1/10 - 1/12 = 1/60
        assert_eq!(a.determinant().unwrap(), rat(1, 60));
    }

    #[test]
    fn solve_examples() {
        let a = ExactMatrix::from_i64_rows(&[&[-1]]);
        assert_eq!(solve_exact(&a, &[int(-3)]).unwrap(), vec![int(3)]);
        let a = ExactMatrix::from_i64_rows(&[&[0, -3], &[1, 0]]);
        assert_eq!(solve_exact(&a, &[int(-5), int(0)]).unwrap(), vec![int(0), rat(5, 3)]);
        let b = vec![int(4), rat(-2, 7), int(0)];
        assert_eq!(solve_exact(&ExactMatrix::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn singular_is_an_error() {
        let a = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve_exact(&a, &[int(1), int(2)]), Err(Error::SingularMatrix));
        assert_eq!(a.determinant().unwrap(), int(0));
    }

    #[test]
    fn rank_and_nullspace() {
        let a = ExactMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).unwrap().iter().all(|v| v.is_zero()));
        assert_eq!(ExactMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(ExactMatrix::zeros(0, 4).nullspace().len(), 4);
    }

    #[test]
    fn minor_deletes_row_and_column() {
        let a = ExactMatrix::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(a.minor(Some(0), Some(1)), ExactMatrix::from_i64_rows(&[&[4, 6]]));
        assert_eq!(a.minor(None, Some(0)).cols(), 2);
    }
}
