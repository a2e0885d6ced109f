//! Exact rational matrices with fraction-free elimination.
//!
//! Determinants clear denominators column by column, then run Bareiss elimination over
//! the integers. Rank and kernel clear denominators row by row (which leaves the
//! kernel unchanged), reduce to a fraction-free echelon form and back-substitute.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Scalars of the field `k`, realized as arbitrary-precision rationals in lowest terms.
pub type ExactRational = BigRational;

/// `n` as an [`ExactRational`].
pub fn rat(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n / d` as an [`ExactRational`]. Panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![ExactRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ExactRational::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<ExactRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(alloc::format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<ExactRational>>) -> Result<Self> {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_entries(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
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

    pub fn get(&self, r: usize, c: usize) -> &ExactRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: ExactRational) {
        self.entries[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[ExactRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[ExactRational] {
        &self.entries
    }

    /// The first `n` rows.
    pub fn top_rows(&self, n: usize) -> ExactMatrix {
        let n = n.min(self.rows);
        ExactMatrix {
            rows: n,
            cols: self.cols,
            entries: self.entries[..n * self.cols].to_vec(),
        }
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<ExactMatrix> {
        if perm.len() != self.rows {
            return Err(Error::Shape("permutation length differs from row count".into()));
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for &p in perm {
            entries.extend_from_slice(self.row(p));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn mul_vec(&self, v: &[ExactRational]) -> Result<Vec<ExactRational>> {
        if v.len() != self.cols {
            return Err(Error::Shape(alloc::format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(ExactRational::zero(), |acc, x| acc + x)
            })
            .collect())
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(alloc::format!(
                "{}x{} times {}x{}",
                self.rows,
                self.cols,
                rhs.rows,
                rhs.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn lcm_of_denominators<'a>(xs: impl Iterator<Item = &'a ExactRational>) -> BigInt {
    xs.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Integer matrix in row-major order, scratch space for elimination.
struct IntMatrix {
    rows: usize,
    cols: usize,
    a: Vec<BigInt>,
}

impl IntMatrix {
    /// Multiplies each row by the lcm of its denominators.
    fn row_cleared(m: &ExactMatrix) -> Self {
        let mut a = Vec::with_capacity(m.rows * m.cols);
        for r in 0..m.rows {
            let row = m.row(r);
            let l = lcm_of_denominators(row.iter());
            a.extend(row.iter().map(|x| x.numer() * (&l / x.denom())));
        }
        IntMatrix {
            rows: m.rows,
            cols: m.cols,
            a,
        }
    }

    /// Multiplies each column by the lcm of its denominators and returns the product of
    /// those factors alongside.
    fn column_cleared(m: &ExactMatrix) -> (Self, BigInt) {
        let factors: Vec<BigInt> = (0..m.cols)
            .map(|c| lcm_of_denominators((0..m.rows).map(|r| m.get(r, c))))
            .collect();
        let a = m
            .entries
            .iter()
            .enumerate()
            .map(|(k, x)| x.numer() * (&factors[k % m.cols] / x.denom()))
            .collect();
        let scale = factors.iter().fold(BigInt::one(), |acc, f| acc * f);
        (
            IntMatrix {
                rows: m.rows,
                cols: m.cols,
                a,
            },
            scale,
        )
    }

    /// Fraction-free (Bareiss) reduction to row echelon form in place.
    ///
    /// Pivots are the first nonzero entry at or below the current row. Returns the
    /// pivot columns and the parity of the row swaps performed. Every intermediate
    /// entry is a minor of the input, so the divisions are exact.
    fn bareiss_echelon(&mut self) -> (Vec<usize>, bool) {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut odd_swaps = false;
        let mut prev = BigInt::one();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(p) = (row..rows).find(|&i| !self.a[i * cols + col].is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..cols {
                    self.a.swap(p * cols + j, row * cols + j);
                }
                odd_swaps = !odd_swaps;
            }
            let pivot = self.a[row * cols + col].clone();
            for i in row + 1..rows {
                let factor = self.a[i * cols + col].clone();
                for j in col + 1..cols {
                    let idx = i * cols + j;
                    let upper = &self.a[row * cols + j];
                    let mut x = &pivot * &self.a[idx];
                    if !factor.is_zero() && !upper.is_zero() {
                        x -= &factor * upper;
                    }
                    if !prev.is_one() {
                        x /= &prev;
                    }
                    self.a[idx] = x;
                }
                self.a[i * cols + col] = BigInt::zero();
            }
            prev = pivot;
            pivots.push(col);
            row += 1;
        }
        (pivots, odd_swaps)
    }
}

/// Exact determinant of a square matrix.
pub fn det_exact(m: &ExactMatrix) -> Result<ExactRational> {
    if !m.is_square() {
        return Err(Error::Shape(alloc::format!(
            "determinant of a non-square {}x{} matrix",
            m.rows,
            m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(ExactRational::one());
    }
    let (mut int, scale) = IntMatrix::column_cleared(m);
    let (pivots, odd_swaps) = int.bareiss_echelon();
    if pivots.len() < n {
        return Ok(ExactRational::zero());
    }
    let mut det = int.a[n * n - 1].clone();
    if odd_swaps {
        det = -det;
    }
    Ok(BigRational::new(det, scale))
}

/// Exact rank.
pub fn rank_exact(m: &ExactMatrix) -> usize {
    let mut int = IntMatrix::row_cleared(m);
    int.bareiss_echelon().0.len()
}

/// A basis of the right null space `{x : m·x = 0}`.
///
/// One vector per non-pivot column, scaled to a primitive integer vector whose free
/// coordinate is positive. Empty iff the columns are independent.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<ExactRational>> {
    let mut int = IntMatrix::row_cleared(m);
    let (pivots, _) = int.bareiss_echelon();
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![BigRational::zero(); cols];
        x[free] = BigRational::one();
        for (k, &pc) in pivots.iter().enumerate().rev() {
            let row = &int.a[k * cols..(k + 1) * cols];
            let mut acc = BigRational::zero();
            for j in pc + 1..cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc += &x[j] * &row[j];
                }
            }
            x[pc] = -acc / BigRational::from_integer(row[pc].clone());
        }
        basis.push(primitive_integer(x));
    }
    basis
}

/// Scales a nonzero rational vector to coprime integers, keeping its direction.
fn primitive_integer(x: Vec<ExactRational>) -> Vec<ExactRational> {
    let l = lcm_of_denominators(x.iter());
    let ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&l / v.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return x;
    }
    ints.into_iter()
        .map(|v| BigRational::from_integer(v / &g))
        .collect()
}

/// Largest absolute value among `xs`, zero for an empty slice.
pub fn max_abs(xs: &[ExactRational]) -> ExactRational {
    xs.iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(ExactRational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Laplace expansion along the first row; the independent oracle.
    fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for c in 0..n {
            if m[0][c] == 0 {
                continue;
            }
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != c)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let term = BigInt::from(m[0][c]) * cofactor_det(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn to_matrix(m: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_rows(m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
            .unwrap()
    }

    fn square(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-9i64..=9, n), n))
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_exact(&ExactMatrix::identity(3)).unwrap(), rat(1));
        let m = ExactMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(det_exact(&m).unwrap(), rat(-2));
        let m = ExactMatrix::from_i64_rows(&[&[1, 5, 7], &[2, 0, 3], &[1, 5, 7]]).unwrap();
        assert_eq!(det_exact(&m).unwrap(), rat(0));
        assert!(det_exact(&ExactMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn det_with_fractions_and_late_pivots() {
        // [[0, 1/2], [1/3, 0]] -> -1/6
        let m = ExactMatrix::from_rows(vec![
            vec![rat(0), frac(1, 2)],
            vec![frac(1, 3), rat(0)],
        ])
        .unwrap();
        assert_eq!(det_exact(&m).unwrap(), frac(-1, 6));
        let m = ExactMatrix::from_i64_rows(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]]).unwrap();
        assert_eq!(det_exact(&m).unwrap(), rat(-6));
    }

    #[test]
    fn kernel_examples() {
        let m = ExactMatrix::from_i64_rows(&[&[1, 1]]).unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![rat(-1), rat(1)]]);
        assert!(kernel_basis(&ExactMatrix::identity(4)).is_empty());
        let m = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(&k[0][0] * rat(-1), &k[0][1] * rat(2));
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_exact(&ExactMatrix::zeros(3, 4)), 0);
        assert_eq!(rank_exact(&ExactMatrix::identity(5)), 5);
        let m = ExactMatrix::from_i64_rows(&[&[1, 0, 1], &[0, 1, 1]]).unwrap();
        assert_eq!(rank_exact(&m), 2);
    }

    #[test]
    fn empty_matrix_conventions() {
        assert_eq!(det_exact(&ExactMatrix::zeros(0, 0)).unwrap(), rat(1));
        assert_eq!(kernel_basis(&ExactMatrix::zeros(0, 3)).len(), 3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn det_matches_cofactor_oracle(m in square(5)) {
            let expected = BigRational::from_integer(cofactor_det(&m));
            prop_assert_eq!(det_exact(&to_matrix(&m)).unwrap(), expected);
        }

        #[test]
        fn det_nonzero_iff_kernel_empty(m in square(8)) {
            let mat = to_matrix(&m);
            let det = det_exact(&mat).unwrap();
            prop_assert_eq!(det.is_zero(), !kernel_basis(&mat).is_empty());
        }

        #[test]
        fn det_row_permutation_sign(
            (m, perm) in (1usize..=6).prop_flat_map(|n| (
                prop::collection::vec(prop::collection::vec(-9i64..=9, n), n),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            ))
        ) {
            let mat = to_matrix(&m);
            let permuted = mat.permute_rows(&perm).unwrap();
            let p: Vec<i64> = perm.iter().map(|&x| x as i64).collect();
            let sign = crate::combinat::permutation_sign(&p).unwrap();
            prop_assert_eq!(det_exact(&permuted).unwrap(), sign.apply(det_exact(&mat).unwrap()));
        }

        #[test]
        fn rank_nullity_and_kernel_vectors(
            m in (1usize..=6, 1usize..=7).prop_flat_map(|(r, c)|
                prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
        ) {
            let mat = to_matrix(&m);
            let kernel = kernel_basis(&mat);
            prop_assert_eq!(rank_exact(&mat) + kernel.len(), mat.cols());
            for v in &kernel {
                prop_assert!(mat.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn rational_det_is_multiplicative(a in square(4), den in 1i64..=6) {
            // scaling every entry by 1/den scales the det by den^-n
            let n = a.len();
            let scaled = ExactMatrix::from_rows(
                a.iter().map(|r| r.iter().map(|&x| frac(x, den)).collect()).collect()
            ).unwrap();
            let expected = det_exact(&to_matrix(&a)).unwrap() / rat(den).pow(n as i32);
            prop_assert_eq!(det_exact(&scaled).unwrap(), expected);
        }
    }
}
