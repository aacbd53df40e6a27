//! Exact integer and rational linear algebra kernels.
//!
//! Everything in this module is computed over arbitrary-precision integers
//! (`BigInt`) or rationals (`BigRational`); there is no floating point and no
//! fixed-width arithmetic. The matrices that show up in practice are small
//! (rank at most ~20), so the algorithms favour simplicity and verifiable
//! exactness over asymptotics:
//!
//! * determinants by fraction-free Bareiss elimination,
//! * Smith normal form by pivoting on the smallest nonzero entry, with full
//!   left/right unimodular transforms and a divisibility repair pass,
//! * definiteness by Sylvester's leading-minor criterion,
//! * linear solving over Z and Q through the Smith form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows
                .iter()
                .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
                .collect(),
        }
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zero(dim, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), dim, "column length mismatch");
            for i in 0..dim {
                m[(i, j)] = col[i].clone();
            }
        }
        m
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

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Leading principal k-by-k submatrix.
    pub fn leading_minor_matrix(&self, k: usize) -> Self {
        assert!(k <= self.rows && k <= self.cols);
        let mut m = Self::zero(k, k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Submatrix on the given row and column index sets (in the given order).
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        let mut m = Self::zero(row_idx.len(), col_idx.len());
        for (a, &i) in row_idx.iter().enumerate() {
            for (b, &j) in col_idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn reduction_mod2(&self) -> F2Matrix {
        let bits = self
            .entries
            .iter()
            .map(|e| e.mod_floor(&BigInt::from(2)) == BigInt::one())
            .collect();
        F2Matrix {
            rows: self.rows,
            cols: self.cols,
            bits,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row a -= q * row b
    fn row_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let sub = q * &self[(b, j)];
            self[(a, j)] -= sub;
        }
    }

    /// col a -= q * col b
    fn col_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let sub = q * &self[(i, b)];
            self[(i, a)] -= sub;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Exact determinant by fraction-free Bareiss elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt, ExactError> {
    if !m.is_square() {
        return Err(ExactError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                // Bareiss division is exact.
                a[(i, j)] = num / &prev;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * a[(n - 1, n - 1)].clone())
}

pub fn is_unimodular(m: &IntMatrix) -> Result<bool, ExactError> {
    let d = determinant(m)?;
    Ok(d.abs().is_one())
}

/// Sylvester test: symmetric `g` is negative definite iff its leading
/// principal minors alternate in sign starting negative. Semidefinite inputs
/// (a zero minor) return false. The empty matrix counts as negative definite.
pub fn is_negative_definite(g: &IntMatrix) -> Result<bool, ExactError> {
    if !g.is_square() {
        return Err(ExactError::NotSquare {
            rows: g.rows,
            cols: g.cols,
        });
    }
    if !g.is_symmetric() {
        return Err(ExactError::NotSymmetric);
    }
    for k in 1..=g.rows {
        let minor = determinant(&g.leading_minor_matrix(k))?;
        let expected_negative = k % 2 == 1;
        if minor.is_zero() || minor.is_negative() != expected_negative {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smith normal form `left * m * right = diag`, with `left`, `right`
/// unimodular and `diag[i] | diag[i+1]`.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfResult {
    /// Rank of the original matrix = number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// Invariant factors greater than one, i.e. the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }

    pub fn diag_embedding(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zero(rows, cols);
        for (i, v) in self.diag.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let k = rows.min(cols);

    diagonalize_from(&mut a, &mut left, &mut right, 0);

    // Divisibility repair: whenever d_i does not divide d_j, add column j to
    // column i and re-diagonalize from position i. The new d_i is a proper
    // divisor of the old one, so this terminates.
    loop {
        let mut broken: Option<(usize, usize)> = None;
        'scan: for i in 0..k {
            if a[(i, i)].is_zero() {
                continue;
            }
            for j in i + 1..k {
                if !a[(j, j)].is_zero() && !a[(j, j)].is_multiple_of(&a[(i, i)]) {
                    broken = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((i, j)) = broken else { break };
        for r in 0..rows {
            let add = a[(r, j)].clone();
            a[(r, i)] += add;
        }
        for r in 0..cols {
            let add = right[(r, j)].clone();
            right[(r, i)] += add;
        }
        diagonalize_from(&mut a, &mut left, &mut right, i);
    }

    // Normalise signs.
    for i in 0..k {
        if a[(i, i)].is_negative() {
            a.negate_row(i);
            left.negate_row(i);
        }
    }

    let diag = (0..k).map(|i| a[(i, i)].clone()).collect();
    SnfResult { diag, left, right }
}

/// Clears the block below and right of position `start`, mirroring all row
/// operations in `left` and all column operations in `right`.
fn diagonalize_from(a: &mut IntMatrix, left: &mut IntMatrix, right: &mut IntMatrix, start: usize) {
    let (rows, cols) = (a.rows, a.cols);
    let k = rows.min(cols);
    let mut t = start;
    while t < k {
        // Pivot on the smallest nonzero absolute entry to bound growth.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    Some((pi, pj)) if a[(pi, pj)].abs() <= a[(i, j)].abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = div_nearest(&a[(i, t)], &a[(t, t)]);
                a.row_sub(i, t, &q);
                left.row_sub(i, t, &q);
                if !a[(i, t)].is_zero() {
                    // Remainder is strictly smaller; promote it to pivot.
                    a.swap_rows(t, i);
                    left.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = div_nearest(&a[(t, j)], &a[(t, t)]);
                a.col_sub(j, t, &q);
                right.col_sub(j, t, &q);
                if !a[(t, j)].is_zero() {
                    a.swap_cols(t, j);
                    right.swap_cols(t, j);
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        t += 1;
    }
}

/// Quotient rounding to nearest (ties toward zero), keeping remainders small.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) != (b.is_negative()) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// Some integer solution `x` of `a x = b`, or `None` when unsolvable over Z.
pub fn solve_integer_linear(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.len() != a.rows {
        return None;
    }
    let snf = smith_normal_form(a);
    let ub = snf.left.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for i in 0..a.rows {
        let d = snf.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ub[i].div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.right.mul_vec(&y))
}

/// Some rational solution `x` of `a x = b`, or `None` when `b` is not in the
/// column span of `a` over Q.
pub fn solve_rational_linear(a: &IntMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    if b.len() != a.rows {
        return None;
    }
    let snf = smith_normal_form(a);
    let ub: Vec<Rational> = (0..a.rows)
        .map(|i| {
            (0..a.rows)
                .map(|j| Rational::from(snf.left[(i, j)].clone()) * &b[j])
                .sum()
        })
        .collect();
    let mut y = vec![Rational::zero(); a.cols];
    for i in 0..a.rows {
        let d = snf.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            y[i] = &ub[i] / Rational::from(d);
        }
    }
    Some(
        (0..a.cols)
            .map(|i| {
                (0..a.cols)
                    .map(|j| Rational::from(snf.right[(i, j)].clone()) * &y[j])
                    .sum()
            })
            .collect(),
    )
}

/// Dense matrix over the two-element field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        F2Matrix {
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        F2Matrix {
            rows: r,
            cols: c,
            bits: rows
                .iter()
                .flat_map(|row| row.iter().map(|&x| x % 2 == 1))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.cols + j] = v;
    }
}

/// Rank over F2 by Gaussian elimination.
pub fn f2_rank(m: &F2Matrix) -> usize {
    let mut a = m.clone();
    let mut rank = 0;
    for j in 0..a.cols {
        if rank == a.rows {
            break;
        }
        let Some(p) = (rank..a.rows).find(|&i| a.get(i, j)) else {
            continue;
        };
        for c in 0..a.cols {
            let tmp = a.get(rank, c);
            a.set(rank, c, a.get(p, c));
            a.set(p, c, tmp);
        }
        for i in 0..a.rows {
            if i != rank && a.get(i, j) {
                for c in 0..a.cols {
                    let v = a.get(i, c) ^ a.get(rank, c);
                    a.set(i, c, v);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn f2_is_isomorphism(m: &F2Matrix) -> bool {
    m.rows == m.cols && f2_rank(m) == m.rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    /// Cofactor-expansion determinant, kept independent of Bareiss.
    fn det_cofactor(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if m[(0, j)].is_zero() {
                continue;
            }
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let sub = det_cofactor(&m.submatrix(&rows, &cols));
            let term = &m[(0, j)] * sub;
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn check_snf(m: &IntMatrix) -> SnfResult {
        let snf = smith_normal_form(m);
        let lhs = snf.left.mul(m).mul(&snf.right);
        assert_eq!(lhs, snf.diag_embedding(m.rows(), m.cols()), "L*M*R != D");
        assert!(is_unimodular(&snf.left).unwrap(), "left not unimodular");
        assert!(is_unimodular(&snf.right).unwrap(), "right not unimodular");
        for w in snf.diag.windows(2) {
            if !w[0].is_zero() {
                assert!(
                    w[1].is_zero() || w[1].is_multiple_of(&w[0]),
                    "divisibility broken: {:?}",
                    snf.diag
                );
            } else {
                assert!(w[1].is_zero());
            }
        }
        snf
    }

    #[test]
    fn snf_of_two_by_one_examples() {
        let snf = check_snf(&mat(&[vec![2]]));
        assert_eq!(snf.diag, vec![BigInt::from(2)]);

        let snf = check_snf(&IntMatrix::identity(3));
        assert_eq!(snf.diag, vec![BigInt::one(); 3]);
    }

    #[test]
    fn snf_divisibility_repair() {
        let snf = check_snf(&mat(&[vec![6, 0], vec![0, 4]]));
        assert_eq!(snf.diag, vec![BigInt::from(2), BigInt::from(12)]);

        let snf = check_snf(&mat(&[vec![4, 0, 0], vec![0, 3, 0], vec![0, 0, 10]]));
        assert_eq!(
            snf.diag,
            vec![BigInt::one(), BigInt::from(2), BigInt::from(60)]
        );
    }

    #[test]
    fn snf_rectangular() {
        let snf = check_snf(&mat(&[vec![2, 4, 4]]));
        assert_eq!(snf.diag, vec![BigInt::from(2)]);
        let snf = check_snf(&mat(&[vec![0, 0], vec![0, 0], vec![0, 0]]));
        assert_eq!(snf.diag, vec![BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&IntMatrix::identity(4)).unwrap(), BigInt::one());
        assert_eq!(
            determinant(&mat(&[vec![4, 1], vec![-1, -1]])).unwrap(),
            BigInt::from(-3)
        );
        assert!(determinant(&mat(&[vec![1, 2, 3]])).is_err());
    }

    #[test]
    fn unimodularity_by_cofactor_oracle() {
        // Boundary-coefficient matrix with v = (1, 1), diag(3, 4).
        let n = mat(&[vec![-1, -1, -1], vec![1, 3, 0], vec![1, 0, 4]]);
        let oracle = det_cofactor(&n);
        assert_eq!(oracle, BigInt::from(-5));
        assert_eq!(determinant(&n).unwrap(), oracle);
        assert!(!is_unimodular(&n).unwrap());

        let m = mat(&[
            vec![1, 0, 0, 4],
            vec![0, 1, 0, 3],
            vec![0, 0, 1, 2],
            vec![0, 0, 0, 1],
        ]);
        assert!(is_unimodular(&m).unwrap());
        assert!(!is_unimodular(&mat(&[vec![2]])).unwrap());
    }

    #[test]
    fn negative_definite_small_cases() {
        assert!(is_negative_definite(&mat(&[vec![-2, 1], vec![1, -2]])).unwrap());
        assert!(is_negative_definite(&mat(&[vec![-1]])).unwrap());
        assert!(!is_negative_definite(&mat(&[vec![0]])).unwrap());
        assert!(!is_negative_definite(&mat(&[vec![-2, 2], vec![2, -2]])).unwrap());
        assert!(is_negative_definite(&IntMatrix::zero(0, 0)).unwrap());
        assert!(!is_negative_definite(&mat(&[vec![-2, 1], vec![1, 0]])).unwrap());
        assert!(is_negative_definite(&mat(&[vec![-2, 3], vec![1, -2]])).is_err());
    }

    #[test]
    fn f2_rank_and_iso() {
        assert_eq!(f2_rank(&mat(&[vec![2]]).reduction_mod2()), 0);
        assert!(!f2_is_isomorphism(&mat(&[vec![2]]).reduction_mod2()));
        assert!(f2_is_isomorphism(&F2Matrix::identity(5)));
        let m = mat(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        // Rows sum to zero mod 2.
        assert_eq!(f2_rank(&m.reduction_mod2()), 2);
    }

    #[test]
    fn integer_solve() {
        let id = IntMatrix::identity(3);
        let b = vec![BigInt::from(5), BigInt::from(-7), BigInt::zero()];
        assert_eq!(solve_integer_linear(&id, &b).unwrap(), b);

        assert_eq!(
            solve_integer_linear(&mat(&[vec![2]]), &[BigInt::from(3)]),
            None
        );
        assert_eq!(
            solve_integer_linear(&mat(&[vec![2]]), &[BigInt::from(4)]).unwrap(),
            vec![BigInt::from(2)]
        );

        // Underdetermined, solvable.
        let a = mat(&[vec![2, 3]]);
        let x = solve_integer_linear(&a, &[BigInt::from(1)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![BigInt::from(1)]);
    }

    #[test]
    fn rational_solve() {
        let a = mat(&[vec![2, 0], vec![0, 3]]);
        let b = vec![
            Rational::from(BigInt::one()),
            Rational::from(BigInt::from(2)),
        ];
        let x = solve_rational_linear(&a, &b).unwrap();
        assert_eq!(x[0], Rational::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(x[1], Rational::new(BigInt::from(2), BigInt::from(3)));

        // Inconsistent system.
        let a = mat(&[vec![1], vec![1]]);
        let b = vec![
            Rational::from(BigInt::one()),
            Rational::from(BigInt::from(2)),
        ];
        assert!(solve_rational_linear(&a, &b).is_none());
    }
}
