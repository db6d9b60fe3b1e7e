//! Integer matrices and Smith normal form, used to push group quotients
//! through a single canonical computation.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Count;
use crate::error::{Error, Result};

/// Rectangular matrix of exact integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidGroup(
                "matrix rows have unequal lengths".into(),
            ));
        }
        Ok(IntegerMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let converted = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::from_rows(converted).expect("literal rows are rectangular")
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = BigInt::from(v);
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

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_dst += factor * row_src
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let term = factor * &self[(src, j)];
            self[(dst, j)] += term;
        }
    }

    /// col_dst += factor * col_src
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let term = factor * &self[(i, src)];
            self[(i, dst)] += term;
        }
    }

    fn negate_row(&mut self, row: usize) {
        for j in 0..self.cols {
            let v = -self[(row, j)].clone();
            self[(row, j)] = v;
        }
    }

    /// Determinant magnitude by fraction-free (Bareiss) elimination.
    /// Square matrices only; the empty matrix has determinant 1.
    pub fn determinant_abs(&self) -> BigUint {
        assert!(self.is_square(), "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigUint::one();
        }
        let mut m = self.clone();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => m.swap_rows(k, i), // sign flip, magnitude unchanged
                    None => return BigUint::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division is exact");
                    m[(i, j)] = q;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        m[(n - 1, n - 1)].magnitude().clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form result: the diagonal matrix plus what a caller
/// usually wants from it.
#[derive(Debug, Clone)]
pub struct SnfOutcome {
    pub diagonal: IntegerMatrix,
    /// Nonzero diagonal entries, ascending divisibility: d1 | d2 | ...
    pub elementary_divisors: Vec<Count>,
    pub rank: usize,
    pub pivot_steps: u64,
}

/// Reduces a matrix to Smith normal form by elementary integer row and
/// column operations, picking the smallest nonzero entry in magnitude as
/// the pivot each round. On square inputs the product of the diagonal is
/// checked against an independently computed determinant magnitude.
pub fn smith_normal_form(m: &IntegerMatrix) -> SnfOutcome {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let steps = diagonalize(&mut a);

    let mut divisors = Vec::new();
    for k in 0..rows.min(cols) {
        if a[(k, k)].is_negative() {
            let v = -a[(k, k)].clone();
            a[(k, k)] = v;
        }
        if !a[(k, k)].is_zero() {
            divisors.push(a[(k, k)].magnitude().clone());
        }
    }
    for pair in divisors.windows(2) {
        debug_assert!((&pair[1] % &pair[0]).is_zero(), "divisibility chain");
    }

    if m.is_square() {
        let product: BigUint = divisors.iter().product();
        let expected = if divisors.len() == m.rows {
            product.clone()
        } else {
            BigUint::zero()
        };
        assert_eq!(
            expected,
            m.determinant_abs(),
            "Smith normal form changed the determinant magnitude"
        );
        let _ = product;
    }

    SnfOutcome {
        rank: divisors.len(),
        elementary_divisors: divisors,
        diagonal: a,
        pivot_steps: steps,
    }
}

fn diagonalize(a: &mut IntegerMatrix) -> u64 {
    let (rows, cols) = (a.rows, a.cols);
    let mut steps = 0u64;
    for k in 0..rows.min(cols) {
        loop {
            steps += 1;
            // smallest nonzero magnitude in the trailing submatrix
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    match pivot {
                        Some((pi, pj)) if a[(pi, pj)].magnitude() <= a[(i, j)].magnitude() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return steps;
            };
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            if a[(k, k)].is_negative() {
                a.negate_row(k);
            }

            let mut clean = true;
            for i in k + 1..rows {
                if !a[(i, k)].is_zero() {
                    let q = rounded_quotient(&a[(i, k)], &a[(k, k)]);
                    a.add_row(i, k, &-q);
                    if !a[(i, k)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in k + 1..cols {
                if !a[(k, j)].is_zero() {
                    let q = rounded_quotient(&a[(k, j)], &a[(k, k)]);
                    a.add_col(j, k, &-q);
                    if !a[(k, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }

            // every remaining entry must be divisible by the pivot; if one
            // is not, fold its row into row k and reduce again
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&a[(i, j)] % &a[(k, k)]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => a.add_row(k, i, &BigInt::one()),
                None => break,
            }
        }
    }
    steps
}

/// Quotient rounded to nearest, so the remainder magnitude is at most
/// half the divisor; keeps pivot shrinking fast.
fn rounded_quotient(num: &BigInt, den: &BigInt) -> BigInt {
    let (mut q, r) = num.div_rem(den);
    let double_r: BigUint = r.magnitude() << 1;
    if double_r > *den.magnitude() {
        if (num.is_negative()) != (den.is_negative()) {
            q -= 1;
        } else {
            q += 1;
        }
    }
    q
}
