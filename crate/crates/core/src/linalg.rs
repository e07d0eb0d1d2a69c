//! Fraction-free integer linear algebra.
//!
//! Both routines run Bareiss elimination, so every intermediate value is an
//! integer (a minor of the input) and every division is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row-major square matrix of arbitrary-precision integers.
pub type Matrix = Vec<Vec<BigInt>>;

/// Runs Bareiss elimination in place on `rows` using the first `n` columns as
/// pivot columns. Returns the determinant of the leading `n x n` block, with
/// the sign of any row swaps applied. Trailing columns (an augmented
/// right-hand side) are transformed along with the rest.
fn bareiss(rows: &mut [Vec<BigInt>], n: usize) -> BigInt {
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        if rows[k][k].is_zero() {
            match (k + 1..n).find(|&r| !rows[r][k].is_zero()) {
                Some(r) => {
                    rows.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let width = rows[k].len();
        for i in k + 1..n {
            for j in k + 1..width {
                let v = &rows[k][k] * &rows[i][j] - &rows[i][k] * &rows[k][j];
                rows[i][j] = v / &prev;
            }
            rows[i][k] = BigInt::zero();
        }
        prev = rows[k][k].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

fn check_square(a: &[Vec<BigInt>]) -> Result<usize> {
    let n = a.len();
    for row in a {
        if row.len() != n {
            return Err(Error::LengthMismatch { expected: n, actual: row.len() });
        }
    }
    Ok(n)
}

/// Exact determinant of a square integer matrix.
pub fn determinant(a: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = check_square(a)?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    // triangular: product of the diagonal
    let upper = (0..n).all(|i| a[i][..i].iter().all(Zero::is_zero));
    if upper || (0..n).all(|i| a[i][i + 1..].iter().all(Zero::is_zero)) {
        return Ok((0..n).map(|i| &a[i][i]).product());
    }
    let mut work = a.to_vec();
    Ok(bareiss(&mut work, n))
}

/// Solves `a * x = b` over the integers.
///
/// Fails with [`Error::SingularSystem`] when `a` is singular and with
/// [`Error::NonIntegralSolution`] when the unique rational solution is not
/// integral. For a unimodular `a` the solution always exists.
pub fn solve(a: &[Vec<BigInt>], b: &[BigInt]) -> Result<Vec<BigInt>> {
    let n = check_square(a)?;
    if b.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: b.len() });
    }
    let mut work: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    if n > 0 && bareiss(&mut work, n).is_zero() {
        return Err(Error::SingularSystem);
    }
    let mut x = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let mut rhs = work[i][n].clone();
        for j in i + 1..n {
            rhs -= &work[i][j] * &x[j];
        }
        let (q, r) = rhs.div_rem(&work[i][i]);
        if !r.is_zero() {
            return Err(Error::NonIntegralSolution);
        }
        x[i] = q;
    }
    Ok(x)
}

/// `true` when `|det a| == 1`.
pub fn is_unimodular(a: &[Vec<BigInt>]) -> Result<bool> {
    Ok(determinant(a)?.abs().is_one())
}
