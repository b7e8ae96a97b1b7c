//! Exact linear algebra: fraction-free (Bareiss) elimination over the
//! integers with rational back-substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    RankDeficient { rank: usize, unknowns: usize },
    Inconsistent,
}

/// Scale a rational row to integers by the lcm of its denominators.
fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    row.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect()
}

/// Row echelon form by Bareiss elimination; returns the pivot columns.
/// Only the first `cols` columns are used as pivots.
fn bareiss(m: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for k in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][k].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in k + 1..width {
                let v = (&m[r][k] * &m[i][j] - &m[i][k] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[r][k].clone();
        pivots.push(k);
        r += 1;
    }
    pivots
}

/// Rank of a rational matrix.
pub fn rank(a: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| integer_row(r)).collect();
    let cols = m.first().map_or(0, Vec::len);
    bareiss(&mut m, cols).len()
}

/// Solve `A X = B` for several right-hand sides at once (columns of `B`).
/// Requires full column rank and a consistent system.
pub fn solve_many(
    a: &[Vec<BigRational>],
    b: &[Vec<BigRational>],
) -> Result<Vec<Vec<BigRational>>, SolveError> {
    let unknowns = a.first().map_or(0, Vec::len);
    let nrhs = b.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(ar, br)| integer_row(&[ar.as_slice(), br.as_slice()].concat()))
        .collect();
    let pivots = bareiss(&mut m, unknowns);
    if pivots.len() < unknowns {
        return Err(SolveError::RankDeficient { rank: pivots.len(), unknowns });
    }
    if m[unknowns..].iter().any(|row| row[unknowns..].iter().any(|v| !v.is_zero())) {
        return Err(SolveError::Inconsistent);
    }
    let mut sol = vec![vec![BigRational::zero(); nrhs]; unknowns];
    for i in (0..unknowns).rev() {
        for c in 0..nrhs {
            let mut acc = BigRational::from_integer(m[i][unknowns + c].clone());
            for j in i + 1..unknowns {
                if !m[i][j].is_zero() {
                    acc -= BigRational::from_integer(m[i][j].clone()) * &sol[j][c];
                }
            }
            sol[i][c] = acc / BigRational::from_integer(m[i][i].clone());
        }
    }
    Ok(sol)
}

/// Solve `A x = b`.
pub fn solve_exact(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Vec<BigRational>, SolveError> {
    let cols: Vec<Vec<BigRational>> = b.iter().map(|v| vec![v.clone()]).collect();
    Ok(solve_many(a, &cols)?.into_iter().map(|mut r| r.remove(0)).collect())
}

/// Inverse of a square matrix.
pub fn inverse(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let id: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    solve_many(a, &id).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn solves_small_system() {
        let a = m(&[&[2, 1], &[1, 3], &[3, 4]]);
        let b = vec![int(5), int(10), int(15)];
        assert_eq!(solve_exact(&a, &b).unwrap(), vec![int(1), int(3)]);
    }

    #[test]
    fn rational_entries() {
        let a = vec![vec![ratio(1, 2), int(0)], vec![int(0), ratio(1, 3)]];
        let b = vec![int(1), int(1)];
        assert_eq!(solve_exact(&a, &b).unwrap(), vec![int(2), int(3)]);
    }

    #[test]
    fn detects_rank_and_inconsistency() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&a), 1);
        assert!(matches!(
            solve_exact(&a, &[int(1), int(2)]),
            Err(SolveError::RankDeficient { rank: 1, unknowns: 2 })
        ));
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(solve_exact(&a, &[int(1), int(1), int(3)]), Err(SolveError::Inconsistent));
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[1, 1, 1], &[0, 3, 1]]);
        let inv = inverse(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v: BigRational = (0..3).map(|k| &a[i][k] * &inv[k][j]).sum();
                assert_eq!(v, int((i == j) as i64));
            }
        }
    }
}
