//! Brute-force double Hurwitz numbers from transposition factorisations in
//! the symmetric group: an independent check on the graph engine.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::engine::validate_profile;
use crate::error::{Error, Result};
use crate::rational::factorial;

pub const MAX_DEGREE: i64 = 6;
pub const MAX_BRANCH_POINTS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationCount {
    pub d: usize,
    pub count: BigInt,
    pub transitive: bool,
}

/// Parts of `x` with the given sign, as positive integers, sorted descending.
fn parts(x: &[i64], positive: bool) -> Vec<usize> {
    let mut p: Vec<usize> = x
        .iter()
        .filter(|&&v| (v > 0) == positive)
        .map(|v| v.unsigned_abs() as usize)
        .collect();
    p.sort_unstable_by(|a, b| b.cmp(a));
    p
}

/// Permutation (as an image array) with the given cycle type.
fn representative(cycle_type: &[usize]) -> Vec<usize> {
    let d: usize = cycle_type.iter().sum();
    let mut p = vec![0; d];
    let mut start = 0;
    for &len in cycle_type {
        for i in 0..len {
            p[start + i] = start + (i + 1) % len;
        }
        start += len;
    }
    p
}

fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut t = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            v = p[v];
            len += 1;
        }
        t.push(len);
    }
    t.sort_unstable_by(|a, b| b.cmp(a));
    t
}

fn find(uf: &mut [usize], mut v: usize) -> usize {
    while uf[v] != v {
        uf[v] = uf[uf[v]];
        v = uf[v];
    }
    v
}

/// `∏_k m_k!` over the multiplicities of the parts.
fn multiplicity_factorials(p: &[usize]) -> BigInt {
    let mut out = BigInt::from(1);
    let mut i = 0;
    while i < p.len() {
        let j = (i..p.len()).find(|&j| p[j] != p[i]).unwrap_or(p.len());
        out *= factorial((j - i) as u64);
        i = j;
    }
    out
}

/// Size of the conjugacy class `d! / z_λ`.
fn class_size(cycle_type: &[usize]) -> BigInt {
    let d: usize = cycle_type.iter().sum();
    let z = cycle_type.iter().fold(multiplicity_factorials(cycle_type), |acc, &k| acc * k);
    factorial(d as u64) / z
}

fn all_permutations_of_type(cycle: &[usize]) -> Vec<Vec<usize>> {
    let d: usize = cycle.iter().sum();
    let mut out = Vec::new();
    crate::graph::for_each_permutation(d, |p| {
        if cycle_type(p) == cycle {
            out.push(p.to_vec());
        }
    });
    out
}

fn check_size(x: &[i64], r: usize) -> Result<()> {
    validate_profile(x)?;
    let d: i64 = x.iter().filter(|&&v| v > 0).sum();
    if d > MAX_DEGREE || r > MAX_BRANCH_POINTS {
        return Err(Error::SizeLimit(format!(
            "oracle limited to d ≤ {MAX_DEGREE}, r ≤ {MAX_BRANCH_POINTS} (got d = {d}, r = {r})"
        )));
    }
    Ok(())
}

/// Count tuples `(σ0, τ1..τr)` with `σ0` of type `x_0`, transpositions `τ_i`
/// and `τ_r⋯τ_1σ0` of type `|x_∞|`. With `fix_representative`, σ0 is fixed
/// and the count multiplied by the class size; otherwise every σ0 is tried.
pub fn count_factorizations(
    r: usize,
    x: &[i64],
    transitive: bool,
    fix_representative: bool,
) -> Result<FactorizationCount> {
    check_size(x, r)?;
    let zero = parts(x, true);
    let infinity = parts(x, false);
    let d: usize = zero.iter().sum();
    let transpositions: Vec<(usize, usize)> =
        (0..d).flat_map(|a| (a + 1..d).map(move |b| (a, b))).collect();
    let starts = if fix_representative {
        vec![representative(&zero)]
    } else {
        all_permutations_of_type(&zero)
    };
    let mut total = 0u64;
    for sigma in &starts {
        let mut seq = Vec::with_capacity(r);
        let mut p = sigma.clone();
        total += dfs(&mut p, &mut seq, r, &transpositions, &infinity, sigma, transitive);
    }
    let mut count = BigInt::from(total);
    if fix_representative {
        count *= class_size(&zero);
    }
    Ok(FactorizationCount { d, count, transitive })
}

fn dfs(
    p: &mut Vec<usize>,
    seq: &mut Vec<(usize, usize)>,
    remaining: usize,
    transpositions: &[(usize, usize)],
    target: &[usize],
    sigma0: &[usize],
    transitive: bool,
) -> u64 {
    if remaining == 0 {
        if cycle_type(p) != target {
            return 0;
        }
        if transitive {
            let mut uf: Vec<usize> = (0..p.len()).collect();
            for (i, &j) in sigma0.iter().enumerate() {
                let (a, b) = (find(&mut uf, i), find(&mut uf, j));
                uf[a] = b;
            }
            for &(i, j) in seq.iter() {
                let (a, b) = (find(&mut uf, i), find(&mut uf, j));
                uf[a] = b;
            }
            let root = find(&mut uf, 0);
            if (0..p.len()).any(|v| find(&mut uf, v) != root) {
                return 0;
            }
        }
        return 1;
    }
    let mut total = 0;
    for &(a, b) in transpositions {
        // left-multiply by (a b): swap the values a and b in the image array
        let ia = p.iter().position(|&v| v == a).unwrap();
        let ib = p.iter().position(|&v| v == b).unwrap();
        p[ia] = b;
        p[ib] = a;
        seq.push((a, b));
        total += dfs(p, seq, remaining - 1, transpositions, target, sigma0, transitive);
        seq.pop();
        p[ia] = a;
        p[ib] = b;
    }
    total
}

fn normalise(x: &[i64], count: &BigInt) -> BigRational {
    let zero = parts(x, true);
    let infinity = parts(x, false);
    let d: usize = zero.iter().sum();
    if count.is_zero() {
        return BigRational::zero();
    }
    let weight = multiplicity_factorials(&zero) * multiplicity_factorials(&infinity);
    BigRational::new(weight * count, factorial(d as u64))
}

/// Connected `H^r(x)` by counting transitive factorisations.
pub fn oracle_connected(r: usize, x: &[i64]) -> Result<BigRational> {
    let c = count_factorizations(r, x, true, true)?;
    Ok(normalise(x, &c.count))
}

/// Possibly disconnected `H^{r•}(x)`: no transitivity filter.
pub fn oracle_disconnected(r: usize, x: &[i64]) -> Result<BigRational> {
    let c = count_factorizations(r, x, false, true)?;
    Ok(normalise(x, &c.count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn calibration_fixtures() {
        assert_eq!(oracle_connected(1, &[1, 1, -2]).unwrap(), int(1));
        assert_eq!(oracle_connected(0, &[2, -2]).unwrap(), ratio(1, 2));
        assert_eq!(oracle_connected(2, &[2, -2]).unwrap(), ratio(1, 2));
        assert_eq!(oracle_disconnected(0, &[1, 1, -1, -1]).unwrap(), int(2));
        assert_eq!(oracle_disconnected(0, &[2, -2]).unwrap(), ratio(1, 2));
    }

    #[test]
    fn size_guard() {
        assert!(matches!(oracle_connected(2, &[7, -7]), Err(Error::SizeLimit(_))));
        assert!(matches!(oracle_connected(7, &[2, -2]), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn class_sizes() {
        assert_eq!(class_size(&[2, 1]), BigInt::from(3));
        assert_eq!(class_size(&[1, 1, 1]), BigInt::from(1));
        assert_eq!(class_size(&[3]), BigInt::from(2));
        assert_eq!(cycle_type(&representative(&[3, 2, 1])), vec![3, 2, 1]);
    }

    #[test]
    fn representative_matches_full_enumeration() {
        for x in [[2i64, 1, -3], [1, 1, -2], [3, -2, -1]] {
            for r in 0..4 {
                let a = count_factorizations(r, &x, true, true).unwrap();
                let b = count_factorizations(r, &x, true, false).unwrap();
                assert_eq!(a.count, b.count, "{x:?} r={r}");
            }
        }
    }
}
