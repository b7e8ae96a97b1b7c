//! The resonance arrangement `Σ_{i∈I} x_i = 0` and its chambers.

use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::EndSubset;

/// Canonical resonance subsets (those containing label 1, excluding the
/// full set), ordered by bitmask.
pub fn resonance_subsets(n: usize) -> Vec<EndSubset> {
    assert!((2..=20).contains(&n), "n out of range");
    (1u32..(1 << n) - 1).filter(|m| m & 1 == 1).map(EndSubset).collect()
}

/// A chamber of the resonance arrangement, recorded by the signs of the
/// canonical resonances. Equality ignores the witness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HChamber {
    pub n: usize,
    /// `±1`, aligned with [`resonance_subsets`].
    pub signs: Vec<i8>,
    pub witness: Vec<i64>,
}

impl PartialEq for HChamber {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.signs == other.signs
    }
}

impl Eq for HChamber {}

impl Hash for HChamber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.signs.hash(state);
    }
}

impl HChamber {
    /// Sign of `Σ_{i∈I} x_i` on this chamber, for any proper subset.
    pub fn sign_of(&self, subset: EndSubset) -> i8 {
        let canon = subset.canonical(self.n);
        let idx = resonance_subsets(self.n)
            .iter()
            .position(|&s| s == canon)
            .expect("proper subset");
        if canon == subset {
            self.signs[idx]
        } else {
            -self.signs[idx]
        }
    }

    /// The chamber `−c`.
    pub fn negated(&self) -> HChamber {
        HChamber {
            n: self.n,
            signs: self.signs.iter().map(|s| -s).collect(),
            witness: self.witness.iter().map(|v| -v).collect(),
        }
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        matches!(classify(x), Ok(c) if c == *self)
    }
}

fn check_balanced(x: &[i64]) -> Result<()> {
    if x.len() < 2 || x.len() > 20 {
        return Err(Error::invalid("need 2 ≤ n ≤ 20 entries"));
    }
    if x.iter().sum::<i64>() != 0 {
        return Err(Error::invalid("entries must sum to zero"));
    }
    Ok(())
}

/// Chamber of `x`, or `OnWall(I)` for the first vanishing resonance.
pub fn classify(x: &[i64]) -> Result<HChamber> {
    check_balanced(x)?;
    let n = x.len();
    let mut signs = Vec::with_capacity((1 << (n - 1)) - 1);
    for s in resonance_subsets(n) {
        match s.sum(x).signum() {
            0 => return Err(Error::OnWall(s)),
            v => signs.push(v as i8),
        }
    }
    Ok(HChamber { n, signs, witness: x.to_vec() })
}

/// Whether some resonance vanishes at `x`.
pub fn on_resonance(x: &[i64]) -> bool {
    let n = x.len();
    (1u32..(1 << n) - 1).any(|m| EndSubset(m).sum(x) == 0)
}

/// Points `(x_1, …, x_{n−1}, −Σ)` with entries in `[−b, b]`, in a fixed order.
fn for_each_point(n: usize, b: i64, mut f: impl FnMut(&[i64]) -> bool) {
    let mut x = vec![-b; n];
    loop {
        x[n - 1] = -x[..n - 1].iter().sum::<i64>();
        if !f(&x) {
            return;
        }
        let mut k = 0;
        loop {
            if k == n - 1 {
                return;
            }
            if x[k] < b {
                x[k] += 1;
                break;
            }
            x[k] = -b;
            k += 1;
        }
    }
}

/// All chambers, found by scanning integer boxes of growing size until the
/// count has been stable for three consecutive sizes. Witnesses have the
/// smallest possible sup-norm among scanned points.
pub fn enumerate_chambers(n: usize) -> Vec<HChamber> {
    assert!((2..=6).contains(&n), "chamber enumeration is limited to n ≤ 6");
    let mut found: BTreeMap<Vec<i8>, Vec<i64>> = BTreeMap::new();
    let mut stable = 0;
    let mut b = 1;
    while stable < 3 {
        let before = found.len();
        for_each_point(n, b, |x| {
            if x.iter().map(|v| v.abs()).max() == Some(b) || b == 1 {
                if let Ok(c) = classify(x) {
                    found.entry(c.signs).or_insert_with(|| x.to_vec());
                }
            }
            true
        });
        stable = if found.len() == before { stable + 1 } else { 0 };
        b += 1;
    }
    found
        .into_iter()
        .map(|(signs, witness)| HChamber { n, signs, witness })
        .collect()
}

/// `k` distinct integer points of chamber `c` with sup-norm ≤ `bound`,
/// drawn around positive multiples of the witness.
pub fn sample_chamber(c: &HChamber, k: usize, bound: i64, seed: u64) -> Result<Vec<Vec<i64>>> {
    sample_chamber_excluding(c, k, bound, seed, &[])
}

pub fn sample_chamber_excluding(
    c: &HChamber,
    k: usize,
    bound: i64,
    seed: u64,
    exclude: &[Vec<i64>],
) -> Result<Vec<Vec<i64>>> {
    let n = c.n;
    let wmax = c.witness.iter().map(|v| v.abs()).max().unwrap_or(1).max(1);
    let tmax = (bound / wmax).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<i64>> = Vec::with_capacity(k);
    let attempts = 2000 * (k + 1);
    for _ in 0..attempts {
        if out.len() == k {
            break;
        }
        let t = rng.gen_range(1..=tmax);
        let spread = (t * wmax / 2).max(1);
        let mut x: Vec<i64> = c.witness.iter().map(|v| v * t).collect();
        for v in x.iter_mut().take(n - 1) {
            *v += rng.gen_range(-spread..=spread);
        }
        x[n - 1] = -x[..n - 1].iter().sum::<i64>();
        if x.iter().any(|v| v.abs() > bound) {
            continue;
        }
        if c.contains(&x) && !out.contains(&x) && !exclude.contains(&x) {
            out.push(x);
        }
    }
    if out.len() < k {
        return Err(Error::SamplingFailed { wanted: k, bound });
    }
    Ok(out)
}

/// Points `(x⁻, x⁺)` on the two sides of `W_I`, with `Σ_I x⁻ = −1`,
/// `Σ_I x⁺ = +1` and every other resonance of magnitude ≥ 1 and equal sign on
/// both. Deterministic: built from the first suitable point `y` on the wall
/// (in a fixed scan order) as `y ∓ (e_i − e_j)`, `i ∈ I`, `j ∉ I`.
pub fn adjacent_pair(wall: EndSubset, n: usize) -> Result<(Vec<i64>, Vec<i64>)> {
    if n < 2 || !wall.is_proper(n) || wall.0 >> n != 0 {
        return Err(Error::invalid(format!("{wall} is not a proper subset of 1..={n}")));
    }
    let canon = wall.canonical(n);
    let others: Vec<EndSubset> = resonance_subsets(n).into_iter().filter(|&s| s != canon).collect();
    let i = wall.labels()[0];
    let j = wall.complement(n).labels()[0];
    for b in 1..=64 {
        let mut result = None;
        for_each_point(n, b, |y| {
            if wall.sum(y) == 0 && others.iter().all(|s| s.sum(y).abs() >= 2) {
                let mut minus = y.to_vec();
                let mut plus = y.to_vec();
                minus[i - 1] -= 1;
                minus[j - 1] += 1;
                plus[i - 1] += 1;
                plus[j - 1] -= 1;
                result = Some((minus, plus));
                return false;
            }
            true
        });
        if let Some(pair) = result {
            return Ok(pair);
        }
    }
    Err(Error::SamplingFailed { wanted: 1, bound: 64 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_lists() {
        assert_eq!(resonance_subsets(2), vec![EndSubset::from_labels(&[1])]);
        assert_eq!(
            resonance_subsets(3),
            vec![
                EndSubset::from_labels(&[1]),
                EndSubset::from_labels(&[1, 2]),
                EndSubset::from_labels(&[1, 3])
            ]
        );
        assert_eq!(resonance_subsets(4).len(), 7);
    }

    #[test]
    fn classify_examples() {
        let c = classify(&[3, 1, -2, -2]).unwrap();
        assert_eq!(c.sign_of(EndSubset::from_labels(&[1, 3])), 1);
        assert_eq!(c.sign_of(EndSubset::from_labels(&[1])), 1);
        assert_eq!(c.sign_of(EndSubset::from_labels(&[1, 2])), 1);
        assert_eq!(c.sign_of(EndSubset::from_labels(&[2, 4])), -1);
        assert_eq!(
            classify(&[1, 1, -1, -1]),
            Err(Error::OnWall(EndSubset::from_labels(&[1, 3])))
        );
        assert_eq!(classify(&[-3, -1, 2, 2]).unwrap(), c.negated());
        assert!(c.contains(&[6, 2, -4, -4]));
    }

    #[test]
    fn chamber_counts() {
        assert_eq!(enumerate_chambers(2).len(), 2);
        assert_eq!(enumerate_chambers(3).len(), 6);
        assert_eq!(enumerate_chambers(4).len(), 32);
    }

    #[test]
    fn adjacent_pairs_straddle_the_wall() {
        let (m, p) = adjacent_pair(EndSubset::from_labels(&[1]), 2).unwrap();
        assert_eq!((m.clone(), p.clone()), (vec![-1, 1], vec![1, -1]));
        for n in 3..=5 {
            for s in resonance_subsets(n) {
                for wall in [s, s.complement(n)] {
                    let (m, p) = adjacent_pair(wall, n).unwrap();
                    assert_eq!(wall.sum(&m), -1);
                    assert_eq!(wall.sum(&p), 1);
                    let (cm, cp) = (classify(&m).unwrap(), classify(&p).unwrap());
                    let differing: Vec<_> = resonance_subsets(n)
                        .into_iter()
                        .filter(|&t| cm.sign_of(t) != cp.sign_of(t))
                        .collect();
                    assert_eq!(differing, vec![wall.canonical(n)]);
                }
            }
        }
    }

    #[test]
    fn sampling_round_trip() {
        let c = classify(&[3, 1, -2, -2]).unwrap();
        let pts = sample_chamber(&c, 20, 40, 7).unwrap();
        assert_eq!(pts.len(), 20);
        assert!(pts.iter().all(|p| c.contains(p)));
        assert_eq!(pts, sample_chamber(&c, 20, 40, 7).unwrap());
    }
}
