//! Connected and disconnected double Hurwitz numbers from graph sums.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use parking_lot::Mutex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flow::{degree, PreparedGraph};
use crate::graph::{enumerate_xgraphs, XGraph};
use crate::rational::factorial;

/// Checks `Σ x_i = 0`, `x_i ≠ 0` and `n ≥ 2`.
pub fn validate_profile(x: &[i64]) -> Result<()> {
    if x.len() < 2 {
        return Err(Error::invalid("a profile needs at least two entries"));
    }
    if x.contains(&0) {
        return Err(Error::invalid("profile entries must be nonzero"));
    }
    if x.iter().sum::<i64>() != 0 {
        return Err(Error::invalid("profile entries must sum to zero"));
    }
    if x.len() > 30 {
        return Err(Error::SizeLimit("more than 30 ends".into()));
    }
    Ok(())
}

/// Genus with `r = 2g − 2 + n` simple branch points, if it is an integer ≥ 0.
pub fn genus_for(r: usize, n: usize) -> Option<usize> {
    let v = r as i64 - n as i64 + 2;
    (v >= 0 && v % 2 == 0).then_some(v as usize / 2)
}

type Cell<T> = Arc<OnceLock<T>>;
type Memo<K, T> = Mutex<HashMap<K, Cell<T>>>;

fn memo_cell<K: std::hash::Hash + Eq, T>(memo: &Memo<K, T>, key: K) -> Cell<T> {
    memo.lock().entry(key).or_default().clone()
}

/// Memoising evaluator. Each key is computed at most once; concurrent
/// callers of the same key wait for the first computation.
#[derive(Default)]
pub struct HurwitzEngine {
    graphs: Memo<(usize, usize), std::result::Result<Arc<Vec<PreparedGraph>>, Error>>,
    connected: Memo<(usize, Vec<i64>), BigRational>,
    disconnected: Memo<(usize, Vec<i64>), BigRational>,
}

impl HurwitzEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static HurwitzEngine {
        static ENGINE: OnceLock<HurwitzEngine> = OnceLock::new();
        ENGINE.get_or_init(HurwitzEngine::new)
    }

    /// Enumerated graphs for `(g, n)`, prepared for evaluation.
    pub fn graphs(&self, g: usize, n: usize) -> Result<Arc<Vec<PreparedGraph>>> {
        memo_cell(&self.graphs, (g, n))
            .get_or_init(|| {
                let gs = enumerate_xgraphs(g, n)?;
                Ok(Arc::new(gs.into_iter().map(PreparedGraph::new).collect()))
            })
            .clone()
    }

    /// Per-graph contributions `S_Γ(x)` in enumeration order.
    pub fn graph_contributions(&self, g: usize, x: &[i64]) -> Result<Vec<(XGraph, BigRational)>> {
        validate_profile(x)?;
        let graphs = self.graphs(g, x.len())?;
        Ok(graphs
            .par_iter()
            .map(|p| (p.graph.clone(), p.contribution(x)))
            .collect())
    }

    /// `H_g(x)` without touching the value cache.
    pub fn hurwitz_uncached(&self, g: usize, x: &[i64]) -> Result<BigRational> {
        validate_profile(x)?;
        if (g, x.len()) == (0, 2) {
            return Err(Error::DegenerateCase { genus: 0, ends: 2 });
        }
        let graphs = self.graphs(g, x.len())?;
        Ok(graphs
            .par_iter()
            .map(|p| p.contribution(x))
            .reduce(BigRational::zero, |a, b| a + b))
    }

    /// `H_g(x)`, memoised by `(g, sorted x)`.
    pub fn hurwitz(&self, g: usize, x: &[i64]) -> Result<BigRational> {
        validate_profile(x)?;
        if (g, x.len()) == (0, 2) {
            return Err(Error::DegenerateCase { genus: 0, ends: 2 });
        }
        let mut key = x.to_vec();
        key.sort_unstable();
        let cell = memo_cell(&self.connected, (g, key.clone()));
        if let Some(v) = cell.get() {
            return Ok(v.clone());
        }
        // compute outside the cell so errors propagate; the cell keeps the first value
        let v = self.hurwitz_uncached(g, &key)?;
        Ok(cell.get_or_init(|| v).clone())
    }

    /// `H^r(x)` with `r` simple branch points; `H^0(d, −d) = 1/d`.
    pub fn hurwitz_r(&self, r: usize, x: &[i64]) -> Result<BigRational> {
        validate_profile(x)?;
        let Some(g) = genus_for(r, x.len()) else {
            return Ok(BigRational::zero());
        };
        if (g, x.len()) == (0, 2) {
            return Ok(BigRational::new(BigInt::one(), BigInt::from(degree(x))));
        }
        self.hurwitz(g, x)
    }

    /// Possibly disconnected `H^{r•}(x)`: sum over set partitions of the ends
    /// into balanced blocks, distributing branch points with multinomials.
    pub fn hurwitz_disconnected(&self, r: usize, x: &[i64]) -> Result<BigRational> {
        validate_profile(x)?;
        let mut key = x.to_vec();
        key.sort_unstable();
        let cell = memo_cell(&self.disconnected, (r, key.clone()));
        if let Some(v) = cell.get() {
            return Ok(v.clone());
        }
        let mut memo = HashMap::new();
        let full = (1u32 << key.len()) - 1;
        let series = self.partition_series(&key, r, full, &mut memo)?;
        let v = &series[r] * BigRational::from_integer(factorial(r as u64));
        Ok(cell.get_or_init(|| v).clone())
    }

    /// Exponential generating series (truncated at `z^r`) of products of
    /// connected numbers over balanced set partitions of `mask`.
    fn partition_series(
        &self,
        x: &[i64],
        r: usize,
        mask: u32,
        memo: &mut HashMap<u32, Vec<BigRational>>,
    ) -> Result<Vec<BigRational>> {
        if mask == 0 {
            let mut s = vec![BigRational::zero(); r + 1];
            s[0] = BigRational::one();
            return Ok(s);
        }
        if let Some(s) = memo.get(&mask) {
            return Ok(s.clone());
        }
        let first = mask.trailing_zeros();
        let rest = mask & !(1 << first);
        let mut total = vec![BigRational::zero(); r + 1];
        // blocks containing the first element
        let mut sub = rest;
        loop {
            let block = sub | 1 << first;
            let sum: i64 = (0..x.len()).filter(|i| block >> i & 1 == 1).map(|i| x[i]).sum();
            let size = block.count_ones() as usize;
            if sum == 0 && size >= 2 && size - 2 <= r {
                let values: Vec<i64> =
                    (0..x.len()).filter(|i| block >> i & 1 == 1).map(|i| x[i]).collect();
                let mut block_series = vec![BigRational::zero(); r + 1];
                for (t, slot) in block_series.iter_mut().enumerate().skip(size - 2).step_by(2) {
                    let h = self.hurwitz_r(t, &values)?;
                    *slot = h / BigRational::from_integer(factorial(t as u64));
                }
                if block_series.iter().any(|c| !c.is_zero()) {
                    let others = self.partition_series(x, r, mask & !block, memo)?;
                    for (i, a) in block_series.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        for (j, b) in others.iter().enumerate().take(r + 1 - i) {
                            if !b.is_zero() {
                                total[i + j] += a * b;
                            }
                        }
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        memo.insert(mask, total.clone());
        Ok(total)
    }
}

pub fn hurwitz(g: usize, x: &[i64]) -> Result<BigRational> {
    HurwitzEngine::global().hurwitz(g, x)
}

pub fn hurwitz_r(r: usize, x: &[i64]) -> Result<BigRational> {
    HurwitzEngine::global().hurwitz_r(r, x)
}

pub fn hurwitz_disconnected(r: usize, x: &[i64]) -> Result<BigRational> {
    HurwitzEngine::global().hurwitz_disconnected(r, x)
}
