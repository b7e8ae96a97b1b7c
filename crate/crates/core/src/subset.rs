use std::fmt;

use serde::{Deserialize, Serialize};

/// A set of end labels, stored as a bitmask (bit `i` is label `i + 1`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EndSubset(pub u32);

impl EndSubset {
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut bits = 0u32;
        for &l in labels {
            assert!(l >= 1 && l <= 32, "end label {l} out of range");
            bits |= 1 << (l - 1);
        }
        EndSubset(bits)
    }

    pub fn full(n: usize) -> Self {
        EndSubset(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn contains(self, label: usize) -> bool {
        label >= 1 && self.0 & (1 << (label - 1)) != 0
    }

    pub fn labels(self) -> Vec<usize> {
        (0..32).filter(|i| self.0 & (1 << i) != 0).map(|i| i + 1).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, n: usize) -> Self {
        EndSubset(!self.0 & Self::full(n).0)
    }

    /// Representative of `{self, complement}` that contains label 1.
    pub fn canonical(self, n: usize) -> Self {
        if self.contains(1) {
            self
        } else {
            self.complement(n)
        }
    }

    /// `Σ_{i∈I} x_i`, where `x` is indexed by label − 1.
    pub fn sum(self, x: &[i64]) -> i64 {
        x.iter()
            .enumerate()
            .filter(|(i, _)| self.0 & (1 << i) != 0)
            .map(|(_, v)| *v)
            .sum()
    }

    pub fn is_proper(self, n: usize) -> bool {
        !self.is_empty() && self != Self::full(n)
    }

    /// Parse a comma-separated list of 1-based labels.
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut labels = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let l: usize = part.parse().map_err(|_| format!("bad end label '{part}'"))?;
            if l == 0 || l > 32 {
                return Err(format!("end label {l} out of range"));
            }
            labels.push(l);
        }
        if labels.is_empty() {
            return Err("empty wall subset".into());
        }
        Ok(Self::from_labels(&labels))
    }
}

impl fmt::Display for EndSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}
