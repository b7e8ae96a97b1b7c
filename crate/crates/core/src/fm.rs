//! Fourier–Motzkin elimination for systems of strict linear inequalities.

use std::collections::BTreeSet;

use crate::rational::gcd_i128;

/// One strict inequality `coeffs · c + constant > 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Strict {
    pub coeffs: Vec<i128>,
    pub constant: i128,
}

impl Strict {
    pub fn new(coeffs: Vec<i128>, constant: i128) -> Self {
        Strict { coeffs, constant }.normalised()
    }

    fn normalised(mut self) -> Self {
        let g = self.coeffs.iter().fold(self.constant.abs(), |g, &a| gcd_i128(g, a));
        if g > 1 {
            self.coeffs.iter_mut().for_each(|a| *a /= g);
            self.constant /= g;
        }
        self
    }
}

/// Whether some real vector satisfies every inequality.
pub fn strictly_feasible(constraints: &[Strict]) -> bool {
    let mut set: BTreeSet<Strict> = BTreeSet::new();
    for c in constraints {
        if c.coeffs.iter().all(|&a| a == 0) {
            if c.constant <= 0 {
                return false;
            }
        } else {
            set.insert(c.clone().normalised());
        }
    }
    let dim = constraints.first().map_or(0, |c| c.coeffs.len());
    for k in 0..dim {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in set {
            match c.coeffs[k].signum() {
                1 => pos.push(c),
                -1 => neg.push(c),
                _ => rest.push(c),
            }
        }
        set = BTreeSet::new();
        for p in &pos {
            for q in &neg {
                let (a, b) = (-q.coeffs[k], p.coeffs[k]);
                let coeffs: Vec<i128> =
                    p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| a * x + b * y).collect();
                let constant = a * p.constant + b * q.constant;
                if coeffs.iter().all(|&v| v == 0) {
                    if constant <= 0 {
                        return false;
                    }
                } else {
                    set.insert(Strict::new(coeffs, constant));
                }
            }
        }
        set.extend(rest);
    }
    true
}
