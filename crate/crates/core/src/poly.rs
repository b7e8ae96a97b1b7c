//! Exact multivariate polynomials and chamber-polynomial interpolation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chambers::{sample_chamber_excluding, HChamber};
use crate::engine::HurwitzEngine;
use crate::error::{Error, Result};
use crate::linalg::{solve_exact, SolveError};
use crate::rational::fmt_ratio;

/// Polynomial with rational coefficients in `x1..x_nvars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

/// Graded order, largest first: total degree, then exponent vector.
fn graded_desc(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        let entry = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in graded order, highest degree first.
    pub fn terms(&self) -> Vec<(&Vec<u32>, &BigRational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| graded_desc(a.0, b.0));
        t
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| e.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.degrees().last().copied()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.degrees().first().copied()
    }

    /// Every monomial has total degree of the given parity.
    pub fn is_parity_pure(&self, parity: u32) -> bool {
        self.degrees().iter().all(|d| d % 2 == parity % 2)
    }

    /// Evaluate at an integer point; extra coordinates are ignored.
    pub fn eval(&self, x: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut m = BigInt::one();
            for (v, &k) in x.iter().zip(e) {
                m *= BigInt::from(*v).pow(k);
            }
            acc += c * BigRational::from_integer(m);
        }
        acc
    }

    /// `p(−x)`.
    pub fn negate_args(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| {
            let d: u32 = e.iter().sum();
            (e.clone(), if d % 2 == 1 { -c.clone() } else { c.clone() })
        });
        Polynomial::from_terms(self.nvars, terms)
    }

    pub fn serialize_terms(&self) -> Vec<SerializedTerm> {
        self.terms()
            .into_iter()
            .map(|(e, c)| SerializedTerm { exponents: e.clone(), coeff: fmt_ratio(c) })
            .collect()
    }

    pub fn from_serialized(nvars: usize, terms: &[SerializedTerm]) -> Option<Self> {
        let mut out = Vec::new();
        for t in terms {
            if t.exponents.len() != nvars {
                return None;
            }
            out.push((t.exponents.clone(), crate::rational::parse_ratio(&t.coeff)?));
        }
        Some(Polynomial::from_terms(nvars, out))
    }

    fn monomial_string(e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
            .collect();
        parts.join("*")
    }

    /// `(Σ integer·monomial)/D` with `D` the lcm of the denominators.
    pub fn display_over_common_denominator(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let l = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut s = String::new();
        for (i, (e, c)) in self.terms().into_iter().enumerate() {
            let k = (c * BigRational::from_integer(l.clone())).to_integer();
            let mono = Self::monomial_string(e);
            let mag = k.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            if i == 0 {
                s.push_str(if k.is_negative() { "-" } else { "" });
            } else {
                s.push_str(if k.is_negative() { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        if l.is_one() {
            s
        } else {
            format!("({s})/{l}")
        }
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().into_iter().enumerate() {
            let mono = Self::monomial_string(e);
            let (neg, mag) = (c.is_negative(), c.abs());
            let coeff = if mag.is_integer() { mag.numer().to_string() } else { fmt_ratio(&mag) };
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => coeff,
                (false, true) => mono,
                (false, false) => format!("{coeff}*{mono}"),
            };
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Exponent vectors in `nvars` variables of total degree ≤ `degree`,
/// optionally restricted to degrees `≡ degree (mod 2)`.
pub fn monomial_basis(nvars: usize, degree: u32, parity_only: bool) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, degree, &mut vec![0; nvars], &mut out);
    if parity_only {
        out.retain(|e| e.iter().sum::<u32>() % 2 == degree % 2);
    }
    out.sort_by(|a, b| graded_desc(a, b));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisMode {
    /// Only monomials whose degree has the parity of the top degree.
    Parity,
    /// All monomials up to the top degree.
    Full,
}

#[derive(Clone, Copy, Debug)]
pub struct InterpolationOptions {
    pub mode: BasisMode,
    pub held_out: usize,
    pub seed: u64,
}

impl Default for InterpolationOptions {
    fn default() -> Self {
        InterpolationOptions { mode: BasisMode::Parity, held_out: 10, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct ChamberPolynomial {
    pub genus: usize,
    pub chamber: HChamber,
    pub poly: Polynomial,
    pub seed: u64,
    pub fit_points: Vec<Vec<i64>>,
    pub held_out_points: Vec<Vec<i64>>,
}

impl ChamberPolynomial {
    pub fn n(&self) -> usize {
        self.chamber.n
    }

    pub fn expected_degree(&self) -> u32 {
        (4 * self.genus + self.n() - 3) as u32
    }
}

/// Fit a polynomial of degree ≤ `degree` in `x_1..x_{n−1}` to `f` on chamber
/// `c`, then check it on `held_out` further points.
pub fn interpolate_function(
    c: &HChamber,
    degree: u32,
    opts: InterpolationOptions,
    f: &(dyn Fn(&[i64]) -> Result<BigRational> + Sync),
) -> Result<(Polynomial, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let nvars = c.n - 1;
    let basis = monomial_basis(nvars, degree, opts.mode == BasisMode::Parity);
    let wanted = basis.len() + basis.len() / 2 + 4;
    let wmax = c.witness.iter().map(|v| v.abs()).max().unwrap_or(1).max(1);
    let mut bound = (4 * wmax).max(8);
    let mut last_err = None;
    for attempt in 0..6u64 {
        let seed = opts.seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9));
        let points = match sample_chamber_excluding(c, wanted + opts.held_out, bound, seed, &[]) {
            Ok(p) => p,
            Err(e @ Error::SamplingFailed { .. }) => {
                last_err = Some(e);
                bound *= 2;
                continue;
            }
            Err(e) => return Err(e),
        };
        let (fit, held) = points.split_at(wanted);
        let values: Vec<BigRational> = fit.par_iter().map(|x| f(x)).collect::<Result<_>>()?;
        let rows: Vec<Vec<BigRational>> = fit
            .iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|e| {
                        let m = x.iter().zip(e).fold(BigInt::one(), |a, (v, &k)| a * BigInt::from(*v).pow(k));
                        BigRational::from_integer(m)
                    })
                    .collect()
            })
            .collect();
        let coeffs = match solve_exact(&rows, &values) {
            Ok(c) => c,
            Err(SolveError::RankDeficient { rank, unknowns }) => {
                last_err = Some(Error::RankDeficient { rank, unknowns });
                bound += bound / 2;
                continue;
            }
            Err(SolveError::Inconsistent) => {
                return Err(Error::InterpolationMismatch(fit[0].clone()));
            }
        };
        let poly = Polynomial::from_terms(nvars, basis.iter().cloned().zip(coeffs));
        let held_values: Vec<BigRational> = held.par_iter().map(|x| f(x)).collect::<Result<_>>()?;
        for (x, v) in held.iter().zip(&held_values) {
            if poly.eval(x) != *v {
                return Err(Error::InterpolationMismatch(x.clone()));
            }
        }
        return Ok((poly, fit.to_vec(), held.to_vec()));
    }
    Err(last_err.unwrap_or(Error::SamplingFailed { wanted, bound }))
}

/// Chamber polynomial of `H_g` on `c` (default options: parity basis,
/// 10 held-out points, seed 0).
pub fn interpolate(g: usize, c: &HChamber) -> Result<ChamberPolynomial> {
    interpolate_with(g, c, InterpolationOptions::default())
}

pub fn interpolate_with(g: usize, c: &HChamber, opts: InterpolationOptions) -> Result<ChamberPolynomial> {
    if (g, c.n) == (0, 2) {
        return Err(Error::DegenerateCase { genus: 0, ends: 2 });
    }
    let engine = HurwitzEngine::global();
    let degree = (4 * g + c.n - 3) as u32;
    let f = |x: &[i64]| engine.hurwitz(g, x);
    let (poly, fit_points, held_out_points) = interpolate_function(c, degree, opts, &f)?;
    Ok(ChamberPolynomial {
        genus: g,
        chamber: c.clone(),
        poly,
        seed: opts.seed,
        fit_points,
        held_out_points,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeParityReport {
    pub degree: Option<u32>,
    pub expected_degree: u32,
    pub degree_ok: bool,
    pub parity_pure: bool,
    pub min_degree: Option<u32>,
    pub lower_bound: i64,
    /// Warning only: the lower bound is not enforced.
    pub lower_bound_ok: bool,
}

pub fn degree_parity_report(p: &ChamberPolynomial) -> DegreeParityReport {
    let expected = p.expected_degree();
    let degree = p.poly.total_degree();
    let min_degree = p.poly.min_degree();
    let lower_bound = 2 * p.genus as i64 - 3 + p.n() as i64;
    DegreeParityReport {
        degree,
        expected_degree: expected,
        degree_ok: degree == Some(expected),
        parity_pure: p.poly.is_parity_pure(expected),
        min_degree,
        lower_bound,
        lower_bound_ok: min_degree.map_or(true, |m| m as i64 >= lower_bound),
    }
}
