//! Wall crossing: `P₂ − P₁` from interpolation against the light formula
//! (products of smaller Hurwitz numbers) and against the cut-based
//! per-chamber coefficients.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::chambers::{adjacent_pair, classify, HChamber};
use crate::engine::{genus_for, HurwitzEngine};
use crate::error::{Error, Result};
use crate::gm::GmContext;
use crate::graph::Orientation;
use crate::poly::{interpolate_function, interpolate_with, InterpolationOptions, Polynomial};
use crate::rational::{factorial, fmt_ratio, multinomial};
use crate::subset::EndSubset;

/// One wall `W_I` with its adjacent chambers; `c1` is the `Σ_I x < 0` side.
#[derive(Clone, Debug)]
pub struct WallCrossingInstance {
    pub genus: usize,
    pub n: usize,
    pub wall: EndSubset,
    pub x1: Vec<i64>,
    pub x2: Vec<i64>,
    pub c1: HChamber,
    pub c2: HChamber,
    pub p1: Polynomial,
    pub p2: Polynomial,
    /// `P₂ − P₁`.
    pub wc: Polynomial,
}

impl WallCrossingInstance {
    pub fn new(genus: usize, n: usize, wall: EndSubset, seed: u64) -> Result<Self> {
        let (x1, x2) = adjacent_pair(wall, n)?;
        let (c1, c2) = (classify(&x1)?, classify(&x2)?);
        let opts = InterpolationOptions { seed, ..InterpolationOptions::default() };
        let p1 = interpolate_with(genus, &c1, opts)?.poly;
        let p2 = interpolate_with(genus, &c2, opts)?.poly;
        let wc = &p2 - &p1;
        Ok(WallCrossingInstance { genus, n, wall, x1, x2, c1, c2, p1, p2, wc })
    }

    pub fn r(&self) -> usize {
        2 * self.genus + self.n - 2
    }

    /// Points `k·x1`, `k = 2..`, all in `c1` next to the wall.
    pub fn c1_points(&self, count: usize) -> Vec<Vec<i64>> {
        (2..2 + count as i64).map(|k| self.x1.iter().map(|v| v * k).collect()).collect()
    }

    pub fn c2_points(&self, count: usize) -> Vec<Vec<i64>> {
        (2..2 + count as i64).map(|k| self.x2.iter().map(|v| v * k).collect()).collect()
    }
}

/// `P₂ − P₁` for the wall `I` in genus `g`.
pub fn wc_lhs(g: usize, n: usize, wall: EndSubset, seed: u64) -> Result<Polynomial> {
    Ok(WallCrossingInstance::new(g, n, wall, seed)?.wc)
}

/// Ordered tuples of positive integers summing to `d`.
pub fn compositions(d: u32) -> Vec<Vec<i64>> {
    if d == 0 {
        return vec![];
    }
    (0u32..1 << (d - 1))
        .map(|cuts| {
            let mut parts = Vec::new();
            let mut cur = 1;
            for i in 0..d - 1 {
                if cuts >> i & 1 == 1 {
                    parts.push(cur);
                    cur = 1;
                } else {
                    cur += 1;
                }
            }
            parts.push(cur);
            parts
        })
        .collect()
}

/// Light formula at `x ∈ c1`:
/// `Σ (−1)^t (r; s,t,u) ∏y/ℓ(y)! ∏z/ℓ(z)! H^s(x_I, y) H^{t•}(−y, z) H^u(x_{I^c}, −z)`
/// over `s + t + u = r` and compositions `y`, `z` of `|Σ_I x|`.
pub fn wc_rhs_light(r: usize, x: &[i64], wall: EndSubset) -> Result<BigRational> {
    let n = x.len();
    let sigma = wall.sum(x);
    if sigma >= 0 {
        return Err(Error::invalid(format!("Σ over {wall} must be negative, got {sigma}")));
    }
    if x.contains(&0) {
        return Err(Error::invalid("profile entries must be nonzero"));
    }
    let engine = HurwitzEngine::global();
    let xi: Vec<i64> = wall.labels().iter().map(|&i| x[i - 1]).collect();
    let xc: Vec<i64> = wall.complement(n).labels().iter().map(|&i| x[i - 1]).collect();
    let comps = compositions(sigma.unsigned_abs() as u32);

    let weight = |t: &[i64]| {
        BigRational::new(t.iter().map(|&v| BigInt::from(v)).product(), factorial(t.len() as u64))
    };
    // connected side factors, keyed by (steps, tuple)
    let side = |base: &[i64], tuple: &[i64], negate: bool, steps: usize| -> Result<BigRational> {
        let mut profile = base.to_vec();
        profile.extend(tuple.iter().map(|&v| if negate { -v } else { v }));
        // the outer factors are stable connected covers; a bare cylinder
        // would be an end, not a component
        match genus_for(steps, profile.len()) {
            None | Some(0) if profile.len() <= 2 => return Ok(BigRational::zero()),
            None => return Ok(BigRational::zero()),
            _ => {}
        }
        engine.hurwitz_r(steps, &profile)
    };
    let mut triples = Vec::new();
    for s in 0..=r {
        for t in 0..=r - s {
            triples.push((s, t, r - s - t));
        }
    }
    let terms: Vec<Result<BigRational>> = triples
        .par_iter()
        .map(|&(s, t, u)| {
            let mut acc = BigRational::zero();
            let left: Vec<BigRational> =
                comps.iter().map(|y| side(&xi, y, false, s)).collect::<Result<_>>()?;
            let right: Vec<BigRational> =
                comps.iter().map(|z| side(&xc, z, true, u)).collect::<Result<_>>()?;
            for (y, hl) in comps.iter().zip(&left) {
                if hl.is_zero() {
                    continue;
                }
                for (z, hr) in comps.iter().zip(&right) {
                    if hr.is_zero() {
                        continue;
                    }
                    let mut middle: Vec<i64> = y.iter().map(|v| -v).collect();
                    middle.extend(z);
                    let hm = engine.hurwitz_disconnected(t, &middle)?;
                    if hm.is_zero() {
                        continue;
                    }
                    acc += weight(y) * weight(z) * hl * hm * hr;
                }
            }
            let coeff = BigRational::from_integer(multinomial(&[s as u64, t as u64, u as u64]));
            let signed = if t % 2 == 0 { coeff } else { -coeff };
            Ok(signed * acc)
        })
        .collect();
    terms.into_iter().try_fold(BigRational::zero(), |a, t| Ok(a + t?))
}

/// Sign relating the light formula, as written, to `P₂ − P₁`: fixed once by
/// the genus-one, two-end wall `{1}` at `x = (−3, 3)` rather than assumed.
pub fn light_formula_sign() -> Result<i64> {
    static SIGN: OnceLock<Result<i64>> = OnceLock::new();
    SIGN.get_or_init(|| {
        let wall = EndSubset::from_labels(&[1]);
        let x = [-3, 3];
        let lhs = wc_lhs(1, 2, wall, 0)?.eval(&x);
        let rhs = wc_rhs_light(2, &x, wall)?;
        if lhs == rhs {
            Ok(1)
        } else if lhs == -rhs.clone() {
            Ok(-1)
        } else {
            Err(Error::invalid(format!(
                "light formula calibration failed: {} vs {}",
                fmt_ratio(&lhs),
                fmt_ratio(&rhs)
            )))
        }
    })
    .clone()
}

/// Per-graph wall-crossing coefficients of the bounded `x2` chambers,
/// together with everything needed to weight their chamber sums.
pub struct ChamberCoefficients {
    graphs: Vec<(usize, u64, BTreeMap<Orientation, i64>, BTreeMap<Orientation, i64>)>,
    genus: usize,
    n: usize,
}

impl ChamberCoefficients {
    pub fn new(genus: usize, n: usize, wall: EndSubset) -> Result<Self> {
        let prepared = HurwitzEngine::global().graphs(genus, n)?;
        let (x1, x2) = adjacent_pair(wall, n)?;
        let graphs = prepared
            .par_iter()
            .enumerate()
            .map(|(i, p)| {
                let ctx = GmContext::with_points(&p.graph, wall, x1.clone(), x2.clone());
                let mut signed = BTreeMap::new();
                let mut literal = BTreeMap::new();
                for a in ctx.bounded2() {
                    let c = ctx.wc_coefficient(a);
                    if c != 0 {
                        signed.insert(a, c);
                    }
                    // sign(A)·WC[Γ,A] multiplies the unsigned chamber sum
                    let l = a.sign() * ctx.wc_coefficient_unsigned(a);
                    if l != 0 {
                        literal.insert(a, l);
                    }
                }
                (i, p.automorphisms, signed, literal)
            })
            .collect();
        Ok(ChamberCoefficients { graphs, genus, n })
    }

    fn value(&self, x: &[i64], literal: bool) -> Result<BigRational> {
        let prepared = HurwitzEngine::global().graphs(self.genus, self.n)?;
        Ok(self
            .graphs
            .par_iter()
            .map(|(i, aut, signed, lit)| {
                let coeffs = if literal { lit } else { signed };
                if coeffs.is_empty() {
                    return BigRational::zero();
                }
                let sums = prepared[*i].chamber_sums(x);
                let total: BigInt = coeffs
                    .iter()
                    .filter_map(|(a, &c)| sums.get(a).map(|s| s * BigInt::from(c)))
                    .sum();
                BigRational::new(total, BigInt::from(*aut))
            })
            .reduce(BigRational::zero, |a, b| a + b))
    }

    /// `Σ_Γ (1/|Aut Γ|) Σ_A WC[Γ,A] · chamber_sum(Γ, A, x)` at `x ∈ c2`.
    pub fn cut_route_value(&self, x: &[i64]) -> Result<BigRational> {
        self.value(x, false)
    }

    /// The same with the unsigned inner-product convention.
    pub fn cut_route_value_unsigned(&self, x: &[i64]) -> Result<BigRational> {
        self.value(x, true)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PointCheck {
    pub x: Vec<i64>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WallReport {
    pub genus: usize,
    pub n: usize,
    pub wall: Vec<usize>,
    pub x1: Vec<i64>,
    pub x2: Vec<i64>,
    pub wc: String,
    /// Global sign applied to the light formula (see [`light_formula_sign`]).
    pub light_sign: i64,
    /// `P₂ − P₁` against the sign-calibrated light formula at `c1` points.
    pub light: Vec<PointCheck>,
    /// Cut-coefficient route at `c2` points against `P₂ − P₁` there.
    pub cut_route_c2: Vec<PointCheck>,
    /// Cut-coefficient route, interpolated on `c2` and continued to the
    /// `c1` points of the light check.
    pub cut_route_c1: Vec<PointCheck>,
    pub cut_route_polynomial_matches: bool,
    /// Whether the unsigned inner-product convention would also match.
    pub unsigned_convention_matches: bool,
    pub passed: bool,
}

/// Compare `P₂ − P₁` with the light formula at `points` points of `c1`,
/// and with the cut-coefficient route.
pub fn verify_wall(g: usize, n: usize, wall: EndSubset, seed: u64, points: usize) -> Result<WallReport> {
    let inst = WallCrossingInstance::new(g, n, wall, seed)?;
    let r = inst.r();
    let check = |x: Vec<i64>, lhs: BigRational, rhs: BigRational| PointCheck {
        pass: lhs == rhs,
        lhs: fmt_ratio(&lhs),
        rhs: fmt_ratio(&rhs),
        x,
    };
    let light_sign = light_formula_sign()?;
    let c1_points = inst.c1_points(points);
    let light = c1_points
        .iter()
        .map(|x| {
            let rhs = wc_rhs_light(r, x, wall)? * BigRational::from_integer(light_sign.into());
            Ok(check(x.clone(), inst.wc.eval(x), rhs))
        })
        .collect::<Result<Vec<_>>>()?;

    let coeffs = ChamberCoefficients::new(g, n, wall)?;
    let mut unsigned_ok = true;
    let cut_route_c2 = inst
        .c2_points(points)
        .iter()
        .map(|x| {
            let lhs = inst.wc.eval(x);
            if coeffs.cut_route_value_unsigned(x)? != lhs {
                unsigned_ok = false;
            }
            Ok(check(x.clone(), lhs, coeffs.cut_route_value(x)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let degree = (4 * g + n - 3) as u32;
    let opts = InterpolationOptions { seed, ..InterpolationOptions::default() };
    let f = |x: &[i64]| coeffs.cut_route_value(x);
    let cut_route_poly = interpolate_function(&inst.c2, degree, opts, &f).map(|(p, _, _)| p);
    let (cut_route_polynomial_matches, cut_route_c1) = match &cut_route_poly {
        Ok(p) => (
            *p == inst.wc,
            c1_points.iter().map(|x| check(x.clone(), inst.wc.eval(x), p.eval(x))).collect(),
        ),
        Err(_) => (false, Vec::new()),
    };
    let passed = light.iter().all(|c| c.pass)
        && cut_route_c2.iter().all(|c| c.pass)
        && cut_route_c1.iter().all(|c| c.pass)
        && cut_route_polynomial_matches;
    Ok(WallReport {
        genus: g,
        n,
        wall: wall.labels(),
        x1: inst.x1.clone(),
        x2: inst.x2.clone(),
        wc: inst.wc.to_string(),
        light_sign,
        light,
        cut_route_c2,
        cut_route_c1,
        cut_route_polynomial_matches,
        unsigned_convention_matches: unsigned_ok,
        passed,
    })
}
