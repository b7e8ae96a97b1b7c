//! The Gauss-Manin connection across a resonance wall, computed two ways:
//! combinatorially from cut posets, and geometrically by transporting cones.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::chambers::adjacent_pair;
use crate::cuts::cuts_poset;
use crate::error::{Error, Result};
use crate::flow::FlowParam;
use crate::fm::{strictly_feasible, Strict};
use crate::graph::{count_linear_extensions, Orientation, XGraph};
use crate::linalg::solve_many;
use crate::subset::EndSubset;

/// Orientations whose sign pattern is realised by a real flow at `x`
/// (the chambers of the flow arrangement), in increasing mask order.
pub fn geometric_chambers(g: &XGraph, x: &[i64]) -> Vec<Orientation> {
    let param = FlowParam::new(g);
    let rows: Vec<Strict> = param
        .forms
        .iter()
        .map(|f| Strict::new(f.cycle.iter().map(|&a| a as i128).collect(), f.constant(x) as i128))
        .collect();
    let mut out = Vec::new();
    let mut prefix: Vec<Strict> = Vec::with_capacity(rows.len());
    fn dfs(rows: &[Strict], prefix: &mut Vec<Strict>, mask: u64, out: &mut Vec<Orientation>) {
        let e = prefix.len();
        if e == rows.len() {
            out.push(Orientation(mask));
            return;
        }
        for reversed in [false, true] {
            let r = &rows[e];
            let s = if reversed {
                Strict::new(r.coeffs.iter().map(|a| -a).collect(), -r.constant)
            } else {
                r.clone()
            };
            prefix.push(s);
            if strictly_feasible(prefix) {
                dfs(rows, prefix, mask | (reversed as u64) << e, out);
            }
            prefix.pop();
        }
    }
    dfs(&rows, &mut prefix, 0, &mut out);
    out.sort();
    out
}

fn is_bounded(g: &XGraph, o: Orientation) -> bool {
    o.is_acyclic(g)
}

/// Formal `Σ_C (−1)^{rk C} Σ_{E⊆C} (−1)^{|E|} A_E` over all orientations
/// (the combinatorial connection), with zero coefficients dropped.
pub fn gm_adjoint_formal(g: &XGraph, a: Orientation, wall: EndSubset) -> BTreeMap<Orientation, i64> {
    let poset = cuts_poset(g, a, wall);
    let mut out: BTreeMap<Orientation, i64> = BTreeMap::new();
    for c in &poset.cuts {
        let rk_sign = if c.rank % 2 == 0 { 1 } else { -1 };
        // iterate all submasks of the cut
        let mut e = c.edges;
        loop {
            let s = if e.count_ones() % 2 == 0 { rk_sign } else { -rk_sign };
            *out.entry(a.flip(e)).or_insert(0) += s;
            if e == 0 {
                break;
            }
            e = (e - 1) & c.edges;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// `Σ_{C ⊇ E} (−1)^{rk C}` for the cut poset of `Γ_A`.
pub fn cut_sum_containing(g: &XGraph, a: Orientation, wall: EndSubset, e: u64) -> i64 {
    cuts_poset(g, a, wall)
        .cuts
        .iter()
        .filter(|c| c.edges & e == e)
        .map(|c| if c.rank % 2 == 0 { 1 } else { -1 })
        .sum()
}

/// Geometry on both sides of one wall for one graph.
#[derive(Clone, Debug)]
pub struct GmContext {
    pub graph: XGraph,
    pub wall: EndSubset,
    /// `Σ_I x < 0` side.
    pub x1: Vec<i64>,
    pub x2: Vec<i64>,
    pub chambers1: Vec<Orientation>,
    pub chambers2: Vec<Orientation>,
}

impl GmContext {
    pub fn new(g: &XGraph, wall: EndSubset) -> Result<GmContext> {
        let (x1, x2) = adjacent_pair(wall, g.num_ends())?;
        Ok(Self::with_points(g, wall, x1, x2))
    }

    pub fn with_points(g: &XGraph, wall: EndSubset, x1: Vec<i64>, x2: Vec<i64>) -> GmContext {
        GmContext {
            graph: g.clone(),
            wall,
            chambers1: geometric_chambers(g, &x1),
            chambers2: geometric_chambers(g, &x2),
            x1,
            x2,
        }
    }

    pub fn bounded1(&self) -> Vec<Orientation> {
        self.chambers1.iter().copied().filter(|&o| is_bounded(&self.graph, o)).collect()
    }

    pub fn bounded2(&self) -> Vec<Orientation> {
        self.chambers2.iter().copied().filter(|&o| is_bounded(&self.graph, o)).collect()
    }

    pub fn is_chamber1(&self, o: Orientation) -> bool {
        self.chambers1.binary_search(&o).is_ok()
    }

    pub fn is_chamber2(&self, o: Orientation) -> bool {
        self.chambers2.binary_search(&o).is_ok()
    }

    /// `∇*(A)` from the cut formula, keeping only terms that are chambers
    /// on the `x1` side.
    pub fn gm_adjoint(&self, a: Orientation) -> BTreeMap<Orientation, i64> {
        let mut m = gm_adjoint_formal(&self.graph, a, self.wall);
        m.retain(|&o, _| self.is_chamber1(o));
        m
    }

    /// `A` exists only on the `x2` side.
    pub fn is_appearing(&self, a: Orientation) -> bool {
        self.is_chamber2(a) && !self.is_chamber1(a)
    }

    /// Violations of the vanishing claims attached to the cut formula, for
    /// every bounded chamber `A` on the `x2` side: for each `E` inside the
    /// cuttable edges, `Σ_{C ⊇ E} (−1)^{rk C}` must vanish whenever `Γ_{A,E}`
    /// has a sink or source (ends directed by `x1`) or is a chamber other
    /// than `A` that exists only on the `x2` side.
    pub fn vanishing_violations(&self) -> Vec<VanishingViolation> {
        let mut out = Vec::new();
        for a in self.bounded2() {
            let poset = cuts_poset(&self.graph, a, self.wall);
            let cuttable = poset.cuttable_edges;
            let mut e = cuttable;
            loop {
                let b = a.flip(e);
                let sink = b.has_sink_or_source(&self.graph, &self.x1);
                let other = e != 0 && self.is_chamber2(b) && !self.is_chamber1(b);
                if sink || other {
                    let s: i64 = poset
                        .cuts
                        .iter()
                        .filter(|c| c.edges & e == e)
                        .map(|c| if c.rank % 2 == 0 { 1 } else { -1 })
                        .sum();
                    if s != 0 {
                        out.push(VanishingViolation { chamber: a, flipped: e, sink_or_source: sink, sum: s });
                    }
                }
                if e == 0 {
                    break;
                }
                e = (e - 1) & cuttable;
            }
        }
        out
    }

    pub fn multiplicity(&self, o: Orientation) -> u64 {
        count_linear_extensions(&o.predecessors(&self.graph))
    }

    /// Wall-crossing coefficient of a bounded `x2`-chamber `A`: the factor
    /// multiplying its unsigned chamber sum in `P_2 − P_1`. Terms of the
    /// connection are weighted by `sign(A)·sign(B)` because the integrand
    /// `∏ w(e)` (signed) is the one transported across the wall.
    pub fn wc_coefficient(&self, a: Orientation) -> i64 {
        let adj = self.gm_adjoint(a);
        let back: i64 = adj
            .iter()
            .map(|(&b, &c)| (self.multiplicity(b) as i64) * c * b.sign())
            .sum();
        self.multiplicity(a) as i64 - a.sign() * back
    }

    /// `sign(A)·(m(A) − Σ_B m(B) ⟨B, ∇*A⟩)` with unsigned inner products.
    pub fn wc_coefficient_unsigned(&self, a: Orientation) -> i64 {
        let adj = self.gm_adjoint(a);
        let back: i64 = adj.iter().map(|(&b, &c)| (self.multiplicity(b) as i64) * c).sum();
        a.sign() * (self.multiplicity(a) as i64 - back)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingViolation {
    pub chamber: Orientation,
    pub flipped: u64,
    pub sink_or_source: bool,
    pub sum: i64,
}

/// Partial orientations whose oriented edges leave all ends in one
/// component: `(oriented edge mask, reversal bits within it)`.
pub fn combinatorial_cones(g: &XGraph) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for s in 0..=g.all_edges() {
        let (comp, _) = g.components_without(s);
        let c0 = comp[g.ends()[0].vertex];
        if g.ends().iter().any(|e| comp[e.vertex] != c0) {
            continue;
        }
        let mut r = s;
        loop {
            out.push((s, r));
            if r == 0 {
                break;
            }
            r = (r - 1) & s;
        }
    }
    out
}

fn agrees(o: Orientation, cone: (u64, u64)) -> bool {
    o.0 & cone.0 == cone.1
}

type Bits = Vec<u64>;

fn indicator(chambers: &[Orientation], cone: (u64, u64)) -> Bits {
    let mut bits = vec![0u64; chambers.len().div_ceil(64).max(1)];
    for (i, &o) in chambers.iter().enumerate() {
        if agrees(o, cone) {
            bits[i / 64] |= 1 << (i % 64);
        }
    }
    bits
}

fn ones(bits: &Bits) -> impl Iterator<Item = usize> + '_ {
    bits.iter()
        .enumerate()
        .flat_map(|(w, &b)| (0..64).filter(move |i| b >> i & 1 == 1).map(move |i| w * 64 + i))
}

/// `⟨B₂, ∇ B₁⟩` for `B₁` a chamber at `x1` (columns) and `B₂` a chamber at
/// `x2` (rows), determined by `∇ K(c1) = K(c2)` on cones.
#[derive(Clone, Debug, Serialize)]
pub struct ConnectionMatrix {
    pub rows: Vec<Orientation>,
    pub cols: Vec<Orientation>,
    pub entries: Vec<Vec<i64>>,
    pub distinct_cones: usize,
}

impl ConnectionMatrix {
    /// Row of `A`: the coefficients of `∇*(A)` on the `x1` chambers.
    pub fn adjoint(&self, a: Orientation) -> BTreeMap<Orientation, i64> {
        let Ok(i) = self.rows.binary_search(&a) else {
            return BTreeMap::new();
        };
        self.cols
            .iter()
            .zip(&self.entries[i])
            .filter(|(_, &v)| v != 0)
            .map(|(&b, &v)| (b, v))
            .collect()
    }
}

const P: u64 = 2_305_843_009_213_693_951; // 2^61 − 1

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Solve `T · K1 = K2` from cone vectors; verified exactly on every cone.
pub fn gm_via_cones(ctx: &GmContext) -> Result<ConnectionMatrix> {
    let (c1, c2) = (&ctx.chambers1, &ctx.chambers2);
    let (n1, n2) = (c1.len(), c2.len());
    let mut seen: HashSet<(Bits, Bits)> = HashSet::new();
    let mut cones: Vec<(Bits, Bits)> = Vec::new();
    for cone in combinatorial_cones(&ctx.graph) {
        let pair = (indicator(c1, cone), indicator(c2, cone));
        if seen.insert(pair.clone()) {
            cones.push(pair);
        }
    }
    // greedy basis of the x1 cone vectors, modulo a prime
    let mut basis_rows: Vec<(usize, Vec<u64>)> = Vec::new(); // (pivot, reduced row)
    let mut chosen: Vec<usize> = Vec::new();
    for (k, (v1, _)) in cones.iter().enumerate() {
        if chosen.len() == n1 {
            break;
        }
        let mut row = vec![0u64; n1];
        for i in ones(v1) {
            row[i] = 1;
        }
        for (p, b) in &basis_rows {
            if row[*p] != 0 {
                let f = row[*p];
                for j in 0..n1 {
                    row[j] = (row[j] + P - mulmod(f, b[j])) % P;
                }
            }
        }
        if let Some(p) = row.iter().position(|&v| v != 0) {
            let inv = powmod(row[p], P - 2);
            row.iter_mut().for_each(|v| *v = mulmod(*v, inv));
            basis_rows.push((p, row));
            chosen.push(k);
        }
    }
    if chosen.len() < n1 {
        return Err(Error::ConeSpanFailure(format!(
            "cones span {} of {} chambers at x1",
            chosen.len(),
            n1
        )));
    }
    // Bᵀ Tᵀ = K2ᵀ over the chosen cones
    let entries = solve_mod_p(&cones, &chosen, n1, n2)
        .filter(|t| verify(&cones, t, n2))
        .map(Ok)
        .unwrap_or_else(|| solve_rational(&cones, &chosen, n1, n2))?;
    if !verify(&cones, &entries, n2) {
        return Err(Error::ConeSpanFailure("connection does not preserve every cone".into()));
    }
    Ok(ConnectionMatrix { rows: c2.clone(), cols: c1.clone(), entries, distinct_cones: cones.len() })
}

fn solve_mod_p(cones: &[(Bits, Bits)], chosen: &[usize], n1: usize, n2: usize) -> Option<Vec<Vec<i64>>> {
    let w = n1 + n2;
    let mut m: Vec<Vec<u64>> = chosen
        .iter()
        .map(|&k| {
            let mut row = vec![0u64; w];
            ones(&cones[k].0).for_each(|i| row[i] = 1);
            ones(&cones[k].1).for_each(|i| row[n1 + i] = 1);
            row
        })
        .collect();
    for col in 0..n1 {
        let piv = (col..n1).find(|&r| m[r][col] != 0)?;
        m.swap(col, piv);
        let inv = powmod(m[col][col], P - 2);
        m[col].iter_mut().for_each(|v| *v = mulmod(*v, inv));
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let f = row[col];
                for j in 0..w {
                    row[j] = (row[j] + P - mulmod(f, pivot_row[j])) % P;
                }
            }
        }
    }
    // m[i][n1 + j] = Tᵀ[i][j] = T[j][i]
    let lift = |v: u64| if v > P / 2 { -((P - v) as i64) } else { v as i64 };
    Some((0..n2).map(|j| (0..n1).map(|i| lift(m[i][n1 + j])).collect()).collect())
}

fn solve_rational(cones: &[(Bits, Bits)], chosen: &[usize], n1: usize, n2: usize) -> Result<Vec<Vec<i64>>> {
    let to_row = |bits: &Bits, len: usize| {
        let mut row = vec![BigRational::zero(); len];
        ones(bits).for_each(|i| row[i] = BigRational::from_integer(1.into()));
        row
    };
    let a: Vec<Vec<BigRational>> = chosen.iter().map(|&k| to_row(&cones[k].0, n1)).collect();
    let b: Vec<Vec<BigRational>> = chosen.iter().map(|&k| to_row(&cones[k].1, n2)).collect();
    let sol = solve_many(&a, &b).map_err(|e| Error::ConeSpanFailure(format!("{e:?}")))?;
    (0..n2)
        .map(|j| {
            (0..n1)
                .map(|i| {
                    let v = &sol[i][j];
                    if v.is_integer() {
                        v.to_integer().to_i64().ok_or_else(|| Error::ConeSpanFailure("entry overflow".into()))
                    } else {
                        Err(Error::ConeSpanFailure(format!("non-integral entry {v}")))
                    }
                })
                .collect()
        })
        .collect()
}

fn verify(cones: &[(Bits, Bits)], t: &[Vec<i64>], n2: usize) -> bool {
    cones.iter().all(|(v1, v2)| {
        let mut image = vec![0i64; n2];
        for i in ones(v1) {
            for (j, row) in t.iter().enumerate() {
                image[j] += row[i];
            }
        }
        let target: HashSet<usize> = ones(v2).collect();
        image.iter().enumerate().all(|(j, &v)| v == target.contains(&j) as i64)
    })
}

/// Outcome of comparing both descriptions of the connection for one
/// graph and wall.
#[derive(Clone, Debug, Serialize)]
pub struct GmComparison {
    pub wall: EndSubset,
    pub bounded_chambers1: usize,
    pub bounded_chambers2: usize,
    /// Rows of bounded `x2` chambers, restricted to bounded `x1` chambers.
    pub bounded_agree: bool,
    /// Rows of all `x2` chambers over all `x1` chambers.
    pub full_agree: bool,
    pub vanishing_violations: Vec<VanishingViolation>,
    /// Bounded `x2` chambers `A ≠ A'` with `⟨A', ∇*A⟩ ≠ 0` under the formal
    /// connection (both appearing).
    pub appearing_pair_violations: usize,
    /// Bounded orientations in neither bounded set with nonzero coefficient.
    pub nongeometric_violations: usize,
}

impl GmComparison {
    pub fn passed(&self) -> bool {
        self.bounded_agree
            && self.vanishing_violations.is_empty()
            && self.appearing_pair_violations == 0
            && self.nongeometric_violations == 0
    }
}

pub fn compare_connections(ctx: &GmContext) -> Result<GmComparison> {
    let geo = gm_via_cones(ctx)?;
    let g = &ctx.graph;
    let bounded1: HashSet<Orientation> = ctx.bounded1().into_iter().collect();
    let bounded2: HashSet<Orientation> = ctx.bounded2().into_iter().collect();
    let mut bounded_agree = true;
    let mut full_agree = true;
    let mut appearing_pair_violations = 0;
    let mut nongeometric_violations = 0;
    for &a in &ctx.chambers2 {
        let comb = ctx.gm_adjoint(a);
        let cone = geo.adjoint(a);
        if comb != cone {
            full_agree = false;
        }
        if bounded2.contains(&a) {
            let restrict = |m: &BTreeMap<Orientation, i64>| -> BTreeMap<Orientation, i64> {
                m.iter().filter(|(o, _)| bounded1.contains(o)).map(|(&o, &v)| (o, v)).collect()
            };
            if restrict(&comb) != restrict(&cone) {
                bounded_agree = false;
            }
            let formal = gm_adjoint_formal(g, a, ctx.wall);
            let a_app = ctx.is_appearing(a);
            for (&b, _) in formal.iter() {
                if b == a {
                    continue;
                }
                if a_app && bounded2.contains(&b) && ctx.is_appearing(b) {
                    appearing_pair_violations += 1;
                }
                if is_bounded(g, b)
                    && !bounded1.contains(&b)
                    && !bounded2.contains(&b)
                    && !b.has_sink_or_source(g, &ctx.x1)
                {
                    nongeometric_violations += 1;
                }
            }
        }
    }
    Ok(GmComparison {
        wall: ctx.wall,
        bounded_chambers1: bounded1.len(),
        bounded_chambers2: bounded2.len(),
        bounded_agree,
        full_agree,
        vanishing_violations: ctx.vanishing_violations(),
        appearing_pair_violations,
        nongeometric_violations,
    })
}

/// Whether the formal connection fixes every combinatorial cone:
/// `Σ_{B ∈ K_P} ⟨B, ∇*A⟩ = [A ∈ K_P]` for every orientation `A`.
pub fn formal_connection_fixes_cones(g: &XGraph, wall: EndSubset) -> bool {
    let adjoints: HashMap<u64, BTreeMap<Orientation, i64>> = (0..=g.all_edges())
        .map(|a| (a, gm_adjoint_formal(g, Orientation(a), wall)))
        .collect();
    combinatorial_cones(g).into_iter().all(|cone| {
        adjoints.iter().all(|(&a, adj)| {
            let lhs: i64 = adj.iter().filter(|(b, _)| agrees(**b, cone)).map(|(_, v)| v).sum();
            lhs == agrees(Orientation(a), cone) as i64
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::wiener;

    #[test]
    fn wiener_connection() {
        let w = wiener();
        let ctx = GmContext::new(&w, EndSubset::from_labels(&[1])).unwrap();
        assert_eq!(ctx.chambers1, vec![Orientation(0b01), Orientation(0b10), Orientation(0b11)]);
        assert_eq!(ctx.chambers2, vec![Orientation(0b00), Orientation(0b01), Orientation(0b10)]);
        let a = Orientation(0);
        let adj = ctx.gm_adjoint(a);
        let expected: BTreeMap<Orientation, i64> =
            [(Orientation(0b01), 1), (Orientation(0b10), 1), (Orientation(0b11), -1)].into();
        assert_eq!(adj, expected);
        let geo = gm_via_cones(&ctx).unwrap();
        assert_eq!(geo.adjoint(a), expected);
        assert_eq!(ctx.wc_coefficient(a), 2);
        assert_eq!(ctx.wc_coefficient_unsigned(a), 2);
        let cmp = compare_connections(&ctx).unwrap();
        assert!(cmp.passed() && cmp.full_agree, "{cmp:?}");
        assert!(formal_connection_fixes_cones(&w, EndSubset::from_labels(&[1])));
    }
}
