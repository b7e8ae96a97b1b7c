//! I-cuts of directed x-graphs, their poset, and thin cuts.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{count_linear_extensions, Orientation, XGraph};
use crate::subset::EndSubset;

/// A cut: removed edges plus the component structure of what is left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cut {
    pub edges: u64,
    /// Component id of every internal vertex of `Γ ∖ C`.
    pub components: Vec<usize>,
    pub num_components: usize,
    /// Components containing the `I`-ends and the `I^c`-ends (equal for the
    /// empty cut).
    pub top: usize,
    pub bottom: usize,
    pub rank: usize,
}

impl Cut {
    pub fn is_empty(&self) -> bool {
        self.edges == 0
    }

    pub fn edge_list(&self) -> Vec<usize> {
        (0..64).filter(|e| self.edges >> e & 1 == 1).collect()
    }

    /// Number of components other than top and bottom.
    pub fn middle_components(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.num_components - 2
        }
    }

    pub fn is_middle_vertex(&self, v: usize) -> bool {
        !self.is_empty() && self.components[v] != self.top && self.components[v] != self.bottom
    }

    pub fn middle_vertices(&self) -> Vec<usize> {
        (0..self.components.len()).filter(|&v| self.is_middle_vertex(v)).collect()
    }

    /// Edges of the cut touching the top or bottom component.
    pub fn thin_part(&self, g: &XGraph) -> u64 {
        let mut t = 0;
        for e in self.edge_list() {
            let edge = g.edge(e);
            if !self.is_middle_vertex(edge.tail) || !self.is_middle_vertex(edge.head) {
                t |= 1 << e;
            }
        }
        t
    }

    pub fn is_thin(&self, g: &XGraph) -> bool {
        self.thin_part(g) == self.edges
    }
}

/// Checks Definition-of-cut conditions for `edges` on `Γ_O`; returns the
/// cut if it qualifies. The empty set always qualifies (rank 0).
pub fn make_cut(g: &XGraph, o: Orientation, subset: EndSubset, edges: u64) -> Option<Cut> {
    let (components, count) = g.components_without(edges);
    if edges == 0 {
        return Some(Cut { edges, components, num_components: count, top: 0, bottom: 0, rank: 0 });
    }
    let mut top = None;
    let mut bottom = None;
    for end in g.ends() {
        let c = components[end.vertex];
        let slot = if subset.contains(end.label) { &mut top } else { &mut bottom };
        match *slot {
            None => *slot = Some(c),
            Some(prev) if prev != c => return None,
            _ => {}
        }
    }
    let (top, bottom) = (top?, bottom?);
    if top == bottom {
        return None;
    }
    // quotient Γ/C^c: components joined by the cut edges
    let mut preds = vec![0u64; count];
    for e in 0..g.num_edges() {
        if edges >> e & 1 == 0 {
            continue;
        }
        let (t, h) = o.directed(g, e);
        let (ct, ch) = (components[t], components[h]);
        if ct == ch {
            return None;
        }
        preds[ch] |= 1 << ct;
    }
    if preds[top] != 0 {
        return None;
    }
    if (0..count).any(|c| preds[c] >> bottom & 1 == 1) {
        return None;
    }
    if count_linear_extensions(&preds) == 0 {
        return None;
    }
    Some(Cut { edges, components, num_components: count, top, bottom, rank: count - 1 })
}

/// All `I`-cuts of `Γ_O`, ordered by edge mask (the empty cut first).
#[derive(Clone, Debug, Serialize)]
pub struct CutPoset {
    pub orientation: Orientation,
    pub subset: EndSubset,
    pub cuts: Vec<Cut>,
    pub cuttable_edges: u64,
}

pub fn cuts_poset(g: &XGraph, o: Orientation, subset: EndSubset) -> CutPoset {
    let cuts: Vec<Cut> = (0..=g.all_edges())
        .filter_map(|c| make_cut(g, o, subset, c))
        .collect();
    let cuttable_edges = cuts.iter().fold(0, |acc, c| acc | c.edges);
    CutPoset { orientation: o, subset, cuts, cuttable_edges }
}

/// The chamber is appearing iff a nonempty cut exists.
pub fn is_appearing(g: &XGraph, o: Orientation, subset: EndSubset) -> bool {
    (1..=g.all_edges()).any(|c| make_cut(g, o, subset, c).is_some())
}

impl CutPoset {
    pub fn has_nonempty_cut(&self) -> bool {
        self.cuts.len() > 1
    }

    /// `Σ_C (−1)^{rk C}`.
    pub fn euler_characteristic(&self) -> i64 {
        self.cuts.iter().map(|c| if c.rank % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// Covering relations `(lower, upper)` of the inclusion order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let subset = |a: u64, b: u64| a & !b == 0 && a != b;
        let mut out = Vec::new();
        for (i, a) in self.cuts.iter().enumerate() {
            for (j, b) in self.cuts.iter().enumerate() {
                if subset(a.edges, b.edges)
                    && !self
                        .cuts
                        .iter()
                        .any(|c| subset(a.edges, c.edges) && subset(c.edges, b.edges))
                {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Every covering relation raises the rank by exactly one.
    pub fn is_graded_by_rank(&self) -> bool {
        self.hasse_edges()
            .iter()
            .all(|&(i, j)| self.cuts[j].rank == self.cuts[i].rank + 1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cuts: Vec<serde_json::Value> = self
            .cuts
            .iter()
            .map(|c| serde_json::json!({ "edges": c.edge_list(), "rank": c.rank }))
            .collect();
        serde_json::json!({
            "orientation": self.orientation.0,
            "wall": self.subset.labels(),
            "cuts": cuts,
            "hasse": self.hasse_edges(),
            "cuttable_edges": (0..64).filter(|e| self.cuttable_edges >> e & 1 == 1).collect::<Vec<_>>(),
        })
    }
}

/// `𝔬(C)`: orders of all internal vertices compatible with `Γ_O ∖ C`.
pub fn orderings(g: &XGraph, o: Orientation, removed: u64) -> u64 {
    count_linear_extensions(&o.predecessors_without(g, removed))
}

pub fn thin_cuts(g: &XGraph, o: Orientation, subset: EndSubset) -> Vec<Cut> {
    cuts_poset(g, o, subset)
        .cuts
        .into_iter()
        .filter(|c| !c.is_empty() && c.is_thin(g))
        .collect()
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// One thin cut `T` with both sides of the inclusion–exclusion identity
/// `(−1)^t 𝔬(T) = Σ_{C ∈ P(T)} (−1)^{N(C)} 𝔬(C)`, where `N(C)` counts the
/// middle components of `C`. (`P(T)` is the set of cuts thinning to `T`.)
#[derive(Clone, Debug, Serialize)]
pub struct ThinCutIdentity {
    pub thin_cut: u64,
    pub middle_vertices: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub sub_poset: Vec<u64>,
}

impl ThinCutIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn thin_cut_identities(g: &XGraph, o: Orientation, subset: EndSubset) -> Vec<ThinCutIdentity> {
    let poset = cuts_poset(g, o, subset);
    let nonempty: Vec<&Cut> = poset.cuts.iter().filter(|c| !c.is_empty()).collect();
    nonempty
        .iter()
        .filter(|c| c.is_thin(g))
        .map(|t| {
            let members: Vec<&&Cut> =
                nonempty.iter().filter(|c| c.thin_part(g) == t.edges).collect();
            let tv = t.middle_vertices().len();
            let lhs = sign(tv) * orderings(g, o, t.edges) as i64;
            let rhs = members
                .iter()
                .map(|c| sign(c.middle_components()) * orderings(g, o, c.edges) as i64)
                .sum();
            ThinCutIdentity {
                thin_cut: t.edges,
                middle_vertices: tv,
                lhs,
                rhs,
                sub_poset: members.iter().map(|c| c.edges).collect(),
            }
        })
        .collect()
}

pub fn thin_cut_identities_hold(g: &XGraph, o: Orientation, subset: EndSubset) -> bool {
    thin_cut_identities(g, o, subset).iter().all(ThinCutIdentity::holds)
}

/// `Σ_T (−1)^t 𝔬(T)` over nonempty thin cuts.
pub fn thin_cut_sum(g: &XGraph, o: Orientation, subset: EndSubset) -> i64 {
    thin_cuts(g, o, subset)
        .iter()
        .map(|t| sign(t.middle_vertices().len()) * orderings(g, o, t.edges) as i64)
        .sum()
}

/// `Σ_{C ≠ ∅} (−1)^{rk C − 1} 𝔬(C)` over all nonempty cuts.
pub fn heavy_cut_sum(g: &XGraph, o: Orientation, subset: EndSubset) -> i64 {
    cuts_poset(g, o, subset)
        .cuts
        .iter()
        .filter(|c| !c.is_empty())
        .map(|c| sign(c.rank - 1) * orderings(g, o, c.edges) as i64)
        .sum()
}

/// Cone identity behind the thin-cut lemma, checked at random generic
/// potentials `v` on the middle vertices of `T`:
/// `(−1)^t [v ∈ X^op] = Σ_{C ∈ P(T)} (−1)^{N(C)} [v ∈ K_C]`, where
/// `X = {v_tail ≥ v_head on every middle edge}`, `K_C` drops the conditions of
/// the edges in `C`, and `X^op` reverses all of them.
/// Returns the number of sample points where the identity fails.
pub fn indicator_identity_failures(
    g: &XGraph,
    o: Orientation,
    subset: EndSubset,
    thin: &Cut,
    samples: usize,
    seed: u64,
) -> usize {
    let poset = cuts_poset(g, o, subset);
    let members: Vec<&Cut> = poset
        .cuts
        .iter()
        .filter(|c| !c.is_empty() && c.thin_part(g) == thin.edges)
        .collect();
    let middle = thin.middle_vertices();
    let middle_edges: Vec<(usize, usize, usize)> = (0..g.num_edges())
        .filter_map(|e| {
            let (t, h) = o.directed(g, e);
            (thin.is_middle_vertex(t) && thin.is_middle_vertex(h)).then_some((e, t, h))
        })
        .collect();
    let t = middle.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut values: Vec<i64> = (0..t as i64).collect();
    for _ in 0..samples {
        // generic point: distinct coordinates, random order and spacing
        values.shuffle(&mut rng);
        let mut v = vec![0i64; g.num_vertices()];
        for (k, &u) in middle.iter().enumerate() {
            v[u] = values[k] * 1000 + rng.gen_range(0..1000);
        }
        let delta = |tail: usize, head: usize| v[tail] - v[head];
        let in_op = middle_edges.iter().all(|&(_, a, b)| delta(a, b) <= 0);
        let lhs = if in_op { sign(t) } else { 0 };
        let rhs: i64 = members
            .iter()
            .filter(|c| {
                middle_edges
                    .iter()
                    .all(|&(e, a, b)| c.edges >> e & 1 == 1 || delta(a, b) >= 0)
            })
            .map(|c| sign(c.middle_components()))
            .sum();
        if lhs != rhs {
            failures += 1;
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{double_edge_chain, wiener};

    #[test]
    fn wiener_poset() {
        let w = wiener();
        let i1 = EndSubset::from_labels(&[1]);
        let p = cuts_poset(&w, Orientation(0), i1);
        assert_eq!(p.cuts.iter().map(|c| (c.edges, c.rank)).collect::<Vec<_>>(), vec![(0, 0), (0b11, 1)]);
        assert_eq!(p.euler_characteristic(), 0);
        assert!(is_appearing(&w, Orientation(0), i1));
        assert!(!is_appearing(&w, Orientation(0), EndSubset::from_labels(&[2])));
        assert!(thin_cut_identities_hold(&w, Orientation(0), i1));
        assert_eq!(p.hasse_edges(), vec![(0, 1)]);
    }

    #[test]
    fn thin_cut_sum_of_double_edge_chain() {
        let g = double_edge_chain();
        let i = EndSubset::from_labels(&[1, 2]);
        let o = Orientation(0);
        assert_eq!(thin_cut_sum(&g, o, i), 2);
        assert_eq!(heavy_cut_sum(&g, o, i), 2);
        assert!(thin_cut_identities_hold(&g, o, i));
        for t in thin_cuts(&g, o, i) {
            assert_eq!(indicator_identity_failures(&g, o, i, &t, 50, 1), 0);
        }
    }
}
