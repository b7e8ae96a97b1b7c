//! Trivalent graphs with labelled ends (x-graphs), their orientations,
//! automorphisms and vertex-ordering multiplicities.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct End {
    pub label: usize,
    pub vertex: usize,
}

/// An internal edge with its reference direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// Connected trivalent graph of genus `g` with `n` labelled ends.
///
/// Ends are stored sorted by label; labels are `1..=n`. Edge `e` carries the
/// reference direction `tail → head`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XGraph {
    genus: usize,
    num_vertices: usize,
    ends: Vec<End>,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    genus: usize,
    ends: Vec<End>,
    edges: Vec<Edge>,
}

impl XGraph {
    /// Validates labels, trivalence, connectivity and the Betti number.
    /// Self-loops are accepted here (they are only excluded from enumeration).
    pub fn new(genus: usize, mut ends: Vec<End>, edges: Vec<Edge>) -> Result<Self> {
        ends.sort();
        let n = ends.len();
        if n == 0 {
            return Err(Error::invalid("an x-graph needs at least one end"));
        }
        for (i, e) in ends.iter().enumerate() {
            if e.label != i + 1 {
                return Err(Error::invalid(format!("end labels must be 1..={n}, each once")));
            }
        }
        let num_vertices = ends
            .iter()
            .map(|e| e.vertex)
            .chain(edges.iter().flat_map(|e| [e.tail, e.head]))
            .max()
            .map_or(0, |v| v + 1);
        if edges.len() > 63 {
            return Err(Error::SizeLimit("more than 63 internal edges".into()));
        }
        let mut valence = vec![0usize; num_vertices];
        for e in &ends {
            valence[e.vertex] += 1;
        }
        for e in &edges {
            valence[e.tail] += 1;
            valence[e.head] += 1;
        }
        if let Some(v) = valence.iter().position(|&k| k != 3) {
            return Err(Error::invalid(format!("vertex {v} has valence {}", valence[v])));
        }
        let g = XGraph { genus, num_vertices, ends, edges };
        if !g.is_connected_without(0) {
            return Err(Error::invalid("graph is not connected"));
        }
        let betti = g.edges.len() + 1 - g.num_vertices;
        if betti != genus {
            return Err(Error::invalid(format!("first Betti number is {betti}, expected {genus}")));
        }
        Ok(g)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn num_ends(&self) -> usize {
        self.ends.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn ends(&self) -> &[End] {
        &self.ends
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub fn end_vertex(&self, label: usize) -> usize {
        self.ends[label - 1].vertex
    }

    pub fn ends_at(&self, v: usize) -> Vec<usize> {
        self.ends.iter().filter(|e| e.vertex == v).map(|e| e.label).collect()
    }

    /// Mask of all internal edges.
    pub fn all_edges(&self) -> u64 {
        if self.edges.is_empty() {
            0
        } else {
            u64::MAX >> (64 - self.edges.len())
        }
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// Connectivity after deleting the edges in `removed`.
    fn is_connected_without(&self, removed: u64) -> bool {
        self.components_without(removed).1 <= 1
    }

    /// Component label of each vertex after deleting `removed`, and the number
    /// of components.
    pub fn components_without(&self, removed: u64) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.num_vertices];
        let mut count = 0;
        for start in 0..self.num_vertices {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for (i, e) in self.edges.iter().enumerate() {
                    if removed >> i & 1 == 1 {
                        continue;
                    }
                    let w = if e.tail == v {
                        e.head
                    } else if e.head == v {
                        e.tail
                    } else {
                        continue;
                    };
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Bridges with no end on one of their sides. Such an edge carries zero
    /// flow for every x, so the graph contributes nothing.
    pub fn endless_bridges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| {
                let (comp, count) = self.components_without(1 << i);
                if count < 2 {
                    return false;
                }
                let mut has_end = vec![false; count];
                for e in &self.ends {
                    has_end[comp[e.vertex]] = true;
                }
                has_end.iter().any(|h| !h)
            })
            .collect()
    }

    /// Loops or endless bridges: every flow vanishes on some edge.
    pub fn is_degenerate(&self) -> bool {
        self.has_loop() || !self.endless_bridges().is_empty()
    }

    /// Upper-triangular multiplicity matrix, row-major.
    fn multiplicities(&self, perm: &[usize]) -> Vec<u8> {
        let r = self.num_vertices;
        let mut m = vec![0u8; r * r];
        for e in &self.edges {
            let (a, b) = (perm[e.tail], perm[e.head]);
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            m[a * r + b] += 1;
        }
        m
    }

    /// Vertices carrying ends, ordered by smallest label, then the endless
    /// vertices in their current order.
    fn end_vertex_order(&self) -> (Vec<usize>, Vec<usize>) {
        let mut with_ends: Vec<(usize, usize)> = Vec::new();
        for e in &self.ends {
            if !with_ends.iter().any(|&(_, v)| v == e.vertex) {
                with_ends.push((e.label, e.vertex));
            }
        }
        with_ends.sort();
        let fixed: Vec<usize> = with_ends.into_iter().map(|(_, v)| v).collect();
        let free: Vec<usize> = (0..self.num_vertices).filter(|v| !fixed.contains(v)).collect();
        (fixed, free)
    }

    /// Canonical representative of the isomorphism class (isomorphisms must
    /// preserve end labels), plus the number of vertex permutations fixing it.
    fn canonical_with_stabilizer(&self) -> (XGraph, usize) {
        let (fixed, free) = self.end_vertex_order();
        let r = self.num_vertices;
        let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
        let mut stabilizer = 0usize;
        for_each_permutation(free.len(), |p| {
            // perm maps old vertex -> new index
            let mut perm = vec![0usize; r];
            for (i, &v) in fixed.iter().enumerate() {
                perm[v] = i;
            }
            for (i, &v) in free.iter().enumerate() {
                perm[v] = fixed.len() + p[i];
            }
            let key = self.multiplicities(&perm);
            match &best {
                Some((k, _)) if key > *k => {}
                Some((k, _)) if key == *k => stabilizer += 1,
                _ => {
                    best = Some((key, perm));
                    stabilizer = 1;
                }
            }
        });
        let (key, perm) = best.expect("at least the identity permutation");
        let mut edges = Vec::with_capacity(self.edges.len());
        for a in 0..r {
            for b in a..r {
                for _ in 0..key[a * r + b] {
                    edges.push(Edge { tail: a, head: b });
                }
            }
        }
        let ends = self
            .ends
            .iter()
            .map(|e| End { label: e.label, vertex: perm[e.vertex] })
            .collect();
        let g = XGraph { genus: self.genus, num_vertices: r, ends, edges };
        (g, stabilizer)
    }

    /// Canonical form: equal for two graphs iff they are isomorphic by an
    /// isomorphism fixing every end label. Edges come out sorted by
    /// `(tail, head)` with `tail ≤ head` as reference direction.
    pub fn canonical(&self) -> XGraph {
        self.canonical_with_stabilizer().0
    }

    pub fn is_isomorphic(&self, other: &XGraph) -> bool {
        self.num_ends() == other.num_ends() && self.canonical() == other.canonical()
    }

    /// Same graph with end `i` renamed to `perm[i - 1]`.
    pub fn relabel_ends(&self, perm: &[usize]) -> Result<XGraph> {
        let ends = self
            .ends
            .iter()
            .map(|e| End { label: perm[e.label - 1], vertex: e.vertex })
            .collect();
        XGraph::new(self.genus, ends, self.edges.clone())
    }

    /// Same graph with reference directions flipped on the edges in `mask`.
    pub fn with_reference_flipped(&self, mask: u64) -> XGraph {
        let mut g = self.clone();
        for (i, e) in g.edges.iter_mut().enumerate() {
            if mask >> i & 1 == 1 {
                std::mem::swap(&mut e.tail, &mut e.head);
            }
        }
        g
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson {
            genus: self.genus,
            ends: self.ends.clone(),
            edges: self.edges.clone(),
        })
        .expect("graph serialises")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<XGraph> {
        let g: GraphJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::invalid(format!("bad graph JSON: {e}")))?;
        XGraph::new(g.genus, g.ends, g.edges)
    }

    /// Graphviz rendering; with an orientation the edges become arrows.
    pub fn to_dot(&self, name: &str, orientation: Option<Orientation>) -> String {
        let (kw, arrow) = if orientation.is_some() { ("digraph", "->") } else { ("graph", "--") };
        let mut s = format!("{kw} {name} {{\n");
        for v in 0..self.num_vertices {
            let _ = writeln!(s, "  v{v} [shape=point];");
        }
        for e in &self.ends {
            let _ = writeln!(s, "  x{} [shape=plaintext, label=\"x{}\"];", e.label, e.label);
            let _ = writeln!(s, "  x{} {arrow} v{};", e.label, e.vertex);
        }
        for (i, _) in self.edges.iter().enumerate() {
            let (t, h) = match orientation {
                Some(o) => o.directed(self, i),
                None => (self.edges[i].tail, self.edges[i].head),
            };
            let _ = writeln!(s, "  v{t} {arrow} v{h} [label=\"e{i}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// Calls `f` with every permutation of `0..k`.
pub(crate) fn for_each_permutation(k: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..k).collect();
    // Heap's algorithm
    let mut c = vec![0usize; k];
    f(&p);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn factorial_u64(k: u64) -> u64 {
    (1..=k).product()
}

/// Order of the group of automorphisms fixing every end: vertex permutations
/// preserving the multigraph, times the permutations of parallel edges
/// (and flips of loops).
pub fn automorphism_count(g: &XGraph) -> u64 {
    let (canon, stab) = g.canonical_with_stabilizer();
    let r = canon.num_vertices;
    let m = canon.multiplicities(&(0..r).collect::<Vec<_>>());
    let mut count = stab as u64;
    for a in 0..r {
        for b in a..r {
            let k = m[a * r + b] as u64;
            count *= factorial_u64(k);
            if a == b {
                count *= 1 << k;
            }
        }
    }
    count
}

/// Orientation of the internal edges relative to the reference direction:
/// bit `e` set means edge `e` is reversed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Orientation(pub u64);

impl Orientation {
    pub fn reference() -> Self {
        Orientation(0)
    }

    /// From per-edge signs (+1 = reference direction).
    pub fn from_signs(signs: &[i64]) -> Option<Self> {
        let mut bits = 0;
        for (i, &s) in signs.iter().enumerate() {
            match s.signum() {
                1 => {}
                -1 => bits |= 1 << i,
                _ => return None,
            }
        }
        Some(Orientation(bits))
    }

    pub fn is_reversed(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    /// +1 if edge `e` follows the reference direction, −1 otherwise.
    pub fn edge_sign(self, e: usize) -> i64 {
        if self.is_reversed(e) {
            -1
        } else {
            1
        }
    }

    pub fn signs(self, num_edges: usize) -> Vec<i64> {
        (0..num_edges).map(|e| self.edge_sign(e)).collect()
    }

    /// `(−1)^{#reversed edges}`.
    pub fn sign(self) -> i64 {
        if self.0.count_ones() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn flip(self, edges: u64) -> Self {
        Orientation(self.0 ^ edges)
    }

    /// `(tail, head)` of edge `e` under this orientation.
    pub fn directed(self, g: &XGraph, e: usize) -> (usize, usize) {
        let Edge { tail, head } = g.edge(e);
        if self.is_reversed(e) {
            (head, tail)
        } else {
            (tail, head)
        }
    }

    /// Predecessor masks of the internal vertices.
    pub fn predecessors(self, g: &XGraph) -> Vec<u64> {
        self.predecessors_without(g, 0)
    }

    /// Predecessor masks using only the edges outside `removed`.
    pub fn predecessors_without(self, g: &XGraph, removed: u64) -> Vec<u64> {
        let mut preds = vec![0u64; g.num_vertices()];
        for e in 0..g.num_edges() {
            if removed >> e & 1 == 0 {
                let (t, h) = self.directed(g, e);
                preds[h] |= 1 << t;
            }
        }
        preds
    }

    pub fn is_acyclic(self, g: &XGraph) -> bool {
        topological_order(&self.predecessors(g)).is_some()
    }

    /// Some internal vertex has all half-edges pointing in (or all out);
    /// ends point in when `x_i > 0`.
    pub fn has_sink_or_source(self, g: &XGraph, x: &[i64]) -> bool {
        let mut ins = vec![0usize; g.num_vertices()];
        let mut outs = vec![0usize; g.num_vertices()];
        for e in g.ends() {
            if x[e.label - 1] > 0 {
                ins[e.vertex] += 1;
            } else if x[e.label - 1] < 0 {
                outs[e.vertex] += 1;
            }
        }
        for e in 0..g.num_edges() {
            let (t, h) = self.directed(g, e);
            outs[t] += 1;
            ins[h] += 1;
        }
        (0..g.num_vertices()).any(|v| ins[v] == 0 || outs[v] == 0)
    }
}

fn topological_order(preds: &[u64]) -> Option<Vec<usize>> {
    let n = preds.len();
    let mut placed = 0u64;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = (0..n).find(|&v| placed >> v & 1 == 0 && preds[v] & !placed == 0)?;
        placed |= 1 << v;
        order.push(v);
    }
    Some(order)
}

/// Number of total orders of `0..preds.len()` in which every vertex comes
/// after all of its predecessors; 0 if the relation has a cycle.
pub fn count_linear_extensions(preds: &[u64]) -> u64 {
    let n = preds.len();
    assert!(n <= 24, "too many vertices for subset DP");
    let mut ways = vec![0u64; 1 << n];
    ways[0] = 1;
    for s in 0..(1usize << n) {
        let w = ways[s];
        if w == 0 {
            continue;
        }
        for v in 0..n {
            if s >> v & 1 == 0 && preds[v] & !(s as u64) == 0 {
                ways[s | 1 << v] += w;
            }
        }
    }
    ways[(1 << n) - 1]
}

/// `m(O)`: vertex orderings compatible with the orientation (0 if cyclic).
pub fn linear_extension_count(g: &XGraph, o: Orientation) -> u64 {
    count_linear_extensions(&o.predecessors(g))
}

/// Acyclic orientations without internal sink or source, where end `i`
/// points into the graph iff `x_i > 0`.
pub fn valid_orientations(g: &XGraph, x: &[i64]) -> Vec<Orientation> {
    (0..=g.all_edges())
        .map(Orientation)
        .filter(|o| !o.has_sink_or_source(g, x) && o.is_acyclic(g))
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct EnumerationOptions {
    /// Also produce graphs with loops or endless bridges (contribute zero).
    pub include_degenerate: bool,
}

type GraphCache = Mutex<HashMap<(usize, usize, EnumerationOptions), Arc<Vec<XGraph>>>>;

fn graph_cache() -> &'static GraphCache {
    static CACHE: OnceLock<GraphCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// One x-graph per isomorphism class (fixing end labels), in canonical form
/// and canonical order. Graphs with loops or endless bridges are skipped:
/// all their flows vanish on some edge.
pub fn enumerate_xgraphs(g: usize, n: usize) -> Result<Vec<XGraph>> {
    Ok(enumerate_xgraphs_with(g, n, EnumerationOptions::default())?.as_ref().clone())
}

pub fn enumerate_xgraphs_with(
    g: usize,
    n: usize,
    opts: EnumerationOptions,
) -> Result<Arc<Vec<XGraph>>> {
    if n < 2 {
        return Err(Error::invalid("need n ≥ 2 ends"));
    }
    if (g, n) == (0, 2) {
        return Err(Error::DegenerateCase { genus: 0, ends: 2 });
    }
    let r = 2 * g + n - 2;
    if r > 12 {
        return Err(Error::SizeLimit(format!("{r} internal vertices")));
    }
    let key = (g, n, opts);
    if let Some(v) = graph_cache().lock().get(&key) {
        return Ok(v.clone());
    }
    let graphs = Arc::new(generate(g, n, opts));
    graph_cache().lock().insert(key, graphs.clone());
    Ok(graphs)
}

/// Set partitions of `1..=n` into blocks of size ≤ `max_block`, blocks
/// sorted by their smallest label.
fn end_groupings(n: usize, max_block: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        next: usize,
        n: usize,
        max_block: usize,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if next > n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            if cur[b].len() < max_block {
                cur[b].push(next);
                rec(next + 1, n, max_block, cur, out);
                cur[b].pop();
            }
        }
        cur.push(vec![next]);
        rec(next + 1, n, max_block, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(1, n, max_block, &mut Vec::new(), &mut out);
    out
}

fn generate(g: usize, n: usize, opts: EnumerationOptions) -> Vec<XGraph> {
    let r = 2 * g + n - 2;
    let num_edges = 3 * g + n - 3;
    let mut seen: HashSet<XGraph> = HashSet::new();
    let mut result: BTreeSet<(Vec<End>, Vec<Edge>)> = BTreeSet::new();
    let max_block = if r == 1 { 3 } else { 2 };
    for groups in end_groupings(n, max_block) {
        if groups.len() > r {
            continue;
        }
        let mut cap = vec![3u8; r];
        let mut ends = Vec::with_capacity(n);
        for (v, grp) in groups.iter().enumerate() {
            cap[v] -= grp.len() as u8;
            for &l in grp {
                ends.push(End { label: l, vertex: v });
            }
        }
        let stubs: usize = cap.iter().map(|&c| c as usize).sum();
        if stubs != 2 * num_edges {
            continue;
        }
        let mut edges = Vec::with_capacity(num_edges);
        pair_stubs(&mut cap, &mut edges, opts.include_degenerate, &mut |edges| {
            let Ok(graph) = XGraph::new(g, ends.clone(), edges.to_vec()) else {
                return;
            };
            if !opts.include_degenerate && graph.is_degenerate() {
                return;
            }
            let canon = graph.canonical();
            if seen.insert(canon.clone()) {
                result.insert((canon.ends.clone(), canon.edges.clone()));
            }
        });
    }
    result
        .into_iter()
        .map(|(ends, edges)| XGraph::new(g, ends, edges).expect("generated graph is valid"))
        .collect()
}

/// All multisets of edges using up the remaining valence `cap`, emitted in
/// non-decreasing `(tail, head)` order so each multiset appears once.
fn pair_stubs(
    cap: &mut [u8],
    edges: &mut Vec<Edge>,
    allow_loops: bool,
    emit: &mut dyn FnMut(&[Edge]),
) {
    let Some(v) = cap.iter().position(|&c| c > 0) else {
        emit(edges);
        return;
    };
    let start = match edges.last() {
        Some(e) if e.tail == v => e.head,
        _ => v,
    };
    for w in start..cap.len() {
        if w == v {
            if !allow_loops || cap[v] < 2 {
                continue;
            }
            cap[v] -= 2;
        } else {
            if cap[w] == 0 {
                continue;
            }
            cap[v] -= 1;
            cap[w] -= 1;
        }
        edges.push(Edge { tail: v, head: w });
        pair_stubs(cap, edges, allow_loops, emit);
        edges.pop();
        if w == v {
            cap[v] += 2;
        } else {
            cap[v] += 1;
            cap[w] += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::wiener;

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_xgraphs(0, 3).unwrap().len(), 1);
        assert_eq!(enumerate_xgraphs(0, 4).unwrap().len(), 3);
        assert_eq!(enumerate_xgraphs(1, 2).unwrap().len(), 1);
        assert_eq!(enumerate_xgraphs(2, 2).unwrap().len(), 3);
        assert!(matches!(enumerate_xgraphs(0, 2), Err(Error::DegenerateCase { .. })));
    }

    #[test]
    fn genus_zero_counts_are_tree_counts() {
        // labelled trivalent trees: (2n-5)!!
        assert_eq!(enumerate_xgraphs(0, 5).unwrap().len(), 15);
        assert_eq!(enumerate_xgraphs(0, 6).unwrap().len(), 105);
    }

    #[test]
    fn wiener_basics() {
        let w = wiener();
        assert_eq!(automorphism_count(&w), 2);
        let v = valid_orientations(&w, &[3, -3]);
        assert_eq!(v, vec![Orientation(0)]);
        assert_eq!(valid_orientations(&w, &[-3, 3]), vec![Orientation(0b11)]);
        assert_eq!(linear_extension_count(&w, Orientation(0)), 1);
        assert_eq!(linear_extension_count(&w, Orientation(1)), 0);
    }

    #[test]
    fn canonical_is_label_preserving() {
        let w = wiener();
        let swapped = w.relabel_ends(&[2, 1]).unwrap();
        assert!(w.is_isomorphic(&swapped));
        let t = enumerate_xgraphs(0, 4).unwrap();
        assert!(!t[0].is_isomorphic(&t[1]));
    }

    #[test]
    fn degenerate_enumeration_is_larger() {
        let opts = EnumerationOptions { include_degenerate: true };
        assert!(enumerate_xgraphs_with(1, 2, opts).unwrap().len() > 1);
        assert!(enumerate_xgraphs_with(1, 2, opts).unwrap().iter().any(XGraph::has_loop));
    }

    #[test]
    fn antichain_extensions() {
        assert_eq!(count_linear_extensions(&[0, 0, 0, 0]), 24);
        assert_eq!(count_linear_extensions(&[0, 1, 2]), 1);
        assert_eq!(count_linear_extensions(&[2, 1]), 0);
    }

    #[test]
    fn json_round_trip() {
        for g in enumerate_xgraphs(1, 3).unwrap() {
            assert_eq!(XGraph::from_json(&g.to_json()).unwrap(), g);
        }
    }

    #[test]
    fn heap_permutations() {
        let mut seen = HashSet::new();
        for_each_permutation(4, |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 24);
    }
}
