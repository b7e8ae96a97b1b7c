//! Integer flows on x-graphs: parametrisation by a spanning tree and
//! lattice-point sums over flow chambers.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{automorphism_count, count_linear_extensions, Orientation, XGraph};

/// `w'(e) = cycle · c + ends · x`, the flow along the reference direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineForm {
    pub cycle: Vec<i64>,
    pub ends: Vec<i64>,
}

impl AffineForm {
    pub fn constant(&self, x: &[i64]) -> i64 {
        self.ends.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn eval(&self, c: &[i64], x: &[i64]) -> i64 {
        self.constant(x) + self.cycle.iter().zip(c).map(|(a, b)| a * b).sum::<i64>()
    }
}

/// Parametrisation of all flows: the non-tree edges carry free cycle
/// coordinates and every tree edge is determined by conservation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowParam {
    pub spanning_tree: Vec<usize>,
    /// Non-tree edges; the `k`-th one carries cycle coordinate `c_k`.
    pub cycle_edges: Vec<usize>,
    pub forms: Vec<AffineForm>,
}

/// Edge weights signed relative to the reference orientation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Flow {
    pub weights: Vec<i64>,
}

impl Flow {
    /// Inflow equals outflow at every internal vertex, ends contributing `x_i`.
    pub fn is_conserved(&self, g: &XGraph, x: &[i64]) -> bool {
        let mut balance = vec![0i64; g.num_vertices()];
        for e in g.ends() {
            balance[e.vertex] += x[e.label - 1];
        }
        for (i, e) in g.edges().iter().enumerate() {
            balance[e.head] += self.weights[i];
            balance[e.tail] -= self.weights[i];
        }
        balance.iter().all(|&b| b == 0)
    }

    pub fn orientation(&self) -> Option<Orientation> {
        Orientation::from_signs(&self.weights)
    }

    pub fn weight_product(&self) -> BigInt {
        self.weights.iter().fold(BigInt::from(1), |acc, w| acc * w.abs())
    }
}

impl FlowParam {
    /// Breadth-first spanning tree from vertex 0, scanning edges in index order.
    pub fn new(g: &XGraph) -> FlowParam {
        let mut seen = vec![false; g.num_vertices()];
        let mut tree = Vec::new();
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for (i, e) in g.edges().iter().enumerate() {
                let w = if e.tail == v {
                    e.head
                } else if e.head == v {
                    e.tail
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    tree.push(i);
                    queue.push_back(w);
                }
            }
        }
        Self::with_tree(g, &tree).expect("BFS tree is a spanning tree")
    }

    /// Parametrisation relative to the given spanning tree.
    pub fn with_tree(g: &XGraph, tree: &[usize]) -> Result<FlowParam> {
        let nv = g.num_vertices();
        if tree.len() + 1 != nv {
            return Err(Error::invalid("spanning tree has the wrong number of edges"));
        }
        let mut in_tree = vec![false; g.num_edges()];
        for &e in tree {
            if e >= g.num_edges() || in_tree[e] {
                return Err(Error::invalid("bad spanning tree edge list"));
            }
            in_tree[e] = true;
        }
        // root the tree at 0
        let mut parent_edge = vec![usize::MAX; nv];
        let mut order = vec![0usize];
        let mut seen = vec![false; nv];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &e in tree {
                let (a, b) = endpoints(g, e);
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    parent_edge[w] = e;
                    order.push(w);
                }
            }
        }
        if order.len() != nv {
            return Err(Error::invalid("edge list is not a spanning tree"));
        }
        let cycle_edges: Vec<usize> = (0..g.num_edges()).filter(|&e| !in_tree[e]).collect();
        let genus = cycle_edges.len();
        let n = g.num_ends();
        let mut forms = vec![AffineForm { cycle: vec![0; genus], ends: vec![0; n] }; g.num_edges()];
        for (k, &e) in cycle_edges.iter().enumerate() {
            forms[e].cycle[k] = 1;
        }
        let mut subtree: Vec<Vec<bool>> = vec![vec![false; nv]; nv];
        for &v in order.iter().rev() {
            subtree[v][v] = true;
            if v != 0 {
                let e = parent_edge[v];
                let (a, b) = endpoints(g, e);
                let p = if a == v { b } else { a };
                let child = subtree[v].clone();
                for (u, inside) in child.iter().enumerate() {
                    if *inside {
                        subtree[p][u] = true;
                    }
                }
            }
        }
        for &v in &order[1..] {
            let e = parent_edge[v];
            let s = &subtree[v];
            // net inflow into the subtree from ends and cycle edges leaves via e
            let mut form = AffineForm { cycle: vec![0; genus], ends: vec![0; n] };
            for end in g.ends() {
                if s[end.vertex] {
                    form.ends[end.label - 1] += 1;
                }
            }
            for (k, &ce) in cycle_edges.iter().enumerate() {
                let edge = g.edge(ce);
                match (s[edge.tail], s[edge.head]) {
                    (false, true) => form.cycle[k] += 1,
                    (true, false) => form.cycle[k] -= 1,
                    _ => {}
                }
            }
            // form is the flow child → parent; flip if the reference says otherwise
            if g.edge(e).head == v && g.edge(e).tail != v {
                form.cycle.iter_mut().for_each(|c| *c = -*c);
                form.ends.iter_mut().for_each(|c| *c = -*c);
            }
            forms[e] = form;
        }
        Ok(FlowParam { spanning_tree: tree.to_vec(), cycle_edges, forms })
    }

    pub fn genus(&self) -> usize {
        self.cycle_edges.len()
    }

    pub fn evaluate(&self, c: &[i64], x: &[i64]) -> Flow {
        Flow { weights: self.forms.iter().map(|f| f.eval(c, x)).collect() }
    }

    /// Tree-routed flow: zero on every cycle edge.
    pub fn particular(&self, x: &[i64]) -> Flow {
        self.evaluate(&vec![0; self.genus()], x)
    }
}

fn endpoints(g: &XGraph, e: usize) -> (usize, usize) {
    let edge = g.edge(e);
    (edge.tail, edge.head)
}

/// `Σ_{x_i > 0} x_i`.
pub fn degree(x: &[i64]) -> i64 {
    x.iter().filter(|&&v| v > 0).sum()
}

/// Visit every cycle-coordinate vector in `[−d, d]^g` together with its flow.
fn for_each_box_point(param: &FlowParam, x: &[i64], mut f: impl FnMut(&[i64], &[i64])) {
    let g = param.genus();
    let d = degree(x);
    let base: Vec<i64> = param.forms.iter().map(|form| form.constant(x)).collect();
    let mut c = vec![-d; g];
    let mut w = vec![0i64; base.len()];
    loop {
        for (e, form) in param.forms.iter().enumerate() {
            w[e] = base[e] + form.cycle.iter().zip(&c).map(|(a, b)| a * b).sum::<i64>();
        }
        f(&c, &w);
        let mut k = 0;
        loop {
            if k == g {
                return;
            }
            if c[k] < d {
                c[k] += 1;
                break;
            }
            c[k] = -d;
            k += 1;
        }
    }
}

fn matches_orientation(o: Orientation, w: &[i64], allow_zero: bool) -> bool {
    w.iter().enumerate().all(|(e, &v)| {
        let s = o.edge_sign(e) * v;
        s > 0 || (allow_zero && s == 0)
    })
}

/// Interior lattice points of the flow chamber of `o` (all weights nonzero
/// with the prescribed signs). Only meaningful for bounded chambers.
pub fn lattice_flows(g: &XGraph, o: Orientation, x: &[i64]) -> Vec<Flow> {
    let param = FlowParam::new(g);
    let mut out = Vec::new();
    for_each_box_point(&param, x, |_, w| {
        if matches_orientation(o, w, false) {
            out.push(Flow { weights: w.to_vec() });
        }
    });
    out
}

/// `Σ_{flows in the chamber} ∏ |w(e)|`.
pub fn chamber_sum(g: &XGraph, o: Orientation, x: &[i64]) -> BigInt {
    chamber_sum_with(&FlowParam::new(g), o, x, false)
}

/// Chamber sum over the closed chamber (weights may vanish).
pub fn closed_chamber_sum(g: &XGraph, o: Orientation, x: &[i64]) -> BigInt {
    chamber_sum_with(&FlowParam::new(g), o, x, true)
}

pub fn chamber_sum_with(param: &FlowParam, o: Orientation, x: &[i64], closed: bool) -> BigInt {
    let mut acc = Accumulator::default();
    for_each_box_point(param, x, |_, w| {
        if matches_orientation(o, w, closed) {
            acc.add_product(1, w);
        }
    });
    acc.finish()
}

/// Exact integer accumulator: `i128` fast path, `BigInt` on overflow.
#[derive(Default)]
struct Accumulator {
    small: i128,
    big: BigInt,
}

impl Accumulator {
    fn add_product(&mut self, m: u64, w: &[i64]) {
        let mut p = m as i128;
        for &v in w {
            match p.checked_mul(v.unsigned_abs() as i128) {
                Some(q) => p = q,
                None => {
                    let big = w.iter().fold(BigInt::from(m), |a, v| a * v.abs());
                    self.big += big;
                    return;
                }
            }
        }
        match self.small.checked_add(p) {
            Some(s) => self.small = s,
            None => {
                self.big += BigInt::from(self.small) + BigInt::from(p);
                self.small = 0;
            }
        }
    }

    fn finish(self) -> BigInt {
        self.big + BigInt::from(self.small)
    }
}

/// A graph together with everything needed to evaluate `S_Γ(x)` quickly.
pub struct PreparedGraph {
    pub graph: XGraph,
    pub param: FlowParam,
    pub automorphisms: u64,
    m_cache: RwLock<HashMap<u64, u64>>,
}

impl PreparedGraph {
    pub fn new(graph: XGraph) -> PreparedGraph {
        let param = FlowParam::new(&graph);
        let automorphisms = automorphism_count(&graph);
        PreparedGraph { graph, param, automorphisms, m_cache: RwLock::new(HashMap::new()) }
    }

    /// `m(O)`, memoised.
    pub fn multiplicity(&self, o: Orientation) -> u64 {
        if let Some(&m) = self.m_cache.read().get(&o.0) {
            return m;
        }
        let m = count_linear_extensions(&o.predecessors(&self.graph));
        self.m_cache.write().insert(o.0, m);
        m
    }

    /// `Σ_O m(O) · chamber_sum(O, x)` (before dividing by |Aut|).
    pub fn weighted_sum(&self, x: &[i64]) -> BigInt {
        let mut local: HashMap<u64, u64> = HashMap::new();
        let mut acc = Accumulator::default();
        for_each_box_point(&self.param, x, |_, w| {
            if w.contains(&0) {
                return;
            }
            let mut mask = 0u64;
            for (e, &v) in w.iter().enumerate() {
                if v < 0 {
                    mask |= 1 << e;
                }
            }
            let m = *local
                .entry(mask)
                .or_insert_with(|| self.multiplicity(Orientation(mask)));
            if m != 0 {
                acc.add_product(m, w);
            }
        });
        acc.finish()
    }

    /// `S_Γ(x)`.
    pub fn contribution(&self, x: &[i64]) -> BigRational {
        BigRational::new(self.weighted_sum(x), BigInt::from(self.automorphisms))
    }

    /// Chamber sums of all bounded chambers with at least one lattice point.
    pub fn chamber_sums(&self, x: &[i64]) -> BTreeMap<Orientation, BigInt> {
        let mut sums: BTreeMap<Orientation, BigInt> = BTreeMap::new();
        for_each_box_point(&self.param, x, |_, w| {
            if let Some(o) = Orientation::from_signs(w) {
                if self.multiplicity(o) > 0 {
                    let p = w.iter().fold(BigInt::from(1), |a, v| a * v.abs());
                    *sums.entry(o).or_insert_with(BigInt::zero) += p;
                }
            }
        });
        sums
    }
}

/// `S_Γ(x) = (1/|Aut Γ|) Σ_O m(O) · chamber_sum(Γ, O, x)`.
pub fn graph_contribution(g: &XGraph, x: &[i64]) -> BigRational {
    PreparedGraph::new(g.clone()).contribution(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_xgraphs, valid_orientations, Edge, End};
    use crate::rational::ratio;

    fn wiener() -> XGraph {
        XGraph::new(
            1,
            vec![End { label: 1, vertex: 0 }, End { label: 2, vertex: 1 }],
            vec![Edge { tail: 0, head: 1 }, Edge { tail: 0, head: 1 }],
        )
        .unwrap()
    }

    #[test]
    fn wiener_flows() {
        let w = wiener();
        let flows = lattice_flows(&w, Orientation(0), &[3, -3]);
        assert_eq!(flows.len(), 2);
        assert!(flows.iter().all(|f| f.is_conserved(&w, &[3, -3])));
        assert!(lattice_flows(&w, Orientation(0), &[1, -1]).is_empty());
        assert_eq!(chamber_sum(&w, Orientation(0), &[3, -3]), BigInt::from(4));
        assert_eq!(graph_contribution(&w, &[3, -3]), ratio(2, 1));
    }

    #[test]
    fn genus_zero_forms_are_tree_routing() {
        for g in enumerate_xgraphs(0, 5).unwrap() {
            let p = FlowParam::new(&g);
            assert_eq!(p.genus(), 0);
            let x = [3, 1, -2, 5, -7];
            assert!(p.particular(&x).is_conserved(&g, &x));
            // several orientations can be sink/source free, but only the
            // tree-routed one carries a flow
            let realised = valid_orientations(&g, &x)
                .into_iter()
                .filter(|o| !lattice_flows(&g, *o, &x).is_empty())
                .count();
            assert_eq!(realised, 1);
        }
    }

    #[test]
    fn star_contributes_one() {
        let g = &enumerate_xgraphs(0, 3).unwrap()[0];
        assert_eq!(graph_contribution(g, &[2, 1, -3]), ratio(1, 1));
    }

    #[test]
    fn accumulator_overflow_falls_back() {
        let mut acc = Accumulator::default();
        let big = [i64::MAX, i64::MAX, i64::MAX];
        acc.add_product(3, &big);
        acc.add_product(1, &[2]);
        let expect = BigInt::from(i64::MAX).pow(3) * 3 + 2;
        assert_eq!(acc.finish(), expect);
    }
}
