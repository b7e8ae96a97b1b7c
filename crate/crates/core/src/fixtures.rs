//! Small explicit graphs used as fixtures in tests, the CLI and the
//! acceptance suite.

use crate::graph::{Edge, End, Orientation, XGraph};
use crate::subset::EndSubset;

fn build(genus: usize, ends: &[(usize, usize)], edges: &[(usize, usize)]) -> XGraph {
    XGraph::new(
        genus,
        ends.iter().map(|&(label, vertex)| End { label, vertex }).collect(),
        edges.iter().map(|&(tail, head)| Edge { tail, head }).collect(),
    )
    .expect("fixture graphs are valid")
}

/// Genus one, two ends joined by a pair of parallel edges.
pub fn wiener() -> XGraph {
    build(1, &[(1, 0), (2, 1)], &[(0, 1), (0, 1)])
}

/// Ends 1, 2 on one vertex, ends 3, 4 on another, joined through a double
/// edge: `p → v ⇉ w → q`.
pub fn double_edge_chain() -> XGraph {
    build(1, &[(1, 0), (2, 0), (3, 3), (4, 3)], &[(0, 1), (1, 2), (1, 2), (2, 3)])
}

/// Genus two, four ends on distinct vertices. For the wall `{1, 3}` the
/// chamber [`SINGLE_CUT_CHAMBER`] appears, has exactly one nonempty cut
/// (three edges), multiplicity 5 and wall-crossing coefficient 20.
pub fn single_cut_graph() -> XGraph {
    build(
        2,
        &[(1, 0), (2, 1), (3, 2), (4, 3)],
        &[(0, 3), (0, 5), (1, 2), (1, 4), (2, 5), (3, 4), (4, 5)],
    )
}

pub const SINGLE_CUT_CHAMBER: Orientation = Orientation(92);

/// Genus two with ends 1 and 3 on one vertex, so the bridge at that vertex
/// carries `x1 + x3`. For the wall `{1, 3}` it has four appearing and four
/// vanishing bounded chambers.
pub fn bridged_graph() -> XGraph {
    build(
        2,
        &[(1, 0), (2, 1), (3, 0), (4, 2)],
        &[(0, 5), (1, 2), (1, 4), (2, 3), (3, 4), (3, 5), (4, 5)],
    )
}

pub fn bridged_wall() -> EndSubset {
    EndSubset::from_labels(&[1, 3])
}

/// Appearing chambers `A, B, C, D` and vanishing chambers `E, F, G, H` of
/// [`bridged_graph`], for which `∇*A = F − G`, `∇*B = E − G + H`,
/// `∇*C = −G + H` and `∇*D = H`.
pub const BRIDGED_APPEARING: [Orientation; 4] =
    [Orientation(126), Orientation(110), Orientation(102), Orientation(70)];
pub const BRIDGED_VANISHING: [Orientation; 4] =
    [Orientation(19), Orientation(3), Orientation(7), Orientation(71)];
