use hurwitz_core::fixtures;
use hurwitz_core::*;

#[test]
fn enumeration_counts() {
    assert_eq!(enumerate_xgraphs(0, 3).unwrap().len(), 1);
    assert_eq!(enumerate_xgraphs(0, 4).unwrap().len(), 3);
    assert_eq!(enumerate_xgraphs(1, 2).unwrap().len(), 1);
    assert_eq!(enumerate_xgraphs(2, 2).unwrap().len(), 3);
}

#[test]
fn enumerated_graphs_are_pairwise_non_isomorphic() {
    let gs = enumerate_xgraphs(1, 3).unwrap();
    for (i, a) in gs.iter().enumerate() {
        for b in &gs[i + 1..] {
            assert!(!a.is_isomorphic(b));
        }
    }
}

#[test]
fn fixtures_occur_in_enumeration() {
    assert!(enumerate_xgraphs(1, 2).unwrap()[0].is_isomorphic(&fixtures::wiener()));
    let g24 = enumerate_xgraphs(2, 4).unwrap();
    assert!(g24.iter().any(|g| g.is_isomorphic(&fixtures::single_cut_graph())));
    assert!(g24.iter().any(|g| g.is_isomorphic(&fixtures::bridged_graph())));
    let g14 = enumerate_xgraphs(1, 4).unwrap();
    assert!(g14.iter().any(|g| g.is_isomorphic(&fixtures::double_edge_chain())));
}

#[test]
fn wiener_orientations() {
    let w = fixtures::wiener();
    assert_eq!(automorphism_count(&w), 2);
    assert_eq!(valid_orientations(&w, &[3, -3]), vec![Orientation(0)]);
    assert_eq!(linear_extension_count(&w, Orientation(0)), 1);
    assert_eq!(linear_extension_count(&w, Orientation(1)), 0);
}

#[test]
fn bridged_graph_chamber_multiplicity() {
    // the chamber with two interchangeable vertices
    let g = fixtures::bridged_graph();
    assert_eq!(linear_extension_count(&g, fixtures::BRIDGED_APPEARING[1]), 2);
}

#[test]
fn json_and_dot() {
    let g = fixtures::single_cut_graph();
    assert_eq!(XGraph::from_json(&g.to_json()).unwrap(), g);
    let dot = g.to_dot("g", Some(fixtures::SINGLE_CUT_CHAMBER));
    assert!(dot.starts_with("digraph g {"));
    assert_eq!(dot.matches("->").count(), g.num_edges() + g.num_ends());
}
