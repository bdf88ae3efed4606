use std::collections::BTreeSet;

use proptest::prelude::*;

use kswitch::boolean_core::{mbf_positive, MbfFunction, Sign, TruthTable};
use kswitch::gallery::{two_node_k, two_node_network};
use kswitch::ksystem::{
    build_stg, input_mask, k_to_mbfs, mbfs_to_k, phi_k, validate_k, Edge, KCollection, Node, StateSpace,
    WeightedRegulatoryNetwork,
};
use kswitch::paramgraph::build_parameter_graph;
use kswitch::rational::{q, qi, Q};

fn one_based(edges: &[(Vec<usize>, Vec<usize>)]) -> BTreeSet<((usize, usize), (usize, usize))> {
    edges.iter().map(|(a, b)| ((a[0] + 1, a[1] + 1), (b[0] + 1, b[1] + 1))).collect()
}

fn functions(net: &WeightedRegulatoryNetwork, k: &KCollection) -> Vec<Vec<MbfFunction>> {
    k_to_mbfs(net, k).unwrap().into_iter().map(|n| n.functions).collect()
}

#[test]
fn one_entry_change_gives_the_adjacent_collection() {
    let net = two_node_network();
    let k = two_node_k();
    let mut k2 = k.clone();
    // node 1 with neither input above: move from below 2 into (2, 3)
    k2.set(0, 0, q(5, 2));
    let before = k_to_mbfs(&net, &k).unwrap();
    let after = k_to_mbfs(&net, &k2).unwrap();
    let flips: u32 = before
        .iter()
        .zip(&after)
        .flat_map(|(a, b)| a.functions.iter().zip(&b.functions).map(|(f, g)| f.truth().xor(&g.truth()).count()))
        .sum();
    assert_eq!(flips, 1);
    assert_eq!(after[0].raw_table(1), TruthTable::from_corners(2, &["00", "10", "11"]).unwrap());
    let want: BTreeSet<_> = [
        ((2, 2), (1, 2)),
        ((2, 2), (2, 1)),
        ((1, 1), (2, 1)),
        ((1, 2), (1, 1)),
        ((2, 1), (2, 1)),
        ((3, 2), (3, 1)),
        ((3, 1), (3, 1)),
    ]
    .into_iter()
    .collect();
    assert_eq!(one_based(&build_stg(&phi_k(&net, &k2).unwrap()).edges), want);
    // and the two collections are neighbours in the parameter graph
    let pg = build_parameter_graph(&net).unwrap();
    let find = |fs: &[kswitch::ksystem::NodeFunctions]| {
        let coords: Vec<usize> = fs
            .iter()
            .zip(&pg.factors)
            .map(|(n, f)| f.vertices.iter().position(|v| *v == n.functions).unwrap())
            .collect();
        pg.index(&coords)
    };
    let (u, v) = (find(&before), find(&after));
    assert!(pg.edges().contains(&(u.min(v), u.max(v))));
}

#[test]
fn canonical_k_roundtrips_on_every_parameter_node() {
    let net = two_node_network();
    let pg = build_parameter_graph(&net).unwrap();
    for v in 0..pg.vertex_count() {
        let lists: Vec<Vec<MbfFunction>> =
            pg.coords(v).iter().zip(&pg.factors).map(|(c, f)| f.vertices[*c].clone()).collect();
        let (norm, k) = mbfs_to_k(&net, &lists).unwrap();
        assert!(validate_k(&norm, &k).unwrap().is_empty());
        assert_eq!(functions(&norm, &k), lists);
    }
    // the class of the example K keeps its map
    let lists = functions(&net, &two_node_k());
    let (norm, k) = mbfs_to_k(&net, &lists).unwrap();
    assert_eq!(phi_k(&norm, &k).unwrap().images, phi_k(&net, &two_node_k()).unwrap().images);
}

#[test]
fn map_commutes_with_target_points() {
    // pick a point inside every domain, compute its target directly, and
    // compare with the combinatorial map
    let net = two_node_network();
    let k = two_node_k();
    let phi = phi_k(&net, &k).unwrap();
    let space = StateSpace { dims: net.dims() };
    let axis = |i: usize| net.axis_thresholds(i);
    let point = |i: usize, d: usize| -> Q {
        let t = axis(i);
        match (d.checked_sub(1).map(|j| t[j].clone()), t.get(d).cloned()) {
            (None, Some(hi)) => hi / qi(2),
            (Some(lo), Some(hi)) => (lo + hi) / qi(2),
            (Some(lo), None) => lo + qi(1),
            (None, None) => qi(1),
        }
    };
    for d in space.states() {
        let x: Vec<Q> = d.iter().enumerate().map(|(i, c)| point(i, *c)).collect();
        for i in 0..net.len() {
            let sources = net.sources(i);
            let mask = sources.iter().enumerate().fold(0, |m, (bit, (j, _))| {
                let theta = &net.edges().iter().find(|e| e.source == *j && e.target == i).unwrap().threshold;
                if x[*j] > *theta {
                    m | 1 << bit
                } else {
                    m
                }
            });
            assert_eq!(mask, input_mask(&net, i, &d));
            let target = k.get(i, mask) / &net.nodes()[i].decay;
            let idx = axis(i).iter().filter(|t| **t < target).count();
            assert_eq!(phi.get(&d)[i], idx);
        }
    }
}

#[test]
fn stg_edges_are_loops_or_unit_moves() {
    let net = two_node_network();
    let phi = phi_k(&net, &two_node_k()).unwrap();
    let stg = build_stg(&phi);
    for d in stg.space.states() {
        let out: Vec<_> = stg.edges.iter().filter(|(a, _)| *a == d).collect();
        assert!(!out.is_empty());
        let fixed = phi.get(&d) == d.as_slice();
        assert_eq!(out.iter().any(|(a, b)| a == b), fixed);
        for (a, b) in out {
            let diff: usize = a.iter().zip(b).map(|(x, y)| x.abs_diff(*y)).sum();
            assert!(diff <= 1);
        }
    }
}

fn random_network(n: usize, edge_bits: u32, sign_bits: u32, decays: &[u8]) -> WeightedRegulatoryNetwork {
    let nodes = (0..n).map(|i| Node { name: format!("x{}", i + 1), decay: qi(decays[i] as i64 + 1) }).collect();
    let mut edges = Vec::new();
    let mut rank = vec![0i64; n];
    for s in 0..n {
        for t in 0..n {
            let bit = s * n + t;
            if edge_bits >> bit & 1 == 1 {
                rank[s] += 1;
                let sign = if sign_bits >> bit & 1 == 1 { Sign::Repressing } else { Sign::Activating };
                // thresholds with denominator 3 stay off the K grid below
                edges.push(Edge { source: s, target: t, sign, threshold: q(3 * rank[s] - 1, 3) });
            }
        }
    }
    WeightedRegulatoryNetwork::new(nodes, edges).unwrap()
}

/// Weighted sum of positive functions of the sign-corrected inputs: monotone.
fn random_k(net: &WeightedRegulatoryNetwork, seeds: &[u32]) -> KCollection {
    KCollection::from_fn(net, |i, y| {
        let signs = net.signs(i);
        let m = signs.0.len();
        let flipped = signs.0.iter().enumerate().fold(y, |v, (b, s)| if *s == Sign::Repressing { v ^ 1 << b } else { v });
        let all = mbf_positive(m);
        seeds
            .iter()
            .enumerate()
            .map(|(j, s)| if all[*s as usize % all.len()].value(flipped) { q((*s % 7) as i64 + 1, 2 + j as i64 % 2) } else { qi(0) })
            .sum()
    })
}

fn network_strategy() -> impl Strategy<Value = WeightedRegulatoryNetwork> {
    (2usize..=3, any::<u32>(), any::<u32>(), prop::collection::vec(0u8..4, 3))
        .prop_map(|(n, e, s, d)| random_network(n, e, s, &d))
        .prop_filter("at most four inputs", |net| (0..net.len()).all(|i| net.sources(i).len() <= 3))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn decay_normalization_keeps_the_graph(net in network_strategy(), seeds in prop::collection::vec(any::<u32>(), 1..4)) {
        let k = random_k(&net, &seeds);
        prop_assert!(validate_k(&net, &k).unwrap().is_empty());
        let normalized = net.gamma_normalize();
        match (phi_k(&net, &k), phi_k(&normalized, &k)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(build_stg(&a), build_stg(&b)),
            (Err(_), Err(_)) => {}
            other => prop_assert!(false, "one side degenerate: {:?}", other),
        }
    }

    #[test]
    fn equal_maps_iff_equal_functions(
        net in network_strategy(),
        a in prop::collection::vec(any::<u32>(), 1..4),
        b in prop::collection::vec(any::<u32>(), 1..4),
    ) {
        let (ka, kb) = (random_k(&net, &a), random_k(&net, &b));
        let (Ok(pa), Ok(pb)) = (phi_k(&net, &ka), phi_k(&net, &kb)) else { return Ok(()) };
        prop_assert_eq!(pa == pb, functions(&net, &ka) == functions(&net, &kb));
        // a copy nudged inside its class keeps both the map and the functions
        let nudged = KCollection { values: ka.values.iter().map(|r| r.iter().map(|v| v + q(1, 1000)).collect()).collect() };
        if let Ok(pn) = phi_k(&net, &nudged) {
            prop_assert_eq!(pn == pa, functions(&net, &nudged) == functions(&net, &ka));
        }
    }
}
