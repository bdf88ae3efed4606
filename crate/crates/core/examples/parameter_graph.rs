//! Parameter graph of the two-node network with sum annotations.
use kswitch::gallery::two_node_network;
use kswitch::paramgraph::{annotate_realizability, build_parameter_graph};
use kswitch::ClassTag;

fn main() {
    let pg = build_parameter_graph(&two_node_network()).unwrap();
    for (name, f) in pg.names.iter().zip(&pg.factors) {
        println!("node {name}: {} inputs, {} thresholds, {} vertices, {} edges", f.inputs, f.outputs, f.vertices.len(), f.edges.len());
    }
    println!("product: {} vertices, {} edges", pg.vertex_count(), pg.edges().len());
    let a = annotate_realizability(&pg, ClassTag::Sigma).unwrap();
    for i in 0..pg.factors.len() {
        println!("factor {i} sum counts: {:?}", a.counts(i));
    }
}
