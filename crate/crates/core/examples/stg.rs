//! Phi^K and the state transition graph of the two-node network, and what
//! one parameter change does to it.
use kswitch::gallery::{two_node_k, two_node_network};
use kswitch::ksystem::{build_stg, k_to_mbfs, phi_k};
use kswitch::rational::q;

fn main() {
    let net = two_node_network();
    let k = two_node_k();
    for nf in k_to_mbfs(&net, &k).unwrap() {
        let fs: Vec<String> = nf.functions.iter().map(|f| f.to_string()).collect();
        println!("node {}: {}", net.nodes()[nf.node].name, fs.join(" < "));
    }
    let stg = build_stg(&phi_k(&net, &k).unwrap());
    print!("{}", stg.to_dot());

    let mut k2 = k.clone();
    k2.set(0, 0, q(5, 2));
    println!("\nafter raising K for node 1 with no inputs above to 5/2:");
    print!("{}", build_stg(&phi_k(&net, &k2).unwrap()));
}
