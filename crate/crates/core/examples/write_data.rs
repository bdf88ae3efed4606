//! Writes the two-node network and its K collection as JSON, the input
//! format of the `stg` and `pg` commands.
use kswitch::gallery::{two_node_k, two_node_network};

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "crates/core/examples/data".into());
    let net = two_node_network();
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(format!("{dir}/two_node_net.json"), net.to_json()).unwrap();
    std::fs::write(format!("{dir}/two_node_k.json"), two_node_k().to_json(&net)).unwrap();
    println!("wrote {dir}/two_node_net.json and {dir}/two_node_k.json");
}
