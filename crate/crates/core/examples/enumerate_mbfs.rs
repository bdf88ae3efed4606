//! Counts positive monotone functions and ordered pairs for small n.
use kswitch::boolean_core::{corner_string, enumerate_ordered_pairs, mbf_positive};

fn main() {
    for n in 0..=4 {
        let pairs = enumerate_ordered_pairs(n).unwrap().len();
        println!("n = {n}: {} functions, {pairs} ordered pairs", mbf_positive(n).len());
    }
    println!("\nfunctions on two inputs, as true corners:");
    for f in mbf_positive(2) {
        let corners: Vec<String> = (0..4).filter(|v| f.value(*v)).map(|v| corner_string(2, v)).collect();
        println!("  {f}  {{{}}}", corners.join(","));
    }
}
