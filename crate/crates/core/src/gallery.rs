//! Small named pairs that separate the algebraic classes.
//!
//! Each pair is `(f, g)` with `f ≺ g`; corners are written "y1y2...yn".

use crate::boolean_core::{MbfFunction, OrderedTuple, Sign};
use crate::ksystem::{Edge, KCollection, Node, WeightedRegulatoryNetwork};
use crate::rational::{q, qi};

fn pair(n: usize, f: &[&str], g: &[&str]) -> OrderedTuple {
    OrderedTuple::pair(
        MbfFunction::from_corners(n, f).expect("monotone"),
        MbfFunction::from_corners(n, g).expect("monotone"),
    )
    .expect("ordered")
}

/// Realized by `(z1+z2)*z3`, not by any sum.
pub fn product_not_sum() -> OrderedTuple {
    pair(3, &["101", "011", "111"], &["100", "010", "110", "101", "011", "111"])
}

/// Realized by `z1*z2+z3`, not by any product of sums.
pub fn sum_of_products_not_product() -> OrderedTuple {
    pair(3, &["110", "111"], &["001", "101", "011", "110", "111"])
}

/// Four inputs: realizable with a tabulated K but by no sum of products of
/// sums. Its floor in direction 4 is [`sum_of_products_not_product`].
pub fn tabulated_only() -> OrderedTuple {
    let white = ["1100", "1110", "1101", "0111", "1111"];
    let light = ["0010", "1010", "0110", "1001", "0011", "1011"];
    let g: Vec<&str> = white.iter().chain(light.iter()).copied().collect();
    pair(4, &white, &g)
}

/// Two nodes: 1 activates itself (threshold 3) and 2 (threshold 2), 2
/// represses 1 (threshold 3/2). Decays are 1.
pub fn two_node_network() -> WeightedRegulatoryNetwork {
    let node = |name: &str| Node { name: name.into(), decay: qi(1) };
    let edge = |source, target, sign, threshold| Edge { source, target, sign, threshold };
    WeightedRegulatoryNetwork::new(
        vec![node("1"), node("2")],
        vec![
            edge(0, 0, Sign::Activating, qi(3)),
            edge(0, 1, Sign::Activating, qi(2)),
            edge(1, 0, Sign::Repressing, q(3, 2)),
        ],
    )
    .expect("valid network")
}

/// Monotone K for [`two_node_network`]: node 1 gets 1/2, 6, 1/10, 5 for
/// no input, activator only, repressor only, both; node 2 gets 1/5, 2/5.
pub fn two_node_k() -> KCollection {
    KCollection { values: vec![vec![q(1, 2), qi(6), q(1, 10), qi(5)], vec![q(1, 5), q(2, 5)]] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean_core::Side;

    #[test]
    fn floor_of_four_input_pair() {
        let t = tabulated_only();
        let floor: Vec<MbfFunction> = t.functions().iter().map(|f| f.collapse(3, Side::Floor).unwrap()).collect();
        assert_eq!(floor, sum_of_products_not_product().functions());
    }

    #[test]
    fn hex_forms() {
        let p = product_not_sum();
        assert_eq!(p.functions()[0].to_string(), "mbf:3:e0");
        assert_eq!(p.functions()[1].to_string(), "mbf:3:ee");
    }
}
