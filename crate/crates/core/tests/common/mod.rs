#![allow(dead_code)]

use kswitch::boolean_core::{MbfFunction, OrderedTuple};
use kswitch::interaction::{InteractionStructure, PhiAssignment};
use kswitch::rational::{parse_q, qi, Q};
use kswitch::realizability::Witness;

/// Corner order of the columns in [`NOT_SUM_PAIRS`].
pub const COLUMNS: [&str; 8] = ["000", "001", "010", "100", "110", "101", "011", "111"];

/// The 18 pairs on three inputs that no sum realizes. Each cell is the
/// value of f then g at the corner of that column; the last field lists the
/// directions (1-based) in which the floor/ceiling slices are incomparable.
pub const NOT_SUM_PAIRS: [([&str; 8], &[usize]); 18] = [
    (["00", "01", "00", "01", "11", "01", "01", "11"], &[1]),
    (["00", "00", "01", "01", "01", "01", "11", "11"], &[2]),
    (["00", "01", "01", "00", "01", "11", "01", "11"], &[3]),
    (["00", "01", "01", "00", "11", "01", "01", "11"], &[2]),
    (["00", "01", "00", "01", "01", "01", "11", "11"], &[3]),
    (["00", "00", "01", "01", "01", "11", "01", "11"], &[1]),
    (["00", "01", "00", "00", "11", "01", "01", "11"], &[1, 2]),
    (["00", "00", "00", "01", "01", "01", "11", "11"], &[2, 3]),
    (["00", "00", "01", "00", "01", "11", "01", "11"], &[1, 3]),
    (["00", "01", "00", "01", "11", "01", "11", "11"], &[1, 3]),
    (["00", "00", "01", "01", "01", "11", "11", "11"], &[1, 2]),
    (["00", "01", "01", "00", "11", "11", "01", "11"], &[2, 3]),
    (["00", "01", "00", "00", "11", "01", "11", "11"], &[1]),
    (["00", "00", "00", "01", "01", "11", "11", "11"], &[2]),
    (["00", "00", "01", "00", "11", "11", "01", "11"], &[3]),
    (["00", "00", "00", "01", "11", "01", "11", "11"], &[1]),
    (["00", "00", "01", "00", "01", "11", "11", "11"], &[2]),
    (["00", "01", "00", "00", "11", "11", "01", "11"], &[3]),
];

/// Rows whose printed direction does not separate the slices, as
/// (row, printed direction, direction that does). Found by computing the
/// slice comparison for every row and direction.
pub const DIRECTION_ERRATA: [(usize, usize, usize); 3] = [(16, 1, 3), (17, 2, 1), (18, 3, 2)];

/// Witnesses for the same 18 pairs: structure, high values (low is 1),
/// threshold of g, threshold of f.
pub const NOT_SUM_WITNESSES: [(&str, [i64; 3], &str, &str); 18] = [
    ("z1z2+z3", [3, 2, 3], "3.5", "6.5"),
    ("z1+z2z3", [3, 3, 2], "3.5", "6.5"),
    ("z2+z1z3", [2, 3, 3], "3.5", "6.5"),
    ("z1z2+z3", [2, 3, 3], "3.5", "6.5"),
    ("z1+z2z3", [3, 2, 3], "3.5", "6.5"),
    ("z2+z1z3", [3, 3, 2], "3.5", "6.5"),
    ("z1z2+z3", [3, 3, 4], "4.5", "8"),
    ("z1+z2z3", [4, 3, 3], "4.5", "8"),
    ("z2+z1z3", [3, 4, 3], "4.5", "8"),
    ("z2(z1+z3)", [4, 2, 4], "4.5", "9"),
    ("z3(z1+z2)", [4, 4, 2], "4.5", "9"),
    ("z1(z2+z3)", [2, 4, 4], "4.5", "9"),
    ("z1z2+z3", [2, 3, 4], "4.5", "6.5"),
    ("z1+z2z3", [4, 2, 3], "4.5", "6.5"),
    ("z2+z1z3", [3, 4, 2], "4.5", "6.5"),
    ("z2(z1+z3)", [4, 2, 3], "4.5", "7.5"),
    ("z3(z1+z2)", [3, 4, 2], "4.5", "7.5"),
    ("z1(z2+z3)", [2, 3, 4], "4.5", "7.5"),
];

pub fn not_sum_pair(row: usize) -> OrderedTuple {
    let (cells, _) = NOT_SUM_PAIRS[row];
    let pick = |k: usize| -> Vec<&str> {
        COLUMNS.iter().zip(cells.iter()).filter(|(_, c)| c.as_bytes()[k] == b'1').map(|(col, _)| *col).collect()
    };
    let f = MbfFunction::from_corners(3, &pick(0)).expect("monotone");
    let g = MbfFunction::from_corners(3, &pick(1)).expect("monotone");
    OrderedTuple::pair(f, g).expect("ordered")
}

pub fn not_sum_witness(row: usize) -> Witness {
    let (text, high, theta_g, theta_f) = NOT_SUM_WITNESSES[row];
    Witness {
        structure: InteractionStructure::parse(text, 3).expect("structure"),
        phi: PhiAssignment::unit_low(high.iter().map(|h| qi(*h)).collect()).expect("phi"),
        thresholds: vec![parse_q(theta_f).unwrap(), parse_q(theta_g).unwrap()],
    }
}

/// Direct collapse of a truth set: keep corners with `y_var = bit`, drop `y_var`.
pub fn slice(f: &MbfFunction, var: usize, bit: usize) -> Vec<usize> {
    let n = f.n();
    (0..1usize << n)
        .filter(|v| v >> var & 1 == bit && f.value(*v))
        .map(|v| (v & ((1 << var) - 1)) | ((v >> (var + 1)) << var))
        .collect()
}

pub fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

pub fn rational(text: &str) -> Q {
    parse_q(text).unwrap()
}

pub mod props;
