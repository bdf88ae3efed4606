//! Grid search for witnesses of a fixed structure.
//!
//! Thresholds are never searched. For each grid point the corner values
//! are computed in scaled integers, and each threshold is put in the middle
//! of its separating gap; the result is then verified exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{verify_witness, Witness};
use crate::boolean_core::{MbfFunction, OrderedTuple};
use crate::interaction::{InteractionStructure, PhiAssignment};
use crate::rational::{q, qi, Q};

/// Grid of low/high values. Every variable has `low`; highs range over `highs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub low: Q,
    pub highs: Vec<Q>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            low: Q::one(),
            highs: vec![q(3, 2), qi(2), qi(3), q(31, 10), qi(4), q(41, 10), qi(5), qi(6)],
        }
    }
}

/// Thresholds in the middle of each separating gap, strictly decreasing.
/// Runs of equal functions share a gap and are spaced evenly inside it.
pub(crate) fn derive_thresholds(values: &[Q], functions: &[MbfFunction]) -> Option<Vec<Q>> {
    let mut gaps: Vec<(Q, Q)> = Vec::with_capacity(functions.len());
    for f in functions {
        let max_false = values.iter().enumerate().filter(|(v, _)| !f.value(*v)).map(|(_, x)| x).max();
        let min_true = values.iter().enumerate().filter(|(v, _)| f.value(*v)).map(|(_, x)| x).min();
        let gap = match (max_false, min_true) {
            (Some(a), Some(b)) if a < b => (a.clone(), b.clone()),
            (Some(_), Some(_)) => return None,
            (Some(a), None) => (a.clone(), a + qi(2)),
            (None, Some(b)) => (Q::zero(), b.clone()),
            (None, None) => return None,
        };
        gaps.push(gap);
    }
    let mut out = Vec::with_capacity(functions.len());
    let mut j = 0;
    while j < functions.len() {
        let mut r = 1;
        while j + r < functions.len() && functions[j + r] == functions[j] {
            r += 1;
        }
        let (a, b) = &gaps[j];
        for t in 0..r {
            out.push(a + (b - a) * qi((r - t) as i64) / qi(r as i64 + 1));
        }
        j += r;
    }
    if out.windows(2).any(|p| p[0] <= p[1]) {
        return None;
    }
    Some(out)
}

fn lcm_denominators(config: &SearchConfig) -> BigInt {
    config.highs.iter().chain(std::iter::once(&config.low)).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// First grid point (odometer order over used variables) that separates.
pub fn search_witness(tuple: &OrderedTuple, s: &InteractionStructure, config: &SearchConfig) -> Option<Witness> {
    search_counted(tuple, s, config).0
}

pub(crate) fn search_counted(tuple: &OrderedTuple, s: &InteractionStructure, config: &SearchConfig) -> (Option<Witness>, u64) {
    let n = tuple.n();
    if s.n() != n || config.highs.is_empty() {
        return (None, 0);
    }
    let highs: Vec<Q> = config.highs.iter().filter(|h| **h > config.low).cloned().collect();
    if highs.is_empty() || config.low <= Q::zero() {
        return (None, 0);
    }
    let dn = lcm_denominators(config);
    let scale = |x: &Q| -> Option<i128> { (x * Q::from_integer(dn.clone())).to_integer().to_i128() };
    let Some(z_low) = scale(&config.low) else { return (None, 0) };
    let Some(z_highs) = highs.iter().map(scale).collect::<Option<Vec<i128>>>() else {
        return (None, 0);
    };
    let degree = s.degree() as u32;
    let Some(dn_i) = dn.to_i128() else { return (None, 0) };
    let groups: Vec<(Vec<u16>, i128)> =
        s.groups().iter().map(|g| (g.clone(), dn_i.pow(degree - g.len() as u32))).collect();
    let support = s.support();
    let used: Vec<usize> = (0..n).filter(|i| support >> i & 1 == 1).collect();
    let corners = 1usize << n;
    let fns = tuple.functions();
    let mut choice = vec![0usize; used.len()];
    let mut tried = 0u64;
    let mut z_high = vec![z_highs[0]; n];
    let mut vals = vec![0i128; corners];
    loop {
        tried += 1;
        for (p, &i) in used.iter().enumerate() {
            z_high[i] = z_highs[choice[p]];
        }
        for (v, slot) in vals.iter_mut().enumerate() {
            let mut total = 0i128;
            for (blocks, mult) in &groups {
                let mut prod = *mult;
                for &b in blocks {
                    let mut sum = 0i128;
                    for i in 0..n {
                        if b >> i & 1 == 1 {
                            sum += if v >> i & 1 == 1 { z_high[i] } else { z_low };
                        }
                    }
                    prod *= sum;
                }
                total += prod;
            }
            *slot = total;
        }
        let separates = fns.iter().all(|f| {
            let mut max_false = i128::MIN;
            let mut min_true = i128::MAX;
            for (v, &x) in vals.iter().enumerate() {
                if f.value(v) {
                    min_true = min_true.min(x);
                } else {
                    max_false = max_false.max(x);
                }
            }
            max_false < min_true
        });
        if separates {
            let phi = PhiAssignment::new(
                vec![config.low.clone(); n],
                (0..n)
                    .map(|i| {
                        let p = used.iter().position(|&u| u == i);
                        p.map_or_else(|| highs[0].clone(), |p| highs[choice[p]].clone())
                    })
                    .collect(),
            )
            .expect("grid highs exceed low");
            let values = s.cube_values(&phi);
            if let Some(thresholds) = derive_thresholds(&values, fns) {
                let w = Witness { structure: s.clone(), phi, thresholds };
                if verify_witness(tuple, &w) == Ok(true) {
                    return (Some(w), tried);
                }
            }
        }
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < z_highs.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            return (None, tried);
        }
    }
}
