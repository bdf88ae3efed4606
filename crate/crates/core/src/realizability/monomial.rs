//! Monomial-linearization certificates for a fixed structure.
//!
//! Each required separation `Lambda(phi(b)) - Lambda(phi(a)) > 0` is a
//! homogeneous polynomial in the lows `l_i` and highs `u_i`. Together with
//! products of the elementary facts `l_i > 0` and `u_i - l_i > 0` they form
//! a strict homogeneous system once every monomial is treated as its own
//! unknown. By Gordan's alternative that system is infeasible exactly when
//! a non-negative, non-zero combination of the rows vanishes identically;
//! such a combination rules the structure out for the original problem too.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::boolean_core::OrderedTuple;
use crate::interaction::InteractionStructure;
use crate::lp::find_null_combination;
use crate::rational::{qi, Q};

/// Multilinear monomial: variables taken at their low value, at their high value.
type Monomial = (u16, u16);
type Poly = BTreeMap<Monomial, i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "row", rename_all = "snake_case")]
pub enum MonomialRow {
    /// `Lambda(phi(high)) - Lambda(phi(low)) > 0`, required by function `func`.
    Separation { func: usize, low: usize, high: usize },
    /// `prod_{i in lows} l_i * prod_{i in gaps} (u_i - l_i) > 0`.
    Fact { lows: u16, gaps: u16 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialCertificate {
    pub structure: InteractionStructure,
    pub rows: Vec<MonomialRow>,
    #[serde(with = "crate::rational::serde_q_vec")]
    pub multipliers: Vec<Q>,
}

fn corner_poly(s: &InteractionStructure, v: usize) -> Poly {
    let mut out = Poly::new();
    for g in s.groups() {
        let mut terms: Vec<Monomial> = vec![(0, 0)];
        for &b in g {
            let mut next = Vec::new();
            for &(l, u) in &terms {
                for i in 0..16 {
                    if b >> i & 1 == 1 {
                        let bit = 1u16 << i;
                        next.push(if v >> i & 1 == 1 { (l, u | bit) } else { (l | bit, u) });
                    }
                }
            }
            terms = next;
        }
        for t in terms {
            *out.entry(t).or_insert(0) += 1;
        }
    }
    out
}

fn fact_poly(lows: u16, gaps: u16) -> Poly {
    let mut out = Poly::new();
    let gap_vars: Vec<u16> = (0..16).filter(|i| gaps >> i & 1 == 1).map(|i| 1u16 << i).collect();
    for choice in 0u32..1 << gap_vars.len() {
        let mut l = lows;
        let mut u = 0u16;
        let mut sign = 1i64;
        for (k, &bit) in gap_vars.iter().enumerate() {
            if choice >> k & 1 == 1 {
                u |= bit;
            } else {
                l |= bit;
                sign = -sign;
            }
        }
        *out.entry((l, u)).or_insert(0) += sign;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn row_poly(s: &InteractionStructure, row: &MonomialRow) -> Poly {
    match *row {
        MonomialRow::Separation { low, high, .. } => {
            let mut p = corner_poly(s, high);
            for (m, c) in corner_poly(s, low) {
                *p.entry(m).or_insert(0) -= c;
            }
            p.retain(|_, c| *c != 0);
            p
        }
        MonomialRow::Fact { lows, gaps } => fact_poly(lows, gaps),
    }
}

fn rows_for(tuple: &OrderedTuple, s: &InteractionStructure) -> Vec<MonomialRow> {
    let n = tuple.n();
    let mut rows = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (j, f) in tuple.functions().iter().enumerate() {
        for low in f.false_set() {
            for high in f.true_set() {
                if seen.insert((low, high)) {
                    rows.push(MonomialRow::Separation { func: j, low, high });
                }
            }
        }
    }
    let support = s.support();
    let degree = s.degree();
    for vars in 1u16..1 << n {
        let size = vars.count_ones() as usize;
        if vars & !support != 0 || size > degree {
            continue;
        }
        // split the chosen variables between the two facts
        let mut gaps = vars;
        loop {
            rows.push(MonomialRow::Fact { lows: vars & !gaps, gaps });
            if gaps == 0 {
                break;
            }
            gaps = (gaps - 1) & vars;
        }
    }
    rows
}

/// Degree-bounded linearization test; `Some` when the structure is ruled out.
pub fn monomial_certificate(tuple: &OrderedTuple, s: &InteractionStructure) -> Option<MonomialCertificate> {
    if s.n() != tuple.n() {
        return None;
    }
    let rows = rows_for(tuple, s);
    let polys: Vec<Poly> = rows.iter().map(|r| row_poly(s, r)).collect();
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in &polys {
        for m in p.keys() {
            let next = index.len();
            index.entry(*m).or_insert(next);
        }
    }
    let vectors: Vec<Vec<Q>> = polys
        .iter()
        .map(|p| {
            let mut v = vec![Q::zero(); index.len()];
            for (m, c) in p {
                v[index[m]] = qi(*c);
            }
            v
        })
        .collect();
    let y = find_null_combination(&vectors)?;
    let (rows, multipliers) = rows.into_iter().zip(y).filter(|(_, y)| !y.is_zero()).unzip();
    Some(MonomialCertificate { structure: s.clone(), rows, multipliers })
}

impl MonomialCertificate {
    pub fn replay(&self, tuple: &OrderedTuple) -> bool {
        let n = tuple.n();
        let s = &self.structure;
        if s.n() != n || self.rows.len() != self.multipliers.len() || self.rows.is_empty() {
            return false;
        }
        if self.multipliers.iter().any(|y| !y.is_positive()) {
            return false;
        }
        let mask = ((1u32 << n) - 1) as u16;
        let rows_ok = self.rows.iter().all(|r| match *r {
            MonomialRow::Separation { func, low, high } => tuple
                .functions()
                .get(func)
                .is_some_and(|f| low < 1 << n && high < 1 << n && !f.value(low) && f.value(high)),
            MonomialRow::Fact { lows, gaps } => lows & gaps == 0 && (lows | gaps) != 0 && (lows | gaps) & !mask == 0,
        });
        if !rows_ok {
            return false;
        }
        let mut total: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (r, y) in self.rows.iter().zip(&self.multipliers) {
            for (m, c) in row_poly(s, r) {
                *total.entry(m).or_insert_with(Q::zero) += y * qi(c);
            }
        }
        total.values().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fact_expansion() {
        // (u1 - l1)(u2 - l2) = u1u2 - u1l2 - l1u2 + l1l2
        let p = fact_poly(0, 0b11);
        assert_eq!(p.len(), 4);
        assert_eq!(p[&(0, 0b11)], 1);
        assert_eq!(p[&(0b11, 0)], 1);
        assert_eq!(p[&(0b10, 0b01)], -1);
    }

    #[test]
    fn corner_expansion() {
        let s = InteractionStructure::parse("(z1+z2)*z3", 3).unwrap();
        // corner 111: (u1+u2)u3
        let p = corner_poly(&s, 7);
        assert_eq!(p.len(), 2);
        assert_eq!(p[&(0, 0b101)], 1);
        assert_eq!(p[&(0, 0b110)], 1);
    }
}
