//! Exact rational linear feasibility.
//!
//! Two tools: Fourier-Motzkin elimination for small systems `A x <= b`
//! (returns a point or Farkas multipliers), and a Phase-I simplex with
//! Bland's rule for the homogeneous alternative `y >= 0, sum y = 1,
//! sum_r y_r v_r = 0`.

use num_traits::{One, Signed, Zero};

use crate::rational::{qi, Q};

/// One inequality `coeffs . x <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ineq {
    pub coeffs: Vec<Q>,
    pub rhs: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FmOutcome {
    Feasible(Vec<Q>),
    /// Non-negative multipliers over the input rows with `y A = 0`, `y b < 0`.
    Infeasible(Vec<Q>),
}

#[derive(Clone, Debug)]
struct WorkRow {
    coeffs: Vec<Q>,
    rhs: Q,
    origin: Vec<Q>,
}

impl WorkRow {
    fn support(&self) -> usize {
        self.origin.iter().filter(|y| !y.is_zero()).count()
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    // scale so the largest |coefficient| is 1
    fn normalize(&mut self) {
        let scale = self.coeffs.iter().map(|c| c.abs()).max();
        if let Some(s) = scale.filter(|s| !s.is_zero()) {
            for c in self.coeffs.iter_mut() {
                *c /= &s;
            }
            self.rhs /= &s;
            for y in self.origin.iter_mut() {
                *y /= &s;
            }
        }
    }
}

fn dedup(rows: Vec<WorkRow>) -> Vec<WorkRow> {
    let mut out: Vec<WorkRow> = Vec::with_capacity(rows.len());
    for r in rows {
        if let Some(k) = out.iter().position(|o| o.coeffs == r.coeffs) {
            if r.rhs < out[k].rhs || (r.rhs == out[k].rhs && r.support() < out[k].support()) {
                out[k] = r;
            }
        } else {
            out.push(r);
        }
    }
    out
}

/// Decides `A x <= b` exactly.
pub fn fourier_motzkin(rows: &[Ineq], nvars: usize) -> FmOutcome {
    let m = rows.len();
    let mut work: Vec<WorkRow> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut origin = vec![Q::zero(); m];
            origin[i] = Q::one();
            let mut w = WorkRow { coeffs: r.coeffs.clone(), rhs: r.rhs.clone(), origin };
            w.normalize();
            w
        })
        .collect();
    let mut remaining: Vec<usize> = (0..nvars).collect();
    // rows touching each eliminated variable, kept for back-substitution
    let mut history: Vec<(usize, Vec<WorkRow>)> = Vec::new();
    let mut eliminated = 0usize;

    loop {
        if let Some(bad) = work.iter().find(|r| r.is_trivial() && r.rhs.is_negative()) {
            return FmOutcome::Infeasible(bad.origin.clone());
        }
        work.retain(|r| !r.is_trivial());
        work = dedup(work);
        if remaining.is_empty() {
            break;
        }
        let (pos, &var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let p = work.iter().filter(|r| r.coeffs[v].is_positive()).count();
                let n = work.iter().filter(|r| r.coeffs[v].is_negative()).count();
                (p * n) as i64 - (p + n) as i64
            })
            .unwrap();
        remaining.remove(pos);
        eliminated += 1;
        let (touch, rest): (Vec<WorkRow>, Vec<WorkRow>) = work.into_iter().partition(|r| !r.coeffs[var].is_zero());
        let mut next = rest;
        for p in touch.iter().filter(|r| r.coeffs[var].is_positive()) {
            for n in touch.iter().filter(|r| r.coeffs[var].is_negative()) {
                let a = -&n.coeffs[var];
                let b = p.coeffs[var].clone();
                let origin: Vec<Q> = p.origin.iter().zip(&n.origin).map(|(x, y)| &a * x + &b * y).collect();
                let mut row = WorkRow {
                    coeffs: p.coeffs.iter().zip(&n.coeffs).map(|(x, y)| &a * x + &b * y).collect(),
                    rhs: &a * &p.rhs + &b * &n.rhs,
                    origin,
                };
                row.coeffs[var] = Q::zero();
                // Chernikov: a combination of more than k+1 originals after k
                // eliminations is implied by the others
                if row.support() > eliminated + 1 {
                    continue;
                }
                row.normalize();
                next.push(row);
            }
        }
        history.push((var, touch));
        work = next;
    }

    let mut x = vec![Q::zero(); nvars];
    for (var, touch) in history.iter().rev() {
        let mut lo: Option<Q> = None;
        let mut hi: Option<Q> = None;
        for r in touch {
            let mut slack = r.rhs.clone();
            for (j, c) in r.coeffs.iter().enumerate() {
                if j != *var && !c.is_zero() {
                    slack -= c * &x[j];
                }
            }
            let bound = slack / &r.coeffs[*var];
            if r.coeffs[*var].is_positive() {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            } else {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            }
        }
        x[*var] = match (lo, hi) {
            (Some(l), Some(h)) => {
                let c = l.ceil();
                if c <= h {
                    c
                } else {
                    (l + h) / qi(2)
                }
            }
            (Some(l), None) => l.ceil() + Q::one(),
            (None, Some(h)) => h.floor() - Q::one(),
            (None, None) => Q::zero(),
        };
    }
    FmOutcome::Feasible(x)
}

/// Checks `y >= 0`, `y A = 0`, `y b < 0`.
pub fn check_farkas(rows: &[Ineq], nvars: usize, y: &[Q]) -> bool {
    if y.len() != rows.len() || y.iter().any(Signed::is_negative) {
        return false;
    }
    for j in 0..nvars {
        let s: Q = rows.iter().zip(y).map(|(r, yi)| yi * &r.coeffs[j]).sum();
        if !s.is_zero() {
            return false;
        }
    }
    let b: Q = rows.iter().zip(y).map(|(r, yi)| yi * &r.rhs).sum();
    b.is_negative()
}

pub fn satisfies(rows: &[Ineq], x: &[Q]) -> bool {
    rows.iter().all(|r| {
        let lhs: Q = r.coeffs.iter().zip(x).map(|(c, v)| c * v).sum();
        lhs <= r.rhs
    })
}

/// Finds `y >= 0` with `sum y = 1` and `sum_r y_r vectors[r] = 0`, if any.
/// All vectors must share one length.
pub fn find_null_combination(vectors: &[Vec<Q>]) -> Option<Vec<Q>> {
    let k = vectors.len();
    if k == 0 {
        return None;
    }
    let dim = vectors[0].len();
    // equality rows: each coordinate, then the normalization row
    let mut a: Vec<Vec<Q>> = (0..dim).map(|d| vectors.iter().map(|v| v[d].clone()).collect()).collect();
    let mut b: Vec<Q> = vec![Q::zero(); dim];
    a.push(vec![Q::one(); k]);
    b.push(Q::one());
    phase_one(a, b)
}

/// Phase-I simplex on `A y = b, y >= 0`. Returns a feasible `y` or `None`.
fn phase_one(a: Vec<Vec<Q>>, b: Vec<Q>) -> Option<Vec<Q>> {
    let m = a.len();
    let k = a.first().map_or(0, Vec::len);
    let total = k + m;
    // tableau rows: [A | I | b] with b >= 0
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for (i, (mut row, mut rhs)) in a.into_iter().zip(b).enumerate() {
        if rhs.is_negative() {
            row.iter_mut().for_each(|c| *c = -c.clone());
            rhs = -rhs;
        }
        let mut full = row;
        full.extend((0..m).map(|j| if i == j { Q::one() } else { Q::zero() }));
        full.push(rhs);
        t.push(full);
    }
    let mut basis: Vec<usize> = (k..total).collect();
    // objective: minimize sum of artificials, reduced costs over all columns
    let mut cost = vec![Q::zero(); total + 1];
    for row in &t {
        for j in 0..k {
            cost[j] -= &row[j];
        }
        cost[total] -= &row[total];
    }
    loop {
        // Bland: smallest index with negative reduced cost
        let Some(enter) = (0..total).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[total] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave?;
        let piv = t[r][enter].clone();
        for c in t[r].iter_mut() {
            *c /= &piv;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (c, p) in row.iter_mut().zip(&pivot_row) {
                    *c -= &f * p;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (c, p) in cost.iter_mut().zip(&pivot_row) {
                *c -= &f * p;
            }
        }
        basis[r] = enter;
    }
    if !cost[total].is_zero() {
        return None;
    }
    let mut y = vec![Q::zero(); k];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < k {
            y[bv] = t[i][total].clone();
        }
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn ineq(c: &[i64], r: i64) -> Ineq {
        Ineq { coeffs: c.iter().map(|&x| qi(x)).collect(), rhs: qi(r) }
    }

    #[test]
    fn feasible_box() {
        let rows = vec![ineq(&[1, 0], 3), ineq(&[-1, 0], -1), ineq(&[0, 1], 2), ineq(&[1, 1], 4), ineq(&[0, -1], 0)];
        match fourier_motzkin(&rows, 2) {
            FmOutcome::Feasible(x) => assert!(satisfies(&rows, &x)),
            FmOutcome::Infeasible(_) => panic!("should be feasible"),
        }
    }

    #[test]
    fn infeasible_gives_farkas() {
        // x + y <= 1, x >= 1, y >= 1
        let rows = vec![ineq(&[1, 1], 1), ineq(&[-1, 0], -1), ineq(&[0, -1], -1)];
        match fourier_motzkin(&rows, 2) {
            FmOutcome::Infeasible(y) => assert!(check_farkas(&rows, 2, &y)),
            FmOutcome::Feasible(_) => panic!("should be infeasible"),
        }
    }

    #[test]
    fn fractional_bounds() {
        // 2x <= 1, -2x <= -1 gives x = 1/2
        let rows = vec![ineq(&[2], 1), ineq(&[-2], -1)];
        assert_eq!(fourier_motzkin(&rows, 1), FmOutcome::Feasible(vec![q(1, 2)]));
    }

    #[test]
    fn null_combination() {
        let v = vec![vec![qi(1), qi(0)], vec![qi(-1), qi(1)], vec![qi(0), qi(-1)]];
        let y = find_null_combination(&v).unwrap();
        assert_eq!(y.iter().sum::<Q>(), qi(1));
        for d in 0..2 {
            assert!(v.iter().zip(&y).map(|(r, w)| &r[d] * w).sum::<Q>().is_zero());
        }
        let w = vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]];
        assert!(find_null_combination(&w).is_none());
    }
}
