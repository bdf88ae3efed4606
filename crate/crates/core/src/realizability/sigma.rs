//! Exact decision for sums of variables.
//!
//! For a support set V the encoding uses the increments `a_i = u_i - l_i`
//! (i in V) and shifted thresholds `t_j = theta_j - sum_{i in V} l_i`, so
//! `Lambda(phi(v)) - theta_j = sum_{i in V, v_i = 1} a_i - t_j`. Every strict
//! inequality gets margin 1 (the system is scale invariant), giving a
//! plain `A x <= b` system solved by Fourier-Motzkin.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, ExhaustionCertificate, StructureCertificate};
use super::search::derive_thresholds;
use super::{verify_witness, RealizabilityError, Verdict, Witness};
use crate::boolean_core::{BoolError, OrderedTuple, TruthTable};
use crate::interaction::{subsets_by_size, ClassTag, InteractionStructure, PhiAssignment};
use crate::lp::{check_farkas, fourier_motzkin, FmOutcome, Ineq};
use crate::rational::{qi, Q};

/// Label of one row in the encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "row", rename_all = "snake_case")]
pub enum SigmaRow {
    /// `a_var >= 1`
    Positive { var: usize },
    /// `t_{index+1} <= t_index - 1`
    Order { index: usize },
    /// Separation of function `func` at corner `corner`.
    Corner { func: usize, corner: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledMultiplier {
    pub row: SigmaRow,
    #[serde(with = "crate::rational::serde_q")]
    pub y: Q,
}

/// Farkas multipliers proving that no sum over `subset` separates the tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaFarkasCertificate {
    pub n: usize,
    pub subset: u16,
    pub multipliers: Vec<LabeledMultiplier>,
}

/// Builds the labelled rows for support `subset`. Variables are the `a_i`
/// for i in `subset` (ascending) followed by one `t_j` per function.
pub fn sigma_rows(tuple: &OrderedTuple, subset: u16) -> (Vec<SigmaRow>, Vec<Ineq>, usize) {
    let n = tuple.n();
    let vars: Vec<usize> = (0..n).filter(|i| subset >> i & 1 == 1).collect();
    let k = tuple.len();
    let nv = vars.len() + k;
    let t = |j: usize| vars.len() + j;
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    let zero = || vec![Q::zero(); nv];
    for (p, &i) in vars.iter().enumerate() {
        let mut c = zero();
        c[p] = -Q::one();
        labels.push(SigmaRow::Positive { var: i });
        rows.push(Ineq { coeffs: c, rhs: -Q::one() });
    }
    for j in 0..k.saturating_sub(1) {
        let mut c = zero();
        c[t(j + 1)] = Q::one();
        c[t(j)] = -Q::one();
        labels.push(SigmaRow::Order { index: j });
        rows.push(Ineq { coeffs: c, rhs: -Q::one() });
    }
    for (j, f) in tuple.functions().iter().enumerate() {
        for v in 0..1usize << n {
            let sign = if f.value(v) { -Q::one() } else { Q::one() };
            let mut c = zero();
            for (p, &i) in vars.iter().enumerate() {
                if v >> i & 1 == 1 {
                    c[p] = sign.clone();
                }
            }
            c[t(j)] = -sign;
            labels.push(SigmaRow::Corner { func: j, corner: v });
            rows.push(Ineq { coeffs: c, rhs: -Q::one() });
        }
    }
    (labels, rows, nv)
}

/// Exact test of one support set.
pub(crate) fn check_sigma_subset(tuple: &OrderedTuple, subset: u16) -> Result<Witness, SigmaFarkasCertificate> {
    let n = tuple.n();
    let (labels, rows, nv) = sigma_rows(tuple, subset);
    match fourier_motzkin(&rows, nv) {
        FmOutcome::Infeasible(y) => Err(SigmaFarkasCertificate {
            n,
            subset,
            multipliers: labels
                .into_iter()
                .zip(y)
                .filter(|(_, y)| !y.is_zero())
                .map(|(row, y)| LabeledMultiplier { row, y })
                .collect(),
        }),
        FmOutcome::Feasible(x) => {
            let size = subset.count_ones() as usize;
            let ts = &x[size..];
            let worst = ts.iter().map(|t| -t).max().unwrap_or_else(Q::zero);
            let base = if worst.is_positive() { (worst / qi(size as i64)).ceil() + Q::one() } else { Q::one() };
            let mut low = vec![Q::one(); n];
            let mut high = vec![qi(2); n];
            let mut p = 0;
            for i in 0..n {
                if subset >> i & 1 == 1 {
                    low[i] = base.clone();
                    high[i] = &base + &x[p];
                    p += 1;
                }
            }
            let shift = &base * qi(size as i64);
            let w = Witness {
                structure: InteractionStructure::sigma(n, subset).expect("non-empty subset"),
                phi: PhiAssignment::new(low, high).expect("a_i >= 1"),
                thresholds: ts.iter().map(|t| t + &shift).collect(),
            };
            debug_assert_eq!(verify_witness(tuple, &w), Ok(true));
            Ok(w)
        }
    }
}

/// Exact decision over every support set, largest first.
pub fn check_sigma(tuple: &OrderedTuple) -> Result<Verdict, RealizabilityError> {
    let n = tuple.n();
    if n == 0 || n > 5 {
        return Err(RealizabilityError::Guard(format!("sums need 1 <= n <= 5, got {n}")));
    }
    let mut parts = Vec::new();
    for subset in subsets_by_size(n) {
        match check_sigma_subset(tuple, subset) {
            Ok(w) => return Ok(Verdict::Realizable(w)),
            Err(c) => parts.push(StructureCertificate {
                structure: InteractionStructure::sigma(n, subset)?,
                certificate: Certificate::SigmaFarkas(c),
            }),
        }
    }
    Ok(Verdict::NotRealizable(Certificate::Exhaustion(ExhaustionCertificate { class: ClassTag::Sigma, parts })))
}

impl SigmaFarkasCertificate {
    pub fn replay(&self, tuple: &OrderedTuple) -> bool {
        if tuple.n() != self.n || self.subset == 0 || self.subset >> self.n != 0 {
            return false;
        }
        let (labels, rows, nv) = sigma_rows(tuple, self.subset);
        let mut y = vec![Q::zero(); rows.len()];
        for m in &self.multipliers {
            match labels.iter().position(|l| *l == m.row) {
                Some(p) => y[p] += &m.y,
                None => return false,
            }
        }
        check_farkas(&rows, nv, &y)
    }
}

/// `f_j(v) = [sum_i weights_i v_i > thresholds_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdForm {
    pub weights: Vec<Q>,
    pub thresholds: Vec<Q>,
}

impl ThresholdForm {
    fn sums(&self) -> Vec<Q> {
        let n = self.weights.len();
        (0..1usize << n)
            .map(|v| (0..n).filter(|i| v >> i & 1 == 1).map(|i| self.weights[i].clone()).sum())
            .collect()
    }

    /// Functions induced by each threshold.
    pub fn functions(&self) -> Vec<TruthTable> {
        let sums = self.sums();
        self.thresholds
            .iter()
            .map(|t| TruthTable::from_fn(self.weights.len(), |v| sums[v] > *t))
            .collect()
    }
}

/// Sum witness to weights `u_i - l_i` and thresholds `theta_j - sum l_i`.
pub fn sigma_threshold_convert(w: &Witness) -> Result<ThresholdForm, RealizabilityError> {
    let s = &w.structure;
    if s.class_tag() != ClassTag::Sigma {
        return Err(RealizabilityError::NotApplicable(format!("{s} is not a sum")));
    }
    let support = s.support();
    let n = s.n();
    let used = |i: usize| support >> i & 1 == 1;
    let weights = (0..n).map(|i| if used(i) { &w.phi.high[i] - &w.phi.low[i] } else { Q::zero() }).collect();
    let base: Q = (0..n).filter(|&i| used(i)).map(|i| w.phi.low[i].clone()).sum();
    Ok(ThresholdForm { weights, thresholds: w.thresholds.iter().map(|t| t - &base).collect() })
}

/// Inverse conversion: low = 1, high = 1 + a_i over the full sum.
/// Zero weights become a small positive increment and the thresholds are
/// re-centred in the separating gaps.
pub fn threshold_form_to_witness(tf: &ThresholdForm) -> Result<Witness, RealizabilityError> {
    let n = tf.weights.len();
    if n == 0 {
        return Err(RealizabilityError::NotApplicable("no inputs".into()));
    }
    if tf.weights.iter().any(Signed::is_negative) {
        return Err(RealizabilityError::NotApplicable("negative weight".into()));
    }
    if tf.thresholds.iter().any(|t| *t <= qi(-(n as i64))) {
        return Err(RealizabilityError::NotApplicable("threshold not above -n".into()));
    }
    let tables = tf.functions();
    let functions = tables
        .iter()
        .map(|t| crate::boolean_core::MbfFunction::from_table(*t))
        .collect::<Result<Vec<_>, BoolError>>()?;
    let sums = tf.sums();
    let mut gap: Option<Q> = None;
    for a in &sums {
        for b in &sums {
            if a > b {
                let d = a - b;
                if gap.as_ref().is_none_or(|g| d < *g) {
                    gap = Some(d);
                }
            }
        }
    }
    let delta = gap.unwrap_or_else(Q::one) / qi(2 * n as i64);
    let high: Vec<Q> = tf
        .weights
        .iter()
        .map(|a| Q::one() + if a.is_zero() { delta.clone() } else { a.clone() })
        .collect();
    let phi = PhiAssignment::unit_low(high)?;
    let structure = InteractionStructure::full_sum(n);
    let values = structure.cube_values(&phi);
    let thresholds = derive_thresholds(&values, &functions)
        .ok_or_else(|| RealizabilityError::NotApplicable("perturbation broke separation".into()))?;
    Ok(Witness { structure, phi, thresholds })
}
