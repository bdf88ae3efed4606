//! Joint realizability of ordered MBF tuples by interaction functions.
//!
//! A [`Witness`] fixes a structure, per-variable low/high values and one
//! threshold per function; it realizes a tuple when every corner value
//! lands on the correct side of every threshold. Impossibility is shown
//! with replayable [`Certificate`]s. Verdicts for the product classes are
//! three-valued: a structure that is neither realized on the search grid
//! nor certified impossible is reported as unresolved.

mod certificate;
mod monomial;
mod search;
mod sigma;
mod transform;
mod witness_file;

pub use certificate::{
    direction_certificate, necessary_condition, replay_certificate, CollapseCertificate, DirectionCertificate, ExhaustionCertificate,
    StructureCertificate,
};
pub use monomial::{monomial_certificate, MonomialCertificate, MonomialRow};
pub use search::{search_witness, SearchConfig};
pub use sigma::{
    check_sigma, sigma_rows, sigma_threshold_convert, threshold_form_to_witness, SigmaFarkasCertificate, SigmaRow,
    ThresholdForm,
};
pub use transform::{collapse_witness, lift_eta, lower_eta};
pub use witness_file::{parse_witness_file, write_witness_file, WitnessFile};

use std::collections::HashMap;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolean_core::{BoolError, MbfFunction, OrderedTuple, Side};
use crate::interaction::{enumerate_structures, ClassTag, InteractionError, InteractionStructure, PhiAssignment};
use crate::rational::{format_q, q, qi, Q};

pub use certificate::Certificate;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizabilityError {
    #[error(transparent)]
    Bool(#[from] BoolError),
    #[error(transparent)]
    Interaction(#[from] InteractionError),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("arity guard exceeded: {0}")]
    Guard(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Structure, low/high values and strictly decreasing thresholds; the
/// j-th threshold separates the j-th (and j-th smallest) function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub structure: InteractionStructure,
    pub phi: PhiAssignment,
    pub thresholds: Vec<Q>,
}

/// Tabulated realizing function for the unconstrained class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KWitness {
    pub n: usize,
    /// Value at each corner index.
    #[serde(with = "crate::rational::serde_q_vec")]
    pub table: Vec<Q>,
    #[serde(with = "crate::rational::serde_q_vec")]
    pub thresholds: Vec<Q>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Structures neither realized nor certified impossible.
    pub unresolved: Vec<String>,
    /// Structures certified impossible.
    pub certified: usize,
    /// Grid points tried across all searches.
    pub grid_points: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Realizable(Witness),
    RealizableK(KWitness),
    NotRealizable(Certificate),
    Unknown(Diagnostics),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Realizable(_) | Verdict::RealizableK(_) => "Realizable",
            Verdict::NotRealizable(_) => "NotRealizable",
            Verdict::Unknown(_) => "Unknown",
        }
    }

    pub fn is_realizable(&self) -> bool {
        matches!(self, Verdict::Realizable(_) | Verdict::RealizableK(_))
    }

    pub fn is_not_realizable(&self) -> bool {
        matches!(self, Verdict::NotRealizable(_))
    }
}

fn check_arity(tuple: &OrderedTuple, w: &Witness) -> Result<(), RealizabilityError> {
    let n = tuple.n();
    if w.structure.n() != n || w.phi.n() != n {
        return Err(RealizabilityError::Bool(BoolError::ArityMismatch(w.structure.n(), n)));
    }
    if w.thresholds.len() != tuple.len() {
        return Err(RealizabilityError::InvalidWitness(format!(
            "{} thresholds for {} functions",
            w.thresholds.len(),
            tuple.len()
        )));
    }
    Ok(())
}

/// Exact check that `w` separates every function of the tuple.
/// A corner value equal to a threshold is an error, not `false`.
pub fn verify_witness(tuple: &OrderedTuple, w: &Witness) -> Result<bool, RealizabilityError> {
    check_arity(tuple, w)?;
    let values = w.structure.cube_values(&w.phi);
    for (v, val) in values.iter().enumerate() {
        if let Some(t) = w.thresholds.iter().find(|t| *t == val) {
            return Err(RealizabilityError::InvalidWitness(format!(
                "corner {} has value {} equal to a threshold",
                crate::boolean_core::corner_string(tuple.n(), v),
                format_q(t)
            )));
        }
    }
    if w.thresholds.iter().any(|t| !t.is_positive()) || w.thresholds.windows(2).any(|p| p[0] <= p[1]) {
        return Ok(false);
    }
    Ok(tuple
        .functions()
        .iter()
        .zip(&w.thresholds)
        .all(|(f, t)| values.iter().enumerate().all(|(v, val)| f.value(v) == (val > t))))
}

/// R = sum of the tuple's functions, thresholds b - j + 1/2.
pub fn realize_k(tuple: &OrderedTuple) -> KWitness {
    let n = tuple.n();
    let b = tuple.len() as i64;
    let table = (0..1usize << n)
        .map(|v| qi(tuple.functions().iter().filter(|f| f.value(v)).count() as i64))
        .collect();
    let thresholds = (1..=b).map(|j| qi(b - j) + q(1, 2)).collect();
    KWitness { n, table, thresholds }
}

/// Checks monotonicity of the table and separation at every threshold.
pub fn verify_k(tuple: &OrderedTuple, w: &KWitness) -> bool {
    let n = tuple.n();
    if w.n != n || w.table.len() != 1 << n || w.thresholds.len() != tuple.len() {
        return false;
    }
    let monotone = (0..1usize << n).all(|v| (0..n).all(|i| v >> i & 1 == 1 || w.table[v] <= w.table[v | 1 << i]));
    let nonneg = w.table.iter().all(|x| !x.is_negative());
    let ordered = w.thresholds.windows(2).all(|p| p[0] > p[1]);
    monotone
        && nonneg
        && ordered
        && tuple.functions().iter().zip(&w.thresholds).all(|(f, t)| {
            (0..1usize << n).all(|v| w.table[v] != *t && f.value(v) == (w.table[v] > *t))
        })
}

/// Decides or searches realizability of `tuple` in `class`.
pub fn check_class(tuple: &OrderedTuple, class: ClassTag) -> Result<Verdict, RealizabilityError> {
    check_class_with(tuple, class, &SearchConfig::default())
}

pub fn check_class_with(tuple: &OrderedTuple, class: ClassTag, config: &SearchConfig) -> Result<Verdict, RealizabilityError> {
    let n = tuple.n();
    match class {
        ClassTag::K => return Ok(Verdict::RealizableK(realize_k(tuple))),
        ClassTag::Sigma => return check_sigma(tuple),
        _ => {}
    }
    if n == 0 || n > 4 {
        return Err(RealizabilityError::Guard(format!("product classes need 1 <= n <= 4, got {n}")));
    }
    let mut certs = Vec::new();
    let mut diag = Diagnostics::default();
    let mut collapse_cache = HashMap::new();
    for s in enumerate_structures(n, class)? {
        if let Some(c) = necessary_condition(tuple, &s) {
            certs.push(StructureCertificate { structure: s, certificate: Certificate::Direction(c) });
            continue;
        }
        if s.class_tag() == ClassTag::Sigma {
            // full sum: exact decision
            match sigma::check_sigma_subset(tuple, s.support()) {
                Ok(w) => return Ok(Verdict::Realizable(w)),
                Err(c) => {
                    certs.push(StructureCertificate { structure: s, certificate: Certificate::SigmaFarkas(c) });
                    continue;
                }
            }
        }
        if n >= 4 {
            if let Some(c) = certificate::collapse_prune(tuple, &s, &mut collapse_cache) {
                certs.push(StructureCertificate { structure: s, certificate: Certificate::Collapse(c) });
                continue;
            }
        }
        let (found, tried) = search::search_counted(tuple, &s, config);
        diag.grid_points += tried;
        if let Some(w) = found {
            return Ok(Verdict::Realizable(w));
        }
        if let Some(c) = monomial_certificate(tuple, &s) {
            certs.push(StructureCertificate { structure: s, certificate: Certificate::Monomial(c) });
            continue;
        }
        diag.unresolved.push(s.to_string());
    }
    diag.certified = certs.len();
    if diag.unresolved.is_empty() {
        Ok(Verdict::NotRealizable(Certificate::Exhaustion(ExhaustionCertificate { class, parts: certs })))
    } else {
        Ok(Verdict::Unknown(diag))
    }
}

/// Smallest positive distance between any value and any threshold.
pub(crate) fn min_gap(values: &[Q], thresholds: &[Q]) -> Q {
    let mut gap: Option<Q> = None;
    for v in values {
        for t in thresholds {
            let d = (v - t).abs();
            if d.is_positive() && gap.as_ref().is_none_or(|g| d < *g) {
                gap = Some(d);
            }
        }
    }
    gap.unwrap_or_else(Q::one)
}

/// Moves non-positive thresholds (a suffix, since they decrease) into
/// `(0, min(values))`, keeping them strictly decreasing.
pub(crate) fn fix_positive_thresholds(thresholds: &mut [Q], values: &[Q]) {
    let r = thresholds.iter().filter(|t| !t.is_positive()).count();
    if r == 0 {
        return;
    }
    let min_val = values.iter().min().cloned().unwrap_or_else(Q::one);
    let first = thresholds.len() - r;
    let upper = if first > 0 { min_val.min(thresholds[first - 1].clone()) } else { min_val };
    for t in 0..r {
        thresholds[first + t] = &upper * qi((r - t) as i64) / qi(r as i64 + 1);
    }
}

pub(crate) fn collapse_tuple(tuple: &OrderedTuple, var: usize, side: Side) -> Result<OrderedTuple, RealizabilityError> {
    let fs: Vec<MbfFunction> = tuple.functions().iter().map(|f| f.collapse(var, side)).collect::<Result<_, _>>()?;
    Ok(OrderedTuple::new(fs)?)
}

#[cfg(test)]
mod tests;
