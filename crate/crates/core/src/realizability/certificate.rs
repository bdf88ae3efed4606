//! Impossibility certificates and their replay.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::monomial::{monomial_certificate, MonomialCertificate};
use super::sigma::SigmaFarkasCertificate;
use crate::boolean_core::{expand_corner, OrderedTuple, Side};
use crate::interaction::{enumerate_structures, subsets_by_size, ClassTag, InteractionStructure, PhiAssignment};
use crate::rational::qi;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Factor,
    SimpleTerm,
}

/// `z_var` is a factor or simple term, yet the ceiling slice of the smaller
/// function and the floor slice of the larger one are incomparable.
///
/// Corners (full cube indices): `lower` is true at `corners[0]`, `upper` is
/// false at `corners[1] = corners[0] - e`, `upper` is true at `corners[2]`,
/// `lower` is false at `corners[3] = corners[2] + e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionCertificate {
    pub structure: InteractionStructure,
    /// 0-based variable.
    pub var: usize,
    pub role: Role,
    /// Positions of the two functions in the tuple, `lower < upper`.
    pub lower: usize,
    pub upper: usize,
    pub corners: [usize; 4],
}

/// A structure is impossible because its collapse is impossible for the
/// collapsed tuple on one face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseCertificate {
    pub structure: InteractionStructure,
    pub var: usize,
    pub side: Side,
    pub collapsed: InteractionStructure,
    pub inner: Box<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCertificate {
    pub structure: InteractionStructure,
    pub certificate: Certificate,
}

/// One certificate per structure of the class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustionCertificate {
    pub class: ClassTag,
    pub parts: Vec<StructureCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Direction(DirectionCertificate),
    SigmaFarkas(SigmaFarkasCertificate),
    Monomial(MonomialCertificate),
    Collapse(CollapseCertificate),
    Exhaustion(ExhaustionCertificate),
}

impl Certificate {
    /// Structure this certificate rules out, if it targets a single one.
    pub fn structure(&self) -> Option<InteractionStructure> {
        match self {
            Certificate::Direction(c) => Some(c.structure.clone()),
            Certificate::SigmaFarkas(c) => InteractionStructure::sigma(c.n, c.subset).ok(),
            Certificate::Monomial(c) => Some(c.structure.clone()),
            Certificate::Collapse(c) => Some(c.structure.clone()),
            Certificate::Exhaustion(_) => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Direction(_) => "direction",
            Certificate::SigmaFarkas(_) => "sigma_farkas",
            Certificate::Monomial(_) => "monomial",
            Certificate::Collapse(_) => "collapse",
            Certificate::Exhaustion(_) => "exhaustion",
        }
    }
}

/// Ceiling slice of `lower` vs floor slice of `upper` in direction `var`;
/// returns one corner from each non-containment when incomparable.
fn incomparable_slices(tuple: &OrderedTuple, lower: usize, upper: usize, var: usize) -> Option<(usize, usize)> {
    let n = tuple.n();
    let f = &tuple.functions()[lower];
    let g = &tuple.functions()[upper];
    let a_set: Vec<usize> = (0..1usize << (n - 1)).filter(|&w| f.value(expand_corner(w, var, 1))).collect();
    let b_set: Vec<usize> = (0..1usize << (n - 1)).filter(|&w| g.value(expand_corner(w, var, 0))).collect();
    let a = a_set.iter().copied().find(|w| !b_set.contains(w))?;
    let b = b_set.iter().copied().find(|w| !a_set.contains(w))?;
    Some((a, b))
}

/// Factor / simple-term direction test over every pair of the tuple.
pub fn necessary_condition(tuple: &OrderedTuple, s: &InteractionStructure) -> Option<DirectionCertificate> {
    if tuple.n() < 2 || s.n() != tuple.n() {
        return None;
    }
    (0..tuple.n()).find_map(|var| direction_certificate(tuple, s, var))
}

/// Incomparable floor/ceiling slices in direction `var`, where `z_var` is a
/// factor or simple term of `s`.
pub fn direction_certificate(tuple: &OrderedTuple, s: &InteractionStructure, var: usize) -> Option<DirectionCertificate> {
    if tuple.n() < 2 || s.n() != tuple.n() || var >= tuple.n() {
        return None;
    }
    let role = if s.has_factor(var) {
        Role::Factor
    } else if s.has_simple_term(var) {
        Role::SimpleTerm
    } else {
        return None;
    };
    for upper in 1..tuple.len() {
        for lower in 0..upper {
            if let Some((a, b)) = incomparable_slices(tuple, lower, upper, var) {
                return Some(DirectionCertificate {
                    structure: s.clone(),
                    var,
                    role,
                    lower,
                    upper,
                    corners: [
                        expand_corner(a, var, 1),
                        expand_corner(a, var, 0),
                        expand_corner(b, var, 0),
                        expand_corner(b, var, 1),
                    ],
                });
            }
        }
    }
    None
}

impl DirectionCertificate {
    pub fn replay(&self, tuple: &OrderedTuple) -> bool {
        let n = tuple.n();
        let s = &self.structure;
        if s.n() != n || self.var >= n || self.lower >= self.upper || self.upper >= tuple.len() {
            return false;
        }
        let role_ok = match self.role {
            Role::Factor => s.has_factor(self.var),
            Role::SimpleTerm => s.has_simple_term(self.var),
        };
        let e = 1usize << self.var;
        let [c0, c1, c2, c3] = self.corners;
        if c0 >= 1 << n || c2 >= 1 << n {
            return false;
        }
        let shape_ok = c0 & e != 0 && c1 == c0 & !e && c2 & e == 0 && c3 == c2 | e;
        let f = &tuple.functions()[self.lower];
        let g = &tuple.functions()[self.upper];
        role_ok && shape_ok && f.value(c0) && !g.value(c1) && g.value(c2) && !f.value(c3)
    }
}

fn placeholder_phi(n: usize) -> PhiAssignment {
    PhiAssignment::new(vec![qi(1); n], vec![qi(2); n]).expect("1 < 2")
}

type PruneCache = HashMap<(OrderedTuple, InteractionStructure), Option<Certificate>>;

/// Looks for a face whose collapsed structure is certified impossible for
/// the collapsed tuple.
pub(crate) fn collapse_prune(
    tuple: &OrderedTuple,
    s: &InteractionStructure,
    cache: &mut PruneCache,
) -> Option<CollapseCertificate> {
    let n = tuple.n();
    let phi = placeholder_phi(n);
    for var in 0..n {
        let Ok(col) = s.collapse(var, Side::Floor, &phi) else {
            continue;
        };
        for side in [Side::Floor, Side::Ceiling] {
            let Ok(ct) = super::collapse_tuple(tuple, var, side) else {
                continue;
            };
            let key = (ct.clone(), col.structure.clone());
            let inner = cache
                .entry(key)
                .or_insert_with(|| {
                    necessary_condition(&ct, &col.structure)
                        .map(Certificate::Direction)
                        .or_else(|| monomial_certificate(&ct, &col.structure).map(Certificate::Monomial))
                })
                .clone();
            if let Some(inner) = inner {
                return Some(CollapseCertificate {
                    structure: s.clone(),
                    var,
                    side,
                    collapsed: col.structure.clone(),
                    inner: Box::new(inner),
                });
            }
        }
    }
    None
}

impl CollapseCertificate {
    pub fn replay(&self, tuple: &OrderedTuple) -> bool {
        let n = tuple.n();
        if self.structure.n() != n || self.var >= n || n < 2 {
            return false;
        }
        let Ok(col) = self.structure.collapse(self.var, self.side, &placeholder_phi(n)) else {
            return false;
        };
        if col.structure != self.collapsed || self.inner.structure().as_ref() != Some(&self.collapsed) {
            return false;
        }
        let Ok(ct) = super::collapse_tuple(tuple, self.var, self.side) else {
            return false;
        };
        matches!(*self.inner, Certificate::Direction(_) | Certificate::Monomial(_)) && replay_certificate(&ct, &self.inner)
    }
}

impl ExhaustionCertificate {
    pub fn replay(&self, tuple: &OrderedTuple) -> bool {
        let n = tuple.n();
        let required: Vec<InteractionStructure> = match self.class {
            ClassTag::Sigma => subsets_by_size(n).into_iter().filter_map(|m| InteractionStructure::sigma(n, m).ok()).collect(),
            ClassTag::K => return false,
            c => match enumerate_structures(n, c) {
                Ok(v) => v,
                Err(_) => return false,
            },
        };
        let parts_ok = self.parts.iter().all(|p| {
            p.certificate.structure().as_ref() == Some(&p.structure) && replay_certificate(tuple, &p.certificate)
        });
        parts_ok && required.iter().all(|s| self.parts.iter().any(|p| &p.structure == s))
    }
}

/// Re-derives the contradiction from the stored data alone.
pub fn replay_certificate(tuple: &OrderedTuple, cert: &Certificate) -> bool {
    match cert {
        Certificate::Direction(c) => c.replay(tuple),
        Certificate::SigmaFarkas(c) => c.replay(tuple),
        Certificate::Monomial(c) => c.replay(tuple),
        Certificate::Collapse(c) => c.replay(tuple),
        Certificate::Exhaustion(c) => c.replay(tuple),
    }
}
