//! Moving witnesses along eta and along collapses.

use num_traits::One;

use super::{collapse_tuple, fix_positive_thresholds, min_gap, verify_witness, RealizabilityError, Witness};
use crate::boolean_core::{drop_coordinate, eta, MbfFunction, OrderedTuple, Side};
use crate::interaction::{ClassTag, InteractionStructure, PhiAssignment};
use crate::rational::{qi, Q};

fn ensure_valid(tuple: &OrderedTuple, w: &Witness) -> Result<(), RealizabilityError> {
    match verify_witness(tuple, w)? {
        true => Ok(()),
        false => Err(RealizabilityError::InvalidWitness("witness does not separate the tuple".into())),
    }
}

fn checked(tuple: &OrderedTuple, w: Witness) -> Result<Witness, RealizabilityError> {
    ensure_valid(tuple, &w)?;
    Ok(w)
}

/// Adds unused variables to the single sum block with tiny values so a
/// subset sum becomes a full sum.
fn widen_sum(pair: &OrderedTuple, w: &Witness) -> Result<Witness, RealizabilityError> {
    let n = w.structure.n();
    let unused: Vec<usize> = (0..n).filter(|i| w.structure.support() >> i & 1 == 0).collect();
    if unused.is_empty() {
        return Ok(w.clone());
    }
    if w.structure.groups().len() != 1 {
        return Err(RealizabilityError::NotApplicable("only sums can be widened".into()));
    }
    let values = w.structure.cube_values(&w.phi);
    let delta = min_gap(&values, &w.thresholds) / qi(4 * unused.len() as i64);
    let mut low = w.phi.low.clone();
    let mut high = w.phi.high.clone();
    for &i in &unused {
        low[i] = delta.clone();
        high[i] = &delta * qi(2);
    }
    let mut blocks = w.structure.groups()[0].clone();
    let all = ((1u32 << n) - 1) as u16;
    let covered = blocks.iter().fold(0, |m, b| m | b);
    blocks[0] |= all & !covered;
    let widened = Witness {
        structure: InteractionStructure::product_of_sums(n, blocks)?,
        phi: PhiAssignment::new(low, high)?,
        thresholds: w.thresholds.clone(),
    };
    checked(pair, widened)
}

/// Witness for eta(f, g) from a witness of the pair.
///
/// Sums and sums of products gain `z_{n+1}` as a new summand with
/// `phi(0) = eps`, `phi(1) = theta_f + eps - theta_g` and threshold
/// `theta_f + eps`. Products of sums gain `z_{n+1}` as a factor with
/// `phi(0) = 1`, `phi(1) = theta_f / theta_g` and threshold `theta_f`.
pub fn lift_eta(f: &MbfFunction, g: &MbfFunction, w: &Witness, class: ClassTag) -> Result<Witness, RealizabilityError> {
    let pair = OrderedTuple::pair(*f, *g)?;
    ensure_valid(&pair, w)?;
    let n = f.n();
    let h = OrderedTuple::new(vec![eta(f, g)?])?;
    let (theta_f, theta_g) = (&w.thresholds[0], &w.thresholds[1]);
    let lifted = match class {
        ClassTag::Sigma | ClassTag::SigmaPiSigma => {
            let values = w.structure.cube_values(&w.phi);
            let eps = min_gap(&values, &w.thresholds) / qi(2);
            let mut groups = w.structure.groups().to_vec();
            groups.push(vec![1 << n]);
            let mut low = w.phi.low.clone();
            let mut high = w.phi.high.clone();
            low.push(eps.clone());
            high.push(theta_f + &eps - theta_g);
            Witness {
                structure: InteractionStructure::new(n + 1, groups)?,
                phi: PhiAssignment::new(low, high)?,
                thresholds: vec![theta_f + &eps],
            }
        }
        ClassTag::PiSigma => {
            if w.structure.class_tag() > ClassTag::PiSigma {
                return Err(RealizabilityError::NotApplicable("witness is not a product of sums".into()));
            }
            let wide = widen_sum(&pair, w)?;
            let mut blocks = wide.structure.groups()[0].clone();
            blocks.push(1 << n);
            let mut low = wide.phi.low.clone();
            let mut high = wide.phi.high.clone();
            low.push(Q::one());
            high.push(theta_f / theta_g);
            Witness {
                structure: InteractionStructure::product_of_sums(n + 1, blocks)?,
                phi: PhiAssignment::new(low, high)?,
                thresholds: vec![theta_f.clone()],
            }
        }
        ClassTag::K => return Err(RealizabilityError::NotApplicable("no algebraic structure for K".into())),
    };
    checked(&h, lifted)
}

fn without_var(groups: &[Vec<u16>], var: usize) -> Vec<Vec<u16>> {
    groups
        .iter()
        .map(|g| {
            g.iter()
                .map(|&b| drop_coordinate(b as usize, var) as u16)
                .filter(|&b| b != 0)
                .collect::<Vec<u16>>()
        })
        .filter(|g| !g.is_empty())
        .collect()
}

/// Witness for the floor/ceiling pair of `h` in direction `var`, where
/// `z_var` is a factor or a simple term of the witness structure.
pub fn lower_eta(
    h: &MbfFunction,
    w: &Witness,
    var: usize,
) -> Result<((MbfFunction, MbfFunction), Witness), RealizabilityError> {
    let single = OrderedTuple::new(vec![*h])?;
    ensure_valid(&single, w)?;
    let m = h.n();
    if m < 2 || var >= m {
        return Err(RealizabilityError::NotApplicable(format!("direction {} on {m} inputs", var + 1)));
    }
    let s = &w.structure;
    let theta = &w.thresholds[0];
    let (p0, p1) = (&w.phi.low[var], &w.phi.high[var]);
    let mut thresholds = if s.has_factor(var) {
        vec![theta / p0, theta / p1]
    } else if s.has_simple_term(var) {
        vec![theta - p0, theta - p1]
    } else {
        return Err(RealizabilityError::NotApplicable(format!("z{} is neither a factor nor a simple term", var + 1)));
    };
    let groups = without_var(s.groups(), var);
    if groups.is_empty() {
        return Err(RealizabilityError::NotApplicable("no variables left".into()));
    }
    let structure = InteractionStructure::new(m - 1, groups)?;
    let mut low = w.phi.low.clone();
    let mut high = w.phi.high.clone();
    low.remove(var);
    high.remove(var);
    let phi = PhiAssignment::new(low, high)?;
    fix_positive_thresholds(&mut thresholds, &structure.cube_values(&phi));
    let f = h.collapse(var, Side::Floor)?;
    let g = h.collapse(var, Side::Ceiling)?;
    let pair = OrderedTuple::pair(f, g)?;
    let lowered = checked(&pair, Witness { structure, phi, thresholds })?;
    Ok(((f, g), lowered))
}

/// Witness for the tuple collapsed onto one face in direction `var`.
pub fn collapse_witness(
    tuple: &OrderedTuple,
    w: &Witness,
    var: usize,
    side: Side,
) -> Result<(OrderedTuple, Witness), RealizabilityError> {
    ensure_valid(tuple, w)?;
    if tuple.n() < 2 {
        return Err(RealizabilityError::NotApplicable("collapse needs n > 1".into()));
    }
    let col = w.structure.collapse(var, side, &w.phi)?;
    let mut thresholds: Vec<Q> = w.thresholds.iter().map(|t| t - &col.offset).collect();
    fix_positive_thresholds(&mut thresholds, &col.structure.cube_values(&col.phi));
    let collapsed = collapse_tuple(tuple, var, side)?;
    let out = checked(&collapsed, Witness { structure: col.structure, phi: col.phi, thresholds })?;
    Ok((collapsed, out))
}
