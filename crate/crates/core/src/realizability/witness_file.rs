//! Key-value witness files.
//!
//! ```text
//! structure = (z1+z2)*z3
//! n = 3
//! low = 1,1,1
//! high = 4,4,2
//! thresholds = 9,9/2
//! tuple = mbf:3:e0,mbf:3:ee
//! ```
//!
//! Blank lines and `#` comments are ignored. `tuple` is optional.

use std::collections::BTreeMap;

use super::{RealizabilityError, Witness};
use crate::boolean_core::{MbfFunction, OrderedTuple};
use crate::interaction::{InteractionStructure, PhiAssignment};
use crate::rational::{format_q, parse_q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFile {
    pub witness: Witness,
    pub tuple: Option<OrderedTuple>,
}

fn join(xs: &[Q]) -> String {
    xs.iter().map(format_q).collect::<Vec<_>>().join(",")
}

pub fn write_witness_file(w: &Witness, tuple: Option<&OrderedTuple>) -> String {
    let mut s = String::new();
    s.push_str(&format!("structure = {}\n", w.structure));
    s.push_str(&format!("n = {}\n", w.structure.n()));
    s.push_str(&format!("low = {}\n", join(&w.phi.low)));
    s.push_str(&format!("high = {}\n", join(&w.phi.high)));
    s.push_str(&format!("thresholds = {}\n", join(&w.thresholds)));
    if let Some(t) = tuple {
        let fs: Vec<String> = t.functions().iter().map(|f| f.to_string()).collect();
        s.push_str(&format!("tuple = {}\n", fs.join(",")));
    }
    s
}

fn parse_list(text: &str) -> Result<Vec<Q>, RealizabilityError> {
    text.split(',')
        .map(|x| parse_q(x).map_err(|e| RealizabilityError::Parse(e.to_string())))
        .collect()
}

pub fn parse_witness_file(text: &str) -> Result<WitnessFile, RealizabilityError> {
    let mut kv = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| RealizabilityError::Parse(format!("line {}: expected key = value", no + 1)))?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    let get = |k: &str| kv.get(k).ok_or_else(|| RealizabilityError::Parse(format!("missing key {k:?}")));
    let n: usize = get("n")?.parse().map_err(|_| RealizabilityError::Parse("bad n".into()))?;
    let structure = InteractionStructure::parse(get("structure")?, n)?;
    let phi = PhiAssignment::new(parse_list(get("low")?)?, parse_list(get("high")?)?)?;
    let thresholds = parse_list(get("thresholds")?)?;
    let tuple = match kv.get("tuple") {
        Some(t) => {
            let fs = t
                .split(',')
                .map(|x| x.trim().parse::<MbfFunction>())
                .collect::<Result<Vec<_>, _>>()?;
            Some(OrderedTuple::new(fs)?)
        }
        None => None,
    };
    Ok(WitnessFile { witness: Witness { structure, phi, thresholds }, tuple })
}
