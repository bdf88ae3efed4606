//! Weighted regulatory networks, K collections, the discrete map they induce
//! on domain states, and state transition graphs.
//!
//! Everything is evaluated on the finite state set `D`: a state `d` has one
//! coordinate per node, `d_i` in `0..=b_i` where `b_i` is the number of
//! targets of node `i`. Whether input `j` of node `i` is above its threshold
//! follows from the rank of that threshold on the axis of `j`.
//!
//! A node's K values are stored as a table indexed by input masks over its
//! sources (bit `k` is the `k`-th source in node order). The entry at mask
//! `y` is `K_{i,A,B}` with `A` the activating and `B` the repressing sources
//! set in `y`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolean_core::{beta_normalize, BoolError, MbfFunction, OrderedTuple, Sign, SignVector, TruthTable};
use crate::rational::{format_q, parse_q, q, qi, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KsystemError {
    #[error("invalid network: {0}")]
    Network(String),
    #[error("invalid K collection: {0}")]
    K(String),
    #[error("K value {value} at node {node} equals a threshold")]
    Degenerate { node: String, value: String },
    #[error("K collection is not monotone: {0:?}")]
    NotMonotone(Vec<String>),
    #[error(transparent)]
    Bool(#[from] BoolError),
    #[error("json: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    pub decay: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub sign: Sign,
    /// `theta_{target,source}`, a point on the source's axis.
    pub threshold: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedRegulatoryNetwork {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct NodeJson {
    name: String,
    decay: String,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    source: String,
    target: String,
    sign: String,
    threshold: String,
}

#[derive(Serialize, Deserialize)]
struct NetworkJson {
    nodes: Vec<NodeJson>,
    edges: Vec<EdgeJson>,
}

fn net_err(msg: impl Into<String>) -> KsystemError {
    KsystemError::Network(msg.into())
}

impl WeightedRegulatoryNetwork {
    pub fn new(nodes: Vec<Node>, edges: Vec<Edge>) -> Result<WeightedRegulatoryNetwork, KsystemError> {
        for (i, n) in nodes.iter().enumerate() {
            if !n.decay.is_positive() {
                return Err(net_err(format!("decay of {} must be positive", n.name)));
            }
            if nodes[..i].iter().any(|m| m.name == n.name) {
                return Err(net_err(format!("duplicate node name {}", n.name)));
            }
        }
        for (e_idx, e) in edges.iter().enumerate() {
            if e.source >= nodes.len() || e.target >= nodes.len() {
                return Err(net_err("edge endpoint out of range"));
            }
            if !e.threshold.is_positive() {
                return Err(net_err("thresholds must be positive"));
            }
            for other in &edges[..e_idx] {
                if other.source == e.source && other.target == e.target {
                    return Err(net_err(format!(
                        "two edges {} -> {}",
                        nodes[e.source].name, nodes[e.target].name
                    )));
                }
                if other.source == e.source && other.threshold == e.threshold {
                    return Err(net_err(format!("repeated threshold on the axis of {}", nodes[e.source].name)));
                }
            }
        }
        Ok(WeightedRegulatoryNetwork { nodes, edges })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.name == name)
    }

    fn edge(&self, source: usize, target: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.source == source && e.target == target)
    }

    /// Sources of node `i` in node order, with their signs.
    pub fn sources(&self, i: usize) -> Vec<(usize, Sign)> {
        let mut s: Vec<(usize, Sign)> = self.edges.iter().filter(|e| e.target == i).map(|e| (e.source, e.sign)).collect();
        s.sort_by_key(|p| p.0);
        s
    }

    pub fn signs(&self, i: usize) -> SignVector {
        SignVector(self.sources(i).into_iter().map(|p| p.1).collect())
    }

    /// Targets of node `i` by ascending threshold on its axis.
    pub fn targets(&self, i: usize) -> Vec<usize> {
        let mut t: Vec<&Edge> = self.edges.iter().filter(|e| e.source == i).collect();
        t.sort_by(|a, b| a.threshold.cmp(&b.threshold));
        t.into_iter().map(|e| e.target).collect()
    }

    /// Sorted thresholds on the axis of node `i`.
    pub fn axis_thresholds(&self, i: usize) -> Vec<Q> {
        let mut t: Vec<Q> = self.edges.iter().filter(|e| e.source == i).map(|e| e.threshold.clone()).collect();
        t.sort();
        t
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.source == i).count()
    }

    /// Number of domains along each axis.
    pub fn dims(&self) -> Vec<usize> {
        (0..self.len()).map(|i| self.out_degree(i) + 1).collect()
    }

    /// Same topology, decays set to 1, thresholds out of node `i` scaled by
    /// its decay. Leaves the induced state map unchanged.
    pub fn gamma_normalize(&self) -> WeightedRegulatoryNetwork {
        let nodes = self.nodes.iter().map(|n| Node { name: n.name.clone(), decay: qi(1) }).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { threshold: &e.threshold * &self.nodes[e.source].decay, ..e.clone() })
            .collect();
        WeightedRegulatoryNetwork { nodes, edges }
    }

    pub fn from_json(text: &str) -> Result<WeightedRegulatoryNetwork, KsystemError> {
        let raw: NetworkJson = serde_json::from_str(text).map_err(|e| KsystemError::Json(e.to_string()))?;
        let num = |s: &str| parse_q(s).map_err(|e| net_err(e.to_string()));
        let nodes = raw
            .nodes
            .iter()
            .map(|n| Ok(Node { name: n.name.clone(), decay: num(&n.decay)? }))
            .collect::<Result<Vec<_>, KsystemError>>()?;
        let find = |name: &str| {
            nodes.iter().position(|n| n.name == name).ok_or_else(|| net_err(format!("unknown node {name}")))
        };
        let mut edges = Vec::new();
        for e in &raw.edges {
            let sign = match e.sign.as_str() {
                "+" => Sign::Activating,
                "-" => Sign::Repressing,
                other => return Err(net_err(format!("sign must be + or -, got {other}"))),
            };
            edges.push(Edge { source: find(&e.source)?, target: find(&e.target)?, sign, threshold: num(&e.threshold)? });
        }
        WeightedRegulatoryNetwork::new(nodes, edges)
    }

    pub fn to_json(&self) -> String {
        let raw = NetworkJson {
            nodes: self.nodes.iter().map(|n| NodeJson { name: n.name.clone(), decay: format_q(&n.decay) }).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    source: self.nodes[e.source].name.clone(),
                    target: self.nodes[e.target].name.clone(),
                    sign: if e.sign == Sign::Activating { "+" } else { "-" }.into(),
                    threshold: format_q(&e.threshold),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }
}

/// Per node, K values indexed by input mask over the node's sources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KCollection {
    pub values: Vec<Vec<Q>>,
}

fn k_key(net: &WeightedRegulatoryNetwork, i: usize, mask: usize) -> String {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (k, (src, sign)) in net.sources(i).into_iter().enumerate() {
        if mask >> k & 1 == 1 {
            let name = net.nodes[src].name.clone();
            match sign {
                Sign::Activating => a.push(name),
                Sign::Repressing => b.push(name),
            }
        }
    }
    format!("{}|{}", a.join(","), b.join(","))
}

impl KCollection {
    /// Builds a collection from a closure over (node, mask).
    pub fn from_fn(net: &WeightedRegulatoryNetwork, f: impl Fn(usize, usize) -> Q) -> KCollection {
        let values = (0..net.len()).map(|i| (0..1usize << net.sources(i).len()).map(|y| f(i, y)).collect()).collect();
        KCollection { values }
    }

    pub fn get(&self, node: usize, mask: usize) -> &Q {
        &self.values[node][mask]
    }

    pub fn set(&mut self, node: usize, mask: usize, value: Q) {
        self.values[node][mask] = value;
    }

    /// Parses `{"node": {"A|B": "p/q", ...}}` where `A` and `B` list source
    /// names separated by commas. Every (A, B) must be present.
    pub fn from_json(net: &WeightedRegulatoryNetwork, text: &str) -> Result<KCollection, KsystemError> {
        let raw: BTreeMap<String, BTreeMap<String, String>> =
            serde_json::from_str(text).map_err(|e| KsystemError::Json(e.to_string()))?;
        let mut values = Vec::new();
        for i in 0..net.len() {
            let name = &net.nodes[i].name;
            let entries = raw.get(name).ok_or_else(|| KsystemError::K(format!("no entries for node {name}")))?;
            let sources = net.sources(i);
            let mut table = vec![None; 1 << sources.len()];
            for (key, val) in entries {
                let mask = parse_k_key(net, i, key)?;
                let v = parse_q(val).map_err(|e| KsystemError::K(e.to_string()))?;
                if v.is_negative() {
                    return Err(KsystemError::K(format!("negative value at node {name}, key {key}")));
                }
                table[mask] = Some(v);
            }
            let mut row = Vec::new();
            for (mask, v) in table.into_iter().enumerate() {
                match v {
                    Some(v) => row.push(v),
                    None => {
                        return Err(KsystemError::K(format!("missing entry {} at node {name}", k_key(net, i, mask))))
                    }
                }
            }
            values.push(row);
        }
        if let Some(extra) = raw.keys().find(|k| net.node_index(k).is_none()) {
            return Err(KsystemError::K(format!("unknown node {extra}")));
        }
        Ok(KCollection { values })
    }

    pub fn to_json(&self, net: &WeightedRegulatoryNetwork) -> String {
        let mut out = BTreeMap::new();
        for i in 0..net.len() {
            let row: BTreeMap<String, String> =
                self.values[i].iter().enumerate().map(|(m, v)| (k_key(net, i, m), format_q(v))).collect();
            out.insert(net.nodes[i].name.clone(), row);
        }
        serde_json::to_string_pretty(&out).expect("serializable")
    }
}

fn parse_k_key(net: &WeightedRegulatoryNetwork, i: usize, key: &str) -> Result<usize, KsystemError> {
    let (a, b) = key.split_once('|').ok_or_else(|| KsystemError::K(format!("key {key:?} lacks '|'")))?;
    let sources = net.sources(i);
    let mut mask = 0;
    for (part, sign) in [(a, Sign::Activating), (b, Sign::Repressing)] {
        for name in part.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let k = sources
                .iter()
                .position(|(src, s)| net.nodes[*src].name == name && *s == sign)
                .ok_or_else(|| KsystemError::K(format!("{name} is not a matching source in key {key:?}")))?;
            mask |= 1 << k;
        }
    }
    Ok(mask)
}

/// A pair of K entries that breaks monotonicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub node: usize,
    /// Masks with `larger = smaller | bit of source`.
    pub smaller: usize,
    pub larger: usize,
    pub source: usize,
}

impl Violation {
    pub fn describe(&self, net: &WeightedRegulatoryNetwork) -> String {
        format!(
            "node {}: K[{}] vs K[{}] adding source {}",
            net.nodes[self.node].name,
            k_key(net, self.node, self.smaller),
            k_key(net, self.node, self.larger),
            net.nodes[self.source].name
        )
    }
}

/// Monotonicity violations between masks differing in one source; empty iff
/// the collection is monotone.
pub fn validate_k(net: &WeightedRegulatoryNetwork, k: &KCollection) -> Result<Vec<Violation>, KsystemError> {
    if k.values.len() != net.len() {
        return Err(KsystemError::K(format!("{} nodes, {} K rows", net.len(), k.values.len())));
    }
    let mut out = Vec::new();
    for i in 0..net.len() {
        let sources = net.sources(i);
        let row = &k.values[i];
        if row.len() != 1 << sources.len() {
            return Err(KsystemError::K(format!("node {} needs {} entries", net.nodes[i].name, 1 << sources.len())));
        }
        for y in 0..row.len() {
            for (bit, (src, sign)) in sources.iter().enumerate() {
                if y >> bit & 1 == 1 {
                    continue;
                }
                let up = y | 1 << bit;
                let bad = match sign {
                    Sign::Activating => row[y] > row[up],
                    Sign::Repressing => row[y] < row[up],
                };
                if bad {
                    out.push(Violation { node: i, smaller: y, larger: up, source: *src });
                }
            }
        }
    }
    Ok(out)
}

fn ensure_valid(net: &WeightedRegulatoryNetwork, k: &KCollection) -> Result<(), KsystemError> {
    let v = validate_k(net, k)?;
    if v.is_empty() {
        Ok(())
    } else {
        Err(KsystemError::NotMonotone(v.iter().map(|x| x.describe(net)).collect()))
    }
}

/// Mixed-radix enumeration of `D`; the first coordinate varies fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    pub dims: Vec<usize>,
}

impl StateSpace {
    pub fn size(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn state(&self, mut index: usize) -> Vec<usize> {
        self.dims
            .iter()
            .map(|d| {
                let c = index % d;
                index /= d;
                c
            })
            .collect()
    }

    pub fn index(&self, state: &[usize]) -> usize {
        state.iter().zip(&self.dims).rev().fold(0, |acc, (c, d)| acc * d + c)
    }

    pub fn states(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.size()).map(|i| self.state(i))
    }
}

/// The discrete map on domain states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiMap {
    pub space: StateSpace,
    pub images: Vec<Vec<usize>>,
}

impl PhiMap {
    pub fn get(&self, state: &[usize]) -> &[usize] {
        &self.images[self.space.index(state)]
    }
}

/// Input mask of node `i` at state `d`: bit `k` set when the `k`-th source
/// lies above the threshold of its edge into `i`.
pub fn input_mask(net: &WeightedRegulatoryNetwork, i: usize, d: &[usize]) -> usize {
    net.sources(i).iter().enumerate().fold(0, |mask, (bit, (src, _))| {
        let theta = &net.edge(*src, i).expect("source edge").threshold;
        let rank = net.axis_thresholds(*src).iter().position(|t| t == theta).expect("threshold on axis");
        if d[*src] > rank {
            mask | 1 << bit
        } else {
            mask
        }
    })
}

/// Index of the domain along the axis of node `i` that contains `value`.
fn axis_index(net: &WeightedRegulatoryNetwork, i: usize, value: &Q) -> Result<usize, KsystemError> {
    let axis = net.axis_thresholds(i);
    if axis.contains(value) {
        return Err(KsystemError::Degenerate { node: net.nodes[i].name.clone(), value: format_q(value) });
    }
    Ok(axis.iter().filter(|t| *t < value).count())
}

pub fn phi_k(net: &WeightedRegulatoryNetwork, k: &KCollection) -> Result<PhiMap, KsystemError> {
    ensure_valid(net, k)?;
    let space = StateSpace { dims: net.dims() };
    let mut images = Vec::with_capacity(space.size());
    for d in space.states() {
        let mut img = Vec::with_capacity(net.len());
        for i in 0..net.len() {
            let target = k.get(i, input_mask(net, i, &d)) / &net.nodes[i].decay;
            img.push(axis_index(net, i, &target)?);
        }
        images.push(img);
    }
    Ok(PhiMap { space, images })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateTransitionGraph {
    pub space: StateSpace,
    /// Sorted, each either a self-loop or a unit move.
    pub edges: Vec<(Vec<usize>, Vec<usize>)>,
}

pub fn build_stg(phi: &PhiMap) -> StateTransitionGraph {
    let mut edges = Vec::new();
    for d in phi.space.states() {
        let img = phi.get(&d);
        if img == d.as_slice() {
            edges.push((d.clone(), d.clone()));
            continue;
        }
        for i in 0..d.len() {
            if img[i] != d[i] {
                let mut e = d.clone();
                if img[i] > d[i] {
                    e[i] += 1;
                } else {
                    e[i] -= 1;
                }
                edges.push((d.clone(), e));
            }
        }
    }
    edges.sort();
    StateTransitionGraph { space: phi.space.clone(), edges }
}

fn state_label(d: &[usize]) -> String {
    let parts: Vec<String> = d.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

impl StateTransitionGraph {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph stg {\n");
        for d in self.space.states() {
            s.push_str(&format!("  \"{}\";\n", state_label(&d)));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  \"{}\" -> \"{}\";\n", state_label(a), state_label(b)));
        }
        s.push_str("}\n");
        s
    }

    pub fn successors(&self, d: &[usize]) -> Vec<&[usize]> {
        self.edges.iter().filter(|(a, _)| a == d).map(|(_, b)| b.as_slice()).collect()
    }
}

/// The Boolean functions of one node: one per target, targets ordered by
/// descending threshold, so the tuple is ordered by implication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeFunctions {
    pub node: usize,
    pub signs: SignVector,
    pub targets: Vec<usize>,
    /// Positive functions over the beta-normalized inputs.
    pub functions: Vec<MbfFunction>,
}

impl NodeFunctions {
    /// `None` for nodes without targets.
    pub fn tuple(&self) -> Option<OrderedTuple> {
        if self.functions.is_empty() {
            None
        } else {
            Some(OrderedTuple::new(self.functions.clone()).expect("ordered by construction"))
        }
    }

    /// Raw table of the function for target position `j`, over the signed inputs.
    pub fn raw_table(&self, j: usize) -> TruthTable {
        let f = self.functions[j];
        crate::boolean_core::beta_flip(&f.table(), &self.signs).expect("arity")
    }
}

/// Boolean function collection of the class of `k`.
pub fn k_to_mbfs(net: &WeightedRegulatoryNetwork, k: &KCollection) -> Result<Vec<NodeFunctions>, KsystemError> {
    ensure_valid(net, k)?;
    let mut out = Vec::new();
    for i in 0..net.len() {
        let m = net.sources(i).len();
        let signs = net.signs(i);
        let mut targets = net.targets(i);
        targets.reverse();
        let gamma = &net.nodes[i].decay;
        let mut functions = Vec::new();
        for &t in &targets {
            let cut = &net.edge(i, t).expect("target edge").threshold * gamma;
            if k.values[i].contains(&cut) {
                return Err(KsystemError::Degenerate { node: net.nodes[i].name.clone(), value: format_q(&cut) });
            }
            let raw = TruthTable::from_fn(m, |y| k.values[i][y] > cut);
            functions.push(beta_normalize(&raw, &signs)?);
        }
        out.push(NodeFunctions { node: i, signs, targets, functions });
    }
    Ok(out)
}

/// Canonical representative of the class given by `functions` (one list per
/// node, ordered by implication). Returns the network with decays 1 and
/// thresholds `b - j + 1/2` for the `j`-th target in descending order,
/// together with `K_i(y) = sum_j f_j(beta(y))`.
pub fn mbfs_to_k(
    net: &WeightedRegulatoryNetwork,
    functions: &[Vec<MbfFunction>],
) -> Result<(WeightedRegulatoryNetwork, KCollection), KsystemError> {
    if functions.len() != net.len() {
        return Err(KsystemError::K(format!("{} nodes, {} function lists", net.len(), functions.len())));
    }
    let mut edges = net.edges.clone();
    for (i, fs) in functions.iter().enumerate() {
        let b = net.out_degree(i);
        let m = net.sources(i).len();
        if fs.len() != b {
            return Err(KsystemError::K(format!("node {} has {b} targets, got {} functions", net.nodes[i].name, fs.len())));
        }
        if let Some(f) = fs.iter().find(|f| f.n() != m) {
            return Err(BoolError::ArityMismatch(f.n(), m).into());
        }
        if !fs.is_empty() {
            OrderedTuple::new(fs.clone())?;
        }
        let mut targets = net.targets(i);
        targets.reverse();
        for (j, t) in targets.iter().enumerate() {
            let e = edges.iter_mut().find(|e| e.source == i && e.target == *t).expect("target edge");
            e.threshold = qi((b - j) as i64) - q(1, 2);
        }
    }
    let nodes = net.nodes.iter().map(|n| Node { name: n.name.clone(), decay: qi(1) }).collect();
    let normalized = WeightedRegulatoryNetwork::new(nodes, edges)?;
    let k = KCollection::from_fn(&normalized, |i, y| {
        let flipped = beta_flip_mask(y, &normalized.signs(i));
        qi(functions[i].iter().filter(|f| f.value(flipped)).count() as i64)
    });
    Ok((normalized, k))
}

fn beta_flip_mask(y: usize, signs: &SignVector) -> usize {
    signs.0.iter().enumerate().fold(y, |m, (i, s)| if *s == Sign::Repressing { m ^ 1 << i } else { m })
}

/// All-zero K for `net`.
pub fn zero_k(net: &WeightedRegulatoryNetwork) -> KCollection {
    KCollection::from_fn(net, |_, _| Q::zero())
}

/// Groups K collections by their induced state maps.
pub fn same_phi(net: &WeightedRegulatoryNetwork, a: &KCollection, b: &KCollection) -> Result<bool, KsystemError> {
    Ok(phi_k(net, a)? == phi_k(net, b)?)
}

impl fmt::Display for StateTransitionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.edges {
            writeln!(f, "{} -> {}", state_label(a), state_label(b))?;
        }
        Ok(())
    }
}

/// Names each state by its label; handy for golden comparisons.
pub fn edge_labels(stg: &StateTransitionGraph) -> Vec<(String, String)> {
    stg.edges.iter().map(|(a, b)| (state_label(a), state_label(b))).collect()
}
