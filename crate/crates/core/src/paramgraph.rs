//! Parameter graphs: one factor per network node whose vertices are the
//! ordered tuples of positive monotone functions for that node, adjacent when
//! a single function differs at a single input corner. The graph of a network
//! is the product of its factors.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::boolean_core::{enumerate_ordered_tuples, BoolError, MbfFunction, OrderedTuple, SignVector};
use crate::interaction::ClassTag;
use crate::ksystem::WeightedRegulatoryNetwork;
use crate::realizability::{check_class, RealizabilityError};

pub const MAX_FACTOR_INPUTS: usize = 4;
pub const MAX_FACTOR_OUTPUTS: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamGraphError {
    #[error("factor with {inputs} inputs and {outputs} outputs exceeds the guard")]
    Guard { inputs: usize, outputs: usize },
    #[error(transparent)]
    Bool(#[from] BoolError),
    #[error(transparent)]
    Realizability(#[from] RealizabilityError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorGraph {
    pub inputs: usize,
    pub outputs: usize,
    pub signs: SignVector,
    /// Ordered tuples, lexicographic by truth masks.
    pub vertices: Vec<Vec<MbfFunction>>,
    /// `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

pub fn build_factor(inputs: usize, outputs: usize, signs: SignVector) -> Result<FactorGraph, ParamGraphError> {
    if inputs > MAX_FACTOR_INPUTS || outputs > MAX_FACTOR_OUTPUTS {
        return Err(ParamGraphError::Guard { inputs, outputs });
    }
    if signs.0.len() != inputs {
        return Err(BoolError::ArityMismatch(signs.0.len(), inputs).into());
    }
    let vertices = enumerate_ordered_tuples(inputs, outputs)?;
    let index: HashMap<&[MbfFunction], usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let mut edges = Vec::new();
    for (u, tuple) in vertices.iter().enumerate() {
        for j in 0..tuple.len() {
            for corner in 0..1usize << inputs {
                let mut truth = tuple[j].truth();
                truth.flip(corner);
                // the flipped function must stay monotone and the tuple ordered
                let Ok(flipped) = MbfFunction::new(inputs, truth) else { continue };
                let mut next = tuple.clone();
                next[j] = flipped;
                if let Some(&v) = index.get(next.as_slice()) {
                    if u < v {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    edges.sort();
    Ok(FactorGraph { inputs, outputs, signs, vertices, edges })
}

impl FactorGraph {
    pub fn tuple(&self, v: usize) -> Option<OrderedTuple> {
        let fs = &self.vertices[v];
        if fs.is_empty() {
            None
        } else {
            Some(OrderedTuple::new(fs.clone()).expect("vertices are ordered"))
        }
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterGraph {
    pub names: Vec<String>,
    pub factors: Vec<FactorGraph>,
}

pub fn build_parameter_graph(net: &WeightedRegulatoryNetwork) -> Result<ParameterGraph, ParamGraphError> {
    let factors = (0..net.len())
        .map(|i| build_factor(net.sources(i).len(), net.out_degree(i), net.signs(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ParameterGraph { names: net.nodes().iter().map(|n| n.name.clone()).collect(), factors })
}

impl ParameterGraph {
    pub fn vertex_count(&self) -> usize {
        self.factors.iter().map(|f| f.vertices.len()).product()
    }

    /// Factor coordinates of product vertex `index`; the first factor varies fastest.
    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        self.factors
            .iter()
            .map(|f| {
                let c = index % f.vertices.len();
                index /= f.vertices.len();
                c
            })
            .collect()
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.factors).rev().fold(0, |acc, (c, f)| acc * f.vertices.len() + c)
    }

    /// Product edges: one factor moves along one of its edges.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            let c = self.coords(u);
            for (i, f) in self.factors.iter().enumerate() {
                for &(a, b) in &f.edges {
                    if c[i] == a {
                        let mut d = c.clone();
                        d[i] = b;
                        out.push((u, self.index(&d)));
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn label(&self, index: usize) -> String {
        let parts: Vec<String> = self.coords(index).iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph parameters {\n");
        for v in 0..self.vertex_count() {
            s.push_str(&format!("  v{v} [label=\"{}\"];\n", self.label(v)));
        }
        for (a, b) in self.edges() {
            s.push_str(&format!("  v{a} -- v{b};\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Vertex {
            id: usize,
            coords: Vec<usize>,
            functions: Vec<Vec<String>>,
        }
        #[derive(Serialize)]
        struct Doc {
            nodes: Vec<String>,
            vertices: Vec<Vertex>,
            edges: Vec<(usize, usize)>,
        }
        let vertices = (0..self.vertex_count())
            .map(|id| Vertex { id, coords: self.coords(id), functions: self.functions(id) })
            .collect();
        let doc = Doc { nodes: self.names.clone(), vertices, edges: self.edges() };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    /// Hex forms of the functions at product vertex `index`, per node.
    pub fn functions(&self, index: usize) -> Vec<Vec<String>> {
        self.coords(index)
            .iter()
            .zip(&self.factors)
            .map(|(c, f)| f.vertices[*c].iter().map(|g| g.to_string()).collect())
            .collect()
    }

    /// One row per product vertex, with a verdict column per annotation.
    pub fn to_csv(&self, annotations: &[Annotation]) -> String {
        let mut s = String::from("vertex,coords,functions");
        for a in annotations {
            s.push(',');
            s.push_str(a.class.name());
        }
        s.push('\n');
        for v in 0..self.vertex_count() {
            let coords: Vec<String> = self.coords(v).iter().map(|c| c.to_string()).collect();
            let fs: Vec<String> = self.functions(v).iter().map(|f| f.join(" ")).collect();
            s.push_str(&format!("{v},{},{}", coords.join(" "), fs.join(" ; ")));
            for a in annotations {
                s.push(',');
                s.push_str(a.product_label(&self.coords(v)));
            }
            s.push('\n');
        }
        s
    }
}

/// Verdict label of every factor vertex for one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annotation {
    pub class: ClassTag,
    pub factors: Vec<Vec<&'static str>>,
}

impl Annotation {
    /// Realizable iff every factor is; NotRealizable if any factor is.
    pub fn product_label(&self, coords: &[usize]) -> &'static str {
        let labels: Vec<&str> = coords.iter().zip(&self.factors).map(|(c, f)| f[*c]).collect();
        if labels.contains(&"NotRealizable") {
            "NotRealizable"
        } else if labels.iter().all(|l| *l == "Realizable") {
            "Realizable"
        } else {
            "Unknown"
        }
    }

    pub fn counts(&self, factor: usize) -> (usize, usize, usize) {
        let f = &self.factors[factor];
        let c = |l: &str| f.iter().filter(|x| **x == l).count();
        (c("Realizable"), c("NotRealizable"), c("Unknown"))
    }
}

/// Verdict for each vertex of one factor. Tuples with no outputs or no
/// inputs are constant and count as realizable.
pub fn annotate_factor(f: &FactorGraph, class: ClassTag) -> Result<Vec<&'static str>, ParamGraphError> {
    (0..f.vertices.len())
        .map(|v| match f.tuple(v) {
            Some(t) if t.n() > 0 => Ok(check_class(&t, class)?.label()),
            _ => Ok("Realizable"),
        })
        .collect()
}

pub fn annotate_realizability(pg: &ParameterGraph, class: ClassTag) -> Result<Annotation, ParamGraphError> {
    let factors = pg.factors.iter().map(|f| annotate_factor(f, class)).collect::<Result<Vec<_>, _>>()?;
    Ok(Annotation { class, factors })
}
