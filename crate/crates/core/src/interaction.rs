//! Interaction functions built from sums, products of sums and sums of
//! products of sums.
//!
//! A structure is a list of groups; each group is a product of blocks and
//! each block is a sum of variables. Blocks are stored as bitmasks over
//! 0-based variables. Canonical form merges every single-block group into
//! one "linear" group (a sum of sums is a sum), sorts blocks and groups by
//! minimum element, and is enforced on construction.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolean_core::{Side, MAX_ARITY};
use crate::rational::{format_q, qi, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InteractionError {
    #[error("structure is not valid: {0}")]
    Invalid(String),
    #[error("parse error in {text:?}: {msg}")]
    Parse { text: String, msg: String },
    #[error("argument z_{0} is not positive")]
    NonPositive(usize),
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("phi needs 0 < low < high, violated at z_{0}")]
    BadPhi(usize),
    #[error("collapse needs n > 1")]
    TooSmall,
    #[error("collapsing z_{0} leaves no variables")]
    Empty(usize),
}

/// Algebraic class of interaction functions, plus the unconstrained K class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassTag {
    Sigma,
    PiSigma,
    SigmaPiSigma,
    K,
}

impl ClassTag {
    pub const ALL: [ClassTag; 4] = [ClassTag::Sigma, ClassTag::PiSigma, ClassTag::SigmaPiSigma, ClassTag::K];

    pub fn name(self) -> &'static str {
        match self {
            ClassTag::Sigma => "sigma",
            ClassTag::PiSigma => "pisigma",
            ClassTag::SigmaPiSigma => "sigmapisigma",
            ClassTag::K => "k",
        }
    }

    pub fn parse(s: &str) -> Option<ClassTag> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sigma" | "s" => Some(ClassTag::Sigma),
            "pisigma" | "ps" => Some(ClassTag::PiSigma),
            "sigmapisigma" | "sps" => Some(ClassTag::SigmaPiSigma),
            "k" => Some(ClassTag::K),
            _ => None,
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-variable low and high values: low_i = phi_i(0), high_i = phi_i(1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhiAssignment {
    pub low: Vec<Q>,
    pub high: Vec<Q>,
}

impl PhiAssignment {
    pub fn new(low: Vec<Q>, high: Vec<Q>) -> Result<PhiAssignment, InteractionError> {
        if low.len() != high.len() {
            return Err(InteractionError::Length { expected: low.len(), got: high.len() });
        }
        for i in 0..low.len() {
            if !low[i].is_positive() || low[i] >= high[i] {
                return Err(InteractionError::BadPhi(i + 1));
            }
        }
        Ok(PhiAssignment { low, high })
    }

    /// low = 1 everywhere.
    pub fn unit_low(high: Vec<Q>) -> Result<PhiAssignment, InteractionError> {
        PhiAssignment::new(vec![Q::one(); high.len()], high)
    }

    pub fn n(&self) -> usize {
        self.low.len()
    }

    pub fn side(&self, var: usize, side: Side) -> &Q {
        match side {
            Side::Floor => &self.low[var],
            Side::Ceiling => &self.high[var],
        }
    }

    /// phi(v) for corner index v.
    pub fn at(&self, v: usize) -> Vec<Q> {
        (0..self.n())
            .map(|i| if v >> i & 1 == 1 { self.high[i].clone() } else { self.low[i].clone() })
            .collect()
    }
}

/// Nested set partition describing one interaction function.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InteractionStructure {
    n: usize,
    groups: Vec<Vec<u16>>,
}

fn min_bit(b: u16) -> u32 {
    b.trailing_zeros()
}

impl InteractionStructure {
    /// Validates disjointness and canonicalizes. `groups[k][j]` is a bitmask
    /// of 0-based variables.
    pub fn new(n: usize, groups: Vec<Vec<u16>>) -> Result<InteractionStructure, InteractionError> {
        if n > MAX_ARITY {
            return Err(InteractionError::Invalid(format!("arity {n} too large")));
        }
        let mut seen = 0u16;
        for g in &groups {
            if g.is_empty() {
                return Err(InteractionError::Invalid("empty group".into()));
            }
            for &b in g {
                if b == 0 {
                    return Err(InteractionError::Invalid("empty block".into()));
                }
                if b >> n != 0 {
                    return Err(InteractionError::Invalid("variable beyond arity".into()));
                }
                if b & seen != 0 {
                    return Err(InteractionError::Invalid("blocks overlap".into()));
                }
                seen |= b;
            }
        }
        if seen == 0 {
            return Err(InteractionError::Invalid("no variables".into()));
        }
        let mut linear = 0u16;
        let mut rest: Vec<Vec<u16>> = Vec::new();
        for mut g in groups {
            if g.len() == 1 {
                linear |= g[0];
            } else {
                g.sort_by_key(|b| min_bit(*b));
                rest.push(g);
            }
        }
        if linear != 0 {
            rest.push(vec![linear]);
        }
        rest.sort_by_key(|g| g.iter().map(|b| min_bit(*b)).min().unwrap());
        Ok(InteractionStructure { n, groups: rest })
    }

    /// Sum over the subset `mask`.
    pub fn sigma(n: usize, mask: u16) -> Result<InteractionStructure, InteractionError> {
        InteractionStructure::new(n, vec![vec![mask]])
    }

    pub fn full_sum(n: usize) -> InteractionStructure {
        InteractionStructure::sigma(n, ((1u32 << n) - 1) as u16).expect("n >= 1")
    }

    /// Product of the given blocks.
    pub fn product_of_sums(n: usize, blocks: Vec<u16>) -> Result<InteractionStructure, InteractionError> {
        InteractionStructure::new(n, vec![blocks])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn groups(&self) -> &[Vec<u16>] {
        &self.groups
    }

    pub fn support(&self) -> u16 {
        self.groups.iter().flatten().fold(0, |m, b| m | b)
    }

    pub fn uses_all(&self) -> bool {
        self.support() as u32 == (1u32 << self.n) - 1
    }

    /// Maximum number of blocks in a group: the polynomial degree.
    pub fn degree(&self) -> usize {
        self.groups.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Tightest class containing this structure.
    pub fn class_tag(&self) -> ClassTag {
        if self.groups.len() == 1 && self.groups[0].len() == 1 {
            ClassTag::Sigma
        } else if self.groups.len() == 1 {
            ClassTag::PiSigma
        } else {
            ClassTag::SigmaPiSigma
        }
    }

    pub fn belongs_to(&self, class: ClassTag) -> bool {
        match class {
            ClassTag::Sigma => self.class_tag() == ClassTag::Sigma,
            ClassTag::PiSigma => self.uses_all() && self.class_tag() <= ClassTag::PiSigma,
            ClassTag::SigmaPiSigma | ClassTag::K => self.uses_all(),
        }
    }

    /// The whole expression is z_var times something free of z_var.
    pub fn has_factor(&self, var: usize) -> bool {
        self.groups.len() == 1 && self.groups[0].len() >= 2 && self.groups[0].contains(&(1 << var))
    }

    /// z_var is a standalone summand.
    pub fn has_simple_term(&self, var: usize) -> bool {
        self.groups.iter().any(|g| g.len() == 1 && g[0] >> var & 1 == 1)
    }

    pub fn evaluate(&self, z: &[Q]) -> Result<Q, InteractionError> {
        if z.len() != self.n {
            return Err(InteractionError::Length { expected: self.n, got: z.len() });
        }
        if let Some(i) = z.iter().position(|x| !x.is_positive()) {
            return Err(InteractionError::NonPositive(i + 1));
        }
        Ok(self.evaluate_unchecked(z))
    }

    pub fn evaluate_unchecked(&self, z: &[Q]) -> Q {
        let mut total = Q::zero();
        for g in &self.groups {
            let mut prod = Q::one();
            for &b in g {
                let mut s = Q::zero();
                for (i, zi) in z.iter().enumerate() {
                    if b >> i & 1 == 1 {
                        s += zi;
                    }
                }
                prod *= s;
            }
            total += prod;
        }
        total
    }

    /// Lambda(phi(v)) for every corner v, indexed by corner.
    pub fn cube_values(&self, phi: &PhiAssignment) -> Vec<Q> {
        (0..1usize << self.n).map(|v| self.evaluate_unchecked(&phi.at(v))).collect()
    }

    /// Removes variable `var` after fixing it to `phi_var(side)`.
    ///
    /// Case 1: `{var}` is a whole group; it becomes an additive offset.
    /// Case 2: `{var}` is a block in a product; the sibling block with the
    /// smallest minimum absorbs the factor. Case 3: `var` shares a block;
    /// the smallest other variable of that block absorbs the summand.
    pub fn collapse(&self, var: usize, side: Side, phi: &PhiAssignment) -> Result<CollapsedStructure, InteractionError> {
        if self.n < 2 {
            return Err(InteractionError::TooSmall);
        }
        if phi.n() != self.n {
            return Err(InteractionError::Length { expected: self.n, got: phi.n() });
        }
        let c = phi.side(var, side).clone();
        let bit = 1u16 << var;
        let mut low = phi.low.clone();
        let mut high = phi.high.clone();
        let mut offset = Q::zero();
        let mut groups = self.groups.clone();
        if let Some(p) = groups.iter().position(|g| g.iter().any(|b| b & bit != 0)) {
            let q = groups[p].iter().position(|b| b & bit != 0).unwrap();
            if groups[p][q] == bit && groups[p].len() == 1 {
                groups.remove(p);
                offset = c;
            } else if groups[p][q] == bit {
                groups[p].remove(q);
                let sib = groups[p][0];
                for i in 0..self.n {
                    if sib >> i & 1 == 1 {
                        low[i] = &low[i] * &c;
                        high[i] = &high[i] * &c;
                    }
                }
            } else {
                groups[p][q] &= !bit;
                let t = min_bit(groups[p][q]) as usize;
                low[t] = &low[t] + &c;
                high[t] = &high[t] + &c;
            }
        }
        if groups.is_empty() {
            return Err(InteractionError::Empty(var + 1));
        }
        let renumber = |b: u16| -> u16 {
            let low_bits = b & (bit - 1);
            let high_bits = (b >> (var + 1)) << var;
            low_bits | high_bits
        };
        let groups = groups.into_iter().map(|g| g.into_iter().map(renumber).collect()).collect();
        low.remove(var);
        high.remove(var);
        Ok(CollapsedStructure {
            structure: InteractionStructure::new(self.n - 1, groups)?,
            phi: PhiAssignment::new(low, high)?,
            offset,
        })
    }

    /// Parses "(z1+z2)*z3", "z1*z2+z3", or juxtaposed "z2(z1+z3)".
    pub fn parse(text: &str, n: usize) -> Result<InteractionStructure, InteractionError> {
        let err = |msg: &str| InteractionError::Parse { text: text.to_string(), msg: msg.to_string() };
        let mut p = Parser { s: text.as_bytes(), pos: 0, n };
        let groups = p.sum().map_err(|m| err(&m))?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(err("trailing input"));
        }
        InteractionStructure::new(n, groups)
    }
}

/// Output of [`InteractionStructure::collapse`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapsedStructure {
    pub structure: InteractionStructure,
    pub phi: PhiAssignment,
    /// Subtract from thresholds; non-zero only for a removed summand group.
    pub offset: Q,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Vec<Vec<u16>>, String> {
        let mut groups = vec![self.product()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            groups.push(self.product()?);
        }
        Ok(groups)
    }

    fn product(&mut self) -> Result<Vec<u16>, String> {
        let mut blocks = vec![self.factor()?];
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    blocks.push(self.factor()?);
                }
                Some(b'z') | Some(b'(') => blocks.push(self.factor()?),
                _ => return Ok(blocks),
            }
        }
    }

    fn factor(&mut self) -> Result<u16, String> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let idx: usize = std::str::from_utf8(&self.s[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| "expected variable index".to_string())?;
                if idx == 0 || idx > self.n {
                    return Err(format!("z{idx} outside 1..={}", self.n));
                }
                Ok(1 << (idx - 1))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err("missing ')'".into());
                }
                self.pos += 1;
                let mut mask = 0u16;
                for g in inner {
                    if g.len() != 1 {
                        return Err("only sums of variables may appear in parentheses".into());
                    }
                    if mask & g[0] != 0 {
                        return Err("repeated variable".into());
                    }
                    mask |= g[0];
                }
                Ok(mask)
            }
            _ => Err(format!("unexpected input at byte {}", self.pos)),
        }
    }
}

fn block_text(b: u16) -> String {
    (0..16).filter(|i| b >> i & 1 == 1).map(|i| format!("z{}", i + 1)).collect::<Vec<_>>().join("+")
}

impl fmt::Display for InteractionStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .groups
            .iter()
            .map(|g| {
                if g.len() == 1 {
                    block_text(g[0])
                } else {
                    g.iter()
                        .map(|&b| if b.count_ones() > 1 { format!("({})", block_text(b)) } else { block_text(b) })
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        f.write_str(&parts.join("+"))
    }
}

impl fmt::Debug for InteractionStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [n={}]", self, self.n)
    }
}

fn set_partitions(elems: &[usize]) -> Vec<Vec<u16>> {
    // restricted growth strings
    fn rec(elems: &[usize], i: usize, blocks: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i == elems.len() {
            out.push(blocks.clone());
            return;
        }
        let bit = 1u16 << elems[i];
        for j in 0..blocks.len() {
            blocks[j] |= bit;
            rec(elems, i + 1, blocks, out);
            blocks[j] &= !bit;
        }
        blocks.push(bit);
        rec(elems, i + 1, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(elems, 0, &mut Vec::new(), &mut out);
    out
}

fn bits_of(mask: u16) -> Vec<usize> {
    (0..16).filter(|i| mask >> i & 1 == 1).collect()
}

/// Nonempty subsets of `{0..n}`, largest first, then ascending mask.
pub fn subsets_by_size(n: usize) -> Vec<u16> {
    let mut v: Vec<u16> = (1..1u32 << n).map(|m| m as u16).collect();
    v.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
    v
}

/// Every canonical structure of the class on `n` variables. The full sum
/// always comes first.
pub fn enumerate_structures(n: usize, class: ClassTag) -> Result<Vec<InteractionStructure>, InteractionError> {
    if n == 0 || n > 5 {
        return Err(InteractionError::Invalid(format!("enumeration needs 1 <= n <= 5, got {n}")));
    }
    let all: Vec<usize> = (0..n).collect();
    let mut out = match class {
        ClassTag::Sigma => subsets_by_size(n)
            .into_iter()
            .map(|m| InteractionStructure::sigma(n, m))
            .collect::<Result<Vec<_>, _>>()?,
        ClassTag::PiSigma => set_partitions(&all)
            .into_iter()
            .map(|blocks| InteractionStructure::product_of_sums(n, blocks))
            .collect::<Result<Vec<_>, _>>()?,
        ClassTag::SigmaPiSigma | ClassTag::K => {
            let mut found = Vec::new();
            for groups in set_partitions(&all) {
                let per_group: Vec<Vec<Vec<u16>>> = groups.iter().map(|&g| set_partitions(&bits_of(g))).collect();
                let mut choice = vec![0usize; groups.len()];
                loop {
                    let gs = per_group.iter().zip(&choice).map(|(opts, &c)| opts[c].clone()).collect();
                    found.push(InteractionStructure::new(n, gs)?);
                    let mut k = 0;
                    while k < choice.len() {
                        choice[k] += 1;
                        if choice[k] < per_group[k].len() {
                            break;
                        }
                        choice[k] = 0;
                        k += 1;
                    }
                    if k == choice.len() {
                        break;
                    }
                }
            }
            found.sort();
            found.dedup();
            found
        }
    };
    if class != ClassTag::Sigma {
        out.sort_by_key(|s| (s.groups.iter().map(Vec::len).sum::<usize>(), s.groups.len(), s.groups.clone()));
    }
    Ok(out)
}

/// Formats phi values as "(a,b,c)".
pub fn format_vector(v: &[Q]) -> String {
    format!("({})", v.iter().map(format_q).collect::<Vec<_>>().join(","))
}

/// Small helper for tests and examples: integers as rationals.
pub fn qs(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| qi(x)).collect()
}

impl Serialize for InteractionStructure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}:{}", self.n, self))
    }
}

impl<'de> Deserialize<'de> for InteractionStructure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let (n, text) = s.split_once(':').ok_or_else(|| serde::de::Error::custom("expected n:structure"))?;
        let n: usize = n.parse().map_err(serde::de::Error::custom)?;
        InteractionStructure::parse(text, n).map_err(serde::de::Error::custom)
    }
}
