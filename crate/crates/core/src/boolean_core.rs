//! Hypercube corners, positive monotone Boolean functions and the
//! operators built on them: implication order, floor/ceiling collapse,
//! the eta bijection and enumeration of MBF+(n).
//!
//! Variables are 0-based in code (`var = 0` is y1). Corner index bit `i`
//! holds `y_{i+1}`, so the corner string "y1y2y3" is read from the low bit:
//! "101" is index 5.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

/// Largest supported arity for corners and functions.
pub const MAX_ARITY: usize = 8;
/// Default guard for `enumerate_mbf_positive`.
pub const MAX_ENUM_ARITY: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoolError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("arity {0} outside the supported range")]
    ArityOutOfRange(usize),
    #[error("corner index {index} out of range for n = {n}")]
    CornerOutOfRange { n: usize, index: usize },
    #[error("truth table is not positive monotone")]
    NotMonotone,
    #[error("functions are not ordered by implication")]
    NotOrdered,
    #[error("empty tuple")]
    EmptyTuple,
    #[error("variable {var} out of range for n = {n}")]
    VarOutOfRange { n: usize, var: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// 256-bit truth mask, enough for 8 inputs.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Truth(pub [u64; 4]);

impl Truth {
    pub const EMPTY: Truth = Truth([0; 4]);

    /// All `count` low bits set.
    pub fn full(count: usize) -> Truth {
        let mut t = Truth::EMPTY;
        for (w, word) in t.0.iter_mut().enumerate() {
            let lo = w * 64;
            if count >= lo + 64 {
                *word = u64::MAX;
            } else if count > lo {
                *word = (1u64 << (count - lo)) - 1;
            }
        }
        t
    }

    #[inline]
    pub fn get(&self, b: usize) -> bool {
        (self.0[b >> 6] >> (b & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, b: usize, on: bool) {
        if on {
            self.0[b >> 6] |= 1 << (b & 63);
        } else {
            self.0[b >> 6] &= !(1 << (b & 63));
        }
    }

    #[inline]
    pub fn flip(&mut self, b: usize) {
        self.0[b >> 6] ^= 1 << (b & 63);
    }

    pub fn is_subset(&self, other: &Truth) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    pub fn xor(&self, other: &Truth) -> Truth {
        let mut t = *self;
        for (a, b) in t.0.iter_mut().zip(other.0.iter()) {
            *a ^= b;
        }
        t
    }

    /// Set bit positions in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..256).filter(move |&b| self.get(b))
    }

    /// Places `other` above the low `shift` bits (`shift` is a power of two).
    fn or_shifted(&self, other: &Truth, shift: usize) -> Truth {
        let mut t = *self;
        for b in other.ones() {
            t.set(b + shift, true);
        }
        t
    }
}

impl Ord for Truth {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for Truth {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Truth({:016x}{:016x}{:016x}{:016x})", self.0[3], self.0[2], self.0[1], self.0[0])
    }
}

/// A vertex of the n-cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    n: u8,
    index: u16,
}

impl Corner {
    pub fn new(n: usize, index: usize) -> Result<Corner, BoolError> {
        if n > MAX_ARITY {
            return Err(BoolError::ArityOutOfRange(n));
        }
        if index >= 1 << n {
            return Err(BoolError::CornerOutOfRange { n, index });
        }
        Ok(Corner { n: n as u8, index: index as u16 })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn index(&self) -> usize {
        self.index as usize
    }

    /// Coordinate of variable `var` (0-based).
    pub fn bit(&self, var: usize) -> bool {
        (self.index >> var) & 1 == 1
    }

    /// Parses "y1y2...yn"; the first character is y1.
    pub fn parse(s: &str) -> Result<Corner, BoolError> {
        let s = s.trim();
        let mut index = 0usize;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => index |= 1 << i,
                _ => return Err(BoolError::Parse(format!("bad corner {s:?}"))),
            }
        }
        Corner::new(s.chars().count(), index)
    }

    pub fn all(n: usize) -> impl Iterator<Item = Corner> {
        (0..1usize << n).map(move |i| Corner { n: n as u8, index: i as u16 })
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Corner string "y1y2..." for a raw index.
pub fn corner_string(n: usize, index: usize) -> String {
    (0..n).map(|i| if (index >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Which face of the cube in a given direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Floor,
    Ceiling,
}

impl Side {
    pub fn bit(self) -> usize {
        match self {
            Side::Floor => 0,
            Side::Ceiling => 1,
        }
    }
}

/// Per-input sign used by the beta coordinate change.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Activating,
    Repressing,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn all_activating(n: usize) -> SignVector {
        SignVector(vec![Sign::Activating; n])
    }

    fn repressing_mask(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Sign::Repressing)
            .fold(0, |m, (i, _)| m | 1 << i)
    }
}

/// Unvalidated truth table. Used for raw inputs that may not be monotone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    pub n: usize,
    pub truth: Truth,
}

impl TruthTable {
    pub fn new(n: usize, truth: Truth) -> Result<TruthTable, BoolError> {
        if n > MAX_ARITY {
            return Err(BoolError::ArityOutOfRange(n));
        }
        if !truth.is_subset(&Truth::full(1 << n)) {
            return Err(BoolError::Parse("truth bits beyond 2^n".into()));
        }
        Ok(TruthTable { n, truth })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> TruthTable {
        let mut truth = Truth::EMPTY;
        for b in 0..1usize << n {
            truth.set(b, f(b));
        }
        TruthTable { n, truth }
    }

    pub fn from_corners(n: usize, corners: &[&str]) -> Result<TruthTable, BoolError> {
        let mut truth = Truth::EMPTY;
        for s in corners {
            let c = Corner::parse(s)?;
            if c.n() != n {
                return Err(BoolError::ArityMismatch(c.n(), n));
            }
            truth.set(c.index(), true);
        }
        Ok(TruthTable { n, truth })
    }
}

/// True iff raising any input never lowers the output.
pub fn is_monotone_positive(table: &TruthTable) -> bool {
    let n = table.n;
    (0..n).all(|i| {
        (0..1usize << n)
            .filter(|v| v >> i & 1 == 0)
            .all(|v| !table.truth.get(v) || table.truth.get(v | 1 << i))
    })
}

/// Raw beta coordinate change: complements every repressing input. An involution.
pub fn beta_flip(table: &TruthTable, signs: &SignVector) -> Result<TruthTable, BoolError> {
    if signs.0.len() != table.n {
        return Err(BoolError::ArityMismatch(signs.0.len(), table.n));
    }
    let r = signs.repressing_mask();
    Ok(TruthTable::from_fn(table.n, |v| table.truth.get(v ^ r)))
}

/// Turns a sign-monotone function into a positive one.
pub fn beta_normalize(table: &TruthTable, signs: &SignVector) -> Result<MbfFunction, BoolError> {
    let flipped = beta_flip(table, signs)?;
    MbfFunction::from_table(flipped)
}

/// A positive monotone Boolean function on `n <= 8` inputs.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MbfFunction {
    n: u8,
    truth: Truth,
}

impl PartialOrd for MbfFunction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MbfFunction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.truth).cmp(&(other.n, other.truth))
    }
}

impl MbfFunction {
    pub fn new(n: usize, truth: Truth) -> Result<MbfFunction, BoolError> {
        MbfFunction::from_table(TruthTable::new(n, truth)?)
    }

    pub fn from_table(table: TruthTable) -> Result<MbfFunction, BoolError> {
        if !is_monotone_positive(&table) {
            return Err(BoolError::NotMonotone);
        }
        Ok(MbfFunction { n: table.n as u8, truth: table.truth })
    }

    /// Builds from truth corners written as "y1y2...yn".
    pub fn from_corners(n: usize, corners: &[&str]) -> Result<MbfFunction, BoolError> {
        MbfFunction::from_table(TruthTable::from_corners(n, corners)?)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<MbfFunction, BoolError> {
        if n > MAX_ARITY {
            return Err(BoolError::ArityOutOfRange(n));
        }
        MbfFunction::from_table(TruthTable::from_fn(n, f))
    }

    pub fn zero(n: usize) -> MbfFunction {
        MbfFunction { n: n as u8, truth: Truth::EMPTY }
    }

    pub fn one(n: usize) -> MbfFunction {
        MbfFunction { n: n as u8, truth: Truth::full(1 << n) }
    }

    /// y_{var+1}.
    pub fn projection(n: usize, var: usize) -> MbfFunction {
        let t = TruthTable::from_fn(n, |v| v >> var & 1 == 1);
        MbfFunction { n: n as u8, truth: t.truth }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn truth(&self) -> Truth {
        self.truth
    }

    pub fn table(&self) -> TruthTable {
        TruthTable { n: self.n(), truth: self.truth }
    }

    #[inline]
    pub fn value(&self, index: usize) -> bool {
        self.truth.get(index)
    }

    pub fn evaluate(&self, v: &Corner) -> Result<bool, BoolError> {
        if v.n() != self.n() {
            return Err(BoolError::ArityMismatch(v.n(), self.n()));
        }
        Ok(self.value(v.index()))
    }

    /// Truth set indices, ascending.
    pub fn true_set(&self) -> Vec<usize> {
        (0..1usize << self.n).filter(|&b| self.value(b)).collect()
    }

    pub fn false_set(&self) -> Vec<usize> {
        (0..1usize << self.n).filter(|&b| !self.value(b)).collect()
    }

    /// `self ≺ other`: truth set containment.
    pub fn implies(&self, other: &MbfFunction) -> Result<bool, BoolError> {
        if self.n != other.n {
            return Err(BoolError::ArityMismatch(self.n(), other.n()));
        }
        Ok(self.truth.is_subset(&other.truth))
    }

    /// Restricts to the face `y_{var+1} = side` and drops that coordinate.
    pub fn collapse(&self, var: usize, side: Side) -> Result<MbfFunction, BoolError> {
        let n = self.n();
        if n < 2 {
            return Err(BoolError::ArityOutOfRange(n));
        }
        if var >= n {
            return Err(BoolError::VarOutOfRange { n, var });
        }
        let t = TruthTable::from_fn(n - 1, |w| self.value(expand_corner(w, var, side.bit())));
        Ok(MbfFunction { n: (n - 1) as u8, truth: t.truth })
    }

    /// Same as `collapse` but also accepts n = 1, giving a constant on 0 inputs.
    pub fn collapse_to_any(&self, var: usize, side: Side) -> MbfFunction {
        let n = self.n();
        let t = TruthTable::from_fn(n - 1, |w| self.value(expand_corner(w, var, side.bit())));
        MbfFunction { n: (n - 1) as u8, truth: t.truth }
    }

    pub fn to_hex(&self) -> String {
        let bits = 1usize << self.n;
        let chars = bits.div_ceil(4).max(1);
        let mut s = String::with_capacity(chars);
        for c in (0..chars).rev() {
            let mut nib = 0u32;
            for k in 0..4 {
                let b = c * 4 + k;
                if b < bits && self.value(b) {
                    nib |= 1 << k;
                }
            }
            s.push(char::from_digit(nib, 16).unwrap());
        }
        s
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<MbfFunction, BoolError> {
        if n > MAX_ARITY {
            return Err(BoolError::ArityOutOfRange(n));
        }
        let bad = || BoolError::Parse(format!("bad hex {hex:?} for n = {n}"));
        let mut truth = Truth::EMPTY;
        for (pos, ch) in hex.trim().chars().rev().enumerate() {
            let nib = ch.to_digit(16).ok_or_else(bad)?;
            for k in 0..4 {
                if nib >> k & 1 == 1 {
                    let b = pos * 4 + k;
                    if b >= 1 << n {
                        return Err(bad());
                    }
                    truth.set(b, true);
                }
            }
        }
        MbfFunction::new(n, truth)
    }
}

impl fmt::Display for MbfFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mbf:{}:{}", self.n, self.to_hex())
    }
}

impl fmt::Debug for MbfFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MbfFunction {
    type Err = BoolError;

    /// Accepts "mbf:<n>:<hex>".
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["mbf", n, hex] => {
                let n: usize = n.parse().map_err(|_| BoolError::Parse(s.to_string()))?;
                MbfFunction::from_hex(n, hex)
            }
            _ => Err(BoolError::Parse(format!("expected mbf:<n>:<hex>, got {s:?}"))),
        }
    }
}

impl serde::Serialize for MbfFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for MbfFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Inserts `bit` at position `var` of the (n-1)-bit corner `w`.
#[inline]
pub fn expand_corner(w: usize, var: usize, bit: usize) -> usize {
    let low = w & ((1 << var) - 1);
    let high = (w >> var) << (var + 1);
    low | (bit << var) | high
}

/// Removes bit `var` from corner `v`.
#[inline]
pub fn drop_coordinate(v: usize, var: usize) -> usize {
    let low = v & ((1 << var) - 1);
    let high = (v >> (var + 1)) << var;
    low | high
}

/// eta(f, g): floor f and ceiling g in the new last direction.
pub fn eta(f: &MbfFunction, g: &MbfFunction) -> Result<MbfFunction, BoolError> {
    if !f.implies(g)? {
        return Err(BoolError::NotOrdered);
    }
    if f.n() + 1 > MAX_ARITY {
        return Err(BoolError::ArityOutOfRange(f.n() + 1));
    }
    let half = 1usize << f.n;
    Ok(MbfFunction { n: f.n + 1, truth: f.truth.or_shifted(&g.truth, half) })
}

/// Floor and ceiling of `h` in its last direction.
pub fn eta_inverse(h: &MbfFunction) -> Result<(MbfFunction, MbfFunction), BoolError> {
    if h.n() == 0 {
        return Err(BoolError::ArityOutOfRange(0));
    }
    let last = h.n() - 1;
    Ok((h.collapse_to_any(last, Side::Floor), h.collapse_to_any(last, Side::Ceiling)))
}

/// Ordered tuple f_1 ≺ ... ≺ f_k of equal arity. Equal neighbours are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedTuple {
    functions: Vec<MbfFunction>,
}

impl OrderedTuple {
    pub fn new(functions: Vec<MbfFunction>) -> Result<OrderedTuple, BoolError> {
        if functions.is_empty() {
            return Err(BoolError::EmptyTuple);
        }
        for w in functions.windows(2) {
            if !w[0].implies(&w[1])? {
                return Err(BoolError::NotOrdered);
            }
        }
        Ok(OrderedTuple { functions })
    }

    pub fn pair(f: MbfFunction, g: MbfFunction) -> Result<OrderedTuple, BoolError> {
        OrderedTuple::new(vec![f, g])
    }

    pub fn functions(&self) -> &[MbfFunction] {
        &self.functions
    }

    pub fn n(&self) -> usize {
        self.functions[0].n()
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// All of MBF+(n) in ascending truth-mask order, guarded at `MAX_ENUM_ARITY`.
pub fn enumerate_mbf_positive(n: usize) -> Result<Vec<MbfFunction>, BoolError> {
    enumerate_mbf_positive_with_limit(n, MAX_ENUM_ARITY)
}

pub fn enumerate_mbf_positive_with_limit(n: usize, limit: usize) -> Result<Vec<MbfFunction>, BoolError> {
    if n > limit || n > MAX_ARITY {
        return Err(BoolError::ArityOutOfRange(n));
    }
    let mut level = vec![MbfFunction::zero(0), MbfFunction::one(0)];
    for _ in 0..n {
        let mut next = Vec::new();
        for f in &level {
            for g in &level {
                if f.truth.is_subset(&g.truth) {
                    next.push(eta(f, g)?);
                }
            }
        }
        next.sort();
        level = next;
    }
    Ok(level)
}

/// Cached MBF+(n) for n <= 5.
pub fn mbf_positive(n: usize) -> &'static [MbfFunction] {
    static CACHE: [OnceLock<Vec<MbfFunction>>; MAX_ENUM_ARITY + 1] =
        [const { OnceLock::new() }; MAX_ENUM_ARITY + 1];
    CACHE[n].get_or_init(|| enumerate_mbf_positive(n).expect("arity within guard"))
}

/// All (f, g) with f ≺ g, ordered lexicographically by (f, g) mask.
pub fn enumerate_ordered_pairs(n: usize) -> Result<Vec<(MbfFunction, MbfFunction)>, BoolError> {
    if n > 4 {
        return Err(BoolError::ArityOutOfRange(n));
    }
    let all = mbf_positive(n);
    let mut out = Vec::new();
    for f in all {
        for g in all {
            if f.truth.is_subset(&g.truth) {
                out.push((*f, *g));
            }
        }
    }
    Ok(out)
}

/// All ordered k-tuples over MBF+(n), in lexicographic order.
pub fn enumerate_ordered_tuples(n: usize, k: usize) -> Result<Vec<Vec<MbfFunction>>, BoolError> {
    if n > 4 {
        return Err(BoolError::ArityOutOfRange(n));
    }
    let all = mbf_positive(n);
    let mut out: Vec<Vec<MbfFunction>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for prefix in &out {
            for f in all {
                if prefix.last().is_none_or(|p| p.truth.is_subset(&f.truth)) {
                    let mut t = prefix.clone();
                    t.push(*f);
                    next.push(t);
                }
            }
        }
        out = next;
    }
    Ok(out)
}
