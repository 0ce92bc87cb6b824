use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use super::grid::{PromiseGridInstance, Vertex};
use super::search::{self, DP_MAX_VERTICES};
use crate::error::{invalid, Error, Result};

/// A bitstring label. Bits are numbered from 1 at the left.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(Vec<bool>);

impl Label {
    pub fn new(bits: Vec<bool>) -> Self {
        Label(bits)
    }

    pub fn zeros(m: usize) -> Self {
        Label(vec![false; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Bit `j` (1-based); `false` past the end.
    pub fn bit(&self, j: usize) -> bool {
        j >= 1 && self.0.get(j - 1).copied().unwrap_or(false)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| !b)
    }

    pub fn hamming(&self, other: &Label) -> usize {
        let common = self.0.len().min(other.0.len());
        let diff = (0..common).filter(|&k| self.0[k] != other.0[k]).count();
        let tail = self.0[common..].iter().chain(&other.0[common..]).filter(|&&b| b).count();
        diff + tail
    }

    /// The single position where two equal-length labels differ.
    pub fn differing_bit(&self, other: &Label) -> Option<usize> {
        if self.len() != other.len() || self.hamming(other) != 1 {
            return None;
        }
        self.0.iter().zip(&other.0).position(|(a, b)| a != b).map(|k| k + 1)
    }

    pub fn xor(&self, other: &Label) -> Label {
        let n = self.len().max(other.len());
        Label((1..=n).map(|j| self.bit(j) ^ other.bit(j)).collect())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Schema(format!("label `{s}` may contain only 0 and 1"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Label)
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An ordered list of labels `l_1..l_n`: an instance of the promise cubical
/// Hamiltonian path problem. Construction checks only the alphabet; see
/// [`CubicalInstance::check`] and [`validate_promise`] for the structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubicalInstance {
    pub labels: Vec<Label>,
}

impl fmt::Display for CubicalInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, l) in self.labels.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("]")
    }
}

impl CubicalInstance {
    pub fn new(labels: Vec<Label>) -> Self {
        CubicalInstance { labels }
    }

    /// Parses labels such as `["011", "110", "000"]`.
    pub fn from_strs<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        labels
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<_>>>()
            .map(CubicalInstance::new)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Label length; zero for an empty instance.
    pub fn m(&self) -> usize {
        self.labels.first().map_or(0, Label::len)
    }

    /// Label `l_i`, 1-based.
    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i - 1]
    }

    /// Structural requirements every downstream stage relies on: at least
    /// one label, a common length `m >= 1`, distinct labels, and an all-zero
    /// last label.
    pub fn check(&self) -> Result<()> {
        let report = validate_promise(self, false);
        match report.problems.first() {
            None => Ok(()),
            Some(p) => Err(invalid(format!("cubical instance: {p}"))),
        }
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).filter(|&j| self.labels[i].hamming(&self.labels[j]) == 1).collect())
            .collect()
    }
}

/// Outcome of [`validate_promise`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub nonempty: bool,
    pub uniform_length: bool,
    pub distinct: bool,
    pub last_is_zero: bool,
    /// `Some(true)` when every Hamiltonian path joins `l_1` and `l_n`
    /// (vacuously if there is none); `None` when not checked.
    pub endpoint_promise: Option<bool>,
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty() && self.endpoint_promise != Some(false)
    }
}

/// Checks the structural conditions and, when asked and within the
/// exhaustive bound, the endpoint promise.
pub fn validate_promise(inst: &CubicalInstance, check_endpoints: bool) -> ValidationReport {
    let mut problems = Vec::new();
    let nonempty = inst.n() >= 1;
    if !nonempty {
        problems.push("no labels".to_string());
    }
    let m = inst.m();
    let uniform_length = inst.labels.iter().all(|l| l.len() == m) && (m >= 1 || !nonempty);
    if !uniform_length {
        problems.push("labels must share one nonzero length".to_string());
    }
    let mut seen = HashSet::new();
    let distinct = inst.labels.iter().all(|l| seen.insert(l));
    if !distinct {
        problems.push("labels are not distinct".to_string());
    }
    let last_is_zero = inst.labels.last().is_some_and(Label::is_zero);
    if nonempty && !last_is_zero {
        problems.push("last label is not all zeros".to_string());
    }
    let endpoint_promise = (check_endpoints && nonempty && inst.n() <= DP_MAX_VERTICES).then(|| {
        let ends = search::path_endpoints(&inst.adjacency());
        let allowed = 1u32 | 1u32 << (inst.n() - 1);
        ends & !allowed == 0
    });
    if endpoint_promise == Some(false) {
        problems.push("a Hamiltonian path with other endpoints exists".to_string());
    }
    ValidationReport {
        nonempty,
        uniform_length,
        distinct,
        last_is_zero,
        endpoint_promise,
        problems,
    }
}

/// Vertex order used by [`grid_to_cubical`]: `s`, then the other vertices
/// row by row from the top (decreasing `y`, then increasing `x`), then `t`.
pub fn embedding_order(inst: &PromiseGridInstance) -> Vec<Vertex> {
    let mut interior: Vec<Vertex> = inst
        .graph
        .vertices()
        .filter(|&v| v != inst.s && v != inst.t)
        .collect();
    interior.sort_by_key(|&(x, y)| (std::cmp::Reverse(y), x));
    let mut order = Vec::with_capacity(inst.graph.len());
    order.push(inst.s);
    order.extend(interior);
    order.push(inst.t);
    order
}

/// Labels every vertex by a row part and a column part so that Hamming
/// distance one coincides with lattice adjacency, then XORs all labels with
/// the label of `t` so that the last one is all zeros.
pub fn grid_to_cubical(inst: &PromiseGridInstance) -> Result<CubicalInstance> {
    let g = &inst.graph;
    if inst.s == inst.t {
        return Err(invalid("s and t must be distinct"));
    }
    if !g.contains(inst.s) || !g.contains(inst.t) {
        return Err(invalid("s and t must be vertices of the graph"));
    }
    let min_x = g.vertices().map(|v| v.0).min().expect("nonempty");
    let max_x = g.vertices().map(|v| v.0).max().expect("nonempty");
    let max_y = g.vertices().map(|v| v.1).max().expect("nonempty");
    let min_y = g.vertices().map(|v| v.1).min().expect("nonempty");
    let row_len = (max_y - min_y) as usize;
    let col_len = (max_x - min_x) as usize;
    let raw = |(x, y): Vertex| {
        let r = (max_y - y) as usize;
        let c = (x - min_x) as usize;
        let mut bits = Vec::with_capacity(row_len + col_len);
        bits.extend((0..row_len).map(|k| k < r));
        bits.extend((0..col_len).map(|k| k < c));
        Label::new(bits)
    };
    let base = raw(inst.t);
    Ok(CubicalInstance::new(
        embedding_order(inst).into_iter().map(|v| raw(v).xor(&base)).collect(),
    ))
}
