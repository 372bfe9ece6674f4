//! Permutations of vertex labels, with disjoint-cycle notation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// A bijection on `0..n`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn from_images(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &x in &map {
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} out of range 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
        }
        Ok(Permutation { map })
    }

    /// Builds a permutation of `0..n` from disjoint cycles; points not
    /// mentioned are fixed. Each cycle `[a, b, c]` maps `a → b → c → a`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} out of range 0..{n}"
                    )));
                }
                if std::mem::replace(&mut used[x], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} appears in more than one place"
                    )));
                }
                map[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { map })
    }

    /// Parses disjoint-cycle notation such as `"(0 2 1)(3)"`. Entries may be
    /// separated by spaces or commas; `""` and `"()"` denote the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let bytes = text.as_bytes();
        let notation = |offset: usize, reason: &str| Error::CycleNotation {
            offset,
            reason: reason.to_string(),
        };
        let mut cycles = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            match c {
                b'(' => {
                    if current.is_some() {
                        return Err(notation(i, "nested '('"));
                    }
                    current = Some(Vec::new());
                    i += 1;
                }
                b')' => {
                    let cycle = current.take().ok_or_else(|| notation(i, "unmatched ')'"))?;
                    cycles.push(cycle);
                    i += 1;
                }
                b' ' | b'\t' | b',' => i += 1,
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let cycle = current
                        .as_mut()
                        .ok_or_else(|| notation(start, "label outside parentheses"))?;
                    let v: usize = text[start..i]
                        .parse()
                        .map_err(|_| notation(start, "label too large"))?;
                    if v >= n {
                        return Err(notation(start, &format!("label {v} not below n = {n}")));
                    }
                    cycle.push(v);
                }
                _ => {
                    return Err(notation(
                        i,
                        &format!("unexpected character {:?}", c as char),
                    ))
                }
            }
        }
        if current.is_some() {
            return Err(notation(bytes.len(), "unclosed '('"));
        }
        Permutation::from_cycles(n, &cycles).map_err(|e| match e {
            Error::InvalidPermutation(reason) => Error::CycleNotation { offset: 0, reason },
            other => other,
        })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    /// `π(A)`.
    pub fn apply_set(&self, a: &VertexSet) -> VertexSet {
        a.iter().map(|v| self.map[v]).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { map: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                perm: other.len(),
                graph: self.len(),
            });
        }
        Ok(Permutation {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn fixed_points(&self) -> VertexSet {
        self.map
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i == x)
            .map(|(i, _)| i)
            .collect()
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for start in 0..self.map.len() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.map[v];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation with fixed points omitted; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("({})", body.join(" "))
            })
            .collect()
    }

    /// Steps to the next permutation in lexicographic order of the image
    /// array; returns `false` after the last one.
    pub fn next_lexicographic(&mut self) -> bool {
        let m = &mut self.map;
        if m.len() < 2 {
            return false;
        }
        let Some(i) = (0..m.len() - 1).rev().find(|&i| m[i] < m[i + 1]) else {
            return false;
        };
        let j = (i + 1..m.len()).rev().find(|&j| m[j] > m[i]).unwrap();
        m.swap(i, j);
        m[i + 1..].reverse();
        true
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(map: Vec<usize>) -> Result<Self> {
        Permutation::from_images(map)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.map
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.len(), self.to_cycle_string())
    }
}
