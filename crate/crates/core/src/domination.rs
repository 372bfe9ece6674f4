//! Domination number, γ-set enumeration and 2-packing predicates.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default vertex cap for [`gamma_bruteforce`].
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 24;

/// `γ(G)` together with a dominating set of that size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationCertificate {
    pub gamma: usize,
    pub witness: VertexSet,
}

/// `N[D] = V`.
pub fn is_dominating(g: &Graph, d: &VertexSet) -> Result<bool> {
    Ok(g.closed_neighborhood(d)? == g.vertices())
}

/// `B ⊆ N[A]`.
pub fn dominates_set(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<bool> {
    g.check_set(b)?;
    Ok(b.is_subset(&g.closed_neighborhood(a)?))
}

/// Closed neighborhoods of the members are pairwise disjoint.
pub fn is_two_packing(g: &Graph, s: &VertexSet) -> Result<bool> {
    g.check_set(s)?;
    Ok(packing_unchecked(g, s))
}

pub(crate) fn packing_unchecked(g: &Graph, s: &VertexSet) -> bool {
    // Pairwise disjoint exactly when the sizes add up.
    let total: usize = s.iter().map(|v| g.degree(v) + 1).sum();
    total == g.cover(s).len()
}

/// A 2-packing no vertex can be added to. Errors if `s` is not a 2-packing.
pub fn is_maximal_two_packing(g: &Graph, s: &VertexSet) -> Result<bool> {
    if !is_two_packing(g, s)? {
        return Err(Error::Precondition(format!("{s} is not a 2-packing")));
    }
    Ok(maximal_packing_unchecked(g, s))
}

pub(crate) fn maximal_packing_unchecked(g: &Graph, s: &VertexSet) -> bool {
    let reach = g.cover(s);
    g.vertices()
        .difference(s)
        .iter()
        .all(|v| !g.closed_neighbors(v).is_disjoint(&reach))
}

/// Exact `γ` by trying every subset in order of increasing size; the
/// witness is the lexicographically first dominating set of minimum size.
/// Refuses graphs above [`DEFAULT_BRUTE_FORCE_CAP`] vertices.
pub fn gamma_bruteforce(g: &Graph) -> Result<DominationCertificate> {
    gamma_bruteforce_capped(g, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn gamma_bruteforce_capped(g: &Graph, cap: usize) -> Result<DominationCertificate> {
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let full = g.vertices();
    for k in 0..=n {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let set: VertexSet = combo.iter().collect();
            if g.cover(&set) == full {
                return Ok(DominationCertificate {
                    gamma: k,
                    witness: set,
                });
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    unreachable!("V(G) always dominates G")
}

/// Advances a sorted k-combination of `0..n` lexicographically.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
        return false;
    };
    combo[i] += 1;
    for j in i + 1..k {
        combo[j] = combo[j - 1] + 1;
    }
    true
}

/// Exact `γ` by branch and bound.
///
/// Branches on the uncovered vertex with the fewest admissible dominators
/// (ties to the lowest label). Candidates tried earlier at a node are
/// excluded from later siblings so each dominating set is explored once.
/// Pruning compares against a greedy upper bound using the covering bound
/// `⌈uncovered / best single-vertex gain⌉`.
pub fn gamma_exact(g: &Graph) -> DominationCertificate {
    let n = g.order();
    let closed: Vec<VertexSet> = (0..n).map(|v| g.closed_neighbors(v)).collect();
    let greedy = greedy_dominating_set(&closed, g.vertices());
    let mut search = BranchAndBound {
        closed: &closed,
        full: g.vertices(),
        best: greedy,
        chosen: Vec::new(),
    };
    search.descend(VertexSet::empty(), VertexSet::empty());
    let witness: VertexSet = search.best.iter().collect();
    DominationCertificate {
        gamma: witness.len(),
        witness,
    }
}

fn greedy_dominating_set(closed: &[VertexSet], full: VertexSet) -> Vec<usize> {
    let mut covered = VertexSet::empty();
    let mut picks = Vec::new();
    while covered != full {
        let uncovered = full.difference(&covered);
        let best = (0..closed.len())
            .max_by_key(|&v| (closed[v].intersection_len(&uncovered), std::cmp::Reverse(v)))
            .expect("a nonempty uncovered set implies vertices exist");
        picks.push(best);
        covered.union_with(&closed[best]);
    }
    picks
}

struct BranchAndBound<'a> {
    closed: &'a [VertexSet],
    full: VertexSet,
    best: Vec<usize>,
    chosen: Vec<usize>,
}

impl BranchAndBound<'_> {
    fn descend(&mut self, covered: VertexSet, excluded: VertexSet) {
        let uncovered = self.full.difference(&covered);
        if uncovered.is_empty() {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        if self.chosen.len() + 1 >= self.best.len() {
            return;
        }

        // Every admissible dominator of an uncovered vertex lies in
        // N[uncovered] minus the excluded vertices.
        let mut reach = VertexSet::empty();
        for u in &uncovered {
            reach.union_with(&self.closed[u]);
        }
        let max_gain = reach
            .difference(&excluded)
            .iter()
            .map(|c| self.closed[c].intersection_len(&uncovered))
            .max()
            .unwrap_or(0);
        if max_gain == 0 {
            return;
        }
        let lower = uncovered.len().div_ceil(max_gain);
        if self.chosen.len() + lower >= self.best.len() {
            return;
        }

        let mut pivot = None;
        let mut fewest = usize::MAX;
        for u in &uncovered {
            let options = self.closed[u].difference(&excluded).len();
            if options < fewest {
                fewest = options;
                pivot = Some(u);
                if options <= 1 {
                    break;
                }
            }
        }
        let pivot = pivot.expect("uncovered is nonempty");
        if fewest == 0 {
            return;
        }

        let mut candidates: Vec<(usize, usize)> = self.closed[pivot]
            .difference(&excluded)
            .iter()
            .map(|c| (self.closed[c].intersection_len(&uncovered), c))
            .collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        let mut excluded = excluded;
        for (_, c) in candidates {
            self.chosen.push(c);
            self.descend(covered.union(&self.closed[c]), excluded);
            self.chosen.pop();
            excluded.insert(c);
            if self.chosen.len() + 1 >= self.best.len() {
                return;
            }
        }
    }
}

/// Lazily yields every dominating set of size exactly `gamma`, each once,
/// in lexicographic order of the sorted member lists.
///
/// Called with `gamma = γ(G)` this enumerates the γ-sets.
pub fn enumerate_gamma_sets(g: &Graph, gamma: usize) -> GammaSets<'_> {
    let n = g.order();
    GammaSets {
        closed: (0..n).map(|v| g.closed_neighbors(v)).collect(),
        max_closed: g.max_degree() + 1,
        full: g.vertices(),
        n,
        gamma,
        chosen: Vec::with_capacity(gamma),
        covers: vec![VertexSet::empty()],
        frames: Vec::with_capacity(gamma),
        exhausted: gamma > n,
        _graph: std::marker::PhantomData,
    }
}

/// Collects the γ-sets, failing once more than `limit` have been produced.
pub fn collect_gamma_sets(g: &Graph, gamma: usize, limit: usize) -> Result<Vec<VertexSet>> {
    let mut out = Vec::new();
    for set in enumerate_gamma_sets(g, gamma) {
        if out.len() == limit {
            return Err(Error::EnumerationLimit { limit });
        }
        out.push(set);
    }
    Ok(out)
}

struct Frame {
    next: usize,
    last: usize,
}

pub struct GammaSets<'g> {
    closed: Vec<VertexSet>,
    max_closed: usize,
    full: VertexSet,
    n: usize,
    gamma: usize,
    chosen: Vec<usize>,
    covers: Vec<VertexSet>,
    frames: Vec<Frame>,
    exhausted: bool,
    _graph: std::marker::PhantomData<&'g Graph>,
}

impl GammaSets<'_> {
    /// Candidate range for the next pick, or `None` if no completion of
    /// the current prefix can dominate.
    fn range(&self, level: usize) -> Option<Frame> {
        let start = self.chosen.last().map_or(0, |&v| v + 1);
        let remaining = self.gamma - level;
        let mut last = self.n.checked_sub(remaining)?;
        let uncovered = self.full.difference(&self.covers[level]);
        if remaining * self.max_closed < uncovered.len() {
            return None;
        }
        // Some later pick must dominate each uncovered vertex, so the next
        // pick cannot skip past the largest dominator of any of them.
        for u in &uncovered {
            let top = self.closed[u]
                .max()
                .expect("closed neighborhood is nonempty");
            if top < start {
                return None;
            }
            last = last.min(top);
        }
        (start <= last).then_some(Frame { next: start, last })
    }

    fn backtrack(&mut self) {
        if self.chosen.pop().is_none() {
            self.exhausted = true;
        } else {
            self.covers.pop();
        }
    }
}

impl Iterator for GammaSets<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        loop {
            if self.exhausted {
                return None;
            }
            let level = self.chosen.len();
            if level == self.gamma {
                let hit = self.covers[level] == self.full;
                let set: VertexSet = self.chosen.iter().collect();
                self.backtrack();
                if hit {
                    return Some(set);
                }
                continue;
            }
            if self.frames.len() == level {
                match self.range(level) {
                    Some(frame) => self.frames.push(frame),
                    None => {
                        self.backtrack();
                        continue;
                    }
                }
            }
            let frame = &mut self.frames[level];
            if frame.next > frame.last {
                self.frames.pop();
                self.backtrack();
                continue;
            }
            let c = frame.next;
            frame.next += 1;
            self.chosen.push(c);
            let cover = self.covers[level].union(&self.closed[c]);
            self.covers.push(cover);
        }
    }
}
