//! Symmetric γ-sets and the prism-fixer / π-fixer criteria.
//!
//! A γ-set `D` is *symmetric* when it splits as `[D1, D2]` with `D1`
//! dominating `V \ D2` and `D2` dominating `V \ D1`; it is *even* when the
//! two parts have equal size. A nontrivial connected graph is a prism fixer
//! (`γ(G □ K2) = γ(G)`) exactly when it has a symmetric γ-set.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::domination::{
    enumerate_gamma_sets, gamma_exact, maximal_packing_unchecked, packing_unchecked,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::permutation::Permutation;
use crate::prism::{build_prism, cartesian_prism};

/// Default cap on the number of γ-sets any search will enumerate.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 1_000_000;

/// A γ-set with a partition `[d1, d2]` where each part dominates everything
/// outside the other.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymmetricGammaSet {
    d1: VertexSet,
    d2: VertexSet,
    order: usize,
}

impl SymmetricGammaSet {
    /// Validates the partition against `g`, given `gamma = γ(g)`.
    pub fn new(g: &Graph, d1: VertexSet, d2: VertexSet, gamma: usize) -> Result<Self> {
        g.check_set(&d1)?;
        g.check_set(&d2)?;
        if !d1.is_disjoint(&d2) {
            return Err(Error::Precondition(format!("parts {d1} and {d2} overlap")));
        }
        let d = d1.union(&d2);
        if d.len() != gamma || g.cover(&d) != g.vertices() {
            return Err(Error::Precondition(format!(
                "{d} is not a γ-set (γ = {gamma})"
            )));
        }
        if !is_symmetric_split(g, &d1, &d2) {
            return Err(Error::Precondition(format!(
                "[{d1}, {d2}] fails the symmetric domination conditions"
            )));
        }
        Ok(SymmetricGammaSet {
            d1,
            d2,
            order: g.order(),
        })
    }

    pub fn d1(&self) -> VertexSet {
        self.d1
    }

    pub fn d2(&self) -> VertexSet {
        self.d2
    }

    /// `D = D1 ∪ D2`.
    pub fn set(&self) -> VertexSet {
        self.d1.union(&self.d2)
    }

    pub fn gamma(&self) -> usize {
        self.d1.len() + self.d2.len()
    }

    /// Vertex count of the host graph.
    pub fn host_order(&self) -> usize {
        self.order
    }

    pub fn is_even(&self) -> bool {
        self.d1.len() == self.d2.len()
    }

    pub fn swapped(&self) -> Self {
        SymmetricGammaSet {
            d1: self.d2,
            d2: self.d1,
            order: self.order,
        }
    }

    /// The orientation whose first part holds the smallest label of `D`.
    pub fn normalized(&self) -> Self {
        if self.d1.min() < self.d2.min() || self.d2.is_empty() {
            self.clone()
        } else {
            self.swapped()
        }
    }

    /// The orientation with `|d1| ≤ |d2|`.
    pub fn smaller_first(&self) -> Self {
        if self.d1.len() <= self.d2.len() {
            self.clone()
        } else {
            self.swapped()
        }
    }
}

fn is_symmetric_split(g: &Graph, d1: &VertexSet, d2: &VertexSet) -> bool {
    let all = g.vertices();
    all.difference(d2).is_subset(&g.cover(d1)) && all.difference(d1).is_subset(&g.cover(d2))
}

/// A symmetric γ-set whose parts have equal size.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EvenSymmetricGammaSet {
    base: SymmetricGammaSet,
}

impl EvenSymmetricGammaSet {
    pub fn new(base: SymmetricGammaSet) -> Result<Self> {
        if !base.is_even() {
            return Err(Error::Precondition(format!(
                "parts of sizes {} and {} are not balanced",
                base.d1.len(),
                base.d2.len()
            )));
        }
        Ok(EvenSymmetricGammaSet { base })
    }

    pub fn base(&self) -> &SymmetricGammaSet {
        &self.base
    }

    /// `|d1| = |d2| = γ / 2`.
    pub fn half(&self) -> usize {
        self.base.d1.len()
    }
}

/// Splits of one γ-set `D` in search order: the mask runs over the sorted
/// members of `D`, a set bit sending the member to `D2`. Masks with the
/// smallest member in `D2` are skipped, so each unordered split appears
/// once, already normalized.
fn normalized_splits(d: &VertexSet) -> impl Iterator<Item = (VertexSet, VertexSet)> {
    let members = d.to_vec();
    let k = members.len();
    let count: u64 = if k == 0 { 0 } else { 1 << (k - 1) };
    (0..count).map(move |half| {
        let mask = half << 1;
        let mut d1 = VertexSet::empty();
        let mut d2 = VertexSet::empty();
        for (i, &v) in members.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d2.insert(v);
            } else {
                d1.insert(v);
            }
        }
        (d1, d2)
    })
}

/// Streams the symmetric γ-sets of `g` (with `gamma = γ(g)`) in search
/// order: γ-sets lexicographically, then splits by ascending mask. Fails if
/// more than `limit` γ-sets have to be examined.
pub fn symmetric_gamma_sets(
    g: &Graph,
    gamma: usize,
    limit: usize,
) -> impl Iterator<Item = Result<SymmetricGammaSet>> + '_ {
    let order = g.order();
    let mut seen = 0usize;
    let mut failed = false;
    enumerate_gamma_sets(g, gamma)
        .map(move |d| {
            seen += 1;
            if seen > limit {
                return Err(Error::EnumerationLimit { limit });
            }
            Ok(d)
        })
        .take_while(move |r| {
            let keep = !failed;
            failed |= r.is_err();
            keep
        })
        .flat_map(
            move |r| -> Box<dyn Iterator<Item = Result<SymmetricGammaSet>>> {
                match r {
                    Err(e) => Box::new(std::iter::once(Err(e))),
                    Ok(d) => Box::new(
                        normalized_splits(&d)
                            .filter(move |(d1, d2)| is_symmetric_split(g, d1, d2))
                            .map(move |(d1, d2)| Ok(SymmetricGammaSet { d1, d2, order })),
                    ),
                }
            },
        )
}

/// All symmetric γ-sets, normalized, in search order. Empty exactly when a
/// nontrivial connected `g` is not a prism fixer.
pub fn find_symmetric_gamma_sets(g: &Graph) -> Result<Vec<SymmetricGammaSet>> {
    let gamma = gamma_exact(g).gamma;
    symmetric_gamma_sets(g, gamma, DEFAULT_ENUMERATION_LIMIT).collect()
}

fn require_nontrivial_connected(g: &Graph) -> Result<()> {
    if g.order() < 2 {
        return Err(Error::Precondition("graph is trivial".into()));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("graph is disconnected".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixerEvidence {
    /// A symmetric γ-set certifies `γ(G □ K2) = γ(G)`.
    Symmetric { set: SymmetricGammaSet },
    /// No symmetric γ-set exists and the prism needs more dominators.
    PrismIncrease { gamma: usize, gamma_prism: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrismFixerVerdict {
    pub is_fixer: bool,
    pub gamma: usize,
    pub gamma_prism: usize,
    pub evidence: FixerEvidence,
}

/// Decides whether `γ(G □ K2) = γ(G)` by searching for a symmetric γ-set,
/// and cross-checks the answer against a direct computation on the prism.
pub fn is_prism_fixer(g: &Graph) -> Result<PrismFixerVerdict> {
    is_prism_fixer_limited(g, DEFAULT_ENUMERATION_LIMIT)
}

pub fn is_prism_fixer_limited(g: &Graph, limit: usize) -> Result<PrismFixerVerdict> {
    require_nontrivial_connected(g)?;
    let gamma = gamma_exact(g).gamma;
    let first = symmetric_gamma_sets(g, gamma, limit).next().transpose()?;
    let gamma_prism = gamma_exact(&cartesian_prism(g)).gamma;
    let direct = gamma_prism == gamma;
    if direct != first.is_some() {
        return Err(Error::CrossCheck(format!(
            "symmetric γ-set {} but γ(G)={gamma}, γ(G□K2)={gamma_prism}",
            if first.is_some() { "found" } else { "absent" }
        )));
    }
    let evidence = match first {
        Some(set) => FixerEvidence::Symmetric { set },
        None => FixerEvidence::PrismIncrease { gamma, gamma_prism },
    };
    Ok(PrismFixerVerdict {
        is_fixer: direct,
        gamma,
        gamma_prism,
        evidence,
    })
}

/// The independent-set form of the prism-fixer criterion: `D` independent,
/// every vertex outside `D` adjacent to exactly one vertex of each part,
/// and every vertex of `D` adjacent to at least two vertices outside `D`.
pub fn check_hartnell_rall_c(g: &Graph, s: &SymmetricGammaSet) -> bool {
    let d = s.set();
    if g.check_set(&d).is_err() || !g.is_independent(&d) {
        return false;
    }
    let outside = g.vertices().difference(&d);
    let exactly_one = outside.iter().all(|v| {
        let nb = g.neighbors(v);
        nb.intersection_len(&s.d1) == 1 && nb.intersection_len(&s.d2) == 1
    });
    exactly_one
        && d.iter()
            .all(|x| g.neighbors(x).intersection_len(&outside) >= 2)
}

/// Searches for a γ-set `D = D1 ∪ D2` with `D1` dominating `V \ D2`,
/// `π(D)` a γ-set, and `π(D2)` dominating `V \ π(D1)`. Such a split exists
/// exactly when `γ(πG) = γ(G)`; the first one found is returned.
pub fn check_pi_fixer_condition(
    g: &Graph,
    pi: &Permutation,
) -> Result<Option<(VertexSet, VertexSet)>> {
    check_pi_fixer_condition_limited(g, pi, DEFAULT_ENUMERATION_LIMIT)
}

pub fn check_pi_fixer_condition_limited(
    g: &Graph,
    pi: &Permutation,
    limit: usize,
) -> Result<Option<(VertexSet, VertexSet)>> {
    if pi.len() != g.order() {
        return Err(Error::SizeMismatch {
            perm: pi.len(),
            graph: g.order(),
        });
    }
    require_nontrivial_connected(g)?;
    let all = g.vertices();
    let gamma = gamma_exact(g).gamma;
    for (count, d) in enumerate_gamma_sets(g, gamma).enumerate() {
        if count == limit {
            return Err(Error::EnumerationLimit { limit });
        }
        let image = pi.apply_set(&d);
        if g.cover(&image) != all {
            continue;
        }
        let members = d.to_vec();
        for mask in 0u64..(1 << members.len()) {
            let d2: VertexSet = members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            let d1 = d.difference(&d2);
            if !all.difference(&d2).is_subset(&g.cover(&d1)) {
                continue;
            }
            let (p1, p2) = (pi.apply_set(&d1), pi.apply_set(&d2));
            if all.difference(&p1).is_subset(&g.cover(&p2)) {
                return Ok(Some((d1, d2)));
            }
        }
    }
    Ok(None)
}

/// Convenience: `γ(πG) = γ(G)` computed directly on the prism.
pub fn is_pi_fixer_direct(g: &Graph, pi: &Permutation) -> Result<bool> {
    let prism = build_prism(g, pi)?;
    Ok(gamma_exact(prism.graph()).gamma == gamma_exact(g).gamma)
}

/// Checks the intersection property of two symmetric γ-sets of one graph.
/// With both oriented so the first part is the smaller:
/// if `|A1| < |B1|` then `A2 ∩ B1 ≠ ∅`; if `|B1| = |A1| < |A2|` then
/// `A2 ∩ B2 ≠ ∅`; otherwise there is nothing to check.
pub fn check_intersection_property(a: &SymmetricGammaSet, b: &SymmetricGammaSet) -> Result<bool> {
    if a.order != b.order || a.gamma() != b.gamma() {
        return Err(Error::Precondition(
            "symmetric γ-sets come from different graphs".into(),
        ));
    }
    let a = a.smaller_first();
    let b = b.smaller_first();
    let (a1, a2, b1) = (a.d1.len(), a.d2.len(), b.d1.len());
    Ok(if a1 < b1 {
        !a.d2.is_disjoint(&b.d1)
    } else if b1 == a1 && a1 < a2 {
        !a.d2.is_disjoint(&b.d2)
    } else {
        true
    })
}

/// Structural facts every symmetric γ-set must satisfy, each reported
/// separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricSetInvariants {
    pub independent: bool,
    pub min_degree_at_least_two: bool,
    pub parts_are_maximal_packings: bool,
    pub degree_sums_match: bool,
}

impl SymmetricSetInvariants {
    pub fn all(&self) -> bool {
        self.independent
            && self.min_degree_at_least_two
            && self.parts_are_maximal_packings
            && self.degree_sums_match
    }
}

/// Independence of `D`, `δ(G) ≥ 2`, both parts maximal 2-packings, and
/// `Σ_{x ∈ Di} deg x = |V| − γ` for each part.
pub fn symmetric_set_invariants(g: &Graph, s: &SymmetricGammaSet) -> SymmetricSetInvariants {
    let d = s.set();
    let target = g.order() - s.gamma();
    let degree_sum = |part: &VertexSet| part.iter().map(|x| g.degree(x)).sum::<usize>();
    let maximal =
        |part: &VertexSet| packing_unchecked(g, part) && maximal_packing_unchecked(g, part);
    SymmetricSetInvariants {
        independent: g.is_independent(&d),
        min_degree_at_least_two: g.min_degree() >= 2,
        parts_are_maximal_packings: maximal(&s.d1) && maximal(&s.d2),
        degree_sums_match: degree_sum(&s.d1) == target && degree_sum(&s.d2) == target,
    }
}

/// How the even symmetric γ-sets of a prism fixer are arranged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EvenStructure {
    /// No symmetric γ-set has balanced parts.
    NoEven,
    /// An even symmetric γ-set meeting every even symmetric γ-set.
    Pivot { set: EvenSymmetricGammaSet },
    /// A maximal family (m ≥ 2) of pairwise disjoint even symmetric γ-sets.
    DisjointFamily { sets: Vec<EvenSymmetricGammaSet> },
}

impl EvenStructure {
    pub fn label(&self) -> &'static str {
        match self {
            EvenStructure::NoEven => "no_even",
            EvenStructure::Pivot { .. } => "pivot",
            EvenStructure::DisjointFamily { .. } => "disjoint_family",
        }
    }
}

/// Classifies from an already computed list of symmetric γ-sets in search
/// order. Distinct even γ-sets are taken in first-seen order, each with the
/// first balanced split found for it.
pub fn classify_even_sets(sets: &[SymmetricGammaSet]) -> EvenStructure {
    let mut evens: Vec<EvenSymmetricGammaSet> = Vec::new();
    for s in sets.iter().filter(|s| s.is_even()) {
        if evens.iter().all(|e| e.base.set() != s.set()) {
            evens.push(EvenSymmetricGammaSet {
                base: s.normalized(),
            });
        }
    }
    if evens.is_empty() {
        return EvenStructure::NoEven;
    }
    if let Some(pivot) = evens.iter().find(|d| {
        evens
            .iter()
            .all(|e| !d.base.set().is_disjoint(&e.base.set()))
    }) {
        return EvenStructure::Pivot { set: pivot.clone() };
    }
    let mut family: Vec<EvenSymmetricGammaSet> = Vec::new();
    for e in &evens {
        if family
            .iter()
            .all(|f| f.base.set().is_disjoint(&e.base.set()))
        {
            family.push(e.clone());
        }
    }
    debug_assert!(family.len() >= 2);
    debug_assert!(evens.iter().filter(|e| !family.contains(e)).all(|e| family
        .iter()
        .any(|f| !f.base.set().is_disjoint(&e.base.set()))));
    EvenStructure::DisjointFamily { sets: family }
}

/// Classification for a nontrivial connected prism fixer.
pub fn classify_even_structure(g: &Graph) -> Result<EvenStructure> {
    require_nontrivial_connected(g)?;
    let sets = find_symmetric_gamma_sets(g)?;
    if sets.is_empty() {
        return Err(Error::Precondition("graph is not a prism fixer".into()));
    }
    Ok(classify_even_sets(&sets))
}

/// Everything the analysis report needs about one connected graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixerAnalysis {
    pub gamma: usize,
    pub gamma_prism: usize,
    pub prism_fixer: bool,
    pub symmetric_sets: Vec<SymmetricGammaSet>,
    /// The γ-set enumeration hit its limit; `symmetric_sets` is partial.
    pub truncated: bool,
    pub classification: Option<EvenStructure>,
    pub invariants: Vec<SymmetricSetInvariants>,
    pub hartnell_rall_c: Vec<bool>,
    pub intersection_pairs_checked: usize,
    pub intersection_failures: usize,
}

/// Runs the symmetric-set search and every check on a nontrivial connected
/// graph.
pub fn analyze(g: &Graph, limit: usize) -> Result<FixerAnalysis> {
    require_nontrivial_connected(g)?;
    let gamma = gamma_exact(g).gamma;
    let gamma_prism = gamma_exact(&cartesian_prism(g)).gamma;
    let mut symmetric_sets = Vec::new();
    let mut truncated = false;
    for item in symmetric_gamma_sets(g, gamma, limit) {
        match item {
            Ok(s) => symmetric_sets.push(s),
            Err(Error::EnumerationLimit { .. }) => truncated = true,
            Err(e) => return Err(e),
        }
    }
    let prism_fixer = gamma_prism == gamma;
    if !truncated && prism_fixer == symmetric_sets.is_empty() {
        return Err(Error::CrossCheck(format!(
            "{} symmetric γ-sets but γ(G)={gamma}, γ(G□K2)={gamma_prism}",
            symmetric_sets.len()
        )));
    }
    let classification = (!truncated && prism_fixer).then(|| classify_even_sets(&symmetric_sets));
    let invariants = symmetric_sets
        .iter()
        .map(|s| symmetric_set_invariants(g, s))
        .collect();
    let hartnell_rall_c = symmetric_sets
        .iter()
        .map(|s| check_hartnell_rall_c(g, s))
        .collect();
    let mut pairs = 0;
    let mut failures = 0;
    for a in &symmetric_sets {
        for b in &symmetric_sets {
            pairs += 1;
            if !check_intersection_property(a, b)? {
                failures += 1;
            }
        }
    }
    Ok(FixerAnalysis {
        gamma,
        gamma_prism,
        prism_fixer,
        symmetric_sets,
        truncated,
        classification,
        invariants,
        hartnell_rall_c,
        intersection_pairs_checked: pairs,
        intersection_failures: failures,
    })
}
