//! Witness permutations: for a graph with an edge, build a permutation `α`
//! with `γ(αG) > γ(G)`.
//!
//! The dispatcher in [`find_witness`] routes each graph:
//!
//! * no edges: every prism has `γ = n`, nothing to find;
//! * disconnected: solve one component and extend by the identity;
//! * not a prism fixer: the identity already works;
//! * prism fixer with `γ ≥ 4`: one of three explicit cycle constructions,
//!   chosen by how the even symmetric γ-sets are arranged;
//! * prism fixer with `γ ≤ 3`: search (identity, then all of `S_n` for
//!   small `n`, then seeded random sampling).
//!
//! Every route recomputes `γ(αG)` before reporting.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::domination::gamma_exact;
use crate::error::{Error, Result};
use crate::fixer::{
    classify_even_sets, symmetric_gamma_sets, EvenStructure, EvenSymmetricGammaSet,
    SymmetricGammaSet, DEFAULT_ENUMERATION_LIMIT,
};
use crate::graph::Graph;
use crate::permutation::Permutation;
use crate::prism::build_prism;

/// Largest order for which the fallback search walks all of `S_n`.
pub const EXHAUSTIVE_MAX_ORDER: usize = 7;
pub const DEFAULT_FALLBACK_BUDGET: u64 = 100_000;

/// Smallest `u1 ∈ N(x1)` adjacent to no other member of `d1` (and not in
/// `d1` itself). When `d1` is a 2-packing every neighbor of `x1` qualifies.
pub fn select_private_neighbor(g: &Graph, d1: &[usize], x1: usize) -> Result<usize> {
    for &x in d1 {
        g.check_vertex(x)?;
    }
    if !d1.contains(&x1) {
        return Err(Error::Precondition(format!("{x1} is not a member of d1")));
    }
    if g.degree(x1) == 0 {
        return Err(Error::Precondition(format!("{x1} is isolated")));
    }
    let members: VertexSet = d1.iter().collect();
    let mut blocked = members;
    for &x in d1.iter().filter(|&&x| x != x1) {
        blocked.union_with(&g.neighbors(x));
    }
    g.neighbors(x1).difference(&blocked).min().ok_or_else(|| {
        Error::Structure(format!(
            "{x1} has no neighbor private from the rest of {members}; not a 2-packing"
        ))
    })
}

/// The cycle `(x1 x2 … xk u1)` on `d1 = (x1, …, xk)` plus the private
/// neighbor `u1` of `x1`; every other vertex is fixed.
pub fn build_alpha_private_cycle(g: &Graph, d1: &[usize]) -> Result<Permutation> {
    let (&x1, _) = d1
        .split_first()
        .ok_or_else(|| Error::Precondition("d1 is empty".into()))?;
    let u1 = select_private_neighbor(g, d1, x1)?;
    let mut cycle = d1.to_vec();
    cycle.push(u1);
    Permutation::from_cycles(g.order(), &[cycle])
}

/// Rows `X_1 … X_m` of a chain of disjoint balanced parts, indexed so that
/// `x[i+1][j]` is adjacent to `x[i][j]`, plus the closing index map with
/// `x[m-1][a[j]]` adjacent to `x[0][j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainIndexing {
    pub x: Vec<Vec<usize>>,
    pub a: Vec<usize>,
}

impl ChainIndexing {
    pub fn rows(&self) -> usize {
        self.x.len()
    }

    pub fn width(&self) -> usize {
        self.a.len()
    }

    /// The alternating sequence
    /// `(x[m-1][a[0]], x[0][1], x[m-1][a[1]], x[0][2], …, x[m-1][a[k-1]], x[0][0])`.
    pub fn closing_cycle(&self) -> Vec<usize> {
        let k = self.width();
        let last = &self.x[self.rows() - 1];
        (0..k)
            .flat_map(|j| [last[self.a[j]], self.x[0][(j + 1) % k]])
            .collect()
    }

    fn validate(&self, n: usize) -> Result<()> {
        let k = self.width();
        if self.rows() < 2 || k == 0 {
            return Err(Error::Precondition(
                "chain needs at least two rows and one column".into(),
            ));
        }
        if self.x.iter().any(|row| row.len() != k) {
            return Err(Error::Precondition("rows differ in length".into()));
        }
        let mut seen = VertexSet::empty();
        for &v in self.x.iter().flatten() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if !seen.insert(v) {
                return Err(Error::Precondition(format!("vertex {v} repeated in chain")));
            }
        }
        let mut hit = vec![false; k];
        for &j in &self.a {
            if j >= k || std::mem::replace(&mut hit[j], true) {
                return Err(Error::Precondition("closing map is not a bijection".into()));
            }
        }
        Ok(())
    }
}

/// Unique neighbor of `v` inside `target`, or a structural error.
fn unique_neighbor(g: &Graph, v: usize, target: &VertexSet, what: &str) -> Result<usize> {
    let hits = g.neighbors(v).intersection(target);
    if hits.len() != 1 {
        return Err(Error::Structure(format!(
            "vertex {v} has {} neighbors in {what} {target}, expected exactly one",
            hits.len()
        )));
    }
    Ok(hits.min().unwrap())
}

/// Indexes the first parts `X_i = d1(D_i)` of a pairwise disjoint family of
/// even symmetric γ-sets; see [`chain_indexing_from_parts`].
pub fn build_chain_indexing(g: &Graph, family: &[EvenSymmetricGammaSet]) -> Result<ChainIndexing> {
    let k = family.first().map_or(0, |d| d.half());
    if family.iter().any(|d| d.half() != k) {
        return Err(Error::Precondition("family members differ in size".into()));
    }
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            if !a.base().set().is_disjoint(&b.base().set()) {
                return Err(Error::Precondition(
                    "family is not pairwise disjoint".into(),
                ));
            }
        }
    }
    let parts: Vec<VertexSet> = family.iter().map(|d| d.base().d1()).collect();
    chain_indexing_from_parts(g, &parts)
}

/// Chain indexing of disjoint rows `X_1 … X_m` of equal size. Row 0 is `X_1`
/// in increasing label order; each later row follows the unique-neighbor map
/// from the row before, and `a` closes the chain back onto row 0.
pub fn chain_indexing_from_parts(g: &Graph, parts: &[VertexSet]) -> Result<ChainIndexing> {
    if parts.len() < 2 {
        return Err(Error::Precondition(format!(
            "chain needs at least two sets, got {}",
            parts.len()
        )));
    }
    let k = parts[0].len();
    for p in parts {
        g.check_set(p)?;
        if p.len() != k {
            return Err(Error::Precondition("rows differ in size".into()));
        }
    }

    let mut x = vec![parts[0].to_vec()];
    for i in 1..parts.len() {
        let row = x[i - 1]
            .iter()
            .map(|&v| unique_neighbor(g, v, &parts[i], "next row"))
            .collect::<Result<Vec<_>>>()?;
        if row.iter().collect::<VertexSet>().len() != k {
            return Err(Error::Structure(format!(
                "row {i} is not reached bijectively from row {}",
                i - 1
            )));
        }
        x.push(row);
    }
    let last = &parts[parts.len() - 1];
    let last_row = &x[parts.len() - 1];
    let a = x[0]
        .iter()
        .map(|&v| {
            let w = unique_neighbor(g, v, last, "last row")?;
            Ok(last_row.iter().position(|&y| y == w).unwrap())
        })
        .collect::<Result<Vec<_>>>()?;
    let ci = ChainIndexing { x, a };
    ci.validate(g.order())?;
    Ok(ci)
}

/// `x[i][j] → x[i+1][j]` down the chain, `x[m-1][a[j]] → x[0][j+1]`
/// (wrapping to `x[0][0]`), identity elsewhere.
pub fn build_alpha_chain(ci: &ChainIndexing, n: usize) -> Result<Permutation> {
    ci.validate(n)?;
    let (m, k) = (ci.rows(), ci.width());
    let mut map: Vec<usize> = (0..n).collect();
    for i in 0..m - 1 {
        for j in 0..k {
            map[ci.x[i][j]] = ci.x[i + 1][j];
        }
    }
    for j in 0..k {
        map[ci.x[m - 1][ci.a[j]]] = ci.x[0][(j + 1) % k];
    }
    Permutation::from_images(map)
}

/// Checks the closing cycle of a chain against `g` and `alpha`: its `2k`
/// entries are distinct, each last-row entry is adjacent to the entry before
/// it (cyclically), and `alpha` sends each last-row entry to the entry after
/// it.
pub fn verify_closing_cycle(g: &Graph, ci: &ChainIndexing, alpha: &Permutation) -> bool {
    let cycle = ci.closing_cycle();
    let len = cycle.len();
    if len != 2 * ci.width() || cycle.iter().collect::<VertexSet>().len() != len {
        return false;
    }
    (0..ci.width()).all(|j| {
        let here = cycle[2 * j];
        let before = cycle[(2 * j + len - 1) % len];
        let after = cycle[2 * j + 1];
        g.has_edge(here, before) && alpha.apply(here) == after
    })
}

/// Lifts a permutation of component `j` to all of `g`, fixing every vertex
/// outside that component.
pub fn compose_component_witness(
    g: &Graph,
    components: &[(Graph, Vec<usize>)],
    j: usize,
    pi_j: &Permutation,
) -> Result<Permutation> {
    let (comp, back) = components.get(j).ok_or(Error::IndexOutOfRange {
        index: j,
        len: components.len(),
    })?;
    if pi_j.len() != comp.order() {
        return Err(Error::SizeMismatch {
            perm: pi_j.len(),
            graph: comp.order(),
        });
    }
    let mut map: Vec<usize> = (0..g.order()).collect();
    for v in 0..comp.order() {
        let (from, to) = (back[v], back[pi_j.apply(v)]);
        g.check_vertex(from)?;
        map[from] = to;
    }
    Permutation::from_images(map)
}

/// How the fallback search found (or failed to find) its witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStage {
    Identity,
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub permutation: Option<Permutation>,
    pub stage: SearchStage,
    pub tried: u64,
}

/// Looks for `π` with `γ(πG) > γ(G)`: the identity first, then every
/// permutation in lexicographic order when `n ≤ 7`, otherwise up to
/// `budget` uniformly random permutations drawn from `seed`.
pub fn fallback_witness_search(g: &Graph, budget: u64, seed: u64) -> Result<SearchResult> {
    if g.is_edgeless() {
        return Err(Error::Precondition("graph has no edges".into()));
    }
    let n = g.order();
    let gamma = gamma_exact(g).gamma;
    let raises = |pi: &Permutation| -> Result<bool> {
        Ok(gamma_exact(build_prism(g, pi)?.graph()).gamma > gamma)
    };

    let mut pi = Permutation::identity(n);
    if raises(&pi)? {
        return Ok(SearchResult {
            permutation: Some(pi),
            stage: SearchStage::Identity,
            tried: 1,
        });
    }
    let mut tried = 1;
    if n <= EXHAUSTIVE_MAX_ORDER {
        while pi.next_lexicographic() {
            tried += 1;
            if raises(&pi)? {
                return Ok(SearchResult {
                    permutation: Some(pi),
                    stage: SearchStage::Exhaustive,
                    tried,
                });
            }
        }
        return Ok(SearchResult {
            permutation: None,
            stage: SearchStage::Exhaustive,
            tried,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut images: Vec<usize> = (0..n).collect();
    for _ in 0..budget {
        images.shuffle(&mut rng);
        tried += 1;
        let candidate = Permutation::from_images(images.clone())?;
        if raises(&candidate)? {
            return Ok(SearchResult {
                permutation: Some(candidate),
                stage: SearchStage::Random,
                tried,
            });
        }
    }
    Ok(SearchResult {
        permutation: None,
        stage: SearchStage::Random,
        tried,
    })
}

/// Which branch of the dispatcher produced the permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Pivot even symmetric γ-set: cycle through its first part and a
    /// private neighbor.
    PivotCycle,
    /// No even symmetric γ-set: the same cycle on the larger part.
    UnbalancedCycle,
    /// Two or more disjoint even symmetric γ-sets: the chain permutation.
    Chain,
    /// Not a prism fixer, so the identity already raises `γ`.
    Identity,
    /// Disconnected: a component's witness extended by the identity.
    ComponentLift,
    FallbackSearch,
    /// No edges; every permutation fixes `γ`.
    Edgeless,
}

impl Route {
    pub const ALL: [Route; 7] = [
        Route::PivotCycle,
        Route::UnbalancedCycle,
        Route::Chain,
        Route::Identity,
        Route::ComponentLift,
        Route::FallbackSearch,
        Route::Edgeless,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::PivotCycle => "pivot_cycle",
            Route::UnbalancedCycle => "unbalanced_cycle",
            Route::Chain => "chain",
            Route::Identity => "identity",
            Route::ComponentLift => "component_lift",
            Route::FallbackSearch => "fallback_search",
            Route::Edgeless => "edgeless",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// `γ(πG) > γ(G)`.
    Witness,
    /// Edgeless graph: `γ(πG) = γ(G)` as expected.
    UniversalFixer,
    /// An explicit construction failed to raise `γ`.
    TheoremViolation,
    /// The search budget ran out.
    NotFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessDetail {
    Edgeless,
    NotPrismFixer,
    PrivateCycle {
        d1: Vec<usize>,
        d2: VertexSet,
        u1: usize,
    },
    Chain {
        family: Vec<EvenSymmetricGammaSet>,
        chain: ChainIndexing,
        closing_cycle_ok: bool,
    },
    Component {
        index: usize,
        vertices: Vec<usize>,
        inner: Box<WitnessReport>,
    },
    Search {
        stage: SearchStage,
        tried: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub gamma_g: usize,
    pub route: Route,
    pub permutation: Permutation,
    pub gamma_prism: usize,
    pub outcome: Outcome,
    /// Whether `G` itself is a prism fixer; `None` for edgeless or
    /// disconnected inputs.
    pub prism_fixer: Option<bool>,
    pub detail: WitnessDetail,
}

impl WitnessReport {
    pub fn violation(&self) -> bool {
        self.outcome == Outcome::TheoremViolation
    }

    pub fn raises_gamma(&self) -> bool {
        self.gamma_prism > self.gamma_g
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessConfig {
    pub budget: u64,
    pub seed: u64,
    pub limit: usize,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            budget: DEFAULT_FALLBACK_BUDGET,
            seed: 0,
            limit: DEFAULT_ENUMERATION_LIMIT,
        }
    }
}

fn gamma_of_prism(g: &Graph, pi: &Permutation) -> Result<usize> {
    Ok(gamma_exact(build_prism(g, pi)?.graph()).gamma)
}

/// Produces a witness report for any graph.
pub fn find_witness(g: &Graph, config: &WitnessConfig) -> Result<WitnessReport> {
    let n = g.order();
    let gamma_g = gamma_exact(g).gamma;

    if g.is_edgeless() {
        let permutation = Permutation::identity(n);
        let gamma_prism = gamma_of_prism(g, &permutation)?;
        return Ok(WitnessReport {
            gamma_g,
            route: Route::Edgeless,
            outcome: if gamma_prism == gamma_g {
                Outcome::UniversalFixer
            } else {
                Outcome::TheoremViolation
            },
            permutation,
            gamma_prism,
            prism_fixer: None,
            detail: WitnessDetail::Edgeless,
        });
    }

    if !g.is_connected() {
        return lift_from_component(g, gamma_g, config);
    }

    let first = symmetric_gamma_sets(g, gamma_g, config.limit)
        .next()
        .transpose()?;
    if first.is_none() {
        let permutation = Permutation::identity(n);
        let gamma_prism = gamma_of_prism(g, &permutation)?;
        return Ok(finish(
            gamma_g,
            Route::Identity,
            permutation,
            gamma_prism,
            false,
            WitnessDetail::NotPrismFixer,
        ));
    }

    if gamma_g <= 3 {
        let found = fallback_witness_search(g, config.budget, config.seed)?;
        let detail = WitnessDetail::Search {
            stage: found.stage,
            tried: found.tried,
        };
        return Ok(match found.permutation {
            Some(permutation) => {
                let gamma_prism = gamma_of_prism(g, &permutation)?;
                finish(
                    gamma_g,
                    Route::FallbackSearch,
                    permutation,
                    gamma_prism,
                    true,
                    detail,
                )
            }
            None => WitnessReport {
                gamma_g,
                route: Route::FallbackSearch,
                permutation: Permutation::identity(n),
                gamma_prism: gamma_g,
                outcome: Outcome::NotFound,
                prism_fixer: Some(true),
                detail,
            },
        });
    }

    let sets: Vec<SymmetricGammaSet> =
        symmetric_gamma_sets(g, gamma_g, config.limit).collect::<Result<_>>()?;
    let (route, permutation, detail) = match classify_even_sets(&sets) {
        EvenStructure::NoEven => {
            let first = &sets[0];
            let (d1, d2) = if first.d1().len() > first.d2().len() {
                (first.d1(), first.d2())
            } else {
                (first.d2(), first.d1())
            };
            private_cycle(g, Route::UnbalancedCycle, d1, d2)?
        }
        EvenStructure::Pivot { set } => {
            let base = set.base().normalized();
            private_cycle(g, Route::PivotCycle, base.d1(), base.d2())?
        }
        EvenStructure::DisjointFamily { sets: family } => {
            let chain = build_chain_indexing(g, &family)?;
            let alpha = build_alpha_chain(&chain, n)?;
            let closing_cycle_ok = verify_closing_cycle(g, &chain, &alpha);
            (
                Route::Chain,
                alpha,
                WitnessDetail::Chain {
                    family,
                    chain,
                    closing_cycle_ok,
                },
            )
        }
    };
    let gamma_prism = gamma_of_prism(g, &permutation)?;
    Ok(finish(
        gamma_g,
        route,
        permutation,
        gamma_prism,
        true,
        detail,
    ))
}

fn private_cycle(
    g: &Graph,
    route: Route,
    d1: VertexSet,
    d2: VertexSet,
) -> Result<(Route, Permutation, WitnessDetail)> {
    let order = d1.to_vec();
    let u1 = select_private_neighbor(g, &order, order[0])?;
    let alpha = build_alpha_private_cycle(g, &order)?;
    Ok((
        route,
        alpha,
        WitnessDetail::PrivateCycle { d1: order, d2, u1 },
    ))
}

fn finish(
    gamma_g: usize,
    route: Route,
    permutation: Permutation,
    gamma_prism: usize,
    prism_fixer: bool,
    detail: WitnessDetail,
) -> WitnessReport {
    WitnessReport {
        gamma_g,
        route,
        permutation,
        gamma_prism,
        outcome: if gamma_prism > gamma_g {
            Outcome::Witness
        } else {
            Outcome::TheoremViolation
        },
        prism_fixer: Some(prism_fixer),
        detail,
    }
}

fn lift_from_component(g: &Graph, gamma_g: usize, config: &WitnessConfig) -> Result<WitnessReport> {
    let components = g.connected_components();
    let mut fallback: Option<(usize, WitnessReport)> = None;
    for (j, (comp, _)) in components.iter().enumerate() {
        if comp.is_edgeless() {
            continue;
        }
        let inner = find_witness(comp, config)?;
        match inner.outcome {
            Outcome::Witness => return lift(g, gamma_g, &components, j, inner),
            Outcome::TheoremViolation => return lift(g, gamma_g, &components, j, inner),
            _ => {
                fallback.get_or_insert((j, inner));
            }
        }
    }
    let (j, inner) = fallback.expect("a graph with an edge has a component with an edge");
    lift(g, gamma_g, &components, j, inner)
}

fn lift(
    g: &Graph,
    gamma_g: usize,
    components: &[(Graph, Vec<usize>)],
    j: usize,
    inner: WitnessReport,
) -> Result<WitnessReport> {
    let permutation = compose_component_witness(g, components, j, &inner.permutation)?;
    let gamma_prism = gamma_of_prism(g, &permutation)?;
    let outcome = match inner.outcome {
        Outcome::Witness if gamma_prism > gamma_g => Outcome::Witness,
        Outcome::NotFound => Outcome::NotFound,
        _ => Outcome::TheoremViolation,
    };
    Ok(WitnessReport {
        gamma_g,
        route: Route::ComponentLift,
        permutation,
        gamma_prism,
        outcome,
        prism_fixer: None,
        detail: WitnessDetail::Component {
            index: j,
            vertices: components[j].1.clone(),
            inner: Box::new(inner),
        },
    })
}
