//! Adjacency of equisingularity types.
//!
//! The central relation is *domination* between weighted diagrams: a pair of
//! isomorphic downward-closed subdiagrams whose transported multiplicities
//! produce values at least as large as the originals, everywhere. Linear
//! adjacency reduces exactly to domination by an augmentation of the left
//! type with free multiplicity-1 vertices; analytic adjacency gets a
//! necessary condition and a gated sufficient condition built from proximity
//! matrices, positional weight transport and tame unloading.
//!
//! All searches are deterministic and capped; hitting a cap is reported as
//! an indeterminate outcome, never as a negative answer.

use std::collections::BTreeSet;

use crate::diagram::{admissible_orderings, Embedding, OrderedDiagram, VertexId};
use crate::error::{Error, Result};
use crate::iso::enumerate_diagrams_capped;
use crate::matrix::IntMatrix;
use crate::weights::{ValueSystem, WeightedDiagram};

/// Caps for the adjacency searches. Exhausting a cap is always surfaced as
/// an indeterminate outcome, never as "no".
#[derive(Clone, Copy, Debug)]
pub struct SearchCaps {
    /// Node budget for one whole domination query (shared across all
    /// augmentations tried by that query).
    pub domination_nodes: u64,
    /// Cap on (ordering, candidate diagram, candidate ordering) triples
    /// visited by the positional searches.
    pub pair_cap: u64,
    /// Vertex-count cap handed to diagram enumeration inside the positional
    /// searches.
    pub diagram_cap: usize,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            domination_nodes: 1_000_000,
            pair_cap: 10_000,
            diagram_cap: crate::iso::DEFAULT_DIAGRAM_CAP,
        }
    }
}

struct NodeBudget {
    remaining: u64,
    cap: u64,
}

impl NodeBudget {
    fn new(cap: u64) -> Self {
        NodeBudget { remaining: cap, cap }
    }

    fn spend(&mut self) -> Result<()> {
        if self.remaining == 0 {
            return Err(Error::ResourceExhausted {
                what: "domination search nodes",
                cap: self.cap,
            });
        }
        self.remaining -= 1;
        Ok(())
    }
}

/// Witness that the left weighted diagram dominates the right one.
///
/// `embedding` maps vertices of the right diagram into the left diagram;
/// `transported` carries the left multiplicities pulled back onto the right
/// diagram (zero off the embedded part), and the two value systems satisfy
/// `right_values <= transported_values` pointwise.
#[derive(Clone, Debug)]
pub struct DominationCertificate {
    pub embedding: Embedding,
    pub transported: WeightedDiagram,
    pub right_values: ValueSystem,
    pub transported_values: ValueSystem,
}

impl DominationCertificate {
    /// Re-verify from scratch against the claimed sides. Recomputes the
    /// transported multiplicities and both value systems instead of trusting
    /// the stored ones.
    pub fn check(
        &self,
        left: &WeightedDiagram,
        right: &WeightedDiagram,
    ) -> std::result::Result<(), String> {
        if !left.is_consistent() {
            return Err("left side is not consistent".into());
        }
        self.embedding.check(right.diagram(), left.diagram())?;
        if self.transported.vertex_count() != right.vertex_count() {
            return Err("transported multiplicities live on the wrong diagram".into());
        }
        for p in right.diagram().vertices() {
            let expected = match self.embedding.image_of(p) {
                Some(ip) => left.mult(ip),
                None => 0,
            };
            if self.transported.mult(p) != expected {
                return Err(format!("transported multiplicity at {p} is not mu'(i({p}))"));
            }
        }
        let v = right.values();
        if v != self.right_values {
            return Err("stored right values differ from recomputation".into());
        }
        let vp = self.transported.values();
        if vp != self.transported_values {
            return Err("stored transported values differ from recomputation".into());
        }
        for p in right.diagram().vertices() {
            if v.get(p) > vp.get(p) {
                return Err(format!("value inequality fails at {p}: {} > {}", v.get(p), vp.get(p)));
            }
        }
        Ok(())
    }
}

struct DomSearch<'a> {
    left: &'a WeightedDiagram,
    right: &'a WeightedDiagram,
    right_values: Vec<i64>,
    assigned: Vec<Option<VertexId>>,
    used: Vec<bool>,
    vprime: Vec<i64>,
}

impl<'a> DomSearch<'a> {
    fn new(left: &'a WeightedDiagram, right: &'a WeightedDiagram) -> Self {
        DomSearch {
            right_values: right.values().as_slice().to_vec(),
            assigned: vec![None; right.vertex_count()],
            used: vec![false; left.vertex_count()],
            vprime: vec![0; right.vertex_count()],
            left,
            right,
        }
    }

    fn prox_value(&self, p: VertexId) -> i64 {
        self.right
            .diagram()
            .proximities(p)
            .map(|q| self.vprime[q.index()])
            .sum()
    }

    /// Decide vertex `k` of the right diagram: map it onto an unused child
    /// of its parent's image (candidates in ascending id order), or leave it
    /// outside the subdiagram. Values depend only on earlier vertices, so a
    /// violated inequality prunes the branch exactly.
    fn place(&mut self, k: usize, budget: &mut NodeBudget) -> Result<bool> {
        if k == self.right.vertex_count() {
            return Ok(true);
        }
        let p = VertexId(k as u32);
        let rd = self.right.diagram();
        let ld = self.left.diagram();
        let candidates: Vec<VertexId> = match rd.parent(p) {
            None => vec![ld.root()],
            Some(q) => match self.assigned[q.index()] {
                Some(iq) => ld.children(iq).to_vec(),
                None => Vec::new(),
            },
        };
        for c in candidates {
            budget.spend()?;
            if self.used[c.index()] {
                continue;
            }
            let structure_matches = match (rd.second_target(p), ld.second_target(c)) {
                (None, None) => true,
                (Some(t), Some(tc)) => self.assigned[t.index()] == Some(tc),
                _ => false,
            };
            if !structure_matches {
                continue;
            }
            let val = self.left.mult(c) + self.prox_value(p);
            if val < self.right_values[k] {
                continue;
            }
            self.assigned[k] = Some(c);
            self.used[c.index()] = true;
            self.vprime[k] = val;
            if self.place(k + 1, budget)? {
                return Ok(true);
            }
            self.assigned[k] = None;
            self.used[c.index()] = false;
        }
        budget.spend()?;
        let val = self.prox_value(p);
        if val >= self.right_values[k] {
            self.vprime[k] = val;
            if self.place(k + 1, budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn into_certificate(self) -> DominationCertificate {
        let pairs: Vec<(VertexId, VertexId)> = self
            .assigned
            .iter()
            .enumerate()
            .filter_map(|(k, img)| img.map(|c| (VertexId(k as u32), c)))
            .collect();
        let mults: Vec<i64> = self
            .assigned
            .iter()
            .map(|img| img.map_or(0, |c| self.left.mult(c)))
            .collect();
        let transported = WeightedDiagram::new(self.right.diagram().clone(), mults)
            .expect("transported weights fit the right diagram");
        DominationCertificate {
            embedding: Embedding::new(pairs),
            transported,
            right_values: ValueSystem::new(self.right_values),
            transported_values: ValueSystem::new(self.vprime),
        }
    }
}

fn domination_search(
    left: &WeightedDiagram,
    right: &WeightedDiagram,
    budget: &mut NodeBudget,
) -> Result<Option<DominationCertificate>> {
    let mut search = DomSearch::new(left, right);
    if search.place(0, budget)? {
        Ok(Some(search.into_certificate()))
    } else {
        Ok(None)
    }
}

/// Decide whether `left` dominates `right`: search all pairs of isomorphic
/// downward-closed subdiagrams, backtracking from the roots downward, pruning
/// as soon as some already-determined transported value drops below the
/// original. `left` must be consistent; `right` may be any weighted diagram.
pub fn dominates(
    left: &WeightedDiagram,
    right: &WeightedDiagram,
) -> Result<Option<DominationCertificate>> {
    dominates_with(left, right, &SearchCaps::default())
}

pub fn dominates_with(
    left: &WeightedDiagram,
    right: &WeightedDiagram,
    caps: &SearchCaps,
) -> Result<Option<DominationCertificate>> {
    if !left.is_consistent() {
        return Err(Error::Inconsistent { context: "dominates (left side)" });
    }
    let mut budget = NodeBudget::new(caps.domination_nodes);
    domination_search(left, right, &mut budget)
}

/// A consistent extension of a type by free multiplicity-1 vertices.
#[derive(Clone, Debug)]
pub struct Augmentation {
    pub base: WeightedDiagram,
    /// Ids of the added vertices inside `result`, in ascending order. Their
    /// parents are recoverable from the result diagram.
    pub added: Vec<VertexId>,
    pub result: WeightedDiagram,
}

impl Augmentation {
    pub fn is_trivial(&self) -> bool {
        self.added.is_empty()
    }
}

/// Non-increasing lists of positive chain lengths, at most `max_chains` of
/// them, total at most `max_total`; sorted by (total, list).
fn chain_multisets(max_chains: i64, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    fn rec(cap: usize, left: usize, chains_left: i64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if chains_left == 0 {
            return;
        }
        for len in 1..=cap.min(left) {
            cur.push(len);
            out.push(cur.clone());
            rec(len, left - len, chains_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    rec(max_total, max_total, max_chains, &mut cur, &mut out);
    out.sort_by_key(|m| (m.iter().sum::<usize>(), m.clone()));
    out.dedup();
    out
}

/// Every consistent way of attaching at most `budget` free multiplicity-1
/// vertices to `base` (chains allowed), one representative per isomorphism
/// class fixing the base. Each new child consumes one unit of its parent's
/// excess, so at most `rho_p` chains start below `p` and an added vertex can
/// carry exactly one further child.
///
/// The trivial augmentation comes first and the list is ordered by total
/// number of added vertices.
pub fn augmentations(base: &WeightedDiagram, budget: usize) -> Result<Vec<Augmentation>> {
    if !base.is_type() {
        return Err(Error::NotAType { context: "augmentations" });
    }
    let d = base.diagram();
    let rho = base.excesses();
    let per_vertex: Vec<Vec<Vec<usize>>> = d
        .vertices()
        .map(|v| chain_multisets(rho.get(v), budget))
        .collect();

    // All combinations with total added <= budget, in lexicographic order of
    // per-vertex choices; then stably reordered by total so the empty
    // augmentation is first.
    let mut combos: Vec<Vec<&Vec<usize>>> = Vec::new();
    let mut cur: Vec<&Vec<usize>> = Vec::new();
    fn rec<'c>(
        per_vertex: &'c [Vec<Vec<usize>>],
        i: usize,
        left: usize,
        cur: &mut Vec<&'c Vec<usize>>,
        combos: &mut Vec<Vec<&'c Vec<usize>>>,
    ) {
        if i == per_vertex.len() {
            combos.push(cur.clone());
            return;
        }
        for m in &per_vertex[i] {
            let total: usize = m.iter().sum();
            if total > left {
                continue;
            }
            cur.push(m);
            rec(per_vertex, i + 1, left - total, cur, combos);
            cur.pop();
        }
    }
    rec(&per_vertex, 0, budget, &mut cur, &mut combos);
    combos.sort_by_key(|c| c.iter().map(|m| m.iter().sum::<usize>()).sum::<usize>());

    let mut out = Vec::with_capacity(combos.len());
    for combo in combos {
        let mut diagram = d.clone();
        let mut mults = base.mults().to_vec();
        let mut added = Vec::new();
        let mut label_counter = 1usize;
        let mut fresh = |diagram: &crate::diagram::EnriquesDiagram| {
            loop {
                let cand = format!("a{label_counter}");
                label_counter += 1;
                if diagram.find_label(&cand).is_none() {
                    return cand;
                }
            }
        };
        for (vi, multiset) in combo.iter().enumerate() {
            for &len in multiset.iter() {
                let mut cur = VertexId(vi as u32);
                for _ in 0..len {
                    let label = fresh(&diagram);
                    diagram = diagram.extended(cur, None, label);
                    cur = VertexId(diagram.vertex_count() as u32 - 1);
                    mults.push(1);
                    added.push(cur);
                }
            }
        }
        let result = WeightedDiagram::new(diagram, mults)?;
        debug_assert!(result.is_consistent());
        out.push(Augmentation {
            base: base.clone(),
            added,
            result,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotLinearReason {
    /// The genus discrepancy or the Milnor number would have to grow.
    Semicontinuity,
    /// Exhaustive search over augmentations and embeddings found nothing.
    SearchExhausted,
}

/// Witness for a linear adjacency: the augmentation of the left type and the
/// domination of the target by its result.
#[derive(Clone, Debug)]
pub struct LinearCertificate {
    pub augmentation: Augmentation,
    pub domination: DominationCertificate,
}

#[derive(Clone, Debug)]
pub enum LinearVerdict {
    Linear(Box<LinearCertificate>),
    NotLinear(NotLinearReason),
}

impl LinearVerdict {
    pub fn is_linear(&self) -> bool {
        matches!(self, LinearVerdict::Linear(_))
    }
}

fn ensure_type(w: &WeightedDiagram, context: &'static str) -> Result<()> {
    if !w.is_type() {
        return Err(Error::NotAType { context });
    }
    Ok(())
}

/// Decide linear adjacency of `tilde` to `target`: LINEAR exactly when some
/// augmentation of `tilde` by at most `|target|` free multiplicity-1
/// vertices dominates `target`. Added vertices only matter through the image
/// subdiagram, which has at most `|target|` vertices, so larger budgets
/// cannot help; an unused extremal multiplicity-1 vertex can be dropped
/// without losing consistency.
pub fn linear_adjacent(tilde: &WeightedDiagram, target: &WeightedDiagram) -> Result<LinearVerdict> {
    linear_adjacent_with(tilde, target, &SearchCaps::default(), None)
}

pub fn linear_adjacent_with(
    tilde: &WeightedDiagram,
    target: &WeightedDiagram,
    caps: &SearchCaps,
    budget_override: Option<usize>,
) -> Result<LinearVerdict> {
    ensure_type(tilde, "linear adjacency (left side)")?;
    ensure_type(target, "linear adjacency (target)")?;
    let ti = tilde.invariants().expect("types are consistent");
    let tg = target.invariants().expect("types are consistent");
    if ti.delta < tg.delta || ti.milnor < tg.milnor {
        return Ok(LinearVerdict::NotLinear(NotLinearReason::Semicontinuity));
    }
    let budget = budget_override.unwrap_or_else(|| target.vertex_count());
    let mut nodes = NodeBudget::new(caps.domination_nodes);
    for augmentation in augmentations(tilde, budget)? {
        if let Some(domination) = domination_search(&augmentation.result, target, &mut nodes)? {
            return Ok(LinearVerdict::Linear(Box::new(LinearCertificate {
                augmentation,
                domination,
            })));
        }
    }
    Ok(LinearVerdict::NotLinear(NotLinearReason::SearchExhausted))
}

/// The matrix `P0^{-1} P` of a pair of equally sized ordered diagrams, where
/// `P` belongs to `generic` and `P0` to `special`. Exact integer arithmetic.
pub fn transition_matrix(
    generic: &OrderedDiagram<'_>,
    special: &OrderedDiagram<'_>,
) -> Result<IntMatrix> {
    if generic.order().len() != special.order().len() {
        return Err(Error::SizeMismatch(
            "ordered diagrams must have the same number of vertices".into(),
        ));
    }
    let p = generic.proximity_matrix();
    let p0_inv = special.proximity_matrix().inverse_unit_lower();
    Ok(p0_inv.mul(&p))
}

/// True when `P0^{-1} P` has no negative entries.
pub fn matrix_compatible(
    generic: &OrderedDiagram<'_>,
    special: &OrderedDiagram<'_>,
) -> Result<bool> {
    Ok(!transition_matrix(generic, special)?.has_negative_entry())
}

/// A witness for the positional conditions: an ordering of the target, a
/// candidate diagram with an ordering that is matrix-compatible with it, the
/// target multiplicities transported positionally, and a domination of the
/// transported diagram by an augmentation of the left type.
#[derive(Clone, Debug)]
pub struct PositionalWitness {
    pub target_order: Vec<VertexId>,
    /// The candidate diagram carrying the transported multiplicities.
    pub d0: WeightedDiagram,
    pub d0_order: Vec<VertexId>,
    pub matrix_generic: IntMatrix,
    pub matrix_special: IntMatrix,
    pub product: IntMatrix,
    /// Present (and true) when tameness was required and checked.
    pub tame: Option<bool>,
    pub augmentation: Augmentation,
    pub domination: DominationCertificate,
}

enum PositionalResult {
    Witness(Box<PositionalWitness>),
    Exhausted,
    CapHit(&'static str),
}

/// Shared engine of the necessary and sufficient conditions. Iterates, in a
/// fixed deterministic order, over admissible orderings of the target,
/// candidate diagrams of the same vertex count, and their orderings; keeps
/// the pairs passing the matrix criterion; transports the target weights
/// positionally; and asks for a dominating augmentation.
fn positional_search(
    tilde: &WeightedDiagram,
    target: &WeightedDiagram,
    caps: &SearchCaps,
    require_tame: bool,
) -> Result<PositionalResult> {
    let n = target.vertex_count();
    let augs = augmentations(tilde, n)?;
    let candidates = match enumerate_diagrams_capped(n, caps.diagram_cap) {
        Ok(v) => v,
        Err(e) if e.is_resource() => return Ok(PositionalResult::CapHit("candidate diagram enumeration")),
        Err(e) => return Err(e),
    };
    let mut nodes = NodeBudget::new(caps.domination_nodes);
    let mut pairs_visited: u64 = 0;
    let mut known_failures: BTreeSet<Vec<u8>> = BTreeSet::new();

    for target_order in admissible_orderings(target.diagram()) {
        let generic = OrderedDiagram::new(target.diagram(), target_order.clone())?;
        let p = generic.proximity_matrix();
        let mu: Vec<i64> = target_order.iter().map(|&v| target.mult(v)).collect();
        for d0 in &candidates {
            for d0_order in admissible_orderings(d0) {
                pairs_visited += 1;
                if pairs_visited > caps.pair_cap {
                    return Ok(PositionalResult::CapHit("candidate pair cap"));
                }
                let special = OrderedDiagram::new(d0, d0_order.clone())?;
                let p0 = special.proximity_matrix();
                let product = p0.inverse_unit_lower().mul(&p);
                if product.has_negative_entry() {
                    continue;
                }
                let mut mults = vec![0i64; n];
                for (i, &v0) in d0_order.iter().enumerate() {
                    mults[v0.index()] = mu[i];
                }
                let transported = WeightedDiagram::new(d0.clone(), mults)?;
                let mut tame = None;
                if require_tame {
                    match transported.unload() {
                        Ok(report) if report.tame => tame = Some(true),
                        Ok(_) => continue,
                        Err(e) if e.is_resource() => {
                            return Ok(PositionalResult::CapHit("unloading step cap"))
                        }
                        Err(e) => return Err(e),
                    }
                }
                let code = transported.canonical_code();
                if known_failures.contains(&code) {
                    continue;
                }
                let mut hit = None;
                for augmentation in &augs {
                    match domination_search(&augmentation.result, &transported, &mut nodes) {
                        Ok(Some(domination)) => {
                            hit = Some((augmentation.clone(), domination));
                            break;
                        }
                        Ok(None) => {}
                        Err(e) if e.is_resource() => {
                            return Ok(PositionalResult::CapHit("domination node cap"))
                        }
                        Err(e) => return Err(e),
                    }
                }
                match hit {
                    Some((augmentation, domination)) => {
                        return Ok(PositionalResult::Witness(Box::new(PositionalWitness {
                            target_order,
                            d0: transported,
                            d0_order,
                            matrix_generic: p,
                            matrix_special: p0,
                            product,
                            tame,
                            augmentation,
                            domination,
                        })))
                    }
                    None => {
                        known_failures.insert(code);
                    }
                }
            }
        }
    }
    Ok(PositionalResult::Exhausted)
}

#[derive(Clone, Debug)]
pub enum NecessaryOutcome {
    /// The necessary condition holds, with a witness.
    Pass(Box<PositionalWitness>),
    /// Exhaustive search found no witness: the left type is not adjacent to
    /// the target.
    Fail,
    /// A cap was hit before the search finished; no conclusion.
    Indeterminate(&'static str),
}

/// The necessary condition for adjacency: some candidate diagram with the
/// target's vertex count, matrix-compatible with the target under a pair of
/// admissible orderings and carrying the positionally transported weights,
/// is dominated by an augmentation of `tilde`. FAIL refutes adjacency.
pub fn necessary_adjacency(
    tilde: &WeightedDiagram,
    target: &WeightedDiagram,
) -> Result<NecessaryOutcome> {
    necessary_adjacency_with(tilde, target, &SearchCaps::default())
}

pub fn necessary_adjacency_with(
    tilde: &WeightedDiagram,
    target: &WeightedDiagram,
    caps: &SearchCaps,
) -> Result<NecessaryOutcome> {
    ensure_type(tilde, "necessary condition (left side)")?;
    ensure_type(target, "necessary condition (target)")?;
    Ok(match positional_search(tilde, target, caps, false)? {
        PositionalResult::Witness(w) => NecessaryOutcome::Pass(w),
        PositionalResult::Exhausted => NecessaryOutcome::Fail,
        PositionalResult::CapHit(what) => NecessaryOutcome::Indeterminate(what),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnknownReason {
    /// The sufficient condition only applies when the target diagram has no
    /// satellites or is a chain.
    GateInapplicable,
    /// The gated search ran to completion without a witness; this does not
    /// refute adjacency.
    SearchExhausted,
    /// A cap was hit first.
    CapHit(&'static str),
}

#[derive(Clone, Debug)]
pub enum SufficientOutcome {
    /// Adjacency established, with a witness.
    Yes(Box<PositionalWitness>),
    /// No conclusion; never a refutation.
    Unknown(UnknownReason),
}

/// The sufficient condition for adjacency, applicable when the target
/// diagram has no satellite vertices or is a chain. On top of the positional
/// conditions it requires the transported diagram to unload tamely.
pub fn sufficient_adjacency(
    tilde: &WeightedDiagram,
    target: &WeightedDiagram,
) -> Result<SufficientOutcome> {
    sufficient_adjacency_with(tilde, target, &SearchCaps::default())
}

pub fn sufficient_adjacency_with(
    tilde: &WeightedDiagram,
    target: &WeightedDiagram,
    caps: &SearchCaps,
) -> Result<SufficientOutcome> {
    ensure_type(tilde, "sufficient condition (left side)")?;
    ensure_type(target, "sufficient condition (target)")?;
    let d = target.diagram();
    if !(d.satellites().is_empty() || d.is_chain()) {
        return Ok(SufficientOutcome::Unknown(UnknownReason::GateInapplicable));
    }
    Ok(match positional_search(tilde, target, caps, true)? {
        PositionalResult::Witness(w) => SufficientOutcome::Yes(w),
        PositionalResult::Exhausted => SufficientOutcome::Unknown(UnknownReason::SearchExhausted),
        PositionalResult::CapHit(what) => SufficientOutcome::Unknown(UnknownReason::CapHit(what)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    Linear,
    Adjacent,
    NotAdjacent,
    Unknown,
}

/// Which step of the decision cascade produced the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    LinearDomination,
    TwoFreeVertices,
    Semicontinuity,
    NecessaryFailed,
    SufficientWitness,
    Undecided,
    BudgetExhausted,
}

impl Reason {
    pub fn tag(&self) -> &'static str {
        match self {
            Reason::LinearDomination => "linear-domination-witness",
            Reason::TwoFreeVertices => "two-free-vertices",
            Reason::Semicontinuity => "semicontinuity",
            Reason::NecessaryFailed => "necessary-condition-failed",
            Reason::SufficientWitness => "sufficient-condition-witness",
            Reason::Undecided => "undecided",
            Reason::BudgetExhausted => "budget-exhausted",
        }
    }
}

#[derive(Clone, Debug)]
pub struct AdjacencyVerdict {
    pub kind: VerdictKind,
    pub reason: Reason,
    pub linear: Option<Box<LinearCertificate>>,
    pub witness: Option<Box<PositionalWitness>>,
}

/// Full decision cascade: linear adjacency first; for targets with at most
/// two free vertices a failed linear search already refutes adjacency; then
/// the semicontinuity of delta and the Milnor number; then the necessary
/// condition (whose FAIL refutes) and the sufficient condition (whose YES
/// decides). Cap exhaustion in the last two steps degrades to UNKNOWN, never
/// to a negative answer.
pub fn adjacency_verdict(
    tilde: &WeightedDiagram,
    target: &WeightedDiagram,
) -> Result<AdjacencyVerdict> {
    adjacency_verdict_with(tilde, target, &SearchCaps::default(), None)
}

pub fn adjacency_verdict_with(
    tilde: &WeightedDiagram,
    target: &WeightedDiagram,
    caps: &SearchCaps,
    budget_override: Option<usize>,
) -> Result<AdjacencyVerdict> {
    let verdict = |kind, reason| AdjacencyVerdict {
        kind,
        reason,
        linear: None,
        witness: None,
    };
    let not_linear = match linear_adjacent_with(tilde, target, caps, budget_override) {
        Ok(LinearVerdict::Linear(cert)) => {
            return Ok(AdjacencyVerdict {
                kind: VerdictKind::Linear,
                reason: Reason::LinearDomination,
                linear: Some(cert),
                witness: None,
            })
        }
        Ok(LinearVerdict::NotLinear(reason)) => reason,
        Err(e) if e.is_resource() => {
            return Ok(verdict(VerdictKind::Unknown, Reason::BudgetExhausted))
        }
        Err(e) => return Err(e),
    };
    if target.diagram().free_vertex_count() <= 2 {
        return Ok(verdict(VerdictKind::NotAdjacent, Reason::TwoFreeVertices));
    }
    if not_linear == NotLinearReason::Semicontinuity {
        return Ok(verdict(VerdictKind::NotAdjacent, Reason::Semicontinuity));
    }
    let mut capped = false;
    match necessary_adjacency_with(tilde, target, caps)? {
        NecessaryOutcome::Fail => {
            return Ok(verdict(VerdictKind::NotAdjacent, Reason::NecessaryFailed))
        }
        NecessaryOutcome::Indeterminate(_) => capped = true,
        NecessaryOutcome::Pass(_) => {}
    }
    match sufficient_adjacency_with(tilde, target, caps)? {
        SufficientOutcome::Yes(w) => Ok(AdjacencyVerdict {
            kind: VerdictKind::Adjacent,
            reason: Reason::SufficientWitness,
            linear: None,
            witness: Some(w),
        }),
        SufficientOutcome::Unknown(UnknownReason::CapHit(_)) => {
            Ok(verdict(VerdictKind::Unknown, Reason::BudgetExhausted))
        }
        SufficientOutcome::Unknown(_) => {
            if capped {
                Ok(verdict(VerdictKind::Unknown, Reason::BudgetExhausted))
            } else {
                Ok(verdict(VerdictKind::Unknown, Reason::Undecided))
            }
        }
    }
}
