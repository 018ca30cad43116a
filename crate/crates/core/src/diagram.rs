//! Enriques diagrams: rooted trees carrying a proximity relation.
//!
//! Every non-root vertex is proximate to its parent; a vertex proximate to a
//! second, strictly earlier vertex is a *satellite*, all others are *free*.
//! The five axioms below pin down exactly which second targets are legal.
//!
//! [`RawDiagram`] is the declarative, possibly-invalid form (what a file or a
//! hand-built test case says). [`EnriquesDiagram`] is the validated form; its
//! vertex ids are dense and topologically sorted, so id order is always an
//! admissible ordering.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Index of a vertex within a single diagram.
///
/// Ids are dense (`0..n`) and topologically sorted: a parent always has a
/// smaller id than each of its children.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A vertex as declared, before validation.
#[derive(Clone, Debug)]
pub struct RawVertex {
    pub label: String,
    /// Index of the parent in the owning [`RawDiagram`]; `None` for a root.
    pub parent: Option<usize>,
    /// Declared proximity targets, as indices.
    pub proximities: Vec<usize>,
}

/// A diagram as declared. May violate the axioms; run [`validate_diagram`]
/// or convert with [`EnriquesDiagram::from_raw`].
#[derive(Clone, Debug, Default)]
pub struct RawDiagram {
    pub vertices: Vec<RawVertex>,
}

impl RawDiagram {
    pub fn push(&mut self, label: impl Into<String>, parent: Option<usize>, proximities: Vec<usize>) -> usize {
        self.vertices.push(RawVertex {
            label: label.into(),
            parent,
            proximities,
        });
        self.vertices.len() - 1
    }

    fn label_of(&self, i: usize) -> String {
        self.vertices
            .get(i)
            .map(|v| v.label.clone())
            .unwrap_or_else(|| format!("#{i}"))
    }
}

/// A single reason a raw diagram is not an Enriques diagram.
///
/// Structural defects (broken references, bad tree shape) are distinct from
/// axiom violations; when any structural defect is present the axioms are not
/// evaluated at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    /// Parent reference out of range or self-referential.
    DanglingParent { vertex: usize },
    /// Proximity entry out of range or self-referential.
    DanglingProximity { vertex: usize },
    /// The same vertex listed twice in one proximity set.
    DuplicateProximity { vertex: usize },
    MultipleRoots { roots: Vec<usize> },
    NoRoot,
    /// Parent links form a cycle through this vertex.
    ParentCycle { vertex: usize },
    /// Violation of one of the five proximity axioms.
    Axiom { number: u8, vertices: Vec<usize> },
}

impl Defect {
    pub fn axiom_number(&self) -> Option<u8> {
        match self {
            Defect::Axiom { number, .. } => Some(*number),
            _ => None,
        }
    }

    pub fn is_structural(&self) -> bool {
        !matches!(self, Defect::Axiom { .. })
    }

    /// Human-readable description using the raw diagram's labels.
    pub fn describe(&self, raw: &RawDiagram) -> String {
        let name = |i: &usize| raw.label_of(*i);
        match self {
            Defect::DanglingParent { vertex } => {
                format!("vertex '{}' has a dangling parent reference", name(vertex))
            }
            Defect::DanglingProximity { vertex } => {
                format!("vertex '{}' has a dangling proximity reference", name(vertex))
            }
            Defect::DuplicateProximity { vertex } => {
                format!("vertex '{}' lists a proximity target twice", name(vertex))
            }
            Defect::MultipleRoots { roots } => format!(
                "multiple roots: {}",
                roots.iter().map(name).collect::<Vec<_>>().join(", ")
            ),
            Defect::NoRoot => "no root vertex".to_string(),
            Defect::ParentCycle { vertex } => {
                format!("parent links cycle through vertex '{}'", name(vertex))
            }
            Defect::Axiom { number, vertices } => format!(
                "axiom {} violated at {}",
                number,
                vertices.iter().map(name).collect::<Vec<_>>().join(", ")
            ),
        }
    }
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::DanglingParent { vertex } => write!(f, "dangling parent at vertex {vertex}"),
            Defect::DanglingProximity { vertex } => write!(f, "dangling proximity at vertex {vertex}"),
            Defect::DuplicateProximity { vertex } => write!(f, "duplicate proximity at vertex {vertex}"),
            Defect::MultipleRoots { roots } => write!(f, "multiple roots {roots:?}"),
            Defect::NoRoot => write!(f, "no root"),
            Defect::ParentCycle { vertex } => write!(f, "parent cycle at vertex {vertex}"),
            Defect::Axiom { number, vertices } => write!(f, "axiom {number} violated at {vertices:?}"),
        }
    }
}

/// Check a raw diagram against the tree requirements and the five axioms.
///
/// Returns an empty list exactly when the input is an Enriques diagram.
/// Structural defects short-circuit the axiom checks (an axiom cannot be
/// evaluated over dangling references).
pub fn validate_diagram(raw: &RawDiagram) -> Vec<Defect> {
    let n = raw.vertices.len();
    let mut defects = Vec::new();

    for (i, v) in raw.vertices.iter().enumerate() {
        if let Some(p) = v.parent {
            if p >= n || p == i {
                defects.push(Defect::DanglingParent { vertex: i });
            }
        }
        let mut seen = BTreeSet::new();
        for &t in &v.proximities {
            if t >= n || t == i {
                defects.push(Defect::DanglingProximity { vertex: i });
            } else if !seen.insert(t) {
                defects.push(Defect::DuplicateProximity { vertex: i });
            }
        }
    }

    let roots: Vec<usize> = raw
        .vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| v.parent.is_none())
        .map(|(i, _)| i)
        .collect();
    if roots.is_empty() && n > 0 {
        defects.push(Defect::NoRoot);
    } else if roots.len() > 1 {
        defects.push(Defect::MultipleRoots { roots: roots.clone() });
    }
    if n == 0 {
        defects.push(Defect::NoRoot);
    }

    // Cycle detection over parent links (only meaningful where parents resolve).
    if defects.iter().all(|d| !matches!(d, Defect::DanglingParent { .. })) {
        let mut state = vec![0u8; n]; // 0 unknown, 1 in progress, 2 done
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut chain = vec![start];
            state[start] = 1;
            let mut cur = start;
            loop {
                match raw.vertices[cur].parent {
                    None => break,
                    Some(p) => match state[p] {
                        0 => {
                            state[p] = 1;
                            chain.push(p);
                            cur = p;
                        }
                        1 => {
                            defects.push(Defect::ParentCycle { vertex: p });
                            break;
                        }
                        _ => break,
                    },
                }
            }
            for v in chain {
                state[v] = 2;
            }
        }
    }

    if !defects.is_empty() {
        return defects;
    }

    // Axioms, now that the structure is a genuine rooted tree.
    let root = roots[0];
    if !raw.vertices[root].proximities.is_empty() {
        defects.push(Defect::Axiom { number: 1, vertices: vec![root] });
    }
    for (i, v) in raw.vertices.iter().enumerate() {
        let Some(parent) = v.parent else { continue };
        if !v.proximities.contains(&parent) {
            defects.push(Defect::Axiom { number: 2, vertices: vec![i] });
        }
        if v.proximities.len() > 2 {
            defects.push(Defect::Axiom { number: 3, vertices: vec![i] });
        }
        if v.proximities.len() == 2 {
            let other = if v.proximities[0] == parent {
                Some(v.proximities[1])
            } else if v.proximities[1] == parent {
                Some(v.proximities[0])
            } else {
                None
            };
            match other {
                None => defects.push(Defect::Axiom { number: 4, vertices: vec![i] }),
                Some(t) => {
                    if !raw.vertices[parent].proximities.contains(&t) {
                        defects.push(Defect::Axiom { number: 4, vertices: vec![i] });
                    }
                }
            }
        }
    }
    // Axiom 5: for q proximate to p, at most one vertex proximate to both.
    for p in 0..n {
        for q in 0..n {
            if !raw.vertices[q].proximities.contains(&p) {
                continue;
            }
            let both: Vec<usize> = (0..n)
                .filter(|&z| {
                    raw.vertices[z].proximities.contains(&p) && raw.vertices[z].proximities.contains(&q)
                })
                .collect();
            if both.len() > 1 {
                let mut vs = vec![p, q];
                vs.extend(both);
                defects.push(Defect::Axiom { number: 5, vertices: vs });
            }
        }
    }
    defects
}

/// A validated Enriques diagram. Immutable; all operations are pure.
#[derive(Clone, Debug)]
pub struct EnriquesDiagram {
    labels: Vec<String>,
    parent: Vec<Option<VertexId>>,
    /// Second proximity target, present exactly for satellites.
    second: Vec<Option<VertexId>>,
    children: Vec<Vec<VertexId>>,
    depth: Vec<u32>,
}

impl EnriquesDiagram {
    /// Validate and adopt a raw diagram. Vertices are re-indexed into a
    /// stable topological order (a no-op when the input is already ordered
    /// parent-first, as parsed files are).
    pub fn from_raw(raw: &RawDiagram) -> Result<Self> {
        let defects = validate_diagram(raw);
        if !defects.is_empty() {
            return Err(Error::InvalidDiagram(defects));
        }
        let n = raw.vertices.len();
        let mut old_to_new = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while order.len() < n {
            for i in 0..n {
                if placed[i] {
                    continue;
                }
                let ready = match raw.vertices[i].parent {
                    None => true,
                    Some(p) => placed[p],
                };
                if ready {
                    old_to_new[i] = order.len();
                    order.push(i);
                    placed[i] = true;
                }
            }
        }

        let mut d = EnriquesDiagram {
            labels: Vec::with_capacity(n),
            parent: Vec::with_capacity(n),
            second: Vec::with_capacity(n),
            children: vec![Vec::new(); n],
            depth: Vec::with_capacity(n),
        };
        for &old in &order {
            let v = &raw.vertices[old];
            let new_id = VertexId(d.labels.len() as u32);
            let parent = v.parent.map(|p| VertexId(old_to_new[p] as u32));
            let second = v
                .proximities
                .iter()
                .copied()
                .find(|&t| Some(t) != v.parent)
                .map(|t| VertexId(old_to_new[t] as u32));
            d.labels.push(v.label.clone());
            d.parent.push(parent);
            d.second.push(second);
            d.depth.push(match parent {
                None => 0,
                Some(p) => d.depth[p.index()] + 1,
            });
            if let Some(p) = parent {
                d.children[p.index()].push(new_id);
            }
        }
        Ok(d)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.labels.len() as u32).map(VertexId)
    }

    pub fn root(&self) -> VertexId {
        VertexId(0)
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v.index()]
    }

    /// The second proximity target, present exactly for satellites.
    pub fn second_target(&self, v: VertexId) -> Option<VertexId> {
        self.second[v.index()]
    }

    /// The vertices `v` is proximate to: its parent, then its second target.
    pub fn proximities(&self, v: VertexId) -> impl Iterator<Item = VertexId> {
        self.parent[v.index()]
            .into_iter()
            .chain(self.second[v.index()])
    }

    /// True when `q` is proximate to `p`.
    pub fn is_proximate(&self, q: VertexId, p: VertexId) -> bool {
        self.parent[q.index()] == Some(p) || self.second[q.index()] == Some(p)
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v.index()]
    }

    pub fn depth(&self, v: VertexId) -> u32 {
        self.depth[v.index()]
    }

    pub fn is_satellite(&self, v: VertexId) -> bool {
        self.second[v.index()].is_some()
    }

    pub fn is_free(&self, v: VertexId) -> bool {
        !self.is_satellite(v)
    }

    pub fn is_extremal(&self, v: VertexId) -> bool {
        self.children[v.index()].is_empty()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn find_label(&self, label: &str) -> Option<VertexId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| VertexId(i as u32))
    }

    /// Partition of the vertex set into (free, satellite).
    pub fn free_and_satellite(&self) -> (Vec<VertexId>, Vec<VertexId>) {
        self.vertices().partition(|&v| self.is_free(v))
    }

    pub fn satellites(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.is_satellite(v)).collect()
    }

    pub fn free_vertex_count(&self) -> usize {
        self.vertices().filter(|&v| self.is_free(v)).count()
    }

    /// True when no vertex has more than one successor (the diagram is a
    /// single chain; the combinatorial reading of "unibranched").
    pub fn is_chain(&self) -> bool {
        self.children.iter().all(|c| c.len() <= 1)
    }

    /// Strict ancestors of `v`, nearest first.
    pub fn ancestors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut cur = v;
        while let Some(p) = self.parent[cur.index()] {
            out.push(p);
            cur = p;
        }
        out
    }

    /// Replace all labels. Lengths must agree and labels must be distinct.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.labels.len() {
            return Err(Error::SizeMismatch("label count != vertex count".into()));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::BadParameter("duplicate labels".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// A copy with one extra vertex appended under `parent`, satellite onto
    /// `second` when given. Legality of the extension is the caller's business
    /// (used by the enumerators, which only generate legal moves).
    pub(crate) fn extended(&self, parent: VertexId, second: Option<VertexId>, label: String) -> Self {
        debug_assert!(second.map_or(true, |t| self.is_proximate(parent, t)));
        let mut d = self.clone();
        let id = VertexId(d.labels.len() as u32);
        d.labels.push(label);
        d.parent.push(Some(parent));
        d.second.push(second);
        d.depth.push(d.depth[parent.index()] + 1);
        d.children.push(Vec::new());
        d.children[parent.index()].push(id);
        d
    }

    /// Fresh label of the shape `v{k}` not colliding with existing labels.
    pub(crate) fn fresh_label(&self, hint: usize) -> String {
        let mut k = hint;
        loop {
            let cand = format!("v{k}");
            if !self.labels.iter().any(|l| *l == cand) {
                return cand;
            }
            k += 1;
        }
    }

    /// Legal second targets for a new child of `parent`: each vertex `t`
    /// that `parent` is proximate to and for which axiom 5 leaves room.
    pub fn legal_satellite_targets(&self, parent: VertexId) -> Vec<VertexId> {
        self.proximities(parent)
            .filter(|&t| {
                !self.vertices().any(|z| {
                    self.is_proximate(z, parent) && self.is_proximate(z, t)
                })
            })
            .collect()
    }

    /// Export to the declarative form (labels preserved).
    pub fn to_raw(&self) -> RawDiagram {
        let mut raw = RawDiagram::default();
        for v in self.vertices() {
            let prox: Vec<usize> = self.proximities(v).map(|t| t.index()).collect();
            raw.push(self.label(v), self.parent(v).map(|p| p.index()), prox);
        }
        raw
    }
}

/// Incremental, checked construction of a diagram.
///
/// Labels are assigned automatically as `v1..vn`.
#[derive(Default)]
pub struct DiagramBuilder {
    labels: Vec<String>,
    parent: Vec<Option<VertexId>>,
    second: Vec<Option<VertexId>>,
}

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, parent: Option<VertexId>, second: Option<VertexId>) -> VertexId {
        let id = VertexId(self.labels.len() as u32);
        self.labels.push(format!("v{}", self.labels.len() + 1));
        self.parent.push(parent);
        self.second.push(second);
        id
    }

    pub fn root(&mut self) -> Result<VertexId> {
        if !self.labels.is_empty() {
            return Err(Error::BadParameter("root must be the first vertex".into()));
        }
        Ok(self.push(None, None))
    }

    pub fn free_child(&mut self, parent: VertexId) -> Result<VertexId> {
        self.check_vertex(parent)?;
        Ok(self.push(Some(parent), None))
    }

    /// Add a satellite proximate to `parent` and to `target`. `target` must
    /// be a vertex `parent` is proximate to (axiom 4) and must not already
    /// have a vertex proximate to both it and `parent` (axiom 5).
    pub fn satellite_child(&mut self, parent: VertexId, target: VertexId) -> Result<VertexId> {
        self.check_vertex(parent)?;
        self.check_vertex(target)?;
        let prox_of_parent: Vec<VertexId> = self.proximities(parent);
        if !prox_of_parent.contains(&target) {
            return Err(Error::BadParameter(format!(
                "axiom 4: vertex {parent} is not proximate to {target}"
            )));
        }
        let clash = (0..self.labels.len() as u32).map(VertexId).any(|z| {
            let p = self.proximities(z);
            p.contains(&parent) && p.contains(&target)
        });
        if clash {
            return Err(Error::BadParameter(format!(
                "axiom 5: a vertex proximate to both {parent} and {target} already exists"
            )));
        }
        Ok(self.push(Some(parent), Some(target)))
    }

    fn proximities(&self, v: VertexId) -> Vec<VertexId> {
        self.parent[v.index()]
            .into_iter()
            .chain(self.second[v.index()])
            .collect()
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() >= self.labels.len() {
            return Err(Error::BadParameter(format!("unknown vertex {v}")));
        }
        Ok(())
    }

    pub fn build(self) -> EnriquesDiagram {
        let n = self.labels.len();
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![0u32; n];
        for i in 0..n {
            if let Some(p) = self.parent[i] {
                children[p.index()].push(VertexId(i as u32));
                depth[i] = depth[p.index()] + 1;
            }
        }
        EnriquesDiagram {
            labels: self.labels,
            parent: self.parent,
            second: self.second,
            children,
            depth,
        }
    }
}

/// A diagram together with an admissible total ordering of its vertices.
#[derive(Clone, Debug)]
pub struct OrderedDiagram<'a> {
    diagram: &'a EnriquesDiagram,
    order: Vec<VertexId>,
}

impl<'a> OrderedDiagram<'a> {
    /// Wrap an ordering, rejecting non-permutations and orders that place a
    /// vertex before its parent.
    pub fn new(diagram: &'a EnriquesDiagram, order: Vec<VertexId>) -> Result<Self> {
        let n = diagram.vertex_count();
        if order.len() != n {
            return Err(Error::SizeMismatch("ordering length != vertex count".into()));
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v.index() >= n || pos[v.index()] != usize::MAX {
                return Err(Error::BadParameter(format!("ordering is not a permutation at {v}")));
            }
            pos[v.index()] = i;
        }
        for &v in &order {
            if let Some(p) = diagram.parent(v) {
                if pos[p.index()] > pos[v.index()] {
                    return Err(Error::BadParameter(format!(
                        "ordering not admissible: {v} precedes its parent {p}"
                    )));
                }
            }
        }
        Ok(OrderedDiagram { diagram, order })
    }

    /// The id order; valid because ids are topologically sorted.
    pub fn identity(diagram: &'a EnriquesDiagram) -> Self {
        OrderedDiagram {
            order: diagram.vertices().collect(),
            diagram,
        }
    }

    pub fn diagram(&self) -> &'a EnriquesDiagram {
        self.diagram
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    /// The proximity matrix for this ordering: unit lower-triangular with a
    /// -1 at (i, j) exactly when vertex i is proximate to vertex j.
    pub fn proximity_matrix(&self) -> IntMatrix {
        let n = self.order.len();
        let mut m = IntMatrix::identity(n);
        for (i, &vi) in self.order.iter().enumerate() {
            for (j, &vj) in self.order.iter().enumerate().take(i) {
                if self.diagram.is_proximate(vi, vj) {
                    m.set(i, j, -1);
                }
            }
        }
        m
    }

    /// The proximity matrix together with its exact integer inverse.
    pub fn proximity_matrix_with_inverse(&self) -> (IntMatrix, IntMatrix) {
        let p = self.proximity_matrix();
        let inv = p.inverse_unit_lower();
        (p, inv)
    }
}

/// Iterator over every admissible ordering of a diagram, in lexicographic
/// order by vertex id sequence. Deterministic.
pub struct AdmissibleOrderings<'a> {
    diagram: &'a EnriquesDiagram,
    /// One frame per placed prefix position: (available vertices, cursor).
    stack: Vec<(Vec<VertexId>, usize)>,
    order: Vec<VertexId>,
}

impl<'a> AdmissibleOrderings<'a> {
    fn new(diagram: &'a EnriquesDiagram) -> Self {
        AdmissibleOrderings {
            diagram,
            stack: vec![(vec![diagram.root()], 0)],
            order: Vec::new(),
        }
    }
}

impl<'a> Iterator for AdmissibleOrderings<'a> {
    type Item = Vec<VertexId>;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.diagram.vertex_count();
        loop {
            let depth = self.order.len();
            let Some(frame) = self.stack.get_mut(depth) else {
                return None;
            };
            if frame.1 >= frame.0.len() {
                self.stack.pop();
                if self.order.pop().is_none() {
                    return None;
                }
                continue;
            }
            let v = frame.0[frame.1];
            frame.1 += 1;
            self.order.push(v);
            if self.order.len() == n {
                let full = self.order.clone();
                self.order.pop();
                return Some(full);
            }
            let prev_avail = &self.stack[depth].0;
            let mut avail: Vec<VertexId> = prev_avail.iter().copied().filter(|&x| x != v).collect();
            avail.extend_from_slice(self.diagram.children(v));
            avail.sort_unstable();
            self.stack.push((avail, 0));
        }
    }
}

/// Every linear extension of the predecessor order, each exactly once.
pub fn admissible_orderings(diagram: &EnriquesDiagram) -> AdmissibleOrderings<'_> {
    AdmissibleOrderings::new(diagram)
}

/// A downward-closed vertex subset of a diagram (possibly empty).
#[derive(Clone, Debug)]
pub struct Subdiagram<'a> {
    diagram: &'a EnriquesDiagram,
    /// Members in ascending id order.
    members: Vec<VertexId>,
}

impl<'a> Subdiagram<'a> {
    pub fn new(diagram: &'a EnriquesDiagram, mut members: Vec<VertexId>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        for &v in &members {
            if v.index() >= diagram.vertex_count() {
                return Err(Error::BadParameter(format!("unknown vertex {v}")));
            }
            if let Some(p) = diagram.parent(v) {
                if members.binary_search(&p).is_err() {
                    return Err(Error::BadParameter(format!(
                        "subset not downward-closed: {v} present without its parent {p}"
                    )));
                }
            }
        }
        Ok(Subdiagram { diagram, members })
    }

    pub fn diagram(&self) -> &'a EnriquesDiagram {
        self.diagram
    }

    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// The induced diagram, plus the member each new vertex came from.
    pub fn induced(&self) -> (EnriquesDiagram, Vec<VertexId>) {
        let mut raw = RawDiagram::default();
        let mut new_index = vec![usize::MAX; self.diagram.vertex_count()];
        for (i, &v) in self.members.iter().enumerate() {
            new_index[v.index()] = i;
        }
        for &v in &self.members {
            let prox: Vec<usize> = self
                .diagram
                .proximities(v)
                .map(|t| new_index[t.index()])
                .collect();
            raw.push(
                self.diagram.label(v),
                self.diagram.parent(v).map(|p| new_index[p.index()]),
                prox,
            );
        }
        let d = EnriquesDiagram::from_raw(&raw).expect("induced subdiagram is valid");
        (d, self.members.clone())
    }
}

/// All downward-closed subsets, the empty set and the full set included.
///
/// Deterministic order: depth-first over vertices in id order, excluding
/// before including, so the empty set comes first and the full set last.
pub fn enumerate_subdiagrams(diagram: &EnriquesDiagram) -> Vec<Subdiagram<'_>> {
    let n = diagram.vertex_count();
    let mut out = Vec::new();
    let mut chosen: Vec<VertexId> = Vec::new();
    let mut included = vec![false; n];
    fn rec<'a>(
        d: &'a EnriquesDiagram,
        v: usize,
        chosen: &mut Vec<VertexId>,
        included: &mut Vec<bool>,
        out: &mut Vec<Subdiagram<'a>>,
    ) {
        if v == d.vertex_count() {
            out.push(Subdiagram {
                diagram: d,
                members: chosen.clone(),
            });
            return;
        }
        let id = VertexId(v as u32);
        // Exclude branch first.
        rec(d, v + 1, chosen, included, out);
        // Include only when the parent is included (downward closure).
        let parent_ok = match d.parent(id) {
            None => true,
            Some(p) => included[p.index()],
        };
        if parent_ok {
            included[v] = true;
            chosen.push(id);
            rec(d, v + 1, chosen, included, out);
            chosen.pop();
            included[v] = false;
        }
    }
    rec(diagram, 0, &mut chosen, &mut included, &mut out);
    out
}

/// A proximity-preserving bijection between downward-closed subdiagrams of
/// two diagrams. Pairs are (source vertex, target vertex), source-sorted.
#[derive(Clone, Debug, Default)]
pub struct Embedding {
    pairs: Vec<(VertexId, VertexId)>,
}

impl Embedding {
    pub fn new(mut pairs: Vec<(VertexId, VertexId)>) -> Self {
        pairs.sort_unstable();
        Embedding { pairs }
    }

    pub fn identity(diagram: &EnriquesDiagram) -> Self {
        Embedding {
            pairs: diagram.vertices().map(|v| (v, v)).collect(),
        }
    }

    pub fn pairs(&self) -> &[(VertexId, VertexId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn image_of(&self, v: VertexId) -> Option<VertexId> {
        self.pairs
            .binary_search_by_key(&v, |&(s, _)| s)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    /// Full re-validation against the two diagrams: distinct downward-closed
    /// member sets on both sides, root to root, and proximity preserved in
    /// both directions. Returns a description of the first failure.
    pub fn check(
        &self,
        source: &EnriquesDiagram,
        target: &EnriquesDiagram,
    ) -> std::result::Result<(), String> {
        let mut tgt_seen = BTreeSet::new();
        for w in self.pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(format!("source vertex {} mapped twice", w[0].0));
            }
        }
        for &(s, t) in &self.pairs {
            if s.index() >= source.vertex_count() {
                return Err(format!("unknown source vertex {s}"));
            }
            if t.index() >= target.vertex_count() {
                return Err(format!("unknown target vertex {t}"));
            }
            if !tgt_seen.insert(t) {
                return Err(format!("target vertex {t} used twice"));
            }
        }
        let in_source = |v: VertexId| self.image_of(v).is_some();
        let in_target = |v: VertexId| tgt_seen.contains(&v);
        for &(s, t) in &self.pairs {
            if let Some(p) = source.parent(s) {
                if !in_source(p) {
                    return Err(format!("source side not downward-closed at {s}"));
                }
            }
            if let Some(p) = target.parent(t) {
                if !in_target(p) {
                    return Err(format!("target side not downward-closed at {t}"));
                }
            }
        }
        if !self.pairs.is_empty() {
            match self.image_of(source.root()) {
                Some(t) if t == target.root() => {}
                _ => return Err("root is not mapped to root".into()),
            }
        }
        for &(a, ia) in &self.pairs {
            for &(b, ib) in &self.pairs {
                let before = source.is_proximate(a, b);
                let after = target.is_proximate(ia, ib);
                if before != after {
                    return Err(format!(
                        "proximity not preserved on ({a}, {b}) -> ({ia}, {ib})"
                    ));
                }
            }
        }
        Ok(())
    }
}
