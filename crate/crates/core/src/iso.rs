//! Isomorphism of Enriques diagrams: canonical codes, explicit isomorphism
//! search, and exhaustive enumeration of isomorphism classes.

use std::collections::BTreeMap;

use crate::diagram::{EnriquesDiagram, VertexId};
use crate::error::{Error, Result};

/// Hard cap on [`enumerate_diagrams`]; class counts grow quickly and a
/// desk-scale run should fail loudly rather than hang.
pub const DEFAULT_DIAGRAM_CAP: usize = 8;

/// Per-vertex code, computed bottom-up. A vertex contributes its satellite
/// tag (0 for free vertices, otherwise the distance along the ancestor chain
/// from its parent down to the second proximity target), the optional
/// multiplicity, and the sorted codes of its children. Axiom 4 makes the
/// second target unique, and the chain distance is label-free, so equal
/// codes mean isomorphic diagrams.
fn vertex_codes(d: &EnriquesDiagram, mults: Option<&[i64]>) -> Vec<Vec<u8>> {
    let n = d.vertex_count();
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    // Children always have larger ids, so reverse id order is bottom-up.
    for i in (0..n).rev() {
        let v = VertexId(i as u32);
        let tag = match d.second_target(v) {
            None => 0,
            Some(t) => {
                let p = d.parent(v).expect("satellite has a parent");
                d.depth(p) - d.depth(t)
            }
        };
        let mut child_codes: Vec<&[u8]> = d.children(v).iter().map(|c| codes[c.index()].as_slice()).collect();
        child_codes.sort_unstable();
        let mut buf = Vec::new();
        buf.extend_from_slice(tag.to_string().as_bytes());
        if let Some(m) = mults {
            buf.push(b',');
            buf.extend_from_slice(m[i].to_string().as_bytes());
        }
        buf.push(b'(');
        for c in child_codes {
            buf.extend_from_slice(c);
        }
        buf.push(b')');
        codes[i] = buf;
    }
    codes
}

pub(crate) fn code_with(d: &EnriquesDiagram, mults: Option<&[i64]>) -> Vec<u8> {
    vertex_codes(d, mults)[d.root().index()].clone()
}

/// Canonical code: equal codes exactly when the diagrams are isomorphic.
pub fn canonical_code(d: &EnriquesDiagram) -> Vec<u8> {
    code_with(d, None)
}

/// Vertices in canonical order: depth-first from the root, children visited
/// by ascending code. Ties between equal codes are broken by id, which does
/// not affect any code-derived output (equal codes are isomorphic subtrees).
pub(crate) fn canonical_order_with(d: &EnriquesDiagram, mults: Option<&[i64]>) -> Vec<VertexId> {
    let codes = vertex_codes(d, mults);
    let mut order = Vec::with_capacity(d.vertex_count());
    let mut stack = vec![d.root()];
    while let Some(v) = stack.pop() {
        order.push(v);
        let mut kids: Vec<VertexId> = d.children(v).to_vec();
        kids.sort_by(|a, b| codes[a.index()].cmp(&codes[b.index()]).then(a.cmp(b)));
        // Depth-first: push in reverse so the least code is visited first.
        for &c in kids.iter().rev() {
            stack.push(c);
        }
    }
    order
}

pub fn canonical_order(d: &EnriquesDiagram) -> Vec<VertexId> {
    canonical_order_with(d, None)
}

fn subtree_sizes(d: &EnriquesDiagram) -> Vec<usize> {
    let n = d.vertex_count();
    let mut size = vec![1usize; n];
    for i in (0..n).rev() {
        for c in d.children(VertexId(i as u32)) {
            size[i] += size[c.index()];
        }
    }
    size
}

/// Search for a proximity-preserving bijection from `d1` to `d2` by direct
/// backtracking over children, independent of the canonical code. Returns the
/// image of each `d1` vertex, indexed by id.
pub fn find_isomorphism(d1: &EnriquesDiagram, d2: &EnriquesDiagram) -> Option<Vec<VertexId>> {
    if d1.vertex_count() != d2.vertex_count() {
        return None;
    }
    let size1 = subtree_sizes(d1);
    let size2 = subtree_sizes(d2);
    let mut map: Vec<Option<VertexId>> = vec![None; d1.vertex_count()];
    let mut used = vec![false; d2.vertex_count()];

    fn rec(
        d1: &EnriquesDiagram,
        d2: &EnriquesDiagram,
        size1: &[usize],
        size2: &[usize],
        v1: VertexId,
        v2: VertexId,
        map: &mut Vec<Option<VertexId>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let kids1 = d1.children(v1);
        let kids2 = d2.children(v2);
        if kids1.len() != kids2.len() {
            return false;
        }
        match_kids(d1, d2, size1, size2, kids1, kids2, 0, map, used)
    }

    #[allow(clippy::too_many_arguments)]
    fn match_kids(
        d1: &EnriquesDiagram,
        d2: &EnriquesDiagram,
        size1: &[usize],
        size2: &[usize],
        kids1: &[VertexId],
        kids2: &[VertexId],
        idx: usize,
        map: &mut Vec<Option<VertexId>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if idx == kids1.len() {
            return true;
        }
        let c1 = kids1[idx];
        for &c2 in kids2 {
            if used[c2.index()] || size1[c1.index()] != size2[c2.index()] {
                continue;
            }
            let compatible = match (d1.second_target(c1), d2.second_target(c2)) {
                (None, None) => true,
                (Some(t1), Some(t2)) => map[t1.index()] == Some(t2),
                _ => false,
            };
            if !compatible {
                continue;
            }
            map[c1.index()] = Some(c2);
            used[c2.index()] = true;
            if rec(d1, d2, size1, size2, c1, c2, map, used)
                && match_kids(d1, d2, size1, size2, kids1, kids2, idx + 1, map, used)
            {
                return true;
            }
            map[c1.index()] = None;
            used[c2.index()] = false;
        }
        false
    }

    map[d1.root().index()] = Some(d2.root());
    used[d2.root().index()] = true;
    if rec(d1, d2, &size1, &size2, d1.root(), d2.root(), &mut map, &mut used) {
        Some(map.into_iter().map(|m| m.unwrap()).collect())
    } else {
        None
    }
}

/// One representative per isomorphism class of Enriques diagrams with
/// exactly `n` vertices, sorted by canonical code.
pub fn enumerate_diagrams(n: usize) -> Result<Vec<EnriquesDiagram>> {
    enumerate_diagrams_capped(n, DEFAULT_DIAGRAM_CAP)
}

/// As [`enumerate_diagrams`] with an explicit cap override.
///
/// Classes are grown one vertex at a time: a new vertex picks a parent among
/// existing vertices and is either free or a satellite onto a legal second
/// target; duplicates are folded by canonical code at each level.
pub fn enumerate_diagrams_capped(n: usize, cap: usize) -> Result<Vec<EnriquesDiagram>> {
    if n == 0 {
        return Err(Error::BadParameter("vertex count must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::ResourceExhausted {
            what: "diagram enumeration vertex count",
            cap: cap as u64,
        });
    }
    let mut raw = crate::diagram::RawDiagram::default();
    raw.push("v1", None, vec![]);
    let point = EnriquesDiagram::from_raw(&raw).expect("single vertex is valid");
    let mut level: BTreeMap<Vec<u8>, EnriquesDiagram> = BTreeMap::new();
    level.insert(canonical_code(&point), point);

    for k in 1..n {
        let mut next: BTreeMap<Vec<u8>, EnriquesDiagram> = BTreeMap::new();
        for d in level.values() {
            for p in d.vertices() {
                let label = d.fresh_label(k + 1);
                let free = d.extended(p, None, label.clone());
                next.entry(canonical_code(&free)).or_insert(free);
                for t in d.legal_satellite_targets(p) {
                    let sat = d.extended(p, Some(t), label.clone());
                    next.entry(canonical_code(&sat)).or_insert(sat);
                }
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DiagramBuilder;

    fn cusp_shape() -> EnriquesDiagram {
        let mut b = DiagramBuilder::new();
        let r = b.root().unwrap();
        let a = b.free_child(r).unwrap();
        b.satellite_child(a, r).unwrap();
        b.build()
    }

    fn chain_free(n: usize) -> EnriquesDiagram {
        let mut b = DiagramBuilder::new();
        let mut cur = b.root().unwrap();
        for _ in 1..n {
            cur = b.free_child(cur).unwrap();
        }
        b.build()
    }

    fn star(k: usize) -> EnriquesDiagram {
        let mut b = DiagramBuilder::new();
        let r = b.root().unwrap();
        for _ in 0..k {
            b.free_child(r).unwrap();
        }
        b.build()
    }

    #[test]
    fn relabeling_preserves_code() {
        let c1 = cusp_shape();
        let c2 = cusp_shape()
            .with_labels(vec!["x".into(), "y".into(), "z".into()])
            .unwrap();
        assert_eq!(canonical_code(&c1), canonical_code(&c2));
    }

    #[test]
    fn satellite_tag_distinguishes_codes() {
        assert_ne!(canonical_code(&cusp_shape()), canonical_code(&chain_free(3)));
        assert_ne!(canonical_code(&star(2)), canonical_code(&chain_free(3)));
    }

    #[test]
    fn isomorphism_search() {
        let c = cusp_shape();
        let m = find_isomorphism(&c, &c).unwrap();
        assert_eq!(m, vec![VertexId(0), VertexId(1), VertexId(2)]);

        let relabeled = cusp_shape()
            .with_labels(vec!["x".into(), "y".into(), "z".into()])
            .unwrap();
        assert!(find_isomorphism(&c, &relabeled).is_some());

        assert!(find_isomorphism(&c, &chain_free(3)).is_none());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_diagrams(1).unwrap().len(), 1);
        assert_eq!(enumerate_diagrams(2).unwrap().len(), 1);
        assert_eq!(enumerate_diagrams(3).unwrap().len(), 3);
    }

    #[test]
    fn enumeration_cap() {
        let err = enumerate_diagrams(9).unwrap_err();
        assert!(err.is_resource());
        assert!(enumerate_diagrams_capped(9, 9).is_ok());
    }

    #[test]
    fn code_agrees_with_isomorphism_on_small_classes() {
        let mut all = Vec::new();
        for n in 1..=4 {
            all.extend(enumerate_diagrams(n).unwrap());
        }
        for a in &all {
            for b in &all {
                let same_code = canonical_code(a) == canonical_code(b);
                let iso = find_isomorphism(a, b).is_some();
                assert_eq!(same_code, iso);
            }
        }
    }
}
