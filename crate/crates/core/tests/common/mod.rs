//! Shared test helpers: seeded random generators and brute-force oracles
//! kept independent of the library's own search and enumeration paths.

use enriques::{validate_diagram, DiagramBuilder, EnriquesDiagram, RawDiagram, VertexId, WeightedDiagram};
use rand::Rng;

/// Random valid diagram with exactly `n` vertices, built through the checked
/// builder; roughly 40% of eligible vertices become satellites.
pub fn random_diagram(rng: &mut impl Rng, n: usize) -> EnriquesDiagram {
    let mut b = DiagramBuilder::new();
    let mut parent: Vec<Option<VertexId>> = vec![None];
    let mut second: Vec<Option<VertexId>> = vec![None];
    let root = b.root().unwrap();
    let mut ids = vec![root];
    for _ in 1..n {
        let p = ids[rng.gen_range(0..ids.len())];
        let mut prox: Vec<VertexId> = Vec::new();
        if let Some(pp) = parent[p.index()] {
            prox.push(pp);
        }
        if let Some(ps) = second[p.index()] {
            prox.push(ps);
        }
        let mut made = None;
        if !prox.is_empty() && rng.gen_bool(0.4) {
            let t = prox[rng.gen_range(0..prox.len())];
            if let Ok(v) = b.satellite_child(p, t) {
                made = Some((v, Some(t)));
            }
        }
        let (v, s) = match made {
            Some(x) => x,
            None => (b.free_child(p).unwrap(), None),
        };
        parent.push(Some(p));
        second.push(s);
        ids.push(v);
    }
    b.build()
}

pub fn random_weighted(rng: &mut impl Rng, n: usize, lo: i64, hi: i64) -> WeightedDiagram {
    let d = random_diagram(rng, n);
    let mults = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    WeightedDiagram::new(d, mults).unwrap()
}

/// A random admissible ordering, by repeatedly drawing from the frontier.
pub fn random_admissible_order(rng: &mut impl Rng, d: &EnriquesDiagram) -> Vec<VertexId> {
    let mut available = vec![d.root()];
    let mut order = Vec::with_capacity(d.vertex_count());
    while !available.is_empty() {
        let i = rng.gen_range(0..available.len());
        let v = available.swap_remove(i);
        order.push(v);
        available.extend_from_slice(d.children(v));
    }
    order
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out
}

/// Isomorphism test by trying every bijection; the oracle counterpart of the
/// library's backtracking search and canonical code.
pub fn oracle_isomorphic(d1: &EnriquesDiagram, d2: &EnriquesDiagram) -> bool {
    let n = d1.vertex_count();
    if n != d2.vertex_count() {
        return false;
    }
    let ids: Vec<VertexId> = d1.vertices().collect();
    'perm: for perm in permutations(n) {
        for &a in &ids {
            for &bv in &ids {
                let img_a = VertexId(perm[a.index()] as u32);
                let img_b = VertexId(perm[bv.index()] as u32);
                if d1.is_proximate(a, bv) != d2.is_proximate(img_a, img_b) {
                    continue 'perm;
                }
            }
        }
        return true;
    }
    false
}

/// Exhaustive generation of all diagrams with `n` vertices, one per class,
/// deduplicated with [`oracle_isomorphic`]. Every rooted tree admits a
/// labelling with parents before children, so parent[i] < i loses nothing;
/// second-target choices are over-generated and filtered by the validator.
pub fn brute_force_diagram_classes(n: usize) -> Vec<EnriquesDiagram> {
    let mut classes: Vec<EnriquesDiagram> = Vec::new();
    let mut parent = vec![0usize; n];
    let mut target: Vec<Option<usize>> = vec![None; n];

    fn rec(
        i: usize,
        n: usize,
        parent: &mut Vec<usize>,
        target: &mut Vec<Option<usize>>,
        classes: &mut Vec<EnriquesDiagram>,
    ) {
        if i == n {
            let mut raw = RawDiagram::default();
            raw.push("v1", None, vec![]);
            for k in 1..n {
                let mut prox = vec![parent[k]];
                if let Some(t) = target[k] {
                    prox.push(t);
                }
                raw.push(format!("v{}", k + 1), Some(parent[k]), prox);
            }
            if !validate_diagram(&raw).is_empty() {
                return;
            }
            let d = EnriquesDiagram::from_raw(&raw).unwrap();
            if !classes.iter().any(|c| oracle_isomorphic(c, &d)) {
                classes.push(d);
            }
            return;
        }
        for p in 0..i {
            parent[i] = p;
            target[i] = None;
            rec(i + 1, n, parent, target, classes);
            for t in 0..i {
                if t == p {
                    continue;
                }
                target[i] = Some(t);
                rec(i + 1, n, parent, target, classes);
            }
            target[i] = None;
        }
    }

    if n == 1 {
        let mut raw = RawDiagram::default();
        raw.push("v1", None, vec![]);
        return vec![EnriquesDiagram::from_raw(&raw).unwrap()];
    }
    rec(1, n, &mut parent, &mut target, &mut classes);
    classes
}

/// Count linear extensions of the predecessor order by filtering all
/// permutations.
pub fn brute_force_linear_extensions(d: &EnriquesDiagram) -> usize {
    let n = d.vertex_count();
    permutations(n)
        .into_iter()
        .filter(|perm| {
            let mut pos = vec![0; n];
            for (i, &v) in perm.iter().enumerate() {
                pos[v] = i;
            }
            d.vertices().all(|v| match d.parent(v) {
                None => true,
                Some(p) => pos[p.index()] < pos[v.index()],
            })
        })
        .count()
}

/// Count downward-closed subsets by scanning all 2^n bitmasks.
pub fn brute_force_downward_closed(d: &EnriquesDiagram) -> usize {
    let n = d.vertex_count();
    assert!(n <= 20);
    (0u32..(1 << n))
        .filter(|mask| {
            d.vertices().all(|v| {
                if mask & (1 << v.index()) == 0 {
                    return true;
                }
                match d.parent(v) {
                    None => true,
                    Some(p) => mask & (1 << p.index()) != 0,
                }
            })
        })
        .count()
}
