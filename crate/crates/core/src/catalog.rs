//! Constructors for named singularity types and exhaustive enumeration of
//! all types up to a degree bound.
//!
//! Constructed shapes are pinned by a Milnor-number oracle: each constructor
//! recomputes the invariants of what it built and panics on mismatch with
//! the classical value, so a wrong shape cannot ship silently.

use std::collections::BTreeMap;

use crate::diagram::DiagramBuilder;
use crate::error::{Error, Result};
use crate::weights::WeightedDiagram;

/// Hard cap on [`enumerate_types`].
pub const DEFAULT_TYPE_DEGREE_CAP: i64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArnoldFamily {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Arnold(ArnoldFamily),
    Ordinary,
    TangentSmooth,
    OneExponent,
}

/// A named singularity type together with its weighted diagram.
#[derive(Clone, Debug)]
pub struct NamedType {
    pub family: Family,
    pub params: Vec<i64>,
    pub name: String,
    pub diagram: WeightedDiagram,
}

fn oracle_check(name: &str, w: WeightedDiagram, milnor: i64, branches: Option<i64>) -> WeightedDiagram {
    assert!(w.is_type(), "{name}: constructed diagram is not a type");
    let inv = w.invariants().expect("type is consistent");
    assert_eq!(inv.milnor, milnor, "{name}: Milnor oracle mismatch");
    if let Some(r) = branches {
        assert_eq!(inv.branches, r, "{name}: branch count mismatch");
    }
    w
}

/// `A_k` (k >= 1), `D_k` (k >= 4) and `E_k` (k in 6..=8) of the classical
/// series. The Milnor number of the result equals `k`.
pub fn arnold(family: ArnoldFamily, k: i64) -> Result<NamedType> {
    let w = match family {
        ArnoldFamily::A => {
            if k < 1 {
                return Err(Error::BadParameter(format!("A_k needs k >= 1, got {k}")));
            }
            if k % 2 == 1 {
                // Free chain of (k+1)/2 vertices of multiplicity 2.
                let m = (k + 1) / 2;
                let mut b = DiagramBuilder::new();
                let mut cur = b.root()?;
                for _ in 1..m {
                    cur = b.free_child(cur)?;
                }
                WeightedDiagram::new(b.build(), vec![2; m as usize])?
            } else {
                // Free chain of k/2 twos, a free 1, then a satellite 1.
                let m = k / 2;
                let mut b = DiagramBuilder::new();
                let mut cur = b.root()?;
                for _ in 1..m {
                    cur = b.free_child(cur)?;
                }
                let f = b.free_child(cur)?;
                b.satellite_child(f, cur)?;
                let mut mults = vec![2; m as usize];
                mults.extend([1, 1]);
                WeightedDiagram::new(b.build(), mults)?
            }
        }
        ArnoldFamily::D => {
            if k < 4 {
                return Err(Error::BadParameter(format!("D_k needs k >= 4, got {k}")));
            }
            if k % 2 == 0 {
                // Root of multiplicity 3 and a free chain of k/2 - 2 twos.
                let m = k / 2;
                let mut b = DiagramBuilder::new();
                let mut cur = b.root()?;
                for _ in 0..(m - 2) {
                    cur = b.free_child(cur)?;
                }
                let mut mults = vec![3];
                mults.extend(vec![2; (m - 2) as usize]);
                WeightedDiagram::new(b.build(), mults)?
            } else {
                let m = (k - 1) / 2;
                let mut b = DiagramBuilder::new();
                let mut cur = b.root()?;
                for _ in 0..(m - 2) {
                    cur = b.free_child(cur)?;
                }
                let f = b.free_child(cur)?;
                b.satellite_child(f, cur)?;
                let mut mults = vec![3];
                mults.extend(vec![2; (m - 2) as usize]);
                mults.extend([1, 1]);
                WeightedDiagram::new(b.build(), mults)?
            }
        }
        ArnoldFamily::E => match k {
            6 => one_exponent(3, 4)?.diagram,
            8 => one_exponent(3, 5)?.diagram,
            7 => {
                // A cusp together with a smooth branch through its free point.
                let mut b = DiagramBuilder::new();
                let r = b.root()?;
                let a = b.free_child(r)?;
                b.satellite_child(a, r)?;
                WeightedDiagram::new(b.build(), vec![3, 2, 1])?
            }
            _ => return Err(Error::BadParameter(format!("E_k needs k in 6..=8, got {k}"))),
        },
    };
    let name = format!("{family:?}{k}");
    let w = oracle_check(&name, w, k, None);
    Ok(NamedType {
        family: Family::Arnold(family),
        params: vec![k],
        name,
        diagram: w,
    })
}

/// The ordinary point of multiplicity `m`: a single vertex of weight `m`.
pub fn ordinary(m: i64) -> Result<NamedType> {
    if m < 2 {
        return Err(Error::BadParameter(format!("ordinary point needs m >= 2, got {m}")));
    }
    let mut b = DiagramBuilder::new();
    b.root()?;
    let w = WeightedDiagram::new(b.build(), vec![m])?;
    let name = format!("Om{m}");
    let w = oracle_check(&name, w, (m - 1) * (m - 1), Some(m));
    Ok(NamedType {
        family: Family::Ordinary,
        params: vec![m],
        name,
        diagram: w,
    })
}

/// `m` smooth branches with pairwise contact `k`: a free chain of `k`
/// vertices of multiplicity `m`.
pub fn tangent_smooth(m: i64, k: i64) -> Result<NamedType> {
    if m < 2 || k < 1 {
        return Err(Error::BadParameter(format!(
            "tangent smooth branches need m >= 2 and k >= 1, got m={m}, k={k}"
        )));
    }
    let mut b = DiagramBuilder::new();
    let mut cur = b.root()?;
    for _ in 1..k {
        cur = b.free_child(cur)?;
    }
    let w = WeightedDiagram::new(b.build(), vec![m; k as usize])?;
    let name = format!("T{m}.{k}");
    let w = oracle_check(&name, w, k * m * (m - 1) - m + 1, Some(m));
    Ok(NamedType {
        family: Family::TangentSmooth,
        params: vec![m, k],
        name,
        diagram: w,
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The irreducible singularity with a single characteristic exponent `m/n`
/// (coprime, `2 <= n < m`). The multiplicity sequence comes from subtractive
/// Euclidean division of `(m, n)`; each satellite is aimed at the unique
/// earlier vertex whose excess is not yet exhausted, which is exactly the
/// one-branch condition. Construction fails loudly if the aim is ever
/// ambiguous or the branch count comes out wrong.
pub fn one_exponent(n: i64, m: i64) -> Result<NamedType> {
    if n < 2 || m <= n || gcd(n, m) != 1 {
        return Err(Error::BadParameter(format!(
            "one-exponent branch needs coprime 2 <= n < m, got n={n}, m={m}"
        )));
    }
    let mut seq = Vec::new();
    let (mut a, mut b) = (m, n);
    while b > 0 {
        seq.push(b);
        if a - b >= b {
            a -= b;
        } else {
            let t = a - b;
            a = b;
            b = t;
        }
    }

    // need[i]: total multiplicity of satellites that must aim at vertex i so
    // that its excess vanishes.
    let mut need: Vec<i64> = (0..seq.len())
        .map(|i| seq[i] - seq.get(i + 1).copied().unwrap_or(seq[i]))
        .collect();

    let mut builder = DiagramBuilder::new();
    let mut ids = vec![builder.root()?];
    let mut second_of: Vec<Option<usize>> = vec![None];
    for i in 1..seq.len() {
        let prev = i - 1;
        let mut cands: Vec<usize> = Vec::new();
        if prev >= 1 && need[prev - 1] > 0 {
            cands.push(prev - 1);
        }
        if let Some(t) = second_of[prev] {
            if need[t] > 0 {
                cands.push(t);
            }
        }
        assert!(cands.len() <= 1, "one-exponent construction: ambiguous satellite target");
        match cands.first() {
            None => {
                ids.push(builder.free_child(ids[prev])?);
                second_of.push(None);
            }
            Some(&t) => {
                need[t] -= seq[i];
                assert!(need[t] >= 0, "one-exponent construction: overfilled excess");
                ids.push(builder.satellite_child(ids[prev], ids[t])?);
                second_of.push(Some(t));
            }
        }
    }
    assert!(
        need.iter().rev().skip(1).all(|&x| x == 0),
        "one-exponent construction: unfilled excess"
    );
    let w = WeightedDiagram::new(builder.build(), seq)?;
    let name = format!("B{n}.{m}");
    let w = oracle_check(&name, w, (n - 1) * (m - 1), Some(1));
    Ok(NamedType {
        family: Family::OneExponent,
        params: vec![n, m],
        name,
        diagram: w,
    })
}

/// Parse the CLI syntax for named types: `A:k`, `D:k`, `E:k`, `Om:m`,
/// `T:m:k`, `B:n:m`.
pub fn named_type(spec: &str) -> Result<NamedType> {
    let parts: Vec<&str> = spec.split(':').collect();
    let parse = |s: &str| -> Result<i64> {
        s.parse::<i64>()
            .map_err(|_| Error::BadParameter(format!("bad integer '{s}' in type spec '{spec}'")))
    };
    match parts.as_slice() {
        ["A", k] => arnold(ArnoldFamily::A, parse(k)?),
        ["D", k] => arnold(ArnoldFamily::D, parse(k)?),
        ["E", k] => arnold(ArnoldFamily::E, parse(k)?),
        ["Om", m] => ordinary(parse(m)?),
        ["T", m, k] => tangent_smooth(parse(m)?, parse(k)?),
        ["B", n, m] => one_exponent(parse(n)?, parse(m)?),
        _ => Err(Error::BadParameter(format!(
            "unknown type spec '{spec}' (expected A:k, D:k, E:k, Om:m, T:m:k or B:n:m)"
        ))),
    }
}

/// Every type of degree at most `max_degree`, one per weighted isomorphism
/// class, sorted by weighted canonical code.
pub fn enumerate_types(max_degree: i64) -> Result<Vec<WeightedDiagram>> {
    enumerate_types_capped(max_degree, DEFAULT_TYPE_DEGREE_CAP)
}

/// As [`enumerate_types`] with an explicit cap override.
///
/// Walks the space of consistent weighted diagrams with strictly positive
/// multiplicities, growing one leaf at a time; every type is reachable this
/// way because removing an extremal vertex from a consistent diagram keeps
/// it consistent. A vertex of multiplicity zero cannot lie on the curve, so
/// positive multiplicities are exactly the weightings that represent types.
pub fn enumerate_types_capped(max_degree: i64, cap: i64) -> Result<Vec<WeightedDiagram>> {
    if max_degree < 3 {
        return Err(Error::BadParameter(format!(
            "type enumeration needs max_degree >= 3, got {max_degree}"
        )));
    }
    if max_degree > cap {
        return Err(Error::ResourceExhausted {
            what: "type enumeration degree",
            cap: cap as u64,
        });
    }

    let mut seen: BTreeMap<Vec<u8>, WeightedDiagram> = BTreeMap::new();
    let mut queue: Vec<WeightedDiagram> = Vec::new();
    let mut root_mult = 1;
    while root_mult * (root_mult + 1) / 2 <= max_degree {
        let mut b = DiagramBuilder::new();
        b.root()?;
        let w = WeightedDiagram::new(b.build(), vec![root_mult])?;
        seen.insert(w.canonical_code(), w.clone());
        queue.push(w);
        root_mult += 1;
    }

    while let Some(w) = queue.pop() {
        let d = w.diagram();
        let rho = w.excesses();
        let degree = w.degree();
        for p in d.vertices() {
            let label = d.fresh_label(d.vertex_count() + 1);
            // Free child: consumes excess at p only.
            let mut extend = |second, slack: i64| -> Result<()> {
                let mut x = 1;
                while x <= slack && degree + x * (x + 1) / 2 <= max_degree {
                    let nd = d.extended(p, second, label.clone());
                    let mut mults = w.mults().to_vec();
                    mults.push(x);
                    let nw = WeightedDiagram::new(nd, mults)?;
                    debug_assert!(nw.is_consistent());
                    let code = nw.canonical_code();
                    if seen.insert(code, nw.clone()).is_none() {
                        queue.push(nw);
                    }
                    x += 1;
                }
                Ok(())
            };
            extend(None, rho.get(p))?;
            for t in d.legal_satellite_targets(p) {
                extend(Some(t), rho.get(p).min(rho.get(t)))?;
            }
        }
    }

    Ok(seen
        .into_values()
        .filter(|w| w.is_type())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arnold_shapes() {
        let a2 = arnold(ArnoldFamily::A, 2).unwrap();
        assert_eq!(a2.diagram.mults(), &[2, 1, 1]);
        assert_eq!(a2.diagram.invariants().unwrap().milnor, 2);

        let a3 = arnold(ArnoldFamily::A, 3).unwrap();
        assert_eq!(a3.diagram.mults(), &[2, 2]);
        assert_eq!(a3.diagram.invariants().unwrap().milnor, 3);

        let d4 = arnold(ArnoldFamily::D, 4).unwrap();
        assert_eq!(d4.diagram.mults(), &[3]);
        assert_eq!(d4.diagram.invariants().unwrap().milnor, 4);
    }

    #[test]
    fn milnor_oracle_across_series() {
        for k in 1..=12 {
            assert_eq!(arnold(ArnoldFamily::A, k).unwrap().diagram.invariants().unwrap().milnor, k);
        }
        for k in 4..=12 {
            assert_eq!(arnold(ArnoldFamily::D, k).unwrap().diagram.invariants().unwrap().milnor, k);
        }
        for k in 6..=8 {
            assert_eq!(arnold(ArnoldFamily::E, k).unwrap().diagram.invariants().unwrap().milnor, k);
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(arnold(ArnoldFamily::A, 0).is_err());
        assert!(arnold(ArnoldFamily::D, 3).is_err());
        assert!(arnold(ArnoldFamily::E, 9).is_err());
        assert!(ordinary(1).is_err());
        assert!(tangent_smooth(1, 3).is_err());
        assert!(one_exponent(2, 4).is_err());
        assert!(one_exponent(1, 5).is_err());
    }

    #[test]
    fn ordinary_triple_point_is_d4() {
        let om3 = ordinary(3).unwrap();
        let d4 = arnold(ArnoldFamily::D, 4).unwrap();
        assert!(om3.diagram.isomorphic_to(&d4.diagram));
    }

    #[test]
    fn tangent_smooth_milnor_formula() {
        for k in 1..=5 {
            let t = tangent_smooth(3, k).unwrap();
            assert_eq!(t.diagram.invariants().unwrap().milnor, 6 * k - 2);
        }
    }

    #[test]
    fn one_exponent_examples() {
        let e6 = one_exponent(3, 4).unwrap();
        assert_eq!(e6.diagram.mults(), &[3, 1, 1, 1]);
        assert_eq!(e6.diagram.diagram().satellites().len(), 2);
        assert_eq!(e6.diagram.invariants().unwrap().milnor, 6);
        assert!(e6.diagram.isomorphic_to(&arnold(ArnoldFamily::E, 6).unwrap().diagram));

        let cusp = one_exponent(2, 3).unwrap();
        assert!(cusp.diagram.isomorphic_to(&arnold(ArnoldFamily::A, 2).unwrap().diagram));
    }

    #[test]
    fn one_exponent_is_single_branch() {
        for m in 3..=20 {
            for n in 2..m {
                if gcd(n, m) == 1 {
                    let b = one_exponent(n, m).unwrap();
                    assert_eq!(b.diagram.invariants().unwrap().branches, 1, "B{n}.{m}");
                }
            }
        }
    }

    #[test]
    fn named_type_syntax() {
        assert!(named_type("A:3").is_ok());
        assert!(named_type("T:3:2").is_ok());
        assert!(named_type("B:3:5").is_ok());
        assert!(named_type("Q:1").is_err());
        assert!(named_type("A:x").is_err());
    }

    #[test]
    fn type_enumeration_small_degrees() {
        let t3 = enumerate_types(3).unwrap();
        assert_eq!(t3.len(), 1);
        assert_eq!(t3[0].mults(), &[2]);

        let t5 = enumerate_types(5).unwrap();
        assert_eq!(t5.len(), 2);

        let t6 = enumerate_types(6).unwrap();
        assert_eq!(t6.len(), 4);
        let expected = [
            arnold(ArnoldFamily::A, 1).unwrap().diagram,
            arnold(ArnoldFamily::A, 2).unwrap().diagram,
            arnold(ArnoldFamily::A, 3).unwrap().diagram,
            arnold(ArnoldFamily::D, 4).unwrap().diagram,
        ];
        for e in &expected {
            assert!(t6.iter().any(|w| w.isomorphic_to(e)));
        }
    }

    #[test]
    fn type_enumeration_is_sorted_and_capped() {
        let t8 = enumerate_types(8).unwrap();
        let codes: Vec<Vec<u8>> = t8.iter().map(|w| w.canonical_code()).collect();
        let mut sorted = codes.clone();
        sorted.sort();
        assert_eq!(codes, sorted);
        assert!(enumerate_types(13).unwrap_err().is_resource());
        assert!(enumerate_types(2).is_err());
    }
}
