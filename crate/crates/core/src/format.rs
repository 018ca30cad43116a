//! Text format for (weighted) Enriques diagrams.
//!
//! One vertex per line, parents before children (so line order is an
//! admissible ordering):
//!
//! ```text
//! # a cusp
//! v r - m=2
//! v a r m=1
//! v b a +r m=1
//! ```
//!
//! `-` marks the root, `+<id>` the second proximity target of a satellite,
//! `m=<int>` the multiplicity. `#` starts a comment. Serialization is
//! canonical: vertices in canonical-code order renamed `v1..vn`, so equal
//! canonical codes produce byte-identical output.

use crate::diagram::{EnriquesDiagram, RawDiagram};
use crate::error::{Error, Result};
use crate::iso;
use crate::weights::WeightedDiagram;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn valid_id(tok: &str) -> bool {
    !tok.is_empty() && tok != "-" && !tok.starts_with('+') && !tok.contains('=') && !tok.contains('#')
}

struct Parsed {
    raw: RawDiagram,
    mults: Vec<Option<i64>>,
    lines: Vec<usize>,
}

fn parse_lines(text: &str, strict: bool) -> Result<Parsed> {
    let mut raw = RawDiagram::default();
    let mut mults: Vec<Option<i64>> = Vec::new();
    let mut lines: Vec<usize> = Vec::new();
    let mut root_seen = false;

    for (lineno, full_line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = full_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] != "v" {
            return Err(parse_err(lineno, format!("expected 'v', found '{}'", tokens[0])));
        }
        if tokens.len() < 3 {
            return Err(parse_err(lineno, "expected 'v <id> <parent|->'"));
        }
        let id = tokens[1];
        if !valid_id(id) {
            return Err(parse_err(lineno, format!("invalid vertex id '{id}'")));
        }
        let find = |label: &str| raw.vertices.iter().position(|v| v.label == label);
        if find(id).is_some() {
            return Err(parse_err(lineno, format!("duplicate vertex id '{id}'")));
        }
        let parent = match tokens[2] {
            "-" => {
                if root_seen {
                    return Err(parse_err(lineno, "root redeclared"));
                }
                root_seen = true;
                None
            }
            p => match find(p) {
                Some(i) => Some(i),
                None => return Err(parse_err(lineno, format!("unknown parent '{p}'"))),
            },
        };

        let mut target: Option<usize> = None;
        let mut mult: Option<i64> = None;
        for tok in &tokens[3..] {
            if let Some(t) = tok.strip_prefix('+') {
                if target.is_some() {
                    return Err(parse_err(lineno, "more than one '+' target"));
                }
                match find(t) {
                    Some(i) => target = Some(i),
                    None => return Err(parse_err(lineno, format!("unknown proximity target '{t}'"))),
                }
            } else if let Some(mtext) = tok.strip_prefix("m=") {
                if mult.is_some() {
                    return Err(parse_err(lineno, "more than one multiplicity"));
                }
                mult = Some(
                    mtext
                        .parse::<i64>()
                        .map_err(|_| parse_err(lineno, format!("bad multiplicity '{mtext}'")))?,
                );
            } else {
                return Err(parse_err(lineno, format!("unexpected token '{tok}'")));
            }
        }
        if parent.is_none() && target.is_some() {
            return Err(parse_err(lineno, "the root cannot be a satellite (axiom 1)"));
        }

        if strict {
            if let (Some(p), Some(t)) = (parent, target) {
                let parent_prox = &raw.vertices[p].proximities;
                if !parent_prox.contains(&t) {
                    return Err(parse_err(
                        lineno,
                        format!(
                            "satellite target '+{}' is not a vertex that '{}' is proximate to (axiom 4)",
                            raw.vertices[t].label, raw.vertices[p].label
                        ),
                    ));
                }
                let clash = raw
                    .vertices
                    .iter()
                    .any(|z| z.proximities.contains(&p) && z.proximities.contains(&t));
                if clash {
                    return Err(parse_err(
                        lineno,
                        format!(
                            "a vertex proximate to both '{}' and '{}' already exists (axiom 5)",
                            raw.vertices[p].label, raw.vertices[t].label
                        ),
                    ));
                }
            }
        }

        let mut prox: Vec<usize> = Vec::new();
        if let Some(p) = parent {
            prox.push(p);
        }
        if let Some(t) = target {
            prox.push(t);
        }
        raw.push(id, parent, prox);
        mults.push(mult);
        lines.push(lineno);
    }

    if raw.vertices.is_empty() {
        return Err(parse_err(0, "empty diagram"));
    }
    Ok(Parsed { raw, mults, lines })
}

/// Structural parse only, for axiom reporting: resolves references and the
/// grammar but does not enforce axioms 4 and 5.
pub fn parse_raw(text: &str) -> Result<(RawDiagram, Vec<Option<i64>>)> {
    let p = parse_lines(text, false)?;
    Ok((p.raw, p.mults))
}

/// Strict parse: grammar, references, and the axioms, with positional
/// diagnostics. Multiplicities are all-or-nothing.
pub fn parse_diagram(text: &str) -> Result<(EnriquesDiagram, Option<Vec<i64>>)> {
    let p = parse_lines(text, true)?;
    let diagram = EnriquesDiagram::from_raw(&p.raw)?;
    let given = p.mults.iter().filter(|m| m.is_some()).count();
    let mults = if given == 0 {
        None
    } else if given == p.mults.len() {
        Some(p.mults.into_iter().map(|m| m.unwrap()).collect())
    } else {
        let missing = p.mults.iter().position(|m| m.is_none()).unwrap();
        return Err(parse_err(
            p.lines[missing],
            format!(
                "vertex '{}' has no multiplicity while other vertices do",
                p.raw.vertices[missing].label
            ),
        ));
    };
    Ok((diagram, mults))
}

/// Strict parse requiring multiplicities.
pub fn parse_weighted(text: &str) -> Result<WeightedDiagram> {
    let (diagram, mults) = parse_diagram(text)?;
    let mults = mults.ok_or(Error::MissingMultiplicities)?;
    WeightedDiagram::new(diagram, mults)
}

/// Strict parse of the diagram alone; multiplicities, if present, are ignored.
pub fn parse_unweighted(text: &str) -> Result<EnriquesDiagram> {
    Ok(parse_diagram(text)?.0)
}

/// The canonical name `v1..vn` of each vertex (indexed by id): its position
/// in canonical-code order.
pub fn canonical_labels(diagram: &EnriquesDiagram, mults: Option<&[i64]>) -> Vec<String> {
    let order = iso::canonical_order_with(diagram, mults);
    let mut name = vec![String::new(); diagram.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        name[v.index()] = format!("v{}", i + 1);
    }
    name
}

/// Canonical serialization: vertices in canonical-code order, renamed
/// `v1..vn`. Parsing the output yields an isomorphic (weighted) diagram.
pub fn serialize(diagram: &EnriquesDiagram, mults: Option<&[i64]>) -> String {
    let order = iso::canonical_order_with(diagram, mults);
    let name = canonical_labels(diagram, mults);
    let mut out = String::new();
    for &v in &order {
        out.push_str("v ");
        out.push_str(&name[v.index()]);
        out.push(' ');
        match diagram.parent(v) {
            None => out.push('-'),
            Some(p) => out.push_str(&name[p.index()]),
        }
        if let Some(t) = diagram.second_target(v) {
            out.push_str(" +");
            out.push_str(&name[t.index()]);
        }
        if let Some(m) = mults {
            out.push_str(&format!(" m={}", m[v.index()]));
        }
        out.push('\n');
    }
    out
}

pub fn serialize_weighted(w: &WeightedDiagram) -> String {
    serialize(w.diagram(), Some(w.mults()))
}

pub fn serialize_unweighted(d: &EnriquesDiagram) -> String {
    serialize(d, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{arnold, named_type, ArnoldFamily};

    const CUSP: &str = "v r - m=2\nv a r m=1\nv b a +r m=1\n";
    const CUSP_CANONICAL: &str = "v v1 - m=2\nv v2 v1 m=1\nv v3 v2 +v1 m=1\n";

    #[test]
    fn parse_cusp() {
        let w = parse_weighted(CUSP).unwrap();
        assert_eq!(w.mults(), &[2, 1, 1]);
        assert_eq!(w.diagram().satellites().len(), 1);
        assert!(w.is_type());
    }

    #[test]
    fn parse_single_vertex() {
        let w = parse_weighted("v r - m=3\n").unwrap();
        assert_eq!(w.mults(), &[3]);
        assert!(w.isomorphic_to(&arnold(ArnoldFamily::D, 4).unwrap().diagram));
    }

    #[test]
    fn parse_errors_are_positional() {
        let err = parse_diagram("v r -\nv a b\n").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("unknown parent"));
            }
            other => panic!("unexpected error {other:?}"),
        }

        assert!(matches!(
            parse_diagram("v r -\nv r r\n").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse_diagram("v r -\nv s -\n").unwrap_err(),
            Error::Parse { line: 2, .. }
        ));
    }

    #[test]
    fn parse_rejects_illegal_satellites() {
        // axiom 4: a is proximate only to r, so +b is not a legal target.
        let err = parse_diagram("v r -\nv a r\nv b r\nv c a +b\n").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 4);
                assert!(message.contains("axiom 4"));
            }
            other => panic!("unexpected error {other:?}"),
        }

        // axiom 5: b is already proximate to both a and r.
        let err = parse_diagram("v r -\nv a r\nv b a +r\nv c a +r\n").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 4);
                assert!(message.contains("axiom 5"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn mixed_multiplicities_rejected() {
        let err = parse_diagram("v r - m=2\nv a r\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn weighted_op_on_unweighted_input() {
        let err = parse_weighted("v r -\n").unwrap_err();
        assert!(matches!(err, Error::MissingMultiplicities));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a cusp\n\nv r - m=2   # root\nv a r m=1\nv b a +r m=1\n";
        assert!(parse_weighted(text).is_ok());
    }

    #[test]
    fn serialize_cusp_bytes() {
        let cusp = arnold(ArnoldFamily::A, 2).unwrap().diagram;
        assert_eq!(serialize_weighted(&cusp), CUSP_CANONICAL);
        // Parsing under different labels reaches the same canonical bytes.
        assert_eq!(serialize_weighted(&parse_weighted(CUSP).unwrap()), CUSP_CANONICAL);
    }

    #[test]
    fn serialize_unweighted_has_no_mults() {
        let d = arnold(ArnoldFamily::A, 2).unwrap().diagram.into_diagram();
        let text = serialize_unweighted(&d);
        assert!(!text.contains("m="));
        assert!(parse_unweighted(&text).is_ok());
    }

    #[test]
    fn roundtrip_is_weighted_isomorphism() {
        for spec in ["A:1", "A:4", "A:7", "D:5", "D:8", "E:6", "E:7", "E:8", "Om:4", "T:3:2", "B:3:5", "B:4:7"] {
            let w = named_type(spec).unwrap().diagram;
            let back = parse_weighted(&serialize_weighted(&w)).unwrap();
            assert!(back.isomorphic_to(&w), "{spec}");
        }
    }

    #[test]
    fn serialization_is_stable_under_relabeling() {
        let w = parse_weighted(CUSP).unwrap();
        let renamed = parse_weighted("v x - m=2\nv y x m=1\nv z y +x m=1\n").unwrap();
        assert_eq!(serialize_weighted(&w), serialize_weighted(&renamed));
    }
}
