//! DOT and SVG rendering of (weighted) Enriques diagrams.
//!
//! The SVG follows the two classical drawing rules: the edge to a free
//! vertex is a smooth curve leaving its parent along the incoming tangent,
//! and a maximal run of vertices proximate to the same vertex `p` lies on a
//! straight segment orthogonal to the edge entering the run. Layout is
//! deterministic with a fixed unit edge length; fidelity to the rules beats
//! aesthetics.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::diagram::{EnriquesDiagram, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Dot,
    Svg,
}

pub fn render(diagram: &EnriquesDiagram, mults: Option<&[i64]>, format: RenderFormat) -> String {
    match format {
        RenderFormat::Dot => render_dot(diagram, mults),
        RenderFormat::Svg => render_svg(diagram, mults),
    }
}

/// Graphviz output: every edge labelled free or satellite (with the second
/// proximity target), multiplicities inside the node labels.
pub fn render_dot(diagram: &EnriquesDiagram, mults: Option<&[i64]>) -> String {
    let mut out = String::new();
    out.push_str("digraph enriques {\n");
    out.push_str("  rankdir=TB;\n  node [shape=circle, fontsize=10];\n");
    for v in diagram.vertices() {
        let label = match mults {
            Some(m) => format!("{}\\n{}", diagram.label(v), m[v.index()]),
            None => diagram.label(v).to_string(),
        };
        let _ = writeln!(out, "  \"{}\" [label=\"{}\"];", diagram.label(v), label);
    }
    for v in diagram.vertices() {
        if let Some(p) = diagram.parent(v) {
            match diagram.second_target(v) {
                None => {
                    let _ = writeln!(
                        out,
                        "  \"{}\" -> \"{}\" [label=\"free\"];",
                        diagram.label(p),
                        diagram.label(v)
                    );
                }
                Some(t) => {
                    let _ = writeln!(
                        out,
                        "  \"{}\" -> \"{}\" [style=dashed, label=\"sat +{}\"];",
                        diagram.label(p),
                        diagram.label(v),
                        diagram.label(t)
                    );
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

const EDGE_LEN: f64 = 60.0;
const SAT_LEN: f64 = 48.0;

fn rotate((x, y): (f64, f64), degrees: f64) -> (f64, f64) {
    let r = degrees.to_radians();
    (x * r.cos() - y * r.sin(), x * r.sin() + y * r.cos())
}

fn normalize((x, y): (f64, f64)) -> (f64, f64) {
    let n = (x * x + y * y).sqrt();
    if n == 0.0 {
        (1.0, 0.0)
    } else {
        (x / n, y / n)
    }
}

/// Fan angle of the `k`-th free child. The first continues the tangent
/// exactly; later siblings alternate to the sides.
fn fan_angle(k: usize, at_root: bool) -> f64 {
    let step = if at_root { 50.0 } else { 40.0 };
    match k {
        0 => 0.0,
        _ => {
            let tier = k.div_ceil(2) as f64;
            if k % 2 == 1 {
                step * tier
            } else {
                -step * tier
            }
        }
    }
}

struct Layout {
    pos: Vec<(f64, f64)>,
    tangent: Vec<(f64, f64)>,
    /// Direction of the satellite run through a vertex, per run target.
    run_dir: Vec<HashMap<VertexId, (f64, f64)>>,
}

fn layout(diagram: &EnriquesDiagram) -> Layout {
    let n = diagram.vertex_count();
    let mut l = Layout {
        pos: vec![(0.0, 0.0); n],
        tangent: vec![(1.0, 0.0); n],
        run_dir: vec![HashMap::new(); n],
    };
    let mut free_children_placed = vec![0usize; n];
    for v in diagram.vertices() {
        let Some(p) = diagram.parent(v) else {
            continue;
        };
        match diagram.second_target(v) {
            None => {
                let k = free_children_placed[p.index()];
                free_children_placed[p.index()] += 1;
                let at_root = diagram.parent(p).is_none();
                let dir = rotate(l.tangent[p.index()], fan_angle(k, at_root));
                let start = l.pos[p.index()];
                let end = (start.0 + dir.0 * EDGE_LEN, start.1 + dir.1 * EDGE_LEN);
                let ctrl = (
                    start.0 + l.tangent[p.index()].0 * EDGE_LEN * 0.45,
                    start.1 + l.tangent[p.index()].1 * EDGE_LEN * 0.45,
                );
                l.pos[v.index()] = end;
                l.tangent[v.index()] = normalize((end.0 - ctrl.0, end.1 - ctrl.1));
            }
            Some(t) => {
                // Continue the run of vertices proximate to t, or start it
                // orthogonally to the edge entering the run.
                let dir = match l.run_dir[p.index()].get(&t) {
                    Some(&d) => d,
                    None => {
                        let incoming = normalize((
                            l.pos[p.index()].0 - l.pos[t.index()].0,
                            l.pos[p.index()].1 - l.pos[t.index()].1,
                        ));
                        rotate(incoming, 90.0)
                    }
                };
                let start = l.pos[p.index()];
                l.pos[v.index()] = (start.0 + dir.0 * SAT_LEN, start.1 + dir.1 * SAT_LEN);
                l.tangent[v.index()] = dir;
                l.run_dir[v.index()].insert(t, dir);
            }
        }
    }
    l
}

fn fmt2(x: f64) -> String {
    format!("{x:.2}")
}

/// SVG output. Free edges are quadratic curves tagged `free-edge`, satellite
/// runs are straight `sat-edge` lines, multiplicities are printed bold.
pub fn render_svg(diagram: &EnriquesDiagram, mults: Option<&[i64]>) -> String {
    let l = layout(diagram);
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &(x, y) in &l.pos {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    let margin = 40.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        fmt2(min_x - margin),
        fmt2(min_y - margin),
        fmt2(max_x - min_x + 2.0 * margin),
        fmt2(max_y - min_y + 2.0 * margin)
    );
    out.push_str("  <style>.free-edge{fill:none;stroke:#333;stroke-width:1.5}.sat-edge{stroke:#333;stroke-width:1.5}.vertex{fill:#fff;stroke:#333;stroke-width:1.5}.lbl{font:10px sans-serif}.mult{font:bold 11px sans-serif}</style>\n");

    for v in diagram.vertices() {
        let Some(p) = diagram.parent(v) else {
            continue;
        };
        let (x0, y0) = l.pos[p.index()];
        let (x1, y1) = l.pos[v.index()];
        match diagram.second_target(v) {
            None => {
                let t = l.tangent[p.index()];
                let (cx, cy) = (x0 + t.0 * EDGE_LEN * 0.45, y0 + t.1 * EDGE_LEN * 0.45);
                let _ = writeln!(
                    out,
                    "  <path class=\"free-edge\" d=\"M {} {} Q {} {} {} {}\"/>",
                    fmt2(x0),
                    fmt2(y0),
                    fmt2(cx),
                    fmt2(cy),
                    fmt2(x1),
                    fmt2(y1)
                );
            }
            Some(_) => {
                let _ = writeln!(
                    out,
                    "  <line class=\"sat-edge\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                    fmt2(x0),
                    fmt2(y0),
                    fmt2(x1),
                    fmt2(y1)
                );
            }
        }
    }

    for v in diagram.vertices() {
        let (x, y) = l.pos[v.index()];
        let _ = writeln!(
            out,
            "  <circle class=\"vertex\" cx=\"{}\" cy=\"{}\" r=\"4\"/>",
            fmt2(x),
            fmt2(y)
        );
        let _ = writeln!(
            out,
            "  <text class=\"lbl\" x=\"{}\" y=\"{}\">{}</text>",
            fmt2(x + 6.0),
            fmt2(y - 6.0),
            diagram.label(v)
        );
        if let Some(m) = mults {
            let _ = writeln!(
                out,
                "  <text class=\"mult\" x=\"{}\" y=\"{}\">{}</text>",
                fmt2(x + 6.0),
                fmt2(y + 14.0),
                m[v.index()]
            );
        }
    }
    out.push_str("</svg>\n");
    out
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

    #[test]
    fn single_vertex_svg() {
        let mut b = DiagramBuilder::new();
        b.root().unwrap();
        let svg = render_svg(&b.build(), Some(&[3]));
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains("class=\"mult\""));
        assert!(svg.contains(">3<"));
    }

    #[test]
    fn cusp_svg_has_one_curve_and_one_orthogonal_segment() {
        let svg = render_svg(&cusp_shape(), Some(&[2, 1, 1]));
        assert_eq!(svg.matches("class=\"free-edge\"").count(), 1);
        assert_eq!(svg.matches("class=\"sat-edge\"").count(), 1);
        // The free edge runs along the root tangent to (60, 0); the
        // satellite segment leaves orthogonally, straight down in svg space.
        assert!(svg.contains("x1=\"60.00\" y1=\"0.00\" x2=\"60.00\" y2=\"48.00\""));
    }

    #[test]
    fn chain_svg_shares_tangents() {
        let mut b = DiagramBuilder::new();
        let r = b.root().unwrap();
        let a = b.free_child(r).unwrap();
        b.free_child(a).unwrap();
        let svg = render_svg(&b.build(), None);
        assert_eq!(svg.matches("class=\"free-edge\"").count(), 2);
        // First child continues the root tangent exactly, so the chain is a
        // straight horizontal line of curves.
        assert!(svg.contains("M 60.00 0.00 Q 87.00 0.00 120.00 0.00"));
    }

    #[test]
    fn satellite_run_stays_on_one_segment() {
        // Two successive satellites proximate to the root lie on one line.
        let mut b = DiagramBuilder::new();
        let r = b.root().unwrap();
        let a = b.free_child(r).unwrap();
        let s1 = b.satellite_child(a, r).unwrap();
        b.satellite_child(s1, r).unwrap();
        let d = b.build();
        let l = layout(&d);
        let p1 = l.pos[s1.index()];
        let p2 = l.pos[3];
        let a_pos = l.pos[a.index()];
        let d1 = (p1.0 - a_pos.0, p1.1 - a_pos.1);
        let d2 = (p2.0 - p1.0, p2.1 - p1.1);
        let cross = d1.0 * d2.1 - d1.1 * d2.0;
        assert!(cross.abs() < 1e-9);
    }

    #[test]
    fn dot_output_annotates_edges() {
        let dot = render_dot(&cusp_shape(), Some(&[2, 1, 1]));
        assert!(dot.contains("digraph"));
        assert_eq!(dot.matches("label=\"free\"").count(), 1);
        assert_eq!(dot.matches("style=dashed").count(), 1);
        assert!(dot.contains("sat +v1"));
    }
}
