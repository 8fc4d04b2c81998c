//! SVG arc diagrams: vertices on a line in layout order, stack edges as
//! blue arcs above it and queue edges as red arcs below.

use std::fmt::Write as _;
use std::io;

use mixlay_core::{Graph, MixedLayout, PageKind};

const GAP: f64 = 40.0;
const MARGIN: f64 = 20.0;
const RADIUS: f64 = 4.0;

/// Distinguishes several pages of one kind; the first page is solid.
const DASHES: [&str; 4] = ["", "6 3", "2 2", "8 2 2 2"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders `layout` of `g` as an SVG 1.1 document. The output only depends
/// on the inputs, so it is stable byte for byte.
pub fn arc_diagram_svg(g: &Graph, layout: &MixedLayout) -> String {
    let n = layout.order.len();
    let span = GAP * n.saturating_sub(1) as f64;
    let width = span + 2.0 * MARGIN;
    let reach = span / 2.0 + MARGIN;
    let has_queue = (0..layout.pages.page_count()).any(|p| layout.pages.kind(p) == PageKind::Queue);
    let axis = reach;
    let height = axis + if has_queue { reach } else { 2.0 * MARGIN };
    let x = |v| MARGIN + GAP * layout.order.position(v) as f64;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<g fill="none" stroke-width="1.5">"#);
    for (e, page) in layout.pages.iter() {
        let (a, b) = {
            let (p, q) = (x(e.lo()), x(e.hi()));
            (p.min(q), p.max(q))
        };
        let r = (b - a) / 2.0;
        let (color, sweep, kind) = match layout.pages.kind(page) {
            PageKind::Stack => ("blue", 1, "stack"),
            PageKind::Queue => ("red", 0, "queue"),
        };
        let same_kind = (0..page).filter(|&p| layout.pages.kind(p) == layout.pages.kind(page)).count();
        let dash = DASHES[same_kind % DASHES.len()];
        let dash = if dash.is_empty() {
            String::new()
        } else {
            format!(r#" stroke-dasharray="{dash}""#)
        };
        let _ = writeln!(
            out,
            r#"<path class="{kind}" data-page="{page}" stroke="{color}"{dash} d="M {a} {axis} A {r} {r} 0 0 {sweep} {b} {axis}"/>"#
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="10" text-anchor="middle">"#);
    for &v in layout.order.as_slice() {
        let cx = x(v);
        let _ = writeln!(out, r#"<circle cx="{cx}" cy="{axis}" r="{RADIUS}" fill="black"/>"#);
        let _ = writeln!(out, r#"<text x="{cx}" y="{}">{}</text>"#, axis + 3.0 * RADIUS, escape(&g.label(v)));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

/// Writes [`arc_diagram_svg`] to `sink`.
pub fn render_arc_diagram(g: &Graph, layout: &MixedLayout, sink: &mut impl io::Write) -> io::Result<()> {
    sink.write_all(arc_diagram_svg(g, layout).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use mixlay_core::{Edge, PageAssignment, VertexOrder};

    #[test]
    fn single_edge() {
        let g = Graph::from_edge_list(2, [(0, 1)]).unwrap();
        let mut pages = PageAssignment::new(1, 0);
        pages.assign(Edge::new(0, 1), 0).unwrap();
        let layout = MixedLayout { order: VertexOrder::identity(2), pages };
        let svg = arc_diagram_svg(&g, &layout);
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains(r#"d="M 20 40 A 20 20 0 0 1 60 40""#), "{svg}");
        assert_eq!(svg, arc_diagram_svg(&g, &layout));
    }

    #[test]
    fn labels_are_escaped() {
        let g = Graph::from_edge_list(2, [(0, 1)]).unwrap().with_labels(vec!["a<b".into(), "&".into()]).unwrap();
        let mut pages = PageAssignment::new(0, 1);
        pages.assign(Edge::new(0, 1), 0).unwrap();
        let svg = arc_diagram_svg(&g, &MixedLayout { order: VertexOrder::identity(2), pages });
        assert!(svg.contains("a&lt;b") && svg.contains("&amp;"));
        assert!(svg.contains(r#"stroke="red""#));
    }
}
