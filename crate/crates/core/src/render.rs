//! Standalone SVG scenes: outline, vertices (reflex ones tinted) and guards.

use std::fmt::Write as _;

use crate::geom::{Point, Polygon};

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    /// Label each guard with its coordinates.
    pub label_guards: bool,
    /// Mark the weak-visibility edge.
    pub edge: Option<(usize, usize)>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            label_guards: true,
            edge: None,
        }
    }
}

fn num(x: f64) -> String {
    // Shortest round-trip text, with negative zero folded away.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// SVG 1.1 document for `poly` with markers at `guards`. The y axis points
/// up, as in the input coordinates.
pub fn render_svg(poly: &Polygon, guards: &[usize], opts: &RenderOptions) -> String {
    let (lo, hi) = poly.bounds();
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let size = w.max(h).max(f64::MIN_POSITIVE);
    let (mx, my) = (0.05 * w.max(size * 1e-3), 0.05 * h.max(size * 1e-3));
    // Flip y by drawing at (x, -y).
    let (vx, vy, vw, vh) = (lo.x - mx, -hi.y - my, w + 2.0 * mx, h + 2.0 * my);
    let at = |p: Point| (num(p.x), num(-p.y));
    let stroke = size * 0.004;
    let r_vertex = size * 0.006;
    let r_guard = size * 0.016;
    let font = size * 0.03;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n");
    s.push_str(
        "<!DOCTYPE svg PUBLIC \"-//W3C//DTD SVG 1.1//EN\" \
         \"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd\">\n",
    );
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"800\" height=\"{}\">",
        num(vx),
        num(vy),
        num(vw),
        num(vh),
        num((800.0 * vh / vw).round()),
    );
    let mut d = String::new();
    for (i, &p) in poly.vertices().iter().enumerate() {
        let (x, y) = at(p);
        let _ = write!(d, "{}{x} {y} ", if i == 0 { "M" } else { "L" });
    }
    d.push('Z');
    let _ = writeln!(
        s,
        "<path class=\"polygon\" d=\"{d}\" fill=\"#eef3fb\" stroke=\"#27408b\" stroke-width=\"{}\" stroke-linejoin=\"round\"/>",
        num(stroke)
    );
    if let Some((u, v)) = opts.edge {
        let ((x1, y1), (x2, y2)) = (at(poly.vertex(u)), at(poly.vertex(v)));
        let _ = writeln!(
            s,
            "<line class=\"edge\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#2e8b57\" stroke-width=\"{}\"/>",
            num(3.0 * stroke)
        );
    }
    s.push_str("<g class=\"vertices\">\n");
    for i in 0..poly.len() {
        let (x, y) = at(poly.vertex(i));
        let (class, fill) = if poly.is_reflex(i) {
            ("vertex reflex", "#d2691e")
        } else {
            ("vertex", "#27408b")
        };
        let _ = writeln!(
            s,
            "<circle class=\"{class}\" cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"{fill}\"/>",
            num(r_vertex)
        );
    }
    s.push_str("</g>\n<g class=\"guards\">\n");
    for &g in guards {
        let p = poly.vertex(g);
        let (x, y) = at(p);
        let _ = writeln!(
            s,
            "<circle class=\"guard\" cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"#c8102e\" stroke=\"#000000\" stroke-width=\"{}\"/>",
            num(r_guard),
            num(stroke * 0.5)
        );
        if opts.label_guards {
            let label = escape(&format!("({:.2}, {:.2})", p.x, p.y));
            let _ = writeln!(
                s,
                "<text class=\"label\" x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"sans-serif\">{label}</text>",
                num(p.x + 1.5 * r_guard),
                num(-p.y - 1.5 * r_guard),
                num(font)
            );
        }
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn guard_markers_and_view_box() {
        let l = fixtures::l_shape();
        let svg = render_svg(&l, &[0, 3], &RenderOptions::default());
        assert_eq!(svg.matches("class=\"guard\"").count(), 2);
        assert_eq!(svg.matches("class=\"vertex reflex\"").count(), 1);
        assert!(svg.contains("viewBox=\"-0.1 -2.1 2.2 2.2\""), "{svg}");
        let bare = render_svg(&l, &[], &RenderOptions::default());
        assert_eq!(bare.matches("class=\"guard\"").count(), 0);
        assert_eq!(bare, render_svg(&l, &[], &RenderOptions::default()));
    }
}
