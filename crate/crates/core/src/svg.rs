//! SVG drawing of a ray system's tree.
//!
//! Split points are squares, inner leaves are crosses, every other point is
//! a dot. Power-of-two diagonals are drawn as dashed guides.

use std::fmt::Write;

use crate::grid::{is_power_of_two, GridPoint};
use crate::ray_system::RaySystem;

const CELL: f64 = 28.0;
const MARGIN: f64 = 24.0;

struct Canvas {
    bound: i64,
}

impl Canvas {
    fn x(&self, p: GridPoint) -> f64 {
        MARGIN + p.x as f64 * CELL
    }

    fn y(&self, p: GridPoint) -> f64 {
        MARGIN + (self.bound - p.y) as f64 * CELL
    }

    fn size(&self) -> f64 {
        2.0 * MARGIN + self.bound as f64 * CELL
    }
}

pub fn render_svg(sys: &RaySystem) -> String {
    let n = i64::from(sys.bound());
    let c = Canvas { bound: n };
    let size = c.size();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    for d in (2..=n).filter(|&d| is_power_of_two(d)) {
        let a = GridPoint::new(0, d);
        let b = GridPoint::new(d, 0);
        let _ = writeln!(
            out,
            r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#bbb" stroke-dasharray="4 3"/>"##,
            c.x(a),
            c.y(a),
            c.x(b),
            c.y(b)
        );
    }

    let _ = writeln!(out, r#"<g stroke="black" stroke-width="1.5">"#);
    for p in sys.points() {
        let q = sys.parent(p).expect("domain point");
        let _ = writeln!(
            out,
            r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}"/>"#,
            c.x(q),
            c.y(q),
            c.x(p),
            c.y(p)
        );
    }
    let _ = writeln!(out, "</g>");

    for p in std::iter::once(GridPoint::ORIGIN).chain(sys.points()) {
        let (x, y) = (c.x(p), c.y(p));
        let children = if p.diagonal() < n { Some(sys.child_count(p)) } else { None };
        match children {
            Some(2) => {
                let h = 5.0;
                let _ = writeln!(
                    out,
                    r##"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="#1f5fbf"/>"##,
                    x - h,
                    y - h,
                    2.0 * h,
                    2.0 * h
                );
            }
            Some(0) => {
                let h = 5.0;
                let _ = writeln!(
                    out,
                    r##"<path d="M{:.1} {:.1}L{:.1} {:.1}M{:.1} {:.1}L{:.1} {:.1}" stroke="#c0392b" stroke-width="2.5"/>"##,
                    x - h,
                    y - h,
                    x + h,
                    y + h,
                    x - h,
                    y + h,
                    x + h,
                    y - h
                );
            }
            _ => {
                let _ = writeln!(out, r#"<circle cx="{x:.1}" cy="{y:.1}" r="2.5" fill="black"/>"#);
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
