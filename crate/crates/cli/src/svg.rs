//! SVG 1.1 rendering of cell covers.
//!
//! The view box is the ambient box scaled by 729, so every coordinate of a
//! base-3 cover up to level 6 lands on an integer. The vertical axis is
//! flipped into screen orientation. Interval covers are drawn as bars.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use ifs_topology::attractor::CellSet;
use ifs_topology::geom::Aabb;
use ifs_topology::rational::{rat_int, Rational};
use ifs_topology::topology::Polyline;

const SCALE: i64 = 729; // 3^6
const BAR_HEIGHT: i64 = 81;

fn coord(value: &Rational) -> String {
    let scaled = value * rat_int(SCALE);
    if scaled.is_integer() {
        scaled.to_integer().to_string()
    } else {
        format!("{}", scaled.to_f64().unwrap_or(f64::NAN))
    }
}

struct Frame {
    origin_x: Rational,
    top_y: Rational,
    height: Rational,
    one_dim: bool,
}

impl Frame {
    fn new(ambient: &Aabb) -> Frame {
        if ambient.dim() == 1 {
            Frame {
                origin_x: ambient.lower()[0].clone(),
                top_y: rat_int(0),
                height: rat_int(BAR_HEIGHT) / rat_int(SCALE),
                one_dim: true,
            }
        } else {
            Frame {
                origin_x: ambient.lower()[0].clone(),
                top_y: ambient.upper()[1].clone(),
                height: &ambient.upper()[1] - &ambient.lower()[1],
                one_dim: false,
            }
        }
    }

    fn x(&self, v: &Rational) -> String {
        coord(&(v - &self.origin_x))
    }

    /// Flipped: the ambient top maps to 0.
    fn y(&self, v: &Rational) -> String {
        if self.one_dim {
            coord(&(&self.height / rat_int(2)))
        } else {
            coord(&(&self.top_y - v))
        }
    }
}

/// Renders the cells as filled rectangles, plus an optional arc polyline
/// with its endpoints marked.
pub fn render(cells: &CellSet, arc: Option<&Polyline>) -> String {
    let ambient = cells.ifs().ambient();
    let frame = Frame::new(ambient);

    let width = &ambient.upper()[0] - &ambient.lower()[0];
    let view_w = coord(&width);
    let view_h = coord(&frame.height);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {view_w} {view_h}">"#
    );
    let _ = writeln!(
        s,
        r##"  <rect x="0" y="0" width="{view_w}" height="{view_h}" fill="#ffffff"/>"##
    );

    for (_, bx) in cells.cells() {
        let x = frame.x(&bx.lower()[0]);
        let w = coord(&(&bx.upper()[0] - &bx.lower()[0]));
        let (y, h) = if frame.one_dim {
            ("0".to_string(), view_h.clone())
        } else {
            (
                frame.y(&bx.upper()[1]),
                coord(&(&bx.upper()[1] - &bx.lower()[1])),
            )
        };
        let _ = writeln!(
            s,
            r##"  <rect x="{x}" y="{y}" width="{w}" height="{h}" fill="#1b1b1b"/>"##
        );
    }

    if let Some(polyline) = arc {
        let points: Vec<String> = polyline
            .vertices
            .iter()
            .map(|p| {
                let x = frame.x(&p[0]);
                let y = if frame.one_dim {
                    frame.y(&rat_int(0))
                } else {
                    frame.y(&p[1])
                };
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            s,
            r##"  <polyline points="{}" fill="none" stroke="#d62728" stroke-width="4" stroke-linejoin="round" stroke-linecap="round"/>"##,
            points.join(" ")
        );
        for endpoint in [polyline.vertices.first(), polyline.vertices.last()]
            .into_iter()
            .flatten()
        {
            let x = frame.x(&endpoint[0]);
            let y = if frame.one_dim {
                frame.y(&rat_int(0))
            } else {
                frame.y(&endpoint[1])
            };
            let _ = writeln!(s, r##"  <circle cx="{x}" cy="{y}" r="7" fill="#d62728"/>"##);
        }
    }

    s.push_str("</svg>\n");
    s
}
