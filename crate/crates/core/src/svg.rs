//! Static SVG diagnostics: points, partition cells, lines and a highlighted tuple.
//!
//! Coordinates are rounded to `f64` for drawing only; nothing here feeds back into
//! a predicate.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::arrangement::Arrangement;
use crate::geom::{Line, Scalar};
use crate::partition::PartitionResult;
use crate::pipeline::Theorem1Certificate;

const CELL_COLORS: [&str; 6] = [
    "#e8f1fb", "#fdf0e2", "#e9f7ec", "#f6e8f5", "#fbf7dc", "#e6f4f4",
];

fn f(v: &Scalar) -> f64 {
    v.to_f64().unwrap_or(0.0)
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn fit(arr: &Arrangement, width: u32, height: u32) -> Frame {
        let xs = arr.points().iter().map(|p| f(&p.x));
        let ys = arr.points().iter().map(|p| f(&p.y));
        let (mut x0, mut x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
        let (mut y0, mut y1) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
        if !x0.is_finite() {
            (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
        }
        let pad_x = ((x1 - x0) * 0.05).max(0.5);
        let pad_y = ((y1 - y0) * 0.05).max(0.5);
        Frame {
            x0: x0 - pad_x,
            x1: x1 + pad_x,
            y0: y0 - pad_y,
            y1: y1 + pad_y,
            width: f64::from(width),
            height: f64::from(height),
        }
    }

    fn sx(&self, x: f64) -> f64 {
        (x - self.x0) / (self.x1 - self.x0) * self.width
    }

    fn sy(&self, y: f64) -> f64 {
        self.height - (y - self.y0) / (self.y1 - self.y0) * self.height
    }

    /// Endpoints of the line clipped to the frame, in data coordinates.
    fn clip(&self, l: &Line) -> Option<((f64, f64), (f64, f64))> {
        let a = l.a().to_f64()?;
        let b = l.b().to_f64()?;
        let c = l.c().to_f64()?;
        let mut hits = Vec::new();
        if b != 0.0 {
            for x in [self.x0, self.x1] {
                let y = -(a * x + c) / b;
                if (self.y0..=self.y1).contains(&y) {
                    hits.push((x, y));
                }
            }
        }
        if a != 0.0 {
            for y in [self.y0, self.y1] {
                let x = -(b * y + c) / a;
                if (self.x0..=self.x1).contains(&x) {
                    hits.push((x, y));
                }
            }
        }
        let first = *hits.first()?;
        let last = hits.iter().copied().max_by(|p, q| {
            let d = |r: &(f64, f64)| (r.0 - first.0).powi(2) + (r.1 - first.1).powi(2);
            d(p).total_cmp(&d(q))
        })?;
        Some((first, last))
    }
}

/// What to draw on top of the arrangement's points.
#[derive(Debug, Clone, Default)]
pub struct Overlay<'a> {
    pub partition: Option<&'a PartitionResult>,
    pub lines: Vec<usize>,
    pub certificate: Option<&'a Theorem1Certificate>,
}

pub fn render(arr: &Arrangement, overlay: &Overlay<'_>, width: u32, height: u32) -> String {
    let fr = Frame::fit(arr, width, height);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r##"<rect width="100%" height="100%" fill="#ffffff"/>"##
    );

    if let Some(pr) = overlay.partition {
        for (i, cell) in pr.cells.iter().enumerate() {
            let r = &cell.region;
            let x0 = r.x_min.as_ref().map_or(fr.x0, f).max(fr.x0);
            let x1 = r.x_max.as_ref().map_or(fr.x1, f).min(fr.x1);
            let y0 = r.y_min.as_ref().map_or(fr.y0, f).max(fr.y0);
            let y1 = r.y_max.as_ref().map_or(fr.y1, f).min(fr.y1);
            let _ = writeln!(
                out,
                r##"<rect class="cell" data-cell="{i}" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}" stroke="#8a9bb0" stroke-width="1"/>"##,
                fr.sx(x0),
                fr.sy(y1),
                (fr.sx(x1) - fr.sx(x0)).max(0.0),
                (fr.sy(y0) - fr.sy(y1)).max(0.0),
                CELL_COLORS[i % CELL_COLORS.len()],
            );
        }
    }

    for &j in &overlay.lines {
        if let Some(((ax, ay), (bx, by))) = arr.lines().get(j).and_then(|l| fr.clip(l)) {
            let _ = writeln!(
                out,
                r##"<line class="line" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#9aa4ad" stroke-width="0.6"/>"##,
                fr.sx(ax),
                fr.sy(ay),
                fr.sx(bx),
                fr.sy(by)
            );
        }
    }

    let radius = if arr.n_points() > 2000 { 0.8 } else { 1.6 };
    for p in arr.points() {
        let _ = writeln!(
            out,
            r##"<circle class="point" cx="{:.2}" cy="{:.2}" r="{radius}" fill="#2c3e50"/>"##,
            fr.sx(f(&p.x)),
            fr.sy(f(&p.y))
        );
    }

    if let Some(cert) = overlay.certificate {
        for &(a, b) in cert.connecting_lines.keys() {
            let (p, q) = (&cert.points[a], &cert.points[b]);
            let _ = writeln!(
                out,
                r##"<line class="tuple-edge" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#d35400" stroke-width="2"/>"##,
                fr.sx(f(&p.x)),
                fr.sy(f(&p.y)),
                fr.sx(f(&q.x)),
                fr.sy(f(&q.y))
            );
        }
        for p in &cert.points {
            let _ = writeln!(
                out,
                r##"<circle class="tuple-point" cx="{:.2}" cy="{:.2}" r="4" fill="#d35400"/>"##,
                fr.sx(f(&p.x)),
                fr.sy(f(&p.y))
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
