//! Complex-plane scatter plots as standalone SVG.
//!
//! Equal scale on both axes, bounds from the data padded by 10%. Output is
//! a pure function of the input points.

use std::fmt::Write;

use calab_core::Complex64;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
    "#17becf",
];

pub struct Series {
    pub label: String,
    pub points: Vec<Complex64>,
    /// Filled markers for roots, hollow for node levels.
    pub filled: bool,
}

pub fn render(title: &str, series: &[Series]) -> String {
    let all: Vec<Complex64> = series.iter().flat_map(|s| s.points.iter().copied()).collect();
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = all.iter().fold(
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
        |(a, b, c, d), z| (a.min(z.re), b.max(z.re), c.min(z.im), d.max(z.im)),
    );
    if all.is_empty() {
        (lo_x, hi_x, lo_y, hi_y) = (-1.0, 1.0, -1.0, 1.0);
    }
    // Square window around the data's center.
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-9) * 1.2;
    let (cx, cy) = ((lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0);
    let (x0, y0) = (cx - span / 2.0, cy - span / 2.0);
    let inner = SIZE - 2.0 * MARGIN;
    let map = |z: Complex64| {
        (
            MARGIN + (z.re - x0) / span * inner,
            SIZE - MARGIN - (z.im - y0) / span * inner,
        )
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">{}</text>"#, escape(title));
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{inner}" height="{inner}" fill="none" stroke="black"/>"#
    );
    // Axes through the origin when visible.
    let (ox, oy) = map(Complex64::new(0.0, 0.0));
    if (MARGIN..=SIZE - MARGIN).contains(&ox) {
        let _ = writeln!(
            out,
            r##"<line x1="{ox:.3}" y1="{MARGIN}" x2="{ox:.3}" y2="{:.3}" stroke="#bbb"/>"##,
            SIZE - MARGIN
        );
    }
    if (MARGIN..=SIZE - MARGIN).contains(&oy) {
        let _ = writeln!(
            out,
            r##"<line x1="{MARGIN}" y1="{oy:.3}" x2="{:.3}" y2="{oy:.3}" stroke="#bbb"/>"##,
            SIZE - MARGIN
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{:.0}" font-family="sans-serif" font-size="10">Re [{:.4}, {:.4}]  Im [{:.4}, {:.4}]</text>"#,
        SIZE - 12.0,
        x0,
        x0 + span,
        y0,
        y0 + span
    );
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let (fill, radius) = if s.filled { (color, 5.0) } else { ("none", 7.0 + 2.0 * i as f64) };
        let _ = writeln!(out, r#"<g stroke="{color}" stroke-width="1.5" fill="{fill}">"#);
        for &z in &s.points {
            let (x, y) = map(z);
            let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{radius}"/>"#);
        }
        let _ = writeln!(out, "</g>");
        let _ = writeln!(
            out,
            r#"<text x="{:.0}" y="{:.0}" font-family="sans-serif" font-size="11" fill="{color}">{}</text>"#,
            SIZE - MARGIN - 110.0,
            MARGIN + 16.0 + 14.0 * i as f64,
            escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
