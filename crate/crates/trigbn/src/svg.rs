//! The admissible `(d, r)` segment as a standalone SVG document.
//!
//! Coordinates are integers and the viewport depends only on `g`, so equal
//! inputs produce byte-identical files.

use std::fmt::Write;

use trigbn_core::{admissible_region, Curve, RegimeTag};

const UNIT: i64 = 40;
const MARGIN: i64 = 60;
const LEGEND: i64 = 90;

const TAGS: [RegimeTag; 3] = [
    RegimeTag::SingleBasePoint,
    RegimeTag::Strict,
    RegimeTag::Boundary,
];

fn colour(tag: RegimeTag) -> &'static str {
    match tag {
        RegimeTag::SingleBasePoint => "#d62728",
        RegimeTag::Strict => "#1f77b4",
        RegimeTag::Boundary => "#2ca02c",
    }
}

fn legend_text(tag: RegimeTag) -> &'static str {
    match tag {
        RegimeTag::SingleBasePoint => "single-base-point: one base point, exact count",
        RegimeTag::Strict => "strict: m < d-2r-1",
        RegimeTag::Boundary => "boundary: m = d-2r-1",
    }
}

/// Highest `r` shown; the segment never exceeds `(g - 2) / 3`.
fn r_axis(g: i64) -> i64 {
    (g - 2) / 3 + 1
}

pub fn render_region(curve: &Curve) -> String {
    let (g, m) = (curve.genus(), curve.maroni());
    let r_max = r_axis(g);
    let width = 2 * MARGIN + UNIT * g;
    let plot_h = UNIT * r_max;
    let height = 2 * MARGIN + plot_h + LEGEND;
    let x = |d: i64| MARGIN + UNIT * d;
    let y = |r: i64| MARGIN + plot_h - UNIT * r;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="14">admissible (d, r) for g = {g}, m = {m}</text>"#,
        MARGIN,
        MARGIN / 2
    );

    // axes with one tick per lattice column and row
    let _ = writeln!(
        s,
        r#"<g id="axes" stroke="black" stroke-width="1"><line x1="{}" y1="{}" x2="{}" y2="{}"/><line x1="{}" y1="{}" x2="{}" y2="{}"/></g>"#,
        x(0),
        y(0),
        x(g),
        y(0),
        x(0),
        y(0),
        x(0),
        y(r_max)
    );
    let _ = writeln!(s, r##"<g id="grid" fill="#bbbbbb">"##);
    for r in 0..=r_max {
        for d in 0..=g {
            let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="1.5"/>"#, x(d), y(r));
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g id="ticks" text-anchor="middle">"#);
    for d in 0..=g {
        let _ = writeln!(s, r#"<text x="{}" y="{}">{d}</text>"#, x(d), y(0) + 18);
    }
    for r in 1..=r_max {
        let _ = writeln!(s, r#"<text x="{}" y="{}">{r}</text>"#, x(0) - 14, y(r) + 4);
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}">d</text><text x="{}" y="{}">r</text></g>"#,
        x(g) + 16,
        y(0) + 4,
        x(0),
        y(r_max) - 12
    );

    // the line d = g - m + r - 1 across the visible r range, clipped to d <= g
    let r_top = r_max.min(m + 1);
    let _ = writeln!(
        s,
        r#"<line id="segment" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-dasharray="4 3"/>"#,
        x(g - m - 1),
        y(0),
        x(g - m + r_top - 1),
        y(r_top)
    );

    let points = admissible_region(curve);
    let _ = writeln!(s, r#"<g id="points">"#);
    for p in &points {
        let _ = writeln!(
            s,
            r#"<circle class="{}" cx="{}" cy="{}" r="6" fill="{}"><title>d={} r={} base points {}</title></circle>"#,
            p.tag.name(),
            x(p.d),
            y(p.r),
            colour(p.tag),
            p.d,
            p.r,
            p.base_points
        );
    }
    let _ = writeln!(s, "</g>");

    let top = MARGIN + plot_h + 40;
    let _ = writeln!(s, r#"<g id="legend">"#);
    for (i, tag) in TAGS.iter().enumerate() {
        let ly = top + 20 * i as i64;
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="6" fill="{}"/><text x="{}" y="{}">{}</text>"#,
            MARGIN,
            ly,
            colour(*tag),
            MARGIN + 14,
            ly + 4,
            legend_text(*tag)
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_marker_per_point() {
        let x = Curve::new(12, 1, 1, 3).unwrap();
        let svg = render_region(&x);
        let markers = svg.matches(r#"<circle class=""#).count();
        assert_eq!(markers, admissible_region(&x).len());
        assert!(svg.contains("single-base-point"));
        assert_eq!(svg, render_region(&x));
    }

    #[test]
    fn viewport_depends_only_on_genus() {
        let a = render_region(&Curve::new(14, 1, 1, 4).unwrap());
        let b = render_region(&Curve::new(14, 1, 1, 5).unwrap());
        assert_eq!(a.lines().next(), b.lines().next());
    }
}
