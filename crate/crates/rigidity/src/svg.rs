//! SVG drawing of real coupler curves, one color per component class.

use std::fmt::Write;

use rigidity_core::trace::CouplerTrace;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 24.0;
const PALETTE: [&str; 8] = [
    "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

pub fn color(class_id: usize) -> &'static str {
    PALETTE[class_id % PALETTE.len()]
}

struct Frame {
    min: [f64; 2],
    scale: f64,
}

impl Frame {
    fn fit(trace: &CouplerTrace) -> Self {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in &trace.points {
            lo = [lo[0].min(p.x), lo[1].min(p.y)];
            hi = [hi[0].max(p.x), hi[1].max(p.y)];
        }
        if trace.points.is_empty() {
            return Frame {
                min: [-1.0, -1.0],
                scale: (SIZE - 2.0 * MARGIN) / 2.0,
            };
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        // center the shorter axis
        let pad = [
            (span - (hi[0] - lo[0])) / 2.0,
            (span - (hi[1] - lo[1])) / 2.0,
        ];
        Frame {
            min: [lo[0] - pad[0], lo[1] - pad[1]],
            scale: (SIZE - 2.0 * MARGIN) / span,
        }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (
            MARGIN + (p[0] - self.min[0]) * self.scale,
            SIZE - MARGIN - (p[1] - self.min[1]) * self.scale,
        )
    }
}

/// Renders the polylines of `trace`; isolated real points become dots.
/// Output depends only on the trace.
pub fn render(trace: &CouplerTrace) -> String {
    let frame = Frame::fit(trace);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    if trace.is_empty() {
        writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="14">no real points</text>"#,
            SIZE / 2.0,
            SIZE / 2.0
        )
        .unwrap();
    }
    for line in &trace.polylines {
        let pts: Vec<String> = line
            .points
            .iter()
            .map(|&p| {
                let (x, y) = frame.map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let c = color(line.class_id);
        if pts.len() == 1 {
            let (x, y) = frame.map(line.points[0]);
            writeln!(
                out,
                r#"<circle cx="{x:.3}" cy="{y:.3}" r="1.5" fill="{c}"/>"#
            )
            .unwrap();
            continue;
        }
        let tag = if line.closed { "polygon" } else { "polyline" };
        writeln!(
            out,
            r#"<{tag} class="component-{}" fill="none" stroke="{c}" stroke-width="1.5" points="{}"/>"#,
            line.class_id,
            pts.join(" ")
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
