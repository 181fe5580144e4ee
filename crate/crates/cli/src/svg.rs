//! SVG rendering of wall diagrams in the (b, t) half-plane. This is the
//! only module that touches floating point: exact shapes and charges are
//! converted to f64 coordinates here, at the drawing boundary.

use nsurf_core::{Rat, WallShape};

pub struct Window {
    pub b_min: f64,
    pub b_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

/// Approximate phase values in [0, 2) sampled on a grid, row-major from
/// (b_min, t_min), for an optional background heatmap.
pub struct Heatmap {
    pub b_steps: usize,
    pub t_steps: usize,
    pub phases: Vec<Option<f64>>,
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 48.0;

struct Frame {
    w: Window,
}

impl Frame {
    fn x(&self, b: f64) -> f64 {
        MARGIN + (b - self.w.b_min) / (self.w.b_max - self.w.b_min) * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, t: f64) -> f64 {
        MARGIN + (self.w.t_max - t) / (self.w.t_max - self.w.t_min) * (HEIGHT - 2.0 * MARGIN)
    }

    fn sx(&self) -> f64 {
        (WIDTH - 2.0 * MARGIN) / (self.w.b_max - self.w.b_min)
    }

    fn sy(&self) -> f64 {
        (HEIGHT - 2.0 * MARGIN) / (self.w.t_max - self.w.t_min)
    }
}

fn wall_path(f: &Frame, shape: &WallShape) -> Option<String> {
    match shape {
        WallShape::Degenerate | WallShape::Empty => None,
        WallShape::VerticalLine { b } => {
            let b = rat_to_f64(b);
            Some(format!(
                "M {:.2} {:.2} L {:.2} {:.2}",
                f.x(b),
                f.y(f.w.t_min),
                f.x(b),
                f.y(f.w.t_max)
            ))
        }
        WallShape::Semicircle { center_b, radius_sq } => {
            let c = rat_to_f64(center_b);
            let r = rat_to_f64(radius_sq).max(0.0).sqrt();
            // circular arc in data coordinates; anisotropic scaling turns
            // it into an elliptical arc in pixel coordinates
            Some(format!(
                "M {:.2} {:.2} A {:.2} {:.2} 0 0 1 {:.2} {:.2}",
                f.x(c - r),
                f.y(0.0),
                r * f.sx(),
                r * f.sy(),
                f.x(c + r),
                f.y(0.0)
            ))
        }
    }
}

fn heatmap_cells(hm: &Heatmap, out: &mut String) {
    let cw = (WIDTH - 2.0 * MARGIN) / hm.b_steps as f64;
    let ch = (HEIGHT - 2.0 * MARGIN) / hm.t_steps as f64;
    for ti in 0..hm.t_steps {
        for bi in 0..hm.b_steps {
            let Some(phi) = hm.phases[ti * hm.b_steps + bi] else { continue };
            let x = MARGIN + bi as f64 * cw;
            let y = MARGIN + (hm.t_steps - 1 - ti) as f64 * ch;
            let hue = phi * 180.0; // phase in [0,2) mapped to the color wheel
            out.push_str(&format!(
                "  <rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{cw:.2}\" height=\"{ch:.2}\" \
                 fill=\"hsl({hue:.1} 70% 75%)\"/>\n"
            ));
        }
    }
}

/// Renders the diagram. `walls` pairs a label with an exact shape; the
/// heatmap, if present, is a floating-point visualization of exact
/// charge phases and is marked as approximate in the output.
pub fn render(window: Window, walls: &[(String, WallShape)], heatmap: Option<&Heatmap>) -> String {
    let f = Frame { w: window };
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str(&format!(
        "  <clipPath id=\"win\"><rect x=\"{m}\" y=\"{m}\" width=\"{w:.2}\" height=\"{h:.2}\"/></clipPath>\n",
        m = MARGIN,
        w = WIDTH - 2.0 * MARGIN,
        h = HEIGHT - 2.0 * MARGIN
    ));
    if let Some(hm) = heatmap {
        out.push_str("  <!-- phase heatmap: approximate rendering of exact charges -->\n");
        out.push_str("  <g clip-path=\"url(#win)\">\n");
        heatmap_cells(hm, &mut out);
        out.push_str("  </g>\n");
    }
    // frame and axis labels
    out.push_str(&format!(
        "  <rect x=\"{m}\" y=\"{m}\" width=\"{w:.2}\" height=\"{h:.2}\" fill=\"none\" stroke=\"black\"/>\n",
        m = MARGIN,
        w = WIDTH - 2.0 * MARGIN,
        h = HEIGHT - 2.0 * MARGIN
    ));
    out.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">b = {}</text>\n",
        MARGIN,
        HEIGHT - MARGIN / 3.0,
        f.w.b_min
    ));
    out.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">b = {}</text>\n",
        WIDTH - MARGIN,
        HEIGHT - MARGIN / 3.0,
        f.w.b_max
    ));
    out.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">t = {} .. {}</text>\n",
        MARGIN / 4.0,
        MARGIN,
        f.w.t_min,
        f.w.t_max
    ));
    let palette = ["#1f3a93", "#b03a2e", "#196f3d", "#7d3c98", "#b9770e"];
    let mut legend_y = MARGIN + 16.0;
    for (i, (label, shape)) in walls.iter().enumerate() {
        let color = palette[i % palette.len()];
        if let Some(path) = wall_path(&f, shape) {
            out.push_str(&format!(
                "  <path d=\"{path}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" \
                 clip-path=\"url(#win)\"/>\n"
            ));
        }
        let note = match shape {
            WallShape::Degenerate => " (degenerate)",
            WallShape::Empty => " (empty)",
            _ => "",
        };
        out.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{legend_y:.2}\" font-size=\"12\" fill=\"{color}\">{label}{note}</text>\n",
            MARGIN + 8.0
        ));
        legend_y += 16.0;
    }
    out.push_str("</svg>\n");
    out
}
