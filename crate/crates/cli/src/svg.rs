//! Standalone SVG rendering of the simplex: items, supporting segments,
//! graph vertices colored by face class, the descent path and the center.
//! Output is byte-identical for identical inputs.

use poeq_core::rational::to_f64;
use poeq_core::{FaceClass, Instance, Player, RnsGraph, SimplexPoint, SolveReport, SupportSegment};

const WIDTH: f64 = 720.0;
const MARGIN: f64 = 60.0;

fn class_color(class: FaceClass) -> &'static str {
    match class {
        FaceClass::F1 => "#1f77b4",
        FaceClass::F2 => "#2ca02c",
        FaceClass::F3 => "#ff7f0e",
        FaceClass::F4 => "#9467bd",
        FaceClass::F5 => "#17becf",
        FaceClass::F6 => "#8c564b",
        FaceClass::Degenerate => "#d62728",
    }
}

struct Frame {
    corners: [(f64, f64); 3],
}

impl Frame {
    fn new() -> Frame {
        let side = WIDTH - 2.0 * MARGIN;
        let height = side * 3f64.sqrt() / 2.0;
        let base = MARGIN + height;
        Frame {
            corners: [
                (MARGIN, base),
                (MARGIN + side, base),
                (MARGIN + side / 2.0, base - height),
            ],
        }
    }

    fn project(&self, p: &SimplexPoint) -> (f64, f64) {
        let b: Vec<f64> = p.coords().iter().map(to_f64).collect();
        let x = b[0] * self.corners[0].0 + b[1] * self.corners[1].0 + b[2] * self.corners[2].0;
        let y = b[0] * self.corners[0].1 + b[1] * self.corners[1].1 + b[2] * self.corners[2].1;
        (x, y)
    }
}

fn line(out: &mut String, class: &str, a: (f64, f64), b: (f64, f64), style: &str) {
    out.push_str(&format!(
        "  <line class=\"{class}\" x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" {style}/>\n",
        a.0, a.1, b.0, b.1
    ));
}

fn circle(out: &mut String, class: &str, at: (f64, f64), r: f64, style: &str) {
    out.push_str(&format!(
        "  <circle class=\"{class}\" cx=\"{:.4}\" cy=\"{:.4}\" r=\"{r}\" {style}/>\n",
        at.0, at.1
    ));
}

fn text(out: &mut String, at: (f64, f64), anchor: &str, content: &str) {
    out.push_str(&format!(
        "  <text x=\"{:.4}\" y=\"{:.4}\" text-anchor=\"{anchor}\" font-size=\"14\" font-family=\"sans-serif\">{content}</text>\n",
        at.0, at.1
    ));
}

/// Renders the arrangement; when a solve report is given, its descent path is
/// highlighted and the optimal vertex ringed.
pub fn render_svg(inst: &Instance, graph: &RnsGraph, report: Option<&SolveReport>) -> String {
    let frame = Frame::new();
    let side = WIDTH - 2.0 * MARGIN;
    let height = side * 3f64.sqrt() / 2.0 + 2.0 * MARGIN;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height:.4}\" viewBox=\"0 0 {WIDTH} {height:.4}\">\n"
    ));
    out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Triangle and corner labels.
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        line(&mut out, "edge", frame.corners[a], frame.corners[b], "stroke=\"black\" stroke-width=\"1.5\"");
    }
    let offsets = [(-16.0, 16.0), (16.0, 16.0), (0.0, -10.0)];
    for p in Player::ALL {
        let c = frame.corners[p.index()];
        let o = offsets[p.index()];
        text(&mut out, (c.0 + o.0, c.1 + o.1), "middle", inst.player_label(p));
    }

    // Supporting segments.
    for j in 0..inst.item_count() {
        for toward in Player::ALL {
            let seg = SupportSegment::new(inst, j, toward);
            line(
                &mut out,
                "support",
                frame.project(&seg.start),
                frame.corners[toward.index()],
                "stroke=\"#cccccc\" stroke-width=\"0.8\"",
            );
        }
    }

    // Graph arcs on top of the segments.
    for arc in &graph.arcs {
        line(
            &mut out,
            "arc",
            frame.project(&graph.vertices[arc.endpoints.0].location),
            frame.project(&graph.vertices[arc.endpoints.1].location),
            "stroke=\"#555555\" stroke-width=\"1.6\"",
        );
    }

    // Egalitarian center.
    let center = frame.project(&SimplexPoint::center());
    circle(&mut out, "center", center, 3.0, "fill=\"none\" stroke=\"black\" stroke-width=\"1\"");
    line(
        &mut out,
        "center",
        (center.0 - 5.0, center.1),
        (center.0 + 5.0, center.1),
        "stroke=\"black\" stroke-width=\"1\"",
    );
    line(
        &mut out,
        "center",
        (center.0, center.1 - 5.0),
        (center.0, center.1 + 5.0),
        "stroke=\"black\" stroke-width=\"1\"",
    );

    // Descent path under the vertex markers.
    if let Some(report) = report {
        for pair in report.path.windows(2) {
            line(
                &mut out,
                "path",
                frame.project(&graph.vertices[pair[0]].location),
                frame.project(&graph.vertices[pair[1]].location),
                "stroke=\"#d62728\" stroke-width=\"3\" stroke-linecap=\"round\"",
            );
        }
    }

    // Vertices colored by face class.
    for v in &graph.vertices {
        let fill = class_color(v.face_class);
        circle(
            &mut out,
            "vertex",
            frame.project(&v.location),
            3.2,
            &format!("fill=\"{fill}\" stroke=\"black\" stroke-width=\"0.6\""),
        );
    }

    // Item dots and labels.
    for j in 0..inst.item_count() {
        let at = frame.project(&poeq_core::item_point(inst, j));
        circle(&mut out, "item", at, 2.0, "fill=\"black\"");
        if inst.item_count() <= 26 {
            text(&mut out, (at.0 + 6.0, at.1 - 6.0), "start", inst.item_label(j));
        }
    }

    if let Some(report) = report {
        let at = frame.project(&graph.vertices[report.optimal_vertex].location);
        circle(
            &mut out,
            "optimum",
            at,
            6.5,
            "fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"",
        );
    }

    out.push_str("</svg>\n");
    out
}
