//! SVG rendering of one traced neuron: stimulus marks, both node voltages
//! with the threshold line, and the spike/readout row.

use std::fmt::Write as _;

use neuron_core::BiasConfig;

use crate::trace::{Trace, TraceRow};

const WIDTH: f64 = 1000.0;
const CURVE_HEIGHT: f64 = 300.0;
const LANE_HEIGHT: f64 = 22.0;
const MARGIN: f64 = 45.0;

/// Renders the rows of `neuron_id` as an SVG document. Returns `None` when
/// the trace holds no rows for that neuron.
pub fn render_svg(trace: &Trace, neuron_id: u32, biases: &BiasConfig) -> Option<String> {
    let rows: Vec<&TraceRow> = trace
        .rows
        .iter()
        .filter(|r| r.neuron_id == neuron_id)
        .collect();
    if rows.is_empty() {
        return None;
    }
    let t0 = rows.first().expect("nonempty").time_ps as f64;
    let t1 = rows.last().expect("nonempty").time_ps as f64;
    let span = (t1 - t0).max(1.0);
    let v_max = biases.vdd;

    let height = MARGIN * 2.0 + CURVE_HEIGHT + 4.0 * LANE_HEIGHT;
    let x = |t: f64| MARGIN + (t - t0) / span * (WIDTH - 2.0 * MARGIN);
    let y = |v: f64| MARGIN + (1.0 - v / v_max) * CURVE_HEIGHT;

    let polyline = |take: &dyn Fn(&TraceRow) -> f64| -> String {
        let mut points = String::new();
        for r in &rows {
            let _ = write!(points, "{:.2},{:.2} ", x(r.time_ps as f64), y(take(r)));
        }
        points.trim_end().to_string()
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {height}" font-family="monospace" font-size="11">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{height}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{MARGIN}" y="20">neuron {neuron_id}: v_syn (green), v_mem (magenta), threshold (dashed), lanes: exc/inh/rst/readout</text>"#
    );

    // Threshold and rails.
    for (v, dash, label) in [
        (biases.v_threshold, "6 3", "v_th"),
        (0.0, "2 2", "0V"),
        (v_max, "2 2", "vdd"),
    ] {
        let yy = y(v);
        let _ = writeln!(
            svg,
            r#"<line x1="{MARGIN}" y1="{yy:.2}" x2="{:.2}" y2="{yy:.2}" stroke="gray" stroke-dasharray="{dash}"/><text x="2" y="{:.2}">{label}</text>"#,
            WIDTH - MARGIN,
            yy + 4.0
        );
    }

    let _ = writeln!(
        svg,
        r#"<polyline points="{}" fill="none" stroke="green" stroke-width="1"/>"#,
        polyline(&|r| r.v_syn)
    );
    let _ = writeln!(
        svg,
        r#"<polyline points="{}" fill="none" stroke="magenta" stroke-width="1"/>"#,
        polyline(&|r| r.v_mem)
    );

    // Event lanes below the curves.
    let lanes: [(&str, &str, Box<dyn Fn(&TraceRow) -> bool>); 4] = [
        ("red", "exc", Box::new(|r: &TraceRow| r.exc)),
        ("orange", "inh", Box::new(|r: &TraceRow| r.inh)),
        ("black", "rst", Box::new(|r: &TraceRow| r.rst)),
        (
            "blue",
            "spike/aer",
            Box::new(|r: &TraceRow| r.spike || r.aer_active),
        ),
    ];
    for (lane, (color, label, active)) in lanes.iter().enumerate() {
        let base = MARGIN + CURVE_HEIGHT + 10.0 + lane as f64 * LANE_HEIGHT;
        let _ = writeln!(svg, r#"<text x="2" y="{:.2}">{label}</text>"#, base + 12.0);
        for r in &rows {
            if active(r) {
                let xx = x(r.time_ps as f64);
                let _ = writeln!(
                    svg,
                    r#"<line x1="{xx:.2}" y1="{:.2}" x2="{xx:.2}" y2="{:.2}" stroke="{color}" stroke-width="1.5"/>"#,
                    base,
                    base + LANE_HEIGHT - 8.0
                );
            }
        }
    }

    let _ = writeln!(svg, "</svg>");
    Some(svg)
}
