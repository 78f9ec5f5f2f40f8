//! Minimal static SVG chart of the payoff curves: a fixed 800x600
//! viewport, linear axes, one solid pi2(t) curve and one dashed pi1
//! level per plotted alpha, and a legend. Output depends only on the
//! grid contents, so repeated renders are byte-identical.

use std::fmt::Write;

use attack_econ::{RegionCell, SweepGrid};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 630.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 540.0;

const PALETTE: [&str; 5] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"];

/// Up to five row indices, evenly spread over the alpha range.
fn plotted_rows(row_count: usize) -> Vec<usize> {
    if row_count <= 5 {
        return (0..row_count).collect();
    }
    let mut rows: Vec<usize> = (0..5)
        .map(|k| ((k * (row_count - 1)) as f64 / 4.0).round() as usize)
        .collect();
    rows.dedup();
    rows
}

struct Mapper {
    t_min: f64,
    t_span: f64,
    pay_min: f64,
    pay_span: f64,
}

impl Mapper {
    fn x(&self, t: f64) -> f64 {
        if self.t_span == 0.0 {
            return (LEFT + RIGHT) / 2.0;
        }
        LEFT + (t - self.t_min) / self.t_span * (RIGHT - LEFT)
    }

    fn y(&self, payoff: f64) -> f64 {
        BOTTOM - (payoff - self.pay_min) / self.pay_span * (BOTTOM - TOP)
    }
}

fn polyline(out: &mut String, points: &str, color: &str, dashed: bool) {
    let dash = if dashed {
        " stroke-dasharray=\"6 4\""
    } else {
        ""
    };
    let _ = writeln!(
        out,
        "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"{dash} points=\"{points}\"/>"
    );
}

fn text(out: &mut String, x: f64, y: f64, anchor: &str, fill: &str, body: &str) {
    let _ = writeln!(
        out,
        "  <text x=\"{x:.2}\" y=\"{y:.2}\" font-family=\"monospace\" font-size=\"12\" \
         text-anchor=\"{anchor}\" fill=\"{fill}\">{body}</text>"
    );
}

/// Renders the payoff chart for a computed sweep grid.
pub fn render(grid: &SweepGrid) -> String {
    let rows: Vec<&[RegionCell]> = grid.rows().collect();
    let plotted = plotted_rows(rows.len());

    let t_min = rows[0][0].t;
    let t_max = rows[0][rows[0].len() - 1].t;
    let mut pay_min = f64::INFINITY;
    let mut pay_max = f64::NEG_INFINITY;
    for &row in plotted.iter().map(|&i| &rows[i]) {
        for cell in row {
            pay_min = pay_min.min(cell.pi2.value()).min(cell.pi1.value());
            pay_max = pay_max.max(cell.pi2.value()).max(cell.pi1.value());
        }
    }
    let pad = 0.05 * (pay_max - pay_min);
    let (pay_min, pay_max) = if pay_max > pay_min {
        (pay_min - pad, pay_max + pad)
    } else {
        (pay_min - 1.0, pay_max + 1.0)
    };
    let map = Mapper {
        t_min,
        t_span: t_max - t_min,
        pay_min,
        pay_span: pay_max - pay_min,
    };

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH:.0} {HEIGHT:.0}\" \
         width=\"{WIDTH:.0}\" height=\"{HEIGHT:.0}\">"
    );
    let _ = writeln!(
        out,
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH:.0}\" height=\"{HEIGHT:.0}\" fill=\"white\"/>"
    );
    text(
        &mut out,
        (LEFT + RIGHT) / 2.0,
        24.0,
        "middle",
        "black",
        "Stage payoffs vs completion time",
    );

    // axes
    let _ = writeln!(
        out,
        "  <line x1=\"{LEFT:.2}\" y1=\"{BOTTOM:.2}\" x2=\"{RIGHT:.2}\" y2=\"{BOTTOM:.2}\" \
         stroke=\"black\" stroke-width=\"1\"/>"
    );
    let _ = writeln!(
        out,
        "  <line x1=\"{LEFT:.2}\" y1=\"{TOP:.2}\" x2=\"{LEFT:.2}\" y2=\"{BOTTOM:.2}\" \
         stroke=\"black\" stroke-width=\"1\"/>"
    );

    // ticks
    for k in 0..=5 {
        let t = t_min + (t_max - t_min) * k as f64 / 5.0;
        let x = map.x(t);
        let _ = writeln!(
            out,
            "  <line x1=\"{x:.2}\" y1=\"{BOTTOM:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" \
             stroke=\"black\" stroke-width=\"1\"/>",
            BOTTOM + 5.0
        );
        text(
            &mut out,
            x,
            BOTTOM + 20.0,
            "middle",
            "black",
            &format!("{t:.2}"),
        );
    }
    for k in 0..=5 {
        let payoff = pay_min + (pay_max - pay_min) * k as f64 / 5.0;
        let y = map.y(payoff);
        let _ = writeln!(
            out,
            "  <line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{LEFT:.2}\" y2=\"{y:.2}\" \
             stroke=\"black\" stroke-width=\"1\"/>",
            LEFT - 5.0
        );
        text(
            &mut out,
            LEFT - 9.0,
            y + 4.0,
            "end",
            "black",
            &format!("{payoff:.1}"),
        );
    }
    text(
        &mut out,
        (LEFT + RIGHT) / 2.0,
        BOTTOM + 40.0,
        "middle",
        "black",
        "t",
    );
    text(
        &mut out,
        18.0,
        (TOP + BOTTOM) / 2.0,
        "middle",
        "black",
        "payoff",
    );

    // zero line when visible
    if pay_min < 0.0 && pay_max > 0.0 {
        let y = map.y(0.0);
        let _ = writeln!(
            out,
            "  <line x1=\"{LEFT:.2}\" y1=\"{y:.2}\" x2=\"{RIGHT:.2}\" y2=\"{y:.2}\" \
             stroke=\"#aaaaaa\" stroke-width=\"1\" stroke-dasharray=\"2 4\"/>"
        );
    }

    // curves
    for (slot, &row_index) in plotted.iter().enumerate() {
        let row = rows[row_index];
        let color = PALETTE[slot % PALETTE.len()];

        let mut points = String::new();
        for cell in row {
            let _ = write!(
                points,
                "{:.2},{:.2} ",
                map.x(cell.t),
                map.y(cell.pi2.value())
            );
        }
        polyline(&mut out, points.trim_end(), color, false);

        let pi1 = row[0].pi1.value();
        let level = format!(
            "{:.2},{:.2} {:.2},{:.2}",
            map.x(t_min),
            map.y(pi1),
            map.x(t_max),
            map.y(pi1)
        );
        polyline(&mut out, &level, color, true);

        text(
            &mut out,
            RIGHT + 14.0,
            TOP + 16.0 * slot as f64 + 4.0,
            "start",
            color,
            &format!("alpha={:.2}", row[0].alpha),
        );
    }

    // legend of line styles
    let style_y = TOP + 16.0 * plotted.len() as f64 + 20.0;
    text(
        &mut out,
        RIGHT + 14.0,
        style_y,
        "start",
        "black",
        "solid: pi2(t)",
    );
    text(
        &mut out,
        RIGHT + 14.0,
        style_y + 16.0,
        "start",
        "black",
        "dashed: pi1",
    );

    out.push_str("</svg>\n");
    out
}
