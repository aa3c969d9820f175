//! Minimal SVG charts. Output depends only on the input numbers.

use std::fmt::Write as _;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

pub struct Series<'a> {
    pub name: &'a str,
    pub values: &'a [f64],
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn header(out: &mut String, title: &str) {
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">
<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>
<text x="{:.1}" y="24" text-anchor="middle" font-size="16">{}</text>
"#,
        WIDTH / 2.0,
        escape(title)
    );
}

fn plot_w() -> f64 {
    WIDTH - MARGIN_LEFT - MARGIN_RIGHT
}

fn plot_h() -> f64 {
    HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
}

fn y_pos(v: f64, lo: f64, hi: f64) -> f64 {
    MARGIN_TOP + plot_h() * (1.0 - (v - lo) / (hi - lo))
}

/// Axes, five y ticks and axis labels.
fn axes(out: &mut String, lo: f64, hi: f64, x_label: &str, y_label: &str) {
    let x0 = MARGIN_LEFT;
    let y0 = MARGIN_TOP + plot_h();
    let _ = writeln!(
        out,
        r#"<path d="M{x0:.1} {MARGIN_TOP:.1} V{y0:.1} H{:.1}" fill="none" stroke="black"/>"#,
        x0 + plot_w()
    );
    for k in 0..=4 {
        let v = lo + (hi - lo) * k as f64 / 4.0;
        let y = y_pos(v, lo, hi);
        let _ = writeln!(
            out,
            r##"<line x1="{:.1}" y1="{y:.1}" x2="{x0:.1}" y2="{y:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" text-anchor="end">{v:.4}</text>"##,
            x0 - 5.0,
            x0 - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        x0 + plot_w() / 2.0,
        HEIGHT - 10.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
        MARGIN_TOP + plot_h() / 2.0,
        MARGIN_TOP + plot_h() / 2.0,
        escape(y_label)
    );
}

fn legend(out: &mut String, names: &[&str]) {
    let x = WIDTH - MARGIN_RIGHT + 15.0;
    for (i, name) in names.iter().enumerate() {
        let y = MARGIN_TOP + 18.0 * i as f64;
        let _ = writeln!(
            out,
            r#"<rect x="{x:.1}" y="{y:.1}" width="12" height="12" fill="{}"/><text x="{:.1}" y="{:.1}">{}</text>"#,
            PALETTE[i % PALETTE.len()],
            x + 18.0,
            y + 10.0,
            escape(name)
        );
    }
}

fn value_range(series: &[Series<'_>], include_zero: bool) -> (f64, f64) {
    let finite = series.iter().flat_map(|s| s.values.iter().copied()).filter(|v| v.is_finite());
    let (mut lo, mut hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if include_zero {
        lo = lo.min(0.0);
    }
    if hi - lo < 1e-12 {
        hi = lo + 1.0;
    }
    (lo, hi)
}

/// Grouped bars: one group per label, one bar per series.
pub fn bar_chart(title: &str, labels: &[String], series: &[Series<'_>], x_label: &str, y_label: &str) -> String {
    let mut out = String::new();
    header(&mut out, title);
    let (lo, hi) = value_range(series, true);
    axes(&mut out, lo, hi, x_label, y_label);
    let groups = labels.len().max(1);
    let group_w = plot_w() / groups as f64;
    let bar_w = group_w * 0.8 / series.len().max(1) as f64;
    let base = y_pos(0.0_f64.max(lo), lo, hi);
    let label_every = groups.div_ceil(40);
    for (g, label) in labels.iter().enumerate() {
        let gx = MARGIN_LEFT + group_w * g as f64 + group_w * 0.1;
        for (k, s) in series.iter().enumerate() {
            let v = s.values.get(g).copied().unwrap_or(0.0);
            let y = y_pos(v, lo, hi);
            let _ = writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{bar_w:.2}" height="{:.2}" fill="{}"/>"#,
                gx + bar_w * k as f64,
                y.min(base),
                (base - y).abs(),
                PALETTE[k % PALETTE.len()]
            );
        }
        if g % label_every == 0 {
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.1}" text-anchor="middle" font-size="10">{}</text>"#,
                gx + group_w * 0.4,
                MARGIN_TOP + plot_h() + 14.0,
                escape(label)
            );
        }
    }
    legend(&mut out, &series.iter().map(|s| s.name).collect::<Vec<_>>());
    out.push_str("</svg>\n");
    out
}

/// Polylines over shared x values. Non-finite points are skipped.
pub fn line_chart(title: &str, xs: &[f64], series: &[Series<'_>], x_label: &str, y_label: &str) -> String {
    let mut out = String::new();
    header(&mut out, title);
    let (lo, hi) = value_range(series, false);
    axes(&mut out, lo, hi, x_label, y_label);
    let (x_lo, x_hi) = match (xs.first(), xs.last()) {
        (Some(&a), Some(&b)) if b > a => (a, b),
        (Some(&a), _) => (a, a + 1.0),
        _ => (0.0, 1.0),
    };
    let x_pos = |x: f64| MARGIN_LEFT + plot_w() * (x - x_lo) / (x_hi - x_lo);
    for k in 0..=4 {
        let x = x_lo + (x_hi - x_lo) * k as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            x_pos(x),
            MARGIN_TOP + plot_h() + 16.0,
            trim_number(x)
        );
    }
    for (k, s) in series.iter().enumerate() {
        let points: Vec<String> = xs
            .iter()
            .zip(s.values)
            .filter(|(_, v)| v.is_finite())
            .map(|(&x, &v)| format!("{:.2},{:.2}", x_pos(x), y_pos(v, lo, hi)))
            .collect();
        let colour = PALETTE[k % PALETTE.len()];
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
            points.join(" ")
        );
        for p in &points {
            let (x, y) = p.split_once(',').expect("formatted above");
            let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="2.5" fill="{colour}"/>"#);
        }
    }
    legend(&mut out, &series.iter().map(|s| s.name).collect::<Vec<_>>());
    out.push_str("</svg>\n");
    out
}

fn trim_number(x: f64) -> String {
    let s = format!("{x:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bar_chart_has_one_rect_per_bar() {
        let a = [0.1, 0.2, 0.3];
        let b = [0.3, 0.2, 0.1];
        let labels: Vec<String> = (0..3).map(|i| i.to_string()).collect();
        let svg = bar_chart(
            "t",
            &labels,
            &[Series { name: "a", values: &a }, Series { name: "b", values: &b }],
            "x",
            "y",
        );
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        // 6 bars, 2 legend swatches, 1 background.
        assert_eq!(svg.matches("<rect").count(), 9);
    }

    #[test]
    fn line_chart_is_deterministic_and_skips_gaps() {
        let xs = [0.0, 1.0, 2.0];
        let ys = [0.5, f64::NAN, 0.25];
        let s = [Series { name: "<p>", values: &ys }];
        let one = line_chart("t", &xs, &s, "step", "p");
        assert_eq!(one, line_chart("t", &xs, &s, "step", "p"));
        assert_eq!(one.matches("<circle").count(), 2);
        assert!(one.contains("&lt;p&gt;"));
    }

    #[test]
    fn flat_series_do_not_divide_by_zero() {
        let xs = [0.0];
        let ys = [0.05];
        let svg = line_chart("t", &xs, &[Series { name: "a", values: &ys }], "x", "y");
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}
