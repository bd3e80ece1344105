//! Minimal SVG line chart for sweep output.

use std::fmt::Write;

use crate::args::{Curve, ALL_CURVES};
use crate::sweep::SweepRow;

const W: f64 = 720.0;
const H: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;

fn style(c: Curve) -> (&'static str, &'static str, &'static str) {
    match c {
        Curve::Lb => ("R_lb", "#1f77b4", ""),
        Curve::LbGw => ("R_lb_gw", "#2ca02c", "6,3"),
        Curve::UbGw => ("R_ub_gw", "#d62728", ""),
        Curve::Tc => ("R_tc", "#9467bd", "2,3"),
        Curve::LfuUm => ("R_lfu_um", "#7f7f7f", "8,4"),
    }
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 2.5, 5.0, 10.0]
        .into_iter()
        .map(|k| k * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag)
}

pub fn render(rows: &[SweepRow], title: &str) -> String {
    let xmax = rows.iter().map(|r| r.m).fold(0.0, f64::max).max(1e-9);
    let ymax = rows
        .iter()
        .flat_map(|r| ALL_CURVES.map(|c| r.get(c)))
        .flatten()
        .fold(0.0, f64::max)
        .max(1e-9);
    let pw = W - LEFT - RIGHT;
    let ph = H - TOP - BOTTOM;
    let sx = |x: f64| LEFT + x / xmax * pw;
    let sy = |y: f64| TOP + ph - y / ymax * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="18" text-anchor="middle" font-size="14">{title}</text>"#, LEFT + pw / 2.0);
    let _ = writeln!(
        s,
        r#"<path d="M{LEFT},{TOP} V{} H{}" fill="none" stroke="black"/>"#,
        TOP + ph,
        LEFT + pw
    );
    for (max, vertical) in [(xmax, false), (ymax, true)] {
        let step = nice_step(max);
        let mut t = 0.0;
        while t <= max + 1e-12 {
            if vertical {
                let y = sy(t);
                let _ = writeln!(s, r##"<line x1="{}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><line x1="{LEFT}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="#ddd"/>"##, LEFT - 5.0, LEFT + pw);
                let _ = writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#, LEFT - 8.0, y + 4.0, fmt_tick(t));
            } else {
                let x = sx(t);
                let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}" stroke="black"/>"#, TOP + ph, TOP + ph + 5.0);
                let _ = writeln!(s, r#"<text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"#, TOP + ph + 18.0, fmt_tick(t));
            }
            t += step;
        }
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">M (bits/symbol)</text>"#,
        LEFT + pw / 2.0,
        H - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text transform="translate(20,{}) rotate(-90)" text-anchor="middle">R (bits/symbol)</text>"#,
        TOP + ph / 2.0
    );
    let mut legend_y = TOP + 10.0;
    for c in ALL_CURVES {
        let pts: Vec<String> = rows
            .iter()
            .filter_map(|r| r.get(c).map(|v| format!("{:.2},{:.2}", sx(r.m), sy(v))))
            .collect();
        if pts.is_empty() {
            continue;
        }
        let (name, color, dash) = style(c);
        let dash = if dash.is_empty() { String::new() } else { format!(r#" stroke-dasharray="{dash}""#) };
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.8"{dash}/>"#,
            pts.join(" ")
        );
        let lx = LEFT + pw + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{legend_y}" x2="{}" y2="{legend_y}" stroke="{color}" stroke-width="1.8"{dash}/><text x="{}" y="{}">{name}</text>"#,
            lx + 30.0,
            lx + 36.0,
            legend_y + 4.0
        );
        legend_y += 20.0;
    }
    s.push_str("</svg>\n");
    s
}

fn fmt_tick(t: f64) -> String {
    let r = (t * 1000.0).round() / 1000.0;
    format!("{r}")
}
