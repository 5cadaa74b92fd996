//! Self-contained SVG 1.1 line plot of a sweep: `t` across, `λ` up, stable
//! levels as dashed reference lines.

use std::fmt::Write;

use abflux::SweepTable64;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 48.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

/// Round step of roughly `span / 6`.
fn tick_step(span: f64) -> f64 {
    let raw = span / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0].iter().map(|k| k * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag)
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let step = tick_step(hi - lo);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn label(x: f64) -> String {
    let s = format!("{:.6}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

pub fn render_sweep(table: &SweepTable64) -> String {
    let (t_lo, t_hi) = (table.t_values[0], *table.t_values.last().expect("at least two t values"));
    let (l_lo, l_hi) = table.lambda_window;
    let px = |t: f64| LEFT + (t - t_lo) / (t_hi - t_lo) * (WIDTH - LEFT - RIGHT);
    let py = |l: f64| HEIGHT - BOTTOM - (l - l_lo) / (l_hi - l_lo) * (HEIGHT - TOP - BOTTOM);
    let (x0, x1, y0, y1) = (px(t_lo), px(t_hi), py(l_lo), py(l_hi));
    let (a, b, c) = table.direction;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="22" text-anchor="middle" font-size="14">(xi, eta, zeta) = ({} t, {} t, |{} t|)</text>"#,
        0.5 * (x0 + x1),
        label(a),
        label(b),
        label(c)
    );
    let _ = writeln!(
        s,
        r##"<defs><clipPath id="plot"><rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}"/></clipPath></defs>"##,
        x1 - x0,
        y0 - y1
    );

    let _ = writeln!(s, r##"<g stroke="#999999" stroke-width="1" stroke-dasharray="6 4">"##);
    for &l in &table.stable_levels {
        let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{0:.2}" x2="{x1:.2}" y2="{0:.2}"/>"#, py(l));
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g fill="none" stroke-width="1.5" clip-path="url(#plot)">"#);
    for br in &table.branches {
        let colour = PALETTE[br.id % PALETTE.len()];
        let mut run: Vec<String> = Vec::new();
        let flush = |run: &mut Vec<String>, s: &mut String| {
            if run.len() > 1 {
                let _ = writeln!(s, r##"<polyline stroke="{colour}" points="{}"/>"##, run.join(" "));
            }
            run.clear();
        };
        for (t, l) in table.t_values.iter().zip(&br.lambda) {
            match l {
                Some(l) => run.push(format!("{:.2},{:.2}", px(*t), py(*l))),
                None => flush(&mut run, &mut s),
            }
        }
        flush(&mut run, &mut s);
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g stroke="black" stroke-width="1" fill="none">"#);
    let _ = writeln!(s, r#"<rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}"/>"#, x1 - x0, y0 - y1);
    for t in ticks(t_lo, t_hi) {
        let _ = writeln!(s, r#"<line x1="{0:.2}" y1="{y0:.2}" x2="{0:.2}" y2="{1:.2}"/>"#, px(t), y0 + 5.0);
    }
    for l in ticks(l_lo, l_hi) {
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{1:.2}" x2="{x0:.2}" y2="{1:.2}"/>"#, x0 - 5.0, py(l));
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g fill="black">"#);
    for t in ticks(t_lo, t_hi) {
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, px(t), y0 + 18.0, label(t));
    }
    for l in ticks(l_lo, l_hi) {
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, x0 - 8.0, py(l) + 4.0, label(l));
    }
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">t</text>"#, 0.5 * (x0 + x1), HEIGHT - 10.0);
    let _ = writeln!(
        s,
        r#"<text x="16" y="{0:.2}" text-anchor="middle" transform="rotate(-90 16 {0:.2})">lambda</text>"#,
        0.5 * (y0 + y1)
    );
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
