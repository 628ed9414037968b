//! SVG 1.1 figure of a report: body, heart and the marked points.

use std::fmt::Write;

use crate::report::Report;

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn points(v: &[[f64; 2]]) -> String {
    v.iter().map(|p| format!("{},{}", num(p[0]), num(p[1]))).collect::<Vec<_>>().join(" ")
}

fn marker(out: &mut String, id: &str, p: [f64; 2], r: f64, fill: &str) {
    writeln!(out, r#"  <g id="{id}"><circle cx="{}" cy="{}" r="{}" fill="{fill}"/></g>"#, num(p[0]), num(p[1]), num(r)).unwrap();
}

pub fn render(report: &Report) -> String {
    let v = &report.body.vertices;
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in v {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    let size = (x1 - x0).max(y1 - y0);
    let margin = 0.05 * size;
    let stroke = 0.004 * size;
    let dot = 0.012 * size;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        num(x0 - margin),
        num(-(y1 + margin)),
        num(x1 - x0 + 2.0 * margin),
        num(y1 - y0 + 2.0 * margin)
    )
    .unwrap();
    out.push_str("<g transform=\"scale(1,-1)\">\n");
    writeln!(
        out,
        r##"  <g id="body"><polygon points="{}" fill="none" stroke="#222222" stroke-width="{}"/></g>"##,
        points(v),
        num(stroke)
    )
    .unwrap();
    if let Some(h) = &report.heart {
        let body = match h.kind.as_str() {
            "polygon" => format!(
                r##"<polygon points="{}" fill="#d62728" fill-opacity="0.45" stroke="#d62728" stroke-width="{}"/>"##,
                points(&h.vertices),
                num(stroke)
            ),
            "segment" => format!(
                r##"<polyline points="{}" fill="none" stroke="#d62728" stroke-width="{}" stroke-linecap="round"/>"##,
                points(&h.vertices),
                num(2.5 * stroke)
            ),
            _ => h
                .vertices
                .iter()
                .map(|p| format!(r##"<circle cx="{}" cy="{}" r="{}" fill="#d62728"/>"##, num(p[0]), num(p[1]), num(1.5 * dot)))
                .collect(),
        };
        writeln!(out, r#"  <g id="heart">{body}</g>"#).unwrap();
    }
    if let Some(p) = &report.pde {
        let traj: Vec<[f64; 2]> = p.trajectory.iter().map(|s| s.x).collect();
        writeln!(
            out,
            r##"  <g id="trajectory"><polyline points="{}" fill="none" stroke="#1f77b4" stroke-width="{}"/></g>"##,
            points(&traj),
            num(stroke)
        )
        .unwrap();
    }
    marker(&mut out, "centroid", report.body.centroid, dot, "#2ca02c");
    marker(&mut out, "incenter", report.body.incenter, dot, "#9467bd");
    if let Some(s) = &report.santalo {
        marker(&mut out, "santalo", s.point, dot, "#ff7f0e");
    }
    if let Some(p) = &report.pde {
        marker(&mut out, "x-inf", p.x_inf, dot, "#1f77b4");
    }
    out.push_str("</g>\n</svg>\n");
    out
}
