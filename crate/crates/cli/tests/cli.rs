use std::path::Path;
use std::process::{Command, Output};

use heart_core::{ConvexPolygon, Point, Region};
use serde_json::Value;

fn heart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heart")).args(args).output().expect("binary runs")
}

fn json_file(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn point(v: &Value) -> Point {
    Point::new(v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

fn region(h: &Value) -> Region {
    let v: Vec<Point> = h["vertices"].as_array().unwrap().iter().map(point).collect();
    match h["kind"].as_str().unwrap() {
        "point" => Region::Point { at: v[0] },
        "segment" => Region::Segment { a: v[0], b: v[1] },
        _ => Region::Polygon { polygon: ConvexPolygon::new(v).unwrap() },
    }
}

#[test]
fn square_heart_is_its_center() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("out.svg");
    let out = heart(&["heart", "--body", "square", "--dirs", "360", "--svg", svg.to_str().unwrap()]);
    assert!(out.status.success());
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["schema"], 1);
    assert_eq!(r["heart"]["kind"], "point");
    assert!(point(&r["heart"]["vertices"][0]).dist(Point::new(0.5, 0.5)) < 1e-9);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains(r#"version="1.1""#) && text.contains(r#"viewBox="-0.050000 -1.050000 1.100000 1.100000""#));
    for layer in ["body", "heart", "centroid", "incenter"] {
        assert!(text.contains(&format!(r#"<g id="{layer}">"#)), "{layer}");
    }
}

#[test]
fn halfdisc_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (json, svg, again) = (dir.path().join("r.json"), dir.path().join("a.svg"), dir.path().join("b.svg"));
    let out = heart(&[
        "report",
        "--body",
        "halfdisc:1,0,64",
        "--h",
        "0.02",
        "--json",
        json.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json_file(&json);
    assert_eq!(r["heart"]["kind"], "segment");
    let seg = region(&r["heart"]);
    let target = Region::Segment { a: Point::new(0.0, 0.0), b: Point::new(0.0, 0.5) };
    assert!(heart_core::geometry::hausdorff(&seg, &target) < 0.02);
    for key in ["bounds", "polar", "santalo", "pde", "fourier"] {
        assert!(r.get(key).is_some(), "{key}");
    }
    let text = std::fs::read_to_string(&svg).unwrap();
    for layer in ["trajectory", "santalo", "x-inf"] {
        assert!(text.contains(&format!(r#"<g id="{layer}">"#)), "{layer}");
    }
    let out = heart(&["render", "--report", json.to_str().unwrap(), "--svg", again.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read(&svg).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn triangle_pde_verification_passes() {
    let out = heart(&["pde-verify", "--body", "triangle:0,0,1,0,0,1", "--h", "0.01"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let pde = &r["pde"];
    assert_eq!(pde["pass"], true);
    let lambda = pde["lambda1"].as_f64().unwrap();
    assert!((lambda - 5.0 * std::f64::consts::PI.powi(2)).abs() < 0.02 * lambda);
    assert!(region(&r["heart"]).distance_to(point(&pde["x_inf"])) <= 2.0 * 0.01);
}

#[test]
fn refining_directions_shrinks_the_heart() {
    let dir = tempfile::tempdir().unwrap();
    let body = dir.path().join("body.json");
    std::fs::write(&body, r#"{"vertices": [[0,0],[1.2,0.1],[1.5,0.7],[0.9,1.3],[0.2,0.9]]}"#).unwrap();
    let run = |dirs: &str| -> Region {
        let out = heart(&["heart", "--body", body.to_str().unwrap(), "--dirs", dirs]);
        assert!(out.status.success());
        region(&serde_json::from_slice::<Value>(&out.stdout).unwrap()["heart"])
    };
    let (coarse, fine) = (run("32"), run("64"));
    for p in fine.points() {
        assert!(coarse.distance_to(p) <= 1e-8);
    }
}

#[test]
fn generator_json_matches_flag() {
    let dir = tempfile::tempdir().unwrap();
    let body = dir.path().join("g.json");
    std::fs::write(&body, r#"{"generator": {"kind": "rectangle", "w": 2, "h": 1}}"#).unwrap();
    let a = heart(&["bounds", "--body", body.to_str().unwrap()]);
    let b = heart(&["bounds", "--body", "rectangle:2,1"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = ["fourier-check", "--body", "triangle:0,0,1,0,0.3,1", "--seed", "7"];
    let (a, b) = (heart(&args), heart(&args));
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["fourier"]["pass"], true);
    assert_eq!(r["fourier"]["probes"].as_array().unwrap().len(), 20);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"dirs": 64, "seed": 3}"#).unwrap();
    let out = heart(&["heart", "--body", "square", "--config", cfg.to_str().unwrap(), "--dirs", "96"]);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["settings"]["dirs"], 96);
    assert_eq!(r["settings"]["seed"], 3);
}

#[test]
fn polar_and_santalo_of_square() {
    let out = heart(&["polar", "--body", "square", "--center", "0.5,0.5"]);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((r["polar"]["area"].as_f64().unwrap() - 8.0).abs() < 1e-9);
    let out = heart(&["santalo", "--body", "square"]);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(point(&r["santalo"]["point"]).dist(Point::new(0.5, 0.5)) < 1e-6);
    assert_eq!(r["santalo"]["above_bounds"], true);
}

fn error_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn invalid_input_exits_with_one() {
    for args in [
        vec!["heart", "--body", "circle"],
        vec!["heart", "--body", "halfdisc:1,0,8"],
        vec!["heart", "--body", "square", "--dirs", "4"],
        vec!["pde-verify", "--body", "square", "--h", "0.2"],
        vec!["polar", "--body", "square", "--center", "0,0.5"],
        vec!["heart"],
        vec!["heart", "--body", "/nonexistent/body.json"],
    ] {
        let out = heart(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let e = error_of(&out);
        assert_eq!(e["schema"], 1);
        assert_eq!(e["error"]["exit_code"], 1);
    }
}

#[test]
fn failed_verification_exits_with_two() {
    let out = heart(&["pde-verify", "--body", "triangle:0,0,1,0,0,1", "--h", "0.005", "--tmax", "0.003"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["error"]["kind"], "inconsistent");
    // The report is still written before the failure is signalled.
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["pde"]["pass"], false);
}
