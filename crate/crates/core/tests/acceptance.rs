mod common;

use std::f64::consts::{PI, TAU};

use common::*;
use heart_core::bounds::*;
use heart_core::folding::*;
use heart_core::fourier::*;
use heart_core::geometry::*;
use heart_core::pde::*;
use heart_core::polar::*;
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
    values: Vec<(ConvexPolygon, FoldingValue)>,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Self { pass, detail, values: Vec::new() }
    }
}

fn cfg() -> GeomConfig {
    GeomConfig::default()
}

fn record(values: &mut Vec<(ConvexPolygon, FoldingValue)>, k: &ConvexPolygon, h: &Heart) {
    values.extend(h.profile.entries.iter().map(|fv| (k.clone(), *fv)));
}

fn folding_vs_oracle() -> Outcome {
    let strict = GeomConfig::new(1e-12).unwrap();
    let mut r = rng(1001);
    let mut worst = 0.0_f64;
    let mut values = Vec::new();
    for _ in 0..50 {
        let n = r.gen_range(5..=40);
        let k = random_convex(&mut r, n);
        let d = k.diameter();
        for _ in 0..64 {
            let w = random_direction(&mut r);
            let fv = folding_value(&k, w, &cfg());
            let o = folding_oracle(&k, w, 1e-10 * d, &strict).unwrap();
            worst = worst.max((fv.r - o).abs() / d);
            values.push((k.clone(), fv));
        }
    }
    Outcome { pass: worst <= 1e-7, detail: format!("max |R - oracle|/diam = {worst:.2e} over 3200 pairs"), values }
}

fn ellipse_r(a: f64, b: f64, w: Direction) -> f64 {
    let (x, y) = (w.x(), w.y());
    (a * a - b * b) * (x * y).abs() / (b * b * x * x + a * a * y * y).sqrt()
}

fn ellipse_closed_form() -> Outcome {
    let (a, b, m) = (2.0, 1.0, 256);
    let k = ellipse(a, b, m);
    let mut values = Vec::new();
    let mut worst = 0.0_f64;
    for i in 0..90 {
        let t = TAU * (i * m / 90) as f64 / m as f64;
        let normal = Direction::new(t.cos() / a, t.sin() / b).unwrap();
        let w = normal.perp();
        let fv = folding_value(&k, w, &cfg());
        worst = worst.max((fv.r - ellipse_r(a, b, w)).abs());
        values.push((k.clone(), fv));
    }
    let generic: Vec<f64> = [256, 512, 1024]
        .iter()
        .map(|&m| {
            let k = ellipse(a, b, m);
            (0..90)
                .map(|i| {
                    let w = Direction::from_angle(PI * i as f64 / 90.0 + 0.013);
                    (folding_value(&k, w, &cfg()).r - ellipse_r(a, b, w)).abs()
                })
                .fold(0.0, f64::max)
        })
        .collect();
    let decays = generic.windows(2).all(|p| p[1] <= 0.6 * p[0]);
    Outcome {
        pass: worst <= 1e-3 && decays,
        detail: format!(
            "max error {worst:.2e} at vertex-conjugate directions; generic directions {:.1e} / {:.1e} / {:.1e} at m = 256 / 512 / 1024",
            generic[0], generic[1], generic[2]
        ),
        values,
    }
}

fn halfdisc_segment() -> Outcome {
    let k = halfdisc(1.0, 0.0, 64);
    let h = heart(&k, 720, &[], &cfg()).unwrap();
    let target = Region::Segment { a: Point::new(0.0, 0.0), b: Point::new(0.0, 0.5) };
    let dist = hausdorff(&h.region.region, &target);
    let mut out = Outcome::new(
        h.region.kind() == "segment" && dist <= 0.02,
        format!("heart is a {} at Hausdorff distance {dist:.2e} from {{0}}x[0,0.5]", h.region.kind()),
    );
    record(&mut out.values, &k, &h);
    out
}

fn symmetry_collapse() -> Outcome {
    let bodies = [("square", square()), ("hexagon", regular_polygon(6, 1.0, Point::new(0.2, 0.3), 0.1).unwrap())];
    let mut pass = true;
    let mut parts = Vec::new();
    let mut values = Vec::new();
    for (name, k) in &bodies {
        let axes: Vec<Direction> = (0..k.len()).map(|i| k.edge_normal(i).perp()).collect();
        let h = heart(k, 720, &axes, &cfg()).unwrap();
        let off = h.region.vertices().iter().map(|p| p.dist(k.centroid())).fold(0.0, f64::max);
        pass &= h.region.kind() == "point" && off <= 1e-9;
        parts.push(format!("{name} {} off by {off:.1e}", h.region.kind()));
        record(&mut values, k, &h);
    }
    Outcome { pass, detail: parts.join(", "), values }
}

fn membership_suite() -> Outcome {
    let mut r = rng(1005);
    let mut bodies = vec![
        square(),
        rectangle(),
        triangle(),
        halfdisc(1.0, 0.0, 64),
        halfdisc(1.0, 0.4, 64),
        regular_polygon(6, 1.0, Point::ORIGIN, 0.0).unwrap(),
        ellipse(2.0, 1.0, 64),
    ];
    bodies.extend((0..20).map(|_| {
        let n = r.gen_range(3..30);
        random_convex(&mut r, n)
    }));
    let mut failures = Vec::new();
    let mut values = Vec::new();
    let mut off_grid = f64::NEG_INFINITY;
    for (idx, k) in bodies.iter().enumerate() {
        let eps = cfg().eps_for(k);
        let h = heart(k, 720, &[], &cfg()).unwrap();
        if h.region.distance_to(k.centroid()) > eps {
            failures.push(format!("body {idx}: centroid"));
        }
        for e in &h.profile.entries {
            if h.region.support(e.direction) > e.r + eps || e.r > support(k, e.direction) + eps {
                failures.push(format!("body {idx}: sandwich"));
                break;
            }
        }
        for i in 0..720 {
            let w = Direction::from_angle(TAU * i as f64 / 720.0);
            let b = width_bound(k, w, Some(&h.region), &cfg());
            if b.heart_width.unwrap() > b.bound + 2.0 * eps {
                failures.push(format!("body {idx}: width"));
                break;
            }
        }
        for i in 0..720 {
            let b = width_bound(k, Direction::from_angle(TAU * (i as f64 + 0.5) / 720.0), Some(&h.region), &cfg());
            off_grid = off_grid.max(b.heart_width.unwrap() - b.bound);
        }
        let ball = heart_ball_radius(k, &h.profile, &h.region, &cfg());
        let far = h.region.vertices().iter().map(|p| p.dist(k.centroid())).fold(0.0, f64::max);
        if !ball.contains_heart || far > ball.radius + eps {
            failures.push(format!("body {idx}: ball"));
        }
        record(&mut values, k, &h);
    }
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!(
                "{} bodies, all four properties hold; width excess between grid directions at most {off_grid:.1e}",
                bodies.len()
            )
        } else {
            failures.join("; ")
        },
        values,
    }
}

struct PdeCase {
    name: &'static str,
    body: ConvexPolygon,
    exact: Option<f64>,
    report: PdeReport,
    heart: Heart,
}

const J11: f64 = 3.8317059702075125;

fn pde_cases() -> Vec<PdeCase> {
    let bodies = vec![
        ("square", square(), Some(2.0 * PI * PI)),
        ("rectangle", rectangle(), Some(PI * PI * 1.25)),
        ("triangle", triangle(), Some(5.0 * PI * PI)),
        ("half-disc", halfdisc(1.0, 0.0, 64), Some(J11 * J11)),
        ("7-gon", random_convex(&mut rng(7), 7), None),
    ];
    std::thread::scope(|s| {
        let handles: Vec<_> = bodies
            .into_iter()
            .map(|(name, body, exact)| {
                s.spawn(move || {
                    let heart = heart(&body, 720, &[], &cfg()).unwrap();
                    let h = default_spacing(&body, &cfg());
                    let report = pde_verify(&body, h, None, &heart.region, &cfg()).unwrap();
                    PdeCase { name, body, exact, report, heart }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    })
}

fn pde_end_to_end(cases: &[PdeCase]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let mut values = Vec::new();
    for c in cases {
        let rep = &c.report;
        let lambda = rep.eigen.lambda1;
        let rate_err = (rep.track.decay_rate - lambda).abs() / lambda;
        let lambda_err = c.exact.map(|e| (lambda - e).abs() / e);
        let ok = rep.heart.pass
            && rep.varadhan.early_ok
            && rep.varadhan.late_ok
            && rep.track.strictly_decreasing()
            && rate_err <= 0.02
            && lambda_err.is_none_or(|e| e <= 0.02);
        pass &= ok;
        parts.push(format!(
            "{} worst {:.2}h, lambda {:.4}{}, rate {:.2}%, early {:.1}%",
            c.name,
            rep.heart.worst / rep.h,
            lambda,
            lambda_err.map(|e| format!(" ({:.2}%)", 100.0 * e)).unwrap_or_default(),
            100.0 * rate_err,
            100.0 * rep.varadhan.early_rel_err
        ));
        record(&mut values, &c.body, &c.heart);
    }
    let disc = regular_polygon(512, 1.0, Point::ORIGIN, 0.0).unwrap();
    let grid = rasterize(&disc, default_spacing(&disc, &cfg()), &cfg()).unwrap();
    let exact = bessel_lambda1_ball(2).unwrap();
    let disc_err = (eigen_solve(&grid, 1e-8).unwrap().lambda1 - exact).abs() / exact;
    pass &= disc_err <= 0.02;
    parts.push(format!("disc lambda ({:.2}%)", 100.0 * disc_err));
    Outcome { pass, detail: parts.join("; "), values }
}

fn distance_bounds(k: &ConvexPolygon, lambda1: f64) -> [f64; 5] {
    let stats = BodyStats::of_polygon(k, &cfg());
    let g = dist_lower_general(&stats, lambda1).unwrap();
    let c = dist_lower_convex(&stats).unwrap();
    let s = dist_lower_star(k, 16, &cfg()).unwrap();
    [g.precise, g.coarse, c.precise, c.coarse, s.bound]
}

fn bounds_consistency(cases: &[PdeCase]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for c in cases {
        let d = c.body.boundary_distance(c.report.eigen.x_inf);
        let b = distance_bounds(&c.body, c.report.eigen.lambda1);
        let best = b.iter().cloned().fold(0.0, f64::max);
        pass &= b.iter().all(|&x| x <= d);
        parts.push(format!("{} {:.3} >= {:.2e}", c.name, d, best));
    }
    let coarse = dist_lower_convex(&BodyStats::of_polygon(&square(), &cfg())).unwrap().coarse;
    pass &= (coarse - 0.00336).abs() <= 1e-5;
    Outcome::new(pass, format!("{}; square coarse bound {coarse:.6}", parts.join(", ")))
}

fn polar_suite(cases: &[PdeCase]) -> Outcome {
    let mut pass = true;
    let sq = polar_polygon(&square(), Point::new(0.5, 0.5), &cfg()).unwrap().area();
    pass &= (sq - 8.0).abs() <= 1e-9;

    let mut r = rng(1008);
    let mut bipolar = 0.0_f64;
    let mut lemma_ok = 0;
    for i in 0..100 {
        let n = r.gen_range(3..20);
        let k = random_convex(&mut r, n);
        let p = k.centroid().lerp(k.vertices()[r.gen_range(0..n)], r.gen_range(0.0..0.9));
        if lemma_check(&k, p, &cfg()).unwrap().ok {
            lemma_ok += 1;
        }
        if i < 20 {
            let once = polar_polygon(&k, p, &cfg()).unwrap();
            let twice = polar_polygon(&once.polar, p, &cfg()).unwrap();
            let h = hausdorff(&Region::Polygon { polygon: twice.polar }, &Region::Polygon { polygon: k.clone() });
            bipolar = bipolar.max(h / cfg().eps_for(&k));
        }
    }
    pass &= bipolar <= 1.0 && lemma_ok == 100;

    let mut coroll = 0;
    for c in cases {
        if coroll_check(&c.body, c.report.eigen.x_inf, c.report.eigen.lambda1, &cfg()).unwrap().ok {
            coroll += 1;
        }
    }
    pass &= coroll == cases.len();

    let s = santalo_point(&square(), 1e-9, &cfg()).unwrap();
    let off = s.dist(Point::new(0.5, 0.5));
    let lambda = cases.iter().find(|c| c.name == "square").unwrap().report.eigen.lambda1;
    let above = distance_bounds(&square(), lambda).iter().all(|&b| b <= square().boundary_distance(s));
    pass &= off <= 1e-6 && above;
    Outcome::new(
        pass,
        format!(
            "square polar area {sq}, bipolar {bipolar:.2} eps, lemma {lemma_ok}/100, coroll {coroll}/{}, Santalo offset {off:.1e}{}",
            cases.len(),
            if above { " above all bounds" } else { " BELOW a bound" }
        ),
    )
}

fn median(v: &[f64]) -> f64 {
    let mut v = v.to_vec();
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

fn fourier_cross_check() -> Outcome {
    let mut r = rng(1009);
    let mut bodies = vec![square(), triangle()];
    bodies.push(random_convex(&mut r, 7));
    let zero = bodies.iter().map(|k| (chi_hat(k, Point::ORIGIN).re - k.area()).abs()).fold(0.0, f64::max);

    let mut quad = 0.0_f64;
    for i in 0..20 {
        let k = &bodies[i % 3];
        let rad = 40.0 * r.gen_range(0.0..1.0f64).powi(2);
        let t = r.gen_range(0.0..TAU);
        let xi = Point::new(rad * t.cos(), rad * t.sin());
        quad = quad.max((chi_hat(k, xi) - chi_hat_fubini(k, xi)).norm());
    }

    let mut probes = Vec::new();
    for i in 0..20 {
        let k = &bodies[i % 3];
        let w = random_direction(&mut r);
        let sh = shadow(k, w);
        probes.push((i % 3, w, sh.lo + sh.len() * r.gen_range(0.1..0.9)));
    }
    let errors = |units: f64| -> Vec<f64> {
        probes
            .iter()
            .map(|&(b, w, y)| {
                let k = &bodies[b];
                let m = f_via_fourier(k, w, y, cutoff_from_units(k, units), 4096).unwrap();
                (m.value - f_omega(k, w, y, &cfg()).unwrap()).abs() / k.diameter()
            })
            .collect()
    };
    let (e1, e2) = (errors(400.0), errors(800.0));
    let worst = e1.iter().cloned().fold(0.0, f64::max);
    let ratio = median(&e2) / median(&e1);
    Outcome::new(
        zero <= 1e-12 && quad <= 1e-8 && worst <= 0.05 && ratio <= 0.5,
        format!(
            "|chi(0) - area| {zero:.1e}, quadrature gap {quad:.1e}, worst midpoint error {:.2}% diam, median ratio at 2S {ratio:.3}",
            100.0 * worst
        ),
    )
}

fn optimality(values: &[(ConvexPolygon, FoldingValue)]) -> Outcome {
    let held = values.iter().filter(|(k, fv)| optimality_check(k, fv, &cfg()).is_ok_and(|o| o.holds)).count();
    let mut caught = 0;
    let controls: Vec<_> = values.iter().step_by(values.len() / 200).collect();
    for (k, fv) in &controls {
        let fake = FoldingValue { r: fv.r - 1e-3 * k.diameter(), ..*fv };
        if !optimality_check(k, &fake, &cfg()).is_ok_and(|o| o.holds) {
            caught += 1;
        }
    }
    Outcome::new(
        held == values.len() && caught == controls.len(),
        format!("holds at {held}/{} witnesses; perturbed lambda rejected {caught}/{}", values.len(), controls.len()),
    )
}

fn main() {
    let mut outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let c1 = s.spawn(folding_vs_oracle);
        let c2 = s.spawn(ellipse_closed_form);
        let c3 = s.spawn(halfdisc_segment);
        let c4 = s.spawn(symmetry_collapse);
        let c5 = s.spawn(membership_suite);
        let c9 = s.spawn(fourier_cross_check);
        let cases = pde_cases();
        let c6 = pde_end_to_end(&cases);
        let c7 = bounds_consistency(&cases);
        let c8 = polar_suite(&cases);
        let first: Vec<Outcome> = [c1, c2, c3, c4, c5].into_iter().map(|h| h.join().unwrap()).collect();
        first.into_iter().chain([c6, c7, c8, c9.join().unwrap()]).collect()
    });
    let values: Vec<_> = outcomes.iter_mut().flat_map(|o| std::mem::take(&mut o.values)).collect();
    outcomes.push(optimality(&values));

    let mut failed = Vec::new();
    for (i, o) in outcomes.iter().enumerate() {
        println!("criterion {:>2}: {}  {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
