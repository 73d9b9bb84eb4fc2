//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rho_planes::area::{cap_area, sector_area, total_ball_area};
use rho_planes::chord::star_map;
use rho_planes::ellipse::{conic_eval, rho_ellipse_at, tangency_dstar, tangency_star};
use rho_planes::lab::{
    check_p_rho_s, even_probe, i0_identities, punto_suite, sweep, PuntoConfig, DEFAULT_TOL,
};
use rho_planes::polygon::{build_polygon, polygon_from_angle, rho_from_kn, PolygonStatus};
use rho_planes::svg::{render_svg, sphere_curve, PolyLayer, Scene};
use rho_planes::{natural_param, wedge, NormSpec, Point, UnitPoint};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spec(s: &str) -> NormSpec {
    s.parse().unwrap()
}

fn ips_specs() -> Vec<NormSpec> {
    ["euclid", "quad:1,0,4", "quad:2,1,3"]
        .iter()
        .map(|s| spec(s))
        .collect()
}

fn angle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn spread(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = xs.iter().copied().fold(f64::INFINITY, f64::min);
    max - min
}

fn ips_soundness() -> Outcome {
    for s in ips_specs() {
        for rho in [0.3, 0.5, (PI / 5.0).cos(), (2.0 * PI / 5.0).cos(), 0.9] {
            let r = check_p_rho_s(&s, rho, 256, DEFAULT_TOL).map_err(|e| e.to_string())?;
            ensure(r.max_midpoint_deviation <= 1e-8 && r.pass, || {
                format!("{s} rho={rho}: deviation {}", r.max_midpoint_deviation)
            })?;
        }
    }
    Ok(())
}

fn characterization_bite() -> Outcome {
    for s in [NormSpec::square(), spec("lp:4")] {
        let r = check_p_rho_s(&s, 0.5, 256, DEFAULT_TOL).map_err(|e| e.to_string())?;
        ensure(r.max_midpoint_deviation >= 1e-4, || {
            format!("{s}: deviation only {}", r.max_midpoint_deviation)
        })?;
    }
    let r = check_p_rho_s(&NormSpec::square(), 1.0 / 3.0, 256, DEFAULT_TOL)
        .map_err(|e| e.to_string())?;
    ensure(r.max_midpoint_deviation >= 0.16, || {
        format!("square rho=1/3: deviation {}", r.max_midpoint_deviation)
    })
}

fn linf_polygon() -> Outcome {
    let sq = NormSpec::square();
    let axes = [
        Point::new(1.0, 0.0),
        Point::new(0.0, 1.0),
        Point::new(-1.0, 0.0),
        Point::new(0.0, -1.0),
    ];
    let p = polygon_from_angle(&sq, 0.0, 0.5).map_err(|e| e.to_string())?;
    ensure(p.closed_counts().map(|c| c.0) == Some(4), || {
        format!("status {:?}", p.status)
    })?;
    for a in axes {
        ensure(p.points().iter().any(|v| v.dist(a) <= 1e-8), || {
            format!("missing vertex {a:?}")
        })?;
    }
    let p = build_polygon(&sq, &natural_param(&sq, 0.35), 0.5, 2000, 1e-8)
        .map_err(|e| e.to_string())?;
    match p.status {
        PolygonStatus::NonClosing {
            steps,
            accumulation_points,
        } => {
            ensure(steps == 2000 && accumulation_points.len() == 4, || {
                format!("{} clusters after {steps} steps", accumulation_points.len())
            })?;
            for a in axes {
                ensure(
                    accumulation_points.iter().any(|c| c.dist(a) <= 1e-3),
                    || format!("no cluster near {a:?}: {accumulation_points:?}"),
                )?;
            }
            Ok(())
        }
        other => Err(format!("seed 0.35 closed: {other:?}")),
    }
}

fn closure_classification() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for s in [spec("euclid"), spec("quad:1,0,4")] {
        for (k, n) in [(1, 3), (1, 5), (2, 5), (1, 7), (2, 7), (3, 7)] {
            let rho = rho_from_kn(k, n).map_err(|e| e.to_string())?;
            for _ in 0..8 {
                let seed = rng.gen_range(0.0..TAU);
                let p = polygon_from_angle(&s, seed, rho).map_err(|e| e.to_string())?;
                ensure(p.closed_counts() == Some((n as usize, k as usize)), || {
                    format!("{s} (k,n)=({k},{n}) seed {seed}: {:?}", p.status)
                })?;
                if matches!(s, NormSpec::Euclidean) {
                    for (j, v) in p.vertices.iter().enumerate() {
                        let expect = seed + TAU * (j as f64) * k as f64 / n as f64;
                        ensure(angle_dist(v.theta, expect) <= 1e-6, || {
                            format!("euclid ({k},{n}) vertex {j}: {} vs {expect}", v.theta)
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn punto_invariants() -> Outcome {
    let q = spec("quad:1,0,4");
    let rho = rho_from_kn(2, 7).map_err(|e| e.to_string())?;
    let r = punto_suite(&q, rho, 0.4, &PuntoConfig::default()).map_err(|e| e.to_string())?;
    ensure(r.wedge_spread <= 1e-8, || {
        format!("wedge spread {}", r.wedge_spread)
    })?;
    ensure(r.sector_spread <= 1e-5, || {
        format!("sector spread {}", r.sector_spread)
    })?;
    ensure(
        r.partition.areas.len() == 14 && r.partition.spread <= 1e-5,
        || {
            format!(
                "partition {} sectors, spread {}",
                r.partition.areas.len(),
                r.partition.spread
            )
        },
    )?;
    let sum: f64 = r.partition.areas.iter().sum();
    ensure((sum - PI / 2.0).abs() <= 1e-5, || {
        format!("partition sum {sum}")
    })
}

fn area_engine() -> Outcome {
    for (s, expect) in [
        (spec("euclid"), PI),
        (NormSpec::square(), 4.0),
        (spec("quad:1,0,4"), PI / 2.0),
    ] {
        let a = total_ball_area(&s, 4096).map_err(|e| e.to_string())?;
        ensure((a - expect).abs() <= 1e-6, || format!("{s}: area {a}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let specs = [
        spec("euclid"),
        spec("quad:2,1,3"),
        NormSpec::square(),
        spec("lp:4"),
    ];
    for i in 0..100 {
        let s = &specs[i % specs.len()];
        let a = rng.gen_range(0.0..TAU);
        let mut cuts = [
            rng.gen_range(0.05..TAU - 0.05),
            rng.gen_range(0.05..TAU - 0.05),
        ];
        cuts.sort_by(f64::total_cmp);
        let (b, c) = (a + cuts[0], a + cuts[1].max(cuts[0] + 1e-3));
        let ab = sector_area(s, a, b, 4096).map_err(|e| e.to_string())?;
        let bc = sector_area(s, b, c, 4096).map_err(|e| e.to_string())?;
        let ac = sector_area(s, a, c, 4096).map_err(|e| e.to_string())?;
        let residual = (ab.value + bc.value - ac.value).abs();
        ensure(residual <= 2.0 * ac.error_estimate, || {
            format!(
                "{s} [{a},{b},{c}]: residual {residual} vs estimate {}",
                ac.error_estimate
            )
        })?;
    }
    Ok(())
}

fn rho_ellipse() -> Outcome {
    let e = spec("euclid");
    let fit = rho_ellipse_at(&e, &natural_param(&e, 0.7), 0.5).map_err(|e| e.to_string())?;
    let c = fit.conic;
    ensure(
        (c.a - 1.0).abs() <= 1e-9 && c.b.abs() <= 1e-9 && (c.c - 1.0).abs() <= 1e-9,
        || format!("euclid fit {c:?}"),
    )?;
    let q = spec("quad:1,0,4");
    let fit = rho_ellipse_at(&q, &natural_param(&q, 0.7), 0.5).map_err(|e| e.to_string())?;
    let c = fit.conic;
    ensure(
        (c.a - 1.0).abs() <= 1e-7 && c.b.abs() <= 1e-7 && (c.c - 4.0).abs() <= 1e-7,
        || format!("quad fit {c:?}"),
    )?;

    let rho = rho_from_kn(1, 5).map_err(|e| e.to_string())?;
    for s in ips_specs() {
        let u = natural_param(&s, 0.3);
        let star = star_map(&s, &u, rho).map_err(|e| e.to_string())?;
        let conic = rho_ellipse_at(&s, &u, rho)
            .map_err(|e| e.to_string())?
            .conic;
        let w = UnitPoint::on_ray(&s, u.coords + star.coords);
        for seed in [u, w] {
            let p = build_polygon(&s, &seed, rho, 2000, 1e-8).map_err(|e| e.to_string())?;
            ensure(p.is_closed(), || format!("{s}: polygon did not close"))?;
            for v in p.points() {
                let val = conic_eval(&conic, v);
                ensure((val - 1.0).abs() <= 1e-7, || {
                    format!("{s}: conic at {v:?} is {val}")
                })?;
            }
        }
        for i in 0..64 {
            let u = natural_param(&s, TAU * i as f64 / 64.0);
            let ok = tangency_star(&s, &u, rho).map_err(|e| e.to_string())?
                && tangency_dstar(&s, &u, rho).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{s}: tangency fails at sample {i}"))?;
        }
    }
    let l4 = spec("lp:4");
    let mut violated = false;
    for i in 0..64 {
        let u = natural_param(&l4, TAU * i as f64 / 64.0);
        let star = tangency_star(&l4, &u, 0.5).map_err(|e| e.to_string())?;
        let dstar = tangency_dstar(&l4, &u, 0.5).map_err(|e| e.to_string())?;
        violated |= !star || !dstar;
    }
    ensure(violated, || {
        "lp:4 satisfies tangency at every sample".into()
    })
}

fn integral_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (s, rho) in [
        (spec("euclid"), 0.5),
        (spec("quad:1,0,4"), (PI / 5.0).cos()),
    ] {
        for _ in 0..3 {
            let a = rng.gen_range(0.0..TAU);
            let b = a + rng.gen_range(0.2..TAU);
            let r = i0_identities(&s, rho, a, b, 4096).map_err(|e| e.to_string())?;
            ensure(r.max() <= 1e-6, || format!("{s} [{a},{b}]: {r:?}"))?;
        }
    }
    Ok(())
}

fn constancy() -> Outcome {
    for s in ips_specs() {
        for rho in [0.5, (PI / 5.0).cos(), 0.8] {
            let mut caps = Vec::new();
            let mut wedges = Vec::new();
            for i in 0..32 {
                let u = natural_param(&s, TAU * i as f64 / 32.0 + 0.05);
                let star = star_map(&s, &u, rho).map_err(|e| e.to_string())?;
                caps.push(cap_area(&s, &u, &star, 4096).map_err(|e| e.to_string())?);
                wedges.push(wedge(u.coords, star.coords));
            }
            ensure(spread(&caps) <= 1e-6, || {
                format!("{s} rho={rho}: cap spread {}", spread(&caps))
            })?;
            ensure(spread(&wedges) <= 1e-8, || {
                format!("{s} rho={rho}: wedge spread {}", spread(&wedges))
            })?;
        }
    }
    Ok(())
}

fn even_n() -> Outcome {
    let e = spec("euclid");
    for n in [4, 6] {
        let ev = even_probe(&e, 1, n, 0.0, 4096).map_err(|e| e.to_string())?;
        let spread = ev.spread.ok_or("no partition measured")?;
        let mismatch = ev.minus_v_mismatch.ok_or("P_{-v} did not close")?;
        ensure(ev.sectors.len() == 2 * n as usize && spread <= 1e-6, || {
            format!("n={n}: {} sectors, spread {spread}", ev.sectors.len())
        })?;
        ensure(mismatch <= 1e-8, || {
            format!("n={n}: P_v vs P_-v mismatch {mismatch}")
        })?;
    }
    Ok(())
}

fn determinism() -> Outcome {
    let specs = [
        spec("euclid"),
        spec("lp:4"),
        NormSpec::square(),
        spec("quad:2,1,3"),
    ];
    let rhos = [0.3, 0.5, 0.8];
    let run = |threads: usize| -> Result<String, String> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(|| sweep(&specs, &rhos, 64, DEFAULT_TOL))
            .and_then(|r| r.to_csv())
            .map_err(|e| e.to_string())
    };
    let first = run(1)?;
    ensure(first == run(1)? && first == run(4)?, || {
        "sweep CSV differs between runs".into()
    })?;

    let q = spec("quad:1,0,4");
    let poly = polygon_from_angle(&q, 0.4, rho_from_kn(3, 7).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let scene = || Scene {
        sphere: vec![sphere_curve(&q, 1.0)],
        polygon: vec![PolyLayer {
            vertices: poly.points(),
            closed: true,
        }],
        ..Scene::default()
    };
    ensure(render_svg(&scene()) == render_svg(&scene()), || {
        "SVG differs between renders".into()
    })
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("inner-product soundness", ips_soundness),
        ("characterization bite", characterization_bite),
        ("l-infinity polygon facts", linf_polygon),
        ("closure classification", closure_classification),
        ("wedge and sector invariants", punto_invariants),
        ("area engine", area_engine),
        ("rho-ellipse", rho_ellipse),
        ("integral identities", integral_identities),
        ("constancy", constancy),
        ("even-n probe", even_n),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why}", i + 1);
                failed.push(*name);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed.len(),
        criteria.len()
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
