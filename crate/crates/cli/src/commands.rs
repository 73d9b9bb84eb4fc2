use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use rho_planes::area::{cap_area, sector_area, total_ball_area, DEFAULT_SAMPLES};
use rho_planes::chord::star_map;
use rho_planes::ellipse::{fit_rho_ellipse, tangency_report};
use rho_planes::lab::{check_p_rho_s, even_probe, sweep, SweepReport, SweepRow, DEFAULT_TOL};
use rho_planes::polygon::{classify, polygon_from_angle, PolygonRecord};
use rho_planes::svg::render_svg;
use rho_planes::{natural_param, wedge, NormSpec};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{parse_kn, Format, RunConfig};
use crate::error::CliError;
use crate::scene::{base_scene, polygon_scene};

/// Environment variable that, when set, drops timestamps from reports.
pub const SEED_ENV: &str = "RHO_PLANES_SEED";

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    PropertyFailure,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::PropertyFailure => 1,
        }
    }
}

/// The effective configuration echoed into every output.
#[derive(Serialize)]
struct Provenance<'a> {
    command: &'a str,
    settings: RunConfig,
    resolved_rho: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at: Option<u64>,
}

struct Run {
    command: &'static str,
    cfg: RunConfig,
}

impl Run {
    fn provenance(&self, resolved_rho: Vec<f64>) -> String {
        let generated_at = match std::env::var_os(SEED_ENV) {
            Some(_) => None,
            None => SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .ok()
                .map(|d| d.as_secs()),
        };
        let settings = RunConfig {
            out: None,
            config: None,
            ..self.cfg.clone()
        };
        let p = Provenance {
            command: self.command,
            settings,
            resolved_rho,
            generated_at,
        };
        serde_json::to_string(&p).expect("config serializes")
    }

    fn json<T: Serialize>(
        &self,
        rho: Vec<f64>,
        key: &str,
        payload: &T,
    ) -> Result<String, CliError> {
        let config: Value = serde_json::from_str(&self.provenance(rho)).expect("valid json");
        let doc = json!({ "config": config, key: payload });
        Ok(serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))? + "\n")
    }

    fn csv(&self, rho: Vec<f64>, body: String) -> String {
        format!("# config: {}\n{body}", self.provenance(rho))
    }

    fn svg(&self, rho: Vec<f64>, mut scene: rho_planes::svg::Scene) -> String {
        scene.comment = Some(format!("config: {}", self.provenance(rho)));
        render_svg(&scene)
    }

    /// Writes to `--out` through a temporary file, or to stdout.
    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.cfg.out {
            Some(path) => write_atomic(path, text),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                Ok(out.flush()?)
            }
        }
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        CliError::from(e)
    })
}

pub fn check(cfg: RunConfig) -> Result<Outcome, CliError> {
    let run = Run {
        command: "check",
        cfg,
    };
    let spec = run.cfg.one_spec()?;
    let rho = run.cfg.one_rho()?;
    let samples = run.cfg.samples_or(256, 8)?;
    let tol = run.cfg.tol_or(DEFAULT_TOL)?;
    let format = run
        .cfg
        .format_or(Format::Json, &[Format::Json, Format::Csv])?;
    let report = check_p_rho_s(&spec, rho, samples, tol)?;
    let failed = spec.is_inner_product() && !report.pass;
    let text = match format {
        Format::Csv => {
            let table = SweepReport {
                samples,
                tol,
                rows: vec![SweepRow {
                    spec: spec.to_string(),
                    rho,
                    inner_product: spec.is_inner_product(),
                    report: Some(report),
                    error: None,
                }],
            };
            run.csv(vec![rho], table.to_csv()?)
        }
        _ => run.json(vec![rho], "report", &report)?,
    };
    run.emit(&text)?;
    Ok(if failed {
        Outcome::PropertyFailure
    } else {
        Outcome::Ok
    })
}

pub fn polygon(cfg: RunConfig) -> Result<Outcome, CliError> {
    let run = Run {
        command: "polygon",
        cfg,
    };
    let spec = run.cfg.one_spec()?;
    let rho = run.cfg.one_rho()?;
    let seed = run.cfg.seed()?;
    let format = run
        .cfg
        .format_or(Format::Json, &[Format::Json, Format::Svg])?;
    let poly = polygon_from_angle(&spec, seed, rho)?;
    let record = PolygonRecord::new(&spec, &poly);
    let text = match format {
        Format::Svg => run.svg(vec![rho], polygon_scene(&record, run.cfg.show_ellipse)?),
        _ => {
            let shape = classify(&poly).ok();
            let mut payload = serde_json::to_value(&record).expect("record serializes");
            payload["classification"] = json!(shape);
            run.json(vec![rho], "polygon", &payload)?
        }
    };
    run.emit(&text)?;
    Ok(Outcome::Ok)
}

fn read_record(path: &Path) -> Result<PolygonRecord, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("bad polygon json {}: {e}", path.display())))?;
    let inner = value.get("polygon").cloned().unwrap_or(value);
    serde_json::from_value(inner)
        .map_err(|e| CliError::usage(format!("bad polygon json {}: {e}", path.display())))
}

pub fn render(cfg: RunConfig) -> Result<Outcome, CliError> {
    let run = Run {
        command: "render",
        cfg,
    };
    run.cfg.format_or(Format::Svg, &[Format::Svg])?;
    let record = match &run.cfg.from_json {
        Some(path) => {
            if !run.cfg.spec.is_empty() || !run.cfg.rho.is_empty() || !run.cfg.kn.is_empty() {
                return Err(CliError::usage(
                    "--from-json cannot be combined with --spec, --rho or --kn",
                ));
            }
            read_record(path)?
        }
        None => {
            let spec = run.cfg.one_spec()?;
            let rho = run.cfg.one_rho()?;
            let seed = run.cfg.seed()?;
            PolygonRecord::new(&spec, &polygon_from_angle(&spec, seed, rho)?)
        }
    };
    let scene = polygon_scene(&record, run.cfg.show_ellipse)?;
    run.emit(&run.svg(vec![record.rho], scene))?;
    Ok(Outcome::Ok)
}

pub fn ellipse(cfg: RunConfig) -> Result<Outcome, CliError> {
    let run = Run {
        command: "ellipse",
        cfg,
    };
    let spec = run.cfg.one_spec()?;
    let rho = run.cfg.one_rho()?;
    let seed = run.cfg.seed()?;
    let format = run
        .cfg
        .format_or(Format::Json, &[Format::Json, Format::Svg])?;
    let u = natural_param(&spec, seed);
    let text = match format {
        Format::Svg => run.svg(vec![rho], base_scene(&spec, rho, Some(&u))?),
        _ => {
            let star = star_map(&spec, &u, rho)?;
            let fit = fit_rho_ellipse(&u, &star, rho)?;
            let payload = json!({
                "spec": spec.to_string(),
                "rho": rho,
                "u": u,
                "u_star": star,
                "w": (0.5 / rho) * (u.coords + star.coords),
                "fit": fit,
                "tangency": tangency_report(&spec, &u, rho)?,
            });
            run.json(vec![rho], "ellipse", &payload)?
        }
    };
    run.emit(&text)?;
    Ok(Outcome::Ok)
}

pub fn area(cfg: RunConfig) -> Result<Outcome, CliError> {
    let run = Run {
        command: "area",
        cfg,
    };
    let spec = run.cfg.one_spec()?;
    let samples = run.cfg.samples_or(DEFAULT_SAMPLES, 16)?;
    run.cfg.format_or(Format::Json, &[Format::Json])?;
    let range = match (run.cfg.alpha, run.cfg.beta) {
        (Some(a), Some(b)) => Some((a, b)),
        (None, None) => None,
        _ => return Err(CliError::usage("--alpha and --beta go together")),
    };
    let total = total_ball_area(&spec, samples)?;
    let mut payload = json!({ "spec": spec.to_string(), "samples": samples, "total": total });
    if let Some((a, b)) = range {
        payload["sector"] = json!(sector_area(&spec, a, b, samples)?);
        let (u, v) = (natural_param(&spec, a), natural_param(&spec, b));
        if wedge(u.coords, v.coords) > 0.0 && b - a < std::f64::consts::PI {
            payload["cap"] = json!(cap_area(&spec, &u, &v, samples)?);
        }
    }
    run.emit(&run.json(Vec::new(), "area", &payload)?)?;
    Ok(Outcome::Ok)
}

pub fn sweep_cmd(cfg: RunConfig) -> Result<Outcome, CliError> {
    let run = Run {
        command: "sweep",
        cfg,
    };
    let specs: Vec<NormSpec> = run.cfg.specs()?;
    let rhos = run.cfg.rhos()?;
    if specs.is_empty() || rhos.is_empty() {
        return Err(CliError::usage(
            "sweep needs at least one --spec and one --rho or --kn",
        ));
    }
    let samples = run.cfg.samples_or(256, 8)?;
    let tol = run.cfg.tol_or(DEFAULT_TOL)?;
    let format = run
        .cfg
        .format_or(Format::Csv, &[Format::Csv, Format::Json])?;
    let report = sweep(&specs, &rhos, samples, tol)?;
    let text = match format {
        Format::Csv => run.csv(rhos.clone(), report.to_csv()?),
        _ => run.json(rhos.clone(), "sweep", &report)?,
    };
    run.emit(&text)?;
    Ok(if report.ips_failure() {
        Outcome::PropertyFailure
    } else {
        Outcome::Ok
    })
}

pub fn probe_even(cfg: RunConfig) -> Result<Outcome, CliError> {
    let run = Run {
        command: "probe-even",
        cfg,
    };
    let spec = run.cfg.one_spec()?;
    if !run.cfg.rho.is_empty() {
        return Err(CliError::usage("probe-even takes --kn k,n, not --rho"));
    }
    let (k, n) = match run.cfg.kn.as_slice() {
        [kn] => parse_kn(kn)?,
        _ => return Err(CliError::usage("probe-even needs exactly one --kn k,n")),
    };
    let seed = run.cfg.seed()?;
    let samples = run.cfg.samples_or(DEFAULT_SAMPLES, 16)?;
    run.cfg.format_or(Format::Json, &[Format::Json])?;
    let evidence = even_probe(&spec, k, n, seed, samples)?;
    run.emit(&run.json(vec![evidence.rho], "evidence", &evidence)?)?;
    Ok(Outcome::Ok)
}
