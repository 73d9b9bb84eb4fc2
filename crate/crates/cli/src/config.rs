use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use rho_planes::polygon::rho_from_kn;
use rho_planes::NormSpec;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Svg,
}

/// Flags shared by every command. Any of them may also come from a JSON
/// config file; flags win.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Norm spec: euclid | lp:<p> | quad:a,b,c | poly:x1,y1;x2,y2;... (repeat for sweep)
    #[arg(long)]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub spec: Vec<String>,
    /// Support ratio in (0, 1) (repeat for sweep)
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rho: Vec<f64>,
    /// Support ratio as k,n, resolved to cos(k*pi/n) (repeat for sweep)
    #[arg(long)]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub kn: Vec<String>,
    /// Polar angle of the seed point
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Pass threshold for the midpoint deviation
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    /// Sector start angle for `area`
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Sector end angle for `area`
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    /// Draw the rho-ellipse through u, (u+u*)/2rho and u*
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub show_ellipse: bool,
    /// Polygon JSON written by `polygon`, to re-render
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from_json: Option<PathBuf>,
    /// JSON file with defaults for any of these flags
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl RunConfig {
    /// `self` over `base`, field by field.
    pub fn over(self, base: RunConfig) -> RunConfig {
        fn list<T>(a: Vec<T>, b: Vec<T>) -> Vec<T> {
            if a.is_empty() {
                b
            } else {
                a
            }
        }
        RunConfig {
            spec: list(self.spec, base.spec),
            rho: list(self.rho, base.rho),
            kn: list(self.kn, base.kn),
            seed: self.seed.or(base.seed),
            samples: self.samples.or(base.samples),
            tol: self.tol.or(base.tol),
            alpha: self.alpha.or(base.alpha),
            beta: self.beta.or(base.beta),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
            show_ellipse: self.show_ellipse || base.show_ellipse,
            from_json: self.from_json.or(base.from_json),
            config: self.config,
        }
    }

    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("bad config {}: {e}", path.display())))
    }

    /// Flags merged over the config file named by `--config`, if any.
    pub fn merged(self) -> Result<RunConfig, CliError> {
        match &self.config {
            Some(path) => {
                let base = RunConfig::load(path)?;
                Ok(self.over(base))
            }
            None => Ok(self),
        }
    }

    pub fn specs(&self) -> Result<Vec<NormSpec>, CliError> {
        self.spec
            .iter()
            .map(|s| {
                s.parse::<NormSpec>()
                    .map_err(|e| CliError::usage(e.to_string()))
            })
            .collect()
    }

    pub fn one_spec(&self) -> Result<NormSpec, CliError> {
        match self.specs()?.as_slice() {
            [s] => Ok(s.clone()),
            [] => Err(CliError::usage("--spec is required")),
            _ => Err(CliError::usage("this command takes exactly one --spec")),
        }
    }

    /// Every `--rho` followed by every resolved `--kn`.
    pub fn rhos(&self) -> Result<Vec<f64>, CliError> {
        let mut out = Vec::new();
        for &r in &self.rho {
            if !(r > 0.0 && r < 1.0) {
                return Err(CliError::usage(format!("rho must lie in (0, 1), got {r}")));
            }
            out.push(r);
        }
        for kn in &self.kn {
            let (k, n) = parse_kn(kn)?;
            out.push(rho_from_kn(k, n)?);
        }
        Ok(out)
    }

    pub fn one_rho(&self) -> Result<f64, CliError> {
        match self.rhos()?.as_slice() {
            [r] => Ok(*r),
            [] => Err(CliError::usage("give --rho or --kn")),
            _ => Err(CliError::usage(
                "this command takes exactly one of --rho or --kn",
            )),
        }
    }

    pub fn seed(&self) -> Result<f64, CliError> {
        let s = self.seed.unwrap_or(0.0);
        if s.is_finite() {
            Ok(s)
        } else {
            Err(CliError::usage("--seed must be finite"))
        }
    }

    pub fn samples_or(&self, default: usize, min: usize) -> Result<usize, CliError> {
        let n = self.samples.unwrap_or(default);
        if n < min {
            return Err(CliError::usage(format!(
                "--samples must be at least {min}, got {n}"
            )));
        }
        Ok(n)
    }

    pub fn tol_or(&self, default: f64) -> Result<f64, CliError> {
        let t = self.tol.unwrap_or(default);
        if t >= 0.0 && t.is_finite() {
            Ok(t)
        } else {
            Err(CliError::usage(format!(
                "--tol must be a nonnegative number, got {t}"
            )))
        }
    }

    /// Explicit `--format`, else the `--out` extension, else `default`.
    pub fn format_or(&self, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
        let inferred = self
            .out
            .as_ref()
            .and_then(|p| p.extension())
            .and_then(|e| e.to_str())
            .and_then(|e| match e.to_ascii_lowercase().as_str() {
                "json" => Some(Format::Json),
                "csv" => Some(Format::Csv),
                "svg" => Some(Format::Svg),
                _ => None,
            });
        let f = self.format.or(inferred).unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(CliError::usage(format!(
                "format {f:?} is not available for this command"
            )))
        }
    }
}

pub fn parse_kn(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || {
        CliError::usage(format!(
            "--kn expects k,n with positive integers, got {s:?}"
        ))
    };
    let (k, n) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        k.trim().parse().map_err(|_| bad())?,
        n.trim().parse().map_err(|_| bad())?,
    ))
}
