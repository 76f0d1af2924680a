//! Batch experiment runner behind the `adialab` binary: validated
//! experiment configurations, a deterministic dispatcher over the geometry
//! modules, and CSV / JSON / markdown emission.

mod emit;
mod run;

pub use emit::{emit_csv, emit_json, emit_report, verdict, CSV_HEADER};
pub use run::{run_experiment, run_suite, RunOutput};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Geometry {
    Torus,
    Heisenberg,
    Sol,
    WeylRef,
}

impl Geometry {
    pub fn as_str(&self) -> &'static str {
        match self {
            Geometry::Torus => "torus",
            Geometry::Heisenberg => "heisenberg",
            Geometry::Sol => "sol",
            Geometry::WeylRef => "weyl-ref",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Counting,
    Heat,
    Symbol,
    Compare,
    Mismatch,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Counting => "counting",
            Mode::Heat => "heat",
            Mode::Symbol => "symbol",
            Mode::Compare => "compare",
            Mode::Mismatch => "mismatch",
        }
    }
}

/// Named irrational slopes: the rational/irrational branch choice is
/// semantic, so irrational slopes are requested by name rather than sniffed
/// from a float.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NamedIrrational {
    Sqrt2,
    Golden,
}

impl NamedIrrational {
    pub fn value(&self) -> f64 {
        match self {
            NamedIrrational::Sqrt2 => std::f64::consts::SQRT_2,
            NamedIrrational::Golden => (1.0 + 5.0f64.sqrt()) / 2.0,
        }
    }
}

/// One experiment: a geometry, a mode, parameter block, and the eps/t/lambda
/// grids. Serializable as the JSON config-file format; CLI flags mirror
/// every field and override file values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub geometry: Geometry,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_named: Option<NamedIrrational>,
    /// Reduced fraction `(p, q)` declaring a rational slope `p/q`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rational: Option<(i64, u64)>,
    /// Sol gluing matrix, row major.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<[[i64; 2]; 2]>,
    /// Mathieu potential amplitude.
    #[serde(default = "default_one")]
    pub a: f64,
    /// Mathieu potential rate.
    #[serde(default = "default_one")]
    pub mu: f64,
    #[serde(default)]
    pub eps: Vec<f64>,
    #[serde(default)]
    pub t: Vec<f64>,
    #[serde(default)]
    pub lambda: Vec<f64>,
    /// Overrides every per-check default tolerance when set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_csv: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_json: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<String>,
}

fn default_one() -> f64 {
    1.0
}

impl ExperimentConfig {
    pub fn new(geometry: Geometry, mode: Mode) -> Self {
        ExperimentConfig {
            geometry,
            mode,
            alpha: None,
            alpha_named: None,
            rational: None,
            matrix: None,
            a: 1.0,
            mu: 1.0,
            eps: Vec::new(),
            t: Vec::new(),
            lambda: Vec::new(),
            tol: None,
            out_csv: None,
            out_json: None,
            report: None,
        }
    }
}

/// A configuration problem; the binary maps this to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Resolved slope declaration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedAlpha {
    pub value: f64,
    pub rational: Option<(i64, u64)>,
    /// Declared irrational either by name or by plain `--alpha` value.
    pub declared_irrational: bool,
}

pub(crate) fn resolve_alpha(config: &ExperimentConfig) -> Result<ResolvedAlpha, ConfigError> {
    match (config.alpha_named, config.rational, config.alpha) {
        (Some(named), None, maybe) => {
            if let Some(v) = maybe {
                if (v - named.value()).abs() > 1e-12 {
                    return Err(ConfigError(format!(
                        "alpha = {v} contradicts the named irrational value {}",
                        named.value()
                    )));
                }
            }
            Ok(ResolvedAlpha {
                value: named.value(),
                rational: None,
                declared_irrational: true,
            })
        }
        (None, Some((p, q)), maybe) => {
            if q == 0 {
                return Err(ConfigError("rational denominator must be >= 1".into()));
            }
            let v = p as f64 / q as f64;
            if let Some(explicit) = maybe {
                if (explicit - v).abs() > 1e-12 {
                    return Err(ConfigError(format!(
                        "alpha = {explicit} contradicts rational {p}/{q} = {v}"
                    )));
                }
            }
            Ok(ResolvedAlpha { value: v, rational: Some((p, q)), declared_irrational: false })
        }
        (None, None, Some(v)) => Ok(ResolvedAlpha {
            value: v,
            rational: None,
            declared_irrational: true,
        }),
        (None, None, None) => Err(ConfigError(
            "missing slope: supply alpha, alpha_named, or rational".into(),
        )),
        (Some(_), Some(_), _) => Err(ConfigError(
            "alpha_named and rational are mutually exclusive".into(),
        )),
    }
}

/// The fixed geometry/mode compatibility table.
pub fn mode_supported(geometry: Geometry, mode: Mode) -> bool {
    use Geometry::*;
    use Mode::*;
    matches!(
        (geometry, mode),
        (Torus, Counting)
            | (Torus, Heat)
            | (Torus, Symbol)
            | (Torus, Compare)
            | (Heisenberg, Symbol)
            | (Heisenberg, Compare)
            | (Sol, Counting)
            | (Sol, Symbol)
            | (Sol, Compare)
            | (Sol, Mismatch)
            | (WeylRef, Counting)
            | (WeylRef, Heat)
            | (WeylRef, Symbol)
            | (WeylRef, Compare)
    )
}

fn positive_list(name: &str, values: &[f64]) -> Result<(), ConfigError> {
    for &v in values {
        if !(v > 0.0) {
            return Err(ConfigError(format!("{name} must be positive, got {v}")));
        }
    }
    Ok(())
}

fn nonempty(name: &str, values: &[f64]) -> Result<(), ConfigError> {
    if values.is_empty() {
        return Err(ConfigError(format!("{name} list must not be empty for this mode")));
    }
    Ok(())
}

/// Validate a configuration against the compatibility table and the
/// per-mode input requirements.
pub fn validate(config: &ExperimentConfig) -> Result<(), ConfigError> {
    if !mode_supported(config.geometry, config.mode) {
        return Err(ConfigError(format!(
            "mode {} is not supported for geometry {}",
            config.mode.as_str(),
            config.geometry.as_str()
        )));
    }
    positive_list("eps", &config.eps)?;
    positive_list("t", &config.t)?;
    if !(config.a > 0.0) {
        return Err(ConfigError(format!("a must be positive, got {}", config.a)));
    }
    if !(config.mu > 0.0) {
        return Err(ConfigError(format!("mu must be positive, got {}", config.mu)));
    }
    if let Some(tol) = config.tol {
        if !(tol > 0.0) {
            return Err(ConfigError(format!("tol must be positive, got {tol}")));
        }
    }

    use Geometry::*;
    use Mode::*;
    match (config.geometry, config.mode) {
        (Torus, Counting) => {
            resolve_alpha(config)?;
            nonempty("eps", &config.eps)?;
            nonempty("lambda", &config.lambda)?;
        }
        (Torus, Heat) | (Torus, Compare) => {
            let alpha = resolve_alpha(config)?;
            if alpha.rational.is_some() {
                return Err(ConfigError(format!(
                    "{} mode requires a declared-irrational slope (the 1/(4 pi t eps) \
                     prediction is the irrational branch); use counting mode for rational slopes",
                    config.mode.as_str()
                )));
            }
            nonempty("eps", &config.eps)?;
            nonempty("t", &config.t)?;
        }
        (Torus, Symbol) | (Heisenberg, Symbol) => {
            nonempty("t", &config.t)?;
        }
        (Heisenberg, Compare) => {
            nonempty("t", &config.t)?;
            nonempty("eps", &config.eps)?;
        }
        (Sol, Counting) => {
            nonempty("eps", &config.eps)?;
            nonempty("lambda", &config.lambda)?;
            for &l in &config.lambda {
                if !(l > config.a) {
                    return Err(ConfigError(format!(
                        "lambda = {l} must exceed the potential floor a = {}",
                        config.a
                    )));
                }
            }
        }
        (Sol, Symbol) => {
            resolve_alpha(config)?;
            nonempty("t", &config.t)?;
        }
        (Sol, Compare) => {
            if config.alpha.is_some() || config.alpha_named.is_some() || config.rational.is_some()
            {
                let alpha = resolve_alpha(config)?;
                if alpha.value != 0.0 {
                    return Err(ConfigError(
                        "sol compare verifies the alpha = 0 (Riemannian) branch; \
                         alpha must be 0 or omitted"
                            .into(),
                    ));
                }
            }
            nonempty("t", &config.t)?;
        }
        (Sol, Mismatch) => {
            let alpha = resolve_alpha(config)?;
            if alpha.value == 0.0 {
                return Err(ConfigError(
                    "mismatch mode requires alpha != 0 (the alpha = 0 branch satisfies the \
                     prediction exactly; see sol compare mode)"
                        .into(),
                ));
            }
            nonempty("t", &config.t)?;
            nonempty("eps", &config.eps)?;
        }
        (WeylRef, Counting) => {
            nonempty("eps", &config.eps)?;
            nonempty("lambda", &config.lambda)?;
        }
        (WeylRef, Heat) | (WeylRef, Compare) => {
            nonempty("eps", &config.eps)?;
            nonempty("t", &config.t)?;
        }
        (WeylRef, Symbol) => {
            nonempty("t", &config.t)?;
        }
        _ => unreachable!("compatibility table already filtered"),
    }
    Ok(())
}

/// One comparison between an observed and a predicted quantity.
///
/// `pass` means `|ratio - 1| <= tolerance` for agreement checks; for bound
/// checks (the Sol mismatch family) it means `0 < ratio < tolerance`, with
/// the tolerance holding the declared bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub observed: f64,
    pub predicted: f64,
    pub ratio: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub provenance: String,
    #[serde(skip)]
    pub section: &'static str,
}

impl CheckResult {
    pub fn agreement(
        section: &'static str,
        name: impl Into<String>,
        observed: f64,
        predicted: f64,
        tolerance: f64,
        provenance: impl Into<String>,
    ) -> Self {
        let ratio = observed / predicted;
        CheckResult {
            name: name.into(),
            observed,
            predicted,
            ratio,
            tolerance,
            pass: (ratio - 1.0).abs() <= tolerance,
            provenance: provenance.into(),
            section,
        }
    }

    pub fn upper_bound(
        section: &'static str,
        name: impl Into<String>,
        observed: f64,
        predicted: f64,
        bound: f64,
        provenance: impl Into<String>,
    ) -> Self {
        let ratio = observed / predicted;
        CheckResult {
            name: name.into(),
            observed,
            predicted,
            ratio,
            tolerance: bound,
            pass: ratio > 0.0 && ratio < bound,
            provenance: provenance.into(),
            section,
        }
    }

    /// A check that could not be computed: recorded as failed.
    pub fn failed(
        section: &'static str,
        name: impl Into<String>,
        tolerance: f64,
        provenance: impl Into<String>,
    ) -> Self {
        CheckResult {
            name: name.into(),
            observed: f64::NAN,
            predicted: f64::NAN,
            ratio: f64::NAN,
            tolerance,
            pass: false,
            provenance: provenance.into(),
            section,
        }
    }
}

/// One CSV data row; columns fixed as
/// `geometry, mode, alpha, rational_p, rational_q, epsilon, t, lambda,
/// observed, predicted, ratio, tolerance, pass, provenance`.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub geometry: &'static str,
    pub mode: &'static str,
    pub alpha: Option<f64>,
    pub rational_p: Option<i64>,
    pub rational_q: Option<u64>,
    pub epsilon: Option<f64>,
    pub t: Option<f64>,
    pub lambda: Option<f64>,
    pub observed: f64,
    pub predicted: f64,
    pub ratio: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub provenance: String,
}

/// One power-law fit attached to a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitSummary {
    pub name: String,
    pub coefficient: f64,
    pub exponent: f64,
    pub residual: f64,
}
