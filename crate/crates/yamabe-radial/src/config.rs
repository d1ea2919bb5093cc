//! Run configuration: flat `section.key = value` lines with `#` comments.
//! Every module-level invariant is re-validated at parse time, and a parsed
//! configuration serializes back to an equivalent file (round-trip identity
//! on the validated structure).

use crate::coeffs::{CoefficientField, EvenPolynomial};
use crate::error::{Error, Result};
use crate::geometry::RadialManifold;
use crate::special;

/// γ selection: `auto` resolves to 2·∫f|h|^{2♯} dv_g when φ ≠ 0 and to 1
/// when φ = 0 (any positive value is admissible in the homogeneous case).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaChoice {
    Auto,
    Value(f64),
}

/// Subcritical exponent for single solves: `auto` resolves to 2♯ - 0.1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QChoice {
    Auto,
    Value(f64),
}

/// Continuation schedule: `default` is {2♯-0.5, 2♯-0.25, 2♯-0.1, 2♯-0.05,
/// 2♯-0.01, 2♯}.
#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleChoice {
    Default,
    List(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaChoice {
    Default,
    Value(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum EpsilonChoice {
    Default,
    List(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub manifold: RadialManifold,
    pub coeffs: CoefficientField,
    /// Boundary values, one per boundary sphere (1 for a ball, 2 for an annulus).
    pub phi: Vec<f64>,
    pub gamma: GammaChoice,
    pub q: QChoice,
    pub q_schedule: ScheduleChoice,
    pub mesh_n: usize,
    pub tol: f64,
    pub max_iters: usize,
    pub restarts: u32,
    pub seed: u64,
    pub delta: DeltaChoice,
    pub epsilons: EpsilonChoice,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs: Vec<(usize, String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {}: expected 'key = value', got '{raw}'",
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            if pairs.iter().any(|(_, k, _)| *k == key) {
                return Err(Error::Config(format!("line {}: duplicate key '{key}'", lineno + 1)));
            }
            pairs.push((lineno + 1, key, value.trim().to_string()));
        }

        let lookup = |key: &str| -> Option<(usize, &str)> {
            pairs
                .iter()
                .find(|(_, k, _)| k == key)
                .map(|(l, _, v)| (*l, v.as_str()))
        };

        let known = [
            "manifold.n",
            "manifold.kappa",
            "manifold.r_min",
            "manifold.r_max",
            "coefficients.a",
            "coefficients.b",
            "coefficients.f",
            "boundary.phi",
            "solver.gamma",
            "solver.q",
            "solver.q_schedule",
            "solver.mesh_n",
            "solver.tol",
            "solver.max_iters",
            "solver.restarts",
            "solver.seed",
            "bubble.delta",
            "bubble.epsilons",
        ];
        for (lineno, key, _) in &pairs {
            if !known.contains(&key.as_str()) {
                return Err(Error::Config(format!("line {lineno}: unknown key '{key}'")));
            }
        }

        let n: u32 = require_scalar(lookup("manifold.n"), "manifold.n")?;
        let r_max: f64 = require_scalar(lookup("manifold.r_max"), "manifold.r_max")?;
        let kappa: f64 = optional_scalar(lookup("manifold.kappa"), "manifold.kappa")?.unwrap_or(0.0);
        let r_min: f64 = optional_scalar(lookup("manifold.r_min"), "manifold.r_min")?.unwrap_or(0.0);
        let manifold = RadialManifold::new(n, kappa, r_min, r_max)
            .map_err(|e| Error::Config(format!("manifold block: {e}")))?;

        let poly = |key: &str, default: f64| -> Result<EvenPolynomial> {
            match lookup(key) {
                None => Ok(EvenPolynomial::constant(default)),
                Some((lineno, v)) => {
                    let coeffs = parse_list(v)
                        .map_err(|e| Error::Config(format!("line {lineno}: {key}: {e}")))?;
                    if coeffs.is_empty() || coeffs.len() > 3 {
                        return Err(Error::Config(format!(
                            "line {lineno}: {key}: expected 1..3 coefficients (1, r², r⁴)"
                        )));
                    }
                    Ok(EvenPolynomial::new(coeffs))
                }
            }
        };
        let coeffs = CoefficientField::new(
            poly("coefficients.a", 1.0)?,
            poly("coefficients.b", 0.0)?,
            poly("coefficients.f", 1.0)?,
        );
        coeffs
            .check_positivity(manifold.r_min, manifold.r_max)
            .map_err(|e| Error::Config(format!("coefficients block: {e}")))?;

        let phi = match lookup("boundary.phi") {
            None => vec![0.0; manifold.boundary_components()],
            Some((lineno, v)) => {
                let values = parse_list(v)
                    .map_err(|e| Error::Config(format!("line {lineno}: boundary.phi: {e}")))?;
                if values.len() != manifold.boundary_components() {
                    return Err(Error::Config(format!(
                        "line {lineno}: boundary.phi: expected {} value(s) for this geometry, got {}",
                        manifold.boundary_components(),
                        values.len()
                    )));
                }
                values
            }
        };

        let gamma = match lookup("solver.gamma") {
            None => GammaChoice::Auto,
            Some((_, "auto")) => GammaChoice::Auto,
            Some((lineno, v)) => {
                let g: f64 = parse_scalar(v)
                    .map_err(|e| Error::Config(format!("line {lineno}: solver.gamma: {e}")))?;
                if !(g > 0.0) {
                    return Err(Error::Config(format!(
                        "line {lineno}: solver.gamma must be positive, got {g}"
                    )));
                }
                GammaChoice::Value(g)
            }
        };

        let two_sharp = special::critical_exponent(n);
        let q = match lookup("solver.q") {
            None => QChoice::Auto,
            Some((_, "auto")) => QChoice::Auto,
            Some((lineno, v)) => {
                let q: f64 = parse_scalar(v)
                    .map_err(|e| Error::Config(format!("line {lineno}: solver.q: {e}")))?;
                if !(q > 2.0) || q > two_sharp + 1e-12 {
                    return Err(Error::Config(format!(
                        "line {lineno}: solver.q = {q} outside (2, 2♯ = {two_sharp}]"
                    )));
                }
                QChoice::Value(q)
            }
        };

        let q_schedule = match lookup("solver.q_schedule") {
            None => ScheduleChoice::Default,
            Some((_, "default")) => ScheduleChoice::Default,
            Some((lineno, v)) => {
                let list = parse_list(v)
                    .map_err(|e| Error::Config(format!("line {lineno}: solver.q_schedule: {e}")))?;
                if list.windows(2).any(|w| !(w[1] > w[0])) {
                    return Err(Error::Config(format!(
                        "line {lineno}: solver.q_schedule must be strictly increasing"
                    )));
                }
                if list.is_empty() || (list.last().unwrap() - two_sharp).abs() > 1e-10 {
                    return Err(Error::Config(format!(
                        "line {lineno}: solver.q_schedule must end at 2♯ = {two_sharp}"
                    )));
                }
                if list.iter().any(|&q| !(q > 2.0)) {
                    return Err(Error::Config(format!(
                        "line {lineno}: solver.q_schedule entries must exceed 2"
                    )));
                }
                ScheduleChoice::List(list)
            }
        };

        let mesh_n: usize = optional_scalar(lookup("solver.mesh_n"), "solver.mesh_n")?.unwrap_or(400);
        if mesh_n < crate::mesh::MIN_ELEMENTS {
            return Err(Error::Config(format!(
                "solver.mesh_n must be at least {}, got {mesh_n}",
                crate::mesh::MIN_ELEMENTS
            )));
        }
        let tol: f64 = optional_scalar(lookup("solver.tol"), "solver.tol")?.unwrap_or(1e-9);
        if !(tol > 0.0) {
            return Err(Error::Config(format!("solver.tol must be positive, got {tol}")));
        }
        let max_iters: usize = optional_scalar(lookup("solver.max_iters"), "solver.max_iters")?.unwrap_or(200_000);
        let restarts: u32 = optional_scalar(lookup("solver.restarts"), "solver.restarts")?.unwrap_or(0);
        let seed: u64 = optional_scalar(lookup("solver.seed"), "solver.seed")?.unwrap_or(0);

        let delta = match lookup("bubble.delta") {
            None => DeltaChoice::Default,
            Some((_, "default")) => DeltaChoice::Default,
            Some((lineno, v)) => {
                let d: f64 = parse_scalar(v)
                    .map_err(|e| Error::Config(format!("line {lineno}: bubble.delta: {e}")))?;
                if !(d > 0.0) || 2.0 * d >= manifold.r_max {
                    return Err(Error::Config(format!(
                        "line {lineno}: bubble.delta must satisfy 0 < 2δ < r_max"
                    )));
                }
                DeltaChoice::Value(d)
            }
        };

        let epsilons = match lookup("bubble.epsilons") {
            None => EpsilonChoice::Default,
            Some((_, "default")) => EpsilonChoice::Default,
            Some((lineno, v)) => {
                let list = parse_list(v)
                    .map_err(|e| Error::Config(format!("line {lineno}: bubble.epsilons: {e}")))?;
                if list.windows(2).any(|w| !(w[1] < w[0])) || list.iter().any(|&e| !(e > 0.0)) {
                    return Err(Error::Config(format!(
                        "line {lineno}: bubble.epsilons must be positive and strictly decreasing"
                    )));
                }
                EpsilonChoice::List(list)
            }
        };

        Ok(RunConfig {
            manifold,
            coeffs,
            phi,
            gamma,
            q,
            q_schedule,
            mesh_n,
            tol,
            max_iters,
            restarts,
            seed,
            delta,
            epsilons,
        })
    }

    pub fn parse_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Serialize to the same flat key-value format; `parse(serialize(c)) == c`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        kv("manifold.n", self.manifold.n.to_string());
        kv("manifold.kappa", fmt_f64(self.manifold.kappa));
        kv("manifold.r_min", fmt_f64(self.manifold.r_min));
        kv("manifold.r_max", fmt_f64(self.manifold.r_max));
        kv("coefficients.a", fmt_list(&self.coeffs.a.coeffs));
        kv("coefficients.b", fmt_list(&self.coeffs.b.coeffs));
        kv("coefficients.f", fmt_list(&self.coeffs.f.coeffs));
        kv("boundary.phi", fmt_list(&self.phi));
        kv(
            "solver.gamma",
            match self.gamma {
                GammaChoice::Auto => "auto".into(),
                GammaChoice::Value(g) => fmt_f64(g),
            },
        );
        kv(
            "solver.q",
            match self.q {
                QChoice::Auto => "auto".into(),
                QChoice::Value(q) => fmt_f64(q),
            },
        );
        kv(
            "solver.q_schedule",
            match &self.q_schedule {
                ScheduleChoice::Default => "default".into(),
                ScheduleChoice::List(l) => fmt_list(l),
            },
        );
        kv("solver.mesh_n", self.mesh_n.to_string());
        kv("solver.tol", fmt_f64(self.tol));
        kv("solver.max_iters", self.max_iters.to_string());
        kv("solver.restarts", self.restarts.to_string());
        kv("solver.seed", self.seed.to_string());
        kv(
            "bubble.delta",
            match self.delta {
                DeltaChoice::Default => "default".into(),
                DeltaChoice::Value(d) => fmt_f64(d),
            },
        );
        kv(
            "bubble.epsilons",
            match &self.epsilons {
                EpsilonChoice::Default => "default".into(),
                EpsilonChoice::List(l) => fmt_list(l),
            },
        );
        out
    }

    /// Resolved subcritical exponent for single solves.
    pub fn resolve_q(&self) -> f64 {
        match self.q {
            QChoice::Value(q) => q,
            QChoice::Auto => special::critical_exponent(self.manifold.n) - 0.1,
        }
    }

    /// Resolved continuation schedule.
    pub fn resolve_schedule(&self) -> Vec<f64> {
        match &self.q_schedule {
            ScheduleChoice::List(l) => l.clone(),
            ScheduleChoice::Default => {
                let ts = special::critical_exponent(self.manifold.n);
                vec![ts - 0.5, ts - 0.25, ts - 0.1, ts - 0.05, ts - 0.01, ts]
            }
        }
    }

    pub fn resolve_delta(&self) -> f64 {
        match self.delta {
            DeltaChoice::Value(d) => d,
            DeltaChoice::Default => crate::bubbles::BubbleFamily::default_delta(self.manifold.r_max),
        }
    }

    pub fn resolve_epsilons(&self) -> Vec<f64> {
        match &self.epsilons {
            EpsilonChoice::List(l) => l.clone(),
            EpsilonChoice::Default => {
                crate::bubbles::BubbleFamily::default_epsilons(self.resolve_delta())
            }
        }
    }
}

/// 17-significant-digit formatting: lossless f64 round-trips in text outputs.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_list(values: &[f64]) -> String {
    values.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(", ")
}

fn parse_scalar<T: std::str::FromStr>(s: &str) -> std::result::Result<T, String> {
    s.trim()
        .parse::<T>()
        .map_err(|_| format!("cannot parse '{s}' as a number"))
}

fn parse_list(s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(',')
        .map(parse_scalar::<f64>)
        .collect()
}

fn require_scalar<T: std::str::FromStr>(entry: Option<(usize, &str)>, key: &str) -> Result<T> {
    match entry {
        None => Err(Error::Config(format!("missing required key '{key}'"))),
        Some((lineno, v)) => {
            parse_scalar(v).map_err(|e| Error::Config(format!("line {lineno}: {key}: {e}")))
        }
    }
}

fn optional_scalar<T: std::str::FromStr>(
    entry: Option<(usize, &str)>,
    key: &str,
) -> Result<Option<T>> {
    match entry {
        None => Ok(None),
        Some((lineno, v)) => parse_scalar(v)
            .map(Some)
            .map_err(|e| Error::Config(format!("line {lineno}: {key}: {e}"))),
    }
}
