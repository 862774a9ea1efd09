//! Flat `section.key = value` config files and dotted overrides.
//!
//! ```text
//! # comment
//! run.mode = full
//! grid.r_max = 16
//! target.zeta = 0.6667, 0.1333
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{RunConfig, TargetGeometry};

/// Every recognised key, in the order written by [`to_config_string`].
pub const CONFIG_KEYS: &[&str] = &[
    "run.mode",
    "run.t_final",
    "run.seed",
    "run.snapshot_every",
    "target.kind",
    "target.zeta",
    "grid.r_max",
    "grid.n_points",
    "stepper.cfl",
    "stepper.order",
    "data.family",
    "data.center",
    "data.width",
    "data.amplitude",
    "data.velocity",
    "diag.every",
];

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> std::result::Result<T, String> {
    value
        .trim()
        .parse::<T>()
        .map_err(|_| format!("{key}: cannot parse '{value}'"))
}

/// Set one field from its dotted key.
pub fn apply_override(
    c: &mut RunConfig,
    key: &str,
    value: &str,
) -> std::result::Result<(), String> {
    let value = value.trim();
    match key {
        "run.mode" => c.mode = value.parse()?,
        "run.t_final" => c.t_final = parse_num(key, value)?,
        "run.seed" => c.seed = parse_num(key, value)?,
        "run.snapshot_every" => c.snapshot_every = parse_num(key, value)?,
        "target.kind" => {
            c.target = match value {
                "hyperbolic" => TargetGeometry::Hyperbolic,
                "flat" => TargetGeometry::Flat,
                "polynomial" => match &c.target {
                    TargetGeometry::PolynomialZeta(k) => TargetGeometry::PolynomialZeta(k.clone()),
                    _ => TargetGeometry::PolynomialZeta(Vec::new()),
                },
                other => return Err(format!("{key}: unknown target '{other}'")),
            }
        }
        "target.zeta" => {
            let coeffs = value
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_num::<f64>(key, s))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            c.target = TargetGeometry::PolynomialZeta(coeffs);
        }
        "grid.r_max" => c.grid.r_max = parse_num(key, value)?,
        "grid.n_points" => c.grid.n_points = parse_num(key, value)?,
        "stepper.cfl" => c.stepper.cfl = parse_num(key, value)?,
        "stepper.order" => c.stepper.order = parse_num(key, value)?,
        "data.family" => c.profile.family = value.parse()?,
        "data.center" => c.profile.center = parse_num(key, value)?,
        "data.width" => c.profile.width = parse_num(key, value)?,
        "data.amplitude" => c.profile.amplitude = parse_num(key, value)?,
        "data.velocity" => c.profile.velocity = value.parse()?,
        "diag.every" => c.diag_every = parse_num(key, value)?,
        other => return Err(format!("unknown key '{other}'")),
    }
    Ok(())
}

/// Parse config text on top of the defaults. Later lines win.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut c = RunConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::ConfigParse {
            line: idx + 1,
            message: format!("expected 'section.key = value', found '{line}'"),
        })?;
        apply_override(&mut c, key.trim(), value).map_err(|message| Error::ConfigParse {
            line: idx + 1,
            message,
        })?;
    }
    Ok(c)
}

pub fn load_config(path: &std::path::Path) -> Result<RunConfig> {
    parse_config(&std::fs::read_to_string(path)?)
}

/// Serialize so that `parse_config(to_config_string(c)) == c`.
pub fn to_config_string(c: &RunConfig) -> String {
    let mut s = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(s, "{k} = {v}");
    };
    kv("run.mode", c.mode.to_string());
    kv("run.t_final", format!("{}", c.t_final));
    kv("run.seed", c.seed.to_string());
    kv("run.snapshot_every", c.snapshot_every.to_string());
    kv("target.kind", c.target.label());
    if let TargetGeometry::PolynomialZeta(k) = &c.target {
        kv(
            "target.zeta",
            k.iter()
                .map(|x| format!("{x}"))
                .collect::<Vec<_>>()
                .join(", "),
        );
    }
    kv("grid.r_max", format!("{}", c.grid.r_max));
    kv("grid.n_points", c.grid.n_points.to_string());
    kv("stepper.cfl", format!("{}", c.stepper.cfl));
    kv("stepper.order", c.stepper.order.to_string());
    kv("data.family", c.profile.family.to_string());
    kv("data.center", format!("{}", c.profile.center));
    kv("data.width", format!("{}", c.profile.width));
    kv("data.amplitude", format!("{}", c.profile.amplitude));
    kv("data.velocity", c.profile.velocity.as_str().to_string());
    kv("diag.every", c.diag_every.to_string());
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ProblemMode;

    #[test]
    fn parse_and_round_trip() {
        let text = "# demo\nrun.mode = problem_ii\ngrid.n_points = 257  # inline\n\ndata.amplitude = 5e-3\ntarget.zeta = 0.5, 0.25\n";
        let c = parse_config(text).unwrap();
        assert_eq!(c.mode, ProblemMode::ProblemII);
        assert_eq!(c.grid.n_points, 257);
        assert_eq!(c.profile.amplitude, 5e-3);
        assert_eq!(c.target, TargetGeometry::PolynomialZeta(vec![0.5, 0.25]));
        assert_eq!(parse_config(&to_config_string(&c)).unwrap(), c);
    }

    #[test]
    fn last_assignment_wins() {
        let c = parse_config("stepper.cfl = 0.5\nstepper.cfl = 0.125").unwrap();
        assert_eq!(c.stepper.cfl, 0.125);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_config("grid.r_max = 3\nbogus.key = 1") {
            Err(Error::ConfigParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_config("no equals sign").is_err());
    }

    #[test]
    fn every_key_is_accepted() {
        let c = RunConfig::default();
        let text = to_config_string(&c);
        for k in CONFIG_KEYS.iter().filter(|k| **k != "target.zeta") {
            assert!(text.contains(k), "{k} missing");
        }
    }
}
