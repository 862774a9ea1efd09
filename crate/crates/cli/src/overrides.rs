use std::ffi::OsString;
use std::path::Path;

use ewm_core::config::{apply_override, load_config};
use ewm_core::{validate_config, RunConfig};

use crate::failure::Failure;

/// Turn `--section.key value` and `--section.key=value` into
/// `--set section.key=value` so clap sees a single repeated option.
pub fn rewrite_dotted(args: impl IntoIterator<Item = OsString>) -> Vec<OsString> {
    let mut out = Vec::new();
    let mut it = args.into_iter().peekable();
    while let Some(a) = it.next() {
        let Some(flag) = a.to_str().and_then(|s| s.strip_prefix("--")) else {
            out.push(a);
            continue;
        };
        let (key, inline) = match flag.split_once('=') {
            Some((k, v)) => (k, Some(v.to_string())),
            None => (flag, None),
        };
        if !key.contains('.') {
            out.push(a);
            continue;
        }
        let value = match inline {
            Some(v) => v,
            None => match it.next() {
                Some(v) => v.to_string_lossy().into_owned(),
                None => String::new(),
            },
        };
        out.push("--set".into());
        out.push(format!("{key}={value}").into());
    }
    out
}

/// Defaults, then the config file, then each override in order; validated.
pub fn build(config: Option<&Path>, sets: &[String]) -> Result<RunConfig, Failure> {
    let mut c = match config {
        Some(p) => load_config(p).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))?,
        None => RunConfig::default(),
    };
    for s in sets {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| Failure::Invalid(format!("override '{s}' is not KEY=VALUE")))?;
        apply_override(&mut c, k.trim(), v).map_err(Failure::Invalid)?;
    }
    let problems = validate_config(&c);
    if !problems.is_empty() {
        return Err(Failure::Invalid(problems.join("; ")));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(v: &[OsString]) -> Vec<&str> {
        v.iter().map(|s| s.to_str().unwrap()).collect()
    }

    #[test]
    fn dotted_flags_become_sets() {
        let args = [
            "ewm",
            "run",
            "--grid.n_points",
            "3",
            "--stepper.cfl=0.5",
            "--out",
            "x",
        ];
        let r = rewrite_dotted(args.iter().map(OsString::from));
        assert_eq!(
            strs(&r),
            [
                "ewm",
                "run",
                "--set",
                "grid.n_points=3",
                "--set",
                "stepper.cfl=0.5",
                "--out",
                "x"
            ]
        );
    }

    #[test]
    fn last_override_wins() {
        let c = build(
            None,
            &["stepper.cfl=0.5".into(), "stepper.cfl=0.125".into()],
        )
        .unwrap();
        assert_eq!(c.stepper.cfl, 0.125);
    }

    #[test]
    fn invalid_values_are_reported() {
        match build(None, &["grid.n_points=3".into()]) {
            Err(Failure::Invalid(m)) => assert!(m.contains("n_points ≥ 16"), "{m}"),
            other => panic!("{other:?}"),
        }
        assert!(build(None, &["nonsense".into()]).is_err());
    }
}
