use std::path::Path;

use rumor_core::scenario::linspace;
use rumor_core::ScenarioConfig;

use crate::failure::{Context, Failure};

/// Resolves `spec` to a file when one exists at that path, else to a
/// built-in, then applies `sets` in order.
pub fn load(spec: &str, sets: &[String]) -> Result<ScenarioConfig, Failure> {
    let path = Path::new(spec);
    let mut config = if path.is_file() {
        let text = std::fs::read_to_string(path).config(format!("cannot read scenario file {}", path.display()))?;
        ScenarioConfig::from_toml(&text)
            .map_err(|e| Failure::config(format!("scenario file {}: {e}", path.display())))?
    } else if looks_like_path(spec) {
        return Err(Failure::config(format!("scenario file {} not found", path.display())));
    } else {
        ScenarioConfig::builtin(spec).map_err(|e| {
            Failure::config(format!(
                "{e}: `{spec}` is neither a scenario file nor a built-in ({})",
                ScenarioConfig::BUILTIN_NAMES.join(", ")
            ))
        })?
    };
    for s in sets {
        let (key, value) = split_assignment(s)?;
        config.set(key, value)?;
    }
    Ok(config)
}

fn looks_like_path(spec: &str) -> bool {
    spec.contains(std::path::MAIN_SEPARATOR) || spec.contains('/') || spec.ends_with(".toml")
}

pub fn split_assignment(s: &str) -> Result<(&str, &str), Failure> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim(), v.trim())),
        _ => Err(Failure::config(format!("expected KEY=VALUE, got `{s}`"))),
    }
}

/// Parses `key=from:to:count` or `key=v1,v2,...`.
pub fn parse_grid(s: &str) -> Result<(String, Vec<f64>), Failure> {
    let (key, spec) = split_assignment(s)?;
    let number = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| Failure::config(format!("`{t}` in `{s}` is not a number")))
    };
    let values = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [from, to, count] = parts[..] else {
            return Err(Failure::config(format!("range must be from:to:count, got `{spec}`")));
        };
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| Failure::config(format!("`{count}` in `{s}` is not a count")))?;
        linspace(number(from)?, number(to)?, count)
    } else {
        spec.split(',').map(number).collect::<Result<Vec<_>, _>>()?
    };
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(Failure::config(format!("`{s}` gives an empty or non-finite grid")));
    }
    Ok((key.to_string(), values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        let (k, v) = parse_grid("reliability=0.45:0.90:9").unwrap();
        assert_eq!(k, "reliability");
        assert_eq!(v.len(), 9);
        assert!((v[0] - 0.45).abs() < 1e-12 && (v[8] - 0.90).abs() < 1e-12);
        assert_eq!(parse_grid("t_active=5,10").unwrap().1, vec![5.0, 10.0]);
        assert!(parse_grid("reliability=0.1:0.2").is_err());
        assert!(parse_grid("=1").is_err());
        assert!(parse_grid("reliability=0:1:0").is_err());
    }

    #[test]
    fn missing_files_are_named() {
        let e = load("no/such/scenario.toml", &[]).unwrap_err();
        assert!(matches!(e, Failure::Config(_)));
        assert!(e.to_string().contains("no/such/scenario.toml"));
    }

    #[test]
    fn overrides_apply_in_order() {
        let c = load("true_news", &["nodes=50".into(), "nodes=60".into()]).unwrap();
        assert_eq!(c.network.nodes, 60);
        assert!(matches!(load("true_news", &["nodes".into()]), Err(Failure::Config(_))));
    }
}
