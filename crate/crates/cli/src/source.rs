use std::path::Path;

use gwcache_core::JointPmf2;
use serde::Serialize;

use crate::args::SourceArgs;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SourceInfo {
    Dsbs { p0: f64 },
    Pmf { path: String },
}

#[derive(Debug, Clone)]
pub struct Source {
    pub info: SourceInfo,
    pub joint: JointPmf2,
}

impl Source {
    pub fn p0(&self) -> Option<f64> {
        match self.info {
            SourceInfo::Dsbs { p0 } => Some(p0),
            SourceInfo::Pmf { .. } => None,
        }
    }
}

pub fn read_pmf(path: &Path) -> CliResult<JointPmf2> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::PmfFormat {
        path: path.display().to_string(),
        source,
    })
}

pub fn load(args: &SourceArgs) -> CliResult<Source> {
    match (args.p0, &args.pmf) {
        (Some(p0), None) => Ok(Source {
            info: SourceInfo::Dsbs { p0 },
            joint: JointPmf2::dsbs(p0)?,
        }),
        (None, Some(path)) => Ok(Source {
            info: SourceInfo::Pmf {
                path: path.display().to_string(),
            },
            joint: read_pmf(path)?,
        }),
        _ => Err(CliError::Usage("give exactly one of --p0 or --pmf".into())),
    }
}

/// Parses `start:stop:step`. Points are `start + k step`, rounded to 12
/// decimals so they print cleanly, up to and including `stop`.
pub fn parse_grid(s: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::Usage(format!("grid {s:?} is not start:stop:step"));
    let parts: Vec<f64> = s
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() {
        return Err(CliError::Usage(format!("grid {s:?} needs a finite range and step > 0")));
    }
    if start < 0.0 || stop < start {
        return Err(CliError::Usage(format!("grid {s:?} needs 0 <= start <= stop")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=count)
        .map(|k| ((start + k as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0:1.72:0.01").unwrap();
        assert_eq!(g.len(), 173);
        assert_eq!(g[7], 0.07);
        assert_eq!(*g.last().unwrap(), 1.72);
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("1:0:0.1").is_err());
    }
}
