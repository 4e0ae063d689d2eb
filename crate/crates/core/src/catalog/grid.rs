use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::Point;

/// Inclusive integer ranges, one per parameter, enumerated lexicographically
/// in the listed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub ranges: Vec<(String, i64, i64)>,
}

impl Grid {
    pub fn new(ranges: &[(&str, i64, i64)]) -> Self {
        Grid { ranges: ranges.iter().map(|(n, lo, hi)| (n.to_string(), *lo, *hi)).collect() }
    }

    /// Every parameter over the same range.
    pub fn uniform(params: &[&str], lo: i64, hi: i64) -> Self {
        Grid { ranges: params.iter().map(|p| (p.to_string(), lo, hi)).collect() }
    }

    /// Parses `name=lo..hi` entries separated by commas, e.g. `a=0..4,b=1..3`.
    pub fn parse(src: &str) -> Result<Self> {
        let mut ranges = Vec::new();
        for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, range) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidGrid(format!("expected name=lo..hi, got `{part}`")))?;
            let (lo, hi) = range
                .split_once("..")
                .ok_or_else(|| Error::InvalidGrid(format!("expected lo..hi, got `{range}`")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidGrid(format!("`{s}` is not an integer")))
            };
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if lo > hi {
                return Err(Error::InvalidGrid(format!("empty range {lo}..{hi} for `{name}`")));
            }
            let name = name.trim().to_string();
            if ranges.iter().any(|(n, _, _)| *n == name) {
                return Err(Error::InvalidGrid(format!("`{name}` given twice")));
            }
            ranges.push((name, lo, hi));
        }
        if ranges.is_empty() {
            return Err(Error::InvalidGrid("no ranges given".into()));
        }
        Ok(Grid { ranges })
    }

    /// Reorders to `params`, taking missing parameters from `fallback`.
    /// Names that are not parameters are rejected.
    pub fn aligned(&self, params: &[&str], fallback: &Grid) -> Result<Grid> {
        if let Some((n, _, _)) = self.ranges.iter().find(|(n, _, _)| !params.contains(&n.as_str())) {
            return Err(Error::InvalidGrid(format!("unknown parameter `{n}`")));
        }
        let mut ranges = Vec::with_capacity(params.len());
        for p in params {
            let r = self
                .ranges
                .iter()
                .chain(fallback.ranges.iter())
                .find(|(n, _, _)| n == p)
                .ok_or_else(|| Error::InvalidGrid(format!("no range for `{p}`")))?;
            ranges.push(r.clone());
        }
        Ok(Grid { ranges })
    }

    pub fn size(&self) -> usize {
        self.ranges.iter().map(|(_, lo, hi)| (hi - lo + 1) as usize).product()
    }

    pub fn points(&self) -> Vec<Point> {
        let mut out = vec![Point::new()];
        for (name, lo, hi) in &self.ranges {
            let mut next = Vec::with_capacity(out.len() * (hi - lo + 1) as usize);
            for p in &out {
                for x in *lo..=*hi {
                    let mut q = p.clone();
                    q.insert(name.clone(), x);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ranges.iter().map(|(n, lo, hi)| format!("{n}={lo}..{hi}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_enumerate() {
        let g = Grid::parse("a=0..1, b=2..3").unwrap();
        assert_eq!(g.to_string(), "a=0..1,b=2..3");
        let pts = g.points();
        assert_eq!(pts.len(), 4);
        assert_eq!(pts[1], crate::point(&[("a", 0), ("b", 3)]));
    }

    #[test]
    fn parse_errors() {
        assert!(Grid::parse("a=3..1").is_err());
        assert!(Grid::parse("a=0..x").is_err());
        assert!(Grid::parse("a0..3").is_err());
        assert!(Grid::parse("a=0..1,a=0..2").is_err());
        assert!(Grid::parse("").is_err());
    }

    #[test]
    fn alignment() {
        let fallback = Grid::uniform(&["m", "n"], 0, 8);
        let g = Grid::parse("n=1..2").unwrap().aligned(&["m", "n"], &fallback).unwrap();
        assert_eq!(g.to_string(), "m=0..8,n=1..2");
        assert!(Grid::parse("z=0..1").unwrap().aligned(&["m", "n"], &fallback).is_err());
    }
}
