//! Search reports with a canonical, byte-stable JSON body.

use serde_json::{json, Value};

use crate::bounds::BOUNDS_VERSION;
use crate::model::Solution;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportKind {
    Oracle,
    Theorem,
    Corollary,
}

impl ReportKind {
    pub fn equation(self) -> &'static str {
        match self {
            ReportKind::Oracle | ReportKind::Theorem => "(2am+1)^x + (2m)^y = (2am-1)^z",
            ReportKind::Corollary => "b^x + 2^y = (b-2)^z",
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            ReportKind::Oracle | ReportKind::Theorem => &["a", "m", "x", "y", "z"],
            ReportKind::Corollary => &["b", "x", "y", "z"],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub kind: ReportKind,
    /// Region and filters, as a JSON object.
    pub region: Value,
    pub solutions: Vec<Solution>,
    pub units_done: u64,
    pub units_total: u64,
    pub wall_ms: u64,
}

impl SearchReport {
    pub fn is_complete(&self) -> bool {
        self.units_done == self.units_total
    }

    /// Solutions as rows matching [`ReportKind::columns`]. Each is re-verified.
    pub fn rows(&self) -> Result<Vec<Vec<u64>>> {
        self.solutions
            .iter()
            .map(|s| {
                let t = s.tuple();
                if !s.recheck() {
                    return Err(Error::Unverified(t.to_vec()));
                }
                Ok(match self.kind {
                    ReportKind::Corollary => vec![2 * t[0] + 1, t[2], t[3], t[4]],
                    _ => t.to_vec(),
                })
            })
            .collect()
    }

    /// Everything except timing. Keys come out sorted.
    pub fn canonical_value(&self) -> Result<Value> {
        Ok(json!({
            "equation": self.kind.equation(),
            "region": self.region,
            "bounds_version": BOUNDS_VERSION,
            "solutions": self.rows()?,
            "units_done": self.units_done,
            "units_total": self.units_total,
        }))
    }

    pub fn to_canonical_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.canonical_value()?)?)
    }

    /// The canonical body plus `wall_ms`.
    pub fn to_json(&self) -> Result<String> {
        let mut v = self.canonical_value()?;
        v["wall_ms"] = json!(self.wall_ms);
        Ok(serde_json::to_string_pretty(&v)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(kind: ReportKind, wall_ms: u64) -> SearchReport {
        SearchReport {
            kind,
            region: json!({"z": 1, "a": [2, 3]}),
            solutions: vec![Solution::from_tuple(2, 1, 2, 1, 3).unwrap().unwrap()],
            units_done: 4,
            units_total: 4,
            wall_ms,
        }
    }

    #[test]
    fn canonical_body_ignores_timing() {
        let a = report(ReportKind::Oracle, 10);
        let b = report(ReportKind::Oracle, 99);
        assert_eq!(a.to_canonical_json().unwrap(), b.to_canonical_json().unwrap());
        assert_ne!(a.to_json().unwrap(), b.to_json().unwrap());
        let text = a.to_canonical_json().unwrap();
        let keys: Vec<usize> = ["bounds_version", "equation", "region", "solutions", "units_done"]
            .iter()
            .map(|k| text.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "keys not sorted: {text}");
        assert!(!text.contains("wall_ms"));
    }

    #[test]
    fn corollary_rows_use_b() {
        let r = report(ReportKind::Corollary, 0);
        assert_eq!(r.rows().unwrap(), vec![vec![5, 2, 1, 3]]);
    }
}
