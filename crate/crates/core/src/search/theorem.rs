//! The finite search over the region left by the bound cascade, for one `y`.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use super::checkpoint::{CheckpointRecord, CheckpointState, CheckpointWriter};
use super::report::{ReportKind, SearchReport};
use super::sieve::SIEVE_PRIMES;
use super::units::{partition_work, WorkUnit};
use crate::bounds::BoundSet;
use crate::model::Solution;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub threads: usize,
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many new units, as if the run were interrupted.
    pub max_units: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
        Self { threads, checkpoint: None, max_units: None }
    }
}

fn region(bounds: &BoundSet, y: u32) -> serde_json::Value {
    json!({
        "y": y,
        "m_min": 2,
        "A_max": bounds.a_max_refined,
        "x_parity": "odd",
        "z_parity": "even",
        "x_rule": {
            "x_min": "am, rounded up to odd",
            "x_max": format!(
                "max({} y, largest integer below {} log C)",
                bounds.x_rule.y_multiplier, bounds.x_rule.log_coefficient
            ),
        },
        "z_rule": "even z with x < z <= x + g, g < 2x/(C log C), within 2 of x log A / log C",
        "filters": [
            "a | (2m)^(y-1)",
            "y = v2(a)/v2(2m) + 1",
            "z - x gap rule",
            format!("modular sieve over {SIEVE_PRIMES} primes"),
        ],
    })
}

/// Scan every unit for `y`, skipping units already recorded in the checkpoint
/// and appending each newly completed unit to it.
pub fn theorem_search(bounds: &BoundSet, y: u32, opts: &SearchOptions) -> Result<SearchReport> {
    let start = Instant::now();
    if y < 2 || y > bounds.y_cap_final {
        return Err(Error::InvalidY { y, cap: bounds.y_cap_final });
    }
    if opts.threads == 0 {
        return Err(Error::ThreadPool("thread count must be at least 1".into()));
    }
    let units = partition_work(bounds, y);
    let state = match &opts.checkpoint {
        Some(p) => Some(CheckpointState::load(p)?),
        None => None,
    };
    let writer = state.as_ref().map(CheckpointWriter::open).transpose()?;

    let mut solutions = BTreeSet::<Solution>::new();
    let mut done = 0u64;
    let mut pending: Vec<WorkUnit> = Vec::new();
    for u in &units {
        match state.as_ref().and_then(|s| s.found(u.a, u.m, y)) {
            Some(found) => {
                solutions.extend(found.iter().copied());
                done += 1;
            }
            None => pending.push(*u),
        }
    }
    if let Some(n) = opts.max_units {
        pending.truncate(n);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| Error::ThreadPool(e.to_string()))?;
    let results: Vec<Vec<Solution>> = pool.install(|| {
        pending
            .par_iter()
            .map(|u| {
                let t0 = Instant::now();
                let scan = u.scan();
                if let Some(w) = &writer {
                    let ms = t0.elapsed().as_millis() as u64;
                    w.append(&CheckpointRecord::done(u.a, u.m, y, &scan.found, ms))?;
                }
                Ok(scan.found)
            })
            .collect::<Result<_>>()
    })?;
    done += results.len() as u64;
    solutions.extend(results.into_iter().flatten());

    Ok(SearchReport {
        kind: ReportKind::Theorem,
        region: region(bounds, y),
        solutions: solutions.into_iter().collect(),
        units_done: done,
        units_total: units.len() as u64,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}
