//! Append-only JSON Lines record of completed work units.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::model::Solution;
use crate::{Error, Result};

/// One line of a checkpoint file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckpointRecord {
    pub a: u64,
    pub m: u64,
    pub y: u32,
    pub status: String,
    pub found: Vec<[u64; 5]>,
    pub elapsed_ms: u64,
}

impl CheckpointRecord {
    pub fn done(a: u64, m: u64, y: u32, found: &[Solution], elapsed_ms: u64) -> Self {
        Self { a, m, y, status: "done".into(), found: found.iter().map(Solution::tuple).collect(), elapsed_ms }
    }
}

/// Completed units read back from a checkpoint file.
#[derive(Debug, Clone, Default)]
pub struct CheckpointState {
    path: PathBuf,
    done: BTreeMap<(u64, u64, u32), Vec<Solution>>,
    /// Bytes worth keeping: everything up to a torn trailing line.
    valid_len: u64,
    /// The last kept record lacks its newline.
    needs_newline: bool,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}

impl CheckpointState {
    /// Missing file: nothing done yet. A line that does not parse is an error,
    /// except for the final line when it has no newline, which is a torn write
    /// and is dropped.
    pub fn load(path: &Path) -> Result<Self> {
        let mut state = Self { path: path.to_path_buf(), ..Self::default() };
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(state),
            Err(e) => return Err(io_err(path)(e)),
        };
        let corrupt = |line: usize, detail: String| Error::CorruptCheckpoint { path: path.to_path_buf(), line, detail };
        let mut offset = 0usize;
        let segments: Vec<&str> = text.split_inclusive('\n').collect();
        for (i, seg) in segments.iter().enumerate() {
            let line_no = i + 1;
            let terminated = seg.ends_with('\n');
            let body = seg.trim_end_matches(['\n', '\r']);
            if body.trim().is_empty() {
                offset += seg.len();
                continue;
            }
            let rec: CheckpointRecord = match serde_json::from_str(body) {
                Ok(r) => r,
                Err(_) if !terminated => break,
                Err(e) => return Err(corrupt(line_no, e.to_string())),
            };
            if rec.status != "done" {
                return Err(corrupt(line_no, format!("unknown status {:?}", rec.status)));
            }
            let mut found = Vec::with_capacity(rec.found.len());
            for t in &rec.found {
                let sol = Solution::from_tuple(t[0], t[1], t[2] as u32, t[3] as u32, t[4] as u32)
                    .ok()
                    .flatten()
                    .ok_or_else(|| corrupt(line_no, format!("{t:?} is not a solution")))?;
                if (t[0], t[1], t[3]) != (rec.a, rec.m, rec.y as u64) {
                    return Err(corrupt(line_no, format!("{t:?} does not belong to this unit")));
                }
                found.push(sol);
            }
            if state.done.insert((rec.a, rec.m, rec.y), found).is_some() {
                return Err(corrupt(line_no, format!("unit ({}, {}, {}) recorded twice", rec.a, rec.m, rec.y)));
            }
            offset += seg.len();
            state.needs_newline = !terminated;
        }
        state.valid_len = offset as u64;
        Ok(state)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn is_done(&self, a: u64, m: u64, y: u32) -> bool {
        self.done.contains_key(&(a, m, y))
    }

    pub fn found(&self, a: u64, m: u64, y: u32) -> Option<&[Solution]> {
        self.done.get(&(a, m, y)).map(Vec::as_slice)
    }

    /// Completed units, in key order.
    pub fn units(&self) -> impl Iterator<Item = (u64, u64, u32)> + '_ {
        self.done.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.done.len()
    }

    pub fn is_empty(&self) -> bool {
        self.done.is_empty()
    }
}

/// Serialised appender shared by the worker threads.
#[derive(Debug)]
pub struct CheckpointWriter {
    path: PathBuf,
    out: Mutex<BufWriter<File>>,
}

impl CheckpointWriter {
    /// Open for appending after `state`, discarding any torn trailing line.
    pub fn open(state: &CheckpointState) -> Result<Self> {
        let path = state.path.clone();
        let mut file =
            OpenOptions::new().create(true).write(true).truncate(false).open(&path).map_err(io_err(&path))?;
        file.set_len(state.valid_len).map_err(io_err(&path))?;
        file.seek(SeekFrom::End(0)).map_err(io_err(&path))?;
        if state.needs_newline {
            file.write_all(b"\n").map_err(io_err(&path))?;
        }
        Ok(Self { path, out: Mutex::new(BufWriter::new(file)) })
    }

    /// Write one record and flush it.
    pub fn append(&self, rec: &CheckpointRecord) -> Result<()> {
        let mut line = serde_json::to_string(rec)?;
        line.push('\n');
        let mut out = self.out.lock().unwrap_or_else(|p| p.into_inner());
        out.write_all(line.as_bytes()).and_then(|_| out.flush()).map_err(io_err(&self.path))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(a: u64, m: u64, y: u32) -> CheckpointRecord {
        CheckpointRecord::done(a, m, y, &[], 3)
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ck.jsonl");
        let state = CheckpointState::load(&path).unwrap();
        assert!(state.is_empty());
        let w = CheckpointWriter::open(&state).unwrap();
        w.append(&rec(4, 2, 2)).unwrap();
        w.append(&rec(2, 3, 2)).unwrap();
        drop(w);
        let state = CheckpointState::load(&path).unwrap();
        assert_eq!(state.units().collect::<Vec<_>>(), vec![(2, 3, 2), (4, 2, 2)]);
        let line = std::fs::read_to_string(&path).unwrap().lines().next().unwrap().to_string();
        assert_eq!(line, r#"{"a":4,"m":2,"y":2,"status":"done","found":[],"elapsed_ms":3}"#);
    }

    #[test]
    fn empty_file_is_fresh() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ck.jsonl");
        std::fs::write(&path, "").unwrap();
        assert!(CheckpointState::load(&path).unwrap().is_empty());
    }

    #[test]
    fn torn_tail_is_dropped_and_truncated() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ck.jsonl");
        let good = serde_json::to_string(&rec(4, 2, 2)).unwrap();
        std::fs::write(&path, format!("{good}\n{{\"a\":2,\"m\"")).unwrap();
        let state = CheckpointState::load(&path).unwrap();
        assert_eq!(state.len(), 1);
        let w = CheckpointWriter::open(&state).unwrap();
        w.append(&rec(2, 3, 2)).unwrap();
        drop(w);
        assert_eq!(CheckpointState::load(&path).unwrap().len(), 2);
    }

    #[test]
    fn unterminated_complete_line_is_kept() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ck.jsonl");
        std::fs::write(&path, serde_json::to_string(&rec(4, 2, 2)).unwrap()).unwrap();
        let state = CheckpointState::load(&path).unwrap();
        assert!(state.is_done(4, 2, 2));
        let w = CheckpointWriter::open(&state).unwrap();
        w.append(&rec(2, 3, 2)).unwrap();
        drop(w);
        assert_eq!(CheckpointState::load(&path).unwrap().len(), 2);
    }

    #[test]
    fn corrupt_interior_line_names_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ck.jsonl");
        let good = serde_json::to_string(&rec(4, 2, 2)).unwrap();
        std::fs::write(&path, format!("{good}\nnot json\n{good}\n")).unwrap();
        match CheckpointState::load(&path) {
            Err(Error::CorruptCheckpoint { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected corrupt checkpoint, got {other:?}"),
        }
    }

    #[test]
    fn duplicates_and_false_solutions_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ck.jsonl");
        let good = serde_json::to_string(&rec(4, 2, 2)).unwrap();
        std::fs::write(&path, format!("{good}\n{good}\n")).unwrap();
        assert!(matches!(CheckpointState::load(&path), Err(Error::CorruptCheckpoint { line: 2, .. })));
        std::fs::write(
            &path,
            "{\"a\":4,\"m\":2,\"y\":2,\"status\":\"done\",\"found\":[[4,2,1,2,3]],\"elapsed_ms\":1}\n",
        )
        .unwrap();
        assert!(matches!(CheckpointState::load(&path), Err(Error::CorruptCheckpoint { line: 1, .. })));
    }
}
