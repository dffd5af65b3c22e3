//! Stream replay with per-op instrumentation.

use crate::engine::Engine;
use crate::stream::UpdateStream;
use anyhow::{Context, Result};
use serde::Serialize;
use std::io::Write;
use std::time::Instant;
use tourndyn::Tournament;

/// One CSV row. Counters are cumulative over the run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub idx: usize,
    pub kind: &'static str,
    pub ns: u64,
    pub ans: &'static str,
    pub c_bucket: u64,
    pub c_back: u64,
    pub c_tree: u64,
    pub c_rec: u64,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Audit every invariant after each op.
    pub audit: bool,
    /// Record wall time; when false `ns` is written as 0.
    pub timing: bool,
}

impl RunOptions {
    /// Timing on, audits controlled by `TOURNDYN_AUDIT=1`.
    pub fn from_env() -> Self {
        RunOptions {
            audit: std::env::var("TOURNDYN_AUDIT").is_ok_and(|v| v == "1"),
            timing: true,
        }
    }
}

/// Replays `stream` on a fresh structure built from `t`.
pub fn run(t: &Tournament, stream: &UpdateStream, opts: RunOptions) -> Result<Vec<BenchRecord>> {
    stream.validate()?;
    let mut engine = Engine::new(&stream.header, t.clone())?;
    run_engine(&mut engine, stream, opts)
}

pub fn run_engine(engine: &mut Engine, stream: &UpdateStream, opts: RunOptions) -> Result<Vec<BenchRecord>> {
    let mut out = Vec::with_capacity(stream.ops.len());
    for (idx, &op) in stream.ops.iter().enumerate() {
        let start = Instant::now();
        let ans = engine.apply(op).with_context(|| format!("op {idx} ({})", op.kind()))?;
        let ns = if opts.timing {
            start.elapsed().as_nanos() as u64
        } else {
            0
        };
        if opts.audit {
            engine
                .audit()
                .map_err(|e| anyhow::anyhow!("op {idx} ({}): audit failed: {e}", op.kind()))?;
        }
        let c = engine.counters();
        out.push(BenchRecord {
            idx,
            kind: op.kind(),
            ns,
            ans: ans.as_str(),
            c_bucket: c.bucket,
            c_back: c.back,
            c_tree: c.tree,
            c_rec: c.rec,
        });
    }
    Ok(out)
}

pub fn write_csv(records: &[BenchRecord], w: impl Write) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in records {
        wr.serialize(r)?;
    }
    if records.is_empty() {
        wr.write_record(["idx", "kind", "ns", "ans", "c_bucket", "c_back", "c_tree", "c_rec"])?;
    }
    wr.flush()?;
    Ok(())
}

pub fn write_json(records: &[BenchRecord], mut w: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, records)?;
    writeln!(w)?;
    Ok(())
}
