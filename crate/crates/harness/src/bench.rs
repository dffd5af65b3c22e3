//! Repeated replay with per-op median timings.

use crate::run::{run, BenchRecord, RunOptions};
use crate::stream::UpdateStream;
use anyhow::{bail, Result};
use tourndyn::Tournament;

/// Replays the stream `repeat` times. Counters come from the first replay
/// (they are deterministic); `ns` is the per-op median.
pub fn bench(t: &Tournament, stream: &UpdateStream, repeat: usize) -> Result<Vec<BenchRecord>> {
    if repeat == 0 {
        bail!("repeat must be positive");
    }
    let opts = RunOptions { audit: false, timing: true };
    let mut first = run(t, stream, opts)?;
    let mut times: Vec<Vec<u64>> = first.iter().map(|r| vec![r.ns]).collect();
    for _ in 1..repeat {
        for (slot, r) in times.iter_mut().zip(run(t, stream, opts)?) {
            slot.push(r.ns);
        }
    }
    for (r, mut ts) in first.iter_mut().zip(times) {
        ts.sort_unstable();
        r.ns = ts[ts.len() / 2];
    }
    Ok(first)
}

/// Per-update counter increments, in op order, for reversal ops only.
pub fn update_deltas(records: &[BenchRecord]) -> Vec<[u64; 4]> {
    let mut prev = [0u64; 4];
    let mut out = Vec::new();
    for r in records {
        let cur = [r.c_bucket, r.c_back, r.c_tree, r.c_rec];
        if r.kind == "R" {
            out.push([0, 1, 2, 3].map(|i| cur[i] - prev[i]));
        }
        prev = cur;
    }
    out
}
