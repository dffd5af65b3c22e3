//! Uniform wrapper over the three query structures.

use crate::stream::{Header, Op, StructureKind};
use anyhow::Result;
use tourndyn::drem::DremSnapshot;
use tourndyn::fast::{FastFullDS, FastPromiseDS};
use tourndyn::fvst::FvstDS;
use tourndyn::triangle_full::FullSnapshot;
use tourndyn::triangle_promise::PromiseSnapshot;
use tourndyn::{Counters, Tournament};

#[derive(Clone, Debug)]
pub enum Engine {
    FastPromise(FastPromiseDS),
    FastFull(FastFullDS),
    Fvst(FvstDS),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Snapshot {
    FastPromise(PromiseSnapshot),
    FastFull(FullSnapshot),
    Fvst(DremSnapshot),
}

/// Result of one op.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Updated,
    Bool(bool),
    Checked,
}

impl Answer {
    pub fn as_str(&self) -> &'static str {
        match self {
            Answer::Updated => "-",
            Answer::Bool(true) => "true",
            Answer::Bool(false) => "false",
            Answer::Checked => "ok",
        }
    }
}

impl Engine {
    pub fn new(header: &Header, t: Tournament) -> Result<Self> {
        anyhow::ensure!(
            t.n() == header.n,
            "stream is for n = {} but the tournament has n = {}",
            header.n,
            t.n()
        );
        Ok(match header.structure {
            StructureKind::FastPromise => Engine::FastPromise(FastPromiseDS::new(t, header.bound())),
            StructureKind::FastFull => Engine::FastFull(FastFullDS::new(t)),
            StructureKind::Fvst => Engine::Fvst(FvstDS::new(t, header.bound())?),
        })
    }

    pub fn kind(&self) -> StructureKind {
        match self {
            Engine::FastPromise(_) => StructureKind::FastPromise,
            Engine::FastFull(_) => StructureKind::FastFull,
            Engine::Fvst(_) => StructureKind::Fvst,
        }
    }

    pub fn tournament(&self) -> &Tournament {
        match self {
            Engine::FastPromise(s) => s.tournament(),
            Engine::FastFull(s) => s.tournament(),
            Engine::Fvst(s) => s.tournament(),
        }
    }

    pub fn counters(&self) -> Counters {
        match self {
            Engine::FastPromise(s) => s.counters(),
            Engine::FastFull(s) => s.counters(),
            Engine::Fvst(s) => s.counters(),
        }
    }

    pub fn update(&mut self, u: usize, v: usize) -> Result<()> {
        match self {
            Engine::FastPromise(s) => s.update(u, v)?,
            Engine::FastFull(s) => s.update(u, v)?,
            Engine::Fvst(s) => s.update(u, v)?,
        }
        Ok(())
    }

    pub fn query(&mut self, k: usize) -> Result<bool> {
        Ok(match self {
            Engine::FastPromise(s) => s.find_fast(k),
            Engine::FastFull(s) => s.find_fast(k),
            Engine::Fvst(s) => s.find_fvst(k)?,
        })
    }

    pub fn audit(&self) -> Result<(), String> {
        match self {
            Engine::FastPromise(s) => s.audit(),
            Engine::FastFull(s) => s.audit(),
            Engine::Fvst(s) => s.audit(),
        }
    }

    pub fn apply(&mut self, op: Op) -> Result<Answer> {
        match op {
            Op::Reverse(u, v) => {
                self.update(u, v)?;
                Ok(Answer::Updated)
            }
            Op::Query(k) => Ok(Answer::Bool(self.query(k)?)),
            Op::Checkpoint => {
                self.audit().map_err(|e| anyhow::anyhow!("audit failed: {e}"))?;
                Ok(Answer::Checked)
            }
        }
    }

    pub fn snapshot(&self) -> Snapshot {
        match self {
            Engine::FastPromise(s) => Snapshot::FastPromise(s.snapshot()),
            Engine::FastFull(s) => Snapshot::FastFull(s.snapshot()),
            Engine::Fvst(s) => Snapshot::Fvst(s.snapshot()),
        }
    }

    /// Corrupts one bucket entry; used to check that audits notice.
    #[doc(hidden)]
    pub fn corrupt_for_test(&mut self) {
        match self {
            Engine::FastPromise(s) => s.corrupt_for_test(),
            Engine::FastFull(s) => s.corrupt_for_test(),
            Engine::Fvst(s) => s.corrupt_for_test(),
        }
    }
}
