//! Update/query stream text format.
//!
//! ```text
//! STRUCT fast-promise N 10 K 2 G 2 SEED 7
//! R 0 3
//! Q 2
//! C
//! ```

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::fmt::{self, Write as _};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StructureKind {
    FastPromise,
    FastFull,
    Fvst,
}

impl StructureKind {
    pub const ALL: [StructureKind; 3] = [Self::FastPromise, Self::FastFull, Self::Fvst];

    pub fn name(self) -> &'static str {
        match self {
            Self::FastPromise => "fast-promise",
            Self::FastFull => "fast-full",
            Self::Fvst => "fvst",
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureKind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| anyhow!("unknown structure {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Header {
    pub structure: StructureKind,
    pub n: usize,
    pub k: usize,
    pub g: Option<usize>,
    pub seed: u64,
}

impl Header {
    /// The promise bound, defaulting to `k`.
    pub fn bound(&self) -> usize {
        self.g.unwrap_or(self.k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Reverse(usize, usize),
    Query(usize),
    Checkpoint,
}

impl Op {
    pub fn kind(&self) -> &'static str {
        match self {
            Op::Reverse(..) => "R",
            Op::Query(_) => "Q",
            Op::Checkpoint => "C",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpdateStream {
    pub header: Header,
    pub ops: Vec<Op>,
}

fn num<T: FromStr>(tok: Option<&str>, what: &str, line: usize) -> Result<T> {
    let tok = tok.ok_or_else(|| anyhow!("line {line}: missing {what}"))?;
    tok.parse()
        .map_err(|_| anyhow!("line {line}: bad {what} {tok:?}"))
}

impl UpdateStream {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, first) = lines.next().ok_or_else(|| anyhow!("empty stream"))?;
        let toks: Vec<&str> = first.split_whitespace().collect();
        if toks.first() != Some(&"STRUCT") {
            bail!("line {ln}: header must start with STRUCT");
        }
        let structure: StructureKind = toks
            .get(1)
            .ok_or_else(|| anyhow!("line {ln}: missing structure"))?
            .parse()
            .with_context(|| format!("line {ln}"))?;
        let mut fields = toks[2..].chunks(2).peekable();
        let mut field = |name: &str, optional: bool| -> Result<Option<&str>> {
            match fields.peek() {
                Some([k, v]) if *k == name => {
                    let v = *v;
                    fields.next();
                    Ok(Some(v))
                }
                _ if optional => Ok(None),
                other => bail!("line {ln}: expected {name}, found {other:?}"),
            }
        };
        let n = num(field("N", false)?, "N", ln)?;
        let k = num(field("K", false)?, "K", ln)?;
        let g = field("G", true)?.map(|v| num(Some(v), "G", ln)).transpose()?;
        let seed = num(field("SEED", false)?, "SEED", ln)?;
        if let Some(extra) = fields.next() {
            bail!("line {ln}: unexpected header field {:?}", extra.join(" "));
        }
        let header = Header {
            structure,
            n,
            k,
            g,
            seed,
        };
        let mut ops = Vec::new();
        for (ln, line) in lines {
            let mut it = line.split_whitespace();
            let op = match it.next() {
                Some("R") => Op::Reverse(num(it.next(), "vertex", ln)?, num(it.next(), "vertex", ln)?),
                Some("Q") => Op::Query(num(it.next(), "parameter", ln)?),
                Some("C") => Op::Checkpoint,
                other => bail!("line {ln}: unknown op {other:?}"),
            };
            if it.next().is_some() {
                bail!("line {ln}: trailing tokens");
            }
            ops.push(op);
        }
        let s = UpdateStream { header, ops };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let h = &self.header;
        for (i, op) in self.ops.iter().enumerate() {
            match *op {
                Op::Reverse(u, v) => {
                    if u >= h.n || v >= h.n {
                        bail!("op {i}: vertex out of range for n = {}", h.n);
                    }
                    if u == v {
                        bail!("op {i}: reversal endpoints must differ");
                    }
                }
                Op::Query(k) => {
                    if h.structure == StructureKind::Fvst && k > h.bound() {
                        bail!("op {i}: query {k} exceeds promise bound {}", h.bound());
                    }
                }
                Op::Checkpoint => {}
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let h = &self.header;
        let mut s = format!("STRUCT {} N {} K {}", h.structure, h.n, h.k);
        if let Some(g) = h.g {
            let _ = write!(s, " G {g}");
        }
        let _ = writeln!(s, " SEED {}", h.seed);
        for op in &self.ops {
            let _ = match op {
                Op::Reverse(u, v) => writeln!(s, "R {u} {v}"),
                Op::Query(k) => writeln!(s, "Q {k}"),
                Op::Checkpoint => writeln!(s, "C"),
            };
        }
        s
    }
}
