//! Oracle-checked replay.
//!
//! After every op the structure is audited, its derived views are compared
//! with naive recomputation, every public query operation is probed, and
//! every query answer is compared with the exact oracle. Query ops must also
//! leave the serialized state unchanged.

use crate::engine::{Answer, Engine};
use crate::stream::{Op, StructureKind, UpdateStream};
use anyhow::{bail, Result};
use std::collections::BTreeSet;
use tourndyn::oracles::{self, naive_views};
use tourndyn::Tournament;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Index of the failing op in the original stream.
    pub op: usize,
    pub message: String,
    /// A stream that reproduces the failure from the same instance.
    pub reproduction: UpdateStream,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub ops: usize,
    pub queries: usize,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Hook run on the engine before op `i`.
pub type Hook<'a> = &'a mut dyn FnMut(usize, &mut Engine);

pub fn verify(t: &Tournament, stream: &UpdateStream) -> Result<VerifyReport> {
    verify_with(t, stream, &mut |_, _| {})
}

/// Like [`verify`], with `hook` called before each op.
pub fn verify_with(t: &Tournament, stream: &UpdateStream, hook: Hook<'_>) -> Result<VerifyReport> {
    stream.validate()?;
    if t.n() > oracles::MAX_FAST_N {
        bail!("verify needs n <= {}", oracles::MAX_FAST_N);
    }
    let mut report = VerifyReport::default();
    match replay(t, stream, hook, &mut report)? {
        None => Ok(report),
        Some((op, message)) => {
            let reproduction = minimize(t, stream, op);
            report.violations.push(Violation {
                op,
                message,
                reproduction,
            });
            Ok(report)
        }
    }
}

/// Returns the first failing op and its message.
fn replay(
    t: &Tournament,
    stream: &UpdateStream,
    hook: Hook<'_>,
    report: &mut VerifyReport,
) -> Result<Option<(usize, String)>> {
    let mut engine = match Engine::new(&stream.header, t.clone()) {
        Ok(e) => e,
        Err(e) => return Ok(Some((0, format!("construction failed: {e:#}")))),
    };
    if let Err(m) = check_state(&mut engine) {
        return Ok(Some((0, format!("initial state: {m}"))));
    }
    for (i, &op) in stream.ops.iter().enumerate() {
        hook(i, &mut engine);
        report.ops += 1;
        if let Err(m) = step(&mut engine, op) {
            return Ok(Some((i, m)));
        }
        if matches!(op, Op::Query(_)) {
            report.queries += 1;
        }
    }
    Ok(None)
}

fn step(engine: &mut Engine, op: Op) -> Result<(), String> {
    let before = matches!(op, Op::Query(_)).then(|| engine.snapshot());
    let ans = engine.apply(op).map_err(|e| format!("{} failed: {e:#}", op.kind()))?;
    if let (Op::Query(k), Answer::Bool(got)) = (op, ans) {
        let t = engine.tournament();
        let (name, opt) = match engine.kind() {
            StructureKind::Fvst => ("fvst", oracles::brute_fvst(t)),
            _ => ("fast", oracles::brute_fast(t)),
        };
        let opt = opt.map_err(|e| e.to_string())?;
        if got != (opt <= k) {
            return Err(format!("query {k} answered {got} but {name} = {opt}"));
        }
        if before.as_ref() != Some(&engine.snapshot()) {
            return Err(format!("query {k} changed the structure state"));
        }
    }
    check_state(engine)
}

fn sorted(v: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = v.into_iter().collect();
    v.sort_unstable();
    v
}

/// Audits plus oracle probes of every public query operation.
pub fn check_state(engine: &mut Engine) -> Result<(), String> {
    engine.audit()?;
    let t = engine.tournament().clone();
    let n = t.n();
    match engine {
        Engine::FastPromise(s) => {
            let views = naive_views(&t, &[], 0);
            let base = s.inner().base();
            if sorted(base.empty().iter()) != views.empty {
                return Err("empty set differs from recomputation".into());
            }
            for &(u, v) in &views.back {
                if !base.is_back_arc(u, v).map_err(|e| e.to_string())? {
                    return Err(format!("{u}->{v} not reported as a back arc"));
                }
            }
            let tri = s.inner_mut().find_triangle();
            check_triangle(&t, tri, "promise triangle")?;
            for v in outside(&views.prefix, n) {
                let got = s.inner_mut().incoming(v, n).map_err(|e| e.to_string())?;
                check_incoming(&t, &views.prefix, &[], v, got)?;
            }
        }
        Engine::FastFull(s) => {
            let views = naive_views(&t, &[], 0);
            let tri = s.inner_mut().find_triangle();
            check_triangle(&t, tri, "full triangle")?;
            for v in outside(&views.prefix, n) {
                let got = s.inner_mut().incoming(v, n).map_err(|e| e.to_string())?;
                check_incoming(&t, &views.prefix, &[], v, got)?;
            }
            for d in 0..n {
                let want = (0..n).filter(|&v| t.indeg(v) <= d).count();
                if s.inner_mut().rect(1, d as i64) != want {
                    return Err(format!("root count of degrees <= {d} is wrong"));
                }
            }
        }
        Engine::Fvst(s) => {
            let k = s.promise_bound();
            let removed = sorted(s.drem().removed().iter());
            let views = naive_views(&t, &removed, k);
            if removed != views.heavy {
                return Err(format!("removed {removed:?} but heavy set is {:?}", views.heavy));
            }
            let residual = views
                .long_graph
                .iter()
                .filter(|(a, b)| !removed.contains(a) && !removed.contains(b))
                .count();
            let fvst = oracles::brute_fvst(&t).map_err(|e| e.to_string())?;
            if fvst <= k && residual > k * fvst {
                return Err(format!("residual long graph has {residual} edges, k * fvst = {}", k * fvst));
            }
            let empty = s.empty_nof();
            if sorted(empty) != views.empty {
                return Err("empty set of T - F differs from recomputation".into());
            }
            let rempty = s.drem().rempty().len();
            let e = views.empty.len();
            if rempty < e || rempty > e + 4 * removed.len() {
                return Err(format!("rempty size {rempty} outside [{e}, {}]", e + 4 * removed.len()));
            }
            let keep: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
            let rest = t.induced(&keep);
            let tri = s.find_triangle_fvst();
            if let Some(tr) = tri {
                if tr.vertices().iter().any(|v| removed.contains(v)) {
                    return Err(format!("triangle {tr:?} uses a removed vertex"));
                }
            }
            match (tri, oracles::is_acyclic(&rest)) {
                (Some(tr), _) if !tr.is_valid_in(&t) => return Err(format!("invalid triangle {tr:?}")),
                (Some(_), true) => return Err("triangle reported in an acyclic remainder".into()),
                (None, false) => return Err("no triangle reported in a cyclic remainder".into()),
                _ => {}
            }
            let not_prefix: Vec<usize> = keep.iter().copied().filter(|v| !views.prefix.contains(v)).collect();
            for &v in &not_prefix {
                let got = s.incoming_fvst(v, n).map_err(|e| e.to_string())?;
                check_incoming(&t, &views.prefix, &removed, v, got)?;
            }
        }
    }
    Ok(())
}

fn outside(prefix: &[usize], n: usize) -> impl Iterator<Item = usize> + '_ {
    (0..n).filter(move |v| !prefix.contains(v))
}

fn check_triangle(t: &Tournament, tri: Option<tourndyn::Triangle>, what: &str) -> Result<(), String> {
    match (tri, oracles::is_acyclic(t)) {
        (Some(tr), _) if !tr.is_valid_in(t) => Err(format!("{what}: invalid triangle {tr:?}")),
        (Some(_), true) => Err(format!("{what}: triangle reported in an acyclic tournament")),
        (None, false) => Err(format!("{what}: none reported in a cyclic tournament")),
        _ => Ok(()),
    }
}

fn check_incoming(t: &Tournament, prefix: &[usize], removed: &[usize], v: usize, got: Vec<usize>) -> Result<(), String> {
    let want: BTreeSet<usize> = (0..t.n())
        .filter(|&w| w != v && t.arc(w, v) && !prefix.contains(&w) && !removed.contains(&w))
        .collect();
    let have: BTreeSet<usize> = got.iter().copied().collect();
    if have.len() != got.len() || have != want {
        return Err(format!("incoming({v}) = {got:?}, expected {want:?}"));
    }
    Ok(())
}

const MINIMIZE_LIMIT: usize = 256;

/// Greedily drops earlier ops while the failure still reproduces at the
/// last op. Falls back to the plain prefix when it does not reproduce.
fn minimize(t: &Tournament, stream: &UpdateStream, failing: usize) -> UpdateStream {
    let mut ops = stream.ops[..=failing.min(stream.ops.len().saturating_sub(1))].to_vec();
    let fails_at_end = |ops: &[Op]| {
        let s = UpdateStream {
            header: stream.header.clone(),
            ops: ops.to_vec(),
        };
        let mut r = VerifyReport::default();
        matches!(replay(t, &s, &mut |_, _| {}, &mut r), Ok(Some((i, _))) if i + 1 == ops.len())
    };
    if ops.len() <= MINIMIZE_LIMIT && fails_at_end(&ops) {
        let mut i = 0;
        while i + 1 < ops.len() {
            let mut cand = ops.clone();
            cand.remove(i);
            if fails_at_end(&cand) {
                ops = cand;
            } else {
                i += 1;
            }
        }
    }
    UpdateStream {
        header: stream.header.clone(),
        ops,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate_for, GenKind};

    #[test]
    fn generated_streams_verify() {
        for s in StructureKind::ALL {
            for seed in 0..6 {
                let kind = match s {
                    StructureKind::Fvst => GenKind::PlantedFvs,
                    _ => GenKind::TransitivePlus,
                };
                let (t, stream) = generate_for(kind, s, 8, 2, 30, seed).unwrap();
                let rep = verify(&t, &stream).unwrap();
                assert!(rep.ok(), "{s} seed {seed}: {:?}", rep.violations);
                assert_eq!(rep.ops, 30);
            }
        }
    }

    #[test]
    fn corruption_is_caught() {
        for s in StructureKind::ALL {
            let (t, stream) = generate_for(GenKind::Uniform, s, 7, 2, 20, 3).unwrap();
            let mut ops = stream.ops;
            ops.insert(5, Op::Checkpoint);
            let stream = UpdateStream {
                header: crate::stream::Header { g: Some(7), ..stream.header },
                ops,
            };
            let rep = verify_with(&t, &stream, &mut |i, e| {
                if i == 5 {
                    e.corrupt_for_test();
                }
            })
            .unwrap();
            assert_eq!(rep.violations.len(), 1, "{s}");
            assert_eq!(rep.violations[0].op, 5);
        }
    }
}
