//! A tournament with a small set `F` of removed vertices.
//!
//! The in-degrees of `T - F` are not stored directly. Each removed vertex
//! owns a token at some position in `[0, 5 max(n, k))`, and every remaining
//! vertex `v` keeps a reduced degree `rdeg[v]` with
//!
//! ```text
//! indeg_{T-F}(v) = rdeg[v] - ctok(rdeg[v])
//! ```
//!
//! where `ctok(d)` counts tokens at positions `<= d`. Every `rdeg[v]` is the
//! smallest such value, so no remaining vertex sits on a token position and
//! the representation is determined by the tokens. Tokens sit close to the
//! in-degree (in `T`) of their owner, so removing or restoring a vertex only
//! shifts reduced degrees in a narrow window, plus the endpoints of long back
//! arcs of the removed vertex. The structure also maintains the graph of
//! `k`-long back arcs of `T`: arcs `a -> b` with `indeg(a) >= indeg(b) + k`.

use crate::arrayset::ArraySet;
use crate::basic::{BucketedIndex, DsBasic};
use crate::counters::Counters;
use crate::error::{Error, Result};
use crate::tournament::Tournament;
use indexmap::IndexSet;
use std::fmt::Write as _;

/// A change to the long back-arc graph, stored as `(min, max)` endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LongChange {
    Added(usize, usize),
    Removed(usize, usize),
}

impl LongChange {
    pub fn endpoints(&self) -> (usize, usize) {
        match *self {
            LongChange::Added(a, b) | LongChange::Removed(a, b) => (a, b),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DremState {
    pub(crate) base: DsBasic,
    pub(crate) k: usize,
    pub(crate) removed: ArraySet,
    pub(crate) rdeg: Vec<usize>,
    pub(crate) rb: BucketedIndex,
    pub(crate) tok: ArraySet,
    pub(crate) vtok: Vec<usize>,
    pub(crate) long: Vec<IndexSet<u32>>,
    max_token_drift: usize,
}

/// Order-independent view of a [`DremState`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DremSnapshot {
    pub tournament: Tournament,
    pub removed: Vec<usize>,
    pub tokens: Vec<(usize, usize)>,
    pub rdeg: Vec<Option<usize>>,
    pub long: Vec<(usize, usize)>,
}

fn is_long(t: &Tournament, a: usize, b: usize, k: usize) -> bool {
    let (tail, head) = if t.arc(a, b) { (a, b) } else { (b, a) };
    t.indeg(tail) >= t.indeg(head) + k
}

/// Degrees of all vertices in the `k`-long back-arc graph.
pub fn long_degrees(t: &Tournament, k: usize) -> Vec<usize> {
    let n = t.n();
    let mut deg = vec![0; n];
    for a in 0..n {
        for b in a + 1..n {
            if is_long(t, a, b, k) {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
    }
    deg
}

impl DremState {
    /// Builds the structure for `t` with capacity `k` and the vertices of
    /// `removed` taken out.
    pub fn new(t: Tournament, k: usize, removed: &[usize]) -> Result<Self> {
        let n = t.n();
        if removed.len() > k {
            return Err(Error::Capacity { capacity: k });
        }
        let mut set = ArraySet::new(n);
        for &f in removed {
            t.check_vertex(f)?;
            if !set.insert(f) {
                return Err(Error::AlreadyRemoved(f));
            }
        }
        let mut long = vec![IndexSet::new(); n];
        for a in 0..n {
            for b in a + 1..n {
                if is_long(&t, a, b, k) {
                    long[a].insert(b as u32);
                    long[b].insert(a as u32);
                }
            }
        }
        let mut s = DremState {
            base: DsBasic::new(t),
            k,
            removed: set,
            rdeg: vec![0; n],
            rb: BucketedIndex::new(n),
            tok: ArraySet::new(5 * n.max(k)),
            vtok: vec![0; n],
            long,
            max_token_drift: 0,
        };
        for &f in removed {
            let p = s.free_position_near(s.base.indeg(f));
            s.tok.insert(p);
            s.vtok[f] = p;
        }
        for v in (0..n).rev() {
            if !s.removed.contains(v) {
                let r = s.fix_rdeg(v)?;
                s.rdeg[v] = r;
                s.rb.insert(v, r);
            }
        }
        s.note_token_drift();
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn tournament(&self) -> &Tournament {
        self.base.tournament()
    }

    pub fn base(&self) -> &DsBasic {
        &self.base
    }

    pub fn counters(&self) -> Counters {
        self.base.counters
    }

    pub(crate) fn counters_mut(&mut self) -> &mut Counters {
        &mut self.base.counters
    }

    pub fn removed(&self) -> &ArraySet {
        &self.removed
    }

    pub fn is_removed(&self, v: usize) -> bool {
        self.removed.contains(v)
    }

    pub fn rdeg(&self, v: usize) -> Option<usize> {
        (!self.removed.contains(v)).then_some(self.rdeg[v])
    }

    pub fn token_of(&self, v: usize) -> Option<usize> {
        self.removed.contains(v).then_some(self.vtok[v])
    }

    pub fn tokens(&self) -> &ArraySet {
        &self.tok
    }

    /// Empty reduced buckets.
    pub fn rempty(&self) -> &ArraySet {
        self.rb.empty()
    }

    pub fn reduced_index(&self) -> &BucketedIndex {
        &self.rb
    }

    pub fn long_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.long[v].iter().map(|&x| x as usize)
    }

    pub fn long_degree(&self, v: usize) -> usize {
        self.long[v].len()
    }

    /// Largest `|token position - indeg|` seen over the lifetime.
    pub fn max_token_drift(&self) -> usize {
        self.max_token_drift
    }

    fn note_token_drift(&mut self) {
        for f in self.removed.iter() {
            let gap = self.vtok[f].abs_diff(self.base.indeg(f));
            self.max_token_drift = self.max_token_drift.max(gap);
        }
    }

    /// Nearest free token position to `d`, upward first on ties.
    fn free_position_near(&self, d: usize) -> usize {
        let limit = self.tok.capacity() as i64;
        let d = d as i64;
        for dist in 0..=limit {
            for p in [d + dist, d - dist] {
                if (0..limit).contains(&p) && !self.tok.contains(p as usize) {
                    return p as usize;
                }
            }
        }
        unreachable!("fewer tokens than positions")
    }

    /// Tokens at positions `<= d`.
    pub fn ctok(&self, d: i64) -> usize {
        self.tok.iter().filter(|&t| t as i64 <= d).count()
    }

    fn has_token(&self, i: i64) -> bool {
        i >= 0 && self.tok.contains(i as usize)
    }

    /// The interval `{i : i - ctok(i) = d}`.
    pub fn tokenized_interval(&self, d: i64) -> (i64, i64) {
        let mut i = d;
        let mut f = d - self.ctok(d) as i64;
        while f != d {
            i += 1;
            if !self.has_token(i) {
                f += 1;
            }
        }
        let mut r = i;
        while self.has_token(r + 1) {
            r += 1;
        }
        (i, r)
    }

    /// In-degree of `w` in `T - F`.
    pub fn reduced_indeg(&self, w: usize) -> usize {
        let from_removed = self.removed.iter().filter(|&f| self.base.arc(f, w)).count();
        self.base.indeg(w) - from_removed
    }

    /// The smallest valid reduced degree of a remaining vertex `w`.
    pub fn fix_rdeg(&self, w: usize) -> Result<usize> {
        self.base.tournament().check_vertex(w)?;
        if self.removed.contains(w) {
            return Err(Error::AlreadyRemoved(w));
        }
        Ok(self.tokenized_interval(self.reduced_indeg(w) as i64).0 as usize)
    }

    fn refix(&mut self, w: usize) {
        let r = self.fix_rdeg(w).expect("only remaining vertices are re-fixed");
        self.rdeg[w] = r;
        self.rb.move_to(w, r);
    }

    /// Re-fixes every vertex whose reduced bucket lies in `[l, r] ∩ [0, n)`.
    fn refix_range(&mut self, l: i64, r: i64) {
        let lo = l.max(0);
        let hi = r.min(self.n() as i64 - 1);
        let mut hit = Vec::new();
        for i in lo..=hi {
            hit.extend(self.rb.bucket(i as usize));
        }
        self.base.counters.bucket += (hi - lo + 1).max(0) as u64 + hit.len() as u64;
        for w in hit {
            self.refix(w);
        }
    }

    fn refix_long(&mut self, v: usize) {
        let nb: Vec<usize> = self.long_neighbours(v).filter(|&u| !self.removed.contains(u)).collect();
        self.base.counters.back += self.long[v].len() as u64;
        for u in nb {
            self.refix(u);
        }
    }

    /// Takes `v` out of the tournament's remainder.
    pub fn remove(&mut self, v: usize) -> Result<()> {
        self.base.tournament().check_vertex(v)?;
        if self.removed.contains(v) {
            return Err(Error::AlreadyRemoved(v));
        }
        if self.removed.len() >= self.k {
            return Err(Error::Capacity { capacity: self.k });
        }
        let window = (self.k + 2 * self.removed.len() + 1) as i64;
        let rv = self.rdeg[v] as i64;
        let (l, r) = (rv - window, rv + window);
        let mut rt = r;
        while self.has_token(rt + 1) {
            rt += 1;
        }
        let pos = (rt + 1) as usize;
        assert!(pos < self.tok.capacity(), "token position out of range");
        self.tok.insert(pos);
        self.vtok[v] = pos;
        self.removed.insert(v);
        self.rb.remove(v);
        // Also re-fix the bucket under the new token so that no remaining
        // vertex sits on a token position.
        self.refix_range(l, rt + 1);
        self.refix_long(v);
        self.note_token_drift();
        Ok(())
    }

    /// Puts a removed vertex back.
    pub fn restore(&mut self, v: usize) -> Result<()> {
        self.base.tournament().check_vertex(v)?;
        if !self.removed.contains(v) {
            return Err(Error::NotRemoved(v));
        }
        let t = self.vtok[v] as i64;
        self.tok.remove(t as usize);
        self.removed.remove(v);
        let rv = self.fix_rdeg(v)?;
        self.rdeg[v] = rv;
        self.rb.insert(v, rv);
        let window = (self.k + 2 * self.removed.len() + 1) as i64;
        let rv = rv as i64;
        self.refix_range((rv - window).min(t), (rv + window).max(t));
        self.refix_long(v);
        Ok(())
    }

    /// Flips the arc between `u` and `v`. Returns the changes to the long
    /// back-arc graph.
    pub fn reverse(&mut self, u: usize, v: usize) -> Result<Vec<LongChange>> {
        self.base.tournament().check_pair(u, v)?;
        let n = self.n() as i64;
        let k = self.k as i64;
        let mut degrees: Vec<i64> = Vec::with_capacity(12);
        for w in [u, v] {
            let d = self.base.indeg(w) as i64;
            for c in [d - k, d + k] {
                degrees.extend([c - 1, c, c + 1]);
            }
        }
        degrees.retain(|d| (0..n).contains(d));
        degrees.sort_unstable();
        degrees.dedup();
        let mut cand = Vec::new();
        for &d in &degrees {
            cand.extend(self.base.index().bucket(d as usize));
        }
        self.base.counters.bucket += cand.len() as u64;

        self.base.reverse(u, v)?;

        let mut changes = Vec::new();
        for x in cand {
            if x != u && x != v {
                self.retest_long(u, x, &mut changes);
                self.retest_long(v, x, &mut changes);
            }
        }
        self.retest_long(u, v, &mut changes);

        let bound = 6 * self.k as i64 - 3;
        for w in [u, v] {
            if !self.removed.contains(w) {
                continue;
            }
            let old = self.vtok[w];
            if (old as i64 - self.base.indeg(w) as i64).abs() <= bound {
                continue;
            }
            self.tok.remove(old);
            let new = self.free_position_near(self.base.indeg(w));
            self.tok.insert(new);
            self.vtok[w] = new;
            self.refix_range(old.min(new) as i64, old.max(new) as i64);
        }
        for w in [u, v] {
            if !self.removed.contains(w) {
                self.refix(w);
            }
        }
        self.note_token_drift();
        Ok(changes)
    }

    fn retest_long(&mut self, a: usize, b: usize, changes: &mut Vec<LongChange>) {
        let now = is_long(self.base.tournament(), a, b, self.k);
        let was = self.long[a].contains(&(b as u32));
        if now == was {
            return;
        }
        let e = (a.min(b), a.max(b));
        if now {
            self.long[a].insert(b as u32);
            self.long[b].insert(a as u32);
            changes.push(LongChange::Added(e.0, e.1));
        } else {
            self.long[a].swap_remove(&(b as u32));
            self.long[b].swap_remove(&(a as u32));
            changes.push(LongChange::Removed(e.0, e.1));
        }
    }

    pub fn snapshot(&self) -> DremSnapshot {
        let n = self.n();
        let mut long = Vec::new();
        for a in 0..n {
            for b in self.long_neighbours(a) {
                if a < b {
                    long.push((a, b));
                }
            }
        }
        long.sort_unstable();
        let mut tokens: Vec<(usize, usize)> = self.removed.iter().map(|f| (f, self.vtok[f])).collect();
        tokens.sort_unstable();
        DremSnapshot {
            tournament: self.base.tournament().clone(),
            removed: self.removed.to_sorted_vec(),
            tokens,
            rdeg: (0..n).map(|v| self.rdeg(v)).collect(),
            long,
        }
    }

    /// Checks every invariant against recomputation from scratch.
    pub fn audit(&self) -> std::result::Result<(), String> {
        self.base.audit()?;
        let n = self.n();
        let t = self.base.tournament();
        if self.removed.len() > self.k {
            return Err(format!("{} removed vertices exceed capacity {}", self.removed.len(), self.k));
        }
        let removed = self.removed.to_sorted_vec();
        let truth = crate::oracles::reduced_indegrees(t, &removed);
        for v in 0..n {
            if let Some(d) = truth[v] {
                let r = self.rdeg[v];
                if r >= n {
                    return Err(format!("reduced degree of {v} out of range"));
                }
                if r as i64 - self.ctok(r as i64) as i64 != d as i64 {
                    return Err(format!(
                        "vertex {v}: reduced degree {r} encodes {} but true degree is {d}",
                        r as i64 - self.ctok(r as i64) as i64
                    ));
                }
            }
        }
        for v in 0..n {
            if truth[v].is_some() && self.tok.contains(self.rdeg[v]) {
                return Err(format!("vertex {v} sits on token position {}", self.rdeg[v]));
            }
        }
        let expected: Vec<Option<usize>> = (0..n).map(|v| self.rdeg(v)).collect();
        self.rb.audit(&expected)?;
        if self.tok.len() != removed.len() {
            return Err("token count differs from removed count".into());
        }
        let mut pos: Vec<usize> = removed.iter().map(|&f| self.vtok[f]).collect();
        if pos.iter().any(|&p| !self.tok.contains(p)) {
            return Err("a removed vertex points at a missing token".into());
        }
        pos.sort_unstable();
        pos.dedup();
        if pos.len() != removed.len() {
            return Err("two removed vertices share a token".into());
        }
        let bound = 6 * self.k as i64 - 3;
        for &f in &removed {
            if (self.vtok[f] as i64 - t.indeg(f) as i64).abs() > bound {
                return Err(format!("token of {f} drifted too far from its degree"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && is_long(t, a, b, self.k) != self.long[a].contains(&(b as u32)) {
                    return Err(format!("long graph wrong at pair ({a},{b})"));
                }
            }
        }
        Ok(())
    }

    /// One line per vertex (`index indeg removed rdeg vtok`), then the tokens.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for v in 0..self.n() {
            let rm = self.removed.contains(v);
            let r = self.rdeg(v).map_or("-".to_string(), |r| r.to_string());
            let t = self.token_of(v).map_or("-".to_string(), |t| t.to_string());
            let _ = writeln!(s, "{v} {} {} {r} {t}", self.base.indeg(v), u8::from(rm));
        }
        let tok: Vec<String> = self.tok.to_sorted_vec().iter().map(|t| t.to_string()).collect();
        let _ = writeln!(s, "tok {}", tok.join(" "));
        s
    }

    #[doc(hidden)]
    pub fn corrupt_for_test(&mut self) {
        self.base.corrupt_for_test();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles;
    use crate::tournament::fixtures::*;
    use proptest::prelude::*;

    fn with_tokens(t: Tournament, k: usize, tokens: &[usize]) -> DremState {
        let mut s = DremState::new(t, k, &[]).unwrap();
        for &p in tokens {
            s.tok.insert(p);
        }
        s
    }

    #[test]
    fn ctok_examples() {
        let s = with_tokens(t5(), 2, &[]);
        assert_eq!(s.ctok(3), 0);
        let s = with_tokens(t5(), 2, &[4]);
        assert_eq!(s.ctok(3), 0);
        assert_eq!(s.ctok(4), 1);
        let s = with_tokens(t5(), 2, &[2, 7]);
        assert_eq!(s.ctok(7), 2);
    }

    #[test]
    fn interval_examples() {
        let s = with_tokens(t5(), 2, &[]);
        assert_eq!(s.tokenized_interval(3), (3, 3));
        let s = with_tokens(t5(), 2, &[4]);
        assert_eq!(s.tokenized_interval(3), (3, 4));
        assert_eq!(s.tokenized_interval(4), (5, 5));
        assert_eq!(s.tokenized_interval(-1), (-1, -1));
        let s = with_tokens(t5(), 2, &[0, 1]);
        assert_eq!(s.tokenized_interval(-1), (-1, 1));
        assert_eq!(s.tokenized_interval(0), (2, 2));
    }

    #[test]
    fn fix_examples() {
        let s = DremState::new(t5(), 2, &[]).unwrap();
        for v in 0..5 {
            assert_eq!(s.fix_rdeg(v).unwrap(), t5().indeg(v));
        }
        let mut s = DremState::new(t5(), 2, &[4]).unwrap();
        s.tok.remove(3);
        s.tok.insert(4);
        s.vtok[4] = 4;
        assert_eq!(s.fix_rdeg(3).unwrap(), 3);
        assert_eq!(s.fix_rdeg(4), Err(Error::AlreadyRemoved(4)));
    }

    #[test]
    fn init_examples() {
        let s = DremState::new(t5(), 2, &[]).unwrap();
        assert!(s.tokens().is_empty());
        assert_eq!(s.snapshot().rdeg, vec![Some(1), Some(1), Some(2), Some(3), Some(3)]);

        let s = DremState::new(t5(), 2, &[4]).unwrap();
        assert_eq!(s.tokens().to_sorted_vec(), vec![3]);
        assert_eq!(s.snapshot().rdeg, vec![Some(0), Some(1), Some(2), Some(4), None]);
        s.audit().unwrap();

        assert_eq!(
            DremState::new(t5(), 1, &[0, 1]).unwrap_err(),
            Error::Capacity { capacity: 1 }
        );
    }

    #[test]
    fn remove_restore_examples() {
        let mut s = DremState::new(t3cyc(), 1, &[]).unwrap();
        s.remove(0).unwrap();
        s.audit().unwrap();
        assert_eq!(s.reduced_indeg(1), 0);
        assert_eq!(s.reduced_indeg(2), 1);
        assert_eq!(s.remove(1), Err(Error::Capacity { capacity: 1 }));
        assert_eq!(s.remove(0), Err(Error::AlreadyRemoved(0)));

        let mut s = DremState::new(t5(), 2, &[]).unwrap();
        s.remove(4).unwrap();
        s.audit().unwrap();
        s.restore(4).unwrap();
        s.audit().unwrap();
        assert_eq!(s.snapshot().rdeg, vec![Some(1), Some(1), Some(2), Some(3), Some(3)]);
        assert_eq!(s.restore(4), Err(Error::NotRemoved(4)));

        let mut s = DremState::new(t5(), 2, &[1]).unwrap();
        s.restore(1).unwrap();
        assert_eq!(s.snapshot(), DremState::new(t5(), 2, &[]).unwrap().snapshot());

        let mut s = DremState::new(Tournament::transitive(6), 2, &[]).unwrap();
        s.remove(5).unwrap();
        s.audit().unwrap();
        let fresh = DremState::new(Tournament::transitive(6), 2, &[5]).unwrap();
        for v in 0..5 {
            assert_eq!(s.reduced_indeg(v), fresh.reduced_indeg(v));
        }
    }

    #[test]
    fn reverse_examples() {
        let mut s = DremState::new(t3cyc(), 1, &[]).unwrap();
        let before = oracles::naive_views(s.tournament(), &[], 1).long_graph;
        let delta = s.reverse(2, 0).unwrap();
        let after = oracles::naive_views(s.tournament(), &[], 1).long_graph;
        let mut want: Vec<LongChange> = after
            .iter()
            .filter(|e| !before.contains(e))
            .map(|&(a, b)| LongChange::Added(a, b))
            .chain(before.iter().filter(|e| !after.contains(e)).map(|&(a, b)| LongChange::Removed(a, b)))
            .collect();
        want.sort();
        let mut got = delta;
        got.sort();
        assert_eq!(got, want);

        let mut s = DremState::new(t5(), 5, &[]).unwrap();
        assert!(s.reverse(0, 1).unwrap().is_empty());
    }

    #[test]
    fn dump_format() {
        let s = DremState::new(t5(), 2, &[4]).unwrap();
        let d = s.dump();
        assert!(d.starts_with("0 1 0 0 -\n"));
        assert!(d.contains("4 3 1 - 3\n"));
        assert!(d.ends_with("tok 3\n"));
    }

    #[derive(Clone, Debug)]
    enum Op {
        Remove(usize),
        Restore(usize),
        Reverse(usize, usize),
    }

    fn scenario() -> impl Strategy<Value = (Tournament, usize, Vec<Op>)> {
        (2usize..=32, 1usize..=4).prop_flat_map(|(n, k)| {
            let op = prop_oneof![
                (0..n).prop_map(Op::Remove),
                (0..n).prop_map(Op::Restore),
                (0..n, 0..n).prop_map(|(a, b)| Op::Reverse(a, b)),
                (0..n, 0..n).prop_map(|(a, b)| Op::Reverse(a, b)),
            ];
            (
                proptest::collection::vec(proptest::bool::weighted(0.85), n * (n - 1) / 2),
                Just(k),
                proptest::collection::vec(op, 0..50),
            )
                .prop_map(move |(bits, k, ops)| {
                    let mut it = bits.into_iter();
                    (Tournament::from_fn(n, |_, _| it.next().unwrap()), k, ops)
                })
        })
    }

    /// Ordering and bucket-size facts implied by the invariants.
    fn observations(s: &DremState) -> std::result::Result<(), String> {
        let f = s.removed().len() as i64;
        let rest: Vec<usize> = (0..s.n()).filter(|&v| !s.is_removed(v)).collect();
        for &u in &rest {
            for &v in &rest {
                let (ru, rv) = (s.rdeg[u] as i64, s.rdeg[v] as i64);
                let (du, dv) = (s.reduced_indeg(u) as i64, s.reduced_indeg(v) as i64);
                let (tu, tv) = (s.tournament().indeg(u) as i64, s.tournament().indeg(v) as i64);
                if ru <= rv && du > dv {
                    return Err(format!("order of {u},{v} not preserved"));
                }
                let gap = rv - ru;
                if gap - f >= 0 && dv - du < gap - f {
                    return Err(format!("reduced gap of {u},{v} too small"));
                }
                if gap - 2 * f >= 0 && tv - tu < gap - 2 * f {
                    return Err(format!("degree gap of {u},{v} too small"));
                }
            }
        }
        let cap = s.base().max_bucket() * (s.removed().len() + 1);
        for d in 0..s.n() {
            if s.reduced_index().bucket_len(d) > cap {
                return Err(format!("reduced bucket {d} larger than {cap}"));
            }
        }
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn invariants_hold_after_every_op((t, k, ops) in scenario()) {
            let mut s = DremState::new(t, k, &[]).unwrap();
            for op in ops {
                let before = s.snapshot();
                let res = match op {
                    Op::Remove(v) => s.remove(v).map(|_| ()),
                    Op::Restore(v) => s.restore(v).map(|_| ()),
                    Op::Reverse(a, b) => s.reverse(a, b).map(|d| {
                        assert!(d.len() <= 12 * s.base().max_bucket() + 1);
                    }),
                };
                if res.is_err() {
                    prop_assert_eq!(s.snapshot(), before);
                }
                if let Err(e) = s.audit() {
                    prop_assert!(false, "{}", e);
                }
                if let Err(e) = observations(&s) {
                    prop_assert!(false, "{}", e);
                }
            }
        }

        #[test]
        fn removal_shifts_degrees_by_at_most_one((t, k, _) in scenario(), pick in any::<proptest::sample::Index>()) {
            let mut s = DremState::new(t, k, &[]).unwrap();
            let v = pick.index(s.n());
            let before: Vec<usize> = (0..s.n()).map(|x| s.reduced_indeg(x)).collect();
            s.remove(v).unwrap();
            for x in (0..s.n()).filter(|&x| x != v) {
                let d = before[x] - s.reduced_indeg(x);
                prop_assert!(d <= 1);
            }
        }
    }
}
