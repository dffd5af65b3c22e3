//! Degree buckets over a tournament and the prefix search shared by all
//! triangle structures.

use crate::arrayset::ArraySet;
use crate::counters::Counters;
use crate::error::{Error, Result};
use crate::tournament::Tournament;

const NIL: u32 = u32::MAX;

/// Vertices partitioned into buckets keyed by `[0, n)`. Each bucket is an
/// intrusive doubly linked list; insertion happens at the head.
#[derive(Clone, Debug)]
pub struct BucketedIndex {
    head: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    key: Vec<u32>,
    size: Vec<u32>,
    empty: ArraySet,
    size_hist: Vec<usize>,
    max_bucket: usize,
}

impl BucketedIndex {
    /// All `n` buckets empty, no vertex stored.
    pub fn new(n: usize) -> Self {
        let mut empty = ArraySet::new(n);
        for d in (0..n).rev() {
            empty.insert(d);
        }
        let mut size_hist = vec![0; n + 1];
        if n > 0 {
            size_hist[0] = n;
        }
        BucketedIndex {
            head: vec![NIL; n],
            next: vec![NIL; n],
            prev: vec![NIL; n],
            key: vec![NIL; n],
            size: vec![0; n],
            empty,
            size_hist,
            max_bucket: 0,
        }
    }

    /// Index of all vertices keyed by in-degree. Vertices are inserted in
    /// descending order so each bucket lists its vertices by increasing index.
    pub fn from_degrees(degrees: &[usize]) -> Self {
        let mut idx = Self::new(degrees.len());
        for v in (0..degrees.len()).rev() {
            idx.insert(v, degrees[v]);
        }
        idx
    }

    pub fn n(&self) -> usize {
        self.head.len()
    }

    fn grow(&mut self, d: usize) {
        let s = self.size[d] as usize;
        self.size_hist[s] -= 1;
        self.size_hist[s + 1] += 1;
        if s + 1 > self.max_bucket {
            self.max_bucket = s + 1;
        }
        if s == 0 {
            self.empty.remove(d);
        }
        self.size[d] += 1;
    }

    fn shrink(&mut self, d: usize) {
        let s = self.size[d] as usize;
        self.size_hist[s] -= 1;
        self.size_hist[s - 1] += 1;
        if s == self.max_bucket && self.size_hist[s] == 0 {
            self.max_bucket = s - 1;
        }
        if s == 1 {
            self.empty.insert(d);
        }
        self.size[d] -= 1;
    }

    pub fn insert(&mut self, v: usize, d: usize) {
        debug_assert_eq!(self.key[v], NIL, "vertex {v} already indexed");
        let h = self.head[d];
        self.next[v] = h;
        self.prev[v] = NIL;
        if h != NIL {
            self.prev[h as usize] = v as u32;
        }
        self.head[d] = v as u32;
        self.key[v] = d as u32;
        self.grow(d);
    }

    pub fn remove(&mut self, v: usize) {
        let d = self.key[v];
        debug_assert_ne!(d, NIL, "vertex {v} not indexed");
        let d = d as usize;
        let (p, nx) = (self.prev[v], self.next[v]);
        if p != NIL {
            self.next[p as usize] = nx;
        } else {
            self.head[d] = nx;
        }
        if nx != NIL {
            self.prev[nx as usize] = p;
        }
        self.key[v] = NIL;
        self.shrink(d);
    }

    pub fn move_to(&mut self, v: usize, d: usize) {
        if self.key[v] as usize != d {
            self.remove(v);
            self.insert(v, d);
        }
    }

    pub fn key_of(&self, v: usize) -> Option<usize> {
        (self.key[v] != NIL).then_some(self.key[v] as usize)
    }

    pub fn head(&self, d: usize) -> Option<usize> {
        (self.head[d] != NIL).then_some(self.head[d] as usize)
    }

    pub fn bucket_len(&self, d: usize) -> usize {
        self.size[d] as usize
    }

    pub fn bucket(&self, d: usize) -> BucketIter<'_> {
        BucketIter {
            idx: self,
            cur: self.head[d],
        }
    }

    pub fn empty(&self) -> &ArraySet {
        &self.empty
    }

    pub fn size_hist(&self) -> &[usize] {
        &self.size_hist
    }

    pub fn max_bucket(&self) -> usize {
        self.max_bucket
    }

    /// Bucket contents as sorted vectors, independent of list order.
    pub fn sorted_buckets(&self) -> Vec<Vec<usize>> {
        (0..self.n())
            .map(|d| {
                let mut b: Vec<usize> = self.bucket(d).collect();
                b.sort_unstable();
                b
            })
            .collect()
    }

    /// Checks internal consistency against `expected`: `Some(d)` for a
    /// vertex stored under key `d`, `None` for an absent vertex.
    pub fn audit(&self, expected: &[Option<usize>]) -> std::result::Result<(), String> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut hist = vec![0usize; n + 1];
        for d in 0..n {
            let mut count = 0;
            let mut prev = NIL;
            let mut cur = self.head[d];
            while cur != NIL {
                let v = cur as usize;
                if seen[v] {
                    return Err(format!("vertex {v} listed twice"));
                }
                seen[v] = true;
                if self.prev[v] != prev {
                    return Err(format!("broken back link at vertex {v}"));
                }
                if expected[v] != Some(d) {
                    return Err(format!(
                        "vertex {v} in bucket {d}, expected {:?}",
                        expected[v]
                    ));
                }
                count += 1;
                prev = cur;
                cur = self.next[v];
            }
            if count != self.size[d] as usize {
                return Err(format!("bucket {d} size field is stale"));
            }
            if (count == 0) != self.empty.contains(d) {
                return Err(format!("empty set wrong at {d}"));
            }
            hist[count] += 1;
        }
        for v in 0..n {
            if expected[v].is_some() != seen[v] {
                return Err(format!("vertex {v} presence mismatch"));
            }
            if self.key_of(v) != expected[v] {
                return Err(format!("vertex {v} key field is stale"));
            }
        }
        if hist != self.size_hist {
            return Err("size histogram is stale".into());
        }
        let max = (0..n).map(|d| self.size[d] as usize).max().unwrap_or(0);
        if max != self.max_bucket {
            return Err(format!("max bucket {} but recorded {}", max, self.max_bucket));
        }
        Ok(())
    }
}

pub struct BucketIter<'a> {
    idx: &'a BucketedIndex,
    cur: u32,
}

impl Iterator for BucketIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.cur == NIL {
            return None;
        }
        let v = self.cur as usize;
        self.cur = self.idx.next[v];
        Some(v)
    }
}

/// Tournament together with its in-degree buckets.
#[derive(Clone, Debug)]
pub struct DsBasic {
    t: Tournament,
    idx: BucketedIndex,
    pub counters: Counters,
}

/// Order-independent view of a [`DsBasic`], used for equality checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicSnapshot {
    pub tournament: Tournament,
    pub buckets: Vec<Vec<usize>>,
    pub empty: Vec<usize>,
    pub size_hist: Vec<usize>,
    pub max_bucket: usize,
}

impl DsBasic {
    pub fn new(t: Tournament) -> Self {
        let idx = BucketedIndex::from_degrees(t.indegrees());
        DsBasic {
            t,
            idx,
            counters: Counters::default(),
        }
    }

    pub fn tournament(&self) -> &Tournament {
        &self.t
    }

    pub fn index(&self) -> &BucketedIndex {
        &self.idx
    }

    pub fn n(&self) -> usize {
        self.t.n()
    }

    #[inline]
    pub fn arc(&self, u: usize, v: usize) -> bool {
        self.t.arc(u, v)
    }

    #[inline]
    pub fn indeg(&self, v: usize) -> usize {
        self.t.indeg(v)
    }

    pub fn max_bucket(&self) -> usize {
        self.idx.max_bucket()
    }

    pub fn empty(&self) -> &ArraySet {
        self.idx.empty()
    }

    /// Flips the arc between `u` and `v`; returns the new `(tail, head)`.
    pub fn reverse(&mut self, u: usize, v: usize) -> Result<(usize, usize)> {
        self.t.check_pair(u, v)?;
        let (tail, head) = self.t.reverse(u, v);
        self.idx.move_to(tail, self.t.indeg(tail));
        self.idx.move_to(head, self.t.indeg(head));
        Ok((tail, head))
    }

    /// Whether the arc `u -> v` goes against the degree order (ties count).
    pub fn is_back_arc(&self, u: usize, v: usize) -> Result<bool> {
        self.t.check_pair(u, v)?;
        if !self.t.arc(u, v) {
            return Err(Error::NoSuchArc(u, v));
        }
        Ok(self.t.indeg(u) >= self.t.indeg(v))
    }

    /// Number of vertices in the prefix: the smallest empty degree, or `n`
    /// when no bucket is empty.
    pub fn prefix_len(&mut self) -> usize {
        self.counters.bucket += self.idx.empty().len() as u64;
        self.idx.empty().min().unwrap_or(self.n())
    }

    /// A vertex of minimum in-degree in the tournament with its prefix
    /// removed, together with that in-degree. `None` when nothing remains.
    pub fn find_first_after_prefix(&mut self) -> Option<(usize, usize)> {
        let empty = self.idx.empty();
        self.counters.bucket += empty.len() as u64;
        let p = empty.min()?;
        let mut d = p + 1;
        while empty.contains(d) {
            d += 1;
        }
        let v = self.idx.head(d)?;
        Some((v, d - p))
    }

    pub fn snapshot(&self) -> BasicSnapshot {
        BasicSnapshot {
            tournament: self.t.clone(),
            buckets: self.idx.sorted_buckets(),
            empty: self.idx.empty().to_sorted_vec(),
            size_hist: self.idx.size_hist().to_vec(),
            max_bucket: self.idx.max_bucket(),
        }
    }

    /// Recomputes everything from the orientation matrix and compares.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let n = self.n();
        for v in 0..n {
            let d = (0..n).filter(|&u| self.t.arc(u, v)).count();
            if d != self.t.indeg(v) {
                return Err(format!("cached in-degree of {v} is stale"));
            }
        }
        let expected: Vec<Option<usize>> = self.t.indegrees().iter().map(|&d| Some(d)).collect();
        self.idx.audit(&expected)
    }

    /// Moves one vertex into a wrong bucket without touching the tournament.
    #[doc(hidden)]
    pub fn corrupt_for_test(&mut self) {
        if self.n() >= 2 {
            let d = (self.t.indeg(0) + 1) % self.n();
            self.idx.move_to(0, d);
        }
    }
}
