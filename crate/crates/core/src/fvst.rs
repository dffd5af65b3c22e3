//! Feedback vertex set queries on top of [`DremState`].
//!
//! [`DrempState`] keeps the removed set equal to the heavy vertices: those
//! with more than `k` neighbours in the `k`-long back-arc graph. Any
//! feedback vertex set of size at most `k` must contain all of them, so a
//! query only has to branch on the remainder `T - F`. Triangles of `T - F`
//! are found through the reduced-degree buckets without materialising
//! `T - F`.

use crate::arrayset::ArraySet;
use crate::counters::Counters;
use crate::drem::{long_degrees, DremSnapshot, DremState};
use crate::error::{Error, Result};
use crate::tournament::{Tournament, Triangle};

impl DremState {
    /// Degrees in `[0, n - |F|)` held by no vertex of `T - F`, written into
    /// `out` (which is cleared first).
    pub fn empty_nof_into(&mut self, out: &mut ArraySet) {
        out.clear();
        let n = self.n() as i64;
        let m = n - self.removed.len() as i64;
        let mut scanned = 0;
        for i in self.rb.empty().iter() {
            scanned += 1;
            let i = i as i64;
            let d = i - self.ctok(i) as i64;
            if !(0..m).contains(&d) {
                continue;
            }
            let (l, r) = self.tokenized_interval(d);
            if l == i && (l..=r).all(|j| j < n && self.rb.empty().contains(j as usize)) {
                out.insert(d as usize);
            }
        }
        self.base.counters.bucket += scanned;
    }

    /// The empty set of `T - F`, sorted.
    pub fn empty_nof(&mut self) -> Vec<usize> {
        let mut out = ArraySet::new(self.n());
        self.empty_nof_into(&mut out);
        out.to_sorted_vec()
    }

    /// A vertex of minimum in-degree in `T - F` after its prefix, with that
    /// in-degree. `empty` must be the current empty set of `T - F`.
    pub fn find_first_after_prefix_nof(&mut self, empty: &ArraySet) -> Option<(usize, usize)> {
        let p = empty.min()?;
        let mut d = p + 1;
        while empty.contains(d) {
            d += 1;
        }
        let (l, r) = self.tokenized_interval(d as i64);
        for i in l..=r {
            self.base.counters.bucket += 1;
            if let Some(v) = self.rb.head(i as usize) {
                return Some((v, d - p));
            }
        }
        None
    }

    /// Smallest reduced degree of a vertex outside the prefix of `T - F`.
    fn prefix_floor(&self, empty: &ArraySet) -> i64 {
        let p = empty.min().unwrap_or(self.n() - self.removed.len());
        self.tokenized_interval(p as i64).0
    }

    fn incoming_with_floor(&mut self, v: usize, l: usize, q: i64) -> Vec<usize> {
        let mut out = Vec::new();
        if l == 0 {
            return out;
        }
        let n = self.n() as i64;
        let reach = (2 * self.removed.len() + self.k + 1) as i64;
        let rv = self.rdeg[v] as i64;
        let (lo, hi) = (rv - reach, rv + reach);

        for &u in &self.long[v] {
            self.base.counters.back += 1;
            let u = u as usize;
            if !self.removed.contains(u) && self.base.arc(u, v) && self.rdeg[u] as i64 > hi {
                out.push(u);
                if out.len() == l {
                    return out;
                }
            }
        }
        let mut scanned = 0;
        let phases = [(lo.max(0), hi.min(n - 1), true), (q.max(0), lo.min(n) - 1, false)];
        'outer: for (a, b, check_floor) in phases {
            for i in a..=b {
                for u in self.rb.bucket(i as usize) {
                    scanned += 1;
                    if self.base.arc(u, v) && (!check_floor || self.rdeg[u] as i64 >= q) {
                        out.push(u);
                        if out.len() == l {
                            break 'outer;
                        }
                    }
                }
            }
        }
        self.base.counters.bucket += scanned;
        out
    }

    /// Up to `l` in-neighbours of `v` inside `T - F` minus its prefix.
    pub fn incoming_fvst(&mut self, v: usize, l: usize) -> Result<Vec<usize>> {
        self.base.tournament().check_vertex(v)?;
        if self.removed.contains(v) {
            return Err(Error::NotInRemainder(v));
        }
        let mut empty = ArraySet::new(self.n());
        self.empty_nof_into(&mut empty);
        let p = empty.min().unwrap_or(self.n() - self.removed.len());
        if self.reduced_indeg(v) < p {
            return Err(Error::NotInRemainder(v));
        }
        let q = self.prefix_floor(&empty);
        Ok(self.incoming_with_floor(v, l, q))
    }

    /// Triangle of `T - F` as `(w, u, v)` with arcs `w -> u -> v -> w`.
    fn triangle_nof(&mut self, empty: &ArraySet) -> Option<(usize, usize, usize)> {
        let (v, dv) = self.find_first_after_prefix_nof(empty)?;
        let q = self.prefix_floor(empty);
        let u = self.incoming_with_floor(v, 1, q)[0];
        let cands = self.incoming_with_floor(u, dv, q);
        let w = cands
            .into_iter()
            .find(|&w| self.base.arc(v, w))
            .expect("an in-neighbour of u must close the triangle");
        Some((w, u, v))
    }

    /// A directed triangle avoiding the removed vertices, if any.
    pub fn find_triangle_fvst(&mut self) -> Option<Triangle> {
        let mut empty = ArraySet::new(self.n());
        self.empty_nof_into(&mut empty);
        self.triangle_nof(&empty).map(|(w, u, v)| Triangle::new(w, u, v))
    }
}

/// [`DremState`] whose removed set is kept equal to the heavy set.
#[derive(Clone, Debug)]
pub struct DrempState {
    inner: DremState,
}

impl DrempState {
    pub fn new(t: Tournament, k: usize) -> Result<Self> {
        let deg = long_degrees(&t, k);
        let heavy: Vec<usize> = (0..t.n()).filter(|&v| deg[v] > k).collect();
        if heavy.len() > k {
            return Err(Error::PromiseViolation {
                heavy: heavy.len(),
                capacity: k,
            });
        }
        Ok(DrempState {
            inner: DremState::new(t, k, &heavy)?,
        })
    }

    pub fn inner(&self) -> &DremState {
        &self.inner
    }

    pub fn k(&self) -> usize {
        self.inner.k()
    }

    /// Flips an arc and re-synchronises the removed set with the heavy set.
    /// If the new heavy set would not fit, the flip is undone and an error
    /// returned.
    pub fn reverse(&mut self, u: usize, v: usize) -> Result<()> {
        let delta = self.inner.reverse(u, v)?;
        let k = self.inner.k();
        let mut touched: Vec<usize> = delta
            .iter()
            .flat_map(|c| {
                let (a, b) = c.endpoints();
                [a, b]
            })
            .collect();
        touched.sort_unstable();
        touched.dedup();
        let (mut back, mut out) = (Vec::new(), Vec::new());
        for w in touched {
            let heavy = self.inner.long_degree(w) > k;
            match (self.inner.is_removed(w), heavy) {
                (true, false) => back.push(w),
                (false, true) => out.push(w),
                _ => {}
            }
        }
        let size = self.inner.removed().len() - back.len() + out.len();
        if size > k {
            self.inner.reverse(u, v)?;
            return Err(Error::PromiseViolation { heavy: size, capacity: k });
        }
        for w in back {
            self.inner.restore(w)?;
        }
        for w in out {
            self.inner.remove(w)?;
        }
        Ok(())
    }

    pub fn audit(&self) -> std::result::Result<(), String> {
        self.inner.audit()?;
        let k = self.inner.k();
        for v in 0..self.inner.n() {
            if (self.inner.long_degree(v) > k) != self.inner.is_removed(v) {
                return Err(format!("removed set disagrees with heavy set at {v}"));
            }
        }
        Ok(())
    }
}

/// Dynamic feedback vertex set structure under the promise that the
/// feedback vertex set never exceeds `g`.
#[derive(Clone, Debug)]
pub struct FvstDS {
    state: DrempState,
    g: usize,
    scratch: ArraySet,
}

impl FvstDS {
    pub fn new(t: Tournament, g: usize) -> Result<Self> {
        let n = t.n();
        Ok(FvstDS {
            state: DrempState::new(t, g)?,
            g,
            scratch: ArraySet::new(n),
        })
    }

    pub fn promise_bound(&self) -> usize {
        self.g
    }

    pub fn state(&self) -> &DrempState {
        &self.state
    }

    pub fn drem(&self) -> &DremState {
        &self.state.inner
    }

    pub fn tournament(&self) -> &Tournament {
        self.state.inner.tournament()
    }

    pub fn counters(&self) -> Counters {
        self.state.inner.counters()
    }

    pub fn update(&mut self, u: usize, v: usize) -> Result<()> {
        self.state.reverse(u, v)
    }

    /// See [`DremState::empty_nof`].
    pub fn empty_nof(&mut self) -> Vec<usize> {
        self.state.inner.empty_nof()
    }

    /// See [`DremState::find_triangle_fvst`].
    pub fn find_triangle_fvst(&mut self) -> Option<Triangle> {
        self.state.inner.find_triangle_fvst()
    }

    /// See [`DremState::incoming_fvst`].
    pub fn incoming_fvst(&mut self, v: usize, l: usize) -> Result<Vec<usize>> {
        self.state.inner.incoming_fvst(v, l)
    }

    /// Whether removing at most `k` vertices makes the tournament acyclic.
    pub fn find_fvst(&mut self, k: usize) -> Result<bool> {
        if k > self.g {
            return Err(Error::ParameterTooLarge { k, bound: self.g });
        }
        if self.state.inner.base().max_bucket() > 2 * k + 1 {
            return Ok(false);
        }
        Ok(self.search(k))
    }

    fn search(&mut self, k: usize) -> bool {
        let s = &mut self.state.inner;
        let f = s.removed().len();
        if k < f {
            return false;
        }
        let budget = k - f;
        let bound = budget * (2 * (self.g + f) + k * self.g + 2 * budget + 5) + 4 * f;
        if s.rempty().len() > bound {
            return false;
        }
        s.empty_nof_into(&mut self.scratch);
        if self.scratch.is_empty() {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let (w, u, v) = s
            .triangle_nof(&self.scratch)
            .expect("a non-empty empty set means a triangle exists");
        s.counters_mut().rec += 1;
        for x in [v, u, w] {
            self.state.inner.remove(x).expect("budget leaves room to remove");
            let found = self.search(k);
            self.state.inner.restore(x).expect("vertex was just removed");
            if found {
                return true;
            }
        }
        false
    }

    pub fn snapshot(&self) -> DremSnapshot {
        self.state.inner.snapshot()
    }

    pub fn audit(&self) -> std::result::Result<(), String> {
        self.state.audit()
    }

    #[doc(hidden)]
    pub fn corrupt_for_test(&mut self) {
        self.state.inner.corrupt_for_test();
    }
}
