//! Triangle search for the promise model: degree buckets plus an explicit
//! set of back arcs.

use crate::basic::{BasicSnapshot, DsBasic};
use crate::counters::Counters;
use crate::error::{Error, Result};
use crate::tournament::{Tournament, Triangle};
use indexmap::IndexSet;

/// Outcome of a bounded triangle search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Search {
    Found(Triangle),
    /// The tournament is acyclic.
    None,
    /// The arc-disjoint triangle number exceeds the bound.
    TooMany,
}

/// Largest bucket size compatible with at most `d` arc-disjoint triangles.
pub fn bucket_bound(d: usize) -> f64 {
    8.0 * (((d + 1) as f64).sqrt() + 1.0)
}

/// Largest empty-set size compatible with at most `d` arc-disjoint triangles.
pub fn empty_bound(d: usize) -> usize {
    12 * (d + 1)
}

/// Largest back-arc count compatible with at most `d` arc-disjoint triangles.
pub fn back_bound(d: usize) -> f64 {
    288.0 * (d + 1) as f64 * (((6 * d + 7) as f64).sqrt() + 1.0)
}

/// Largest change in the back-arc set a single reversal can cause when the
/// tournament has at most `d` arc-disjoint triangles.
pub fn back_change_bound(d: usize) -> f64 {
    48.0 * (((d + 1) as f64).sqrt() + 1.0)
}

#[derive(Clone, Debug)]
pub struct DspTriangle {
    base: DsBasic,
    back: IndexSet<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PromiseSnapshot {
    pub base: BasicSnapshot,
    pub back: Vec<(u32, u32)>,
}

impl DspTriangle {
    pub fn new(t: Tournament) -> Self {
        let base = DsBasic::new(t);
        let t = base.tournament();
        let mut back = IndexSet::new();
        for u in 0..t.n() {
            for v in 0..t.n() {
                if u != v && t.arc(u, v) && t.indeg(u) >= t.indeg(v) {
                    back.insert((u as u32, v as u32));
                }
            }
        }
        DspTriangle { base, back }
    }

    pub fn base(&self) -> &DsBasic {
        &self.base
    }

    pub fn tournament(&self) -> &Tournament {
        self.base.tournament()
    }

    pub fn counters(&self) -> Counters {
        self.base.counters
    }

    pub(crate) fn counters_mut(&mut self) -> &mut Counters {
        &mut self.base.counters
    }

    pub fn back_len(&self) -> usize {
        self.back.len()
    }

    pub fn back_arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.back.iter().map(|&(a, b)| (a as usize, b as usize))
    }

    fn retest(&mut self, a: usize, b: usize) {
        let t = self.base.tournament();
        let (tail, head) = if t.arc(a, b) { (a, b) } else { (b, a) };
        let is_back = t.indeg(tail) >= t.indeg(head);
        self.back.swap_remove(&(head as u32, tail as u32));
        if is_back {
            self.back.insert((tail as u32, head as u32));
        } else {
            self.back.swap_remove(&(tail as u32, head as u32));
        }
    }

    /// Flips the arc between `u` and `v` and repairs the back-arc set by
    /// re-testing arcs from `{u, v}` into the buckets adjacent to their old
    /// degrees.
    pub fn reverse(&mut self, u: usize, v: usize) -> Result<()> {
        self.base.tournament().check_pair(u, v)?;
        let n = self.base.n();
        let (du, dv) = (self.base.indeg(u), self.base.indeg(v));
        let mut degrees: Vec<usize> = [du, dv]
            .iter()
            .flat_map(|&d| d.saturating_sub(1)..=(d + 1).min(n - 1))
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut cand = Vec::new();
        for d in degrees {
            for x in self.base.index().bucket(d) {
                cand.push(x);
            }
        }
        self.base.counters.bucket += cand.len() as u64;
        self.base.reverse(u, v)?;
        for x in cand {
            if x != u && x != v {
                self.retest(u, x);
                self.retest(v, x);
            }
        }
        self.retest(u, v);
        Ok(())
    }

    /// Reverses only if the largest bucket is small enough for the
    /// arc-disjoint triangle number to be at most `d`. Returns false, with no
    /// change, otherwise.
    pub fn reverse_bnd(&mut self, u: usize, v: usize, d: usize) -> Result<bool> {
        self.base.tournament().check_pair(u, v)?;
        if self.base.max_bucket() as f64 > bucket_bound(d) {
            return Ok(false);
        }
        self.reverse(u, v)?;
        Ok(true)
    }

    /// Up to `l` in-neighbours of `v` outside the prefix.
    pub fn incoming(&mut self, v: usize, l: usize) -> Result<Vec<usize>> {
        self.base.tournament().check_vertex(v)?;
        let p = self.base.prefix_len();
        let dv = self.base.indeg(v);
        if dv < p {
            return Err(Error::NotInRemainder(v));
        }
        let mut out = Vec::new();
        if l == 0 {
            return Ok(out);
        }
        for &(a, b) in &self.back {
            self.base.counters.back += 1;
            if b as usize == v {
                out.push(a as usize);
                if out.len() == l {
                    return Ok(out);
                }
            }
        }
        let mut scanned = 0;
        'outer: for d in p..dv {
            for w in self.base.index().bucket(d) {
                scanned += 1;
                if self.base.arc(w, v) {
                    out.push(w);
                    if out.len() == l {
                        break 'outer;
                    }
                }
            }
        }
        self.base.counters.bucket += scanned;
        Ok(out)
    }

    /// A directed triangle, or `None` if the tournament is acyclic.
    pub fn find_triangle(&mut self) -> Option<Triangle> {
        let (v, dv) = self.base.find_first_after_prefix()?;
        let u = self.incoming(v, 1).expect("vertex lies outside the prefix")[0];
        let cands = self.incoming(u, dv).expect("vertex lies outside the prefix");
        let w = cands
            .into_iter()
            .find(|&w| self.base.arc(v, w))
            .expect("an in-neighbour of u must close the triangle");
        Some(Triangle::new(w, u, v))
    }

    /// Triangle search that first rules out more than `d` arc-disjoint
    /// triangles using the back-arc and empty-set sizes.
    pub fn find_triangle_bnd(&mut self, d: usize) -> Search {
        if self.back.len() as f64 > back_bound(d) || self.base.empty().len() > empty_bound(d) {
            return Search::TooMany;
        }
        match self.find_triangle() {
            Some(t) => Search::Found(t),
            None => Search::None,
        }
    }

    pub fn snapshot(&self) -> PromiseSnapshot {
        let mut back: Vec<(u32, u32)> = self.back.iter().copied().collect();
        back.sort_unstable();
        PromiseSnapshot {
            base: self.base.snapshot(),
            back,
        }
    }

    pub fn audit(&self) -> std::result::Result<(), String> {
        self.base.audit()?;
        let t = self.base.tournament();
        let mut expected = Vec::new();
        for u in 0..t.n() {
            for v in 0..t.n() {
                if u != v && t.arc(u, v) && t.indeg(u) >= t.indeg(v) {
                    expected.push((u as u32, v as u32));
                }
            }
        }
        let mut have: Vec<(u32, u32)> = self.back.iter().copied().collect();
        have.sort_unstable();
        if have != expected {
            return Err("back-arc set differs from recomputation".into());
        }
        Ok(())
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

    #[test]
    fn reverse_examples() {
        let mut s = DspTriangle::new(t3trans());
        s.reverse(1, 2).unwrap();
        assert_eq!(s.back_len(), 0);
        s.audit().unwrap();

        let mut s = DspTriangle::new(t3trans());
        s.reverse(2, 0).unwrap();
        assert_eq!(s.snapshot().back, vec![(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn incoming_examples() {
        let mut s = DspTriangle::new(t3cyc());
        assert_eq!(s.incoming(0, 1).unwrap(), vec![2]);
        assert_eq!(s.incoming(0, 5).unwrap(), vec![2]);
        assert_eq!(s.incoming(0, 0).unwrap(), Vec::<usize>::new());

        let mut s = DspTriangle::new(t5());
        let mut got = s.incoming(4, 3).unwrap();
        got.sort_unstable();
        assert_eq!(got, vec![1, 2, 3]);

        let mut s = DspTriangle::new(t3trans());
        assert_eq!(s.incoming(0, 1), Err(Error::NotInRemainder(0)));
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(DspTriangle::new(t3trans()).find_triangle(), None);
        assert_eq!(DspTriangle::new(t3cyc()).find_triangle(), Some(Triangle([0, 1, 2])));
        let t = t5();
        let tri = DspTriangle::new(t.clone()).find_triangle().unwrap();
        assert!(tri.is_valid_in(&t));
        assert!(oracles::find_triangle(&t).is_some());
    }

    #[test]
    fn bounded_examples() {
        let mut s = DspTriangle::new(t3cyc());
        assert!(s.reverse_bnd(0, 1, 0).unwrap());
        assert_eq!(bucket_bound(0), 16.0);
        assert_eq!(DspTriangle::new(t3trans()).find_triangle_bnd(0), Search::None);
        assert_eq!(
            DspTriangle::new(t3cyc()).find_triangle_bnd(1),
            Search::Found(Triangle([0, 1, 2]))
        );
    }

    #[test]
    fn bounded_reverse_refuses_large_buckets() {
        // 17 vertices forming a regular tournament: every in-degree is 8.
        let t = Tournament::from_fn(17, |u, v| (v - u) <= 8);
        let mut s = DspTriangle::new(t);
        assert_eq!(s.base().max_bucket(), 17);
        let before = s.snapshot();
        assert!(!s.reverse_bnd(0, 1, 0).unwrap());
        assert_eq!(s.snapshot(), before);
    }

    fn tournament_and_flips(max_n: usize) -> impl Strategy<Value = (Tournament, Vec<(usize, usize)>)> {
        (2..=max_n).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
                proptest::collection::vec((0..n, 0..n), 0..40),
            )
                .prop_map(move |(bits, flips)| {
                    let mut it = bits.into_iter();
                    (Tournament::from_fn(n, |_, _| it.next().unwrap()), flips)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn back_set_tracks_recomputation((t, flips) in tournament_and_flips(64)) {
            let mut s = DspTriangle::new(t);
            for (u, v) in flips {
                if u == v { continue; }
                s.reverse(u, v).unwrap();
                prop_assert!(s.audit().is_ok());
            }
        }

        #[test]
        fn triangles_valid((t, flips) in tournament_and_flips(16)) {
            let mut s = DspTriangle::new(t);
            for (u, v) in flips {
                if u == v { continue; }
                s.reverse(u, v).unwrap();
                let t = s.tournament().clone();
                match s.find_triangle() {
                    Some(tri) => prop_assert!(tri.is_valid_in(&t)),
                    None => prop_assert!(oracles::is_acyclic(&t)),
                }
            }
        }

        #[test]
        fn incoming_returns_true_in_neighbours((t, _) in tournament_and_flips(16), l in 0usize..8) {
            let mut s = DspTriangle::new(t.clone());
            let views = oracles::naive_views(&t, &[], 0);
            for v in (0..t.n()).filter(|v| !views.prefix.contains(v)) {
                let want: Vec<usize> = (0..t.n())
                    .filter(|&u| t.arc(u, v) && !views.prefix.contains(&u))
                    .collect();
                let got = s.incoming(v, l).unwrap();
                prop_assert_eq!(got.len(), l.min(want.len()));
                let mut dedup = got.clone();
                dedup.sort_unstable();
                dedup.dedup();
                prop_assert_eq!(dedup.len(), got.len());
                prop_assert!(got.iter().all(|u| want.contains(u)));
            }
        }
    }
}
