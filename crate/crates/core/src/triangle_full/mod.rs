//! Triangle search for the full model: no assumption on the tournament,
//! polylogarithmic cost per update and per in-neighbour found.

mod adjacency;
mod degrees;

pub use adjacency::Adjacency;
pub use degrees::Degrees;

use crate::basic::{BasicSnapshot, DsBasic};
use crate::counters::Counters;
use crate::error::{Error, Result};
use crate::tournament::{Tournament, Triangle};
use crate::triangle_promise::{empty_bound, Search};

#[derive(Clone, Debug)]
pub struct DsTriangle {
    base: DsBasic,
    degrees: Degrees,
    adj: Adjacency,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullSnapshot {
    pub base: BasicSnapshot,
    pub degrees: Vec<Vec<usize>>,
    pub adj: Adjacency,
}

impl DsTriangle {
    pub fn new(t: Tournament) -> Self {
        let degrees = Degrees::new(t.indegrees());
        let adj = Adjacency::new(&t, degrees.leaves());
        DsTriangle {
            base: DsBasic::new(t),
            degrees,
            adj,
        }
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

    /// Vertices of node `i`'s interval with in-degree at most `k`.
    pub fn rect(&mut self, i: usize, k: i64) -> usize {
        let mut visits = 0;
        let r = self.degrees.rect(i, k, &mut visits);
        self.base.counters.tree += visits;
        r
    }

    pub fn reverse(&mut self, u: usize, v: usize) -> Result<()> {
        let (tail, head) = self.base.reverse(u, v)?;
        let t = self.base.tournament();
        let (dt, dh) = (t.indeg(tail), t.indeg(head));
        let mut visits = 0;
        self.degrees.update(tail, dt + 1, dt, &mut visits);
        self.degrees.update(head, dh - 1, dh, &mut visits);
        visits += self.adj.set(head, tail, true);
        visits += self.adj.set(tail, head, false);
        self.base.counters.tree += visits;
        Ok(())
    }

    /// The leftmost in-neighbour of `v` outside the prefix of length `p`,
    /// ignoring leaves currently switched off.
    pub fn single_neighbour(&mut self, v: usize, p: usize) -> Option<usize> {
        let leaves = self.degrees.leaves();
        let mut visits = 0;
        let below = p as i64 - 1;
        let avail = |i: usize, visits: &mut u64| -> bool {
            *visits += 1;
            let s = self.adj.sum(v, i);
            let pre = self.degrees.rect(i, below, visits);
            s > pre
        };
        let mut i = 1;
        let found = if !avail(1, &mut visits) {
            None
        } else {
            loop {
                if i >= leaves {
                    break Some(i - leaves);
                }
                if avail(2 * i, &mut visits) {
                    i *= 2;
                } else if avail(2 * i + 1, &mut visits) {
                    i = 2 * i + 1;
                } else {
                    break None;
                }
            }
        };
        self.base.counters.tree += visits;
        found
    }

    /// Up to `l` in-neighbours of `v` outside the prefix, leftmost first.
    pub fn incoming(&mut self, v: usize, l: usize) -> Result<Vec<usize>> {
        self.base.tournament().check_vertex(v)?;
        let p = self.base.prefix_len();
        if self.base.indeg(v) < p {
            return Err(Error::NotInRemainder(v));
        }
        let mut out = Vec::new();
        while out.len() < l {
            match self.single_neighbour(v, p) {
                Some(x) => {
                    self.base.counters.tree += self.adj.set(v, x, false);
                    out.push(x);
                }
                None => break,
            }
        }
        for &x in &out {
            self.base.counters.tree += self.adj.set(v, x, true);
        }
        Ok(out)
    }

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
    /// triangles using the empty-set size.
    pub fn find_triangle_bnd(&mut self, d: usize) -> Search {
        if self.base.empty().len() > empty_bound(d) {
            return Search::TooMany;
        }
        match self.find_triangle() {
            Some(t) => Search::Found(t),
            None => Search::None,
        }
    }

    pub fn snapshot(&self) -> FullSnapshot {
        FullSnapshot {
            base: self.base.snapshot(),
            degrees: (1..2 * self.degrees.leaves())
                .map(|i| self.degrees.node_degrees(i))
                .collect(),
            adj: self.adj.clone(),
        }
    }

    pub fn audit(&self) -> std::result::Result<(), String> {
        self.base.audit()?;
        self.degrees.audit(self.base.tournament().indegrees())?;
        self.adj.audit(self.base.tournament())
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
    use crate::triangle_promise::DspTriangle;
    use proptest::prelude::*;

    #[test]
    fn neighbour_examples() {
        let mut s = DsTriangle::new(t3cyc());
        assert_eq!(s.single_neighbour(0, 0), Some(2));
        assert_eq!(s.incoming(0, 1).unwrap(), vec![2]);

        let mut s = DsTriangle::new(t5());
        assert_eq!(s.single_neighbour(4, 0), Some(1));
        let before = s.snapshot();
        assert_eq!(s.incoming(4, 2).unwrap(), vec![1, 2]);
        assert_eq!(s.incoming(4, 10).unwrap(), vec![1, 2, 3]);
        assert_eq!(s.snapshot(), before);

        let mut s = DsTriangle::new(t3trans());
        assert_eq!(s.incoming(0, 1), Err(Error::NotInRemainder(0)));
    }

    #[test]
    fn rect_examples() {
        let mut s = DsTriangle::new(t3trans());
        assert_eq!(s.rect(1, 1), 2);
        let mut s = DsTriangle::new(t5());
        assert_eq!(s.rect(1, 1), 2);
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(DsTriangle::new(t3trans()).find_triangle(), None);
        assert_eq!(DsTriangle::new(t3cyc()).find_triangle(), Some(Triangle([0, 1, 2])));
        assert_eq!(DsTriangle::new(t3trans()).find_triangle_bnd(0), Search::None);
        assert!(matches!(DsTriangle::new(t3cyc()).find_triangle_bnd(1), Search::Found(_)));
    }

    #[test]
    fn reverse_twice_is_identity() {
        let mut s = DsTriangle::new(t5());
        let before = s.snapshot();
        s.reverse(2, 4).unwrap();
        assert_ne!(s.snapshot(), before);
        s.reverse(2, 4).unwrap();
        assert_eq!(s.snapshot(), before);
    }

    #[test]
    fn wide_instance() {
        let mut t = Tournament::transitive(200);
        t.reverse(10, 150);
        t.reverse(70, 71);
        let mut s = DsTriangle::new(t);
        s.reverse(5, 199).unwrap();
        s.audit().unwrap();
        let tri = s.find_triangle().unwrap();
        assert!(tri.is_valid_in(s.tournament()));
    }

    fn tournament_and_flips(max_n: usize) -> impl Strategy<Value = (Tournament, Vec<(usize, usize)>)> {
        (2..=max_n).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
                proptest::collection::vec((0..n, 0..n), 0..30),
            )
                .prop_map(move |(bits, flips)| {
                    let mut it = bits.into_iter();
                    (Tournament::from_fn(n, |_, _| it.next().unwrap()), flips)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn views_track_updates((t, flips) in tournament_and_flips(32)) {
            let mut s = DsTriangle::new(t);
            for (u, v) in flips {
                if u == v { continue; }
                s.reverse(u, v).unwrap();
            }
            prop_assert!(s.audit().is_ok());
        }

        #[test]
        fn single_neighbour_matches_naive((t, _) in tournament_and_flips(20)) {
            let mut s = DsTriangle::new(t.clone());
            let views = oracles::naive_views(&t, &[], 0);
            let p = views.prefix.len();
            for v in (0..t.n()).filter(|v| !views.prefix.contains(v)) {
                let first = (0..t.n()).find(|&u| t.arc(u, v) && !views.prefix.contains(&u));
                prop_assert_eq!(s.single_neighbour(v, p), first);
                let before = s.snapshot();
                let all: Vec<usize> = (0..t.n()).filter(|&u| t.arc(u, v) && !views.prefix.contains(&u)).collect();
                prop_assert_eq!(s.incoming(v, t.n()).unwrap(), all);
                prop_assert_eq!(s.snapshot(), before);
            }
        }

        #[test]
        fn agrees_with_promise_structure((t, flips) in tournament_and_flips(24)) {
            let mut full = DsTriangle::new(t.clone());
            let mut promise = DspTriangle::new(t);
            for (u, v) in flips {
                if u == v { continue; }
                full.reverse(u, v).unwrap();
                promise.reverse(u, v).unwrap();
                let a = full.find_triangle();
                let b = promise.find_triangle();
                prop_assert_eq!(a.is_some(), b.is_some());
                if let Some(tri) = a {
                    prop_assert!(tri.is_valid_in(full.tournament()));
                }
            }
        }
    }
}
