//! Tournaments stored as an orientation bit matrix with cached in-degrees.

use crate::error::{Error, Result};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    indeg: Vec<usize>,
}

impl Tournament {
    /// The transitive tournament with arcs `i -> j` for all `i < j`.
    pub fn transitive(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for u in 0..n {
            let row = &mut bits[u * words..(u + 1) * words];
            for v in u + 1..n {
                row[v / 64] |= 1 << (v % 64);
            }
        }
        Tournament {
            n,
            words,
            bits,
            indeg: (0..n).collect(),
        }
    }

    /// Transitive tournament along `order`: `order[i] -> order[j]` for `i < j`.
    pub fn from_order(order: &[usize]) -> Self {
        let n = order.len();
        let mut rank = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        Self::from_fn(n, |u, v| rank[u] < rank[v])
    }

    /// Builds a tournament from a predicate consulted for `u < v` only:
    /// `arc(u, v)` if it returns true, else `arc(v, u)`.
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        let mut indeg = vec![0; n];
        for u in 0..n {
            for v in u + 1..n {
                let (a, b) = if forward(u, v) { (u, v) } else { (v, u) };
                bits[a * words + b / 64] |= 1 << (b % 64);
                indeg[b] += 1;
            }
        }
        Tournament { n, words, bits, indeg }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn indeg(&self, v: usize) -> usize {
        self.indeg[v]
    }

    pub fn indegrees(&self) -> &[usize] {
        &self.indeg
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { v, n: self.n })
        }
    }

    pub fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        Ok(())
    }

    /// Flips the arc between `u` and `v`, whichever way it points.
    /// Returns the new `(tail, head)`.
    pub fn reverse(&mut self, u: usize, v: usize) -> (usize, usize) {
        let (tail, head) = if self.arc(u, v) { (u, v) } else { (v, u) };
        let w = self.words;
        self.bits[tail * w + head / 64] ^= 1 << (head % 64);
        self.bits[head * w + tail / 64] ^= 1 << (tail % 64);
        self.indeg[head] -= 1;
        self.indeg[tail] += 1;
        (head, tail)
    }

    /// Out-neighbourhood row as packed words.
    pub fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    /// Induced sub-tournament on `keep`, relabelled `0..keep.len()` in order.
    pub fn induced(&self, keep: &[usize]) -> Tournament {
        Self::from_fn(keep.len(), |a, b| self.arc(keep[a], keep[b]))
    }

    /// Parses the text format: `n` on the first line, then `n` rows of
    /// `0`/`1` characters where row `u`, column `v` is 1 iff `u -> v`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, first) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing vertex count".into(),
        })?;
        let n: usize = first.parse().map_err(|_| Error::Parse {
            line: ln,
            msg: format!("bad vertex count {first:?}"),
        })?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, row) = lines.next().ok_or(Error::Parse {
                line: ln + rows.len() + 1,
                msg: "missing matrix row".into(),
            })?;
            if row.len() != n || !row.bytes().all(|c| c == b'0' || c == b'1') {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("expected {n} characters of 0/1"),
                });
            }
            rows.push((ln, row.as_bytes()));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse {
                line: ln,
                msg: "trailing data".into(),
            });
        }
        for u in 0..n {
            let (ln, row) = rows[u];
            if row[u] != b'0' {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("self-loop at {u}"),
                });
            }
            for v in u + 1..n {
                if (row[v] == b'1') == (rows[v].1[u] == b'1') {
                    return Err(Error::Parse {
                        line: ln,
                        msg: format!("pair ({u},{v}) must have exactly one arc"),
                    });
                }
            }
        }
        Ok(Self::from_fn(n, |u, v| rows[u].1[v] == b'1'))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.n * (self.n + 1) + 8);
        let _ = writeln!(s, "{}", self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                s.push(if self.arc(u, v) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

/// A directed triangle `a -> b -> c -> a`, rotated so `a` is the smallest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triangle(pub [usize; 3]);

impl Triangle {
    /// Canonical rotation of the cycle `a -> b -> c -> a`.
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        if a < b && a < c {
            Triangle([a, b, c])
        } else if b < c {
            Triangle([b, c, a])
        } else {
            Triangle([c, a, b])
        }
    }

    pub fn vertices(&self) -> [usize; 3] {
        self.0
    }

    pub fn is_valid_in(&self, t: &Tournament) -> bool {
        let [a, b, c] = self.0;
        a != b && b != c && a != c && t.arc(a, b) && t.arc(b, c) && t.arc(c, a)
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn fixtures_have_expected_degrees() {
        assert_eq!(t3trans().indegrees(), &[0, 1, 2]);
        assert_eq!(t3cyc().indegrees(), &[1, 1, 1]);
        assert!(t3cyc().arc(2, 0));
        assert_eq!(t5().indegrees(), &[1, 1, 2, 3, 3]);
    }

    #[test]
    fn text_round_trip() {
        let t = t5();
        let back = Tournament::parse(&t.to_text()).unwrap();
        assert_eq!(t, back);
        assert_eq!(Tournament::parse("0\n").unwrap().n(), 0);
    }

    #[test]
    fn parse_rejects_non_tournaments() {
        assert!(Tournament::parse("2\n01\n01\n").is_err());
        assert!(Tournament::parse("2\n00\n00\n").is_err());
        assert!(Tournament::parse("2\n11\n00\n").is_err());
        assert!(Tournament::parse("2\n01\n").is_err());
        assert!(Tournament::parse("x\n").is_err());
    }

    #[test]
    fn triangle_rotation() {
        assert_eq!(Triangle::new(2, 0, 1).0, [0, 1, 2]);
        assert_eq!(Triangle::new(1, 2, 0).0, [0, 1, 2]);
        assert!(Triangle::new(0, 1, 2).is_valid_in(&t3cyc()));
        assert!(!Triangle::new(0, 2, 1).is_valid_in(&t3cyc()));
    }

    #[test]
    fn wide_rows() {
        let mut t = Tournament::transitive(130);
        t.reverse(3, 129);
        assert!(t.arc(129, 3));
        assert_eq!(t.indeg(3), 4);
        assert_eq!(t.indeg(129), 128);
        assert_eq!(t.indegrees().iter().sum::<usize>(), 130 * 129 / 2);
    }
}
