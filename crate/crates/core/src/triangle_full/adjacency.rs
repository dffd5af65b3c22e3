//! Per-vertex summing trees over in-neighbour indicator vectors.
//!
//! Leaves are bits of a packed row. Nodes covering at least a whole word
//! store explicit counts; smaller nodes are answered by a masked popcount.

use crate::tournament::Tournament;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    n: usize,
    leaves: usize,
    block: usize,
    blocks: usize,
    words: usize,
    bits: Vec<u64>,
    counts: Vec<u32>,
}

impl Adjacency {
    pub fn new(t: &Tournament, leaves: usize) -> Self {
        let n = t.n();
        let block = leaves.min(64);
        let blocks = leaves / block;
        let words = leaves.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for u in 0..n {
            for v in 0..n {
                if t.arc(u, v) {
                    bits[v * words + u / 64] |= 1 << (u % 64);
                }
            }
        }
        let mut a = Adjacency {
            n,
            leaves,
            block,
            blocks,
            words,
            bits,
            counts: vec![0; n * 2 * blocks],
        };
        for v in 0..n {
            a.rebuild(v);
        }
        a
    }

    fn rebuild(&mut self, v: usize) {
        let base = v * 2 * self.blocks;
        for b in 0..self.blocks {
            let c = self.block_popcount(v, b);
            self.counts[base + self.blocks + b] = c;
        }
        for i in (1..self.blocks).rev() {
            self.counts[base + i] = self.counts[base + 2 * i] + self.counts[base + 2 * i + 1];
        }
    }

    fn block_popcount(&self, v: usize, b: usize) -> u32 {
        let start = b * self.block;
        let w = self.bits[v * self.words + start / 64];
        (w & mask(start % 64, self.block)).count_ones()
    }

    pub fn leaf(&self, v: usize, x: usize) -> bool {
        self.bits[v * self.words + x / 64] >> (x % 64) & 1 == 1
    }

    /// Number of in-neighbours of `v` in node `i`'s interval.
    pub fn sum(&self, v: usize, i: usize) -> usize {
        let h = usize::BITS as usize - 1 - i.leading_zeros() as usize;
        let len = self.leaves >> h;
        if len >= self.block {
            return self.counts[v * 2 * self.blocks + i] as usize;
        }
        let start = (i - (1 << h)) * len;
        let w = self.bits[v * self.words + start / 64];
        (w & mask(start % 64, len)).count_ones() as usize
    }

    /// Sets leaf `x` of `v`'s tree; returns the number of stored nodes touched.
    pub fn set(&mut self, v: usize, x: usize, on: bool) -> u64 {
        if self.leaf(v, x) == on {
            return 0;
        }
        self.bits[v * self.words + x / 64] ^= 1 << (x % 64);
        let base = v * 2 * self.blocks;
        let mut i = self.blocks + x / self.block;
        let mut touched = 0;
        while i >= 1 {
            if on {
                self.counts[base + i] += 1;
            } else {
                self.counts[base + i] -= 1;
            }
            touched += 1;
            i /= 2;
        }
        touched
    }

    pub fn audit(&self, t: &Tournament) -> Result<(), String> {
        for v in 0..self.n {
            for x in 0..self.leaves {
                let want = x < self.n && t.arc(x, v);
                if self.leaf(v, x) != want {
                    return Err(format!("adjacency leaf {x} of {v} is stale"));
                }
            }
            for i in 1..2 * self.leaves {
                let h = usize::BITS as usize - 1 - i.leading_zeros() as usize;
                let len = self.leaves >> h;
                let start = (i - (1 << h)) * len;
                let want = (start..start + len).filter(|&x| self.leaf(v, x)).count();
                if self.sum(v, i) != want {
                    return Err(format!("adjacency node {i} of {v} is stale"));
                }
            }
        }
        Ok(())
    }
}

fn mask(offset: usize, len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        ((1u64 << len) - 1) << offset
    }
}
