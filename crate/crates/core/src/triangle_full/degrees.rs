//! Segment tree over vertex indices whose nodes hold the in-degrees of
//! their interval in an order-statistics AVL tree.
//!
//! Every vertex owns one AVL node per tree level, so all multisets share a
//! single arena of `levels * n` slots and no allocation happens on update.

const NIL: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Arena {
    left: Vec<u32>,
    right: Vec<u32>,
    size: Vec<u32>,
    height: Vec<u8>,
    key: Vec<u64>,
}

impl Arena {
    fn size(&self, x: u32) -> u32 {
        if x == NIL {
            0
        } else {
            self.size[x as usize]
        }
    }

    fn height(&self, x: u32) -> i32 {
        if x == NIL {
            0
        } else {
            self.height[x as usize] as i32
        }
    }

    fn pull(&mut self, x: u32) {
        let (l, r) = (self.left[x as usize], self.right[x as usize]);
        self.size[x as usize] = 1 + self.size(l) + self.size(r);
        self.height[x as usize] = 1 + self.height(l).max(self.height(r)) as u8;
    }

    fn rotate_right(&mut self, x: u32) -> u32 {
        let l = self.left[x as usize];
        self.left[x as usize] = self.right[l as usize];
        self.right[l as usize] = x;
        self.pull(x);
        self.pull(l);
        l
    }

    fn rotate_left(&mut self, x: u32) -> u32 {
        let r = self.right[x as usize];
        self.right[x as usize] = self.left[r as usize];
        self.left[r as usize] = x;
        self.pull(x);
        self.pull(r);
        r
    }

    fn balance(&mut self, x: u32) -> u32 {
        self.pull(x);
        let (l, r) = (self.left[x as usize], self.right[x as usize]);
        let bf = self.height(l) - self.height(r);
        if bf > 1 {
            let ll = self.left[l as usize];
            let lr = self.right[l as usize];
            if self.height(ll) < self.height(lr) {
                self.left[x as usize] = self.rotate_left(l);
            }
            return self.rotate_right(x);
        }
        if bf < -1 {
            let rl = self.left[r as usize];
            let rr = self.right[r as usize];
            if self.height(rr) < self.height(rl) {
                self.right[x as usize] = self.rotate_right(r);
            }
            return self.rotate_left(x);
        }
        x
    }

    fn insert(&mut self, root: u32, x: u32, visits: &mut u64) -> u32 {
        if root == NIL {
            self.left[x as usize] = NIL;
            self.right[x as usize] = NIL;
            self.pull(x);
            return x;
        }
        *visits += 1;
        if self.key[x as usize] < self.key[root as usize] {
            let l = self.insert(self.left[root as usize], x, visits);
            self.left[root as usize] = l;
        } else {
            let r = self.insert(self.right[root as usize], x, visits);
            self.right[root as usize] = r;
        }
        self.balance(root)
    }

    /// Detaches the minimum of the subtree; returns `(new_root, min)`.
    fn remove_min(&mut self, root: u32) -> (u32, u32) {
        let l = self.left[root as usize];
        if l == NIL {
            return (self.right[root as usize], root);
        }
        let (nl, m) = self.remove_min(l);
        self.left[root as usize] = nl;
        (self.balance(root), m)
    }

    fn remove(&mut self, root: u32, x: u32, visits: &mut u64) -> u32 {
        assert_ne!(root, NIL, "multiset node not found");
        *visits += 1;
        let (k, rk) = (self.key[x as usize], self.key[root as usize]);
        if root != x {
            if k < rk {
                let l = self.remove(self.left[root as usize], x, visits);
                self.left[root as usize] = l;
            } else {
                let r = self.remove(self.right[root as usize], x, visits);
                self.right[root as usize] = r;
            }
            return self.balance(root);
        }
        let (l, r) = (self.left[x as usize], self.right[x as usize]);
        if l == NIL {
            return r;
        }
        if r == NIL {
            return l;
        }
        let (nr, m) = self.remove_min(r);
        self.left[m as usize] = l;
        self.right[m as usize] = nr;
        self.balance(m)
    }

    /// Number of keys strictly below `bound`.
    fn count_below(&self, mut x: u32, bound: u64, visits: &mut u64) -> usize {
        let mut c = 0;
        while x != NIL {
            *visits += 1;
            if self.key[x as usize] < bound {
                c += self.size(self.left[x as usize]) as usize + 1;
                x = self.right[x as usize];
            } else {
                x = self.left[x as usize];
            }
        }
        c
    }

    fn in_order(&self, x: u32, out: &mut Vec<u64>) {
        if x != NIL {
            self.in_order(self.left[x as usize], out);
            out.push(self.key[x as usize]);
            self.in_order(self.right[x as usize], out);
        }
    }

    fn check(&self, x: u32) -> Result<(u32, i32), String> {
        if x == NIL {
            return Ok((0, 0));
        }
        let (l, r) = (self.left[x as usize], self.right[x as usize]);
        let (ls, lh) = self.check(l)?;
        let (rs, rh) = self.check(r)?;
        if (lh - rh).abs() > 1 {
            return Err("multiset tree out of balance".into());
        }
        if ls + rs + 1 != self.size[x as usize] || lh.max(rh) + 1 != self.height(x) {
            return Err("multiset subtree size or height is stale".into());
        }
        if (l != NIL && self.key[l as usize] > self.key[x as usize])
            || (r != NIL && self.key[r as usize] < self.key[x as usize])
        {
            return Err("multiset order violated".into());
        }
        Ok((self.size[x as usize], self.height(x)))
    }
}

fn key(deg: usize, v: usize) -> u64 {
    (deg as u64) << 32 | v as u64
}

/// Heap-indexed segment tree over `leaves` (a power of two) positions.
/// Node `i` at depth `h` covers `[(i - 2^h) * len, (i - 2^h + 1) * len)`
/// with `len = leaves >> h`.
#[derive(Clone, Debug)]
pub struct Degrees {
    n: usize,
    leaves: usize,
    depth: usize,
    roots: Vec<u32>,
    arena: Arena,
}

impl Degrees {
    pub fn new(degrees: &[usize]) -> Self {
        let n = degrees.len();
        let leaves = n.next_power_of_two().max(1);
        let depth = leaves.trailing_zeros() as usize;
        let slots = (depth + 1) * n;
        let arena = Arena {
            left: vec![NIL; slots],
            right: vec![NIL; slots],
            size: vec![0; slots],
            height: vec![0; slots],
            key: vec![0; slots],
        };
        let mut d = Degrees {
            n,
            leaves,
            depth,
            roots: vec![NIL; 2 * leaves],
            arena,
        };
        let mut sink = 0;
        for (v, &deg) in degrees.iter().enumerate() {
            d.insert_vertex(v, deg, &mut sink);
        }
        d
    }

    pub fn leaves(&self) -> usize {
        self.leaves
    }

    fn node_at(&self, v: usize, h: usize) -> usize {
        (self.leaves + v) >> (self.depth - h)
    }

    fn insert_vertex(&mut self, v: usize, deg: usize, visits: &mut u64) {
        for h in 0..=self.depth {
            let i = self.node_at(v, h);
            let slot = (h * self.n + v) as u32;
            self.arena.key[slot as usize] = key(deg, v);
            *visits += 1;
            self.roots[i] = self.arena.insert(self.roots[i], slot, visits);
        }
    }

    /// Moves vertex `v` from degree `old` to degree `new` at every level.
    pub fn update(&mut self, v: usize, old: usize, new: usize, visits: &mut u64) {
        for h in 0..=self.depth {
            let i = self.node_at(v, h);
            let slot = (h * self.n + v) as u32;
            debug_assert_eq!(self.arena.key[slot as usize], key(old, v));
            *visits += 1;
            let r = self.arena.remove(self.roots[i], slot, visits);
            self.arena.key[slot as usize] = key(new, v);
            self.roots[i] = self.arena.insert(r, slot, visits);
        }
    }

    /// Vertices in node `i`'s interval with in-degree at most `k`.
    pub fn rect(&self, i: usize, k: i64, visits: &mut u64) -> usize {
        if k < 0 {
            return 0;
        }
        let bound = ((k as u64) + 1) << 32;
        self.arena.count_below(self.roots[i], bound, visits)
    }

    /// Sorted degree multiset of node `i`.
    pub fn node_degrees(&self, i: usize) -> Vec<usize> {
        let mut keys = Vec::new();
        self.arena.in_order(self.roots[i], &mut keys);
        keys.into_iter().map(|k| (k >> 32) as usize).collect()
    }

    pub fn interval(&self, i: usize) -> (usize, usize) {
        let h = usize::BITS as usize - 1 - i.leading_zeros() as usize;
        let len = self.leaves >> h;
        let start = (i - (1 << h)) * len;
        (start, start + len)
    }

    pub fn audit(&self, degrees: &[usize]) -> Result<(), String> {
        for i in 1..2 * self.leaves {
            self.arena.check(self.roots[i])?;
            let (a, b) = self.interval(i);
            let mut want: Vec<usize> = (a..b.min(self.n)).map(|x| degrees[x]).collect();
            want.sort_unstable();
            if self.node_degrees(i) != want {
                return Err(format!("degree multiset of node {i} is stale"));
            }
        }
        Ok(())
    }
}
