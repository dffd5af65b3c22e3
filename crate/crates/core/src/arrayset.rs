//! Set over a fixed universe `[0, m)` with constant-time updates.

const NIL: u32 = u32::MAX;

/// Elements live in a dense vector; `slot[e]` is the position of `e` in it.
/// Removal swaps the last element into the hole, so iteration order is not
/// insertion order.
#[derive(Clone, Debug)]
pub struct ArraySet {
    items: Vec<u32>,
    slot: Vec<u32>,
}

impl ArraySet {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity < NIL as usize, "array set capacity too large");
        ArraySet {
            items: Vec::new(),
            slot: vec![NIL; capacity],
        }
    }

    pub fn capacity(&self) -> usize {
        self.slot.len()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        e < self.slot.len() && self.slot[e] != NIL
    }

    /// Returns false if `e` was already present.
    pub fn insert(&mut self, e: usize) -> bool {
        if self.slot[e] != NIL {
            return false;
        }
        self.slot[e] = self.items.len() as u32;
        self.items.push(e as u32);
        true
    }

    /// Returns false if `e` was absent.
    pub fn remove(&mut self, e: usize) -> bool {
        let pos = self.slot[e];
        if pos == NIL {
            return false;
        }
        let last = self.items.pop().expect("slot present implies non-empty");
        if last as usize != e {
            self.items[pos as usize] = last;
            self.slot[last as usize] = pos;
        }
        self.slot[e] = NIL;
        true
    }

    pub fn clear(&mut self) {
        for &e in &self.items {
            self.slot[e as usize] = NIL;
        }
        self.items.clear();
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.items.iter().map(|&e| e as usize)
    }

    /// Smallest element, by a linear scan.
    pub fn min(&self) -> Option<usize> {
        self.items.iter().min().map(|&e| e as usize)
    }

    pub fn to_sorted_vec(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.iter().collect();
        v.sort_unstable();
        v
    }
}
