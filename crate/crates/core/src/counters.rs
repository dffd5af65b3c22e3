/// Instrumentation counters. All fields only ever grow.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    /// Vertices or buckets inspected while sweeping degree buckets.
    pub bucket: u64,
    /// Entries read from the back-arc list or long-arc lists.
    pub back: u64,
    /// Segment-tree and multiset nodes visited.
    pub tree: u64,
    /// Branching nodes of the recursive queries.
    pub rec: u64,
}

impl Counters {
    pub fn since(&self, earlier: &Counters) -> Counters {
        Counters {
            bucket: self.bucket - earlier.bucket,
            back: self.back - earlier.back,
            tree: self.tree - earlier.tree,
            rec: self.rec - earlier.rec,
        }
    }
}
