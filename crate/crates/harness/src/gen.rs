//! Seeded instance and stream generators.

use crate::stream::{Header, Op, StructureKind, UpdateStream};
use anyhow::{bail, Result};
use indexmap::IndexSet;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use tourndyn::Tournament;

/// Share of generated ops that are queries.
const QUERY_RATE: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenKind {
    /// A transitive tournament with at most `budget` arcs flipped at any
    /// time, so the feedback arc set never exceeds `budget`.
    TransitivePlus,
    /// A transitive tournament on all but `budget` planted vertices whose
    /// arcs are random, so the feedback vertex set never exceeds `budget`.
    PlantedFvs,
    /// Uniformly random orientations and reversals.
    Uniform,
}

impl GenKind {
    pub const ALL: [GenKind; 3] = [Self::TransitivePlus, Self::PlantedFvs, Self::Uniform];

    pub fn name(self) -> &'static str {
        match self {
            Self::TransitivePlus => "transitive-plus",
            Self::PlantedFvs => "planted-fvs",
            Self::Uniform => "uniform",
        }
    }

    pub fn default_structure(self) -> StructureKind {
        match self {
            Self::TransitivePlus => StructureKind::FastPromise,
            Self::PlantedFvs => StructureKind::Fvst,
            Self::Uniform => StructureKind::FastFull,
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match Self::ALL.into_iter().find(|k| k.name() == s) {
            Some(k) => Ok(k),
            None => bail!("unknown generator {s:?}"),
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_tournament(n: usize, rng: &mut impl Rng) -> Tournament {
    Tournament::from_fn(n, |_, _| rng.gen_bool(0.5))
}

fn random_pair(n: usize, rng: &mut impl Rng) -> (usize, usize) {
    let u = rng.gen_range(0..n);
    let mut v = rng.gen_range(0..n - 1);
    if v >= u {
        v += 1;
    }
    (u, v)
}

fn random_order(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

/// Transitive tournament along a random order with exactly
/// `min(r, n(n-1)/2)` distinct pairs flipped; also returns the flipped set.
pub fn transitive_plus(n: usize, r: usize, rng: &mut impl Rng) -> (Tournament, IndexSet<(usize, usize)>) {
    let mut t = Tournament::from_order(&random_order(n, rng));
    let mut flipped = IndexSet::new();
    let target = r.min(n * n.saturating_sub(1) / 2);
    while flipped.len() < target {
        let (u, v) = random_pair(n, rng);
        if flipped.insert((u.min(v), u.max(v))) {
            t.reverse(u, v);
        }
    }
    (t, flipped)
}

/// Transitive tournament along a random order, then every arc touching a
/// random `s`-set re-oriented at random. Also returns the planted set.
pub fn planted_fvs(n: usize, s: usize, rng: &mut impl Rng) -> (Tournament, Vec<usize>) {
    let order = random_order(n, rng);
    let planted: Vec<usize> = order.choose_multiple(rng, s.min(n)).copied().collect();
    let mut is_planted = vec![false; n];
    for &p in &planted {
        is_planted[p] = true;
    }
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let t = Tournament::from_fn(n, |u, v| {
        if is_planted[u] || is_planted[v] {
            rng.gen_bool(0.5)
        } else {
            rank[u] < rank[v]
        }
    });
    (t, planted)
}

/// An instance and an op stream that keeps the generator's promise.
pub fn generate(kind: GenKind, n: usize, budget: usize, ops: usize, seed: u64) -> Result<(Tournament, UpdateStream)> {
    let structure = kind.default_structure();
    generate_for(kind, structure, n, budget, ops, seed)
}

pub fn generate_for(
    kind: GenKind,
    structure: StructureKind,
    n: usize,
    budget: usize,
    ops: usize,
    seed: u64,
) -> Result<(Tournament, UpdateStream)> {
    if n == 0 {
        bail!("instance size must be positive");
    }
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(ops);
    let query = |rng: &mut ChaCha8Rng| Op::Query(rng.gen_range(0..=budget));
    let t = match kind {
        GenKind::TransitivePlus => {
            let (t, mut flipped) = transitive_plus(n, budget, &mut rng);
            for _ in 0..ops {
                if budget == 0 || n < 2 || rng.gen_bool(QUERY_RATE) {
                    out.push(query(&mut rng));
                } else if flipped.len() < budget && rng.gen_bool(0.5) {
                    let (u, v) = random_pair(n, &mut rng);
                    let e = (u.min(v), u.max(v));
                    if flipped.contains(&e) {
                        flipped.swap_remove(&e);
                    } else {
                        flipped.insert(e);
                    }
                    out.push(Op::Reverse(u, v));
                } else if !flipped.is_empty() {
                    let i = rng.gen_range(0..flipped.len());
                    let (u, v) = flipped.swap_remove_index(i).expect("index in range");
                    out.push(Op::Reverse(u, v));
                } else {
                    out.push(query(&mut rng));
                }
            }
            t
        }
        GenKind::PlantedFvs => {
            let (t, planted) = planted_fvs(n, budget, &mut rng);
            for _ in 0..ops {
                if planted.is_empty() || n < 2 || rng.gen_bool(QUERY_RATE) {
                    out.push(query(&mut rng));
                } else {
                    let p = *planted.choose(&mut rng).expect("non-empty");
                    let (_, mut x) = random_pair(n, &mut rng);
                    if x == p {
                        x = (p + 1) % n;
                    }
                    out.push(Op::Reverse(p, x));
                }
            }
            t
        }
        GenKind::Uniform => {
            let t = random_tournament(n, &mut rng);
            for _ in 0..ops {
                if n < 2 || rng.gen_bool(QUERY_RATE) {
                    out.push(query(&mut rng));
                } else {
                    let (u, v) = random_pair(n, &mut rng);
                    out.push(Op::Reverse(u, v));
                }
            }
            t
        }
    };
    let g = match structure {
        StructureKind::FastFull => None,
        _ => Some(budget),
    };
    let stream = UpdateStream {
        header: Header {
            structure,
            n,
            k: budget,
            g,
            seed,
        },
        ops: out,
    };
    Ok((t, stream))
}

/// Replays only the reversals of `stream` onto `t`.
pub fn apply_reversals(t: &mut Tournament, ops: &[Op]) {
    for op in ops {
        if let Op::Reverse(u, v) = *op {
            t.reverse(u, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tourndyn::oracles;

    #[test]
    fn transitive_plus_zero_is_transitive_with_queries_only() {
        let (t, s) = generate(GenKind::TransitivePlus, 5, 0, 30, 1).unwrap();
        assert!(oracles::is_acyclic(&t));
        assert!(s.ops.iter().all(|op| matches!(op, Op::Query(0))));
    }

    #[test]
    fn promises_hold_along_streams() {
        for seed in 0..40 {
            let (mut t, s) = generate(GenKind::TransitivePlus, 9, 1, 40, seed).unwrap();
            assert!(oracles::brute_fast(&t).unwrap() <= 1);
            for op in &s.ops {
                apply_reversals(&mut t, std::slice::from_ref(op));
                assert!(oracles::brute_fast(&t).unwrap() <= 1);
            }
            let (mut t, s) = generate(GenKind::PlantedFvs, 8, 1, 40, seed).unwrap();
            assert!(oracles::brute_fvst(&t).unwrap() <= 1);
            for op in &s.ops {
                apply_reversals(&mut t, std::slice::from_ref(op));
                assert!(oracles::brute_fvst(&t).unwrap() <= 1);
            }
        }
    }

    #[test]
    fn deterministic() {
        let a = generate(GenKind::Uniform, 12, 3, 50, 77).unwrap();
        let b = generate(GenKind::Uniform, 12, 3, 50, 77).unwrap();
        assert_eq!(a, b);
        let c = generate(GenKind::Uniform, 12, 3, 50, 78).unwrap();
        assert_ne!(a, c);
    }
}
