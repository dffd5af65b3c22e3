//! Exact, slow reference implementations. Everything here is computed from
//! the orientation matrix alone and shares no code with the structures.

use crate::error::{Error, Result};
use crate::tournament::{Tournament, Triangle};

pub const MAX_FAST_N: usize = 20;
pub const MAX_FVST_N: usize = 20;
pub const MAX_ADT_N: usize = 8;

fn require(n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::OracleTooLarge { n, max })
    } else {
        Ok(())
    }
}

/// Kahn's algorithm on the full digraph.
pub fn is_acyclic(t: &Tournament) -> bool {
    let n = t.n();
    let mut indeg: Vec<usize> = (0..n).map(|v| (0..n).filter(|&u| t.arc(u, v)).count()).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(u) = stack.pop() {
        seen += 1;
        for v in 0..n {
            if t.arc(u, v) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
    }
    seen == n
}

/// First directed triangle in lexicographic order of `(a, b, c)`.
pub fn find_triangle(t: &Tournament) -> Option<Triangle> {
    let n = t.n();
    for a in 0..n {
        for b in 0..n {
            if !t.arc(a, b) {
                continue;
            }
            for c in 0..n {
                if t.arc(b, c) && t.arc(c, a) {
                    return Some(Triangle::new(a, b, c));
                }
            }
        }
    }
    None
}

/// All directed triangles, each once in canonical rotation.
pub fn triangles(t: &Tournament) -> Vec<Triangle> {
    let n = t.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in a + 1..n {
                if b != c && t.arc(a, b) && t.arc(b, c) && t.arc(c, a) {
                    out.push(Triangle([a, b, c]));
                }
            }
        }
    }
    out
}

fn out_masks(t: &Tournament) -> Vec<u32> {
    (0..t.n())
        .map(|u| (0..t.n()).filter(|&v| t.arc(u, v)).fold(0u32, |m, v| m | 1 << v))
        .collect()
}

/// Minimum feedback arc set size by dynamic programming over vertex subsets:
/// the cost of ordering `S` is minimised over the vertex placed last, which
/// pays for its out-arcs into the rest of `S`.
pub fn brute_fast(t: &Tournament) -> Result<usize> {
    let n = t.n();
    require(n, MAX_FAST_N)?;
    let out = out_masks(t);
    let full = (1usize << n) - 1;
    let mut cost = vec![u8::MAX; full + 1];
    cost[0] = 0;
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1 << v);
            let c = cost[without] + (out[v] as usize & without).count_ones() as u8;
            best = best.min(c);
        }
        cost[s] = best;
    }
    Ok(cost[full] as usize)
}

/// Minimum feedback arc set by trying every set of arcs to reverse, smallest
/// first. Only for tiny inputs; used to cross-check [`brute_fast`].
pub fn brute_fast_exhaustive(t: &Tournament) -> Result<usize> {
    let n = t.n();
    require(n, 6)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut best = usize::MAX;
    for mask in 0u32..(1 << pairs.len()) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let mut c = t.clone();
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                c.reverse(u, v);
            }
        }
        if is_acyclic(&c) {
            best = size;
        }
    }
    Ok(best)
}

/// `acyclic[S]` for every vertex subset `S`: some vertex of `S` has no
/// in-neighbour inside `S` and the rest is acyclic.
fn acyclic_subsets(t: &Tournament) -> Vec<bool> {
    let n = t.n();
    let out = out_masks(t);
    let mut in_mask = vec![0u32; n];
    for (u, &m) in out.iter().enumerate() {
        for (v, im) in in_mask.iter_mut().enumerate() {
            if m >> v & 1 == 1 {
                *im |= 1 << u;
            }
        }
    }
    let full = (1usize << n) - 1;
    let mut ok = vec![false; full + 1];
    ok[0] = true;
    for s in 1..=full {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if in_mask[v] as usize & s == 0 {
                ok[s] = ok[s & !(1 << v)];
                break;
            }
        }
    }
    ok
}

/// Minimum feedback vertex set size.
pub fn brute_fvst(t: &Tournament) -> Result<usize> {
    let n = t.n();
    require(n, MAX_FVST_N)?;
    let ok = acyclic_subsets(t);
    let keep = (0..ok.len())
        .filter(|&s| ok[s])
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0);
    Ok(n - keep)
}

/// Every minimum feedback vertex set, each as a sorted vertex list.
pub fn optimal_fvs_sets(t: &Tournament) -> Result<Vec<Vec<usize>>> {
    let n = t.n();
    require(n, MAX_FVST_N)?;
    let ok = acyclic_subsets(t);
    let keep = (0..ok.len())
        .filter(|&s| ok[s])
        .map(|s| s.count_ones())
        .max()
        .unwrap_or(0);
    let full = (1usize << n) - 1;
    Ok((0..ok.len())
        .filter(|&s| ok[s] && s.count_ones() == keep)
        .map(|s| (0..n).filter(|&v| (full & !s) >> v & 1 == 1).collect())
        .collect())
}

/// Maximum number of pairwise arc-disjoint directed triangles.
pub fn brute_adt(t: &Tournament) -> Result<usize> {
    let n = t.n();
    require(n, MAX_ADT_N)?;
    let pair = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        1u64 << (a * n + b)
    };
    let tris: Vec<u64> = triangles(t)
        .iter()
        .map(|tr| {
            let [a, b, c] = tr.0;
            pair(a, b) | pair(b, c) | pair(c, a)
        })
        .collect();
    fn go(tris: &[u64], i: usize, used: u64, count: usize, best: &mut usize) {
        if count > *best {
            *best = count;
        }
        if i == tris.len() || count + (tris.len() - i) <= *best {
            return;
        }
        let free = tris[i..].iter().filter(|&&m| m & used == 0).count();
        if count + free <= *best {
            return;
        }
        if tris[i] & used == 0 {
            go(tris, i + 1, used | tris[i], count + 1, best);
        }
        go(tris, i + 1, used, count, best);
    }
    let mut best = 0;
    go(&tris, 0, 0, 0, &mut best);
    Ok(best)
}

/// In-degrees within `T - removed`; `None` for removed vertices.
pub fn reduced_indegrees(t: &Tournament, removed: &[usize]) -> Vec<Option<usize>> {
    let n = t.n();
    let mut gone = vec![false; n];
    for &f in removed {
        gone[f] = true;
    }
    (0..n)
        .map(|v| {
            (!gone[v]).then(|| (0..n).filter(|&u| !gone[u] && t.arc(u, v)).count())
        })
        .collect()
}

/// Sets recomputed from their definitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveViews {
    /// Back arcs of `T - F`, sorted.
    pub back: Vec<(usize, usize)>,
    /// Prefix vertices of `T - F`, sorted.
    pub prefix: Vec<usize>,
    /// Degrees in `[0, n - |F|)` held by no vertex of `T - F`, sorted.
    pub empty: Vec<usize>,
    /// Edges `(a, b)`, `a < b`, of the `k`-long back-arc graph of `T`.
    pub long_graph: Vec<(usize, usize)>,
    /// Vertices of `T` with more than `k` long-graph neighbours.
    pub heavy: Vec<usize>,
}

pub fn naive_views(t: &Tournament, removed: &[usize], k: usize) -> NaiveViews {
    let n = t.n();
    let deg = reduced_indegrees(t, removed);
    let m = n - removed.len();
    let mut back = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if let (Some(du), Some(dv)) = (deg[u], deg[v]) {
                if u != v && t.arc(u, v) && du >= dv {
                    back.push((u, v));
                }
            }
        }
    }
    let mut count = vec![0usize; m];
    for d in deg.iter().flatten() {
        count[*d] += 1;
    }
    let p = (0..m).find(|&d| count[d] != 1).unwrap_or(m);
    let mut prefix: Vec<usize> = (0..n).filter(|&v| matches!(deg[v], Some(d) if d < p)).collect();
    prefix.sort_unstable();
    let empty = (0..m).filter(|&d| count[d] == 0).collect();

    let full: Vec<usize> = (0..n).map(|v| (0..n).filter(|&u| t.arc(u, v)).count()).collect();
    let mut long_graph = Vec::new();
    let mut ldeg = vec![0usize; n];
    for a in 0..n {
        for b in a + 1..n {
            let (tail, head) = if t.arc(a, b) { (a, b) } else { (b, a) };
            let gap = full[a].abs_diff(full[b]);
            if full[tail] >= full[head] && gap >= k {
                long_graph.push((a, b));
                ldeg[a] += 1;
                ldeg[b] += 1;
            }
        }
    }
    let heavy = (0..n).filter(|&v| ldeg[v] > k).collect();
    NaiveViews {
        back,
        prefix,
        empty,
        long_graph,
        heavy,
    }
}

/// Summary of every oracle on one tournament.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub fast: usize,
    pub fvst: usize,
    pub adt: usize,
    pub acyclic: bool,
    pub views: NaiveViews,
}

/// Runs all oracles. Requires `n <= MAX_ADT_N`.
pub fn report(t: &Tournament, removed: &[usize], k: usize) -> Result<OracleReport> {
    Ok(OracleReport {
        fast: brute_fast(t)?,
        fvst: brute_fvst(t)?,
        adt: brute_adt(t)?,
        acyclic: is_acyclic(t),
        views: naive_views(t, removed, k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::fixtures::*;
    use proptest::prelude::*;

    fn two_triangles() -> Tournament {
        // Two 3-cycles {0,1,2} and {3,4,5}, every arc from the first to the second.
        Tournament::from_fn(6, |u, v| {
            if u / 3 != v / 3 {
                true
            } else {
                !(u % 3 == 0 && v % 3 == 2)
            }
        })
    }

    #[test]
    fn examples() {
        assert_eq!(brute_fast(&t3trans()).unwrap(), 0);
        assert_eq!(brute_fast(&t3cyc()).unwrap(), 1);
        assert_eq!(brute_fast(&t5()).unwrap(), 1);
        assert_eq!(brute_fvst(&t3trans()).unwrap(), 0);
        assert_eq!(brute_fvst(&t3cyc()).unwrap(), 1);
        assert_eq!(brute_fvst(&two_triangles()).unwrap(), 2);
        assert_eq!(brute_adt(&t3trans()).unwrap(), 0);
        assert_eq!(brute_adt(&t3cyc()).unwrap(), 1);
        assert_eq!(brute_fast(&Tournament::transitive(0)).unwrap(), 0);
        assert!(matches!(
            brute_adt(&Tournament::transitive(9)),
            Err(Error::OracleTooLarge { .. })
        ));
    }

    #[test]
    fn view_examples() {
        let v = naive_views(&t3trans(), &[], 0);
        assert!(v.back.is_empty());
        assert_eq!(v.prefix, vec![0, 1, 2]);
        assert!(v.empty.is_empty());

        let v = naive_views(&t3cyc(), &[], 0);
        assert_eq!(v.back, vec![(0, 1), (1, 2), (2, 0)]);
        assert!(v.prefix.is_empty());
        assert_eq!(v.empty, vec![0, 2]);

        let v = naive_views(&t5(), &[], 2);
        assert_eq!(v.long_graph, vec![(0, 4)]);

        let v = naive_views(&t3cyc(), &[0], 0);
        assert!(v.empty.is_empty());
    }

    fn tournament(max_n: usize) -> impl Strategy<Value = Tournament> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
                let mut it = bits.into_iter();
                Tournament::from_fn(n, |_, _| it.next().unwrap())
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn dp_matches_exhaustive(t in tournament(6)) {
            prop_assert_eq!(brute_fast(&t).unwrap(), brute_fast_exhaustive(&t).unwrap());
        }

        #[test]
        fn fvst_zero_iff_acyclic(t in tournament(9)) {
            prop_assert_eq!(brute_fvst(&t).unwrap() == 0, is_acyclic(&t));
            prop_assert_eq!(find_triangle(&t).is_none(), is_acyclic(&t));
        }

        #[test]
        fn fact_one_sandwich(t in tournament(8)) {
            let adt = brute_adt(&t).unwrap();
            let fast = brute_fast(&t).unwrap();
            prop_assert!(adt <= fast && fast <= 6 * (adt + 1));
        }

        #[test]
        fn optimal_sets_are_feedback_sets(t in tournament(8)) {
            let k = brute_fvst(&t).unwrap();
            for s in optimal_fvs_sets(&t).unwrap() {
                prop_assert_eq!(s.len(), k);
                let keep: Vec<usize> = (0..t.n()).filter(|v| !s.contains(v)).collect();
                prop_assert!(is_acyclic(&t.induced(&keep)));
            }
        }
    }
}
