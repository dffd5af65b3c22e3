//! Running independent jobs, in parallel when the `parallel` feature is on.
//!
//! Each job owns its structure; nothing is shared between workers.

/// Maps `f` over `items` on the calling thread.
pub fn seq_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}

/// Maps `f` over `items` on the rayon pool, preserving order.
#[cfg(feature = "parallel")]
pub fn par_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

/// [`par_map`] when built with `parallel`, otherwise [`seq_map`].
pub fn map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        par_map(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        seq_map(items, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..1000).collect();
        let want: Vec<u64> = xs.iter().map(|x| x * x).collect();
        assert_eq!(seq_map(xs.clone(), |x| x * x), want);
        assert_eq!(map(xs, |x| x * x), want);
    }
}
