//! Data-parallel reductions with a sequential fallback.
//!
//! With the default `parallel` feature the sweeps fan out over rayon; without
//! it the same entry points run sequentially. Reductions are over canonical
//! term maps, where addition is order-independent, so results are
//! bit-identical for every worker count.

use crate::param::ParamPoly;
use crate::xy::XYPoly;

/// Values with an additive identity and order-independent addition.
pub trait Accumulate: Sized + Send {
    fn zero() -> Self;
    fn accumulate(&mut self, other: Self);
}

impl Accumulate for ParamPoly {
    fn zero() -> Self {
        ParamPoly::zero()
    }
    fn accumulate(&mut self, other: Self) {
        self.add_assign(&other);
    }
}

impl Accumulate for XYPoly {
    fn zero() -> Self {
        XYPoly::zero()
    }
    fn accumulate(&mut self, other: Self) {
        self.add_assign(&other);
    }
}

/// Sum `f` over `items`, in parallel when the `parallel` feature is enabled.
pub fn sum_map<T, R, F>(items: &[T], f: F) -> R
where
    T: Sync,
    R: Accumulate,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items
            .par_iter()
            .map(&f)
            .reduce(R::zero, |mut a, b| {
                a.accumulate(b);
                a
            })
    }
    #[cfg(not(feature = "parallel"))]
    {
        sum_map_seq(items, f)
    }
}

/// Always-sequential variant of [`sum_map`].
pub fn sum_map_seq<T, R, F>(items: &[T], f: F) -> R
where
    R: Accumulate,
    F: Fn(&T) -> R,
{
    let mut acc = R::zero();
    for item in items {
        acc.accumulate(f(item));
    }
    acc
}

/// Map `f` over `items` preserving order, in parallel when enabled.
pub fn map_collect<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(&f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
