//! Data-parallel execution helpers.
//!
//! Every hot loop in the crate (weight sweeps, identity checks, common
//! neighbour counting, search candidates) goes through these helpers. With the
//! `parallel` feature they dispatch to rayon when the global mode is
//! [`Mode::Parallel`]; otherwise they run sequentially. Results are always
//! returned in index order, so output never depends on the mode.

use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    Parallel,
}

static PARALLEL: AtomicBool = AtomicBool::new(cfg!(feature = "parallel"));

/// Select the execution mode. `Parallel` is a no-op without the `parallel` feature.
pub fn set_mode(mode: Mode) {
    PARALLEL.store(
        mode == Mode::Parallel && cfg!(feature = "parallel"),
        Ordering::Relaxed,
    );
}

pub fn mode() -> Mode {
    if PARALLEL.load(Ordering::Relaxed) {
        Mode::Parallel
    } else {
        Mode::Sequential
    }
}

/// Run `f` with `mode` selected, restoring the previous mode afterwards.
pub fn with_mode<T>(mode: Mode, f: impl FnOnce() -> T) -> T {
    let prev = self::mode();
    set_mode(mode);
    let out = f();
    set_mode(prev);
    out
}

#[cfg(feature = "parallel")]
#[inline]
fn parallel() -> bool {
    PARALLEL.load(Ordering::Relaxed)
}

/// `(0..n).map(f).collect()`, order preserved.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// `items.iter().map(f).collect()`, order preserved.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel() {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Sum of `f(i)` over `0..n`.
pub fn sum_range<F>(n: usize, f: F) -> i128
where
    F: Fn(usize) -> i128 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel() {
        return (0..n).into_par_iter().map(f).sum();
    }
    (0..n).map(f).sum()
}

/// The result of `f` at the smallest index where it returns `Some`.
pub fn find_first<W, F>(n: usize, f: F) -> Option<W>
where
    W: Send,
    F: Fn(usize) -> Option<W> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel() {
        return (0..n).into_par_iter().find_map_first(f);
    }
    (0..n).find_map(f)
}
