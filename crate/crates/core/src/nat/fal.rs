use rayon::prelude::*;

use super::fs::FSWitness;
use super::window::WindowSet;
use super::NatError;

/// The lexicographically least `x₁ < … < x_k` with every nonempty-subset
/// sum in `A`, or `None` if the window holds no such elements.
pub fn fal_level(a: &WindowSet, k: usize) -> Result<Option<FSWitness>, NatError> {
    fal_level_with_workers(a, k, 1)
}

/// [`fal_level`] with the choice of `x₁` split over `workers` threads.
/// The answer does not depend on `workers`.
pub fn fal_level_with_workers(
    a: &WindowSet,
    k: usize,
    workers: usize,
) -> Result<Option<FSWitness>, NatError> {
    if k == 0 {
        return Err(NatError::ZeroK);
    }
    let Some(top) = bound(a.horizon(), 0, k) else {
        return Ok(None);
    };
    let firsts: Vec<u64> = a.members().take_while(|&x| x <= top).collect();
    let search_from = |x: u64| {
        let mut chosen = vec![x];
        let mut sums = vec![x];
        extend(a, k, &mut chosen, &mut sums, x).then_some(chosen)
    };
    let found = if workers <= 1 {
        firsts.iter().find_map(|&x| search_from(x))
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map(|pool| pool.install(|| firsts.par_iter().find_map_first(|&x| search_from(x))))
            .unwrap_or_else(|_| firsts.iter().find_map(|&x| search_from(x)))
    };
    found.map(|w| FSWitness::new(w, a.clone())).transpose()
}

/// Largest admissible next element when `r` elements remain and the chosen
/// ones sum to `total`: the remaining `r` are at least `x, x+1, …, x+r−1`,
/// and the grand total must stay inside the window.
fn bound(horizon: u64, total: u64, r: usize) -> Option<u64> {
    let r = r as u64;
    let slack = horizon.checked_sub(total)?.checked_sub(r * (r - 1) / 2)?;
    let top = slack / r;
    (top >= 1).then_some(top)
}

fn extend(a: &WindowSet, k: usize, chosen: &mut Vec<u64>, sums: &mut Vec<u64>, total: u64) -> bool {
    if chosen.len() == k {
        return true;
    }
    let prev = *chosen.last().expect("search starts from a chosen x₁");
    let Some(top) = bound(a.horizon(), total, k - chosen.len()) else {
        return false;
    };
    let mut x = prev;
    while let Some(next) = a.least_above(x) {
        x = next;
        if x > top {
            break;
        }
        if !sums.iter().all(|&s| a.contains(s + x)) {
            continue;
        }
        let before = sums.len();
        sums.push(x);
        for i in 0..before {
            let s = sums[i] + x;
            sums.push(s);
        }
        chosen.push(x);
        if extend(a, k, chosen, sums, total + x) {
            return true;
        }
        chosen.pop();
        sums.truncate(before);
    }
    false
}
