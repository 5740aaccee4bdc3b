//! Brute-force reference implementations. Everything here works on raw
//! tables and bitmasks and calls nothing from the library under test.
#![allow(dead_code)]

use std::sync::Arc;

use workbench::semigroup::FiniteSemigroup;

pub type Table = Vec<Vec<usize>>;

pub fn cyclic(n: usize) -> Table {
    (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect()
}

pub fn left_zero(n: usize) -> Table {
    (0..n).map(|a| vec![a; n]).collect()
}

pub fn right_zero(n: usize) -> Table {
    (0..n).map(|_| (0..n).collect()).collect()
}

/// Maps `{0,1} → {0,1}` encoded as `f(0) + 2·f(1)`, composed left to right.
pub fn transformations_2() -> Table {
    let apply = |f: usize, x: usize| (f >> x) & 1;
    (0..4)
        .map(|f| {
            (0..4)
                .map(|g| (0..2).map(|x| apply(g, apply(f, x)) << x).sum())
                .collect()
        })
        .collect()
}

/// The chain `0 < 1 < … < n−1` under max.
pub fn max_chain(n: usize) -> Table {
    (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect()
}

/// Every product is 0.
pub fn null(n: usize) -> Table {
    vec![vec![0; n]; n]
}

pub fn ground(t: &Table) -> Arc<FiniteSemigroup> {
    Arc::new(FiniteSemigroup::from_table(t.clone()).expect("reference tables are associative"))
}

/// The six semigroups swept by the additivity criterion.
pub fn curated() -> Vec<(&'static str, Table)> {
    vec![
        ("Z4", cyclic(4)),
        ("Z5", cyclic(5)),
        ("Z6", cyclic(6)),
        ("left-zero(4)", left_zero(4)),
        ("right-zero(4)", right_zero(4)),
        ("T2", transformations_2()),
    ]
}

/// Assorted grounds of order at most 5.
pub fn small_grounds() -> Vec<(String, Table)> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push((format!("Z{n}"), cyclic(n)));
        out.push((format!("max-chain({n})"), max_chain(n)));
    }
    for n in 2..=5 {
        out.push((format!("left-zero({n})"), left_zero(n)));
        out.push((format!("right-zero({n})"), right_zero(n)));
        out.push((format!("null({n})"), null(n)));
    }
    out.push(("T2".into(), transformations_2()));
    out
}

pub fn order(t: &Table) -> usize {
    t.len()
}

pub fn full(n: usize) -> u64 {
    (1u64 << n) - 1
}

pub fn has(mask: u64, x: usize) -> bool {
    mask >> x & 1 == 1
}

pub fn mask_of(elements: &[usize]) -> u64 {
    elements.iter().fold(0, |m, &x| m | 1 << x)
}

pub fn elements_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&x| has(mask, x)).collect()
}

/// `A − n = {m : m⋆n ∈ A}`.
pub fn shift(t: &Table, a: u64, n: usize) -> u64 {
    (0..order(t))
        .filter(|&m| has(a, t[m][n]))
        .fold(0, |acc, m| acc | 1 << m)
}

/// `A ∈ F` for the filter with support `f`.
pub fn member(f: u64, a: u64) -> bool {
    f & !a == 0
}

/// Support of `F ⊕ G` from the definition: intersect every `A` with
/// `{n : A − n ∈ G} ∈ F`.
pub fn pseudo_sum(t: &Table, f: u64, g: u64) -> u64 {
    let n = order(t);
    let mut support = full(n);
    for a in 0..=full(n) {
        let preimage = (0..n)
            .filter(|&x| member(g, shift(t, a, x)))
            .fold(0, |acc, x| acc | 1 << x);
        if member(f, preimage) {
            support &= a;
        }
    }
    support
}

/// Support of `F(U_v, G)`: the smallest filter holding `F` and every `A_V`, `A ∈ G`.
pub fn fvg(t: &Table, f: u64, v: usize, g: u64) -> u64 {
    let n = order(t);
    let mut support = f;
    for a in 0..=full(n) {
        if member(g, a) {
            let av = (0..n)
                .filter(|&x| has(a, t[v][x]))
                .fold(0, |acc, x| acc | 1 << x);
            support &= av;
        }
    }
    support
}

/// Filter inclusion `big ⊇ small`.
pub fn filter_contains(big: u64, small: u64) -> bool {
    big & !small == 0
}

/// `F ⊕ V ⊇ F` for every ultrafilter `V ⊇ F`, with the pseudo-sum from its definition.
pub fn additive(t: &Table, f: u64) -> bool {
    elements_of(f)
        .into_iter()
        .all(|v| filter_contains(pseudo_sum(t, f, 1 << v), f))
}

pub fn closed(t: &Table, b: u64) -> bool {
    let e = elements_of(b);
    e.iter().all(|&x| e.iter().all(|&y| has(b, t[x][y])))
}

pub fn idempotent_points(t: &Table) -> Vec<usize> {
    (0..order(t)).filter(|&x| t[x][x] == x).collect()
}

/// Additive filters with no strictly larger additive filter.
pub fn maximal_additive(t: &Table) -> Vec<u64> {
    let n = order(t);
    let add: Vec<u64> = (1..=full(n)).filter(|&f| additive(t, f)).collect();
    add.iter()
        .copied()
        .filter(|&f| !add.iter().any(|&g| g != f && g & !f == 0))
        .collect()
}

/// Every nonempty-subset sum of `xs` lies in `inside`.
pub fn all_sums_in(xs: &[u64], inside: impl Fn(u64) -> bool) -> bool {
    (1u32..(1 << xs.len())).all(|mask| {
        let s: u64 = xs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x)
            .sum();
        inside(s)
    })
}

/// Every `r`-coloring of `[1, n]` as a color array.
pub fn all_colorings(n: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (r as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        (0..n)
            .map(|_| {
                let c = (code % r as u64) as usize;
                code /= r as u64;
                c
            })
            .collect()
    })
}

/// Some `k` distinct elements of `[1, colors.len()]` with every subset sum
/// the same color, by scanning all `k`-subsets.
pub fn has_mono(colors: &[usize], k: usize) -> bool {
    let n = colors.len() as u64;
    fn rec(colors: &[usize], n: u64, k: usize, start: u64, chosen: &mut Vec<u64>) -> bool {
        if chosen.len() == k {
            let c = colors[chosen[0] as usize - 1];
            return all_sums_in(chosen, |s| s <= n && colors[s as usize - 1] == c);
        }
        for x in start..=n {
            chosen.push(x);
            if rec(colors, n, k, x + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    rec(colors, n, k, 1, &mut Vec::new())
}

/// Lexicographically least `k` members of `set` (within `[1, h]`) whose
/// subset sums all lie in `set`, by scanning all `k`-subsets.
pub fn least_fs_subset(set: &[u64], k: usize) -> Option<Vec<u64>> {
    fn rec(set: &[u64], k: usize, start: usize, chosen: &mut Vec<u64>) -> bool {
        if chosen.len() == k {
            return all_sums_in(chosen, |s| set.binary_search(&s).is_ok());
        }
        for i in start..set.len() {
            chosen.push(set[i]);
            if rec(set, k, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    rec(set, k, 0, &mut chosen).then_some(chosen)
}
