//! Exhaustive coloring searches for monochromatic finite-sums sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::nat::{fal_level, NatError, WindowSet};

/// Default node budget for [`folkman_check`].
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Prefix length at which the search tree is cut into independent subtrees.
const SPLIT_DEPTH: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RamseyError {
    #[error("node budget of {budget} exhausted after {nodes} nodes; result unknown")]
    BudgetExceeded { nodes: u64, budget: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("precondition not established: {0}")]
    PreconditionNotEstablished(String),
    #[error("coloring has {got} entries, expected {expected}")]
    ColoringLength { expected: usize, got: usize },
    #[error("color {color} at {element} is not below {r}")]
    ColorOutOfRange {
        element: usize,
        color: usize,
        r: usize,
    },
    #[error(transparent)]
    Nat(#[from] NatError),
}

/// An `r`-coloring of `[1, n]`; `colors[i]` is the color of `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    pub n: usize,
    pub r: usize,
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn new(r: usize, colors: Vec<usize>) -> Result<Self, RamseyError> {
        if let Some((i, &c)) = colors.iter().enumerate().find(|(_, &c)| c >= r) {
            return Err(RamseyError::ColorOutOfRange {
                element: i + 1,
                color: c,
                r,
            });
        }
        Ok(Coloring {
            n: colors.len(),
            r,
            colors,
        })
    }

    pub fn validate(&self) -> Result<(), RamseyError> {
        if self.colors.len() != self.n {
            return Err(RamseyError::ColoringLength {
                expected: self.n,
                got: self.colors.len(),
            });
        }
        Coloring::new(self.r, self.colors.clone()).map(|_| ())
    }

    pub fn color_of(&self, x: u64) -> usize {
        self.colors[x as usize - 1]
    }

    /// The members of one color class, as a window on `[1, n]`.
    pub fn class(&self, color: usize) -> Result<WindowSet, RamseyError> {
        let members = (1..=self.n as u64).filter(|&x| self.color_of(x) == color);
        Ok(WindowSet::from_members(self.n as u64, members)?)
    }
}

/// A monochromatic `FS(S)`, `|S| = n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoWitness {
    pub color: usize,
    pub elements: Vec<u64>,
}

/// The first color (in index order) whose class contains `FS(S)` for some
/// `n` distinct elements, with the lexicographically least such `S`.
pub fn mono_fs_witness(c: &Coloring, n: usize) -> Result<Option<MonoWitness>, RamseyError> {
    c.validate()?;
    if n == 0 {
        return Err(RamseyError::InvalidParameters(
            "n must be at least 1".into(),
        ));
    }
    if c.n == 0 {
        return Ok(None);
    }
    for color in 0..c.r {
        if let Some(w) = fal_level(&c.class(color)?, n)? {
            return Ok(Some(MonoWitness {
                color,
                elements: w.elements().to_vec(),
            }));
        }
    }
    Ok(None)
}

/// A pruned branch of the search: every coloring extending `prefix`
/// contains the recorded monochromatic witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leaf {
    pub prefix: Vec<u8>,
    pub color: u8,
    pub witness: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FolkmanCertificate {
    /// Every `r`-coloring of `[1, N]` has a monochromatic `FS(S)`, `|S| = n`.
    /// `leaves` covers the tree of canonical colorings in search order.
    BoundHolds {
        #[serde(rename = "N")]
        big_n: usize,
        n: usize,
        r: usize,
        nodes: u64,
        leaves: Vec<Leaf>,
    },
    /// A coloring of `[1, N]` without any monochromatic `FS(S)`, `|S| = n`.
    CounterColoring {
        #[serde(rename = "N")]
        big_n: usize,
        n: usize,
        r: usize,
        nodes: u64,
        coloring: Coloring,
    },
}

impl FolkmanCertificate {
    pub fn big_n(&self) -> usize {
        match self {
            FolkmanCertificate::BoundHolds { big_n, .. }
            | FolkmanCertificate::CounterColoring { big_n, .. } => *big_n,
        }
    }

    pub fn is_bound(&self) -> bool {
        matches!(self, FolkmanCertificate::BoundHolds { .. })
    }

    /// Re-checks the certificate from scratch. A bound is replayed against
    /// the canonical coloring tree; a counter-coloring is rescanned.
    pub fn verify(&self) -> bool {
        match self {
            FolkmanCertificate::BoundHolds {
                big_n,
                n,
                r,
                leaves,
                ..
            } => {
                let mut replay = Replay {
                    big_n: *big_n,
                    n: *n,
                    r: *r,
                    leaves,
                    next: 0,
                };
                let mut colors = Vec::with_capacity(*big_n);
                replay.walk(&mut colors, 0) && replay.next == leaves.len()
            }
            FolkmanCertificate::CounterColoring {
                big_n,
                n,
                r,
                coloring,
                ..
            } => {
                coloring.n == *big_n
                    && coloring.r == *r
                    && matches!(mono_fs_witness(coloring, *n), Ok(None))
            }
        }
    }
}

struct Replay<'a> {
    big_n: usize,
    n: usize,
    r: usize,
    leaves: &'a [Leaf],
    next: usize,
}

impl Replay<'_> {
    fn walk(&mut self, colors: &mut Vec<u8>, used: usize) -> bool {
        if colors.len() == self.big_n {
            return false;
        }
        for c in 0..self.r.min(used + 1) {
            colors.push(c as u8);
            let ok = match self.leaves.get(self.next) {
                Some(leaf) if leaf.prefix == *colors => {
                    self.next += 1;
                    leaf.color == c as u8 && witness_valid(colors, self.n, leaf)
                }
                _ => self.walk(colors, used.max(c + 1)),
            };
            colors.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

fn witness_valid(colors: &[u8], n: usize, leaf: &Leaf) -> bool {
    let w = &leaf.witness;
    if w.len() != n || w.first() == Some(&0) || w.windows(2).any(|p| p[0] >= p[1]) {
        return false;
    }
    crate::nat::subset_sums(w).into_iter().all(|s| {
        s.is_some_and(|s| s as usize <= colors.len() && colors[s as usize - 1] == leaf.color)
    })
}

/// A monochromatic `FS(S)`, `|S| = n`, whose total is the last colored
/// element. Earlier witnesses would already have pruned the branch.
fn witness_ending_here(colors: &[u8], n: usize) -> Option<Vec<u64>> {
    let m = colors.len() as u64;
    let c = colors[m as usize - 1];
    let mut chosen = Vec::with_capacity(n);
    let mut sums = Vec::with_capacity((1 << n) - 1);
    choose(colors, c, 1, n, m, &mut chosen, &mut sums).then_some(chosen)
}

fn choose(
    colors: &[u8],
    c: u8,
    start: u64,
    left: usize,
    budget: u64,
    chosen: &mut Vec<u64>,
    sums: &mut Vec<u64>,
) -> bool {
    let fits = |x: u64, sums: &[u64]| {
        let colored = |v: u64| colors[v as usize - 1] == c;
        colored(x) && sums.iter().all(|&s| colored(s + x))
    };
    if left == 1 {
        if budget < start || !fits(budget, sums) {
            return false;
        }
        chosen.push(budget);
        return true;
    }
    let l = left as u64;
    let mut x = start;
    // the remaining `left` elements are at least x, x+1, …
    while x * l + l * (l - 1) / 2 <= budget {
        if fits(x, sums) {
            let before = sums.len();
            sums.push(x);
            for i in 0..before {
                let s = sums[i] + x;
                sums.push(s);
            }
            chosen.push(x);
            if choose(colors, c, x + 1, left - 1, budget - x, chosen, sums) {
                return true;
            }
            chosen.pop();
            sums.truncate(before);
        }
        x += 1;
    }
    false
}

enum Item {
    Leaf(Leaf),
    Subtree(Vec<u8>),
}

#[derive(Default)]
struct Explore {
    nodes: u64,
    items: Vec<Item>,
    counter: Option<Vec<u8>>,
    exhausted: bool,
}

struct Search {
    big_n: usize,
    n: usize,
    r: usize,
    budget: u64,
}

impl Search {
    /// Depth-first over restricted-growth colorings: color `c` may only be
    /// used once colors `0..c` have appeared.
    fn dfs(&self, colors: &mut Vec<u8>, used: usize, stop_depth: usize, out: &mut Explore) -> bool {
        if colors.len() == self.big_n {
            out.counter = Some(colors.clone());
            return false;
        }
        if colors.len() == stop_depth {
            out.items.push(Item::Subtree(colors.clone()));
            return true;
        }
        for c in 0..self.r.min(used + 1) {
            colors.push(c as u8);
            out.nodes += 1;
            if out.nodes > self.budget {
                out.exhausted = true;
                colors.pop();
                return false;
            }
            let go_on = match witness_ending_here(colors, self.n) {
                Some(witness) => {
                    out.items.push(Item::Leaf(Leaf {
                        prefix: colors.clone(),
                        color: c as u8,
                        witness,
                    }));
                    true
                }
                None => self.dfs(colors, used.max(c + 1), stop_depth, out),
            };
            colors.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Decides whether every `r`-coloring of `[1, N]` has a monochromatic
/// `FS(S)` with `|S| = n`. Identical for every `workers` value.
pub fn folkman_check(
    big_n: usize,
    n: usize,
    r: usize,
    budget: u64,
    workers: usize,
) -> Result<FolkmanCertificate, RamseyError> {
    if big_n == 0 || n == 0 || r == 0 {
        return Err(RamseyError::InvalidParameters(
            "N, n and r must be at least 1".into(),
        ));
    }
    if n > crate::nat::MAX_WITNESS_SIZE {
        return Err(RamseyError::InvalidParameters(format!(
            "n = {n} exceeds {}",
            crate::nat::MAX_WITNESS_SIZE
        )));
    }
    if r > u8::MAX as usize {
        return Err(RamseyError::InvalidParameters(format!(
            "r = {r} exceeds 255 colors"
        )));
    }
    let search = Search {
        big_n,
        n,
        r,
        budget,
    };
    let mut top = Explore::default();
    search.dfs(&mut Vec::new(), 0, SPLIT_DEPTH.min(big_n), &mut top);
    let mut nodes = top.nodes;
    if top.exhausted {
        return Err(RamseyError::BudgetExceeded { nodes, budget });
    }
    if let Some(colors) = top.counter {
        return Ok(counter(big_n, n, r, nodes, colors));
    }
    let run = |prefix: &Vec<u8>| {
        let mut out = Explore::default();
        let mut colors = prefix.clone();
        let used = prefix.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        search.dfs(&mut colors, used, usize::MAX, &mut out);
        out
    };
    let prefixes: Vec<&Vec<u8>> = top
        .items
        .iter()
        .filter_map(|i| match i {
            Item::Subtree(p) => Some(p),
            Item::Leaf(_) => None,
        })
        .collect();
    let results: Vec<Explore> = if workers <= 1 {
        prefixes.iter().map(|p| run(p)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| RamseyError::InvalidParameters(e.to_string()))?;
        pool.install(|| prefixes.par_iter().map(|p| run(p)).collect())
    };
    let mut results = results.into_iter();
    let mut leaves = Vec::new();
    for item in top.items {
        match item {
            Item::Leaf(l) => leaves.push(l),
            Item::Subtree(_) => {
                let sub = results.next().expect("one result per subtree");
                nodes += sub.nodes;
                if sub.exhausted || nodes > budget {
                    return Err(RamseyError::BudgetExceeded { nodes, budget });
                }
                if let Some(colors) = sub.counter {
                    return Ok(counter(big_n, n, r, nodes, colors));
                }
                leaves.extend(sub.items.into_iter().map(|i| match i {
                    Item::Leaf(l) => l,
                    Item::Subtree(_) => unreachable!("subtrees are searched to the bottom"),
                }));
            }
        }
    }
    Ok(FolkmanCertificate::BoundHolds {
        big_n,
        n,
        r,
        nodes,
        leaves,
    })
}

fn counter(big_n: usize, n: usize, r: usize, nodes: u64, colors: Vec<u8>) -> FolkmanCertificate {
    FolkmanCertificate::CounterColoring {
        big_n,
        n,
        r,
        nodes,
        coloring: Coloring {
            n: big_n,
            r,
            colors: colors.into_iter().map(usize::from).collect(),
        },
    }
}

/// The least `N ≤ n_max` with a bound certificate, with the counter-coloring
/// found at `N − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FolkmanNumber {
    #[serde(rename = "N")]
    pub big_n: usize,
    pub bound: FolkmanCertificate,
    pub below: Option<FolkmanCertificate>,
}

pub fn folkman_number(
    n: usize,
    r: usize,
    n_max: usize,
    budget: u64,
    workers: usize,
) -> Result<Option<FolkmanNumber>, RamseyError> {
    let mut below = None;
    for big_n in 1..=n_max {
        let cert = folkman_check(big_n, n, r, budget, workers)?;
        if cert.is_bound() {
            return Ok(Some(FolkmanNumber {
                big_n,
                bound: cert,
                below,
            }));
        }
        below = Some(cert);
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeTrial {
    pub trial: usize,
    /// The first piece found with a level-`k` witness, if any.
    pub piece: Option<usize>,
    pub witness: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub r: usize,
    pub k: usize,
    pub seed: u64,
    #[serde(rename = "N_star")]
    pub n_star: usize,
    /// `A ⊇ d·[1, N*]` for this `d`.
    pub dilation: u64,
    pub trials: Vec<ProbeTrial>,
    pub violations: Vec<usize>,
}

/// Samples random `r`-partitions of `A` and checks that some piece still
/// holds `k` elements with all subset sums inside it.
///
/// Requires `A ⊇ d·[1, N*]` for some `d`, where `N*` is the Folkman number
/// for `(k, r)`: coloring `j` by the piece of `d·j` then forces a witness.
pub fn fal_partition_regularity_probe(
    a: &WindowSet,
    r: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<ProbeReport, RamseyError> {
    if r == 0 || k == 0 {
        return Err(RamseyError::InvalidParameters(
            "r and k must be at least 1".into(),
        ));
    }
    let cap = a.horizon() as usize;
    let n_star = folkman_number(k, r, cap, DEFAULT_BUDGET, 1)?
        .map(|f| f.big_n)
        .ok_or_else(|| {
            RamseyError::PreconditionNotEstablished(format!(
                "no Folkman bound for k = {k}, r = {r} inside the window [1, {cap}]"
            ))
        })?;
    let span = n_star as u64;
    let dilation = (1..=a.horizon() / span)
        .find(|&d| (1..=span).all(|j| a.contains(d * j)))
        .ok_or_else(|| {
            RamseyError::PreconditionNotEstablished(format!(
                "the set contains no dilated interval d·[1, {n_star}]"
            ))
        })?;
    let members = a.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ProbeReport {
        r,
        k,
        seed,
        n_star,
        dilation,
        trials: Vec::with_capacity(trials),
        violations: Vec::new(),
    };
    for trial in 0..trials {
        let colors: Vec<usize> = members.iter().map(|_| rng.gen_range(0..r)).collect();
        let mut found = None;
        for piece in 0..r {
            let part = WindowSet::from_members(
                a.horizon(),
                members
                    .iter()
                    .zip(&colors)
                    .filter(|(_, &c)| c == piece)
                    .map(|(&m, _)| m),
            )?;
            if let Some(w) = fal_level(&part, k)? {
                found = Some((piece, w.elements().to_vec()));
                break;
            }
        }
        if found.is_none() {
            report.violations.push(trial);
        }
        let (piece, witness) = found.unzip();
        report.trials.push(ProbeTrial {
            trial,
            piece,
            witness,
        });
    }
    Ok(report)
}
