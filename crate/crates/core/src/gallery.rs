//! Explicit constructions on ℕ: the binary code ψ, the partition of the
//! even exponents, the sum-free set `X` built from it, and a set that is
//! finitely additively large without containing an infinite FS set.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::nat::{fs_set, shift_set, FSGenerator, NatError, WindowSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GalleryError {
    #[error("exponent {exponent} does not fit in a 64-bit code")]
    Overflow { exponent: u32 },
    #[error("exponent {exponent} is odd")]
    NotEvenExponents { exponent: u32 },
    #[error("{0} is odd")]
    OddInput(u64),
    #[error("{0} is not covered by this partition")]
    NotInPartition(u64),
    #[error("horizon {horizon} is below the minimum of 4")]
    HorizonTooSmall { horizon: u64 },
    #[error("F0 must be nonempty")]
    EmptyF0,
    #[error("exponent {exponent} is not in class 0")]
    NotClassZero { exponent: u32 },
    #[error("psi(F0) = {psi} leaves nothing of the window [1, {horizon}]")]
    VacuousWindow { psi: u64, horizon: u64 },
    #[error(transparent)]
    Nat(#[from] NatError),
}

/// `ψ(F) = Σ_{i∈F} 2^i`.
pub fn psi_encode(f: &BTreeSet<u32>) -> Result<u64, GalleryError> {
    f.iter().try_fold(0u64, |acc, &i| {
        if i >= 64 {
            Err(GalleryError::Overflow { exponent: i })
        } else {
            Ok(acc | (1u64 << i))
        }
    })
}

pub fn psi_decode(n: u64) -> BTreeSet<u32> {
    (0..64).filter(|i| n >> i & 1 == 1).collect()
}

/// A finite exponent set together with its code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiCode {
    pub exponent_set: BTreeSet<u32>,
    pub value: u64,
}

impl PsiCode {
    pub fn from_set(exponent_set: BTreeSet<u32>) -> Result<Self, GalleryError> {
        let value = psi_encode(&exponent_set)?;
        Ok(PsiCode {
            exponent_set,
            value,
        })
    }

    pub fn from_value(value: u64) -> Self {
        PsiCode {
            exponent_set: psi_decode(value),
            value,
        }
    }
}

/// Outcome of checking the property `ψ(F)+ψ(G) = ψ(H)` for an even `H`
/// iff `F ∩ G = ∅` and `F ∪ G = H`, on one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StarCheck {
    /// `ψ(F)+ψ(G)` is the code of a set of even exponents.
    pub sum_is_code: bool,
    pub disjoint: bool,
    /// The decoded sum equals `F ∪ G`.
    pub union_matches: bool,
}

impl StarCheck {
    pub fn holds(&self) -> bool {
        self.sum_is_code == (self.disjoint && self.union_matches)
    }
}

pub fn star_check(f: &BTreeSet<u32>, g: &BTreeSet<u32>) -> Result<StarCheck, GalleryError> {
    if let Some(&e) = f.iter().chain(g).find(|&&e| e % 2 == 1) {
        return Err(GalleryError::NotEvenExponents { exponent: e });
    }
    let sum = psi_encode(f)? as u128 + psi_encode(g)? as u128;
    let h: BTreeSet<u32> = (0..128).filter(|i| sum >> i & 1 == 1).collect();
    let union: BTreeSet<u32> = f.union(g).copied().collect();
    Ok(StarCheck {
        sum_is_code: h.iter().all(|e| e % 2 == 0),
        disjoint: f.is_disjoint(g),
        union_matches: h == union,
    })
}

/// A partition of the even exponents into infinitely many infinite
/// classes `A_0, A_1, …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvenPartition {
    /// `0 ∈ A_0`, and `2t` lies in class `v₂(t)` for `t ≥ 1`.
    #[default]
    TwoAdicWithZero,
    /// As above but over `{2, 4, 6, …}` only.
    PositiveTwoAdic,
}

impl EvenPartition {
    pub fn class(&self, e: u64) -> Result<u64, GalleryError> {
        if e % 2 == 1 {
            return Err(GalleryError::OddInput(e));
        }
        match (self, e) {
            (EvenPartition::TwoAdicWithZero, 0) => Ok(0),
            (EvenPartition::PositiveTwoAdic, 0) => Err(GalleryError::NotInPartition(0)),
            (_, e) => Ok((e / 2).trailing_zeros() as u64),
        }
    }

    /// Members of class `n` that are at most `bound`, ascending.
    pub fn class_members(&self, n: u64, bound: u64) -> Vec<u64> {
        let mut out = Vec::new();
        if n == 0 && *self == EvenPartition::TwoAdicWithZero {
            out.push(0);
        }
        // class n is {2^{n+1}·(2j+1) : j ≥ 0}
        let Some(step) = 1u64.checked_shl(n as u32 + 1).filter(|_| n < 62) else {
            return out;
        };
        let mut e = step;
        while e <= bound {
            out.push(e);
            match e.checked_add(2 * step) {
                Some(next) => e = next,
                None => break,
            }
        }
        out
    }
}

pub fn even_class(e: u64) -> Result<u64, GalleryError> {
    EvenPartition::default().class(e)
}

/// One member of `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XCode {
    pub code: u64,
    pub f: Vec<u32>,
    pub g: Vec<u32>,
}

/// `X ∩ [1, horizon]` with the `(F, G)` decomposition of every member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XBuild {
    pub partition: EvenPartition,
    pub window: WindowSet,
    /// Ordered by largest exponent, then `ψ(F)`.
    pub codes: Vec<XCode>,
    pub f_sets_considered: usize,
    pub max_exponent: u32,
}

pub fn build_x(horizon: u64) -> Result<XBuild, GalleryError> {
    build_x_with(horizon, EvenPartition::default())
}

/// `X = {ψ(F ∪ G) : ∅ ≠ F ⊆ A_0, ∅ ≠ G ⊆ A_{ψ(F)}}`, restricted to the window.
pub fn build_x_with(horizon: u64, partition: EvenPartition) -> Result<XBuild, GalleryError> {
    if horizon < 4 {
        return Err(GalleryError::HorizonTooSmall { horizon });
    }
    let mut window = WindowSet::empty(horizon)?;
    let max_exponent = 63 - horizon.leading_zeros();
    let class0 = partition.class_members(0, max_exponent as u64);
    let mut f_sets_considered = 0;
    let mut codes = Vec::new();
    for f in nonempty_subsets(&class0) {
        let Some(psi_f) = code_within(&f, horizon) else {
            continue;
        };
        f_sets_considered += 1;
        let class = partition.class_members(psi_f, max_exponent as u64);
        for g in nonempty_subsets(&class) {
            let Some(psi_g) = code_within(&g, horizon) else {
                continue;
            };
            // classes are disjoint, so ψ(F ∪ G) = ψ(F) + ψ(G)
            let code = psi_f + psi_g;
            if code > horizon {
                continue;
            }
            window.insert(code)?;
            codes.push(XCode {
                code,
                f: f.iter().map(|&e| e as u32).collect(),
                g: g.iter().map(|&e| e as u32).collect(),
            });
        }
    }
    codes.sort_by_key(|c| {
        let top = c.f.iter().chain(&c.g).max().copied();
        (top, psi_of(&c.f), c.code)
    });
    Ok(XBuild {
        partition,
        window,
        codes,
        f_sets_considered,
        max_exponent,
    })
}

fn psi_of(exponents: &[u32]) -> u64 {
    exponents.iter().map(|&e| 1u64 << e).sum()
}

fn code_within(exponents: &[u64], horizon: u64) -> Option<u64> {
    exponents
        .iter()
        .try_fold(0u64, |acc, &e| acc.checked_add(1u64.checked_shl(e as u32)?))
        .filter(|&c| c <= horizon)
}

fn nonempty_subsets(items: &[u64]) -> impl Iterator<Item = Vec<u64>> + '_ {
    assert!(
        items.len() < 32,
        "subset enumeration over {} items",
        items.len()
    );
    (1u32..(1u32 << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoTripleReport {
    pub no_triple: bool,
    pub counterexample: Option<(u64, u64, u64)>,
    pub pairs_checked: u64,
    pub pairs_beyond_horizon: u64,
}

/// Scans every `a < b` in `x`: no `a + b ∈ x` for the pairs whose sum fits
/// the window. Pairs summing past the horizon are only counted.
pub fn verify_no_sum_triple(x: &WindowSet) -> NoTripleReport {
    let members = x.to_vec();
    let mut report = NoTripleReport {
        no_triple: true,
        counterexample: None,
        pairs_checked: 0,
        pairs_beyond_horizon: 0,
    };
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if a + b > x.horizon() {
                report.pairs_beyond_horizon += 1;
                continue;
            }
            report.pairs_checked += 1;
            if x.contains(a + b) && report.counterexample.is_none() {
                report.no_triple = false;
                report.counterexample = Some((a, b, a + b));
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftWitness {
    pub f0: Vec<u32>,
    pub psi: u64,
    /// `2^g` for the members `g` of class `ψ(F0)` that fit the shifted window.
    pub generators: Vec<u64>,
    pub codes_checked: usize,
    pub holds: bool,
    pub missing: Option<u64>,
}

/// Checks `X − ψ(F0) ⊇ FS({2^g : g ∈ A_{ψ(F0)}})` inside the window.
pub fn verify_shift_witness(
    f0: &BTreeSet<u32>,
    horizon: u64,
    partition: EvenPartition,
) -> Result<ShiftWitness, GalleryError> {
    if f0.is_empty() {
        return Err(GalleryError::EmptyF0);
    }
    for &e in f0 {
        if partition.class(e as u64)? != 0 {
            return Err(GalleryError::NotClassZero { exponent: e });
        }
    }
    let psi = psi_encode(f0)?;
    if psi >= horizon {
        return Err(GalleryError::VacuousWindow { psi, horizon });
    }
    let x = build_x_with(horizon, partition)?.window;
    let shifted = shift_set(&x, psi)?;
    let reduced = shifted.horizon();
    let max_exponent = 63 - reduced.leading_zeros();
    let generators: Vec<u64> = partition
        .class_members(psi, max_exponent as u64)
        .into_iter()
        .map(|g| 1u64 << g)
        .collect();
    let fs = fs_set(&FSGenerator::new(generators.clone())?, reduced)?;
    let missing = fs.members().find(|&c| !shifted.contains(c));
    Ok(ShiftWitness {
        f0: f0.iter().copied().collect(),
        psi,
        generators,
        codes_checked: fs.len(),
        holds: missing.is_none(),
        missing,
    })
}

/// The `count` nonempty subsets of class 0 with the smallest codes.
pub fn smallest_class_zero_sets(count: usize, partition: EvenPartition) -> Vec<BTreeSet<u32>> {
    let pool = partition.class_members(0, 62);
    let mut sets: Vec<(u64, BTreeSet<u32>)> = Vec::new();
    // the `count` smallest codes only use the `count` smallest exponents
    let pool = &pool[..pool.len().min(count.max(1))];
    for s in nonempty_subsets(pool) {
        let set: BTreeSet<u32> = s.iter().map(|&e| e as u32).collect();
        sets.push((psi_encode(&set).expect("exponents below 63"), set));
    }
    sets.sort();
    sets.into_iter().take(count).map(|(_, s)| s).collect()
}

/// The exponent range `[2^{k−1}, 2^k)` of block `k ≥ 1`.
fn block_range(k: u32) -> (u64, u64) {
    (1u64 << (k - 1), 1u64 << k)
}

/// `⋃_k FS({2^i : 2^{k−1} ≤ i < 2^k})`, truncated at `horizon`.
pub fn fal_not_al_example(horizon: u64) -> Result<WindowSet, GalleryError> {
    let mut out = WindowSet::empty(horizon)?;
    let max_exponent = (63 - horizon.leading_zeros()) as u64;
    let mut k = 1;
    loop {
        let (lo, hi) = block_range(k);
        if lo > max_exponent {
            break;
        }
        let gens: Vec<u64> = (lo..hi.min(max_exponent + 1)).map(|i| 1u64 << i).collect();
        let fs = fs_set(&FSGenerator::new(gens)?, horizon)?;
        for m in fs.members() {
            out.insert(m)?;
        }
        k += 1;
    }
    Ok(out)
}

/// The block `k` whose exponent range holds every binary digit of `n`.
pub fn block_of(n: u64) -> Option<u32> {
    let low = n.trailing_zeros() as u64;
    if n == 0 || low == 0 {
        return None;
    }
    let high = 63 - n.leading_zeros() as u64;
    let k = 64 - low.leading_zeros();
    let (lo, hi) = block_range(k);
    (lo <= low && high < hi).then_some(k)
}
