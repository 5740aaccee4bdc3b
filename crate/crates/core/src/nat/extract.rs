use std::fmt;

use serde::{Serialize, Serializer};

use super::fs::FSWitness;
use super::oracle::UltrafilterOracle;
use super::window::{shift_set, WindowSet};
use super::{Decision, NatError};

/// The base set of one intersection term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermSet {
    /// The target `A`.
    Target,
    /// `A_{V^i}`, `i ≥ 1`.
    Preimage(u32),
    /// `A⋆ = A ∩ A_V`.
    Star,
}

impl fmt::Display for TermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermSet::Target => f.write_str("A"),
            TermSet::Preimage(1) => f.write_str("A_V"),
            TermSet::Preimage(i) => write!(f, "A_V^{i}"),
            TermSet::Star => f.write_str("A*"),
        }
    }
}

impl Serialize for TermSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `base − x_{i₁} − … − x_{iₘ}`; `summands` holds 1-based pick indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftTerm {
    pub set: TermSet,
    pub summands: Vec<usize>,
    pub shift: u64,
}

impl fmt::Display for ShiftTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.set)?;
        for i in &self.summands {
            write!(f, " - x{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtractionStep {
    /// 1-based index of the element being picked.
    pub index: usize,
    pub terms: Vec<ShiftTerm>,
    /// The intersection of all terms, before restricting above the last pick.
    pub candidates: WindowSet,
    pub picked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extraction {
    pub witness: FSWitness,
    pub steps: Vec<ExtractionStep>,
    /// Set when the principal branch produced `{m, 2m, …, km}`.
    pub principal: Option<u64>,
}

/// Picks `x₁ < … < x_k` from `A⋆ = A ∩ A_V`, each from `A⋆` intersected
/// with its shifts by every partial sum of the earlier picks.
pub fn galvin_extract(
    a: &WindowSet,
    v: &dyn UltrafilterOracle,
    k: usize,
) -> Result<Extraction, NatError> {
    if k == 0 {
        return Err(NatError::ZeroK);
    }
    require_member(a, v)?;
    let star = a.intersection(&v.shift_preimage(a).yes);
    let mut picks: Vec<u64> = Vec::with_capacity(k);
    let mut steps = Vec::with_capacity(k);
    for index in 1..=k {
        let terms: Vec<ShiftTerm> = nonempty_first(index - 1)
            .into_iter()
            .map(|summands| term(TermSet::Star, summands, &picks))
            .collect();
        let step = pick_step(index, terms, &picks, v, |t| {
            Ok(shift_set(&star, t.shift).ok())
        })?;
        picks.push(step.picked);
        steps.push(step);
    }
    Ok(Extraction {
        witness: FSWitness::new(picks, a.clone())?,
        steps,
        principal: None,
    })
}

/// The `k`-step procedure for a filter `F ⊆ F ⊕ V`: `x_j` is picked from
/// `⋂_{i ≤ k−j} ⋂_s (A_{V^i} − s)`, `s` ranging over the sums of subsets of
/// the earlier picks. `powers` supplies `V², V³, …` in order.
///
/// A principal `V` (generated by `m`) short-circuits to `{m, 2m, …, km}`.
pub fn weak_extract(
    a: &WindowSet,
    v: &dyn UltrafilterOracle,
    powers: &[&dyn UltrafilterOracle],
    k: usize,
) -> Result<Extraction, NatError> {
    if k == 0 {
        return Err(NatError::ZeroK);
    }
    if let Some(m) = v.principal_generator() {
        return principal_branch(a, m, k);
    }
    if powers.len() + 2 < k {
        return Err(NatError::ChainTooShort {
            expected: k - 2,
            got: powers.len(),
        });
    }
    require_member(a, v)?;
    let mut bases = vec![a.clone()];
    for i in 1..k {
        let oracle: &dyn UltrafilterOracle = if i == 1 { v } else { powers[i - 2] };
        bases.push(oracle.shift_preimage(a).yes);
    }
    let mut picks: Vec<u64> = Vec::with_capacity(k);
    let mut steps = Vec::with_capacity(k);
    for index in 1..=k {
        let mut terms = Vec::new();
        for i in 0..=(k - index) {
            let set = if i == 0 {
                TermSet::Target
            } else {
                TermSet::Preimage(i as u32)
            };
            for summands in nonempty_first(index - 1) {
                terms.push(term(set, summands, &picks));
            }
        }
        let step = pick_step(index, terms, &picks, v, |t| {
            let base = match t.set {
                TermSet::Target => &bases[0],
                TermSet::Preimage(i) => &bases[i as usize],
                TermSet::Star => unreachable!("no star terms in this schedule"),
            };
            Ok(shift_set(base, t.shift).ok())
        })?;
        picks.push(step.picked);
        steps.push(step);
    }
    Ok(Extraction {
        witness: FSWitness::new(picks, a.clone())?,
        steps,
        principal: None,
    })
}

fn require_member(a: &WindowSet, v: &dyn UltrafilterOracle) -> Result<(), NatError> {
    match v.membership(a) {
        Decision::Yes => Ok(()),
        d => Err(NatError::NotInOracle(d)),
    }
}

/// All subsets of `{1, …, n}`, empty first, then by size and lexicographically.
fn nonempty_first(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for size in 1..=n {
        let mut combo: Vec<usize> = (1..=size).collect();
        loop {
            out.push(combo.clone());
            let Some(pos) = (0..size).rev().find(|&p| combo[p] < n - size + p + 1) else {
                break;
            };
            combo[pos] += 1;
            for q in pos + 1..size {
                combo[q] = combo[q - 1] + 1;
            }
        }
    }
    out
}

fn term(set: TermSet, summands: Vec<usize>, picks: &[u64]) -> ShiftTerm {
    let shift = summands.iter().map(|&i| picks[i - 1]).sum();
    ShiftTerm {
        set,
        summands,
        shift,
    }
}

fn pick_step<F>(
    index: usize,
    terms: Vec<ShiftTerm>,
    picks: &[u64],
    v: &dyn UltrafilterOracle,
    resolve: F,
) -> Result<ExtractionStep, NatError>
where
    F: Fn(&ShiftTerm) -> Result<Option<WindowSet>, NatError>,
{
    let mut candidates: Option<WindowSet> = None;
    for t in &terms {
        let shifted = resolve(t)?.ok_or(NatError::OracleUndecided { index })?;
        candidates = Some(match candidates {
            None => shifted,
            Some(c) => c.intersection(&shifted),
        });
    }
    let candidates = candidates.expect("every schedule has at least one term");
    let floor = picks.last().copied().unwrap_or(0);
    let admissible = candidates.above(floor);
    let picked = match v.pick(&admissible) {
        Some(p) if admissible.contains(p) => p,
        Some(p) => return Err(NatError::OracleInconsistent { index, picked: p }),
        None => {
            return Err(match v.pick(&candidates) {
                Some(p) if p <= floor => NatError::PrincipalOracleDetected { index, picked: p },
                _ => NatError::OracleUndecided { index },
            })
        }
    };
    Ok(ExtractionStep {
        index,
        terms,
        candidates,
        picked,
    })
}

fn principal_branch(a: &WindowSet, m: u64, k: usize) -> Result<Extraction, NatError> {
    let k64 = k as u64;
    for h in 1..=k64 * (k64 + 1) / 2 {
        let multiple = h * m;
        if !a.contains(multiple) {
            return Err(NatError::PrincipalMultiplesMissing { multiple });
        }
    }
    let elements = (1..=k64).map(|h| h * m).collect();
    Ok(Extraction {
        witness: FSWitness::new(elements, a.clone())?,
        steps: Vec::new(),
        principal: Some(m),
    })
}
