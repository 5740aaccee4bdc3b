use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::window::WindowSet;
use super::NatError;

/// Enumerating all `2^k − 1` subset sums is only done up to this size.
pub const MAX_WITNESS_SIZE: usize = 24;

/// Upper bound on the number of blocks `fu_set` will combine.
pub const MAX_FU_BLOCKS: usize = 20;

/// A strictly increasing sequence of positive integers `x₁ < … < x_m`,
/// read as the generator of `FS(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FSGenerator {
    elements: Vec<u64>,
}

impl FSGenerator {
    pub fn new(elements: Vec<u64>) -> Result<Self, NatError> {
        if elements.first() == Some(&0) {
            return Err(NatError::NonPositive);
        }
        if let Some(w) = elements.windows(2).find(|w| w[0] >= w[1]) {
            return Err(NatError::NotIncreasing {
                previous: w[0],
                next: w[1],
            });
        }
        Ok(FSGenerator { elements })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The generator with its first `removed` elements dropped.
    pub fn tail(&self, removed: usize) -> FSGenerator {
        FSGenerator {
            elements: self.elements[removed.min(self.elements.len())..].to_vec(),
        }
    }

    /// Sum of all elements, saturating.
    pub fn total(&self) -> u64 {
        self.elements
            .iter()
            .fold(0u64, |acc, &x| acc.saturating_add(x))
    }
}

impl TryFrom<Vec<u64>> for FSGenerator {
    type Error = NatError;

    fn try_from(v: Vec<u64>) -> Result<Self, NatError> {
        FSGenerator::new(v)
    }
}

impl From<FSGenerator> for Vec<u64> {
    fn from(g: FSGenerator) -> Vec<u64> {
        g.elements
    }
}

/// `FS(X) ∩ [1, horizon]`.
///
/// Built one generator at a time: `FS(X ∪ {x}) = FS(X) ∪ {x} ∪ (x + FS(X))`.
pub fn fs_set(x: &FSGenerator, horizon: u64) -> Result<WindowSet, NatError> {
    let mut out = WindowSet::empty(horizon)?;
    for &g in x.elements() {
        if g > horizon {
            break;
        }
        let shifted: Vec<u64> = out
            .members()
            .take_while(|&s| s <= horizon - g)
            .map(|s| s + g)
            .collect();
        out.insert(g)?;
        for s in shifted {
            out.insert(s)?;
        }
    }
    Ok(out)
}

/// All `2^k − 1` nonempty-subset sums of `elements`, with multiplicity.
/// `None` marks a sum that overflowed `u64`.
pub fn subset_sums(elements: &[u64]) -> Vec<Option<u64>> {
    let mut sums: Vec<Option<u64>> = Vec::with_capacity((1usize << elements.len()) - 1);
    for &x in elements {
        let n = sums.len();
        sums.push(Some(x));
        for i in 0..n {
            let s = sums[i].and_then(|s| s.checked_add(x));
            sums.push(s);
        }
    }
    sums
}

/// Elements `x₁ < … < x_k` together with the window they were checked
/// against; every nonempty-subset sum is a member of the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FSWitness {
    elements: Vec<u64>,
    target: WindowSet,
}

impl FSWitness {
    pub fn new(elements: Vec<u64>, target: WindowSet) -> Result<Self, NatError> {
        if elements.is_empty() {
            return Err(NatError::EmptyWitness);
        }
        if elements.len() > MAX_WITNESS_SIZE {
            return Err(NatError::WitnessTooLarge {
                size: elements.len(),
                max: MAX_WITNESS_SIZE,
            });
        }
        FSGenerator::new(elements.clone())?;
        for s in subset_sums(&elements) {
            match s {
                Some(s) if target.contains(s) => {}
                Some(s) => return Err(NatError::SumOutsideTarget { sum: s }),
                None => return Err(NatError::SumOutsideTarget { sum: u64::MAX }),
            }
        }
        Ok(FSWitness { elements, target })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn target(&self) -> &WindowSet {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sums_checked(&self) -> u64 {
        (1u64 << self.elements.len()) - 1
    }

    pub fn report(&self) -> WitnessReport {
        WitnessReport {
            elements: self.elements.clone(),
            sums_checked: self.sums_checked(),
        }
    }
}

impl Serialize for FSWitness {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.report().serialize(serializer)
    }
}

/// JSON shape of a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub elements: Vec<u64>,
    pub sums_checked: u64,
}

/// `FU` of a family of pairwise disjoint finite sets: every union of a
/// nonempty subfamily. Blocks with an element above `index_horizon` are
/// left out, mirroring how `fs_set` drops sums above its horizon.
///
/// Unions are listed in binary-counter order over the retained blocks.
pub fn fu_set(
    blocks: &[BTreeSet<u64>],
    index_horizon: u64,
) -> Result<Vec<BTreeSet<u64>>, NatError> {
    for (i, a) in blocks.iter().enumerate() {
        for (j, b) in blocks.iter().enumerate().skip(i + 1) {
            if !a.is_disjoint(b) {
                return Err(NatError::NonDisjointBlocks {
                    first: i,
                    second: j,
                });
            }
        }
    }
    let kept: Vec<&BTreeSet<u64>> = blocks
        .iter()
        .filter(|b| b.iter().all(|&x| x <= index_horizon))
        .collect();
    if kept.len() > MAX_FU_BLOCKS {
        return Err(NatError::TooManyBlocks {
            count: kept.len(),
            max: MAX_FU_BLOCKS,
        });
    }
    let unions = (1u32..(1u32 << kept.len()))
        .map(|mask| {
            kept.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .flat_map(|(_, b)| b.iter().copied())
                .collect()
        })
        .collect();
    Ok(unions)
}
