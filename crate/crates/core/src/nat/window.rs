use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::fs::{fs_set, FSGenerator};
use super::NatError;

/// Largest horizon a window may carry.
pub const MAX_HORIZON: u64 = 1 << 30;

/// A subset of `[1, horizon]`, standing in for a subset of ℕ whose
/// behaviour above the horizon is unknown.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WindowSet {
    horizon: u64,
    // bit i set iff i is a member; bit 0 is never set
    bits: FixedBitSet,
}

impl WindowSet {
    pub fn empty(horizon: u64) -> Result<Self, NatError> {
        check_horizon(horizon)?;
        Ok(WindowSet {
            horizon,
            bits: FixedBitSet::with_capacity(horizon as usize + 1),
        })
    }

    pub fn full(horizon: u64) -> Result<Self, NatError> {
        let mut w = Self::empty(horizon)?;
        w.bits.insert_range(1..);
        Ok(w)
    }

    pub fn from_members<I>(horizon: u64, members: I) -> Result<Self, NatError>
    where
        I: IntoIterator<Item = u64>,
    {
        let mut w = Self::empty(horizon)?;
        for m in members {
            w.insert(m)?;
        }
        Ok(w)
    }

    /// Keeps only the members that fit in `[1, horizon]`.
    pub fn from_members_truncated<I>(horizon: u64, members: I) -> Result<Self, NatError>
    where
        I: IntoIterator<Item = u64>,
    {
        let mut w = Self::empty(horizon)?;
        for m in members {
            if (1..=horizon).contains(&m) {
                w.bits.insert(m as usize);
            }
        }
        Ok(w)
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn insert(&mut self, m: u64) -> Result<(), NatError> {
        if m == 0 || m > self.horizon {
            return Err(NatError::MemberOutOfWindow {
                member: m,
                horizon: self.horizon,
            });
        }
        self.bits.insert(m as usize);
        Ok(())
    }

    pub fn contains(&self, m: u64) -> bool {
        m != 0 && m <= self.horizon && self.bits.contains(m as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.ones().map(|i| i as u64)
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.members().collect()
    }

    pub fn least(&self) -> Option<u64> {
        self.bits.minimum().map(|i| i as u64)
    }

    /// Least member strictly greater than `x`.
    pub fn least_above(&self, x: u64) -> Option<u64> {
        if x >= self.horizon {
            return None;
        }
        self.bits.ones().find(|&i| i as u64 > x).map(|i| i as u64)
    }

    /// Every member of `self` is a member of `other`.
    pub fn is_subset(&self, other: &WindowSet) -> bool {
        self.members().all(|m| other.contains(m))
    }

    /// Intersection; the horizon is the smaller of the two.
    pub fn intersection(&self, other: &WindowSet) -> WindowSet {
        let (lo, hi) = if self.horizon <= other.horizon {
            (self, other)
        } else {
            (other, self)
        };
        let mut bits = lo.bits.clone();
        bits.intersect_with(&hi.bits);
        WindowSet {
            horizon: lo.horizon,
            bits,
        }
    }

    /// Complement inside `[1, horizon]`.
    pub fn complement(&self) -> WindowSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(1..);
        WindowSet {
            horizon: self.horizon,
            bits,
        }
    }

    /// Members strictly above `x`, same horizon.
    pub fn above(&self, x: u64) -> WindowSet {
        let mut bits = self.bits.clone();
        let cut = (x.min(self.horizon) as usize) + 1;
        bits.remove_range(..cut);
        WindowSet {
            horizon: self.horizon,
            bits,
        }
    }

    /// Same members, restricted to a smaller horizon.
    pub fn truncate(&self, horizon: u64) -> Result<WindowSet, NatError> {
        let horizon = horizon.min(self.horizon);
        WindowSet::from_members_truncated(horizon, self.members())
    }
}

fn check_horizon(horizon: u64) -> Result<(), NatError> {
    if horizon == 0 {
        Err(NatError::ZeroHorizon)
    } else if horizon > MAX_HORIZON {
        Err(NatError::HorizonTooLarge {
            horizon,
            max: MAX_HORIZON,
        })
    } else {
        Ok(())
    }
}

/// `A − n = {m ≥ 1 : m + n ∈ A}` on the reduced window `[1, horizon − n]`.
pub fn shift_set(a: &WindowSet, n: u64) -> Result<WindowSet, NatError> {
    if n >= a.horizon {
        return Err(NatError::ShiftBeyondHorizon {
            shift: n,
            horizon: a.horizon,
        });
    }
    let horizon = a.horizon - n;
    let mut out = FixedBitSet::with_capacity(horizon as usize + 1);
    out.extend(
        a.bits
            .ones()
            .filter(|&i| i as u64 > n)
            .map(|i| i - n as usize),
    );
    Ok(WindowSet { horizon, bits: out })
}

impl fmt::Debug for WindowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WindowSet[1..={}]", self.horizon)?;
        f.debug_set().entries(self.members()).finish()
    }
}

/// JSON input forms: explicit members or a generator shorthand.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum WindowJson {
    Members { horizon: u64, members: Vec<u64> },
    FsOf { horizon: u64, fs_of: Vec<u64> },
}

#[derive(Serialize)]
struct WindowRepr<'a> {
    horizon: u64,
    members: &'a [u64],
}

impl TryFrom<WindowJson> for WindowSet {
    type Error = NatError;

    fn try_from(source: WindowJson) -> Result<Self, NatError> {
        match source {
            WindowJson::Members { horizon, members } => WindowSet::from_members(horizon, members),
            WindowJson::FsOf { horizon, fs_of } => fs_set(&FSGenerator::new(fs_of)?, horizon),
        }
    }
}

impl Serialize for WindowSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let members = self.to_vec();
        WindowRepr {
            horizon: self.horizon,
            members: &members,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WindowSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let source = WindowJson::deserialize(deserializer)?;
        WindowSet::try_from(source).map_err(serde::de::Error::custom)
    }
}
