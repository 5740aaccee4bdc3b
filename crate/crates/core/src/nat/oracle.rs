use super::fs::FSGenerator;
use super::fsx::{fsx_member, fsx_shift_preimage, ShiftPreimage};
use super::window::{shift_set, WindowSet};
use super::Decision;

/// A window-scale stand-in for an ultrafilter `V` on ℕ.
pub trait UltrafilterOracle {
    fn membership(&self, a: &WindowSet) -> Decision;

    /// Some member of `a`, or `None` when the oracle cannot choose one.
    fn pick(&self, a: &WindowSet) -> Option<u64>;

    /// The generating point, when the oracle is principal.
    fn principal_generator(&self) -> Option<u64> {
        None
    }

    /// `A_V = {n : A − n ∈ V}` on `a`'s window.
    fn shift_preimage(&self, a: &WindowSet) -> ShiftPreimage {
        let h = a.horizon();
        let mut yes = WindowSet::empty(h).expect("valid horizon");
        let mut unknown = WindowSet::empty(h).expect("valid horizon");
        unknown.insert(h).expect("horizon is in its own window");
        for n in 1..h {
            let shifted = shift_set(a, n).expect("n < horizon");
            match self.membership(&shifted) {
                Decision::Yes => yes.insert(n).expect("n < horizon"),
                Decision::Unknown => unknown.insert(n).expect("n < horizon"),
                Decision::No => {}
            }
        }
        ShiftPreimage { yes, unknown }
    }
}

/// The `FS_X` filter read through a window; picks the least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsxOracle {
    generator: FSGenerator,
}

impl FsxOracle {
    pub fn new(generator: FSGenerator) -> Self {
        FsxOracle { generator }
    }

    pub fn generator(&self) -> &FSGenerator {
        &self.generator
    }
}

impl UltrafilterOracle for FsxOracle {
    fn membership(&self, a: &WindowSet) -> Decision {
        fsx_member(&self.generator, a)
    }

    fn pick(&self, a: &WindowSet) -> Option<u64> {
        a.least()
    }

    fn shift_preimage(&self, a: &WindowSet) -> ShiftPreimage {
        fsx_shift_preimage(a, &self.generator)
    }
}

/// The principal ultrafilter generated by `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrincipalOracle {
    m: u64,
}

impl PrincipalOracle {
    pub fn new(m: u64) -> Option<Self> {
        (m > 0).then_some(PrincipalOracle { m })
    }

    pub fn generator(&self) -> u64 {
        self.m
    }

    /// `V^i`, which is principal at `i·m`.
    pub fn power(&self, i: u64) -> PrincipalOracle {
        PrincipalOracle { m: self.m * i }
    }
}

impl UltrafilterOracle for PrincipalOracle {
    fn membership(&self, a: &WindowSet) -> Decision {
        if self.m > a.horizon() {
            Decision::Unknown
        } else if a.contains(self.m) {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    fn pick(&self, a: &WindowSet) -> Option<u64> {
        a.contains(self.m).then_some(self.m)
    }

    fn principal_generator(&self) -> Option<u64> {
        Some(self.m)
    }
}
