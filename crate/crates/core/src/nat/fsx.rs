use super::fs::{fs_set, FSGenerator};
use super::window::WindowSet;
use super::Decision;

/// Membership of `A` in the filter `FS_X = {A : A ⊇ FS(X∖F), F ⊂ X finite}`,
/// judged inside `A`'s window.
pub fn fsx_member(x: &FSGenerator, a: &WindowSet) -> Decision {
    fsx_member_detail(x, a).0
}

/// Like [`fsx_member`], also returning the number of leading generators
/// removed in the deciding tail when the answer is `Yes`.
///
/// Only tails `X[j..]` need checking: any finite `F` satisfies
/// `FS(X∖F) ⊇ FS(X[j..])` once `j` passes the last element of `F`.
pub fn fsx_member_detail(x: &FSGenerator, a: &WindowSet) -> (Decision, Option<usize>) {
    let h = a.horizon();
    let mut all_refuted = true;
    for j in 0..x.len() {
        let tail = x.tail(j);
        let fs = fs_set(&tail, h).expect("horizon already validated by the window");
        if !fs.is_subset(a) {
            continue;
        }
        if tail.total() <= h {
            return (Decision::Yes, Some(j));
        }
        all_refuted = false;
    }
    if all_refuted {
        (Decision::No, None)
    } else {
        (Decision::Unknown, None)
    }
}

/// `A_V = {n : A − n ∈ FS_X}` on `A`'s window, split by decidability.
/// Positions with no room left to shift (`n = horizon`) count as unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftPreimage {
    pub yes: WindowSet,
    pub unknown: WindowSet,
}

impl ShiftPreimage {
    pub fn decision(&self, n: u64) -> Decision {
        if self.yes.contains(n) {
            Decision::Yes
        } else if self.unknown.contains(n) {
            Decision::Unknown
        } else {
            Decision::No
        }
    }
}

pub fn fsx_shift_preimage(a: &WindowSet, x: &FSGenerator) -> ShiftPreimage {
    let h = a.horizon();
    // FS of every tail at the full horizon; shifted windows only truncate it
    let tails: Vec<(Vec<u64>, u64)> = (0..x.len())
        .map(|j| {
            let t = x.tail(j);
            let fs = fs_set(&t, h).expect("horizon already validated by the window");
            (fs.to_vec(), t.total())
        })
        .collect();
    let mut yes = WindowSet::empty(h).expect("valid horizon");
    let mut unknown = WindowSet::empty(h).expect("valid horizon");
    unknown.insert(h).expect("horizon is in its own window");
    for n in 1..h {
        let reduced = h - n;
        let mut all_refuted = true;
        let mut decided = false;
        for (fs, total) in &tails {
            let contained = fs
                .iter()
                .take_while(|&&s| s <= reduced)
                .all(|&s| a.contains(s + n));
            if !contained {
                continue;
            }
            if *total <= reduced {
                decided = true;
                break;
            }
            all_refuted = false;
        }
        if decided {
            yes.insert(n).expect("n < horizon");
        } else if !all_refuted {
            unknown.insert(n).expect("n < horizon");
        }
    }
    ShiftPreimage { yes, unknown }
}
