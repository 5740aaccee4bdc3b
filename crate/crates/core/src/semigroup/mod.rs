//! Finite semigroups given by validated Cayley tables.
//!
//! Elements are dense indices `0..order`. Every constructor runs the full
//! `order³` associativity scan, so a [`FiniteSemigroup`] value is always a
//! semigroup.

mod builders;
mod element_set;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use element_set::{ElementSet, Elements};

/// Orders up to this bound get the exhaustive subset route in
/// [`FiniteSemigroup::minimal_subsemigroups`].
pub const EXHAUSTIVE_MINIMAL_ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("Cayley table is empty")]
    Empty,
    #[error("Cayley table row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row}, {col}) = {value} is outside 0..{order}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("operation is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("order {order} exceeds the supported maximum of {max}")]
    TooLarge { order: usize, max: usize },
    #[error("element {element} is outside 0..{order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("sets belong to different ground semigroups")]
    GroundMismatch,
    #[error("unsupported builder parameter: {0}")]
    Unsupported(String),
}

/// A finite semigroup with its operation stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
    label: Option<String>,
}

/// On-disk Cayley table format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyFile {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl FiniteSemigroup {
    /// Validates a square table: range first, then associativity by
    /// exhaustive triple scan. The reported triple is the lexicographically
    /// first violation.
    pub fn validate(table: Vec<Vec<usize>>) -> Result<Self, SemigroupError> {
        Self::validate_labelled(table, None)
    }

    pub fn validate_labelled(
        table: Vec<Vec<usize>>,
        label: Option<String>,
    ) -> Result<Self, SemigroupError> {
        let order = table.len();
        if order == 0 {
            return Err(SemigroupError::Empty);
        }
        if order > ElementSet::MAX_ORDER {
            return Err(SemigroupError::TooLarge {
                order,
                max: ElementSet::MAX_ORDER,
            });
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(SemigroupError::NotSquare {
                    row,
                    len: entries.len(),
                    expected: order,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(SemigroupError::OutOfRange {
                        row,
                        col,
                        value,
                        order,
                    });
                }
                flat.push(value);
            }
        }
        let s = FiniteSemigroup {
            order,
            table: flat,
            label,
        };
        if let Some((a, b, c)) = s.first_non_associative_triple() {
            return Err(SemigroupError::NonAssociative { a, b, c });
        }
        Ok(s)
    }

    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, SemigroupError> {
        Self::validate(table)
    }

    pub fn from_cayley_file(file: CayleyFile) -> Result<Self, SemigroupError> {
        if file.n != file.table.len() {
            return Err(SemigroupError::NotSquare {
                row: file.table.len(),
                len: file.table.len(),
                expected: file.n,
            });
        }
        Self::validate_labelled(file.table, file.label)
    }

    pub fn to_cayley_file(&self) -> CayleyFile {
        CayleyFile {
            n: self.order,
            table: self.rows(),
            label: self.label.clone(),
        }
    }

    fn first_non_associative_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    if self.op(ab, c) != self.op(a, self.op(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// `a ⋆ b`.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// Two semigroups are the same ground when their tables agree; labels
    /// are ignored.
    pub fn same_ground(&self, other: &FiniteSemigroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    pub fn element_set<I>(&self, elements: I) -> Result<ElementSet, SemigroupError>
    where
        I: IntoIterator<Item = usize>,
    {
        ElementSet::from_elements(self.order, elements).map_err(|element| {
            SemigroupError::ElementOutOfRange {
                element,
                order: self.order,
            }
        })
    }

    pub fn check_element(&self, x: usize) -> Result<(), SemigroupError> {
        if x < self.order {
            Ok(())
        } else {
            Err(SemigroupError::ElementOutOfRange {
                element: x,
                order: self.order,
            })
        }
    }

    fn check_set(&self, a: &ElementSet) -> Result<(), SemigroupError> {
        if a.order() == self.order {
            Ok(())
        } else {
            Err(SemigroupError::GroundMismatch)
        }
    }

    /// `{a ⋆ b : a ∈ A, b ∈ B}`.
    pub fn product_set(
        &self,
        a: &ElementSet,
        b: &ElementSet,
    ) -> Result<ElementSet, SemigroupError> {
        self.check_set(a)?;
        self.check_set(b)?;
        Ok(self.product_set_unchecked(a, b))
    }

    pub(crate) fn product_set_unchecked(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        for x in a {
            for y in b {
                out.insert(self.op(x, y));
            }
        }
        out
    }

    /// `x ⋆ B`.
    pub fn left_translate(&self, x: usize, b: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        for y in b {
            out.insert(self.op(x, y));
        }
        out
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.op(e, e) == e
    }

    pub fn idempotents(&self) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        for e in 0..self.order {
            if self.is_idempotent(e) {
                out.insert(e);
            }
        }
        out
    }

    /// The unique idempotent among the powers of `x`.
    ///
    /// Powers `x, x², …` eventually enter a cycle of length `p`; the cycle
    /// is a cyclic group and its identity is the only idempotent power.
    pub fn power_idempotent(&self, x: usize) -> Result<usize, SemigroupError> {
        self.check_element(x)?;
        // first_seen[y] = k + 1 when y = x^{k+1}
        let mut first_seen = vec![0usize; self.order];
        let mut powers = Vec::with_capacity(self.order + 1);
        let mut current = x;
        loop {
            if first_seen[current] != 0 {
                break;
            }
            powers.push(current);
            first_seen[current] = powers.len();
            current = self.op(current, x);
        }
        // powers[start..] is the cycle
        let start = first_seen[current] - 1;
        let idem = powers[start..]
            .iter()
            .copied()
            .find(|&y| self.is_idempotent(y))
            .expect("the cycle of a monogenic semigroup contains an idempotent");
        Ok(idem)
    }

    pub fn is_subsemigroup(&self, b: &ElementSet) -> bool {
        if b.is_empty() || b.order() != self.order {
            return false;
        }
        b.iter()
            .all(|x| b.iter().all(|y| b.contains(self.op(x, y))))
    }

    /// All inclusion-minimal nonempty subsemigroups, sorted by their single
    /// element.
    ///
    /// Up to [`EXHAUSTIVE_MINIMAL_ORDER`] this enumerates every subset by
    /// increasing size and keeps the closed ones that contain no smaller
    /// minimal set. Above that bound it uses the idempotent-singleton
    /// characterization directly.
    pub fn minimal_subsemigroups(&self) -> Vec<ElementSet> {
        if self.order <= EXHAUSTIVE_MINIMAL_ORDER {
            self.minimal_subsemigroups_exhaustive()
        } else {
            self.idempotents()
                .iter()
                .map(|e| ElementSet::singleton(self.order, e))
                .collect()
        }
    }

    pub fn minimal_subsemigroups_exhaustive(&self) -> Vec<ElementSet> {
        let n = self.order;
        assert!(n < 64);
        let mut minimal: Vec<ElementSet> = Vec::new();
        for size in 1..=n {
            for mask in combinations(n, size) {
                let b = ElementSet::from_mask(n, mask).expect("mask in range");
                if minimal.iter().any(|m| m.is_subset(&b)) {
                    continue;
                }
                if self.is_subsemigroup(&b) {
                    minimal.push(b);
                }
            }
        }
        minimal.sort();
        minimal
    }
}

/// Masks over `n` bits with exactly `k` bits set, ascending (Gosper's hack).
fn combinations(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut next = if k == 0 || k > n {
        None
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        let candidate = (((r ^ cur) >> 2) / c) | r;
        next = (r < limit && candidate < limit).then_some(candidate);
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_first_violation(t: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
        let n = t.len();
        (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
            .find(|&(a, b, c)| t[t[a][b]][c] != t[a][t[b][c]])
    }

    #[test]
    fn validate_accepts_mod4_and_semilattice() {
        let z4 = (0..4)
            .map(|a| (0..4).map(|b| (a + b) % 4).collect())
            .collect();
        assert!(FiniteSemigroup::validate(z4).is_ok());
        assert!(FiniteSemigroup::validate(vec![vec![0, 0], vec![0, 1]]).is_ok());
    }

    #[test]
    fn validate_reports_first_violating_triple() {
        let t = vec![vec![1, 0], vec![0, 0]];
        let expected = brute_first_violation(&t).unwrap();
        assert_eq!(expected, (0, 0, 1));
        let (a, b, c) = expected;
        assert_eq!(
            FiniteSemigroup::validate(t),
            Err(SemigroupError::NonAssociative { a, b, c })
        );
    }

    #[test]
    fn validate_rejects_bad_shapes() {
        assert_eq!(
            FiniteSemigroup::validate(vec![]),
            Err(SemigroupError::Empty)
        );
        assert!(matches!(
            FiniteSemigroup::validate(vec![vec![0, 0], vec![0]]),
            Err(SemigroupError::NotSquare { row: 1, .. })
        ));
        assert!(matches!(
            FiniteSemigroup::validate(vec![vec![0, 2], vec![0, 0]]),
            Err(SemigroupError::OutOfRange {
                row: 0,
                col: 1,
                value: 2,
                ..
            })
        ));
    }

    #[test]
    fn product_set_examples() {
        let z5 = FiniteSemigroup::cyclic_mod(5).unwrap();
        let a = z5.element_set([1, 2]).unwrap();
        let b = z5.element_set([3]).unwrap();
        assert_eq!(z5.product_set(&a, &b).unwrap().to_vec(), vec![0, 4]);
        let empty = ElementSet::empty(5);
        assert!(z5.product_set(&empty, &b).unwrap().is_empty());

        let lz = FiniteSemigroup::left_zero(3).unwrap();
        let a = lz.element_set([0, 1]).unwrap();
        let b = lz.element_set([2]).unwrap();
        assert_eq!(lz.product_set(&a, &b).unwrap().to_vec(), vec![0, 1]);

        assert_eq!(z5.product_set(&a, &b), Err(SemigroupError::GroundMismatch));
    }

    #[test]
    fn idempotent_examples() {
        assert_eq!(
            FiniteSemigroup::cyclic_mod(4)
                .unwrap()
                .idempotents()
                .to_vec(),
            vec![0]
        );
        assert_eq!(
            FiniteSemigroup::left_zero(3)
                .unwrap()
                .idempotents()
                .to_vec(),
            vec![0, 1, 2]
        );
        // T_2 maps encoded as f(0) + 2 f(1): id = 2, const0 = 0, const1 = 3, swap = 1.
        let t2 = FiniteSemigroup::transformation_monoid(2).unwrap();
        let scan: Vec<usize> = (0..4).filter(|&e| t2.op(e, e) == e).collect();
        assert_eq!(scan, vec![0, 2, 3]);
        assert_eq!(t2.idempotents().to_vec(), scan);
    }

    #[test]
    fn power_idempotent_examples() {
        let z6 = FiniteSemigroup::cyclic_mod(6).unwrap();
        assert_eq!(z6.power_idempotent(2).unwrap(), 0);
        let lz = FiniteSemigroup::left_zero(3).unwrap();
        assert_eq!(lz.power_idempotent(1).unwrap(), 1);
        assert!(z6.power_idempotent(6).is_err());
    }

    #[test]
    fn subsemigroup_examples() {
        let z4 = FiniteSemigroup::cyclic_mod(4).unwrap();
        assert!(z4.is_subsemigroup(&z4.element_set([0, 2]).unwrap()));
        assert!(!z4.is_subsemigroup(&z4.element_set([1, 2, 3]).unwrap()));
        assert!(!z4.is_subsemigroup(&ElementSet::empty(4)));
    }

    #[test]
    fn minimal_subsemigroup_examples() {
        let z4 = FiniteSemigroup::cyclic_mod(4).unwrap();
        assert_eq!(
            z4.minimal_subsemigroups(),
            vec![ElementSet::singleton(4, 0)]
        );
        let lz = FiniteSemigroup::left_zero(2).unwrap();
        assert_eq!(
            lz.minimal_subsemigroups(),
            vec![ElementSet::singleton(2, 0), ElementSet::singleton(2, 1)]
        );
        let meet = FiniteSemigroup::validate(vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(
            meet.minimal_subsemigroups(),
            vec![ElementSet::singleton(2, 0), ElementSet::singleton(2, 1)]
        );
    }

    #[test]
    fn minimal_fast_path_above_exhaustive_bound() {
        let z = FiniteSemigroup::cyclic_mod(24).unwrap();
        assert_eq!(
            z.minimal_subsemigroups(),
            vec![ElementSet::singleton(24, 0)]
        );
    }

    #[test]
    fn gosper_combinations() {
        let v: Vec<u64> = combinations(4, 2).collect();
        assert_eq!(v, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(combinations(5, 5).count(), 1);
        assert_eq!(combinations(20, 10).count(), 184_756);
    }

    #[test]
    fn cayley_file_round_trip() {
        let s = FiniteSemigroup::cyclic_mod(3).unwrap().with_label("Z3");
        let json = serde_json::to_string(&s.to_cayley_file()).unwrap();
        let back: CayleyFile = serde_json::from_str(&json).unwrap();
        assert_eq!(FiniteSemigroup::from_cayley_file(back).unwrap(), s);
    }

    #[test]
    fn cayley_file_rejects_wrong_n() {
        let file = CayleyFile {
            n: 3,
            table: vec![vec![0, 0], vec![0, 0]],
            label: None,
        };
        assert!(FiniteSemigroup::from_cayley_file(file).is_err());
    }
}
