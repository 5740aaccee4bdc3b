use std::fmt;

/// A subset of the elements `0..order` of a finite semigroup, stored as a
/// 64-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    order: usize,
    bits: u64,
}

impl ElementSet {
    pub const MAX_ORDER: usize = 64;

    pub fn empty(order: usize) -> Self {
        debug_assert!(order <= Self::MAX_ORDER);
        ElementSet { order, bits: 0 }
    }

    pub fn full(order: usize) -> Self {
        ElementSet {
            order,
            bits: full_mask(order),
        }
    }

    pub fn singleton(order: usize, x: usize) -> Self {
        assert!(x < order, "element {x} out of range for order {order}");
        ElementSet {
            order,
            bits: 1u64 << x,
        }
    }

    /// Builds a set from a raw mask. Bits at or above `order` are rejected.
    pub fn from_mask(order: usize, bits: u64) -> Option<Self> {
        if order > Self::MAX_ORDER || bits & !full_mask(order) != 0 {
            return None;
        }
        Some(ElementSet { order, bits })
    }

    /// Builds a set from element indices, returning the first out-of-range
    /// index on failure.
    pub fn from_elements<I>(order: usize, elements: I) -> Result<Self, usize>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = 0u64;
        for x in elements {
            if x >= order {
                return Err(x);
            }
            bits |= 1u64 << x;
        }
        Ok(ElementSet { order, bits })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mask(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.order && self.bits & (1u64 << x) != 0
    }

    pub fn insert(&mut self, x: usize) {
        assert!(
            x < self.order,
            "element {x} out of range for order {}",
            self.order
        );
        self.bits |= 1u64 << x;
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            order: self.order,
            bits: self.bits & other.bits,
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            order: self.order,
            bits: self.bits | other.bits,
        }
    }

    pub fn complement(&self) -> ElementSet {
        ElementSet {
            order: self.order,
            bits: !self.bits & full_mask(self.order),
        }
    }

    pub fn least(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Elements {
        Elements { bits: self.bits }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `0..order`, the empty set included, in mask order.
    pub fn all_subsets(order: usize) -> impl Iterator<Item = ElementSet> {
        assert!(
            order < Self::MAX_ORDER,
            "exhaustive subset iteration needs order < 64"
        );
        (0..(1u64 << order)).map(move |bits| ElementSet { order, bits })
    }

    /// Nonempty subsets of `0..order` in mask order.
    pub fn nonempty_subsets(order: usize) -> impl Iterator<Item = ElementSet> {
        Self::all_subsets(order).skip(1)
    }
}

fn full_mask(order: usize) -> u64 {
    if order >= 64 {
        u64::MAX
    } else {
        (1u64 << order) - 1
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for &ElementSet {
    type Item = usize;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

/// Ascending iterator over the members of an [`ElementSet`].
#[derive(Clone)]
pub struct Elements {
    bits: u64,
}

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let x = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.bits.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = ElementSet::from_elements(5, [0, 2, 4]).unwrap();
        let b = ElementSet::from_elements(5, [2, 3]).unwrap();
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 3, 4]);
        assert_eq!(a.complement().to_vec(), vec![1, 3]);
        assert!(ElementSet::singleton(5, 2).is_subset(&a));
        assert_eq!(a.least(), Some(0));
        assert_eq!(ElementSet::empty(5).least(), None);
    }

    #[test]
    fn out_of_range_rejected() {
        assert_eq!(ElementSet::from_elements(3, [0, 3]), Err(3));
        assert!(ElementSet::from_mask(3, 0b1000).is_none());
        assert_eq!(ElementSet::full(64).len(), 64);
    }

    #[test]
    fn subset_enumeration_count() {
        assert_eq!(ElementSet::nonempty_subsets(4).count(), 15);
    }
}
