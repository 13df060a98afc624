//! Fixed-width bitsets over element-index positions.
//!
//! A subgroup of an enumerable ambient group is identified by the set of
//! positions its elements occupy in the ambient element index. These keys
//! drive deduplication, memoization, and the deterministic `(order, key)`
//! ordering used by every lattice algorithm.

/// Set of positions `0..universe` packed into 64-bit blocks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElementBitset {
    universe: usize,
    blocks: Box<[u64]>,
}

impl ElementBitset {
    pub fn empty(universe: usize) -> Self {
        ElementBitset {
            universe,
            blocks: vec![0u64; universe.div_ceil(64)].into_boxed_slice(),
        }
    }

    pub fn from_positions(universe: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for p in positions {
            set.insert(p);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, pos: usize) {
        debug_assert!(pos < self.universe);
        self.blocks[pos / 64] |= 1u64 << (pos % 64);
    }

    pub fn contains(&self, pos: usize) -> bool {
        debug_assert!(pos < self.universe);
        self.blocks[pos / 64] >> (pos % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Whether every member of `self` is a member of `other`.
    pub fn is_subset(&self, other: &ElementBitset) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.blocks
            .iter()
            .zip(other.blocks.iter())
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementBitset) -> ElementBitset {
        debug_assert_eq!(self.universe, other.universe);
        ElementBitset {
            universe: self.universe,
            blocks: self
                .blocks
                .iter()
                .zip(other.blocks.iter())
                .map(|(&a, &b)| a & b)
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            let mut b = block;
            std::iter::from_fn(move || {
                if b == 0 {
                    None
                } else {
                    let tz = b.trailing_zeros() as usize;
                    b &= b - 1;
                    Some(bi * 64 + tz)
                }
            })
        })
    }
}

/// Orders sets by their smallest differing member: for distinct sets `X`, `Y`,
/// `X < Y` iff the least element of the symmetric difference lies in `X`.
/// This matches lexicographic comparison of the sorted member lists when the
/// cardinalities agree, which is how ties after comparing on order are broken.
impl Ord for ElementBitset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.blocks.iter().zip(other.blocks.iter()) {
            let diff = a ^ b;
            if diff != 0 {
                let lowest = diff & diff.wrapping_neg();
                return if a & lowest != 0 {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                };
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for ElementBitset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_len() {
        let s = ElementBitset::from_positions(200, [0, 63, 64, 199]);
        assert!(s.contains(0) && s.contains(63) && s.contains(64) && s.contains(199));
        assert!(!s.contains(1) && !s.contains(100));
        assert_eq!(s.len(), 4);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 199]);
    }

    #[test]
    fn subset_and_intersection() {
        let a = ElementBitset::from_positions(100, [1, 2, 70]);
        let b = ElementBitset::from_positions(100, [1, 2, 3, 70, 99]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert_eq!(a.intersection(&b), a);
    }

    #[test]
    fn order_is_by_smallest_differing_member() {
        let a = ElementBitset::from_positions(100, [0, 5]);
        let b = ElementBitset::from_positions(100, [0, 7]);
        // Symmetric difference {5, 7}; 5 ∈ a, so a < b.
        assert!(a < b);
        // {1, 2} < {1, 90}: differ first at 2 ∈ left.
        let c = ElementBitset::from_positions(100, [1, 2]);
        let d = ElementBitset::from_positions(100, [1, 90]);
        assert!(c < d);
    }
}
