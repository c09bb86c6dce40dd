//! Linear algebra over GF(2) for the hidden-period post-processing.

/// Rank of the given n-bit row vectors under XOR, and whether they span
/// the whole space {0,1}^n.
pub fn gf2_rank(vectors: &[u64], n: usize) -> (usize, bool) {
    let mut tracker = SpanTracker::new(n);
    for &v in vectors {
        tracker.add(v);
    }
    (tracker.rank(), tracker.is_full())
}

/// Incremental Gaussian elimination: rows are reduced against a basis
/// stored by leading-bit position.
#[derive(Debug, Clone)]
pub struct SpanTracker {
    n: usize,
    basis: Vec<u64>,
    rank: usize,
}

impl SpanTracker {
    pub fn new(n: usize) -> Self {
        assert!((1..=63).contains(&n));
        SpanTracker {
            n,
            basis: vec![0; n],
            rank: 0,
        }
    }

    /// Inserts a vector; returns true when it enlarged the span.
    pub fn add(&mut self, mut v: u64) -> bool {
        debug_assert!(v < (1u64 << self.n));
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            if self.basis[lead] == 0 {
                self.basis[lead] = v;
                self.rank += 1;
                return true;
            }
            v ^= self.basis[lead];
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_set_has_rank_zero() {
        assert_eq!(gf2_rank(&[], 2), (0, false));
    }

    #[test]
    fn standard_basis_is_full() {
        assert_eq!(gf2_rank(&[0b01, 0b10], 2), (2, true));
    }

    #[test]
    fn dependent_row_does_not_grow_rank() {
        // 011 ^ 101 = 110, so the third row is dependent.
        assert_eq!(gf2_rank(&[0b011, 0b101, 0b110], 3), (2, false));
    }

    #[test]
    fn zero_vectors_are_ignored() {
        let mut t = SpanTracker::new(4);
        assert!(!t.add(0));
        assert!(t.add(0b1001));
        assert!(!t.add(0b1001));
        assert_eq!(t.rank(), 1);
    }
}
