//! Exact census of the 1-inputs of the total hidden-period function, by
//! enumeration of all 2^(n 2^n) block tables (n <= 3).

use super::BoundsError;

#[derive(Debug, Clone, Copy)]
pub struct SimonOneInputs {
    pub n: usize,
    /// Exact number of inputs with at least one nonzero period.
    pub count: u64,
    pub total: u64,
    pub fraction: f64,
    /// The choose-a-period over-count (2^n - 1) * (2^n)^(2^(n-1)).
    pub overcount_bound: u64,
    /// 2^(-n (2^(n-1) - 1)).
    pub fraction_bound: f64,
    pub within_bounds: bool,
}

/// Enumerates every block table and tests for a nonzero period with an
/// early exit. Refuses n >= 4 (2^64 tables).
pub fn simon_one_inputs_count(n: usize) -> Result<SimonOneInputs, BoundsError> {
    if n == 0 || n > 3 {
        return Err(BoundsError::SizeCapExceeded { n, cap: 3 });
    }
    let blocks = 1usize << n;
    let bits = n * blocks;
    let total = 1u64 << bits;
    let mask = (1u64 << n) - 1;
    let mut count = 0u64;
    for table in 0..total {
        let block = |i: usize| (table >> (n * i)) & mask;
        'k: for k in 1..blocks {
            for i in 0..blocks {
                if block(i ^ k) != block(i) {
                    continue 'k;
                }
            }
            count += 1;
            break;
        }
    }
    let overcount_bound = ((1u64 << n) - 1) * (1u64 << n).pow(1 << (n - 1));
    let fraction_bound = 2f64.powi(-((n as i32) * ((1 << (n - 1)) - 1)));
    let fraction = count as f64 / total as f64;
    Ok(SimonOneInputs {
        n,
        count,
        total,
        fraction,
        overcount_bound,
        fraction_bound,
        within_bounds: count <= overcount_bound && fraction < fraction_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{simon_value, BitInput};

    #[test]
    fn n1_count_is_two_and_bound_is_tight() {
        let r = simon_one_inputs_count(1).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.total, 4);
        assert_eq!(r.overcount_bound, 2);
        // fraction 1/2 < bound 2^0 = 1
        assert!((r.fraction - 0.5).abs() < 1e-15);
        assert!(r.within_bounds);
    }

    #[test]
    fn n2_count_and_bounds() {
        let r = simon_one_inputs_count(2).unwrap();
        assert_eq!(r.count, 40);
        assert_eq!(r.total, 256);
        assert_eq!(r.overcount_bound, 48);
        assert!((r.fraction - 40.0 / 256.0).abs() < 1e-15);
        assert!(r.fraction < 0.25);
        assert!(r.within_bounds);
    }

    #[test]
    fn n3_respects_bounds() {
        let r = simon_one_inputs_count(3).unwrap();
        assert_eq!(r.total, 1 << 24);
        assert_eq!(r.overcount_bound, 7 * 4096);
        assert!(r.within_bounds, "count {} fraction {}", r.count, r.fraction);
    }

    #[test]
    fn census_matches_independent_enumeration_via_simon_value() {
        for n in [1usize, 2] {
            let bits = n << n;
            let mut direct = 0u64;
            for v in 0u64..(1u64 << bits) {
                let x = BitInput::from_u64(bits, v).with_block_width(n).unwrap();
                direct += simon_value(&x).unwrap() as u64;
            }
            assert_eq!(simon_one_inputs_count(n).unwrap().count, direct);
        }
    }

    #[test]
    fn refuses_large_n() {
        assert!(matches!(
            simon_one_inputs_count(4),
            Err(BoundsError::SizeCapExceeded { .. })
        ));
    }
}
