//! Exact block sensitivity: the largest number of disjoint variable sets
//! each of whose flips changes the function value at the given input.

use super::BoundsError;
use crate::dist::InputDistribution;
use crate::oracle::{BitInput, BooleanFunction};
use rand::Rng;

/// Generic exact search cap: 2^N subsets are enumerated.
const GENERIC_CAP: usize = 16;

pub fn block_sensitivity(f: &BooleanFunction, x: &BitInput) -> Result<u32, BoundsError> {
    if x.len() != f.arity() {
        return Err(BoundsError::Oracle(
            crate::oracle::OracleError::ArityMismatch {
                expected: f.arity(),
                got: x.len(),
            },
        ));
    }
    if f.is_symmetric() {
        return Ok(symmetric_bs(f, x.weight()));
    }
    if f.arity() > GENERIC_CAP {
        return Err(BoundsError::SizeCapExceeded {
            n: f.arity(),
            cap: GENERIC_CAP,
        });
    }
    Ok(generic_bs(f, x))
}

/// For a symmetric function the optimum packs blocks at the nearest
/// up-flip and down-flip weight distances: flipping a zeros raises the
/// weight by a, flipping b ones lowers it by b, and the two resources are
/// disjoint, so the best packing is floor((N-t)/du) + floor(t/dd).
fn symmetric_bs(f: &BooleanFunction, t: u64) -> u32 {
    let n = f.arity() as u64;
    let v = f.value_by_weight(t).expect("symmetric kind");
    let up = (t + 1..=n)
        .find(|&w| f.value_by_weight(w).unwrap() != v)
        .map(|w| w - t);
    let down = (0..t)
        .rev()
        .find(|&w| f.value_by_weight(w).unwrap() != v)
        .map(|w| t - w);
    let from_up = up.map_or(0, |d| (n - t) / d);
    let from_down = down.map_or(0, |d| t / d);
    (from_up + from_down) as u32
}

/// Exhaustive search: mark sensitive masks, reduce to inclusion-minimal
/// ones, then pack disjoint blocks with a subset-indexed best-count table.
fn generic_bs(f: &BooleanFunction, x: &BitInput) -> u32 {
    let n = f.arity();
    let size = 1usize << n;
    let base = f.evaluate(x).expect("arity checked");
    let mut sensitive = vec![false; size];
    for (mask, slot) in sensitive.iter_mut().enumerate().skip(1) {
        let flips: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let flipped = x.flip_set(&flips);
        *slot = f.evaluate(&flipped).expect("arity checked") != base;
    }
    // has_sub[S]: some proper nonempty subset of S is sensitive.
    let mut has_sub = vec![false; size];
    for mask in 1..size {
        let mut m = mask;
        while m != 0 {
            let bit = m & m.wrapping_neg();
            let sub = mask ^ bit;
            if sub != 0 && (sensitive[sub] || has_sub[sub]) {
                has_sub[mask] = true;
                break;
            }
            m ^= bit;
        }
    }
    // Minimal sensitive blocks, grouped by lowest set bit.
    let mut by_low: Vec<Vec<usize>> = vec![Vec::new(); n];
    for mask in 1..size {
        if sensitive[mask] && !has_sub[mask] {
            by_low[mask.trailing_zeros() as usize].push(mask);
        }
    }
    // best[avail]: maximum disjoint minimal blocks inside `avail`.
    let mut best = vec![0u32; size];
    for avail in 1..size {
        let low = avail.trailing_zeros() as usize;
        let mut b = best[avail ^ (1 << low)];
        for &block in &by_low[low] {
            if block & !avail == 0 {
                b = b.max(1 + best[avail ^ block]);
            }
        }
        best[avail] = b;
    }
    best[size - 1]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsMode {
    Linear,
    Sqrt,
}

/// An expectation with an optional Monte Carlo standard error.
#[derive(Debug, Clone, Copy)]
pub struct BsAverage {
    pub value: f64,
    pub stderr: Option<f64>,
}

/// `E_mu[bs]` or `E_mu[sqrt(bs)]`. Symmetric functions under exchangeable
/// distributions sum over weights exactly at any size; small supports are
/// enumerated; everything else falls back to Monte Carlo.
pub fn expected_bs<R: Rng>(
    f: &BooleanFunction,
    mu: &InputDistribution,
    mode: BsMode,
    rng: &mut R,
    mc_trials: u32,
) -> Result<BsAverage, BoundsError> {
    let apply = |b: u32| -> f64 {
        match mode {
            BsMode::Linear => b as f64,
            BsMode::Sqrt => (b as f64).sqrt(),
        }
    };
    if f.is_symmetric() {
        if let Some(weight_pmf) = mu.weight_pmf() {
            let value = weight_pmf
                .iter()
                .enumerate()
                .map(|(t, p)| p * apply(symmetric_bs(f, t as u64)))
                .sum();
            return Ok(BsAverage {
                value,
                stderr: None,
            });
        }
    }
    if mu.support_size_estimate() <= (1 << GENERIC_CAP) as f64 {
        let support = mu.support_enumerate(1 << GENERIC_CAP)?;
        let mut value = 0.0;
        for (x, p) in &support {
            value += p * apply(block_sensitivity(f, x)?);
        }
        return Ok(BsAverage {
            value,
            stderr: None,
        });
    }
    // Monte Carlo with a standard error.
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..mc_trials {
        let x = mu.sample(rng);
        let v = apply(block_sensitivity(f, &x)?);
        sum += v;
        sum_sq += v * v;
    }
    let mean = sum / mc_trials as f64;
    let var = (sum_sq / mc_trials as f64 - mean * mean).max(0.0);
    Ok(BsAverage {
        value: mean,
        stderr: Some((var / mc_trials as f64).sqrt()),
    })
}
