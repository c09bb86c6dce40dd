//! Input distributions over {0,1}^N with exact pmf evaluation and seeded
//! sampling.
//!
//! The power-law family `or_alpha` weighs an input only through its
//! Hamming weight: mu(X) = c / [C(N,|X|) (|X|+1)^alpha (N+1)^(1-alpha)].
//! Its normaliser is always computed exactly by summation over weights.
//! The hidden-period distributions are `simon_d1` (uniform over all block
//! tables) and `simon_d2` (uniform over tables with exactly one nonzero
//! period, enforced by rejection).

use crate::numeric::LnFactorials;
use crate::oracle::{simon_unique_period, BitInput};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DistError {
    #[error("alpha must lie strictly inside (0, 1/2), got {0}")]
    AlphaOutOfRange(f64),
    #[error("arity mismatch: distribution over {expected} bits, input has {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("support enumeration refused: about {estimate} points exceed cap {cap}")]
    SupportTooLarge { estimate: f64, cap: usize },
    #[error("exact pmf for the unique-period distribution is only available for n <= 3")]
    SimonD2PmfUnavailable,
    #[error("bad explicit table: {0}")]
    BadTable(String),
}

/// A sampleable input distribution with exact pmf where enumerable.
#[derive(Debug, Clone)]
pub enum InputDistribution {
    Uniform {
        n_bits: usize,
    },
    OrAlpha {
        n_bits: usize,
        alpha: f64,
        /// Cumulative weight distribution, `cdf[t] = Pr[|X| <= t]`.
        weight_cdf: Vec<f64>,
        /// ln of the sum S = sum_t (t+1)^(-alpha).
        ln_weight_sum: f64,
    },
    SimonD1 {
        n: usize,
    },
    SimonD2 {
        n: usize,
    },
    Table {
        arity: usize,
        entries: Vec<(BitInput, f64)>,
    },
}

impl InputDistribution {
    pub fn uniform(n_bits: usize) -> Self {
        assert!(n_bits >= 1);
        InputDistribution::Uniform { n_bits }
    }

    pub fn or_alpha(n_bits: usize, alpha: f64) -> Result<Self, DistError> {
        if !(alpha > 0.0 && alpha < 0.5) {
            return Err(DistError::AlphaOutOfRange(alpha));
        }
        let mut weights = Vec::with_capacity(n_bits + 1);
        let mut sum = 0.0f64;
        for t in 0..=n_bits {
            let w = ((t + 1) as f64).powf(-alpha);
            sum += w;
            weights.push(sum);
        }
        let ln_weight_sum = sum.ln();
        for w in &mut weights {
            *w /= sum;
        }
        Ok(InputDistribution::OrAlpha {
            n_bits,
            alpha,
            weight_cdf: weights,
            ln_weight_sum,
        })
    }

    pub fn simon_d1(n: usize) -> Self {
        assert!((1..32).contains(&n));
        InputDistribution::SimonD1 { n }
    }

    pub fn simon_d2(n: usize) -> Self {
        assert!((1..32).contains(&n));
        InputDistribution::SimonD2 { n }
    }

    pub fn table(entries: Vec<(BitInput, f64)>) -> Result<Self, DistError> {
        if entries.is_empty() {
            return Err(DistError::BadTable("no entries".into()));
        }
        let arity = entries[0].0.len();
        let mut total = 0.0;
        for (x, p) in &entries {
            if x.len() != arity {
                return Err(DistError::BadTable("mixed arities".into()));
            }
            if !p.is_finite() || *p < 0.0 {
                return Err(DistError::BadTable(format!("bad probability {p}")));
            }
            total += p;
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(DistError::BadTable(format!("pmf sums to {total}, not 1")));
        }
        Ok(InputDistribution::Table { arity, entries })
    }

    pub fn arity(&self) -> usize {
        match self {
            InputDistribution::Uniform { n_bits } => *n_bits,
            InputDistribution::OrAlpha { n_bits, .. } => *n_bits,
            InputDistribution::SimonD1 { n } | InputDistribution::SimonD2 { n } => n << n,
            InputDistribution::Table { arity, .. } => *arity,
        }
    }

    /// Block width carried by sampled inputs, if any.
    pub fn block_width(&self) -> Option<usize> {
        match self {
            InputDistribution::SimonD1 { n } | InputDistribution::SimonD2 { n } => Some(*n),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            InputDistribution::Uniform { n_bits } => format!("uniform[{n_bits}]"),
            InputDistribution::OrAlpha { n_bits, alpha, .. } => {
                format!("or-alpha[{n_bits},a={alpha}]")
            }
            InputDistribution::SimonD1 { n } => format!("simon-d1[n={n}]"),
            InputDistribution::SimonD2 { n } => format!("simon-d2[n={n}]"),
            InputDistribution::Table { arity, entries } => {
                format!("table[{arity},{}pts]", entries.len())
            }
        }
    }

    /// Exact probability of `x`.
    pub fn pmf(&self, x: &BitInput) -> Result<f64, DistError> {
        if x.len() != self.arity() {
            return Err(DistError::ArityMismatch {
                expected: self.arity(),
                got: x.len(),
            });
        }
        match self {
            InputDistribution::Uniform { .. } | InputDistribution::SimonD1 { .. } => {
                Ok(0.5f64.powi(self.arity() as i32))
            }
            InputDistribution::OrAlpha {
                n_bits,
                alpha,
                ln_weight_sum,
                ..
            } => {
                let facts = LnFactorials::up_to(*n_bits);
                let t = x.weight();
                let ln_q = -alpha * ((t + 1) as f64).ln() - ln_weight_sum;
                Ok((ln_q - facts.ln_binomial(*n_bits, t as usize)).exp())
            }
            InputDistribution::SimonD2 { n } => {
                if *n > 3 {
                    return Err(DistError::SimonD2PmfUnavailable);
                }
                let blocks: Vec<u64> = (0..1usize << n).map(|i| block_of(x, *n, i)).collect();
                if simon_unique_period(&blocks).is_some() {
                    Ok(1.0 / simon_d2_support_size(*n) as f64)
                } else {
                    Ok(0.0)
                }
            }
            InputDistribution::Table { entries, .. } => Ok(entries
                .iter()
                .find(|(e, _)| e == x)
                .map(|(_, p)| *p)
                .unwrap_or(0.0)),
        }
    }

    /// Draws one input. Exchangeable kinds sample a weight first and then a
    /// uniformly random placement of that many ones.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> BitInput {
        match self {
            InputDistribution::Uniform { n_bits } => random_bits(*n_bits, rng),
            InputDistribution::OrAlpha {
                n_bits, weight_cdf, ..
            } => {
                let u: f64 = rng.random();
                let t = weight_cdf.partition_point(|&c| c < u);
                random_input_with_weight(*n_bits, t.min(*n_bits) as u64, rng)
            }
            InputDistribution::SimonD1 { n } => random_bits(n << n, rng)
                .with_block_width(*n)
                .expect("layout is consistent by construction"),
            InputDistribution::SimonD2 { n } => sample_simon_d2_with_period(*n, rng).0,
            InputDistribution::Table { entries, .. } => {
                let u: f64 = rng.random();
                let mut acc = 0.0;
                for (x, p) in entries {
                    acc += p;
                    if u < acc {
                        return x.clone();
                    }
                }
                entries.last().unwrap().0.clone()
            }
        }
    }

    /// All inputs of positive probability with their pmf, at most `cap`.
    pub fn support_enumerate(&self, cap: usize) -> Result<Vec<(BitInput, f64)>, DistError> {
        self.support_enumerate_filtered(cap, |_| true)
    }

    pub fn support_enumerate_filtered<F>(
        &self,
        cap: usize,
        mut keep: F,
    ) -> Result<Vec<(BitInput, f64)>, DistError>
    where
        F: FnMut(&BitInput) -> bool,
    {
        let estimate = self.support_size_estimate();
        if estimate > cap as f64 {
            return Err(DistError::SupportTooLarge { estimate, cap });
        }
        match self {
            InputDistribution::Uniform { .. }
            | InputDistribution::OrAlpha { .. }
            | InputDistribution::SimonD1 { .. } => {
                let n = self.arity();
                let mut out = Vec::new();
                for v in 0u64..(1u64 << n) {
                    let mut x = BitInput::from_u64(n, v);
                    if let Some(w) = self.block_width() {
                        x = x.with_block_width(w).unwrap();
                    }
                    if keep(&x) {
                        let p = self.pmf(&x)?;
                        out.push((x, p));
                    }
                }
                Ok(out)
            }
            InputDistribution::SimonD2 { n } => {
                let support = simon_d2_support(*n);
                let p = 1.0 / support.len() as f64;
                Ok(support
                    .into_iter()
                    .filter(|x| keep(x))
                    .map(|x| (x, p))
                    .collect())
            }
            InputDistribution::Table { entries, .. } => Ok(entries
                .iter()
                .filter(|(x, p)| *p > 0.0 && keep(x))
                .cloned()
                .collect()),
        }
    }

    pub fn support_size_estimate(&self) -> f64 {
        match self {
            InputDistribution::Uniform { .. }
            | InputDistribution::OrAlpha { .. }
            | InputDistribution::SimonD1 { .. } => 2f64.powi(self.arity() as i32),
            InputDistribution::SimonD2 { n } => {
                // Loose over-count: every k-periodic table for some fixed k.
                ((1u64 << n) - 1) as f64 * 2f64.powi((*n << (*n - 1)) as i32)
            }
            InputDistribution::Table { entries, .. } => entries.len() as f64,
        }
    }

    /// Probability of each Hamming weight, for the exchangeable kinds.
    pub fn weight_pmf(&self) -> Option<Vec<f64>> {
        match self {
            InputDistribution::Uniform { n_bits } => {
                let scale = 0.5f64.powi(*n_bits as i32);
                if *n_bits <= 56 {
                    // Exact binomials keep small-arity expectations exact.
                    let row = crate::numeric::binomial_row(*n_bits);
                    return Some(row.iter().map(|c| c * scale).collect());
                }
                let facts = LnFactorials::up_to(*n_bits);
                let ln_half = 0.5f64.ln();
                Some(
                    (0..=*n_bits)
                        .map(|t| (facts.ln_binomial(*n_bits, t) + *n_bits as f64 * ln_half).exp())
                        .collect(),
                )
            }
            InputDistribution::OrAlpha { weight_cdf, .. } => {
                let mut prev = 0.0;
                Some(
                    weight_cdf
                        .iter()
                        .map(|&c| {
                            let p = c - prev;
                            prev = c;
                            p
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// Probability of one specific input of each weight, for exchangeable
    /// kinds: pmf(X) as a function of |X|. Exact for small arities.
    pub fn per_input_pmf_by_weight(&self) -> Option<Vec<f64>> {
        match self {
            InputDistribution::Uniform { n_bits } => {
                Some(vec![0.5f64.powi(*n_bits as i32); n_bits + 1])
            }
            InputDistribution::OrAlpha { n_bits, .. } => {
                let weight_pmf = self.weight_pmf()?;
                let binom = crate::numeric::binomial_row(*n_bits);
                Some(
                    weight_pmf
                        .iter()
                        .zip(&binom)
                        .map(|(p, c)| p / c)
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// The exact power-law normalising constant c (close to 1 - alpha).
    pub fn or_alpha_normalizer(&self) -> Option<f64> {
        match self {
            InputDistribution::OrAlpha {
                n_bits,
                alpha,
                ln_weight_sum,
                ..
            } => Some(((1.0 - alpha) * ((*n_bits + 1) as f64).ln() - ln_weight_sum).exp()),
            _ => None,
        }
    }
}

fn block_of(x: &BitInput, n: usize, i: usize) -> u64 {
    let mut v = 0u64;
    for j in 0..n {
        v |= (x.bit(i * n + j) as u64) << j;
    }
    v
}

pub fn random_bits<R: Rng>(n: usize, rng: &mut R) -> BitInput {
    let mut x = BitInput::zeros(n);
    for i in 0..n {
        if rng.random::<bool>() {
            x.set_bit(i, 1);
        }
    }
    x
}

/// Uniformly random input of exactly `t` ones among `n` positions.
pub fn random_input_with_weight<R: Rng>(n: usize, t: u64, rng: &mut R) -> BitInput {
    assert!(t <= n as u64);
    // Sample the sparser side by repeated distinct draws; the bit array
    // itself serves as the membership test.
    let flip_side = t > (n as u64) / 2;
    let picks = if flip_side { n as u64 - t } else { t };
    let mut x = BitInput::zeros(n);
    let mut placed = 0;
    while placed < picks {
        let i = rng.random_range(0..n);
        if x.bit(i) == 0 {
            x.set_bit(i, 1);
            placed += 1;
        }
    }
    if flip_side {
        let mut flipped = BitInput::zeros(n);
        for i in 0..n {
            flipped.set_bit(i, 1 - x.bit(i));
        }
        return flipped;
    }
    x
}

/// Rejection sampler for the unique-period distribution. Returns the input,
/// its period, and the number of attempts the rejection loop used.
pub fn sample_simon_d2_with_period<R: Rng>(n: usize, rng: &mut R) -> (BitInput, u64, u32) {
    let size = 1usize << n;
    let mut attempts = 0u32;
    loop {
        attempts += 1;
        let k = rng.random_range(1..size as u64);
        let mut blocks = vec![0u64; size];
        for i in 0..size {
            let partner = (i as u64 ^ k) as usize;
            if i <= partner {
                let v = rng.random_range(0..size as u64);
                blocks[i] = v;
                blocks[partner] = v;
            }
        }
        if simon_unique_period(&blocks) == Some(k) {
            return (BitInput::from_blocks(n, &blocks), k, attempts);
        }
    }
}

/// Exact number of block tables with exactly one nonzero period (n <= 3).
pub fn simon_d2_support_size(n: usize) -> u64 {
    assert!(n <= 3, "support size enumeration capped at n = 3");
    let size = 1usize << n;
    let orbits = size / 2;
    let mut per_k = 0u64;
    // By symmetry every k admits the same count; fix k = 1 and enumerate
    // the value assignment of each orbit.
    let k = 1u64;
    let orbit_reps: Vec<usize> = (0..size).filter(|&i| i <= (i ^ k as usize)).collect();
    debug_assert_eq!(orbit_reps.len(), orbits);
    let mut assignment = vec![0u64; orbits];
    loop {
        let mut blocks = vec![0u64; size];
        for (o, &rep) in orbit_reps.iter().enumerate() {
            blocks[rep] = assignment[o];
            blocks[rep ^ k as usize] = assignment[o];
        }
        if simon_unique_period(&blocks) == Some(k) {
            per_k += 1;
        }
        // Odometer increment over the orbit values.
        let mut pos = 0;
        loop {
            if pos == orbits {
                return per_k * ((size - 1) as u64);
            }
            assignment[pos] += 1;
            if assignment[pos] < size as u64 {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}

/// Full unique-period support (n <= 3), each input exactly once.
pub fn simon_d2_support(n: usize) -> Vec<BitInput> {
    assert!(n <= 3);
    let size = 1usize << n;
    let mut out = Vec::new();
    for k in 1..size as u64 {
        let orbit_reps: Vec<usize> = (0..size).filter(|&i| i <= (i ^ k as usize)).collect();
        let orbits = orbit_reps.len();
        let mut assignment = vec![0u64; orbits];
        'outer: loop {
            let mut blocks = vec![0u64; size];
            for (o, &rep) in orbit_reps.iter().enumerate() {
                blocks[rep] = assignment[o];
                blocks[rep ^ k as usize] = assignment[o];
            }
            if simon_unique_period(&blocks) == Some(k) {
                out.push(BitInput::from_blocks(n, &blocks));
            }
            let mut pos = 0;
            loop {
                if pos == orbits {
                    break 'outer;
                }
                assignment[pos] += 1;
                if assignment[pos] < size as u64 {
                    break;
                }
                assignment[pos] = 0;
                pos += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::chi_square_critical;
    use crate::oracle::simon_value;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn rng(seed: u64) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(seed)
    }

    #[test]
    fn uniform_pmf_is_flat() {
        let d = InputDistribution::uniform(4);
        let x = BitInput::from_bits(&[1, 0, 1, 1]);
        assert!((d.pmf(&x).unwrap() - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn or_alpha_pmf_sums_to_one_by_weight_classes() {
        let d = InputDistribution::or_alpha(16, 0.4).unwrap();
        let facts = LnFactorials::up_to(16);
        let mut total = 0.0;
        for t in 0u64..=16 {
            let x = random_input_with_weight(16, t, &mut rng(7));
            let per_input = d.pmf(&x).unwrap();
            total += per_input * facts.ln_binomial(16, t as usize).exp();
        }
        assert!((total - 1.0).abs() < 1e-9, "total {total}");
    }

    #[test]
    fn or_alpha_rejects_bad_alpha() {
        assert!(matches!(
            InputDistribution::or_alpha(8, 0.7),
            Err(DistError::AlphaOutOfRange(_))
        ));
        assert!(InputDistribution::or_alpha(8, 0.5).is_err());
        assert!(InputDistribution::or_alpha(8, 0.0).is_err());
    }

    #[test]
    fn or_alpha_normalizer_close_to_one_minus_alpha() {
        let d = InputDistribution::or_alpha(1 << 10, 0.4).unwrap();
        let c = d.or_alpha_normalizer().unwrap();
        assert!(
            (c - 0.6).abs() / 0.6 < 0.10,
            "normalizer {c} strays more than 10% from 0.6"
        );
    }

    #[test]
    fn uniform_mean_weight() {
        let d = InputDistribution::uniform(8);
        let mut r = rng(11);
        let trials = 100_000;
        let total: u64 = (0..trials).map(|_| d.sample(&mut r).weight()).sum();
        let mean = total as f64 / trials as f64;
        assert!((mean - 4.0).abs() < 0.05, "mean weight {mean}");
    }

    #[test]
    fn simon_d2_samples_have_unique_period() {
        let d = InputDistribution::simon_d2(2);
        let mut r = rng(3);
        for _ in 0..500 {
            let x = d.sample(&mut r);
            assert_eq!(simon_value(&x).unwrap(), 1);
            let blocks: Vec<u64> = (0..4).map(|i| x.block(i)).collect();
            assert!(simon_unique_period(&blocks).is_some());
        }
    }

    #[test]
    fn simon_d2_rejection_accepts_at_least_half() {
        for n in [2usize, 3] {
            let mut r = rng(5);
            let mut attempts_total = 0u64;
            let trials = 2000u64;
            for _ in 0..trials {
                let (_, _, attempts) = sample_simon_d2_with_period(n, &mut r);
                attempts_total += attempts as u64;
            }
            let acceptance = trials as f64 / attempts_total as f64;
            assert!(acceptance >= 0.5, "n={n} acceptance rate {acceptance}");
        }
    }

    #[test]
    fn simon_d1_one_fraction_matches_exhaustive_count() {
        // Exhaustive ground truth at n=2: 40 of 256 tables are 1-inputs.
        let mut exact = 0u64;
        for v in 0u64..256 {
            let x = BitInput::from_u64(8, v).with_block_width(2).unwrap();
            exact += simon_value(&x).unwrap() as u64;
        }
        assert_eq!(exact, 40);

        let d = InputDistribution::simon_d1(2);
        let mut r = rng(13);
        let trials = 100_000;
        let ones: u64 = (0..trials)
            .map(|_| simon_value(&d.sample(&mut r)).unwrap() as u64)
            .sum();
        let frac = ones as f64 / trials as f64;
        let expected = 40.0 / 256.0;
        let sigma = (expected * (1.0 - expected) / trials as f64).sqrt();
        assert!(
            (frac - expected).abs() < 4.0 * sigma,
            "fraction {frac} vs {expected}"
        );
    }

    #[test]
    fn support_enumeration_sizes() {
        let d = InputDistribution::uniform(3);
        let support = d.support_enumerate(100).unwrap();
        assert_eq!(support.len(), 8);
        assert!(support.iter().all(|(_, p)| (*p - 0.125).abs() < 1e-12));

        // Unique-period support at n=2 matches direct enumeration.
        let d2 = InputDistribution::simon_d2(2);
        let support2 = d2.support_enumerate(1000).unwrap();
        let mut direct = 0;
        for v in 0u64..256 {
            let x = BitInput::from_u64(8, v).with_block_width(2).unwrap();
            let blocks: Vec<u64> = (0..4).map(|i| x.block(i)).collect();
            if simon_unique_period(&blocks).is_some() {
                direct += 1;
            }
        }
        assert_eq!(support2.len(), direct);
        assert_eq!(support2.len() as u64, simon_d2_support_size(2));

        let single = InputDistribution::table(vec![(BitInput::zeros(4), 1.0)]).unwrap();
        assert_eq!(single.support_enumerate(10).unwrap().len(), 1);
    }

    #[test]
    fn support_enumeration_refuses_past_cap() {
        let d = InputDistribution::uniform(20);
        match d.support_enumerate(1000) {
            Err(DistError::SupportTooLarge { estimate, cap }) => {
                assert_eq!(cap, 1000);
                assert!(estimate > 1e6);
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn table_must_sum_to_one() {
        let bad = InputDistribution::table(vec![(BitInput::zeros(4), 0.7)]);
        assert!(matches!(bad, Err(DistError::BadTable(_))));
    }

    #[test]
    fn sampler_matches_pmf_chi_square() {
        // Goodness of fit at significance 0.001 over all 256 cells.
        let trials = 1_000_000usize;
        for d in [
            InputDistribution::uniform(8),
            InputDistribution::or_alpha(8, 0.4).unwrap(),
        ] {
            let mut r = rng(17);
            let mut counts = vec![0u64; 256];
            for _ in 0..trials {
                let x = d.sample(&mut r);
                let mut v = 0usize;
                for i in 0..8 {
                    v |= (x.bit(i) as usize) << i;
                }
                counts[v] += 1;
            }
            let mut chi2 = 0.0;
            for v in 0u64..256 {
                let x = BitInput::from_u64(8, v);
                let expected = d.pmf(&x).unwrap() * trials as f64;
                let diff = counts[v as usize] as f64 - expected;
                chi2 += diff * diff / expected;
            }
            let critical = chi_square_critical(255, 0.001);
            assert!(
                chi2 < critical,
                "{} chi2 {chi2} exceeds critical {critical}",
                d.name()
            );
        }
    }

    proptest! {
        // Exchangeable kinds assign equal probability to permuted inputs.
        #[test]
        fn pmf_is_exchangeable(
            bits in proptest::collection::vec(0u8..2, 2..14),
            seed in any::<u64>()
        ) {
            let n = bits.len();
            let mut r = rng(seed);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut r);
            let permuted: Vec<u8> = perm.iter().map(|&i| bits[i]).collect();
            let x = BitInput::from_bits(&bits);
            let y = BitInput::from_bits(&permuted);
            for d in [
                InputDistribution::uniform(n),
                InputDistribution::or_alpha(n, 0.4).unwrap(),
            ] {
                let px = d.pmf(&x).unwrap();
                let py = d.pmf(&y).unwrap();
                prop_assert!((px - py).abs() <= 1e-12 * px.max(py));
            }
        }

        #[test]
        fn weight_sampler_places_exact_weight(n in 1usize..64, seed in any::<u64>()) {
            let mut r = rng(seed);
            let t = r.random_range(0..=n as u64);
            let x = random_input_with_weight(n, t, &mut r);
            prop_assert_eq!(x.weight(), t);
            prop_assert_eq!(x.len(), n);
        }
    }
}
