use super::QsimError;
use crate::oracle::{CountingOracle, QueryUnit};
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::io::Write;

/// Hard ceiling on simulated qubits (2^24 amplitudes, 256 MiB).
pub const DEFAULT_QUBIT_CAP: usize = 24;

/// A contiguous range of qubits: [offset, offset + width).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Register {
    pub offset: usize,
    pub width: usize,
}

impl Register {
    pub fn new(offset: usize, width: usize) -> Self {
        Register { offset, width }
    }

    #[inline]
    pub fn extract(&self, basis: usize) -> u64 {
        ((basis >> self.offset) as u64) & ((1u64 << self.width) - 1)
    }

    pub fn size(&self) -> usize {
        1usize << self.width
    }
}

/// Dense state vector over `m` qubits, kept normalised to 1e-9 after every
/// gate and after post-measurement renormalisation.
#[derive(Debug, Clone)]
pub struct QuantumState {
    amps: Vec<Complex64>,
    m: usize,
}

impl QuantumState {
    /// The all-zero computational basis state |0^m>.
    pub fn new(m: usize) -> Result<Self, QsimError> {
        Self::with_cap(m, DEFAULT_QUBIT_CAP)
    }

    pub fn with_cap(m: usize, cap: usize) -> Result<Self, QsimError> {
        if m > cap {
            return Err(QsimError::QubitCapExceeded { requested: m, cap });
        }
        let mut amps = vec![Complex64::ZERO; 1 << m];
        amps[0] = Complex64::ONE;
        Ok(QuantumState { amps, m })
    }

    pub fn qubits(&self) -> usize {
        self.m
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Overwrites the state with explicit amplitudes, which must already
    /// be normalised.
    pub fn load_amplitudes(&mut self, amps: &[Complex64]) {
        assert_eq!(amps.len(), self.amps.len());
        self.amps.copy_from_slice(amps);
        self.debug_check_norm();
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_register(&self, reg: Register) -> Result<(), QsimError> {
        if reg.width == 0 || reg.offset + reg.width > self.m {
            return Err(QsimError::RegisterOutOfRange {
                offset: reg.offset,
                width: reg.width,
                m: self.m,
            });
        }
        Ok(())
    }

    #[inline]
    fn debug_check_norm(&self) {
        debug_assert!(
            (self.norm_sqr() - 1.0).abs() < 1e-9,
            "norm drifted to {}",
            self.norm_sqr()
        );
    }

    /// Hadamard on every qubit of `reg`.
    pub fn hadamard(&mut self, reg: Register) -> Result<(), QsimError> {
        self.check_register(reg)?;
        for q in reg.offset..reg.offset + reg.width {
            self.hadamard_qubit(q);
        }
        self.debug_check_norm();
        Ok(())
    }

    fn hadamard_qubit(&mut self, q: usize) {
        let mask = 1usize << q;
        for b in 0..self.amps.len() {
            if b & mask == 0 {
                let a0 = self.amps[b];
                let a1 = self.amps[b | mask];
                self.amps[b] = (a0 + a1) * FRAC_1_SQRT_2;
                self.amps[b | mask] = (a0 - a1) * FRAC_1_SQRT_2;
            }
        }
    }

    /// Pauli X (bit flip) on a single qubit.
    pub fn pauli_x(&mut self, q: usize) -> Result<(), QsimError> {
        self.check_register(Register::new(q, 1))?;
        let mask = 1usize << q;
        for b in 0..self.amps.len() {
            if b & mask == 0 {
                self.amps.swap(b, b | mask);
            }
        }
        self.debug_check_norm();
        Ok(())
    }

    /// The query unitary |i>|b> -> |i>|b ^ x_i>, in the oracle's unit:
    /// a 1-bit target for bit oracles, an n-bit target for block oracles.
    /// Charges one quantum query.
    pub fn apply_xor_query(
        &mut self,
        oracle: &mut CountingOracle,
        index: Register,
        target: Register,
    ) -> Result<(), QsimError> {
        self.check_register(index)?;
        self.check_register(target)?;
        let (domain, want_width) = match oracle.unit() {
            QueryUnit::Bit => (oracle.arity(), 1usize),
            QueryUnit::Block => (
                oracle.block_count().expect("block oracle carries a layout"),
                oracle.block_width().unwrap(),
            ),
        };
        if target.width != want_width || index.size() != domain {
            return Err(QsimError::WidthMismatch {
                width: index.width,
                domain,
            });
        }
        // Precompute the per-index XOR pattern shifted into target position.
        let patterns: Vec<usize> = (0..domain)
            .map(|i| {
                let v = match oracle.unit() {
                    QueryUnit::Bit => oracle.sim_bit(i) as u64,
                    QueryUnit::Block => oracle.sim_block(i),
                };
                (v as usize) << target.offset
            })
            .collect();
        for b in 0..self.amps.len() {
            let i = index.extract(b) as usize;
            let partner = b ^ patterns[i];
            if partner > b {
                self.amps.swap(b, partner);
            }
        }
        oracle.note_quantum_queries(1);
        self.debug_check_norm();
        Ok(())
    }

    /// Phase form of a bit query: |i> -> (-1)^(x_i) |i>. Equivalent to the
    /// XOR query with the target prepared in |-> and charged the same way.
    pub fn apply_phase_query(
        &mut self,
        oracle: &mut CountingOracle,
        index: Register,
    ) -> Result<(), QsimError> {
        self.check_register(index)?;
        if index.size() != oracle.arity() {
            return Err(QsimError::WidthMismatch {
                width: index.width,
                domain: oracle.arity(),
            });
        }
        let flips: Vec<bool> = (0..oracle.arity()).map(|i| oracle.sim_bit(i) == 1).collect();
        for b in 0..self.amps.len() {
            if flips[index.extract(b) as usize] {
                self.amps[b] = -self.amps[b];
            }
        }
        oracle.note_quantum_queries(1);
        self.debug_check_norm();
        Ok(())
    }

    /// Inversion about the mean on `reg`, applied independently for every
    /// assignment of the remaining qubits.
    pub fn diffusion(&mut self, reg: Register) -> Result<(), QsimError> {
        self.check_register(reg)?;
        self.for_each_slice(reg, |slice| {
            let mean = slice.iter().sum::<Complex64>() / slice.len() as f64;
            for a in slice.iter_mut() {
                *a = mean * 2.0 - *a;
            }
        });
        self.debug_check_norm();
        Ok(())
    }

    /// One Grover iterate (phase oracle then diffusion) applied `reps`
    /// times to the subspace where qubit `ctrl` is 1. Each iterate charges
    /// one quantum query.
    pub fn controlled_grover(
        &mut self,
        oracle: &mut CountingOracle,
        ctrl: usize,
        index: Register,
        reps: u64,
    ) -> Result<(), QsimError> {
        self.check_register(index)?;
        self.check_register(Register::new(ctrl, 1))?;
        assert!(
            ctrl < index.offset || ctrl >= index.offset + index.width,
            "control qubit must lie outside the index register"
        );
        if index.size() != oracle.arity() {
            return Err(QsimError::WidthMismatch {
                width: index.width,
                domain: oracle.arity(),
            });
        }
        let flips: Vec<bool> = (0..oracle.arity()).map(|i| oracle.sim_bit(i) == 1).collect();
        let ctrl_mask = 1usize << ctrl;
        for _ in 0..reps {
            for b in 0..self.amps.len() {
                if b & ctrl_mask != 0 && flips[index.extract(b) as usize] {
                    self.amps[b] = -self.amps[b];
                }
            }
            oracle.note_quantum_queries(1);
            self.for_each_slice_where(index, ctrl_mask, |slice| {
                let mean = slice.iter().sum::<Complex64>() / slice.len() as f64;
                for a in slice.iter_mut() {
                    *a = mean * 2.0 - *a;
                }
            });
        }
        self.debug_check_norm();
        Ok(())
    }

    /// Inverse quantum Fourier transform on `reg`, applied as the full
    /// T-point transform along the register axis.
    pub fn inverse_qft(&mut self, reg: Register) -> Result<(), QsimError> {
        self.check_register(reg)?;
        let t = reg.size();
        let scale = 1.0 / (t as f64).sqrt();
        // Roots of unity e^(-2*pi*i*k/T).
        let roots: Vec<Complex64> = (0..t)
            .map(|k| Complex64::from_polar(1.0, -2.0 * PI * k as f64 / t as f64))
            .collect();
        let mut scratch = vec![Complex64::ZERO; t];
        self.for_each_slice(reg, |slice| {
            for (y, out) in scratch.iter_mut().enumerate() {
                let mut acc = Complex64::ZERO;
                for (x, a) in slice.iter().enumerate() {
                    acc += *a * roots[(x * y) % t];
                }
                *out = acc * scale;
            }
            slice.copy_from_slice(&scratch);
        });
        self.debug_check_norm();
        Ok(())
    }

    /// Born-rule probabilities of each outcome of `reg`.
    pub fn register_distribution(&self, reg: Register) -> Result<Vec<f64>, QsimError> {
        self.check_register(reg)?;
        let mut probs = vec![0.0f64; reg.size()];
        for (b, a) in self.amps.iter().enumerate() {
            probs[reg.extract(b) as usize] += a.norm_sqr();
        }
        Ok(probs)
    }

    /// Projective measurement of `reg`: draws an outcome with Born
    /// probabilities, collapses, and renormalises.
    pub fn measure<R: Rng>(&mut self, reg: Register, rng: &mut R) -> Result<u64, QsimError> {
        let probs = self.register_distribution(reg)?;
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut outcome = None;
        for (v, p) in probs.iter().enumerate() {
            acc += p;
            if u < acc {
                outcome = Some(v as u64);
                break;
            }
        }
        // Guard against accumulated rounding at u ~ 1: take the last
        // outcome of positive probability.
        let outcome = match outcome {
            Some(v) => v,
            None => probs
                .iter()
                .rposition(|&p| p > 0.0)
                .map(|v| v as u64)
                .ok_or(QsimError::ImpossibleOutcome)?,
        };
        self.collapse(reg, outcome, probs[outcome as usize])?;
        Ok(outcome)
    }

    /// Collapses `reg` to a fixed outcome of known probability.
    pub fn collapse(&mut self, reg: Register, outcome: u64, prob: f64) -> Result<(), QsimError> {
        if prob <= 0.0 {
            return Err(QsimError::ImpossibleOutcome);
        }
        let scale = 1.0 / prob.sqrt();
        for (b, a) in self.amps.iter_mut().enumerate() {
            if reg.extract(b) == outcome {
                *a *= scale;
            } else {
                *a = Complex64::ZERO;
            }
        }
        self.debug_check_norm();
        Ok(())
    }

    /// Amplitude dump for debugging tiny states: `basis,re,im` rows.
    pub fn dump_amplitudes_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "basis,re,im")?;
        for (b, a) in self.amps.iter().enumerate() {
            writeln!(w, "{b},{},{}", a.re, a.im)?;
        }
        Ok(())
    }

    /// Applies `f` to each contiguous-view slice of the register axis,
    /// for every assignment of the remaining qubits.
    fn for_each_slice<F: FnMut(&mut [Complex64])>(&mut self, reg: Register, mut f: F) {
        let t = reg.size();
        let low = 1usize << reg.offset;
        let high = self.amps.len() >> (reg.offset + reg.width);
        let mut buf = vec![Complex64::ZERO; t];
        for h in 0..high {
            for l in 0..low {
                if low == 1 {
                    let base = h << (reg.offset + reg.width);
                    f(&mut self.amps[base..base + t]);
                } else {
                    for (v, b) in buf.iter_mut().enumerate() {
                        *b = self.amps[(h << (reg.offset + reg.width)) | (v << reg.offset) | l];
                    }
                    f(&mut buf);
                    for (v, b) in buf.iter().enumerate() {
                        self.amps[(h << (reg.offset + reg.width)) | (v << reg.offset) | l] = *b;
                    }
                }
            }
        }
    }

    /// Same as `for_each_slice`, restricted to slices whose fixed qubits
    /// satisfy `base & keep_mask != 0`. `keep_mask` must not overlap `reg`.
    fn for_each_slice_where<F: FnMut(&mut [Complex64])>(
        &mut self,
        reg: Register,
        keep_mask: usize,
        mut f: F,
    ) {
        debug_assert_eq!(keep_mask & (((1usize << reg.width) - 1) << reg.offset), 0);
        let t = reg.size();
        let low = 1usize << reg.offset;
        let high = self.amps.len() >> (reg.offset + reg.width);
        let mut buf = vec![Complex64::ZERO; t];
        for h in 0..high {
            for l in 0..low {
                let base = (h << (reg.offset + reg.width)) | l;
                if base & keep_mask == 0 {
                    continue;
                }
                for (v, b) in buf.iter_mut().enumerate() {
                    *b = self.amps[base | (v << reg.offset)];
                }
                f(&mut buf);
                for (v, b) in buf.iter().enumerate() {
                    self.amps[base | (v << reg.offset)] = *b;
                }
            }
        }
    }
}

/// One-query parity of the pair (x_i0, x_i1): a two-point superposition is
/// queried in the phase form and read out in the Hadamard basis, so the
/// measured bit equals x_i0 ^ x_i1 with certainty.
pub fn pair_parity_query(oracle: &mut CountingOracle, i0: usize, i1: usize) -> u8 {
    let s0 = 1.0 - 2.0 * oracle.sim_bit(i0) as f64;
    let s1 = 1.0 - 2.0 * oracle.sim_bit(i1) as f64;
    oracle.note_quantum_queries(1);
    // Amplitudes after H, phase query, H: |<1|psi>|^2 = (s0-s1)^2/4.
    let p1 = (s0 - s1) * (s0 - s1) / 4.0;
    debug_assert!(p1 < 1e-12 || (p1 - 1.0).abs() < 1e-12);
    u8::from(p1 > 0.5)
}
