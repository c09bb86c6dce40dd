//! Oracle inputs, the Boolean functions under study, and query accounting.
//!
//! `BitInput` is an N-bit input, optionally carved into 2^n blocks of n
//! bits each (the layout used by the hidden-period function). Algorithms
//! never read an input directly; they go through a [`CountingOracle`]
//! which charges one unit per query. The state-vector simulator has
//! separate uncounted accessors (`sim_*`) for realising query unitaries.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("arity mismatch: function expects {expected} bits, input has {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("query index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("input has no block layout; block access requires one")]
    MissingBlockLayout,
    #[error("bad block layout: {n}*2^{n} != {len}")]
    BadBlockLayout { n: usize, len: usize },
    #[error("bad input encoding: {0}")]
    BadEncoding(String),
}

/// An N-bit oracle input, stored as packed 64-bit words (bit `i` lives at
/// word `i/64`, position `i%64`). `block_width = n` marks the layout
/// N = n*2^n in which block `i` is the n-bit value at bits `[i*n, (i+1)*n)`,
/// least-significant bit first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitInput {
    words: Vec<u64>,
    len: usize,
    block_width: Option<usize>,
}

impl BitInput {
    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "input length must be at least 1");
        BitInput {
            words: vec![0; len.div_ceil(64)],
            len,
            block_width: None,
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut x = BitInput::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                x.set_bit(i, 1);
            }
        }
        x
    }

    /// Builds a block-layout input from 2^n block values of n bits each.
    pub fn from_blocks(n: usize, blocks: &[u64]) -> Self {
        assert!(n >= 1 && blocks.len() == 1 << n, "need 2^n blocks");
        let mut x = BitInput::zeros(n << n);
        for (i, &v) in blocks.iter().enumerate() {
            debug_assert!(v < (1u64 << n));
            for j in 0..n {
                if (v >> j) & 1 == 1 {
                    x.set_bit(i * n + j, 1);
                }
            }
        }
        x.block_width = Some(n);
        x
    }

    /// The low `len` bits of `value`, useful for exhaustive enumeration.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!((1..=64).contains(&len));
        let mut x = BitInput::zeros(len);
        x.words[0] = if len == 64 {
            value
        } else {
            value & ((1u64 << len) - 1)
        };
        x
    }

    /// Parses the hex serialisation: bytes in order, bit `i` at byte `i/8`
    /// position `i%8`. Pad bits beyond `len` must be zero.
    pub fn from_hex(len: usize, hex: &str) -> Result<Self, OracleError> {
        if len == 0 {
            return Err(OracleError::BadEncoding("length must be positive".into()));
        }
        let bytes_needed = len.div_ceil(8);
        if hex.len() != bytes_needed * 2 {
            return Err(OracleError::BadEncoding(format!(
                "expected {} hex digits for {} bits, got {}",
                bytes_needed * 2,
                len,
                hex.len()
            )));
        }
        let mut x = BitInput::zeros(len);
        for byte_idx in 0..bytes_needed {
            let pair = &hex[byte_idx * 2..byte_idx * 2 + 2];
            let byte = u8::from_str_radix(pair, 16)
                .map_err(|_| OracleError::BadEncoding(format!("bad hex digits `{pair}`")))?;
            for bit in 0..8 {
                let i = byte_idx * 8 + bit;
                let v = (byte >> bit) & 1;
                if i >= len {
                    if v != 0 {
                        return Err(OracleError::BadEncoding(
                            "nonzero padding bits beyond declared length".into(),
                        ));
                    }
                } else if v == 1 {
                    x.set_bit(i, 1);
                }
            }
        }
        Ok(x)
    }

    pub fn to_hex(&self) -> String {
        let bytes = self.len.div_ceil(8);
        let mut s = String::with_capacity(bytes * 2);
        for byte_idx in 0..bytes {
            let mut byte = 0u8;
            for bit in 0..8 {
                let i = byte_idx * 8 + bit;
                if i < self.len && self.bit(i) == 1 {
                    byte |= 1 << bit;
                }
            }
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }

    /// Declares the block layout, checking N = n*2^n.
    pub fn with_block_width(mut self, n: usize) -> Result<Self, OracleError> {
        if n == 0 || n >= 64 || (n << n) != self.len {
            return Err(OracleError::BadBlockLayout { n, len: self.len });
        }
        self.block_width = Some(n);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // length is always >= 1
    }

    pub fn block_width(&self) -> Option<usize> {
        self.block_width
    }

    pub fn block_count(&self) -> Option<usize> {
        self.block_width.map(|n| 1usize << n)
    }

    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        ((self.words[i / 64] >> (i % 64)) & 1) as u8
    }

    pub fn set_bit(&mut self, i: usize, v: u8) {
        assert!(i < self.len);
        if v != 0 {
            self.words[i / 64] |= 1u64 << (i % 64);
        } else {
            self.words[i / 64] &= !(1u64 << (i % 64));
        }
    }

    /// Number of 1-bits.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Value of block `i` under the declared layout.
    #[inline]
    pub fn block(&self, i: usize) -> u64 {
        let n = self.block_width.expect("block access without layout");
        debug_assert!(i < (1 << n));
        let mut v = 0u64;
        for j in 0..n {
            v |= (self.bit(i * n + j) as u64) << j;
        }
        v
    }

    /// Bitwise XOR with `mask` (same length), preserving the layout.
    pub fn xor(&self, mask: &BitInput) -> BitInput {
        assert_eq!(self.len, mask.len);
        let words = self
            .words
            .iter()
            .zip(&mask.words)
            .map(|(a, b)| a ^ b)
            .collect();
        BitInput {
            words,
            len: self.len,
            block_width: self.block_width,
        }
    }

    /// Input with the bits at `positions` flipped.
    pub fn flip_set(&self, positions: &[usize]) -> BitInput {
        let mut out = self.clone();
        for &p in positions {
            out.set_bit(p, 1 - self.bit(p));
        }
        out
    }

    /// A stable 64-bit digest for run records of large inputs.
    pub fn digest(&self) -> u64 {
        let mut h = 0x9e37_79b9_7f4a_7c15u64 ^ (self.len as u64);
        for &w in &self.words {
            h ^= w;
            h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
            h ^= h >> 31;
        }
        h
    }
}

/// The function families under study. `Threshold` keeps its cut-off as an
/// exact fraction; `Table` is the explicit truth-table escape hatch for
/// small arities.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionKind {
    Or,
    Maj,
    Parity,
    Threshold { num: u64, den: u64 },
    Simon { n: usize },
    Table { truth: Vec<u64> },
}

/// An evaluatable total Boolean function of fixed arity.
#[derive(Debug, Clone, PartialEq)]
pub struct BooleanFunction {
    kind: FunctionKind,
    arity: usize,
}

impl BooleanFunction {
    pub fn or(arity: usize) -> Self {
        BooleanFunction {
            kind: FunctionKind::Or,
            arity,
        }
    }

    pub fn maj(arity: usize) -> Self {
        BooleanFunction {
            kind: FunctionKind::Maj,
            arity,
        }
    }

    pub fn parity(arity: usize) -> Self {
        BooleanFunction {
            kind: FunctionKind::Parity,
            arity,
        }
    }

    /// 1 iff |X| >= (num/den) * N, compared in exact integer arithmetic.
    pub fn threshold(arity: usize, num: u64, den: u64) -> Self {
        assert!(den > 0);
        BooleanFunction {
            kind: FunctionKind::Threshold { num, den },
            arity,
        }
    }

    pub fn simon(n: usize) -> Self {
        BooleanFunction {
            kind: FunctionKind::Simon { n },
            arity: n << n,
        }
    }

    /// Truth table over 2^arity inputs; bit `v` of the packed table is the
    /// value on the input whose bits spell `v` (bit i of v = input bit i).
    pub fn table(arity: usize, truth: Vec<u64>) -> Self {
        assert!(arity <= 20, "table escape hatch capped at 20 variables");
        assert_eq!(truth.len(), (1usize << arity).div_ceil(64));
        BooleanFunction {
            kind: FunctionKind::Table { truth },
            arity,
        }
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn name(&self) -> String {
        match &self.kind {
            FunctionKind::Or => format!("or[{}]", self.arity),
            FunctionKind::Maj => format!("maj[{}]", self.arity),
            FunctionKind::Parity => format!("parity[{}]", self.arity),
            FunctionKind::Threshold { num, den } => {
                format!("threshold[{},{num}/{den}]", self.arity)
            }
            FunctionKind::Simon { n } => format!("simon[n={n}]"),
            FunctionKind::Table { .. } => format!("table[{}]", self.arity),
        }
    }

    /// True when the value depends on the input only through its weight.
    pub fn is_symmetric(&self) -> bool {
        !matches!(
            self.kind,
            FunctionKind::Simon { .. } | FunctionKind::Table { .. }
        )
    }

    /// Value as a function of Hamming weight, for symmetric kinds.
    pub fn value_by_weight(&self, t: u64) -> Option<u8> {
        let n = self.arity as u64;
        debug_assert!(t <= n);
        match self.kind {
            FunctionKind::Or => Some(u8::from(t >= 1)),
            FunctionKind::Maj => Some(u8::from(2 * t > n)),
            FunctionKind::Parity => Some((t % 2) as u8),
            FunctionKind::Threshold { num, den } => Some(u8::from(t * den >= num * n)),
            _ => None,
        }
    }

    /// Ground-truth evaluation; touches no query counters.
    pub fn evaluate(&self, x: &BitInput) -> Result<u8, OracleError> {
        if x.len() != self.arity {
            return Err(OracleError::ArityMismatch {
                expected: self.arity,
                got: x.len(),
            });
        }
        match &self.kind {
            FunctionKind::Simon { n } => {
                let view = ensure_block_view(x, *n)?;
                Ok(simon_value(&view)?)
            }
            FunctionKind::Table { truth } => {
                let mut v = 0usize;
                for i in 0..self.arity {
                    v |= (x.bit(i) as usize) << i;
                }
                Ok(((truth[v / 64] >> (v % 64)) & 1) as u8)
            }
            _ => Ok(self.value_by_weight(x.weight()).unwrap()),
        }
    }
}

fn ensure_block_view(x: &BitInput, n: usize) -> Result<BitInput, OracleError> {
    match x.block_width() {
        Some(w) if w == n => Ok(x.clone()),
        Some(_) | None => x.clone().with_block_width(n),
    }
}

/// 1 iff some nonzero k in {0,1}^n has `block[i^k] = block[i]` for all i.
/// Brute force over all candidate periods.
pub fn simon_value(x: &BitInput) -> Result<u8, OracleError> {
    let n = x.block_width().ok_or(OracleError::MissingBlockLayout)?;
    let blocks: Vec<u64> = (0..1usize << n).map(|i| x.block(i)).collect();
    Ok(u8::from(first_period(&blocks).is_some()))
}

/// All nonzero periods of a block table (periods form a group with 0).
pub fn simon_periods(blocks: &[u64]) -> Vec<u64> {
    let size = blocks.len();
    (1..size as u64)
        .filter(|&k| is_period(blocks, k))
        .collect()
}

/// The unique nonzero period if exactly one exists.
pub fn simon_unique_period(blocks: &[u64]) -> Option<u64> {
    let mut found = None;
    for k in 1..blocks.len() as u64 {
        if is_period(blocks, k) {
            if found.is_some() {
                return None;
            }
            found = Some(k);
        }
    }
    found
}

#[inline]
pub fn is_period(blocks: &[u64], k: u64) -> bool {
    blocks
        .iter()
        .enumerate()
        .all(|(i, &v)| blocks[(i as u64 ^ k) as usize] == v)
}

fn first_period(blocks: &[u64]) -> Option<u64> {
    (1..blocks.len() as u64).find(|&k| is_period(blocks, k))
}

/// Which value a single query returns and how it is charged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryUnit {
    /// Index -> one bit.
    Bit,
    /// Index -> an n-bit block; legal only with a block layout.
    Block,
}

/// The only sanctioned path from an algorithm to its input. Each classical
/// query call and each query unitary charges one unit, whatever the unit
/// kind; repeated queries are re-counted. An optional XOR mask presents a
/// shifted view of the input, used by self-reductions; the mask applies to
/// the simulator accessors as well so quantum and classical views agree.
#[derive(Debug, Clone)]
pub struct CountingOracle {
    input: BitInput,
    mask: Option<BitInput>,
    unit: QueryUnit,
    classical_queries: u64,
    quantum_queries: u64,
}

impl CountingOracle {
    pub fn new_bit(input: BitInput) -> Self {
        CountingOracle {
            input,
            mask: None,
            unit: QueryUnit::Bit,
            classical_queries: 0,
            quantum_queries: 0,
        }
    }

    pub fn new_block(input: BitInput) -> Result<Self, OracleError> {
        if input.block_width().is_none() {
            return Err(OracleError::MissingBlockLayout);
        }
        Ok(CountingOracle {
            input,
            mask: None,
            unit: QueryUnit::Block,
            classical_queries: 0,
            quantum_queries: 0,
        })
    }

    /// Replaces the visible input with `input XOR mask`.
    pub fn set_mask(&mut self, mask: BitInput) {
        assert_eq!(mask.len(), self.input.len());
        self.mask = Some(mask);
    }

    pub fn unit(&self) -> QueryUnit {
        self.unit
    }

    pub fn arity(&self) -> usize {
        self.input.len()
    }

    pub fn block_width(&self) -> Option<usize> {
        self.input.block_width()
    }

    pub fn block_count(&self) -> Option<usize> {
        self.input.block_count()
    }

    /// Counted classical bit query.
    pub fn query_bit(&mut self, i: usize) -> Result<u8, OracleError> {
        if i >= self.input.len() {
            return Err(OracleError::IndexOutOfRange {
                index: i,
                size: self.input.len(),
            });
        }
        self.classical_queries += 1;
        Ok(self.sim_bit(i))
    }

    /// Counted classical block query.
    pub fn query_block(&mut self, i: usize) -> Result<u64, OracleError> {
        let count = self
            .input
            .block_count()
            .ok_or(OracleError::MissingBlockLayout)?;
        if i >= count {
            return Err(OracleError::IndexOutOfRange {
                index: i,
                size: count,
            });
        }
        self.classical_queries += 1;
        Ok(self.sim_block(i))
    }

    /// Charges quantum query applications (one per query unitary).
    pub fn note_quantum_queries(&mut self, k: u64) {
        self.quantum_queries += k;
    }

    /// Uncounted masked bit view, used by the simulator to realise the
    /// query unitary. Not for algorithm logic.
    #[inline]
    pub fn sim_bit(&self, i: usize) -> u8 {
        let raw = self.input.bit(i);
        match &self.mask {
            Some(m) => raw ^ m.bit(i),
            None => raw,
        }
    }

    /// Uncounted masked block view for the simulator.
    #[inline]
    pub fn sim_block(&self, i: usize) -> u64 {
        let n = self.input.block_width().expect("block view needs layout");
        let raw = self.input.block(i);
        match &self.mask {
            Some(m) => raw ^ m.block_with_width(i, n),
            None => raw,
        }
    }

    /// Weight of the masked input (simulator-side shortcut for closed-form
    /// measurement sampling).
    pub fn sim_weight(&self) -> u64 {
        match &self.mask {
            Some(m) => self.input.xor(m).weight(),
            None => self.input.weight(),
        }
    }

    /// Uncounted: position of the `rank`-th masked bit equal to `value`
    /// (rank 0 is the lowest such position). Used by closed-form
    /// measurement sampling to pick a uniform index within a bit class.
    pub fn sim_select(&self, value: u8, mut rank: u64) -> Option<usize> {
        let len = self.input.len();
        let words = len.div_ceil(64);
        for w in 0..words {
            let mut bits = match &self.mask {
                Some(m) => self.input.word(w) ^ m.word(w),
                None => self.input.word(w),
            };
            if value == 0 {
                bits = !bits;
            }
            let live = len - w * 64;
            if live < 64 {
                bits &= (1u64 << live) - 1;
            }
            let c = bits.count_ones() as u64;
            if rank < c {
                let mut b = bits;
                for _ in 0..rank {
                    b &= b - 1;
                }
                return Some(w * 64 + b.trailing_zeros() as usize);
            }
            rank -= c;
        }
        None
    }

    pub fn classical_queries(&self) -> u64 {
        self.classical_queries
    }

    pub fn quantum_queries(&self) -> u64 {
        self.quantum_queries
    }

    /// Total queries in this oracle's unit.
    pub fn total_queries(&self) -> u64 {
        self.classical_queries + self.quantum_queries
    }

    pub fn reset(&mut self) {
        self.classical_queries = 0;
        self.quantum_queries = 0;
    }
}

impl BitInput {
    /// Block value under an explicit width, regardless of declared layout.
    fn block_with_width(&self, i: usize, n: usize) -> u64 {
        let mut v = 0u64;
        for j in 0..n {
            v |= (self.bit(i * n + j) as u64) << j;
        }
        v
    }

    #[inline]
    fn word(&self, w: usize) -> u64 {
        self.words[w]
    }
}
