//! Exact optimal average-cost deterministic decision trees.
//!
//! Dynamic programming over restriction states (which variables were
//! queried, with which answers), in mass units: the value of a state is
//! the minimal sum over consistent inputs of mu(X) times the remaining
//! query count. A tree must compute the function correctly on every
//! input, including those of measure zero, so zero-mass branches still
//! produce valid subtrees during extraction.

use super::BoundsError;
use crate::dist::InputDistribution;
use crate::numeric::binomial_row;
use crate::oracle::{BitInput, BooleanFunction};
use std::fmt::Write as _;

/// Cap on the exact DP: 3^14 restriction states.
const DP_CAP: usize = 14;
/// Tighter cap for non-symmetric functions, whose constancy checks
/// enumerate completions.
const DP_CAP_GENERIC: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionTree {
    Leaf(u8),
    Query {
        index: usize,
        if_zero: Box<DecisionTree>,
        if_one: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn evaluate(&self, x: &BitInput) -> (u8, u32) {
        match self {
            DecisionTree::Leaf(v) => (*v, 0),
            DecisionTree::Query {
                index,
                if_zero,
                if_one,
            } => {
                let (v, d) = if x.bit(*index) == 0 {
                    if_zero.evaluate(x)
                } else {
                    if_one.evaluate(x)
                };
                (v, d + 1)
            }
        }
    }

    pub fn depth(&self) -> u32 {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Query {
                if_zero, if_one, ..
            } => 1 + if_zero.depth().max(if_one.depth()),
        }
    }

    /// Indented text rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        match self {
            DecisionTree::Leaf(v) => {
                let _ = writeln!(out, "{pad}output {v}");
            }
            DecisionTree::Query {
                index,
                if_zero,
                if_one,
            } => {
                let _ = writeln!(out, "{pad}query x{index}");
                let _ = writeln!(out, "{pad}= 0:");
                if_zero.render_into(out, depth + 1);
                let _ = writeln!(out, "{pad}= 1:");
                if_one.render_into(out, depth + 1);
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct DtreeOutcome {
    /// The distribution-weighted expected query count of the best tree.
    pub value: f64,
    pub tree: DecisionTree,
}

/// Per-variable state digit: unqueried, answered 0, answered 1.
const UNQUERIED: u8 = 0;

struct Dp<'a> {
    f: &'a BooleanFunction,
    n: usize,
    pow3: Vec<usize>,
    value: Vec<f64>,
    action: Vec<i16>, // -1 unvisited, -2 leaf0, -3 leaf1, -4 zero-mass, else query index
    mass_eval: MassEval,
    /// binom[k] = row k of Pascal's triangle, for completion counting.
    binom: Vec<Vec<f64>>,
}

enum MassEval {
    /// Exchangeable distribution: per-weight input probability q(w)/C(N,w).
    Exchangeable { per_input_by_weight: Vec<f64> },
    /// Small explicit support.
    Support { entries: Vec<(BitInput, f64)> },
}

pub fn optimal_avg_dtree(
    f: &BooleanFunction,
    mu: &InputDistribution,
) -> Result<DtreeOutcome, BoundsError> {
    let n = f.arity();
    let cap = if f.is_symmetric() { DP_CAP } else { DP_CAP_GENERIC };
    if n > cap {
        return Err(BoundsError::SizeCapExceeded { n, cap });
    }
    if mu.arity() != n {
        return Err(BoundsError::Dist(crate::dist::DistError::ArityMismatch {
            expected: n,
            got: mu.arity(),
        }));
    }
    let mass_eval = match mu.per_input_pmf_by_weight() {
        Some(per_input_by_weight) => MassEval::Exchangeable {
            per_input_by_weight,
        },
        None => MassEval::Support {
            entries: mu.support_enumerate(1 << 20)?,
        },
    };
    let mut pow3 = vec![1usize; n + 1];
    for i in 1..=n {
        pow3[i] = pow3[i - 1] * 3;
    }
    let states = pow3[n];
    let mut dp = Dp {
        f,
        n,
        pow3,
        value: vec![f64::NAN; states],
        action: vec![-1; states],
        mass_eval,
        binom: (0..=n).map(binomial_row).collect(),
    };
    let value = dp.solve(&mut vec![UNQUERIED; n], 0);
    let tree = dp.extract(&mut vec![UNQUERIED; n], 0);
    Ok(DtreeOutcome { value, tree })
}

impl Dp<'_> {
    fn solve(&mut self, digits: &mut Vec<u8>, code: usize) -> f64 {
        if !self.value[code].is_nan() {
            return self.value[code];
        }
        let (val, act) = self.compute(digits, code);
        self.value[code] = val;
        self.action[code] = act;
        val
    }

    fn compute(&mut self, digits: &mut Vec<u8>, code: usize) -> (f64, i16) {
        if let Some(v) = self.constant_value(digits) {
            return (0.0, -2 - v as i16);
        }
        let mass = self.mass(digits);
        if mass == 0.0 {
            return (0.0, -4);
        }
        let mut best = f64::INFINITY;
        let mut best_i = 0i16;
        for i in 0..self.n {
            if digits[i] != UNQUERIED {
                continue;
            }
            digits[i] = 1;
            let v0 = self.solve(digits, code + self.pow3[i]);
            digits[i] = 2;
            let v1 = self.solve(digits, code + 2 * self.pow3[i]);
            digits[i] = UNQUERIED;
            let total = v0 + v1;
            if total < best {
                best = total;
                best_i = i as i16;
            }
        }
        (mass + best, best_i)
    }

    /// The function value if it is constant over all completions.
    fn constant_value(&self, digits: &[u8]) -> Option<u8> {
        let ones: u64 = digits.iter().filter(|&&d| d == 2).count() as u64;
        let free: Vec<usize> = (0..self.n).filter(|&i| digits[i] == UNQUERIED).collect();
        if self.f.is_symmetric() {
            let first = self.f.value_by_weight(ones).unwrap();
            for extra in 1..=free.len() as u64 {
                if self.f.value_by_weight(ones + extra).unwrap() != first {
                    return None;
                }
            }
            return Some(first);
        }
        // Generic: enumerate completions.
        let mut x = BitInput::zeros(self.n);
        for (i, &d) in digits.iter().enumerate() {
            if d == 2 {
                x.set_bit(i, 1);
            }
        }
        let x = match self.f.kind() {
            crate::oracle::FunctionKind::Simon { n } => x.with_block_width(*n).unwrap(),
            _ => x,
        };
        let first = self.f.evaluate(&x).expect("arity matches");
        for combo in 1u64..(1u64 << free.len()) {
            let mut y = x.clone();
            for (j, &i) in free.iter().enumerate() {
                if combo >> j & 1 == 1 {
                    y.set_bit(i, 1);
                }
            }
            if self.f.evaluate(&y).expect("arity matches") != first {
                return None;
            }
        }
        Some(first)
    }

    /// Total mu-mass of the inputs consistent with the restriction.
    fn mass(&self, digits: &[u8]) -> f64 {
        match &self.mass_eval {
            MassEval::Exchangeable {
                per_input_by_weight,
            } => {
                let ones: usize = digits.iter().filter(|&&d| d == 2).count();
                let free: usize = digits.iter().filter(|&&d| d == UNQUERIED).count();
                (0..=free)
                    .map(|j| self.binom[free][j] * per_input_by_weight[ones + j])
                    .sum()
            }
            MassEval::Support { entries } => entries
                .iter()
                .filter(|(x, _)| {
                    digits
                        .iter()
                        .enumerate()
                        .all(|(i, &d)| d == UNQUERIED || x.bit(i) == d - 1)
                })
                .map(|(_, p)| p)
                .sum(),
        }
    }

    /// Rebuilds the optimal tree along reachable states; zero-mass states
    /// get the canonical query-everything subtree, which is always valid.
    fn extract(&mut self, digits: &mut Vec<u8>, code: usize) -> DecisionTree {
        if self.action[code] == -1 {
            self.solve(digits, code);
        }
        match self.action[code] {
            -2 => DecisionTree::Leaf(0),
            -3 => DecisionTree::Leaf(1),
            -4 => self.canonical(digits),
            i => {
                let i = i as usize;
                digits[i] = 1;
                let if_zero = Box::new(self.extract(digits, code + self.pow3[i]));
                digits[i] = 2;
                let if_one = Box::new(self.extract(digits, code + 2 * self.pow3[i]));
                digits[i] = UNQUERIED;
                DecisionTree::Query {
                    index: i,
                    if_zero,
                    if_one,
                }
            }
        }
    }

    /// Query the lowest unqueried variable until the value is pinned.
    fn canonical(&self, digits: &mut Vec<u8>) -> DecisionTree {
        if let Some(v) = self.constant_value(digits) {
            return DecisionTree::Leaf(v);
        }
        let i = (0..self.n)
            .find(|&i| digits[i] == UNQUERIED)
            .expect("non-constant restriction has free variables");
        digits[i] = 1;
        let if_zero = Box::new(self.canonical(digits));
        digits[i] = 2;
        let if_one = Box::new(self.canonical(digits));
        digits[i] = UNQUERIED;
        DecisionTree::Query {
            index: i,
            if_zero,
            if_one,
        }
    }
}
