//! Circuit synthesis: choose the `|+⟩` subset `S`, build the reconstruction
//! matrix `M_S = A (π_S A)^+`, and read one commuting CX layer off it.
//!
//! `S` must satisfy `|S| = rank(π_S A) = rank(A)`, i.e. the rows of `A`
//! indexed by `S` form a basis of its row space. Every off-`S` one of `M_S`
//! at `(i, j)` becomes a gate controlled by the `j`-th member of `S` and
//! targeting qubit `i`; since controls never appear as targets, the whole
//! layer commutes.

mod graph;
pub mod haah;
mod select;
mod trees;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::css::{CssCode, Family};
use crate::gf2::{BitMatrix, Gf2Error};

pub use graph::loop_closing_gates;
pub use select::{check_subset, greedy_select, tree_select, x_rank};
pub use trees::{comb_tree, recursive_tree, xcube_candidates};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("strategy {strategy} does not apply to {family} codes")]
    IncompatibleStrategy {
        strategy: &'static str,
        family: &'static str,
    },
    #[error("toric_recursive needs L a power of two, got {0}")]
    SizeNotPowerOfTwo(usize),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("greedy selection stalled at |S| = {selected} below rank(A) = {rank}")]
    InternalInvariantViolation { selected: usize, rank: usize },
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("unknown strategy {0:?}")]
    UnknownStrategy(String),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// Sorted set of qubits prepared in `|+⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SubsetS(Vec<usize>);

impl SubsetS {
    pub fn new(mut qubits: Vec<usize>) -> Self {
        qubits.sort_unstable();
        qubits.dedup();
        Self(qubits)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.0.binary_search(&q).is_ok()
    }

    /// Membership mask over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = alloc::vec![false; n];
        for &q in &self.0 {
            m[q] = true;
        }
        m
    }
}

/// Subset-selection strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// Index-order scan when `seed` is `None`, otherwise a seeded random order.
    Greedy { seed: Option<u64> },
    ToricComb,
    ToricRecursive,
    XCubeDualTrees,
    HaahCanonical,
    Explicit(Vec<usize>),
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Greedy { .. } => "greedy",
            Strategy::ToricComb => "toric_comb",
            Strategy::ToricRecursive => "toric_recursive",
            Strategy::XCubeDualTrees => "xcube_dual_trees",
            Strategy::HaahCanonical => "haah_canonical",
            Strategy::Explicit(_) => "explicit",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = SynthError;

    /// Parses a strategy name; `explicit:3,0,7` carries its qubit list.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || SynthError::UnknownStrategy(s.to_string());
        Ok(match s {
            "greedy" => Strategy::Greedy { seed: None },
            "toric_comb" => Strategy::ToricComb,
            "toric_recursive" => Strategy::ToricRecursive,
            "xcube_dual_trees" => Strategy::XCubeDualTrees,
            "haah_canonical" => Strategy::HaahCanonical,
            _ => {
                let list = s.strip_prefix("explicit:").ok_or_else(unknown)?;
                let qubits = list
                    .split(',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.trim().parse::<usize>().map_err(|_| unknown()))
                    .collect::<Result<Vec<_>, _>>()?;
                Strategy::Explicit(qubits)
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gate {
    pub control: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitMetadata {
    pub family: Family,
    pub strategy: String,
}

/// `|+⟩` on `plus_qubits`, `|0⟩` elsewhere, then one layer of commuting CX gates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdscCircuit {
    n_qubits: usize,
    plus_qubits: SubsetS,
    gates: Vec<Gate>,
    metadata: CircuitMetadata,
}

impl FdscCircuit {
    /// Validates the layer: controls in `plus_qubits`, targets outside it,
    /// all indices in range. Gates are put in `(control, target)` order and
    /// duplicates are rejected.
    pub fn new(
        n_qubits: usize,
        plus_qubits: SubsetS,
        mut gates: Vec<Gate>,
        metadata: CircuitMetadata,
    ) -> Result<Self, SynthError> {
        if let Some(&q) = plus_qubits.as_slice().iter().find(|&&q| q >= n_qubits) {
            return Err(SynthError::InvalidCircuit(alloc::format!(
                "plus qubit {q} out of range"
            )));
        }
        let plus = plus_qubits.mask(n_qubits);
        for g in &gates {
            if g.control >= n_qubits || g.target >= n_qubits {
                return Err(SynthError::InvalidCircuit(alloc::format!(
                    "gate {}->{} out of range",
                    g.control,
                    g.target
                )));
            }
            if !plus[g.control] || plus[g.target] {
                return Err(SynthError::InvalidCircuit(alloc::format!(
                    "gate {}->{} must run from a |+> qubit to a |0> qubit",
                    g.control,
                    g.target
                )));
            }
        }
        gates.sort_unstable();
        if let Some(w) = gates.windows(2).find(|w| w[0] == w[1]) {
            return Err(SynthError::InvalidCircuit(alloc::format!(
                "duplicate gate {}->{}",
                w[0].control,
                w[0].target
            )));
        }
        Ok(Self {
            n_qubits,
            plus_qubits,
            gates,
            metadata,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn plus_qubits(&self) -> &SubsetS {
        &self.plus_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn metadata(&self) -> &CircuitMetadata {
        &self.metadata
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }
}

/// `M_S = A · R` with `R` a right inverse of `π_S A`.
pub fn build_reconstruction(code: &CssCode, s: &SubsetS) -> Result<BitMatrix, SynthError> {
    check_subset(code, s)?;
    reconstruct(code, s, None)
}

/// As [`build_reconstruction`], with the right inverse pivoting on the columns
/// of `π_S A` in `pivot_order`.
pub fn build_reconstruction_with_pivot_order(
    code: &CssCode,
    s: &SubsetS,
    pivot_order: &[usize],
) -> Result<BitMatrix, SynthError> {
    check_subset(code, s)?;
    reconstruct(code, s, Some(pivot_order))
}

fn reconstruct(
    code: &CssCode,
    s: &SubsetS,
    pivot_order: Option<&[usize]>,
) -> Result<BitMatrix, SynthError> {
    let a = code.x_stabs();
    let projected = a.select_rows(s.as_slice());
    let r = match pivot_order {
        Some(order) => projected.right_inverse_with_pivot_order(order)?,
        None => projected.right_inverse()?,
    };
    Ok(a.mul(&r)?)
}

/// One gate per off-`S` one of `m`; `m` must be the reconstruction matrix for `s`.
pub fn emit_circuit(
    code: &CssCode,
    s: &SubsetS,
    m: &BitMatrix,
    strategy: &str,
) -> Result<FdscCircuit, SynthError> {
    if m.rows() != code.n_qubits() || m.cols() != s.len() {
        return Err(SynthError::InvalidCircuit(alloc::format!(
            "reconstruction is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            code.n_qubits(),
            s.len()
        )));
    }
    let members = s.as_slice();
    let plus = s.mask(code.n_qubits());
    let mut gates = Vec::new();
    for (i, _) in plus.iter().enumerate().filter(|(_, &p)| !p) {
        gates.extend(m.row_support(i).into_iter().map(|j| Gate {
            control: members[j],
            target: i,
        }));
    }
    let circ = FdscCircuit::new(
        code.n_qubits(),
        s.clone(),
        gates,
        CircuitMetadata {
            family: code.family(),
            strategy: strategy.to_string(),
        },
    )?;
    debug_assert_eq!(circ.gate_count() + s.len(), m.nnz());
    Ok(circ)
}

/// Selects `S` with `strategy` and emits the circuit.
///
/// Codes whose every qubit lies in exactly two X generators are graphs
/// (generators as vertices, qubits as edges); for those `S` is a spanning
/// forest and the gates come straight from tree paths, without forming the
/// dense `M_S`.
pub fn synthesize(code: &CssCode, strategy: &Strategy) -> Result<FdscCircuit, SynthError> {
    let s = tree_select(code, strategy)?;
    synthesize_with_subset(code, s, strategy.name())
}

/// Emits the circuit for an already validated subset.
pub fn synthesize_with_subset(
    code: &CssCode,
    s: SubsetS,
    strategy: &str,
) -> Result<FdscCircuit, SynthError> {
    let metadata = CircuitMetadata {
        family: code.family(),
        strategy: strategy.to_string(),
    };
    if let Some(gates) = loop_closing_gates(code, &s)? {
        return FdscCircuit::new(code.n_qubits(), s, gates, metadata);
    }
    let m = reconstruct(code, &s, None)?;
    emit_circuit(code, &s, &m, strategy)
}

/// Runs seeded greedy selection for every seed and keeps the circuit with the
/// fewest gates; ties go to the earliest seed.
pub fn best_of_greedy(
    code: &CssCode,
    seeds: impl IntoIterator<Item = u64>,
) -> Result<Option<(u64, FdscCircuit)>, SynthError> {
    let mut best: Option<(u64, FdscCircuit)> = None;
    for seed in seeds {
        let circ = synthesize(code, &Strategy::Greedy { seed: Some(seed) })?;
        if best
            .as_ref()
            .is_none_or(|(_, b)| circ.gate_count() < b.gate_count())
        {
            best = Some((seed, circ));
        }
    }
    Ok(best)
}
