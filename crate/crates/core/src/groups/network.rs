//! Constant-depth multiplication of `g_1 ⋯ g_n` over a solvable series.
//!
//! Write `g_i = ψ(h_i) n_i` with `h_i ∈ H = G_i / N` and `n_i ∈ N`. Then
//!
//! ```text
//! g_1 ⋯ g_n = ψ(s_1) · χ(h_1, s_2) φ_{s_2}(n_1) ⋯ χ(h_{n-1}, s_n) φ_{s_n}(n_{n-1}) · n_n
//! ```
//!
//! where `s_j = h_j ⋯ h_n`. Each level spends one layer on `h_i` and `n_i`,
//! one on the suffix products (a simultaneous fan-in, since `H` is abelian),
//! one on the `χ` and `φ` lookups and one on the final `ψ(s_1)` product,
//! plus the depth of multiplying the `2n - 1` elements of `N`. The bottom
//! step is abelian and takes a single combine layer.

use alloc::vec;
use alloc::vec::Vec;

use super::{Elem, FiniteGroup, GroupError, SolvableSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    /// `τ(g)` at series step `level`.
    Quotient { level: usize },
    /// `ψ(τ(g))⁻¹ g ∈ N`.
    Residual { level: usize },
    /// Product of all inputs in the abelian quotient.
    SuffixProduct { level: usize },
    /// `χ(h, s)`.
    Chi { level: usize },
    /// `φ_s(n)`.
    Phi { level: usize },
    /// `ψ(s) · p`.
    SectionMul { level: usize },
    /// Product of all inputs in the abelian bottom subgroup.
    AbelianCombine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    pub inputs: Vec<usize>,
    pub output: usize,
}

/// Lookup tables for one series step.
#[derive(Debug, Clone, PartialEq, Eq)]
struct LevelTables {
    h_order: usize,
    tau: Vec<u32>,
    residual: Vec<Elem>,
    psi: Vec<Elem>,
    quotient_table: Vec<u32>,
    quotient_identity: u32,
    chi: Vec<Elem>,
    /// `phi[h * |G| + g]`, meaningful for `g ∈ N`.
    phi: Vec<Elem>,
}

impl LevelTables {
    fn new(group: &FiniteGroup, series: &SolvableSeries, level: usize) -> Self {
        let sec = series.section(level);
        let h_order = sec.quotient_order();
        let order = group.order();
        // Elements outside G_{level+1} never reach this level; map them anywhere.
        let tau: Vec<u32> = sec.coset_of.iter().map(|c| c.unwrap_or(0)).collect();
        let residual = (0..order as Elem)
            .map(|g| group.mul(group.inv(sec.psi(tau[g as usize])), g))
            .collect();
        let mut chi = vec![group.identity(); h_order * h_order];
        for a in 0..h_order as u32 {
            for b in 0..h_order as u32 {
                let ab = sec.quotient_mul(a, b);
                chi[a as usize * h_order + b as usize] = group.mul(
                    group.inv(sec.psi(ab)),
                    group.mul(sec.psi(a), sec.psi(b)),
                );
            }
        }
        let mut phi = vec![group.identity(); h_order * order];
        for h in 0..h_order as u32 {
            let p = sec.psi(h);
            for g in 0..order as Elem {
                phi[h as usize * order + g as usize] = group.mul(group.mul(group.inv(p), g), p);
            }
        }
        Self {
            h_order,
            tau,
            residual,
            psi: sec.reps.clone(),
            quotient_table: sec.quotient_table.clone(),
            quotient_identity: sec.quotient_identity,
            chi,
            phi,
        }
    }
}

/// A layered dataflow plan. Wires `0..n` carry the inputs; every other wire
/// is an ancilla written by exactly one node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulNetwork {
    n_inputs: usize,
    n_wires: usize,
    output: usize,
    layers: Vec<Vec<Node>>,
    group: FiniteGroup,
    tables: Vec<LevelTables>,
}

impl MulNetwork {
    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn layers(&self) -> &[Vec<Node>] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn ancilla_count(&self) -> usize {
        self.n_wires - self.n_inputs
    }

    pub fn output_wire(&self) -> usize {
        self.output
    }

    /// Runs the plan layer by layer.
    pub fn evaluate(&self, seq: &[Elem]) -> Result<Elem, GroupError> {
        if seq.len() != self.n_inputs {
            return Err(GroupError::LengthMismatch {
                expected: self.n_inputs,
                got: seq.len(),
            });
        }
        if let Some(&g) = seq.iter().find(|&&g| g as usize >= self.group.order()) {
            return Err(GroupError::ElementOutOfRange(g));
        }
        let g = &self.group;
        let mut wires = vec![0u32; self.n_wires];
        wires[..seq.len()].copy_from_slice(seq);
        for layer in &self.layers {
            for node in layer {
                let arg = |i: usize| wires[node.inputs[i]];
                let value = match node.kind {
                    NodeKind::Quotient { level } => self.tables[level].tau[arg(0) as usize],
                    NodeKind::Residual { level } => self.tables[level].residual[arg(0) as usize],
                    NodeKind::SuffixProduct { level } => {
                        let t = &self.tables[level];
                        node.inputs.iter().fold(t.quotient_identity, |acc, &w| {
                            t.quotient_table[acc as usize * t.h_order + wires[w] as usize]
                        })
                    }
                    NodeKind::Chi { level } => {
                        let t = &self.tables[level];
                        t.chi[arg(0) as usize * t.h_order + arg(1) as usize]
                    }
                    NodeKind::Phi { level } => {
                        self.tables[level].phi[arg(0) as usize * g.order() + arg(1) as usize]
                    }
                    NodeKind::SectionMul { level } => {
                        g.mul(self.tables[level].psi[arg(0) as usize], arg(1))
                    }
                    NodeKind::AbelianCombine => node
                        .inputs
                        .iter()
                        .fold(g.identity(), |acc, &w| g.mul(acc, wires[w])),
                };
                wires[node.output] = value;
            }
        }
        Ok(wires[self.output])
    }
}

struct Builder {
    n_wires: usize,
    layers: Vec<Vec<Node>>,
}

impl Builder {
    fn wire(&mut self) -> usize {
        self.n_wires += 1;
        self.n_wires - 1
    }

    fn push(&mut self, layer: &mut Vec<Node>, kind: NodeKind, inputs: Vec<usize>) -> usize {
        let output = self.wire();
        layer.push(Node {
            kind,
            inputs,
            output,
        });
        output
    }

    /// Multiplies the elements on `inputs`, all lying in `G_{level+1}`.
    fn multiply(&mut self, level: usize, inputs: &[usize]) -> usize {
        if level == 0 {
            let mut layer = Vec::new();
            let out = self.push(&mut layer, NodeKind::AbelianCombine, inputs.to_vec());
            self.layers.push(layer);
            return out;
        }
        let n = inputs.len();

        let mut split = Vec::with_capacity(2 * n);
        let mut h = Vec::with_capacity(n);
        let mut residual = Vec::with_capacity(n);
        for &w in inputs {
            h.push(self.push(&mut split, NodeKind::Quotient { level }, vec![w]));
            residual.push(self.push(&mut split, NodeKind::Residual { level }, vec![w]));
        }
        self.layers.push(split);

        let mut suffix_layer = Vec::with_capacity(n);
        let suffix: Vec<usize> = (0..n)
            .map(|j| self.push(&mut suffix_layer, NodeKind::SuffixProduct { level }, h[j..].to_vec()))
            .collect();
        self.layers.push(suffix_layer);

        let mut lookups = Vec::with_capacity(2 * n);
        let mut in_n = Vec::with_capacity(2 * n - 1);
        for j in 0..n - 1 {
            in_n.push(self.push(&mut lookups, NodeKind::Chi { level }, vec![h[j], suffix[j + 1]]));
            in_n.push(self.push(&mut lookups, NodeKind::Phi { level }, vec![suffix[j + 1], residual[j]]));
        }
        in_n.push(residual[n - 1]);
        if !lookups.is_empty() {
            self.layers.push(lookups);
        } else {
            // Keep the depth a function of the series alone.
            self.layers.push(Vec::new());
        }

        let product = self.multiply(level - 1, &in_n);
        let mut last = Vec::with_capacity(1);
        let out = self.push(&mut last, NodeKind::SectionMul { level }, vec![suffix[0], product]);
        self.layers.push(last);
        out
    }
}

/// Plans the product of `n ≥ 1` elements.
pub fn plan_network(group: &FiniteGroup, series: &SolvableSeries, n: usize) -> Result<MulNetwork, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidSize(0));
    }
    let k = series.length();
    let tables = (0..k).map(|i| LevelTables::new(group, series, i)).collect();
    let mut b = Builder {
        n_wires: n,
        layers: Vec::new(),
    };
    let inputs: Vec<usize> = (0..n).collect();
    let output = b.multiply(k - 1, &inputs);
    Ok(MulNetwork {
        n_inputs: n,
        n_wires: b.n_wires,
        output,
        layers: b.layers,
        group: group.clone(),
        tables,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthRow {
    pub n: usize,
    pub depth: usize,
    pub ancilla_count: usize,
}

pub fn depth_report(
    group: &FiniteGroup,
    series: &SolvableSeries,
    n_values: &[usize],
) -> Result<Vec<DepthRow>, GroupError> {
    n_values
        .iter()
        .map(|&n| {
            let net = plan_network(group, series, n)?;
            Ok(DepthRow {
                n,
                depth: net.depth(),
                ancilla_count: net.ancilla_count(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::{make_abelian, make_dihedral};
    use super::*;

    #[test]
    fn d3_reflection_pair() {
        let (g, s) = make_dihedral(3).unwrap();
        let net = plan_network(&g, &s, 2).unwrap();
        // m r · m r^2 = r
        assert_eq!(net.evaluate(&[4, 5]).unwrap(), 1);
        assert_eq!(net.evaluate(&[4, 5]).unwrap(), g.fold(&[4, 5]));
    }

    #[test]
    fn depth_per_level() {
        let (g, s) = make_abelian(&[6]).unwrap();
        for n in [1, 4, 64] {
            assert_eq!(plan_network(&g, &s, n).unwrap().depth(), 1);
        }
        let (g, s) = make_dihedral(4).unwrap();
        for n in [1, 4, 16, 256] {
            assert_eq!(plan_network(&g, &s, n).unwrap().depth(), 5);
        }
    }

    #[test]
    fn layer_outputs_are_fresh_and_inputs_ready() {
        let (g, s) = make_dihedral(5).unwrap();
        let net = plan_network(&g, &s, 7).unwrap();
        let mut ready = vec![false; net.n_inputs() + net.ancilla_count()];
        ready[..7].iter_mut().for_each(|r| *r = true);
        for layer in net.layers() {
            for node in layer {
                assert!(node.inputs.iter().all(|&w| ready[w]));
            }
            for node in layer {
                assert!(!ready[node.output]);
                ready[node.output] = true;
            }
        }
        assert!(ready[net.output_wire()]);
    }

    #[test]
    fn length_checked() {
        let (g, s) = make_dihedral(3).unwrap();
        let net = plan_network(&g, &s, 3).unwrap();
        assert_eq!(
            net.evaluate(&[0, 1]),
            Err(GroupError::LengthMismatch { expected: 3, got: 2 })
        );
        assert_eq!(net.evaluate(&[0, 0, 0]).unwrap(), 0);
        assert!(plan_network(&g, &s, 0).is_err());
    }
}
