//! Exact verification of prepared states.
//!
//! The symplectic route tracks `n` stabilizer generators through the CX
//! layer and checks that every code generator, with a `+` sign, lies in the
//! resulting stabilizer group. The state-vector route in [`statevector`]
//! compares amplitudes directly for small codes.

pub mod statevector;

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::css::CssCode;
use crate::gf2::{BitMatrix, BitVector};
use crate::synth::{FdscCircuit, Gate};

pub use statevector::{statevector_check, MAX_STATEVECTOR_QUBITS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("qubit {qubit} out of range for {n_qubits} qubits")]
    IndexOutOfRange { qubit: usize, n_qubits: usize },
    #[error("qubit {0} is both a control and a target in one layer")]
    InvalidLayer(usize),
    #[error("circuit acts on {circuit} qubits but the code has {code}")]
    DimensionMismatch { circuit: usize, code: usize },
    #[error("{n_qubits} qubits exceeds the state-vector cap of {cap}")]
    TooLarge { n_qubits: usize, cap: usize },
}

/// Stabilizer tableau: generator `k` is `(-1)^{signs[k]} ∏_q X_q^{x[k][q]} Z_q^{z[k][q]}`,
/// with `X Z` on one qubit read as `Y` up to the usual `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticState {
    n_qubits: usize,
    stab_x: BitMatrix,
    stab_z: BitMatrix,
    signs: BitVector,
}

impl SymplecticState {
    /// `X_q` for `q ∈ plus_qubits`, `Z_q` for every other qubit.
    pub fn initial_state(n: usize, plus_qubits: &[usize]) -> Result<Self, VerifyError> {
        let mut plus = vec![false; n];
        for &q in plus_qubits {
            if q >= n {
                return Err(VerifyError::IndexOutOfRange {
                    qubit: q,
                    n_qubits: n,
                });
            }
            plus[q] = true;
        }
        let mut stab_x = BitMatrix::zeros(n, n);
        let mut stab_z = BitMatrix::zeros(n, n);
        for (q, &p) in plus.iter().enumerate() {
            if p {
                stab_x.set(q, q, true);
            } else {
                stab_z.set(q, q, true);
            }
        }
        Ok(Self {
            n_qubits: n,
            stab_x,
            stab_z,
            signs: BitVector::zeros(n),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn stab_x(&self) -> &BitMatrix {
        &self.stab_x
    }

    pub fn stab_z(&self) -> &BitMatrix {
        &self.stab_z
    }

    pub fn signs(&self) -> &BitVector {
        &self.signs
    }

    /// Conjugates every generator by each gate of a commuting layer.
    ///
    /// `CX(c→t)` maps `X_c → X_c X_t` and `Z_t → Z_c Z_t`; the sign flips
    /// when `x_c z_t (x_t ⊕ z_c ⊕ 1)` is set.
    pub fn apply_cx_layer(&self, gates: &[Gate]) -> Result<Self, VerifyError> {
        let n = self.n_qubits;
        let mut role = vec![0u8; n];
        for g in gates {
            for q in [g.control, g.target] {
                if q >= n {
                    return Err(VerifyError::IndexOutOfRange {
                        qubit: q,
                        n_qubits: n,
                    });
                }
            }
            role[g.control] |= 1;
            role[g.target] |= 2;
        }
        if let Some(q) = role.iter().position(|&r| r == 3) {
            return Err(VerifyError::InvalidLayer(q));
        }
        let mut next = self.clone();
        for k in 0..n {
            let mut sign = next.signs.get(k);
            for g in gates {
                let (c, t) = (g.control, g.target);
                let xc = next.stab_x.get(k, c);
                let zt = next.stab_z.get(k, t);
                if !xc && !zt {
                    continue;
                }
                let xt = next.stab_x.get(k, t);
                let zc = next.stab_z.get(k, c);
                sign ^= xc && zt && !(xt ^ zc);
                if xc {
                    next.stab_x.flip(k, t);
                }
                if zt {
                    next.stab_z.flip(k, c);
                }
            }
            next.signs.set(k, sign);
        }
        Ok(next)
    }

    /// Pairwise commutation and full rank of the `[X | Z]` generator matrix.
    pub fn is_valid(&self) -> bool {
        let n = self.n_qubits;
        for a in 0..n {
            for b in a + 1..n {
                if symplectic_product(self, a, b) {
                    return false;
                }
            }
        }
        self.stab_x.hstack(&self.stab_z).map(|m| m.rank()) == Ok(n)
    }

    /// Whether `+∏ X^x Z^z` (with `Y` where both masks are set) stabilizes the state.
    pub fn contains_stabilizer(&self, x_mask: &BitVector, z_mask: &BitVector) -> bool {
        Membership::new(self).contains(x_mask, z_mask)
    }
}

fn symplectic_product(s: &SymplecticState, a: usize, b: usize) -> bool {
    let dot = |p: &BitMatrix, q: &BitMatrix| {
        p.row_words(a)
            .iter()
            .zip(q.row_words(b))
            .fold(0u32, |acc, (u, v)| acc ^ (u & v).count_ones())
    };
    (dot(&s.stab_x, &s.stab_z) ^ dot(&s.stab_z, &s.stab_x)) & 1 == 1
}

/// Power of `i` picked up when multiplying the single-qubit Paulis
/// `(x1, z1) · (x2, z2)` in Hermitian form.
fn phase_exponent(x1: bool, z1: bool, x2: bool, z2: bool) -> i32 {
    let (x2, z2) = (i32::from(x2), i32::from(z2));
    match (x1, z1) {
        (false, false) => 0,
        (true, true) => z2 - x2,
        (true, false) => z2 * (2 * x2 - 1),
        (false, true) => x2 * (1 - 2 * z2),
    }
}

/// Reduced generator matrix for repeated membership queries.
struct Membership<'a> {
    state: &'a SymplecticState,
    /// `(pivot column, reduced row over 2n bits, generator combination)`.
    rows: Vec<(usize, BitVector, BitVector)>,
}

impl<'a> Membership<'a> {
    fn new(state: &'a SymplecticState) -> Self {
        let n = state.n_qubits;
        let mut work: Vec<(BitVector, BitVector)> = (0..n)
            .map(|k| {
                let mut row = BitVector::zeros(2 * n);
                for q in state.stab_x.row_support(k) {
                    row.set(q, true);
                }
                for q in state.stab_z.row_support(k) {
                    row.set(n + q, true);
                }
                let mut combo = BitVector::zeros(n);
                combo.set(k, true);
                (row, combo)
            })
            .collect();
        let mut rows = Vec::with_capacity(n);
        let mut r = 0;
        for col in 0..2 * n {
            let Some(p) = (r..work.len()).find(|&i| work[i].0.get(col)) else {
                continue;
            };
            work.swap(r, p);
            let (pivot_row, pivot_combo) = work[r].clone();
            for (i, (row, combo)) in work.iter_mut().enumerate() {
                if i != r && row.get(col) {
                    row.xor_assign(&pivot_row);
                    combo.xor_assign(&pivot_combo);
                }
            }
            rows.push(col);
            r += 1;
        }
        let rows = rows
            .into_iter()
            .zip(work)
            .map(|(col, (row, combo))| (col, row, combo))
            .collect();
        Self { state, rows }
    }

    fn contains(&self, x_mask: &BitVector, z_mask: &BitVector) -> bool {
        let n = self.state.n_qubits;
        assert_eq!(x_mask.len(), n);
        assert_eq!(z_mask.len(), n);
        let mut target = BitVector::zeros(2 * n);
        for q in x_mask.support() {
            target.set(q, true);
        }
        for q in z_mask.support() {
            target.set(n + q, true);
        }
        let mut used = BitVector::zeros(n);
        for (col, row, combo) in &self.rows {
            if target.get(*col) {
                target.xor_assign(row);
                used.xor_assign(combo);
            }
        }
        if !target.is_zero() {
            return false;
        }
        // Multiply the chosen generators, tracking the overall sign.
        let s = self.state;
        let mut acc_x = vec![false; n];
        let mut acc_z = vec![false; n];
        let mut acc_sign = false;
        for k in used.support() {
            let mut phase = 2 * i32::from(s.signs.get(k)) + 2 * i32::from(acc_sign);
            for q in 0..n {
                let (xk, zk) = (s.stab_x.get(k, q), s.stab_z.get(k, q));
                phase += phase_exponent(xk, zk, acc_x[q], acc_z[q]);
                acc_x[q] ^= xk;
                acc_z[q] ^= zk;
            }
            let phase = phase.rem_euclid(4);
            debug_assert!(phase % 2 == 0, "stabilizer generators must commute");
            acc_sign = phase == 2;
        }
        !acc_sign
    }
}

/// Outcome of checking every code generator against the prepared state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub pass: bool,
    pub failed_x: Vec<usize>,
    pub failed_z: Vec<usize>,
    pub n_checked: usize,
}

/// Propagates the circuit and checks all X and Z generators of `code`.
pub fn verify_circuit(code: &CssCode, circ: &FdscCircuit) -> Result<VerifyReport, VerifyError> {
    let n = code.n_qubits();
    if circ.n_qubits() != n {
        return Err(VerifyError::DimensionMismatch {
            circuit: circ.n_qubits(),
            code: n,
        });
    }
    let state = SymplecticState::initial_state(n, circ.plus_qubits().as_slice())?
        .apply_cx_layer(circ.gates())?;
    let membership = Membership::new(&state);
    let empty = BitVector::zeros(n);
    let failed_x: Vec<usize> = code
        .x_supports()
        .iter()
        .enumerate()
        .filter(|(_, sup)| !membership.contains(&BitVector::from_support(n, sup), &empty))
        .map(|(i, _)| i)
        .collect();
    let failed_z: Vec<usize> = code
        .z_supports()
        .iter()
        .enumerate()
        .filter(|(_, sup)| !membership.contains(&empty, &BitVector::from_support(n, sup)))
        .map(|(i, _)| i)
        .collect();
    Ok(VerifyReport {
        pass: failed_x.is_empty() && failed_z.is_empty(),
        failed_x,
        failed_z,
        n_checked: code.x_supports().len() + code.z_supports().len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(s: &SymplecticState) -> Vec<(Vec<usize>, Vec<usize>)> {
        (0..s.n_qubits())
            .map(|k| (s.stab_x.row_support(k), s.stab_z.row_support(k)))
            .collect()
    }

    #[test]
    fn initial_states() {
        let s = SymplecticState::initial_state(2, &[]).unwrap();
        assert_eq!(gens(&s), vec![(vec![], vec![0]), (vec![], vec![1])]);
        let s = SymplecticState::initial_state(2, &[0, 1]).unwrap();
        assert_eq!(gens(&s), vec![(vec![0], vec![]), (vec![1], vec![])]);
        let s = SymplecticState::initial_state(3, &[0]).unwrap();
        assert_eq!(
            gens(&s),
            vec![(vec![0], vec![]), (vec![], vec![1]), (vec![], vec![2])]
        );
        assert!(matches!(
            SymplecticState::initial_state(2, &[2]),
            Err(VerifyError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn cx_conjugation() {
        let s = SymplecticState::initial_state(2, &[0]).unwrap();
        let g = [Gate { control: 0, target: 1 }];
        let t = s.apply_cx_layer(&g).unwrap();
        assert_eq!(gens(&t), vec![(vec![0, 1], vec![]), (vec![], vec![0, 1])]);
        assert!(t.signs().is_zero());
        assert_eq!(s.apply_cx_layer(&[]).unwrap(), s);
        let bad = [Gate { control: 0, target: 1 }, Gate { control: 1, target: 0 }];
        assert_eq!(s.apply_cx_layer(&bad), Err(VerifyError::InvalidLayer(0)));
    }

    #[test]
    fn ghz3_membership() {
        let s = SymplecticState::initial_state(3, &[0])
            .unwrap()
            .apply_cx_layer(&[Gate { control: 0, target: 1 }, Gate { control: 0, target: 2 }])
            .unwrap();
        let v = |b: &[bool]| BitVector::from_bools(b);
        let o = v(&[false; 3]);
        assert!(s.contains_stabilizer(&v(&[true, true, true]), &o));
        assert!(s.contains_stabilizer(&o, &v(&[true, true, false])));
        assert!(s.contains_stabilizer(&o, &v(&[true, false, true])));
        assert!(s.contains_stabilizer(&o, &v(&[false, true, true])));
        assert!(!s.contains_stabilizer(&o, &v(&[true, false, false])));
        assert!(s.is_valid());
    }

    #[test]
    fn minus_sign_is_not_a_stabilizer() {
        // |+> is stabilized by X but not -X; |-> the other way round.
        let mut s = SymplecticState::initial_state(1, &[0]).unwrap();
        let x = BitVector::from_bools(&[true]);
        let o = BitVector::zeros(1);
        assert!(s.contains_stabilizer(&x, &o));
        s.signs.set(0, true);
        assert!(!s.contains_stabilizer(&x, &o));
    }

    #[test]
    fn y_products_track_phase() {
        // Stabilizers of a Bell pair: XX and ZZ. Their product XX·ZZ = -YY.
        let s = SymplecticState::initial_state(2, &[0])
            .unwrap()
            .apply_cx_layer(&[Gate { control: 0, target: 1 }])
            .unwrap();
        let both = BitVector::from_bools(&[true, true]);
        assert!(!s.contains_stabilizer(&both, &both));
    }
}
