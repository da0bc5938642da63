//! Dense amplitude oracle for codes of at most twenty qubits.
//!
//! Basis state `|b⟩` has qubit `q` in `|1⟩` iff bit `q` of `b` is set.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use super::VerifyError;
use crate::css::CssCode;
use crate::gf2::RowEchelon;
use crate::synth::FdscCircuit;

pub const MAX_STATEVECTOR_QUBITS: usize = 20;

const TOLERANCE: f64 = 1e-12;

fn check_cap(n: usize) -> Result<(), VerifyError> {
    if n > MAX_STATEVECTOR_QUBITS {
        Err(VerifyError::TooLarge {
            n_qubits: n,
            cap: MAX_STATEVECTOR_QUBITS,
        })
    } else {
        Ok(())
    }
}

/// Output amplitudes of the circuit applied to `|0…0⟩` after Hadamards on `S`.
pub fn simulate(circ: &FdscCircuit) -> Result<Vec<f64>, VerifyError> {
    let n = circ.n_qubits();
    check_cap(n)?;
    let mut amp = vec![0.0f64; 1 << n];
    amp[0] = 1.0;
    for &q in circ.plus_qubits().as_slice() {
        let bit = 1usize << q;
        for i in (0..amp.len()).filter(|i| i & bit == 0) {
            let (a, b) = (amp[i], amp[i | bit]);
            amp[i] = (a + b) * FRAC_1_SQRT_2;
            amp[i | bit] = (a - b) * FRAC_1_SQRT_2;
        }
    }
    for g in circ.gates() {
        let (c, t) = (1usize << g.control, 1usize << g.target);
        for i in (0..amp.len()).filter(|i| i & c != 0 && i & t == 0) {
            amp.swap(i, i | t);
        }
    }
    Ok(amp)
}

/// Normalized `Σ_Φ ∏_i [(1 - Φ_i) I + Φ_i A_i] |0…0⟩`.
///
/// `Φ` ranges over an independent set of X generators only; dependent
/// generators would repeat every configuration equally often.
pub fn superposition_oracle(code: &CssCode) -> Result<Vec<f64>, VerifyError> {
    let n = code.n_qubits();
    check_cap(n)?;
    let mut basis = RowEchelon::new(n);
    let mut masks: Vec<usize> = Vec::new();
    for sup in code.x_supports() {
        let mask = sup.iter().fold(0usize, |m, &q| m | (1 << q));
        if basis.insert(&[mask as u64]) {
            masks.push(mask);
        }
    }
    let mut amp = vec![0.0f64; 1 << n];
    // Gray-code walk over all 2^r assignments of Φ.
    let mut z = 0usize;
    amp[z] += 1.0;
    for step in 1u64..(1u64 << masks.len()) {
        z ^= masks[step.trailing_zeros() as usize];
        amp[z] += 1.0;
    }
    let r = masks.len() as i32;
    let mut scale = (0..r / 2).fold(1.0f64, |acc, _| acc * 0.5);
    if r % 2 == 1 {
        scale *= FRAC_1_SQRT_2;
    }
    for a in &mut amp {
        *a *= scale;
    }
    Ok(amp)
}

/// Whether the circuit output matches the ground-state superposition exactly
/// (both are real and positive up to rounding, so no phase alignment is needed).
pub fn statevector_check(code: &CssCode, circ: &FdscCircuit) -> Result<bool, VerifyError> {
    if circ.n_qubits() != code.n_qubits() {
        return Err(VerifyError::DimensionMismatch {
            circuit: circ.n_qubits(),
            code: code.n_qubits(),
        });
    }
    let out = simulate(circ)?;
    let expected = superposition_oracle(code)?;
    Ok(out
        .iter()
        .zip(&expected)
        .all(|(a, b)| (a - b).abs() <= TOLERANCE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::css::{build_ghz, build_toric, Family};
    use crate::synth::{synthesize, Strategy};

    #[test]
    fn ghz3_amplitudes() {
        let code = build_ghz(3).unwrap();
        let circ = synthesize(&code, &Strategy::Greedy { seed: None }).unwrap();
        let out = simulate(&circ).unwrap();
        for (i, a) in out.iter().enumerate() {
            let want = if i == 0 || i == 7 { FRAC_1_SQRT_2 } else { 0.0 };
            assert!((a - want).abs() < 1e-12, "amplitude {i} = {a}");
        }
        assert!(statevector_check(&code, &circ).unwrap());
    }

    #[test]
    fn toric2_has_eight_terms() {
        let code = build_toric(2).unwrap();
        let oracle = superposition_oracle(&code).unwrap();
        assert_eq!(oracle.iter().filter(|&&a| a > 0.0).count(), 8);
        let circ = synthesize(&code, &Strategy::ToricComb).unwrap();
        assert!(statevector_check(&code, &circ).unwrap());
    }

    #[test]
    fn trivial_code_is_all_zeros() {
        let code = CssCode::new(4, vec![], vec![vec![1]], Family::Custom).unwrap();
        let circ = synthesize(&code, &Strategy::Greedy { seed: None }).unwrap();
        let out = simulate(&circ).unwrap();
        assert_eq!(out[0], 1.0);
        assert!(statevector_check(&code, &circ).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let code = build_toric(4).unwrap();
        let circ = synthesize(&code, &Strategy::ToricComb).unwrap();
        assert!(matches!(
            statevector_check(&code, &circ),
            Err(VerifyError::TooLarge { n_qubits: 32, .. })
        ));
    }
}
