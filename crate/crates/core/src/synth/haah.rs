//! Haah's code with open boundaries through its cube potential.
//!
//! Each configuration in the ground-state superposition is fixed by a value
//! `Φ_c` per cube. With cubes named by their minimal corner, qubit 1 of
//! vertex `v` sees the cubes `v`, `v - (0,1,1)`, `v - (1,0,1)`,
//! `v - (1,1,0)` and qubit 2 sees `v`, `v - (1,0,0)`, `v - (0,1,0)`,
//! `v - (0,0,1)`; cubes outside `[0, L)^3` contribute zero.

use alloc::vec::Vec;

use crate::css::haah_qubit;
use crate::gf2::{BitMatrix, BitVector};

const QUBIT1_CUBES: [(usize, usize, usize); 4] = [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)];
const QUBIT2_CUBES: [(usize, usize, usize); 4] = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)];

fn cube_index(l: usize, x: usize, y: usize, z: usize) -> usize {
    (x * l + y) * l + z
}

/// Qubit `(x, y, z; 1)` for every `x, y, z < L`, in qubit-index order.
pub fn canonical_subset(l: usize) -> Vec<usize> {
    let mut s = Vec::with_capacity(l * l * l);
    for x in 0..l {
        for y in 0..l {
            for z in 0..l {
                s.push(haah_qubit(l, x, y, z, 1));
            }
        }
    }
    s
}

/// Recovers `Φ` from the qubit-1 values `z1` on vertices `[0, L)^3`
/// (indexed like cubes).
///
/// The qubit-1 relation at `v` contains `Φ_v` plus three cubes that precede
/// `v` lexicographically, so one lexicographic sweep solves it exactly.
pub fn phi_solve(l: usize, z1: &BitVector) -> BitVector {
    assert_eq!(z1.len(), l * l * l, "z1 must have L^3 entries");
    let mut phi = BitVector::zeros(l * l * l);
    for x in 0..l {
        for y in 0..l {
            for z in 0..l {
                let c = cube_index(l, x, y, z);
                let mut value = z1.get(c);
                for &(dx, dy, dz) in &QUBIT1_CUBES[1..] {
                    if x >= dx && y >= dy && z >= dz {
                        value ^= phi.get(cube_index(l, x - dx, y - dy, z - dz));
                    }
                }
                phi.set(c, value);
            }
        }
    }
    phi
}

/// Qubit values `z = A Φ` on all `2 (L+1)^3` qubits.
pub fn z_from_phi(l: usize, phi: &BitVector) -> BitVector {
    assert_eq!(phi.len(), l * l * l, "phi must have L^3 entries");
    let m = l + 1;
    let mut out = BitVector::zeros(2 * m * m * m);
    let cube = |x: usize, y: usize, z: usize, d: (usize, usize, usize)| -> bool {
        let (dx, dy, dz) = d;
        if x < dx || y < dy || z < dz {
            return false;
        }
        let (cx, cy, cz) = (x - dx, y - dy, z - dz);
        cx < l && cy < l && cz < l && phi.get(cube_index(l, cx, cy, cz))
    };
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                let b1 = QUBIT1_CUBES.iter().fold(false, |acc, &d| acc ^ cube(x, y, z, d));
                let b2 = QUBIT2_CUBES.iter().fold(false, |acc, &d| acc ^ cube(x, y, z, d));
                out.set(haah_qubit(l, x, y, z, 1), b1);
                out.set(haah_qubit(l, x, y, z, 2), b2);
            }
        }
    }
    out
}

/// Qubit-1 values on `[0, L)^3` implied by `Φ`.
pub fn z1_from_phi(l: usize, phi: &BitVector) -> BitVector {
    let z = z_from_phi(l, phi);
    let mut z1 = BitVector::zeros(l * l * l);
    for x in 0..l {
        for y in 0..l {
            for z_ in 0..l {
                z1.set(cube_index(l, x, y, z_), z.get(haah_qubit(l, x, y, z_, 1)));
            }
        }
    }
    z1
}

/// `M_S` for the canonical subset, column by column through `Φ`.
pub fn phi_reconstruction(l: usize) -> BitMatrix {
    let n = 2 * (l + 1).pow(3);
    let k = l * l * l;
    let mut m = BitMatrix::zeros(n, k);
    for j in 0..k {
        let mut e = BitVector::zeros(k);
        e.set(j, true);
        let z = z_from_phi(l, &phi_solve(l, &e));
        for q in z.support() {
            m.set(q, j, true);
        }
    }
    m
}

/// Members of the canonical subset that control `target` in the circuit.
pub fn controls_of(l: usize, target: usize) -> Vec<usize> {
    let s = canonical_subset(l);
    phi_reconstruction(l)
        .row_support(target)
        .into_iter()
        .map(|j| s[j])
        .collect()
}
