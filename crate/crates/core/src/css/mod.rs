//! CSS stabilizer codes and the built-in lattice families.
//!
//! A code is stored by the supports of its generators: `x_supports[i]` lists
//! the qubits acted on by the `i`-th X-type generator, and likewise for Z.
//! Dense `BitMatrix` views (qubits as rows, generators as columns) are built
//! on demand.
//!
//! Qubit numbering per family:
//!
//! * GHZ: flat `0..n`.
//! * Toric (`L x L` torus): the edge leaving vertex `(x, y)` in the `+x`
//!   direction is `2 (x L + y)`, the one in the `+y` direction is `2 (x L + y) + 1`.
//!   Vertex stars and plaquettes are both numbered `x L + y`; plaquette
//!   `(x, y)` is the face with lower-left corner `(x, y)`.
//! * X-cube (`L x L x L` torus): the edge leaving `(x, y, z)` along axis
//!   `a ∈ {0, 1, 2}` is `3 ((x L + y) L + z) + a`. Cubes are numbered by their
//!   minimal corner; the cross of vertex `v` normal to axis `a` is `3 v + a`.
//! * Haah (open boundary, vertices `0..=L` per axis): qubit `i ∈ {1, 2}` at
//!   `(x, y, z)` is `2 ((x (L+1) + y) (L+1) + z) + (i - 1)`. Cubes are
//!   numbered `(x L + y) L + z` by minimal corner.

mod families;

use alloc::vec::Vec;

use thiserror::Error;

use crate::gf2::BitMatrix;

pub use families::{build_ghz, build_haah, build_toric, build_xcube};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("invalid size {size}: {family} needs at least {min}")]
    InvalidSize {
        family: &'static str,
        size: usize,
        min: usize,
    },
    #[error("X generator {x} and Z generator {z} anticommute")]
    CommutationViolation { x: usize, z: usize },
    #[error("{kind} generator {index} has an empty support")]
    EmptyGenerator { kind: char, index: usize },
    #[error("{kind} generator {index} references qubit {qubit}, but the code has {n_qubits}")]
    QubitOutOfRange {
        kind: char,
        index: usize,
        qubit: usize,
        n_qubits: usize,
    },
}

/// Which construction produced a code, with its size parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Ghz { n: usize },
    Toric { l: usize },
    XCube { l: usize },
    Haah { l: usize },
    Custom,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Ghz { .. } => "ghz",
            Family::Toric { .. } => "toric",
            Family::XCube { .. } => "xcube",
            Family::Haah { .. } => "haah",
            Family::Custom => "custom",
        }
    }

    /// The size parameter (`n` for GHZ, `L` for the lattices).
    pub fn size(&self) -> Option<usize> {
        match *self {
            Family::Ghz { n } => Some(n),
            Family::Toric { l } | Family::XCube { l } | Family::Haah { l } => Some(l),
            Family::Custom => None,
        }
    }

    /// Lattice coordinates of a flat qubit index.
    pub fn site(&self, qubit: usize) -> Site {
        match *self {
            Family::Ghz { .. } | Family::Custom => Site::Flat(qubit),
            Family::Toric { l } => {
                let v = qubit / 2;
                Site::Toric {
                    x: v / l,
                    y: v % l,
                    vertical: qubit % 2 == 1,
                }
            }
            Family::XCube { l } => {
                let v = qubit / 3;
                Site::XCube {
                    x: v / (l * l),
                    y: (v / l) % l,
                    z: v % l,
                    axis: (qubit % 3) as u8,
                }
            }
            Family::Haah { l } => {
                let m = l + 1;
                let v = qubit / 2;
                Site::Haah {
                    x: v / (m * m),
                    y: (v / m) % m,
                    z: v % m,
                    which: (qubit % 2 + 1) as u8,
                }
            }
        }
    }

    /// Flat qubit index of a lattice site, or `None` if the site does not
    /// belong to this family or lies outside the lattice.
    pub fn qubit(&self, site: Site) -> Option<usize> {
        match (*self, site) {
            (Family::Ghz { n }, Site::Flat(q)) => (q < n).then_some(q),
            (Family::Custom, Site::Flat(q)) => Some(q),
            (Family::Toric { l }, Site::Toric { x, y, vertical }) => {
                (x < l && y < l).then(|| toric_edge(l, x, y, vertical))
            }
            (Family::XCube { l }, Site::XCube { x, y, z, axis }) => {
                (x < l && y < l && z < l && axis < 3).then(|| xcube_edge(l, x, y, z, axis))
            }
            (Family::Haah { l }, Site::Haah { x, y, z, which }) => (x <= l
                && y <= l
                && z <= l
                && (which == 1 || which == 2))
                .then(|| haah_qubit(l, x, y, z, which)),
            _ => None,
        }
    }
}

/// Lattice coordinates of a qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Site {
    Flat(usize),
    Toric { x: usize, y: usize, vertical: bool },
    XCube { x: usize, y: usize, z: usize, axis: u8 },
    Haah { x: usize, y: usize, z: usize, which: u8 },
}

pub(crate) fn toric_edge(l: usize, x: usize, y: usize, vertical: bool) -> usize {
    2 * (x * l + y) + usize::from(vertical)
}

pub(crate) fn xcube_edge(l: usize, x: usize, y: usize, z: usize, axis: u8) -> usize {
    3 * ((x * l + y) * l + z) + axis as usize
}

pub(crate) fn haah_qubit(l: usize, x: usize, y: usize, z: usize, which: u8) -> usize {
    let m = l + 1;
    2 * ((x * m + y) * m + z) + (which as usize - 1)
}

/// A CSS code on `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssCode {
    n_qubits: usize,
    x_supports: Vec<Vec<usize>>,
    z_supports: Vec<Vec<usize>>,
    family: Family,
}

impl CssCode {
    /// Validates and builds a code. Supports are sorted and deduplicated.
    pub fn new(
        n_qubits: usize,
        x_supports: Vec<Vec<usize>>,
        z_supports: Vec<Vec<usize>>,
        family: Family,
    ) -> Result<Self, CodeError> {
        let x_supports = normalize('X', n_qubits, x_supports)?;
        let z_supports = normalize('Z', n_qubits, z_supports)?;
        check_commutation(n_qubits, &x_supports, &z_supports)?;
        Ok(Self {
            n_qubits,
            x_supports,
            z_supports,
            family,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn x_supports(&self) -> &[Vec<usize>] {
        &self.x_supports
    }

    pub fn z_supports(&self) -> &[Vec<usize>] {
        &self.z_supports
    }

    /// `n_qubits x |J_A|` matrix; column `i` is the support of X generator `i`.
    pub fn x_stabs(&self) -> BitMatrix {
        BitMatrix::from_column_supports(self.n_qubits, &self.x_supports)
    }

    /// `n_qubits x |J_B|` matrix; column `j` is the support of Z generator `j`.
    pub fn z_stabs(&self) -> BitMatrix {
        BitMatrix::from_column_supports(self.n_qubits, &self.z_supports)
    }

    /// For each qubit, the X generators containing it (the rows of `x_stabs`).
    pub fn x_incidence(&self) -> Vec<Vec<usize>> {
        incidence(self.n_qubits, &self.x_supports)
    }
}

fn normalize(
    kind: char,
    n_qubits: usize,
    supports: Vec<Vec<usize>>,
) -> Result<Vec<Vec<usize>>, CodeError> {
    supports
        .into_iter()
        .enumerate()
        .map(|(index, mut s)| {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(CodeError::EmptyGenerator { kind, index });
            }
            if let Some(&qubit) = s.last().filter(|&&q| q >= n_qubits) {
                return Err(CodeError::QubitOutOfRange {
                    kind,
                    index,
                    qubit,
                    n_qubits,
                });
            }
            Ok(s)
        })
        .collect()
}

pub(crate) fn incidence(n_qubits: usize, supports: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut inc = alloc::vec![Vec::new(); n_qubits];
    for (g, sup) in supports.iter().enumerate() {
        for &q in sup {
            inc[q].push(g);
        }
    }
    inc
}

/// Every X generator must overlap every Z generator on an even number of qubits.
fn check_commutation(
    n_qubits: usize,
    x_supports: &[Vec<usize>],
    z_supports: &[Vec<usize>],
) -> Result<(), CodeError> {
    let x_inc = incidence(n_qubits, x_supports);
    let z_inc = incidence(n_qubits, z_supports);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (xs, zs) in x_inc.iter().zip(&z_inc) {
        for &x in xs {
            pairs.extend(zs.iter().map(|&z| (x, z)));
        }
    }
    pairs.sort_unstable();
    let mut i = 0;
    while i < pairs.len() {
        let j = i + pairs[i..].iter().take_while(|&&p| p == pairs[i]).count();
        if (j - i) % 2 == 1 {
            let (x, z) = pairs[i];
            return Err(CodeError::CommutationViolation { x, z });
        }
        i = j;
    }
    Ok(())
}
