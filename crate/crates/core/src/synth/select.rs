use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::trees::{comb_tree, recursive_tree, xcube_candidates};
use super::{Strategy, SubsetS, SynthError};
use crate::css::{incidence, CssCode, Family};
use crate::gf2::{BitMatrix, RowEchelon};

/// Independence of rows of `A`.
///
/// When every qubit sits in exactly two X generators, row independence is
/// acyclicity in the generator graph and a union-find answers it; otherwise
/// rows are reduced against an echelon basis.
enum RowMatroid {
    Graphic {
        ends: Vec<(usize, usize)>,
        forest: UnionFind,
    },
    Linear {
        a: BitMatrix,
        basis: RowEchelon,
    },
}

impl RowMatroid {
    fn new(code: &CssCode) -> Self {
        match graph_ends(code) {
            Some(ends) => RowMatroid::Graphic {
                ends,
                forest: UnionFind::new(code.x_supports().len()),
            },
            None => {
                let a = code.x_stabs();
                let basis = RowEchelon::new(a.cols());
                RowMatroid::Linear { a, basis }
            }
        }
    }

    fn insert(&mut self, qubit: usize) -> bool {
        match self {
            RowMatroid::Graphic { ends, forest } => {
                let (u, v) = ends[qubit];
                forest.union(u, v)
            }
            RowMatroid::Linear { a, basis } => basis.insert(a.row_words(qubit)),
        }
    }
}

/// Endpoints of every qubit when the code's X generators form a graph.
pub(crate) fn graph_ends(code: &CssCode) -> Option<Vec<(usize, usize)>> {
    incidence(code.n_qubits(), code.x_supports())
        .into_iter()
        .map(|gens| match gens.as_slice() {
            &[u, v] => Some((u, v)),
            _ => None,
        })
        .collect()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they were already one.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// `rank(A)`, the dimension of the space of Z-basis configurations in the
/// ground-state superposition.
pub fn x_rank(code: &CssCode) -> usize {
    let mut m = RowMatroid::new(code);
    (0..code.n_qubits()).filter(|&q| m.insert(q)).count()
}

/// Checks `|S| = rank(π_S A) = rank(A)`.
pub fn check_subset(code: &CssCode, s: &SubsetS) -> Result<(), SynthError> {
    if let Some(&q) = s.as_slice().iter().find(|&&q| q >= code.n_qubits()) {
        return Err(SynthError::InvalidSubset(format!("qubit {q} out of range")));
    }
    let mut m = RowMatroid::new(code);
    if let Some(&q) = s.as_slice().iter().find(|&&q| !m.insert(q)) {
        return Err(SynthError::InvalidSubset(format!(
            "qubit {q} is determined by earlier members (rank(π_S A) < |S|)"
        )));
    }
    let rank = x_rank(code);
    if s.len() != rank {
        return Err(SynthError::InvalidSubset(format!(
            "|S| = {} but rank(A) = {rank}",
            s.len()
        )));
    }
    Ok(())
}

/// Grows `S` one qubit at a time, admitting a candidate only when it keeps
/// `rank(π_S A) = |S|`, until `|S| = rank(A)`.
///
/// `seed = None` scans qubits in index order; otherwise candidates are drawn
/// in a seeded random order. A rejected candidate stays dependent as `S`
/// grows, so a single pass over a permutation is equivalent to redrawing.
pub fn greedy_select(code: &CssCode, seed: Option<u64>) -> Result<SubsetS, SynthError> {
    let mut order: Vec<usize> = (0..code.n_qubits()).collect();
    if let Some(seed) = seed {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    extend_greedily(code, &order, &[])
}

/// Admits `preferred` candidates first, then `fallback`, keeping the rank condition.
fn extend_greedily(
    code: &CssCode,
    preferred: &[usize],
    fallback: &[usize],
) -> Result<SubsetS, SynthError> {
    let rank = x_rank(code);
    let mut m = RowMatroid::new(code);
    let mut s = Vec::with_capacity(rank);
    for &q in preferred.iter().chain(fallback) {
        if s.len() == rank {
            break;
        }
        if m.insert(q) {
            s.push(q);
        }
    }
    if s.len() < rank {
        return Err(SynthError::InternalInvariantViolation {
            selected: s.len(),
            rank,
        });
    }
    Ok(SubsetS::new(s))
}

fn incompatible(strategy: &Strategy, code: &CssCode) -> SynthError {
    SynthError::IncompatibleStrategy {
        strategy: strategy.name(),
        family: code.family().name(),
    }
}

/// Builds `S` for `strategy`, checking it against the code's family.
pub fn tree_select(code: &CssCode, strategy: &Strategy) -> Result<SubsetS, SynthError> {
    let family = code.family();
    match (strategy, family) {
        (Strategy::Greedy { seed }, _) => greedy_select(code, *seed),
        (Strategy::ToricComb, Family::Toric { l }) => {
            let s = SubsetS::new(comb_tree(l));
            check_subset(code, &s)?;
            Ok(s)
        }
        (Strategy::ToricRecursive, Family::Toric { l }) => {
            if !l.is_power_of_two() {
                return Err(SynthError::SizeNotPowerOfTwo(l));
            }
            let s = SubsetS::new(recursive_tree(l));
            check_subset(code, &s)?;
            Ok(s)
        }
        (Strategy::XCubeDualTrees, Family::XCube { l }) => {
            let preferred = xcube_candidates(l);
            let rest: Vec<usize> = (0..code.n_qubits()).collect();
            extend_greedily(code, &preferred, &rest)
        }
        (Strategy::HaahCanonical, Family::Haah { l }) => {
            let s = SubsetS::new(super::haah::canonical_subset(l));
            check_subset(code, &s)?;
            Ok(s)
        }
        (Strategy::Explicit(qubits), _) => {
            let s = SubsetS::new(qubits.clone());
            if s.len() != qubits.len() {
                return Err(SynthError::InvalidSubset("repeated qubit".into()));
            }
            check_subset(code, &s)?;
            Ok(s)
        }
        _ => Err(incompatible(strategy, code)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::css::{build_ghz, build_haah, build_toric, build_xcube};
    use alloc::vec;

    #[test]
    fn greedy_on_ghz_picks_first_qubit() {
        let code = build_ghz(4).unwrap();
        assert_eq!(greedy_select(&code, None).unwrap().as_slice(), &[0]);
    }

    #[test]
    fn greedy_on_toric_meets_rank_conditions() {
        let code = build_toric(2).unwrap();
        let s = greedy_select(&code, None).unwrap();
        assert_eq!(s.len(), 3);
        let a = code.x_stabs();
        assert_eq!(a.select_rows(s.as_slice()).rank(), 3);
        assert_eq!(a.rank(), 3);
    }

    #[test]
    fn graphic_and_linear_ranks_agree() {
        for l in 2..6 {
            let code = build_toric(l).unwrap();
            assert_eq!(x_rank(&code), code.x_stabs().rank());
        }
        let code = build_xcube(3).unwrap();
        assert_eq!(x_rank(&code), code.x_stabs().rank());
    }

    #[test]
    fn family_strategies() {
        let t2 = build_toric(2).unwrap();
        assert_eq!(tree_select(&t2, &Strategy::ToricComb).unwrap().len(), 3);
        assert_eq!(tree_select(&t2, &Strategy::ToricRecursive).unwrap().len(), 3);
        let t3 = build_toric(3).unwrap();
        assert_eq!(
            tree_select(&t3, &Strategy::ToricRecursive),
            Err(SynthError::SizeNotPowerOfTwo(3))
        );
        let h2 = build_haah(2).unwrap();
        assert_eq!(tree_select(&h2, &Strategy::HaahCanonical).unwrap().len(), 8);
        assert!(matches!(
            tree_select(&h2, &Strategy::ToricComb),
            Err(SynthError::IncompatibleStrategy { .. })
        ));
        let x2 = build_xcube(2).unwrap();
        let s = tree_select(&x2, &Strategy::XCubeDualTrees).unwrap();
        assert_eq!(s.len(), x_rank(&x2));
    }

    #[test]
    fn explicit_subset_is_checked() {
        let code = build_ghz(3).unwrap();
        assert!(tree_select(&code, &Strategy::Explicit(vec![2])).is_ok());
        assert!(tree_select(&code, &Strategy::Explicit(vec![0, 1])).is_err());
        assert!(tree_select(&code, &Strategy::Explicit(vec![1, 1])).is_err());
    }
}
