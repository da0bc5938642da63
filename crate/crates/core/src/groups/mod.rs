//! Finite groups given by multiplication tables, subnormal series with
//! abelian quotients, and the layered multiplication network of
//! [`network`].

pub mod network;

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use network::{depth_report, plan_network, DepthRow, MulNetwork, NodeKind};

/// Element id, an index into the multiplication table.
pub type Elem = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid size {0}")]
    InvalidSize(usize),
    #[error("table is not a valid group: {0}")]
    NotAGroup(&'static str),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(Elem, Elem, Elem),
    #[error("series step {0} is not a subgroup")]
    NotASubgroup(usize),
    #[error("series step {0} is not contained in the next")]
    NotNested(usize),
    #[error("series step {0} is not normal in step {next}", next = .0 + 1)]
    NotNormal(usize),
    #[error("quotient at series step {0} is not abelian")]
    NonAbelianQuotient(usize),
    #[error("series must start at the trivial group and end at the whole group")]
    BadEndpoints,
    #[error("expected {expected} elements, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("element {0} out of range")]
    ElementOutOfRange(Elem),
}

/// Exhaustive associativity checks stop at this order; above it triples are sampled.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;
const SAMPLED_TRIPLES: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inverse: Vec<Elem>,
}

impl FiniteGroup {
    /// Validates a Cayley table: closure, identity, inverses, associativity.
    pub fn from_table(rows: Vec<Vec<Elem>>) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::InvalidSize(0));
        }
        let mut table = Vec::with_capacity(order * order);
        for row in &rows {
            if row.len() != order {
                return Err(GroupError::NotAGroup("table is not square"));
            }
            if let Some(&e) = row.iter().find(|&&e| e as usize >= order) {
                return Err(GroupError::ElementOutOfRange(e));
            }
            table.extend_from_slice(row);
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e * order + g] as usize == g && table[g * order + e] as usize == g))
            .ok_or(GroupError::NotAGroup("no identity"))? as Elem;
        let mut inverse = vec![0; order];
        for g in 0..order {
            inverse[g] = (0..order)
                .find(|&h| table[g * order + h] == identity && table[h * order + g] == identity)
                .ok_or(GroupError::NotAGroup("missing inverse"))? as Elem;
        }
        let group = Self {
            order,
            table,
            identity,
            inverse,
        };
        group.check_associative()?;
        Ok(group)
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let n = self.order as Elem;
        let check = |a, b, c| {
            if self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)) {
                Ok(())
            } else {
                Err(GroupError::NotAssociative(a, b, c))
            }
        };
        if self.order <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                check(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    /// Left-to-right product of `seq`.
    pub fn fold(&self, seq: &[Elem]) -> Elem {
        seq.iter().fold(self.identity, |acc, &g| self.mul(acc, g))
    }

    pub fn table_rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.order).map(<[Elem]>::to_vec).collect()
    }
}

/// Quotient data for one step `N = G_{i-1} ⊴ G_i`, with `H = G_i / N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    /// `τ`: coset index for elements of `G_i`, `None` outside `G_i`.
    pub coset_of: Vec<Option<u32>>,
    /// `ψ`: the smallest element id of each coset.
    pub reps: Vec<Elem>,
    /// Multiplication of cosets.
    pub quotient_table: Vec<u32>,
    /// Coset of the identity.
    pub quotient_identity: u32,
}

impl Section {
    pub fn quotient_order(&self) -> usize {
        self.reps.len()
    }

    pub fn tau(&self, g: Elem) -> u32 {
        self.coset_of[g as usize].expect("element outside this series step")
    }

    pub fn psi(&self, h: u32) -> Elem {
        self.reps[h as usize]
    }

    pub fn quotient_mul(&self, a: u32, b: u32) -> u32 {
        self.quotient_table[a as usize * self.reps.len() + b as usize]
    }
}

/// `{e} = G_0 ⊆ G_1 ⊆ … ⊆ G_k = G` with `G_{i-1} ⊴ G_i` and abelian quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvableSeries {
    subgroups: Vec<Vec<Elem>>,
    sections: Vec<Section>,
}

impl SolvableSeries {
    /// Validates the series. A missing trivial group at the start or whole
    /// group at the end is added.
    pub fn new(group: &FiniteGroup, subgroups: Vec<Vec<Elem>>) -> Result<Self, GroupError> {
        let mut subgroups: Vec<Vec<Elem>> = subgroups
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        for s in &subgroups {
            if let Some(&e) = s.iter().find(|&&e| e as usize >= group.order()) {
                return Err(GroupError::ElementOutOfRange(e));
            }
        }
        let trivial = vec![group.identity()];
        let whole: Vec<Elem> = (0..group.order() as Elem).collect();
        if subgroups.first() != Some(&trivial) {
            subgroups.insert(0, trivial);
        }
        if subgroups.last() != Some(&whole) {
            subgroups.push(whole);
        }
        if subgroups.len() < 2 {
            // The trivial group: one step from {e} to itself.
            subgroups.push(subgroups[0].clone());
        }

        let mut member = vec![vec![false; group.order()]; subgroups.len()];
        for (i, s) in subgroups.iter().enumerate() {
            for &g in s {
                member[i][g as usize] = true;
            }
            let closed = s.iter().all(|&a| {
                member[i][group.inv(a) as usize]
                    && s.iter().all(|&b| member[i][group.mul(a, b) as usize])
            });
            if !closed || !member[i][group.identity() as usize] {
                return Err(GroupError::NotASubgroup(i));
            }
        }
        let mut sections = Vec::with_capacity(subgroups.len() - 1);
        for i in 0..subgroups.len() - 1 {
            let (inner, outer) = (&subgroups[i], &subgroups[i + 1]);
            if inner.iter().any(|&a| !member[i + 1][a as usize]) {
                return Err(GroupError::NotNested(i));
            }
            for &g in outer {
                for &a in inner {
                    let conj = group.mul(group.mul(g, a), group.inv(g));
                    if !member[i][conj as usize] {
                        return Err(GroupError::NotNormal(i));
                    }
                }
            }
            for &a in outer {
                for &b in outer {
                    let comm = group.mul(group.mul(a, b), group.mul(group.inv(a), group.inv(b)));
                    if !member[i][comm as usize] {
                        return Err(GroupError::NonAbelianQuotient(i));
                    }
                }
            }
            sections.push(make_section(group, inner, outer));
        }
        Ok(Self {
            subgroups,
            sections,
        })
    }

    /// Number of steps `k`.
    pub fn length(&self) -> usize {
        self.sections.len()
    }

    pub fn subgroups(&self) -> &[Vec<Elem>] {
        &self.subgroups
    }

    /// Quotient data for the step from `G_{i}` to `G_{i+1}`.
    pub fn section(&self, i: usize) -> &Section {
        &self.sections[i]
    }
}

fn make_section(group: &FiniteGroup, inner: &[Elem], outer: &[Elem]) -> Section {
    let mut coset_of = vec![None; group.order()];
    let mut reps = Vec::new();
    // `outer` is sorted, so the first unassigned element of each coset is its minimum.
    for &g in outer {
        if coset_of[g as usize].is_some() {
            continue;
        }
        let idx = reps.len() as u32;
        reps.push(g);
        for &a in inner {
            coset_of[group.mul(g, a) as usize] = Some(idx);
        }
    }
    let h = reps.len();
    let mut quotient_table = vec![0; h * h];
    for a in 0..h {
        for b in 0..h {
            let prod = group.mul(reps[a], reps[b]);
            quotient_table[a * h + b] = coset_of[prod as usize].expect("closed");
        }
    }
    let quotient_identity = coset_of[group.identity() as usize].expect("identity in subgroup");
    Section {
        coset_of,
        reps,
        quotient_table,
        quotient_identity,
    }
}

/// Dihedral group `D_n`: element `m^p r^k` has id `p n + k`, with `r^k m = m r^{-k}`.
/// Series `{e} ⊆ ⟨r⟩ ⊆ D_n`.
pub fn make_dihedral(n: usize) -> Result<(FiniteGroup, SolvableSeries), GroupError> {
    if n < 3 {
        return Err(GroupError::InvalidSize(n));
    }
    let id = |p: usize, k: usize| (p * n + k) as Elem;
    let mut rows = vec![vec![0; 2 * n]; 2 * n];
    for p in 0..2 {
        for k in 0..n {
            for q in 0..2 {
                for j in 0..n {
                    // (m^p r^k)(m^q r^j) = m^{p+q} r^{(-1)^q k + j}
                    let k_conj = if q == 1 { (n - k) % n } else { k };
                    rows[p * n + k][q * n + j] = id((p + q) % 2, (k_conj + j) % n);
                }
            }
        }
    }
    let group = FiniteGroup::from_table(rows)?;
    let rotations = (0..n as Elem).collect();
    let series = SolvableSeries::new(&group, vec![vec![group.identity()], rotations])?;
    Ok((group, series))
}

/// `Z_{a_1} × … × Z_{a_m}` in mixed radix, last factor fastest. Series `{e} ⊆ G`.
pub fn make_abelian(orders: &[usize]) -> Result<(FiniteGroup, SolvableSeries), GroupError> {
    if orders.is_empty() {
        return Err(GroupError::InvalidSize(0));
    }
    if let Some(&o) = orders.iter().find(|&&o| o < 2) {
        return Err(GroupError::InvalidSize(o));
    }
    let total: usize = orders.iter().product();
    let digits = |mut g: usize| {
        let mut d = vec![0; orders.len()];
        for (i, &o) in orders.iter().enumerate().rev() {
            d[i] = g % o;
            g /= o;
        }
        d
    };
    let rows = (0..total)
        .map(|a| {
            let da = digits(a);
            (0..total)
                .map(|b| {
                    let db = digits(b);
                    orders
                        .iter()
                        .enumerate()
                        .fold(0usize, |acc, (i, &o)| acc * o + (da[i] + db[i]) % o) as Elem
                })
                .collect()
        })
        .collect();
    let group = FiniteGroup::from_table(rows)?;
    let series = SolvableSeries::new(&group, vec![vec![group.identity()]])?;
    Ok((group, series))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_basics() {
        let (g, s) = make_dihedral(3).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(s.length(), 2);
        // (m r)(m r^2) = r
        assert_eq!(g.mul(4, 5), 1);
        assert!(make_dihedral(2).is_err());
        assert!(make_dihedral(8).is_ok());
    }

    #[test]
    fn dihedral_cocycle_is_trivial() {
        let (g, s) = make_dihedral(5).unwrap();
        let top = s.section(1);
        for a in 0..2 {
            for b in 0..2 {
                let chi = g.mul(
                    g.inv(top.psi(top.quotient_mul(a, b))),
                    g.mul(top.psi(a), top.psi(b)),
                );
                assert_eq!(chi, g.identity());
            }
        }
        // φ_m(r^k) = r^{-k}
        let m = top.psi(1);
        for k in 0..5u32 {
            assert_eq!(g.mul(g.mul(g.inv(m), k), m), (5 - k) % 5);
        }
    }

    #[test]
    fn abelian_products() {
        let (g, s) = make_abelian(&[2]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(s.length(), 1);
        let (g, s) = make_abelian(&[2, 4]).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(s.length(), 1);
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(g.mul(a, b), g.mul(b, a));
            }
        }
        assert!(make_abelian(&[1]).is_err());
    }

    #[test]
    fn bad_tables_and_series() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]]).is_err());
        let (g, _) = make_dihedral(3).unwrap();
        // ⟨m⟩ = {e, m} is not normal in D_3.
        assert_eq!(
            SolvableSeries::new(&g, vec![vec![0], vec![0, 3]]),
            Err(GroupError::NotNormal(1))
        );
        // The trivial-to-whole step of D_3 has a non-abelian quotient.
        assert_eq!(
            SolvableSeries::new(&g, vec![vec![0]]),
            Err(GroupError::NonAbelianQuotient(0))
        );
        assert_eq!(
            SolvableSeries::new(&g, vec![vec![0, 1]]),
            Err(GroupError::NotASubgroup(1))
        );
    }
}
