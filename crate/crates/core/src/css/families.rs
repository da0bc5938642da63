use alloc::vec;
use alloc::vec::Vec;

use super::{haah_qubit, toric_edge, xcube_edge, CodeError, CssCode, Family};

fn check_size(family: &'static str, size: usize, min: usize) -> Result<(), CodeError> {
    if size < min {
        Err(CodeError::InvalidSize { family, size, min })
    } else {
        Ok(())
    }
}

/// GHZ state code: one X generator `X_0 ⋯ X_{n-1}` and Z generators `Z_0 Z_i`.
pub fn build_ghz(n: usize) -> Result<CssCode, CodeError> {
    check_size("ghz", n, 2)?;
    let x = vec![(0..n).collect()];
    let z = (1..n).map(|i| vec![0, i]).collect();
    CssCode::new(n, x, z, Family::Ghz { n })
}

/// Toric code on the edges of an `L x L` torus.
pub fn build_toric(l: usize) -> Result<CssCode, CodeError> {
    check_size("toric", l, 2)?;
    let prev = |a: usize| (a + l - 1) % l;
    let next = |a: usize| (a + 1) % l;
    let mut stars = Vec::with_capacity(l * l);
    let mut plaquettes = Vec::with_capacity(l * l);
    for x in 0..l {
        for y in 0..l {
            stars.push(vec![
                toric_edge(l, x, y, false),
                toric_edge(l, prev(x), y, false),
                toric_edge(l, x, y, true),
                toric_edge(l, x, prev(y), true),
            ]);
            plaquettes.push(vec![
                toric_edge(l, x, y, false),
                toric_edge(l, x, next(y), false),
                toric_edge(l, x, y, true),
                toric_edge(l, next(x), y, true),
            ]);
        }
    }
    CssCode::new(2 * l * l, stars, plaquettes, Family::Toric { l })
}

/// X-cube model on the edges of an `L x L x L` torus.
///
/// X-type generators are the twelve-edge cube operators; Z-type generators
/// are the four-edge vertex crosses, one per vertex and normal axis.
pub fn build_xcube(l: usize) -> Result<CssCode, CodeError> {
    check_size("xcube", l, 2)?;
    let w = |a: usize, d: usize| (a + d) % l;
    let back = |a: usize| (a + l - 1) % l;
    let mut cubes = Vec::with_capacity(l * l * l);
    let mut crosses = Vec::with_capacity(3 * l * l * l);
    for x in 0..l {
        for y in 0..l {
            for z in 0..l {
                let mut cube = Vec::with_capacity(12);
                for a in 0..2 {
                    for b in 0..2 {
                        cube.push(xcube_edge(l, x, w(y, a), w(z, b), 0));
                        cube.push(xcube_edge(l, w(x, a), y, w(z, b), 1));
                        cube.push(xcube_edge(l, w(x, a), w(y, b), z, 2));
                    }
                }
                cubes.push(cube);
            }
        }
    }
    for x in 0..l {
        for y in 0..l {
            for z in 0..l {
                // Normal to x: the y and z edges at the vertex.
                crosses.push(vec![
                    xcube_edge(l, x, y, z, 1),
                    xcube_edge(l, x, back(y), z, 1),
                    xcube_edge(l, x, y, z, 2),
                    xcube_edge(l, x, y, back(z), 2),
                ]);
                crosses.push(vec![
                    xcube_edge(l, x, y, z, 0),
                    xcube_edge(l, back(x), y, z, 0),
                    xcube_edge(l, x, y, z, 2),
                    xcube_edge(l, x, y, back(z), 2),
                ]);
                crosses.push(vec![
                    xcube_edge(l, x, y, z, 0),
                    xcube_edge(l, back(x), y, z, 0),
                    xcube_edge(l, x, y, z, 1),
                    xcube_edge(l, x, back(y), z, 1),
                ]);
            }
        }
    }
    CssCode::new(3 * l * l * l, cubes, crosses, Family::XCube { l })
}

/// A cube corner offset and the qubits (1 and/or 2) at that corner.
pub(crate) type CornerQubits = ((usize, usize, usize), &'static [u8]);

/// Corner offsets of a cube paired with the qubits (1 and/or 2) of that
/// corner acted on by the X-type cube generator.
pub(crate) const HAAH_X_PATTERN: [CornerQubits; 7] = [
    ((0, 0, 0), &[1, 2]),
    ((1, 0, 0), &[2]),
    ((0, 1, 0), &[2]),
    ((0, 0, 1), &[2]),
    ((1, 1, 0), &[1]),
    ((1, 0, 1), &[1]),
    ((0, 1, 1), &[1]),
];

const HAAH_Z_PATTERN: [CornerQubits; 7] = [
    ((1, 0, 0), &[2]),
    ((0, 1, 0), &[2]),
    ((0, 0, 1), &[2]),
    ((1, 1, 0), &[1]),
    ((1, 0, 1), &[1]),
    ((0, 1, 1), &[1]),
    ((1, 1, 1), &[1, 2]),
];

/// Haah's cubic code on `L x L x L` cubes with open boundaries, `2 (L+1)^3` qubits.
pub fn build_haah(l: usize) -> Result<CssCode, CodeError> {
    check_size("haah", l, 1)?;
    let n = 2 * (l + 1).pow(3);
    let cube_support = |pattern: &[CornerQubits], x, y, z| {
        let mut s = Vec::with_capacity(8);
        for &((dx, dy, dz), which) in pattern {
            for &i in which {
                s.push(haah_qubit(l, x + dx, y + dy, z + dz, i));
            }
        }
        s
    };
    let mut xs = Vec::with_capacity(l * l * l);
    let mut zs = Vec::with_capacity(l * l * l);
    for x in 0..l {
        for y in 0..l {
            for z in 0..l {
                xs.push(cube_support(&HAAH_X_PATTERN, x, y, z));
                zs.push(cube_support(&HAAH_Z_PATTERN, x, y, z));
            }
        }
    }
    CssCode::new(n, xs, zs, Family::Haah { l })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::css::Site;

    #[test]
    fn ghz_generators() {
        let c = build_ghz(3).unwrap();
        assert_eq!(c.x_supports(), &[vec![0, 1, 2]]);
        assert_eq!(c.z_supports(), &[vec![0, 1], vec![0, 2]]);
        assert_eq!(build_ghz(2).unwrap().z_supports(), &[vec![0, 1]]);
        assert!(build_ghz(7).is_ok());
        assert!(matches!(build_ghz(1), Err(CodeError::InvalidSize { .. })));
    }

    #[test]
    fn toric_shape() {
        let c = build_toric(2).unwrap();
        assert_eq!(c.n_qubits(), 8);
        assert_eq!(c.x_supports().len(), 4);
        assert_eq!(c.x_stabs().rank(), 3);
        assert_eq!(c.z_stabs().rank(), 3);
        for l in 2..6 {
            let c = build_toric(l).unwrap();
            assert!(c.x_supports().iter().all(|s| s.len() == 4));
            assert!(c.z_supports().iter().all(|s| s.len() == 4));
            assert_eq!(c.x_stabs().rank(), l * l - 1);
            assert_eq!(c.z_stabs().rank(), l * l - 1);
        }
        assert!(build_toric(1).is_err());
    }

    #[test]
    fn xcube_shape() {
        let c = build_xcube(2).unwrap();
        assert_eq!(c.n_qubits(), 24);
        assert_eq!(c.x_supports().len(), 8);
        assert!(c.x_supports().iter().all(|s| s.len() == 12));
        assert!(c.z_supports().iter().all(|s| s.len() == 4));
        let c3 = build_xcube(3).unwrap();
        assert!(c3.x_supports().iter().all(|s| s.len() == 12));
        assert_eq!(c3.z_supports().len(), 81);
    }

    #[test]
    fn xcube_rank_has_plane_relations() {
        // One relation per slab of cubes (3L); the x, y and z slabs each sum
        // to the product of all cubes, leaving 3L - 2 independent ones.
        for l in 2..5 {
            let c = build_xcube(l).unwrap();
            assert_eq!(c.x_stabs().rank(), l * l * l - 3 * l + 2);
        }
    }

    #[test]
    fn haah_shape() {
        let c = build_haah(1).unwrap();
        assert_eq!(c.n_qubits(), 16);
        assert_eq!(c.x_supports().len(), 1);
        assert_eq!(c.x_supports()[0].len(), 8);
        assert_eq!(c.z_supports()[0].len(), 8);
        assert_eq!(build_haah(3).unwrap().n_qubits(), 128);
        assert!(build_haah(2).is_ok());
        assert!(build_haah(0).is_err());
    }

    #[test]
    fn haah_open_boundary_generators_are_independent() {
        for l in 1..=4 {
            assert_eq!(build_haah(l).unwrap().x_stabs().rank(), l * l * l);
        }
    }

    #[test]
    fn lattice_index_round_trips() {
        let families = [
            Family::Ghz { n: 5 },
            Family::Toric { l: 3 },
            Family::XCube { l: 3 },
            Family::Haah { l: 2 },
        ];
        let sizes = [5, 18, 81, 54];
        for (f, n) in families.iter().zip(sizes) {
            for q in 0..n {
                assert_eq!(f.qubit(f.site(q)), Some(q), "{f:?} qubit {q}");
            }
        }
        let t = Family::Toric { l: 4 };
        assert_eq!(
            t.site(2 * (4 + 2) + 1),
            Site::Toric { x: 1, y: 2, vertical: true }
        );
        assert_eq!(t.qubit(Site::Toric { x: 4, y: 0, vertical: false }), None);
    }
}
