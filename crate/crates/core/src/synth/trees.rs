//! Family-specific choices of the `|+⟩` subset.

use alloc::vec::Vec;

use crate::css::{toric_edge, xcube_edge};

/// Comb tree on the `L x L` torus: every horizontal edge and the `x = 0`
/// vertical column, with the wrap-around edge of each row and of the column
/// removed to break the torus cycles. `L^2 - 1` edges.
pub fn comb_tree(l: usize) -> Vec<usize> {
    let mut edges = Vec::with_capacity(l * l - 1);
    for y in 0..l {
        for x in 0..l - 1 {
            edges.push(toric_edge(l, x, y, false));
        }
    }
    for y in 0..l - 1 {
        edges.push(toric_edge(l, 0, y, true));
    }
    edges
}

type Point = (usize, usize);

/// Self-similar spanning tree of an `L x L` block, `L` a power of two.
///
/// The tree on a `2h x 2h` block is four copies of the `h x h` tree, one per
/// quadrant, each mirrored so that its own `(0, 0)` corner lands on the
/// central plaquette. The copies are then joined by three of the four edges
/// around that plaquette: bottom-left to bottom-right, bottom-left to
/// top-left, and top-left to top-right.
fn recursive_block(l: usize) -> Vec<(Point, Point)> {
    let mut tree: Vec<(Point, Point)> = Vec::new();
    let mut h = 1;
    while h < l {
        let mut next = Vec::with_capacity(4 * tree.len() + 3);
        for (qx, qy) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let place = |(x, y): Point| -> Point {
                let px = if qx == 0 { h - 1 - x } else { h + x };
                let py = if qy == 0 { h - 1 - y } else { h + y };
                (px, py)
            };
            next.extend(tree.iter().map(|&(a, b)| (place(a), place(b))));
        }
        let (bl, br, tl, tr) = ((h - 1, h - 1), (h, h - 1), (h - 1, h), (h, h));
        next.extend([(bl, br), (bl, tl), (tl, tr)]);
        tree = next;
        h *= 2;
    }
    tree
}

/// The recursive tree's edges as toric-code qubits. `l` must be a power of two.
pub fn recursive_tree(l: usize) -> Vec<usize> {
    assert!(l.is_power_of_two(), "recursive tree needs a power of two");
    recursive_block(l)
        .into_iter()
        .map(|(a, b)| {
            let ((x0, y0), (x1, y1)) = if a <= b { (a, b) } else { (b, a) };
            debug_assert_eq!(x1 - x0 + y1 - y0, 1);
            toric_edge(l, x0, y0, x1 == x0)
        })
        .collect()
}

/// Preferred `|+⟩` candidates for the X-cube model, in admission order: all
/// vertical (`z`) edges, then in every horizontal layer the `x` edges leaving
/// the `x = 0` plane and the `y` edges leaving the `y = 0` plane.
pub fn xcube_candidates(l: usize) -> Vec<usize> {
    let mut c = Vec::with_capacity(l * l * l + 2 * l * l);
    for x in 0..l {
        for y in 0..l {
            for z in 0..l {
                c.push(xcube_edge(l, x, y, z, 2));
            }
        }
    }
    for z in 0..l {
        for y in 0..l {
            c.push(xcube_edge(l, 0, y, z, 0));
        }
        for x in 0..l {
            c.push(xcube_edge(l, x, 0, z, 1));
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_tree_has_spanning_size() {
        for k in 0..6 {
            let l = 1 << k;
            let t = recursive_block(l);
            assert_eq!(t.len(), l * l - 1);
            for ((x0, y0), (x1, y1)) in t {
                assert!(x0 < l && x1 < l && y0 < l && y1 < l);
                assert_eq!(x0.abs_diff(x1) + y0.abs_diff(y1), 1);
            }
        }
    }

    #[test]
    fn comb_size() {
        for l in 2..7 {
            assert_eq!(comb_tree(l).len(), l * l - 1);
        }
    }
}
