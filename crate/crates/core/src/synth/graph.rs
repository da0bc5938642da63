//! Loop closing on graph-like codes.
//!
//! With X generators as vertices and qubits as edges, `S` is a spanning
//! forest. The Z value of a non-tree edge is the sum of the tree edges on
//! the path between its endpoints, so that path is exactly the support of
//! its row of `M_S`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::select::graph_ends;
use super::{Gate, SubsetS, SynthError};
use crate::css::CssCode;

const NONE: usize = usize::MAX;

/// Gates of the loop-closing layer, or `None` if the code is not graph-like.
///
/// `s` must already satisfy the rank conditions (a spanning forest).
pub fn loop_closing_gates(code: &CssCode, s: &SubsetS) -> Result<Option<Vec<Gate>>, SynthError> {
    let Some(ends) = graph_ends(code) else {
        return Ok(None);
    };
    let n_vertices = code.x_supports().len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_vertices];
    for &e in s.as_slice() {
        let (u, v) = ends[e];
        adj[u].push((v, e));
        adj[v].push((u, e));
    }

    let mut parent = vec![NONE; n_vertices];
    let mut parent_edge = vec![NONE; n_vertices];
    let mut depth = vec![0usize; n_vertices];
    let mut component = vec![NONE; n_vertices];
    let mut queue = VecDeque::new();
    for root in 0..n_vertices {
        if component[root] != NONE {
            continue;
        }
        component[root] = root;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &adj[u] {
                if component[w] == NONE {
                    component[w] = root;
                    parent[w] = u;
                    parent_edge[w] = e;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    let plus = s.mask(code.n_qubits());
    let mut gates = Vec::new();
    for (target, &(mut u, mut v)) in ends.iter().enumerate() {
        if plus[target] {
            continue;
        }
        if component[u] != component[v] {
            return Err(SynthError::InvalidSubset(alloc::format!(
                "edge {target} joins two trees; S is not spanning"
            )));
        }
        while u != v {
            let step = if depth[u] >= depth[v] { &mut u } else { &mut v };
            gates.push(Gate {
                control: parent_edge[*step],
                target,
            });
            *step = parent[*step];
        }
    }
    gates.sort_unstable();
    Ok(Some(gates))
}
