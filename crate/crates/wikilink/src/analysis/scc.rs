//! Strongly connected components.

use std::collections::btree_set;

use crate::graph::{NodeId, PageGraph};
use crate::title::PageTitle;

/// SCC partition of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct SccResult {
    /// Disjoint components covering every node; members sorted by title.
    pub components: Vec<Vec<PageTitle>>,
    /// Cardinality of the largest component (0 for the empty graph).
    pub largest_size: usize,
    /// `largest_size / node_count`, 0 for the empty graph.
    pub largest_fraction: f64,
}

const UNVISITED: u32 = u32::MAX;

struct Frame<'a> {
    node: NodeId,
    neighbors: btree_set::Iter<'a, NodeId>,
}

/// Tarjan's algorithm with an explicit DFS stack.
///
/// Wiki graphs contain paths as long as the graph itself, so recursion depth
/// must not follow path length; the traversal state lives in a frame vector
/// on the heap instead of the call stack.
pub fn tarjan_scc(graph: &PageGraph) -> SccResult {
    let n = graph.node_count();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<NodeId> = Vec::new();
    let mut frames: Vec<Frame> = Vec::new();
    let mut next_index: u32 = 0;
    let mut components: Vec<Vec<PageTitle>> = Vec::new();

    for root in 0..n as NodeId {
        if index[root as usize] != UNVISITED {
            continue;
        }
        visit(root, &mut next_index, &mut index, &mut lowlink, &mut on_stack, &mut stack);
        frames.push(Frame {
            node: root,
            neighbors: graph.out_ids(root).iter(),
        });

        while let Some(frame) = frames.last_mut() {
            let v = frame.node;
            if let Some(&w) = frame.neighbors.next() {
                if index[w as usize] == UNVISITED {
                    visit(w, &mut next_index, &mut index, &mut lowlink, &mut on_stack, &mut stack);
                    frames.push(Frame {
                        node: w,
                        neighbors: graph.out_ids(w).iter(),
                    });
                } else if on_stack[w as usize] {
                    lowlink[v as usize] = lowlink[v as usize].min(index[w as usize]);
                }
            } else {
                frames.pop();
                if let Some(parent) = frames.last() {
                    let p = parent.node as usize;
                    lowlink[p] = lowlink[p].min(lowlink[v as usize]);
                }
                if lowlink[v as usize] == index[v as usize] {
                    let mut component = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w as usize] = false;
                        component.push(graph.title_of(w).clone());
                        if w == v {
                            break;
                        }
                    }
                    component.sort_unstable();
                    components.push(component);
                }
            }
        }
    }

    let largest_size = components.iter().map(Vec::len).max().unwrap_or(0);
    let largest_fraction = if n == 0 {
        0.0
    } else {
        largest_size as f64 / n as f64
    };
    SccResult {
        components,
        largest_size,
        largest_fraction,
    }
}

fn visit(
    node: NodeId,
    next_index: &mut u32,
    index: &mut [u32],
    lowlink: &mut [u32],
    on_stack: &mut [bool],
    stack: &mut Vec<NodeId>,
) {
    index[node as usize] = *next_index;
    lowlink[node as usize] = *next_index;
    *next_index += 1;
    stack.push(node);
    on_stack[node as usize] = true;
}
