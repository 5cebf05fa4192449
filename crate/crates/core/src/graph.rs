//! Small directed-multigraph helpers: strongly connected components and
//! breadth-first paths over an edge list.

use std::collections::VecDeque;

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); n];
    for (id, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, id));
    }
    adj
}

/// Component id of every vertex (Tarjan's algorithm, iterative).
pub fn strongly_connected_components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let adj = adjacency(n, edges);
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, position in its adjacency list)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&(w, _)) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// Shortest path from `from` to `to` as a list of edge ids; empty when
/// `from == to`.
pub fn shortest_path(
    n: usize,
    edges: &[(usize, usize)],
    from: usize,
    to: usize,
) -> Option<Vec<usize>> {
    if from == to {
        return Some(Vec::new());
    }
    let adj = adjacency(n, edges);
    let mut via: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &(w, id) in &adj[v] {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            via[w] = Some(id);
            if w == to {
                let mut path = Vec::new();
                let mut cur = to;
                while cur != from {
                    let id = via[cur].expect("bfs predecessor");
                    path.push(id);
                    cur = edges[id].0;
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

/// An edge lying on a directed cycle whose `flag` is set, together with a
/// path closing the cycle. Returns the cycle as edge ids starting with the
/// flagged edge.
pub fn flagged_cycle(n: usize, edges: &[(usize, usize)], flags: &[bool]) -> Option<Vec<usize>> {
    let comp = strongly_connected_components(n, edges);
    let (id, &(u, v)) = edges
        .iter()
        .enumerate()
        .find(|&(id, &(u, v))| flags[id] && comp[u] == comp[v])?;
    let mut cycle = vec![id];
    cycle.extend(shortest_path(n, edges, v, u).expect("same component implies a path"));
    Some(cycle)
}
