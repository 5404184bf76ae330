//! Strongly connected components and shortest paths on implicit graphs.

use std::collections::VecDeque;

/// Tarjan's algorithm without recursion. Components are numbered in
/// reverse topological order: every edge goes from a component to one
/// with an equal or smaller number.
pub(crate) fn scc(n: usize, succ: &dyn Fn(usize, &mut Vec<usize>)) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut ncomp = 0;
    let mut buf = Vec::new();
    // frames: (node, successors, position)
    let mut frames: Vec<(usize, Vec<usize>, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        buf.clear();
        succ(root, &mut buf);
        frames.push((root, buf.clone(), 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    buf.clear();
                    succ(w, &mut buf);
                    frames.push((w, buf.clone(), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(parent) = frames.last() {
                    low[parent.0] = low[parent.0].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("stack");
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    (comp, ncomp)
}

/// Shortest path (as a node list, both ends included) from `from` to any
/// node satisfying `goal`, moving only through nodes accepted by `allow`.
/// Requires at least one step when `nonempty` is set, so `from` itself only
/// counts when it is reached again.
pub(crate) fn bfs_path(
    n: usize,
    succ: &dyn Fn(usize, &mut Vec<usize>),
    from: usize,
    allow: &dyn Fn(usize) -> bool,
    goal: &dyn Fn(usize) -> bool,
    nonempty: bool,
) -> Option<Vec<usize>> {
    if !nonempty && goal(from) {
        return Some(vec![from]);
    }
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    let mut buf = Vec::new();
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        buf.clear();
        succ(v, &mut buf);
        for &w in &buf {
            if !allow(w) {
                continue;
            }
            if goal(w) {
                let mut path = vec![w];
                let mut c = v;
                loop {
                    path.push(c);
                    if c == from {
                        break;
                    }
                    c = prev[c];
                }
                path.reverse();
                return Some(path);
            }
            if !seen[w] && w != from {
                seen[w] = true;
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}
