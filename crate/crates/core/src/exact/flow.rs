//! Repair size for two-valued tables via maximum matching.
//!
//! With two values the violation graph is bipartite: high points below low
//! points. By König's theorem its minimum cover equals its maximum matching.
//! The matching is computed as a unit-capacity flow: source to every high
//! point, every low point to sink, and uncapacitated arcs along the oriented
//! neighbour pairs. A high point reaches a low point through those arcs
//! exactly when it lies below it, so by Menger's theorem the maximum flow is
//! the maximum number of disjoint violated pairs. This needs only the
//! `d · n^d` neighbour arcs rather than every comparable pair.

use std::collections::VecDeque;

use crate::hypergrid::{Direction, Orientation, TruthTable};

const UNBOUNDED: u32 = u32::MAX;

struct Network {
    first: Vec<usize>,
    next: Vec<usize>,
    to: Vec<u32>,
    cap: Vec<u32>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network { first: vec![usize::MAX; nodes], next: Vec::new(), to: Vec::new(), cap: Vec::new() }
    }

    fn add_arc(&mut self, a: usize, b: usize, cap: u32) {
        for (from, to, c) in [(a, b, cap), (b, a, 0)] {
            self.to.push(to as u32);
            self.cap.push(c);
            self.next.push(self.first[from]);
            self.first[from] = self.to.len() - 1;
        }
    }

    fn levels(&self, source: usize, sink: usize) -> Option<Vec<u32>> {
        let mut level = vec![u32::MAX; self.first.len()];
        level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let mut e = self.first[v];
            while e != usize::MAX {
                let u = self.to[e] as usize;
                if self.cap[e] > 0 && level[u] == u32::MAX {
                    level[u] = level[v] + 1;
                    queue.push_back(u);
                }
                e = self.next[e];
            }
        }
        (level[sink] != u32::MAX).then_some(level)
    }

    /// Pushes one unit along a shortest augmenting path, if any remains in
    /// the level graph. Iterative so deep grids cannot overflow the stack.
    fn augment(&mut self, source: usize, sink: usize, level: &[u32], cursor: &mut [usize]) -> bool {
        let mut path: Vec<usize> = Vec::new();
        let mut v = source;
        loop {
            if v == sink {
                for &e in &path {
                    if self.cap[e] != UNBOUNDED {
                        self.cap[e] -= 1;
                    }
                    if self.cap[e ^ 1] != UNBOUNDED {
                        self.cap[e ^ 1] += 1;
                    }
                }
                return true;
            }
            let mut advanced = false;
            while cursor[v] != usize::MAX {
                let e = cursor[v];
                let u = self.to[e] as usize;
                if self.cap[e] > 0 && level[u] == level[v] + 1 {
                    path.push(e);
                    v = u;
                    advanced = true;
                    break;
                }
                cursor[v] = self.next[e];
            }
            if !advanced {
                // Dead end: retreat and skip the arc that led here.
                match path.pop() {
                    None => return false,
                    Some(e) => {
                        v = self.to[e ^ 1] as usize;
                        cursor[v] = self.next[cursor[v]];
                    }
                }
            }
        }
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> usize {
        let mut flow = 0;
        while let Some(level) = self.levels(source, sink) {
            let mut cursor = self.first.clone();
            while self.augment(source, sink, &level, &mut cursor) {
                flow += 1;
            }
        }
        flow
    }
}

/// Minimum number of points to change so a table with at most two distinct
/// values becomes monotone under `orientation`.
pub(super) fn two_valued_repair_size(table: &TruthTable, orientation: &Orientation) -> usize {
    let distinct = table.distinct_values();
    assert!(distinct.len() <= 2, "two-valued path needs at most two values");
    if distinct.len() < 2 {
        return 0;
    }
    let high = distinct[1];
    let dom = table.domain();
    let n = dom.n() as usize;
    let size = table.len();
    let (source, sink) = (size, size + 1);
    let mut net = Network::new(size + 2);
    for (idx, v) in table.values().iter().enumerate() {
        if *v == high {
            net.add_arc(source, idx, 1);
        } else {
            net.add_arc(idx, sink, 1);
        }
    }
    for (dim, dir) in orientation.directions().iter().enumerate() {
        let stride = n.pow(dim as u32);
        for idx in 0..size {
            if (idx / stride) % n + 1 < n {
                match dir {
                    Direction::Up => net.add_arc(idx, idx + stride, UNBOUNDED),
                    Direction::Down => net.add_arc(idx + stride, idx, UNBOUNDED),
                }
            }
        }
    }
    net.max_flow(source, sink)
}
