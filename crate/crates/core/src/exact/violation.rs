use super::cover::min_vertex_cover;
use crate::error::{Error, Result};
use crate::hypergrid::{Direction, Domain, Orientation, TruthTable};

/// Largest domain the explicit graph is built for (quadratic in the size).
const GRAPH_CAP: usize = 4096;

/// Comparable pairs whose values contradict the orientation.
///
/// Vertices are the table indices `0..n^d`. An edge `(a, b)` means `a`
/// precedes `b` under the orientation (coordinate-wise, after flipping down
/// dimensions) and `f(a) > f(b)`.
#[derive(Clone, Debug)]
pub struct ViolationGraph {
    domain: Domain,
    edges: Vec<(usize, usize)>,
}

impl ViolationGraph {
    pub fn build(table: &TruthTable, orientation: &Orientation) -> Result<Self> {
        let dom = table.domain();
        if !orientation.covers(dom.d()) {
            return Err(Error::arg("orientation must cover every dimension"));
        }
        if table.len() > GRAPH_CAP {
            return Err(Error::Capacity {
                what: "violation graph",
                size: table.len() as u128,
                cap: GRAPH_CAP as u128,
            });
        }
        let points: Vec<_> = dom.points()?.collect();
        let dirs = orientation.directions();
        let precedes = |a: &[u32], b: &[u32]| {
            a.iter().zip(b).zip(dirs).all(|((&x, &y), dir)| match dir {
                Direction::Up => x <= y,
                Direction::Down => x >= y,
            })
        };
        let vals = table.values();
        let mut edges = Vec::new();
        for (a, pa) in points.iter().enumerate() {
            for (b, pb) in points.iter().enumerate() {
                if a != b && vals[a] > vals[b] && precedes(pa.coords(), pb.coords()) {
                    edges.push((a, b));
                }
            }
        }
        Ok(ViolationGraph { domain: dom, edges })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn vertex_count(&self) -> usize {
        self.domain.size().expect("built from a table")
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Size of a maximal matching built greedily in edge order. Any matching
    /// is a lower bound on every vertex cover.
    pub fn greedy_matching(&self) -> usize {
        let mut used = vec![false; self.vertex_count()];
        let mut size = 0;
        for &(a, b) in &self.edges {
            if !used[a] && !used[b] {
                used[a] = true;
                used[b] = true;
                size += 1;
            }
        }
        size
    }

    pub fn min_vertex_cover(&self) -> usize {
        min_vertex_cover(self.vertex_count(), &self.edges)
    }
}
