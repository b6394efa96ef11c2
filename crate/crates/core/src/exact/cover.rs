//! Exact minimum vertex cover by branch and bound.

/// Fixed-width bit set over the vertices of one search.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_count(&self, other: &Bits) -> usize {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    fn remove_all(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    k * 64 + bit
                })
            })
        })
    }
}

struct Search {
    adj: Vec<Bits>,
    best: usize,
}

impl Search {
    /// Greedy maximal matching on the live subgraph; a lower bound.
    fn matching_bound(&self, alive: &Bits) -> usize {
        let mut free = alive.clone();
        let mut size = 0;
        let live: Vec<usize> = alive.ones().collect();
        for v in live {
            if !free.get(v) {
                continue;
            }
            if let Some(u) = self.adj[v].and(&free).ones().next() {
                free.clear(u);
                free.clear(v);
                size += 1;
            }
        }
        size
    }

    fn run(&mut self, mut alive: Bits, mut taken: usize) {
        // Drop isolated vertices; a degree-1 vertex is covered by its neighbour.
        loop {
            let mut changed = false;
            let live: Vec<usize> = alive.ones().collect();
            for v in live {
                if !alive.get(v) {
                    continue;
                }
                let nb = self.adj[v].and(&alive);
                match nb.count() {
                    0 => {
                        alive.clear(v);
                        changed = true;
                    }
                    1 => {
                        let u = nb.ones().next().expect("one neighbour");
                        alive.clear(u);
                        alive.clear(v);
                        taken += 1;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed || taken >= self.best {
                break;
            }
        }
        if taken >= self.best {
            return;
        }
        if alive.is_empty() {
            self.best = taken;
            return;
        }
        if taken + self.matching_bound(&alive) >= self.best {
            return;
        }

        let v = alive
            .ones()
            .max_by_key(|&v| (self.adj[v].and_count(&alive), std::cmp::Reverse(v)))
            .expect("live vertex");
        let nb = self.adj[v].and(&alive);

        let mut with_v = alive.clone();
        with_v.clear(v);
        self.run(with_v, taken + 1);

        let mut without_v = alive;
        without_v.remove_all(&nb);
        without_v.clear(v);
        self.run(without_v, taken + nb.count());
    }
}

/// Size of a minimum vertex cover of the graph on `0..vertices` with the given
/// edges. Exponential in the worst case; connected components are solved
/// separately.
pub fn min_vertex_cover(vertices: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); vertices];
    for &(a, b) in edges {
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }

    let mut component = vec![usize::MAX; vertices];
    let mut total = 0;
    for root in 0..vertices {
        if component[root] != usize::MAX || adj[root].is_empty() {
            continue;
        }
        let mut members = vec![root];
        component[root] = root;
        let mut head = 0;
        while head < members.len() {
            let v = members[head];
            head += 1;
            for &u in &adj[v] {
                if component[u] == usize::MAX {
                    component[u] = root;
                    members.push(u);
                }
            }
        }
        members.sort_unstable();
        total += component_cover(&members, &adj);
    }
    total
}

fn component_cover(members: &[usize], adj: &[Vec<usize>]) -> usize {
    let local = |v: usize| members.binary_search(&v).expect("member of component");
    let k = members.len();
    let mut bits = vec![Bits::new(k); k];
    for (i, &v) in members.iter().enumerate() {
        for &u in &adj[v] {
            bits[i].set(local(u));
        }
    }
    let mut alive = Bits::new(k);
    for i in 0..k {
        alive.set(i);
    }
    let mut search = Search { adj: bits, best: k };
    search.run(alive, 0);
    search.best
}
