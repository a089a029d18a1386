//! Maximum-cardinality matching in general graphs (Edmonds' blossom algorithm).

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

/// `mate[v]` is the partner of `v` in a maximum matching, or `None`.
pub fn maximum_matching(n: usize, edges: &[(usize, usize)]) -> Vec<Option<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u != v {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut s = Search {
        adj,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    // Greedy start, then augment from every exposed vertex.
    for v in 0..n {
        if s.mate[v] == NONE {
            if let Some(&w) = s.adj[v].iter().find(|&&w| s.mate[w] == NONE) {
                s.mate[v] = w;
                s.mate[w] = v;
            }
        }
    }
    for root in 0..n {
        if s.mate[root] == NONE {
            if let Some(end) = s.find_path(root) {
                s.augment(end);
            }
        }
    }
    s.mate.iter().map(|&m| (m != NONE).then_some(m)).collect()
}

struct Search {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Search {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.mate.len();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for k in 0..self.adj[v].len() {
                let to = self.adj[v][k];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn brute_force(n: usize, edges: &[(usize, usize)]) -> usize {
        fn go(i: usize, edges: &[(usize, usize)], used: &mut [bool]) -> usize {
            if i == edges.len() {
                return 0;
            }
            let mut best = go(i + 1, edges, used);
            let (u, v) = edges[i];
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                best = best.max(1 + go(i + 1, edges, used));
                used[u] = false;
                used[v] = false;
            }
            best
        }
        go(0, edges, &mut vec![false; n])
    }

    fn size_of(mate: &[Option<usize>]) -> usize {
        mate.iter().filter(|m| m.is_some()).count() / 2
    }

    #[test]
    fn odd_cycle_and_flower() {
        let c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        assert_eq!(size_of(&maximum_matching(5, &c5)), 2);
        // Triangle with a tail on each corner needs blossom handling.
        let flower = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)];
        assert_eq!(size_of(&maximum_matching(6, &flower)), 3);
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..400 {
            let n = rng.random_range(1..=9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let mate = maximum_matching(n, &edges);
            for (v, m) in mate.iter().enumerate() {
                if let Some(w) = *m {
                    assert_eq!(mate[w], Some(v));
                    assert!(edges.contains(&(v.min(w), v.max(w))));
                }
            }
            assert_eq!(size_of(&mate), brute_force(n, &edges));
        }
    }
}
