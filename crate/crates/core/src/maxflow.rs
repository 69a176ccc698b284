//! Maximum flow by highest-label push-relabel with gap relabeling and
//! periodic global relabeling.
//!
//! The network is stored in compressed sparse rows with paired arcs, so an
//! undirected edge of weight `w` is a pair of opposite arcs each of capacity
//! `w`.

use std::collections::VecDeque;

#[derive(Debug, Clone, Default)]
pub struct NetworkBuilder {
    n: usize,
    edges: Vec<(u32, u32, i64, i64)>,
}

impl NetworkBuilder {
    pub fn new(n: usize) -> Self {
        Self { n, edges: Vec::new() }
    }

    /// Adds arc `u -> v` with capacity `cap` and its reverse with `rev_cap`.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: i64, rev_cap: i64) {
        debug_assert!(u < self.n && v < self.n && u != v);
        debug_assert!(cap >= 0 && rev_cap >= 0);
        self.edges.push((u as u32, v as u32, cap, rev_cap));
    }

    pub fn add_undirected(&mut self, u: usize, v: usize, w: i64) {
        self.add_edge(u, v, w, w);
    }

    pub fn build(self) -> FlowNetwork {
        let n = self.n;
        let mut start = vec![0usize; n + 1];
        for &(u, v, _, _) in &self.edges {
            start[u as usize + 1] += 1;
            start[v as usize + 1] += 1;
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let m = start[n];
        let mut fill = start.clone();
        let mut to = vec![0u32; m];
        let mut rev = vec![0u32; m];
        let mut cap = vec![0i64; m];
        for &(u, v, c, rc) in &self.edges {
            let (ui, vi) = (u as usize, v as usize);
            let (eu, ev) = (fill[ui], fill[vi]);
            fill[ui] += 1;
            fill[vi] += 1;
            to[eu] = v;
            rev[eu] = ev as u32;
            cap[eu] = c;
            to[ev] = u;
            rev[ev] = eu as u32;
            cap[ev] = rc;
        }
        FlowNetwork {
            n,
            start,
            to,
            rev,
            cap,
        }
    }
}

/// A residual network. [`FlowNetwork::max_flow`] mutates the residual
/// capacities, so one network serves exactly one solve.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    n: usize,
    start: Vec<usize>,
    to: Vec<u32>,
    rev: Vec<u32>,
    cap: Vec<i64>,
}

struct State {
    height: Vec<usize>,
    excess: Vec<i64>,
    cur: Vec<usize>,
    count: Vec<usize>,
    buckets: Vec<Vec<u32>>,
    highest: usize,
}

impl FlowNetwork {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.to.len()
    }

    fn arcs(&self, u: usize) -> std::ops::Range<usize> {
        self.start[u]..self.start[u + 1]
    }

    /// Computes a maximum `s`-`t` flow and returns its value. Afterwards the
    /// network holds the final residual capacities.
    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        assert!(s < self.n && t < self.n && s != t);
        let n = self.n;
        let mut st = State {
            height: vec![0; n],
            excess: vec![0; n],
            cur: self.start[..n].to_vec(),
            count: vec![0; 2 * n + 1],
            buckets: vec![Vec::new(); 2 * n + 1],
            highest: 0,
        };

        for e in self.arcs(s) {
            let f = self.cap[e];
            if f > 0 {
                let v = self.to[e] as usize;
                self.cap[e] = 0;
                self.cap[self.rev[e] as usize] += f;
                st.excess[v] += f;
                st.excess[s] -= f;
            }
        }
        self.global_relabel(&mut st, s, t);

        let mut relabels = 0usize;
        loop {
            while st.highest > 0 && st.buckets[st.highest].is_empty() {
                st.highest -= 1;
            }
            let Some(u) = st.buckets[st.highest].pop() else {
                break;
            };
            let u = u as usize;
            if st.excess[u] == 0 || st.height[u] != st.highest {
                continue;
            }
            relabels += self.discharge(&mut st, u, s, t);
            if relabels >= n {
                relabels = 0;
                self.global_relabel(&mut st, s, t);
            }
        }
        st.excess[t]
    }

    /// Exact heights from reverse BFS: distance to `t`, or `n` plus the
    /// distance to `s` for nodes that can no longer reach `t`. Rebuilds the
    /// active buckets.
    fn global_relabel(&self, st: &mut State, s: usize, t: usize) {
        let n = self.n;
        let unlabeled = 2 * n;
        st.height.iter_mut().for_each(|h| *h = unlabeled);
        st.count.iter_mut().for_each(|c| *c = 0);
        st.buckets.iter_mut().for_each(Vec::clear);
        st.highest = 0;

        let mut queue = VecDeque::new();
        for (root, base) in [(t, 0), (s, n)] {
            st.height[root] = base;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for e in self.arcs(v) {
                    let u = self.to[e] as usize;
                    if st.height[u] == unlabeled && self.cap[self.rev[e] as usize] > 0 {
                        st.height[u] = st.height[v] + 1;
                        queue.push_back(u);
                    }
                }
            }
        }

        for u in 0..n {
            let h = st.height[u];
            if h < unlabeled {
                st.count[h] += 1;
            }
            st.cur[u] = self.start[u];
            if u != s && u != t && st.excess[u] > 0 {
                debug_assert!(h < unlabeled, "excess always has a residual path back to s");
                st.buckets[h].push(u as u32);
                st.highest = st.highest.max(h);
            }
        }
    }

    /// Pushes all excess out of `u`, relabeling as needed. Returns the number
    /// of relabels performed.
    fn discharge(&mut self, st: &mut State, u: usize, s: usize, t: usize) -> usize {
        let n = self.n;
        let end = self.start[u + 1];
        let mut relabels = 0;
        while st.excess[u] > 0 {
            if st.cur[u] == end {
                relabels += 1;
                self.relabel(st, u, s);
                if st.height[u] >= 2 * n {
                    break;
                }
                continue;
            }
            let e = st.cur[u];
            let v = self.to[e] as usize;
            if self.cap[e] > 0 && st.height[u] == st.height[v] + 1 {
                let d = st.excess[u].min(self.cap[e]);
                self.cap[e] -= d;
                self.cap[self.rev[e] as usize] += d;
                st.excess[u] -= d;
                let was_idle = st.excess[v] == 0;
                st.excess[v] += d;
                if was_idle && v != s && v != t {
                    let h = st.height[v];
                    st.buckets[h].push(v as u32);
                    st.highest = st.highest.max(h);
                }
            } else {
                st.cur[u] += 1;
            }
        }
        relabels
    }

    fn relabel(&self, st: &mut State, u: usize, s: usize) {
        let n = self.n;
        let old = st.height[u];
        let mut new_height = 2 * n;
        for e in self.arcs(u) {
            if self.cap[e] > 0 {
                new_height = new_height.min(st.height[self.to[e] as usize] + 1);
            }
        }
        st.count[old] -= 1;
        if old < n && st.count[old] == 0 {
            // Nothing is left at `old`, so nothing at or above it can reach t.
            for v in 0..n {
                let h = st.height[v];
                if v != s && h > old && h < n {
                    st.count[h] -= 1;
                    st.height[v] = n + 1;
                    st.count[n + 1] += 1;
                    st.cur[v] = self.start[v];
                    if st.excess[v] > 0 {
                        st.buckets[n + 1].push(v as u32);
                        st.highest = st.highest.max(n + 1);
                    }
                }
            }
            new_height = new_height.max(n + 1);
        }
        st.height[u] = new_height;
        if new_height < 2 * n {
            st.count[new_height] += 1;
        }
        st.cur[u] = self.start[u];
    }

    /// Nodes reachable from `s` through arcs with positive residual capacity.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for e in self.arcs(u) {
                let v = self.to[e] as usize;
                if !seen[v] && self.cap[e] > 0 {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}
