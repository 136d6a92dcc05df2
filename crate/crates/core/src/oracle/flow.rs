//! Dinic max-flow on real capacities.

use std::collections::VecDeque;

/// Residual capacities at or below this are treated as saturated.
const EPS: f64 = 1e-15;

#[derive(Debug, Clone, Default)]
pub struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<f64>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        Self {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.head.len()
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: f64) {
        self.head[from].push(self.to.len());
        self.to.push(to);
        self.cap.push(cap);
        self.head[to].push(self.to.len());
        self.to.push(from);
        self.cap.push(0.0);
    }

    fn levels(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut level = vec![usize::MAX; self.head.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > EPS && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        (level[t] != usize::MAX).then_some(level)
    }

    fn push(&mut self, u: usize, t: usize, limit: f64, level: &[usize], next: &mut [usize]) -> f64 {
        if u == t {
            return limit;
        }
        while next[u] < self.head[u].len() {
            let e = self.head[u][next[u]];
            let v = self.to[e];
            if self.cap[e] > EPS && level[v] == level[u] + 1 {
                let got = self.push(v, t, limit.min(self.cap[e]), level, next);
                if got > 0.0 {
                    self.cap[e] -= got;
                    self.cap[e ^ 1] += got;
                    return got;
                }
            }
            next[u] += 1;
        }
        0.0
    }

    /// Maximum flow from `s` to `t`. Consumes the capacities.
    pub fn max_flow(&mut self, s: usize, t: usize) -> f64 {
        let mut total = 0.0;
        while let Some(level) = self.levels(s, t) {
            let mut next = vec![0; self.head.len()];
            loop {
                let f = self.push(s, t, f64::INFINITY, &level, &mut next);
                if f <= 0.0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_network() {
        // CLRS figure 26.1, max flow 23
        let mut g = FlowNetwork::new(6);
        for &(u, v, c) in &[
            (0, 1, 16.0),
            (0, 2, 13.0),
            (1, 3, 12.0),
            (2, 1, 4.0),
            (2, 4, 14.0),
            (3, 2, 9.0),
            (3, 5, 20.0),
            (4, 3, 7.0),
            (4, 5, 4.0),
        ] {
            g.add_edge(u, v, c);
        }
        assert_eq!(g.max_flow(0, 5), 23.0);
    }

    #[test]
    fn disconnected_and_fractional() {
        let mut g = FlowNetwork::new(3);
        g.add_edge(0, 1, 0.25);
        assert_eq!(g.max_flow(0, 2), 0.0);
        let mut g = FlowNetwork::new(4);
        g.add_edge(0, 1, 0.3);
        g.add_edge(0, 2, 0.7);
        g.add_edge(1, 3, 2.0);
        g.add_edge(2, 3, 0.5);
        assert!((g.max_flow(0, 3) - 0.8).abs() < 1e-15);
    }
}
