//! Vertex-disjoint paths from an interior node to the boundary, by unit
//! capacity max-flow on the vertex-split graph.

use std::collections::{BTreeMap, VecDeque};

use super::Disk;
use crate::complex::Node;
use crate::error::PlanarError;

struct Network {
    head: Vec<usize>,
    cap: Vec<i32>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    fn new(n: usize) -> Self {
        Self {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    fn add(&mut self, u: usize, v: usize) {
        self.adj[u].push(self.head.len());
        self.head.push(v);
        self.cap.push(1);
        self.adj[v].push(self.head.len());
        self.head.push(u);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.adj.len()];
        let mut queue = VecDeque::from([s]);
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    via[v] = e;
                    if v == t {
                        let mut x = t;
                        while x != s {
                            let e = via[x];
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            x = self.head[e ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(v);
                }
            }
        }
        false
    }
}

/// Three paths from interior node `x` to distinct boundary nodes, disjoint
/// except at `x`, each touching the boundary only at its last node.
pub fn disjoint_paths_to_boundary(d: &Disk, x: Node) -> Result<[Vec<Node>; 3], PlanarError> {
    if !d.is_interior(x) {
        return Err(PlanarError::NotInterior(x));
    }
    let nodes: Vec<Node> = d.nodes().collect();
    let index: BTreeMap<Node, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let (inn, out) = (|i: usize| 2 * i, |i: usize| 2 * i + 1);
    let sink = 2 * nodes.len();
    let mut net = Network::new(sink + 1);
    for (i, &n) in nodes.iter().enumerate() {
        if d.is_boundary(n) {
            net.add(inn(i), sink);
        } else if n != x {
            net.add(inn(i), out(i));
        }
    }
    for e in d.edges() {
        let (a, b) = (index[&e[0]], index[&e[1]]);
        if d.is_interior(e[0]) {
            net.add(out(a), inn(b));
        }
        if d.is_interior(e[1]) {
            net.add(out(b), inn(a));
        }
    }
    let source = out(index[&x]);
    let mut flow = 0;
    while flow < 3 && net.augment(source, sink) {
        flow += 1;
    }
    if flow < 3 {
        return Err(PlanarError::TooFewPaths(flow));
    }

    // Read the paths off the saturated forward arcs.
    let mut paths: Vec<Vec<Node>> = Vec::new();
    for &e0 in &net.adj[source] {
        if e0 % 2 != 0 || net.cap[e0] != 0 {
            continue;
        }
        let mut path = vec![x];
        let mut v = net.head[e0];
        loop {
            let node = nodes[v / 2];
            path.push(node);
            if d.is_boundary(node) {
                break;
            }
            // Through the split arc, then the used outgoing arc.
            let o = out(v / 2);
            let next = net.adj[o]
                .iter()
                .find(|&&e| e % 2 == 0 && net.cap[e] == 0)
                .expect("flow is conserved");
            v = net.head[*next];
        }
        paths.push(path);
    }
    paths.sort();
    let mut it = paths.into_iter();
    Ok([it.next().unwrap(), it.next().unwrap(), it.next().unwrap()])
}
