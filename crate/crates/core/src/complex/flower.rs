use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::surface::{classify_curve, classify_surface, Curve, Surface};
use super::{edge, Edge, Face, Node, Triangulation};
use crate::error::ComplexError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowerTarget {
    Node(Node),
    Edge(Edge),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Flower {
    Node {
        node: Node,
        /// Cyclic node sequence of E(n); empty for internal nodes.
        external: Vec<Node>,
        /// Triangles of I(n).
        hemisphere: Vec<Face>,
    },
    Edge {
        edge: Edge,
        /// The two ends of I(e); empty for internal edges.
        external: Vec<Node>,
        /// I(e) as a node sequence: a path for external edges, a cycle otherwise.
        hemisphere: Vec<Node>,
    },
}

impl Flower {
    pub fn external(&self) -> &[Node] {
        match self {
            Flower::Node { external, .. } | Flower::Edge { external, .. } => external,
        }
    }
}

pub fn flower(t: &Triangulation, target: FlowerTarget) -> Result<Flower, ComplexError> {
    match target {
        FlowerTarget::Node(n) => {
            if !t.has_node(n) {
                return Err(ComplexError::UnknownNode(n));
            }
            let hemisphere = t.link_of_node(n);
            let external = if t.is_external_node(n) {
                match classify_curve(&t.external_link_of_node(n)) {
                    Curve::Cycle(c) => c,
                    _ => {
                        return Err(ComplexError::NotABall(format!(
                            "external flower of {n} is not a cycle"
                        )))
                    }
                }
            } else {
                Vec::new()
            };
            Ok(Flower::Node {
                node: n,
                external,
                hemisphere,
            })
        }
        FlowerTarget::Edge(e) => {
            let e = edge(e[0], e[1]);
            if !t.has_edge(e) {
                return Err(ComplexError::UnknownEdge(e));
            }
            match classify_curve(&t.link_of_edge(e)) {
                Curve::Path(p) if t.is_external_edge(e) => Ok(Flower::Edge {
                    edge: e,
                    external: vec![p[0], *p.last().unwrap()],
                    hemisphere: p,
                }),
                Curve::Cycle(c) if !t.is_external_edge(e) => Ok(Flower::Edge {
                    edge: e,
                    external: Vec::new(),
                    hemisphere: c,
                }),
                _ => Err(ComplexError::NotABall(format!("bad link of edge {e:?}"))),
            }
        }
    }
}

/// The boundary cycle of I(n); agrees with E(n) on a ball.
pub fn hemisphere_boundary(t: &Triangulation, n: Node) -> Option<Vec<Node>> {
    match classify_surface(&t.link_of_node(n)) {
        Surface::Disk { boundary } => Some(boundary),
        _ => None,
    }
}

/// Edge distance of each node from the boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthMap {
    pub depth: BTreeMap<Node, u32>,
}

impl DepthMap {
    pub fn get(&self, n: Node) -> Option<u32> {
        self.depth.get(&n).copied()
    }

    pub fn max_depth(&self) -> u32 {
        self.depth.values().copied().max().unwrap_or(0)
    }

    /// The nodes at depth `d`, ascending.
    pub fn level(&self, d: u32) -> Vec<Node> {
        self.depth
            .iter()
            .filter(|(_, &v)| v == d)
            .map(|(n, _)| *n)
            .collect()
    }
}

pub fn depth_map(t: &Triangulation) -> DepthMap {
    let mut depth = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &n in t.external_nodes() {
        depth.insert(n, 0);
        queue.push_back(n);
    }
    while let Some(n) = queue.pop_front() {
        let d = depth[&n];
        for m in t.neighbours(n) {
            depth.entry(m).or_insert_with(|| {
                queue.push_back(m);
                d + 1
            });
        }
    }
    // Nodes unreachable from the boundary only occur in non-balls.
    for n in t.nodes() {
        depth.entry(n).or_insert(u32::MAX);
    }
    DepthMap { depth }
}
