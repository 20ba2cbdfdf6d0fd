//! Labeled triangulated disks and the cuts that split them.

mod flow;
mod path;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{classify_surface, edge, face, face_edges, Edge, Face, Node, Surface};
use crate::error::PlanarError;

pub use flow::disjoint_paths_to_boundary;
pub use path::{cut_disk, find_splitting_path, SplittingPath};
pub(crate) use path::split_disk;

/// A boundary label: either one of the initial negative labels or an L/R sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Negative(i32),
    Sequence(String),
}

impl Label {
    pub fn seq(s: &str) -> Self {
        Label::Sequence(s.to_string())
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Negative(k) => write!(f, "{k}"),
            Label::Sequence(s) => write!(f, "{s}"),
        }
    }
}

/// Flips the last letter of an L/R sequence.
pub fn flip_last(s: &str) -> String {
    let mut out = s.to_string();
    match out.pop() {
        Some('L') => out.push('R'),
        Some('R') => out.push('L'),
        Some(c) => out.push(c),
        None => {}
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule")]
pub enum Violation {
    /// Fewer than two labels on the boundary.
    K1 { labels: usize },
    /// A label occupies more than one arc.
    K2 { label: Label, arcs: usize },
    /// A chord joins two nodes with the same label.
    K3 { chord: Edge, label: Label },
    Unlabeled { node: Node },
}

/// A triangulated disk with an optional labeling of its boundary nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disk {
    triangles: Vec<Face>,
    boundary: Vec<Node>,
    labels: BTreeMap<Node, Label>,
    #[serde(skip)]
    edges: BTreeMap<Edge, u8>,
    #[serde(skip)]
    adj: BTreeMap<Node, BTreeSet<Node>>,
    #[serde(skip)]
    on_boundary: BTreeSet<Node>,
}

impl Disk {
    pub fn new<I: IntoIterator<Item = Face>>(triangles: I) -> Result<Self, PlanarError> {
        let mut triangles: Vec<Face> = triangles
            .into_iter()
            .map(|f| face(f[0], f[1], f[2]))
            .collect();
        triangles.sort_unstable();
        triangles.dedup();
        let boundary = match classify_surface(&triangles) {
            Surface::Disk { boundary } => boundary,
            Surface::Sphere => return Err(PlanarError::NotADisk("closed sphere".into())),
            Surface::Other(why) => return Err(PlanarError::NotADisk(why)),
        };
        let mut edges = BTreeMap::new();
        let mut adj: BTreeMap<Node, BTreeSet<Node>> = BTreeMap::new();
        for f in &triangles {
            for (e, _) in face_edges(f) {
                *edges.entry(e).or_insert(0) += 1;
                adj.entry(e[0]).or_default().insert(e[1]);
                adj.entry(e[1]).or_default().insert(e[0]);
            }
        }
        let on_boundary = boundary.iter().copied().collect();
        Ok(Self {
            triangles,
            boundary,
            labels: BTreeMap::new(),
            edges,
            adj,
            on_boundary,
        })
    }

    /// Replaces the labeling. Every key must be a boundary node.
    pub fn with_labels(mut self, labels: BTreeMap<Node, Label>) -> Result<Self, PlanarError> {
        if let Some(n) = labels.keys().find(|n| !self.on_boundary.contains(n)) {
            return Err(PlanarError::NotADisk(format!("label on non-boundary node {n}")));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Labels the boundary −1, −2, … in cycle order from its smallest node.
    pub fn with_negative_labels(self) -> Self {
        let labels = self
            .boundary
            .iter()
            .enumerate()
            .map(|(i, &n)| (n, Label::Negative(-(i as i32) - 1)))
            .collect();
        Self { labels, ..self }
    }

    pub fn triangles(&self) -> &[Face] {
        &self.triangles
    }

    pub fn contains_triangle(&self, f: &Face) -> bool {
        self.triangles.binary_search(&face(f[0], f[1], f[2])).is_ok()
    }

    pub fn boundary(&self) -> &[Node] {
        &self.boundary
    }

    pub fn labels(&self) -> &BTreeMap<Node, Label> {
        &self.labels
    }

    pub fn label(&self, n: Node) -> Option<&Label> {
        self.labels.get(&n)
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.adj.keys().copied()
    }

    pub fn has_node(&self, n: Node) -> bool {
        self.adj.contains_key(&n)
    }

    pub fn is_boundary(&self, n: Node) -> bool {
        self.on_boundary.contains(&n)
    }

    pub fn is_interior(&self, n: Node) -> bool {
        self.adj.contains_key(&n) && !self.on_boundary.contains(&n)
    }

    pub fn interior_nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.nodes().filter(|n| !self.on_boundary.contains(n))
    }

    pub fn neighbours(&self, n: Node) -> impl Iterator<Item = Node> + '_ {
        self.adj.get(&n).into_iter().flatten().copied()
    }

    pub fn has_edge(&self, a: Node, b: Node) -> bool {
        self.edges.contains_key(&edge(a, b))
    }

    pub fn is_boundary_edge(&self, a: Node, b: Node) -> bool {
        self.edges.get(&edge(a, b)) == Some(&1)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.keys().copied()
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().filter(|(_, &c)| c == 2).map(|(e, _)| *e)
    }

    /// Interior edges with both ends on the boundary.
    pub fn chords(&self) -> impl Iterator<Item = Edge> + '_ {
        self.interior_edges()
            .filter(|e| self.is_boundary(e[0]) && self.is_boundary(e[1]))
    }
}

pub fn check_admissible(d: &Disk) -> Vec<Violation> {
    let mut out = Vec::new();
    for &n in d.boundary() {
        if d.label(n).is_none() {
            out.push(Violation::Unlabeled { node: n });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let b = d.boundary();
    let distinct: BTreeSet<&Label> = b.iter().map(|n| &d.labels[n]).collect();
    if distinct.len() < 2 {
        out.push(Violation::K1 { labels: distinct.len() });
    }
    let mut arcs: BTreeMap<&Label, usize> = BTreeMap::new();
    for i in 0..b.len() {
        let prev = &d.labels[&b[(i + b.len() - 1) % b.len()]];
        let cur = &d.labels[&b[i]];
        if prev != cur {
            *arcs.entry(cur).or_default() += 1;
        }
    }
    for (label, count) in arcs {
        if count > 1 {
            out.push(Violation::K2 { label: label.clone(), arcs: count });
        }
    }
    for c in d.chords() {
        let (la, lb) = (&d.labels[&c[0]], &d.labels[&c[1]]);
        if la == lb {
            out.push(Violation::K3 { chord: c, label: la.clone() });
        }
    }
    out
}
