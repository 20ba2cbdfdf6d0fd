//! The two promotion sweeps. Each processed hemisphere is cut into a binary
//! tree of pieces; every cut of a piece is realised by splitting the piece's
//! owner node along the piece path extended to the owner's flower.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::classify::{classify_node, NodeClass};
use crate::complex::{edge, Edge, Face, Node, Triangulation};
use crate::error::ReduceError;
use crate::moves::{split_node, MoveRecord};
use crate::planar::{find_splitting_path, flip_last, split_disk, Disk, Label};

/// One split performed by a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitStep {
    pub hemisphere: Node,
    pub sequence: String,
    pub owner: Node,
    /// The path inside the piece.
    pub inner: Vec<Node>,
    /// The path actually split along, extended to the owner's flower.
    pub path: Vec<Node>,
    pub created: [Node; 2],
    /// |E(owner)|, |E(L)|, |E(R)|.
    pub external_degrees: [usize; 3],
    /// C1 pairs (x, y) promoted to C0 by this split.
    pub served: Vec<(Node, Node)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub owner: Node,
    pub triangles: Vec<Face>,
    pub leaf: bool,
}

/// The pieces of one hemisphere keyed by L/R sequence; the root is "".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceTree {
    pub node: Node,
    pub pieces: BTreeMap<String, Piece>,
}

impl PieceTree {
    pub fn leaves(&self) -> impl Iterator<Item = (&String, &Piece)> {
        self.pieces.iter().filter(|(_, p)| p.leaf)
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepTrace {
    pub trees: Vec<PieceTree>,
    pub steps: Vec<SplitStep>,
    #[serde(skip)]
    pub log: Vec<MoveRecord>,
    /// Nodes created by the sweep that still exist at its end, ascending.
    pub created: Vec<Node>,
}

struct Run {
    t: Triangulation,
    node: Node,
    disks: BTreeMap<String, Disk>,
    owners: BTreeMap<String, Node>,
    leaves: BTreeSet<String>,
    sequence_of: BTreeMap<Node, String>,
    used: BTreeSet<Edge>,
    steps: Vec<SplitStep>,
    log: Vec<MoveRecord>,
    labelled: bool,
}

impl Run {
    fn new(t: Triangulation, node: Node, labelled: bool) -> Result<Self, ReduceError> {
        let mut disk = Disk::new(t.link_of_node(node))?;
        if labelled {
            disk = disk.with_negative_labels();
        }
        Ok(Self {
            t,
            node,
            disks: BTreeMap::from([(String::new(), disk)]),
            owners: BTreeMap::from([(String::new(), node)]),
            leaves: BTreeSet::from([String::new()]),
            sequence_of: BTreeMap::new(),
            used: BTreeSet::new(),
            steps: Vec::new(),
            log: Vec::new(),
            labelled,
        })
    }

    /// A node of E(owner) joined to `u` inside I(owner), not creating an
    /// interior edge of `piece`. Created nodes whose sequence starts with
    /// `prefix` come first, then other created nodes, then the rest.
    fn tip(&self, seq: &str, u: Node, avoid: &[Node], prefix: Option<&str>) -> Option<Node> {
        let owner = self.owners[seq];
        let piece = &self.disks[seq];
        let flower: BTreeSet<Node> = self
            .t
            .external_link_of_node(owner)
            .into_iter()
            .flatten()
            .collect();
        flower
            .into_iter()
            .filter(|&w| !avoid.contains(&w) && self.t.has_face([owner, u, w]))
            .filter(|&w| !(piece.has_edge(u, w) && !piece.is_boundary_edge(u, w)))
            .min_by_key(|&w| {
                let rank = match (self.sequence_of.get(&w), prefix) {
                    (Some(s), Some(p)) if s.starts_with(p) => 0,
                    (Some(_), _) => 1,
                    (None, _) => 2,
                };
                (rank, w)
            })
    }

    fn on_flower(&self, seq: &str, u: Node) -> bool {
        let owner = self.owners[seq];
        self.t.external_link_of_node(owner).iter().any(|e| e.contains(&u))
    }

    /// Extends an end of `inner` by one edge when it is not yet on E(owner).
    fn extend(&self, seq: &str, inner: &[Node]) -> Result<Vec<Node>, ReduceError> {
        let piece = &self.disks[seq];
        let mut path = inner.to_vec();
        for front in [true, false] {
            let u = if front { path[0] } else { *path.last().unwrap() };
            if self.on_flower(seq, u) {
                continue;
            }
            let prefix = match piece.label(u) {
                Some(Label::Sequence(s)) => Some(s.as_str()),
                _ => None,
            };
            let w = self.tip(seq, u, &path, prefix).ok_or(ReduceError::NoExtension(u))?;
            if front {
                path.insert(0, w);
            } else {
                path.push(w);
            }
        }
        Ok(path)
    }

    fn split(&mut self, seq: &str, inner: Vec<Node>, path: Vec<Node>) -> Result<(), ReduceError> {
        for w in inner.windows(2) {
            let e = edge(w[0], w[1]);
            if !self.used.insert(e) {
                return Err(ReduceError::EdgeReused { node: self.node, edge: e });
            }
        }
        if path.len() > inner.len() + 2 {
            return Err(ReduceError::ExtensionTooLong { inner, path });
        }
        let owner = self.owners[seq];
        let before = self.t.external_degree(owner);
        let moved = split_node(&self.t, owner, &path)?;
        let (l, r) = (moved.record.created[0], moved.record.created[1]);
        let t = moved.triangulation;
        let (dl, dr) = (t.external_degree(l), t.external_degree(r));
        if before + 4 != dl + dr {
            return Err(ReduceError::ExternalDegree { node: owner, before, left: dl, right: dr });
        }

        let piece = self.disks[seq].clone();
        let (h1, h2) = split_disk(&piece, &inner)?;
        let h1_is_left = t.contains_tet(&crate::complex::tet(l, h1[0][0], h1[0][1], h1[0][2]));
        let (left, right) = if h1_is_left { (h1, h2) } else { (h2, h1) };
        let inner_nodes: BTreeSet<Node> = inner[1..inner.len() - 1].iter().copied().collect();
        for (side, tris, child) in [("L", left, l), ("R", right, r)] {
            let child_seq = format!("{seq}{side}");
            let mut disk = Disk::new(tris)?;
            if self.labelled {
                let fresh = Label::Sequence(flip_last(&child_seq));
                let labels = disk
                    .boundary()
                    .iter()
                    .filter_map(|&n| {
                        if inner_nodes.contains(&n) {
                            Some((n, fresh.clone()))
                        } else {
                            piece.label(n).map(|x| (n, x.clone()))
                        }
                    })
                    .collect();
                disk = disk.with_labels(labels)?;
            }
            self.disks.insert(child_seq.clone(), disk);
            self.owners.insert(child_seq.clone(), child);
            self.leaves.insert(child_seq.clone());
            self.sequence_of.insert(child, child_seq);
        }
        self.leaves.remove(seq);
        self.steps.push(SplitStep {
            hemisphere: self.node,
            sequence: seq.to_string(),
            owner,
            inner,
            path,
            created: [l, r],
            external_degrees: [before, dl, dr],
            served: Vec::new(),
        });
        self.log.push(moved.record);
        self.t = t;
        Ok(())
    }

    fn tree(&self) -> PieceTree {
        PieceTree {
            node: self.node,
            pieces: self
                .disks
                .iter()
                .map(|(s, d)| {
                    (
                        s.clone(),
                        Piece {
                            owner: self.owners[s],
                            triangles: d.triangles().to_vec(),
                            leaf: self.leaves.contains(s),
                        },
                    )
                })
                .collect(),
        }
    }
}

fn hemisphere_internal_nodes(t: &Triangulation, n: Node) -> BTreeSet<Node> {
    t.neighbours(n)
        .into_iter()
        .filter(|&x| !t.is_external_node(x))
        .collect()
}

/// Cuts the hemisphere of `n` into triangles, promoting its C2 nodes to C1.
fn c2_hemisphere(t: Triangulation, n: Node) -> Result<(Triangulation, Run), ReduceError> {
    let watched = hemisphere_internal_nodes(&t, n);
    let mut run = Run::new(t, n, true)?;
    let mut stack = vec![String::new()];
    while let Some(seq) = stack.pop() {
        let piece = &run.disks[&seq];
        if piece.triangles().len() < 2 {
            continue;
        }
        let inner = find_splitting_path(piece)?.0;
        let path = run.extend(&seq, &inner)?;
        run.split(&seq, inner, path)?;
        stack.push(format!("{seq}R"));
        stack.push(format!("{seq}L"));
    }
    for &x in &watched {
        if classify_node(&run.t, x) == NodeClass::C2 {
            return Err(ReduceError::C2Survived(x));
        }
    }
    Ok((run.t.clone(), run))
}

/// For every node of `list` still external, promotes the C2 nodes of its
/// hemisphere to C1. Hemispheres without C2 nodes are left alone.
pub fn sweep_c2_to_c1(t: &Triangulation, list: &[Node]) -> Result<(Triangulation, SweepTrace), ReduceError> {
    let mut t = t.clone();
    let mut trace = SweepTrace::default();
    for &n in list {
        if !t.has_node(n) || !t.is_external_node(n) {
            continue;
        }
        let has_c2 = hemisphere_internal_nodes(&t, n)
            .into_iter()
            .any(|x| classify_node(&t, x) == NodeClass::C2);
        if !has_c2 {
            continue;
        }
        let (next, run) = c2_hemisphere(t, n)?;
        t = next;
        trace.trees.push(run.tree());
        trace.steps.extend(run.steps);
        trace.log.extend(run.log);
    }
    trace.created = created_nodes(&t, &trace.steps);
    Ok((t, trace))
}

fn created_nodes(t: &Triangulation, steps: &[SplitStep]) -> Vec<Node> {
    let mut out: Vec<Node> = steps
        .iter()
        .flat_map(|s| s.created)
        .filter(|&n| t.has_node(n))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Second path from x to the piece boundary, avoiding y, through interior nodes.
fn escape_path(piece: &Disk, x: Node, y: Node) -> Option<Vec<Node>> {
    let mut parent: BTreeMap<Node, Node> = BTreeMap::new();
    let mut queue = VecDeque::from([x]);
    let mut seen = BTreeSet::from([x]);
    while let Some(u) = queue.pop_front() {
        for v in piece.neighbours(u) {
            if v == y || !seen.insert(v) {
                continue;
            }
            parent.insert(v, u);
            if piece.is_boundary(v) {
                let mut path = vec![v];
                let mut cur = v;
                while let Some(&p) = parent.get(&cur) {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(v);
        }
    }
    None
}

fn c1_pairs(t: &Triangulation, n: Node) -> BTreeMap<Node, Node> {
    let flower: BTreeSet<Node> = t.external_link_of_node(n).into_iter().flatten().collect();
    let mut out = BTreeMap::new();
    for x in hemisphere_internal_nodes(t, n) {
        if !matches!(classify_node(t, x), NodeClass::C1 { .. }) {
            continue;
        }
        if let Some(&y) = flower.iter().find(|&&y| t.has_face([n, x, y])) {
            out.insert(x, y);
        }
    }
    out
}

fn c1_hemisphere(t: Triangulation, n: Node, mut pairs: BTreeMap<Node, Node>) -> Result<(Triangulation, Run), ReduceError> {
    let mut run = Run::new(t, n, false)?;
    while let Some((&x, &y)) = pairs.iter().next() {
        let holders: Vec<String> = run
            .leaves
            .iter()
            .filter(|s| run.disks[*s].has_edge(x, y))
            .cloned()
            .collect();
        let [seq] = holders.as_slice() else {
            return Err(ReduceError::NoLeafPiece(edge(x, y)));
        };
        let seq = seq.clone();
        let piece = &run.disks[&seq];
        let (inner, path) = if piece.is_interior(x) {
            let second = escape_path(piece, x, y).ok_or(ReduceError::NoLeafPiece(edge(x, y)))?;
            let mut inner = vec![y];
            inner.extend(second);
            let path = run.extend(&seq, &inner)?;
            (inner, path)
        } else {
            if piece.is_boundary_edge(x, y) {
                return Err(ReduceError::NoLeafPiece(edge(x, y)));
            }
            let inner = vec![y, x];
            let w = run.tip(&seq, x, &inner, None).ok_or(ReduceError::NoExtension(x))?;
            (inner, vec![y, x, w])
        };
        run.split(&seq, inner, path)?;

        let served: Vec<(Node, Node)> = pairs
            .iter()
            .filter(|(&x2, _)| matches!(classify_node(&run.t, x2), NodeClass::C0 { .. }))
            .map(|(&a, &b)| (a, b))
            .collect();
        if !served.iter().any(|&(a, _)| a == x) {
            return Err(ReduceError::NotPromoted(x));
        }
        for (a, _) in &served {
            pairs.remove(a);
        }
        run.steps.last_mut().unwrap().served = served;
    }
    Ok((run.t.clone(), run))
}

/// For every node of `list` still external, promotes the C1 nodes of its
/// hemisphere that touch its flower to C0.
pub fn sweep_c1_to_c0(t: &Triangulation, list: &[Node]) -> Result<(Triangulation, SweepTrace), ReduceError> {
    let mut t = t.clone();
    let mut trace = SweepTrace::default();
    for &n in list {
        if !t.has_node(n) || !t.is_external_node(n) {
            continue;
        }
        let pairs = c1_pairs(&t, n);
        if pairs.is_empty() {
            continue;
        }
        let (next, run) = c1_hemisphere(t, n, pairs)?;
        t = next;
        trace.trees.push(run.tree());
        trace.steps.extend(run.steps);
        trace.log.extend(run.log);
    }
    trace.created = created_nodes(&t, &trace.steps);
    Ok((t, trace))
}
