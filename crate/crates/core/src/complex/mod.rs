//! Triangulated 3-balls: storage, incidence, f-vectors, links and depths.

mod flower;
pub(crate) mod surface;
mod validate;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::ComplexError;

pub use flower::{depth_map, flower, hemisphere_boundary, DepthMap, Flower, FlowerTarget};
pub use surface::{classify_curve, classify_surface, Curve, Surface};
pub use validate::{validate_ball, Check, ValidationReport};

pub type Node = u32;
pub type Edge = [Node; 2];
pub type Face = [Node; 3];
pub type Tet = [Node; 4];

pub fn edge(a: Node, b: Node) -> Edge {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

pub fn face(a: Node, b: Node, c: Node) -> Face {
    let mut f = [a, b, c];
    f.sort_unstable();
    f
}

pub fn tet(a: Node, b: Node, c: Node, d: Node) -> Tet {
    let mut t = [a, b, c, d];
    t.sort_unstable();
    t
}

/// The four faces of a sorted tetrahedron, each paired with the omitted node.
pub fn tet_faces(t: &Tet) -> [(Face, Node); 4] {
    [
        ([t[1], t[2], t[3]], t[0]),
        ([t[0], t[2], t[3]], t[1]),
        ([t[0], t[1], t[3]], t[2]),
        ([t[0], t[1], t[2]], t[3]),
    ]
}

/// The six edges of a sorted tetrahedron, each paired with the opposite edge.
pub fn tet_edges(t: &Tet) -> [(Edge, Edge); 6] {
    [
        ([t[0], t[1]], [t[2], t[3]]),
        ([t[0], t[2]], [t[1], t[3]]),
        ([t[0], t[3]], [t[1], t[2]]),
        ([t[1], t[2]], [t[0], t[3]]),
        ([t[1], t[3]], [t[0], t[2]]),
        ([t[2], t[3]], [t[0], t[1]]),
    ]
}

pub fn face_edges(f: &Face) -> [(Edge, Node); 3] {
    [([f[1], f[2]], f[0]), ([f[0], f[2]], f[1]), ([f[0], f[1]], f[2])]
}

/// Removes `n` from a tetrahedron or face containing it.
pub(crate) fn without<const N: usize, const M: usize>(s: &[Node; N], n: Node) -> [Node; M] {
    let mut out = [0; M];
    let mut k = 0;
    for &x in s {
        if x != n {
            out[k] = x;
            k += 1;
        }
    }
    debug_assert_eq!(k, M);
    out
}

/// An immutable simplicial 3-complex given by its tetrahedra.
///
/// Construction only rejects malformed input (repeated nodes, duplicates,
/// zero ids). Whether the complex really is a ball is the job of
/// [`validate_ball`].
#[derive(Clone)]
pub struct Triangulation {
    tets: Vec<Tet>,
    root: Option<Face>,
    face_tets: BTreeMap<Face, Vec<usize>>,
    edge_tets: BTreeMap<Edge, Vec<usize>>,
    node_tets: BTreeMap<Node, Vec<usize>>,
    external_faces: BTreeSet<Face>,
    external_edges: BTreeSet<Edge>,
    external_nodes: BTreeSet<Node>,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.tets == other.tets && self.root == other.root
    }
}

impl Eq for Triangulation {}

impl std::fmt::Debug for Triangulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Triangulation")
            .field("root", &self.root)
            .field("tets", &self.tets)
            .finish()
    }
}

impl Triangulation {
    pub fn new<I: IntoIterator<Item = [Node; 4]>>(tets: I) -> Result<Self, ComplexError> {
        let mut sorted = Vec::new();
        for raw in tets {
            let t = tet(raw[0], raw[1], raw[2], raw[3]);
            if t[0] == 0 {
                return Err(ComplexError::NonPositiveNode);
            }
            if t.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::RepeatedNode(raw));
            }
            sorted.push(t);
        }
        if sorted.is_empty() {
            return Err(ComplexError::Empty);
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateTetrahedron(w[0]));
        }
        Ok(Self::from_sorted(sorted, None))
    }

    fn from_sorted(tets: Vec<Tet>, root: Option<Face>) -> Self {
        let mut face_tets: BTreeMap<Face, Vec<usize>> = BTreeMap::new();
        let mut edge_tets: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        let mut node_tets: BTreeMap<Node, Vec<usize>> = BTreeMap::new();
        for (i, t) in tets.iter().enumerate() {
            for (f, _) in tet_faces(t) {
                face_tets.entry(f).or_default().push(i);
            }
            for (e, _) in tet_edges(t) {
                edge_tets.entry(e).or_default().push(i);
            }
            for &n in t {
                node_tets.entry(n).or_default().push(i);
            }
        }
        let external_faces: BTreeSet<Face> = face_tets
            .iter()
            .filter(|(_, ts)| ts.len() == 1)
            .map(|(f, _)| *f)
            .collect();
        let mut external_edges = BTreeSet::new();
        let mut external_nodes = BTreeSet::new();
        for f in &external_faces {
            for (e, _) in face_edges(f) {
                external_edges.insert(e);
            }
            external_nodes.extend(f.iter().copied());
        }
        Self {
            tets,
            root,
            face_tets,
            edge_tets,
            node_tets,
            external_faces,
            external_edges,
            external_nodes,
        }
    }

    /// Attaches a root face. The order of `root` is kept: it is the
    /// labeling 0, 1, 2 used by rooted constructions.
    pub fn with_root(mut self, root: Face) -> Result<Self, ComplexError> {
        if !self.face_tets.contains_key(&face(root[0], root[1], root[2])) {
            return Err(ComplexError::RootNotAFace(root));
        }
        self.root = Some(root);
        Ok(self)
    }

    pub fn without_root(mut self) -> Self {
        self.root = None;
        self
    }

    pub(crate) fn set_root_unchecked(&mut self, root: Option<Face>) {
        self.root = root;
    }

    pub fn root(&self) -> Option<Face> {
        self.root
    }

    pub fn tets(&self) -> &[Tet] {
        &self.tets
    }

    pub fn num_tets(&self) -> usize {
        self.tets.len()
    }

    pub fn contains_tet(&self, t: &Tet) -> bool {
        self.tets.binary_search(t).is_ok()
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.node_tets.keys().copied()
    }

    pub fn num_nodes(&self) -> usize {
        self.node_tets.len()
    }

    pub fn max_node(&self) -> Node {
        self.node_tets.keys().next_back().copied().unwrap_or(0)
    }

    pub fn has_node(&self, n: Node) -> bool {
        self.node_tets.contains_key(&n)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edge_tets.contains_key(&edge(e[0], e[1]))
    }

    pub fn has_face(&self, f: Face) -> bool {
        self.face_tets.contains_key(&face(f[0], f[1], f[2]))
    }

    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.face_tets.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edge_tets.keys().copied()
    }

    pub fn face_multiplicities(&self) -> impl Iterator<Item = (Face, usize)> + '_ {
        self.face_tets.iter().map(|(f, ts)| (*f, ts.len()))
    }

    pub fn external_faces(&self) -> &BTreeSet<Face> {
        &self.external_faces
    }

    pub fn external_edges(&self) -> &BTreeSet<Edge> {
        &self.external_edges
    }

    pub fn external_nodes(&self) -> &BTreeSet<Node> {
        &self.external_nodes
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.nodes().filter(|n| !self.external_nodes.contains(n))
    }

    pub fn internal_faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.face_tets
            .iter()
            .filter(|(_, ts)| ts.len() >= 2)
            .map(|(f, _)| *f)
    }

    pub fn internal_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges().filter(|e| !self.external_edges.contains(e))
    }

    pub fn is_external_face(&self, f: Face) -> bool {
        self.external_faces.contains(&face(f[0], f[1], f[2]))
    }

    pub fn is_external_edge(&self, e: Edge) -> bool {
        self.external_edges.contains(&edge(e[0], e[1]))
    }

    pub fn is_external_node(&self, n: Node) -> bool {
        self.external_nodes.contains(&n)
    }

    pub fn tets_of_face(&self, f: Face) -> impl Iterator<Item = &Tet> + '_ {
        self.face_tets
            .get(&face(f[0], f[1], f[2]))
            .into_iter()
            .flatten()
            .map(|&i| &self.tets[i])
    }

    pub fn tets_of_edge(&self, e: Edge) -> impl Iterator<Item = &Tet> + '_ {
        self.edge_tets
            .get(&edge(e[0], e[1]))
            .into_iter()
            .flatten()
            .map(|&i| &self.tets[i])
    }

    pub fn tets_of_node(&self, n: Node) -> impl Iterator<Item = &Tet> + '_ {
        self.node_tets
            .get(&n)
            .into_iter()
            .flatten()
            .map(|&i| &self.tets[i])
    }

    /// The triangles opposite `n` in the tetrahedra around it, sorted.
    pub fn link_of_node(&self, n: Node) -> Vec<Face> {
        let mut out: Vec<Face> = self.tets_of_node(n).map(|t| without(t, n)).collect();
        out.sort_unstable();
        out
    }

    /// The edges opposite `e` in the tetrahedra around it, sorted.
    pub fn link_of_edge(&self, e: Edge) -> Vec<Edge> {
        let e = edge(e[0], e[1]);
        let mut out: Vec<Edge> = self
            .tets_of_edge(e)
            .map(|t| {
                let f: Face = without(t, e[0]);
                without(&f, e[1])
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn neighbours(&self, n: Node) -> BTreeSet<Node> {
        self.tets_of_node(n)
            .flat_map(|t| t.iter().copied())
            .filter(|&m| m != n)
            .collect()
    }

    /// The boundary edges opposite `n` in its external faces.
    pub fn external_link_of_node(&self, n: Node) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .tets_of_node(n)
            .flat_map(|t| tet_faces(t).into_iter())
            .filter(|(f, _)| f.contains(&n) && self.external_faces.contains(f))
            .map(|(f, _)| without(&f, n))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Number of nodes in the external flower of `n`.
    pub fn external_degree(&self, n: Node) -> usize {
        self.external_link_of_node(n).len()
    }

    /// The `k` smallest positive ids not used by any node.
    pub fn fresh_nodes(&self, k: usize) -> Vec<Node> {
        let mut out = Vec::with_capacity(k);
        let mut candidate = 1;
        while out.len() < k {
            if !self.node_tets.contains_key(&candidate) {
                out.push(candidate);
            }
            candidate += 1;
        }
        out
    }

    /// Renames nodes. The map must be injective on the nodes of `self`.
    pub fn relabel(&self, map: impl Fn(Node) -> Node) -> Result<Self, ComplexError> {
        let tets: Vec<Tet> = self
            .tets
            .iter()
            .map(|t| [map(t[0]), map(t[1]), map(t[2]), map(t[3])])
            .collect();
        let mut out = Self::new(tets)?;
        out.root = self.root.map(|r| [map(r[0]), map(r[1]), map(r[2])]);
        Ok(out)
    }

    pub fn f_vector(&self) -> Result<FVector, ComplexError> {
        let t = self.tets.len() as i64;
        let f_s = self.external_faces.len() as i64;
        let n_tot = self.node_tets.len() as i64;
        let n_s = self.external_nodes.len() as i64;
        let fv = FVector {
            t,
            f_s,
            n_i: n_tot - n_s,
            f_tot: self.face_tets.len() as i64,
            e_tot: self.edge_tets.len() as i64,
            n_tot,
            e_s: self.external_edges.len() as i64,
            n_s,
            e_i: (self.edge_tets.len() - self.external_edges.len()) as i64,
        };
        fv.check()?;
        Ok(fv)
    }

    /// The f-vector without the identity checks, for complexes that may not be balls.
    pub fn raw_counts(&self) -> [i64; 3] {
        [
            self.tets.len() as i64,
            self.external_faces.len() as i64,
            (self.node_tets.len() - self.external_nodes.len()) as i64,
        ]
    }
}

/// ⟨t, f_s, n_i⟩ together with the derived totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector {
    pub t: i64,
    pub f_s: i64,
    pub n_i: i64,
    pub f_tot: i64,
    pub e_tot: i64,
    pub n_tot: i64,
    pub e_s: i64,
    pub n_s: i64,
    pub e_i: i64,
}

impl FVector {
    /// Fills in the derived counts of a ball from the triple.
    pub fn from_triple(t: i64, f_s: i64, n_i: i64) -> Self {
        let f_tot = (4 * t + f_s) / 2;
        let e_s = 3 * f_s / 2;
        let n_s = f_s / 2 + 2;
        let n_tot = n_s + n_i;
        let e_tot = f_tot + n_tot - t - 1;
        Self {
            t,
            f_s,
            n_i,
            f_tot,
            e_tot,
            n_tot,
            e_s,
            n_s,
            e_i: e_tot - e_s,
        }
    }

    pub fn triple(&self) -> [i64; 3] {
        [self.t, self.f_s, self.n_i]
    }

    pub fn check(&self) -> Result<(), ComplexError> {
        let fail = |what: &str| Err(ComplexError::EulerViolation(format!("{what} for {self:?}")));
        if self.t - self.f_tot + self.e_tot - self.n_tot != -1 {
            return fail("t - f + e - n != -1");
        }
        if self.f_s - self.e_s + self.n_s != 2 {
            return fail("f_s - e_s + n_s != 2");
        }
        if 3 * self.f_s != 2 * self.e_s {
            return fail("3 f_s != 2 e_s");
        }
        if 4 * self.t != 2 * (self.f_tot - self.f_s) + self.f_s {
            return fail("4t != 2 f_i + f_s");
        }
        if self.f_s % 2 != 0 || self.f_s < 4 {
            return fail("f_s odd or below 4");
        }
        Ok(())
    }

    pub fn delta(&self, after: &FVector) -> [i64; 3] {
        [after.t - self.t, after.f_s - self.f_s, after.n_i - self.n_i]
    }
}

impl std::fmt::Display for FVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<{},{},{}>", self.t, self.f_s, self.n_i)
    }
}
