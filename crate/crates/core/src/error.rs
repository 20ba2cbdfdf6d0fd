use thiserror::Error;

use crate::complex::{Edge, Face, Node, Tet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected 4 positive integers, found {found:?}")]
    MalformedLine { line: usize, found: String },
    #[error("line {line}: malformed root directive {found:?}")]
    MalformedRoot { line: usize, found: String },
    #[error("line {line}: second root directive")]
    DuplicateRoot { line: usize },
    #[error("line {line}: {source}")]
    Complex {
        line: usize,
        #[source]
        source: ComplexError,
    },
    #[error("root face {0:?} is not a face of any tetrahedron")]
    RootNotAFace(Face),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("tetrahedron {0:?} repeats a node")]
    RepeatedNode([Node; 4]),
    #[error("node ids must be positive")]
    NonPositiveNode,
    #[error("duplicate tetrahedron {0:?}")]
    DuplicateTetrahedron(Tet),
    #[error("triangulation has no tetrahedra")]
    Empty,
    #[error("unknown node {0}")]
    UnknownNode(Node),
    #[error("unknown edge {0:?}")]
    UnknownEdge(Edge),
    #[error("unknown face {0:?}")]
    UnknownFace(Face),
    #[error("root face {0:?} is not a face of any tetrahedron")]
    RootNotAFace(Face),
    #[error("root face {0:?} is not external")]
    RootNotExternal(Face),
    #[error("Euler identity violated: {0}")]
    EulerViolation(String),
    #[error("not a 3-ball: {0}")]
    NotABall(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarError {
    #[error("not a triangulated disk: {0}")]
    NotADisk(String),
    #[error("disk has fewer than 2 triangles")]
    TooSmall,
    #[error("disk is not admissible: {0:?}")]
    Inadmissible(Vec<crate::planar::Violation>),
    #[error("not a splitting path: {0}")]
    NotASplittingPath(String),
    #[error("node {0} is not an interior node of the disk")]
    NotInterior(Node),
    #[error("found only {0} disjoint paths to the boundary")]
    TooFewPaths(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("face {0:?} is not internal")]
    FaceNotInternal(Face),
    #[error("face {face:?} has internal edge {edge:?}")]
    FaceHasInternalEdge { face: Face, edge: Edge },
    #[error("edge {0:?} must be external")]
    EdgeNotExternal(Edge),
    #[error("edge {0:?} must be internal")]
    EdgeNotInternal(Edge),
    #[error("node {0} must be external")]
    NodeNotExternal(Node),
    #[error("node {0} must be internal")]
    NodeNotInternal(Node),
    #[error("tetrahedron {0:?} is not removable")]
    NotRemovable(Tet),
    #[error("unknown tetrahedron {0:?}")]
    UnknownTetrahedron(Tet),
    #[error("cutting at {0:?} does not separate the complex")]
    NotSeparating(Face),
    #[error("f-vector delta {got:?} does not match the expected {expected:?}")]
    DeltaMismatch { expected: [i64; 3], got: [i64; 3] },
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("replay target {0} does not exist")]
    BadTarget(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("edge {edge:?} of hemisphere {node} lies on two cutting paths")]
    EdgeReused { node: Node, edge: Edge },
    #[error("extended path {path:?} is more than 2 edges longer than {inner:?}")]
    ExtensionTooLong { inner: Vec<Node>, path: Vec<Node> },
    #[error("external degree identity failed splitting {node}: {before} != {left} + {right} - 4")]
    ExternalDegree {
        node: Node,
        before: usize,
        left: usize,
        right: usize,
    },
    #[error("no boundary neighbour to extend the path end {0}")]
    NoExtension(Node),
    #[error("C2 node {0} survived its hemisphere sweep")]
    C2Survived(Node),
    #[error("node {0} was not promoted to C0")]
    NotPromoted(Node),
    #[error("witness edge {0:?} is not covered by a single leaf piece")]
    NoLeafPiece(Edge),
    #[error("a depth round removed no internal node (n_i = {0})")]
    NoProgress(usize),
    #[error("iteration guard exceeded after {0} steps")]
    NonTermination(usize),
    #[error("growth {delta} exceeds {constant} * (t + n_i) = {limit}")]
    GrowthBound { delta: i64, constant: u64, limit: i64 },
    #[error("ledger invariant failed: {0}")]
    Ledger(String),
    #[error("input has {0} internal nodes")]
    HasInternalNodes(usize),
    #[error("nucleus invariant failed: {0}")]
    NotANucleus(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssemblyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error("triangulation has no root face")]
    Unrooted,
    #[error("face {0:?} is not external")]
    FaceNotExternal(Face),
    #[error("edge {0:?} is not external")]
    EdgeNotExternal(Edge),
    #[error("node {0} is not external")]
    NodeNotExternal(Node),
    #[error("nodes {0} and {1} are adjacent")]
    Adjacent(Node, Node),
    #[error("nodes {0} and {1} must be distinct")]
    SameNode(Node, Node),
    #[error("nodes {x} and {y} share the extra common neighbour {common}")]
    CommonNeighbour { x: Node, y: Node, common: Node },
    #[error("node {node} has external degree {degree}, expected 3")]
    ExternalDegree { node: Node, degree: usize },
    #[error("face {0:?} already exists")]
    FaceExists(Face),
    #[error("edge {edge:?} is not collapsible: {failed:?}")]
    NotCollapsible {
        edge: Edge,
        failed: Vec<CollapseCondition>,
    },
    #[error("boundary is disconnected")]
    DisconnectedBoundary,
    #[error("tree code: {0}")]
    TreeCode(String),
    #[error("nucleus index {0} is not in the catalog")]
    UnknownNucleus(usize),
    #[error("face index {index} out of range ({available} faces)")]
    FaceIndex { index: usize, available: usize },
    #[error("face index {0} used twice")]
    FaceReused(usize),
    #[error("glued complex is not a tree of nuclei: {0}")]
    NotATree(String),
    #[error("{what} {value} out of range (max {max})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        max: u64,
    },
    #[error("the two tree counts disagree: {brute_force} vs {recurrence}")]
    CountMismatch { brute_force: u64, recurrence: u64 },
    #[error("s = {s} outside [0, s*] with s* = {s_star}")]
    BadEvaluationPoint { s: String, s_star: String },
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("A_M(s) decreased at M = {0}")]
    NotMonotone(usize),
}

/// Which collapse condition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CollapseCondition {
    VertexSets,
    EdgeSets,
    FaceSets,
    ExternalFlowers,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
}
