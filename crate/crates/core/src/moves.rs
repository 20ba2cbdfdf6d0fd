//! The forward moves: cut a 3-face, open a 2-face, remove a tetrahedron and
//! split a node along a path. Every move checks its exact f-vector delta.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::{edge, face, face_edges, tet, tet_faces, without, Edge, Face, Node, Tet, Triangulation};
use crate::error::MoveError;
use crate::planar::{split_disk, Disk};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Cut3Face,
    Open2Face,
    Remove1Tetra,
    SplitNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MoveParams {
    Face { face: Face },
    Open { node: Node, edge: Edge },
    Tetra { tetra: Tet },
    Path { node: Node, path: Vec<Node> },
}

/// One applied move. `target` indexes the piece it acted on when a log is
/// replayed over a growing list of pieces (a cut appends its right half).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub target: usize,
    pub kind: MoveKind,
    pub params: MoveParams,
    pub delta: [i64; 3],
    pub created: Vec<Node>,
}

#[derive(Debug, Clone)]
pub struct Moved {
    pub triangulation: Triangulation,
    pub record: MoveRecord,
}

#[derive(Debug, Clone)]
pub struct Cut {
    pub left: Triangulation,
    pub right: Triangulation,
    pub record: MoveRecord,
}

fn check_delta(before: &Triangulation, after: &Triangulation, expected: [i64; 3]) -> Result<[i64; 3], MoveError> {
    let got = before.f_vector()?.delta(&after.f_vector()?);
    if got != expected {
        return Err(MoveError::DeltaMismatch { expected, got });
    }
    Ok(got)
}

/// Cuts along an internal face whose three edges are external.
pub fn cut_a_3_face(t: &Triangulation, f: Face) -> Result<Cut, MoveError> {
    let f = face(f[0], f[1], f[2]);
    let sides: Vec<Tet> = t.tets_of_face(f).copied().collect();
    if sides.len() != 2 {
        return Err(MoveError::FaceNotInternal(f));
    }
    if let Some((e, _)) = face_edges(&f).into_iter().find(|(e, _)| !t.is_external_edge(*e)) {
        return Err(MoveError::FaceHasInternalEdge { face: f, edge: e });
    }

    // Flood the dual graph from the smaller tetrahedron without crossing f.
    let mut left: BTreeSet<Tet> = BTreeSet::from([sides[0]]);
    let mut stack = vec![sides[0]];
    while let Some(x) = stack.pop() {
        for (g, _) in tet_faces(&x) {
            if g == f {
                continue;
            }
            for y in t.tets_of_face(g) {
                if left.insert(*y) {
                    stack.push(*y);
                }
            }
        }
    }
    if left.contains(&sides[1]) {
        return Err(MoveError::NotSeparating(f));
    }
    let right: Vec<Tet> = t.tets().iter().filter(|x| !left.contains(*x)).copied().collect();
    let mut l = Triangulation::new(left)?;
    let mut r = Triangulation::new(right)?;
    if let Some(root) = t.root() {
        if l.is_external_face(root) && !r.has_face(root) {
            l.set_root_unchecked(Some(root));
        } else if r.is_external_face(root) && !l.has_face(root) {
            r.set_root_unchecked(Some(root));
        }
    }

    let (fv, f1, f2) = (t.f_vector()?, l.f_vector()?, r.f_vector()?);
    let delta = [f1.t + f2.t - fv.t, f1.f_s + f2.f_s - fv.f_s, f1.n_i + f2.n_i - fv.n_i];
    if delta != [0, 2, 0] {
        return Err(MoveError::DeltaMismatch { expected: [0, 2, 0], got: delta });
    }
    Ok(Cut {
        left: l,
        right: r,
        record: MoveRecord {
            target: 0,
            kind: MoveKind::Cut3Face,
            params: MoveParams::Face { face: f },
            delta,
            created: Vec::new(),
        },
    })
}

/// Removes `node` and cones the two halves of its hemisphere from two new
/// nodes. With `bridge`, the tetrahedra (L, R, e) for e on the path are added.
fn split_impl(t: &Triangulation, node: Node, path: &[Node], bridge: bool) -> Result<(Triangulation, [Node; 2]), MoveError> {
    if !t.has_node(node) || !t.is_external_node(node) {
        return Err(MoveError::NodeNotExternal(node));
    }
    let disk = Disk::new(t.link_of_node(node))?;
    let (left, right) = split_disk(&disk, path)?;
    let fresh = t.fresh_nodes(2);
    let (l, r) = (fresh[0], fresh[1]);
    let mut tets: Vec<Tet> = t.tets().iter().filter(|x| !x.contains(&node)).copied().collect();
    tets.extend(left.iter().map(|f| tet(l, f[0], f[1], f[2])));
    tets.extend(right.iter().map(|f| tet(r, f[0], f[1], f[2])));
    if bridge {
        tets.extend(path.windows(2).map(|w| tet(l, r, w[0], w[1])));
    }
    let mut out = Triangulation::new(tets)?;
    if let Some(root) = t.root() {
        let new_root = if root.contains(&node) {
            [l, r]
                .into_iter()
                .map(|c| root.map(|x| if x == node { c } else { x }))
                .find(|f| out.is_external_face(*f))
        } else {
            Some(root).filter(|f| out.is_external_face(*f))
        };
        out.set_root_unchecked(new_root);
    }
    Ok((out, [l, r]))
}

/// Splits external `node` along a splitting path of its hemisphere.
pub fn split_node(t: &Triangulation, node: Node, path: &[Node]) -> Result<Moved, MoveError> {
    let (out, created) = split_impl(t, node, path, true)?;
    let delta = check_delta(t, &out, [path.len() as i64 - 1, 2, 0])?;
    Ok(Moved {
        triangulation: out,
        record: MoveRecord {
            target: 0,
            kind: MoveKind::SplitNode,
            params: MoveParams::Path { node, path: path.to_vec() },
            delta,
            created: created.to_vec(),
        },
    })
}

/// Opens the internal face (apex, n1, n2) whose edge (n1, n2) is internal
/// while (apex, n1) and (apex, n2) are external.
pub fn open_a_2_face(t: &Triangulation, apex: Node, e: Edge) -> Result<Moved, MoveError> {
    let e = edge(e[0], e[1]);
    let f = face(apex, e[0], e[1]);
    if t.tets_of_face(f).count() != 2 {
        return Err(MoveError::FaceNotInternal(f));
    }
    if !t.is_external_node(apex) {
        return Err(MoveError::NodeNotExternal(apex));
    }
    if t.is_external_edge(e) {
        return Err(MoveError::EdgeNotInternal(e));
    }
    for n in e {
        if !t.is_external_edge([apex, n]) {
            return Err(MoveError::EdgeNotExternal(edge(apex, n)));
        }
    }
    let (out, created) = split_impl(t, apex, &e, false)?;
    let delta = check_delta(t, &out, [0, 2, 0])?;
    Ok(Moved {
        triangulation: out,
        record: MoveRecord {
            target: 0,
            kind: MoveKind::Open2Face,
            params: MoveParams::Open { node: apex, edge: e },
            delta,
            created: created.to_vec(),
        },
    })
}

/// The internal node of a removable tetrahedron, if it is one.
pub fn removable_apex(t: &Triangulation, x: &Tet) -> Option<Node> {
    let mut internal = x.iter().filter(|&&n| !t.is_external_node(n));
    let apex = *internal.next()?;
    if internal.next().is_some() {
        return None;
    }
    let opposite: Face = without(x, apex);
    t.is_external_face(opposite).then_some(apex)
}

/// Removes a tetrahedron with one internal node and one external face.
pub fn remove_1_tetra(t: &Triangulation, x: Tet) -> Result<Moved, MoveError> {
    let x = tet(x[0], x[1], x[2], x[3]);
    if !t.contains_tet(&x) {
        return Err(MoveError::UnknownTetrahedron(x));
    }
    let apex = removable_apex(t, &x).ok_or(MoveError::NotRemovable(x))?;
    let mut out = Triangulation::new(t.tets().iter().filter(|y| **y != x).copied())?;
    let gone: Face = without(&x, apex);
    out.set_root_unchecked(t.root().filter(|r| face(r[0], r[1], r[2]) != gone));
    let delta = check_delta(t, &out, [-1, 2, -1])?;
    Ok(Moved {
        triangulation: out,
        record: MoveRecord {
            target: 0,
            kind: MoveKind::Remove1Tetra,
            params: MoveParams::Tetra { tetra: x },
            delta,
            created: Vec::new(),
        },
    })
}

/// Applies one record to a list of pieces. A cut replaces the target with
/// its left half and appends the right half.
pub fn apply_record(pieces: &mut Vec<Triangulation>, rec: &MoveRecord) -> Result<(), MoveError> {
    let t = pieces.get(rec.target).ok_or(MoveError::BadTarget(rec.target))?;
    let (next, extra, delta) = match (&rec.kind, &rec.params) {
        (MoveKind::Cut3Face, MoveParams::Face { face }) => {
            let c = cut_a_3_face(t, *face)?;
            (c.left, Some(c.right), c.record.delta)
        }
        (MoveKind::Open2Face, MoveParams::Open { node, edge }) => {
            let m = open_a_2_face(t, *node, *edge)?;
            (m.triangulation, None, m.record.delta)
        }
        (MoveKind::Remove1Tetra, MoveParams::Tetra { tetra }) => {
            let m = remove_1_tetra(t, *tetra)?;
            (m.triangulation, None, m.record.delta)
        }
        (MoveKind::SplitNode, MoveParams::Path { node, path }) => {
            let m = split_node(t, *node, path)?;
            (m.triangulation, None, m.record.delta)
        }
        _ => return Err(MoveError::BadTarget(rec.target)),
    };
    if delta != rec.delta {
        return Err(MoveError::DeltaMismatch { expected: rec.delta, got: delta });
    }
    pieces[rec.target] = next;
    pieces.extend(extra);
    Ok(())
}

/// Replays a move log starting from a single triangulation.
pub fn replay(input: &Triangulation, log: &[MoveRecord]) -> Result<Vec<Triangulation>, MoveError> {
    let mut pieces = vec![input.clone()];
    for rec in log {
        apply_record(&mut pieces, rec)?;
    }
    Ok(pieces)
}
