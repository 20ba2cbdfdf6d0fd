//! The inverse moves: identification of two adjacent external faces,
//! adding a tetrahedron, and collapsing an external edge.

use std::collections::BTreeSet;

use crate::complex::{edge, face, tet, Edge, Face, Node, Tet, Triangulation};
use crate::error::{AssemblyError, CollapseCondition, MoveError};

fn expect_delta(before: &Triangulation, after: &Triangulation, expected: [i64; 3]) -> Result<(), AssemblyError> {
    let got = before.f_vector()?.delta(&after.f_vector()?);
    if got != expected {
        return Err(MoveError::DeltaMismatch { expected, got }.into());
    }
    Ok(())
}

/// Merges the external nodes `x` and `y` opposite the external edge (a, b),
/// gluing the faces (x, a, b) and (y, a, b). The merged node keeps min(x, y).
pub fn identify_faces(t: &Triangulation, e: Edge, x: Node, y: Node) -> Result<Triangulation, AssemblyError> {
    let [a, b] = edge(e[0], e[1]);
    if x == y {
        return Err(AssemblyError::SameNode(x, y));
    }
    if !t.is_external_edge([a, b]) {
        return Err(AssemblyError::EdgeNotExternal([a, b]));
    }
    for n in [x, y] {
        let f = face(n, a, b);
        if !t.is_external_face(f) {
            return Err(AssemblyError::FaceNotExternal(f));
        }
    }
    if t.has_edge(edge(x, y)) {
        return Err(AssemblyError::Adjacent(x, y));
    }
    let nx = t.neighbours(x);
    if let Some(&common) = t.neighbours(y).iter().find(|m| nx.contains(m) && **m != a && **m != b) {
        return Err(AssemblyError::CommonNeighbour { x, y, common });
    }
    let (keep, gone) = (x.min(y), x.max(y));
    let mut out = t.relabel(|n| if n == gone { keep } else { n })?;
    out.set_root_unchecked(t.root().map(|r| r.map(|n| if n == gone { keep } else { n })));
    expect_delta(t, &out, [0, -2, 0])?;
    Ok(out)
}

/// Adds the tetrahedron (x, a1, a2, a3) over an external node of external degree 3.
pub fn add_tetra(t: &Triangulation, x: Node) -> Result<Triangulation, AssemblyError> {
    if !t.is_external_node(x) {
        return Err(AssemblyError::NodeNotExternal(x));
    }
    let ring: BTreeSet<Node> = t.external_link_of_node(x).into_iter().flatten().collect();
    if ring.len() != 3 {
        return Err(AssemblyError::ExternalDegree { node: x, degree: ring.len() });
    }
    let a: Vec<Node> = ring.into_iter().collect();
    let cap = face(a[0], a[1], a[2]);
    if t.has_face(cap) {
        return Err(AssemblyError::FaceExists(cap));
    }
    let new: Tet = tet(x, a[0], a[1], a[2]);
    let mut out = Triangulation::new(t.tets().iter().copied().chain([new]))?;
    // A root face at x is now internal; the cap takes over its orientation.
    out.set_root_unchecked(t.root().map(|r| {
        if r.contains(&x) {
            let mut o = r;
            let missing = cap.iter().copied().find(|n| !r.contains(n)).unwrap();
            o[r.iter().position(|&n| n == x).unwrap()] = missing;
            o
        } else {
            r
        }
    }));
    expect_delta(t, &out, [1, -2, 1])?;
    Ok(out)
}

/// The failed conditions for collapsing the external edge (a, b), empty if collapsible.
pub fn collapse_conditions(t: &Triangulation, e: Edge) -> Result<Vec<CollapseCondition>, AssemblyError> {
    let [a, b] = edge(e[0], e[1]);
    if !t.is_external_edge([a, b]) {
        return Err(AssemblyError::EdgeNotExternal([a, b]));
    }
    let mut failed = Vec::new();
    let link_e = t.link_of_edge([a, b]);
    let nodes_e: BTreeSet<Node> = link_e.iter().flatten().copied().collect();
    let na: BTreeSet<Node> = t.neighbours(a).into_iter().filter(|&n| n != b).collect();
    let nb: BTreeSet<Node> = t.neighbours(b).into_iter().filter(|&n| n != a).collect();
    if na.intersection(&nb).copied().collect::<BTreeSet<_>>() != nodes_e {
        failed.push(CollapseCondition::VertexSets);
    }

    let la = t.link_of_node(a);
    let lb = t.link_of_node(b);
    let edges_of = |faces: &[Face], skip: Node| -> BTreeSet<Edge> {
        faces
            .iter()
            .flat_map(|f| [edge(f[0], f[1]), edge(f[0], f[2]), edge(f[1], f[2])])
            .filter(|e| !e.contains(&skip))
            .collect()
    };
    let ea = edges_of(&la, b);
    let eb = edges_of(&lb, a);
    let le: BTreeSet<Edge> = link_e.iter().copied().collect();
    if ea.intersection(&eb).copied().collect::<BTreeSet<_>>() != le {
        failed.push(CollapseCondition::EdgeSets);
    }

    let fa: BTreeSet<Face> = la.iter().copied().collect();
    if lb.iter().any(|f| fa.contains(f)) {
        failed.push(CollapseCondition::FaceSets);
    }

    // The two external flowers may only meet in the two ends of the edge's link.
    let ext_a: BTreeSet<Node> = t.external_link_of_node(a).into_iter().flatten().filter(|&n| n != b).collect();
    let ext_b: BTreeSet<Node> = t.external_link_of_node(b).into_iter().flatten().filter(|&n| n != a).collect();
    let ends: BTreeSet<Node> = t
        .external_faces()
        .iter()
        .filter(|f| f.contains(&a) && f.contains(&b))
        .flat_map(|f| f.iter().copied().filter(|&n| n != a && n != b))
        .collect();
    let ea_ext: BTreeSet<Edge> = t.external_link_of_node(a).into_iter().collect();
    let shared_edge = t.external_link_of_node(b).iter().any(|e| ea_ext.contains(e));
    if ext_a.intersection(&ext_b).copied().collect::<BTreeSet<_>>() != ends || shared_edge {
        failed.push(CollapseCondition::ExternalFlowers);
    }
    Ok(failed)
}

/// Collapses the external edge (a, b) into min(a, b), dropping its star.
pub fn collapse_edge(t: &Triangulation, e: Edge) -> Result<Triangulation, AssemblyError> {
    let [a, b] = edge(e[0], e[1]);
    let failed = collapse_conditions(t, [a, b])?;
    if !failed.is_empty() {
        return Err(AssemblyError::NotCollapsible { edge: [a, b], failed });
    }
    let star = t.tets_of_edge([a, b]).count() as i64;
    let (keep, gone) = (a, b);
    let map = |n: Node| if n == gone { keep } else { n };
    let tets: Vec<Tet> = t
        .tets()
        .iter()
        .filter(|x| !(x.contains(&a) && x.contains(&b)))
        .map(|x| x.map(map))
        .collect();
    let mut out = Triangulation::new(tets)?;
    let root = t.root().map(|r| r.map(map));
    out.set_root_unchecked(root.filter(|r| {
        let f = face(r[0], r[1], r[2]);
        r[0] != r[1] && r[1] != r[2] && r[0] != r[2] && out.is_external_face(f)
    }));
    expect_delta(t, &out, [-star, -2, 0])?;
    Ok(out)
}
