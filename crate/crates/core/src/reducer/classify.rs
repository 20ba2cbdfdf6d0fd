use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{depth_map, face, tet_faces, Face, Node, Tet, Triangulation};
use crate::moves::removable_apex;

/// How directly a depth-1 internal node can be brought to the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class")]
pub enum NodeClass {
    /// Apex of a removable tetrahedron (the smallest one is the witness).
    C0 { tetra: Tet },
    /// Lies in a face (x, n, m) whose edge (n, m) is external.
    C1 { witness: Face },
    C2,
}

/// Classifies one internal node. Only meaningful at depth 1.
pub fn classify_node(t: &Triangulation, x: Node) -> NodeClass {
    let mut removable: Option<Tet> = None;
    let mut witness: Option<Face> = None;
    for tt in t.tets_of_node(x) {
        if removable_apex(t, tt) == Some(x) {
            removable = Some(removable.map_or(*tt, |r| r.min(*tt)));
        }
        for (f, _) in tet_faces(tt) {
            if !f.contains(&x) {
                continue;
            }
            let others: Vec<Node> = f.iter().copied().filter(|&n| n != x).collect();
            if t.is_external_edge([others[0], others[1]]) {
                let f = face(f[0], f[1], f[2]);
                witness = Some(witness.map_or(f, |w| w.min(f)));
            }
        }
    }
    match (removable, witness) {
        (Some(tetra), _) => NodeClass::C0 { tetra },
        (None, Some(witness)) => NodeClass::C1 { witness },
        _ => NodeClass::C2,
    }
}

/// Classes of all internal nodes at depth 1.
pub fn classify_depth1(t: &Triangulation) -> BTreeMap<Node, NodeClass> {
    let depth = depth_map(t);
    depth
        .level(1)
        .into_iter()
        .map(|x| (x, classify_node(t, x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starred_centre_is_c0() {
        let t = Triangulation::new([[1, 2, 3, 5], [1, 2, 4, 5], [1, 3, 4, 5], [2, 3, 4, 5]]).unwrap();
        let c = classify_depth1(&t);
        assert_eq!(c.len(), 1);
        assert_eq!(c[&5], NodeClass::C0 { tetra: [1, 2, 3, 5] });
    }

    #[test]
    fn nucleus_has_no_classes() {
        let t = Triangulation::new([[1, 2, 3, 4]]).unwrap();
        assert!(classify_depth1(&t).is_empty());
    }
}
