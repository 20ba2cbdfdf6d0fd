//! Coning a ball over all but one boundary face.

use crate::complex::{face, Face, Triangulation};
use crate::error::AssemblyError;

/// Adds a new apex joined to every external face except `keep`. The apex is
/// the smallest unused id; the result is again a ball whose boundary is
/// `keep` plus the three apex faces over its edges.
pub fn cone_ball(t: &Triangulation, keep: Face) -> Result<Triangulation, AssemblyError> {
    let keep_sorted = face(keep[0], keep[1], keep[2]);
    if !t.is_external_face(keep_sorted) {
        return Err(AssemblyError::FaceNotExternal(keep));
    }
    let apex = t.fresh_nodes(1)[0];
    let added = t
        .external_faces()
        .iter()
        .filter(|f| **f != keep_sorted)
        .map(|f| [f[0], f[1], f[2], apex]);
    let out = Triangulation::new(t.tets().iter().copied().chain(added))?;
    Ok(match t.root() {
        Some(r) if face(r[0], r[1], r[2]) == keep_sorted => out.with_root(r)?,
        _ => out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate_ball;

    #[test]
    fn cone_over_a_tetrahedron() {
        let t = Triangulation::new([[1, 2, 3, 4]]).unwrap();
        let c = cone_ball(&t, [1, 2, 3]).unwrap();
        assert!(validate_ball(&c).is_ball());
        // Node 4 ends up inside: the recount gives one internal node.
        assert_eq!(c.f_vector().unwrap().triple(), [4, 4, 1]);
        assert_eq!(c.external_nodes().iter().copied().collect::<Vec<_>>(), vec![1, 2, 3, 5]);
    }

    #[test]
    fn keep_face_must_be_external() {
        let t = Triangulation::new([[1, 2, 3, 4], [2, 3, 4, 5]]).unwrap();
        assert_eq!(cone_ball(&t, [2, 3, 4]), Err(AssemblyError::FaceNotExternal([2, 3, 4])));
    }
}
