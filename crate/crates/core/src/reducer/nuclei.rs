//! Splitting a ball without internal nodes into nuclei.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::eliminate::{eliminate_internal_nodes, Elimination, GrowthLedger, ReduceConfig};
use crate::complex::{face_edges, Face, FVector, Triangulation};
use crate::error::ReduceError;
use crate::moves::{apply_record, cut_a_3_face, open_a_2_face, MoveRecord};

/// No internal nodes and no internal face with two or more external edges.
pub fn is_nucleus(t: &Triangulation) -> bool {
    t.external_nodes().len() == t.num_nodes()
        && t.internal_faces().all(|f| external_edges_of(t, &f) <= 1)
}

fn external_edges_of(t: &Triangulation, f: &Face) -> usize {
    face_edges(f).iter().filter(|(e, _)| t.is_external_edge(*e)).count()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Nucleus {
    /// Rooted at the face it is glued to its parent by (or the global root).
    #[serde(skip)]
    pub triangulation: Triangulation,
    pub f_vector: FVector,
}

/// A cut face joining two nuclei.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Gluing {
    pub parent: usize,
    pub child: usize,
    pub face: Face,
}

/// Nuclei in replay order (index i is piece i of the move log) with the
/// cut faces oriented away from the root nucleus.
#[derive(Debug, Clone, Serialize)]
pub struct NucleusSplit {
    pub nuclei: Vec<Nucleus>,
    pub root: usize,
    pub gluings: Vec<Gluing>,
    #[serde(skip)]
    pub log: Vec<MoveRecord>,
}

impl NucleusSplit {
    pub fn children(&self, i: usize) -> impl Iterator<Item = &Gluing> + '_ {
        self.gluings.iter().filter(move |g| g.parent == i)
    }
}

fn next_open(t: &Triangulation) -> Option<(u32, [u32; 2])> {
    t.internal_faces().find_map(|f| {
        let inner: Vec<_> = face_edges(&f)
            .into_iter()
            .filter(|(e, _)| !t.is_external_edge(*e))
            .collect();
        (inner.len() == 1).then(|| (inner[0].1, inner[0].0))
    })
}

/// Opens every internal face with two external edges, then cuts along every
/// internal face with three. Input must have no internal nodes.
pub fn split_into_nuclei(t: &Triangulation) -> Result<NucleusSplit, ReduceError> {
    let n_i = t.num_nodes() - t.external_nodes().len();
    if n_i > 0 {
        return Err(ReduceError::HasInternalNodes(n_i));
    }
    let mut cur = t.clone();
    let mut log = Vec::new();
    // Cuts never change whether an edge is external away from the cut face,
    // so opening first leaves nothing to open afterwards.
    while let Some((apex, e)) = next_open(&cur) {
        let m = open_a_2_face(&cur, apex, e)?;
        cur = m.triangulation;
        log.push(m.record);
    }
    let cut_faces: Vec<Face> = cur
        .internal_faces()
        .filter(|f| external_edges_of(&cur, f) == 3)
        .collect();
    let root_face = cur
        .root()
        .unwrap_or_else(|| *cur.external_faces().iter().next().expect("a ball has external faces"));

    let mut pieces = vec![cur];
    for &f in &cut_faces {
        let target = pieces.iter().position(|p| p.has_face(f)).expect("cut face lies in some piece");
        let mut rec = cut_a_3_face(&pieces[target], f)?.record;
        rec.target = target;
        apply_record(&mut pieces, &rec)?;
        log.push(rec);
    }

    let root = pieces
        .iter()
        .position(|p| p.is_external_face(root_face))
        .expect("root face survives the cuts");
    let owner = |f: Face| -> Vec<usize> {
        (0..pieces.len()).filter(|&i| pieces[i].has_face(f)).collect()
    };
    let mut adjacent: BTreeMap<usize, Vec<(usize, Face)>> = BTreeMap::new();
    for &f in &cut_faces {
        let both = owner(f);
        if both.len() != 2 {
            return Err(ReduceError::NotANucleus(format!("cut face {f:?} lies in {} pieces", both.len())));
        }
        adjacent.entry(both[0]).or_default().push((both[1], f));
        adjacent.entry(both[1]).or_default().push((both[0], f));
    }

    let mut roots: BTreeMap<usize, Face> = BTreeMap::from([(root, root_face)]);
    let mut gluings = Vec::new();
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(p) = queue.pop_front() {
        for &(c, f) in adjacent.get(&p).into_iter().flatten() {
            if seen.insert(c) {
                roots.insert(c, f);
                gluings.push(Gluing { parent: p, child: c, face: f });
                queue.push_back(c);
            }
        }
    }
    if seen.len() != pieces.len() {
        return Err(ReduceError::NotANucleus("pieces are not connected by cut faces".into()));
    }

    let mut nuclei = Vec::with_capacity(pieces.len());
    for (i, p) in pieces.into_iter().enumerate() {
        if !is_nucleus(&p) {
            return Err(ReduceError::NotANucleus(format!("piece {i} still has a face to open or cut")));
        }
        let f_vector = p.f_vector()?;
        if f_vector.f_s > f_vector.t + 3 {
            return Err(ReduceError::NotANucleus(format!("piece {i} has f_s > t + 3 ({f_vector})")));
        }
        let mut triangulation = p;
        triangulation.set_root_unchecked(Some(roots[&i]));
        nuclei.push(Nucleus { triangulation, f_vector });
    }
    Ok(NucleusSplit { nuclei, root, gluings, log })
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub elimination: Elimination,
    pub split: NucleusSplit,
    /// Elimination moves followed by the splitting moves.
    pub log: Vec<MoveRecord>,
}

impl Decomposition {
    pub fn ledger(&self) -> &GrowthLedger {
        &self.elimination.ledger
    }
}

/// Eliminates every internal node, then splits into nuclei.
pub fn decompose(t: &Triangulation, config: ReduceConfig) -> Result<Decomposition, ReduceError> {
    let elimination = eliminate_internal_nodes(t, config)?;
    let split = split_into_nuclei(&elimination.triangulation)?;
    let log = elimination.log.iter().chain(&split.log).cloned().collect();
    Ok(Decomposition { elimination, split, log })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::replay;

    fn chain(v: u32) -> Triangulation {
        Triangulation::new((0..v).map(|i| [i + 1, i + 2, i + 3, i + 4])).unwrap()
    }

    #[test]
    fn single_tetrahedron() {
        let t = chain(1);
        assert!(is_nucleus(&t));
        let s = split_into_nuclei(&t).unwrap();
        assert_eq!(s.nuclei.len(), 1);
        assert!(s.gluings.is_empty() && s.log.is_empty());
    }

    #[test]
    fn two_glued_tetrahedra_are_not_a_nucleus() {
        assert!(!is_nucleus(&chain(2)));
    }

    #[test]
    fn chain_splits_into_tetrahedra() {
        let t = chain(4);
        let s = split_into_nuclei(&t).unwrap();
        assert_eq!(s.nuclei.len(), 4);
        assert_eq!(s.gluings.len(), 3);
        for n in &s.nuclei {
            assert_eq!(n.f_vector.triple(), [1, 4, 0]);
        }
        let pieces = replay(&t, &s.log).unwrap();
        let tets: Vec<_> = s.nuclei.iter().map(|n| n.triangulation.tets().to_vec()).collect();
        assert_eq!(pieces.iter().map(|p| p.tets().to_vec()).collect::<Vec<_>>(), tets);
    }

    #[test]
    fn starred_tetrahedron_decomposes_into_three() {
        let t = Triangulation::new([[1, 2, 3, 5], [1, 2, 4, 5], [1, 3, 4, 5], [2, 3, 4, 5]]).unwrap();
        let d = decompose(&t, ReduceConfig::default()).unwrap();
        assert_eq!(d.elimination.triangulation.f_vector().unwrap().triple(), [3, 6, 0]);
        assert_eq!(d.split.nuclei.len(), 3);
        assert_eq!(d.ledger().delta, 0);
    }
}
