//! Canonical labeling of rooted triangulations.
//!
//! External nodes are numbered flower by flower starting from the root face
//! (0, 1, 2). Internal nodes follow, in order of first appearance in a
//! breadth-first walk over tetrahedra that carries a vertex ordering across
//! each shared face. Output ids are label + 1.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::complex::{face, tet, without, Face, Node, Tet, Triangulation};
use crate::error::AssemblyError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    /// Relabeled complex, rooted at (1, 2, 3).
    pub triangulation: Triangulation,
    /// Original node to canonical label (id - 1).
    pub labels: BTreeMap<Node, Node>,
}

/// Sorted tetrahedra of a canonical complex; equal keys mean isomorphic.
pub type CanonicalKey = Vec<Tet>;

/// The external flower of `n` as a cycle.
pub(crate) fn flower_cycle(t: &Triangulation, n: Node) -> Vec<Node> {
    let edges = t.external_link_of_node(n);
    let mut adj: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
    for [a, b] in &edges {
        adj.entry(*a).or_default().push(*b);
        adj.entry(*b).or_default().push(*a);
    }
    let Some(&start) = adj.keys().next() else {
        return Vec::new();
    };
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = adj[&start][0];
    while cur != start && cycle.len() <= edges.len() {
        cycle.push(cur);
        let next = adj[&cur].iter().copied().find(|&x| x != prev).unwrap_or(start);
        prev = cur;
        cur = next;
    }
    cycle
}

fn label_nodes(t: &Triangulation, root: Face) -> Result<Vec<Node>, AssemblyError> {
    let mut label: BTreeMap<Node, u32> = BTreeMap::new();
    let mut order: Vec<Node> = Vec::with_capacity(t.num_nodes());
    for n in root {
        label.insert(n, order.len() as u32);
        order.push(n);
    }
    let mut k = 0;
    while k < order.len() {
        let c = flower_cycle(t, order[k]);
        let m = c.len();
        let best = (0..m)
            .filter_map(|i| {
                let (x, y) = (label.get(&c[i])?, label.get(&c[(i + 1) % m])?);
                Some(((*x.min(y), *x.max(y)), i))
            })
            .min();
        let Some((_, i)) = best else {
            return Err(AssemblyError::DisconnectedBoundary);
        };
        // Walk from the larger label away from the smaller one.
        let forward = label[&c[i]] < label[&c[(i + 1) % m]];
        let start = if forward { i + 1 } else { i };
        for step in 0..m {
            let j = if forward { (start + step) % m } else { (start + m - step) % m };
            if let Entry::Vacant(slot) = label.entry(c[j]) {
                slot.insert(order.len() as u32);
                order.push(c[j]);
            }
        }
        k += 1;
    }
    if order.len() != t.external_nodes().len() {
        return Err(AssemblyError::DisconnectedBoundary);
    }

    let first = *t.tets_of_face(face(root[0], root[1], root[2])).next().unwrap();
    let apex = first.iter().copied().find(|n| !root.contains(n)).unwrap();
    let mut seen: BTreeSet<Tet> = BTreeSet::from([first]);
    let mut queue = VecDeque::from([(first, [root[0], root[1], root[2], apex])]);
    while let Some((cur, ord)) = queue.pop_front() {
        for n in ord {
            if let Entry::Vacant(slot) = label.entry(n) {
                slot.insert(order.len() as u32);
                order.push(n);
            }
        }
        for i in 0..4 {
            let f: Face = without(&cur, ord[i]);
            for next in t.tets_of_face(f) {
                if seen.insert(*next) {
                    let mut o = ord;
                    o[i] = next.iter().copied().find(|n| !f.contains(n)).unwrap();
                    queue.push_back((*next, o));
                }
            }
        }
    }
    Ok(order)
}

fn check_root(t: &Triangulation, root: Face) -> Result<(), AssemblyError> {
    if !t.is_external_face(face(root[0], root[1], root[2])) {
        return Err(AssemblyError::FaceNotExternal(root));
    }
    Ok(())
}

/// Canonical labeling of `t` rooted at its root face.
pub fn canonical_label(t: &Triangulation) -> Result<Canonical, AssemblyError> {
    let root = t.root().ok_or(AssemblyError::Unrooted)?;
    check_root(t, root)?;
    let order = label_nodes(t, root)?;
    let labels: BTreeMap<Node, Node> = order.iter().enumerate().map(|(i, &n)| (n, i as Node)).collect();
    let out = t.relabel(|n| labels[&n] + 1)?;
    Ok(Canonical { triangulation: out, labels })
}

/// The canonical tetrahedron list for the root face ordered as `root`.
pub fn rooted_key(t: &Triangulation, root: Face) -> Result<CanonicalKey, AssemblyError> {
    check_root(t, root)?;
    let order = label_nodes(t, root)?;
    let labels: BTreeMap<Node, Node> = order.iter().enumerate().map(|(i, &n)| (n, i as Node + 1)).collect();
    let mut tets: Vec<Tet> = t
        .tets()
        .iter()
        .map(|x| tet(labels[&x[0]], labels[&x[1]], labels[&x[2]], labels[&x[3]]))
        .collect();
    tets.sort_unstable();
    Ok(tets)
}

/// The smallest rooted key over every external face and every ordering of it.
pub fn unrooted_key(t: &Triangulation) -> Result<CanonicalKey, AssemblyError> {
    let mut best: Option<CanonicalKey> = None;
    for f in t.external_faces() {
        let [a, b, c] = *f;
        for root in [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
            let key = rooted_key(t, root)?;
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.ok_or(AssemblyError::DisconnectedBoundary)
}

/// Number of distinct rooted forms, i.e. rootings up to isomorphism.
pub fn rooted_count(t: &Triangulation) -> Result<usize, AssemblyError> {
    let mut keys = BTreeSet::new();
    for f in t.external_faces() {
        let [a, b, c] = *f;
        for root in [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
            keys.insert(rooted_key(t, root)?);
        }
    }
    Ok(keys.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_fourth_node_is_three() {
        let t = Triangulation::new([[5, 6, 7, 9]]).unwrap().with_root([7, 5, 6]).unwrap();
        let c = canonical_label(&t).unwrap();
        assert_eq!(c.labels[&9], 3);
        assert_eq!(c.triangulation.tets(), &[[1, 2, 3, 4]]);
        assert_eq!(c.triangulation.root(), Some([1, 2, 3]));
    }

    #[test]
    fn two_tetrahedra_hand_trace() {
        // Root (1,2,3) on the first tetrahedron; 4 is its apex, 5 the apex of
        // the second one, glued along (2,3,4).
        let t = Triangulation::new([[1, 2, 3, 4], [2, 3, 4, 5]]).unwrap().with_root([1, 2, 3]).unwrap();
        let c = canonical_label(&t).unwrap();
        // Flower of label 0 is 2-3-4, so 4 gets 3. Flower of label 1 is
        // 1-3-5-4 with smallest labeled edge (0, 2), so 5 gets 4.
        let got: Vec<Node> = [1, 2, 3, 4, 5].iter().map(|n| c.labels[n]).collect();
        assert_eq!(got, vec![0, 1, 2, 3, 4]);
        assert_eq!(c.triangulation.tets(), &[[1, 2, 3, 4], [2, 3, 4, 5]]);
    }

    #[test]
    fn idempotent() {
        let t = Triangulation::new([[1, 2, 3, 5], [1, 2, 4, 5], [1, 3, 4, 5], [2, 3, 4, 5]])
            .unwrap()
            .with_root([4, 2, 1])
            .unwrap();
        let once = canonical_label(&t).unwrap().triangulation;
        let twice = canonical_label(&once).unwrap().triangulation;
        assert_eq!(once, twice);
        assert_eq!(once.tets().iter().flatten().max(), Some(&5));
    }

    #[test]
    fn unrooted_key_ignores_ids() {
        let a = Triangulation::new([[1, 2, 3, 4], [2, 3, 4, 5]]).unwrap();
        let b = Triangulation::new([[9, 7, 3, 4], [3, 4, 9, 11]]).unwrap();
        assert_eq!(unrooted_key(&a).unwrap(), unrooted_key(&b).unwrap());
        assert_eq!(rooted_count(&Triangulation::new([[1, 2, 3, 4]]).unwrap()).unwrap(), 1);
    }
}
