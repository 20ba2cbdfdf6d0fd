use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{check_admissible, Disk, Label};
use crate::complex::{edge, face_edges, Edge, Face, Node};
use crate::error::PlanarError;

/// A simple path across a disk between two boundary nodes, avoiding boundary edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SplittingPath(pub Vec<Node>);

impl SplittingPath {
    pub fn nodes(&self) -> &[Node] {
        &self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.windows(2).map(|w| edge(w[0], w[1]))
    }

    pub fn ends(&self) -> (Node, Node) {
        (self.0[0], *self.0.last().unwrap())
    }
}

pub(crate) fn validate_splitting_path(d: &Disk, path: &[Node]) -> Result<(), PlanarError> {
    let bad = |why: String| Err(PlanarError::NotASplittingPath(why));
    if path.len() < 2 {
        return bad("fewer than 2 nodes".into());
    }
    let distinct: BTreeSet<Node> = path.iter().copied().collect();
    if distinct.len() != path.len() {
        return bad(format!("{path:?} is not simple"));
    }
    let (a, b) = (path[0], path[path.len() - 1]);
    if !d.is_boundary(a) || !d.is_boundary(b) {
        return bad(format!("ends of {path:?} are not both on the boundary"));
    }
    if let Some(n) = path[1..path.len() - 1].iter().find(|&&n| !d.is_interior(n)) {
        return bad(format!("inner node {n} of {path:?} is not interior"));
    }
    for w in path.windows(2) {
        if !d.has_edge(w[0], w[1]) {
            return bad(format!("({}, {}) is not an edge", w[0], w[1]));
        }
        if d.is_boundary_edge(w[0], w[1]) {
            return bad(format!("({}, {}) is a boundary edge", w[0], w[1]));
        }
    }
    Ok(())
}

fn differ(d: &Disk, a: Node, b: Node) -> bool {
    d.label(a) != d.label(b)
}

/// A chord between two labels if one exists, otherwise a shortest interior
/// path between two differently labeled boundary nodes. Ties go to the
/// lexicographically smallest node sequence.
pub fn find_splitting_path(d: &Disk) -> Result<SplittingPath, PlanarError> {
    if d.triangles().len() < 2 {
        return Err(PlanarError::TooSmall);
    }
    let violations = check_admissible(d);
    if !violations.is_empty() {
        return Err(PlanarError::Inadmissible(violations));
    }
    if let Some(c) = d.chords().find(|c| differ(d, c[0], c[1])) {
        return Ok(SplittingPath(vec![c[0], c[1]]));
    }

    // Shortest length from each start, over interior nodes only.
    let mut best: Option<(usize, Node)> = None;
    for &a in d.boundary() {
        let dist = interior_bfs(d, &[a]);
        let reach = d
            .boundary()
            .iter()
            .filter(|&&b| b != a && differ(d, a, b))
            .filter_map(|&b| {
                d.neighbours(b)
                    .filter_map(|u| dist.get(&u))
                    .min()
                    .map(|k| k + 1)
            })
            .min();
        if let Some(len) = reach {
            if best.is_none_or(|(l, s)| (len, a) < (l, s)) {
                best = Some((len, a));
            }
        }
    }
    let (len, a) = best.ok_or_else(|| {
        PlanarError::NotASplittingPath("no interior path joins two labels".into())
    })?;

    // Walk greedily from a towards the nearest valid target.
    let targets: Vec<Node> = d
        .boundary()
        .iter()
        .copied()
        .filter(|&b| b != a && differ(d, a, b))
        .collect();
    let to_target = interior_bfs(d, &targets);
    let mut path = vec![a];
    let mut cur = a;
    for remaining in (1..len).rev() {
        cur = d
            .neighbours(cur)
            .filter(|u| d.is_interior(*u) && to_target.get(u) == Some(&remaining))
            .min()
            .expect("distance layers are consistent");
        path.push(cur);
    }
    let end = d
        .neighbours(cur)
        .filter(|b| targets.contains(b))
        .min()
        .expect("last interior node touches a target");
    path.push(end);
    Ok(SplittingPath(path))
}

/// Distances to interior nodes, from a set of boundary sources, walking only through interior nodes.
fn interior_bfs(d: &Disk, sources: &[Node]) -> BTreeMap<Node, usize> {
    let mut dist = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &s in sources {
        for u in d.neighbours(s) {
            if d.is_interior(u) && !dist.contains_key(&u) {
                dist.insert(u, 1);
                queue.push_back(u);
            }
        }
    }
    while let Some(u) = queue.pop_front() {
        let k = dist[&u];
        for v in d.neighbours(u) {
            if d.is_interior(v) && !dist.contains_key(&v) {
                dist.insert(v, k + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Splits the triangles of `d` along a splitting path. The left part holds
/// the smallest boundary node of `d` that is not on the path.
pub(crate) fn split_disk(d: &Disk, path: &[Node]) -> Result<(Vec<Face>, Vec<Face>), PlanarError> {
    validate_splitting_path(d, path)?;
    let cut: BTreeSet<Edge> = path.windows(2).map(|w| edge(w[0], w[1])).collect();
    let tris = d.triangles();
    let mut by_edge: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (i, f) in tris.iter().enumerate() {
        for (e, _) in face_edges(f) {
            if !cut.contains(&e) {
                by_edge.entry(e).or_default().push(i);
            }
        }
    }
    let mut comp = vec![usize::MAX; tris.len()];
    let mut ncomp = 0;
    for start in 0..tris.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = ncomp;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for (e, _) in face_edges(&tris[i]) {
                for &j in by_edge.get(&e).into_iter().flatten() {
                    if comp[j] == usize::MAX {
                        comp[j] = ncomp;
                        stack.push(j);
                    }
                }
            }
        }
        ncomp += 1;
    }
    if ncomp != 2 {
        return Err(PlanarError::NotASplittingPath(format!(
            "{path:?} leaves {ncomp} pieces"
        )));
    }
    let on_path: BTreeSet<Node> = path.iter().copied().collect();
    let pivot = d
        .boundary()
        .iter()
        .copied()
        .filter(|n| !on_path.contains(n))
        .min()
        .expect("a splitting path misses some boundary node");
    let left_comp = (0..tris.len())
        .find(|&i| tris[i].contains(&pivot))
        .map(|i| comp[i])
        .unwrap();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (f, &c) in tris.iter().zip(&comp) {
        if c == left_comp {
            left.push(*f);
        } else {
            right.push(*f);
        }
    }
    Ok((left, right))
}

/// Cuts `d` and labels the inner path nodes with `left_new` / `right_new` on the two sides.
pub(crate) fn cut_disk_with_labels(
    d: &Disk,
    path: &[Node],
    left_new: Label,
    right_new: Label,
) -> Result<(Disk, Disk), PlanarError> {
    let (l, r) = split_disk(d, path)?;
    let inner: BTreeSet<Node> = path[1..path.len() - 1].iter().copied().collect();
    let build = |tris: Vec<Face>, new: &Label| -> Result<Disk, PlanarError> {
        let disk = Disk::new(tris)?;
        let labels = disk
            .boundary()
            .iter()
            .filter_map(|&n| {
                if inner.contains(&n) {
                    Some((n, new.clone()))
                } else {
                    d.label(n).map(|l| (n, l.clone()))
                }
            })
            .collect();
        disk.with_labels(labels)
    };
    Ok((build(l, &left_new)?, build(r, &right_new)?))
}

/// Cuts `d` along `path`, giving the inner path nodes the first L/R
/// sequence label not already in use.
pub fn cut_disk(d: &Disk, path: &SplittingPath) -> Result<(Disk, Disk), PlanarError> {
    let used: BTreeSet<&Label> = d.labels().values().collect();
    let fresh = (1..)
        .flat_map(|len| {
            (0..1u64 << len).map(move |bits| {
                (0..len)
                    .map(|i| if bits >> (len - 1 - i) & 1 == 0 { 'L' } else { 'R' })
                    .collect::<String>()
            })
        })
        .map(Label::Sequence)
        .find(|l| !used.contains(l))
        .unwrap();
    cut_disk_with_labels(d, path.nodes(), fresh.clone(), fresh)
}
