//! Recognition of 1- and 2-dimensional links.

use std::collections::{BTreeMap, BTreeSet};

use super::{face_edges, Edge, Face, Node};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Curve {
    /// Starts at the smaller endpoint.
    Path(Vec<Node>),
    /// Starts at the smallest node, heading to its smaller neighbour.
    Cycle(Vec<Node>),
    Other(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Surface {
    Disk { boundary: Vec<Node> },
    Sphere,
    Other(String),
}

/// Rotates and orients a cycle so it starts at its minimum and continues
/// towards the smaller of the two neighbours.
pub fn normalize_cycle(cycle: &[Node]) -> Vec<Node> {
    let k = cycle.len();
    if k < 3 {
        return cycle.to_vec();
    }
    let (i, _) = cycle.iter().enumerate().min_by_key(|(_, &n)| n).unwrap();
    let next = cycle[(i + 1) % k];
    let prev = cycle[(i + k - 1) % k];
    if next < prev {
        (0..k).map(|j| cycle[(i + j) % k]).collect()
    } else {
        (0..k).map(|j| cycle[(i + k - j) % k]).collect()
    }
}

pub fn classify_curve(edges: &[Edge]) -> Curve {
    if edges.is_empty() {
        return Curve::Other("empty".into());
    }
    let mut adj: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for &[a, b] in edges {
        if a == b || !seen.insert(super::edge(a, b)) {
            return Curve::Other(format!("repeated edge ({a},{b})"));
        }
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if let Some((n, _)) = adj.iter().find(|(_, v)| v.len() > 2) {
        return Curve::Other(format!("node {n} has degree > 2"));
    }
    let ends: Vec<Node> = adj.iter().filter(|(_, v)| v.len() == 1).map(|(n, _)| *n).collect();
    let start = match ends.len() {
        0 => *adj.keys().next().unwrap(),
        2 => ends[0],
        _ => return Curve::Other("more than one component".into()),
    };
    let mut walk = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let next = adj[&cur].iter().copied().find(|&m| Some(m) != prev);
        match next {
            Some(m) if m != start => {
                prev = Some(cur);
                cur = m;
                walk.push(m);
            }
            _ => break,
        }
        if walk.len() > adj.len() {
            break;
        }
    }
    if walk.len() != adj.len() {
        return Curve::Other("more than one component".into());
    }
    if ends.is_empty() {
        Curve::Cycle(normalize_cycle(&walk))
    } else {
        Curve::Path(walk)
    }
}

/// Decides whether a set of triangles is a disk, a sphere or something else.
pub fn classify_surface(tris: &[Face]) -> Surface {
    if tris.is_empty() {
        return Surface::Other("empty".into());
    }
    let mut edge_count: BTreeMap<Edge, usize> = BTreeMap::new();
    let mut star: BTreeMap<Node, Vec<Edge>> = BTreeMap::new();
    for f in tris {
        for (e, opp) in face_edges(f) {
            *edge_count.entry(e).or_default() += 1;
            star.entry(opp).or_default().push(e);
        }
    }
    if let Some((e, _)) = edge_count.iter().find(|(_, &c)| c > 2) {
        return Surface::Other(format!("edge {e:?} in more than 2 triangles"));
    }
    for (v, link) in &star {
        if let Curve::Other(why) = classify_curve(link) {
            return Surface::Other(format!("link of {v} is not a path or cycle: {why}"));
        }
    }

    // Connectivity over the vertex graph.
    let mut adj: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
    for &[a, b] in edge_count.keys() {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let first = *adj.keys().next().unwrap();
    let mut seen = BTreeSet::from([first]);
    let mut stack = vec![first];
    while let Some(v) = stack.pop() {
        for &w in &adj[&v] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    if seen.len() != adj.len() {
        return Surface::Other("disconnected".into());
    }

    let chi = adj.len() as i64 - edge_count.len() as i64 + tris.len() as i64;
    let boundary: Vec<Edge> = edge_count
        .iter()
        .filter(|(_, &c)| c == 1)
        .map(|(e, _)| *e)
        .collect();
    if boundary.is_empty() {
        return if chi == 2 {
            Surface::Sphere
        } else {
            Surface::Other(format!("closed surface with Euler characteristic {chi}"))
        };
    }
    match classify_curve(&boundary) {
        Curve::Cycle(cycle) if chi == 1 => Surface::Disk { boundary: cycle },
        Curve::Cycle(_) => Surface::Other(format!("bounded surface with Euler characteristic {chi}")),
        _ => Surface::Other("boundary is not a single cycle".into()),
    }
}
