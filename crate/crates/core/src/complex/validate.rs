use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::surface::{classify_curve, classify_surface, Curve, Surface};
use super::{tet_faces, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_ball(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            write!(f, "{:<20} {}", c.name, if c.passed { "ok" } else { "FAIL" })?;
            if let Some(d) = &c.detail {
                write!(f, "  ({d})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn check(name: &'static str, failure: Option<String>) -> Check {
    Check {
        name,
        passed: failure.is_none(),
        detail: failure,
    }
}

/// Runs the necessary link conditions for a simplicial 3-ball.
pub fn validate_ball(t: &Triangulation) -> ValidationReport {
    let mut checks = Vec::with_capacity(6);

    checks.push(check(
        "face-multiplicity",
        t.face_multiplicities()
            .find(|(_, m)| *m > 2)
            .map(|(f, m)| format!("face {f:?} lies in {m} tetrahedra")),
    ));

    let boundary: Vec<_> = t.external_faces().iter().copied().collect();
    checks.push(check(
        "boundary-sphere",
        match classify_surface(&boundary) {
            Surface::Sphere => None,
            Surface::Disk { .. } => Some("boundary has a boundary".into()),
            Surface::Other(why) => Some(why),
        },
    ));

    let mut vertex_failure = None;
    for n in t.nodes() {
        let link = t.link_of_node(n);
        let ok = matches!(
            (classify_surface(&link), t.is_external_node(n)),
            (Surface::Sphere, false) | (Surface::Disk { .. }, true)
        );
        if !ok {
            let kind = if t.is_external_node(n) { "external" } else { "internal" };
            vertex_failure = Some(format!("link of {kind} node {n} is not a {}", if t.is_external_node(n) { "disk" } else { "sphere" }));
            break;
        }
    }
    checks.push(check("vertex-links", vertex_failure));

    let mut edge_failure = None;
    for e in t.edges() {
        let link = t.link_of_edge(e);
        let ok = matches!(
            (classify_curve(&link), t.is_external_edge(e)),
            (Curve::Path(_), true) | (Curve::Cycle(_), false)
        );
        if !ok {
            edge_failure = Some(format!("link of edge {e:?} is not a {}", if t.is_external_edge(e) { "path" } else { "cycle" }));
            break;
        }
    }
    checks.push(check("edge-links", edge_failure));

    // Dual graph: tetrahedra adjacent across shared faces.
    let mut by_face: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (i, tt) in t.tets().iter().enumerate() {
        for (f, _) in tet_faces(tt) {
            by_face.entry(f).or_default().push(i);
        }
    }
    let mut adj = vec![Vec::new(); t.num_tets()];
    for ts in by_face.values() {
        for &a in ts {
            for &b in ts {
                if a != b {
                    adj[a].push(b);
                }
            }
        }
    }
    let mut seen = BTreeSet::from([0usize]);
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if seen.insert(j) {
                stack.push(j);
            }
        }
    }
    checks.push(check(
        "connected",
        (seen.len() != t.num_tets())
            .then(|| format!("{} of {} tetrahedra reachable", seen.len(), t.num_tets())),
    ));

    let chi = t.num_tets() as i64 - t.faces().count() as i64 + t.edges().count() as i64
        - t.num_nodes() as i64;
    checks.push(check(
        "euler",
        (chi != -1).then(|| format!("t - f + e - n = {chi}")),
    ));

    ValidationReport { checks }
}
