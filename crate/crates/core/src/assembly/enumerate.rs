//! Desk-scale enumeration of small balls and the nuclei among them.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::canon::{rooted_count, unrooted_key, CanonicalKey};
use super::catalog::{CatalogEntry, NucleusCatalog};
use super::inverse::{add_tetra, collapse_conditions, collapse_edge, identify_faces};
use crate::complex::{face, Triangulation};
use crate::error::AssemblyError;
use crate::io::format_triangulation;
use crate::reducer::is_nucleus;

pub const MAX_ENUMERATION_SIZE: usize = 6;

#[derive(Debug, Clone, Serialize)]
pub struct NucleusClass {
    pub t: i64,
    pub f: i64,
    /// Distinct rooted forms of this class.
    pub rooted: usize,
    pub example: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Enumeration {
    pub t_max: usize,
    /// Balls up to isomorphism per t.
    pub balls: BTreeMap<usize, usize>,
    /// ρ(t, f) as rooted counts, keyed "t,f".
    pub rho: BTreeMap<String, u64>,
    /// ρ(t, f)^(1/t) per entry of `rho`.
    pub k1_estimates: BTreeMap<String, f64>,
    pub nuclei: Vec<NucleusClass>,
}

impl Enumeration {
    /// A catalog holding one rooted example per nucleus class.
    pub fn catalog(&self) -> NucleusCatalog {
        let mut entries: Vec<CatalogEntry> = Vec::new();
        for n in &self.nuclei {
            match entries.iter_mut().find(|e| e.t == n.t && e.f == n.f) {
                Some(e) => {
                    e.count += n.rooted as u64;
                    e.examples.push(n.example.clone());
                }
                None => entries.push(CatalogEntry {
                    t: n.t,
                    f: n.f,
                    count: n.rooted as u64,
                    examples: vec![n.example.clone()],
                }),
            }
        }
        let k1 = self.k1_estimates.values().fold(2.0f64, |a, &b| a.max(b)).ceil() as u64;
        NucleusCatalog { k1: k1.max(2).to_string(), entries }
    }
}

/// Every ball one step away: shelling a tetrahedron onto one, two or three
/// boundary faces, identifying two adjacent faces, or collapsing an edge.
fn neighbours(t: &Triangulation, t_max: usize) -> Vec<Triangulation> {
    let mut out = Vec::new();
    let grow = t.num_tets() < t_max;
    let apex = t.max_node() + 1;
    if grow {
        for f in t.external_faces() {
            if let Ok(g) = Triangulation::new(t.tets().iter().copied().chain([[f[0], f[1], f[2], apex]])) {
                out.push(g);
            }
        }
    }
    for &[a, b] in t.external_edges() {
        let opposite: Vec<u32> = t
            .external_faces()
            .iter()
            .filter(|f| f.contains(&a) && f.contains(&b))
            .map(|f| f.iter().copied().find(|&n| n != a && n != b).unwrap())
            .collect();
        if opposite.len() != 2 {
            continue;
        }
        let (c, d) = (opposite[0], opposite[1]);
        if grow && !t.has_edge([c.min(d), c.max(d)]) && !t.has_face(face(a, c, d)) && !t.has_face(face(b, c, d)) {
            if let Ok(g) = Triangulation::new(t.tets().iter().copied().chain([[a, b, c, d]])) {
                out.push(g);
            }
        }
        if let Ok(g) = identify_faces(t, [a, b], c, d) {
            out.push(g);
        }
        if t.num_tets() > 1 && collapse_conditions(t, [a, b]).is_ok_and(|f| f.is_empty()) {
            if let Ok(g) = collapse_edge(t, [a, b]) {
                out.push(g);
            }
        }
    }
    if grow {
        for &x in t.external_nodes() {
            if let Ok(g) = add_tetra(t, x) {
                out.push(g);
            }
        }
    }
    out
}

/// All balls with at most `t_max` tetrahedra reachable from the tetrahedron,
/// up to isomorphism, and the nuclei among them.
pub fn enumerate_balls(t_max: usize) -> Result<Enumeration, AssemblyError> {
    if t_max == 0 || t_max > MAX_ENUMERATION_SIZE {
        return Err(AssemblyError::OutOfRange {
            what: "t_max",
            value: t_max as u64,
            max: MAX_ENUMERATION_SIZE as u64,
        });
    }
    let start = Triangulation::new([[1, 2, 3, 4]])?;
    let mut seen: BTreeMap<CanonicalKey, Triangulation> = BTreeMap::new();
    seen.insert(unrooted_key(&start)?, start.clone());
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let found: Vec<CanonicalKey> = frontier
            .par_iter()
            .flat_map_iter(|t| neighbours(t, t_max))
            .map(|g| unrooted_key(&g))
            .collect::<Result<_, _>>()?;
        frontier = Vec::new();
        for k in found {
            if let Entry::Vacant(slot) = seen.entry(k) {
                let canon = Triangulation::new(slot.key().iter().copied())?;
                frontier.push(canon.clone());
                slot.insert(canon);
            }
        }
    }

    let mut balls: BTreeMap<usize, usize> = BTreeMap::new();
    let mut nuclei = Vec::new();
    let mut rho: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    for t in seen.values() {
        *balls.entry(t.num_tets()).or_default() += 1;
        if is_nucleus(t) {
            let fv = t.f_vector()?;
            let rooted = rooted_count(t)?;
            *rho.entry((fv.t, fv.f_s)).or_default() += rooted as u64;
            let f = *t.external_faces().iter().next().unwrap();
            nuclei.push(NucleusClass {
                t: fv.t,
                f: fv.f_s,
                rooted,
                example: format_triangulation(&t.clone().with_root(f)?),
            });
        }
    }
    let k1_estimates = rho
        .iter()
        .map(|(&(t, f), &n)| (format!("{t},{f}"), (n as f64).powf(1.0 / t as f64)))
        .collect();
    Ok(Enumeration {
        t_max,
        balls,
        rho: rho.into_iter().map(|((t, f), n)| (format!("{t},{f}"), n)).collect(),
        k1_estimates,
        nuclei,
    })
}
