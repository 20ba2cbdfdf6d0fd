//! Trees of nuclei: the planar tree code, gluing, reading a code back from
//! a decomposition, and counting trees of tetrahedra.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::canon::{canonical_label, rooted_key, CanonicalKey};
use crate::complex::{face_edges, Face, Node, Tet, Triangulation};
use crate::error::AssemblyError;
use crate::reducer::NucleusSplit;

/// `(cat child*)` at the root and `(cat@face child*)` below it. `cat`
/// indexes the catalog's explicit nuclei; `face` indexes the parent's
/// canonical external faces in ascending order, the root face excluded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeCode {
    pub nucleus: usize,
    pub face: Option<usize>,
    pub children: Vec<TreeCode>,
}

impl TreeCode {
    pub fn leaf(nucleus: usize, face: Option<usize>) -> Self {
        Self { nucleus, face, children: Vec::new() }
    }

    pub fn vertices(&self) -> usize {
        1 + self.children.iter().map(TreeCode::vertices).sum::<usize>()
    }

    /// Children ordered by face index, recursively.
    pub fn normalized(mut self) -> Self {
        self.children = self.children.into_iter().map(TreeCode::normalized).collect();
        self.children.sort_by_key(|c| c.face);
        self
    }
}

impl fmt::Display for TreeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.nucleus)?;
        if let Some(i) = self.face {
            write!(f, "@{i}")?;
        }
        for c in &self.children {
            write!(f, " {c}")?;
        }
        write!(f, ")")
    }
}

struct CodeParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl CodeParser<'_> {
    fn err<T>(&self, what: &str) -> Result<T, AssemblyError> {
        Err(AssemblyError::TreeCode(format!("{what} at offset {}", self.pos)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Result<usize, AssemblyError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("number too large"))
    }

    fn node(&mut self, root: bool) -> Result<TreeCode, AssemblyError> {
        self.skip_ws();
        if self.s.get(self.pos) != Some(&b'(') {
            return self.err("expected '('");
        }
        self.pos += 1;
        self.skip_ws();
        let nucleus = self.number()?;
        let face = if self.s.get(self.pos) == Some(&b'@') {
            self.pos += 1;
            Some(self.number()?)
        } else {
            None
        };
        if root != face.is_none() {
            return self.err(if root { "the root has no face index" } else { "missing face index" });
        }
        let mut children = Vec::new();
        loop {
            self.skip_ws();
            match self.s.get(self.pos) {
                Some(b')') => {
                    self.pos += 1;
                    return Ok(TreeCode { nucleus, face, children });
                }
                Some(b'(') => children.push(self.node(false)?),
                _ => return self.err("expected '(' or ')'"),
            }
        }
    }
}

impl FromStr for TreeCode {
    type Err = AssemblyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = CodeParser { s: s.as_bytes(), pos: 0 };
        let code = p.node(true)?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return p.err("trailing input");
        }
        Ok(code)
    }
}

/// Non-root external faces of a canonical complex, ascending.
fn child_faces(canon: &Triangulation) -> Vec<Face> {
    canon.external_faces().iter().copied().filter(|f| *f != [1, 2, 3]).collect()
}

/// Glues catalog nuclei along `code` and returns the canonically labeled result.
pub fn glue_tree(catalog: &[Triangulation], code: &TreeCode) -> Result<Triangulation, AssemblyError> {
    if code.face.is_some() {
        return Err(AssemblyError::TreeCode("the root has no face index".into()));
    }
    let forms: Vec<Triangulation> = catalog
        .iter()
        .map(|n| canonical_label(n).map(|c| c.triangulation))
        .collect::<Result<_, _>>()?;
    let mut tets = Vec::new();
    let mut next: Node = 1;
    let root = place(&forms, code, None, &mut next, &mut tets)?;
    let glued = Triangulation::new(tets)?.with_root(root)?;
    check_tree_of_nuclei(&glued)?;
    Ok(canonical_label(&glued)?.triangulation)
}

fn place(
    forms: &[Triangulation],
    code: &TreeCode,
    attach: Option<[Node; 3]>,
    next: &mut Node,
    tets: &mut Vec<Tet>,
) -> Result<[Node; 3], AssemblyError> {
    let form = forms.get(code.nucleus).ok_or(AssemblyError::UnknownNucleus(code.nucleus))?;
    let mut map: BTreeMap<Node, Node> = BTreeMap::new();
    if let Some(abc) = attach {
        for (i, n) in abc.into_iter().enumerate() {
            map.insert(i as Node + 1, n);
        }
    }
    for n in form.nodes() {
        map.entry(n).or_insert_with(|| {
            *next += 1;
            *next - 1
        });
    }
    tets.extend(form.tets().iter().map(|x| x.map(|n| map[&n])));

    let faces = child_faces(form);
    let mut used = BTreeSet::new();
    for c in &code.children {
        let i = c.face.ok_or_else(|| AssemblyError::TreeCode("missing face index".into()))?;
        let f = faces.get(i).ok_or(AssemblyError::FaceIndex { index: i, available: faces.len() })?;
        if !used.insert(i) {
            return Err(AssemblyError::FaceReused(i));
        }
        place(forms, c, Some(f.map(|n| map[&n])), next, tets)?;
    }
    Ok([map[&1], map[&2], map[&3]])
}

/// All nodes external and no internal face with exactly one internal edge.
pub fn check_tree_of_nuclei(t: &Triangulation) -> Result<(), AssemblyError> {
    if t.external_nodes().len() != t.num_nodes() {
        return Err(AssemblyError::NotATree("internal nodes present".into()));
    }
    for f in t.internal_faces() {
        let internal = face_edges(&f).iter().filter(|(e, _)| !t.is_external_edge(*e)).count();
        if internal == 1 {
            return Err(AssemblyError::NotATree(format!("face {f:?} has one internal edge")));
        }
    }
    Ok(())
}

fn catalog_index(keys: &[CanonicalKey], key: &CanonicalKey) -> Result<usize, AssemblyError> {
    keys.iter()
        .position(|k| k == key)
        .ok_or_else(|| AssemblyError::Catalog("a nucleus of the decomposition is not in the catalog".into()))
}

/// Reads the planar tree code off a nucleus split of a rooted tree of nuclei.
pub fn tree_code(split: &NucleusSplit, catalog: &[Triangulation]) -> Result<TreeCode, AssemblyError> {
    let keys: Vec<CanonicalKey> = catalog
        .iter()
        .map(|n| rooted_key(n, n.root().ok_or(AssemblyError::Unrooted)?))
        .collect::<Result<_, _>>()?;
    let root = &split.nuclei[split.root].triangulation;
    let order = root.root().ok_or(AssemblyError::Unrooted)?;
    read_code(split, &keys, split.root, order, None)
}

fn read_code(
    split: &NucleusSplit,
    keys: &[CanonicalKey],
    at: usize,
    order: [Node; 3],
    face: Option<usize>,
) -> Result<TreeCode, AssemblyError> {
    let t = split.nuclei[at].triangulation.clone().with_root(order)?;
    let nucleus = catalog_index(keys, &rooted_key(&t, order)?)?;
    let canon = canonical_label(&t)?;
    let faces = child_faces(&canon.triangulation);
    let mut children = Vec::new();
    for g in split.children(at) {
        let mut labeled: Vec<(Node, Node)> = g.face.iter().map(|&n| (canon.labels[&n] + 1, n)).collect();
        labeled.sort_unstable();
        let f = [labeled[0].0, labeled[1].0, labeled[2].0];
        let i = faces.iter().position(|x| *x == f).ok_or(AssemblyError::FaceNotExternal(g.face))?;
        let child_order = [labeled[0].1, labeled[1].1, labeled[2].1];
        children.push(read_code(split, keys, g.child, child_order, Some(i))?);
    }
    Ok(TreeCode { nucleus, face, children }.normalized())
}

pub const MAX_TREE_SIZE: u64 = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TreeCounts {
    pub v: u64,
    pub brute_force: u64,
    pub recurrence: u64,
}

/// Ternary trees: T(0) = 1, T(v) = sum over i + j + k = v - 1 of T(i) T(j) T(k).
pub fn ternary_recurrence(v: u64) -> u64 {
    let mut t = vec![1u64];
    for n in 1..=v as usize {
        let mut s = 0;
        for i in 0..n {
            for j in 0..n - i {
                s += t[i] * t[j] * t[n - 1 - i - j];
            }
        }
        t.push(s);
    }
    t[v as usize]
}

/// Distinct rooted complexes reached by gluing `v` tetrahedra one at a
/// time onto non-root external faces.
pub fn brute_force_trees(v: u64) -> Result<u64, AssemblyError> {
    let mut level: BTreeSet<CanonicalKey> = BTreeSet::from([vec![[1, 2, 3, 4]]]);
    for _ in 1..v {
        let next: Result<Vec<Vec<CanonicalKey>>, AssemblyError> = level
            .par_iter()
            .map(|key| {
                let t = Triangulation::new(key.iter().copied())?.with_root([1, 2, 3])?;
                let apex = t.max_node() + 1;
                t.external_faces()
                    .iter()
                    .filter(|f| **f != [1, 2, 3])
                    .map(|f| {
                        let g = Triangulation::new(key.iter().copied().chain([[f[0], f[1], f[2], apex]]))?;
                        rooted_key(&g, [1, 2, 3])
                    })
                    .collect()
            })
            .collect();
        level = next?.into_iter().flatten().collect();
    }
    Ok(level.len() as u64)
}

/// Rooted ordered trees of `v` tetrahedra, counted twice.
pub fn count_trees(v: u64) -> Result<TreeCounts, AssemblyError> {
    if v == 0 || v > MAX_TREE_SIZE {
        return Err(AssemblyError::OutOfRange { what: "v", value: v, max: MAX_TREE_SIZE });
    }
    let brute_force = brute_force_trees(v)?;
    let recurrence = ternary_recurrence(v);
    if brute_force != recurrence {
        return Err(AssemblyError::CountMismatch { brute_force, recurrence });
    }
    Ok(TreeCounts { v, brute_force, recurrence })
}

/// The tree of `v` tetrahedra whose children always sit on the first free face, as a code.
pub fn path_code(v: usize) -> TreeCode {
    let mut code = TreeCode::leaf(0, Some(0));
    for _ in 1..v {
        code = TreeCode { nucleus: 0, face: Some(0), children: vec![code] };
    }
    code.face = None;
    code
}
