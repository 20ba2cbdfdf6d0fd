//! The embedded corpus and deterministic generators of test balls.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::parse_triangulation;
use crate::assembly::{add_tetra, identify_faces};
use crate::complex::{face, Node, Tet, Triangulation};

pub const TABLE1: &str = include_str!("../../corpus/table1.tet");
pub const TETRA: &str = include_str!("../../corpus/tetra.tet");

/// Embedded corpus files by name, with or without the `.tet` suffix.
pub fn builtin(name: &str) -> Option<&'static str> {
    match name.trim_end_matches(".tet") {
        "table1" => Some(TABLE1),
        "tetra" => Some(TETRA),
        _ => None,
    }
}

pub fn table1() -> Triangulation {
    parse_triangulation(TABLE1).expect("embedded corpus parses")
}

pub fn tetrahedron() -> Triangulation {
    parse_triangulation(TETRA).expect("embedded corpus parses")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A linear chain of `v` tetrahedra, each glued to the previous one.
pub fn chain(v: u32) -> Triangulation {
    Triangulation::new((0..v).map(|i| [i + 1, i + 2, i + 3, i + 4])).expect("a chain is well formed")
}

/// Replaces the tetrahedron `x` by the cone over its boundary from a new node.
pub fn stellar(t: &Triangulation, x: Tet) -> Triangulation {
    let c = t.fresh_nodes(1)[0];
    let [a, b, d, e] = x;
    let cone = [[a, b, d, c], [a, b, e, c], [a, d, e, c], [b, d, e, c]];
    let mut out = Triangulation::new(t.tets().iter().copied().filter(|y| *y != x).chain(cone))
        .expect("stellar subdivision keeps a simplicial complex");
    if let Some(r) = t.root() {
        out = out.with_root(r).expect("the root face survives");
    }
    out
}

/// The tetrahedron with one interior node joined to its four corners.
pub fn starred() -> Triangulation {
    stellar(&Triangulation::new([[1, 2, 3, 4]]).unwrap(), [1, 2, 3, 4])
}

/// The starred tetrahedron with one of its four tetrahedra starred again.
pub fn doubly_starred() -> Triangulation {
    let s = starred();
    stellar(&s, s.tets()[0])
}

/// A random tree of `v` tetrahedra: each new one goes on a random external face.
pub fn random_tree(rng: &mut impl Rng, v: u32) -> Triangulation {
    let mut tets: Vec<Tet> = vec![[1, 2, 3, 4]];
    for next in (5..).take(v.saturating_sub(1) as usize) {
        let t = Triangulation::new(tets.iter().copied()).unwrap();
        let faces: Vec<_> = t.external_faces().iter().copied().collect();
        let f = faces.choose(rng).unwrap();
        tets.push([f[0], f[1], f[2], next]);
    }
    Triangulation::new(tets).unwrap()
}

/// Adds a tetrahedron over two adjacent external faces whose far corners
/// are not joined. Returns `None` if no such pair exists.
pub fn random_shell_two(rng: &mut impl Rng, t: &Triangulation) -> Option<Triangulation> {
    let mut options = Vec::new();
    for &[a, b] in t.external_edges() {
        let opp: Vec<Node> = t
            .external_faces()
            .iter()
            .filter(|f| f.contains(&a) && f.contains(&b))
            .map(|f| f.iter().copied().find(|&n| n != a && n != b).unwrap())
            .collect();
        if opp.len() == 2 && !t.has_edge([opp[0].min(opp[1]), opp[0].max(opp[1])]) {
            options.push([a, b, opp[0], opp[1]]);
        }
    }
    let x = options.choose(rng)?;
    Triangulation::new(t.tets().iter().copied().chain([*x])).ok()
}

fn random_identify(rng: &mut impl Rng, t: &Triangulation) -> Option<Triangulation> {
    let mut edges: Vec<_> = t.external_edges().iter().copied().collect();
    edges.shuffle(rng);
    for [a, b] in edges {
        let opp: Vec<Node> = t
            .external_faces()
            .iter()
            .filter(|f| f.contains(&a) && f.contains(&b))
            .map(|f| f.iter().copied().find(|&n| n != a && n != b).unwrap())
            .collect();
        if let Ok(g) = identify_faces(t, [a, b], opp[0], opp[1]) {
            return Some(g);
        }
    }
    None
}

/// A ball with exactly `internal` internal nodes, grown from a random tree
/// by shelling, identifications and added tetrahedra.
pub fn random_ball(seed: u64, internal: usize) -> Triangulation {
    let mut rng = rng(seed);
    let v = rng.gen_range(1..=4);
    let mut t = random_tree(&mut rng, v);
    let mut guard = 0;
    while (t.num_nodes() - t.external_nodes().len()) < internal {
        guard += 1;
        assert!(guard < 10_000, "generator stalled");
        let candidates: Vec<Node> = t
            .external_nodes()
            .iter()
            .copied()
            .filter(|&x| t.external_degree(x) == 3)
            .collect();
        let roll: f64 = rng.gen();
        let next = if roll < 0.5 {
            candidates.choose(&mut rng).and_then(|&x| add_tetra(&t, x).ok())
        } else if roll < 0.65 {
            random_identify(&mut rng, &t)
        } else if roll < 0.9 {
            random_shell_two(&mut rng, &t)
        } else {
            let faces: Vec<_> = t.external_faces().iter().copied().collect();
            let f = faces.choose(&mut rng).unwrap();
            let apex = t.fresh_nodes(1)[0];
            Triangulation::new(t.tets().iter().copied().chain([[f[0], f[1], f[2], apex]])).ok()
        };
        if let Some(g) = next {
            t = g;
        }
    }
    let f = *t.external_faces().iter().next().unwrap();
    t.with_root(face(f[0], f[1], f[2])).unwrap()
}
