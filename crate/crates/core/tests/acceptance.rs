//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use nuclei_core::assembly::{
    add_tetra, bound_series, collapse_conditions, collapse_edge, count_trees, glue_tree, identify_faces,
    tree_code, unrooted_key, NucleusCatalog, TreeCode,
};
use nuclei_core::complex::{edge, face, validate_ball, Edge, Face, Node, Tet};
use nuclei_core::io::corpus;
use nuclei_core::moves::{
    apply_record, cut_a_3_face, open_a_2_face, remove_1_tetra, removable_apex, split_node, MoveKind, MoveParams,
};
use nuclei_core::planar::{check_admissible, cut_disk, find_splitting_path, Disk, Label, Violation};
use nuclei_core::reducer::{decompose, eliminate_internal_nodes, is_nucleus, ReduceConfig};
use nuclei_core::Triangulation;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// Plain counting from the tetrahedron list, independent of the library's
// incidence maps.

struct Counts {
    t: i64,
    f_s: i64,
    n_i: i64,
    n: i64,
    e: i64,
    f: i64,
    n_s: i64,
    e_s: i64,
}

fn sub(x: &[Node], skip: usize) -> Vec<Node> {
    x.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, n)| *n).collect()
}

fn counts(tets: &[Tet]) -> Counts {
    let mut faces: BTreeMap<Vec<Node>, usize> = BTreeMap::new();
    let mut edges = BTreeSet::new();
    let mut nodes = BTreeSet::new();
    for x in tets {
        let mut x = x.to_vec();
        x.sort_unstable();
        for i in 0..4 {
            *faces.entry(sub(&x, i)).or_default() += 1;
            nodes.insert(x[i]);
            for j in i + 1..4 {
                edges.insert((x[i], x[j]));
            }
        }
    }
    let ext: Vec<&Vec<Node>> = faces.iter().filter(|(_, &c)| c == 1).map(|(f, _)| f).collect();
    let ext_nodes: BTreeSet<Node> = ext.iter().flat_map(|f| f.iter().copied()).collect();
    let ext_edges: BTreeSet<(Node, Node)> = ext
        .iter()
        .flat_map(|f| [(f[0], f[1]), (f[0], f[2]), (f[1], f[2])])
        .collect();
    Counts {
        t: tets.len() as i64,
        f_s: ext.len() as i64,
        n_i: (nodes.len() - ext_nodes.len()) as i64,
        n: nodes.len() as i64,
        e: edges.len() as i64,
        f: faces.len() as i64,
        n_s: ext_nodes.len() as i64,
        e_s: ext_edges.len() as i64,
    }
}

fn triple(t: &Triangulation) -> [i64; 3] {
    let c = counts(t.tets());
    [c.t, c.f_s, c.n_i]
}

fn external_degree(tets: &[Tet], n: Node) -> usize {
    let mut faces: BTreeMap<Vec<Node>, usize> = BTreeMap::new();
    for x in tets.iter().filter(|x| x.contains(&n)) {
        let mut x = x.to_vec();
        x.sort_unstable();
        for i in 0..4 {
            *faces.entry(sub(&x, i)).or_default() += 1;
        }
    }
    let nbrs: BTreeSet<Node> = faces
        .iter()
        .filter(|(f, &c)| c == 1 && f.contains(&n))
        .flat_map(|(f, _)| f.iter().copied())
        .filter(|&m| m != n)
        .collect();
    nbrs.len()
}

fn ball_ok(t: &Triangulation) -> Result<(), String> {
    let v = validate_ball(t);
    if v.is_ball() {
        Ok(())
    } else {
        Err(format!("not a ball: {:?}", v.failures().map(|c| c.name).collect::<Vec<_>>()))
    }
}

/// Sample balls: random balls over a range of internal-node counts plus random trees.
fn instances(n: u64) -> Vec<Triangulation> {
    let mut out = Vec::new();
    let mut rng = corpus::rng(99);
    for seed in 0..n {
        out.push(corpus::random_ball(seed, (seed % 7) as usize));
        out.push(corpus::random_tree(&mut rng, 2 + (seed % 7) as u32));
    }
    out.push(corpus::starred());
    out.push(corpus::doubly_starred());
    out.push(corpus::table1());
    out
}

fn opposite_pair(t: &Triangulation, f: Face) -> Vec<(Node, Edge)> {
    // (apex, opposite edge) pairs of a face that satisfy the open-a-2-face shape.
    (0..3)
        .map(|i| (f[i], edge(f[(i + 1) % 3], f[(i + 2) % 3])))
        .filter(|&(a, e)| {
            t.is_external_node(a)
                && !t.is_external_edge(e)
                && t.is_external_edge(edge(a, e[0]))
                && t.is_external_edge(edge(a, e[1]))
        })
        .collect()
}

/// Interior paths across I(x): every chord, plus a shortest path through
/// interior nodes between each pair of boundary nodes that has one.
fn splitting_paths(t: &Triangulation, x: Node, limit: usize) -> Vec<Vec<Node>> {
    let Ok(d) = Disk::new(t.link_of_node(x)) else {
        return Vec::new();
    };
    let mut out: Vec<Vec<Node>> = d.chords().map(|c| vec![c[0], c[1]]).collect();
    let b = d.boundary().to_vec();
    for (i, &a) in b.iter().enumerate() {
        // BFS through interior nodes.
        let mut prev: BTreeMap<Node, Node> = BTreeMap::new();
        let mut queue = std::collections::VecDeque::new();
        for u in d.neighbours(a).filter(|u| d.is_interior(*u)) {
            prev.insert(u, a);
            queue.push_back(u);
        }
        while let Some(u) = queue.pop_front() {
            for w in d.neighbours(u).filter(|w| d.is_interior(*w)).collect::<Vec<_>>() {
                if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(w) {
                    e.insert(u);
                    queue.push_back(w);
                }
            }
        }
        for &c in &b[i + 1..] {
            let end = d.neighbours(c).filter(|u| d.is_interior(*u) && prev.contains_key(u)).min();
            if let Some(mut u) = end {
                let mut path = vec![c, u];
                while prev[&u] != a {
                    u = prev[&u];
                    path.push(u);
                }
                path.push(a);
                path.reverse();
                out.push(path);
            }
        }
        if out.len() >= limit {
            break;
        }
    }
    out.truncate(limit);
    out
}

fn relabel(t: &Triangulation, from: Node, to: Node) -> Triangulation {
    t.relabel(|n| if n == from { to } else { n }).unwrap().without_root()
}

// Criteria.

fn table1() -> Outcome {
    let t = corpus::table1();
    ensure!(t.num_tets() == 37 && t.num_nodes() == 12, "size {} tets on {} nodes", t.num_tets(), t.num_nodes());
    ball_ok(&t)?;
    let c = counts(t.tets());
    let mut face_use: BTreeMap<Vec<Node>, usize> = BTreeMap::new();
    for x in t.tets() {
        for i in 0..4 {
            *face_use.entry(sub(x, i)).or_default() += 1;
        }
    }
    let buried = t.tets().iter().filter(|x| (0..4).all(|i| face_use[&sub(*x, i)] == 2)).count();
    ensure!(buried == 17, "{buried} tetrahedra without an external face");
    ensure!(is_nucleus(&t), "not a nucleus");
    ensure!([c.t, c.f_s, c.n_i] == [37, 20, 0], "f-vector {:?}", [c.t, c.f_s, c.n_i]);
    let fv = t.f_vector().map_err(|e| e.to_string())?;
    ensure!(fv.triple() == [37, 20, 0], "library f-vector {:?}", fv.triple());
    ensure!(c.n - c.e + c.f - c.t == 1, "Euler characteristic of the ball");
    ensure!(c.n_s - c.e_s + c.f_s == 2, "Euler characteristic of the boundary");
    ensure!(3 * c.f_s == 2 * c.e_s && 4 * c.t == 2 * c.f - c.f_s, "incidence identities");
    ensure!(
        [fv.n_tot, fv.e_tot, fv.f_tot, fv.n_s, fv.e_s] == [c.n, c.e, c.f, c.n_s, c.e_s],
        "derived totals disagree with counting"
    );
    ensure!(c.f_s <= c.t + 3, "f_s > t + 3");
    Ok(format!("<37,20,0>, 17 buried, n/e/f = {}/{}/{}", c.n, c.e, c.f))
}

struct MoveStats {
    open: usize,
    remove: usize,
    split: usize,
    cut: usize,
    balls_checked: usize,
}

fn move_deltas(pool: &[Triangulation]) -> Result<MoveStats, String> {
    let mut s = MoveStats { open: 0, remove: 0, split: 0, cut: 0, balls_checked: 0 };
    for (k, t) in pool.iter().enumerate() {
        let before = triple(t);
        let internal: Vec<Face> = t.internal_faces().collect();
        for &f in &internal {
            for (a, e) in opposite_pair(t, f) {
                let m = open_a_2_face(t, a, e).map_err(|err| format!("instance {k}: open {a} {e:?}: {err}"))?;
                let after = triple(&m.triangulation);
                ensure!(after[0] == before[0] && after[1] == before[1] + 2 && after[2] == before[2], "open delta {before:?} -> {after:?}");
                ball_ok(&m.triangulation)?;
                s.open += 1;
                s.balls_checked += 1;
            }
            if (0..3).all(|i| t.is_external_edge(edge(f[i], f[(i + 1) % 3]))) {
                if let Ok(c) = cut_a_3_face(t, f) {
                    let (l, r) = (counts(c.left.tets()), counts(c.right.tets()));
                    let all = counts(t.tets());
                    ensure!(all.t == l.t + r.t && all.f_s == l.f_s + r.f_s - 2 && all.n_i == l.n_i + r.n_i, "cut identities on instance {k}");
                    ball_ok(&c.left)?;
                    ball_ok(&c.right)?;
                    s.cut += 1;
                    s.balls_checked += 2;
                }
            }
        }
        for x in t.tets() {
            if removable_apex(t, x).is_some() {
                let m = remove_1_tetra(t, *x).map_err(|err| format!("instance {k}: remove: {err}"))?;
                let after = triple(&m.triangulation);
                ensure!(after == [before[0] - 1, before[1] + 2, before[2] - 1], "remove delta {before:?} -> {after:?}");
                ball_ok(&m.triangulation)?;
                s.remove += 1;
                s.balls_checked += 1;
            }
        }
        for &x in t.external_nodes() {
            for path in splitting_paths(t, x, 4) {
                let m = split_node(t, x, &path).map_err(|err| format!("instance {k}: split {x} {path:?}: {err}"))?;
                let g = path.len() as i64 - 1;
                let after = triple(&m.triangulation);
                ensure!(after == [before[0] + g, before[1] + 2, before[2]], "split delta {before:?} -> {after:?}");
                ball_ok(&m.triangulation)?;
                s.split += 1;
                s.balls_checked += 1;
            }
        }
    }
    Ok(s)
}

fn move_criteria() -> (Outcome, Outcome) {
    let start = Instant::now();
    let pool = instances(60);
    let res = move_deltas(&pool);
    let el = start.elapsed();
    match res {
        Ok(s) => {
            let total = s.open + s.remove + s.split + s.cut;
            let deltas = if total < 1000 || s.open == 0 || s.remove == 0 || s.split == 0 || s.cut == 0 {
                Err(format!("too few applications: {total}"))
            } else if el > Duration::from_secs(30) {
                Err(format!("took {el:.1?}"))
            } else {
                Ok(format!(
                    "{total} moves (open {}, remove {}, split {}, cut {}) exact",
                    s.open, s.remove, s.split, s.cut
                ))
            };
            (deltas, Ok(format!("{} outputs pass validate_ball", s.balls_checked)))
        }
        Err(e) => (Err(e.clone()), Err(e)),
    }
}

fn round_trips() -> Outcome {
    let mut pool = instances(120);
    // Deeper balls have more openable faces.
    pool.extend((0..700).map(|seed| corpus::random_ball(5000 + seed, 4 + (seed % 7) as usize)));
    let [mut io, mut ra, mut ar, mut cs] = [0usize; 4];
    let mut canon_checked = 0;
    let mut canon = |a: &Triangulation, b: &Triangulation| -> Result<(), String> {
        // The relabeled comparison is exact; a sample also goes through canonical forms.
        if canon_checked < 200 {
            canon_checked += 1;
            ensure!(unrooted_key(a).unwrap() == unrooted_key(b).unwrap(), "canonical forms differ");
        }
        Ok(())
    };
    for t in &pool {
        let plain = t.clone().without_root();
        for f in t.internal_faces().collect::<Vec<_>>() {
            for (a, e) in opposite_pair(t, f) {
                let m = open_a_2_face(t, a, e).unwrap();
                let [l, r] = [m.record.created[0], m.record.created[1]];
                let back = identify_faces(&m.triangulation, e, l, r).map_err(|err| format!("identify after open: {err}"))?;
                let back = relabel(&back, l.min(r), a);
                ensure!(back == plain, "identify o open differs");
                canon(&back, t)?;
                io += 1;
            }
        }
        for x in t.tets() {
            if let Some(p) = removable_apex(t, x) {
                let m = remove_1_tetra(t, *x).unwrap();
                let back = add_tetra(&m.triangulation, p).map_err(|err| format!("add after remove: {err}"))?;
                ensure!(back.without_root() == plain, "add o remove differs");
                ar += 1;
                // The smaller ball exercises the other order at p.
                let g = add_tetra(&m.triangulation, p).unwrap();
                let again = remove_1_tetra(&g, *x).map_err(|err| format!("remove after add: {err}"))?;
                ensure!(again.triangulation == m.triangulation, "remove o add differs");
                ra += 1;
            }
        }
        for &x in t.external_nodes() {
            if let Ok(g) = add_tetra(t, x) {
                let new = *g.tets().iter().find(|y| !t.contains_tet(y)).unwrap();
                let back = remove_1_tetra(&g, new).map_err(|err| format!("remove after add: {err}"))?;
                let back = back.triangulation.without_root();
                ensure!(back == plain, "remove o add differs");
                canon(&back, t)?;
                ra += 1;
            }
            for path in splitting_paths(t, x, 1) {
                let m = split_node(t, x, &path).unwrap();
                let [l, r] = [m.record.created[0], m.record.created[1]];
                let e = edge(l, r);
                let failed = collapse_conditions(&m.triangulation, e).unwrap();
                ensure!(failed.is_empty(), "split edge not collapsible: {failed:?}");
                let back = collapse_edge(&m.triangulation, e).map_err(|err| format!("collapse after split: {err}"))?;
                let back = relabel(&back, l.min(r), x);
                ensure!(back == plain, "collapse o split differs");
                canon(&back, t)?;
                cs += 1;
            }
        }
    }
    ensure!(io >= 500 && ra >= 500 && ar >= 500 && cs >= 500, "too few: identify/open {io}, remove/add {ra}, add/remove {ar}, collapse/split {cs}");
    let orders = collapse_orders()?;
    Ok(format!(
        "identify/open {io}, remove/add {ra}, add/remove {ar}, collapse/split {cs}; {orders}"
    ))
}

/// Two collapsible edges collapse to the same complex in either order,
/// including pairs (a,b1), (a,b2) whose far ends are joined.
fn collapse_orders() -> Result<String, String> {
    let mut pairs = 0;
    let mut triangles = 0;
    let rename = |e: Edge, gone: Edge| -> Edge {
        let f = |n: Node| if n == gone[1] { gone[0] } else { n };
        edge(f(e[0]), f(e[1]))
    };
    for seed in 0..12u64 {
        let t = corpus::random_ball(seed, (seed % 4) as usize);
        let mut rng = corpus::rng(seed);
        let xs: Vec<Node> = t.external_nodes().iter().copied().collect();
        let x = *xs.choose(&mut rng).unwrap();
        let Some(p) = splitting_paths(&t, x, 8).choose(&mut rng).cloned() else { continue };
        let s1 = split_node(&t, x, &p).unwrap().triangulation;
        let mut candidates: Vec<Node> = s1.external_nodes().iter().copied().collect();
        candidates.shuffle(&mut rng);
        for y in candidates.into_iter().take(3) {
            for q in splitting_paths(&s1, y, 2) {
                let s2 = split_node(&s1, y, &q).unwrap().triangulation;
                let collapsible: Vec<Edge> = s2
                    .external_edges()
                    .iter()
                    .copied()
                    .filter(|e| collapse_conditions(&s2, *e).is_ok_and(|f| f.is_empty()))
                    .collect();
                for (i, &e1) in collapsible.iter().enumerate() {
                    for &e2 in &collapsible[i + 1..] {
                        let one = collapse_edge(&s2, e1).ok().and_then(|g| collapse_edge(&g, rename(e2, e1)).ok());
                        let two = collapse_edge(&s2, e2).ok().and_then(|g| collapse_edge(&g, rename(e1, e2)).ok());
                        ensure!(one.is_some() == two.is_some(), "{e1:?} then {e2:?} succeeds in one order only");
                        if let (Some(a), Some(b)) = (one, two) {
                            ensure!(unrooted_key(&a).unwrap() == unrooted_key(&b).unwrap(), "order matters for {e1:?}, {e2:?}");
                            pairs += 1;
                            let shared: BTreeSet<Node> = e1.iter().chain(e2.iter()).copied().collect();
                            if shared.len() == 3 {
                                let far: Vec<Node> = e1.iter().chain(e2.iter()).copied().filter(|n| !(e1.contains(n) && e2.contains(n))).collect();
                                if s2.has_edge(edge(far[0], far[1])) {
                                    triangles += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    ensure!(pairs > 0 && triangles > 0, "no order-independence instances ({pairs} pairs, {triangles} triangles)");
    Ok(format!("collapse order-independent on {pairs} pairs ({triangles} with joined far ends)"))
}

fn reducer() -> Outcome {
    let config = ReduceConfig::default();
    let mut worst: f64 = 0.0;
    let (mut splits, mut balls) = (0usize, 0usize);
    for internal in 1..=10usize {
        for seed in 0..10u64 {
            let t = corpus::random_ball(1000 * internal as u64 + seed, internal);
            ensure!(counts(t.tets()).n_i == internal as i64, "generator gave the wrong n_i");
            let e = eliminate_internal_nodes(&t, config).map_err(|err| format!("n_i {internal} seed {seed}: {err}"))?;
            ensure!(counts(e.triangulation.tets()).n_i == 0, "internal nodes remain");
            ball_ok(&e.triangulation)?;

            // Cutting paths of one hemisphere share no edge.
            for tr in &e.traces {
                let mut used: BTreeMap<Node, BTreeSet<Edge>> = BTreeMap::new();
                for st in &tr.steps {
                    let set = used.entry(st.hemisphere).or_default();
                    for w in st.inner.windows(2) {
                        ensure!(set.insert(edge(w[0], w[1])), "hemisphere {} reuses edge {:?}", st.hemisphere, w);
                    }
                }
            }

            // Replay the log and recount external degrees around each split.
            let mut pieces = vec![t.clone()];
            for rec in &e.log {
                if let (MoveKind::SplitNode, MoveParams::Path { node, .. }) = (&rec.kind, &rec.params) {
                    let d0 = external_degree(pieces[0].tets(), *node);
                    apply_record(&mut pieces, rec).map_err(|err| err.to_string())?;
                    let dl = external_degree(pieces[0].tets(), rec.created[0]);
                    let dr = external_degree(pieces[0].tets(), rec.created[1]);
                    ensure!(d0 + 4 == dl + dr, "|E(n*)| = {d0}, |E(L)| = {dl}, |E(R)| = {dr}");
                    splits += 1;
                } else {
                    apply_record(&mut pieces, rec).map_err(|err| err.to_string())?;
                }
            }
            ensure!(pieces.len() == 1 && pieces[0] == e.triangulation, "log does not replay");
            for st in e.traces.iter().flat_map(|tr| &tr.steps) {
                let [d0, dl, dr] = st.external_degrees;
                ensure!(d0 + 4 == dl + dr, "trace degrees {:?}", st.external_degrees);
            }

            let l = &e.ledger;
            let limit = 2016 * (l.t_before + l.n_i_before);
            ensure!(l.delta <= limit, "Δ = {} > {limit}", l.delta);
            worst = worst.max(l.delta as f64 / (l.t_before + l.n_i_before) as f64);
            balls += 1;
        }
    }
    Ok(format!("{balls} balls, {splits} splits, max Δ/(t+n_i) = {worst:.3} (limit 2016)"))
}

fn random_code(rng: &mut impl Rng, v: usize) -> TreeCode {
    // parent[i] = (parent, face) for i > 0.
    let mut free: Vec<(usize, usize)> = (0..3).map(|f| (0, f)).collect();
    let mut parent = vec![None];
    for i in 1..v {
        let k = rng.gen_range(0..free.len());
        let (p, f) = free.swap_remove(k);
        parent.push(Some((p, f)));
        free.extend((0..3).map(|f| (i, f)));
    }
    fn build(i: usize, face: Option<usize>, parent: &[Option<(usize, usize)>]) -> TreeCode {
        let children = (0..parent.len())
            .filter_map(|j| match parent[j] {
                Some((p, f)) if p == i => Some(build(j, Some(f), parent)),
                _ => None,
            })
            .collect();
        TreeCode { nucleus: 0, face, children }
    }
    build(0, None, &parent).normalized()
}

fn nucleus_trees() -> Outcome {
    let cat = NucleusCatalog::tetrahedron().nuclei().map_err(|e| e.to_string())?;
    let tetra_key = unrooted_key(&corpus::tetrahedron()).unwrap();
    let mut rng = corpus::rng(6);
    let mut checked = 0;
    for round in 0..120 {
        let v = 1 + round % 8;
        // Trees grown face by face, and trees glued from a random code.
        let grown = corpus::random_tree(&mut rng, v as u32);
        let grown = grown.clone().with_root(*grown.external_faces().iter().next().unwrap()).unwrap();
        let code = random_code(&mut rng, v);
        let glued = glue_tree(&cat, &code).map_err(|e| format!("glue {code}: {e}"))?;
        for t in [&grown, &glued] {
            let d = decompose(t, ReduceConfig::default()).map_err(|e| format!("v = {v}: {e}"))?;
            ensure!(d.split.nuclei.len() == v, "{} nuclei for v = {v}", d.split.nuclei.len());
            for n in &d.split.nuclei {
                ensure!(unrooted_key(&n.triangulation).unwrap() == tetra_key, "a nucleus is not a tetrahedron");
            }
        }
        let d = decompose(&glued, ReduceConfig::default()).unwrap();
        let back = tree_code(&d.split, &cat).map_err(|e| e.to_string())?;
        ensure!(back == code, "tree code {back} != {code}");
        let again = glue_tree(&cat, &back).map_err(|e| e.to_string())?;
        ensure!(again == glued, "glue o decompose moved {code}");
        checked += 1;
    }
    Ok(format!("{checked} trees with v <= 8 give v tetrahedra; glue o decompose fixed"))
}

fn counting() -> Outcome {
    let want = [1u64, 3, 12, 55];
    for (i, &w) in want.iter().enumerate() {
        let c = count_trees(i as u64 + 1).map_err(|e| e.to_string())?;
        ensure!(c.brute_force == w && c.recurrence == w, "v = {}: {c:?}", i + 1);
    }
    Ok("1, 3, 12, 55 by brute force and recurrence".into())
}

fn bound() -> Outcome {
    let cat = NucleusCatalog::tetrahedron();
    let s = BigRational::new(1.into(), 10.into());
    ensure!(cat.s_star().unwrap() == s, "s* = {}", cat.s_star().unwrap());
    let b = bound_series(&cat, 30, &s).map_err(|e| e.to_string())?;
    let zero = bound_series(&cat, 30, &BigRational::zero()).map_err(|e| e.to_string())?;

    // Oracle: a tree of v tetrahedra has t = v, f = 2v + 2, so weight 8v + 2,
    // and there are T(v) of them with T the ternary tree numbers.
    let mut tern = vec![BigUint::one()];
    for v in 1..=4usize {
        let mut sum = BigUint::zero();
        for i in 0..v {
            for j in 0..v - i {
                sum += &tern[i] * &tern[j] * &tern[v - 1 - i - j];
            }
        }
        tern.push(sum);
    }
    let five = BigRational::from_integer(5.into());
    for m in 0..=30usize {
        let mut want = BigRational::one();
        for (v, n) in tern.iter().enumerate().skip(1) {
            let w = 8 * v + 2;
            if w <= m {
                want += BigRational::from_integer(n.clone().into()) * num_traits::pow(s.clone(), w);
            }
        }
        ensure!(b.exact[m] == want, "A_{m}(1/10) = {} expected {want}", b.exact[m]);
        ensure!(b.exact[m] <= five, "A_{m} > 5");
        ensure!(m == 0 || b.exact[m] >= b.exact[m - 1], "not monotone at {m}");
        ensure!(zero.exact[m].is_one(), "A_{m}(0) = {}", zero.exact[m]);
    }
    ensure!(b.exact[0].is_one(), "A_0 != 1");
    Ok(format!("A_30(1/10) = {} ~ {:.12}", b.values[30], b.approx[30]))
}

fn random_disk(rng: &mut impl Rng, steps: usize) -> Vec<Face> {
    let mut tris: Vec<Face> = vec![[1, 2, 3]];
    let mut next: Node = 4;
    for _ in 0..steps {
        let d = Disk::new(tris.clone()).unwrap();
        let b = d.boundary().to_vec();
        let roll: f64 = rng.gen();
        if roll < 0.3 {
            let i = rng.gen_range(0..b.len());
            tris.push(face(b[i], b[(i + 1) % b.len()], next));
            next += 1;
        } else if roll < 0.55 {
            let k = rng.gen_range(0..tris.len());
            let [a, b2, c] = tris.swap_remove(k);
            tris.extend([face(a, b2, next), face(a, c, next), face(b2, c, next)]);
            next += 1;
        } else if roll < 0.8 {
            let inner: Vec<Edge> = d.interior_edges().collect();
            if let Some(&[a, b2]) = inner.choose(rng) {
                let sides: Vec<usize> = (0..tris.len()).filter(|&i| tris[i].contains(&a) && tris[i].contains(&b2)).collect();
                let apex = |f: Face| *f.iter().find(|&&n| n != a && n != b2).unwrap();
                let (c, e) = (apex(tris[sides[0]]), apex(tris[sides[1]]));
                if !d.has_edge(c, e) {
                    tris.retain(|f| !(f.contains(&a) && f.contains(&b2)));
                    tris.extend([face(a, c, e), face(b2, c, e)]);
                }
            }
        } else if b.len() > 3 {
            let i = rng.gen_range(0..b.len());
            let (p, q, r) = (b[(i + b.len() - 1) % b.len()], b[i], b[(i + 1) % b.len()]);
            if !d.has_edge(p, r) {
                tris.push(face(p, q, r));
            }
        }
    }
    tris
}

fn random_labels(rng: &mut impl Rng, d: &Disk) -> BTreeMap<Node, Label> {
    let b = d.boundary();
    let k = rng.gen_range(2..=b.len().min(5));
    let mut cuts: Vec<usize> = (1..b.len()).collect::<Vec<_>>().choose_multiple(rng, k - 1).copied().collect();
    cuts.push(0);
    cuts.sort_unstable();
    let shift = rng.gen_range(0..b.len());
    (0..b.len())
        .map(|i| {
            let arc = cuts.iter().rposition(|&c| c <= i).unwrap();
            (b[(i + shift) % b.len()], Label::Negative(-(arc as i32) - 1))
        })
        .collect()
}

fn planar() -> Outcome {
    let mut rng = corpus::rng(9);
    let (mut disks, mut labeled, mut cuts) = (0, 0, 0);
    while disks < 1000 {
        let steps = rng.gen_range(0..40);
        let d = Disk::new(random_disk(&mut rng, steps)).map_err(|e| e.to_string())?;
        let p = d.boundary().len() as i64;
        let n = d.interior_nodes().count() as i64;
        let mut edges = BTreeSet::new();
        for f in d.triangles() {
            edges.extend([edge(f[0], f[1]), edge(f[0], f[2]), edge(f[1], f[2])]);
        }
        let interior = edges.len() as i64 - p;
        ensure!(interior == 3 * n + p - 3, "interior edges {interior} vs 3n+p-3 = {}", 3 * n + p - 3);
        ensure!(d.interior_edges().count() as i64 == interior, "library interior edge count");
        disks += 1;

        if d.triangles().len() < 2 {
            continue;
        }
        let labels = random_labels(&mut rng, &d);
        let Ok(d) = d.with_labels(labels) else { continue };
        if !check_admissible(&d).is_empty() {
            continue;
        }
        labeled += 1;
        let mut stack = vec![d];
        while let Some(piece) = stack.pop() {
            if piece.triangles().len() < 2 {
                continue;
            }
            let path = find_splitting_path(&piece).map_err(|e| format!("no splitting path: {e}"))?;
            let (l, r) = cut_disk(&piece, &path).map_err(|e| e.to_string())?;
            for h in [&l, &r] {
                let v = check_admissible(h);
                ensure!(v.is_empty(), "cut along {:?} left {v:?}", path.nodes());
            }
            ensure!(l.triangles().len() + r.triangles().len() == piece.triangles().len(), "triangles lost");
            cuts += 1;
            stack.extend([l, r]);
        }
    }
    ensure!(labeled >= 100, "only {labeled} admissible labelings");

    // The three pictured violations.
    let fan = Disk::new((1..=6).map(|i| [7, i, i % 6 + 1])).unwrap();
    let one = fan.clone().with_labels((1..=6).map(|n| (n, Label::Negative(-1))).collect()).unwrap();
    ensure!(check_admissible(&one).iter().any(|v| matches!(v, Violation::K1 { .. })), "K1 missed");
    let split = fan
        .with_labels([(1, -1), (2, -1), (3, -2), (4, -1), (5, -3), (6, -3)].into_iter().map(|(n, k)| (n, Label::Negative(k))).collect())
        .unwrap();
    ensure!(check_admissible(&split).iter().any(|v| matches!(v, Violation::K2 { .. })), "K2 missed");
    let square = Disk::new([[1, 2, 3], [1, 3, 4]]).unwrap();
    let chord = square
        .with_labels([(1, -1), (2, -2), (3, -1), (4, -3)].into_iter().map(|(n, k)| (n, Label::Negative(k))).collect())
        .unwrap();
    ensure!(check_admissible(&chord).iter().any(|v| matches!(v, Violation::K3 { .. })), "K3 missed");
    Ok(format!("{disks} disks exact; K1/K2/K3 detected; {cuts} cuts on {labeled} labelings stay admissible"))
}

fn run(id: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into()))
    });
    report(id, name, start.elapsed(), limit, res)
}

fn report(id: usize, name: &str, el: Duration, limit: Option<Duration>, res: Outcome) -> bool {
    let res = match (res, limit) {
        (Ok(_), Some(l)) if el > l => Err(format!("took {el:.2?}, limit {l:?}")),
        (r, _) => r,
    };
    let (tag, msg) = match &res {
        Ok(m) => ("PASS", m),
        Err(m) => ("FAIL", m),
    };
    println!("{tag} [{id}] {name}: {msg} ({:.2} s)", el.as_secs_f64());
    res.is_ok()
}

fn main() {
    let secs = Duration::from_secs;
    let mut ok = run(1, "table1 nucleus", Some(secs(1)), table1);

    let start = Instant::now();
    let (deltas, balls) = catch_unwind(move_criteria).unwrap_or_else(|_| (Err("panic".into()), Err("panic".into())));
    let el = start.elapsed();
    ok &= report(2, "move deltas", el, Some(secs(30)), deltas);
    ok &= report(3, "ballness of move outputs", el, None, balls);

    ok &= run(4, "round trips", None, round_trips);
    ok &= run(5, "internal node elimination", Some(secs(120)), reducer);
    ok &= run(6, "trees of tetrahedra", None, nucleus_trees);
    ok &= run(7, "tree counts", Some(secs(10)), counting);
    ok &= run(8, "bound series", None, bound);
    ok &= run(9, "planar cuts", None, planar);
    if !ok {
        std::process::exit(1);
    }
}
