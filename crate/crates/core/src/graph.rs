//! Kurihara graphs (graphs with half-edges), quotients of finite trees by
//! finite groups acting with inversions, barycentric subdivision of the
//! inverted edges and the associated masses.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{inconsistent, invalid, Error, Result};
use crate::util::{fmt_rational, parse_rational};

/// Largest group the enumeration accepts.
pub const MAX_GROUP_ORDER: usize = 10_000;

/// A directed edge of a Kurihara graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirEdge {
    /// Index of the reversed edge; equal to the own index for half-edges.
    pub bar: usize,
    /// Index of the origin vertex.
    pub origin: usize,
}

/// A graph whose directed edges carry an involution bar(·) and an origin
/// map. Fixed points of bar are half-edges; they are not self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KuriharaGraph {
    vertex_ids: Vec<u64>,
    edge_ids: Vec<u64>,
    edges: Vec<DirEdge>,
    vertex_mass: Option<Vec<BigRational>>,
    edge_mass: Option<Vec<BigRational>>,
}

impl KuriharaGraph {
    /// Builds a graph on vertices `0..n_vertices` from directed edges.
    pub fn new(n_vertices: usize, edges: Vec<DirEdge>) -> Result<Self> {
        let g = KuriharaGraph {
            vertex_ids: (0..n_vertices as u64).collect(),
            edge_ids: (0..edges.len() as u64).collect(),
            edges,
            vertex_mass: None,
            edge_mass: None,
        };
        g.check()?;
        Ok(g)
    }

    /// Attaches masses, one per vertex and one per directed edge.
    pub fn with_masses(mut self, vertex: Vec<BigRational>, edge: Vec<BigRational>) -> Result<Self> {
        if vertex.len() != self.vertex_ids.len() || edge.len() != self.edges.len() {
            return invalid("mass vectors must match the vertex and edge counts");
        }
        for e in 0..self.edges.len() {
            if edge[e] != edge[self.edges[e].bar] {
                return invalid(format!("edge {e} and its reverse carry different masses"));
            }
        }
        self.vertex_mass = Some(vertex);
        self.edge_mass = Some(edge);
        Ok(self)
    }

    fn check(&self) -> Result<()> {
        let nv = self.vertex_ids.len();
        for (i, e) in self.edges.iter().enumerate() {
            if e.bar >= self.edges.len() || e.origin >= nv {
                return invalid(format!("edge {i} refers to a missing edge or vertex"));
            }
            if self.edges[e.bar].bar != i {
                return invalid(format!("bar is not an involution at edge {i}"));
            }
        }
        Ok(())
    }

    /// Number of vertices.
    pub fn v(&self) -> usize {
        self.vertex_ids.len()
    }

    /// Directed edges.
    pub fn edges(&self) -> &[DirEdge] {
        &self.edges
    }

    /// Terminus t(e) = o(bar(e)).
    pub fn terminus(&self, e: usize) -> usize {
        self.edges[self.edges[e].bar].origin
    }

    /// Whether e is a half-edge.
    pub fn is_half_edge(&self, e: usize) -> bool {
        self.edges[e].bar == e
    }

    /// Number of regular edges, #Ed_r/2.
    pub fn e_r(&self) -> usize {
        self.edges
            .iter()
            .enumerate()
            .filter(|&(i, e)| e.bar != i)
            .count()
            / 2
    }

    /// Number of half-edges. Each is one bar-fixed directed edge, counted
    /// as #Ed_h/2 with Ed_h listing it in both orientations.
    pub fn e_h(&self) -> usize {
        self.edges
            .iter()
            .enumerate()
            .filter(|&(i, e)| e.bar == i)
            .count()
    }

    /// Directed edges with origin v, half-edges included.
    pub fn star(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].origin == v)
            .collect()
    }

    /// Connectedness of the underlying graph.
    pub fn is_connected(&self) -> bool {
        let n = self.v();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for e in 0..self.edges.len() {
            adj[self.edges[e].origin].push(self.terminus(e));
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Genus 1 + e_r − v, the rank of H₁.
    pub fn genus(&self) -> Result<u64> {
        if !self.is_connected() {
            return invalid("genus of a disconnected or empty graph");
        }
        let g = 1 + self.e_r() as i64 - self.v() as i64;
        if g < 0 {
            return inconsistent("negative genus of a connected graph");
        }
        Ok(g as u64)
    }

    /// Vertex masses, when present.
    pub fn vertex_masses(&self) -> Option<&[BigRational]> {
        self.vertex_mass.as_deref()
    }

    /// Edge masses, when present.
    pub fn edge_masses(&self) -> Option<&[BigRational]> {
        self.edge_mass.as_deref()
    }
}

/// Corank of a group acting on a tree with finite stabilizers, read off
/// the genus of its quotient graph.
pub fn corank_from_quotient(gr: &KuriharaGraph) -> Result<u64> {
    gr.genus()
}

/// (VM, EM) with VM = Σ m(v) and EM = ½ Σ m(e) over all directed edges.
pub fn mass_totals(gr: &KuriharaGraph) -> Result<(BigRational, BigRational)> {
    let (Some(vm), Some(em)) = (&gr.vertex_mass, &gr.edge_mass) else {
        return invalid("graph carries no masses");
    };
    let v = vm.iter().fold(BigRational::zero(), |a, b| a + b);
    let e = em.iter().fold(BigRational::zero(), |a, b| a + b) / BigInt::from(2);
    Ok((v, e))
}

impl fmt::Display for KuriharaGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, id) in self.vertex_ids.iter().enumerate() {
            write!(f, "V {id}")?;
            if let Some(m) = &self.vertex_mass {
                write!(f, " {}", fmt_rational(&m[i]))?;
            }
            writeln!(f)?;
        }
        for (i, e) in self.edges.iter().enumerate() {
            write!(
                f,
                "E {} {} {}",
                self.edge_ids[i], self.edge_ids[e.bar], self.vertex_ids[e.origin]
            )?;
            if let Some(m) = &self.edge_mass {
                write!(f, " {}", fmt_rational(&m[i]))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for KuriharaGraph {
    type Err = Error;

    /// Parses lines `V <id> [mass]` and `E <id> <bar-id> <origin-id> [mass]`;
    /// blank lines and `#` comments are skipped. Masses must be given on
    /// every line or on none.
    fn from_str(text: &str) -> Result<Self> {
        let mut vids = Vec::new();
        let mut vmass = Vec::new();
        let mut raw_edges = Vec::new();
        let mut emass = Vec::new();
        let parse_id = |tok: &str, line: usize| -> Result<u64> {
            tok.parse()
                .map_err(|_| Error::InvalidArgument(format!("line {line}: bad id {tok:?}")))
        };
        for (ln, line) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "V" if toks.len() == 2 || toks.len() == 3 => {
                    vids.push(parse_id(toks[1], line_no)?);
                    if toks.len() == 3 {
                        vmass.push(parse_rational(toks[2]).ok_or_else(|| {
                            Error::InvalidArgument(format!("line {line_no}: bad mass"))
                        })?);
                    }
                }
                "E" if toks.len() == 4 || toks.len() == 5 => {
                    raw_edges.push((
                        parse_id(toks[1], line_no)?,
                        parse_id(toks[2], line_no)?,
                        parse_id(toks[3], line_no)?,
                    ));
                    if toks.len() == 5 {
                        emass.push(parse_rational(toks[4]).ok_or_else(|| {
                            Error::InvalidArgument(format!("line {line_no}: bad mass"))
                        })?);
                    }
                }
                _ => {
                    return invalid(format!(
                        "line {line_no}: expected `V <id>` or `E <id> <bar> <origin>`"
                    ))
                }
            }
        }
        let vindex = index_of(&vids, "vertex")?;
        let eids: Vec<u64> = raw_edges.iter().map(|e| e.0).collect();
        let eindex = index_of(&eids, "edge")?;
        let mut edges = Vec::with_capacity(raw_edges.len());
        for &(id, bar, origin) in &raw_edges {
            let bar = *eindex
                .get(&bar)
                .ok_or_else(|| Error::InvalidArgument(format!("edge {id}: unknown bar {bar}")))?;
            let origin = *vindex.get(&origin).ok_or_else(|| {
                Error::InvalidArgument(format!("edge {id}: unknown origin {origin}"))
            })?;
            edges.push(DirEdge { bar, origin });
        }
        let mut g = KuriharaGraph {
            vertex_ids: vids,
            edge_ids: eids,
            edges,
            vertex_mass: None,
            edge_mass: None,
        };
        g.check()?;
        let all_v = vmass.len() == g.v();
        let all_e = emass.len() == g.edges.len();
        match (vmass.is_empty() && emass.is_empty(), all_v && all_e) {
            (true, _) => {}
            (false, true) => g = g.with_masses(vmass, emass)?,
            (false, false) => return invalid("masses must be given on all lines or on none"),
        }
        Ok(g)
    }
}

fn index_of(ids: &[u64], what: &str) -> Result<HashMap<u64, usize>> {
    let mut map = HashMap::with_capacity(ids.len());
    for (i, &id) in ids.iter().enumerate() {
        if map.insert(id, i).is_some() {
            return invalid(format!("duplicate {what} id {id}"));
        }
    }
    Ok(map)
}

/// A finite simple graph (no loops, no multiple edges). Undirected edge j
/// yields directed edges 2j (a→b) and 2j+1 (b→a).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    lookup: HashMap<(usize, usize), usize>,
}

impl SimpleGraph {
    /// Builds the graph, rejecting loops and repeated edges.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut lookup = HashMap::with_capacity(2 * edges.len());
        for (j, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n || a == b {
                return invalid(format!("edge {j} = ({a}, {b}) is a loop or out of range"));
            }
            if lookup.insert((a, b), 2 * j).is_some() || lookup.insert((b, a), 2 * j + 1).is_some()
            {
                return invalid(format!("edge ({a}, {b}) repeated"));
            }
        }
        Ok(SimpleGraph { n, edges, lookup })
    }

    /// Number of vertices.
    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// Undirected edges.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Endpoints (origin, terminus) of a directed edge.
    pub fn dir_edge(&self, d: usize) -> (usize, usize) {
        let (a, b) = self.edges[d / 2];
        if d % 2 == 0 {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Vertex degrees.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Whether the graph is a tree.
    pub fn is_tree(&self) -> bool {
        if self.n == 0 || self.edges.len() + 1 != self.n {
            return false;
        }
        self.as_kurihara().is_connected()
    }

    /// The graph as a Kurihara graph without half-edges.
    pub fn as_kurihara(&self) -> KuriharaGraph {
        let edges = (0..2 * self.edges.len())
            .map(|d| DirEdge {
                bar: d ^ 1,
                origin: self.dir_edge(d).0,
            })
            .collect();
        KuriharaGraph::new(self.n, edges).expect("simple graph is a valid Kurihara graph")
    }
}

/// A finite group acting on a simple graph, generated by vertex
/// permutations that are graph automorphisms. Edge images follow from
/// vertex images since there are no multiple edges.
#[derive(Clone, Debug)]
pub struct GraphAction {
    graph: SimpleGraph,
    gens: Vec<Vec<usize>>,
    elements: Vec<Vec<usize>>,
}

/// A finite group acting on a finite tree; inversions are allowed.
#[derive(Clone, Debug)]
pub struct FiniteTreeAction(GraphAction);

/// Orbits of an action on a finite set together with their masses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassedOrbitSet {
    /// (representative, stabilizer order) per orbit.
    pub orbits: Vec<(usize, usize)>,
    /// Σ 1/#stabilizer.
    pub total: BigRational,
}

fn compose(g: &[usize], h: &[usize]) -> Vec<usize> {
    // (g∘h)(x) = g(h(x))
    h.iter().map(|&x| g[x]).collect()
}

fn check_perm(p: &[usize], n: usize) -> Result<()> {
    if p.len() != n {
        return invalid(format!("permutation has length {}, expected {n}", p.len()));
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return invalid("generator is not a permutation");
        }
        seen[x] = true;
    }
    Ok(())
}

/// All elements of the group generated by `gens` on `0..n`.
pub fn enumerate_group(n: usize, gens: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    for g in gens {
        check_perm(g, n)?;
    }
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                if out.len() >= MAX_GROUP_ORDER {
                    return invalid(format!("group order exceeds {MAX_GROUP_ORDER}"));
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Orbits of the group generated by `gens` on `0..n` with masses.
pub fn orbit_masses(n: usize, gens: &[Vec<usize>]) -> Result<MassedOrbitSet> {
    let group = enumerate_group(n, gens)?;
    Ok(orbits_of(n, &group, |g, x| g[x]))
}

fn orbits_of(
    n: usize,
    group: &[Vec<usize>],
    act: impl Fn(&[usize], usize) -> usize,
) -> MassedOrbitSet {
    let mut orbit_id = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    let mut total = BigRational::zero();
    for x in 0..n {
        if orbit_id[x] != usize::MAX {
            continue;
        }
        let mut size = 0;
        for g in group {
            let y = act(g, x);
            if orbit_id[y] == usize::MAX {
                orbit_id[y] = orbits.len();
                size += 1;
            }
        }
        let stab = group.len() / size;
        total += BigRational::new(BigInt::one(), BigInt::from(stab));
        orbits.push((x, stab));
    }
    MassedOrbitSet { orbits, total }
}

/// Checks m(Orb) = d·m(Orb₀), where Orb₀ is the orbit set of the group
/// generated by `g_gens`, Orb that of its subgroup generated by `h_gens`,
/// and d the index.
pub fn verify_mass_multiplicativity(
    n: usize,
    g_gens: &[Vec<usize>],
    h_gens: &[Vec<usize>],
) -> Result<bool> {
    let g = enumerate_group(n, g_gens)?;
    let h = enumerate_group(n, h_gens)?;
    let gset: HashSet<&Vec<usize>> = g.iter().collect();
    if !h.iter().all(|x| gset.contains(x)) {
        return invalid("second generating set does not generate a subgroup");
    }
    let d = BigInt::from(g.len() / h.len());
    let orb0 = orbits_of(n, &g, |p, x| p[x]);
    let orb = orbits_of(n, &h, |p, x| p[x]);
    Ok(orb.total == orb0.total * d)
}

impl GraphAction {
    /// Builds the action, checking that each generator is an automorphism.
    pub fn new(graph: SimpleGraph, gens: Vec<Vec<usize>>) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            check_perm(g, graph.n)?;
            for &(a, b) in &graph.edges {
                if !graph.lookup.contains_key(&(g[a], g[b])) {
                    return invalid(format!(
                        "generator {i} does not preserve incidence at edge ({a}, {b})"
                    ));
                }
            }
        }
        let elements = enumerate_group(graph.n, &gens)?;
        Ok(GraphAction {
            graph,
            gens,
            elements,
        })
    }

    /// The graph acted on.
    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    /// Generators.
    pub fn generators(&self) -> &[Vec<usize>] {
        &self.gens
    }

    /// Group order.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Image of directed edge d under g.
    fn act_edge(&self, g: &[usize], d: usize) -> usize {
        let (a, b) = self.graph.dir_edge(d);
        self.graph.lookup[&(g[a], g[b])]
    }

    /// Undirected edges j whose directed edge 2j is mapped to its reverse by
    /// some group element.
    pub fn inverted_edges(&self) -> Vec<usize> {
        (0..self.graph.edges.len())
            .filter(|&j| {
                self.elements
                    .iter()
                    .any(|g| self.act_edge(g, 2 * j) == 2 * j + 1)
            })
            .collect()
    }

    /// Order of the stabilizer of a directed edge.
    pub fn edge_stabilizer_order(&self, d: usize) -> usize {
        self.elements
            .iter()
            .filter(|g| self.act_edge(g, d) == d)
            .count()
    }

    /// Order of the stabilizer of the set {d, bar(d)}.
    pub fn edge_set_stabilizer_order(&self, d: usize) -> usize {
        self.elements
            .iter()
            .filter(|g| self.act_edge(g, d) >> 1 == d >> 1)
            .count()
    }

    /// The quotient Kurihara graph with masses 1/#stabilizer.
    pub fn quotient(&self) -> KuriharaGraph {
        let nv = self.graph.n;
        let nd = 2 * self.graph.edges.len();
        let vorb = orbits_of(nv, &self.elements, |g, x| g[x]);
        let dorb = orbits_of(nd, &self.elements, |g, d| self.act_edge(g, d));
        let mut vclass = vec![0; nv];
        for (i, &(rep, _)) in vorb.orbits.iter().enumerate() {
            for g in &self.elements {
                vclass[g[rep]] = i;
            }
        }
        let mut dclass = vec![0; nd];
        for (i, &(rep, _)) in dorb.orbits.iter().enumerate() {
            for g in &self.elements {
                dclass[self.act_edge(g, rep)] = i;
            }
        }
        let edges = dorb
            .orbits
            .iter()
            .map(|&(rep, _)| DirEdge {
                bar: dclass[rep ^ 1],
                origin: vclass[self.graph.dir_edge(rep).0],
            })
            .collect();
        let recip = |k: usize| BigRational::new(BigInt::one(), BigInt::from(k));
        KuriharaGraph::new(vorb.orbits.len(), edges)
            .and_then(|g| {
                g.with_masses(
                    vorb.orbits.iter().map(|&(_, k)| recip(k)).collect(),
                    dorb.orbits.iter().map(|&(_, k)| recip(k)).collect(),
                )
            })
            .expect("orbit data forms a valid Kurihara graph")
    }

    /// Vertex orbit index for each vertex of the quotient representatives.
    pub fn vertex_orbit_reps(&self) -> Vec<usize> {
        orbits_of(self.graph.n, &self.elements, |g, x| g[x])
            .orbits
            .into_iter()
            .map(|(r, _)| r)
            .collect()
    }

    /// Restriction to the subgroup generated by `gens`, which must lie in
    /// the group.
    pub fn restrict(&self, gens: Vec<Vec<usize>>) -> Result<Self> {
        let set: HashSet<&Vec<usize>> = self.elements.iter().collect();
        if !gens.iter().all(|g| set.contains(g)) {
            return invalid("restriction generators are not group elements");
        }
        GraphAction::new(self.graph.clone(), gens)
    }

    /// All group elements.
    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }
}

impl FiniteTreeAction {
    /// Builds the action of the group generated by vertex permutations.
    pub fn new(tree: SimpleGraph, gens: Vec<Vec<usize>>) -> Result<Self> {
        if !tree.is_tree() {
            return invalid("underlying graph is not a tree");
        }
        Ok(FiniteTreeAction(GraphAction::new(tree, gens)?))
    }

    /// The underlying graph action.
    pub fn action(&self) -> &GraphAction {
        &self.0
    }

    /// The tree.
    pub fn tree(&self) -> &SimpleGraph {
        &self.0.graph
    }

    /// Group order.
    pub fn order(&self) -> usize {
        self.0.order()
    }

    /// Quotient Kurihara graph with masses.
    pub fn quotient(&self) -> KuriharaGraph {
        self.0.quotient()
    }

    /// Restriction to a subgroup.
    pub fn restrict(&self, gens: Vec<Vec<usize>>) -> Result<Self> {
        Ok(FiniteTreeAction(self.0.restrict(gens)?))
    }

    /// Undirected edges inverted by some element.
    pub fn inverted_edges(&self) -> Vec<usize> {
        self.0.inverted_edges()
    }
}

/// Replaces every inverted edge by a path of length two through a new
/// midpoint vertex. Returns the new action and the midpoint vertex of each
/// subdivided edge, as pairs (old edge index, new vertex).
pub fn subdivide_inverted_with_midpoints(
    action: &FiniteTreeAction,
) -> (FiniteTreeAction, Vec<(usize, usize)>) {
    let tree = action.tree();
    let inverted: HashSet<usize> = action.inverted_edges().into_iter().collect();
    let n0 = tree.n;
    let mut mid = HashMap::new();
    let mut edges = Vec::new();
    let mut next = n0;
    for (j, &(a, b)) in tree.edges.iter().enumerate() {
        if inverted.contains(&j) {
            mid.insert(j, next);
            edges.push((a, next));
            edges.push((next, b));
            next += 1;
        } else {
            edges.push((a, b));
        }
    }
    let gens = action
        .0
        .gens
        .iter()
        .map(|g| {
            let mut p: Vec<usize> = g.clone();
            p.resize(next, 0);
            for (&j, &m) in &mid {
                let img = action.0.act_edge(g, 2 * j) / 2;
                p[m] = mid[&img];
            }
            p
        })
        .collect();
    let new_tree = SimpleGraph::new(next, edges).expect("subdivision of a tree is simple");
    let new = FiniteTreeAction::new(new_tree, gens).expect("subdivision preserves the action");
    let mut mids: Vec<(usize, usize)> = mid.into_iter().collect();
    mids.sort_unstable();
    (new, mids)
}

/// The action on the barycentric subdivision of the inverted edges; it has
/// no inversions.
pub fn subdivide_inverted(action: &FiniteTreeAction) -> FiniteTreeAction {
    subdivide_inverted_with_midpoints(action).0
}

/// VM − EM of the quotient.
pub fn equivariant_euler(action: &FiniteTreeAction) -> BigRational {
    let (v, e) = mass_totals(&action.quotient()).expect("quotients carry masses");
    v - e
}

/// The quotient graph of a tree action.
pub fn quotient(action: &FiniteTreeAction) -> KuriharaGraph {
    action.quotient()
}

/// Parameters of the random symmetric tree generator.
#[derive(Clone, Copy, Debug)]
pub struct RandomTreeParams {
    /// Size of the random branch copied around the center.
    pub branch_size: usize,
    /// Largest number of copies around a center vertex.
    pub max_copies: usize,
    /// Largest number of twin-leaf pairs per branch.
    pub max_twins: usize,
}

impl Default for RandomTreeParams {
    fn default() -> Self {
        RandomTreeParams {
            branch_size: 5,
            max_copies: 4,
            max_twins: 2,
        }
    }
}

/// A random tree with a nontrivial group of automorphisms. The tree is
/// built from copies of a random branch, arranged around a center vertex
/// (rotated cyclically) or a center edge (swapped, giving inversions).
/// Twin leaves hung in each branch add further involutions.
pub fn random_action<R: Rng>(rng: &mut R, params: RandomTreeParams) -> FiniteTreeAction {
    let b = params.branch_size.max(1);
    // branch: random recursive tree on 0..b, root 0, then twin pairs
    let mut branch_edges: Vec<(usize, usize)> = (1..b).map(|i| (rng.gen_range(0..i), i)).collect();
    let mut size = b;
    let mut twin_pairs = Vec::new();
    for _ in 0..rng.gen_range(0..=params.max_twins) {
        let host = rng.gen_range(0..b);
        branch_edges.push((host, size));
        branch_edges.push((host, size + 1));
        twin_pairs.push((size, size + 1));
        size += 2;
    }
    let edge_center = rng.gen_bool(0.4);
    let copies = if edge_center {
        2
    } else {
        rng.gen_range(1..=params.max_copies.max(1))
    };
    let offset = |c: usize| if edge_center { c * size } else { 1 + c * size };
    let n = copies * size + usize::from(!edge_center);
    let mut edges = Vec::new();
    for c in 0..copies {
        for &(x, y) in &branch_edges {
            edges.push((offset(c) + x, offset(c) + y));
        }
        if !edge_center {
            edges.push((0, offset(c)));
        }
    }
    if edge_center {
        edges.push((offset(0), offset(1)));
    }
    edges.shuffle(rng);
    let tree = SimpleGraph::new(n, edges).expect("construction yields a simple graph");
    let mut gens = Vec::new();
    if copies > 1 {
        let rot: Vec<usize> = (0..n)
            .map(|v| {
                if !edge_center && v == 0 {
                    0
                } else {
                    let c = (v - offset(0)) / size;
                    let x = (v - offset(0)) % size;
                    offset((c + 1) % copies) + x
                }
            })
            .collect();
        gens.push(rot);
    }
    for &(t0, t1) in &twin_pairs {
        if rng.gen_bool(0.7) {
            let mut sw: Vec<usize> = (0..n).collect();
            let c = rng.gen_range(0..copies);
            sw[offset(c) + t0] = offset(c) + t1;
            sw[offset(c) + t1] = offset(c) + t0;
            gens.push(sw);
        }
    }
    FiniteTreeAction::new(tree, gens).expect("generators are automorphisms")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn swap_edge() -> FiniteTreeAction {
        FiniteTreeAction::new(SimpleGraph::new(2, vec![(0, 1)]).unwrap(), vec![vec![1, 0]]).unwrap()
    }

    fn star3() -> FiniteTreeAction {
        let t = SimpleGraph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        FiniteTreeAction::new(t, vec![vec![0, 2, 3, 1]]).unwrap()
    }

    #[test]
    fn genus_examples() {
        let loop1 = KuriharaGraph::new(
            1,
            vec![DirEdge { bar: 1, origin: 0 }, DirEdge { bar: 0, origin: 0 }],
        )
        .unwrap();
        assert_eq!(loop1.genus().unwrap(), 1);
        let half = KuriharaGraph::new(1, vec![DirEdge { bar: 0, origin: 0 }]).unwrap();
        assert_eq!(half.genus().unwrap(), 0);
        assert_eq!((half.e_r(), half.e_h()), (0, 1));
        let path = SimpleGraph::new(2, vec![(0, 1)]).unwrap().as_kurihara();
        assert_eq!(corank_from_quotient(&path).unwrap(), 0);
        let two = KuriharaGraph::new(2, vec![]).unwrap();
        assert!(two.genus().is_err());
    }

    #[test]
    fn bar_must_be_involution() {
        let bad = vec![DirEdge { bar: 1, origin: 0 }, DirEdge { bar: 1, origin: 0 }];
        assert!(KuriharaGraph::new(1, bad).is_err());
    }

    #[test]
    fn swap_quotient() {
        let a = swap_edge();
        let g = a.quotient();
        assert_eq!((g.v(), g.e_r(), g.e_h()), (1, 0, 1));
        assert_eq!(g.vertex_masses().unwrap(), &[q(1, 1)]);
        assert_eq!(g.edge_masses().unwrap(), &[q(1, 1)]);
        assert_eq!(mass_totals(&g).unwrap(), (q(1, 1), q(1, 2)));
        assert_eq!(equivariant_euler(&a), q(1, 2));
        assert_eq!(
            a.action().edge_set_stabilizer_order(0),
            2 * a.action().edge_stabilizer_order(0)
        );
    }

    #[test]
    fn swap_subdivision() {
        let a = swap_edge();
        let (b, mids) = subdivide_inverted_with_midpoints(&a);
        assert_eq!(b.tree().n_vertices(), 3);
        assert!(b.inverted_edges().is_empty());
        let g = b.quotient();
        assert_eq!((g.v(), g.e_r(), g.e_h()), (2, 1, 0));
        assert_eq!(mass_totals(&g).unwrap(), (q(3, 2), q(1, 1)));
        assert_eq!(equivariant_euler(&b), q(1, 2));
        assert_eq!(mids, vec![(0, 2)]);
        let half_edge_mass = a.quotient().edge_masses().unwrap()[0].clone();
        assert_eq!(
            g.vertex_masses().unwrap()[1],
            half_edge_mass / BigInt::from(2)
        );
    }

    #[test]
    fn trivial_group_gives_tree() {
        let t = SimpleGraph::new(4, vec![(0, 1), (1, 2), (1, 3)]).unwrap();
        let a = FiniteTreeAction::new(t.clone(), vec![]).unwrap();
        let g = a.quotient();
        assert_eq!((g.v(), g.e_r(), g.e_h()), (4, 3, 0));
        assert!(g.vertex_masses().unwrap().iter().all(|m| m.is_one()));
        assert_eq!(equivariant_euler(&a), q(1, 1));
        assert_eq!(subdivide_inverted(&a).tree(), &t);
    }

    #[test]
    fn trivial_action_on_vertex() {
        let t = SimpleGraph::new(1, vec![]).unwrap();
        let a = FiniteTreeAction::new(t, vec![vec![0], vec![0]]).unwrap();
        assert_eq!(a.order(), 1);
        // a group of order 2 acting trivially: realized on a set with a
        // fixed point and a moved pair
        let m = orbit_masses(3, &[vec![0, 2, 1]]).unwrap();
        assert_eq!(m.orbits[0], (0, 2));
        let g = KuriharaGraph::new(1, vec![])
            .unwrap()
            .with_masses(vec![q(1, 2)], vec![])
            .unwrap();
        assert_eq!(mass_totals(&g).unwrap(), (q(1, 2), q(0, 1)));
    }

    #[test]
    fn star_rotation() {
        let a = star3();
        let g = a.quotient();
        assert_eq!((g.v(), g.e_r(), g.e_h()), (2, 1, 0));
        let vm: Vec<_> = g.vertex_masses().unwrap().to_vec();
        assert_eq!(vm, vec![q(1, 3), q(1, 1)]);
        assert!(g.edge_masses().unwrap().iter().all(|m| m.is_one()));
        assert_eq!(equivariant_euler(&a), q(1, 3));
    }

    #[test]
    fn incidence_violation_rejected() {
        let t = SimpleGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(FiniteTreeAction::new(t, vec![vec![1, 0, 2]]).is_err());
        let cyc = SimpleGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(FiniteTreeAction::new(cyc, vec![]).is_err());
    }

    #[test]
    fn set_mass_multiplicativity() {
        let s3 = [vec![1, 0, 2], vec![1, 2, 0]];
        let a3 = [vec![1, 2, 0]];
        assert!(verify_mass_multiplicativity(3, &s3, &a3).unwrap());
        assert_eq!(orbit_masses(3, &s3).unwrap().total, q(1, 2));
        assert_eq!(orbit_masses(3, &a3).unwrap().total, q(1, 1));
        let z4 = [vec![1, 2, 3, 0]];
        let two = [vec![2, 3, 0, 1]];
        assert!(verify_mass_multiplicativity(4, &z4, &two).unwrap());
        assert_eq!(orbit_masses(4, &two).unwrap().total, q(2, 1));
        assert!(verify_mass_multiplicativity(4, &z4, &z4).unwrap());
        assert!(verify_mass_multiplicativity(4, &two, &z4).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let g = star3().quotient();
        let text = g.to_string();
        let back: KuriharaGraph = text.parse().unwrap();
        assert_eq!(back, g);
        let plain: KuriharaGraph = "# half-edge\nV 7\nE 3 3 7\n".parse().unwrap();
        assert_eq!(plain.genus().unwrap(), 0);
        assert!("V 1\nE 1 2 1\n".parse::<KuriharaGraph>().is_err());
        assert!("V 1 1/2\nE 1 1 1\n".parse::<KuriharaGraph>().is_err());
        assert!("V 1\nV 1\n".parse::<KuriharaGraph>().is_err());
    }

    #[test]
    fn three_regular_graph_masses() {
        // K4 under the rotation group of the tetrahedron (A4): 3·VM = 2·EM
        let k4 = SimpleGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let a = GraphAction::new(k4, vec![vec![0, 2, 3, 1], vec![1, 0, 3, 2]]).unwrap();
        assert_eq!(a.order(), 12);
        let (vm, em) = mass_totals(&a.quotient()).unwrap();
        assert_eq!(vm.clone() * BigInt::from(3), em * BigInt::from(2));
        assert_eq!(vm, q(1, 3));
    }
}
