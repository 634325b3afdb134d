//! Line-intersection graphs and the search for complete tuples inside them.
//!
//! Vertices are line indices of a source arrangement. Two lines are adjacent when
//! they cross at a kept arrangement point, and the edge remembers that point. Every
//! kept point of multiplicity `t` therefore contributes a `K_t`, and because two
//! distinct lines meet at most once these cliques never share an edge.
//!
//! A *complete k-tuple* is a k-clique whose lines are in general position (no three
//! concurrent, parallel triples included). They are found by exact enumeration over
//! a degeneracy ordering, pruning any branch as soon as a concurrent triple appears.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::geom::{collinear, concurrent, Line};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliqueError {
    #[error("multiplicity threshold must be at least 2, got {0}")]
    InvalidThreshold(usize),
    #[error("tuple size must be at least 3, got {0}")]
    InvalidTupleSize(usize),
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge ({0}, {1}) would carry two different witnesses")]
    ConflictingWitness(usize, usize),
}

/// Unordered vertex pair with the smaller index first.
pub fn edge_key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    n_vertices: usize,
    adjacency: Vec<BTreeSet<usize>>,
    labels: BTreeMap<(usize, usize), usize>,
    groups: Vec<(usize, Vec<usize>)>,
    point_multiplicity: BTreeMap<usize, usize>,
}

impl IntersectionGraph {
    /// Build from `(witness, vertices)` groups; each group becomes a clique labeled by
    /// its witness. Several groups may share a witness as long as they share no edge.
    pub fn from_groups<I>(n_vertices: usize, groups: I) -> Result<Self, CliqueError>
    where
        I: IntoIterator<Item = (usize, Vec<usize>)>,
    {
        let mut g = IntersectionGraph {
            n_vertices,
            adjacency: vec![BTreeSet::new(); n_vertices],
            labels: BTreeMap::new(),
            groups: Vec::new(),
            point_multiplicity: BTreeMap::new(),
        };
        for (label, mut members) in groups {
            members.sort_unstable();
            members.dedup();
            if let Some(&vertex) = members.iter().find(|&&v| v >= n_vertices) {
                return Err(CliqueError::VertexOutOfRange {
                    vertex,
                    n: n_vertices,
                });
            }
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    if let Some(&old) = g.labels.get(&(u, v)) {
                        if old != label {
                            return Err(CliqueError::ConflictingWitness(u, v));
                        }
                    }
                    g.labels.insert((u, v), label);
                    g.adjacency[u].insert(v);
                    g.adjacency[v].insert(u);
                }
            }
            *g.point_multiplicity.entry(label).or_insert(0) += members.len();
            g.groups.push((label, members));
        }
        Ok(g)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.labels.len()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.labels.contains_key(&edge_key(u, v))
    }

    /// Witness point of edge `(u, v)`.
    pub fn label(&self, u: usize, v: usize) -> Option<usize> {
        self.labels.get(&edge_key(u, v)).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.labels.iter().map(|(&e, &p)| (e, p))
    }

    /// The `(witness, vertices)` groups the graph was built from.
    pub fn groups(&self) -> &[(usize, Vec<usize>)] {
        &self.groups
    }

    /// Witness point -> number of vertices it joins.
    pub fn point_multiplicity(&self) -> &BTreeMap<usize, usize> {
        &self.point_multiplicity
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u != v && self.has_edge(u, v))
        })
    }

    /// Vertices in degeneracy order: repeatedly remove a minimum-degree vertex,
    /// lowest index first among ties.
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let mut degree: Vec<usize> = (0..self.n_vertices).map(|v| self.degree(v)).collect();
        let mut queue: BTreeSet<(usize, usize)> =
            degree.iter().enumerate().map(|(v, &d)| (d, v)).collect();
        let mut removed = vec![false; self.n_vertices];
        let mut order = Vec::with_capacity(self.n_vertices);
        while let Some((_, v)) = queue.pop_first() {
            removed[v] = true;
            order.push(v);
            for &u in &self.adjacency[v] {
                if !removed[u] {
                    queue.remove(&(degree[u], u));
                    degree[u] -= 1;
                    queue.insert((degree[u], u));
                }
            }
        }
        order
    }
}

/// Points whose line multiplicity is at most `threshold`.
pub fn multiplicity_filter(
    arr: &Arrangement,
    threshold: usize,
) -> Result<BTreeSet<usize>, CliqueError> {
    if threshold < 2 {
        return Err(CliqueError::InvalidThreshold(threshold));
    }
    Ok((0..arr.n_points())
        .filter(|&i| arr.multiplicity(i) <= threshold)
        .collect())
}

/// Intersection graph on all lines of `arr`, with edges witnessed by `kept_points`.
pub fn build_graph(arr: &Arrangement, kept_points: &BTreeSet<usize>) -> IntersectionGraph {
    let groups = kept_points
        .iter()
        .filter(|&&p| p < arr.n_points())
        .map(|&p| (p, arr.lines_through(p).to_vec()));
    IntersectionGraph::from_groups(arr.n_lines(), groups)
        .expect("two distinct lines cross in at most one point")
}

/// True iff no three of the lines are concurrent.
pub fn degenerate_filter(lines: &[Line]) -> bool {
    let n = lines.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if concurrent(&lines[i], &lines[j], &lines[k]) {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteTuple {
    /// Ascending line indices.
    pub line_indices: Vec<usize>,
    /// Witness point for every member pair.
    pub witness_points: BTreeMap<(usize, usize), usize>,
    pub general_position_certificate: bool,
}

struct TupleSearch<'a> {
    graph: &'a IntersectionGraph,
    lines: &'a [Line],
    k: usize,
    limit: usize,
    rank: Vec<usize>,
    found: Vec<CompleteTuple>,
}

impl TupleSearch<'_> {
    fn extend(&mut self, clique: &mut Vec<usize>, candidates: &[usize]) {
        if clique.len() == self.k {
            self.emit(clique);
            return;
        }
        for (pos, &u) in candidates.iter().enumerate() {
            if self.found.len() >= self.limit {
                return;
            }
            if clique.len() + candidates.len() - pos < self.k {
                return;
            }
            let l = &self.lines[u];
            let creates_concurrency = clique.iter().enumerate().any(|(i, &a)| {
                clique[i + 1..]
                    .iter()
                    .any(|&b| concurrent(&self.lines[a], &self.lines[b], l))
            });
            if creates_concurrency {
                continue;
            }
            let next: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&w| self.graph.has_edge(u, w))
                .collect();
            clique.push(u);
            self.extend(clique, &next);
            clique.pop();
        }
    }

    fn emit(&mut self, clique: &[usize]) {
        let mut line_indices = clique.to_vec();
        line_indices.sort_unstable();
        let mut witness_points = BTreeMap::new();
        for (i, &u) in line_indices.iter().enumerate() {
            for &v in &line_indices[i + 1..] {
                let p = self.graph.label(u, v).expect("clique edge");
                witness_points.insert((u, v), p);
            }
        }
        self.found.push(CompleteTuple {
            line_indices,
            witness_points,
            general_position_certificate: true,
        });
    }
}

/// Complete `k`-tuples of `g` over the lines of `arr`, at most `max_results` of them.
///
/// Roots are taken in degeneracy order and each branch only grows through later
/// vertices, so every clique is visited once and the output order is fixed.
pub fn enumerate_complete_tuples(
    g: &IntersectionGraph,
    arr: &Arrangement,
    k: usize,
    max_results: Option<usize>,
) -> Result<Vec<CompleteTuple>, CliqueError> {
    if k < 3 {
        return Err(CliqueError::InvalidTupleSize(k));
    }
    let order = g.degeneracy_order();
    let mut rank = vec![0; g.n_vertices()];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let mut search = TupleSearch {
        graph: g,
        lines: arr.lines(),
        k,
        limit: max_results.unwrap_or(usize::MAX),
        rank,
        found: Vec::new(),
    };
    for &v in &order {
        if search.found.len() >= search.limit {
            break;
        }
        let mut later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| search.rank[u] > search.rank[v])
            .collect();
        if later.len() + 1 < k {
            continue;
        }
        later.sort_by_key(|&u| search.rank[u]);
        let mut clique = vec![v];
        search.extend(&mut clique, &later);
    }
    Ok(search.found)
}

/// Non-collinear point triples whose three pairs each lie on some arrangement line.
pub fn count_triangles(arr: &Arrangement) -> usize {
    let n = arr.n_points();
    let mut adjacency = vec![BTreeSet::new(); n];
    for j in 0..arr.n_lines() {
        let on = arr.points_on_line(j);
        for (a, &u) in on.iter().enumerate() {
            for &v in &on[a + 1..] {
                adjacency[u].insert(v);
                adjacency[v].insert(u);
            }
        }
    }
    let pts = arr.points();
    let mut count = 0;
    for u in 0..n {
        for &v in adjacency[u].range(u + 1..) {
            for &w in adjacency[v].range(v + 1..) {
                if adjacency[u].contains(&w) && !collinear(&pts[u], &pts[v], &pts[w]) {
                    count += 1;
                }
            }
        }
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TriangleMonitor {
    pub triangles: usize,
    /// `|P|·|L|`
    pub bound: usize,
    pub conjecture_holds: bool,
}

/// Compare the triangle count with `|P|·|L|`. A `false` flag is a reportable
/// counterexample, not an error.
pub fn de_caen_szekely_monitor(arr: &Arrangement) -> TriangleMonitor {
    let triangles = count_triangles(arr);
    let bound = arr.n_points() * arr.n_lines();
    TriangleMonitor {
        triangles,
        bound,
        conjecture_holds: triangles <= bound,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionStats {
    pub num_source_cliques: usize,
    pub edges_covered: usize,
    pub is_edge_disjoint: bool,
    /// Groups with fewer than `k` members.
    pub skipped_low_multiplicity: usize,
    pub skipped_reason: Option<String>,
}

/// Each witness group of size `>= k` contributes one `K_k` on its first `k` vertices.
pub fn edge_disjoint_decomposition_stats(g: &IntersectionGraph, k: usize) -> DecompositionStats {
    if k < 3 {
        return DecompositionStats {
            num_source_cliques: 0,
            edges_covered: 0,
            is_edge_disjoint: true,
            skipped_low_multiplicity: 0,
            skipped_reason: Some(format!("tuple size must be at least 3, got {k}")),
        };
    }
    let mut seen = HashSet::new();
    let mut stats = DecompositionStats {
        num_source_cliques: 0,
        edges_covered: 0,
        is_edge_disjoint: true,
        skipped_low_multiplicity: 0,
        skipped_reason: None,
    };
    for (_, members) in g.groups() {
        if members.len() < k {
            stats.skipped_low_multiplicity += 1;
            continue;
        }
        stats.num_source_cliques += 1;
        let first = &members[..k];
        for (i, &u) in first.iter().enumerate() {
            for &v in &first[i + 1..] {
                stats.edges_covered += 1;
                if !seen.insert((u, v)) {
                    stats.is_edge_disjoint = false;
                }
            }
        }
    }
    stats
}
