//! Immutable simple undirected graphs with dense vertex ids, the generators
//! used by the experiment harness, and bit-exact edge-list / JSON I/O.

use crate::rational::{rat_usize, Rat};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at line {0}")]
    SelfLoop(usize),
    #[error("duplicate edge at line {0}")]
    DuplicateEdge(usize),
    #[error("parse error at line {0}: {1}")]
    ParseError(usize, String),
    #[error("n*d must be even (n={0}, d={1})")]
    ParityError(usize, usize),
    #[error("degree {1} infeasible for n={0}")]
    InfeasibleDegree(usize, usize),
    #[error("configuration-model repair budget exceeded after {0} swaps")]
    RepairBudgetExceeded(usize),
    #[error("vertex {0} out of range (n={1})")]
    OutOfRange(usize, usize),
    #[error("graph is empty")]
    EmptyGraph,
    #[error("explicit n={0} smaller than 1 + max vertex id {1}")]
    BadOverride(usize, usize),
}

/// Simple undirected graph on vertices `0..n-1`. Adjacency lists are sorted,
/// loop-free and symmetric; `m` caches the edge count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an explicit vertex count and edge list.
    /// Edges may be given in either orientation; duplicates and loops are
    /// rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for (line, &(u, v)) in edges.iter().enumerate() {
            let line = line + 1;
            if u == v {
                return Err(GraphError::SelfLoop(line));
            }
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange(u.max(v), n));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                // Recover the first offending input line for the error.
                let dup = find_duplicate_line(edges, u);
                return Err(GraphError::DuplicateEdge(dup));
            }
        }
        let m = edges.len();
        Ok(Graph { n, m, adj })
    }

    pub fn empty(n: usize) -> Graph {
        Graph { n, m: 0, adj: vec![Vec::new(); n] }
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("complete graph is simple")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut queue = std::collections::VecDeque::from([start]);
            seen[start] = true;
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Serializes to the canonical JSON form `{"n":…, "edges":[[u,v],…]}`
    /// with `u < v` and edges sorted lexicographically.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "n": self.n, "edges": self.edges() })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Graph, GraphError> {
        let n = v["n"].as_u64().ok_or(GraphError::ParseError(0, "missing n".into()))? as usize;
        let mut edges = Vec::new();
        for (i, e) in v["edges"]
            .as_array()
            .ok_or(GraphError::ParseError(0, "missing edges".into()))?
            .iter()
            .enumerate()
        {
            let pair = e.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                GraphError::ParseError(i + 1, "edge must be a [u,v] pair".into())
            })?;
            let u = pair[0].as_u64().ok_or(GraphError::ParseError(i + 1, "bad u".into()))?;
            let v2 = pair[1].as_u64().ok_or(GraphError::ParseError(i + 1, "bad v".into()))?;
            edges.push((u as usize, v2 as usize));
        }
        Graph::from_edges(n, &edges)
    }

    /// Writes the edge-list text form: one "u v" per line, LF-terminated.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn find_duplicate_line(edges: &[(usize, usize)], hint_vertex: usize) -> usize {
    let mut seen = std::collections::HashSet::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return i + 1;
        }
    }
    // Unreachable in practice; the scan above always finds the duplicate.
    let _ = hint_vertex;
    edges.len()
}

/// Parses the line-oriented "u v" edge-list format. `#` starts a comment,
/// blank lines are skipped, LF and CRLF both accepted. `n` defaults to
/// `1 + max id`; `n_override` admits trailing isolated vertices.
pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
    from_edge_list_with_n(text, None)
}

pub fn from_edge_list_with_n(text: &str, n_override: Option<usize>) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let mut max_id = None::<usize>;
    let mut edge_lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        let content = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let mut it = content.split_whitespace();
        let u = parse_vertex(it.next(), line_no)?;
        let v = parse_vertex(it.next(), line_no)?;
        if it.next().is_some() {
            return Err(GraphError::ParseError(line_no, "expected exactly two tokens".into()));
        }
        if u == v {
            return Err(GraphError::SelfLoop(line_no));
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u.max(v))));
        edges.push((u, v));
        edge_lines.push(line_no);
    }
    let implied = max_id.map_or(0, |m| m + 1);
    let n = match n_override {
        Some(n) if n < implied => return Err(GraphError::BadOverride(n, implied)),
        Some(n) => n,
        None => implied,
    };
    // Duplicate detection keyed to original line numbers.
    let mut seen = std::collections::HashSet::new();
    for (&(u, v), &line_no) in edges.iter().zip(&edge_lines) {
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge(line_no));
        }
    }
    Graph::from_edges(n, &edges)
}

fn parse_vertex(tok: Option<&str>, line: usize) -> Result<usize, GraphError> {
    let tok = tok.ok_or(GraphError::ParseError(line, "expected two tokens".into()))?;
    tok.parse::<usize>()
        .map_err(|e| GraphError::ParseError(line, format!("bad vertex {tok:?}: {e}")))
}

/// Exact degree statistics: `avg · n = 2m` holds as rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeStats {
    pub avg: Rat,
    pub min: usize,
    pub max: usize,
}

pub fn degree_stats(g: &Graph) -> Result<DegreeStats, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let degs = (0..g.n()).map(|v| g.degree(v));
    let min = degs.clone().min().unwrap();
    let max = degs.max().unwrap();
    let avg = rat_usize(2 * g.m()) / rat_usize(g.n());
    Ok(DegreeStats { avg, min, max })
}

/// Average degree `2m/n` as an exact rational; zero for the empty graph.
pub fn avg_degree(g: &Graph) -> Rat {
    if g.n() == 0 {
        return rat_usize(0);
    }
    rat_usize(2 * g.m()) / rat_usize(g.n())
}

/// Sorted duplicate-free set of vertex ids within some host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> VertexSet {
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn from_sorted(members: Vec<usize>) -> VertexSet {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet { members }
    }

    pub fn empty() -> VertexSet {
        VertexSet { members: Vec::new() }
    }

    pub fn full(n: usize) -> VertexSet {
        VertexSet { members: (0..n).collect() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn complement(&self, n: usize) -> VertexSet {
        let mut out = Vec::with_capacity(n - self.members.len().min(n));
        let mut it = self.members.iter().peekable();
        for v in 0..n {
            if it.peek() == Some(&&v) {
                it.next();
            } else {
                out.push(v);
            }
        }
        VertexSet { members: out }
    }

    pub fn validate(&self, n: usize) -> Result<(), GraphError> {
        if let Some(&v) = self.members.last() {
            if v >= n {
                return Err(GraphError::OutOfRange(v, n));
            }
        }
        Ok(())
    }

    /// Membership mask for O(1) lookups in hot loops.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.members {
            mask[v] = true;
        }
        mask
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// An induced subgraph relabeled to `0..|S|-1`, keeping the id map into the
/// host graph so structures built inside compose without relabeling bugs.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original_ids[new] = old`.
    pub original_ids: Vec<usize>,
}

impl InducedSubgraph {
    pub fn to_original(&self, local: usize) -> usize {
        self.original_ids[local]
    }
}

pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<InducedSubgraph, GraphError> {
    s.validate(g.n())?;
    let ids: Vec<usize> = s.members().to_vec();
    let mut local = vec![usize::MAX; g.n()];
    for (new, &old) in ids.iter().enumerate() {
        local[old] = new;
    }
    let mut edges = Vec::new();
    for (new_u, &old_u) in ids.iter().enumerate() {
        for &old_v in g.neighbors(old_u) {
            let new_v = local[old_v];
            if new_v != usize::MAX && new_u < new_v {
                edges.push((new_u, new_v));
            }
        }
    }
    let graph = Graph::from_edges(ids.len(), &edges)?;
    Ok(InducedSubgraph { graph, original_ids: ids })
}

/// Configuration-model random d-regular graph, repaired to a simple graph by
/// random edge swaps (at most `100·m` attempts), deterministic per seed.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GraphError> {
    if d >= n {
        return Err(GraphError::InfeasibleDegree(n, d));
    }
    if (n * d) % 2 != 0 {
        return Err(GraphError::ParityError(n, d));
    }
    if n == 0 || d == 0 {
        return Ok(Graph::empty(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = n * d / 2;
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    stubs.shuffle(&mut rng);
    let mut pairs: Vec<(usize, usize)> = (0..m).map(|i| (stubs[2 * i], stubs[2 * i + 1])).collect();

    let budget = 100 * m;
    let mut swaps = 0usize;
    loop {
        let mut counts = std::collections::HashMap::new();
        let mut bad: Vec<usize> = Vec::new();
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if u == v {
                bad.push(i);
                continue;
            }
            let key = (u.min(v), u.max(v));
            let c = counts.entry(key).or_insert(0usize);
            *c += 1;
            if *c > 1 {
                bad.push(i);
            }
        }
        if bad.is_empty() {
            break;
        }
        for &i in &bad {
            if swaps >= budget {
                return Err(GraphError::RepairBudgetExceeded(swaps));
            }
            swaps += 1;
            let j = rng.gen_range(0..m);
            if i == j {
                continue;
            }
            // 2-opt swap: (a,b),(c,e) -> (a,e),(c,b).
            let (a, b) = pairs[i];
            let (c, e) = pairs[j];
            pairs[i] = (a, e);
            pairs[j] = (c, b);
        }
    }
    Graph::from_edges(n, &pairs)
}

/// Erdős–Rényi G(n, p), deterministic per seed. Test-input generator.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("gnp edges are simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_frac;

    #[test]
    fn parses_triangle() {
        let g = from_edge_list("0 1\n1 2\n2 0").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn rejects_self_loop() {
        assert_eq!(from_edge_list("0 0"), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn rejects_duplicate_unordered_pair() {
        assert_eq!(from_edge_list("0 1\n1 0"), Err(GraphError::DuplicateEdge(2)));
    }

    #[test]
    fn handles_comments_and_crlf() {
        let g = from_edge_list("# header\r\n0 1 # inline\r\n\r\n1 2\r\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn n_override_allows_trailing_isolated_vertices() {
        let g = from_edge_list_with_n("0 1\n", Some(5)).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.degree(4), 0);
        assert_eq!(from_edge_list_with_n("0 9\n", Some(5)), Err(GraphError::BadOverride(5, 10)));
    }

    #[test]
    fn random_regular_n4_d3_is_k4() {
        let g = random_regular(4, 3, 7).unwrap();
        assert_eq!(g, Graph::complete(4));
    }

    #[test]
    fn random_regular_parity_error() {
        assert_eq!(random_regular(5, 3, 1), Err(GraphError::ParityError(5, 3)));
    }

    #[test]
    fn random_regular_contract_holds() {
        let g = random_regular(100, 8, 42).unwrap();
        let stats = degree_stats(&g).unwrap();
        assert_eq!(stats.min, 8);
        assert_eq!(stats.max, 8);
    }

    #[test]
    fn random_regular_deterministic_per_seed() {
        assert_eq!(random_regular(60, 5, 9).unwrap(), random_regular(60, 5, 9).unwrap());
        assert_ne!(random_regular(60, 5, 9).unwrap(), random_regular(60, 5, 10).unwrap());
    }

    #[test]
    fn induced_k4_three_vertices_is_triangle() {
        let g = Graph::complete(4);
        let sub = induced_subgraph(&g, &VertexSet::new(vec![0, 1, 2])).unwrap();
        assert_eq!(sub.graph, Graph::complete(3));
        assert_eq!(sub.original_ids, vec![0, 1, 2]);
    }

    #[test]
    fn induced_identity_preserves_stats() {
        let g = random_regular(30, 4, 3).unwrap();
        let sub = induced_subgraph(&g, &VertexSet::full(30)).unwrap();
        assert_eq!(sub.graph.m(), g.m());
        assert_eq!(degree_stats(&sub.graph).unwrap(), degree_stats(&g).unwrap());
    }

    /// Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes i—i+5.
    pub fn petersen() -> Graph {
        let mut edges = vec![];
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn induced_petersen_outer_cycle_is_c5() {
        let sub = induced_subgraph(&petersen(), &VertexSet::new(vec![0, 1, 2, 3, 4])).unwrap();
        assert_eq!(sub.graph.m(), 5);
        assert!((0..5).all(|v| sub.graph.degree(v) == 2));
    }

    #[test]
    fn degree_stats_examples() {
        let k4 = degree_stats(&Graph::complete(4)).unwrap();
        assert_eq!((k4.min, k4.max), (3, 3));
        assert_eq!(k4.avg, rat_frac(3, 1));

        let path3 = degree_stats(&from_edge_list("0 1\n1 2").unwrap()).unwrap();
        assert_eq!(path3.avg, rat_frac(4, 3));
        assert_eq!((path3.min, path3.max), (1, 2));

        let star = degree_stats(&from_edge_list("0 1\n0 2\n0 3\n0 4").unwrap()).unwrap();
        assert_eq!(star.avg, rat_frac(8, 5));
        assert_eq!((star.min, star.max), (1, 4));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let g = from_edge_list("2 0\n0 1\n").unwrap();
        let js = g.to_json();
        assert_eq!(
            serde_json::to_string(&js).unwrap(),
            r#"{"edges":[[0,1],[0,2]],"n":3}"#
        );
        assert_eq!(Graph::from_json(&js).unwrap(), g);
    }

    #[test]
    fn empty_graph_stats_error() {
        assert_eq!(degree_stats(&Graph::empty(0)), Err(GraphError::EmptyGraph));
    }
}
