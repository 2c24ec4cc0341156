//! Undirected simple graphs and edge-list ingestion.
//!
//! A [`Graph`] stores the 0/1 symmetric adjacency structure as sorted
//! per-node neighbor lists with no self-loops. Parsing compacts arbitrary
//! node labels to dense indices `0..n-1` in order of first appearance and
//! reports dropped self-loops and collapsed duplicates.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Undirected simple graph in canonical form.
///
/// Invariants: neighbor lists are strictly increasing, symmetric
/// (`j ∈ N(i)` iff `i ∈ N(j)`) and never contain the node itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    neighbors: Vec<Vec<u32>>,
    edge_count: usize,
}

/// Density and degree summary of a graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphStats {
    pub n: usize,
    pub edge_count: usize,
    /// `2·edge_count / (n(n-1))`, zero for graphs with fewer than two nodes.
    pub edge_density: f64,
    pub max_degree: usize,
    pub mean_degree: f64,
}

/// Bookkeeping from edge-list ingestion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseReport {
    pub lines_total: usize,
    pub comment_lines: usize,
    pub duplicate_edges: usize,
    pub self_loops_dropped: usize,
}

/// A parsed undirected edge list: the graph plus the label map
/// (`labels[i]` is the original identifier of compact node `i`).
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub labels: Vec<u64>,
    pub report: ParseReport,
}

/// A parsed directed edge list, prior to symmetrization.
#[derive(Debug, Clone)]
pub struct DirectedEdgeList {
    pub n: usize,
    pub pairs: Vec<(u32, u32)>,
    pub labels: Vec<u64>,
    pub report: ParseReport,
}

/// Whether node identifiers in an input file start at zero or one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Indexing {
    #[default]
    ZeroBased,
    OneBased,
}

/// How to turn directed pairs into undirected edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetrizeMode {
    /// Keep `{i,j}` only when both `(i,j)` and `(j,i)` are present.
    Mutual,
    /// Keep `{i,j}` when either direction is present.
    Union,
}

impl Graph {
    /// Build a graph on `n` nodes from undirected pairs. Self-loops are
    /// dropped and duplicates collapsed; counts go to the returned report.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (u32, u32)>) -> (Graph, ParseReport) {
        let mut report = ParseReport::default();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for (a, b) in pairs {
            debug_assert!((a as usize) < n && (b as usize) < n);
            if a == b {
                report.self_loops_dropped += 1;
                continue;
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        report.duplicate_edges = before - edges.len();

        let mut neighbors = vec![Vec::new(); n];
        for &(a, b) in &edges {
            neighbors[a as usize].push(b);
            neighbors[b as usize].push(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let graph = Graph {
            neighbors,
            edge_count: edges.len(),
        };
        (graph, report)
    }

    pub fn node_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.neighbors[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].binary_search(&(j as u32)).is_ok()
    }

    /// Iterate canonical edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(i, list)| {
            let i = i as u32;
            list.iter().copied().filter(move |&j| i < j).map(move |j| (i, j))
        })
    }

    pub fn stats(&self) -> GraphStats {
        let n = self.node_count();
        let pairs = n.saturating_sub(1) * n;
        let edge_density = if pairs == 0 {
            0.0
        } else {
            2.0 * self.edge_count as f64 / pairs as f64
        };
        let max_degree = self.neighbors.iter().map(Vec::len).max().unwrap_or(0);
        let mean_degree = if n == 0 {
            0.0
        } else {
            2.0 * self.edge_count as f64 / n as f64
        };
        GraphStats {
            n,
            edge_count: self.edge_count,
            edge_density,
            max_degree,
            mean_degree,
        }
    }

    /// Canonical serialization: one `"i j"` line per edge with `i < j`,
    /// zero-based, lexicographically sorted.
    pub fn to_canonical_edge_list(&self) -> String {
        let mut out = String::new();
        for (i, j) in self.edges() {
            let _ = writeln!(out, "{i} {j}");
        }
        out
    }

    /// Full scan verifying symmetry, strict ordering and absence of
    /// self-loops. Returns a description of the first violation found.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let n = self.node_count();
        let mut half_degree_sum = 0usize;
        for i in 0..n {
            let list = &self.neighbors[i];
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(format!("neighbor list of {i} is not strictly increasing"));
                }
            }
            for &j in list {
                if j as usize == i {
                    return Err(format!("self-loop at node {i}"));
                }
                if j as usize >= n {
                    return Err(format!("neighbor {j} of node {i} out of range"));
                }
                if !self.has_edge(j as usize, i) {
                    return Err(format!("asymmetric edge ({i}, {j})"));
                }
            }
            half_degree_sum += list.len();
        }
        if half_degree_sum != 2 * self.edge_count {
            return Err(format!(
                "edge count {} does not match degree sum {half_degree_sum}",
                self.edge_count
            ));
        }
        Ok(())
    }
}

struct LabelCompactor {
    map: HashMap<u64, u32>,
    labels: Vec<u64>,
}

impl LabelCompactor {
    fn new() -> Self {
        LabelCompactor {
            map: HashMap::new(),
            labels: Vec::new(),
        }
    }

    fn intern(&mut self, label: u64) -> u32 {
        *self.map.entry(label).or_insert_with(|| {
            let id = self.labels.len() as u32;
            self.labels.push(label);
            id
        })
    }
}

fn parse_pairs(
    text: &str,
    indexing: Indexing,
) -> Result<(Vec<(u32, u32)>, Vec<u64>, ParseReport)> {
    let mut compactor = LabelCompactor::new();
    let mut pairs = Vec::new();
    let mut report = ParseReport::default();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        report.lines_total += 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') || line.starts_with('%') {
            report.comment_lines += 1;
            continue;
        }
        let mut tokens = line.split_whitespace();
        let a = parse_node_token(tokens.next(), lineno, indexing)?;
        let b = parse_node_token(tokens.next(), lineno, indexing)?;
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("unexpected trailing token {extra:?}"),
            });
        }
        pairs.push((compactor.intern(a), compactor.intern(b)));
    }
    if pairs.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok((pairs, compactor.labels, report))
}

fn parse_node_token(token: Option<&str>, lineno: usize, indexing: Indexing) -> Result<u64> {
    let token = token.ok_or_else(|| Error::Parse {
        line: lineno,
        msg: "expected two node identifiers".into(),
    })?;
    let id: u64 = token.parse().map_err(|_| Error::Parse {
        line: lineno,
        msg: format!("non-integer token {token:?}"),
    })?;
    if indexing == Indexing::OneBased && id == 0 {
        return Err(Error::Parse {
            line: lineno,
            msg: "node id 0 in one-based input".into(),
        });
    }
    Ok(id)
}

/// Parse an undirected edge list.
///
/// Lines starting with `#` or `%` are comments; each remaining line holds
/// two whitespace-separated integer identifiers. Identifiers are compacted
/// to `0..n-1` in first-appearance order, self-loops are dropped and
/// duplicate edges collapsed.
pub fn parse_edge_list(text: &str, indexing: Indexing) -> Result<ParsedGraph> {
    let (pairs, labels, mut report) = parse_pairs(text, indexing)?;
    let (graph, edge_report) = Graph::from_pairs(labels.len(), pairs);
    report.duplicate_edges = edge_report.duplicate_edges;
    report.self_loops_dropped = edge_report.self_loops_dropped;
    Ok(ParsedGraph { graph, labels, report })
}

/// Parse an edge list as directed pairs, keeping duplicates and orientation.
pub fn parse_directed_edge_list(text: &str, indexing: Indexing) -> Result<DirectedEdgeList> {
    let (pairs, labels, report) = parse_pairs(text, indexing)?;
    Ok(DirectedEdgeList {
        n: labels.len(),
        pairs,
        labels,
        report,
    })
}

/// Collapse directed pairs into an undirected graph.
///
/// `Mutual` keeps `{i,j}` only when both orientations occur, `Union` when
/// either does. Self-loops are dropped. Nodes mentioned anywhere in the
/// input are retained even if they end up isolated.
pub fn symmetrize_directed(directed: &DirectedEdgeList, mode: SymmetrizeMode) -> Graph {
    let mut seen: HashMap<(u32, u32), (bool, bool)> = HashMap::new();
    for &(a, b) in &directed.pairs {
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        let entry = seen.entry(key).or_insert((false, false));
        if a < b {
            entry.0 = true;
        } else {
            entry.1 = true;
        }
    }
    let edges = seen.into_iter().filter_map(|(key, (fwd, bwd))| {
        let keep = match mode {
            SymmetrizeMode::Mutual => fwd && bwd,
            SymmetrizeMode::Union => fwd || bwd,
        };
        keep.then_some(key)
    });
    let (graph, _) = Graph::from_pairs(directed.n, edges);
    graph
}

/// Induced subgraph on the largest connected component.
///
/// Ties are broken toward the component containing the smallest original
/// node index. Returns the relabeled graph together with the original
/// indices of the retained nodes (ascending, so relative order is kept).
pub fn largest_connected_component(g: &Graph) -> Result<(Graph, Vec<u32>)> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut component = vec![u32::MAX; n];
    let mut best: Option<(usize, u32)> = None; // (size, representative = min id)
    let mut best_id = 0u32;
    let mut next_component = 0u32;
    let mut queue = Vec::new();
    for start in 0..n {
        if component[start] != u32::MAX {
            continue;
        }
        let id = next_component;
        next_component += 1;
        component[start] = id;
        queue.clear();
        queue.push(start as u32);
        let mut size = 0usize;
        while let Some(v) = queue.pop() {
            size += 1;
            for &w in g.neighbors(v as usize) {
                if component[w as usize] == u32::MAX {
                    component[w as usize] = id;
                    queue.push(w);
                }
            }
        }
        // Components are discovered in order of their minimum node index,
        // so strict inequality implements the tie-break.
        if best.map_or(true, |(bs, _)| size > bs) {
            best = Some((size, start as u32));
            best_id = id;
        }
    }

    let kept: Vec<u32> = (0..n as u32).filter(|&v| component[v as usize] == best_id).collect();
    let mut relabel = vec![u32::MAX; n];
    for (new, &old) in kept.iter().enumerate() {
        relabel[old as usize] = new as u32;
    }
    let edges = g
        .edges()
        .filter(|&(a, b)| component[a as usize] == best_id && component[b as usize] == best_id)
        .map(|(a, b)| (relabel[a as usize], relabel[b as usize]));
    let (graph, _) = Graph::from_pairs(kept.len(), edges);
    Ok((graph, kept))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let parsed = parse_edge_list("0 1\n1 2\n2 0\n", Indexing::ZeroBased).unwrap();
        assert_eq!(parsed.graph.node_count(), 3);
        assert_eq!(parsed.graph.edge_count(), 3);
        parsed.graph.audit().unwrap();
    }

    #[test]
    fn drops_self_loops() {
        let parsed = parse_edge_list("1 1\n1 2\n", Indexing::ZeroBased).unwrap();
        assert_eq!(parsed.graph.node_count(), 2);
        assert_eq!(parsed.graph.edge_count(), 1);
        assert_eq!(parsed.report.self_loops_dropped, 1);
    }

    #[test]
    fn collapses_duplicates_with_count() {
        let parsed = parse_edge_list("0 1\n1 0\n0 1\n1 2\n", Indexing::ZeroBased).unwrap();
        assert_eq!(parsed.graph.edge_count(), 2);
        assert_eq!(parsed.report.duplicate_edges, 2);
    }

    #[test]
    fn compacts_labels_in_first_appearance_order() {
        let parsed = parse_edge_list("# c\n% c\n42 7\n7 100\n", Indexing::ZeroBased).unwrap();
        assert_eq!(parsed.labels, vec![42, 7, 100]);
        assert_eq!(parsed.report.comment_lines, 2);
    }

    #[test]
    fn rejects_malformed_line_with_number() {
        let err = parse_edge_list("0 1\n2 x\n", Indexing::ZeroBased).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error: {other}"),
        }
        let err = parse_edge_list("0 1 9\n", Indexing::ZeroBased).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn rejects_empty_input() {
        assert!(matches!(parse_edge_list("", Indexing::ZeroBased), Err(Error::EmptyInput)));
        assert!(matches!(
            parse_edge_list("# only comments\n", Indexing::ZeroBased),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn one_based_rejects_zero_id() {
        let err = parse_edge_list("0 1\n", Indexing::OneBased).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(parse_edge_list("1 2\n", Indexing::OneBased).is_ok());
    }

    #[test]
    fn mutual_and_union_modes() {
        let dir = parse_directed_edge_list("1 2\n2 1\n1 3\n", Indexing::ZeroBased).unwrap();
        let mutual = symmetrize_directed(&dir, SymmetrizeMode::Mutual);
        assert_eq!(mutual.node_count(), 3);
        assert_eq!(mutual.edge_count(), 1);
        assert!(mutual.has_edge(0, 1)); // labels 1 and 2

        let union = symmetrize_directed(&dir, SymmetrizeMode::Union);
        assert_eq!(union.edge_count(), 2);
        assert!(union.has_edge(0, 1));
        assert!(union.has_edge(0, 2));
    }

    #[test]
    fn lcc_tie_break_and_relabel() {
        // Two triangles {0,2,4} and {1,3,5} plus isolated node 6: the tie
        // goes to the component containing node 0.
        let text = "0 2\n2 4\n4 0\n1 3\n3 5\n5 1\n6 6\n";
        let parsed = parse_edge_list(text, Indexing::ZeroBased).unwrap();
        assert_eq!(parsed.graph.node_count(), 7);
        let (lcc, kept) = largest_connected_component(&parsed.graph).unwrap();
        assert_eq!(kept, vec![0, 1, 2]); // compact ids of labels 0, 2, 4
        assert_eq!(lcc.node_count(), 3);
        assert_eq!(lcc.edge_count(), 3);
    }

    #[test]
    fn lcc_identity_on_connected_and_idempotent() {
        let parsed = parse_edge_list("0 1\n1 2\n2 3\n", Indexing::ZeroBased).unwrap();
        let (lcc, kept) = largest_connected_component(&parsed.graph).unwrap();
        assert_eq!(lcc, parsed.graph);
        assert_eq!(kept, vec![0, 1, 2, 3]);
        let (lcc2, _) = largest_connected_component(&lcc).unwrap();
        assert_eq!(lcc2, lcc);
    }

    #[test]
    fn lcc_errors_on_empty() {
        let (g, _) = Graph::from_pairs(0, Vec::new());
        assert!(matches!(largest_connected_component(&g), Err(Error::EmptyGraph)));
    }

    #[test]
    fn canonical_round_trip() {
        let parsed = parse_edge_list("3 1\n1 0\n3 0\n", Indexing::ZeroBased).unwrap();
        let text = parsed.graph.to_canonical_edge_list();
        let reparsed = parse_edge_list(&text, Indexing::ZeroBased).unwrap();
        assert_eq!(reparsed.graph, parsed.graph);
    }

    #[test]
    fn stats_match_definitions() {
        let parsed = parse_edge_list("0 1\n1 2\n2 0\n2 3\n", Indexing::ZeroBased).unwrap();
        let stats = parsed.graph.stats();
        assert_eq!(stats.n, 4);
        assert_eq!(stats.edge_count, 4);
        assert!((stats.edge_density - 8.0 / 12.0).abs() < 1e-15);
        assert_eq!(stats.max_degree, 3);
        assert!((stats.mean_degree - 2.0).abs() < 1e-15);
        assert!(stats.edge_density >= 0.0 && stats.edge_density <= 1.0);
        assert!(stats.max_degree <= stats.n - 1);
    }
}
