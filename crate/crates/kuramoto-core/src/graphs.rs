//! Simple undirected graphs on labeled vertices 0..n−1.
//!
//! Covers the input formats (graph6, edge lists), the structural queries the
//! oscillator analysis needs (connectivity, k-lets, chordless cycles), exact
//! isomorphism classification for n ≤ 8 via canonical adjacency strings, and
//! the construction that cones a body graph onto one edge of a five-cycle.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) outside vertex range 0..{2}")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("unsupported size n={0}: {1}")]
    UnsupportedSize(usize, &'static str),
    #[error("invalid body edge ({0}, {1}): body vertices are {2}..{3}")]
    BodyEdge(usize, usize, usize, usize),
    #[error("edge list JSON: {0}")]
    EdgeListJson(#[from] serde_json::Error),
}

/// Simple undirected graph; neighbor sets are kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

/// A maximal set of ≥ 2 vertices sharing one open neighborhood.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KLet {
    pub vertices: Vec<usize>,
    pub shared_neighborhood: Vec<usize>,
}

/// Isomorphism certificate: the lexicographically minimal upper-triangle
/// adjacency bit string over all vertex relabelings, packed into bytes
/// (column-major bit order, most significant bit first).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Edge-list file format: `{"n": int?, "edges": [[i,j],...]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct EdgeListFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub edges: Vec<(usize, usize)>,
}

const MAX_CANONICAL_N: usize = 8;

impl Graph {
    /// Builds a graph from undirected edges. Duplicate edges (in either
    /// orientation) are idempotent; self-loops are rejected. With `n = None`
    /// the vertex count is 1 + the largest label mentioned.
    pub fn from_edges(n: Option<usize>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let implied = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        let n = match n {
            Some(n) => {
                if implied > n {
                    let &(a, b) = edges
                        .iter()
                        .find(|&&(a, b)| a >= n || b >= n)
                        .expect("some edge exceeds n");
                    return Err(GraphError::EdgeOutOfRange(a, b, n));
                }
                n
            }
            None => implied,
        };
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            sets[a].insert(b);
            sets[b].insert(a);
        }
        Ok(Graph {
            n,
            adj: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    /// Parses one graph6 line (n ≤ 62 header form).
    pub fn parse_graph6(line: &str) -> Result<Self, GraphError> {
        let bytes = line.trim_end().as_bytes();
        if bytes.is_empty() {
            return Err(GraphError::Graph6 {
                offset: 0,
                reason: "empty input".into(),
            });
        }
        let b0 = bytes[0];
        if !(63..=125).contains(&b0) {
            return Err(GraphError::Graph6 {
                offset: 0,
                reason: format!("header byte {b0} outside 63..=125 (n ≤ 62 form only)"),
            });
        }
        let n = (b0 - 63) as usize;
        let nbits = n * n.saturating_sub(1) / 2;
        let npayload = nbits.div_ceil(6);
        if bytes.len() != 1 + npayload {
            return Err(GraphError::Graph6 {
                offset: bytes.len().min(1 + npayload),
                reason: format!(
                    "expected {} payload bytes for n={}, got {}",
                    npayload,
                    n,
                    bytes.len() - 1
                ),
            });
        }
        let mut edges = Vec::new();
        let mut bit = 0usize;
        // Column-major upper triangle: x(0,1), x(0,2), x(1,2), x(0,3), ...
        'outer: for j in 1..n {
            for i in 0..j {
                let byte = bytes[1 + bit / 6];
                if !(63..=126).contains(&byte) {
                    return Err(GraphError::Graph6 {
                        offset: 1 + bit / 6,
                        reason: format!("payload byte {byte} outside 63..=126"),
                    });
                }
                let group = byte - 63;
                if group >> (5 - bit % 6) & 1 == 1 {
                    edges.push((i, j));
                }
                bit += 1;
                if bit == nbits {
                    break 'outer;
                }
            }
        }
        // Padding bits past the triangle are ignored.
        Graph::from_edges(Some(n), &edges)
    }

    /// Parses the edge-list JSON format `{"n": int?, "edges": [[i,j],...]}`.
    pub fn parse_edge_list_json(text: &str) -> Result<Self, GraphError> {
        let file: EdgeListFile = serde_json::from_str(text)?;
        Graph::from_edges(file.n, &file.edges)
    }

    /// Encodes the graph back to graph6 (n ≤ 62).
    pub fn to_graph6(&self) -> String {
        assert!(self.n <= 62, "graph6 header form requires n <= 62");
        let nbits = self.n * self.n.saturating_sub(1) / 2;
        let mut out = vec![63 + self.n as u8];
        out.resize(1 + nbits.div_ceil(6), 63);
        let mut bit = 0usize;
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    out[1 + bit / 6] += 1 << (5 - bit % 6);
                }
                bit += 1;
            }
        }
        String::from_utf8(out).expect("graph6 bytes are printable ASCII")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as (i, j) with i < j, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for &j in &self.adj[i] {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// SCT: simple, connected, all vertex degrees ≥ 2.
    pub fn is_sct(&self) -> bool {
        self.n >= 1 && self.adj.iter().all(|a| a.len() >= 2) && self.is_connected()
    }

    /// Connectivity μ_c(G) = min_v degree(v) / (n − 1), exact.
    pub fn connectivity_mu(&self) -> Ratio<u64> {
        assert!(self.n >= 2, "connectivity requires n >= 2");
        let min_deg = self.adj.iter().map(Vec::len).min().unwrap() as u64;
        Ratio::new(min_deg, (self.n - 1) as u64)
    }

    /// Combinatorial graph Laplacian L = D − A with exact integer entries.
    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let mut l = vec![vec![0i64; self.n]; self.n];
        for i in 0..self.n {
            l[i][i] = self.adj[i].len() as i64;
            for &j in &self.adj[i] {
                l[i][j] = -1;
            }
        }
        l
    }

    /// Applies a relabeling: vertex v of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let edges: Vec<(usize, usize)> = self
            .edges()
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect();
        Graph::from_edges(Some(self.n), &edges).expect("relabeling preserves validity")
    }

    /// Maximal classes of ≥ 2 vertices with identical open neighborhoods,
    /// largest class first.
    pub fn find_klets(&self) -> Vec<KLet> {
        let mut classes: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            classes.entry(&self.adj[v]).or_default().push(v);
        }
        let mut out: Vec<KLet> = classes
            .into_iter()
            .filter(|(_, vs)| vs.len() >= 2)
            .map(|(nbhd, vertices)| KLet {
                vertices,
                shared_neighborhood: nbhd.to_vec(),
            })
            .collect();
        out.sort_by(|a, b| {
            b.vertices
                .len()
                .cmp(&a.vertices.len())
                .then_with(|| a.vertices.cmp(&b.vertices))
        });
        out
    }

    /// Codimension bound n − k + 1 from the largest k-let with k ≥ 3, testing
    /// both open neighborhoods and closed neighborhoods N(v) ∪ {v}; `None`
    /// when no such class exists.
    pub fn klet_codim_bound(&self) -> Option<usize> {
        let mut best = 0usize;
        let mut open: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut closed: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for v in 0..self.n {
            *open.entry(self.adj[v].clone()).or_default() += 1;
            let mut cl = self.adj[v].clone();
            let pos = cl.binary_search(&v).unwrap_err();
            cl.insert(pos, v);
            *closed.entry(cl).or_default() += 1;
        }
        for count in open.values().chain(closed.values()) {
            if *count >= 3 {
                best = best.max(*count);
            }
        }
        (best >= 3).then(|| self.n - best + 1)
    }

    /// All chordless (induced) cycles of length ≥ `min_len`, each reported
    /// once: minimum vertex first, the smaller neighbor second. Sorted by
    /// (length, vertex sequence).
    pub fn chordless_cycles(&self, min_len: usize) -> Vec<Vec<usize>> {
        assert!(min_len >= 4, "min_len must be >= 4");
        let mut out = Vec::new();
        let mut path = Vec::new();
        for v in 0..self.n {
            for &a in &self.adj[v] {
                if a > v {
                    path.clear();
                    path.extend([v, a]);
                    self.chordless_dfs(min_len, &mut path, &mut out);
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn chordless_dfs(&self, min_len: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let root = path[0];
        let last = *path.last().unwrap();
        for &w in &self.adj[last] {
            if w <= root || path.contains(&w) {
                continue;
            }
            // Interior vertices (everything but the root and the path tip)
            // must be non-neighbors of w, or the final cycle has a chord.
            if path[1..path.len() - 1].iter().any(|&p| self.has_edge(p, w)) {
                continue;
            }
            if self.has_edge(w, root) {
                // Closing edge; orientation fixed by path[1] < w.
                if path.len() + 1 >= min_len && path[1] < w {
                    let mut cycle = path.clone();
                    cycle.push(w);
                    out.push(cycle);
                }
                // A longer cycle through w would keep w–root as a chord.
                continue;
            }
            path.push(w);
            self.chordless_dfs(min_len, path, out);
            path.pop();
        }
    }

    /// Cones `d` body vertices onto the edge {0,4} of the five-cycle
    /// 0-1-2-3-4: vertices 5..5+d are each joined to 0 and 4, and the given
    /// body edges (labels in 5..5+d) are appended.
    pub fn glue_c5(d: usize, body_edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        assert!(d >= 1, "glue_c5 requires d >= 1");
        let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
        for v in 5..5 + d {
            edges.push((0, v));
            edges.push((4, v));
        }
        for &(a, b) in body_edges {
            if a < 5 || b < 5 || a >= 5 + d || b >= 5 + d {
                return Err(GraphError::BodyEdge(a, b, 5, 5 + d - 1));
            }
            edges.push((a, b));
        }
        Graph::from_edges(Some(5 + d), &edges)
    }

    /// Canonical certificate by lexicographic minimization over all
    /// relabelings (branch-and-bound on string prefixes); exact for n ≤ 8.
    pub fn canonical_key(&self) -> Result<CanonicalKey, GraphError> {
        if self.n > MAX_CANONICAL_N {
            return Err(GraphError::UnsupportedSize(
                self.n,
                "canonical keys are exhaustive-permutation, n <= 8",
            ));
        }
        let masks: Vec<u16> = (0..self.n)
            .map(|v| self.adj[v].iter().fold(0u16, |m, &w| m | 1 << w))
            .collect();
        let nbits = self.n * self.n.saturating_sub(1) / 2;
        let mut best: Option<Vec<u8>> = None;
        let mut perm = Vec::with_capacity(self.n);
        let mut bits = Vec::with_capacity(nbits);
        canonical_search(&masks, self.n, &mut perm, &mut bits, true, &mut best);
        let bits = best.unwrap_or_default();
        let mut packed = vec![0u8; nbits.div_ceil(8)];
        for (idx, &b) in bits.iter().enumerate() {
            if b == 1 {
                packed[idx / 8] |= 1 << (7 - idx % 8);
            }
        }
        Ok(CanonicalKey(packed))
    }

    /// Rebuilds the canonical representative encoded by a key.
    pub fn from_canonical_key(n: usize, key: &CanonicalKey) -> Result<Graph, GraphError> {
        let mut edges = Vec::new();
        let mut bit = 0usize;
        for j in 1..n {
            for i in 0..j {
                if key.0[bit / 8] >> (7 - bit % 8) & 1 == 1 {
                    edges.push((i, j));
                }
                bit += 1;
            }
        }
        Graph::from_edges(Some(n), &edges)
    }

    /// One representative per isomorphism class of SCT graphs on n vertices
    /// (exhaustive scan over all 2^(n choose 2) graphs), sorted by key.
    pub fn enumerate_sct(n: usize) -> Result<Vec<Graph>, GraphError> {
        if !(4..=6).contains(&n) {
            return Err(GraphError::UnsupportedSize(
                n,
                "built-in enumeration covers n in 4..=6; supply a graph6 list otherwise",
            ));
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .collect();
        let mut seen = HashSet::new();
        let mut keys = Vec::new();
        for mask in 0u32..1 << pairs.len() {
            if (mask.count_ones() as usize) < n {
                continue; // min degree 2 forces at least n edges
            }
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(Some(n), &edges).expect("scan edges are valid");
            if !g.is_sct() {
                continue;
            }
            let key = g.canonical_key().expect("n <= 6");
            if seen.insert(key.clone()) {
                keys.push(key);
            }
        }
        keys.sort();
        keys.iter()
            .map(|k| Graph::from_canonical_key(n, k))
            .collect()
    }
}

/// Extends a partial relabeling; `bits` holds the upper-triangle string built
/// so far. While `tied` holds, the prefix equals the incumbent's prefix and
/// column comparisons prune exactly; once a strictly smaller column is taken
/// the flag drops and only the full comparison at the leaf decides (the
/// incumbent may change mid-branch, so stale prefix knowledge must not
/// overwrite it).
fn canonical_search(
    masks: &[u16],
    n: usize,
    perm: &mut Vec<usize>,
    bits: &mut Vec<u8>,
    tied: bool,
    best: &mut Option<Vec<u8>>,
) {
    if perm.len() == n {
        match best {
            Some(b) if bits.as_slice() >= b.as_slice() => {}
            _ => *best = Some(bits.clone()),
        }
        return;
    }
    let k = perm.len();
    let base = k * k.saturating_sub(1) / 2;
    for v in 0..n {
        if perm.contains(&v) {
            continue;
        }
        let mut column = [0u8; MAX_CANONICAL_N];
        for (i, &u) in perm.iter().enumerate() {
            column[i] = (masks[v] >> u & 1) as u8;
        }
        let mut tied_next = tied;
        if tied {
            if let Some(b) = best {
                match column[..k].cmp(&b[base..base + k]) {
                    std::cmp::Ordering::Greater => continue,
                    std::cmp::Ordering::Less => tied_next = false,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        perm.push(v);
        bits.extend_from_slice(&column[..k]);
        canonical_search(masks, n, perm, bits, tied_next, best);
        bits.truncate(base);
        perm.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(Some(n), &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .collect();
        Graph::from_edges(Some(n), &edges).unwrap()
    }

    /// Vertices 0,1 joined to each of 2,3,4 (and nothing else): K_{2,3}.
    pub(crate) fn two_three_biclique() -> Graph {
        Graph::from_edges(
            Some(5),
            &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
        )
        .unwrap()
    }

    pub(crate) fn exceptional_8() -> Graph {
        Graph::from_edges(
            None,
            &[
                (0, 4),
                (1, 4),
                (1, 5),
                (3, 5),
                (2, 6),
                (3, 6),
                (0, 7),
                (2, 7),
                (4, 5),
                (5, 6),
                (6, 7),
                (4, 7),
            ],
        )
        .unwrap()
    }

    #[test]
    fn graph6_star_k4_and_single_edge() {
        // Hand decode, cross-checked against an independent decoder:
        // 'D'−63 = 5, payload "?{" → 000000 111100 → bits x(0,4..3,4) set.
        let star = Graph::parse_graph6("D?{").unwrap();
        assert_eq!(star.vertex_count(), 5);
        assert_eq!(star.edges(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);

        // 0x7E−63 = 63 = all-ones payload.
        let k4 = Graph::parse_graph6("C~").unwrap();
        assert_eq!(k4, complete(4));

        // '_'−63 = 32 = 100000, so the single upper-triangle bit is set.
        let e = Graph::parse_graph6("A_").unwrap();
        assert_eq!(e.edges(), vec![(0, 1)]);
        let empty = Graph::parse_graph6("A?").unwrap();
        assert!(empty.edges().is_empty());
    }

    #[test]
    fn graph6_errors_name_offset() {
        match Graph::parse_graph6("D?") {
            Err(GraphError::Graph6 { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected length error, got {other:?}"),
        }
        let bad = String::from_utf8(vec![b'C', 0x20, 0x20]).unwrap();
        match Graph::parse_graph6(&bad) {
            Err(GraphError::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("expected byte error, got {other:?}"),
        }
    }

    #[test]
    fn graph6_round_trip() {
        let g = exceptional_8();
        assert_eq!(Graph::parse_graph6(&g.to_graph6()).unwrap(), g);
    }

    #[test]
    fn edge_list_construction() {
        let c5 = Graph::from_edges(None, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(c5, cycle(5));

        let g = exceptional_8();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.neighbors(4), &[0, 1, 5, 7]);
        assert_eq!(g.neighbors(7), &[0, 2, 4, 6]);

        let dup = Graph::from_edges(None, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(dup.edge_count(), 1);

        assert!(matches!(
            Graph::from_edges(None, &[(2, 2)]),
            Err(GraphError::SelfLoop(2))
        ));
    }

    #[test]
    fn edge_list_json() {
        let g = Graph::parse_edge_list_json(r#"{"n": 3, "edges": [[0,1],[1,2]]}"#).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(Graph::parse_edge_list_json("{").is_err());
    }

    #[test]
    fn sct_filter() {
        assert!(cycle(5).is_sct());
        let path3 = Graph::from_edges(Some(3), &[(0, 1), (1, 2)]).unwrap();
        assert!(!path3.is_sct());
        let two_triangles =
            Graph::from_edges(Some(6), &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!two_triangles.is_sct());
        // Example with a cut vertex but min degree 2 still passes the filter.
        let bowtie =
            Graph::from_edges(Some(5), &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(bowtie.is_sct());
    }

    #[test]
    fn connectivity_values() {
        assert_eq!(complete(6).connectivity_mu(), Ratio::new(1, 1));
        assert_eq!(cycle(5).connectivity_mu(), Ratio::new(1, 2));
        assert_eq!(exceptional_8().connectivity_mu(), Ratio::new(2, 7));
    }

    #[test]
    fn canonical_key_is_isomorphism_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [cycle(5), complete(4), exceptional_8(), two_three_biclique()] {
            let key = g.canonical_key().unwrap();
            let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
            for _ in 0..50 {
                perm.shuffle(&mut rng);
                assert_eq!(g.relabel(&perm).canonical_key().unwrap(), key);
            }
        }
    }

    #[test]
    fn canonical_key_separates_non_isomorphic() {
        let chord = Graph::from_edges(None, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
            .unwrap();
        assert_ne!(
            cycle(5).canonical_key().unwrap(),
            chord.canonical_key().unwrap()
        );
        // Complete graph: every bit of the upper triangle set.
        let key = complete(4).canonical_key().unwrap();
        assert_eq!(key.as_bytes(), &[0b1111_1100]);
        assert!(complete(9).canonical_key().is_err());
    }

    #[test]
    fn enumerate_small_sct_counts() {
        assert_eq!(Graph::enumerate_sct(4).unwrap().len(), 3);
        assert_eq!(Graph::enumerate_sct(5).unwrap().len(), 11);
        assert!(Graph::enumerate_sct(7).is_err());
    }

    #[test]
    fn klets() {
        let g = two_three_biclique();
        let klets = g.find_klets();
        assert_eq!(klets.len(), 2);
        assert_eq!(klets[0].vertices, vec![2, 3, 4]);
        assert_eq!(klets[0].shared_neighborhood, vec![0, 1]);
        assert_eq!(klets[1].vertices, vec![0, 1]);
        for kl in &klets {
            for &v in &kl.vertices {
                assert_eq!(g.neighbors(v), kl.shared_neighborhood.as_slice());
            }
            for v in 0..g.vertex_count() {
                if !kl.vertices.contains(&v) {
                    assert_ne!(g.neighbors(v), kl.shared_neighborhood.as_slice());
                }
            }
        }
        assert!(cycle(5).find_klets().is_empty());
        assert!(complete(5).find_klets().is_empty());
    }

    #[test]
    fn klet_codim_bounds() {
        assert_eq!(two_three_biclique().klet_codim_bound(), Some(3));
        // K_n: closed neighborhoods all coincide, k = n.
        assert_eq!(complete(4).klet_codim_bound(), Some(1));
        assert_eq!(complete(7).klet_codim_bound(), Some(1));
        assert_eq!(cycle(6).klet_codim_bound(), None);
    }

    #[test]
    fn chordless_cycle_enumeration() {
        assert_eq!(cycle(5).chordless_cycles(5), vec![vec![0, 1, 2, 3, 4]]);
        assert!(exceptional_8().chordless_cycles(5).is_empty());
        let pent_tri = Graph::glue_c5(1, &[]).unwrap();
        assert_eq!(pent_tri.chordless_cycles(5), vec![vec![0, 1, 2, 3, 4]]);
        // C_6 has its 6-cycle and nothing else induced of length >= 4.
        assert_eq!(cycle(6).chordless_cycles(4), vec![vec![0, 1, 2, 3, 4, 5]]);
    }

    #[test]
    fn glue_construction() {
        for d in 1..=4 {
            let g = Graph::glue_c5(d, &[]).unwrap();
            assert_eq!(g.vertex_count(), 5 + d);
            assert_eq!(g.degree(0), d + 2);
            assert_eq!(g.degree(4), d + 2);
            for v in 5..5 + d {
                assert_eq!(g.degree(v), 2);
            }
        }
        assert_eq!(Graph::glue_c5(2, &[]).unwrap().edge_count(), 9);

        // d = 3 with a triangle body: pentagon and K_5 sharing the edge {0,4}.
        let g = Graph::glue_c5(3, &[(5, 6), (5, 7), (6, 7)]).unwrap();
        assert_eq!(g.vertex_count(), 8);
        for &a in &[0usize, 4, 5, 6, 7] {
            for &b in &[0usize, 4, 5, 6, 7] {
                if a != b {
                    assert!(g.has_edge(a, b));
                }
            }
        }
        assert!(matches!(
            Graph::glue_c5(2, &[(5, 9)]),
            Err(GraphError::BodyEdge(..))
        ));
    }
}
