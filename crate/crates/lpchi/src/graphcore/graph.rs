//! Simple graphs and digraphs on `{0, …, n−1}` with a text file format.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Finite simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
}

/// Finite digraph without loops or repeated arcs, sorted out-lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    out: Vec<Vec<u32>>,
}

fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v >= n {
        Err(Error::PointOutOfRange { point: v, degree: n })
    } else {
        Ok(())
    }
}

impl Graph {
    /// Builds from an edge list; rejects loops and repeated edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::InvalidParams(format!("loop at vertex {u}")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParams(format!("repeated edge at vertex {u}")));
            }
        }
        Ok(Graph { adj })
    }

    /// Builds from a symmetric adjacency relation given per vertex; duplicates are merged.
    pub fn from_neighbour_fn<F: FnMut(usize) -> Vec<usize>>(n: usize, mut f: F) -> Result<Self> {
        let mut adj: Vec<Vec<u32>> = Vec::with_capacity(n);
        for u in 0..n {
            let mut list: Vec<u32> = Vec::new();
            for v in f(u) {
                check_vertex(v, n)?;
                if v == u {
                    return Err(Error::InvalidParams(format!("loop at vertex {u}")));
                }
                list.push(v as u32);
            }
            list.sort_unstable();
            list.dedup();
            adj.push(list);
        }
        let g = Graph { adj };
        for u in 0..n {
            for &v in &g.adj[u] {
                if !g.is_adjacent(v as usize, u) {
                    return Err(Error::InvalidParams(format!("adjacency not symmetric at {u} -> {v}")));
                }
            }
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn valency(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Common valency, if regular.
    pub fn regular_valency(&self) -> Option<usize> {
        let k = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == k).then_some(k)
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v as usize {
                    out.push((u, v as usize));
                }
            }
        }
        out
    }

    /// Index of arc `(u, v)` in the concatenated adjacency lists.
    pub fn arc_offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.adj.len() + 1);
        off.push(0);
        for l in &self.adj {
            off.push(off.last().unwrap() + l.len());
        }
        off
    }

    pub fn is_connected(&self) -> bool {
        component_count(self.adj.len(), |u| &self.adj[u]) <= 1
    }

    pub fn is_automorphism(&self, g: &Permutation) -> bool {
        let n = self.adj.len();
        g.degree() == n
            && (0..n).all(|u| {
                let gu = g.apply(u);
                self.adj[gu].len() == self.adj[u].len() && self.adj[u].iter().all(|&v| self.is_adjacent(gu, g.apply(v as usize)))
            })
    }

    /// Text form: `graph n m` then one sorted edge per line.
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut s = format!("graph {} {}\n", self.adj.len(), edges.len());
        for (u, v) in edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (n, pairs) = parse_pairs(text, "graph")?;
        Graph::from_edges(n, &pairs)
    }
}

impl Digraph {
    /// Builds from an arc list; rejects loops and repeated arcs.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        for &(u, v) in arcs {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::InvalidParams(format!("loop at vertex {u}")));
            }
            out[u].push(v as u32);
        }
        for (u, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParams(format!("repeated arc at vertex {u}")));
            }
        }
        Ok(Digraph { out })
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn out_neighbours(&self, v: usize) -> &[u32] {
        &self.out[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn in_valencies(&self) -> Vec<usize> {
        let mut d = vec![0; self.out.len()];
        for l in &self.out {
            for &v in l {
                d[v as usize] += 1;
            }
        }
        d
    }

    /// Common out- and in-valency, if both are constant and equal.
    pub fn regular_valency(&self) -> Option<usize> {
        let k = self.out.first().map_or(0, Vec::len);
        (self.out.iter().all(|l| l.len() == k) && self.in_valencies().iter().all(|&d| d == k)).then_some(k)
    }

    /// No arc occurs together with its reverse.
    pub fn is_asymmetric(&self) -> bool {
        self.arcs().iter().all(|&(u, v)| !self.has_arc(v, u))
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.arc_count());
        for (u, list) in self.out.iter().enumerate() {
            out.extend(list.iter().map(|&v| (u, v as usize)));
        }
        out
    }

    pub fn reverse(&self) -> Digraph {
        let rev: Vec<(usize, usize)> = self.arcs().into_iter().map(|(u, v)| (v, u)).collect();
        Digraph::from_arcs(self.out.len(), &rev).expect("reverse of a valid digraph")
    }

    /// Underlying simple graph (arcs forgotten, antiparallel pairs merged).
    pub fn underlying(&self) -> Graph {
        let mut adj: Vec<Vec<u32>> = self.out.clone();
        for (u, list) in self.out.iter().enumerate() {
            for &v in list {
                adj[v as usize].push(u as u32);
            }
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        Graph { adj }
    }

    pub fn preserved_by(&self, g: &Permutation) -> bool {
        g.degree() == self.out.len() && self.arcs().iter().all(|&(u, v)| self.has_arc(g.apply(u), g.apply(v)))
    }

    /// Text form: `digraph n m` then one arc per line in sorted order.
    pub fn to_text(&self) -> String {
        let arcs = self.arcs();
        let mut s = format!("digraph {} {}\n", self.out.len(), arcs.len());
        for (u, v) in arcs {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (n, pairs) = parse_pairs(text, "digraph")?;
        Digraph::from_arcs(n, &pairs)
    }
}

fn component_count<'a, F: Fn(usize) -> &'a [u32]>(n: usize, adj: F) -> usize {
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in adj(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    queue.push_back(v as usize);
                }
            }
        }
    }
    count
}

fn parse_pairs(text: &str, keyword: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    let perr = |line: usize, column: usize, message: String| Error::Parse { line: line + 1, column, message };
    let (hline, header) = lines.next().ok_or_else(|| perr(0, 1, format!("missing '{keyword} n m' header")))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != keyword {
        return Err(perr(hline, 1, format!("expected '{keyword} n m' header")));
    }
    let n: usize = fields[1].parse().map_err(|_| perr(hline, 1, format!("bad vertex count '{}'", fields[1])))?;
    let m: usize = fields[2].parse().map_err(|_| perr(hline, 1, format!("bad edge count '{}'", fields[2])))?;
    let mut pairs = Vec::with_capacity(m);
    for (ln, line) in lines {
        let mut nums = Vec::new();
        for tok in line.split_whitespace() {
            let col = tok.as_ptr() as usize - line.as_ptr() as usize + 1;
            let v: usize = tok.parse().map_err(|_| perr(ln, col, format!("bad vertex '{tok}'")))?;
            if v >= n {
                return Err(perr(ln, col, format!("vertex {v} out of range for {n} vertices")));
            }
            nums.push(v);
        }
        if nums.len() != 2 {
            return Err(perr(ln, 1, "expected two vertices".into()));
        }
        pairs.push((nums[0], nums[1]));
    }
    if pairs.len() != m {
        return Err(perr(hline, 1, format!("header announces {m} lines, found {}", pairs.len())));
    }
    Ok((n, pairs))
}

/// Cycle `C_n`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// Complete graph `K_n`.
pub fn complete_graph(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges).expect("complete graph")
}
