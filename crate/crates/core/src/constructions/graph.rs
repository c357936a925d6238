use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::ConstructionError;
use crate::homology::TwistedComplex;
use crate::laurent::linalg::rank_sparse;
use crate::laurent::{rat, LaurentMatrix, LaurentPolynomial};

/// A finite simple graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Normalizes each edge to `(min, max)` and drops duplicates.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, ConstructionError> {
        let mut out = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(ConstructionError::InvalidEdge { u, v, reason: "vertex out of range" });
            }
            if u == v {
                return Err(ConstructionError::InvalidEdge { u, v, reason: "loop" });
            }
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        out.dedup();
        Ok(Graph { vertex_count, edges: out })
    }

    pub fn empty(n: usize) -> Self {
        Graph { vertex_count: n, edges: Vec::new() }
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph { vertex_count: n, edges }
    }

    pub fn cycle(n: usize) -> Result<Self, ConstructionError> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges)
    }

    /// Join of three pairs of non-adjacent vertices.
    pub fn octahedron() -> Self {
        let edges: Vec<_> =
            (0..6).flat_map(|u| (u + 1..6).filter(move |&v| u / 2 != v / 2).map(move |v| (u, v))).collect();
        Graph { vertex_count: 6, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..self.vertex_count {
                if !seen[v] && self.adjacent(u, v) {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// All cliques, including the empty one, sorted by size then
    /// lexicographically.
    pub fn cliques(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for c in &frontier {
                let start = c.last().map_or(0, |&x| x + 1);
                for v in start..self.vertex_count {
                    if c.iter().all(|&u| self.adjacent(u, v)) {
                        let mut d = c.clone();
                        d.push(v);
                        next.push(d);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("v {}\n", self.vertex_count);
        for (u, v) in &self.edges {
            s.push_str(&format!("e {u} {v}\n"));
        }
        s
    }
}

/// Parses `v <count>` followed by `e <u> <v>` lines; `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<Graph, ConstructionError> {
    let mut count: Option<usize> = None;
    let mut edges = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: &str| ConstructionError::GraphParse { line: ln + 1, message: message.to_string() };
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["v", n] => {
                if count.is_some() {
                    return Err(bad("vertex count given twice"));
                }
                count = Some(n.parse().map_err(|_| bad("bad vertex count"))?);
            }
            ["e", a, b] => {
                if count.is_none() {
                    return Err(bad("edge before vertex count"));
                }
                let u = a.parse().map_err(|_| bad("bad vertex index"))?;
                let v = b.parse().map_err(|_| bad("bad vertex index"))?;
                edges.push((u, v));
            }
            _ => return Err(bad("expected 'v <count>' or 'e <u> <v>'")),
        }
    }
    let n = count.ok_or(ConstructionError::GraphParse { line: 0, message: "missing vertex count".into() })?;
    Graph::new(n, &edges)
}

/// A simplicial complex given by its simplices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub vertex_count: usize,
    /// Nonempty simplices, sorted by dimension then lexicographically.
    pub simplices: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.simplices
            .iter()
            .filter(|s| {
                !self.simplices.iter().any(|t| t.len() == s.len() + 1 && s.iter().all(|x| t.contains(x)))
            })
            .cloned()
            .collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dimension().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            f[s.len() - 1] += 1;
        }
        f
    }
}

/// The clique complex.
pub fn flag_complex(g: &Graph) -> SimplicialComplex {
    SimplicialComplex { vertex_count: g.vertex_count(), simplices: g.cliques().into_iter().skip(1).collect() }
}

/// Reduced rational Betti numbers `b~_0 ..= b~_dim`; the empty complex
/// gives `[]`.
pub fn reduced_homology(k: &SimplicialComplex) -> Vec<usize> {
    let Some(dim) = k.dimension() else { return Vec::new() };
    // chain groups in degrees -1..=dim, the empty simplex spanning degree -1
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for d in 0..=dim {
        by_dim.push(k.simplices.iter().filter(|s| s.len() == d + 1).cloned().collect());
    }
    let index: Vec<HashMap<&Vec<usize>, usize>> =
        by_dim.iter().map(|cells| cells.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    // ranks[i] = rank of the boundary from level i to level i-1 (level = degree + 1)
    let mut ranks = vec![0; by_dim.len() + 1];
    for lvl in 1..by_dim.len() {
        let rows = by_dim[lvl].iter().map(|s| {
            let mut col: Vec<(usize, _)> = (0..s.len())
                .map(|i| {
                    let mut face = s.clone();
                    face.remove(i);
                    (index[lvl - 1][&face], rat(if i % 2 == 0 { 1 } else { -1 }))
                })
                .collect();
            col.sort_by_key(|x| x.0);
            col
        });
        ranks[lvl] = rank_sparse(rows);
    }
    (1..by_dim.len()).map(|lvl| by_dim[lvl].len() - ranks[lvl] - ranks[lvl + 1]).collect()
}

/// Cube complex of the right-angled Artin group, one variable per vertex.
///
/// Cells are the cliques `s = {v_1 < .. < v_k}`, with
/// `d e_s = sum_i (-1)^{i+1} (t_{v_i} - 1) e_{s - v_i}`.
pub fn salvetti_complex(g: &Graph) -> TwistedComplex {
    let n = g.vertex_count();
    let cliques = g.cliques();
    let top = cliques.last().map_or(0, Vec::len);
    let mut by_size: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
    for c in cliques {
        by_size[c.len()].push(c);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> =
        by_size.iter().map(|cs| cs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect()).collect();
    let ranks: Vec<usize> = by_size.iter().map(Vec::len).collect();
    let mut diffs = Vec::with_capacity(top);
    for k in 1..=top {
        let mut d = LaurentMatrix::zeros(ranks[k - 1], ranks[k], n);
        for (col, s) in by_size[k].iter().enumerate() {
            for (i, &v) in s.iter().enumerate() {
                let mut face = s.clone();
                face.remove(i);
                let entry = &LaurentPolynomial::variable(n, v) - &LaurentPolynomial::one(n);
                let entry = if i % 2 == 0 { entry } else { -&entry };
                d.set(index[k - 1][&face], col, entry);
            }
        }
        diffs.push(d);
    }
    TwistedComplex::new(n, ranks, diffs).expect("cube complex boundary squares to zero").with_aspherical(true)
}

/// The cube complex over `Q[t, t^-1]` through the map sending every vertex
/// to `1`.
pub fn raag_complex(g: &Graph) -> TwistedComplex {
    salvetti_complex(g).push_forward(&[vec![1; g.vertex_count()]], 1)
}
