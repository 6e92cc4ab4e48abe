use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use std::fmt::Write as _;

/// Default vertex cap for [`strong_product`].
pub const MAX_PRODUCT_VERTICES: usize = 4096;

/// Simple undirected graph stored as one bitset row per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Self {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Cycle on `n >= 3` vertices, `i ~ i+1 mod n`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::arg("a cycle needs at least three vertices"));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::arg(format!("edge ({u}, {v}) leaves a graph on {} vertices", self.n)));
        }
        if u == v {
            return Err(Error::arg(format!("self-loop at {u}")));
        }
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Bitset of the neighbours of `v`.
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    /// Edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| (u + 1..self.n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Real 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, self.n, |i, j| if self.has_edge(i, j) { 1.0.into() } else { 0.0.into() })
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().into_iter().all(|(u, v)| {
            self.row(u).iter().zip(self.row(v)).all(|(a, b)| a & b == 0)
        })
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }

    /// Plain-text export: the vertex count, then one `u v` line per edge
    /// with `u < v`, ascending.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let parse = |t: &str, what: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::Data(format!("bad {what} '{t}' in graph text")))
        };
        let n = parse(lines.next().ok_or_else(|| Error::Data("empty graph text".into()))?, "vertex count")?;
        let mut g = Self::empty(n);
        for line in lines {
            let mut parts = line.split_whitespace();
            let (Some(u), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Data(format!("malformed edge line '{line}'")));
            };
            g.add_edge(parse(u, "vertex")?, parse(v, "vertex")?)
                .map_err(|e| Error::Data(e.to_string()))?;
        }
        Ok(g)
    }
}

/// Strong product: `(g, h) ~ (g', h')` when the pairs differ and each
/// coordinate is equal or adjacent. Vertex `(g, h)` has index `g |H| + h`.
pub fn strong_product(a: &Graph, b: &Graph) -> Result<Graph> {
    strong_product_with_budget(a, b, MAX_PRODUCT_VERTICES)
}

pub fn strong_product_with_budget(a: &Graph, b: &Graph, budget: usize) -> Result<Graph> {
    let n = a
        .n
        .checked_mul(b.n)
        .filter(|&n| n <= budget)
        .ok_or_else(|| Error::resource(format!("strong product of {} and {} vertices exceeds {budget}", a.n, b.n)))?;
    let close = |g: &Graph, u: usize, v: usize| u == v || g.has_edge(u, v);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let (ua, ub) = (u / b.n, u % b.n);
            let (va, vb) = (v / b.n, v % b.n);
            if close(a, ua, va) && close(b, ub, vb) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
        assert!(c5.is_triangle_free());
        assert_eq!(c5.to_text(), "5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
        assert_eq!(Graph::from_text(&c5.to_text()).unwrap(), c5);
    }

    #[test]
    fn strong_square_of_pentagon() {
        let c5 = Graph::cycle(5).unwrap();
        let p = strong_product(&c5, &c5).unwrap();
        assert_eq!(p.vertex_count(), 25);
        // Each vertex has 3 * 3 - 1 closed neighbours.
        assert!((0..25).all(|v| p.degree(v) == 8));
    }

    #[test]
    fn k1_is_identity() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(strong_product(&Graph::empty(1), &g).unwrap(), g);
        assert_eq!(strong_product(&g, &Graph::empty(1)).unwrap(), g);
    }

    #[test]
    fn errors() {
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_text("3\n0 x\n").is_err());
        let big = Graph::empty(100);
        assert!(matches!(strong_product(&big, &big), Err(Error::Resource(_))));
    }

    #[test]
    fn wide_bitsets() {
        let g = Graph::cycle(130).unwrap();
        assert!(g.has_edge(129, 0) && g.has_edge(64, 65));
        assert_eq!(g.edge_count(), 130);
    }
}
