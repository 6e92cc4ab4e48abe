use super::graph::Graph;
use crate::error::{Error, Result};
use serde::Serialize;

/// Default vertex cap for the exact search.
pub const DEFAULT_INDEPENDENCE_BUDGET: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependentSet {
    pub size: usize,
    /// Lexicographically smallest maximum independent set, ascending.
    pub vertices: Vec<usize>,
}

struct Solver<'a> {
    g: &'a Graph,
    words: usize,
}

fn members(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &bits)| {
        let mut b = bits;
        std::iter::from_fn(move || {
            (b != 0).then(|| {
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                w * 64 + t
            })
        })
    })
}

fn first(set: &[u64]) -> Option<usize> {
    members(set).next()
}

fn clear(set: &mut [u64], v: usize) {
    set[v / 64] &= !(1 << (v % 64));
}

impl Solver<'_> {
    /// Vertices of `cand` grouped into cliques, returned with the running
    /// clique count. An independent set meets each clique at most once.
    fn clique_cover(&self, cand: &[u64]) -> Vec<(usize, usize)> {
        let mut rest = cand.to_vec();
        let mut order = Vec::new();
        let mut k = 0;
        while rest.iter().any(|&w| w != 0) {
            k += 1;
            let mut pool = rest.clone();
            while let Some(v) = first(&pool) {
                order.push((v, k));
                clear(&mut rest, v);
                clear(&mut pool, v);
                for (p, n) in pool.iter_mut().zip(self.g.row(v)) {
                    *p &= n;
                }
            }
        }
        order
    }

    fn expand(&self, mut cand: Vec<u64>, size: usize, best: &mut usize) {
        if cand.iter().all(|&w| w == 0) {
            *best = (*best).max(size);
            return;
        }
        let order = self.clique_cover(&cand);
        for &(v, bound) in order.iter().rev() {
            if size + bound <= *best {
                return;
            }
            let mut next = cand.clone();
            clear(&mut next, v);
            for (c, n) in next.iter_mut().zip(self.g.row(v)) {
                *c &= !n;
            }
            self.expand(next, size + 1, best);
            clear(&mut cand, v);
        }
    }

    fn alpha(&self, cand: Vec<u64>) -> usize {
        let mut best = 0;
        self.expand(cand, 0, &mut best);
        best
    }

    fn full(&self) -> Vec<u64> {
        let n = self.g.vertex_count();
        let mut s = vec![0u64; self.words];
        for v in 0..n {
            s[v / 64] |= 1 << (v % 64);
        }
        s
    }
}

/// Exact independence number by branch and bound with a greedy clique
/// cover bound, plus the lexicographically smallest maximum independent set.
pub fn independence_number(g: &Graph, budget: usize) -> Result<IndependentSet> {
    let n = g.vertex_count();
    if n > budget {
        return Err(Error::resource(format!(
            "graph has {n} vertices, above the independence budget of {budget}"
        )));
    }
    let solver = Solver { g, words: g.words() };
    let mut avail = solver.full();
    let size = solver.alpha(avail.clone());
    let mut vertices = Vec::with_capacity(size);
    for v in 0..n {
        if avail[v / 64] >> (v % 64) & 1 == 0 {
            continue;
        }
        clear(&mut avail, v);
        let mut after = avail.clone();
        for (a, nb) in after.iter_mut().zip(g.row(v)) {
            *a &= !nb;
        }
        if vertices.len() + 1 + solver.alpha(after.clone()) == size {
            vertices.push(v);
            avail = after;
        }
    }
    if vertices.len() != size || !g.is_independent(&vertices) {
        return Err(Error::Internal("independent set witness failed to verify".into()));
    }
    Ok(IndependentSet { size, vertices })
}
