use crate::algebra::prime_power;
use crate::error::{Error, Result};
use crate::games::{game_matrices, LinearGame, Partition};
use crate::numerics::{spectral_norm, ComplexMatrix};
use rayon::prelude::*;
use serde::Serialize;

/// Largest player count for which every partition is tried.
pub const MAX_PARTITION_PLAYERS: usize = 12;
/// Default cap on the cut player's deterministic assignments.
pub const DEFAULT_BISEPARABLE_BUDGET: usize = 10_000_000;

/// `(1 + sqrt(m_A m_B) ||Phi||) / 2` for an XOR game matrix.
pub fn xor_norm_bound(phi: &ComplexMatrix) -> Result<f64> {
    let scale = ((phi.rows() * phi.cols()) as f64).sqrt();
    Ok(0.5 * (1.0 + scale * spectral_norm(phi)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormBound {
    /// Members of S.
    #[serde(serialize_with = "super::report::one_based")]
    pub partition: Vec<usize>,
    pub bound: f64,
    /// `||Phi_k^S||` for k = 1..|G|-1.
    pub norms: Vec<f64>,
}

/// `(1/|G|) (1 + sqrt(prod_i m_i) sum_{k != 0} ||Phi_k^S||)`.
pub fn linear_norm_bound(g: &LinearGame, s: &Partition) -> Result<NormBound> {
    let set = game_matrices(g, s)?;
    let norms = set
        .matrices
        .iter()
        .map(|(_, m)| spectral_norm(m))
        .collect::<Result<Vec<_>>>()?;
    let scale = (g.num_inputs() as f64).sqrt();
    let bound = (1.0 + scale * norms.iter().sum::<f64>()) / g.group().size() as f64;
    Ok(NormBound {
        partition: s.members().to_vec(),
        bound,
        norms,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BestNormBound {
    pub bound: f64,
    #[serde(serialize_with = "super::report::one_based")]
    pub partition: Vec<usize>,
    /// Every partition containing player 0, in bitmask order.
    pub all: Vec<NormBound>,
}

/// Minimum of [`linear_norm_bound`] over all cuts. The first minimum in
/// bitmask order wins ties.
pub fn linear_norm_bound_best(g: &LinearGame) -> Result<BestNormBound> {
    let n = g.players();
    if n > MAX_PARTITION_PLAYERS {
        return Err(Error::resource(format!(
            "{n} players give too many partitions (limit {MAX_PARTITION_PLAYERS})"
        )));
    }
    let all = Partition::all_containing_first(n)
        .iter()
        .map(|s| linear_norm_bound(g, s))
        .collect::<Result<Vec<_>>>()?;
    let best = all
        .iter()
        .reduce(|a, b| if b.bound < a.bound { b } else { a })
        .ok_or_else(|| Error::Internal("no partitions".into()))?;
    Ok(BestNormBound {
        bound: best.bound,
        partition: best.partition.clone(),
        all,
    })
}

/// Closed form `1/d + (d-1)/(d sqrt d)` of the CHSH_d norm bound.
pub fn chshd_bound(d: usize) -> Result<f64> {
    if prime_power(d).is_none() {
        return Err(Error::arg(format!("{d} is not a prime power")));
    }
    let d = d as f64;
    Ok(1.0 / d + (d - 1.0) / (d * d.sqrt()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiseparableBound {
    #[serde(serialize_with = "super::report::one_based_index")]
    pub cut: usize,
    pub bound: f64,
    /// Maximizing assignment `c_z` of the cut player (flat group indices).
    pub assignment: Vec<usize>,
}

/// Norm bound for three players when the cut player shares no entanglement
/// with the other two.
///
/// For every deterministic assignment `c_z` of the cut player the remaining
/// pair plays the bipartite game with matrices
/// `Phi_k[x][y] = sum_z p(x,y,z) chi_k(f(x,y,z) - c_z)`; the bipartite bound
/// is maximized over assignments.
pub fn biseparable_bound(g: &LinearGame, cut: usize) -> Result<BiseparableBound> {
    biseparable_bound_with_budget(g, cut, DEFAULT_BISEPARABLE_BUDGET)
}

pub fn biseparable_bound_with_budget(g: &LinearGame, cut: usize, budget: usize) -> Result<BiseparableBound> {
    if g.players() != 3 {
        return Err(Error::arg("biseparable bounds are defined for three players"));
    }
    if cut >= 3 {
        return Err(Error::arg(format!("cut player {cut} out of range")));
    }
    let q = g.group().size();
    let sizes = g.input_sizes();
    let mc = sizes[cut];
    let assignments = q
        .checked_pow(mc as u32)
        .filter(|&c| c <= budget)
        .ok_or_else(|| Error::resource(format!("{q}^{mc} cut assignments exceed the budget of {budget}")))?;
    let (pa, pb) = match cut {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let (ma, mb) = (sizes[pa], sizes[pb]);
    let scale = ((ma * mb) as f64).sqrt();
    let grp = g.group();
    let inputs: Vec<(usize, usize, usize, f64, usize)> = (0..g.num_inputs())
        .filter(|&x| g.dist()[x] > 0.0)
        .map(|x| {
            let t = g.input_tuple(x);
            (t[pa], t[pb], t[cut], g.dist()[x], g.f()[x])
        })
        .collect();

    let evaluate = |idx: usize| -> Result<(f64, Vec<usize>)> {
        let mut rest = idx;
        let c: Vec<usize> = (0..mc)
            .map(|_| {
                let v = rest % q;
                rest /= q;
                v
            })
            .collect();
        let mut total = 0.0;
        for k in 1..q {
            let mut m = ComplexMatrix::zeros(ma, mb);
            for &(x, y, z, p, f) in &inputs {
                m[(x, y)] += grp.character_at(k, grp.sub_index(f, c[z])) * p;
            }
            total += spectral_norm(&m)?;
        }
        Ok(((1.0 + scale * total) / q as f64, c))
    };
    let results = (0..assignments)
        .into_par_iter()
        .map(evaluate)
        .collect::<Result<Vec<_>>>()?;
    let (bound, assignment) = results
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 + 1e-12 { b } else { a })
        .ok_or_else(|| Error::Internal("no assignments".into()))?;
    Ok(BiseparableBound {
        cut,
        bound,
        assignment,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiewBound {
    pub bound: f64,
    #[serde(serialize_with = "super::report::one_based_index")]
    pub cut: usize,
    pub per_cut: Vec<BiseparableBound>,
}

/// Largest biseparable bound over the three possible cuts.
pub fn diew_bound(g: &LinearGame) -> Result<DiewBound> {
    diew_bound_with_budget(g, DEFAULT_BISEPARABLE_BUDGET)
}

pub fn diew_bound_with_budget(g: &LinearGame, budget: usize) -> Result<DiewBound> {
    let per_cut = (0..3)
        .map(|c| biseparable_bound_with_budget(g, c, budget))
        .collect::<Result<Vec<_>>>()?;
    let best = per_cut
        .iter()
        .reduce(|a, b| if b.bound > a.bound + 1e-12 { b } else { a })
        .ok_or_else(|| Error::Internal("no cuts".into()))?;
    Ok(DiewBound {
        bound: best.bound,
        cut: best.cut,
        per_cut: per_cut.clone(),
    })
}
