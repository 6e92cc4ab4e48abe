use crate::error::{Error, Result};
use crate::games::LinearGame;
use rayon::prelude::*;
use serde::Serialize;

/// Default cap on `prod_i |G|^{m_i}`, the size of the deterministic strategy space.
pub const DEFAULT_CLASSICAL_BUDGET: f64 = 1e9;

/// Strategies of the first `n-1` players scanned per work unit.
const CHUNK: u64 = 4096;

/// Output (flat group-element index) of every player for every input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeterministicStrategy {
    pub outputs: Vec<Vec<usize>>,
}

impl DeterministicStrategy {
    /// `(-1)^output` for a binary-output player.
    pub fn signs(&self, player: usize) -> Vec<f64> {
        self.outputs[player]
            .iter()
            .map(|&a| if a == 0 { 1.0 } else { -1.0 })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalResult {
    pub value: f64,
    pub strategy: DeterministicStrategy,
}

pub fn classical_value(g: &LinearGame) -> Result<ClassicalResult> {
    classical_value_with_budget(g, DEFAULT_CLASSICAL_BUDGET)
}

/// Exact classical value by enumeration.
///
/// The first `n-1` players' strategies are scanned in lexicographic order of
/// the flat strategy vector (player 0's answers first, input 0 most
/// significant); the last player best-responds with the smallest optimal
/// output. Only strict improvements replace the incumbent, so the returned
/// strategy is the lexicographically smallest optimum. Work is split into
/// fixed chunks reduced in order, so the result does not depend on the
/// number of threads.
pub fn classical_value_with_budget(g: &LinearGame, budget: f64) -> Result<ClassicalResult> {
    let q = g.group().size();
    let n = g.players();
    let sizes = g.input_sizes();
    let log_space: f64 = sizes.iter().map(|&m| m as f64 * (q as f64).ln()).sum();
    if log_space > budget.ln() + 1e-9 {
        return Err(Error::resource(format!(
            "{:.3e} deterministic strategies exceed the budget of {budget:.3e}; \
             reduce the game by symmetry or raise the budget",
            log_space.exp()
        )));
    }
    let last = n - 1;
    let m_last = sizes[last];
    // Position of (player i, input x) in the flat prefix vector.
    let offsets: Vec<usize> = sizes[..last]
        .iter()
        .scan(0, |acc, &m| {
            let o = *acc;
            *acc += m;
            Some(o)
        })
        .collect();
    let prefix_len: usize = sizes[..last].iter().sum();
    let total = (q as u64)
        .checked_pow(prefix_len as u32)
        .ok_or_else(|| Error::resource("strategy count overflows"))?;

    struct Term {
        positions: Vec<usize>,
        y: usize,
        f: usize,
        p: f64,
    }
    let terms: Vec<Term> = (0..g.num_inputs())
        .filter(|&x| g.dist()[x] > 0.0)
        .map(|x| {
            let t = g.input_tuple(x);
            Term {
                positions: (0..last).map(|i| offsets[i] + t[i]).collect(),
                y: t[last],
                f: g.f()[x],
                p: g.dist()[x],
            }
        })
        .collect();
    let grp = g.group();

    // Value and last-player response for one prefix.
    let evaluate = |digits: &[usize], score: &mut Vec<f64>| -> f64 {
        score.iter_mut().for_each(|s| *s = 0.0);
        for t in &terms {
            let mut c = t.f;
            for &pos in &t.positions {
                c = grp.sub_index(c, digits[pos]);
            }
            score[t.y * q + c] += t.p;
        }
        (0..m_last)
            .map(|y| score[y * q..(y + 1) * q].iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b)))
            .sum()
    };

    let decode = |mut t: u64, digits: &mut [usize]| {
        for d in digits.iter_mut().rev() {
            *d = (t % q as u64) as usize;
            t /= q as u64;
        }
    };

    let chunks = total.div_ceil(CHUNK);
    let results: Vec<(f64, u64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut digits = vec![0usize; prefix_len];
            let mut score = vec![0.0; m_last * q];
            decode(start, &mut digits);
            let mut best = (f64::NEG_INFINITY, start);
            for t in start..end {
                let v = evaluate(&digits, &mut score);
                if v > best.0 + 1e-12 {
                    best = (v, t);
                }
                // Odometer increment, last position least significant.
                for d in digits.iter_mut().rev() {
                    *d += 1;
                    if *d < q {
                        break;
                    }
                    *d = 0;
                }
            }
            best
        })
        .collect();
    let (_, best_t) = results
        .iter()
        .fold((f64::NEG_INFINITY, 0u64), |acc, &(v, t)| if v > acc.0 + 1e-12 { (v, t) } else { acc });

    let mut digits = vec![0usize; prefix_len];
    decode(best_t, &mut digits);
    let mut score = vec![0.0; m_last * q];
    let value = evaluate(&digits, &mut score);
    let mut outputs: Vec<Vec<usize>> = (0..last)
        .map(|i| digits[offsets[i]..offsets[i] + sizes[i]].to_vec())
        .collect();
    outputs.push(
        (0..m_last)
            .map(|y| {
                let row = &score[y * q..(y + 1) * q];
                let mut arg = 0;
                for (b, &s) in row.iter().enumerate() {
                    if s > row[arg] + 1e-15 {
                        arg = b;
                    }
                }
                arg
            })
            .collect(),
    );
    Ok(ClassicalResult {
        value,
        strategy: DeterministicStrategy { outputs },
    })
}
