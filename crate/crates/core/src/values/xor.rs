use crate::error::{Error, Result};
use crate::numerics::{lambda_min, ComplexMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Extra sweeps spent tightening the dual certificate of the best restart.
const POLISH_SWEEPS: usize = 1000;
const POLISH_GAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XorSdpOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Stop once a sweep improves the bias by less than this.
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for XorSdpOptions {
    fn default() -> Self {
        Self {
            restarts: 8,
            seed: 0,
            tol: 1e-10,
            max_sweeps: 100_000,
        }
    }
}

/// Unit vectors for Alice's and Bob's inputs, in dimension `m_A + m_B`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VectorStrategy {
    pub u: Vec<Vec<f64>>,
    pub v: Vec<Vec<f64>>,
    pub bias: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct XorBiasResult {
    pub bias: f64,
    /// Winning probability `(1 + bias) / 2`.
    pub value: f64,
    pub strategy: VectorStrategy,
    /// Objective of a feasible dual point built from the strategy.
    pub dual_bound: f64,
    pub gap: f64,
    /// False when some restart hit `max_sweeps` before converging.
    pub converged: bool,
    pub sweeps: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Bias after every half-sweep of the returned restart.
    #[serde(skip)]
    pub history: Vec<f64>,
}

struct Run {
    u: Vec<Vec<f64>>,
    v: Vec<Vec<f64>>,
    bias: f64,
    sweeps: usize,
    converged: bool,
    history: Vec<f64>,
}

fn normalize(w: &mut [f64]) -> bool {
    let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 1e-300 {
        w.iter_mut().for_each(|x| *x /= n);
        true
    } else {
        false
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn objective(phi: &[Vec<f64>], u: &[Vec<f64>], v: &[Vec<f64>]) -> f64 {
    phi.iter()
        .zip(u)
        .map(|(row, ux)| row.iter().zip(v).map(|(p, vy)| p * dot(ux, vy)).sum::<f64>())
        .sum()
}

/// `sum_j w_j vecs_j`.
fn combine<'a>(w: impl Iterator<Item = f64>, vecs: impl Iterator<Item = &'a Vec<f64>>, dim: usize) -> Vec<f64> {
    let mut out = vec![0.0; dim];
    for (c, vec) in w.zip(vecs) {
        if c != 0.0 {
            out.iter_mut().zip(vec).for_each(|(o, x)| *o += c * x);
        }
    }
    out
}

fn check_monotone(new: f64, old: f64, history: &mut Vec<f64>) -> Result<()> {
    if new < old - 1e-12 * (1.0 + old.abs()) {
        return Err(Error::Internal(format!(
            "alternating ascent decreased the bias from {old} to {new}"
        )));
    }
    history.push(new);
    Ok(())
}

/// One sweep: update every `u_x`, then every `v_y`. Returns the new bias.
fn sweep(phi: &[Vec<f64>], u: &mut [Vec<f64>], v: &mut [Vec<f64>], start: f64, history: &mut Vec<f64>) -> Result<f64> {
    let dim = u[0].len();
    for (x, ux) in u.iter_mut().enumerate() {
        let mut w = combine(phi[x].iter().copied(), v.iter(), dim);
        if normalize(&mut w) {
            *ux = w;
        }
    }
    let mid = objective(phi, u, v);
    check_monotone(mid, start, history)?;
    for (y, vy) in v.iter_mut().enumerate() {
        let mut w = combine(phi.iter().map(|row| row[y]), u.iter(), dim);
        if normalize(&mut w) {
            *vy = w;
        }
    }
    let end = objective(phi, u, v);
    check_monotone(end, mid, history)?;
    Ok(end)
}

fn ascend(phi: &[Vec<f64>], opts: &XorSdpOptions, restart: usize) -> Result<Run> {
    let (ma, mb) = (phi.len(), phi[0].len());
    let dim = ma + mb;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(restart as u64);
    let mut random_unit = || loop {
        let mut w: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if normalize(&mut w) {
            return w;
        }
    };
    let mut u: Vec<Vec<f64>> = (0..ma).map(|_| random_unit()).collect();
    let mut v: Vec<Vec<f64>> = (0..mb).map(|_| random_unit()).collect();
    let mut bias = objective(phi, &u, &v);
    let mut history = vec![bias];
    for sweeps in 1..=opts.max_sweeps {
        let start = bias;
        bias = sweep(phi, &mut u, &mut v, start, &mut history)?;
        if bias - start < opts.tol {
            return Ok(Run { u, v, bias, sweeps, converged: true, history });
        }
    }
    Ok(Run {
        u,
        v,
        bias,
        sweeps: opts.max_sweeps,
        converged: false,
        history,
    })
}

/// Dual objective `sum y + (m_A+m_B) max(0, -lambda_min(Diag(y) - Phi_s))`
/// with `y` read off the strategy's row and column norms and
/// `Phi_s = [[0, Phi/2], [Phi^T/2, 0]]`.
fn dual_bound(phi: &[Vec<f64>], u: &[Vec<f64>], v: &[Vec<f64>]) -> Result<f64> {
    let (ma, mb) = (phi.len(), phi[0].len());
    let dim = ma + mb;
    let norm = |w: Vec<f64>| dot(&w, &w).sqrt();
    let mut y: Vec<f64> = (0..ma)
        .map(|x| 0.5 * norm(combine(phi[x].iter().copied(), v.iter(), dim)))
        .collect();
    y.extend((0..mb).map(|j| 0.5 * norm(combine(phi.iter().map(|row| row[j]), u.iter(), dim))));
    let mut m = ComplexMatrix::diag_real(&y);
    for x in 0..ma {
        for j in 0..mb {
            m[(x, ma + j)] -= 0.5 * phi[x][j];
            m[(ma + j, x)] -= 0.5 * phi[x][j];
        }
    }
    let shift = (-lambda_min(&m)?).max(0.0);
    Ok(y.iter().sum::<f64>() + dim as f64 * shift)
}

/// Optimal quantum bias of a two-player XOR game by alternating ascent on
/// the vector program `max sum Phi_xy <u_x, v_y>` over unit vectors.
///
/// Restarts run in parallel from independent seeded streams; the best bias
/// wins, ties going to the lowest restart index.
pub fn xor_quantum_bias(phi: &ComplexMatrix, opts: &XorSdpOptions) -> Result<XorBiasResult> {
    let real = phi
        .to_real(1e-12)
        .map_err(|_| Error::arg("XOR game matrix must be real"))?;
    if real.is_empty() || real[0].is_empty() {
        return Err(Error::arg("empty game matrix"));
    }
    if opts.restarts == 0 || opts.max_sweeps == 0 {
        return Err(Error::arg("need at least one restart and one sweep"));
    }
    let runs: Vec<Run> = (0..opts.restarts)
        .into_par_iter()
        .map(|r| ascend(&real, opts, r))
        .collect::<Result<_>>()?;
    let converged = runs.iter().all(|r| r.converged);
    let mut best = runs
        .into_iter()
        .reduce(|a, b| if b.bias > a.bias + 1e-12 { b } else { a })
        .ok_or_else(|| Error::Internal("no restarts ran".into()))?;
    // The bias settles long before the vectors do, and the dual point read
    // off the vectors lags behind; keep sweeping the winner until the
    // certificate is tight.
    let mut dual = dual_bound(&real, &best.u, &best.v)?;
    for _ in 0..POLISH_SWEEPS {
        if dual - best.bias <= POLISH_GAP * (1.0 + best.bias.abs()) {
            break;
        }
        best.bias = sweep(&real, &mut best.u, &mut best.v, best.bias, &mut best.history)?;
        best.sweeps += 1;
        dual = dual_bound(&real, &best.u, &best.v)?;
    }
    Ok(XorBiasResult {
        bias: best.bias,
        value: 0.5 * (1.0 + best.bias),
        dual_bound: dual,
        gap: dual - best.bias,
        converged,
        sweeps: best.sweeps,
        restarts: opts.restarts,
        seed: opts.seed,
        history: best.history,
        strategy: VectorStrategy {
            u: best.u,
            v: best.v,
            bias: best.bias,
        },
    })
}
