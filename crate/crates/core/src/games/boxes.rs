use super::game::LinearGame;
use crate::error::{Error, Result};

/// Tolerance for normalization and no-signaling checks.
pub const BOX_TOL: f64 = 1e-10;

/// A conditional probability table `P(a|x)` for n players sharing one output
/// alphabet of size `|G|`.
///
/// Entry index is `x_flat * |G|^n + a_flat`, both little-endian over players.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxTable {
    inputs: Vec<usize>,
    outputs: usize,
    table: Vec<f64>,
}

/// Outcome of [`validate_no_signaling`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoSignalingCheck {
    pub no_signaling: bool,
    pub max_violation: f64,
}

impl BoxTable {
    pub fn new(inputs: Vec<usize>, outputs: usize, table: Vec<f64>) -> Result<Self> {
        if inputs.is_empty() || inputs.iter().any(|&m| m == 0) || outputs == 0 {
            return Err(Error::validation("box needs players, inputs and outputs"));
        }
        let nx: usize = inputs.iter().product();
        let na = outputs
            .checked_pow(inputs.len() as u32)
            .ok_or_else(|| Error::resource("output space overflows"))?;
        if table.len() != nx * na {
            return Err(Error::validation(format!(
                "box table has {} entries, expected {}",
                table.len(),
                nx * na
            )));
        }
        if let Some(v) = table.iter().find(|v| !v.is_finite() || **v < -BOX_TOL) {
            return Err(Error::validation(format!("invalid probability {v}")));
        }
        for x in 0..nx {
            let s: f64 = table[x * na..(x + 1) * na].iter().sum();
            if (s - 1.0).abs() > BOX_TOL {
                return Err(Error::validation(format!(
                    "outputs for input {x} sum to {s}"
                )));
            }
        }
        Ok(Self {
            inputs,
            outputs,
            table,
        })
    }

    /// Local deterministic box: player i answers `strategy[i][x_i]`.
    pub fn deterministic(inputs: &[usize], outputs: usize, strategy: &[Vec<usize>]) -> Result<Self> {
        if strategy.len() != inputs.len()
            || strategy.iter().zip(inputs).any(|(s, &m)| s.len() != m)
            || strategy.iter().flatten().any(|&a| a >= outputs)
        {
            return Err(Error::arg("strategy does not match the box shape"));
        }
        let n = inputs.len();
        let nx: usize = inputs.iter().product();
        let na = outputs.pow(n as u32);
        let mut table = vec![0.0; nx * na];
        for x in 0..nx {
            let (mut rest, mut a, mut stride) = (x, 0, 1);
            for (i, &m) in inputs.iter().enumerate() {
                a += strategy[i][rest % m] * stride;
                rest /= m;
                stride *= outputs;
            }
            table[x * na + a] = 1.0;
        }
        Self::new(inputs.to_vec(), outputs, table)
    }

    /// Uniformly random outputs for every input.
    pub fn uniform(inputs: &[usize], outputs: usize) -> Result<Self> {
        let nx: usize = inputs.iter().product();
        let na = outputs.pow(inputs.len() as u32);
        Self::new(inputs.to_vec(), outputs, vec![1.0 / na as f64; nx * na])
    }

    pub fn players(&self) -> usize {
        self.inputs.len()
    }

    pub fn input_sizes(&self) -> &[usize] {
        &self.inputs
    }

    pub fn output_size(&self) -> usize {
        self.outputs
    }

    pub fn num_output_tuples(&self) -> usize {
        self.outputs.pow(self.inputs.len() as u32)
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn prob(&self, x_flat: usize, a_flat: usize) -> f64 {
        self.table[x_flat * self.num_output_tuples() + a_flat]
    }

    /// Output tuple for a flat output index.
    pub fn output_tuple(&self, a_flat: usize) -> Vec<usize> {
        let mut rest = a_flat;
        (0..self.players())
            .map(|_| {
                let a = rest % self.outputs;
                rest /= self.outputs;
                a
            })
            .collect()
    }
}

/// Functional box: uniform over the output tuples that sum to `f(x)`.
/// Wins the game with probability 1.
pub fn box_functional(g: &LinearGame) -> Result<BoxTable> {
    let grp = g.group();
    let q = grp.size();
    let n = g.players();
    let na = q
        .checked_pow(n as u32)
        .filter(|&na| na.saturating_mul(g.num_inputs()) <= 50_000_000)
        .ok_or_else(|| Error::resource("functional box table too large"))?;
    let weight = 1.0 / q.pow((n - 1) as u32) as f64;
    let sums = output_sums(grp, n);
    let mut table = vec![0.0; g.num_inputs() * na];
    for x in 0..g.num_inputs() {
        let target = g.f()[x];
        for (a, &s) in sums.iter().enumerate() {
            if s == target {
                table[x * na + a] = weight;
            }
        }
    }
    BoxTable::new(g.input_sizes().to_vec(), q, table)
}

/// Group sum of every flat output tuple.
pub(crate) fn output_sums(grp: &crate::algebra::AbelianGroup, n: usize) -> Vec<usize> {
    let q = grp.size();
    let na = q.pow(n as u32);
    (0..na)
        .map(|a| {
            let (mut rest, mut s) = (a, 0);
            for _ in 0..n {
                s = grp.add_index(s, rest % q);
                rest /= q;
            }
            s
        })
        .collect()
}

/// `sum_x p(x) P(sum_i a_i = f(x) | x)`.
pub fn success_probability(g: &LinearGame, b: &BoxTable) -> Result<f64> {
    if b.input_sizes() != g.input_sizes() || b.output_size() != g.group().size() {
        return Err(Error::arg("box shape does not match the game"));
    }
    let na = b.num_output_tuples();
    let sums = output_sums(g.group(), g.players());
    let mut total = 0.0;
    for x in 0..g.num_inputs() {
        let p = g.dist()[x];
        if p == 0.0 {
            continue;
        }
        let target = g.f()[x];
        let win: f64 = (0..na)
            .filter(|&a| sums[a] == target)
            .map(|a| b.table[x * na + a])
            .sum();
        total += p * win;
    }
    Ok(total)
}

/// Checks that for every proper subset S of players, the marginal on S does
/// not depend on the inputs of the complement. Reports the worst deviation.
pub fn validate_no_signaling(b: &BoxTable) -> NoSignalingCheck {
    let n = b.players();
    let q = b.outputs;
    let na = b.num_output_tuples();
    let nx: usize = b.inputs.iter().product();
    let mut worst = 0.0f64;
    // `traced` is the set of players summed out (the complement of S).
    for traced in 1..(1usize << n) - 1 {
        let kept: Vec<usize> = (0..n).filter(|i| traced >> i & 1 == 0).collect();
        let kept_outputs = q.pow(kept.len() as u32);
        let marginal = |x: usize| -> Vec<f64> {
            let mut m = vec![0.0; kept_outputs];
            for a in 0..na {
                let (mut rest, mut key, mut stride) = (a, 0, 1);
                for i in 0..n {
                    let ai = rest % q;
                    rest /= q;
                    if traced >> i & 1 == 0 {
                        key += ai * stride;
                        stride *= q;
                    }
                }
                m[key] += b.table[x * na + a];
            }
            m
        };
        let mut reference: std::collections::HashMap<usize, Vec<f64>> = Default::default();
        for x in 0..nx {
            // Key: the inputs of the kept players.
            let (mut rest, mut key, mut stride) = (x, 0, 1);
            for (i, &m) in b.inputs.iter().enumerate() {
                let xi = rest % m;
                rest /= m;
                if traced >> i & 1 == 0 {
                    key += xi * stride;
                    stride *= m;
                }
            }
            let mx = marginal(x);
            match reference.get(&key) {
                None => {
                    reference.insert(key, mx);
                }
                Some(r) => {
                    for (u, v) in r.iter().zip(&mx) {
                        worst = worst.max((u - v).abs());
                    }
                }
            }
        }
    }
    NoSignalingCheck {
        no_signaling: worst <= BOX_TOL,
        max_violation: worst,
    }
}
