//! Distributed evaluation of a function over F_d with PR_n-d boxes.
//!
//! Any `f: F_d^n -> F_d` is a polynomial `sum_alpha mu_alpha prod_i x_i^alpha_i`
//! with exponents below d. For each nonconstant monomial the players feed
//! `x_i^alpha_i` into an n-party box whose outputs are uniformly random subject
//! to `sum_i a_i = prod_i q_i`. Each player adds up its weighted outputs
//! locally, players 2..n send that single dit to player 1, and player 1 adds
//! everything to the constant term.

use crate::algebra::is_prime;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Result of [`cc_protocol_simulate`].
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CcOutcome {
    /// True iff player 1 reconstructed `f(x)` on every trial and input.
    pub success: bool,
    /// Dits sent per evaluation (the maximum over all runs).
    pub dits_per_evaluation: usize,
    /// Number of boxes used per evaluation (nonzero nonconstant monomials).
    pub boxes: usize,
    pub evaluations: usize,
}

fn pow_mod(b: usize, e: usize, p: usize) -> usize {
    // 0^0 = 1 by convention, matching the monomial basis.
    let mut r = 1 % p;
    for _ in 0..e {
        r = r * b % p;
    }
    r
}

fn inv_mod(a: usize, p: usize) -> Result<usize> {
    (1..p)
        .find(|&b| a * b % p == 1)
        .ok_or(Error::DivisionByZero)
}

/// Inverse of the Vandermonde matrix `V[t][j] = t^j` over Z_p.
fn vandermonde_inverse(p: usize) -> Result<Vec<Vec<usize>>> {
    let mut a: Vec<Vec<usize>> = (0..p)
        .map(|t| {
            let mut row: Vec<usize> = (0..p).map(|j| pow_mod(t, j, p)).collect();
            row.extend((0..p).map(|j| usize::from(j == t)));
            row
        })
        .collect();
    for col in 0..p {
        let piv = (col..p)
            .find(|&r| a[r][col] != 0)
            .ok_or_else(|| Error::Internal("singular Vandermonde matrix".into()))?;
        a.swap(col, piv);
        let inv = inv_mod(a[col][col], p)?;
        for v in a[col].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..p {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..2 * p {
                    a[r][c] = (a[r][c] + (p - f) * a[col][c]) % p;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[p..].to_vec()).collect())
}

/// Monomial coefficients of `f` given as a dense table over F_d^n
/// (little-endian inputs). Output is indexed by the exponent vector in the
/// same little-endian layout.
pub fn monomial_coefficients(d: usize, n: usize, f: &[usize]) -> Result<Vec<usize>> {
    if !is_prime(d) {
        return Err(Error::arg(format!("{d} is not prime")));
    }
    let total = d.pow(n as u32);
    if f.len() != total {
        return Err(Error::arg(format!("table needs {total} entries")));
    }
    if f.iter().any(|&v| v >= d) {
        return Err(Error::arg("table values must lie in F_d"));
    }
    let vinv = vandermonde_inverse(d)?;
    let mut c = f.to_vec();
    // Interpolate one axis at a time.
    let mut stride = 1;
    for _ in 0..n {
        let mut next = c.clone();
        for base in 0..total {
            if (base / stride) % d != 0 {
                continue;
            }
            for j in 0..d {
                let mut acc = 0;
                for t in 0..d {
                    acc = (acc + vinv[j][t] * c[base + t * stride]) % d;
                }
                next[base + j * stride] = acc;
            }
        }
        c = next;
        stride *= d;
    }
    Ok(c)
}

/// Evaluates a monomial expansion at `x`.
pub fn evaluate_monomials(d: usize, n: usize, mu: &[usize], x: &[usize]) -> usize {
    mu.iter().enumerate().fold(0, |acc, (alpha, &m)| {
        if m == 0 {
            return acc;
        }
        let mut rest = alpha;
        let mut term = m;
        for xi in x.iter().take(n) {
            term = term * pow_mod(*xi, rest % d, d) % d;
            rest /= d;
        }
        (acc + term) % d
    })
}

/// Runs the box-assisted protocol on every input for `trials` seeded rounds.
pub fn cc_protocol_simulate(d: usize, n: usize, f: &[usize], trials: usize, seed: u64) -> Result<CcOutcome> {
    if n < 2 {
        return Err(Error::arg("the protocol needs at least two parties"));
    }
    let mu = monomial_coefficients(d, n, f)?;
    let total = f.len();
    for x in 0..total {
        let tuple = decode(x, d, n);
        if evaluate_monomials(d, n, &mu, &tuple) != f[x] {
            return Err(Error::Internal("monomial expansion does not reproduce f".into()));
        }
    }
    let monomials: Vec<(Vec<usize>, usize)> = mu
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &m)| m != 0)
        .map(|(alpha, &m)| (decode(alpha, d, n), m))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut success = true;
    let mut max_dits = 0;
    let mut evaluations = 0;
    for _ in 0..trials {
        for x in 0..total {
            let tuple = decode(x, d, n);
            let mut shares = vec![0usize; n];
            for (alpha, m) in &monomials {
                let q: Vec<usize> = tuple
                    .iter()
                    .zip(alpha)
                    .map(|(&xi, &ai)| pow_mod(xi, ai, d))
                    .collect();
                let outs = pr_box(&q, d, &mut rng);
                for (s, a) in shares.iter_mut().zip(outs) {
                    *s = (*s + m * a) % d;
                }
            }
            // Players 2..n each send their share to player 1.
            let messages: Vec<usize> = shares[1..].to_vec();
            max_dits = max_dits.max(messages.len());
            let value = messages
                .iter()
                .fold((mu[0] + shares[0]) % d, |acc, s| (acc + s) % d);
            success &= value == f[x];
            evaluations += 1;
        }
    }
    Ok(CcOutcome {
        success,
        dits_per_evaluation: max_dits,
        boxes: monomials.len(),
        evaluations,
    })
}

/// PR_n-d box: outputs uniform over tuples with `sum a_i = prod q_i mod d`.
fn pr_box(q: &[usize], d: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = q.len();
    let target = q.iter().fold(1, |acc, &v| acc * v % d);
    let mut out: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(0..d)).collect();
    let partial = out.iter().sum::<usize>() % d;
    out.push((target + d - partial) % d);
    out
}

fn decode(mut idx: usize, d: usize, n: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let v = idx % d;
            idx /= d;
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xyz_over_f3() {
        let f: Vec<usize> = (0..27).map(|i| (i % 3) * (i / 3 % 3) * (i / 9) % 3).collect();
        let out = cc_protocol_simulate(3, 3, &f, 100, 11).unwrap();
        assert!(out.success);
        assert_eq!(out.dits_per_evaluation, 2);
        assert_eq!(out.boxes, 1);
        assert_eq!(out.evaluations, 2700);
    }

    #[test]
    fn constant_function_needs_no_boxes() {
        let f = vec![2; 9];
        let out = cc_protocol_simulate(3, 2, &f, 10, 0).unwrap();
        assert!(out.success);
        assert_eq!(out.boxes, 0);
    }

    #[test]
    fn random_function_over_f5() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f: Vec<usize> = (0..25).map(|_| rng.gen_range(0..5)).collect();
        // Brute-force oracle: solve for all 25 coefficients by checking the
        // expansion reproduces f at every point.
        let mu = monomial_coefficients(5, 2, &f).unwrap();
        for x in 0..5usize {
            for y in 0..5usize {
                let mut v = 0;
                for a in 0..5u32 {
                    for b in 0..5u32 {
                        let m = mu[a as usize + 5 * b as usize];
                        let xa = if a == 0 { 1 } else { x.pow(a) % 5 };
                        let yb = if b == 0 { 1 } else { y.pow(b) % 5 };
                        v = (v + m * xa * yb) % 5;
                    }
                }
                assert_eq!(v, f[x + 5 * y]);
            }
        }
        assert!(cc_protocol_simulate(5, 2, &f, 20, 9).unwrap().success);
    }

    #[test]
    fn errors() {
        assert!(matches!(cc_protocol_simulate(4, 2, &[0; 16], 1, 0), Err(Error::Argument(_))));
        assert!(cc_protocol_simulate(3, 2, &[0; 8], 1, 0).is_err());
        assert!(cc_protocol_simulate(3, 1, &[0; 3], 1, 0).is_err());
    }
}
