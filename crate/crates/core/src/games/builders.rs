use super::game::{GroupSpec, LinearGame};
use crate::algebra::{is_prime, FiniteField};
use crate::error::{Error, Result};

/// Input distribution for games built from sign or weight tables.
#[derive(Debug, Clone, PartialEq)]
pub enum InputDistribution {
    Uniform,
    /// Row-major `p[x][y]`.
    Table(Vec<Vec<f64>>),
}

fn field_for(d: usize) -> Result<FiniteField> {
    FiniteField::of_order(d)
}

/// CHSH-d: two players, inputs in F_d, win iff `a + b = x * y`.
pub fn build_chsh_d(d: usize) -> Result<LinearGame> {
    build_chshn_d(2, d)
}

/// CHSH_n-d: n players, inputs in F_d, win iff `sum a_i = sum_{i<j} x_i x_j`.
pub fn build_chshn_d(n: usize, d: usize) -> Result<LinearGame> {
    if n < 2 {
        return Err(Error::arg("CHSH_n-d needs at least two players"));
    }
    let field = field_for(d)?;
    let mul = field.mul_table()?;
    let total = d
        .checked_pow(n as u32)
        .filter(|&t| t <= 50_000_000)
        .ok_or_else(|| Error::resource(format!("{d}^{n} inputs is too many")))?;
    let mut f = Vec::with_capacity(total);
    let mut x = vec![0usize; n];
    for flat in 0..total {
        let mut rest = flat;
        for xi in x.iter_mut() {
            *xi = rest % d;
            rest /= d;
        }
        let mut acc = 0;
        for i in 0..n {
            for j in i + 1..n {
                acc = field.add_index(acc, mul[x[i]][x[j]]);
            }
        }
        f.push(acc);
    }
    LinearGame::new(
        vec![d; n],
        GroupSpec::Field {
            p: field.characteristic(),
            r: field.degree(),
        },
        vec![1.0 / total as f64; total],
        f,
    )
}

/// The two-player NLC_d game.
///
/// Each player receives n dits; write `x = (x', x_n)` with `x'` the first
/// `n-1` dits. The players win iff `a + b = h(x' + y') * (x_n + y_n) mod d`,
/// and the pair is drawn with probability `ptilde(x' + y') / d^(n+1)`.
/// `h` and `ptilde` are tables over F_d^(n-1) in little-endian order; for
/// `n = 1` both have one entry and `h` is the constant `t` of `a + b = t (x + y)`.
pub fn build_nlc_d(d: usize, n: usize, h: &[usize], ptilde: &[f64]) -> Result<LinearGame> {
    if !is_prime(d) {
        return Err(Error::arg(format!("NLC_d needs prime d, got {d}")));
    }
    if n == 0 {
        return Err(Error::arg("NLC_d needs n >= 1"));
    }
    let inner = d.pow((n - 1) as u32);
    if h.len() != inner || ptilde.len() != inner {
        return Err(Error::arg(format!(
            "h and ptilde need {inner} entries, got {} and {}",
            h.len(),
            ptilde.len()
        )));
    }
    if h.iter().any(|&v| v >= d) {
        return Err(Error::arg("h values must lie in F_d"));
    }
    if ptilde.iter().any(|p| !p.is_finite() || *p < 0.0) || (ptilde.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(Error::arg("ptilde must be a probability distribution"));
    }
    let m = inner * d;
    let scale = 1.0 / (d.pow((n + 1) as u32)) as f64;
    let add_vec = |u: usize, v: usize| -> usize {
        // Dit-wise sum mod d of two little-endian words of length n - 1.
        let (mut u, mut v, mut out, mut stride) = (u, v, 0, 1);
        for _ in 0..n - 1 {
            out += ((u % d + v % d) % d) * stride;
            u /= d;
            v /= d;
            stride *= d;
        }
        out
    };
    let mut dist = vec![0.0; m * m];
    let mut f = vec![0; m * m];
    for y in 0..m {
        for x in 0..m {
            let (xp, xn) = (x % inner, x / inner);
            let (yp, yn) = (y % inner, y / inner);
            let s = add_vec(xp, yp);
            dist[x + m * y] = ptilde[s] * scale;
            f[x + m * y] = h[s] * ((xn + yn) % d) % d;
        }
    }
    LinearGame::new(vec![m, m], GroupSpec::Cyclic(vec![d]), dist, f)
}

/// The Mermin game over Z_3: inputs with `x + y + z = 0 mod 3` each have
/// probability 1/9, and the players win iff `a + b + c = x y z mod 3`.
pub fn build_mermin3() -> Result<LinearGame> {
    let mut dist = vec![0.0; 27];
    let mut f = vec![0; 27];
    for z in 0..3 {
        for y in 0..3 {
            for x in 0..3 {
                let flat = x + 3 * y + 9 * z;
                if (x + y + z) % 3 == 0 {
                    dist[flat] = 1.0 / 9.0;
                }
                f[flat] = x * y * z % 3;
            }
        }
    }
    LinearGame::new(vec![3, 3, 3], GroupSpec::Cyclic(vec![3]), dist, f)
}

fn check_rect<T>(rows: &[Vec<T>]) -> Result<(usize, usize)> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
        return Err(Error::arg("expected a nonempty rectangular table"));
    }
    Ok((r, c))
}

/// XOR game with `(-1)^f(x,y) = signs[x][y]`.
pub fn build_xor_from_signs(signs: &[Vec<i32>], dist: &InputDistribution) -> Result<LinearGame> {
    let (ma, mb) = check_rect(signs)?;
    if signs.iter().flatten().any(|&s| s != 1 && s != -1) {
        return Err(Error::arg("sign matrix entries must be +1 or -1"));
    }
    let p: Vec<Vec<f64>> = match dist {
        InputDistribution::Uniform => vec![vec![1.0 / (ma * mb) as f64; mb]; ma],
        InputDistribution::Table(t) => {
            if check_rect(t)? != (ma, mb) {
                return Err(Error::arg("distribution shape differs from the sign matrix"));
            }
            t.clone()
        }
    };
    let mut flat_p = vec![0.0; ma * mb];
    let mut f = vec![0; ma * mb];
    for x in 0..ma {
        for y in 0..mb {
            flat_p[x + ma * y] = p[x][y];
            f[x + ma * y] = usize::from(signs[x][y] == -1);
        }
    }
    LinearGame::new(vec![ma, mb], GroupSpec::Cyclic(vec![2]), flat_p, f)
}

/// XOR game from its real game matrix `Phi[x][y] = p(x,y) (-1)^f(x,y)`.
/// Zero entries get weight 0 and target 0.
pub fn build_xor_from_matrix(phi: &[Vec<f64>]) -> Result<LinearGame> {
    check_rect(phi)?;
    let signs: Vec<Vec<i32>> = phi
        .iter()
        .map(|row| row.iter().map(|&v| if v < 0.0 { -1 } else { 1 }).collect())
        .collect();
    let weights: Vec<Vec<f64>> = phi
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).collect())
        .collect();
    build_xor_from_signs(&signs, &InputDistribution::Table(weights))
}

/// Sum of two XOR games: inputs are pairs, probabilities multiply and the
/// target is `f1 xor f2`. Composite inputs are `x1 * m2 + x2`, so the game
/// matrix of the sum is the Kronecker product of the factors' matrices.
pub fn game_sum(g1: &LinearGame, g2: &LinearGame) -> Result<LinearGame> {
    if !g1.is_xor() || !g2.is_xor() {
        return Err(Error::arg("game sum is defined for two-player XOR games"));
    }
    let (a1, b1) = (g1.input_sizes()[0], g1.input_sizes()[1]);
    let (a2, b2) = (g2.input_sizes()[0], g2.input_sizes()[1]);
    let (ma, mb) = (a1 * a2, b1 * b2);
    let mut dist = vec![0.0; ma * mb];
    let mut f = vec![0; ma * mb];
    for x1 in 0..a1 {
        for x2 in 0..a2 {
            for y1 in 0..b1 {
                for y2 in 0..b2 {
                    let i1 = x1 + a1 * y1;
                    let i2 = x2 + a2 * y2;
                    let x = x1 * a2 + x2;
                    let y = y1 * b2 + y2;
                    dist[x + ma * y] = g1.dist()[i1] * g2.dist()[i2];
                    f[x + ma * y] = g1.f()[i1] ^ g2.f()[i2];
                }
            }
        }
    }
    LinearGame::new(vec![ma, mb], GroupSpec::Cyclic(vec![2]), dist, f)
}
