use super::game::{LinearGame, Partition};
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

/// Game matrices `Phi_k^S` for every nontrivial character `k`.
///
/// Entry `(x_S, x_{S^c})` is `p(x) chi_k(f(x))`. Rows enumerate the inputs of
/// the players in S, columns those of the complement; both are mixed-radix
/// little-endian over the players in ascending order.
#[derive(Debug, Clone)]
pub struct GameMatrixSet {
    pub partition: Partition,
    /// `(k, Phi_k^S)` for k = 1..|G|-1 as flat character indices.
    pub matrices: Vec<(usize, ComplexMatrix)>,
}

/// Row and column index of every flat input under a partition.
pub fn partition_codec(g: &LinearGame, s: &Partition) -> (usize, usize, Vec<(usize, usize)>) {
    let members = s.members();
    let comp = s.complement_members();
    let sizes = g.input_sizes();
    let rows: usize = members.iter().map(|&i| sizes[i]).product();
    let cols: usize = comp.iter().map(|&i| sizes[i]).product();
    let encode = |tuple: &[usize], players: &[usize]| {
        players
            .iter()
            .rev()
            .fold(0, |acc, &i| acc * sizes[i] + tuple[i])
    };
    let map = (0..g.num_inputs())
        .map(|flat| {
            let t = g.input_tuple(flat);
            (encode(&t, members), encode(&t, &comp))
        })
        .collect();
    (rows, cols, map)
}

/// The matrix for one character index `k`.
pub fn game_matrix(g: &LinearGame, s: &Partition, k: usize) -> Result<ComplexMatrix> {
    if s.players() != g.players() {
        return Err(Error::arg("partition is for a different number of players"));
    }
    if k >= g.group().size() {
        return Err(Error::arg(format!("character index {k} out of range")));
    }
    let (rows, cols, map) = partition_codec(g, s);
    let mut m = ComplexMatrix::zeros(rows, cols);
    for (flat, &(r, c)) in map.iter().enumerate() {
        let p = g.dist()[flat];
        if p != 0.0 {
            m[(r, c)] = g.group().character_at(k, g.f()[flat]) * p;
        }
    }
    Ok(m)
}

pub fn game_matrices(g: &LinearGame, s: &Partition) -> Result<GameMatrixSet> {
    let matrices = (1..g.group().size())
        .map(|k| Ok((k, game_matrix(g, s, k)?)))
        .collect::<Result<_>>()?;
    Ok(GameMatrixSet {
        partition: s.clone(),
        matrices,
    })
}

/// The real matrix `Phi[x][y] = p(x,y) (-1)^f(x,y)` of a two-player XOR game.
pub fn xor_matrix(g: &LinearGame) -> Result<ComplexMatrix> {
    if !g.is_xor() {
        return Err(Error::arg("not a two-player XOR game"));
    }
    game_matrix(g, &Partition::singleton(2, 0)?, 1)
}

#[cfg(test)]
mod tests {
    use super::super::builders::*;
    use super::*;
    use crate::numerics::spectral_norm;
    use num_complex::Complex64;

    fn unit_phase(z: Complex64) -> bool {
        (z.norm() - 1.0).abs() < 1e-12
    }

    #[test]
    fn chsh_matrix() {
        let g = build_chsh_d(2).unwrap();
        let phi = xor_matrix(&g).unwrap();
        let expect = ComplexMatrix::from_real(2, 2, &[0.25, 0.25, 0.25, -0.25]).unwrap();
        assert_eq!(phi, expect);
    }

    #[test]
    fn chsh3_norms() {
        let g = build_chsh_d(3).unwrap();
        let set = game_matrices(&g, &Partition::singleton(2, 0).unwrap()).unwrap();
        assert_eq!(set.matrices.len(), 2);
        for (_, m) in &set.matrices {
            let n = spectral_norm(m).unwrap();
            assert!((n - 1.0 / (3.0 * 3f64.sqrt())).abs() < 1e-12);
        }
    }

    #[test]
    fn mermin_cut_shape() {
        let g = build_mermin3().unwrap();
        let m = game_matrix(&g, &Partition::singleton(3, 0).unwrap(), 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 9));
        // Direct assembly: column c = y + 3z, nonzero iff x + y + z = 0 mod 3.
        for x in 0..3 {
            for c in 0..9 {
                let (y, z) = (c % 3, c / 3);
                if (x + y + z) % 3 == 0 {
                    let phase = g.group().character_at(1, x * y * z % 3);
                    assert!((m[(x, c)] - phase / 9.0).norm() < 1e-15);
                } else {
                    assert_eq!(m[(x, c)], Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn nlc_block_structure() {
        // d = 3, n = 2, h(z) = z: block (x', y') of Phi_k is the building block
        // g(t) matrix for t = h(x' + y'), scaled by ptilde / d.
        let d = 3;
        let g = build_nlc_d(d, 2, &[0, 1, 2], &[1.0 / 3.0; 3]).unwrap();
        for k in 1..d {
            let phi = game_matrix(&g, &Partition::singleton(2, 0).unwrap(), k).unwrap();
            for xp in 0..d {
                for yp in 0..d {
                    let t = (xp + yp) % d;
                    let block = build_nlc_d(d, 1, &[t], &[1.0]).unwrap();
                    let b = game_matrix(&block, &Partition::singleton(2, 0).unwrap(), k).unwrap();
                    for xn in 0..d {
                        for yn in 0..d {
                            let big = phi[(xp + d * xn, yp + d * yn)];
                            let small = b[(xn, yn)] * (1.0 / 3.0) / d as f64;
                            assert!((big - small).norm() < 1e-15);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn complement_is_transpose() {
        let g = build_chshn_d(3, 3).unwrap();
        for s in Partition::all_containing_first(3) {
            for k in 1..3 {
                let a = game_matrix(&g, &s, k).unwrap();
                let b = game_matrix(&g, &s.complement(), k).unwrap();
                assert_eq!(a.transpose(), b);
            }
        }
    }

    #[test]
    fn entries_have_probability_magnitude() {
        let g = build_mermin3().unwrap();
        let s = Partition::new(3, &[0, 2]).unwrap();
        let (_, _, map) = partition_codec(&g, &s);
        let m = game_matrix(&g, &s, 2).unwrap();
        for (flat, (r, c)) in map.into_iter().enumerate() {
            let p = g.dist()[flat];
            assert!((m[(r, c)].norm() - p).abs() < 1e-15);
            if p > 0.0 {
                assert!(unit_phase(m[(r, c)] / p));
            }
        }
    }
}
