use super::classical::DeterministicStrategy;
use crate::error::{Error, Result};
use crate::games::{game_matrix, LinearGame, Partition};
use crate::numerics::spectral_norm;

/// Relative slack when comparing norms with their maximum.
const TRIVIAL_TOL: f64 = 1e-8;

/// Decides whether a uniformly distributed linear game can be won with
/// certainty, and if so returns a perfect classical strategy.
///
/// Perfect play is possible iff every `Phi_k^{i}` reaches the maximum norm
/// `1/sqrt(M)` (M = number of input tuples). In that case each matrix is
/// rank one and the ratio of rows `x_i` and `0` is the phase
/// `chi_k(c_i(x_i))`; reading off `c_i` for every player and shifting the
/// last one by `f(0)` gives the strategy, which is then verified directly.
pub fn triviality_check(g: &LinearGame) -> Result<Option<DeterministicStrategy>> {
    if !g.is_uniform() {
        return Err(Error::Precondition(
            "triviality check requires uniformly distributed inputs".into(),
        ));
    }
    let n = g.players();
    let grp = g.group();
    let q = grp.size();
    let threshold = (1.0 - TRIVIAL_TOL) / (g.num_inputs() as f64).sqrt();
    let mut outputs = Vec::with_capacity(n);
    for i in 0..n {
        let s = Partition::singleton(n, i)?;
        let mats = (1..q)
            .map(|k| game_matrix(g, &s, k))
            .collect::<Result<Vec<_>>>()?;
        for m in &mats {
            if spectral_norm(m)? < threshold {
                return Ok(None);
            }
        }
        // Row x_i of Phi_k^{i} is chi_k(c_i(x_i)) times row 0.
        let mut answers = Vec::with_capacity(g.input_sizes()[i]);
        for x in 0..g.input_sizes()[i] {
            let phases: Vec<_> = mats.iter().map(|m| m[(x, 0)] / m[(0, 0)]).collect();
            let c = (0..q).find(|&c| {
                phases
                    .iter()
                    .zip(1..q)
                    .all(|(ph, k)| (grp.character_at(k, c) - ph).norm() < 1e-6)
            });
            match c {
                Some(c) => answers.push(c),
                None => return Ok(None),
            }
        }
        outputs.push(answers);
    }
    let f0 = g.f()[0];
    for a in outputs[n - 1].iter_mut() {
        *a = grp.add_index(*a, f0);
    }
    let wins = (0..g.num_inputs()).all(|x| {
        let t = g.input_tuple(x);
        let s = t
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &xi)| grp.add_index(acc, outputs[i][xi]));
        s == g.f()[x]
    });
    Ok(wins.then_some(DeterministicStrategy { outputs }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::*;

    fn sum_game(n: usize, d: usize, offset: usize) -> LinearGame {
        let total = d.pow(n as u32);
        let f: Vec<usize> = (0..total)
            .map(|x| {
                let mut rest = x;
                let mut s = offset;
                for _ in 0..n {
                    s += rest % d;
                    rest /= d;
                }
                s % d
            })
            .collect();
        LinearGame::new(vec![d; n], GroupSpec::Cyclic(vec![d]), vec![1.0 / total as f64; total], f).unwrap()
    }

    fn wins_always(g: &LinearGame, s: &DeterministicStrategy) -> bool {
        let b = BoxTable::deterministic(g.input_sizes(), g.group().size(), &s.outputs).unwrap();
        (success_probability(g, &b).unwrap() - 1.0).abs() < 1e-12
    }

    #[test]
    fn separable_two_player() {
        let g = sum_game(2, 3, 0);
        let s = triviality_check(&g).unwrap().unwrap();
        assert_eq!(s.outputs, vec![vec![0, 1, 2], vec![0, 1, 2]]);
    }

    #[test]
    fn separable_three_player_with_offset() {
        let g = sum_game(3, 3, 2);
        let s = triviality_check(&g).unwrap().unwrap();
        assert!(wins_always(&g, &s));
    }

    #[test]
    fn chsh3_is_not_trivial() {
        assert!(triviality_check(&build_chsh_d(3).unwrap()).unwrap().is_none());
        assert!(triviality_check(&build_chsh_d(2).unwrap()).unwrap().is_none());
    }

    #[test]
    fn product_group() {
        // Z_2 x Z_3 with f = (x mod 2, y mod 3) componentwise sums.
        let grp = crate::algebra::AbelianGroup::new(vec![2, 3]).unwrap();
        let f: Vec<usize> = (0..36)
            .map(|idx| {
                let (x, y) = (idx % 6, idx / 6);
                grp.add_index(x, y)
            })
            .collect();
        let g = LinearGame::new(vec![6, 6], GroupSpec::Cyclic(vec![2, 3]), vec![1.0 / 36.0; 36], f).unwrap();
        let s = triviality_check(&g).unwrap().unwrap();
        assert!(wins_always(&g, &s));
    }

    #[test]
    fn non_uniform_rejected() {
        let g = build_mermin3().unwrap();
        assert!(matches!(triviality_check(&g), Err(Error::Precondition(_))));
    }
}
