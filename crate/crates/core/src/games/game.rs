use crate::algebra::{AbelianGroup, FiniteField};
use crate::error::{Error, Result};

/// Distributions whose total mass is this close to 1 are renormalized.
pub const RENORMALIZE_TOL: f64 = 1e-9;

/// How the output group was specified. A field spec means the additive group
/// Z_p^r; the multiplication is only used by builders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(Vec<usize>),
    Field { p: usize, r: usize },
}

impl GroupSpec {
    pub fn build(&self) -> Result<AbelianGroup> {
        match self {
            GroupSpec::Cyclic(orders) => AbelianGroup::new(orders.clone()),
            GroupSpec::Field { p, r } => {
                let f = FiniteField::make(*p, *r)?;
                AbelianGroup::new(vec![f.characteristic(); f.degree()])
            }
        }
    }
}

/// A linear game: players win when their outputs sum to `f(x)` in the group.
///
/// Input tuples are flattened little-endian: player 0 is the least
/// significant digit, so `flat = x_0 + m_0 * (x_1 + m_1 * (...))`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearGame {
    inputs: Vec<usize>,
    group_spec: GroupSpec,
    group: AbelianGroup,
    dist: Vec<f64>,
    f: Vec<usize>,
}

impl LinearGame {
    /// Validates and builds a game. A distribution summing to within
    /// [`RENORMALIZE_TOL`] of 1 is rescaled; anything further off is rejected.
    pub fn new(inputs: Vec<usize>, group_spec: GroupSpec, dist: Vec<f64>, f: Vec<usize>) -> Result<Self> {
        if inputs.len() < 2 {
            return Err(Error::validation("a game needs at least two players"));
        }
        if inputs.iter().any(|&m| m == 0) {
            return Err(Error::validation("every player needs at least one input"));
        }
        let group = group_spec.build()?;
        let total = inputs
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| Error::resource("input space overflows"))?;
        if dist.len() != total {
            return Err(Error::validation(format!(
                "distribution has {} entries, expected {total}",
                dist.len()
            )));
        }
        if f.len() != total {
            return Err(Error::validation(format!(
                "winning table has {} entries, expected {total}",
                f.len()
            )));
        }
        if let Some(p) = dist.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::validation(format!("invalid probability {p}")));
        }
        let sum: f64 = dist.iter().sum();
        if (sum - 1.0).abs() > RENORMALIZE_TOL {
            return Err(Error::validation(format!(
                "distribution sums to {sum}, not 1"
            )));
        }
        // Sums already within 1e-12 are kept as is so that reloading is idempotent.
        let dist = if (sum - 1.0).abs() <= 1e-12 {
            dist
        } else {
            dist.into_iter().map(|p| p / sum).collect()
        };
        if let Some(v) = f.iter().find(|&&v| v >= group.size()) {
            return Err(Error::validation(format!(
                "winning value {v} is not an element of a group of order {}",
                group.size()
            )));
        }
        Ok(Self {
            inputs,
            group_spec,
            group,
            dist,
            f,
        })
    }

    pub fn players(&self) -> usize {
        self.inputs.len()
    }

    pub fn input_sizes(&self) -> &[usize] {
        &self.inputs
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn group_spec(&self) -> &GroupSpec {
        &self.group_spec
    }

    pub fn dist(&self) -> &[f64] {
        &self.dist
    }

    /// Winning targets as flat group-element indices.
    pub fn f(&self) -> &[usize] {
        &self.f
    }

    pub fn num_inputs(&self) -> usize {
        self.dist.len()
    }

    pub fn input_tuple(&self, flat: usize) -> Vec<usize> {
        let mut rest = flat;
        self.inputs
            .iter()
            .map(|&m| {
                let x = rest % m;
                rest /= m;
                x
            })
            .collect()
    }

    pub fn flat_input(&self, tuple: &[usize]) -> usize {
        tuple
            .iter()
            .zip(&self.inputs)
            .rev()
            .fold(0, |acc, (&x, &m)| acc * m + x)
    }

    /// Two players and output group Z_2.
    pub fn is_xor(&self) -> bool {
        self.players() == 2 && self.group.orders() == [2]
    }

    /// True when every input tuple has the same probability (within 1e-12).
    pub fn is_uniform(&self) -> bool {
        let u = 1.0 / self.num_inputs() as f64;
        self.dist.iter().all(|p| (p - u).abs() <= 1e-12)
    }
}

/// A proper nonempty subset S of the players (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    players: usize,
    members: Vec<usize>,
}

impl Partition {
    pub fn new(players: usize, members: &[usize]) -> Result<Self> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.len() != members.len() {
            return Err(Error::arg("partition lists a player twice"));
        }
        if m.iter().any(|&i| i >= players) {
            return Err(Error::arg(format!("partition names a player outside 0..{players}")));
        }
        if m.is_empty() || m.len() >= players {
            return Err(Error::arg("partition must be a proper nonempty subset"));
        }
        Ok(Self { players, members: m })
    }

    pub fn singleton(players: usize, i: usize) -> Result<Self> {
        Self::new(players, &[i])
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn complement_members(&self) -> Vec<usize> {
        (0..self.players)
            .filter(|i| !self.members.contains(i))
            .collect()
    }

    pub fn complement(&self) -> Self {
        Self {
            players: self.players,
            members: self.complement_members(),
        }
    }

    /// All partitions containing player 0, in increasing bitmask order.
    /// S and its complement give transposed matrices, so this covers every cut.
    pub fn all_containing_first(players: usize) -> Vec<Self> {
        (0..1usize << (players - 1))
            .map(|mask| {
                let members: Vec<usize> = std::iter::once(0)
                    .chain((1..players).filter(|i| mask >> (i - 1) & 1 == 1))
                    .collect();
                Self {
                    players,
                    members,
                }
            })
            .filter(|p| p.members.len() < players)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> GroupSpec {
        GroupSpec::Cyclic(vec![2])
    }

    #[test]
    fn codec_is_little_endian() {
        let g = LinearGame::new(vec![2, 3], z2(), vec![1.0 / 6.0; 6], vec![0; 6]).unwrap();
        assert_eq!(g.input_tuple(1), vec![1, 0]);
        assert_eq!(g.input_tuple(2), vec![0, 1]);
        assert_eq!(g.flat_input(&[1, 2]), 5);
    }

    #[test]
    fn validation() {
        assert!(LinearGame::new(vec![2], z2(), vec![0.5, 0.5], vec![0, 0]).is_err());
        let half = vec![0.125; 4];
        assert!(matches!(
            LinearGame::new(vec![2, 2], z2(), half, vec![0; 4]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            LinearGame::new(vec![2, 2], z2(), vec![0.25; 4], vec![0, 0, 2, 0]),
            Err(Error::Validation(_))
        ));
        let near = vec![0.25 + 1e-11, 0.25, 0.25, 0.25];
        let g = LinearGame::new(vec![2, 2], z2(), near, vec![0; 4]).unwrap();
        assert!((g.dist().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn partitions() {
        assert!(Partition::new(3, &[0, 1, 2]).is_err());
        assert!(Partition::new(3, &[]).is_err());
        assert!(Partition::new(3, &[3]).is_err());
        let p = Partition::new(3, &[2, 0]).unwrap();
        assert_eq!(p.members(), &[0, 2]);
        assert_eq!(p.complement().members(), &[1]);
        let all = Partition::all_containing_first(3);
        let sets: Vec<_> = all.iter().map(|p| p.members().to_vec()).collect();
        assert_eq!(sets, vec![vec![0], vec![0, 1], vec![0, 2]]);
        assert_eq!(Partition::all_containing_first(4).len(), 7);
    }
}
