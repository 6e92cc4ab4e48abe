use crate::algebra::AbelianGroup;
use crate::error::{Error, Result};
use crate::numerics::{lambda_min, vec_norm, ComplexMatrix};
use num_complex::Complex64;

/// Local POVMs: `effects[i][x][a]` is player i's effect for input x and
/// outcome a (a flat group-element index).
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementFamily {
    dims: Vec<usize>,
    outputs: usize,
    effects: Vec<Vec<Vec<ComplexMatrix>>>,
}

impl MeasurementFamily {
    /// Checks every effect is PSD (smallest eigenvalue at least -1e-9) and
    /// that the effects of each input sum to the identity within 1e-9.
    pub fn new(dims: Vec<usize>, effects: Vec<Vec<Vec<ComplexMatrix>>>) -> Result<Self> {
        if dims.len() != effects.len() || dims.is_empty() {
            return Err(Error::validation("need one effect list per player"));
        }
        let outputs = effects
            .first()
            .and_then(|p| p.first())
            .map_or(0, Vec::len);
        if outputs == 0 {
            return Err(Error::validation("measurements need at least one outcome"));
        }
        for (i, (player, &d)) in effects.iter().zip(&dims).enumerate() {
            if player.is_empty() {
                return Err(Error::validation(format!("player {i} has no inputs")));
            }
            for (x, povm) in player.iter().enumerate() {
                if povm.len() != outputs {
                    return Err(Error::validation(format!(
                        "player {i} input {x} has {} outcomes, expected {outputs}",
                        povm.len()
                    )));
                }
                let mut total = ComplexMatrix::zeros(d, d);
                for (a, e) in povm.iter().enumerate() {
                    if e.rows() != d || e.cols() != d {
                        return Err(Error::validation(format!("effect ({i}, {x}, {a}) is not {d}x{d}")));
                    }
                    if !e.is_finite() || !e.is_hermitian(1e-9) {
                        return Err(Error::validation(format!("effect ({i}, {x}, {a}) is not Hermitian")));
                    }
                    let low = lambda_min(&e.hermitian_part())?;
                    if low < -1e-9 {
                        return Err(Error::validation(format!(
                            "effect ({i}, {x}, {a}) has eigenvalue {low}"
                        )));
                    }
                    total = total.add(e)?;
                }
                if total.max_abs_diff(&ComplexMatrix::identity(d))? > 1e-9 {
                    return Err(Error::validation(format!("effects of player {i} input {x} do not sum to identity")));
                }
            }
        }
        Ok(Self {
            dims,
            outputs,
            effects,
        })
    }

    /// Rank-one projective measurements from (normalized) vectors
    /// `vectors[i][x][a]`.
    pub fn from_vectors(dims: Vec<usize>, vectors: &[Vec<Vec<Vec<Complex64>>>]) -> Result<Self> {
        let effects = vectors
            .iter()
            .map(|player| {
                player
                    .iter()
                    .map(|povm| {
                        povm.iter()
                            .map(|v| {
                                if (vec_norm(v) - 1.0).abs() > 1e-10 {
                                    return Err(Error::validation("measurement vector is not normalized"));
                                }
                                Ok(ComplexMatrix::from_fn(v.len(), v.len(), |r, c| v[r] * v[c].conj()))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dims, effects)
    }

    pub fn players(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn input_sizes(&self) -> Vec<usize> {
        self.effects.iter().map(Vec::len).collect()
    }

    pub fn effect(&self, player: usize, x: usize, a: usize) -> &ComplexMatrix {
        &self.effects[player][x][a]
    }

    pub fn effects(&self) -> &[Vec<Vec<ComplexMatrix>>] {
        &self.effects
    }

    /// `A_x^k = sum_a conj(chi_k(a)) M_x^a`.
    pub fn observable(&self, group: &AbelianGroup, player: usize, x: usize, k: usize) -> Result<ComplexMatrix> {
        if group.size() != self.outputs {
            return Err(Error::arg("group order differs from the number of outcomes"));
        }
        let d = self.dims[player];
        self.effects[player][x]
            .iter()
            .enumerate()
            .try_fold(ComplexMatrix::zeros(d, d), |acc, (a, e)| {
                acc.add(&e.scale(group.character_at(k, a).conj()))
            })
    }
}
