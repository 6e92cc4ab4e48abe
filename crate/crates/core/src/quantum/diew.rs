use super::born::{born_box, operator_correlator};
use super::measurement::MeasurementFamily;
use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::games::{success_probability, LinearGame};
use crate::values::{diew_bound_with_budget, DiewBound, DEFAULT_BISEPARABLE_BUDGET};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct DiewVerdict {
    pub quantum_value: f64,
    pub biseparable_bound: DiewBound,
    /// The value exceeds the biseparable bound by more than 1e-9.
    pub witnessed: bool,
    /// Success probability of the same measurements on white noise.
    pub noise_value: f64,
    /// `Tr(A_x^k (x) B_y^k (x) C_z^k) = 0` for every input and nontrivial k.
    pub traceless: bool,
    /// Smallest visibility V for which `V rho + (1 - V) I / d` still beats
    /// the bound; present when the observables are traceless and the state
    /// does better than noise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub visibility_threshold: Option<f64>,
}

/// Success probability of a quantum strategy on a game.
pub fn quantum_success(g: &LinearGame, state: &DensityMatrix, meas: &MeasurementFamily) -> Result<f64> {
    if meas.input_sizes() != g.input_sizes() || meas.outputs() != g.group().size() {
        return Err(Error::arg("measurements do not match the game"));
    }
    success_probability(g, &born_box(state, meas)?)
}

/// Decides whether a three-player strategy witnesses genuine tripartite
/// entanglement by beating [`crate::values::diew_bound`].
///
/// Born probabilities are linear in the state, so white noise at
/// visibility V gives `V w + (1 - V) w_0`. Traceless observables force
/// `w_0 = 1/|G|`, and the threshold is where this line crosses the bound.
pub fn diew_verdict(g: &LinearGame, state: &DensityMatrix, meas: &MeasurementFamily) -> Result<DiewVerdict> {
    diew_verdict_with_budget(g, state, meas, DEFAULT_BISEPARABLE_BUDGET)
}

/// [`diew_verdict`] with a cap on the biseparable enumeration per cut.
pub fn diew_verdict_with_budget(
    g: &LinearGame,
    state: &DensityMatrix,
    meas: &MeasurementFamily,
    budget: usize,
) -> Result<DiewVerdict> {
    if g.players() != 3 {
        return Err(Error::arg("entanglement witnesses need a three-player game"));
    }
    let bound = diew_bound_with_budget(g, budget)?;
    let quantum_value = quantum_success(g, state, meas)?;
    let mixed = DensityMatrix::maximally_mixed(state.dims().to_vec())?;
    let noise_value = quantum_success(g, &mixed, meas)?;
    let grp = g.group();
    let dim: usize = state.dims().iter().product();
    let mut traceless = true;
    for x in 0..g.num_inputs() {
        let t = g.input_tuple(x);
        for k in 1..grp.size() {
            // Tr(O) = d Tr(O I/d).
            let tr = operator_correlator(grp, &mixed, meas, &t, &[k; 3])? * dim as f64;
            traceless &= tr.norm() <= 1e-10;
        }
    }
    let w0 = 1.0 / grp.size() as f64;
    let visibility_threshold = (traceless && quantum_value > w0 + 1e-12)
        .then(|| (bound.bound - w0) / (quantum_value - w0));
    Ok(DiewVerdict {
        quantum_value,
        witnessed: quantum_value > bound.bound + 1e-9,
        biseparable_bound: bound,
        noise_value,
        traceless,
        visibility_threshold,
    })
}
