//! JSON strategy files.
//!
//! ```json
//! {"dims": [2, 2],
//!  "state": [0, 0, 0.7071067811865476, 0, -0.7071067811865476, 0, 0, 0],
//!  "measurements": [[[ [[[1,0],[0,0]], [[0,0],[0,0]]], ... ]]]}
//! ```
//!
//! `state` interleaves real and imaginary parts of the amplitudes.
//! `measurements[i][x][a]` is an effect matrix given row by row, each entry
//! a `[re, im]` pair.

use super::measurement::MeasurementFamily;
use super::state::PureState;
use crate::error::{Error, Result};
use crate::games::from_json;
use crate::numerics::ComplexMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

type EffectJson = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StrategyFile {
    dims: Vec<usize>,
    state: Vec<f64>,
    measurements: Vec<Vec<Vec<EffectJson>>>,
}

fn effect_from_json(e: &EffectJson) -> Result<ComplexMatrix> {
    let n = e.len();
    if e.iter().any(|row| row.len() != n) {
        return Err(Error::validation("effect matrix is not square"));
    }
    Ok(ComplexMatrix::from_fn(n, n, |r, c| Complex64::new(e[r][c][0], e[r][c][1])))
}

fn effect_to_json(m: &ComplexMatrix) -> EffectJson {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

/// Loads and validates a pure-state strategy.
pub fn parse_strategy_file(text: &str) -> Result<(PureState, MeasurementFamily)> {
    let file: StrategyFile = from_json(text)?;
    if file.state.len() % 2 != 0 {
        return Err(Error::validation("state must interleave real and imaginary parts"));
    }
    let amps = file
        .state
        .chunks(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect();
    let state = PureState::new(file.dims.clone(), amps)?;
    let effects = file
        .measurements
        .iter()
        .map(|p| {
            p.iter()
                .map(|x| x.iter().map(effect_from_json).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let meas = MeasurementFamily::new(file.dims, effects)?;
    Ok((state, meas))
}

pub fn serialize_strategy(state: &PureState, meas: &MeasurementFamily) -> Result<String> {
    if state.dims() != meas.dims() {
        return Err(Error::arg("state and measurement dimensions differ"));
    }
    let file = StrategyFile {
        dims: state.dims().to_vec(),
        state: state.amplitudes().iter().flat_map(|a| [a.re, a.im]).collect(),
        measurements: meas
            .effects()
            .iter()
            .map(|p| p.iter().map(|x| x.iter().map(effect_to_json).collect()).collect())
            .collect(),
    };
    serde_json::to_string(&file).map_err(|e| Error::Internal(e.to_string()))
}
