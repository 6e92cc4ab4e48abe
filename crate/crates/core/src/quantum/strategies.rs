use super::measurement::MeasurementFamily;
use super::state::{DensityMatrix, PureState};
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// `(|000> + |111> + |222>) / sqrt 3`.
pub fn ghz3_state() -> PureState {
    let mut amps = vec![Complex64::new(0.0, 0.0); 27];
    for j in 0..3 {
        amps[13 * j] = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
    }
    PureState::new(vec![3, 3, 3], amps).expect("GHZ state is normalized")
}

/// `V |GHZ><GHZ| + (1 - V) I / 27`.
pub fn noisy_ghz3(v: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::arg(format!("visibility {v} is outside [0, 1]")));
    }
    ghz3_state()
        .density()
        .mix(&DensityMatrix::maximally_mixed(vec![3, 3, 3])?, v)
}

/// Phases of the measurement vectors in ninths of a turn,
/// `[input][outcome][component]`; the last component is always 1.
const MERMIN_AB: [[[u32; 2]; 3]; 3] = [
    [[0, 4], [6, 7], [3, 1]],
    [[1, 0], [7, 3], [4, 6]],
    [[8, 8], [5, 2], [2, 5]],
];
const MERMIN_C: [[[u32; 2]; 3]; 3] = [
    [[0, 1], [6, 4], [3, 7]],
    [[1, 6], [7, 0], [4, 3]],
    [[8, 5], [5, 8], [2, 2]],
];

fn mermin_vectors(table: &[[[u32; 2]; 3]; 3]) -> Vec<Vec<Vec<Complex64>>> {
    let s = 1.0 / 3f64.sqrt();
    table
        .iter()
        .map(|input| {
            input
                .iter()
                .map(|&[p0, p1]| {
                    vec![
                        Complex64::from_polar(s, 2.0 * PI * p0 as f64 / 9.0),
                        Complex64::from_polar(s, 2.0 * PI * p1 as f64 / 9.0),
                        Complex64::new(s, 0.0),
                    ]
                })
                .collect()
        })
        .collect()
}

/// Projective measurements that win the Mermin game with the GHZ state.
/// Alice and Bob use the same bases; Charlie's differ.
pub fn mermin3_measurements() -> Result<MeasurementFamily> {
    let ab = mermin_vectors(&MERMIN_AB);
    let c = mermin_vectors(&MERMIN_C);
    MeasurementFamily::from_vectors(vec![3, 3, 3], &[ab.clone(), ab, c])
}

/// Singlet `(|01> - |10>) / sqrt 2` with observables `A_0 = Z`, `A_1 = X`,
/// `B_{0,1} = (Z +- X) / sqrt 2`.
///
/// The singlet anticorrelates, so Bob's outcome labels are flipped
/// (`M_y^b = (I - (-1)^b B_y) / 2`) to make the pair win CHSH with
/// probability `(2 + sqrt 2) / 4`.
pub fn chsh_optimal_strategy() -> Result<(PureState, MeasurementFamily)> {
    let r = FRAC_1_SQRT_2;
    let state = PureState::new(
        vec![2, 2],
        vec![0.0.into(), r.into(), (-r).into(), 0.0.into()],
    )?;
    let z = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0])?;
    let x = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])?;
    let id = ComplexMatrix::identity(2);
    let b0 = z.add(&x)?.scale_real(r);
    let b1 = z.sub(&x)?.scale_real(r);
    let effects = |obs: &ComplexMatrix, sign: f64| -> Result<Vec<ComplexMatrix>> {
        Ok(vec![
            id.add(&obs.scale_real(sign))?.scale_real(0.5),
            id.sub(&obs.scale_real(sign))?.scale_real(0.5),
        ])
    };
    let meas = MeasurementFamily::new(
        vec![2, 2],
        vec![
            vec![effects(&z, 1.0)?, effects(&x, 1.0)?],
            vec![effects(&b0, -1.0)?, effects(&b1, -1.0)?],
        ],
    )?;
    Ok((state, meas))
}
