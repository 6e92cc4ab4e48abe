use super::measurement::MeasurementFamily;
use super::state::DensityMatrix;
use crate::algebra::AbelianGroup;
use crate::error::{Error, Result};
use crate::games::BoxTable;
use crate::numerics::ComplexMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

fn decode(mut idx: usize, radices: &[usize]) -> Vec<usize> {
    radices
        .iter()
        .map(|&r| {
            let v = idx % r;
            idx /= r;
            v
        })
        .collect()
}

/// Player 0 is the most significant Kronecker factor.
fn tensor(ops: &[&ComplexMatrix]) -> ComplexMatrix {
    ops.iter()
        .skip(1)
        .fold(ops[0].clone(), |acc, op| acc.kron(op))
}

fn check_dims(state: &DensityMatrix, meas: &MeasurementFamily) -> Result<()> {
    if state.dims() != meas.dims() {
        return Err(Error::arg(format!(
            "state dimensions {:?} do not match measurement dimensions {:?}",
            state.dims(),
            meas.dims()
        )));
    }
    Ok(())
}

/// `P(a|x) = Tr(M_{x_1}^{a_1} (x) ... (x) M_{x_n}^{a_n} rho)` in [`BoxTable`] layout.
pub fn born_box(state: &DensityMatrix, meas: &MeasurementFamily) -> Result<BoxTable> {
    check_dims(state, meas)?;
    let inputs = meas.input_sizes();
    let n = meas.players();
    let q = meas.outputs();
    let nx: usize = inputs.iter().product();
    let na = q.pow(n as u32);
    let radices = vec![q; n];
    let rows = (0..nx)
        .into_par_iter()
        .map(|x| {
            let xt = decode(x, &inputs);
            (0..na)
                .map(|a| {
                    let at = decode(a, &radices);
                    let ops: Vec<&ComplexMatrix> = (0..n).map(|i| meas.effect(i, xt[i], at[i])).collect();
                    Ok(state.expectation(&tensor(&ops))?.re)
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    BoxTable::new(inputs, q, rows.concat())
}

/// Generalized correlator from box statistics:
/// `sum_a prod_i conj(chi_{k_i}(a_i)) P(a|x)`.
pub fn box_correlator(group: &AbelianGroup, b: &BoxTable, x: &[usize], k: &[usize]) -> Result<Complex64> {
    let n = b.players();
    if x.len() != n || k.len() != n || group.size() != b.output_size() {
        return Err(Error::arg("correlator arguments do not match the box"));
    }
    let xf = x
        .iter()
        .zip(b.input_sizes())
        .rev()
        .fold(0, |acc, (&xi, &m)| acc * m + xi);
    Ok((0..b.num_output_tuples())
        .map(|a| {
            let at = b.output_tuple(a);
            let phase: Complex64 = at
                .iter()
                .zip(k)
                .map(|(&ai, &ki)| group.character_at(ki, ai).conj())
                .product();
            phase * b.prob(xf, a)
        })
        .sum())
}

/// The same correlator as `Tr(rho (A_{x_1}^{k_1} (x) ... (x) A_{x_n}^{k_n}))`.
pub fn operator_correlator(
    group: &AbelianGroup,
    state: &DensityMatrix,
    meas: &MeasurementFamily,
    x: &[usize],
    k: &[usize],
) -> Result<Complex64> {
    check_dims(state, meas)?;
    let n = meas.players();
    if x.len() != n || k.len() != n {
        return Err(Error::arg("correlator arguments do not match the measurements"));
    }
    let obs = (0..n)
        .map(|i| meas.observable(group, i, x[i], k[i]))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&ComplexMatrix> = obs.iter().collect();
    state.expectation(&tensor(&refs))
}
