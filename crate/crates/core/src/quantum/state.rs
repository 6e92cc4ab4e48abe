use crate::error::{Error, Result};
use crate::numerics::{lambda_min, ComplexMatrix};
use num_complex::Complex64;

/// Normalized state vector on `d_1 (x) ... (x) d_n`; player 0 is the most
/// significant tensor factor.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
}

fn total_dim(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::validation("local dimensions must be positive"));
    }
    dims.iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .filter(|&d| d <= 4096)
        .ok_or_else(|| Error::resource("global dimension exceeds 4096"))
}

impl PureState {
    pub fn new(dims: Vec<usize>, amps: Vec<Complex64>) -> Result<Self> {
        let d = total_dim(&dims)?;
        if amps.len() != d {
            return Err(Error::validation(format!("state has {} amplitudes, expected {d}", amps.len())));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return Err(Error::validation(format!("state has norm {norm}")));
        }
        Ok(Self { dims, amps })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// `|psi><psi|`.
    pub fn density(&self) -> DensityMatrix {
        let d = self.amps.len();
        DensityMatrix {
            dims: self.dims.clone(),
            rho: ComplexMatrix::from_fn(d, d, |i, j| self.amps[i] * self.amps[j].conj()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    rho: ComplexMatrix,
}

impl DensityMatrix {
    /// Checks Hermiticity and unit trace within 1e-10 and a smallest
    /// eigenvalue no lower than -1e-9.
    pub fn new(dims: Vec<usize>, rho: ComplexMatrix) -> Result<Self> {
        let d = total_dim(&dims)?;
        if rho.rows() != d || rho.cols() != d {
            return Err(Error::validation(format!("density matrix must be {d}x{d}")));
        }
        if !rho.is_finite() {
            return Err(Error::validation("density matrix has non-finite entries"));
        }
        if !rho.is_hermitian(1e-10) {
            return Err(Error::validation("density matrix is not Hermitian"));
        }
        let tr = rho.trace();
        if (tr - 1.0).norm() > 1e-10 {
            return Err(Error::validation(format!("density matrix has trace {tr}")));
        }
        let low = lambda_min(&rho.hermitian_part())?;
        if low < -1e-9 {
            return Err(Error::validation(format!("density matrix has eigenvalue {low}")));
        }
        Ok(Self { dims, rho })
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let d = total_dim(&dims)?;
        Ok(Self {
            dims,
            rho: ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    /// `Tr(rho M)`.
    pub fn expectation(&self, m: &ComplexMatrix) -> Result<Complex64> {
        if m.rows() != self.rho.rows() || m.cols() != self.rho.cols() {
            return Err(Error::arg("operator dimension does not match the state"));
        }
        let d = m.rows();
        Ok((0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| self.rho[(i, j)] * m[(j, i)])
            .sum())
    }

    /// `v self + (1 - v) other`, for `v` in [0, 1].
    pub fn mix(&self, other: &Self, v: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::arg(format!("mixing weight {v} is outside [0, 1]")));
        }
        if self.dims != other.dims {
            return Err(Error::arg("cannot mix states of different dimensions"));
        }
        Self::new(
            self.dims.clone(),
            self.rho.scale_real(v).add(&other.rho.scale_real(1.0 - v))?,
        )
    }
}
