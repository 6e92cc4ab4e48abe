use super::classical::DeterministicStrategy;
use crate::error::{Error, Result};
use crate::numerics::{lambda_max, spectral_norm, ComplexMatrix};
use serde::Serialize;

/// Largest side for the exhaustive sign search.
pub const MAX_SIGN_SEARCH: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoAdvantageCertificate {
    pub sigma_diag: Vec<f64>,
    pub lambda_diag: Vec<f64>,
    /// Absent when a diagonal entry is not positive.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral_radius: Option<f64>,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

fn real_rows(phi: &ComplexMatrix) -> Result<Vec<Vec<f64>>> {
    let rows = phi
        .to_real(1e-12)
        .map_err(|_| Error::arg("XOR game matrix must be real"))?;
    if rows.iter().any(|r| r.iter().all(|&v| v == 0.0)) {
        return Err(Error::Precondition("game matrix has an all-zero row".into()));
    }
    if (0..phi.cols()).any(|j| rows.iter().all(|r| r[j] == 0.0)) {
        return Err(Error::Precondition("game matrix has an all-zero column".into()));
    }
    Ok(rows)
}

/// Exact test for the absence of quantum advantage in an XOR game, given a
/// classical optimum.
///
/// With sign vectors `s^A, s^B` of the strategy, `Sigma_ii = (Phi s^B)_i s^A_i`
/// and `Lambda_jj = (s^A^T Phi)_j s^B_j`. Quantum strategies cannot beat the
/// classical one iff both diagonals are positive and the largest eigenvalue
/// of `Lambda^{-1/2} Phi^T Sigma^{-1} Phi Lambda^{-1/2}` is 1.
pub fn no_advantage_iff(phi: &ComplexMatrix, strategy: &DeterministicStrategy, tol: f64) -> Result<NoAdvantageCertificate> {
    let rows = real_rows(phi)?;
    let (ma, mb) = (phi.rows(), phi.cols());
    if strategy.outputs.len() != 2 || strategy.outputs[0].len() != ma || strategy.outputs[1].len() != mb {
        return Err(Error::arg("strategy does not match the game matrix shape"));
    }
    if strategy.outputs.iter().flatten().any(|&a| a > 1) {
        return Err(Error::arg("XOR strategies output 0 or 1"));
    }
    let sa = strategy.signs(0);
    let sb = strategy.signs(1);
    let sigma: Vec<f64> = (0..ma)
        .map(|i| rows[i].iter().zip(&sb).map(|(p, s)| p * s).sum::<f64>() * sa[i])
        .collect();
    let lambda: Vec<f64> = (0..mb)
        .map(|j| (0..ma).map(|i| sa[i] * rows[i][j]).sum::<f64>() * sb[j])
        .collect();
    if let Some((side, idx, v)) = sigma
        .iter()
        .enumerate()
        .map(|(i, &v)| ("Sigma", i, v))
        .chain(lambda.iter().enumerate().map(|(j, &v)| ("Lambda", j, v)))
        .find(|&(_, _, v)| v <= tol)
    {
        return Ok(NoAdvantageCertificate {
            sigma_diag: sigma,
            lambda_diag: lambda,
            spectral_radius: None,
            verdict: false,
            diagnostic: Some(format!("{side}[{idx}] = {v:.3e} is not positive")),
        });
    }
    // Lambda^{-1/2} Phi^T Sigma^{-1} Phi Lambda^{-1/2}, symmetric by construction.
    let m = ComplexMatrix::from_fn(mb, mb, |j, l| {
        let s: f64 = (0..ma).map(|i| rows[i][j] * rows[i][l] / sigma[i]).sum();
        (s / (lambda[j] * lambda[l]).sqrt()).into()
    });
    let rho = lambda_max(&m)?;
    let verdict = (rho - 1.0).abs() <= tol;
    Ok(NoAdvantageCertificate {
        sigma_diag: sigma,
        lambda_diag: lambda,
        spectral_radius: Some(rho),
        verdict,
        diagnostic: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignVectors {
    pub a: Vec<i8>,
    pub b: Vec<i8>,
}

/// Searches for `+-1` vectors with `a^T Phi b = sqrt(m_A m_B) ||Phi||`, which
/// rules out quantum advantage. Absence proves nothing.
pub fn no_advantage_sufficient(phi: &ComplexMatrix) -> Result<Option<SignVectors>> {
    let rows = real_rows(phi)?;
    let (ma, mb) = (phi.rows(), phi.cols());
    if ma > MAX_SIGN_SEARCH || mb > MAX_SIGN_SEARCH {
        return Err(Error::resource(format!(
            "sign search is limited to {MAX_SIGN_SEARCH} rows and columns"
        )));
    }
    let target = ((ma * mb) as f64).sqrt() * spectral_norm(phi)?;
    // Fixing a_0 = +1 loses nothing since (a, b) and (-a, -b) give the same value.
    for mask in 0..1usize << (ma - 1) {
        let a: Vec<i8> = (0..ma)
            .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -1 } else { 1 })
            .collect();
        let col: Vec<f64> = (0..mb)
            .map(|j| (0..ma).map(|i| a[i] as f64 * rows[i][j]).sum())
            .collect();
        let b: Vec<i8> = col.iter().map(|&c| if c >= 0.0 { 1 } else { -1 }).collect();
        let value: f64 = col.iter().zip(&b).map(|(c, &s)| c * s as f64).sum();
        if (value - target).abs() <= 1e-8 {
            return Ok(Some(SignVectors { a, b }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::*;
    use crate::values::{classical_value, xor_quantum_bias, XorSdpOptions};

    fn phi_ex() -> ComplexMatrix {
        let s = [1., -1., -1., 1., -1., -1., 1., -1., -1., 1., -1., -1., 1., -1., -1., 1.];
        ComplexMatrix::from_real(4, 4, &s.map(|v| v / 16.0)).unwrap()
    }

    fn certify(g: &LinearGame) -> NoAdvantageCertificate {
        let phi = xor_matrix(g).unwrap();
        let c = classical_value(g).unwrap();
        no_advantage_iff(&phi, &c.strategy, 1e-8).unwrap()
    }

    #[test]
    fn example_without_advantage() {
        let g = build_xor_from_matrix(&phi_ex().to_real(0.0).unwrap()).unwrap();
        let cert = certify(&g);
        assert!(cert.verdict, "{cert:?}");
        assert!(no_advantage_sufficient(&phi_ex()).unwrap().is_none());
    }

    #[test]
    fn chsh_has_advantage() {
        let g = build_chsh_d(2).unwrap();
        assert!(!certify(&g).verdict);
        // Oracle: every sign pair reaches at most 1/2, below sqrt(4) * sqrt(2)/4.
        let phi = xor_matrix(&g).unwrap();
        let mut best = 0.0f64;
        for mask in 0..16 {
            let s = |bit: usize| if mask >> bit & 1 == 1 { -1.0 } else { 1.0 };
            let a = [s(0), s(1)];
            let b = [s(2), s(3)];
            let v: f64 = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| a[i] * phi[(i, j)].re * b[j]).sum();
            best = best.max(v);
        }
        assert!((best - 0.5).abs() < 1e-15);
        assert!(no_advantage_sufficient(&phi).unwrap().is_none());
    }

    #[test]
    fn nlc_one_bit() {
        let g = build_nlc_d(2, 1, &[1], &[1.0]).unwrap();
        assert!(certify(&g).verdict);
    }

    #[test]
    fn anti_circulant_family() {
        for (p, q) in [(0.125, 0.0), (0.1, 0.025), (-0.05, 0.075), (0.0, 0.125), (1.0 / 16.0, 1.0 / 16.0)] {
            let rows = vec![
                vec![p, q, q, -p],
                vec![q, q, -p, p],
                vec![q, -p, p, q],
                vec![-p, p, q, q],
            ];
            let phi = ComplexMatrix::from_real_rows(&rows).unwrap();
            let g0 = p * q;
            let found = no_advantage_sufficient(&phi).unwrap();
            if g0 >= 0.0 {
                assert!(found.is_some(), "p={p} q={q}");
            }
            if p != 0.0 && q != 0.0 {
                let g = build_xor_from_matrix(&rows).unwrap();
                let cert = certify(&g);
                assert!(cert.verdict, "p={p} q={q}");
                let c = classical_value(&g).unwrap().value;
                let qv = xor_quantum_bias(&phi, &XorSdpOptions::default()).unwrap().value;
                assert!((qv - c).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn preconditions() {
        let phi = ComplexMatrix::from_real(2, 2, &[0.5, 0.0, 0.5, 0.0]).unwrap();
        let s = DeterministicStrategy { outputs: vec![vec![0, 0], vec![0, 0]] };
        assert!(matches!(no_advantage_iff(&phi, &s, 1e-8), Err(Error::Precondition(_))));
        let big = ComplexMatrix::from_fn(21, 2, |_, _| (1.0 / 42.0).into());
        assert!(matches!(no_advantage_sufficient(&big), Err(Error::Resource(_))));
    }

    #[test]
    fn nonpositive_diagonal_gives_false() {
        let phi = xor_matrix(&build_chsh_d(2).unwrap()).unwrap();
        let s = DeterministicStrategy { outputs: vec![vec![0, 1], vec![0, 0]] };
        let cert = no_advantage_iff(&phi, &s, 1e-8).unwrap();
        assert!(!cert.verdict);
        assert!(cert.diagnostic.is_some());
        assert!(cert.spectral_radius.is_none());
    }
}
