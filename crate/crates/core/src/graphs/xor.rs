use super::graph::Graph;
use super::independence::{independence_number, IndependentSet, DEFAULT_INDEPENDENCE_BUDGET};
use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, lambda_max, singular_values, spectral_norm, ComplexMatrix};
use crate::values::{no_advantage_sufficient, SignVectors};
use serde::Serialize;

/// Largest `m` accepted by [`graph_spectrum_check`].
pub const MAX_SPECTRUM_INPUTS: usize = 12;

/// Exclusivity graph of a uniform XOR game with `m` inputs per player.
///
/// Vertex `(x, y, a)` stands for "inputs x, y were asked and Alice answered
/// a" (Bob's answer is then fixed by winning). Its index is `2(x m + y) + a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorGameGraph {
    m: usize,
    signs: Vec<Vec<i32>>,
    graph: Graph,
}

impl XorGameGraph {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn signs(&self) -> &[Vec<i32>] {
        &self.signs
    }

    pub fn vertex(&self, x: usize, y: usize, a: usize) -> usize {
        2 * (x * self.m + y) + a
    }

    pub fn label(&self, v: usize) -> (usize, usize, usize) {
        (v / 2 / self.m, v / 2 % self.m, v % 2)
    }
}

fn check_signs(signs: &[Vec<i32>]) -> Result<usize> {
    let m = signs.len();
    if m == 0 || signs.iter().any(|r| r.len() != m) {
        return Err(Error::arg("sign matrix must be square and nonempty"));
    }
    if signs.iter().flatten().any(|&s| s != 1 && s != -1) {
        return Err(Error::arg("sign matrix entries must be +1 or -1"));
    }
    Ok(m)
}

/// Builds the graph from the edge rule: `(x,y,a) ~ (x',y',a')` iff
/// `x = x'` and `a != a'`, or `y = y'` and `(-1)^(a+a') != s_xy s_x'y'`.
/// Regularity, triangle-freeness and the perfect matching are verified.
pub fn xor_game_graph(signs: &[Vec<i32>]) -> Result<XorGameGraph> {
    let m = check_signs(signs)?;
    let n = 2 * m * m;
    let mut graph = Graph::empty(n);
    let label = |v: usize| (v / 2 / m, v / 2 % m, v % 2);
    for u in 0..n {
        for v in u + 1..n {
            let (x, y, a) = label(u);
            let (x2, y2, a2) = label(v);
            let parity = if a == a2 { 1 } else { -1 };
            if (x == x2 && a != a2) || (y == y2 && parity != signs[x][y] * signs[x2][y2]) {
                graph.add_edge(u, v)?;
            }
        }
    }
    let g = XorGameGraph {
        m,
        signs: signs.to_vec(),
        graph,
    };
    if let Some(v) = (0..n).find(|&v| g.graph.degree(v) != 2 * m - 1) {
        return Err(Error::Internal(format!("vertex {v} has degree {}, expected {}", g.graph.degree(v), 2 * m - 1)));
    }
    if !g.graph.is_triangle_free() {
        return Err(Error::Internal("XOR game graph has a triangle".into()));
    }
    if let Some(v) = (0..n).step_by(2).find(|&v| !g.graph.has_edge(v, v + 1)) {
        return Err(Error::Internal(format!("matching edge at vertex {v} is missing")));
    }
    Ok(g)
}

fn sign_matrix(signs: &[Vec<i32>]) -> ComplexMatrix {
    ComplexMatrix::from_fn(signs.len(), signs.len(), |i, j| (signs[i][j] as f64).into())
}

/// Adjacency from the tensor expression
/// `I (x) (J - I) (x) X + 1/2 J (x) I (x) (I + X) - 1/2 [D (J (x) I) D] (x) (I - X)`
/// with `D = Diag(s_xy)` over `|x, y>` and X the Pauli flip on the answer bit.
pub fn adjacency_closed_form(signs: &[Vec<i32>]) -> Result<ComplexMatrix> {
    let m = check_signs(signs)?;
    let i_m = ComplexMatrix::identity(m);
    let j_m = ComplexMatrix::ones(m, m);
    let i2 = ComplexMatrix::identity(2);
    let x = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])?;
    let d = ComplexMatrix::diag_real(&signs.iter().flatten().map(|&s| s as f64).collect::<Vec<_>>());
    let t1 = i_m.kron(&j_m.sub(&i_m)?).kron(&x);
    let t2 = j_m.kron(&i_m).kron(&i2.add(&x)?).scale_real(0.5);
    let dj = d.matmul(&j_m.kron(&i_m))?.matmul(&d)?;
    let t3 = dj.kron(&i2.sub(&x)?).scale_real(0.5);
    t1.add(&t2)?.sub(&t3)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub m: usize,
    /// Singular values of the sign matrix.
    pub lambda_z: Vec<f64>,
    /// Eigenvalues of the adjacency matrix, descending.
    pub computed: Vec<f64>,
    /// `{2m-1; m-1 (2m-2 times); -1 ((m-1)^2 times); 1-m +- lambda_z; 1 (m(m-2) times)}`, descending.
    pub predicted: Vec<f64>,
    pub max_mismatch: f64,
    pub matches: bool,
}

/// Compares the adjacency spectrum with its prediction from the singular
/// values of the sign matrix.
pub fn graph_spectrum_check(signs: &[Vec<i32>]) -> Result<SpectrumReport> {
    let m = check_signs(signs)?;
    if m < 2 {
        return Err(Error::arg("the spectrum formula needs m >= 2"));
    }
    if m > MAX_SPECTRUM_INPUTS {
        return Err(Error::resource(format!("spectrum check is limited to m <= {MAX_SPECTRUM_INPUTS}")));
    }
    let g = xor_game_graph(signs)?;
    let computed = hermitian_eig(&g.graph.adjacency_matrix(), 1e-13)?.values;
    let lambda_z = singular_values(&sign_matrix(signs))?;
    let mf = m as f64;
    let mut predicted = vec![2.0 * mf - 1.0];
    predicted.extend(std::iter::repeat(mf - 1.0).take(2 * m - 2));
    predicted.extend(std::iter::repeat(-1.0).take((m - 1) * (m - 1)));
    for &l in &lambda_z {
        predicted.push(1.0 - mf + l);
        predicted.push(1.0 - mf - l);
    }
    predicted.extend(std::iter::repeat(1.0).take(m * (m - 2)));
    predicted.sort_by(|a, b| b.total_cmp(a));
    if predicted.len() != computed.len() {
        return Err(Error::Internal("predicted spectrum has the wrong size".into()));
    }
    let max_mismatch = computed
        .iter()
        .zip(&predicted)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(SpectrumReport {
        m,
        lambda_z,
        computed,
        predicted,
        max_mismatch,
        matches: max_mismatch <= 1e-7,
    })
}

/// Largest eigenvalue of the witness
/// `J (x) J (x) (I + X) - m A + (alpha - m) I (x) I (x) X`.
///
/// The matrix has ones on the diagonal and on every non-edge, so its top
/// eigenvalue bounds the Lovász number from above.
pub fn lovasz_witness_value(signs: &[Vec<i32>], alpha: f64) -> Result<f64> {
    let g = xor_game_graph(signs)?;
    let m = g.m;
    let mf = m as f64;
    let x = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])?;
    let ones = ComplexMatrix::ones(m, m);
    let id = ComplexMatrix::identity(m);
    let a = ones
        .kron(&ones)
        .kron(&ComplexMatrix::ones(2, 2))
        .sub(&g.graph.adjacency_matrix().scale_real(mf))?
        .add(&id.kron(&id).kron(&x).scale_real(alpha - mf))?;
    let n = a.rows();
    for i in 0..n {
        for j in 0..n {
            if (i == j || !g.graph.has_edge(i, j)) && (a[(i, j)].re - 1.0).abs() > 1e-12 {
                return Err(Error::Internal(format!("witness entry ({i}, {j}) is {} instead of 1", a[(i, j)])));
            }
        }
    }
    lambda_max(&a)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShannonCertificate {
    pub certified: bool,
    pub m: usize,
    pub alpha: IndependentSet,
    /// `||s||` of the unnormalized sign matrix.
    pub phi_tilde_norm: f64,
    /// `m (m + ||s||) / 2`, the independence number when the top singular
    /// vectors are sign vectors.
    pub predicted_alpha: f64,
    /// Witness eigenvalue at the true independence number.
    pub witness_lambda_max: f64,
    /// Witness eigenvalue at `predicted_alpha`; an upper bound on the Lovász number.
    pub theta_upper_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_vectors: Option<SignVectors>,
}

/// Certifies that the Shannon capacity of a uniform XOR game graph equals
/// its independence number: top singular vectors with `+-1` entries exist
/// and the witness eigenvalue equals alpha.
pub fn shannon_certify(signs: &[Vec<i32>]) -> Result<ShannonCertificate> {
    shannon_certify_with_budget(signs, DEFAULT_INDEPENDENCE_BUDGET)
}

pub fn shannon_certify_with_budget(signs: &[Vec<i32>], budget: usize) -> Result<ShannonCertificate> {
    let m = check_signs(signs)?;
    let g = xor_game_graph(signs)?;
    let alpha = independence_number(g.graph(), budget)?;
    let tilde = sign_matrix(signs);
    let norm = spectral_norm(&tilde)?;
    let phi = tilde.scale_real(1.0 / (m * m) as f64);
    let sign_vectors = no_advantage_sufficient(&phi)?;
    let witness = lovasz_witness_value(signs, alpha.size as f64)?;
    let predicted_alpha = m as f64 * (m as f64 + norm) / 2.0;
    let theta = lovasz_witness_value(signs, predicted_alpha)?;
    Ok(ShannonCertificate {
        certified: sign_vectors.is_some() && (witness - alpha.size as f64).abs() <= 1e-7,
        m,
        alpha,
        phi_tilde_norm: norm,
        predicted_alpha,
        witness_lambda_max: witness,
        theta_upper_bound: theta,
        sign_vectors,
    })
}
