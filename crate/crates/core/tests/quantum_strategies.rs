use belltool_core::algebra::AbelianGroup;
use belltool_core::games::{
    build_chsh_d, build_mermin3, success_probability, validate_no_signaling, BoxTable,
};
use belltool_core::numerics::ComplexMatrix;
use belltool_core::quantum::*;
use belltool_core::values::linear_norm_bound_best;
use belltool_core::Complex64;

/// Reduced state of one qutrit of a three-qutrit pure state, by direct
/// summation over the other two indices.
fn reduced(psi: &[Complex64], keep: usize) -> [[Complex64; 3]; 3] {
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for u in 0..3 {
                for w in 0..3 {
                    let idx = |k: usize| match keep {
                        0 => 9 * k + 3 * u + w,
                        1 => 9 * u + 3 * k + w,
                        _ => 9 * u + 3 * w + k,
                    };
                    out[i][j] += psi[idx(i)] * psi[idx(j)].conj();
                }
            }
        }
    }
    out
}

#[test]
fn ghz_state() {
    let s = ghz3_state();
    let amps = s.amplitudes();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    assert!((norm - 1.0).abs() < 1e-12);
    assert!((amps[13].re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    for keep in 0..3 {
        let r = reduced(amps, keep);
        for (i, row) in r.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let want = if i == j { 1.0 / 3.0 } else { 0.0 };
                assert!((v - want).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn mermin_measurements() {
    let m = mermin3_measurements().unwrap();
    let s3 = 3f64.sqrt();
    let a00 = m.effect(0, 0, 0);
    // |A_0^0> = (1, w^4, 1)/sqrt 3 with w = e^{2 pi i / 9}
    let w4 = Complex64::from_polar(1.0 / s3, 8.0 * std::f64::consts::PI / 9.0);
    assert!((a00[(1, 0)] - w4 * (1.0 / s3)).norm() < 1e-12);
    for i in 0..3 {
        for x in 0..3 {
            let total = (0..3).fold(ComplexMatrix::zeros(3, 3), |acc, a| acc.add(m.effect(i, x, a)).unwrap());
            assert!(total.max_abs_diff(&ComplexMatrix::identity(3)).unwrap() < 1e-10);
        }
    }
    let g = build_mermin3().unwrap();
    let rho = ghz3_state().density();
    let w = quantum_success(&g, &rho, &m).unwrap();
    assert!((w - 1.0).abs() < 1e-9, "{w}");
}

#[test]
fn noisy_ghz_is_linear_in_visibility() {
    let g = build_mermin3().unwrap();
    let m = mermin3_measurements().unwrap();
    for v in [0.0, 0.25, 0.5, 0.85, 1.0] {
        let w = quantum_success(&g, &noisy_ghz3(v).unwrap(), &m).unwrap();
        assert!((w - (1.0 + 2.0 * v) / 3.0).abs() < 1e-9, "V={v}: {w}");
    }
    assert!(noisy_ghz3(1.1).is_err());
    assert!(noisy_ghz3(-0.1).is_err());
    let pure = noisy_ghz3(1.0).unwrap();
    assert!(pure.matrix().max_abs_diff(ghz3_state().density().matrix()).unwrap() < 1e-15);
}

#[test]
fn correlators_agree() {
    let grp = AbelianGroup::cyclic(3).unwrap();
    let m = mermin3_measurements().unwrap();
    let rho = noisy_ghz3(0.7).unwrap();
    let b = born_box(&rho, &m).unwrap();
    for x in 0..27 {
        let xt = [x % 3, (x / 3) % 3, x / 9];
        for k in 0..27 {
            let kt = [k % 3, (k / 3) % 3, k / 9];
            let a = box_correlator(&grp, &b, &xt, &kt).unwrap();
            let o = operator_correlator(&grp, &rho, &m, &xt, &kt).unwrap();
            assert!((a - o).norm() < 1e-9);
        }
    }

    let grp2 = AbelianGroup::cyclic(2).unwrap();
    let (s, cm) = chsh_optimal_strategy().unwrap();
    let rho = s.density();
    let b = born_box(&rho, &cm).unwrap();
    for x in 0..4 {
        let xt = [x % 2, x / 2];
        let a = box_correlator(&grp2, &b, &xt, &[1, 1]).unwrap();
        let o = operator_correlator(&grp2, &rho, &cm, &xt, &[1, 1]).unwrap();
        assert!((a - o).norm() < 1e-9);
    }
}

#[test]
fn chsh_strategy() {
    let (s, m) = chsh_optimal_strategy().unwrap();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let want = [0.0, r, -r, 0.0];
    for (a, w) in s.amplitudes().iter().zip(want) {
        assert!((a - w).norm() < 1e-15);
    }
    let rho = s.density();
    let b = born_box(&rho, &m).unwrap();
    let g = build_chsh_d(2).unwrap();
    let w = success_probability(&g, &b).unwrap();
    assert!((w - (2.0 + 2f64.sqrt()) / 4.0).abs() < 1e-10);

    // <A0 B0> by direct trace with the observables as written.
    let z = ComplexMatrix::diag_real(&[1.0, -1.0]);
    let x = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
    let b0 = z.add(&x).unwrap().scale_real(r);
    let e = rho.expectation(&z.kron(&b0)).unwrap();
    // The singlet anticorrelates; Bob's relabeled outcomes flip the sign.
    assert!((e.re + r).abs() < 1e-12);
    let grp = AbelianGroup::cyclic(2).unwrap();
    let c = box_correlator(&grp, &b, &[0, 0], &[1, 1]).unwrap();
    assert!((c.re - r).abs() < 1e-12);

    // CHSH expression S = sum of correlators with one sign flipped.
    let mut sum = 0.0;
    for xv in 0..2 {
        for yv in 0..2 {
            let c = box_correlator(&grp, &b, &[xv, yv], &[1, 1]).unwrap().re;
            sum += if xv * yv == 1 { -c } else { c };
        }
    }
    assert!((sum - 2.0 * 2f64.sqrt()).abs() < 1e-10);

    // Uniform marginals.
    for xv in 0..2 {
        for yv in 0..2 {
            let xf = xv + 2 * yv;
            let alice0 = b.prob(xf, 0) + b.prob(xf, 2);
            assert!((alice0 - 0.5).abs() < 1e-12);
        }
    }
}

#[test]
fn born_boxes_are_no_signaling() {
    let m = mermin3_measurements().unwrap();
    for v in [0.0, 0.3, 1.0] {
        let b = born_box(&noisy_ghz3(v).unwrap(), &m).unwrap();
        let check = validate_no_signaling(&b);
        assert!(check.no_signaling, "{}", check.max_violation);
    }
    let (s, cm) = chsh_optimal_strategy().unwrap();
    assert!(validate_no_signaling(&born_box(&s.density(), &cm).unwrap()).no_signaling);
}

#[test]
fn maximally_mixed_gives_uniform_box() {
    let m = mermin3_measurements().unwrap();
    let mm = DensityMatrix::maximally_mixed(vec![3, 3, 3]).unwrap();
    let b = born_box(&mm, &m).unwrap();
    let u = BoxTable::uniform(&[3, 3, 3], 3).unwrap();
    for (p, q) in b.table().iter().zip(u.table()) {
        assert!((p - q).abs() < 1e-12);
    }
}

#[test]
fn dimension_mismatch_is_rejected() {
    let m = mermin3_measurements().unwrap();
    let (s, _) = chsh_optimal_strategy().unwrap();
    assert!(born_box(&s.density(), &m).is_err());
}

#[test]
fn quantum_strategies_respect_norm_bounds() {
    let g = build_chsh_d(2).unwrap();
    let (s, m) = chsh_optimal_strategy().unwrap();
    let w = quantum_success(&g, &s.density(), &m).unwrap();
    assert!(w <= linear_norm_bound_best(&g).unwrap().bound + 1e-7);

    let g = build_mermin3().unwrap();
    let w = quantum_success(&g, &ghz3_state().density(), &mermin3_measurements().unwrap()).unwrap();
    assert!(w <= linear_norm_bound_best(&g).unwrap().bound + 1e-7);
}

#[test]
fn mermin_witness() {
    let g = build_mermin3().unwrap();
    let m = mermin3_measurements().unwrap();
    let v = diew_verdict(&g, &ghz3_state().density(), &m).unwrap();
    assert!(v.witnessed);
    assert!(v.traceless);
    assert!((v.quantum_value - 1.0).abs() < 1e-9);
    assert!((v.biseparable_bound.bound - 0.896).abs() < 1e-3);
    assert!((v.noise_value - 1.0 / 3.0).abs() < 1e-12);

    let noisy = diew_verdict(&g, &noisy_ghz3(0.9).unwrap(), &m).unwrap();
    assert!(noisy.witnessed);
    assert!((noisy.quantum_value - 2.8 / 3.0).abs() < 1e-9);

    let mm = DensityMatrix::maximally_mixed(vec![3, 3, 3]).unwrap();
    let none = diew_verdict(&g, &mm, &m).unwrap();
    assert!(!none.witnessed);
    assert!(none.visibility_threshold.is_none());

    // The threshold sits exactly where the noisy value meets the bound.
    let vstar = v.visibility_threshold.unwrap();
    let at = quantum_success(&g, &noisy_ghz3(vstar).unwrap(), &m).unwrap();
    assert!((at - v.biseparable_bound.bound).abs() < 1e-9);
}
