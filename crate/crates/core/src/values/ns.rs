use crate::error::{Error, Result};
use crate::games::{BoxTable, LinearGame};
use crate::numerics::{lp_solve_with_budget, LpProblem, Sense, DEFAULT_LP_BUDGET};
use serde::Serialize;

/// Optimum of the no-signaling LP together with its dual certificate.
#[derive(Debug, Clone, Serialize)]
pub struct NsResult {
    pub value: f64,
    pub dual_objective: f64,
    pub duality_gap: f64,
    pub dual_infeasibility: f64,
    #[serde(skip)]
    pub optimal_box: BoxTable,
}

pub fn ns_value(g: &LinearGame) -> Result<NsResult> {
    ns_value_with_budget(g, DEFAULT_LP_BUDGET)
}

/// Maximum winning probability over no-signaling boxes.
///
/// Variables are the entries `P(a|x)` in [`BoxTable`] layout. Besides
/// normalization, for each player i and each input `x_i >= 1` the marginal
/// on the other players must match the one at `x_i = 0`. Requiring this for
/// every single player already forces every proper subset's marginal to be
/// independent of the remaining inputs.
pub fn ns_value_with_budget(g: &LinearGame, budget: usize) -> Result<NsResult> {
    let n = g.players();
    let q = g.group().size();
    let sizes = g.input_sizes();
    let nx = g.num_inputs();
    let na = q
        .checked_pow(n as u32)
        .ok_or_else(|| Error::resource("output space overflows"))?;
    let nvars = nx
        .checked_mul(na)
        .ok_or_else(|| Error::resource("LP has too many variables"))?;
    let ns_rows: usize = sizes.iter().map(|&m| nx / m * (m - 1) * (na / q)).sum();
    let rows = nx + ns_rows;
    if rows.saturating_mul(nvars + rows) > budget {
        return Err(Error::resource(format!(
            "no-signaling LP with {nvars} variables and {rows} constraints exceeds the budget"
        )));
    }

    let grp = g.group();
    let mut objective = vec![0.0; nvars];
    let out_tuple = |mut a: usize| -> Vec<usize> {
        (0..n)
            .map(|_| {
                let v = a % q;
                a /= q;
                v
            })
            .collect()
    };
    for x in 0..nx {
        let p = g.dist()[x];
        if p == 0.0 {
            continue;
        }
        for a in 0..na {
            let s = out_tuple(a).into_iter().fold(0, |acc, v| grp.add_index(acc, v));
            if s == g.f()[x] {
                objective[x * na + a] = p;
            }
        }
    }
    let mut lp = LpProblem::new(Sense::Maximize, objective);
    for x in 0..nx {
        let mut row = vec![0.0; nvars];
        row[x * na..(x + 1) * na].iter_mut().for_each(|v| *v = 1.0);
        lp.add_eq(row, 1.0);
    }

    let input_stride: Vec<usize> = sizes
        .iter()
        .scan(1, |acc, &m| {
            let s = *acc;
            *acc *= m;
            Some(s)
        })
        .collect();
    let output_stride: Vec<usize> = (0..n).map(|i| q.pow(i as u32)).collect();
    for i in 0..n {
        for x in 0..nx {
            let xi = (x / input_stride[i]) % sizes[i];
            if xi == 0 {
                continue;
            }
            let x0 = x - xi * input_stride[i];
            for a in 0..na {
                if (a / output_stride[i]) % q != 0 {
                    continue;
                }
                let mut row = vec![0.0; nvars];
                for ai in 0..q {
                    let af = a + ai * output_stride[i];
                    row[x * na + af] += 1.0;
                    row[x0 * na + af] -= 1.0;
                }
                lp.add_eq(row, 0.0);
            }
        }
    }

    let sol = lp_solve_with_budget(&lp, budget).map_err(|e| match e {
        Error::Infeasible | Error::Unbounded => {
            Error::Internal(format!("no-signaling LP reported {e} for a valid game"))
        }
        other => other,
    })?;
    let table = sol.x.iter().map(|&v| v.max(0.0)).collect();
    let optimal_box = BoxTable::new(sizes.to_vec(), q, table)?;
    Ok(NsResult {
        value: sol.optimum,
        dual_objective: sol.dual_objective,
        duality_gap: sol.duality_gap,
        dual_infeasibility: sol.dual_infeasibility,
        optimal_box,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::*;

    #[test]
    fn chsh_is_one() {
        let r = ns_value(&build_chsh_d(2).unwrap()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
        assert!(r.duality_gap < 1e-9);
        assert!(validate_no_signaling(&r.optimal_box).no_signaling);
        let g = build_chsh_d(2).unwrap();
        assert!((success_probability(&g, &r.optimal_box).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn multipartite_and_larger_groups() {
        for g in [build_chsh_d(3).unwrap(), build_mermin3().unwrap(), build_chshn_d(3, 2).unwrap()] {
            let r = ns_value(&g).unwrap();
            assert!((r.value - 1.0).abs() < 1e-9, "{}", r.value);
            let check = validate_no_signaling(&r.optimal_box);
            assert!(check.no_signaling, "{}", check.max_violation);
        }
    }

    #[test]
    fn concentrated_distribution() {
        let mut dist = vec![0.0; 4];
        dist[3] = 1.0;
        let g = LinearGame::new(vec![2, 2], GroupSpec::Cyclic(vec![2]), dist, vec![0, 0, 0, 1]).unwrap();
        assert!((ns_value(&g).unwrap().value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn budget() {
        let g = build_chsh_d(3).unwrap();
        assert!(matches!(ns_value_with_budget(&g, 10), Err(Error::Resource(_))));
    }
}
