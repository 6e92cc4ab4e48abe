use crate::args::{DiewArgs, GraphArgs, ValueArgs};
use crate::source::{kind, load_game, read_file};
use crate::CliError;
use belltool_core::games::{cc_protocol_simulate, LinearGame, Partition};
use belltool_core::graphs::{
    graph_spectrum_check, independence_number, shannon_certify_with_budget, xor_game_graph,
    DEFAULT_INDEPENDENCE_BUDGET,
};
use belltool_core::quantum::{
    diew_verdict_with_budget, ghz3_state, mermin3_measurements, parse_strategy_file, DensityMatrix,
};
use belltool_core::values::{
    analyze_values, ValueAnalyses, ValueOptions, XorSdpOptions,
    DEFAULT_BISEPARABLE_BUDGET,
};
use belltool_core::Error;
use serde_json::{json, Map, Value};

pub struct Output {
    pub config: Value,
    pub game: LinearGame,
    pub results: Value,
}

const ANALYSES: [&str; 7] = ["classical", "ns", "quantum-xor", "bound", "no-advantage", "triviality", "cc-sim"];

fn to_value<T: serde::Serialize>(t: &T) -> Result<Value, CliError> {
    serde_json::to_value(t).map_err(|e| CliError::Core(Error::Internal(e.to_string())))
}

fn positive_budget(b: Option<f64>) -> Result<Option<f64>, CliError> {
    match b {
        Some(x) if !(x.is_finite() && x >= 1.0) => Err(CliError::Usage(format!("--budget must be at least 1, got {x}"))),
        other => Ok(other),
    }
}

pub fn value(a: &ValueArgs) -> Result<Output, CliError> {
    let (g, source) = load_game(&a.game)?;
    let budget = positive_budget(a.run.budget)?;
    let requested: Vec<String> = match &a.analyses {
        Some(list) => list.iter().map(|s| s.trim().to_string()).collect(),
        None if g.is_xor() => ["classical", "ns", "quantum-xor", "bound"].map(String::from).to_vec(),
        None => ["classical", "ns", "bound"].map(String::from).to_vec(),
    };
    if let Some(bad) = requested.iter().find(|s| !ANALYSES.contains(&s.as_str())) {
        return Err(CliError::Usage(format!(
            "unknown analysis '{bad}'; expected one of {}",
            ANALYSES.join(", ")
        )));
    }
    let has = |name: &str| requested.iter().any(|s| s == name);
    let which = ValueAnalyses {
        classical: has("classical"),
        ns: has("ns"),
        quantum_xor: has("quantum-xor"),
        bound: has("bound"),
        no_advantage: has("no-advantage"),
        triviality: has("triviality"),
    };
    let partition = match &a.partition {
        Some(p) => {
            if p.iter().any(|&i| i == 0) {
                return Err(CliError::Usage("--partition takes 1-based player numbers".into()));
            }
            let zero: Vec<usize> = p.iter().map(|i| i - 1).collect();
            Some(Partition::new(g.players(), &zero)?)
        }
        None => None,
    };
    let mut opts = ValueOptions {
        xor: XorSdpOptions {
            restarts: a.run.restarts,
            seed: a.run.seed,
            ..XorSdpOptions::default()
        },
        tol: a.run.tol,
        partition,
        ..ValueOptions::default()
    };
    if let Some(b) = budget {
        opts.classical_budget = b;
    }
    let report = analyze_values(&g, &which, &opts)?;
    let mut results = to_value(&report)?;
    if has("cc-sim") {
        let cc = cc_sim(&g, a.trials, a.run.seed)?;
        if let Value::Object(m) = &mut results {
            m.insert("cc_sim".into(), to_value(&cc)?);
        }
    }
    let config = json!({
        "game": source,
        "analyses": requested,
        "partition": a.partition,
        "trials": has("cc-sim").then_some(a.trials),
        "restarts": a.run.restarts,
        "tol": a.run.tol,
        "budget": budget,
    });
    Ok(Output { config, game: g, results })
}

fn cc_sim(g: &LinearGame, trials: usize, seed: u64) -> Result<belltool_core::games::CcOutcome, CliError> {
    let d = g.group().size();
    if g.group().orders() != [d] || g.input_sizes().iter().any(|&m| m != d) {
        return Err(CliError::Core(Error::Precondition(
            "cc-sim needs a cyclic prime-order group with every input in F_d".into(),
        )));
    }
    Ok(cc_protocol_simulate(d, g.players(), g.f(), trials, seed)?)
}

fn sign_matrix(g: &LinearGame) -> Result<Vec<Vec<i32>>, CliError> {
    let sizes = g.input_sizes();
    if !g.is_xor() || sizes[0] != sizes[1] || !g.is_uniform() {
        return Err(CliError::Core(Error::Precondition(
            "the game graph needs a uniform two-player XOR game with square inputs".into(),
        )));
    }
    let m = sizes[0];
    Ok((0..m)
        .map(|x| (0..m).map(|y| if g.f()[x + m * y] == 0 { 1 } else { -1 }).collect())
        .collect())
}

pub fn graph(a: &GraphArgs) -> Result<Output, CliError> {
    let (g, source) = load_game(&a.game)?;
    let budget = positive_budget(a.run.budget)?;
    let vertex_cap = budget.map_or(DEFAULT_INDEPENDENCE_BUDGET, |b| b as usize);
    let signs = sign_matrix(&g)?;
    let xg = xor_game_graph(&signs)?;
    let gr = xg.graph();
    let degrees: Vec<usize> = (0..gr.vertex_count()).map(|v| gr.degree(v)).collect();
    let regular = degrees.windows(2).all(|w| w[0] == w[1]);
    let alpha = independence_number(gr, vertex_cap)?;
    let events: Vec<[usize; 3]> = alpha
        .vertices
        .iter()
        .map(|&v| {
            let (x, y, o) = xg.label(v);
            [x, y, o]
        })
        .collect();
    let mut results = Map::new();
    results.insert("m".into(), json!(xg.m()));
    results.insert("vertices".into(), json!(gr.vertex_count()));
    results.insert("edges".into(), json!(gr.edge_count()));
    results.insert("regular".into(), json!(regular));
    results.insert("degree".into(), json!(degrees.first()));
    results.insert("triangle_free".into(), json!(gr.is_triangle_free()));
    results.insert("spectrum".into(), to_value(&graph_spectrum_check(&signs)?)?);
    results.insert("independence".into(), to_value(&alpha)?);
    results.insert("independent_events".into(), json!(events));
    if a.certify_shannon {
        results.insert("shannon".into(), to_value(&shannon_certify_with_budget(&signs, vertex_cap)?)?);
    }
    let config = json!({
        "game": source,
        "certify_shannon": a.certify_shannon,
        "budget": budget,
    });
    Ok(Output {
        config,
        game: g,
        results: Value::Object(results),
    })
}

pub fn diew(a: &DiewArgs) -> Result<Output, CliError> {
    let (g, source) = load_game(&a.game)?;
    let budget = positive_budget(a.run.budget)?;
    let (state, meas, strategy) = match (&a.strategy, kind(&a.game)) {
        (Some(p), _) => {
            let (s, m) = parse_strategy_file(&read_file(p)?)?;
            (s.density(), m, json!(p.display().to_string()))
        }
        (None, "mermin3") => (ghz3_state().density(), mermin3_measurements()?, json!("ghz3-mermin")),
        (None, k) => return Err(CliError::Usage(format!("--game {k} needs --strategy FILE"))),
    };
    let state = match a.visibility {
        Some(v) => state.mix(&DensityMatrix::maximally_mixed(state.dims().to_vec())?, v)?,
        None => state,
    };
    let cap = budget.map_or(DEFAULT_BISEPARABLE_BUDGET, |b| b as usize);
    let verdict = diew_verdict_with_budget(&g, &state, &meas, cap)?;
    let mut results = Map::new();
    results.insert("strategy".into(), strategy.clone());
    if let Value::Object(m) = to_value(&verdict)? {
        results.extend(m);
    }
    let config = json!({
        "game": source,
        "strategy": strategy,
        "visibility": a.visibility,
        "budget": cap,
    });
    Ok(Output {
        config,
        game: g,
        results: Value::Object(results),
    })
}
