use crate::args::GameArgs;
use crate::CliError;
use belltool_core::games::{
    build_chsh_d, build_chshn_d, build_mermin3, build_nlc_d, parse_game_file, parse_xor_file, GroupSpec,
    LinearGame,
};
use serde_json::{json, Map, Value};
use std::path::Path;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("reading {}: {e}", path.display())))
}

fn need(v: Option<usize>, flag: &str, kind: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--game {kind} requires --{flag}")))
}

pub fn kind(args: &GameArgs) -> &str {
    &args.game[0]
}

/// Builds the game and the config echo describing where it came from.
pub fn load_game(args: &GameArgs) -> Result<(LinearGame, Value), CliError> {
    let kind = kind(args);
    let path = args.game.get(1);
    let takes_path = matches!(kind, "xor-file" | "file");
    match (takes_path, path) {
        (true, None) => return Err(CliError::Usage(format!("--game {kind} requires a PATH"))),
        (false, Some(p)) => return Err(CliError::Usage(format!("unexpected argument '{p}' after --game {kind}"))),
        _ => {}
    }
    if kind != "nlc" && (args.h.is_some() || args.ptilde.is_some()) {
        return Err(CliError::Usage("--h and --ptilde only apply to --game nlc".into()));
    }
    let mut echo = Map::new();
    echo.insert("kind".into(), json!(kind));
    let game = match kind {
        "chsh-d" => {
            let d = need(args.d, "d", kind)?;
            echo.insert("d".into(), json!(d));
            build_chsh_d(d)?
        }
        "chshn-d" => {
            let d = need(args.d, "d", kind)?;
            let n = need(args.n, "n", kind)?;
            echo.insert("d".into(), json!(d));
            echo.insert("n".into(), json!(n));
            build_chshn_d(n, d)?
        }
        "mermin3" => build_mermin3()?,
        "nlc" => {
            let d = need(args.d, "d", kind)?;
            let n = need(args.n, "n", kind)?;
            let inner = u32::try_from(n.saturating_sub(1))
                .ok()
                .and_then(|e| d.checked_pow(e))
                .ok_or_else(|| CliError::Usage("--d and --n are too large".into()))?;
            let h = args.h.clone().unwrap_or_else(|| vec![1; inner]);
            let ptilde = args
                .ptilde
                .clone()
                .unwrap_or_else(|| vec![1.0 / inner as f64; inner]);
            echo.insert("d".into(), json!(d));
            echo.insert("n".into(), json!(n));
            echo.insert("h".into(), json!(h));
            echo.insert("ptilde".into(), json!(ptilde));
            build_nlc_d(d, n, &h, &ptilde)?
        }
        "xor-file" | "file" => {
            let p = Path::new(path.map(String::as_str).unwrap_or_default());
            echo.insert("path".into(), json!(p.display().to_string()));
            let text = read_file(p)?;
            if kind == "file" {
                parse_game_file(&text)?
            } else {
                parse_xor_file(&text)?
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown game '{other}'; expected chsh-d, chshn-d, mermin3, nlc, xor-file or file"
            )))
        }
    };
    Ok((game, Value::Object(echo)))
}

/// Short description of the game for the report header.
pub fn describe(g: &LinearGame) -> Value {
    let group = match g.group_spec() {
        GroupSpec::Cyclic(o) => json!({ "cyclic": o }),
        GroupSpec::Field { p, r } => json!({ "field": { "p": p, "r": r } }),
    };
    json!({
        "players": g.players(),
        "inputs": g.input_sizes(),
        "group": group,
        "xor": g.is_xor(),
        "uniform": g.is_uniform(),
    })
}
