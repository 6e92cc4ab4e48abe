//! JSON game files.
//!
//! ```json
//! {"players": 2, "inputs": [2, 2], "group": {"cyclic": [2]},
//!  "distribution": "uniform", "f": [0, 0, 0, 1]}
//! ```
//!
//! XOR files give a sign matrix `s[x][y] = (-1)^f(x,y)` with an optional
//! row-major distribution, or the real game matrix directly:
//!
//! ```json
//! {"signs": [[1, 1], [1, -1]], "distribution": "uniform"}
//! {"matrix": [[0.25, 0.25], [0.25, -0.25]]}
//! ```
//!
//! `group` is either `{"cyclic": [d1, ...]}` or `{"field": {"p": p, "r": r}}`.
//! `distribution` is `"uniform"` or a flat list; both it and `f` use the
//! little-endian input order of [`LinearGame`].

use super::builders::{build_xor_from_matrix, build_xor_from_signs, InputDistribution};
use super::game::{GroupSpec, LinearGame};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GameFile {
    players: usize,
    inputs: Vec<usize>,
    group: GroupJson,
    distribution: DistJson,
    f: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum GroupJson {
    Cyclic(Vec<usize>),
    Field { p: usize, r: usize },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum DistJson {
    Named(DistName),
    Table(Vec<f64>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum DistName {
    Uniform,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct XorFile {
    signs: Option<Vec<Vec<i32>>>,
    distribution: Option<XorDistJson>,
    matrix: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum XorDistJson {
    Named(DistName),
    Table(Vec<Vec<f64>>),
}

/// Deserializes JSON text into `T`, reporting the JSON path of any mismatch.
pub(crate) fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| Error::Parse {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

pub fn parse_game_file(text: &str) -> Result<LinearGame> {
    let file: GameFile = from_json(text)?;
    if file.players != file.inputs.len() {
        return Err(Error::validation(format!(
            "players is {} but inputs lists {} sizes",
            file.players,
            file.inputs.len()
        )));
    }
    let spec = match file.group {
        GroupJson::Cyclic(o) => GroupSpec::Cyclic(o),
        GroupJson::Field { p, r } => GroupSpec::Field { p, r },
    };
    let total = file
        .inputs
        .iter()
        .try_fold(1usize, |acc, &m| acc.checked_mul(m))
        .ok_or_else(|| Error::resource("input space overflows"))?;
    let dist = match file.distribution {
        DistJson::Named(DistName::Uniform) => vec![1.0 / total as f64; total],
        DistJson::Table(t) => t,
    };
    LinearGame::new(file.inputs, spec, dist, file.f)
}

/// Parses a two-player XOR game given by signs or by its game matrix.
pub fn parse_xor_file(text: &str) -> Result<LinearGame> {
    let file: XorFile = from_json(text)?;
    match (file.signs, file.matrix) {
        (Some(signs), None) => {
            let dist = match file.distribution {
                None | Some(XorDistJson::Named(DistName::Uniform)) => InputDistribution::Uniform,
                Some(XorDistJson::Table(t)) => InputDistribution::Table(t),
            };
            build_xor_from_signs(&signs, &dist)
        }
        (None, Some(m)) if file.distribution.is_none() => build_xor_from_matrix(&m),
        (None, Some(_)) => Err(Error::validation("a game matrix already carries its distribution")),
        _ => Err(Error::validation("XOR files need exactly one of `signs` and `matrix`")),
    }
}

pub fn serialize_game(g: &LinearGame) -> Result<String> {
    let group = match g.group_spec() {
        GroupSpec::Cyclic(o) => GroupJson::Cyclic(o.clone()),
        GroupSpec::Field { p, r } => GroupJson::Field { p: *p, r: *r },
    };
    let u = 1.0 / g.num_inputs() as f64;
    let distribution = if g.dist().iter().all(|&p| p == u) {
        DistJson::Named(DistName::Uniform)
    } else {
        DistJson::Table(g.dist().to_vec())
    };
    let file = GameFile {
        players: g.players(),
        inputs: g.input_sizes().to_vec(),
        group,
        distribution,
        f: g.f().to_vec(),
    };
    serde_json::to_string_pretty(&file).map_err(|e| Error::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::super::builders::*;
    use super::*;

    #[test]
    fn roundtrip() {
        for g in [
            build_chsh_d(2).unwrap(),
            build_chsh_d(4).unwrap(),
            build_mermin3().unwrap(),
            build_nlc_d(3, 2, &[0, 1, 2], &[0.2, 0.3, 0.5]).unwrap(),
        ] {
            let text = serialize_game(&g).unwrap();
            assert_eq!(parse_game_file(&text).unwrap(), g);
        }
    }

    #[test]
    fn xor_files() {
        let chsh = build_xor_from_signs(&[vec![1, 1], vec![1, -1]], &InputDistribution::Uniform).unwrap();
        assert_eq!(parse_xor_file(r#"{"signs": [[1, 1], [1, -1]]}"#).unwrap(), chsh);
        let m = parse_xor_file(r#"{"matrix": [[0.25, 0.25], [0.25, -0.25]]}"#).unwrap();
        assert_eq!(m, chsh);
        assert!(matches!(
            parse_xor_file(r#"{"signs": [[1]], "matrix": [[1.0]]}"#),
            Err(Error::Validation(_))
        ));
        assert!(matches!(parse_xor_file(r#"{"sign": [[1]]}"#), Err(Error::Parse { .. })));
    }

    #[test]
    fn explicit_chsh() {
        let text = r#"{"players": 2, "inputs": [2, 2], "group": {"field": {"p": 2, "r": 1}},
                       "distribution": "uniform", "f": [0, 0, 0, 1]}"#;
        assert_eq!(parse_game_file(text).unwrap(), build_chsh_d(2).unwrap());
    }

    #[test]
    fn rejects_bad_probability_mass() {
        let text = r#"{"players": 2, "inputs": [2, 2], "group": {"cyclic": [2]},
                       "distribution": [0.125, 0.125, 0.125, 0.125], "f": [0, 0, 0, 1]}"#;
        assert!(matches!(parse_game_file(text), Err(Error::Validation(_))));
    }

    #[test]
    fn rejects_out_of_group_target() {
        let text = r#"{"players": 2, "inputs": [2, 2], "group": {"cyclic": [2]},
                       "distribution": "uniform", "f": [0, 0, 0, 2]}"#;
        assert!(matches!(parse_game_file(text), Err(Error::Validation(_))));
    }

    #[test]
    fn schema_errors_carry_path() {
        let text = r#"{"players": 2, "inputs": [2, "x"], "group": {"cyclic": [2]},
                       "distribution": "uniform", "f": [0, 0, 0, 1]}"#;
        match parse_game_file(text) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "inputs[1]"),
            other => panic!("unexpected {other:?}"),
        }
        let text = r#"{"players": 3, "inputs": [2, 2], "group": {"cyclic": [2]},
                       "distribution": "uniform", "f": [0, 0, 0, 1]}"#;
        assert!(matches!(parse_game_file(text), Err(Error::Validation(_))));
        assert!(matches!(parse_game_file("{"), Err(Error::Parse { .. })));
    }
}
