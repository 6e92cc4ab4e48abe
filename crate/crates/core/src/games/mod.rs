//! The linear game model, canonical builders, boxes, game matrices,
//! the box-assisted communication protocol and game files.

mod boxes;
mod builders;
mod cc;
mod file;
mod game;
mod matrices;

pub use boxes::{
    box_functional, success_probability, validate_no_signaling, BoxTable, NoSignalingCheck, BOX_TOL,
};
pub use builders::{
    build_chsh_d, build_chshn_d, build_mermin3, build_nlc_d, build_xor_from_matrix,
    build_xor_from_signs, game_sum, InputDistribution,
};
pub use cc::{cc_protocol_simulate, evaluate_monomials, monomial_coefficients, CcOutcome};
pub use file::{parse_game_file, parse_xor_file, serialize_game};
pub(crate) use file::from_json;
pub use game::{GroupSpec, LinearGame, Partition, RENORMALIZE_TOL};
pub use matrices::{game_matrices, game_matrix, partition_codec, xor_matrix, GameMatrixSet};
