//! Classical, no-signaling and quantum values, norm bounds, no-advantage
//! certificates, triviality tests and biseparable bounds.

mod advantage;
mod bounds;
mod classical;
mod ns;
mod report;
mod triviality;
mod xor;

pub use advantage::{no_advantage_iff, no_advantage_sufficient, NoAdvantageCertificate, SignVectors, MAX_SIGN_SEARCH};
pub use bounds::{
    biseparable_bound, biseparable_bound_with_budget, chshd_bound, diew_bound, diew_bound_with_budget, linear_norm_bound,
    linear_norm_bound_best, xor_norm_bound, BestNormBound, BiseparableBound, DiewBound, NormBound,
    DEFAULT_BISEPARABLE_BUDGET, MAX_PARTITION_PLAYERS,
};
pub use classical::{
    classical_value, classical_value_with_budget, ClassicalResult, DeterministicStrategy,
    DEFAULT_CLASSICAL_BUDGET,
};
pub use ns::{ns_value, ns_value_with_budget, NsResult};
pub use report::{
    analyze_values, render_report, report_schema_version, round_sig, sandwich_ok, to_report_json,
    NoAdvantageSection, ReportFlags, TrivialSection, ValueAnalyses, ValueOptions, ValueReport,
    REPORT_SCHEMA_VERSION, SANDWICH_TOL,
};
pub use triviality::triviality_check;
pub use xor::{xor_quantum_bias, VectorStrategy, XorBiasResult, XorSdpOptions};
