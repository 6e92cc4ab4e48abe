//! Exclusivity graphs of XOR games, independence numbers, strong products
//! and Lovász-number witnesses.

mod graph;
mod independence;
mod xor;

pub use graph::{strong_product, strong_product_with_budget, Graph, MAX_PRODUCT_VERTICES};
pub use independence::{independence_number, IndependentSet, DEFAULT_INDEPENDENCE_BUDGET};
pub use xor::{
    adjacency_closed_form, graph_spectrum_check, lovasz_witness_value, shannon_certify,
    shannon_certify_with_budget, xor_game_graph, ShannonCertificate, SpectrumReport, XorGameGraph,
    MAX_SPECTRUM_INPUTS,
};
