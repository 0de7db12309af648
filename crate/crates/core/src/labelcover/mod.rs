//! Bipartite and layered Label Cover, the layering transformation and its
//! decoding, minor conditions built from label cover instances, projection
//! robustness and decoding of minion assignments through small smug sets.
//!
//! Variables, values and coordinates are 0-based in memory and 1-based in
//! files. A value of a layered instance built from a bipartite one with
//! domain `m` is a tuple in `[m]^ℓ`, stored as its lexicographic index.

mod decode;
mod format;
mod instance;
mod minor;

pub use decode::{brute_solve_bipartite, brute_solve_layered, decode_layered, DecodeReport};
pub use format::{parse_blc, parse_bmc, parse_llc, serialize_blc, serialize_bmc, serialize_llc};
pub use instance::{
    build_layered, BipartiteAssignment, BipartiteLC, Chain, LayerEdge, LayeredAssignment, LayeredLC, LcEdge,
    Provenance, DEFAULT_LC_BUDGET,
};
pub use minor::{
    decode_minion_assignment, projection_robustness, projection_robustness_brute, BipartiteMinorCondition,
    MinionAssignment, MinionDecodeReport, MinorIdentity, Robustness, Side, Symbol,
};
