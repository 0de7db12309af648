//! Function tables, minors and polymorphisms of SetSAT templates.
//!
//! A set `S` of coordinates is *smug* for `f` when some input `v` gives
//! `f(v) = v_i` exactly for `i ∈ S`. For `d = s+1`, `a = 1` the minimal smug
//! sets decide whether `f` is a polymorphism of `(1,g,k)`-SetSAT.

mod coords;
mod cover;
mod criteria;
mod enumerate;
mod essential;
mod family;
mod finders;
mod format;
mod identities;
mod plurality;
mod smug;
mod table;

pub use coords::CoordSet;
pub use cover::{find_low_cover, max_coverage};
pub use criteria::{
    check_row_multiset, conservativity_violation, coverage, is_conservative, is_polymorphism_direct,
    is_polymorphism_smug, NonPolymorphismWitness, Refutation, Verdict, DEFAULT_DIRECT_BUDGET,
};
pub use enumerate::{enumerate_polymorphisms, for_each_table, DEFAULT_ENUM_BUDGET};
pub use essential::essential_coordinates;
pub use family::{
    build_olsak, build_qm, build_siggers, q_from_family, qm_minor_maps, table_from_family,
    SmugToPolymFamily,
};
pub use finders::{
    find_disjoint_minimal_smug, find_small_smug_set, max_disjoint_smug, DisjointOutcome,
    SmallSmugReport,
};
pub use format::{parse_function, serialize_function};
pub use identities::{check_identities, Identity, IdentityCheck, IdentitySet, Term, Violation};
pub use plurality::{plurality, symmetric_witness};
pub use smug::{minimal_smug_sets, smug_of, transport_witness, SmugEntry, SmugFamily, SmugScan};
pub use table::{
    apply_minor, for_each_input, Body, FunctionTable, MinorMap, Rule, RuleKind, DEFAULT_TABLE_BUDGET,
};
