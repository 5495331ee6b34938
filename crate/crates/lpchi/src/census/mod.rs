//! Coset-graph census of exceptional pairs.

pub mod coset;
pub mod groups;
pub mod rows;
pub mod search;

pub use coset::{admissible_choices, build_pair_from_suborbit, coset_action, suborbits, CosetActionReport, CosetSpace, CosetSpec, Suborbit, SuborbitChoice};
pub use rows::{all_rows, rows, run_census, run_row, CensusReport, CensusRow, RowReport, RowSet, RowStatus, SkipEntry};
pub use search::{search_witness, Ambient, SearchOutcome, Witness};

/// Pretty JSON with a trailing newline, the byte format of golden files.
pub fn golden_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}
