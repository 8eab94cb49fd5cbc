//! Lattice terms and exhaustive identity checking.

mod check;
mod term;

pub use check::{
    eval, holds_identity, holds_inclusion, holds_sdj, holds_sentence_1storder, is_distributive,
    is_join_semidistributive, is_modular, is_n_distributive, is_n_distributive_by_covers, refute,
    render_assignment, Assignment, Refutation,
};
pub(crate) use check::eval_with;
pub use term::{ndistr_identity, p_term, parse_term, ParseError, Term};
