//! The operators `ψ` and `φ`, the five conditions, closed forms, orbit tables
//! and the classification of the standard family.

mod classify;
mod closed_form;
mod conditions;
mod ops;
mod tables;

pub use classify::{classify, family, Branch, Classification};
pub use closed_form::{closed_form_phi_xy, ClosedFormCase, ClosedFormKind};
pub use conditions::{
    check_conditions, residuals, CheckOptions, ConditionReport, ConditionResult, Domain, MapPair, Residual, Witness,
};
pub use ops::{
    basis_triples, mixed_jacobi_residual, phi, phi_at, phi_pairs, phi_sum, phi_xy, product_support, psi, psi_at, Triple,
};
pub use tables::{
    build_case, build_table, render_cell, table_case, table_cases, ObstructionTable, Sufficiency, TableAlpha, TableCase,
};
