//! Symmetric group arithmetic, centralizers and factorization orbits.

mod perm;
mod subgroup;

pub use perm::{
    all_perms, class_representatives, class_size, conjugate, factorial, fixed_space_membership, k_cycles, parse_perm,
    partitions, subsets, Perm,
};
pub use subgroup::{
    centralizer, diag_conj_orbit, factor_pairs, orbit_decomposition, FactorPair, OrbitBlock, Subgroup, DEFAULT_BOUND,
};
