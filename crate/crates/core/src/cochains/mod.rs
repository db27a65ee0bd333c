//! Group-graded 2- and 3-cochains and the named parameter maps.

mod maps;
mod three;
mod two;

pub use maps::{kappa_c_penta, kappa_c_tri, kappa_l1, kappa_l_tri};
pub use three::{sort_triple, ThreeCochain, TripleValues};
pub use two::{standard_generators, CochainKind, InvarianceWitness, Kernel, PairValues, TwoCochain};
