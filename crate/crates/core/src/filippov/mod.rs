//! The S_m-module on the multilinear component of the free Filippov
//! n-algebra with k brackets, and related constructions.

mod rho;
mod shape;
mod tower;
mod word;

pub use rho::{
    add_top_row, beta_gamma, comb_dimension, comb_rewrite, hat_rho_check, jacobi_relations, noncomb_character,
    num_letters, rho_character, rho_decompose, rho_summary, shape_quotient_character, BetaGamma, HatCheck, RhoSummary,
};
pub use shape::{enumerate_shapes, BracketShape};
pub use tower::{LevelSummary, Tower};
pub use word::{BracketWord, WordCombination, B_LETTER};
