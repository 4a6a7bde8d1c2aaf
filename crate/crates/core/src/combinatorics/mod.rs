//! Partitions, Young tableaux and Littlewood–Richardson counting.

mod lr;
mod partition;
mod tableau;

pub use lr::{lr_coefficient, lr_fillings, pieri_column, pieri_row, LrFilling};
pub use partition::{Partition, SkewShape};
pub use tableau::{kw_multiplicity, maj_residue_counts, syt_enumerate, YoungTableau};
