//! Weakly-represented partial functions, program families, and the codings
//! used by the dominating and diagonally non-recursive branches.

mod codes;
mod dnr;
mod dom;
mod registry;
mod table;

pub use codes::{
    assemble_sigma, fixed_width, fixed_width_code, fixed_width_decode, prefix_free_code,
    prefix_free_decode,
};
pub use dnr::{build_p, p_bound, psi_eval, sigma_range_max_len, StringIndexMap};
pub use dom::{dominating_adversary, image_set, DominationProbe};
pub use registry::{diagonal_avoid, interleave_family, FamilyRegistry, Outcome, Program};
pub use table::{
    eval_step, table_of_program, Bullet, BulletResult, Triple, ValidationReport, WeakRepTable,
    Witness,
};
