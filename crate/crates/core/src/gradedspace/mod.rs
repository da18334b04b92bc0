//! Multi-index lattice arithmetic, product systems given by twists, and the
//! reordering unitaries `θ_{n,m}` between flattened graded spaces.

pub mod boxspace;
pub mod index;
pub mod reorder;
pub mod system;

pub use boxspace::BoxSpace;
pub use index::{meet_join_parts, signed_subset_sum, LatticeParts, MultiIndex, Subset};
pub use reorder::{
    apply_swap_path, bubble_schedule, check_cap, lift_left, reorder_unitary, theta_embed, GradedBasisLayout,
    DEFAULT_CAP,
};
pub use system::{flip_matrix, lambda_table, ProductSystem, TwistFamily, COHERENCE_TOL};
