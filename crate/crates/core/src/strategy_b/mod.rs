//! Player-B strategies: w-Fracturing for ESO(m, 3), the tier-separation
//! strategies for the B-game, and the non-extender baseline.

pub mod fracturing;
pub mod nonextend;
pub mod tiers;

pub use fracturing::{
    default_width, fracturing_guarantee, guarantee_with, width_admissible, FracturingB,
};
pub use nonextend::NonExtenderB;
pub use tiers::{boundary_tiers_guarantee, tiers_guarantee, BoundaryTiersB, TiersB};
