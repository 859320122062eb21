//! Seeded instance generation, fuzz campaigns, tightness search and
//! negative controls.

mod campaign;
mod config;
mod generate;
mod negative;

pub use campaign::{run_campaign, tightness_search, Campaign, CampaignSummary, Execution, TightInstance, TrialOutcome};
pub use config::{GeneratorConfig, MapWeights, Mode, DEFAULT_TRIALS, MAX_CONDITION};
pub use generate::{
    contraction, function_pool, gen_contraction, gen_hermitian_in_band, generate_instance, hermitian_in_band,
    random_map, DIAGONAL_SHARE,
};
pub use negative::{run_negative_controls, square_claimed_monotone, ControlOutcome, NEGATIVE_TRIALS};
