//! Bell nonlocality: quantum correlators, the original Bell and CHSH
//! inequalities, GHZ and Hardy arguments, and no-signalling of expectations.

mod correlators;
mod ghz;
mod hardy;
mod optimize;
mod search;
mod signalling;

pub use correlators::{
    bell_original_lhs, chsh_combination, chsh_value, product_state_00, qm_correlator, singlet_state, trine_settings,
    ChshSettings, SpinSetting,
};
pub use ghz::{
    ghz_assignment_ok, ghz_assignment_search, ghz_assignment_search_with, ghz_identity_deviations, ghz_operator,
    ghz_state, Axis, GhzSearch, GHZ_IDENTITIES,
};
pub use hardy::{
    hardy_build, hardy_optimize, hardy_probability, HardyConstruction, HardyOptimum, HardyParams, PrimedBasis,
    GOLDEN_RATIO,
};
pub use optimize::{chsh_optimize, ChshOptimum};
pub use search::{golden_section_max, scan_then_refine};
pub use signalling::{measure_nonselective, no_signalling_check};
