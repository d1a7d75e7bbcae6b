//! Truncated two-mode Fock-space simulator.
//!
//! Everything here is computed by brute force on the basis `|k,l⟩`,
//! `0 ≤ k, l ≤ cutoff`, and serves as ground truth for the closed forms.

mod blocks;
mod density;
mod fisher;
mod laguerre;
mod loss;
mod mzi;
mod state;

pub use blocks::{
    apply_number_conserving_unitary, apply_phase_shift, generator_block, sector_range, Generator,
    ModeOperatorBlocks,
};
pub use density::{TwoModeDensity, HERMITIAN_TOL, NEGATIVITY_TOL};
pub use fisher::{
    lossy_phase_family, mixed_state_qfi, pure_state_qfi, truncated_lossy_qfi, DEFAULT_FD_STEP, EIGENVALUE_FLOOR,
};
pub use laguerre::{
    build_laguerre_state, build_laguerre_state_with_tol, default_cutoff, interferometer_input,
    laguerre_amplitude, truncation_tail, DEFAULT_TAIL_TOL, SMALL_SQUEEZING,
};
pub use loss::{apply_loss_channel, LossChannel, BRANCH_WEIGHT_FLOOR};
pub use mzi::{interferometer_identity_error, oracle_parities, oracle_parity, Interferometer};
pub use state::{parity_expectation, photon_moments, FockPopulations, Mode, TwoModeState};
