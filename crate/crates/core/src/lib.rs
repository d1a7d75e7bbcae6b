//! Phase estimation with a Mach-Zehnder interferometer fed by the two-mode
//! squeezed twin-Fock state `S(r)|n,n⟩`.
//!
//! The crate has two independent halves that are checked against each other:
//!
//! * [`closed_form`] and [`qfi`]: analytic parity signals for the lossless,
//!   external-loss and internal-loss interferometer, phase sensitivity,
//!   quantum Fisher information and its lossy bound. The parity signals are
//!   evaluated through the truncated power series in [`series`].
//! * [`fock`]: a brute-force simulator on the truncated two-mode Fock space
//!   with exact block-diagonal beam splitters and a Kraus loss channel.
//!
//! ```
//! use twinfock::{closed_form, fock, Scenario, SchemeParams};
//!
//! let p = SchemeParams::new(1, 0.7, 0.2, Scenario::External { t1: 0.9 }).unwrap();
//! let analytic = closed_form::parity(&p).unwrap();
//! let brute = fock::oracle_parity(&p, fock::DEFAULT_TAIL_TOL).unwrap();
//! assert!((analytic - brute).abs() < 1e-9);
//! ```

pub mod closed_form;
pub mod error;
pub mod fock;
pub mod numerics;
pub mod qfi;
pub mod scheme;
pub mod series;

pub use error::{Error, Result};
pub use qfi::{MomentSet, QfiParams};
pub use scheme::{physical_phase, Scenario, SchemeParams};

/// Crate version, recorded in scan manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
