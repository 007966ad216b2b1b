//! Single-photon strategies for identifying phase-plate ensembles.
//!
//! A photon either visits `N` phase plates one after another (the *local*
//! strategy: phase, bit flip, SWAP) or is split over all of them as a W
//! state (the *nonlocal* strategy). A fixed projective readout then decides
//! between two plate hypotheses, and the quantity of interest is the error
//! probability of that decision, per configuration and averaged over random
//! plate ensembles.
//!
//! * [`dense`]: `2^N` state-vector simulator, the brute-force oracle.
//! * [`excitation`]: O(N) simulator on the vacuum + one-photon subspace.
//! * [`protocols`]: state preparation, both circuits, readout projectors.
//! * [`discrimination`]: closed-form and simulated error probabilities, ensemble means.
//! * [`montecarlo`]: seeded ensemble sampling and aggregation.
//! * [`verify`]: cross-checks between the three evaluation routes.
//! * [`cli`]: the `qsn` command-line front end.

pub mod cli;
pub mod dense;
pub mod discrimination;
pub mod error;
pub mod excitation;
pub mod montecarlo;
pub mod phases;
pub mod protocols;
pub mod register;
pub mod verify;

pub use dense::{QubitRegisterState, DENSE_MODE_CAP};
pub use discrimination::{AnalyticMean, Approximation, ErrorProbability};
pub use error::{Error, Result};
pub use excitation::ExcitationState;
pub use montecarlo::{Backend, SamplingPlan, TrialAggregate};
pub use phases::PhaseConfig;
pub use protocols::{Case, DiscriminationTask, Outcome, Priors, ScenarioSpec, Strategy, WMethod};
pub use register::{Parity, PhotonRegister};
